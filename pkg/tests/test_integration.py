import csv
import json
import logging
import os
import tempfile
import unittest
from unittest.mock import patch

from src.exceptions import ConvergenceError, IntegrityError
from src.logger_config import LOGGER_NAME
from src.main import (
    COMMANDS,
    EXIT_INVALID_INPUT,
    EXIT_IO,
    EXIT_OK,
    EXIT_UNSUPPORTED,
    EXIT_VERIFICATION_FAILED,
    exact_record,
    main,
    quad_record,
    sums_record,
)

SWEEP_CONFIG = """seed = 4
statistics = mean-entropy, variance-entropy
routes = exact, sums
grid m=1..2 n=m..m+1
"""


class TestIntegration(unittest.TestCase):
    '''
    Integration tests for the command-line flows.
    '''
    def setUp(self):
        self.maxDiff = None
        self.directory = tempfile.TemporaryDirectory()
        self.log_file = os.path.join(self.directory.name, "fermi_rmt.log")
        self.logger = logging.getLogger(LOGGER_NAME)
        self.original_handlers = self.logger.handlers[:]
        self.logger.handlers = []
        self.environment = patch.dict(os.environ, {"FERMI_RMT_LOG_FILE": self.log_file, "FERMI_RMT_THREADS": "2"})
        self.environment.start()

    def tearDown(self):
        self.environment.stop()
        for handler in self.logger.handlers:
            handler.close()
        self.logger.handlers = self.original_handlers
        self.directory.cleanup()

    def _path(self, name):
        return os.path.join(self.directory.name, name)

    def _read_log(self):
        for handler in self.logger.handlers:
            handler.flush()
        with open(self.log_file, "r", encoding="utf-8") as file:
            return file.read()

    def test_exact_flow(self):
        out = self._path("exact.json")
        self.assertEqual(main(["exact", "--m", "1", "--n", "1", "--out", out]), EXIT_OK)
        with open(out, "r", encoding="utf-8") as file:
            record = json.load(file)
        self.assertEqual(record["statistic"], "mean-entropy")
        self.assertAlmostEqual(record["value"], 0.5, places=14)
        self.assertEqual(record["status"], "proven")
        log_content = self._read_log()
        self.assertIn("Application started.", log_content)
        self.assertIn("Application finished with exit code 0.", log_content)

    def test_variance_conjecture_flow(self):
        out = self._path("variance.json")
        self.assertEqual(main(["exact", "--stat", "variance-entropy", "--m", "2", "--n", "3", "--out", out]), EXIT_OK)
        with open(out, "r", encoding="utf-8") as file:
            self.assertEqual(json.load(file)["status"], "conjecture")

    def test_sums_flow(self):
        out = self._path("sums.json")
        self.assertEqual(main(["sums", "--stat", "variance-entropy", "--m", "1", "--out", out]), EXIT_OK)
        with open(out, "r", encoding="utf-8") as file:
            record = json.load(file)
        self.assertEqual(record["terms"], [["1", "7/12"], ["pi^2", "-1/18"]])

    def test_verify_identities(self):
        out = self._path("verify.json")
        self.assertEqual(main(["verify", "--suite", "identities", "--trials", "20", "--out", out]), EXIT_OK)
        with open(out, "r", encoding="utf-8") as file:
            records = json.load(file)
        self.assertTrue(records)
        self.assertTrue(all(record["pass"] for record in records))
        self.assertIn("Starting identity suite", self._read_log())

    def test_invalid_dimensions(self):
        self.assertEqual(main(["exact", "--m", "3", "--n", "2", "--out", self._path("x.json")]), EXIT_INVALID_INPUT)
        self.assertIn("Invalid input", self._read_log())

    def test_invalid_arguments(self):
        with patch("sys.stderr"):
            self.assertEqual(main(["exact", "--stat", "bogus"]), EXIT_INVALID_INPUT)

    def test_unsupported_capacity(self):
        code = main(["exact", "--stat", "mean-capacity", "--m", "1", "--n", "5", "--out", self._path("c.json")])
        self.assertEqual(code, EXIT_UNSUPPORTED)

    def test_too_few_samples(self):
        code = main(["sample", "--m", "1", "--samples", "10", "--out", self._path("s.json")])
        self.assertEqual(code, EXIT_INVALID_INPUT)
        self.assertIn("Invalid input", self._read_log())

    def test_quadrature_not_converging(self):
        failure = ConvergenceError("Tanh-sinh quadrature did not reach 1e-11.", last_estimate=0.5, err_estimate=1e-9)
        with patch("src.main.mean_entropy_quad", side_effect=failure):
            code = main(["quad", "--m", "1", "--out", self._path("q.json")])
        self.assertEqual(code, EXIT_VERIFICATION_FAILED)
        self.assertIn("Numerical check failed", self._read_log())

    def test_broken_sampler_invariant(self):
        with patch("src.main.estimate", side_effect=IntegrityError("Singular values are not paired.")):
            code = main(["sample", "--m", "1", "--out", self._path("s.json")])
        self.assertEqual(code, EXIT_VERIFICATION_FAILED)

    def test_commands_documented(self):
        for name, command in COMMANDS.items():
            self.assertIn(":param args:", command.__doc__ or "", msg=name)
            self.assertIn(":return:", command.__doc__ or "", msg=name)
        for helper in (exact_record, quad_record, sums_record):
            self.assertIn(":param statistic:", helper.__doc__ or "", msg=helper.__name__)

    def test_unwritable_output(self):
        code = main(["exact", "--m", "1", "--out", self._path(os.path.join("missing", "x.json"))])
        self.assertEqual(code, EXIT_IO)

    def test_sweep_flow(self):
        config = self._path("sweep.cfg")
        with open(config, "w", encoding="utf-8") as file:
            file.write(SWEEP_CONFIG)
        out = self._path("sweep.csv")
        self.assertEqual(main(["sweep", "--config", config, "--out", out]), EXIT_OK)
        with open(out, "r", encoding="utf-8") as file:
            lines = file.read().splitlines()
        meta = [line for line in lines if line.startswith("# meta:")]
        self.assertIn("# meta: seed=4", meta)
        rows = list(csv.DictReader(line for line in lines if not line.startswith("#")))
        self.assertEqual(len(rows), 8)
        self.assertEqual((rows[0]["m"], rows[0]["n"], rows[0]["statistic"]), ("1", "1", "mean-entropy"))
        self.assertTrue(all(row["agree"] == "true" for row in rows))

    def test_missing_sweep_config(self):
        self.assertEqual(main(["sweep", "--config", self._path("absent.cfg")]), EXIT_IO)

    def test_figure_exact_columns(self):
        out = self._path("capacity.csv")
        code = main(["figure", "--which", "3", "--a", "1", "--n-max", "4", "--samples", "0", "--out", out])
        self.assertEqual(code, EXIT_OK)
        with open(out, "r", encoding="utf-8") as file:
            rows = list(csv.DictReader(line for line in file if not line.startswith("#")))
        self.assertEqual([row["n"] for row in rows], ["2", "3", "4"])
        self.assertTrue(all(row["mc_capacity"] == "" for row in rows))


if __name__ == "__main__":
    unittest.main()
