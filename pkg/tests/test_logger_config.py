import os
import logging
import tempfile
import unittest
from unittest.mock import patch

from src.logger_config import LOGGER_NAME, configure_logger


class TestLoggerConfig(unittest.TestCase):
    """
    Unit tests for the logger configuration.
    """
    def setUp(self):
        self.maxDiff = None
        # Backup current handlers and clear them for testing
        self.logger = logging.getLogger(LOGGER_NAME)
        self.original_handlers = self.logger.handlers[:]
        self.logger.handlers = []

    def tearDown(self):
        for handler in self.logger.handlers:
            handler.close()
        # Restore original handlers
        self.logger.handlers = self.original_handlers

    def _file_handler(self, logger):
        for handler in logger.handlers:
            if isinstance(handler, logging.FileHandler):
                return handler
        return None

    def test_configure_logger_creates_log_file(self):
        with tempfile.TemporaryDirectory() as directory:
            previous = os.getcwd()
            os.chdir(directory)
            try:
                with patch.dict(os.environ, {"FERMI_RMT_LOG_FILE": ""}):
                    logger = configure_logger()
                file_handler = self._file_handler(logger)
                self.assertIsNotNone(file_handler, "FileHandler not found in logger handlers.")
                expected_log_file = os.path.join(os.getcwd(), "fermi_rmt.log")
                self.assertEqual(os.path.abspath(file_handler.baseFilename), os.path.abspath(expected_log_file))
                file_handler.close()
                self.logger.handlers = []
            finally:
                os.chdir(previous)

    def test_environment_override(self):
        with tempfile.TemporaryDirectory() as directory:
            log_file = os.path.join(directory, "run.log")
            with patch.dict(os.environ, {"FERMI_RMT_LOG_FILE": log_file}):
                logger = configure_logger()
            logger.info("Starting test message.")
            file_handler = self._file_handler(logger)
            self.assertEqual(os.path.abspath(file_handler.baseFilename), os.path.abspath(log_file))
            file_handler.flush()
            with open(log_file, "r", encoding="utf-8") as handle:
                content = handle.read()
            self.assertIn('"level": "INFO", "message": "Starting test message."', content)
            file_handler.close()
            self.logger.handlers = []

    def test_handlers_not_duplicated(self):
        with tempfile.TemporaryDirectory() as directory:
            with patch.dict(os.environ, {"FERMI_RMT_LOG_FILE": os.path.join(directory, "run.log")}):
                configure_logger()
                logger = configure_logger()
            self.assertEqual(len(logger.handlers), 1)
            logger.handlers[0].close()
            self.logger.handlers = []


if __name__ == "__main__":
    unittest.main()
