import os
import time
import unittest
from unittest.mock import patch

from src.work_pool import THREADS_ENV, ordered_map, worker_count


def _slow_square(value):
    time.sleep(0.01 * (5 - value % 5))
    return value * value


class TestWorkPool(unittest.TestCase):
    '''
    Unit tests for the ordered thread pool.
    '''
    def setUp(self):
        self.maxDiff = None

    def test_order_preserved(self):
        self.assertEqual(ordered_map(_slow_square, range(12), workers=4), [v * v for v in range(12)])

    def test_serial(self):
        self.assertEqual(ordered_map(_slow_square, [3, 1, 2], workers=1), [9, 1, 4])

    def test_empty_input(self):
        self.assertEqual(ordered_map(_slow_square, []), [])

    def test_worker_count_from_environment(self):
        with patch.dict(os.environ, {THREADS_ENV: "3"}):
            self.assertEqual(worker_count(), 3)
        for value in ("zero", "0", "-2", ""):
            with patch.dict(os.environ, {THREADS_ENV: value}):
                self.assertEqual(worker_count(), os.cpu_count() or 1)


if __name__ == "__main__":
    unittest.main()
