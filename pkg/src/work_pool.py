import logging
import os
from concurrent.futures import ThreadPoolExecutor

THREADS_ENV = "FERMI_RMT_THREADS"


def worker_count():
    '''
    Number of workers: FERMI_RMT_THREADS when it holds a positive integer, else the CPU count.
    '''
    logger = logging.getLogger("fermi_rmt")
    value = os.getenv(THREADS_ENV)
    if value:
        try:
            count = int(value)
        except ValueError:
            logger.warning("Ignoring non-integer %s=%r.", THREADS_ENV, value)
        else:
            if count >= 1:
                return count
            logger.warning("Ignoring non-positive %s=%r.", THREADS_ENV, value)
    return os.cpu_count() or 1


def ordered_map(func, items, workers=None):
    '''
    Apply func to every item in a thread pool and return the results in input order.

    :param func: Callable of one argument; must not share mutable state between calls.
    :param items: Iterable of work items.
    :param workers: Worker cap; defaults to worker_count().
    :return: List of results, ordered like items.
    '''
    items = list(items)
    workers = min(workers or worker_count(), max(len(items), 1))
    if workers == 1:
        return [func(item) for item in items]
    logging.getLogger("fermi_rmt").debug("Dispatching %d work items to %d workers.", len(items), workers)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))
