import logging
import os

LOGGER_NAME = "fermi_rmt"

def configure_logger():
    '''
    Configure and return the logger shared by every fermi_rmt module.

    The logger writes to 'fermi_rmt.log' in the current working directory unless the
    FERMI_RMT_LOG_FILE environment variable names another path. Messages are written
    one per line in a JSON-like layout so runs can be parsed afterwards.

    :return: Configured logger instance.
    '''
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(logging.INFO)
    if not logger.handlers:
        log_file = os.getenv("FERMI_RMT_LOG_FILE") or os.path.join(os.getcwd(), "fermi_rmt.log")
        file_handler = logging.FileHandler(log_file, mode='w', encoding="utf-8")
        formatter = logging.Formatter('{"timestamp": "%(asctime)s.%(msecs)03d", "level": "%(levelname)s", "message": "%(message)s"}', datefmt='%Y-%m-%d %H:%M:%S')
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    return logger
