"""
Script to create the HRCshield logger for the console and the text file.
The log file is written to documents/HRCshield unless HRCSHIELD_LOG_DIR points elsewhere.
"""
import logging
import os
from pathlib import Path, PurePath


class CustomFormatter(logging.Formatter):
    """
    Class to colour the console messages according to their level.
    """
    white = '\x1b[37;1m'
    blue = '\x1b[38;5;39m'
    yellow = '\x1b[38;5;226m'
    red = '\x1b[38;5;196m'
    bold_red = '\x1b[31;1m'
    reset = '\x1b[0m'

    def __init__(self, fmt: str):
        """

        Parameters
        ----------
        fmt : str
            Format of the log message
        """
        super().__init__(fmt=fmt)
        self.fmt = fmt
        self.FORMATS = {
            logging.DEBUG: self.white + self.fmt + self.reset,
            logging.INFO - 5: self.blue + self.fmt + self.reset,
            logging.INFO: self.white + self.fmt + self.reset,
            logging.WARNING: self.yellow + self.fmt + self.reset,
            logging.ERROR: self.red + self.fmt + self.reset,
            logging.CRITICAL: self.bold_red + self.fmt + self.reset
        }

    def format(self, record: logging.LogRecord) -> str:
        """
        Formats the record.

        Parameters
        ----------
        record : logging.LogRecord
            Record to be formatted

        Returns
        -------
        str
            Formatted log message
        """
        formatter = logging.Formatter(self.FORMATS.get(record.levelno, self.fmt), datefmt='%Y-%m-%d %H:%M:%S')
        return formatter.format(record)


def add_logging_level(level_name: str, level_num: int) -> None:  # pragma: no cover
    """
    Adds a new logging level to the logging module and to the logger class.
    The method name is the lower case level name. Nothing happens when the level already exists,
    so the module can be reloaded safely (e.g. by worker processes).

    Parameters
    ----------
    level_name : str
        Name of the new level (e.g. MAIN_INFO)
    level_num : int
        Numeric value of the level

    Returns
    -------
    None
    """
    method_name = level_name.lower()
    if hasattr(logging, level_name):
        return

    def log_for_level(self, message, *args, **kwargs):
        if self.isEnabledFor(level_num):
            self._log(level_num, message, args, **kwargs)

    def log_to_root(message, *args, **kwargs):
        logging.log(level_num, message, *args, **kwargs)

    logging.addLevelName(level_num, level_name)
    setattr(logging, level_name, level_num)
    setattr(logging.getLoggerClass(), method_name, log_for_level)
    setattr(logging, method_name, log_to_root)


add_logging_level('MAIN_INFO', logging.INFO - 5)
log_format = CustomFormatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s (%(filename)s:%(lineno)d)")

shield_logger = logging.getLogger('HRCshield')
shield_logger.setLevel(logging.INFO)
shield_logger.propagate = False

if not shield_logger.handlers:
    log_file_path = Path(os.environ.get('HRCSHIELD_LOG_DIR', PurePath(Path.home(), 'Documents/HRCshield')))
    try:
        log_file_path.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file_path.joinpath('HRCshield.log'), mode='w')
        file_handler.setFormatter(log_format)
        shield_logger.addHandler(file_handler)
    except OSError:  # pragma: no cover
        # read-only home directories (e.g. CI sandboxes) only get console output
        pass
    console_handler = logging.StreamHandler()
    console_handler.setFormatter(log_format)
    shield_logger.addHandler(console_handler)
