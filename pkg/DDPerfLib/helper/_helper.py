import logging
from typing import Dict, Optional

# Package-wide console handler, shared by every logger handed out by getLogger
ch = logging.StreamHandler()
formatter = logging.Formatter("%(levelname)s: %(asctime)s: %(filename)s:%(lineno)d -- %(message)s")
ch.setFormatter(formatter)
ch.setLevel(logging.WARNING)

loggers: Dict[str, logging.Logger] = {}


def getLogger(name: str) -> logging.Logger:
    """
    Get a logger attached to the DDPerfLib console handler.

    Parameters
    ----------
    name : str
        Name of the logger, usually ``__name__`` of the calling module.

    Returns
    -------
    logging.Logger
        The named logger. Repeated calls with the same name return the same object.
    """
    if name in loggers:
        return loggers[name]
    logger = logging.getLogger(name)
    logger.addHandler(ch)
    logger.setLevel(logging.DEBUG)
    logger.propagate = False
    loggers[name] = logger

    return logger


def log_to_console(level: int = logging.WARNING) -> None:
    """
    Set the level of the package console handler.

    Parameters
    ----------
    level : int
        A ``logging`` level, e.g. ``logging.INFO``.
    """
    ch.setLevel(level)


def log_to_file(filename: str, level: int = logging.DEBUG,
                file_handler: Optional[logging.FileHandler] = None) -> logging.FileHandler:
    """
    Send the output of every package logger to a file as well.

    Parameters
    ----------
    filename : str
        Path of the log file.
    level : int
        Level of the file handler.
    file_handler : logging.FileHandler, optional
        An existing handler to reuse instead of opening ``filename``.

    Returns
    -------
    logging.FileHandler
        The handler that was attached, so that it can be removed again.
    """
    if file_handler is None:
        file_handler = logging.FileHandler(filename)
    file_handler.setFormatter(formatter)
    file_handler.setLevel(level)
    for logger in loggers.values():
        logger.addHandler(file_handler)

    return file_handler
