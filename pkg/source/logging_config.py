import os
import logging

import dotenv

"""
Logger factory shared by every module.
The level is read from DIRAC_LOG_LEVEL, which may also come from a .env file.
"""

dotenv.load_dotenv()

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
ROOT_NAME = "dirac"

_configured = False


def _configure_root() -> logging.Logger:
    global _configured

    root = logging.getLogger(ROOT_NAME)
    if not _configured:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(handler)
        root.setLevel(os.getenv("DIRAC_LOG_LEVEL", "WARNING").upper())
        _configured = True

    return root


def get_logger(name: str) -> logging.Logger:
    """
    Return a logger below the package root logger.

    Args:
        name (str): Usually the calling module's __name__.

    Returns:
        logging.Logger: Logger named "dirac.<name>".
    """
    _configure_root()
    return logging.getLogger(f"{ROOT_NAME}.{name}")


def set_level(level: str) -> None:
    """
    Override the level of the package root logger.

    Args:
        level (str): A logging level name such as "DEBUG".
    """
    _configure_root().setLevel(level.upper())
    return
