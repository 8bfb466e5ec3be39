import logging
import logging.config
import sys
from pathlib import Path
from typing import Any, Dict, Optional

from app.core.config import settings


def build_logging_config(level: str, log_dir: Optional[Path]) -> Dict[str, Any]:
    """Build the dictConfig mapping; file handlers only when log_dir is given"""
    handlers: Dict[str, Any] = {
        "console": {
            "class": "logging.StreamHandler",
            "level": level,
            "formatter": "default",
            "stream": sys.stderr,
        },
    }
    app_handlers = ["console"]
    experiment_handlers = ["console"]

    if log_dir is not None:
        handlers.update(
            {
                "file": {
                    "class": "logging.handlers.RotatingFileHandler",
                    "level": "DEBUG",
                    "formatter": "detailed",
                    "filename": str(log_dir / "app.log"),
                    "maxBytes": 10485760,  # 10MB
                    "backupCount": 5,
                    "encoding": "utf8",
                },
                "error_file": {
                    "class": "logging.handlers.RotatingFileHandler",
                    "level": "ERROR",
                    "formatter": "detailed",
                    "filename": str(log_dir / "errors.log"),
                    "maxBytes": 10485760,  # 10MB
                    "backupCount": 5,
                    "encoding": "utf8",
                },
                "experiments_file": {
                    "class": "logging.handlers.RotatingFileHandler",
                    "level": "DEBUG",
                    "formatter": "detailed",
                    "filename": str(log_dir / "experiments.log"),
                    "maxBytes": 10485760,  # 10MB
                    "backupCount": 3,
                    "encoding": "utf8",
                },
            }
        )
        app_handlers += ["file", "error_file"]
        experiment_handlers += ["experiments_file", "error_file"]

    return {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {
            "default": {
                "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
                "datefmt": "%Y-%m-%d %H:%M:%S",
            },
            "detailed": {
                "format": "%(asctime)s - %(name)s - %(levelname)s - %(module)s - %(funcName)s - %(lineno)d - %(message)s",
                "datefmt": "%Y-%m-%d %H:%M:%S",
            },
        },
        "handlers": handlers,
        "loggers": {
            "": {  # Root logger
                "level": "WARNING",
                "handlers": ["console"],
            },
            "app": {
                "level": "DEBUG",
                "handlers": app_handlers,
                "propagate": False,
            },
            "app.experiments": {
                "level": "DEBUG",
                "handlers": experiment_handlers,
                "propagate": False,
            },
            "uvicorn": {
                "level": "INFO",
                "handlers": ["console"],
                "propagate": False,
            },
        },
    }


def setup_logging(level: Optional[str] = None, to_file: Optional[bool] = None) -> logging.Logger:
    """Setup logging configuration"""
    level = (level or settings.LOG_LEVEL).upper()
    to_file = settings.LOG_TO_FILE if to_file is None else to_file

    log_dir = None
    if to_file:
        log_dir = Path(settings.LOG_DIR)
        log_dir.mkdir(parents=True, exist_ok=True)

    logging.config.dictConfig(build_logging_config(level, log_dir))

    logger = logging.getLogger("app")
    logger.debug("Logging configuration initialized")

    return logger


def get_logger(name: str = "app") -> logging.Logger:
    """Get a logger with the specified name"""
    return logging.getLogger(name)
