"""
Unicode-safe logging for the pipeline (console on stderr, optional rotating file)
"""
import logging
import sys
import os
from logging.handlers import RotatingFileHandler
from datetime import datetime
from typing import Optional

LOG_DIR_ENV = "TRIPLE_SCORER_LOG_DIR"

_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
_DATEFMT = '%Y-%m-%d %H:%M:%S'

# Loggers created through setup_logger, so set_log_level can reach all of them
_registered = set()
_log_file: Optional[str] = None


class SafeConsoleHandler(logging.StreamHandler):
    """Console handler that degrades to ASCII instead of failing on encoding errors"""

    def __init__(self, stream=None):
        if stream is None:
            stream = sys.stderr
        super().__init__(stream)

    def emit(self, record):
        try:
            msg = self.format(record)
            self.stream.write(msg + self.terminator)
            self.flush()
        except (UnicodeEncodeError, UnicodeError):
            try:
                msg = self.format(record)
                msg = msg.encode('ascii', errors='replace').decode('ascii')
                self.stream.write(msg + self.terminator)
                self.flush()
            except Exception:
                self.handleError(record)
        except Exception:
            self.handleError(record)


def _resolve_log_file(log_dir: Optional[str]) -> Optional[str]:
    """Pick the log file path once per process; None disables file logging"""
    global _log_file
    if _log_file is not None:
        return _log_file
    log_dir = log_dir or os.environ.get(LOG_DIR_ENV)
    if not log_dir:
        return None
    try:
        os.makedirs(log_dir, exist_ok=True)
    except OSError:
        return None
    _log_file = os.path.join(log_dir, f"triple_scorer_{datetime.now().strftime('%Y%m%d_%H%M%S')}.log")
    return _log_file


def setup_logger(name="triple_scorer", log_level="INFO", log_dir: Optional[str] = None):
    """Setup a module logger with the shared console (and optional file) handlers"""
    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, str(log_level).upper(), logging.INFO))
    logger.handlers.clear()
    logger.propagate = False

    formatter = logging.Formatter(_FORMAT, datefmt=_DATEFMT)

    console_handler = SafeConsoleHandler(sys.stderr)
    console_handler.setLevel(logging.DEBUG)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    log_file = _resolve_log_file(log_dir)
    if log_file:
        try:
            file_handler = RotatingFileHandler(
                log_file,
                maxBytes=10 * 1024 * 1024,  # 10 MB
                backupCount=3,
                encoding='utf-8'
            )
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)
        except OSError as e:
            logger.warning(f"[WARN] Could not setup file logging: {e}, using console only")

    _registered.add(name)
    return logger


def set_log_level(log_level: str):
    """Apply a level to every logger created through setup_logger"""
    level = getattr(logging, str(log_level).upper(), logging.INFO)
    for name in _registered:
        logging.getLogger(name).setLevel(level)


def enable_file_logging(log_dir: str):
    """Attach the rotating file handler to every registered logger"""
    for name in list(_registered):
        level = logging.getLevelName(logging.getLogger(name).level)
        setup_logger(name, level, log_dir)
