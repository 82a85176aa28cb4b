# utils.py
import json
import os
import logging
import uuid
from datetime import datetime
from typing import Any

from errors import ParameterError


def generate_unique_id(prefix: str = 'run') -> str:
    """Generate a unique identifier for a verification run"""
    return f"{prefix}_{datetime.now().strftime('%Y%m%d_%H%M%S')}_{uuid.uuid4().hex[:8]}"


def setup_logger(run_id: str, log_dir: str = 'verification_logs') -> logging.Logger:
    """Setup logger for a verification run"""
    logger = logging.getLogger(run_id)
    logger.setLevel(logging.DEBUG)

    # Repeated runs under one id must not stack handlers
    if logger.handlers:
        return logger

    os.makedirs(log_dir, exist_ok=True)

    # File handler
    fh = logging.FileHandler(os.path.join(log_dir, f'{run_id}.log'))
    fh.setLevel(logging.DEBUG)

    # Console handler
    ch = logging.StreamHandler()
    ch.setLevel(logging.INFO)

    # Formatter
    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    fh.setFormatter(formatter)
    ch.setFormatter(formatter)

    logger.addHandler(fh)
    logger.addHandler(ch)

    return logger


def close_logger(logger: logging.Logger):
    """Detach and close the handlers of a run logger"""
    for handler in list(logger.handlers):
        handler.close()
        logger.removeHandler(handler)


def write_file(filepath: str, content: str):
    """Write content to file"""
    directory = os.path.dirname(filepath)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(filepath, 'w', encoding='utf-8') as f:
        f.write(content)


def read_json_file(filepath: str) -> Any:
    """Load a JSON document, reporting the parse position on failure"""
    if not os.path.isfile(filepath):
        raise ParameterError(f"file not found: {filepath}")
    with open(filepath, 'r', encoding='utf-8') as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as exc:
            raise ParameterError(
                f"invalid JSON in {filepath}: line {exc.lineno} column {exc.colno}: {exc.msg}"
            ) from exc


def format_duration(seconds: float) -> str:
    if seconds < 1:
        return f"{seconds * 1000:.0f} ms"
    if seconds < 60:
        return f"{seconds:.2f} s"
    minutes, rest = divmod(seconds, 60)
    return f"{int(minutes)} min {rest:.1f} s"
