"""
Logging configuration for the cavity-scatter system.
"""

import logging
import os
from pathlib import Path
from typing import Optional

import control


def setup_logging(log_dir: Optional[str] = None, quiet: bool = False) -> logging.Logger:
    """
    Set up consolidated logging to system.log.

    Args:
        log_dir: Directory for system.log (control.log_dir by default)
        quiet: Only warnings and errors reach the console

    Returns:
        Root logger configured for system-wide logging
    """
    log_dir = log_dir or control.log_dir
    Path(log_dir).mkdir(parents=True, exist_ok=True)

    # Configure root logger
    root_logger = logging.getLogger()
    root_logger.setLevel(logging.INFO)

    # Remove any existing handlers
    for handler in list(root_logger.handlers):
        root_logger.removeHandler(handler)
        handler.close()

    file_formatter = logging.Formatter(
        "%(asctime)s | %(levelname)-8s | %(name)-20s | %(message)s", datefmt="%Y-%m-%d %H:%M:%S"
    )
    console_formatter = logging.Formatter("%(asctime)s | %(levelname)-8s | %(message)s", datefmt="%Y-%m-%d %H:%M:%S")

    file_handler = logging.FileHandler(os.path.join(log_dir, "system.log"), mode="w", encoding="utf-8")
    file_handler.setFormatter(file_formatter)
    file_handler.setLevel(logging.INFO)
    root_logger.addHandler(file_handler)

    console_handler = logging.StreamHandler()
    console_handler.setFormatter(console_formatter)
    console_handler.setLevel(logging.WARNING if quiet else logging.INFO)
    root_logger.addHandler(console_handler)

    return root_logger


# Component loggers inherit the root handlers once setup_logging() has run
model_logger = logging.getLogger("ModelClient")
ensemble_logger = logging.getLogger("EnsembleClient")
comparison_logger = logging.getLogger("ComparisonClient")
output_logger = logging.getLogger("OutputClient")
system_logger = logging.getLogger("SystemClient")
