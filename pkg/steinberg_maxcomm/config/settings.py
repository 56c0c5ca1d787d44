"""
Verification System Configuration
"""

import os
from enum import Enum
from typing import Dict, List


class LogLevel(Enum):
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


class OutputFormat(Enum):
    JSON = "json"
    TEXT = "text"
    BOTH = "both"


class RingChoice(Enum):
    INTEGERS = "int"
    RATIONALS = "rat"


class VerificationConfig:
    """Configuration class for the Steinberg verification toolkit"""

    def __init__(self):
        # Logging Configuration
        self.log_level = LogLevel(os.getenv("STEINBERG_LOG_LEVEL", "WARNING"))
        self.log_format = OutputFormat(os.getenv("STEINBERG_LOG_FORMAT", "json"))
        self.log_file_path = os.getenv("STEINBERG_LOG_FILE", "")
        self.log_max_size = int(os.getenv("STEINBERG_LOG_MAX_SIZE", "10485760"))  # 10MB
        self.log_backup_count = int(os.getenv("STEINBERG_LOG_BACKUP_COUNT", "5"))

        # Arithmetic Configuration
        self.ring = RingChoice(os.getenv("STEINBERG_RING", "rat"))

        # Sweep Configuration
        self.seed = int(os.getenv("STEINBERG_SEED", "0"))
        self.degree = int(os.getenv("STEINBERG_DEGREE", "4"))
        self.random_samples = int(os.getenv("STEINBERG_RANDOM_SAMPLES", "100"))
        self.witness_samples = int(os.getenv("STEINBERG_WITNESS_SAMPLES", "200"))
        self.lazy_window = int(os.getenv("STEINBERG_WINDOW", "8"))

        # Performance Configuration
        self.enable_performance_monitoring = os.getenv("STEINBERG_PERFORMANCE_MONITORING", "true").lower() == "true"

    def validate(self) -> List[str]:
        """Validate configuration and return list of errors"""
        errors = []

        if not isinstance(self.log_max_size, int) or self.log_max_size < 1024:
            errors.append("log_max_size must be a positive integer >= 1024")

        if not isinstance(self.log_backup_count, int) or self.log_backup_count < 1:
            errors.append("log_backup_count must be a positive integer >= 1")

        if not isinstance(self.degree, int) or self.degree < 1:
            errors.append("degree must be a positive integer >= 1")

        if not isinstance(self.random_samples, int) or self.random_samples < 0:
            errors.append("random_samples must be a non-negative integer")

        if not isinstance(self.witness_samples, int) or self.witness_samples < 0:
            errors.append("witness_samples must be a non-negative integer")

        if not isinstance(self.lazy_window, int) or self.lazy_window < 2:
            errors.append("lazy_window must be an integer >= 2")

        return errors

    def to_dict(self) -> Dict:
        """Convert configuration to dictionary"""
        return {
            "log_level": self.log_level.value,
            "log_format": self.log_format.value,
            "log_file_path": self.log_file_path,
            "log_max_size": self.log_max_size,
            "log_backup_count": self.log_backup_count,
            "ring": self.ring.value,
            "seed": self.seed,
            "degree": self.degree,
            "random_samples": self.random_samples,
            "witness_samples": self.witness_samples,
            "lazy_window": self.lazy_window,
            "enable_performance_monitoring": self.enable_performance_monitoring,
        }
