"""
Core module for the Steinberg verification toolkit
"""

from .verifier import VerificationSystem, Command
from .logger import VerificationLogger, EventType
from .report import Report, Status

__all__ = ["VerificationSystem", "Command", "VerificationLogger", "EventType", "Report", "Status"]
