"""
Verification Logger - structured event logging for the toolkit

Reports own standard output; every log line goes to standard error or to a
rotating file.
"""

import json
import logging
import sys
import threading
from collections import defaultdict, deque
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from enum import Enum
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..config.settings import LogLevel, OutputFormat, VerificationConfig

PACKAGE_LOGGER = "steinberg_maxcomm"


class EventType(Enum):
    GROUPOID = "groupoid"
    ALGEBRA = "algebra"
    PARTITION = "partition"
    LEAVITT = "leavitt"
    COMMAND = "command"
    PERFORMANCE_METRIC = "performance_metric"
    ERROR_EVENT = "error_event"
    SYSTEM_EVENT = "system_event"


@dataclass
class LogEntry:
    """Structured log entry"""
    timestamp: str
    level: str
    event_type: EventType
    message: str
    data: Dict[str, Any]
    thread_id: Optional[str] = None
    command: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        entry = asdict(self)
        entry["event_type"] = self.event_type.value
        return entry

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), default=str)


class VerificationLogger:
    """
    Structured logging for verification runs.
    Configures the package logger, so library modules that log through
    logging.getLogger(__name__) share its handler and level.
    """

    _LEVEL_ORDER = {
        LogLevel.DEBUG: 0,
        LogLevel.INFO: 1,
        LogLevel.WARNING: 2,
        LogLevel.ERROR: 3,
        LogLevel.CRITICAL: 4,
    }

    def __init__(self, config: VerificationConfig):
        self.config = config
        self._setup_logging()

        # Thread safety
        self._lock = threading.RLock()

        # Event tracking
        self._event_counts = defaultdict(int)
        self._recent_events = deque(maxlen=1000)

    def _setup_logging(self):
        """Attach one handler: rotating file if configured, standard error otherwise"""
        if self.config.log_file_path:
            path = Path(self.config.log_file_path)
            path.parent.mkdir(parents=True, exist_ok=True)
            handler = RotatingFileHandler(
                filename=path,
                maxBytes=self.config.log_max_size,
                backupCount=self.config.log_backup_count,
                encoding="utf-8",
            )
        else:
            handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s"))
        handler.set_name(PACKAGE_LOGGER)

        self._logger = logging.getLogger(PACKAGE_LOGGER)
        for old in [h for h in self._logger.handlers if h.get_name() == PACKAGE_LOGGER]:
            self._logger.removeHandler(old)
            old.close()
        self._logger.addHandler(handler)
        self._logger.setLevel(getattr(logging, self.config.log_level.value))
        self._logger.propagate = False

    def _should_log(self, level: LogLevel) -> bool:
        return self._LEVEL_ORDER[level] >= self._LEVEL_ORDER[self.config.log_level]

    def _create_log_entry(self, level: LogLevel, event_type: EventType,
                          message: str, data: Dict[str, Any] = None) -> LogEntry:
        return LogEntry(
            timestamp=datetime.now(timezone.utc).isoformat(),
            level=level.value,
            event_type=event_type,
            message=message,
            data=data or {},
            thread_id=threading.current_thread().name,
            command=data.get("command") if data else None,
        )

    def _store_event(self, entry: LogEntry):
        with self._lock:
            self._recent_events.append(entry)
            self._event_counts[entry.event_type.value] += 1

    def _log_structured(self, entry: LogEntry):
        log_func = {
            LogLevel.DEBUG: self._logger.debug,
            LogLevel.INFO: self._logger.info,
            LogLevel.WARNING: self._logger.warning,
            LogLevel.ERROR: self._logger.error,
            LogLevel.CRITICAL: self._logger.critical,
        }[LogLevel(entry.level)]

        if self.config.log_format == OutputFormat.JSON:
            log_func(entry.to_json())
        elif self.config.log_format == OutputFormat.TEXT:
            log_func(f"[{entry.event_type.value}] {entry.message}")
        else:
            log_func(f"[{entry.event_type.value}] {entry.message} {entry.to_json()}")

        self._store_event(entry)

    def _log(self, level: LogLevel, message: str, event_type: EventType, data: Dict[str, Any] = None):
        if self._should_log(level):
            self._log_structured(self._create_log_entry(level, event_type, message, data))

    # Public logging methods

    def debug(self, message: str, event_type: EventType = EventType.SYSTEM_EVENT, data: Dict[str, Any] = None):
        self._log(LogLevel.DEBUG, message, event_type, data)

    def info(self, message: str, event_type: EventType = EventType.SYSTEM_EVENT, data: Dict[str, Any] = None):
        self._log(LogLevel.INFO, message, event_type, data)

    def warning(self, message: str, event_type: EventType = EventType.SYSTEM_EVENT, data: Dict[str, Any] = None):
        self._log(LogLevel.WARNING, message, event_type, data)

    def error(self, message: str, event_type: EventType = EventType.ERROR_EVENT, data: Dict[str, Any] = None):
        self._log(LogLevel.ERROR, message, event_type, data)

    def critical(self, message: str, event_type: EventType = EventType.ERROR_EVENT, data: Dict[str, Any] = None):
        self._log(LogLevel.CRITICAL, message, event_type, data)

    # Specialized logging methods

    def log_command(self, command_data: Dict[str, Any]):
        """Command start/finish with its options"""
        self.info(
            f"Command {command_data.get('command', 'unknown')}: {command_data.get('phase', 'run')}",
            EventType.COMMAND,
            command_data,
        )

    def log_check(self, event_type: EventType, check_data: Dict[str, Any]):
        """Outcome of one named verification check"""
        status = "passed" if check_data.get("ok") else "failed"
        self.debug(f"Check {check_data.get('check', 'unknown')} {status}", event_type, check_data)

    def log_performance_metric(self, performance_data: Dict[str, Any]):
        self.debug(
            f"Performance: {performance_data.get('metric_name', 'unknown')} = {performance_data.get('value', 'N/A')}",
            EventType.PERFORMANCE_METRIC,
            performance_data,
        )

    def log_error_event(self, error_data: Dict[str, Any]):
        self.error(
            f"Error: {error_data.get('error_message', 'unknown error')}",
            EventType.ERROR_EVENT,
            error_data,
        )

    def log_system_event(self, event_description: str, data: Dict[str, Any] = None):
        self.info(event_description, EventType.SYSTEM_EVENT, data)

    # Query methods

    def get_recent_events(self, limit: int = 100, event_type: Optional[EventType] = None,
                          level: Optional[LogLevel] = None) -> List[LogEntry]:
        with self._lock:
            events = list(self._recent_events)
        if event_type:
            events = [e for e in events if e.event_type == event_type]
        if level:
            events = [e for e in events if LogLevel(e.level) == level]
        return events[-limit:]

    def get_event_counts(self) -> Dict[str, int]:
        with self._lock:
            return dict(self._event_counts)

    def clear_events(self):
        with self._lock:
            self._recent_events.clear()
            self._event_counts.clear()
