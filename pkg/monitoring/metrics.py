"""Metrics collection for numerical operations."""

import logging
import threading
from datetime import datetime
from typing import Dict, Optional, Any
from dataclasses import dataclass

import psutil

logger = logging.getLogger(__name__)


@dataclass
class OperationMetrics:
    """Metrics for a specific operation."""
    count: int = 0
    total_time: float = 0.0
    errors: int = 0
    last_error: Optional[str] = None
    last_error_time: Optional[datetime] = None
    min_time: float = float('inf')
    max_time: float = 0.0
    avg_time: float = 0.0


class MetricsCollector:
    """Collects operation timings and process resource usage."""

    def __init__(self):
        """Initialize metrics collector."""
        self._start_time = datetime.now()
        self._operation_metrics: Dict[str, OperationMetrics] = {}
        self._peak_rss_mb = 0.0
        # Verification criteria may record from worker threads
        self._lock = threading.Lock()

    def record_operation(
        self,
        operation: str,
        duration: float,
        error: Optional[str] = None
    ) -> None:
        """Record operation metrics."""
        with self._lock:
            metrics = self._operation_metrics.setdefault(operation, OperationMetrics())
            metrics.count += 1
            metrics.total_time += duration
            metrics.min_time = min(metrics.min_time, duration)
            metrics.max_time = max(metrics.max_time, duration)
            metrics.avg_time = metrics.total_time / metrics.count

            if error:
                metrics.errors += 1
                metrics.last_error = error
                metrics.last_error_time = datetime.now()
        self.sample_resources()

    def sample_resources(self) -> Dict[str, float]:
        """Read current process resource usage and update the RSS peak."""
        try:
            process = psutil.Process()
            rss_mb = process.memory_info().rss / (1024 * 1024)
            cpu_percent = process.cpu_percent()
        except psutil.Error as e:
            logger.debug(f"Resource sampling failed: {e}")
            return {"memory_usage_mb": 0.0, "cpu_percent": 0.0}
        with self._lock:
            self._peak_rss_mb = max(self._peak_rss_mb, rss_mb)
        return {"memory_usage_mb": rss_mb, "cpu_percent": cpu_percent}

    def get_operation(self, operation: str) -> Optional[OperationMetrics]:
        """Get metrics for a single operation, if recorded."""
        with self._lock:
            return self._operation_metrics.get(operation)

    def get_metrics(self) -> Dict[str, Any]:
        """Get current metrics."""
        system = self.sample_resources()
        with self._lock:
            operations = {
                op: {
                    "count": m.count,
                    "avg_time": m.avg_time,
                    "min_time": m.min_time if m.count else 0.0,
                    "max_time": m.max_time,
                    "errors": m.errors,
                    "last_error": m.last_error,
                }
                for op, m in sorted(self._operation_metrics.items())
            }
            peak = self._peak_rss_mb
        return {
            "uptime_s": (datetime.now() - self._start_time).total_seconds(),
            "system": {
                "memory_usage_mb": system["memory_usage_mb"],
                "peak_memory_mb": peak,
                "cpu_percent": system["cpu_percent"],
            },
            "operations": operations,
        }

    def reset(self) -> None:
        """Drop all recorded operations."""
        with self._lock:
            self._operation_metrics.clear()
            self._peak_rss_mb = 0.0
            self._start_time = datetime.now()


metrics_collector = MetricsCollector()
