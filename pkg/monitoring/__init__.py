"""Monitoring package for operation timings and resource usage."""

from .metrics import metrics_collector, MetricsCollector, OperationMetrics

__all__ = ['metrics_collector', 'MetricsCollector', 'OperationMetrics']
