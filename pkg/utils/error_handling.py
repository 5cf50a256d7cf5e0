"""Error handling utilities for the numerical library and its CLI."""

from typing import Optional, Dict, Any, Callable, TypeVar
import logging
import time
from functools import wraps

import pydantic

logger = logging.getLogger(__name__)

T = TypeVar('T')

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_TOLERANCE = 2
EXIT_VERIFICATION = 3


class NestExpError(Exception):
    """Base exception for library errors."""
    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        self.message = message
        self.details = details or {}
        super().__init__(self.message)


class ValidationError(NestExpError):
    """Invalid argument or configuration."""
    pass


class DomainError(NestExpError):
    """Argument outside the domain of a function."""
    pass


class PoleError(DomainError):
    """Gamma function evaluated at a pole."""
    pass


class GammaOverflowError(NestExpError):
    """Imaginary part beyond the supported band of the gamma kernel."""
    pass


class UnsupportedIndexError(NestExpError):
    """No closed form exists for the requested sequence index."""
    pass


class ParityError(NestExpError):
    """Operation requires the other parity of n."""
    pass


class TableExhaustedError(NestExpError):
    """Coefficient table does not cover the requested index."""
    pass


class ToleranceNotMetError(NestExpError):
    """Quadrature stopped before reaching the tolerance.

    ``details`` carries ``value`` (best estimate) and ``est_error``.
    """
    pass


class DivergenceError(NestExpError):
    """Raw inversion value left the admissible band."""
    pass


class VerificationError(NestExpError):
    """One or more acceptance criteria failed."""
    pass


# Errors caused by the request rather than the numerics; settings models raise
# pydantic.ValidationError
USER_ERRORS = (
    ValidationError, DomainError, UnsupportedIndexError, ParityError,
    TableExhaustedError, GammaOverflowError, pydantic.ValidationError,
)


def exit_code_for(error: BaseException) -> int:
    """Map an exception to the CLI exit code."""
    if isinstance(error, VerificationError):
        return EXIT_VERIFICATION
    if isinstance(error, (ToleranceNotMetError, DivergenceError)):
        return EXIT_TOLERANCE
    if isinstance(error, USER_ERRORS):
        return EXIT_USAGE
    return EXIT_TOLERANCE


def handle_errors(func: Callable[..., int]) -> Callable[..., int]:
    """Decorator for CLI handlers.

    The wrapped handler returns an exit code; library errors are logged and
    converted to the documented exit codes.
    """
    @wraps(func)
    def wrapper(*args, **kwargs) -> int:
        try:
            return func(*args, **kwargs)
        except USER_ERRORS as e:
            logger.warning(f"Invalid request in {func.__name__}: {e}")
            return exit_code_for(e)
        except (ToleranceNotMetError, DivergenceError) as e:
            logger.error(f"Numerical failure in {func.__name__}: {e} {e.details}")
            return exit_code_for(e)
        except VerificationError as e:
            logger.error(f"Verification failed in {func.__name__}: {e}")
            return EXIT_VERIFICATION
        except Exception as e:
            logger.error(f"Unexpected error in {func.__name__}: {e}", exc_info=True)
            return EXIT_TOLERANCE
    return wrapper


def log_operation(operation_name: str):
    """Decorator for logging operations and recording their duration."""
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            # Imported lazily: monitoring pulls in psutil
            from monitoring.metrics import metrics_collector

            logger.debug(f"Starting {operation_name} in {func.__name__}")
            started = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                metrics_collector.record_operation(
                    operation_name, time.perf_counter() - started, error=str(e)
                )
                logger.debug(f"Failed {operation_name} in {func.__name__}: {e}")
                raise
            duration = time.perf_counter() - started
            metrics_collector.record_operation(operation_name, duration)
            logger.debug(f"Completed {operation_name} in {func.__name__} ({duration:.3f}s)")
            return result
        return wrapper
    return decorator
