"""Adaptive Gauss–Legendre panels on a finite interval.

Every panel carries its own order-p estimate; a round splits all pending panels
in two at once, so integrands are evaluated vectorised over every node of every
panel in that round. A panel is accepted when the two halves agree with the
whole to within its share of the tolerance.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from logging_config import quadrature_logger as logger
from utils.error_handling import ValidationError

Integrand = Callable[[np.ndarray], np.ndarray]

DEFAULT_ORDER = 20
# panels narrower than this are accepted whatever their disagreement
MIN_PANEL_WIDTH = 1e-9
# fraction of the node budget after which a warning is logged
BUDGET_WARNING_FRACTION = 0.8


@dataclass(frozen=True)
class QuadratureOutcome:
    value: float
    est_error: float
    nodes_used: int
    converged: bool


@lru_cache(maxsize=8)
def _rule(order: int) -> Tuple[np.ndarray, np.ndarray]:
    return leggauss(order)


def _panel_estimates(
    f: Integrand,
    left: np.ndarray,
    right: np.ndarray,
    order: int
) -> np.ndarray:
    nodes, weights = _rule(order)
    half = 0.5 * (right - left)
    centre = 0.5 * (right + left)
    points = centre[:, None] + half[:, None] * nodes[None, :]
    values = np.asarray(f(points.ravel()), dtype=np.float64).reshape(points.shape)
    return half * (values @ weights)


def adaptive_gauss_legendre(
    f: Integrand,
    a: float,
    b: float,
    abs_tol: float,
    max_nodes: int,
    order: int = DEFAULT_ORDER,
    initial_width: float = 1.0
) -> QuadratureOutcome:
    """Integrate ``f`` over [a, b] to an absolute tolerance.

    Args:
        f: Vectorised integrand.
        a: Lower limit.
        b: Upper limit, b > a.
        abs_tol: Target absolute error for the whole interval.
        max_nodes: Budget of integrand evaluations.
        order: Gauss–Legendre points per panel.
        initial_width: Width of the starting panels.

    Returns:
        QuadratureOutcome; ``converged`` is False when the node budget ran out,
        in which case the unresolved panels contribute their best estimate and
        their disagreement to ``est_error``.
    """
    if not b > a:
        raise ValidationError("Integration interval must have b > a", {"a": a, "b": b})
    length = b - a
    panel_count = max(1, int(math.ceil(length / initial_width)))
    edges = np.linspace(a, b, panel_count + 1)
    left, right = edges[:-1].copy(), edges[1:].copy()

    whole = _panel_estimates(f, left, right, order)
    used = order * panel_count
    accepted: List[float] = []
    errors: List[float] = []
    converged = True
    warned = False

    while left.size:
        if used + 2 * order * left.size > max_nodes:
            accepted.extend(whole.tolist())
            errors.extend([abs(v) for v in whole])
            converged = False
            logger.warning(
                f"Node budget {max_nodes} exhausted with {left.size} unresolved panels"
            )
            break
        if not warned and used > BUDGET_WARNING_FRACTION * max_nodes:
            logger.warning(f"Quadrature used {used} of {max_nodes} nodes")
            warned = True

        middle = 0.5 * (left + right)
        first = _panel_estimates(f, left, middle, order)
        second = _panel_estimates(f, middle, right, order)
        used += 2 * order * left.size

        refined = first + second
        disagreement = np.abs(whole - refined)
        width = right - left
        local_tol = abs_tol * width / length
        done = (disagreement <= local_tol) | (width < MIN_PANEL_WIDTH)

        accepted.extend(refined[done].tolist())
        errors.extend(disagreement[done].tolist())

        todo = ~done
        left = np.concatenate([left[todo], middle[todo]])
        right = np.concatenate([middle[todo], right[todo]])
        whole = np.concatenate([first[todo], second[todo]])

    value = math.fsum(accepted)
    est_error = math.fsum(errors)
    logger.debug(
        f"GL quadrature on [{a:.3g}, {b:.3g}]: value={value:.17g} "
        f"est_error={est_error:.3g} nodes={used}"
    )
    return QuadratureOutcome(value=value, est_error=est_error, nodes_used=used,
                             converged=converged)
