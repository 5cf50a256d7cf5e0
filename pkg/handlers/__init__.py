from .kappa import setup_kappa_handlers
from .cdf import setup_cdf_handlers
from .sequences import setup_sequences_handlers
from .simulate import setup_simulate_handlers
from .taylor import setup_taylor_handlers
from .verify import setup_verify_handlers

__all__ = [
    "setup_kappa_handlers",
    "setup_cdf_handlers",
    "setup_sequences_handlers",
    "setup_simulate_handlers",
    "setup_taylor_handlers",
    "setup_verify_handlers",
]
