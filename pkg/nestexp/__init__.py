"""Distribution sequence of nested exponential random variables.

Closed forms for the first three members, characteristic-function inversion for
any n, the Bell/Gould Taylor machinery around the Euler-Gompertz constant and
Monte Carlo validation of both sampling constructions.
"""

__version__ = "1.0.0"
