"""
Sample-complexity bounds for the ERM consensus interval.

All arithmetic runs on decimal.Decimal with 50 significant digits and the
ceiling is taken last, so the integers returned here are exact for the
inputs as written (floats are read through their shortest repr, so 0.01
means exactly 1/100).
"""

import math
from dataclasses import dataclass, asdict
from decimal import Decimal, localcontext, ROUND_CEILING
from typing import Dict, Any

from consensusmine.errors import ConfigurationError

PRECISION = 50

# Bisection stops once the bracket is this tight relative to its upper end.
_EPSILON_REL_TOL = 1e-12
_MAX_BISECTIONS = 200


@dataclass(frozen=True)
class BoundInputs:
    """
    Parameters of the uniform-convergence bound.

    Attributes:
        n: Number of voters; labels lie in [-n, n]
        epsilon: Target accuracy on the (raw-scale) objective
        delta: Failure probability
        d_pd: Pseudo-dimension of the labeled-interval class
    """

    n: int
    epsilon: float
    delta: float
    d_pd: int = 2

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ConfigurationError(f"n must be an integer >= 1, got {self.n!r}")
        if not (self.epsilon > 0 and math.isfinite(self.epsilon)):
            raise ConfigurationError(f"epsilon must be a positive finite number, got {self.epsilon}")
        if not 0 < self.delta < 1:
            raise ConfigurationError(f"delta must be in (0, 1), got {self.delta}")
        if isinstance(self.d_pd, bool) or not isinstance(self.d_pd, int) or self.d_pd < 1:
            raise ConfigurationError(f"d_pd must be an integer >= 1, got {self.d_pd!r}")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _dec(value) -> Decimal:
    return Decimal(repr(value)) if isinstance(value, float) else Decimal(value)


def _ceil(value: Decimal) -> int:
    return int(value.to_integral_value(rounding=ROUND_CEILING))


def _terms(b: BoundInputs) -> Dict[str, Decimal]:
    """Additive pieces of the bound, computed in the active decimal context."""
    one = Decimal(1)
    e = one.exp()
    m0 = _dec(b.n)
    eps = _dec(b.epsilon)
    d = _dec(b.d_pd)

    capacity = d * (32 * e * m0 / eps).ln()
    covering_constant = (4 * e * (d + 1)).ln()
    confidence = (one / _dec(b.delta)).ln()
    return {
        "leading_factor": 32 * m0 * m0 / (eps * eps),
        "capacity_term": capacity,
        "covering_constant_term": covering_constant,
        "confidence_term": confidence,
        "log_covering_number": (e * (d + 1)).ln() + capacity,
        # ln(4 N / delta): the sum the leading factor multiplies
        "failure_probability_exponent": capacity + covering_constant + confidence,
    }


def sample_complexity(b: BoundInputs) -> int:
    """
    Smallest m for which the uniform-convergence bound guarantees accuracy
    epsilon with probability at least 1 - delta:

        m = ceil( 32 n^2 / eps^2 * ( d ln(32 e n / eps) + ln(4 e (d + 1)) + ln(1 / delta) ) )

    Args:
        b: Validated bound inputs

    Returns:
        Required number of i.i.d. samples
    """
    with localcontext() as ctx:
        ctx.prec = PRECISION
        terms = _terms(b)
        return _ceil(terms["leading_factor"] * terms["failure_probability_exponent"])


def experiment_baseline(n: int, epsilon: float, delta: float) -> int:
    """
    Reduced starting sample count used by the sample-count sweep:
    ceil( (ln(n / eps) + ln(1 / delta)) / eps^2 ).

    Raises:
        ConfigurationError: For invalid n, epsilon or delta
    """
    b = BoundInputs(n=n, epsilon=epsilon, delta=delta)
    with localcontext() as ctx:
        ctx.prec = PRECISION
        eps = _dec(b.epsilon)
        logs = (_dec(b.n) / eps).ln() + (Decimal(1) / _dec(b.delta)).ln()
        return _ceil(logs / (eps * eps))


def bound_terms(b: BoundInputs) -> Dict[str, float]:
    """
    Diagnostic breakdown of the bound.

    Returns:
        Dictionary with leading_factor, capacity_term, covering_constant_term,
        confidence_term, log_covering_number and failure_probability_exponent
        as floats, plus the exact integer m
    """
    with localcontext() as ctx:
        ctx.prec = PRECISION
        terms = {key: float(value) for key, value in _terms(b).items()}
    terms["m"] = sample_complexity(b)
    return terms


def epsilon_for_samples(n: int, m: int, delta: float, d_pd: int = 2) -> float:
    """
    Smallest epsilon whose sample complexity fits within m samples.

    The bound decreases in epsilon, so the answer is bracketed by doubling
    and then bisected.

    Args:
        n: Number of voters
        m: Available samples (>= 1)
        delta: Failure probability
        d_pd: Pseudo-dimension

    Returns:
        epsilon (raw scale) with sample_complexity(n, epsilon, delta) <= m
    """
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise ConfigurationError(f"m must be an integer >= 1, got {m!r}")

    def fits(eps: float) -> bool:
        return sample_complexity(BoundInputs(n=n, epsilon=eps, delta=delta, d_pd=d_pd)) <= m

    hi = float(n)
    while not fits(hi):
        hi *= 2.0
    lo = hi / 2.0
    while fits(lo):
        hi, lo = lo, lo / 2.0

    for _ in range(_MAX_BISECTIONS):
        if hi - lo <= _EPSILON_REL_TOL * hi:
            break
        mid = (lo + hi) / 2.0
        if fits(mid):
            hi = mid
        else:
            lo = mid
    return hi
