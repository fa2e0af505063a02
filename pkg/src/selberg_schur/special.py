"""Scalar kernels: complex log-gamma, sin(pi z), Pochhammer symbols and
terminating hypergeometric sums at unit argument."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import NonTerminatingError, PoleError, ZeroDenominatorError
from .partitions import Partition

__all__ = [
    "log_gamma",
    "gamma",
    "log_beta",
    "beta",
    "sinpi",
    "pochhammer",
    "gen_pochhammer",
    "HypSpec",
    "hyp_terminating",
    "nonpositive_integer",
]

# 13-term Lanczos sum, scaled by exp(-g); numerator coefficients are listed
# from the highest power down, the denominator is z(z+1)...(z+11).
_LANCZOS_G = 6.024680040776729583740234375
_LANCZOS_NUM = (
    0.006061842346248906525783753964555936883222,
    0.5098416655656676188125178644804694509993,
    19.51992788247617482847860966235652136208,
    449.9445569063168119446858607650988409623,
    6955.999602515376140356310115515198987526,
    75999.29304014542649875303443598909137092,
    601859.6171681098786670226533699352302507,
    3481712.15498064590882071018964774556468,
    14605578.08768506808414169982791359218571,
    43338889.32467613834773723740590533316085,
    86363131.28813859145546927288977868422342,
    103794043.1163445451906271053616070238554,
    56906521.91347156388090791033559122686859,
)
_LANCZOS_DEN = (1, 66, 1925, 32670, 357423, 2637558, 13339535, 45995730,
                105258076, 150917976, 120543840, 39916800, 0)

_LOG_PI = math.log(math.pi)


def _ratevl(z: complex, num: Sequence[float], den: Sequence[float]) -> complex:
    # Horner in 1/z for |z| > 1 keeps the large coefficients from overflowing.
    if abs(z) > 1:
        y = 1 / z
        n = d = 0j
        for c in reversed(num):
            n = n * y + c
        for c in reversed(den):
            d = d * y + c
    else:
        n = d = 0j
        for c in num:
            n = n * z + c
        for c in den:
            d = d * z + c
    return n / d


def nonpositive_integer(z: complex) -> int | None:
    """Return ``-z`` as an int when ``z`` is exactly a nonpositive integer."""
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real):
        return int(-z.real)
    return None


def _log_gamma_right(z: complex) -> complex:
    zgh = z + (_LANCZOS_G - 0.5)
    return cmath.log(_ratevl(z, _LANCZOS_NUM, _LANCZOS_DEN)) + (z - 0.5) * (cmath.log(zgh) - 1)


def log_gamma(z: complex) -> complex:
    """Principal branch of ``log Gamma(z)`` (cut along the negative real axis).

    Raises :class:`PoleError` at nonpositive integers.
    """
    z = complex(z)
    if nonpositive_integer(z) is not None:
        raise PoleError(f"gamma pole at z={z.real:g}", argument=z)
    if z.real >= 0.5:
        return _log_gamma_right(z)
    val = _LOG_PI - cmath.log(sinpi(z)) - _log_gamma_right(1 - z)
    # Pin the imaginary part to the branch given by logGamma(z+k) - sum log(z+j).
    k = math.ceil(0.5 - z.real)
    ref = _log_gamma_right(z + k).imag - sum(cmath.phase(z + j) for j in range(k))
    turns = round((ref - val.imag) / (2 * math.pi))
    return complex(val.real, val.imag + 2 * math.pi * turns)


def gamma(z: complex) -> complex:
    return cmath.exp(log_gamma(z))


def log_beta(x: complex, y: complex) -> complex:
    return log_gamma(x) + log_gamma(y) - log_gamma(complex(x) + complex(y))


def beta(x: complex, y: complex) -> complex:
    """Euler beta function ``Gamma(x) Gamma(y) / Gamma(x + y)``."""
    return cmath.exp(log_beta(x, y))


def sinpi(z: complex) -> complex:
    """``sin(pi z)``, exactly zero at integers.

    The real part is reduced to ``[-1/2, 1/2]`` before calling the
    trigonometric functions.
    """
    z = complex(z)
    n = round(z.real)
    f = z.real - n
    sign = -1.0 if n % 2 else 1.0
    s = math.sin(math.pi * f)
    c = math.cos(math.pi * f)
    if z.imag == 0:
        return complex(sign * s, 0.0)
    y = math.pi * z.imag
    return complex(sign * s * math.cosh(y), sign * c * math.sinh(y))


def pochhammer(a: complex, k: int) -> complex:
    """Rising factorial ``a (a+1) ... (a+k-1)``."""
    if k < 0:
        raise ValueError(f"Pochhammer length must be nonnegative, got {k}")
    out = 1 + 0j
    a = complex(a)
    for i in range(k):
        out *= a + i
    return out


def gen_pochhammer(a: complex, lam: Partition | Sequence[int], rho: complex) -> complex:
    """Partition-indexed Pochhammer ``prod_i (a - (i-1) rho)_{lam_i}``."""
    a = complex(a)
    rho = complex(rho)
    out = 1 + 0j
    for i, part in enumerate(lam):
        out *= pochhammer(a - i * rho, part)
    return out


@dataclass(frozen=True)
class HypSpec:
    """Parameters of a terminating ``pFq`` at argument 1."""

    numerator: tuple[complex, ...]
    denominator: tuple[complex, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(complex(x) for x in self.numerator))
        object.__setattr__(self, "denominator", tuple(complex(x) for x in self.denominator))

    def termination_length(self) -> int:
        """Index of the last nonzero term; raises if the series does not terminate."""
        lengths = [k for k in map(nonpositive_integer, self.numerator) if k is not None]
        if not lengths:
            raise NonTerminatingError(
                f"no nonpositive-integer numerator parameter in {self.numerator}"
            )
        return min(lengths)


def hyp_terminating(spec: HypSpec) -> complex:
    """Finite sum ``sum_k prod (num)_k / (prod (den)_k k!)`` up to termination.

    Terms are built by ratio updates and accumulated with exactly rounded
    summation of the real and imaginary parts.
    """
    nstar = spec.termination_length()
    for d in spec.denominator:
        j = nonpositive_integer(d)
        if j is not None and j < nstar:
            raise ZeroDenominatorError(
                f"denominator parameter {d.real:g} vanishes before the series terminates "
                f"at k={nstar}",
                index=j + 1,
            )
    terms = [1 + 0j]
    term = 1 + 0j
    for k in range(nstar):
        num = 1 + 0j
        for a in spec.numerator:
            num *= a + k
        den = complex(k + 1)
        for b in spec.denominator:
            den *= b + k
        term = term * num / den
        if term == 0:
            break
        terms.append(term)
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
