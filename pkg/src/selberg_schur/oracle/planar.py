"""Planar quadrature for the one-variable complex integral

    int z^k  zbar^kbar |z|^(2(a-1)) |1-z|^(2(b-1)) d^2 z

over the whole plane (Lebesgue measure).  A smooth partition of unity
splits the plane into a patch around 0, a patch around 1 and an exterior
patch; each patch is integrated in polar coordinates centred on its single
singular point (the exterior one after ``w = 1/z``), Gauss-Jacobi in the
radius and the trapezoid rule in the angle.

Growth at infinity: when ``a + b + (k + kbar)/2 >= 1`` the integral only
exists as an analytic continuation in the exponents.  The innermost disk
of the exterior patch, where the cut-off is identically 1, is then
integrated term by term from the binomial series of ``|1-w|^(2b-2)``,
each radial power integral taken in closed form; this is the
continuation, and it agrees with the plain integral whenever the latter
converges.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConvergenceError
from ..selberg import SelbergParams
from .quadrature import QuadratureSpec, gauss_jacobi_rule

__all__ = ["integrate_complex_N1", "CONDITION_MARGIN"]

# Borderline parameters are refused rather than integrated.
CONDITION_MARGIN = 0.05

# Partition of unity: chi(r) = 1 below _R1, 0 above _R2.
_R1, _R2 = 0.3, 0.6
# Radius (in w = 1/z) below which the exterior cut-off is exactly 1.
_RS = 0.5


def _smoothstep(x: np.ndarray) -> np.ndarray:
    x = np.clip(x, 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        f = np.where(x > 0, np.exp(-1.0 / np.where(x > 0, x, 1.0)), 0.0)
        g = np.where(x < 1, np.exp(-1.0 / np.where(x < 1, 1.0 - x, 1.0)), 0.0)
    return f / (f + g)


def _chi(r: np.ndarray) -> np.ndarray:
    return 1.0 - _smoothstep((r - _R1) / (_R2 - _R1))


def _angles(count: int) -> np.ndarray:
    return 2 * np.pi * (np.arange(count) + 0.5) / count


def _disk_patch(a: float, b: float, k: int, kbar: int, centre: float, nr: int, nt: int) -> complex:
    """Patch around 0 (centre=0) or around 1 (centre=1), radius _R2."""
    theta = _angles(nt)
    if centre == 0:
        power = 2 * a + k + kbar
    else:
        power = 2 * b
    t, wt = gauss_jacobi_rule(power, 1.0, nr)
    r = _R2 * t
    rr, th = np.meshgrid(r, theta, indexing="ij")
    u = rr * np.exp(1j * th)
    if centre == 0:
        z = u
        cut = _chi(rr)
        # singular radial power r^(2a-2+k+kbar) * r moved into the rule
        smooth = (np.exp(1j * (k - kbar) * th)) * np.abs(1 - z) ** (2 * (b - 1)) * cut
    else:
        z = 1 + u
        cut = (1 - _chi(np.abs(z))) * _chi(rr)
        smooth = (z**k) * (np.conj(z) ** kbar) * np.abs(z) ** (2 * (a - 1)) * cut
    inner = smooth.sum(axis=1) * (2 * np.pi / nt)
    return complex(_R2**power * np.dot(wt, inner))


def _exterior_series(a: float, b: float, k: int, kbar: int) -> complex:
    """``int_{|w|<_RS} w^-k wbar^-kbar |w|^(-2(a+b)) |1-w|^(2b-2) d^2w`` by series."""
    d = k - kbar
    s = 1 - 2 * (a + b) - k - kbar
    coef = [1.0]
    # A_j = (1-b)_j / j!
    for j in range(1, 400):
        coef.append(coef[-1] * (1 - b + j - 1) / j)
    total = 0.0
    l0 = max(0, -d)
    for l in range(l0, 399 - abs(d)):
        j = l + d
        expo = s + 2 * l + d + 1
        if expo == 0:
            raise ConvergenceError("logarithmic divergence at infinity: continuation has a pole")
        term = coef[j] * coef[l] * _RS**expo / expo
        total += term
        if l > l0 + 4 and abs(term) < 1e-18 * abs(total):
            break
    return complex(2 * np.pi * total)


def _exterior_patch(a: float, b: float, k: int, kbar: int, nr: int, nt: int) -> complex:
    # w = 1/z, |w| in (_RS, 1/_R1); integrand in w:
    # r^(1-2a-2b-k-kbar) e^{-i(k-kbar)theta} |1-w|^(2b-2) * cut(1/w)
    theta = _angles(nt)
    lo, hi = _RS, 1 / _R1
    x, wx = np.polynomial.legendre.leggauss(nr)
    r = lo + (hi - lo) * (x + 1) / 2
    wr = wx * (hi - lo) / 2
    rr, th = np.meshgrid(r, theta, indexing="ij")
    w = rr * np.exp(1j * th)
    z = 1 / w
    cut = (1 - _chi(np.abs(z))) * (1 - _chi(np.abs(z - 1)))
    s = 1 - 2 * (a + b) - k - kbar
    vals = rr**s * np.exp(-1j * (k - kbar) * th) * np.abs(1 - w) ** (2 * (b - 1)) * cut
    inner = vals.sum(axis=1) * (2 * np.pi / nt)
    return complex(np.dot(wr, inner)) + _exterior_series(a, b, k, kbar)


def integrate_complex_N1(p: SelbergParams, k: int, kbar: int, spec: QuadratureSpec) -> complex:
    """Plane integral of ``z^k zbar^kbar Phi(z) Phi(zbar)`` at ``N = 1``.

    ``spec.nodes_per_dim`` sets the radial node count; the angular count is
    twice that.  Parameters must satisfy the complex-version conditions
    with a margin of :data:`CONDITION_MARGIN`.
    """
    if p.N != 1:
        raise ValueError(f"planar oracle is for N = 1, got N={p.N}")
    if not p.is_real():
        raise ValueError("planar oracle only handles real a, b")
    if k < 0 or kbar < 0:
        raise ValueError("powers must be nonnegative")
    a, b = p.a.real, p.b.real
    m = CONDITION_MARGIN
    if not (a > m and b > m and a + b < 1 - m):
        raise ConvergenceError(
            f"complex integral needs a, b > {m} and a + b < {1 - m}; got a={a}, b={b}"
        )
    nr = spec.nodes_per_dim
    nt = 2 * nr
    return (
        _disk_patch(a, b, k, kbar, 0, nr, nt)
        + _disk_patch(a, b, k, kbar, 1, nr, nt)
        + _exterior_patch(a, b, k, kbar, nr, nt)
    )
