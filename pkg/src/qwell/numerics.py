"""Small numerical kernel: bisection, adaptive Simpson quadrature, erf.

Everything here works on plain Python floats so the results are identical
on every platform and easy to reason about in tests.
"""

from __future__ import annotations

import heapq
import itertools
import math
from collections.abc import Callable
from dataclasses import dataclass

__all__ = [
    "NoBracketError",
    "NonFiniteError",
    "DepthExceededError",
    "QuadratureSettings",
    "bisect_root",
    "adaptive_quadrature",
    "erf",
]


class NoBracketError(ArithmeticError):
    """Raised when the two bracket endpoints do not straddle a sign change."""


class NonFiniteError(ArithmeticError):
    """Raised when the function under study returns inf or nan."""


class DepthExceededError(ArithmeticError):
    """Adaptive quadrature hit its recursion limit before meeting tolerance.

    Attributes:
        estimate: Best available value of the integral.
        error_bound: Accumulated error estimate for ``estimate``.
    """

    def __init__(self, estimate: float, error_bound: float):
        super().__init__(
            f"quadrature depth exceeded: estimate={estimate!r}, error bound={error_bound:.3e}"
        )
        self.estimate = estimate
        self.error_bound = error_bound


@dataclass(frozen=True)
class QuadratureSettings:
    abs_tol: float = 1e-10
    max_depth: int = 50

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError(f"abs_tol must be positive, got {self.abs_tol}")
        if self.max_depth < 1:
            raise ValueError(f"max_depth must be >= 1, got {self.max_depth}")


def _finite(value: float, where: float) -> float:
    if not math.isfinite(value):
        raise NonFiniteError(f"function returned {value!r} at x={where!r}")
    return value


def bisect_root(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12) -> float:
    """Find a root of ``f`` in ``[lo, hi]`` by plain bisection.

    The bracket is halved until it is no wider than ``tol`` (or cannot shrink
    any further in floating point). An exact zero at a midpoint ends the
    search early; otherwise the midpoint of the final bracket is returned.

    Raises:
        NoBracketError: ``f(lo)`` and ``f(hi)`` have the same strict sign.
        NonFiniteError: ``f`` produced inf or nan.
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if lo > hi:
        lo, hi = hi, lo
    flo = _finite(f(lo), lo)
    fhi = _finite(f(hi), hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise NoBracketError(f"no sign change on [{lo!r}, {hi!r}]: f={flo!r}, {fhi!r}")

    while hi - lo > tol:
        mid = lo + 0.5 * (hi - lo)
        if mid <= lo or mid >= hi:
            break
        fmid = _finite(f(mid), mid)
        if fmid == 0.0:
            return mid
        # keep the half that still holds the sign change; ties go to lo
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return lo + 0.5 * (hi - lo)


def adaptive_quadrature(
    f: Callable[[float], float],
    a: float,
    b: float,
    settings: QuadratureSettings | None = None,
) -> float:
    """Integrate ``f`` over ``[a, b]`` with globally adaptive Simpson refinement.

    Every panel carries a coarse Simpson value and the sum over its two
    halves; their difference / 15 is the panel's error estimate and is also
    added as a Richardson correction. The panel with the largest estimate is
    split until the estimates sum to at most ``abs_tol``. Splitting by
    worst error (rather than halving a local tolerance per level) lets
    square-root behaviour at a turning point converge without needing panels
    narrower than floating point can resolve.

    Raises:
        DepthExceededError: the worst panel already has ``max_depth`` splits.
    """
    settings = settings or QuadratureSettings()
    if not a < b:
        raise ValueError(f"need a < b, got a={a!r}, b={b!r}")

    def fx(x: float) -> float:
        return _finite(f(x), x)

    def make_panel(lo, hi, flo, fmid, fhi, coarse, depth):
        mid = 0.5 * (lo + hi)
        flm = fx(0.5 * (lo + mid))
        frm = fx(0.5 * (mid + hi))
        left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid)
        right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi)
        delta = left + right - coarse
        return (lo, hi, flo, flm, fmid, frm, fhi, left, right, delta, depth)

    fa, fb = fx(a), fx(b)
    fm = fx(0.5 * (a + b))
    root = make_panel(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), 0)

    counter = itertools.count()
    heap = [(-abs(root[9]), next(counter), root)]
    err_total = abs(root[9]) / 15.0
    while err_total > settings.abs_tol:
        neg_err, _, panel = heap[0]
        lo, hi, flo, flm, fmid, frm, fhi, left, right, delta, depth = panel
        mid = 0.5 * (lo + hi)
        if depth >= settings.max_depth or not (lo < 0.5 * (lo + mid) < mid < 0.5 * (mid + hi) < hi):
            raise DepthExceededError(_sum_panels(heap), err_total)
        heapq.heappop(heap)
        kids = (
            make_panel(lo, mid, flo, flm, fmid, left, depth + 1),
            make_panel(mid, hi, fmid, frm, fhi, right, depth + 1),
        )
        err_total += (abs(kids[0][9]) + abs(kids[1][9]) - abs(delta)) / 15.0
        for kid in kids:
            heapq.heappush(heap, (-abs(kid[9]), next(counter), kid))
    return _sum_panels(heap)


def _sum_panels(heap) -> float:
    # left-to-right order keeps the result independent of heap layout
    panels = sorted((item[2] for item in heap), key=lambda p: p[0])
    return math.fsum(p[7] + p[8] + p[9] / 15.0 for p in panels)


# erf: Maclaurin series for |x| <= 2, continued fraction for erfc beyond.
_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)


def _erf_series(x: float) -> float:
    x2 = x * x
    term = x
    total = x
    n = 0
    while True:
        n += 1
        term *= -x2 / n
        contrib = term / (2 * n + 1)
        total += contrib
        if abs(contrib) <= 1e-17 * abs(total):
            break
    return _TWO_OVER_SQRT_PI * total


def _erfc_continued_fraction(x: float) -> float:
    # erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    # evaluated with the modified Lentz method; x > 2 here
    tiny = 1e-300
    f = x
    c = x
    d = 0.0
    k = 1
    while True:
        a_k = 0.5 * k
        d = x + a_k * d
        d = tiny if d == 0.0 else d
        c = x + a_k / c
        c = tiny if c == 0.0 else c
        d = 1.0 / d
        step = c * d
        f *= step
        if abs(step - 1.0) < 1e-16 or k > 500:
            break
        k += 1
    return math.exp(-x * x) / (math.sqrt(math.pi) * f)


def erf(x: float) -> float:
    """Error function, accurate to about 1e-15 absolute for finite ``x``."""
    if math.isnan(x):
        raise NonFiniteError("erf of nan")
    ax = abs(x)
    if ax <= 2.0:
        value = _erf_series(ax)
    elif ax >= 6.5:
        value = 1.0
    else:
        value = 1.0 - _erfc_continued_fraction(ax)
    return value if x >= 0 else -value
