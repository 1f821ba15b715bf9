"""High-precision quadrature used to cross-check the exact and asymptotic results.

Panels are integrated with a Gauss-Legendre pair (``m`` and ``2m`` nodes);
the difference of the two is taken as the panel error and panels are bisected
until it is small enough.  The oscillatory tail of ``(sin x / x)**n`` past a
multiple of pi is written as a sum of ``exp(i j x) / x**n`` terms and
integrated by parts, which comes with an explicit remainder bound.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache

import mpmath

from .exact_core import HighFloat

__all__ = [
    "QuadResult",
    "contour_mean",
    "gauss_legendre",
    "gaussian_moment",
    "integrate",
    "power_tail",
    "quad_gaussian_tail",
    "quad_sinc_pow",
]

DEFAULT_PRECISION = 256
GL_ORDER = 24
MAX_DEPTH = 40


class QuadratureError(RuntimeError):
    pass


@dataclass(frozen=True)
class QuadResult:
    value: HighFloat
    certified_error: HighFloat
    pieces: int


@lru_cache(maxsize=32)
def gauss_legendre(m: int, precision: int) -> tuple[tuple[mpmath.mpf, mpmath.mpf], ...]:
    """Nodes and weights of the ``m``-point rule on ``[-1, 1]`` (``m`` even)."""
    if m < 2 or m % 2:
        raise ValueError(f"rule size must be even and positive, got {m}")
    with mpmath.workprec(precision + 20):
        eps = mpmath.ldexp(1, -(precision + 10))
        rule = []
        for i in range(1, m // 2 + 1):
            x = mpmath.cos(mpmath.pi * (4 * i - 1) / (4 * m + 2))
            for _ in range(100):
                p0, p1 = mpmath.mpf(1), x
                for j in range(2, m + 1):
                    p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
                dp = m * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < eps:
                    break
            # recompute the derivative at the converged root
            p0, p1 = mpmath.mpf(1), x
            for j in range(2, m + 1):
                p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
            dp = m * (x * p1 - p0) / (x * x - 1)
            w = 2 / ((1 - x * x) * dp * dp)
            rule.append((x, w))
            rule.append((-x, w))
    return tuple(rule)


def _panel(f, a, b, rule):
    half = (b - a) / 2
    mid = (a + b) / 2
    return half * mpmath.fsum(w * f(mid + half * x) for x, w in rule)


def integrate(
    f: Callable[[mpmath.mpf], mpmath.mpf],
    a,
    b,
    tol,
    precision: int = DEFAULT_PRECISION,
    order: int = GL_ORDER,
) -> tuple[mpmath.mpf, mpmath.mpf, int]:
    """Adaptive Gauss-Legendre on ``[a, b]``; returns ``(value, error, panels)``.

    Must be called inside ``mpmath.workprec(precision)`` or higher.
    """
    coarse = gauss_legendre(order, precision)
    fine = gauss_legendre(2 * order, precision)
    a, b, tol = mpmath.mpf(a), mpmath.mpf(b), mpmath.mpf(tol)
    width = b - a
    total, error, panels = [], [], 0
    stack = [(a, b, 0)]
    while stack:
        lo, hi, depth = stack.pop()
        q_fine = _panel(f, lo, hi, fine)
        q_coarse = _panel(f, lo, hi, coarse)
        est = abs(q_fine - q_coarse)
        if est <= tol * (hi - lo) / width or est == 0:
            total.append(q_fine)
            error.append(est)
            panels += 1
        elif depth >= MAX_DEPTH:
            raise QuadratureError(f"no convergence on [{lo}, {hi}] after {depth} bisections")
        else:
            mid = (lo + hi) / 2
            stack.append((mid, hi, depth + 1))
            stack.append((lo, mid, depth + 1))
    value = mpmath.fsum(total)
    # rounding: every panel sum is a dot product of ~3*order terms
    rounding = mpmath.ldexp(1, -precision) * 3 * order * mpmath.fsum(abs(q) for q in total)
    return value, mpmath.fsum(error) + rounding, panels


def _oscillatory_tail(j: int, p: int, T, tol) -> tuple[mpmath.mpc, mpmath.mpf]:
    """``int_T^inf exp(i j x) x**(-p) dx`` for ``j != 0`` by repeated integration by parts.

    After ``M`` steps the remainder is ``(p)_M/(i j)**M * int exp(i j x) x**(-p-M)``,
    bounded by ``(p)_M / |j|**M * T**(1-p-M) / (p+M-1)``.
    """
    ij = mpmath.mpc(0, j)
    phase = mpmath.expj(j * T)
    total = mpmath.mpc(0)
    # term_m = -(p)_m e^{ijT} T^{-p-m} / (ij)^{m+1}
    rising = mpmath.mpf(1)
    m = 0
    while True:
        term = -rising * phase * T ** (-p - m) / ij ** (m + 1)
        total += term
        m += 1
        rising *= p + m - 1
        bound = rising / abs(j) ** m * T ** (1 - p - m) / (p + m - 1)
        if bound < tol:
            return total, bound
        ratio = (p + m) / (abs(j) * T)
        if ratio >= 1:
            raise QuadratureError(f"integration-by-parts tail stalls at T={T}, p={p}")


def power_tail(n: int, T, tol) -> tuple[mpmath.mpf, mpmath.mpf]:
    """``int_T^inf (sin x / x)**n dx`` with an error bound, for ``n >= 1``.

    Uses ``sin(x)**n = (2i)**(-n) sum_k C(n, k) (-1)**k exp(i (n-2k) x)``.
    """
    value = mpmath.mpc(0)
    err = mpmath.mpf(0)
    scale = mpmath.mpc(0, 2) ** (-n)
    for k in range(n + 1):
        c = scale * math.comb(n, k) * (-1) ** k
        j = n - 2 * k
        if j == 0:
            value += c * T ** (1 - n) / (n - 1)
            continue
        t, e = _oscillatory_tail(j, n, T, tol / (n + 1))
        value += c * t
        err += abs(c) * e
    return value.real, err


def _sinc_pow(n: int):
    def f(x):
        if x == 0:
            return mpmath.mpf(1)
        return (mpmath.sin(x) / x) ** n

    return f


def quad_sinc_pow(
    n: int,
    target_err=mpmath.mpf("1e-25"),
    precision: int = DEFAULT_PRECISION,
    lower=0,
    blocks: int = 32,
) -> QuadResult:
    """Numerically integrate ``(sin x / x)**n`` over ``[lower, inf)``.

    The finite part is split at multiples of pi (``blocks`` of them past
    ``lower``) and the rest is handled by :func:`power_tail`.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    with mpmath.workprec(precision):
        target = mpmath.mpf(target_err)
        if target <= 0:
            raise ValueError("target error must be positive")
        if target < mpmath.ldexp(1, -precision + 16):
            raise QuadratureError(
                f"target error {mpmath.nstr(target, 3)} unreachable at {precision} bits"
            )
        if n == 1 and lower == 0:
            return QuadResult(
                HighFloat(mpmath.pi / 2, precision), HighFloat(mpmath.mpf(0), precision), 0
            )
        lower = mpmath.mpf(lower)
        first = int(mpmath.floor(lower / mpmath.pi)) + 1
        cuts = [lower] + [mpmath.pi * m for m in range(first, first + blocks)]
        f = _sinc_pow(n)
        T = cuts[-1]
        tail, tail_err = power_tail(n, T, target / 4)
        parts, errs, pieces = [tail], [tail_err], 0
        panel_tol = target / 4 / len(cuts)
        for lo, hi in zip(cuts, cuts[1:]):
            v, e, p = integrate(f, lo, hi, panel_tol, precision)
            parts.append(v)
            errs.append(e)
            pieces += p
        value = mpmath.fsum(parts)
        error = mpmath.fsum(errs)
        if error > target:
            raise QuadratureError(
                f"certified error {mpmath.nstr(error, 3)} exceeds target {mpmath.nstr(target, 3)}"
            )
        return QuadResult(HighFloat(value, precision), HighFloat(error, precision), pieces)


def _gaussian_integrand(power: int):
    def f(u):
        return mpmath.exp(-u * u / 2) * u**power

    return f


def _gaussian_cutoff(power: int, precision: int) -> int:
    # e^{-U^2/2} U^power below 2^-(precision+16) relative to the peak
    U = max(8, int(math.sqrt(2 * (precision + 16) * math.log(2) + power * 4)) + 2)
    while U * U < 2 * power + 4:
        U += 1
    return U


def quad_gaussian_tail(power: int, u0, precision: int = DEFAULT_PRECISION, tol=None):
    """``int_{u0}^inf exp(-u**2/2) u**power du`` as a :class:`QuadResult`."""
    with mpmath.workprec(precision):
        u0 = mpmath.mpf(u0)
        U = max(_gaussian_cutoff(power, precision), int(u0) + 8)
        if tol is None:
            tol = mpmath.ldexp(1, -precision // 2) * u0**power * mpmath.exp(-u0 * u0 / 2)
        value, err, pieces = integrate(_gaussian_integrand(power), u0, U, tol, precision)
        # far tail: int_U^inf e^{-u^2/2} u^p <= e^{-U^2/2} U^(p-1) / (1 - (p-1)/U^2)
        far = mpmath.exp(-mpmath.mpf(U) ** 2 / 2) * mpmath.mpf(U) ** (power - 1)
        far /= 1 - mpmath.mpf(max(power - 1, 0)) / U**2
        return QuadResult(HighFloat(value, precision), HighFloat(err + far, precision), pieces)


def gaussian_moment(k: int, precision: int = DEFAULT_PRECISION) -> HighFloat:
    """Numerical value of ``int_0^inf exp(-u**2/2) u**(2k) du``."""
    if not 0 <= k <= 20:
        raise ValueError(f"moment index must be in [0, 20], got {k}")
    with mpmath.workprec(precision):
        U = _gaussian_cutoff(2 * k, precision)
        # tolerance relative to the size of the moment, which is about (2k-1)!!
        scale = mpmath.mpf(math.prod(range(1, 2 * k, 2)))
        tol = scale * mpmath.ldexp(1, -precision + 24)
        value, _, _ = integrate(_gaussian_integrand(2 * k), 0, U, tol, precision)
        return HighFloat(value, precision)


def contour_mean(r, precision: int = 128, samples: int = 512) -> HighFloat:
    """``int_0^{2 pi} |log(sin z / z)| dtheta`` on the circle ``z = r e^{i theta}``.

    This is the normalisation under which the radius-3 value is 9.733...;
    dividing by ``2 pi r**(k+1)`` bounds the ``k``-th Taylor coefficient.
    The logarithm is continued along the circle from ``theta = 0``, where
    ``sin r / r > 0`` makes the principal branch the right one.  The periodic
    trapezoid rule converges geometrically for this integrand.
    """
    with mpmath.workprec(precision + 16):
        r = mpmath.mpf(r)
        if not 0 < r < mpmath.pi:
            raise ValueError(f"radius must lie in (0, pi), got {r}")
        offset = mpmath.mpf(0)
        prev = None
        acc = []
        for j in range(samples):
            z = r * mpmath.expjpi(mpmath.mpf(2 * j) / samples)
            w = mpmath.log(mpmath.sin(z) / z)
            im = w.imag + offset
            if prev is not None:
                while im - prev > mpmath.pi:
                    offset -= 2 * mpmath.pi
                    im -= 2 * mpmath.pi
                while im - prev < -mpmath.pi:
                    offset += 2 * mpmath.pi
                    im += 2 * mpmath.pi
            prev = im
            acc.append(mpmath.hypot(w.real, im))
        value = 2 * mpmath.pi * mpmath.fsum(acc) / samples
    with mpmath.workprec(precision):
        return HighFloat(+value, precision)
