r"""Bessel-function kernels.

Everything here works with exponentially scaled quantities so that no
intermediate overflows for large order or argument:

* :math:`I_0(x)e^{-x}`, :math:`I_1(x)e^{-x}`, :math:`K_0(x)e^{x}`,
  :math:`K_1(x)e^{x}` are evaluated directly;
* higher orders of :math:`I_n` and :math:`K_n` are only ever reached through
  ratios of successive orders, which are well scaled, and through the
  products :math:`I_n K_n` assembled pairwise from those ratios.

:math:`J_n` branches on the argument:

* ascending series for small argument;
* Miller's backward recurrence, normalised by the Neumann sum, below the
  turning point;
* upward recurrence from Hankel-asymptotic :math:`J_0, J_1` above it.

The numba kernels (leading underscore) are shared with :mod:`hankelsolve.greens`
so that the solver's hot loop never leaves compiled code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

__all__ = [
    "DomainError",
    "ConvergenceError",
    "RatioTable",
    "BesselZeros",
    "i0_scaled",
    "i1_scaled",
    "k0_scaled",
    "k1_scaled",
    "bessel_j",
    "bessel_j_zeros",
    "k_ratio_sequence",
    "i_ratio_sequence",
    "ratio_table",
    "olver_eta",
    "olver_i",
    "olver_log_i",
    "olver_log_ratio",
    "ik_product",
    "ik_product_split",
]


class DomainError(ValueError):
    """Argument outside the mathematical domain of a function."""


class ConvergenceError(RuntimeError):
    """An iteration failed to converge."""


_SQRT_HALF = math.sqrt(0.5)
_TWO_OVER_PI = 2.0 / math.pi
_SQRT_HALF_PI = math.sqrt(0.5 * math.pi)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_EULER_GAMMA = 0.57721566490153286061
_LN2 = math.log(2.0)

# Switch from the ascending series to the large-argument expansion for I0, I1.
_I_ASYMPTOTIC_X = 30.0
# Below this K0, K1 use their truncated small-argument expansions.
_K_SERIES_X = 1e-6
# Large-argument expansion for K0, K1 above this argument.
_K_ASYMPTOTIC_X = 30.0
# Hankel expansion for J0, J1 above this argument.
_J_ASYMPTOTIC_X = 30.0
_MILLER_LOG_GAP = 40.0
_RESCALE = 1e250


# ---------------------------------------------------------------------------
# scaled modified Bessel functions of order 0 and 1
# ---------------------------------------------------------------------------


@njit(cache=True)
def _i_scaled_series(nu, x):
    # (x/2)^nu / nu! * sum_k (x^2/4)^k / (k! (nu+1)_k), times exp(-x); nu in {0, 1}
    y = 0.25 * x * x
    term = 1.0
    total = 1.0
    k = 1
    while True:
        term *= y / (k * (k + nu))
        total += term
        if term < 1e-17 * total:
            break
        k += 1
    if nu == 1:
        total *= 0.5 * x
    return total * math.exp(-x)


@njit(cache=True)
def _i_scaled_asymptotic(nu, x):
    # e^x / sqrt(2 pi x) * sum_k (-1)^k a_k(nu) / x^k; all terms share one sign
    # after the first for nu in {0, 1}, so there is no cancellation.
    mu = 4.0 * nu * nu
    term = 1.0
    total = 1.0
    for k in range(1, 200):
        factor = -(mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        new = term * factor
        if abs(new) >= abs(term):
            break
        term = new
        total += term
        if abs(term) < 1e-17 * abs(total):
            break
    return total * _INV_SQRT_2PI / math.sqrt(x)


@njit(cache=True)
def _i0s(x):
    if x < _I_ASYMPTOTIC_X:
        return _i_scaled_series(0, x)
    return _i_scaled_asymptotic(0, x)


@njit(cache=True)
def _i1s(x):
    if x == 0.0:
        return 0.0
    if x < _I_ASYMPTOTIC_X:
        return _i_scaled_series(1, x)
    return _i_scaled_asymptotic(1, x)


@njit(cache=True)
def _k01_trapezoid(x):
    # K_nu(x) e^x = int_0^inf exp(-2x sinh^2(t/2)) cosh(nu t) dt, nu = 0, 1.
    # The integrand is entire and decays doubly exponentially, so the
    # trapezoidal rule converges geometrically in 1/h; the step shrinks like
    # x^{-1/2} to track the width of the peak at t = 0.
    h = min(0.2, 0.5 / math.sqrt(x))
    total0 = 0.5
    total1 = 0.5
    k = 1
    while True:
        s = math.sinh(0.5 * k * h)
        s2 = s * s
        f = math.exp(-2.0 * x * s2)
        # cosh t = 1 + 2 sinh^2(t/2)
        f1 = f * (1.0 + 2.0 * s2)
        total0 += f
        total1 += f1
        if f1 < 1e-18 * total0:
            break
        k += 1
    return h * total0, h * total1


@njit(cache=True)
def _k01s(x):
    """``(K_0(x) e^x, K_1(x) e^x)`` for ``x > 0``."""
    if x < _K_SERIES_X:
        lg = math.log(x) - _LN2 + _EULER_GAMMA
        y = 0.25 * x * x
        e = math.exp(x)
        return (-lg * (1.0 + y) + y) * e, (1.0 / x + 0.5 * x * (lg - 0.5)) * e
    if x < _K_ASYMPTOTIC_X:
        return _k01_trapezoid(x)
    return _k_scaled_asymptotic(0, x), _k_scaled_asymptotic(1, x)


@njit(cache=True)
def _k_scaled_asymptotic(nu, x):
    # sqrt(pi / 2x) * sum_k a_k(nu) / x^k
    mu = 4.0 * nu * nu
    term = 1.0
    total = 1.0
    for k in range(1, 200):
        new = term * (mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        if abs(new) >= abs(term):
            break
        term = new
        total += term
        if abs(term) < 1e-17 * abs(total):
            break
    return total * _SQRT_HALF_PI / math.sqrt(x)


@njit(cache=True)
def _k0s(x):
    return _k01s(x)[0]


@njit(cache=True)
def _k1s(x):
    return _k01s(x)[1]


# ---------------------------------------------------------------------------
# ordinary Bessel function J_n
# ---------------------------------------------------------------------------


@njit(cache=True)
def _jn_series(n, x):
    pre = 1.0
    half = 0.5 * x
    for k in range(1, n + 1):
        pre *= half / k
        if pre == 0.0:
            return 0.0
    y = -0.25 * x * x
    term = 1.0
    total = 1.0
    k = 1
    while True:
        term *= y / (k * (k + n))
        total += term
        if abs(term) < 1e-17 * abs(total):
            break
        k += 1
    return pre * total


@njit(cache=True)
def _miller_start(n, x):
    top = max(n, int(x) + 1)
    start = top + int(math.sqrt(160.0 * top)) + 20
    if x < n:
        # Debye: -d/dk log J_k(x) ~ acosh(k/x) >= acosh(n/x) for k >= n
        start = min(start, n + int(_MILLER_LOG_GAP / math.acosh(n / x)) + 8)
    if start % 2 == 1:
        start += 1
    return start


@njit(cache=True, fastmath={"contract"})
def _jn_miller(n, x):
    start = _miller_start(n, x)
    two_x = 2.0 / x
    f_next = 0.0
    f = 1e-30
    norm = 0.0
    result = 0.0
    # f holds F_j for even j; two steps per pass keep the parity fixed
    j = start
    while j > 0:
        norm += f
        f_odd = (j * two_x) * f - f_next
        f_even = ((j - 1) * two_x) * f_odd - f
        if j - 1 == n:
            result = f_odd
        elif j - 2 == n:
            result = f_even
        f_next = f_odd
        f = f_even
        j -= 2
        if abs(f) > _RESCALE:
            f /= _RESCALE
            f_next /= _RESCALE
            norm /= _RESCALE
            result /= _RESCALE
    # the loop added F_start but not F_0 to the even sum
    norm = 2.0 * norm + f
    return result / norm


# Hankel-expansion step factors (4 nu^2 - (2k - 1)^2) / (8 k), nu = 0, 1.
_HANKEL_STEP = np.array(
    [[(4.0 * nu * nu - (2 * k - 1) ** 2) / (8.0 * k) if k > 0 else 1.0 for k in range(61)]
     for nu in range(2)]
)


@njit(cache=True)
def _j01_asymptotic(x):
    # Hankel expansion for J0 and J1 at x >= 30.
    c = math.cos(x)
    s = math.sin(x)
    inv_x = 1.0 / x
    out0 = 0.0
    out1 = 0.0
    for nu in range(2):
        p = 1.0
        q = 0.0
        term = 1.0
        for k in range(1, 61):
            new = term * _HANKEL_STEP[nu, k] * inv_x
            if abs(new) >= abs(term):
                break
            term = new
            # (-1)^{k//2} a_k/x^k goes to P for even k, Q for odd k
            sign = 1.0 if (k // 2) % 2 == 0 else -1.0
            if k % 2 == 0:
                p += sign * term
            else:
                q += sign * term
            if abs(term) < 1e-17:
                break
        if nu == 0:
            cw = _SQRT_HALF * (c + s)
            sw = _SQRT_HALF * (s - c)
        else:
            cw = _SQRT_HALF * (s - c)
            sw = -_SQRT_HALF * (s + c)
        val = math.sqrt(_TWO_OVER_PI * inv_x) * (p * cw - q * sw)
        if nu == 0:
            out0 = val
        else:
            out1 = val
    return out0, out1


@njit(cache=True, fastmath={"contract"})
def _jn(n, x):
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    if x <= 2.0:
        return _jn_series(n, x)
    if x < n or x < _J_ASYMPTOTIC_X:
        return _jn_miller(n, x)
    j0, j1 = _j01_asymptotic(x)
    if n == 0:
        return j0
    jm = j0
    j = j1
    for k in range(1, n):
        jp = (2.0 * k / x) * j - jm
        jm = j
        j = jp
    return j


@njit(cache=True)
def _jn_array(n, xs):
    out = np.empty(xs.size)
    flat = xs.ravel()
    for i in range(flat.size):
        out[i] = _jn(n, flat[i])
    return out.reshape(xs.shape)


# ---------------------------------------------------------------------------
# ratios of modified Bessel functions
# ---------------------------------------------------------------------------


@njit(cache=True)
def _k_ratios(n, x, out):
    """Fill out[i] = K_{i+1}(x)/K_i(x), i < n, by upward recursion."""
    k0, k1 = _k01s(x)
    _k_ratios_seeded(n, x, k1 / k0, out)


@njit(cache=True)
def _k_ratios_seeded(n, x, r, out):
    if n == 0:
        return
    out[0] = r
    for i in range(1, n):
        r = 2.0 * i / x + 1.0 / r
        out[i] = r


@njit(cache=True)
def _olver_sum(nu, t):
    t2 = t * t
    u1 = t * (3.0 - 5.0 * t2) / 24.0
    u2 = t2 * (81.0 - 462.0 * t2 + 385.0 * t2 * t2) / 1152.0
    u3 = (
        t * t2 * (30375.0 - 369603.0 * t2 + 765765.0 * t2 * t2 - 425425.0 * t2 * t2 * t2)
        / 414720.0
    )
    inv = 1.0 / nu
    return 1.0 + inv * (u1 + inv * (u2 + inv * u3))


@njit(cache=True)
def _olver_eta(nu, x):
    # eta(z) = sqrt(1 + z^2) + log(z / (1 + sqrt(1 + z^2))), z = x / nu
    s = math.sqrt(nu * nu + x * x)
    return (s + nu * math.log(x / (nu + s))) / nu


@njit(cache=True)
def _olver_log_i(nu, x):
    s = math.sqrt(nu * nu + x * x)
    t = nu / s
    return (
        nu * _olver_eta(nu, x)
        - 0.5 * math.log(2.0 * math.pi * nu)
        - 0.25 * math.log(s / nu) * 2.0
        + math.log(_olver_sum(nu, t))
    )


@njit(cache=True)
def _olver_log_ratio(nu, x):
    # log(I_nu/I_{nu-1}) from the uniform expansion, arranged so that the
    # large exponents nu*eta cancel analytically rather than numerically.
    a = nu - 1.0
    s1 = math.sqrt(nu * nu + x * x)
    s0 = math.sqrt(a * a + x * x)
    ds = (2.0 * nu - 1.0) / (s1 + s0)  # s1 - s0
    d = -(1.0 + ds)  # (a + s0) - (nu + s1)
    # a*log((a+s0)/(nu+s1)) via log1p
    expo = ds + math.log(x / (nu + s1)) + a * math.log1p(d / (nu + s1))
    pre = -0.25 * math.log1p((2.0 * nu - 1.0) / (a * a + x * x))
    corr = math.log(_olver_sum(nu, nu / s1) / _olver_sum(a, a / s0))
    return expo + pre + corr


@njit(cache=True)
def _i_series_sum(nu, y):
    # sum_k y^k / (k! (nu+1)_k)
    term = 1.0
    total = 1.0
    k = 1
    while True:
        term *= y / (k * (nu + k))
        total += term
        if term < 1e-17 * total:
            break
        k += 1
    return total


@njit(cache=True)
def _i_ratio_seed(n, x):
    # (top, I_top/I_{top-1}) with top >= n, the start of the downward recursion
    half = 0.5 * x
    if half * half < n + 1:
        # straight from the ascending series
        y = half * half
        return n, half / n * _i_series_sum(n, y) / _i_series_sum(n - 1, y)
    top = max(n + 8, 32)
    return top, math.exp(_olver_log_ratio(float(top), x))


@njit(cache=True)
def _i_ratios(n, x, out):
    """Fill out[i] = I_{i+1}(x)/I_i(x), i < n, by downward recursion."""
    if n == 0:
        return
    top, r = _i_ratio_seed(n, x)
    for nu in range(top, 0, -1):
        if nu <= n:
            out[nu - 1] = r
        if nu > 1:
            r = x / (2.0 * (nu - 1) + x * r)


@njit(cache=True)
def _ik_ratio_tables(n, x, k_seed, ir, kr):
    """``_i_ratios`` and ``_k_ratios_seeded`` in one loop.

    The two recursions are independent, so interleaving them lets their
    divisions overlap.
    """
    if n == 0:
        return
    top, r = _i_ratio_seed(n, x)
    rk = k_seed
    kr[0] = rk
    j = 1
    for nu in range(top, 0, -1):
        if nu <= n:
            ir[nu - 1] = r
        if nu > 1:
            r = x / (2.0 * (nu - 1) + x * r)
        if j < n:
            rk = 2.0 * j / x + 1.0 / rk
            kr[j] = rk
            j += 1


@njit(cache=True)
def _ik_product(n, x, ir, kr):
    return _pair_product(_i0s(x) * _k0s(x), 1.0, n, ir, kr)


@njit(cache=True)
def _pair_product(p, a, n, ir, kr):
    # pairwise grouping keeps each factor O(1)
    for i in range(n):
        p *= a * ir[i] * kr[i]
    return p


@njit(cache=True)
def _ik_split(n, kappa, r, R, ir_r, kr_R):
    return _ik_split_seeded(_i0s(kappa * r), _k0s(kappa * R), n, kappa, r, R, ir_r, kr_R)


@njit(cache=True)
def _ik_split_seeded(i0s_r, k0s_R, n, kappa, r, R, ir_r, kr_R):
    # I_n(kappa r) K_n(kappa R) with the factor exp(kappa (r - R)) spread
    # evenly over the n pairwise factors.
    if r == 0.0:
        if n > 0:
            return 0.0
        return k0s_R * math.exp(-kappa * R)
    p = i0s_r * k0s_R
    if n == 0:
        return p * math.exp(kappa * (r - R))
    return _pair_product(p, math.exp(kappa * (r - R) / n), n, ir_r, kr_R)


# ---------------------------------------------------------------------------
# zeros of J_n
# ---------------------------------------------------------------------------


@njit(cache=True)
def _mcmahon(n, k):
    mu = 4.0 * n * n
    b = (k + 0.5 * n - 0.25) * math.pi
    e = 1.0 / (8.0 * b)
    e2 = e * e
    return b - e * (
        (mu - 1.0)
        + e2 * (4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / 3.0
                + e2 * 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / 15.0)
    )


@njit(cache=True)
def _refine_zero(n, lo, hi, guess):
    """Newton on J_n inside a sign-change bracket, bisecting when Newton leaves it.

    Returns (zero, status); status 0 on success.
    """
    flo = _jn(n, lo)
    x = guess
    if not (lo < x < hi):
        x = 0.5 * (lo + hi)
    for _ in range(50):
        f = _jn(n, x)
        if f == 0.0:
            return x, 0
        if (f > 0.0) == (flo > 0.0):
            lo = x
            flo = f
        else:
            hi = x
        df = (n / x) * f - _jn(n + 1, x)
        step = f / df if df != 0.0 else 2.0 * (hi - lo)
        new = x - step
        if not (lo < new < hi):
            new = 0.5 * (lo + hi)
        if abs(new - x) <= 4e-16 * x or hi - lo <= 4e-16 * x:
            # one more Newton step settles the last ulp
            f = _jn(n, new)
            df = (n / new) * f - _jn(n + 1, new)
            if df != 0.0 and abs(f / df) < 1e-12 * new:
                new -= f / df
            return new, 0
        x = new
    return x, 1


@njit(cache=True)
def _zeros(n, count, out):
    # Consecutive zeros are at least pi apart for n >= 1 and more than 3
    # apart for n = 0, so a scan with step 0.5 started just past the
    # previous zero brackets the next one without skipping any.
    min_gap = math.pi if n >= 1 else 3.0
    step = 0.5
    prev = 0.0
    a = max(float(n), 1.0) if n >= 1 else 1.0
    for k in range(count):
        if k > 0:
            a = prev + min_gap * (1.0 - 1e-12)
        fa = _jn(n, a)
        b = a + step
        fb = _jn(n, b)
        while (fa > 0.0) == (fb > 0.0) and fb != 0.0:
            a = b
            fa = fb
            b = a + step
            fb = _jn(n, b)
        if fb == 0.0:
            out[k] = b
            prev = b
            continue
        guess = _mcmahon(n, k + 1)
        z, status = _refine_zero(n, a, b, guess)
        if status != 0:
            return k + 1
        out[k] = z
        prev = z
    return 0


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------


def _as_float_array(x):
    return np.asarray(x, dtype=float)


def _unary(kernel, x, positive):
    arr = _as_float_array(x)
    if positive and np.any(~(arr > 0.0)):
        raise DomainError("argument must be > 0")
    if not positive and np.any(~(arr >= 0.0)):
        raise DomainError("argument must be >= 0")
    if arr.ndim == 0:
        return float(kernel(float(arr)))
    return _vector(kernel, arr)


def _vector(kernel, arr):
    out = np.empty(arr.shape)
    flat = arr.ravel()
    outf = out.ravel()
    for i in range(flat.size):
        outf[i] = kernel(flat[i])
    return out


def i0_scaled(x):
    """Return ``I0(x) * exp(-x)`` for ``x >= 0`` (scalar or array)."""
    return _unary(_i0s, x, positive=False)


def i1_scaled(x):
    """Return ``I1(x) * exp(-x)`` for ``x >= 0``."""
    return _unary(_i1s, x, positive=False)


def k0_scaled(x):
    """Return ``K0(x) * exp(x)`` for ``x > 0``."""
    return _unary(_k0s, x, positive=True)


def k1_scaled(x):
    """Return ``K1(x) * exp(x)`` for ``x > 0``."""
    return _unary(_k1s, x, positive=True)


def bessel_j(n, x):
    """Bessel function of the first kind of integer order ``n >= 0``.

    Accurate to about 1e-14 absolute for ``n <= 512`` and ``0 <= x <= 2e4``.
    ``x`` may be a scalar or an array.
    """
    n = int(n)
    if n < 0:
        raise DomainError("order must be >= 0")
    arr = _as_float_array(x)
    if np.any(~(arr >= 0.0)):
        raise DomainError("argument must be >= 0")
    if arr.ndim == 0:
        return float(_jn(n, float(arr)))
    return _jn_array(n, np.ascontiguousarray(arr))


@dataclass(frozen=True)
class BesselZeros:
    """The first ``count`` positive zeros of ``J_order``, increasing."""

    order: int
    zeros: np.ndarray

    @property
    def count(self) -> int:
        return self.zeros.size


def bessel_j_zeros(n: int, count: int) -> BesselZeros:
    """First ``count`` positive zeros of ``J_n``.

    Each zero is bracketed by a short forward scan from the previous one and
    polished by safeguarded Newton iteration started from McMahon's expansion,
    so the cost is O(1) Bessel evaluations per zero.
    """
    n = int(n)
    count = int(count)
    if n < 0 or count < 1:
        raise DomainError("need n >= 0 and count >= 1")
    out = np.empty(count)
    failed = _zeros(n, count, out)
    if failed:
        raise ConvergenceError(f"zero {failed} of J_{n} did not converge in 50 iterations")
    out.setflags(write=False)
    return BesselZeros(order=n, zeros=out)


@dataclass(frozen=True)
class RatioTable:
    """Ratios of successive modified Bessel functions at one argument.

    ``i_ratio[i] = I_{i+1}(x)/I_i(x)`` and ``k_ratio[i] = K_{i+1}(x)/K_i(x)``
    for ``i = 0 .. order_max - 1``.
    """

    order_max: int
    argument: float
    i_ratio: np.ndarray
    k_ratio: np.ndarray


def _check_positive(x, name="x"):
    if not x > 0.0:
        raise DomainError(f"{name} must be > 0, got {x!r}")


def k_ratio_sequence(n: int, x: float) -> np.ndarray:
    """``K_{i+1}(x)/K_i(x)`` for ``i = 0 .. n-1`` (upward recursion)."""
    _check_positive(x)
    out = np.empty(int(n))
    _k_ratios(int(n), float(x), out)
    return out


def i_ratio_sequence(n: int, x: float) -> np.ndarray:
    """``I_{i+1}(x)/I_i(x)`` for ``i = 0 .. n-1`` (downward recursion)."""
    _check_positive(x)
    out = np.empty(int(n))
    _i_ratios(int(n), float(x), out)
    return out


def ratio_table(n: int, x: float) -> RatioTable:
    """Build a :class:`RatioTable` of ``n`` entries at argument ``x``."""
    ir = i_ratio_sequence(n, x)
    kr = k_ratio_sequence(n, x)
    ir.setflags(write=False)
    kr.setflags(write=False)
    return RatioTable(order_max=int(n), argument=float(x), i_ratio=ir, k_ratio=kr)


def olver_log_i(n: float, x: float) -> float:
    """Logarithm of the uniform large-order estimate of ``I_n(x)``."""
    _check_positive(x)
    if not n > 0:
        raise DomainError("order must be > 0")
    return float(_olver_log_i(float(n), float(x)))


def olver_eta(n: float, x: float) -> float:
    """The exponent variable ``eta(x / n)`` of the uniform expansion."""
    _check_positive(x)
    if not n > 0:
        raise DomainError("order must be > 0")
    return float(_olver_eta(float(n), float(x)))


def olver_i(n: float, x: float) -> float:
    """Uniform large-order (Olver) estimate of ``I_n(x)``, truncated after u_3.

    Only meant as a seed for the ratio recursion; may overflow for large
    ``n`` and ``x``, in which case use :func:`olver_log_i`.
    """
    return math.exp(olver_log_i(n, x))


def olver_log_ratio(n: float, x: float) -> float:
    """``log(I_n(x)/I_{n-1}(x))`` from the uniform expansion."""
    _check_positive(x)
    if not n > 1:
        raise DomainError("order must be > 1")
    return float(_olver_log_ratio(float(n), float(x)))


def ik_product(n: int, x: float, table: RatioTable | None = None) -> float:
    """``I_n(x) K_n(x)`` as a scaled order-0 pair times pairwise ratio products."""
    _check_positive(x)
    n = int(n)
    if table is None:
        table = ratio_table(n, x)
    return float(_ik_product(n, float(x), table.i_ratio, table.k_ratio))


def ik_product_split(
    n: int,
    kappa: float,
    r: float,
    R: float,
    table_r: RatioTable | None = None,
    table_R: RatioTable | None = None,
) -> float:
    """``I_n(kappa r) K_n(kappa R)`` for ``0 <= r <= R``.

    Underflows to exactly 0.0 once ``kappa (R - r)`` is beyond roughly 745.
    """
    _check_positive(kappa, "kappa")
    if not 0.0 <= r <= R:
        raise DomainError(f"need 0 <= r <= R, got r={r!r}, R={R!r}")
    n = int(n)
    if r > 0.0 and table_r is None:
        table_r = ratio_table(n, kappa * r)
    if table_R is None:
        table_R = ratio_table(n, kappa * R)
    ir = table_r.i_ratio if table_r is not None else np.zeros(n)
    return float(_ik_split(n, float(kappa), float(r), float(R), ir, table_R.k_ratio))
