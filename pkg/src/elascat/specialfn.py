"""Cylinder functions of orders 0 and 1 for positive real arguments.

Provides J0, J1, Y0, Y1 and the first-kind Hankel functions H0^(1), H1^(1)
to near machine precision, vectorized over NumPy arrays.  These are the only
special functions the elastic layer-potential kernels need.

Evaluation strategy (three regimes, all plain double arithmetic):

  x <= 6     ascending power series for J, log series for Y.  The largest
             series term stays below ~20, so plain summation keeps absolute
             errors at a few ulp.
  6 < x < 18 Miller backward recurrence for the J family, then Neumann
             series (in J_2k resp. J_odd) for Y0 and Y1.  Stable for all x,
             no cancellation beyond a few ulp.
  x >= 18    Hankel large-argument expansions J = sqrt(2/(pi x)) (P cos w -
             Q sin w), Y = sqrt(2/(pi x)) (P sin w + Q cos w); the optimally
             truncated tails are below 1e-15 for x >= 18.

A pure series/asymptotic split (series up to x = 12) cannot reach 1e-12
relative accuracy in doubles: the series loses ~5 digits to cancellation at
x = 12 and the asymptotic tail floor is ~e^(-2x).  The recurrence mid-range
closes that gap.
"""

from __future__ import annotations

import numpy as np

EULER_GAMMA = 0.5772156649015328606

_SERIES_CUTOFF = 6.0
_ASYMPTOTIC_CUTOFF = 18.0
_SERIES_TERMS = 36
_MILLER_START = 60  # even; J_60(18) ~ 1e-24, ample headroom
_NEUMANN_TERMS = 28


def _as_positive_array(x, allow_zero: bool) -> np.ndarray:
    a = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(a)):
        raise ValueError("cylinder function argument must be finite")
    if allow_zero:
        if np.any(a < 0.0):
            raise ValueError("cylinder function argument must be >= 0")
    else:
        if np.any(a <= 0.0):
            raise ValueError("cylinder function argument must be > 0")
    return a


def _series_j0(x):
    # J0(x) = sum_m (-1)^m (x^2/4)^m / (m!)^2
    q = 0.25 * x * x
    out = np.zeros_like(x)
    term = np.ones_like(x)
    out += term
    for m in range(1, _SERIES_TERMS):
        term = term * (-q) / (m * m)
        out += term
    return out


def _series_j1(x):
    # J1(x) = (x/2) sum_m (-1)^m (x^2/4)^m / (m! (m+1)!)
    q = 0.25 * x * x
    term = np.ones_like(x)
    out = term.copy()
    for m in range(1, _SERIES_TERMS):
        term = term * (-q) / (m * (m + 1))
        out += term
    return 0.5 * x * out


def _series_y0(x):
    # Y0 = (2/pi)[(ln(x/2)+gamma) J0 + sum_m (-1)^(m+1) H_m (x^2/4)^m/(m!)^2]
    q = 0.25 * x * x
    term = np.ones_like(x)
    acc = np.zeros_like(x)
    h = 0.0
    for m in range(1, _SERIES_TERMS):
        term = term * (-q) / (m * m)
        h += 1.0 / m
        acc -= h * term  # (-1)^(m+1) * |term| pattern folded into term's sign
    ell = np.log(0.5 * x) + EULER_GAMMA
    return (2.0 / np.pi) * (ell * _series_j0(x) + acc)


def _series_y1(x):
    # Y1 = (2/pi)(ln(x/2)+gamma) J1 - 2/(pi x)
    #      - (1/pi) sum_m (-1)^m (H_m + H_{m+1}) (x/2)^(2m+1) / (m! (m+1)!)
    q = 0.25 * x * x
    half = 0.5 * x
    term = half.copy()
    acc = term * 1.0  # m = 0: H_0 + H_1 = 1
    h = 0.0
    hp = 1.0
    for m in range(1, _SERIES_TERMS):
        term = term * (-q) / (m * (m + 1))
        h += 1.0 / m
        hp += 1.0 / (m + 1)
        acc += (h + hp) * term
    ell = np.log(0.5 * x) + EULER_GAMMA
    return (2.0 / np.pi) * (ell * _series_j1(x) - 1.0 / x) - acc / np.pi


def _miller_jy(x):
    """J0, J1, Y0, Y1 by backward recurrence plus Neumann series.

    Y0 uses Y0 = (2/pi)[(ln(x/2)+g) J0 + 2 sum_k (-1)^(k+1) J_2k / k]; the
    Y1 series is its term-by-term derivative.  Accurate for x well below
    _MILLER_START; used on (6, 18).
    """
    shape = x.shape
    f_up = np.zeros(shape)  # f_{n+1}
    f = np.full(shape, 1e-30)  # f_n, starting at n = _MILLER_START
    even_sum = np.zeros(shape)
    # sum0 = sum_k (-1)^(k+1) f_2k / k
    # sum1 = sum_k (-1)^k (f_{2k-1} - f_{2k+1}) / k
    sum0 = np.zeros(shape)
    sum1 = np.zeros(shape)
    f1 = None
    kmax = _NEUMANN_TERMS
    for n in range(_MILLER_START, 0, -1):
        f_dn = (2.0 * n / x) * f - f_up
        f_up = f
        f = f_dn
        m = n - 1  # index now held by f
        if m >= 2 and m % 2 == 0:
            even_sum += f
            k = m // 2
            if k <= kmax:
                sum0 += (f / k) if k % 2 == 1 else (-f / k)
        elif m % 2 == 1:
            k = (m + 1) // 2  # m = 2k - 1 contributes +(-1)^k f / k
            if k <= kmax:
                sum1 += (-f / k) if k % 2 == 1 else (f / k)
            k = (m - 1) // 2  # m = 2k + 1 contributes -(-1)^k f / k
            if 1 <= k <= kmax:
                sum1 += (f / k) if k % 2 == 1 else (-f / k)
            if m == 1:
                f1 = f.copy()
    norm = f + 2.0 * even_sum  # f now holds f_0; J0 + 2 sum J_2k = 1
    j0 = f / norm
    j1 = f1 / norm
    sum0 = sum0 / norm
    sum1 = sum1 / norm
    ell = np.log(0.5 * x) + EULER_GAMMA
    y0 = (2.0 / np.pi) * (ell * j0 + 2.0 * sum0)
    y1 = (2.0 / np.pi) * (ell * j1 - j0 / x + sum1)
    return j0, j1, y0, y1


def _asymptotic_pq(mu: float, x):
    """P and Q modulus/phase series for the Hankel expansion, mu = 4 n^2."""
    p = np.ones_like(x)
    q = np.zeros_like(x)
    term = np.ones_like(x)
    for m in range(1, 30):
        term = term * (mu - (2 * m - 1) ** 2) / (m * 8.0) / x
        contrib = term * (-1.0) ** (m // 2)
        if m % 2 == 1:
            q += contrib
        else:
            p += contrib
        if np.max(np.abs(term)) < 1e-18:
            break
    return p, q


def _asymptotic_jy(x):
    amp = np.sqrt(2.0 / (np.pi * x))
    p0, q0 = _asymptotic_pq(0.0, x)
    p1, q1 = _asymptotic_pq(4.0, x)
    w0 = x - 0.25 * np.pi
    w1 = x - 0.75 * np.pi
    c0, s0 = np.cos(w0), np.sin(w0)
    c1, s1 = np.cos(w1), np.sin(w1)
    j0 = amp * (p0 * c0 - q0 * s0)
    y0 = amp * (p0 * s0 + q0 * c0)
    j1 = amp * (p1 * c1 - q1 * s1)
    y1 = amp * (p1 * s1 + q1 * c1)
    return j0, j1, y0, y1


def _jy_all(x: np.ndarray):
    """All four cylinder functions on a strictly positive array."""
    j0 = np.empty_like(x)
    j1 = np.empty_like(x)
    y0 = np.empty_like(x)
    y1 = np.empty_like(x)
    lo = x <= _SERIES_CUTOFF
    hi = x >= _ASYMPTOTIC_CUTOFF
    mid = ~(lo | hi)
    if np.any(lo):
        xs = x[lo]
        j0[lo] = _series_j0(xs)
        j1[lo] = _series_j1(xs)
        y0[lo] = _series_y0(xs)
        y1[lo] = _series_y1(xs)
    if np.any(mid):
        a, b, c, d = _miller_jy(x[mid])
        j0[mid], j1[mid], y0[mid], y1[mid] = a, b, c, d
    if np.any(hi):
        a, b, c, d = _asymptotic_jy(x[hi])
        j0[hi], j1[hi], y0[hi], y1[hi] = a, b, c, d
    return j0, j1, y0, y1


def _dispatch_one(order: int, x: np.ndarray, which: str) -> np.ndarray:
    if order not in (0, 1):
        raise ValueError("only orders 0 and 1 are supported")
    j0, j1, y0, y1 = _jy_all(x)
    table = {("j", 0): j0, ("j", 1): j1, ("y", 0): y0, ("y", 1): y1}
    return table[(which, order)]


def bessel_j(order: int, x):
    """Bessel function of the first kind, order 0 or 1, for x >= 0."""
    a = _as_positive_array(x, allow_zero=True)
    scalar = a.ndim == 0
    a = np.atleast_1d(a)
    out = np.empty_like(a)
    zero = a == 0.0
    if np.any(zero):
        out[zero] = 1.0 if order == 0 else 0.0
    pos = ~zero
    if np.any(pos):
        out[pos] = _dispatch_one(order, a[pos], "j")
    return float(out[0]) if scalar else out


def bessel_y(order: int, x):
    """Bessel function of the second kind, order 0 or 1, for x > 0."""
    a = _as_positive_array(x, allow_zero=False)
    scalar = a.ndim == 0
    a = np.atleast_1d(a)
    out = _dispatch_one(order, a, "y")
    return float(out[0]) if scalar else out


def hankel1(order: int, x):
    """First-kind Hankel function H_n^(1) = J_n + i Y_n, order 0 or 1, x > 0.

    Computed from the same J/Y evaluations bit for bit, so the identity
    hankel1(n, x) == bessel_j(n, x) + 1j * bessel_y(n, x) is exact.
    """
    a = _as_positive_array(x, allow_zero=False)
    scalar = a.ndim == 0
    a = np.atleast_1d(a)
    j0, j1, y0, y1 = _jy_all(a)
    if order == 0:
        out = j0 + 1j * y0
    elif order == 1:
        out = j1 + 1j * y1
    else:
        raise ValueError("only orders 0 and 1 are supported")
    return complex(out[0]) if scalar else out


def hankel_pair(x):
    """(H0^(1), H1^(1)) evaluated together; one pass over the array.

    The kernel assembly calls this on large pairwise-distance arrays, so the
    shared J/Y evaluation matters.
    """
    a = _as_positive_array(x, allow_zero=False)
    j0, j1, y0, y1 = _jy_all(np.atleast_1d(a))
    h0 = j0 + 1j * y0
    h1 = j1 + 1j * y1
    if a.ndim == 0:
        return complex(h0[0]), complex(h1[0])
    return h0.reshape(a.shape), h1.reshape(a.shape)
