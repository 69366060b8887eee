"""Kupradze fundamental tensor, traction kernels, and their quadrature splits.

The fundamental tensor factors as

    Gamma(x, y) = gamma_1(v) I + gamma_2(v) J(x - y),      v = |x - y|,

with J(r) = r r^T / |r|^2.  Applying tractions produces kernels of the form
sum_{j,k} gamma_j^(k)(v) . [matrix in the points and normals], where

    gamma_j^(0) = gamma_j / v^2,  gamma_j^(1) = gamma_j' / v,
    gamma_j^(2) = gamma_j'',

and every gamma_j^(k) splits for quadrature purposes as

    gamma_j^(k)(v) = (1/pi) ln(v) xi_j^(k)(v) + chi_j^(k)(v) + s_jk / v^2.

xi and chi are analytic and even in v; the strong coefficients s_jk are
independent of frequency (they match the elastostatic kernel, which is what
makes static subtraction work).  This module evaluates the splits two ways:

  * directly from Hankel functions, with the ln(v) J-part and the strong
    term removed analytically (v >= v_switch);
  * from cached even power series in u = v^2 (v < v_switch), because the
    direct formulas cancel catastrophically as v -> 0.

Everything reduces to five primitives per medium:

    A_kappa = H0(kappa v),   B_kappa = kappa H1(kappa v) / v,
    Q = [ks^2 A_s - kp^2 A_p - 2 (B_s - B_p)] / v^2,

whose splits are combined with the (complex, medium-dependent) coefficient
table `_combination`.  The same table drives direct and series branches, so
the two branches can only disagree through rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .medium import ElasticMedium
from .specialfn import EULER_GAMMA, hankel_pair

_SERIES_TERMS = 9  # coefficients of u^0 .. u^8, u = v^2

STRONG_PAIRS = {(2, 0): +1.0, (1, 1): -1.0, (1, 2): +1.0}
TRACTION_PAIRS = ((2, 0), (1, 1), (2, 1))  # M_1^(0) = 0, so (1,0) drops out
HYPERSINGULAR_PAIRS = ((2, 0), (1, 1), (2, 1), (1, 2), (2, 2))


def static_strong_constant(medium: ElasticMedium, j: int, k: int) -> complex:
    """Frequency-free form of the 1/v^2 coefficient: +-(lam,mu expressions)."""
    lam, mu = medium.lam, medium.mu
    c_plus = (lam + 3.0 * mu) / (4.0 * math.pi * mu * (lam + 2.0 * mu))
    c_minus = (lam + mu) / (4.0 * math.pi * mu * (lam + 2.0 * mu))
    if (j, k) == (2, 0):
        return c_minus
    if (j, k) == (1, 1):
        return -c_plus
    if (j, k) == (1, 2):
        return c_plus
    return 0.0


# ---------------------------------------------------------------------------
# per-medium split tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Split:
    """Series coefficients (in u = v^2) and strong coefficient of one gamma."""

    xi: np.ndarray
    chi: np.ndarray
    strong: complex


def _wavenumber_series(kappa: float):
    """Series (in u = v^2) of J0(kv), k J1(kv)/v, and their Y-companions."""
    m = np.arange(_SERIES_TERMS)
    fact = np.array([math.factorial(i) for i in range(_SERIES_TERMS + 1)])
    harm = np.concatenate([[0.0], np.cumsum(1.0 / np.arange(1, _SERIES_TERMS + 1))])
    q = -0.25 * kappa * kappa
    j0 = q**m / fact[m] ** 2
    j1v = 0.5 * kappa * kappa * q**m / (fact[m] * fact[m + 1])
    sy0 = -harm[m] * j0  # sum (-1)^(m+1) H_m (k^2/4)^m u^m / m!^2
    tv = (harm[m] + harm[m + 1]) * j1v
    return j0, j1v, sy0, tv


def _primitive_series(medium: ElasticMedium):
    """xi/chi series and strong coefficients of the five primitives."""
    out = {}
    for tag, kappa in (("p", medium.kp), ("s", medium.ks)):
        j0, j1v, sy0, tv = _wavenumber_series(kappa)
        ell = math.log(0.5 * kappa) + EULER_GAMMA
        out["A", tag] = _Split(
            2j * j0, j0 + 2j / math.pi * (ell * j0 + sy0), 0.0
        )
        out["B", tag] = _Split(
            2j * j1v,
            j1v * (1.0 + 2j * ell / math.pi) - 1j / math.pi * tv,
            -2j / math.pi,
        )
    ksq_s, ksq_p = medium.ks**2, medium.kp**2
    xi_num = (
        ksq_s * out["A", "s"].xi
        - ksq_p * out["A", "p"].xi
        - 2.0 * (out["B", "s"].xi - out["B", "p"].xi)
    )
    chi_num = (
        ksq_s * out["A", "s"].chi
        - ksq_p * out["A", "p"].chi
        - 2.0 * (out["B", "s"].chi - out["B", "p"].chi)
    )
    scale = max(np.max(np.abs(xi_num)), np.max(np.abs(chi_num)))
    assert abs(xi_num[0]) <= 1e-10 * scale, "Q log part must be regular"
    out["Q",] = _Split(
        np.append(xi_num[1:], 0.0), np.append(chi_num[1:], 0.0), chi_num[0]
    )
    return out


def _combination(medium: ElasticMedium, j: int, k: int) -> dict:
    """gamma_j^(k) as a linear combination over the primitive set."""
    i4 = 1j / (4.0 * medium.omega**2)
    ksq_s, ksq_p = medium.ks**2, medium.kp**2
    if (j, k) == (2, 0):
        return {("Q",): -i4}
    if (j, k) == (1, 1):
        return {("B", "s"): -i4 * ksq_s, ("Q",): -i4}
    if (j, k) == (2, 1):
        return {("B", "s"): i4 * ksq_s, ("B", "p"): -i4 * ksq_p, ("Q",): 2 * i4}
    if (j, k) == (1, 2):
        return {
            ("A", "s"): -i4 * ksq_s**2,
            ("B", "s"): 2 * i4 * ksq_s,
            ("B", "p"): -i4 * ksq_p,
            ("Q",): 3 * i4,
        }
    if (j, k) == (2, 2):
        return {
            ("A", "s"): i4 * ksq_s**2,
            ("A", "p"): -i4 * ksq_p**2,
            ("B", "s"): -3 * i4 * ksq_s,
            ("B", "p"): 3 * i4 * ksq_p,
            ("Q",): -6 * i4,
        }
    raise ValueError(f"no combination for (j, k) = ({j}, {k})")


def _base_combination(medium: ElasticMedium, j: int) -> dict:
    i4 = 1j / (4.0 * medium.omega**2)
    if j == 1:
        return {("A", "s"): 1j / (4.0 * medium.mu), ("B", "s"): -i4, ("B", "p"): i4}
    raise ValueError("only gamma_1 is a direct combination; gamma_2 = v^2 gamma_2^(0)")


@lru_cache(maxsize=32)
def _split_table(medium: ElasticMedium) -> dict:
    """Assembled xi/chi series + strong coefficient for every (j, k) and base."""
    prim = _primitive_series(medium)

    def combine(combo):
        xi = np.zeros(_SERIES_TERMS, dtype=complex)
        chi = np.zeros(_SERIES_TERMS, dtype=complex)
        strong = 0.0 + 0.0j
        for key, c in combo.items():
            xi = xi + c * prim[key].xi
            chi = chi + c * prim[key].chi
            strong = strong + c * prim[key].strong
        return _Split(xi, chi, strong)

    table = {"Qstrong": complex(prim["Q",].strong)}
    for jk in HYPERSINGULAR_PAIRS:
        table[jk] = combine(_combination(medium, *jk))
    table["base1"] = combine(_base_combination(medium, 1))
    # gamma_2 = v^2 gamma_2^(0):  xi_2 = u xi_2^(0), chi_2 = u chi_2^(0) + s_20
    s20 = table[(2, 0)]
    table["base2"] = _Split(
        np.concatenate([[0.0], s20.xi[:-1]]),
        np.concatenate([[s20.strong], s20.chi[:-1]]),
        0.0,
    )
    return table


def switch_radius(medium: ElasticMedium) -> float:
    """Series/direct switchover: v < 0.015 min(1, 1/ks) uses the series.

    Below the switch the direct formulas lose too many digits to the 1/v^2
    cancellations; above it they are good to ~1e-12 relative.  The factor
    0.015 keeps the switch below 1e-3 for every k_s >= 15, so consistency
    checks on [1e-3, 0.5] exercise a single branch.
    """
    return 0.015 * min(1.0, 1.0 / medium.ks)


# ---------------------------------------------------------------------------
# primitive evaluation (direct branch)
# ---------------------------------------------------------------------------


class _Primitives:
    """Direct-formula values of the primitives on one distance array."""

    def __init__(self, medium: ElasticMedium, v: np.ndarray):
        self.v = v
        self.vsq = v * v
        self.lnv = np.log(v)
        kp, ks = medium.kp, medium.ks
        h0p, h1p = hankel_pair(kp * v)
        h0s, h1s = hankel_pair(ks * v)
        self.A = {"p": h0p, "s": h0s}
        self.B = {"p": kp * h1p / v, "s": ks * h1s / v}
        self.k = {"p": kp, "s": ks}
        self.ell = {
            t: math.log(0.5 * self.k[t]) + EULER_GAMMA for t in ("p", "s")
        }
        self._strongQ = None

    def gamma(self, key):
        if key[0] == "A":
            return self.A[key[1]]
        if key[0] == "B":
            return self.B[key[1]]
        ks, kp = self.k["s"], self.k["p"]
        return (
            ks**2 * self.A["s"] - kp**2 * self.A["p"] - 2.0 * (self.B["s"] - self.B["p"])
        ) / self.vsq

    def xi(self, key):
        if key[0] == "A":
            return 2j * self.A[key[1]].real
        if key[0] == "B":
            return 2j * self.B[key[1]].real
        ks, kp = self.k["s"], self.k["p"]
        num = (
            ks**2 * self.A["s"].real
            - kp**2 * self.A["p"].real
            - 2.0 * (self.B["s"].real - self.B["p"].real)
        )
        return 2j * num / self.vsq

    def chi_reg(self, key, strongQ=None):
        """chi with the strong 1/v^2 part removed."""
        if key[0] == "A":
            a = self.A[key[1]]
            return a.real + 1j * (a.imag - (2.0 / math.pi) * self.lnv * a.real)
        if key[0] == "B":
            b = self.B[key[1]]
            return b.real + 1j * (
                b.imag - (2.0 / math.pi) * self.lnv * b.real + 2.0 / (math.pi * self.vsq)
            )
        ks, kp = self.k["s"], self.k["p"]
        num = (
            ks**2 * self.chi_reg(("A", "s"))
            - kp**2 * self.chi_reg(("A", "p"))
            - 2.0 * (self.chi_reg(("B", "s")) - self.chi_reg(("B", "p")))
        )
        return (num - strongQ) / self.vsq


def _eval_series(coeffs: np.ndarray, vsq: np.ndarray) -> np.ndarray:
    out = np.full_like(vsq, complex(coeffs[-1]), dtype=complex)
    for c in coeffs[-2::-1]:
        out = out * vsq + c
    return out


def _eval_split(medium: ElasticMedium, jk, v: np.ndarray):
    """(xi, chi_regular, strong) of gamma_jk on a positive array v."""
    table = _split_table(medium)
    entry = table[jk]
    v = np.asarray(v, dtype=float)
    xi = np.empty(v.shape, dtype=complex)
    chi = np.empty(v.shape, dtype=complex)
    near = v < switch_radius(medium)
    if np.any(near):
        u = v[near] ** 2
        xi[near] = _eval_series(entry.xi, u)
        chi[near] = _eval_series(entry.chi, u)
    far = ~near
    if np.any(far):
        prim = _Primitives(medium, v[far])
        combo = (
            _combination(medium, *jk)
            if isinstance(jk, tuple)
            else _base_combination(medium, 1)
        )
        xi_f = np.zeros(v[far].shape, dtype=complex)
        chi_f = np.zeros(v[far].shape, dtype=complex)
        for key, c in combo.items():
            xi_f = xi_f + c * prim.xi(key)
            chi_f = chi_f + c * prim.chi_reg(key, strongQ=table["Qstrong"])
        xi[far] = xi_f
        chi[far] = chi_f
    return xi, chi, complex(entry.strong)


def split_coeff(medium: ElasticMedium, j: int, k: int, v):
    """(xi, chi, strong) with gamma_j^(k) = (1/pi) ln v xi + chi + strong/v^2.

    chi carries no 1/v^2 part; the strong coefficient is returned separately
    so quadrature can route log terms and strong terms differently.  The pair
    (1, 0) is included for completeness (its split is the base gamma_1 split
    divided by v^2, with strong = chi_1(0)); it multiplies the zero matrix in
    every kernel.
    """
    v = np.asarray(v, dtype=float)
    scalar = v.ndim == 0
    va = np.atleast_1d(v)
    if np.any(va < 0.0) or (np.any(va == 0.0) and (j, k) == (1, 0)):
        raise ValueError("separation must be positive")
    if (j, k) == (1, 0):
        xi1, chi1, _ = _eval_split(medium, "base1", va)
        chi1_0 = complex(_split_table(medium)["base1"].chi[0])
        xi, chi, strong = xi1 / va**2, (chi1 - chi1_0) / va**2, chi1_0
    elif k in (0, 1, 2) and j in (1, 2):
        xi, chi, strong = _eval_split(medium, (j, k), va)
    else:
        raise ValueError("j must be 1 or 2 and k in {0, 1, 2}")
    if scalar:
        return complex(xi[0]), complex(chi[0]), strong
    return xi, chi, strong


def fundamental_split(medium: ElasticMedium, j: int, v):
    """(xi_j, chi_j) of the base kernel coefficients gamma_j (no strong part)."""
    v = np.asarray(v, dtype=float)
    scalar = v.ndim == 0
    va = np.atleast_1d(v)
    if j == 1:
        xi, chi, _ = _eval_split(medium, "base1", va)
    elif j == 2:
        xi0, chi0, s = _eval_split(medium, (2, 0), va)
        xi, chi = va**2 * xi0, va**2 * chi0 + s
    else:
        raise ValueError("j must be 1 or 2")
    if scalar:
        return complex(xi[0]), complex(chi[0])
    return xi, chi


def gamma_base(medium: ElasticMedium, j: int, v):
    """gamma_j(v) via direct Hankel formulas (v > 0)."""
    v = np.asarray(v, dtype=float)
    scalar = v.ndim == 0
    va = np.atleast_1d(v)
    if np.any(va <= 0.0):
        raise ValueError("separation must be positive")
    prim = _Primitives(medium, va)
    if j == 1:
        out = sum(c * prim.gamma(key) for key, c in _base_combination(medium, 1).items())
    elif j == 2:
        out = va**2 * sum(
            c * prim.gamma(key) for key, c in _combination(medium, 2, 0).items()
        )
    else:
        raise ValueError("j must be 1 or 2")
    return complex(out[0]) if scalar else out


def gamma_coeff(medium: ElasticMedium, j: int, k: int, v):
    """gamma_j^(k)(v) via direct Hankel formulas (v > 0)."""
    v = np.asarray(v, dtype=float)
    scalar = v.ndim == 0
    va = np.atleast_1d(v)
    if np.any(va <= 0.0):
        raise ValueError("separation must be positive")
    if k == 0:
        out = gamma_base(medium, j, va) / va**2
    else:
        prim = _Primitives(medium, va)
        out = sum(c * prim.gamma(key) for key, c in _combination(medium, j, k).items())
    return complex(out[0]) if scalar else np.asarray(out)


# ---------------------------------------------------------------------------
# tensors
# ---------------------------------------------------------------------------


def _outer(a, b):
    return a[..., :, None] * b[..., None, :]


def _jtensor(r, vsq):
    return _outer(r, r) / vsq[..., None, None]


def fundamental(medium: ElasticMedium, x, y):
    """Kupradze tensor Gamma(x, y) = gamma_1 I + gamma_2 J(x - y); x != y."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r = x - y
    vsq = np.einsum("...i,...i->...", r, r)
    if np.any(vsq == 0.0):
        raise ValueError("fundamental tensor is singular at x = y")
    v = np.sqrt(vsq)
    g1 = np.asarray(gamma_base(medium, 1, v))
    g2 = np.asarray(gamma_base(medium, 2, v))
    eye = np.eye(2)
    return g1[..., None, None] * eye + g2[..., None, None] * _jtensor(r, vsq)


def fundamental_static(medium: ElasticMedium, x, y):
    """Elastostatic (omega = 0) tensor Gamma_0(x, y); frequency independent."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r = x - y
    vsq = np.einsum("...i,...i->...", r, r)
    if np.any(vsq == 0.0):
        raise ValueError("static fundamental tensor is singular at x = y")
    lam, mu = medium.lam, medium.mu
    c = (lam + 3.0 * mu) / (4.0 * math.pi * mu * (lam + 2.0 * mu))
    ratio = (lam + mu) / (lam + 3.0 * mu)
    logterm = -0.5 * np.log(vsq)
    eye = np.eye(2)
    return c * (logterm[..., None, None] * eye + ratio * _jtensor(r, vsq))


def farfield_tensor(medium: ElasticMedium, xhat, y, branch: str):
    """Far-field tensor of Gamma: rank-one amplitude of the p or s part."""
    xhat = np.asarray(xhat, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(np.abs(np.einsum("...i,...i->...", xhat, xhat) - 1.0) > 1e-10):
        raise ValueError("observation direction must be a unit vector")
    phase_coeff = np.exp(1j * math.pi / 4.0)
    if branch == "p":
        amp = phase_coeff / ((medium.lam + 2.0 * medium.mu) * math.sqrt(8.0 * math.pi * medium.kp))
        phase = np.exp(-1j * medium.kp * np.einsum("...i,...i->...", xhat, y))
        proj = _outer(xhat, xhat)
    elif branch == "s":
        amp = phase_coeff / (medium.mu * math.sqrt(8.0 * math.pi * medium.ks))
        phase = np.exp(-1j * medium.ks * np.einsum("...i,...i->...", xhat, y))
        perp = np.stack([-xhat[..., 1], xhat[..., 0]], axis=-1)
        proj = _outer(perp, perp)
    else:
        raise ValueError("branch must be 'p' or 's'")
    return amp * phase[..., None, None] * proj


def traction_of_field(medium: ElasticMedium, jacobian, nu):
    """T_nu v = 2 mu (grad v) nu + lam nu div v - mu nu_perp divperp v.

    ``jacobian[..., i, j]`` holds d v_i / d x_j of the displacement field.
    """
    jac = np.asarray(jacobian)
    nu = np.asarray(nu, dtype=float)
    if np.any(np.abs(np.einsum("...i,...i->...", nu, nu) - 1.0) > 1e-10):
        raise ValueError("normal must be a unit vector")
    div = jac[..., 0, 0] + jac[..., 1, 1]
    divperp = jac[..., 1, 0] - jac[..., 0, 1]
    nuperp = np.stack([-nu[..., 1], nu[..., 0]], axis=-1)
    return (
        2.0 * medium.mu * np.einsum("...ij,...j->...i", jac, nu)
        + medium.lam * div[..., None] * nu
        - medium.mu * divperp[..., None] * nuperp
    )


def kernel_matrix_m(medium: ElasticMedium, j: int, k: int, x, y, nu_x):
    """Smooth matrix factor M_j^(k)(x, y) of the traction kernel; nu at x.

    Complex-safe in x (all entries are rational in x - y), which the N
    matrices exploit for exact differentiation.
    """
    x = np.asarray(x)
    y = np.asarray(y)
    n = np.asarray(nu_x)
    s = x - y
    lam, mu = medium.lam, medium.mu
    eye = np.eye(2)
    if (j, k) == (1, 0):
        batch = np.broadcast_shapes(s.shape[:-1], n.shape[:-1])
        return np.zeros(batch + (2, 2))
    ns = np.einsum("...i,...i->...", n, s)[..., None, None]
    if (j, k) == (1, 1):
        return lam * _outer(n, s) + mu * _outer(s, n) + mu * ns * eye
    vsq = np.einsum("...i,...i->...", s, s)
    if np.any(vsq == 0.0):
        raise ValueError("matrix factor needs x != y")
    jt = _jtensor(s, vsq)
    if (j, k) == (2, 0):
        return (
            (lam + 2.0 * mu) * _outer(n, s)
            + mu * _outer(s, n)
            + mu * ns * (eye - 4.0 * jt)
        )
    if (j, k) == (2, 1):
        m11 = lam * _outer(n, s) + mu * _outer(s, n) + mu * ns * eye
        return np.einsum("...ij,...jk->...ik", m11, jt)
    raise ValueError(f"no matrix factor for (j, k) = ({j}, {k})")


def _mt(medium, j, k, x, y, nu_y):
    """[M_j^(k)(y, x)]^T as a function of x; complex-step differentiable."""
    m = kernel_matrix_m(medium, j, k, x=y, y=x, nu_x=nu_y)
    return np.swapaxes(m, -1, -2)


def _traction_of_matrix(medium, matfun, x, nu_x, h=1e-120):
    """Column-wise traction of a matrix field via complex-step derivatives."""
    x = np.asarray(x, dtype=float)
    dx = []
    for axis in range(2):
        xc = x.astype(complex).copy()
        xc[..., axis] += 1j * h
        dx.append(matfun(xc).imag / h)
    grad = np.stack(dx, axis=-1)  # [..., i, c, l] = d M[i,c] / d x_l
    nu = np.asarray(nu_x, dtype=float)
    nuperp = np.stack([-nu[..., 1], nu[..., 0]], axis=-1)
    lam, mu = medium.lam, medium.mu
    dn = np.einsum("...icl,...l->...ic", grad, nu)
    div = grad[..., 0, :, 0] + grad[..., 1, :, 1]
    divperp = grad[..., 1, :, 0] - grad[..., 0, :, 1]
    return (
        2.0 * mu * dn
        + lam * np.einsum("...c,...i->...ic", div, nu)
        - mu * np.einsum("...c,...i->...ic", divperp, nuperp)
    )


def kernel_matrix_n(medium: ElasticMedium, j: int, k: int, x, y, nu_x, nu_y):
    """Matrix factor N_j^(k)(x, y) of the hypersingular kernel (x != y)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    s = x - y
    vsq = np.einsum("...i,...i->...", s, s)
    if np.any(vsq == 0.0):
        raise ValueError("N matrices need x != y")
    if (j, k) == (1, 0):
        return np.zeros(np.broadcast_shapes(x.shape, y.shape)[:-1] + (2, 2))

    def prod(ja, ka, jb, kb):
        a = kernel_matrix_m(medium, ja, ka, x, y, nu_x)
        b = _mt(medium, jb, kb, x, y, nu_y)
        return np.einsum("...ij,...jk->...ik", a, b) / vsq[..., None, None]

    if (j, k) == (1, 2):
        return prod(1, 1, 1, 1)
    if (j, k) == (2, 2):
        return prod(1, 1, 2, 1)
    if (j, k) == (1, 1):
        t = _traction_of_matrix(medium, lambda xc: _mt(medium, 1, 1, xc, y, nu_y), x, nu_x)
        return t - prod(1, 1, 1, 1)
    if (j, k) == (2, 0):
        t = _traction_of_matrix(medium, lambda xc: _mt(medium, 2, 0, xc, y, nu_y), x, nu_x)
        return t - 2.0 * prod(1, 1, 2, 0)
    if (j, k) == (2, 1):
        t = _traction_of_matrix(medium, lambda xc: _mt(medium, 2, 1, xc, y, nu_y), x, nu_x)
        return t - prod(1, 1, 2, 1) + prod(1, 1, 2, 0)
    raise ValueError(f"no N matrix for (j, k) = ({j}, {k})")


def traction_kernel(medium: ElasticMedium, x, y, nu_x):
    """T_nu(x) Gamma(x, y) = sum gamma_j^(k) M_j^(k)(x, y); the K' kernel."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    v = np.sqrt(np.einsum("...i,...i->...", x - y, x - y))
    out = 0.0
    for (j, k) in TRACTION_PAIRS:
        g = gamma_coeff(medium, j, k, v)
        out = out + np.asarray(g)[..., None, None] * kernel_matrix_m(
            medium, j, k, x, y, nu_x
        )
    return out


def difference_kernel(medium: ElasticMedium, operator: str, x, y, nu_x=None, nu_y=None):
    """Dynamic-minus-static kernel of K', K, or N; weakly singular.

    Evaluated through the splits, so the strong 1/v^2 parts cancel exactly
    and the result is stable down to v ~ 1e-6.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    v = np.sqrt(np.einsum("...i,...i->...", x - y, x - y))
    if np.any(v == 0.0):
        raise ValueError("difference kernel needs x != y")
    lnv = np.log(v)
    out = 0.0
    if operator == "Kprime":
        pairs, factor = TRACTION_PAIRS, lambda j, k: kernel_matrix_m(
            medium, j, k, x, y, nu_x
        )
    elif operator == "K":
        pairs, factor = TRACTION_PAIRS, lambda j, k: _mt(medium, j, k, x, y, nu_y)
    elif operator == "N":
        pairs, factor = HYPERSINGULAR_PAIRS, lambda j, k: kernel_matrix_n(
            medium, j, k, x, y, nu_x, nu_y
        )
    else:
        raise ValueError("operator must be 'Kprime', 'K', or 'N'")
    for (j, k) in pairs:
        xi, chi, _ = split_coeff(medium, j, k, v)
        g = (1.0 / math.pi) * lnv * np.asarray(xi) + np.asarray(chi)
        out = out + g[..., None, None] * factor(j, k)
    return out
