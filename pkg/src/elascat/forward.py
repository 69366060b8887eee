"""Exterior Neumann scattering by a Nystrom-discretized direct BIE.

With total trace u = u_inc + u_scat on the cavity boundary and zero traction
there, the scattered field is the elastic double-layer potential with
density u, and the boundary equation is

    (1/2 I - K) u = u_inc   on the boundary,

where K carries the kernel [T_nu(y) Gamma(x, y)]^T.  K splits into

  * the elastostatic part, whose only non-smooth piece is a tangential
    Cauchy kernel: a (s x n)/v^2 E with E = [[0,1],[-1,0]].  In parameter
    space the Cauchy factor is (1/2) cot((s-t)/2) plus a smooth remainder,
    handled by the spectral PV rule;
  * the dynamic-minus-static part, which is ln-singular with analytic
    coefficient: (1/pi) ln v Xi(t, s) + smooth, handled by the
    Kussmaul-Martensen rule on ln(4 sin^2((t-s)/2)) plus trapezoid;
  * everything else, smooth, handled by the trapezoid rule.

All diagonal limits are analytic: kappa_s(t,t) = x'.x''/(2|x'|^2), the
Laplace-type factor (n.s)/v^2 tends to (x' x x'')/(2|x'|^3), and the
dynamic matrices vanish on the diagonal.

The scheme is spectrally accurate on analytic curves; its correctness
oracle is the interior point-source test (scattered field known in closed
form) plus the Calderon-type identity (1/2 I + K) w - S T w = w for
traces w of fields radiating from an interior point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.linalg

from . import kernels as knl
from .geometry import Scene
from .medium import ElasticMedium
from .quadrature import log_weights, pv_cot_weights

_E_ROT = np.array([[0.0, 1.0], [-1.0, 0.0]])


class NearEigenvalueError(RuntimeError):
    """Linear solve failed the residual check; omega^2 is likely close to a
    Neumann eigenvalue of the cavity (or the system is otherwise
    ill-conditioned)."""

    def __init__(self, residual: float, condition: float):
        self.residual = residual
        self.condition = condition
        super().__init__(
            f"boundary system solve residual {residual:.2e} "
            f"(condition estimate {condition:.2e})"
        )


# ---------------------------------------------------------------------------
# incident fields
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IncidentField:
    """Incident displacement field; evaluate() returns values at points.

    traction(points, normals), when present, returns T_nu u at the points;
    it backs the single-layer route and cross-checks.
    """

    kind: str
    evaluate: Callable[[np.ndarray], np.ndarray]
    traction: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = None


def _unit(d) -> np.ndarray:
    d = np.asarray(d, dtype=float)
    if abs(np.linalg.norm(d) - 1.0) > 1e-10:
        raise ValueError("direction/polarization must be a unit vector")
    return d


def plane_p_wave(medium: ElasticMedium, d) -> IncidentField:
    """u(x) = d exp(i kp x.d); T u = i kp e^{i kp x.d} [2 mu (d.nu) d + lam nu]."""
    d = _unit(d)

    def ev(points):
        phase = np.exp(1j * medium.kp * (np.asarray(points) @ d))
        return phase[..., None] * d

    def tr(points, normals):
        phase = np.exp(1j * medium.kp * (np.asarray(points) @ d))
        vec = 2.0 * medium.mu * (normals @ d)[..., None] * d + medium.lam * normals
        return 1j * medium.kp * phase[..., None] * vec

    return IncidentField("plane_p", ev, tr)


def plane_s_wave(medium: ElasticMedium, d) -> IncidentField:
    """u(x) = d_perp exp(i ks x.d); T u = i ks e^{...} mu [2 (d.nu) d_perp - nu_perp]."""
    d = _unit(d)
    dperp = np.array([-d[1], d[0]])

    def ev(points):
        phase = np.exp(1j * medium.ks * (np.asarray(points) @ d))
        return phase[..., None] * dperp

    def tr(points, normals):
        phase = np.exp(1j * medium.ks * (np.asarray(points) @ d))
        nperp = np.stack([-normals[..., 1], normals[..., 0]], axis=-1)
        vec = medium.mu * (2.0 * (normals @ d)[..., None] * dperp - nperp)
        return 1j * medium.ks * phase[..., None] * vec

    return IncidentField("plane_s", ev, tr)


def point_source(medium: ElasticMedium, location, polarization) -> IncidentField:
    """u(x) = Gamma(x, z) p, radiating from z.

    Valid as a scattering incident field only when z lies outside the
    cavity (the direct equation needs the incident field to solve the
    Navier equation inside).  For z inside use the Neumann-data solve with
    f = T(Gamma(., z) p), which this field's traction() supplies.
    """
    z = np.asarray(location, dtype=float)
    p = _unit(polarization)

    def ev(points):
        g = knl.fundamental(medium, np.asarray(points, dtype=float), z)
        return np.einsum("...ij,j->...i", g, p)

    def tr(points, normals):
        t = knl.traction_kernel(medium, np.asarray(points, dtype=float), z, normals)
        return np.einsum("...ij,j->...i", t, p)

    return IncidentField("point_source", ev, tr)


def herglotz_wave(medium: ElasticMedium, directions, g_p, g_s) -> IncidentField:
    """Trapezoidal Herglotz superposition over the given direction set.

    u(x) = e^{-i pi/4} (2 pi / N) sum_j [ sqrt(kp/w) d_j e^{i kp x.d_j} g_p_j
                                        + sqrt(ks/w) d_j_perp e^{i ks x.d_j} g_s_j ].
    """
    d = np.asarray(directions, dtype=float)
    g_p = np.asarray(g_p, dtype=complex)
    g_s = np.asarray(g_s, dtype=complex)
    if d.shape[0] != g_p.size or d.shape[0] != g_s.size:
        raise ValueError("kernel samples must match the direction count")
    dperp = np.stack([-d[:, 1], d[:, 0]], axis=-1)
    w = 2.0 * np.pi / d.shape[0]
    cp = np.sqrt(medium.kp / medium.omega)
    cs = np.sqrt(medium.ks / medium.omega)
    front = np.exp(-1j * np.pi / 4.0) * w

    def ev(points):
        pts = np.asarray(points, dtype=float)
        php = np.exp(1j * medium.kp * pts @ d.T)  # (..., N)
        phs = np.exp(1j * medium.ks * pts @ d.T)
        up = np.einsum("...j,j,jk->...k", php, cp * g_p, d)
        us = np.einsum("...j,j,jk->...k", phs, cs * g_s, dperp)
        return front * (up + us)

    return IncidentField("herglotz", ev)


# ---------------------------------------------------------------------------
# assembly
# ---------------------------------------------------------------------------


def _pairwise(src, tgt):
    """r = y - x for target samples (rows) and source samples (cols)."""
    s = src.x[None, :, :] - tgt.x[:, None, :]  # (nt, ns, 2)
    vsq = np.einsum("ijk,ijk->ij", s, s)
    return s, vsq


def _mt_sum(medium, coeff_of_pair, s, vsq, n_src):
    """sum over traction pairs of coeff_jk * [M_jk(y, x)]^T on a grid.

    s = y - x, n_src = nu(y); built in place from the transposed closed
    forms to avoid materializing per-pair tensors twice.
    """
    lam, mu = medium.lam, medium.mu
    n = np.broadcast_to(n_src[None, :, :], s.shape)
    ns = np.einsum("ijk,ijk->ij", n, s)
    jt = s[:, :, :, None] * s[:, :, None, :] / vsq[:, :, None, None]
    rn = s[:, :, :, None] * n[:, :, None, :]
    nr = n[:, :, :, None] * s[:, :, None, :]
    eye = np.eye(2)
    m11t = lam * rn + mu * nr + mu * ns[:, :, None, None] * eye
    out = coeff_of_pair[(1, 1)][:, :, None, None] * m11t
    m20t = (
        (lam + 2.0 * mu) * rn
        + mu * nr
        + mu * ns[:, :, None, None] * (eye - 4.0 * jt)
    )
    out += coeff_of_pair[(2, 0)][:, :, None, None] * m20t
    m21t = np.einsum("ijab,ijbc->ijac", jt, m11t)
    out += coeff_of_pair[(2, 1)][:, :, None, None] * m21t
    return out


def _self_block_k(medium: ElasticMedium, smp, nodeset) -> np.ndarray:
    """Nystrom block of K for one curve against itself; (n, n, 2, 2)."""
    n = nodeset.n
    w = nodeset.weight
    t = nodeset.t
    lam, mu = medium.lam, medium.mu
    a = mu / (2.0 * np.pi * (lam + 2.0 * mu))
    b = (lam + mu) / (2.0 * np.pi * (lam + 2.0 * mu))

    s, vsq = _pairwise(smp, smp)
    di = np.arange(n)
    vsq[di, di] = 1.0  # masked; diagonals handled via limits
    v = np.sqrt(vsq)

    # static part: -a kappa E - (n.s) jac / v^2 (a I + 2 b J)
    kappa = np.einsum("ijk,jk->ij", s, smp.dx) / vsq
    dt = t[:, None] - t[None, :]
    dt[di, di] = 1.0
    kappa_s = kappa - 0.5 / np.tan(-0.5 * dt)  # cot((s - t_i)/2), s = t_j
    kappa_s[di, di] = np.einsum("ik,ik->i", smp.dx, smp.ddx) / (2.0 * smp.jac**2)
    nsv = np.einsum("jk,ijk->ij", smp.nu, s) * smp.jac[None, :] / vsq
    cross = smp.dx[:, 0] * smp.ddx[:, 1] - smp.dx[:, 1] * smp.ddx[:, 0]
    nsv[di, di] = cross / (2.0 * smp.jac**2)
    jt = s[:, :, :, None] * s[:, :, None, :] / vsq[:, :, None, None]
    jt[di, di] = smp.tau[:, :, None] * smp.tau[:, None, :]

    cotw = pv_cot_weights(n)
    block = (
        -a * (0.5 * cotw + w * kappa_s)[:, :, None, None] * _E_ROT
        - w * nsv[:, :, None, None] * (a * np.eye(2) + 2.0 * b * jt)
    ).astype(complex)

    # dynamic-minus-static: (1/pi) ln v Xi + smooth, KM rule + trapezoid
    xi = {}
    chi = {}
    for jk in knl.TRACTION_PAIRS:
        xij, chij, _ = knl.split_coeff(medium, *jk, v)
        xi[jk], chi[jk] = xij, chij
    ximat = _mt_sum(medium, xi, s, vsq, smp.nu)
    chimat = _mt_sum(medium, chi, s, vsq, smp.nu)
    ximat[di, di] = 0.0  # every M factor vanishes at coincidence
    chimat[di, di] = 0.0
    lng = np.log(vsq) - np.log(4.0 * np.sin(0.5 * dt) ** 2)
    lng[di, di] = 0.0
    km = log_weights(n)
    block += (km / (2.0 * np.pi))[:, :, None, None] * ximat * smp.jac[None, :, None, None]
    block += (
        w
        * (chimat + (lng / (2.0 * np.pi))[:, :, None, None] * ximat)
        * smp.jac[None, :, None, None]
    )
    return block


def _cross_block_k(medium, tgt, src, nodeset) -> np.ndarray:
    """Block of K between disjoint curves: smooth kernel, plain trapezoid."""
    s, vsq = _pairwise(src, tgt)
    v = np.sqrt(vsq)
    coeff = {jk: np.asarray(knl.gamma_coeff(medium, *jk, v)) for jk in knl.TRACTION_PAIRS}
    mat = _mt_sum(medium, coeff, s, vsq, src.nu)
    return nodeset.weight * mat * src.jac[None, :, None, None]


def _blocks_to_matrix(blocks) -> np.ndarray:
    """Assemble per-curve (nt, ns, 2, 2) blocks into the (2N, 2N) matrix."""
    rows = []
    for brow in blocks:
        row = []
        for blk in brow:
            nt, ns = blk.shape[:2]
            row.append(blk.transpose(0, 2, 1, 3).reshape(2 * nt, 2 * ns))
        rows.append(np.hstack(row))
    return np.vstack(rows)


def assemble_double_layer(medium: ElasticMedium, scene: Scene) -> np.ndarray:
    """Discrete double-layer boundary operator K (direct values)."""
    samples = scene.samples
    blocks = []
    for i, ti in enumerate(samples):
        row = []
        for j, sj in enumerate(samples):
            if i == j:
                row.append(_self_block_k(medium, sj, scene.nodeset))
            else:
                row.append(_cross_block_k(medium, ti, sj, scene.nodeset))
        blocks.append(row)
    return _blocks_to_matrix(blocks)


def assemble_system(medium: ElasticMedium, scene: Scene) -> np.ndarray:
    """Matrix of (1/2 I - K) acting on interleaved nodal displacements."""
    k = assemble_double_layer(medium, scene)
    return 0.5 * np.eye(k.shape[0]) - k


def assemble_single_layer(medium: ElasticMedium, scene: Scene) -> np.ndarray:
    """Discrete single-layer operator S (kernel Gamma(x, y); ln-singular).

    Not used by the solver; it completes the Calderon-type identity tests
    and the documented single-layer alternative formulation.
    """
    samples = scene.samples
    n = scene.nodeset.n
    w = scene.nodeset.weight
    t = scene.nodeset.t
    km = log_weights(n)
    table = knl._split_table(medium)
    xi1_0 = complex(table["base1"].xi[0])
    chi1_0 = complex(table["base1"].chi[0])
    chi2_0 = complex(table["base2"].chi[0])
    blocks = []
    di = np.arange(n)
    for i, ti in enumerate(samples):
        row = []
        for j, sj in enumerate(samples):
            s, vsq = _pairwise(sj, ti)
            if i == j:
                vsq[di, di] = 1.0
            v = np.sqrt(vsq)
            jt = s[:, :, :, None] * s[:, :, None, :] / vsq[:, :, None, None]
            if i != j:
                g1 = np.asarray(knl.gamma_base(medium, 1, v))
                g2 = np.asarray(knl.gamma_base(medium, 2, v))
                blk = (
                    g1[:, :, None, None] * np.eye(2) + g2[:, :, None, None] * jt
                ) * (w * sj.jac[None, :, None, None])
                row.append(blk)
                continue
            jt[di, di] = sj.tau[:, :, None] * sj.tau[:, None, :]
            xi1, chi1 = knl.fundamental_split(medium, 1, v)
            xi2, chi2 = knl.fundamental_split(medium, 2, v)
            ximat = xi1[:, :, None, None] * np.eye(2) + xi2[:, :, None, None] * jt
            chimat = chi1[:, :, None, None] * np.eye(2) + chi2[:, :, None, None] * jt
            ximat[di, di] = xi1_0 * np.eye(2)
            chimat[di, di] = (
                chi1_0 * np.eye(2) + chi2_0 * jt[di, di]
            )
            dt = t[:, None] - t[None, :]
            dt[di, di] = 1.0
            lng = np.log(vsq) - np.log(4.0 * np.sin(0.5 * dt) ** 2)
            lng[di, di] = 2.0 * np.log(sj.jac)
            blk = (km / (2.0 * np.pi))[:, :, None, None] * ximat
            blk += w * (chimat + (lng / (2.0 * np.pi))[:, :, None, None] * ximat)
            row.append(blk * sj.jac[None, :, None, None])
        blocks.append(row)
    return _blocks_to_matrix(blocks)


# ---------------------------------------------------------------------------
# solver
# ---------------------------------------------------------------------------


class ForwardSolver:
    """Factorized boundary system, reusable across many incident fields.

    Two entry points:

    * ``solve`` / ``far_field``: incident displacement fields that solve the
      Navier equation inside the cavity (plane waves, Herglotz waves, point
      sources located outside).  Solves (1/2 I - K) u = u_inc for the total
      trace; the scattered field is the double-layer potential of u.
    * ``solve_neumann_data`` / ``far_field_neumann``: prescribed boundary
      traction f (the data-to-pattern setting, valid for any f, e.g. the
      trace of a point source *inside* the cavity).  Solves
      (1/2 I - K) v = -S f; the field is DL[v] - SL[f].
    """

    def __init__(self, medium: ElasticMedium, scene: Scene):
        self.medium = medium
        self.scene = scene
        self.matrix = assemble_system(medium, scene)
        self._lu = scipy.linalg.lu_factor(self.matrix)
        self._single = None
        self._samples = scene.samples
        self._points = np.vstack([s.x for s in self._samples])
        self._nu = np.vstack([s.nu for s in self._samples])
        self._jac = np.concatenate([s.jac for s in self._samples])

    @property
    def boundary_points(self) -> np.ndarray:
        return self._points

    @property
    def boundary_normals(self) -> np.ndarray:
        return self._nu

    def solve_rhs(self, rhs: np.ndarray) -> np.ndarray:
        """Solve (1/2 I - K) u = rhs with a residual check (<= 1e-10)."""
        u = scipy.linalg.lu_solve(self._lu, rhs)
        res = np.linalg.norm(self.matrix @ u - rhs) / max(np.linalg.norm(rhs), 1e-300)
        if res > 1e-10:
            raise NearEigenvalueError(res, np.linalg.cond(self.matrix))
        return u

    def solve(self, incident: IncidentField) -> np.ndarray:
        """Total-field boundary trace for one incident field; (2N,) complex."""
        vals = incident.evaluate(self._points)  # (N, 2)
        return self.solve_rhs(vals.reshape(-1))

    def solve_many(self, incidents) -> np.ndarray:
        """Traces for several incident fields; (2N, m) complex."""
        rhs = np.stack([inc.evaluate(self._points).reshape(-1) for inc in incidents], axis=1)
        u = scipy.linalg.lu_solve(self._lu, rhs)
        res = np.linalg.norm(self.matrix @ u - rhs, axis=0) / np.maximum(
            np.linalg.norm(rhs, axis=0), 1e-300
        )
        if np.any(res > 1e-10):
            raise NearEigenvalueError(float(np.max(res)), np.linalg.cond(self.matrix))
        return u

    def far_field(self, traces: np.ndarray, directions) -> tuple[np.ndarray, np.ndarray]:
        """(up, us) of the scattered field for nodal trace vectors.

        traces: (2N,) or (2N, m); directions: (M, 2) unit vectors.
        Returns arrays of shape (M,) or (M, m).
        """
        return farfield_from_trace(
            self.medium, self._points, self._nu, self._jac,
            self.scene.nodeset.weight, traces, directions,
        )

    @property
    def single_layer(self) -> np.ndarray:
        if self._single is None:
            self._single = assemble_single_layer(self.medium, self.scene)
        return self._single

    def solve_neumann_data(self, f: np.ndarray) -> np.ndarray:
        """Trace of the radiating solution with boundary traction f (2N,[m])."""
        return scipy.linalg.lu_solve(self._lu, -(self.single_layer @ f))

    def far_field_neumann(self, trace, f, directions):
        """Far-field pair of DL[trace] - SL[f]."""
        up_d, us_d = self.far_field(trace, directions)
        up_s, us_s = single_layer_farfield(
            self.medium, self._points, self._jac, self.scene.nodeset.weight, f, directions
        )
        return up_d - up_s, us_d - us_s


def farfield_from_trace(medium, points, normals, jacs, weight, traces, directions):
    """Far-field pair of the double-layer potential with nodal density.

    up(xh) = e^{-i pi/4}/(lam+2mu) sqrt(kp/8pi) *
             int [2 mu (nu.xh)(xh.phi) + lam nu.phi] e^{-i kp xh.y} ds(y)
    us(xh) = e^{-i pi/4} sqrt(ks/8pi) *
             int [(nu.xh)(xhp.phi) + (nu.xhp)(xh.phi)] e^{-i ks xh.y} ds(y)
    """
    xh = np.asarray(directions, dtype=float)
    single = traces.ndim == 1
    phi = traces.reshape(-1, 2, 1 if single else traces.shape[1])  # (N,2,m)
    lam, mu = medium.lam, medium.mu
    front = np.exp(-1j * np.pi / 4.0) * weight
    cp = front / (lam + 2.0 * mu) * np.sqrt(medium.kp / (8.0 * np.pi))
    cs = front * np.sqrt(medium.ks / (8.0 * np.pi))
    xhp = np.stack([-xh[:, 1], xh[:, 0]], axis=-1)
    nu_dot_xh = normals @ xh.T  # (N, M)
    nu_dot_xhp = normals @ xhp.T
    xh_dot_phi = np.einsum("mk,nkj->mnj", xh, phi)  # (M, N, m)
    xhp_dot_phi = np.einsum("mk,nkj->mnj", xhp, phi)
    nu_dot_phi = np.einsum("nk,nkj->nj", normals, phi)  # (N, m)
    php = np.exp(-1j * medium.kp * xh @ points.T)  # (M, N)
    phs = np.exp(-1j * medium.ks * xh @ points.T)
    wj = jacs  # (N,)
    up = cp * np.einsum(
        "mn,n,mnj->mj",
        php,
        wj,
        2.0 * mu * nu_dot_xh.T[:, :, None] * xh_dot_phi
        + lam * nu_dot_phi[None, :, :],
    )
    us = cs * np.einsum(
        "mn,n,mnj->mj",
        phs,
        wj,
        nu_dot_xh.T[:, :, None] * xhp_dot_phi
        + nu_dot_xhp.T[:, :, None] * xh_dot_phi,
    )
    if single:
        return up[:, 0], us[:, 0]
    return up, us


def single_layer_farfield(medium, points, jacs, weight, densities, directions):
    """Far-field pair of the single-layer potential with nodal density.

    up(xh) = e^{i pi/4}/((lam+2mu) sqrt(8 pi kp)) int e^{-i kp xh.y} xh.psi ds
    us(xh) = e^{i pi/4}/(mu sqrt(8 pi ks))       int e^{-i ks xh.y} xhp.psi ds
    """
    xh = np.asarray(directions, dtype=float)
    single = densities.ndim == 1
    psi = densities.reshape(-1, 2, 1 if single else densities.shape[1])
    lam, mu = medium.lam, medium.mu
    front = np.exp(1j * np.pi / 4.0) * weight
    cp = front / ((lam + 2.0 * mu) * np.sqrt(8.0 * np.pi * medium.kp))
    cs = front / (mu * np.sqrt(8.0 * np.pi * medium.ks))
    xhp = np.stack([-xh[:, 1], xh[:, 0]], axis=-1)
    php = np.exp(-1j * medium.kp * xh @ points.T)
    phs = np.exp(-1j * medium.ks * xh @ points.T)
    xh_dot_psi = np.einsum("mk,nkj->mnj", xh, psi)
    xhp_dot_psi = np.einsum("mk,nkj->mnj", xhp, psi)
    up = cp * np.einsum("mn,n,mnj->mj", php, jacs, xh_dot_psi)
    us = cs * np.einsum("mn,n,mnj->mj", phs, jacs, xhp_dot_psi)
    if single:
        return up[:, 0], us[:, 0]
    return up, us


@dataclass(frozen=True)
class FarFieldMap:
    """Far-field pair of one scattering solve, evaluable at any directions."""

    solver: ForwardSolver
    trace: np.ndarray

    def pairs(self, directions) -> tuple[np.ndarray, np.ndarray]:
        return self.solver.far_field(self.trace, directions)

    def pair(self, direction) -> tuple[complex, complex]:
        up, us = self.pairs(np.asarray(direction, dtype=float)[None, :])
        return complex(up[0]), complex(us[0])


def solve_scattering(medium, scene, incident) -> np.ndarray:
    """One-shot solve; returns the nodal total-field trace."""
    return ForwardSolver(medium, scene).solve(incident)


def scatter_plane_wave(medium, scene, kind: str, d, solver=None) -> FarFieldMap:
    """Far field for a plane p- or s-wave of direction d."""
    solver = solver or ForwardSolver(medium, scene)
    inc = plane_p_wave(medium, d) if kind == "p" else plane_s_wave(medium, d)
    return FarFieldMap(solver, solver.solve(inc))


def scatter_herglotz(medium, scene, directions, g_p, g_s, solver=None) -> FarFieldMap:
    """Far field for trapezoidal Herglotz incidence with nodal kernel g."""
    solver = solver or ForwardSolver(medium, scene)
    inc = herglotz_wave(medium, directions, g_p, g_s)
    return FarFieldMap(solver, solver.solve(inc))


# ---------------------------------------------------------------------------
# off-boundary potential evaluation (verification helper)
# ---------------------------------------------------------------------------


def double_layer_potential(medium, scene, density, points, refine: int = 1):
    """Evaluate the double-layer potential off the boundary by trapezoid.

    ``density`` holds interleaved nodal values on the scene's node set.  With
    refine > 1 the curve data come from the analytic parameterization at
    refine*n nodes and the density is resampled by trigonometric
    interpolation; needed when evaluation points approach the boundary
    (quadrature error decays like exp(-c m h) at distance h with m nodes).
    """
    from .geometry import NodeSet, sample

    pts = np.atleast_2d(np.asarray(points, dtype=float))
    n = scene.nodeset.n
    phi = density.reshape(len(scene.curves), n, 2)
    out = np.zeros((pts.shape[0], 2), dtype=complex)
    fine = NodeSet(n * refine)
    for c, curve in enumerate(scene.curves):
        smp = sample(curve, fine)
        phic = resample_periodic(phi[c], refine) if refine > 1 else phi[c]
        s = smp.x[None, :, :] - pts[:, None, :]  # y - x
        vsq = np.einsum("ijk,ijk->ij", s, s)
        v = np.sqrt(vsq)
        coeff = {
            jk: np.asarray(knl.gamma_coeff(medium, *jk, v))
            for jk in knl.TRACTION_PAIRS
        }
        mat = _mt_sum(medium, coeff, s, vsq, smp.nu)
        out += fine.weight * np.einsum(
            "pjab,jb,j->pa", mat, phic, smp.jac
        )
    return out


def resample_periodic(values: np.ndarray, refine: int) -> np.ndarray:
    """Trigonometric interpolation of periodic nodal data onto refine*n nodes."""
    n = values.shape[0]
    spec = np.fft.fft(values, axis=0)
    m = n * refine
    pad = np.zeros((m,) + values.shape[1:], dtype=complex)
    half = n // 2
    pad[:half] = spec[:half]
    pad[m - half + 1 :] = spec[half + 1 :]
    pad[half] = 0.5 * spec[half]  # split the Nyquist mode
    pad[m - half] = 0.5 * spec[half]
    return np.fft.ifft(pad, axis=0) * refine
