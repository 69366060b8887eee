"""Spectral quadrature rules for 2pi-periodic boundary integrals.

Three rules, all exact on trigonometric polynomials up to the grid's Nyquist
degree, built on the uniform nodes t_j = 2 pi j / n (n even):

  trapezoid      int f dt               ~ (2 pi / n) sum f(t_j)
  log_weights    int ln(4 sin^2((t-s)/2)) f(s) ds   (Kussmaul-Martensen)
  pv_cot_weights PV int cot((s-t)/2) f(s) ds        (conjugation operator)

The singular rules come from applying the exact Fourier images

  (1/2pi) int ln(4 sin^2((t-s)/2)) e^{ims} ds = -e^{imt} / |m|   (m != 0)
  (1/2pi) PV int cot((s-t)/2) e^{ims} ds     = i sgn(m) e^{imt}

to the trigonometric interpolant of f.  Both weight matrices are circulant;
they are returned dense because the Nystrom systems are dense anyway.
"""

from __future__ import annotations

import numpy as np


def nodes(n: int) -> np.ndarray:
    """Uniform periodic nodes t_j = 2 pi j / n, j = 0..n-1; n must be even."""
    if n < 2 or n % 2 != 0:
        raise ValueError("node count must be a positive even integer")
    return 2.0 * np.pi * np.arange(n) / n


def trapezoid_weight(n: int) -> float:
    return 2.0 * np.pi / n


def log_weights(n: int) -> np.ndarray:
    """Matrix R with sum_j R[i,j] f(t_j) ~ int_0^2pi ln(4 sin^2((t_i-s)/2)) f(s) ds.

    R[i,j] = -(4 pi / n) sum_{m=1}^{n/2-1} cos(m (t_i - t_j)) / m
             - (4 pi / n^2) cos(n (t_i - t_j) / 2).
    """
    t = nodes(n)
    diff = t[:, None] - t[None, :]
    m = np.arange(1, n // 2)
    r = -(4.0 * np.pi / n) * np.einsum(
        "ijm,m->ij", np.cos(diff[:, :, None] * m[None, None, :]), 1.0 / m
    )
    r -= (4.0 * np.pi / n**2) * np.cos(0.5 * n * diff)
    return r


def pv_cot_weights(n: int) -> np.ndarray:
    """Matrix C with sum_j C[i,j] f(t_j) ~ PV int_0^2pi cot((s-t_i)/2) f(s) ds.

    C[i,j] = -(4 pi / n) sum_{m=1}^{n/2-1} sin(m (t_i - t_j)); the diagonal
    weight is zero, so the kernel's diagonal never needs evaluating.
    """
    t = nodes(n)
    diff = t[:, None] - t[None, :]
    m = np.arange(1, n // 2)
    return -(4.0 * np.pi / n) * np.einsum(
        "ijm->ij", np.sin(diff[:, :, None] * m[None, None, :])
    )
