"""Homogeneous isotropic elastic medium at a fixed time-harmonic frequency.

Wavenumbers: kp = omega / sqrt(lam + 2 mu) (compressional) and
ks = omega / sqrt(mu) (shear), so sign(ks - kp) = sign(lam + mu).

Validation modes: the modeling assumption lam + mu > 0 is violated by
physically interesting parameter sets (e.g. lam = -1, mu = 1, where
kp = ks).  The default is permissive -- kp stays real as long as
lam + 2 mu > 0 -- and emits a warning; strict=True upgrades it to an error.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass


@dataclass(frozen=True)
class ElasticMedium:
    lam: float
    mu: float
    omega: float
    strict: bool = False

    def __post_init__(self):
        if not self.mu > 0.0:
            raise ValueError("mu must be positive")
        if not self.lam + 2.0 * self.mu > 0.0:
            raise ValueError("lam + 2 mu must be positive (kp would not be real)")
        if not self.omega > 0.0:
            raise ValueError("omega must be positive")
        if self.lam + self.mu <= 0.0:
            if self.strict:
                raise ValueError("lam + mu must be positive in strict mode")
            warnings.warn(
                "lam + mu <= 0 violates the standing modeling assumption; "
                "proceeding (permissive mode)",
                stacklevel=2,
            )

    @property
    def kp(self) -> float:
        return self.omega / (self.lam + 2.0 * self.mu) ** 0.5

    @property
    def ks(self) -> float:
        return self.omega / self.mu**0.5
