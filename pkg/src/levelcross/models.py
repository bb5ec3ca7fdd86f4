"""Diabatic two-level model families and their adiabatic quantities.

Hamiltonian convention (hbar = 1):

    H(t) = [[ eps(t),  V(t) ],
            [ V(t),  -eps(t) ]]

with instantaneous eigenvalues -W, +W, W = sqrt(eps^2 + V^2).  The sign
of the nonadiabatic coupling gamma(t) is fixed once globally to the
+(V deps/dt - eps dV/dt) branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

__all__ = [
    "Superparabolic",
    "Parabolic",
    "DiabaticModel",
    "diabatic",
    "adiabatic_levels",
    "nonadiabatic_coupling",
    "reduced_parameters",
    "model_from_params",
]


@dataclass(frozen=True)
class Superparabolic:
    """Glancing family eps(t) = t^N, V(t) = alpha; N even >= 2, alpha > 0."""

    N: int
    alpha: float

    def __post_init__(self) -> None:
        if int(self.N) != self.N or self.N < 2 or self.N % 2 != 0:
            raise ValueError(f"N must be an even integer >= 2, got {self.N!r}")
        if not (self.alpha > 0.0):
            raise ValueError(f"alpha must be positive, got {self.alpha!r}")
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "alpha", float(self.alpha))


@dataclass(frozen=True)
class Parabolic:
    """eps(t) = (A t^2 - B)/2, V(t) = V0; A > 0, V0 > 0, B of either sign.

    B > 0 crosses twice, B < 0 never crosses (tunneling), B = 0 glances.
    """

    A: float
    B: float
    V0: float

    def __post_init__(self) -> None:
        if not (self.A > 0.0):
            raise ValueError(f"A must be positive, got {self.A!r}")
        if not (self.V0 > 0.0):
            raise ValueError(f"V0 must be positive, got {self.V0!r}")
        object.__setattr__(self, "A", float(self.A))
        object.__setattr__(self, "B", float(self.B))
        object.__setattr__(self, "V0", float(self.V0))


DiabaticModel = Union[Superparabolic, Parabolic]


def diabatic(model: DiabaticModel, t: float) -> tuple[float, float]:
    """Diabatic level eps(t) and coupling V(t)."""
    if isinstance(model, Superparabolic):
        return t**model.N, model.alpha
    return 0.5 * (model.A * t * t - model.B), model.V0


def adiabatic_levels(model: DiabaticModel, t: float) -> tuple[float, float]:
    """Instantaneous eigenvalues (lower, upper) = (-W, +W)."""
    eps, v = diabatic(model, t)
    w = math.hypot(eps, v)
    return -w, w


def nonadiabatic_coupling(model: DiabaticModel, t: float) -> float:
    """gamma(t) = (V deps/dt - eps dV/dt) / (2 (eps^2 + V^2)).

    Both families have constant coupling, so this is V deps/dt / (2 W^2).
    """
    if isinstance(model, Superparabolic):
        eps = t**model.N
        deps = model.N * t ** (model.N - 1)
        v = model.alpha
    else:
        eps = 0.5 * (model.A * t * t - model.B)
        deps = model.A * t
        v = model.V0
    w2 = eps * eps + v * v
    if w2 == 0.0:
        raise ValueError(f"adiabatic gap vanishes at t={t!r}")
    return v * deps / (2.0 * w2)


def reduced_parameters(model: DiabaticModel) -> tuple[float, float]:
    """Reduced (a^2, b^2) of the equivalent stationary crossing problem.

    Parabolic{A, B} maps identically to (A, B).  For the glancing family
    the N = 2 correspondence a^2 = 1/(4 alpha^3) is applied at every N,
    with b^2 = 0 encoding the glancing geometry.
    """
    if isinstance(model, Parabolic):
        return model.A, model.B
    return 1.0 / (4.0 * model.alpha**3), 0.0


def model_from_params(model: str, *, N=None, alpha=None, A=None, B=None, V0=None) -> DiabaticModel:
    """Build a model from loosely-typed CLI/config values."""
    kind = str(model).strip().lower()
    if kind == "superparabolic":
        if N is None or alpha is None:
            raise ValueError("superparabolic model requires N and alpha")
        return Superparabolic(int(N), float(alpha))
    if kind == "parabolic":
        if A is None or V0 is None:
            raise ValueError("parabolic model requires A and V0")
        return Parabolic(float(A), 0.0 if B is None else float(B), float(V0))
    raise ValueError(f"unknown model family {model!r}")
