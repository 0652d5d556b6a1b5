"""Equation and travelling-wave parameter types shared by all modules.

The equations handled are the nonlinearly dispersive KdV generalization

    u_t + a (u^m)_x + b (u^n)_xxx = 0          (kind "K")

and its two-dimensional extension with a transverse term sigma*u_yy
(kind "KP").  A travelling-wave substitution u = U(xi) with
xi = x - c t (K) or xi = x + mu*y - nu*t (KP) reduces both to an ODE in
xi whose only memory of the wave parameters is the single effective
constant g: g = c for K and g = nu - sigma*mu**2 for KP.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "EquationParams",
    "WaveSpec",
    "InvalidParameters",
    "ProcedureRejection",
]


class InvalidParameters(ValueError):
    """A parameter combination violates a structural precondition."""


class ProcedureRejection(RuntimeError):
    """A well-formed request was rejected by a sign or existence check."""


@dataclass(frozen=True)
class EquationParams:
    """Powers and coefficients (m, n, a, b, sigma, kind) of one equation."""

    m: float
    n: float
    a: float
    b: float
    sigma: int | None = None
    kind: str = "K"

    def __post_init__(self):
        if self.kind not in ("K", "KP"):
            raise InvalidParameters(f"kind must be 'K' or 'KP', got {self.kind!r}")
        if not self.m > 0:
            raise InvalidParameters(f"nonlinearity power m must be positive, got {self.m}")
        if self.m == 1:
            raise InvalidParameters("m = 1 is the linear advection case and is excluded")
        if not self.n > 0:
            raise InvalidParameters(f"dispersion power n must be positive, got {self.n}")
        if self.a == 0:
            raise InvalidParameters("coefficient a must be nonzero")
        if self.b == 0:
            raise InvalidParameters("coefficient b must be nonzero")
        if self.kind == "KP":
            if self.sigma not in (-1, 1):
                raise InvalidParameters("KP requires sigma in {-1, +1}")
        elif self.sigma is not None:
            raise InvalidParameters("sigma is only meaningful for kind 'KP'")


@dataclass(frozen=True)
class WaveSpec:
    """Travelling-wave parameters and the derived effective constant g."""

    kind: str
    g: float
    c: float | None = None
    mu: float | None = None
    nu: float | None = None

    @staticmethod
    def for_K(c: float) -> "WaveSpec":
        return WaveSpec(kind="K", g=float(c), c=float(c))

    @staticmethod
    def for_KP(mu: float, nu: float, sigma: int) -> "WaveSpec":
        if sigma not in (-1, 1):
            raise InvalidParameters("KP requires sigma in {-1, +1}")
        return WaveSpec(kind="KP", g=float(nu) - sigma * float(mu) ** 2,
                        mu=float(mu), nu=float(nu))
