"""Catalog of the fourteen explicit symmetric compacton families.

Each family is a closed-form compactly supported travelling-wave profile
U(xi) of the K(m,n) or KP(m,n) equation, of the shape

    U(xi) = alpha * inner(beta * xi) ** exponent   for |xi| < L,
    U(xi) = 0                                      for |xi| >= L,

where ``inner`` is a polynomial, cosine, Jacobi cn/sn, or a rational
function of cn.  Every family carries a fixed relation between the
nonlinearity power m and the dispersion power n, a sign pattern on
(a, b, g) under which all fractional powers have positive bases, and an
admissible range of the free power outside which no weak compacton of
that shape exists.

The half-width L is always obtained by root-finding the inner
expression (``first_zero``) rather than trusted from a closed formula;
the closed formulas are kept in ``printed_half_width`` as cross-checks.
For the COS2 family the two deliberately disagree: the catalog formula
for its half-width is inconsistent with the cosine argument scale by a
factor |g|/|b|, and the root-found value is the one that actually
annihilates the profile.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq

from .elliptic import Modulus, complete_K, inverse_cn, jacobi
from .params import EquationParams, InvalidParameters, ProcedureRejection

__all__ = [
    "FamilyId",
    "ClosedFormProfile",
    "SampledProfile",
    "construct",
    "evaluate",
    "first_zero",
    "sample",
    "printed_half_width",
    "family_m",
    "admissible_interval",
    "sign_condition",
]

SQRT3 = math.sqrt(3.0)
#: modulus of the rational-cn families built on (1 + cn)/(2 + sqrt(3) - cn)
MOD_LOW = Modulus.real(math.sqrt(2.0) * (SQRT3 - 1.0) / 4.0)
#: modulus of the rational-cn families built on (cn + sqrt(3) - 2)/(cn + 1)
MOD_HIGH = Modulus.real(math.sqrt(2.0) * (SQRT3 + 1.0) / 4.0)
MOD_HALF = Modulus.real(1.0 / math.sqrt(2.0))
MOD_IMAG = Modulus.imaginary(1.0)
#: denominator shift of the low-modulus rational-cn form
DELTA = 2.0 + SQRT3


class FamilyId(Enum):
    ZSQ1 = "zsq1"
    ZSQ2 = "zsq2"
    COS1 = "cos1"
    COS2 = "cos2"
    CN1 = "cn1"
    CN2 = "cn2"
    SN1 = "sn1"
    SN2 = "sn2"
    RATCN1 = "ratcn1"
    RATCN2 = "ratcn2"
    RATCN3 = "ratcn3"
    RATCN4 = "ratcn4"
    RATCN5 = "ratcn5"
    RATCN6 = "ratcn6"


# sign patterns: "same" means sgn(g) = sgn(a) = sgn(b),
# "b_flip" means sgn(g) = sgn(a) = -sgn(b)
_SAME = "sgn(g) = sgn(a) = sgn(b)"
_BFLIP = "sgn(g) = sgn(a) = -sgn(b)"

# (free parameter name, admissible open interval, sign pattern, m relation)
_FAMILY_TABLE: dict[FamilyId, tuple[str, tuple[Fraction, Fraction | None], str]] = {
    FamilyId.ZSQ1: ("n", (Fraction(1), None), _SAME),
    FamilyId.ZSQ2: ("n", (Fraction(1), Fraction(2)), _BFLIP),
    FamilyId.COS1: ("n", (Fraction(1), None), _SAME),
    FamilyId.COS2: ("m", (Fraction(0), Fraction(1)), _BFLIP),
    FamilyId.CN1: ("n", (Fraction(1, 2), Fraction(1)), _BFLIP),
    FamilyId.CN2: ("n", (Fraction(1), None), _SAME),
    FamilyId.SN1: ("n", (Fraction(1, 2), Fraction(1)), _BFLIP),
    FamilyId.SN2: ("n", (Fraction(1), None), _SAME),
    FamilyId.RATCN1: ("n", (Fraction(1), None), _SAME),
    FamilyId.RATCN2: ("n", (Fraction(1), None), _SAME),
    FamilyId.RATCN3: ("n", (Fraction(2, 3), Fraction(1)), _BFLIP),
    FamilyId.RATCN4: ("n", (Fraction(1, 3), Fraction(1)), _BFLIP),
    FamilyId.RATCN5: ("n", (Fraction(1, 3), Fraction(1)), _BFLIP),
    FamilyId.RATCN6: ("n", (Fraction(1), None), _SAME),
}


def family_m(family: FamilyId, n: float) -> float:
    """Nonlinearity power m fixed by the family's m-n relation."""
    if family in (FamilyId.ZSQ1,):
        return (n + 1.0) / 2.0
    if family is FamilyId.ZSQ2:
        return 2.0 - n
    if family is FamilyId.COS1:
        return n
    if family is FamilyId.COS2:
        raise InvalidParameters("COS2 fixes n = 1 and is parameterized by m")
    if family in (FamilyId.CN1, FamilyId.CN2, FamilyId.SN1, FamilyId.SN2):
        return 2.0 * n - 1.0
    if family in (FamilyId.RATCN1, FamilyId.RATCN2, FamilyId.RATCN3):
        return 3.0 * n - 2.0
    return (3.0 * n - 1.0) / 2.0  # RATCN4, RATCN5, RATCN6


def admissible_interval(family: FamilyId) -> tuple[str, Fraction, Fraction | None]:
    """(parameter name, lower, upper) of the family's weak-existence range."""
    pname, (lo, hi), _ = _FAMILY_TABLE[family]
    return pname, lo, hi


def sign_condition(family: FamilyId) -> str:
    return _FAMILY_TABLE[family][2]


@dataclass(eq=False)
class ClosedFormProfile:
    """One explicit compacton family with all constants resolved."""

    family: FamilyId
    params: EquationParams
    g: float
    alpha: float
    beta: float
    modulus: Modulus | None
    exponent: float
    shift: float
    rational_constants: tuple[float, float] | None
    L: float
    p: float
    _inner: object = field(repr=False, default=None)
    _locator: object = field(repr=False, default=None)
    _bracket_step: float = field(repr=False, default=0.0)
    _printed_L: float = field(repr=False, default=math.nan)


def _check_signs(family: FamilyId, a: float, b: float, g: float) -> None:
    pattern = _FAMILY_TABLE[family][2]
    sa, sb, sg = math.copysign(1, a), math.copysign(1, b), math.copysign(1, g)
    ok = (sg == sa == sb) if pattern == _SAME else (sg == sa == -sb)
    if not ok:
        raise ProcedureRejection(
            f"{family.value}: sign condition {pattern} violated by "
            f"a={a}, b={b}, g={g}"
        )


def construct(family: FamilyId, n: float | None = None, a: float = 1.0,
              b: float = 1.0, g: float = 1.0, m: float | None = None,
              kind: str = "K", sigma: int | None = None) -> ClosedFormProfile:
    """Resolve one family's constants at a concrete parameter point.

    All families except COS2 take the dispersion power ``n`` as the free
    parameter; COS2 has n = 1 and takes the nonlinearity power ``m``.
    The half-width is root-found, never read off a closed formula.
    """
    a, b, g = float(a), float(b), float(g)
    if g == 0:
        raise ProcedureRejection(
            f"{family.value}: g = 0; every catalog family divides by a power of g"
        )
    pname, lo, hi = admissible_interval(family)
    if family is FamilyId.COS2:
        if m is None:
            raise InvalidParameters("COS2 requires the nonlinearity power m")
        m = float(m)
        n = 1.0
    else:
        if n is None:
            raise InvalidParameters(f"{family.value} requires the dispersion power n")
        n = float(n)
        m = family_m(family, n)
    free = m if pname == "m" else n
    if not (lo < free and (hi is None or free < hi)):
        upper = "inf" if hi is None else str(hi)
        raise ProcedureRejection(
            f"{family.value}: {pname} = {free} outside the weak-existence "
            f"interval ({lo}, {upper})"
        )
    _check_signs(family, a, b, g)
    params = EquationParams(m=m, n=n, a=a, b=b, sigma=sigma, kind=kind)
    prof = _resolve(family, params, g)
    prof.L = first_zero(prof)
    return prof


def _resolve(family: FamilyId, params: EquationParams, g: float) -> ClosedFormProfile:
    """Fill in alpha, beta, modulus, exponent, and the inner callable."""
    m, n, a, b = params.m, params.n, params.a, params.b
    mod: Modulus | None = None
    shift = 0.0
    ratc: tuple[float, float] | None = None

    if family is FamilyId.ZSQ1:
        alpha = (g * (3 * n + 1) / (2 * a * (n + 1))) ** (2.0 / (n - 1))
        beta = a * a * (n + 1) * (n - 1) ** 2 / (2 * g * b * n * (3 * n + 1) ** 2)
        exponent = 2.0 / (n - 1)
        p = exponent
        inner = lambda xi: 1.0 - beta * xi * xi
        bracket = 1.0 / math.sqrt(beta)
        printed = 1.0 / math.sqrt(beta)
    elif family is FamilyId.ZSQ2:
        alpha = (a * (n + 1) / (2 * g)) ** (1.0 / (n - 1))
        # this quadratic coefficient is negative under the sign pattern
        beta = g * g * (n - 1) ** 2 / (a * b * n * (n + 1) ** 2)
        exponent = 1.0 / (n - 1)
        p = exponent
        inner = lambda xi: 1.0 + beta * xi * xi
        bracket = 1.0 / math.sqrt(-beta)
        printed = 1.0 / math.sqrt(-beta)
    elif family is FamilyId.COS1:
        alpha = (2 * n * g / ((n + 1) * a)) ** (1.0 / (n - 1))
        beta = (n - 1) / (2 * n) * math.sqrt(a / b)
        exponent = 2.0 / (n - 1)
        p = exponent
        inner = lambda xi: np.cos(beta * xi)
        bracket = math.pi / (2 * beta)
        printed = math.pi / (2 * beta)
    elif family is FamilyId.COS2:
        alpha = (2 * a / (g * (m + 1))) ** (1.0 / (1 - m))
        beta = 0.5 * (1 - m) * math.sqrt(-g / b)
        exponent = 2.0 / (1 - m)
        p = exponent
        inner = lambda xi: np.cos(beta * xi)
        bracket = math.pi / (2 * beta)
        # the catalog formula carries |g|/|b| where the argument scale
        # implies |b|/|g|; retained verbatim for the audit cross-check
        printed = math.pi * math.sqrt(abs(g) / abs(b)) / (1 - m)
    elif family in (FamilyId.CN1, FamilyId.CN2):
        mod = MOD_HALF
        quarter = (g / (a * (3 * n - 1) * (n + 1))) ** 0.25
        if family is FamilyId.CN1:
            alpha = (a * (n + 1) / (g * (3 * n - 1))) ** (1.0 / (2 - 2 * n))
            beta = (1 - n) * math.sqrt(-a / (n * b)) * quarter
            exponent = 2.0 / (1 - n)
        else:
            alpha = (g * (3 * n - 1) / (a * (n + 1))) ** (1.0 / (2 * n - 2))
            beta = (n - 1) * math.sqrt(a / (n * b)) * quarter
            exponent = 2.0 / (n - 1)
        p = exponent
        inner = lambda xi: jacobi(beta * xi, MOD_HALF)[1]
        bracket = complete_K(MOD_HALF) / beta
        printed = complete_K(MOD_HALF) / beta
    elif family in (FamilyId.SN1, FamilyId.SN2):
        mod = MOD_IMAG
        quarter = (g / (a * (3 * n - 1) * (n + 1))) ** 0.25
        if family is FamilyId.SN1:
            alpha = (a * (n + 1) / (g * (3 * n - 1))) ** (1.0 / (2 - 2 * n))
            beta = (1 - n) * math.sqrt(-a / (2 * n * b)) * quarter
            exponent = 2.0 / (1 - n)
        else:
            alpha = (g * (3 * n - 1) / (a * (n + 1))) ** (1.0 / (2 * n - 2))
            beta = (n - 1) * math.sqrt(a / (2 * n * b)) * quarter
            exponent = 2.0 / (n - 1)
        p = exponent
        Ki = complete_K(MOD_IMAG)
        shift = Ki / beta  # quarter-period offset placing the crest at xi = 0
        inner = lambda xi: jacobi(beta * xi + Ki, MOD_IMAG)[0]
        bracket = Ki / beta
        printed = Ki / beta
    elif family in (FamilyId.RATCN1, FamilyId.RATCN2):
        mod = MOD_LOW
        ratc = (1.0, DELTA)
        alpha = ((5 + 3 * SQRT3) * g * (2 * n - 1)
                 / (2 * a * (n + 1))) ** (1.0 / (3 * n - 3))
        beta = (n - 1) * (12 * SQRT3 * a * g * g
                          / (b ** 3 * n ** 3 * (n + 1) ** 2 * (2 * n - 1))) ** (1.0 / 6)
        exponent = 1.0 / (n - 1)
        p = 2.0 / (n - 1)  # the inner fraction has a double zero
        inner = lambda xi: _rat_low(beta * xi)
        bracket = complete_K(MOD_LOW) / beta
        printed = 2.0 * complete_K(MOD_LOW) / beta
        if family is FamilyId.RATCN1:
            shift = printed  # half-period-shifted printed form, same profile
    elif family is FamilyId.RATCN3:
        mod = MOD_HIGH
        ratc = (SQRT3 - 2.0, 1.0)
        alpha = ((5 + 3 * SQRT3) * a * (n + 1)
                 / (g * (2 * n - 1))) ** (1.0 / (3 - 3 * n))
        beta = (1 - n) * (-12 * SQRT3 * a * g * g
                          / (b ** 3 * n ** 3 * (n + 1) ** 2 * (2 * n - 1))) ** (1.0 / 6)
        exponent = 1.0 / (1 - n)
        p = exponent
        inner = lambda xi: _rat_high(beta * xi)
        bracket = complete_K(MOD_HIGH) / beta
        printed = inverse_cn(2.0 - SQRT3, MOD_HIGH) / beta
    elif family in (FamilyId.RATCN4, FamilyId.RATCN5):
        mod = MOD_LOW
        ratc = (1.0, DELTA)
        base = (5 + 3 * SQRT3) * a * (n + 1) / (2 * g * (5 * n - 1))
        alpha = (base * base) ** (1.0 / (3 - 3 * n))
        beta = (1 - n) * (-3 * SQRT3 * a * a * g
                          / (2 * b ** 3 * n ** 3 * (n + 1) * (5 * n - 1) ** 2)) ** (1.0 / 6)
        exponent = 2.0 / (1 - n)
        p = 4.0 / (1 - n)  # double zero of the inner fraction
        inner = lambda xi: _rat_low(beta * xi)
        bracket = complete_K(MOD_LOW) / beta
        printed = 2.0 * complete_K(MOD_LOW) / beta
        if family is FamilyId.RATCN4:
            shift = printed
    elif family is FamilyId.RATCN6:
        mod = MOD_HIGH
        ratc = (SQRT3 - 2.0, 1.0)
        alpha = ((5 + 3 * SQRT3) * g * (5 * n - 1)
                 / (a * (n + 1))) ** (2.0 / (3 * n - 3))
        beta = (n - 1) * (3 * SQRT3 * a * a * g
                          / (2 * b ** 3 * n ** 3 * (n + 1) * (5 * n - 1) ** 2)) ** (1.0 / 6)
        exponent = 2.0 / (n - 1)
        p = exponent
        inner = lambda xi: _rat_high(beta * xi)
        bracket = complete_K(MOD_HIGH) / beta
        printed = inverse_cn(2.0 - SQRT3, MOD_HIGH) / beta
    else:  # pragma: no cover
        raise InvalidParameters(f"unknown family {family}")

    if family in (FamilyId.RATCN1, FamilyId.RATCN2, FamilyId.RATCN4, FamilyId.RATCN5):
        # the fraction touches zero without a sign change; locate its
        # critical point instead, which is a simple zero of sn
        locator = lambda xi: jacobi(beta * xi, MOD_LOW)[0]
    else:
        locator = inner

    return ClosedFormProfile(
        family=family, params=params, g=g, alpha=alpha, beta=beta,
        modulus=mod, exponent=exponent, shift=shift,
        rational_constants=ratc, L=math.nan, p=p,
        _inner=inner, _locator=locator, _bracket_step=bracket,
        _printed_L=printed,
    )


def _rat_low(s):
    c = jacobi(s, MOD_LOW)[1]
    return (1.0 + c) / (DELTA - c)


def _rat_high(s):
    c = jacobi(s, MOD_HIGH)[1]
    return (c + SQRT3 - 2.0) / (c + 1.0)


_DOUBLE_ZERO = (FamilyId.RATCN1, FamilyId.RATCN2, FamilyId.RATCN4, FamilyId.RATCN5)


def first_zero(profile: ClosedFormProfile) -> float:
    """Smallest xi > 0 where the uncut inner expression reaches zero.

    Scans analytic quarter-period steps for a sign change of the
    locator function and refines it to relative 1e-12.  The locator is
    the inner expression itself except for the rational-cn families
    whose inner touches zero quadratically; those use the sign change of
    sn at the same point.
    """
    f = profile._locator
    step = profile._bracket_step / 2.0
    # skip the locator's trivial root at xi = 0 for the double-zero case
    lo = step * 0.5 if profile.family in _DOUBLE_ZERO else 0.0
    flo = float(f(lo)) if lo > 0 else float(f(1e-12 * step))
    if flo <= 0:
        raise ProcedureRejection(
            f"{profile.family.value}: inner expression not positive at the "
            "center; a resolved constant is wrong"
        )
    for k in range(1, 41):
        hi = lo + step
        fhi = float(f(hi))
        if fhi <= 0.0:
            root = brentq(lambda x: float(f(x)), lo, hi, xtol=1e-300, rtol=1e-14)
            return float(root)
        lo, flo = hi, fhi
    raise ProcedureRejection(
        f"{profile.family.value}: no zero of the inner expression within "
        "10 analytic quarter-periods; a resolved constant is wrong"
    )


def printed_half_width(profile: ClosedFormProfile) -> float:
    """Half-width from the catalog's closed formula (audit cross-check).

    Agrees with ``first_zero`` to high relative accuracy for every
    family except COS2, whose formula is inconsistent with its own
    argument scale by a factor |g|/|b|.
    """
    return profile._printed_L


def evaluate(profile: ClosedFormProfile, xi):
    """U(xi) with the Heaviside cutoff: zero for |xi| >= L, else
    alpha * inner(|xi|) ** exponent.  Accepts scalars or arrays."""
    xi_arr = np.asarray(xi)
    if xi_arr.dtype.kind != "f":
        xi_arr = xi_arr.astype(float)
    scalar = xi_arr.ndim == 0
    x = np.atleast_1d(np.abs(xi_arr))
    out = np.zeros_like(x)
    inside = x < profile.L
    if np.any(inside):
        vals = np.asarray(profile._inner(x[inside]))
        # roundoff can push the inner value a hair below zero right at
        # the support boundary
        np.clip(vals, 0.0, None, out=vals)
        out[inside] = profile.alpha * vals ** profile.exponent
    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class SampledProfile:
    """Uniform samples of a profile on [-L, L] plus margin."""

    profile: ClosedFormProfile
    xi: np.ndarray
    U: np.ndarray

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["xi", "U"])
        for x, u in zip(self.xi, self.U):
            w.writerow([repr(float(x)), repr(float(u))])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {"metadata": profile_metadata(self.profile),
             "xi": [float(v) for v in self.xi],
             "U": [float(v) for v in self.U]},
            indent=2,
        )


def profile_metadata(profile: ClosedFormProfile) -> dict:
    pr = profile.params
    mod = None
    if profile.modulus is not None:
        mod = {"value": profile.modulus.value,
               "is_imaginary": profile.modulus.is_imaginary}
    return {
        "family": profile.family.value,
        "m": pr.m, "n": pr.n, "a": pr.a, "b": pr.b,
        "kind": pr.kind, "sigma": pr.sigma, "g": profile.g,
        "alpha": profile.alpha, "beta": profile.beta,
        "modulus": mod, "exponent": profile.exponent,
        "shift": profile.shift,
        "rational_constants": list(profile.rational_constants)
        if profile.rational_constants else None,
        "L": profile.L, "p": profile.p,
    }


def sample(profile: ClosedFormProfile, count: int) -> SampledProfile:
    """Uniform grid hitting both endpoints +-L exactly, extended by a
    margin of about a quarter half-width on each side."""
    if count < 16:
        raise InvalidParameters(f"sample count must be at least 16, got {count}")
    L = profile.L
    h = 2.0 * L / (count - 1)
    extra = int(math.ceil(0.25 * L / h))
    idx = np.arange(-(count - 1) // 2 - extra, (count - 1) // 2 + extra + 1)
    # odd counts center the grid on zero; even counts straddle it
    if count % 2 == 1:
        xi = idx * h
    else:
        xi = (np.arange(count + 2 * extra) - (count - 1) / 2.0 - extra) * h
    # snap the endpoint samples exactly onto +-L
    xi = np.where(np.isclose(np.abs(xi), L, rtol=1e-12, atol=0), np.sign(xi) * L, xi)
    return SampledProfile(profile=profile, xi=xi, U=evaluate(profile, xi))
