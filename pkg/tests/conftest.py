"""Shared fixtures: admissible parameter draws and profile helpers."""

from functools import partial

import numpy as np

from compactons import catalog
from compactons.catalog import FamilyId

# Three admissible parameter draws per family.  The free power is n for
# every family except COS2 (parameterized by m with n = 1); the sign of
# b follows each family's sign condition with a = g = 1.
DRAWS: dict[FamilyId, list[dict]] = {
    FamilyId.ZSQ1: [dict(n=2.0), dict(n=1.5), dict(n=3.0)],
    FamilyId.ZSQ2: [dict(n=1.25, b=-1), dict(n=1.5, b=-1), dict(n=1.75, b=-1)],
    FamilyId.COS1: [dict(n=2.0), dict(n=1.5), dict(n=2.5)],
    FamilyId.COS2: [dict(m=0.25, b=-1), dict(m=0.5, b=-1), dict(m=0.75, b=-1)],
    FamilyId.CN1: [dict(n=0.6, b=-1), dict(n=0.75, b=-1), dict(n=0.9, b=-1)],
    FamilyId.CN2: [dict(n=2.0), dict(n=1.5), dict(n=2.5)],
    FamilyId.SN1: [dict(n=0.6, b=-1), dict(n=0.75, b=-1), dict(n=0.9, b=-1)],
    FamilyId.SN2: [dict(n=2.0), dict(n=1.5), dict(n=2.5)],
    FamilyId.RATCN1: [dict(n=2.0), dict(n=1.5), dict(n=2.5)],
    FamilyId.RATCN2: [dict(n=2.0), dict(n=1.5), dict(n=2.5)],
    FamilyId.RATCN3: [dict(n=0.75, b=-1), dict(n=0.8, b=-1), dict(n=0.9, b=-1)],
    FamilyId.RATCN4: [dict(n=0.5, b=-1), dict(n=0.6, b=-1), dict(n=0.75, b=-1)],
    FamilyId.RATCN5: [dict(n=0.5, b=-1), dict(n=0.6, b=-1), dict(n=0.75, b=-1)],
    FamilyId.RATCN6: [dict(n=2.0), dict(n=1.5), dict(n=2.5)],
}


def profile_eval(profile):
    """Total evaluation callable (zero outside support) for a profile."""
    return partial(catalog.evaluate, profile)


def strong_residual_scaled(profile, points=None, h=1e-5):
    """Max pointwise residual of -gU + aU**m + b(U**n)'' on interior
    points, scaled by a*U(0)**m.

    The second derivative is a 5-point central difference evaluated in
    extended precision, so the step can be small enough to expose any
    real defect without drowning it in rounding noise.
    """
    pr = profile.params
    if points is None:
        points = np.linspace(-0.85, 0.85, 41) * profile.L
    xs = np.asarray(points, dtype=np.longdouble)
    hh = np.longdouble(h) * max(1.0, profile.L)

    def W(x):
        return catalog.evaluate(profile, x) ** np.longdouble(pr.n)

    w2 = (-W(xs + 2 * hh) + 16 * W(xs + hh) - 30 * W(xs)
          + 16 * W(xs - hh) - W(xs - 2 * hh)) / (12 * hh * hh)
    U = catalog.evaluate(profile, xs)
    res = (-np.longdouble(profile.g) * U + np.longdouble(pr.a) * U ** np.longdouble(pr.m)
           + np.longdouble(pr.b) * w2)
    scale = abs(pr.a) * float(catalog.evaluate(profile, 0.0)) ** pr.m
    return float(np.max(np.abs(res))) / scale
