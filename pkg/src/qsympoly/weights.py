"""Orthogonality weights from the Pearson q-difference equation.

W solves D_q(A W) = B W with A = x^2 (a x^2 + b), B = x (c x^2 + d),
equivalently the first-order ratio relation

    W(qx)/W(x) = (x^2 (a + c(q-1)) + b + d(q-1)) / (q^2 (a q^2 x^2 + b)).

The evaluable object of interest is W*(x) = x^2 W(x): the x^2 factor
cancels the 1/x^2 pole of the raw solution analytically, so W* extends
continuously to x = 0.  Solutions of the ratio relation are unique only
up to a q-periodic factor; it is fixed to 1 here, which is harmless
because Jackson integration samples a single geometric orbit on which
any such factor is constant and drops out of normalized quantities.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidBaseError, ZeroDenominatorError
from .qcore import QContext, exp_, isfinite_, log_, q_shifted_factorial_inf
from .sympoly import RESONANCE_GUARD, CharVector

__all__ = [
    "WeightSpec",
    "WeightGridReport",
    "BoundaryReport",
    "pearson_ratio",
    "weight_general",
    "weight_star",
    "weight_grid_report",
    "boundary_vanishing_check",
]


def pearson_ratio(V: CharVector, ctx: QContext, x):
    """The Pearson ratio W(qx)/W(x) in closed form."""
    q = ctx.q
    t1 = V.a * q * q * x * x
    den = t1 + V.b
    scale = max(abs(t1), abs(V.b))
    if scale == 0 or abs(den) <= RESONANCE_GUARD * scale:
        raise ZeroDenominatorError("Pearson ratio pole: a q^2 x^2 = -b")
    num = x * x * (V.a + V.c * (q - 1)) + V.b + V.d * (q - 1)
    return num / (q * q * den)


def _power_base(V: CharVector, q):
    base = 1 + V.d * (q - 1) / V.b
    if base <= 0:
        raise InvalidBaseError(
            f"power base 1 + d(q-1)/b = {base!r} must be positive"
        )
    return base


def _weight_products(V: CharVector, ctx: QContext, x):
    q = ctx.q
    top = q_shifted_factorial_inf(-V.a * q * q * x * x / V.b, ctx, base=q * q)
    bden = V.b + V.d * (q - 1)
    bot = q_shifted_factorial_inf(
        -(V.a + V.c * (q - 1)) * x * x / bden, ctx, base=q * q
    )
    if bot == 0:
        raise ZeroDenominatorError("weight denominator product vanishes")
    return top, bot


def weight_general(V: CharVector, ctx: QContext, x):
    """The raw Pearson solution W(x), for a, b nonzero and x != 0:

        (1 + d(q-1)/b)^(log x^2 / (2 log q))
            * (-a q^2 x^2 / b; q^2)_inf
            / (x^2 (-(a + c(q-1)) x^2 / (b + d(q-1)); q^2)_inf).

    The real power is evaluated in log space; a nonpositive base raises
    InvalidBaseError rather than continuing into complex values.
    """
    if V.a == 0 or V.b == 0:
        raise ValueError("the closed-form weight needs a != 0 and b != 0")
    if x == 0:
        raise ValueError("W has a 1/x^2 singularity at x = 0; use weight_star")
    q = ctx.q
    base = _power_base(V, q)
    power = exp_(log_(base) * log_(x * x) / (2 * log_(q)))
    top, bot = _weight_products(V, ctx, x)
    return power * top / (x * x * bot)


def weight_star(V: CharVector, ctx: QContext, x):
    """W*(x) = x^2 W(x) with the x^2 cancelled analytically.

    Finite for all x in the support; at x = 0 the continuous extension is
    returned (1 when d = 0, else 0 or +inf depending on whether the power
    base lies below or above 1).
    """
    if V.a == 0 or V.b == 0:
        raise ValueError("the closed-form weight needs a != 0 and b != 0")
    q = ctx.q
    base = _power_base(V, q)
    if x == 0:
        if base == 1:
            return 1.0
        return 0.0 if base < 1 else float("inf")
    if base == 1:
        power = 1
    else:
        power = exp_(log_(base) * log_(x * x) / (2 * log_(q)))
    top, bot = _weight_products(V, ctx, x)
    return power * top / bot


@dataclass(frozen=True)
class WeightSpec:
    """An evaluable even weight W* with its support endpoint.

    The endpoint is the positive root of a x^2 + b = 0 for the named
    families, which is exactly where A(x) W(x) has to vanish for the
    orthogonality argument to close.
    """

    V: CharVector
    support: float
    ctx: QContext

    def star(self, x):
        return weight_star(self.V, self.ctx, x)

    def general(self, x):
        return weight_general(self.V, self.ctx, x)

    def pearson_lhs(self, x):
        """W(qx)/W(x) from two independent weight evaluations."""
        return self.general(self.ctx.q * x) / self.general(x)

    def pearson_rhs(self, x):
        return pearson_ratio(self.V, self.ctx, x)


@dataclass(frozen=True)
class WeightGridReport:
    positive: bool
    even_exact: bool
    min_value: float
    max_value: float
    first_bad_index: int | None


def weight_grid_report(spec: WeightSpec, n_terms: int = 256) -> WeightGridReport:
    """Evenness and positivity of W* on the geometric grid +-alpha q^j."""
    q = spec.ctx.q
    positive = True
    even = True
    vmin, vmax = None, None
    bad = None
    for j in range(n_terms + 1):
        x = spec.support * q**j
        w = spec.star(x)
        if spec.star(-x) != w:
            even = False
            bad = bad if bad is not None else j
        if not (isfinite_(w) and w > 0):
            positive = False
            bad = bad if bad is not None else j
            continue
        vmin = w if vmin is None else min(vmin, w)
        vmax = w if vmax is None else max(vmax, w)
    return WeightGridReport(positive, even, vmin, vmax, bad)


@dataclass(frozen=True)
class BoundaryReport:
    ok: bool
    boundary_value: float
    interior_max: float
    ratio: float
    tolerance: float


def boundary_vanishing_check(
    spec: WeightSpec, ctx: QContext, n_grid: int = 128, tol: float | None = None
) -> BoundaryReport:
    """Check that A(x) W(x) = (a x^2 + b) W*(x) vanishes at the endpoint.

    The endpoint value is compared against the maximum of |(a x^2 + b) W*|
    over the interior grid alpha q^j, j = 1 .. n_grid; report-only, the
    boolean is |boundary| <= tol * interior_max.
    """
    if tol is None:
        tol = ctx.tol_check
    V = spec.V
    alpha = spec.support
    q = ctx.q
    boundary = (V.a * alpha * alpha + V.b) * spec.star(alpha)
    interior = 0.0
    for j in range(1, n_grid + 1):
        x = alpha * q**j
        interior = max(interior, abs((V.a * x * x + V.b) * spec.star(x)))
    ratio = abs(boundary) / interior if interior > 0 else float("inf")
    return BoundaryReport(ratio <= tol, boundary, interior, ratio, tol)
