"""The symmetric four-parameter polynomial engine.

A characteristic vector (a, b, c, d) fixes one member of the symmetric
family through the second-order q-difference equation

    x^2 (a x^2 + b) D_q D_{1/q} phi + x (c x^2 + d) D_q phi
        + (lambda_n x^2 - sigma_n d) phi = 0.

This module provides the eigenvalues, the x^(n-2) coefficient delta_n of
the monic solution, the three-term recurrence coefficient C_n (general
and parity-specialized closed forms), polynomial construction by the
recurrence, the explicit sum and terminating 2phi1 representations, the
monic normalization factor, exact q-difference-equation residuals, and
the positive/quasi-definite classification.

Recurrence denominators can vanish on a q-geometric set of parameters;
that resonance is detected (denominator below 1e-13 times its largest
additive term) and reported via ResonanceError, never regularized.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import ResonanceError, ZeroDenominatorError
from .qcore import (
    HypSeriesSpec,
    QContext,
    basic_hypergeometric,
    q_binomial,
    q_number,
    q_shifted_factorial,
    sigma_parity,
)

__all__ = [
    "CharVector",
    "SymPolynomial",
    "OrthogonalityClassification",
    "eigenvalue",
    "delta",
    "recurrence_C",
    "recurrence_C_even",
    "recurrence_C_odd",
    "monic_ladder",
    "build_monic",
    "eval_explicit",
    "explicit_leading_coeff",
    "eval_explicit_monic",
    "hypergeometric_parameters",
    "eval_hypergeometric",
    "monic_factor",
    "ode_residual",
    "ode_residual_terms",
    "classify_orthogonality",
]

# |denominator| below this multiple of its largest additive term counts as vanishing
RESONANCE_GUARD = 1e-13


@dataclass(frozen=True)
class CharVector:
    """The four free parameters (a, b, c, d) of one symmetric family."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        if self.a == 0 and self.c == 0:
            raise ValueError("degenerate parameters: a and c must not both vanish")

    def as_tuple(self) -> tuple:
        return (self.a, self.b, self.c, self.d)


def _a_eff(V: CharVector, q):
    # a + c(q-1): the combination controlling every recurrence denominator
    return V.a + V.c * (q - 1)


@dataclass(frozen=True)
class SymPolynomial:
    """A monic symmetric polynomial, stored by monomial coefficients.

    Coefficients at indices of parity opposite to the degree are exactly
    zero, so evaluation runs as a Horner scheme in x**2 with an x**parity
    prefactor; phi(-x) == (-1)**degree phi(x) then holds bit for bit.
    """

    degree: int
    coeffs: tuple
    parity: int

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("coefficient count must be degree + 1")
        if self.parity != self.degree % 2:
            raise ValueError("parity must equal degree mod 2")
        for k, ck in enumerate(self.coeffs):
            if (k - self.parity) % 2 and ck != 0:
                raise ValueError(f"nonzero coefficient at opposite-parity power {k}")
        if self.coeffs[-1] != 1:
            raise ValueError("monic polynomial must have leading coefficient 1")

    def __call__(self, x):
        t = x * x
        acc = self.coeffs[self.degree]
        for k in range(self.degree - 2, self.parity - 1, -2):
            acc = acc * t + self.coeffs[k]
        return acc * x**self.parity

    def magnitude(self, x):
        """Sum of |c_k| |x|**k, the natural scale of an evaluation at x."""
        ax = abs(x)
        t = ax * ax
        acc = abs(self.coeffs[self.degree])
        for k in range(self.degree - 2, self.parity - 1, -2):
            acc = acc * t + abs(self.coeffs[k])
        return acc * ax**self.parity


def eigenvalue(n: int, V: CharVector, ctx: QContext):
    """Eigenvalue lambda_n = -[n]_q (c - [1-n]_q a)."""
    if V.a == 0 and V.c == 0:
        raise ValueError("eigenvalue undefined when a = c = 0")
    return -q_number(n, ctx) * (V.c - q_number(1 - n, ctx) * V.a)


def delta(n: int, V: CharVector, ctx: QContext):
    """Coefficient of x**(n-2) in the monic polynomial of degree n.

    Closed rational form obtained by matching the x**n coefficient of the
    q-difference equation.  Raises ResonanceError when the denominator
    (q+1)(a q^3 - q^(2n)(a + c(q-1))) vanishes.
    """
    q = ctx.q
    a, b, c, d = V.as_tuple()
    sn = sigma_parity(n)
    sn1 = sigma_parity(n - 1)
    t1 = a * q**3
    t2 = q ** (2 * n) * _a_eff(V, q)
    scale = max(abs(t1), abs(t2))
    if scale == 0 or abs(t1 - t2) <= RESONANCE_GUARD * scale:
        raise ResonanceError(f"delta denominator vanishes at n={n}")
    num = q**2 * (
        -b * (q - 1) * q * q_number(n - 1, ctx) * q_number(n, ctx)
        - d * q ** (2 * n)
        + d * q**n * (q * sn + sn1)
    )
    return num / ((q + 1) * (t1 - t2))


def _checked_den(parts, what: str):
    den = 0
    scale = 0.0
    for p in parts:
        den = den + p
        scale = max(scale, abs(p))
    if scale == 0 or abs(den) <= RESONANCE_GUARD * scale:
        raise ResonanceError(f"{what} denominator vanishes")
    return den


def recurrence_C(n: int, V: CharVector, ctx: QContext):
    """Three-term recurrence coefficient C_n = delta_n - delta_{n+1}, closed form."""
    q = ctx.q
    a, b, c, d = V.as_tuple()
    ae = _a_eff(V, q)
    sn = sigma_parity(n)
    sn1 = sigma_parity(n - 1)
    den = _checked_den(
        (a * a * q**4, q ** (4 * n) * ae * ae, -a * (q**3 + q) * q ** (2 * n) * ae),
        f"C_{n}",
    )
    num = q ** (n + 1) * (
        q ** (2 * n) * ae * ((d - d * q) * sn - b)
        + q**n * (a * (b * (q * q + 1) + d * (q - 1) * q * q) + b * c * (q - 1))
        - a * q * q * (b + d * (q - 1) * sn1)
    )
    return num / den


def recurrence_C_even(m: int, V: CharVector, ctx: QContext):
    """C_{2m}: the even-index specialization of the recurrence coefficient."""
    q = ctx.q
    a, b, c, d = V.as_tuple()
    ae = _a_eff(V, q)
    den = _checked_den(
        (a * a * q**4, q ** (8 * m) * ae * ae, -a * (q**3 + q) * q ** (4 * m) * ae),
        f"C_{2 * m}",
    )
    num = (
        -q ** (2 * m + 1)
        * q_number(2 * m, ctx)
        * (q - 1)
        * (b * q ** (2 * m) * ae - a * q * q * (b + d * (q - 1)))
    )
    return num / den


def recurrence_C_odd(m: int, V: CharVector, ctx: QContext):
    """C_{2m+1}: the odd-index specialization of the recurrence coefficient."""
    q = ctx.q
    a, b, c, d = V.as_tuple()
    ae = _a_eff(V, q)
    den = _checked_den(
        (a * a * q, q ** (8 * m + 1) * ae * ae, -a * (q * q + 1) * q ** (4 * m) * ae),
        f"C_{2 * m + 1}",
    )
    num = (
        -q ** (2 * m)
        * (q ** (2 * m) * ae - a * q)
        * (q ** (2 * m + 1) * (b + d * (q - 1)) - b)
    )
    return num / den


@lru_cache(maxsize=256)
def monic_ladder(n: int, V: CharVector, ctx: QContext) -> tuple:
    """All monic polynomials phi_0 .. phi_n built by the recurrence
    phi_{k+1} = x phi_k - C_k phi_{k-1}, phi_0 = 1, phi_1 = x."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    out = [SymPolynomial(0, (1,), 0)]
    if n >= 1:
        out.append(SymPolynomial(1, (0, 1), 1))
    prev, cur = [1], [0, 1]
    for k in range(1, n):
        Ck = recurrence_C(k, V, ctx)
        nxt = [0] * (k + 2)
        for i, ci in enumerate(cur):
            nxt[i + 1] = ci
        for i, pi in enumerate(prev):
            if pi != 0:
                nxt[i] = nxt[i] - Ck * pi
        out.append(SymPolynomial(k + 1, tuple(nxt), (k + 1) % 2))
        prev, cur = cur, nxt
    return tuple(out)


def build_monic(n: int, V: CharVector, ctx: QContext) -> SymPolynomial:
    """The monic symmetric polynomial of degree n."""
    return monic_ladder(n, V, ctx)[n]


def _explicit_ratio_products(n: int, V: CharVector, ctx: QContext) -> list:
    """Cumulative products prod[t] = Pi_{j<t} of the explicit-form ratios
    (a [2j+s+n-1] + c q^(2j+s+n-1)) / (b [2j+e+2] + d q^(2j+e+2)),
    with s the parity of n and e = (-1)^(n+1)."""
    q = ctx.q
    a, b, c, d = V.as_tuple()
    s = sigma_parity(n)
    e = 1 if s else -1
    out = [1]
    acc = 1
    for j in range(n // 2):
        i_num = 2 * j + s + n - 1
        i_den = 2 * j + e + 2
        t1 = b * q_number(i_den, ctx)
        t2 = d * q**i_den
        den = t1 + t2
        scale = max(abs(t1), abs(t2))
        if scale == 0 or abs(den) <= RESONANCE_GUARD * scale:
            raise ZeroDenominatorError(
                f"explicit-form denominator b[{i_den}] + d q^{i_den} vanishes"
            )
        acc = acc * (a * q_number(i_num, ctx) + c * q**i_num) / den
        out.append(acc)
    return out


def eval_explicit(n: int, V: CharVector, ctx: QContext, x):
    """The explicit (non-monic) polynomial: the double-product sum

        sum_k q^(k(k-1)) x^(n-2k) [n/2 choose k]_{q^2} prod_j (ratio_j).
    """
    q = ctx.q
    M = n // 2
    s = sigma_parity(n)
    prods = _explicit_ratio_products(n, V, ctx)
    # powers x^(n-2k), built upward from x^s to avoid division
    pws = [None] * (M + 1)
    t = x * x
    p = x**s
    for k in range(M, -1, -1):
        pws[k] = p
        p = p * t
    total = 0
    for k in range(M + 1):
        total = total + (
            q ** (k * (k - 1)) * q_binomial(M, k, ctx, base=q * q) * prods[M - k] * pws[k]
        )
    return total


def explicit_leading_coeff(n: int, V: CharVector, ctx: QContext):
    """Leading coefficient (the full k = 0 ratio product) of eval_explicit."""
    return _explicit_ratio_products(n, V, ctx)[n // 2]


def eval_explicit_monic(n: int, V: CharVector, ctx: QContext, x):
    """eval_explicit normalized by its own leading coefficient.

    Dividing by the leading product keeps this form usable when a or b is
    zero, where the 2phi1 normalization below is unavailable.
    """
    lead = explicit_leading_coeff(n, V, ctx)
    if lead == 0:
        raise ZeroDenominatorError("leading coefficient of the explicit form vanishes")
    return eval_explicit(n, V, ctx, x) / lead


def hypergeometric_parameters(n: int, V: CharVector, ctx: QContext):
    """Parameters ((u1, u2), (l1,), base, z_coeff) of the terminating 2phi1
    representation; the series argument at a point x is z_coeff * x**2.

    Requires a != 0 and b != 0.
    """
    if V.a == 0 or V.b == 0:
        raise ValueError("the 2phi1 form needs a != 0 and b != 0")
    q = ctx.q
    s = sigma_parity(n)
    u1 = q ** (s - n)
    u2 = _a_eff(V, q) * q ** (n + s - 1) / V.a
    l1 = (V.b + V.d * (q - 1)) * q ** (2 * s + 1) / V.b
    return (u1, u2), (l1,), q * q, -V.a * q * q / V.b


def eval_hypergeometric(n: int, V: CharVector, ctx: QContext, x):
    """The polynomial as x**sigma_n times a terminating 2phi1 in x**2."""
    upper, lower, base, zc = hypergeometric_parameters(n, V, ctx)
    spec = HypSeriesSpec(upper, lower, base, zc * x * x)
    return x ** sigma_parity(n) * basic_hypergeometric(spec, ctx)


def monic_factor(n: int, V: CharVector, ctx: QContext):
    """Prefactor turning eval_hypergeometric into the monic polynomial.

    Equal to q^(sigma_n - n) (-b/a)^(n//2) times a ratio of base-q^2
    shifted factorials.  The q^(-(n - sigma_n) sigma_n) factorial pair
    that formally appears in both numerator and denominator for even n is
    cancelled analytically here, removing a 0/0 in the raw display.
    """
    q = ctx.q
    M = n // 2
    upper, lower, base, _ = hypergeometric_parameters(n, V, ctx)
    u2 = upper[1]
    l1 = lower[0]
    num = q_shifted_factorial(base, M, ctx, base=base) * q_shifted_factorial(
        l1, M, ctx, base=base
    )
    den = q_shifted_factorial(q ** (-2 * M), M, ctx, base=base) * q_shifted_factorial(
        u2, M, ctx, base=base
    )
    if den == 0:
        raise ZeroDenominatorError("factorial ratio in the monic prefactor vanishes")
    return (-V.b / V.a) ** M * q ** (-2 * M) * num / den


def _dq_coeffs(coeffs, ctx: QContext) -> tuple:
    # D_q maps x^k to [k]_q x^(k-1)
    return tuple(q_number(k, ctx) * coeffs[k] for k in range(1, len(coeffs)))


def _dqinv_coeffs(coeffs, ctx: QContext) -> tuple:
    # D_{1/q} maps x^k to [k]_{1/q} x^(k-1)
    q = ctx.q
    return tuple(
        (q ** (-k) - 1) / (1 / q - 1) * coeffs[k] for k in range(1, len(coeffs))
    )


def _polyval(coeffs, x):
    acc = 0
    for ck in reversed(coeffs):
        acc = acc * x + ck
    return acc


def ode_residual_terms(n: int, V: CharVector, ctx: QContext, x):
    """The three summands of the q-difference equation at x, for phi_n
    built by the recurrence.  The q-derivatives are applied to the
    coefficient sequence (x^k -> [k] x^(k-1)), not by divided differences,
    so the residual is free of subtractive grid cancellation."""
    poly = build_monic(n, V, ctx)
    lam = eigenvalue(n, V, ctx)
    dq1 = _dq_coeffs(poly.coeffs, ctx)
    ddq = _dq_coeffs(_dqinv_coeffs(poly.coeffs, ctx), ctx)
    x2 = x * x
    t1 = x2 * (V.a * x2 + V.b) * _polyval(ddq, x)
    t2 = x * (V.c * x2 + V.d) * _polyval(dq1, x)
    t3 = (lam * x2 - sigma_parity(n) * V.d) * poly(x)
    return t1, t2, t3


def ode_residual(n: int, V: CharVector, ctx: QContext, x):
    """Residual of the q-difference equation at x; zero up to rounding."""
    t1, t2, t3 = ode_residual_terms(n, V, ctx, x)
    return t1 + t2 + t3


@dataclass(frozen=True)
class OrthogonalityClassification:
    """Sign pattern of C_1 .. C_nmax and the induced orthogonality class."""

    kind: str  # "positive-definite", "quasi-definite" or "weak"
    coefficients: tuple
    negative_indices: tuple
    zero_indices: tuple
    resonant_indices: tuple


def classify_orthogonality(
    V: CharVector, ctx: QContext, n_max: int
) -> OrthogonalityClassification:
    """Scan C_n for n = 1 .. n_max and classify.

    positive-definite: all C_n > 0; quasi-definite: all nonzero but some
    negative; weak: some C_n vanishes (|C_n| <= ctx.tol_check).  Indices
    where the closed form is resonant are reported separately and do not
    enter the sign scan.
    """
    coeffs = []
    neg, zero, reso = [], [], []
    for n in range(1, n_max + 1):
        try:
            cn = recurrence_C(n, V, ctx)
        except ResonanceError:
            reso.append(n)
            coeffs.append(None)
            continue
        coeffs.append(cn)
        if abs(cn) <= ctx.tol_check:
            zero.append(n)
        elif cn < 0:
            neg.append(n)
    if zero:
        kind = "weak"
    elif neg:
        kind = "quasi-definite"
    else:
        kind = "positive-definite"
    return OrthogonalityClassification(
        kind, tuple(coeffs), tuple(neg), tuple(zero), tuple(reso)
    )
