"""Shared helpers for the test suite: relative-error metrics, seeded
sampling, and independently coded closed-form oracles."""

from __future__ import annotations

import random

import qsympoly as qp


def rel(u, v, floor=1e-300):
    """Plain relative deviation."""
    return abs(u - v) / max(abs(u), abs(v), floor)


def rel_scaled(u, v, scale):
    """Relative deviation with a magnitude floor (meaningful near zeros)."""
    return abs(u - v) / max(abs(u), abs(v), scale)


def rng(seed=20240809):
    return random.Random(seed)


def named_families(ctx):
    return {
        "ultraspherical(0.4,0.7)": qp.make_ultraspherical(0.4, 0.7, ctx),
        "chebyshev5": qp.make_chebyshev5(ctx),
        "chebyshev6": qp.make_chebyshev6(ctx),
        "hermite(0)": qp.make_hermite(0.0, ctx),
        "hermite(0.3)": qp.make_hermite(0.3, ctx),
    }


def family_builders():
    return {
        "ultraspherical(0.4,0.7)": lambda ctx: qp.make_ultraspherical(0.4, 0.7, ctx),
        "chebyshev5": qp.make_chebyshev5,
        "chebyshev6": qp.make_chebyshev6,
        "hermite(0)": lambda ctx: qp.make_hermite(0.0, ctx),
        "hermite(0.3)": lambda ctx: qp.make_hermite(0.3, ctx),
    }


def random_char_vectors(count, q_ctx, n_check=21, seed=20240809):
    """Seeded CharVectors, rejecting resonant and degenerate draws."""
    r = rng(seed)
    out = []
    while len(out) < count:
        a, b, c, d = (r.uniform(-2, 2) for _ in range(4))
        if abs(a) + abs(c) < 0.1:
            continue
        try:
            V = qp.CharVector(a, b, c, d)
            for n in range(n_check + 1):
                qp.delta(n, V, q_ctx)
            for n in range(1, n_check):
                qp.recurrence_C(n, V, q_ctx)
        except qp.QSymPolyError:
            continue
        out.append(V)
    return out


# ---------------------------------------------------------------------------
# independently coded oracles (kept free of the library's internal helpers)


def oracle_qnum(z, q):
    return (q**z - 1) / (q - 1)


def oracle_qpoch(x, base, k):
    prod = 1.0
    for j in range(k):
        prod *= 1 - x * base**j
    return prod


def oracle_qpoch_inf(x, base, terms=400):
    prod = 1.0
    for j in range(terms):
        prod *= 1 - x * base**j
    return prod


def oracle_C_even_ultraspherical(m, alpha, beta, q):
    """The tabulated even-index recurrence coefficient of the
    q-ultraspherical family, coded directly from its display."""
    th = alpha + beta + 1
    T = q * (q * q - 1) * th + 1
    num = q ** (2 * m + 2) * (q ** (2 * m) - 1) * (
        q ** (2 * m) * T + q * q * (alpha * (q - q**3) - 1)
    )
    den = -(q * q + 1) * q ** (4 * m + 2) * T + q ** (8 * m + 1) * T * T + q**5
    return num / den


def oracle_C_odd_ultraspherical(m, alpha, beta, q):
    th = alpha + beta + 1
    T = q * (q * q - 1) * th + 1
    U = alpha * q * (q * q - 1) + 1
    num = q ** (2 * m) * (
        q ** (2 * m) * (-(alpha * q**5 + (beta + 1) * q**3 + q * q - q * th + 1))
        + U * q ** (4 * m + 1) * T
        + q
    )
    den = -(q * q + 1) * q ** (4 * m) * T + q ** (8 * m + 1) * T * T + q
    return num / den


def oracle_C_even_hermite(m, p, q):
    return -(p * (q * q - 1) - 1) * q ** (2 * m - 1) * (q ** (2 * m) - 1) / (q * q - 1)


def oracle_C_odd_hermite(m, p, q):
    return ((-p * q * q + p + 1) * q ** (4 * m + 1) - q ** (2 * m)) / (q * q - 1)
