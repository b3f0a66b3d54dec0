"""Sparse polynomials with complex floating coefficients.

A numeric polynomial is a dict from exponent tuples to complex numbers.
These serve loops and frames whose base points are irrational.
"""

from __future__ import annotations

from .mpoly import MPoly

NPoly = dict


def npoly_mul(a: NPoly, b: NPoly) -> NPoly:
    out: NPoly = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(i + j for i, j in zip(e1, e2))
            out[e] = out.get(e, 0j) + c1 * c2
    return out


def npoly_add(a: NPoly, b: NPoly) -> NPoly:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0j) + c
    return out


def npoly_const(c: complex, nvars: int) -> NPoly:
    return {(0,) * nvars: complex(c)}


def npoly_from_mpoly(f: MPoly, order: tuple[str, ...]) -> NPoly:
    g = f.with_vars(order) if f.vars != tuple(order) else f
    idx = [g.vars.index(v) for v in order]
    return {tuple(e[i] for i in idx): complex(c) for e, c in g.terms.items()}


def compose(f: MPoly, images: dict[str, NPoly], nvars: int) -> NPoly:
    """Numeric ``f`` with each variable replaced by a numeric polynomial."""
    used = f.used_vars()
    cache: dict[tuple[str, int], NPoly] = {}

    def pw(v: str, k: int) -> NPoly:
        if k == 0:
            return npoly_const(1, nvars)
        key = (v, k)
        if key not in cache:
            cache[key] = npoly_mul(pw(v, k - 1), images[v])
        return cache[key]

    idx = [f.vars.index(v) for v in used]
    out: NPoly = {}
    for e, c in f.terms.items():
        term = npoly_const(complex(c), nvars)
        for v, i in zip(used, idx):
            if e[i]:
                term = npoly_mul(term, pw(v, e[i]))
        out = npoly_add(out, term)
    return out


def npoly_eval(p: NPoly, point) -> complex:
    acc = 0j
    for e, c in p.items():
        t = c
        for x, k in zip(point, e):
            if k:
                t *= x ** k
        acc += t
    return acc


def linear_image(const: complex, coeffs: tuple, nvars: int) -> NPoly:
    """``const + sum coeffs[i] * s_i``."""
    out = {(0,) * nvars: complex(const)}
    for i, c in enumerate(coeffs):
        if c:
            e = [0] * nvars
            e[i] = 1
            out[tuple(e)] = complex(c)
    return out
