"""Resultants, discriminants, gcds and squarefree decomposition over the rationals."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping

from .mpoly import MPoly, sort_vars


# -- univariate views over a coefficient ring --------------------------------

def _as_dense(f: MPoly, var: str) -> list[MPoly]:
    """Coefficient list (lowest degree first) of ``f`` viewed in ``var``."""
    coeffs = f.coeffs_in(var)
    rest = tuple(v for v in f.vars if v != var)
    if not coeffs:
        return []
    out = [MPoly._raw({}, rest) for _ in range(max(coeffs) + 1)]
    for k, c in coeffs.items():
        out[k] = c
    return out


def _from_dense(coeffs: list[MPoly], var: str) -> MPoly:
    x = MPoly.var(var)
    result = MPoly.const(0, (var,))
    power = MPoly.const(1, (var,))
    for c in coeffs:
        if c:
            result = result + c * power
        power = power * x
    return result


def _trim(p: list[MPoly]) -> list[MPoly]:
    while p and p[-1].is_zero():
        p.pop()
    return p


def _prem(a: list[MPoly], b: list[MPoly]) -> list[MPoly]:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        la = a[-1]
        shift = da - db
        a = [c * lb for c in a]
        for i, bc in enumerate(b):
            if bc:
                a[i + shift] = a[i + shift] - la * bc
        a.pop()
        _trim(a)
        e -= 1
    if e > 0:
        f = lb ** e
        a = [c * f for c in a]
    return a


def resultant(f: MPoly, g: MPoly, var: str) -> MPoly:
    """Resultant of ``f`` and ``g`` with respect to ``var`` (subresultant PRS)."""
    f, g = f._align(g)
    if var not in f.vars:
        f = f.with_vars(f.vars + (var,))
        g = g.with_vars(g.vars + (var,))
    rest = tuple(v for v in f.vars if v != var)
    A = _trim(_as_dense(f, var))
    B = _trim(_as_dense(g, var))
    zero = MPoly._raw({}, rest)
    if not A or not B:
        return zero
    s = 1
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) % 2 == 1 and (len(B) - 1) % 2 == 1:
            s = -s
    if len(B) == 1:
        return B[0] ** (len(A) - 1) * s
    g_ = MPoly.const(1, rest)
    h = MPoly.const(1, rest)
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        R = _prem(A, B)
        if not R:
            return zero
        A = B
        denom = g_ * h ** delta
        B = [c.exact_div(denom) for c in R]
        g_ = A[-1]
        if delta >= 1:
            h = (g_ ** delta).exact_div(h ** (delta - 1))
        if len(B) == 1:
            da = len(A) - 1
            h = (B[0] ** da).exact_div(h ** (da - 1)) if da >= 1 else h
            return h * s


def discriminant_z(f: MPoly, var: str = "z", normalize: bool = True):
    """Discriminant of ``f`` in ``var``.

    Returns ``(delta, unit)`` with ``raw = unit * delta`` where ``raw`` is
    ``(-1)^(n(n-1)/2) Res(f, f') / lc(f)``.  With ``normalize`` the returned
    ``delta`` is the primitive integer form with positive lex-leading
    coefficient; otherwise ``delta = raw`` and ``unit = 1``.
    """
    n = f.degree(var)
    if n <= 0:
        raise ValueError(f"polynomial is constant in {var}")
    coeffs = f.coeffs_in(var)
    lc = coeffs[n]
    res = resultant(f, f.diff(var), var)
    raw = res.exact_div(lc)
    if (n * (n - 1) // 2) % 2:
        raw = -raw
    raw = raw.trim()
    if not normalize or raw.is_zero():
        return raw, Fraction(1)
    prim = raw.primitive()
    unit = raw.leading_coefficient() / prim.leading_coefficient()
    return prim, unit


def initial_form(f: MPoly) -> MPoly:
    """Lowest-degree homogeneous component of ``f``."""
    if f.is_zero():
        raise ValueError("initial form of the zero polynomial")
    return f.homogeneous_part(f.order())


def substitute(f: MPoly, mapping: Mapping[str, MPoly]) -> MPoly:
    """Compose ``f`` with ``mapping`` (every variable of ``f`` must be mapped)."""
    used = f.used_vars()
    missing = [v for v in used if v not in mapping]
    if missing:
        raise KeyError(f"no image given for {missing}")
    images = {v: (mapping[v] if isinstance(mapping[v], MPoly) else MPoly.const(mapping[v]))
              for v in used}
    target_vars = sort_vars(v for img in images.values() for v in img.vars)
    images = {v: img.with_vars(target_vars) for v, img in images.items()}
    cache: dict[tuple[str, int], MPoly] = {}

    def pw(v: str, k: int) -> MPoly:
        key = (v, k)
        if key not in cache:
            if k == 1:
                cache[key] = images[v]
            else:
                half = pw(v, k // 2)
                sq = half * half
                cache[key] = sq * images[v] if k % 2 else sq
        return cache[key]

    idx = [f.vars.index(v) for v in used]
    total = MPoly.const(0, target_vars)
    for e, c in f.terms.items():
        term = MPoly.const(c, target_vars)
        for v, i in zip(used, idx):
            if e[i]:
                term = term * pw(v, e[i])
        total = total + term
    return total


# -- gcd ---------------------------------------------------------------------

def _main_var(f: MPoly, g: MPoly) -> str | None:
    used = sort_vars(f.used_vars() + g.used_vars())
    return used[0] if used else None


def _dense_content(p: list[MPoly]) -> MPoly:
    c = MPoly.const(0)
    for coeff in p:
        if coeff:
            c = gcd(c, coeff)
            if c.is_constant():
                return MPoly.const(1)
    return c


def _content_in(f: MPoly, var: str) -> MPoly:
    return _dense_content(list(f.coeffs_in(var).values()))


def _dense_primitive(p: list[MPoly]) -> list[MPoly]:
    """Divide out the polynomial content and the rational content."""
    c = _dense_content(p)
    if not c.is_constant():
        p = [q.exact_div(c) if q else q for q in p]
    num, den = 0, 1
    for q in p:
        if q:
            k = q.content()
            num = math.gcd(num, k.numerator)
            den = math.lcm(den, k.denominator)
    if num and (num != 1 or den != 1):
        scale = Fraction(den, num)
        p = [q * scale for q in p]
    return p


def gcd(f: MPoly, g: MPoly) -> MPoly:
    """Greatest common divisor, primitive with positive lex-leading coefficient.

    ``gcd(0, 0) = 0``; a nonzero constant gcd is returned as ``1``.
    """
    if f.is_zero():
        return g.trim().primitive()
    if g.is_zero():
        return f.trim().primitive()
    if f.is_constant() or g.is_constant():
        return MPoly.const(1)
    f, g = f.trim(), g.trim()
    var = _main_var(f, g)
    if f.degree(var) == 0:
        return gcd(f, _content_in(g, var))
    if g.degree(var) == 0:
        return gcd(_content_in(f, var), g)
    f, g = f._align(g)
    cf, cg = _content_in(f, var), _content_in(g, var)
    c = gcd(cf, cg)
    A = _dense_primitive(_trim(_as_dense(f, var)))
    B = _dense_primitive(_trim(_as_dense(g, var)))
    if len(A) < len(B):
        A, B = B, A
    while True:
        R = _trim(_prem(A, B))
        if not R:
            break
        if len(R) == 1:
            B = [MPoly.const(1, R[0].vars)]
            break
        A, B = B, _dense_primitive(R)
    p = _from_dense(B, var) if len(B) > 1 else MPoly.const(1)
    return (p * c).trim().primitive()


def squarefree_decomposition(f: MPoly, var: str) -> list[tuple[MPoly, int]]:
    """Yun decomposition of ``f`` in ``var`` over the field of the other variables.

    Returns ``[(a_i, i), ...]`` with each ``a_i`` squarefree of positive
    degree in ``var``, pairwise coprime, and ``f`` equal to ``prod a_i^i`` up
    to a factor free of ``var``.
    """
    if f.is_zero():
        raise ValueError("squarefree decomposition of zero")
    f = f.trim()
    if f.degree(var) <= 0:
        return []
    c = _content_in(f, var)
    if not c.is_constant():
        f = f.exact_div(c)
    df = f.diff(var)
    a0 = gcd(f, df)
    b = f.exact_div(a0)
    cc = df.exact_div(a0)
    d = cc - b.diff(var)
    out = []
    i = 1
    while b.degree(var) > 0:
        a = gcd(b, d)
        if a.degree(var) > 0:
            out.append((a, i))
        b = b.exact_div(a)
        cc = d.exact_div(a)
        d = cc - b.diff(var)
        i += 1
    return out


def squarefree_part(f: MPoly, var: str):
    """Return ``(squarefree, profile)``.

    ``squarefree`` is the product of the Yun factors (primitive), ``profile``
    lists one multiplicity per Yun factor in decreasing order.
    """
    parts = squarefree_decomposition(f, var)
    if not parts:
        return f.trim().primitive() if not f.is_constant() else MPoly.const(1), []
    sq = MPoly.const(1)
    for a, _ in parts:
        sq = sq * a
    return sq.trim().primitive(), sorted((k for _, k in parts), reverse=True)
