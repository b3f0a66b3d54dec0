"""Certified numerical roots of univariate complex polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath


@dataclass(frozen=True)
class ComplexBox:
    """A disc ``|z - (re + i*im)| <= radius`` known to contain ``multiplicity`` roots."""

    re: float
    im: float
    radius: float
    multiplicity: int = 1

    def __post_init__(self):
        if not (self.radius >= 0) or self.radius == float("inf"):
            raise ValueError("radius must be finite and non-negative")

    @property
    def center(self) -> complex:
        return complex(self.re, self.im)

    def contains(self, z: complex, slack: float = 0.0) -> bool:
        return abs(complex(z) - self.center) <= self.radius + slack

    def overlaps(self, other: "ComplexBox") -> bool:
        return abs(self.center - other.center) <= self.radius + other.radius

    def to_str(self) -> str:
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re:.12g}{sign}{abs(self.im):.12g}i (±{self.radius:.3g})"


class DegenerateLeadingCoefficient(ValueError):
    pass


def _to_mpc(c):
    if isinstance(c, Fraction):
        return mpmath.mpf(c.numerator) / c.denominator
    return mpmath.mpc(c)


def _inclusion_radius(coeffs_hi: list, r, d: int):
    """Radius of a disc around ``r`` guaranteed to contain a root.

    Uses min(d |p/p'|, (|p| / |a_d|)^(1/d)) with |p| inflated by a bound on
    the rounding error of Horner evaluation.
    """
    p = mpmath.mpc(0)
    dp = mpmath.mpc(0)
    mag = mpmath.mpf(0)
    absr = abs(r)
    for c in coeffs_hi:
        dp = dp * r + p
        p = p * r + c
        mag = mag * absr + abs(c)
    eps = mpmath.mpf(2) ** (-mpmath.mp.prec + 4)
    err = (2 * d + 2) * eps * mag
    pa = abs(p) + err
    lead = abs(coeffs_hi[0])
    bound = (pa / lead) ** (mpmath.mpf(1) / d)
    if abs(dp) > err * d * 4:
        bound = min(bound, d * pa / (abs(dp) - err * d))
    return bound


def _clusters(boxes: list[tuple]) -> list[list[int]]:
    """Connected components of the overlap graph of (center, radius) discs."""
    n = len(boxes)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(boxes[i][0] - boxes[j][0]) <= boxes[i][1] + boxes[j][1]:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def univariate_roots(coeffs: Sequence, digits: int = 30, max_digits: int = 240,
                     lead_tol: float = 1e-300) -> list[ComplexBox]:
    """All roots, with multiplicity, of ``sum coeffs[k] z^k``.

    Roots are computed with mpmath's Durand-Kerner solver.  Each root gets
    an inclusion radius (see :func:`_inclusion_radius`).  When discs overlap
    the working precision is doubled; at ``max_digits`` overlapping discs are
    merged into one cluster box whose multiplicity is the number of roots in
    it.  Boxes are returned sorted by (re, im).
    """
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    d = len(coeffs) - 1
    if d < 1:
        raise ValueError("polynomial has degree < 1")
    if abs(complex(coeffs[-1])) <= lead_tol:
        raise DegenerateLeadingCoefficient("leading coefficient is numerically zero")
    # zero roots are exact
    nz = 0
    while coeffs[nz] == 0:
        nz += 1
    core = coeffs[nz:]
    dd = d - nz
    out: list[ComplexBox] = []
    if nz:
        out.append(ComplexBox(0.0, 0.0, 0.0, nz))
    if dd:
        out.extend(_certified_core(core, dd, digits, max_digits))
    return sorted(out, key=lambda b: (b.re, b.im))


def _certified_core(core: list, d: int, digits: int, max_digits: int) -> list[ComplexBox]:
    dps = digits
    while True:
        with mpmath.workdps(dps):
            hi = [_to_mpc(c) for c in reversed(core)]
            try:
                rts = mpmath.polyroots(hi, maxsteps=400, extraprec=2 * dps, error=False)
            except mpmath.libmp.NoConvergence:
                rts = None
            if rts is not None:
                if d == 1:
                    rts = [rts] if not isinstance(rts, list) else rts
                rts = [mpmath.mpc(r) for r in rts]
                rad = [_inclusion_radius(hi, r, d) for r in rts]
                discs = [(complex(r), float(rr)) for r, rr in zip(rts, rad)]
                groups = _clusters(discs)
                if all(len(g) == 1 for g in groups):
                    return [ComplexBox(float(r.real), float(r.imag), float(rr) * (1 + 1e-12) + 1e-300)
                            for r, rr in zip(rts, rad)]
        if dps * 2 > max_digits:
            break
        dps *= 2
    # cluster report at the precision cap
    if rts is None:
        import numpy as np
        with mpmath.workdps(dps):
            hi = [_to_mpc(c) for c in reversed(core)]
            approx = np.roots([complex(c) for c in hi])
            rts = [mpmath.mpc(complex(r)) for r in approx]
            rad = [_inclusion_radius(hi, r, d) for r in rts]
        discs = [(complex(r), float(rr)) for r, rr in zip(rts, rad)]
        groups = _clusters(discs)
    boxes = []
    for g in groups:
        cen = sum(discs[i][0] for i in g) / len(g)
        rad_ = max(abs(discs[i][0] - cen) + discs[i][1] for i in g)
        boxes.append(ComplexBox(cen.real, cen.imag, rad_, len(g)))
    return boxes


def _upoly_eval(coeffs: list, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _upoly_div_linear(coeffs: list, r: Fraction) -> list:
    """Quotient of ``coeffs`` (lowest first) by ``(z - r)``; exact."""
    n = len(coeffs) - 1
    out = [Fraction(0)] * n
    acc = Fraction(0)
    for k in range(n, 0, -1):
        acc = acc * r + coeffs[k]
        out[k - 1] = acc
    return out


def split_rational_roots(coeffs: Sequence[Fraction], digits: int = 40):
    """Rational roots with multiplicity, and the exact cofactor without them.

    Candidates come from high-precision numeric roots rationalized by
    continued fractions; each is confirmed by exact evaluation.
    """
    rest = [Fraction(c) for c in coeffs]
    while rest and rest[-1] == 0:
        rest.pop()
    found: dict[Fraction, int] = {}
    while len(rest) > 1:
        if rest[0] == 0:
            found[Fraction(0)] = found.get(Fraction(0), 0) + 1
            rest = rest[1:]
            continue
        hit = None
        for box in univariate_roots(rest, digits=digits):
            if abs(box.im) > 1e-20 * max(1.0, abs(box.re)):
                continue
            guess = Fraction(repr(box.re)).limit_denominator(10 ** 9)
            for cand in (guess, Fraction(round(box.re))):
                if _upoly_eval(rest, cand) == 0:
                    hit = cand
                    break
            if hit is not None:
                break
        if hit is None:
            break
        found[hit] = found.get(hit, 0) + 1
        rest = _upoly_div_linear(rest, hit)
    return sorted(found.items()), rest


def _newton_polish(cs_hi: list, z, dps: int, iters: int = 200):
    eps = mpmath.mpf(10) ** (-dps)
    for _ in range(iters):
        p = mpmath.mpc(0)
        dp = mpmath.mpc(0)
        for c in cs_hi:
            dp = dp * z + p
            p = p * z + c
        if dp == 0:
            return z, False
        step = p / dp
        z -= step
        if abs(step) <= eps * max(1, abs(z)):
            return z, True
    return z, False


def polished_roots(coeffs: Sequence[Fraction], dps: int = 60) -> list[tuple[mpmath.mpc, int]]:
    """Roots with multiplicity of a rational polynomial (lowest degree first).

    Multiple roots are separated exactly by a squarefree decomposition; each
    squarefree factor is seeded with numpy and polished by Newton steps in
    mpmath at ``dps`` digits.
    """
    import numpy as np
    from .algebra import squarefree_decomposition
    from .mpoly import MPoly

    f = MPoly.from_univariate([Fraction(c) for c in coeffs], "w")
    out = []
    with mpmath.workdps(dps + 10):
        for g, k in squarefree_decomposition(f, "w"):
            if not g.used_vars():
                continue
            cs = g.univariate_coeffs("w")
            big = max(abs(c) for c in cs)
            hi = [mpmath.mpf(c.numerator) / c.denominator / (mpmath.mpf(big.numerator) / big.denominator)
                  for c in reversed(cs)]
            seeds = np.roots([float(c) for c in hi]) if float(hi[0]) != 0 else []
            roots = []
            ok = len(seeds) == len(cs) - 1
            for s in seeds if ok else []:
                r, conv = _newton_polish(hi, mpmath.mpc(complex(s)), dps)
                if not conv:
                    ok = False
                    break
                roots.append(r)
            if ok:
                sep = min((abs(a - b) for i, a in enumerate(roots) for b in roots[i + 1:]), default=1)
                ok = sep > mpmath.mpf(10) ** (-dps // 2)
            if not ok:
                roots = list(mpmath.polyroots(hi, maxsteps=2000, extraprec=4 * dps))
            out += [(r, k) for r in roots]
    return out
