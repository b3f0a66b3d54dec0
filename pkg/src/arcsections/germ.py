"""Plane curve germs: Newton polygons, Puiseux branches and branch counts.

The Puiseux expansions use Duval's rational substitutions

    t = xi^v * tau^q,    z = tau^m * (xi^u + z1),    u*q - v*m = 1,

so a branch is carried as ``t = lam * tau^E`` and ``z = sum a_k tau^k``.  The
arithmetic stays in exact rationals while every characteristic root is
rational and switches to mpmath complex numbers otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .polyarith import MPoly, ComplexBox, squarefree_decomposition

NUMERIC_DPS = 60
_ZERO_REL = mpmath.mpf(10) ** -40
_CLUSTER_REL = 1e-14


class GermError(ValueError):
    pass


class NotZFiniteError(GermError):
    """The germ has no finite Weierstrass degree (it contains the line t = 0)."""


class InsufficientOrderError(GermError):
    def __init__(self, needed: Fraction):
        super().__init__(f"truncation order too low to separate branches; need > {needed}")
        self.needed = needed


# -- germ container -----------------------------------------------------------

@dataclass(frozen=True)
class PlaneCurveGerm:
    """Germ at the origin of ``equation(t, z) = 0``.

    ``weierstrass_degree`` is ``ord_z equation(0, z)``.  With ``reduced`` set
    irreducibility questions ignore multiplicities.
    """

    equation: MPoly
    t: str = "t"
    z: str = "z"
    reduced: bool = False
    weierstrass_degree: int = field(init=False)

    def __post_init__(self):
        eq = self.equation
        extra = set(eq.used_vars()) - {self.t, self.z}
        if extra:
            raise GermError(f"germ equation uses unexpected variables {sorted(extra)}")
        if eq.is_zero():
            raise NotZFiniteError("zero equation")
        eq = eq.with_vars((self.t, self.z))
        object.__setattr__(self, "equation", eq)
        if eq.constant_term() != 0:
            raise GermError("equation does not vanish at the origin")
        at0 = eq.partial_evaluate({self.t: 0})
        if at0.is_zero():
            raise NotZFiniteError("equation vanishes on t = 0")
        object.__setattr__(self, "weierstrass_degree",
                           min(e[0] for e in at0.terms))

    @classmethod
    def from_poly(cls, eq: MPoly, t: str = "t", z: str = "z", reduced: bool = False):
        return cls(eq, t, z, reduced)

    def support(self) -> dict[tuple[int, int], Fraction]:
        """Terms keyed by (z-exponent, t-exponent)."""
        it = self.equation.vars.index(self.t)
        iz = self.equation.vars.index(self.z)
        return {(e[iz], e[it]): c for e, c in self.equation.terms.items()}


# -- Newton polygon -----------------------------------------------------------

@dataclass(frozen=True)
class Segment:
    start: tuple[int, int]
    end: tuple[int, int]
    slope: Fraction
    lattice_length: int
    interior_points: int

    @property
    def exponent(self) -> Fraction:
        """z ~ t^exponent along this edge."""
        return -self.slope


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower-left edges; points are (z-exponent, t-exponent)."""

    vertices: tuple[tuple[int, int], ...]
    segments: tuple[Segment, ...]


def _lower_hull(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    pts = sorted(points)
    hull: list[tuple[int, int]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    # keep only the decreasing part
    out = [hull[0]]
    for p in hull[1:]:
        if p[1] < out[-1][1]:
            out.append(p)
    return out


def _polygon_from_support(supp, d: int) -> NewtonPolygon:
    best: dict[int, int] = {}
    for (i, j) in supp:
        if i <= d:
            best[i] = min(best.get(i, j), j)
    verts = _lower_hull(list(best.items()))
    segs = []
    for a, b in zip(verts, verts[1:]):
        di, dj = b[0] - a[0], a[1] - b[1]
        g = math.gcd(di, dj)
        segs.append(Segment(a, b, Fraction(-dj, di), g, g - 1))
    return NewtonPolygon(tuple(verts), tuple(segs))


def newton_polygon(g: PlaneCurveGerm) -> NewtonPolygon:
    """Lower convex hull of the support, between the t-axis side and (d, 0)."""
    return _polygon_from_support(g.support(), g.weierstrass_degree)


# -- coefficient helpers ------------------------------------------------------

def _is_exact(c) -> bool:
    return isinstance(c, (int, Fraction))


def _to_num(c):
    if isinstance(c, Fraction):
        return mpmath.mpf(c.numerator) / c.denominator
    return mpmath.mpc(c)


def _clean(G: dict, exact: bool) -> dict:
    if exact:
        return {k: v for k, v in G.items() if v != 0}
    scale = max((abs(v) for v in G.values()), default=0)
    if scale == 0:
        return {}
    return {k: v for k, v in G.items() if abs(v) > _ZERO_REL * scale}


def _weierstrass_degree(G: dict) -> int:
    return min((i for (i, j) in G if j == 0), default=-1)


# -- univariate helpers for characteristic polynomials ------------------------

def _upoly_trim(p: list) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _upoly_divmod(a: list, b: list):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lb = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lb
        s = len(a) - len(b)
        q[s] = c
        for i, bc in enumerate(b):
            a[i + s] -= c * bc
        a.pop()
        a = _upoly_trim(a)
    return q, a


def _upoly_gcd(a: list, b: list) -> list:
    a, b = _upoly_trim(a), _upoly_trim(b)
    while b:
        _, r = _upoly_divmod(a, b)
        a, b = b, r
    return [c / a[-1] for c in a]


def _upoly_diff(a: list) -> list:
    return [k * a[k] for k in range(1, len(a))]


def _yun_exact(p: list) -> list[tuple[list, int]]:
    p = _upoly_trim(p)
    if len(p) <= 1:
        return []
    dp = _upoly_diff(p)
    a0 = _upoly_gcd(p, dp)
    b, _ = _upoly_divmod(p, a0)
    c, _ = _upoly_divmod(dp, a0)
    d = [x - y for x, y in _zip_pad(c, _upoly_diff(b))]
    out, i = [], 1
    while len(_upoly_trim(b)) > 1:
        a = _upoly_gcd(b, d) if _upoly_trim(d) else list(b)
        if len(a) > 1:
            out.append((a, i))
        b, _ = _upoly_divmod(b, a)
        c, _ = _upoly_divmod(d, a) if _upoly_trim(d) else ([Fraction(0)], [])
        d = [x - y for x, y in _zip_pad(c, _upoly_diff(b))]
        i += 1
    return out


def _zip_pad(a: list, b: list):
    n = max(len(a), len(b))
    return zip(list(a) + [0] * (n - len(a)), list(b) + [0] * (n - len(b)))


def _numeric_roots(coeffs_lo: list) -> list:
    """Roots of a univariate polynomial with mpmath coefficients (lowest first)."""
    hi = [mpmath.mpc(c) for c in reversed(coeffs_lo)]
    n = len(hi) - 1
    if n == 1:
        return [-hi[1] / hi[0]]
    try:
        r = mpmath.polyroots(hi, maxsteps=600, extraprec=4 * NUMERIC_DPS)
        return [mpmath.mpc(x) for x in r]
    except mpmath.libmp.NoConvergence:
        M = mpmath.matrix(n, n)
        for k in range(n):
            M[0, k] = -hi[k + 1] / hi[0]
        for k in range(1, n):
            M[k, k - 1] = 1
        ev = mpmath.eig(M, left=False, right=False)
        return [mpmath.mpc(x) for x in ev]


def _rational_guess(z) -> Fraction | None:
    if abs(z.imag) > mpmath.mpf(10) ** -30 * max(1, abs(z)):
        return None
    fr = Fraction(mpmath.nstr(z.real, 50, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)
                  ).limit_denominator(10 ** 12)
    return fr


def _char_roots(phi: list, exact: bool) -> list[tuple[object, int, bool]]:
    """Roots of a characteristic polynomial: (root, multiplicity, is_exact)."""
    out = []
    if exact:
        for factor, mult in _yun_exact(phi):
            remaining = list(factor)
            with mpmath.workdps(NUMERIC_DPS):
                approx = _numeric_roots([_to_num(c) for c in factor])
            numeric = []
            for r in approx:
                fr = _rational_guess(r)
                if fr is not None and fr != 0 and len(remaining) > 1:
                    val = sum(c * fr ** k for k, c in enumerate(remaining))
                    if val == 0:
                        remaining, _ = _upoly_divmod(remaining, [-fr, Fraction(1)])
                        out.append((fr, mult, True))
                        continue
                numeric.append(r)
            if len(remaining) > 1:
                with mpmath.workdps(NUMERIC_DPS):
                    for r in _numeric_roots([_to_num(c) for c in remaining]):
                        out.append((r, mult, False))
        return out
    roots = _numeric_roots(phi)
    used = [False] * len(roots)
    for i, r in enumerate(roots):
        if used[i]:
            continue
        group = [i]
        for j in range(i + 1, len(roots)):
            if not used[j] and abs(roots[j] - r) <= _CLUSTER_REL * max(1, abs(r)):
                group.append(j)
        for j in group:
            used[j] = True
        cen = sum(roots[j] for j in group) / len(group)
        out.append((cen, len(group), False))
    return out


# -- Duval recursion ----------------------------------------------------------

@dataclass
class _Leaf:
    lam: object
    E: int
    P: dict            # tau exponent -> coefficient
    kappa: object
    M: int
    G: dict            # remaining germ in (tau, z_k), Weierstrass degree 1
    exact: bool
    split_order: Fraction


def _substitute(G: dict, xi, q: int, m: int, u: int, v: int, exact: bool) -> dict:
    """G(xi^v tau^q, tau^m (xi^u + z1)) / tau^N, keyed (z1-exp, tau-exp)."""
    xu = xi ** u
    N = min(q * j + m * i for (i, j) in G)
    out: dict = {}
    for (i, j), c in G.items():
        base = c * xi ** (v * j)
        w = q * j + m * i - N
        # (xu + z1)^i
        for k in range(i + 1):
            coeff = base * math.comb(i, k) * xu ** (i - k)
            key = (k, w)
            out[key] = out.get(key, 0) + coeff
    return _clean(out, exact)


def _duval(G: dict, exact: bool, lam, E: int, P: dict, kappa, M: int,
           split: Fraction, leaves: list):
    d = _weierstrass_degree(G)
    if d <= 0:
        return
    if d == 1:
        leaves.append(_Leaf(lam, E, P, kappa, M, G, exact, split))
        return
    poly = _polygon_from_support(G, d)
    # z-divisible part: branch z_k = 0
    i0 = poly.vertices[0][0]
    if i0 > 1:
        raise GermError("non-reduced factor z^k met inside a squarefree germ")
    plan = []
    for seg in poly.segments:
        di = seg.end[0] - seg.start[0]
        dj = seg.start[1] - seg.end[1]
        g = seg.lattice_length
        q, m = di // g, dj // g
        # characteristic polynomial in X = xi
        phi = [G.get((seg.start[0] + q * k, seg.start[1] - m * k), 0) for k in range(g + 1)]
        if exact:
            phi = [Fraction(c) for c in phi]
        # u*q - v*m = 1
        u = pow(q, -1, m) if m > 1 else 0
        v = (u * q - 1) // m
        for root in _char_roots(phi, exact):
            plan.append((q, m, u, v, root))
    n_children = len(plan) + (1 if i0 > 0 else 0)
    if i0 > 0:
        here = max((Fraction(q * M + m, E * q) for q, m, *_ in plan), default=Fraction(0))
        leaves.append(_Leaf(lam, E, dict(P), kappa, M, {(1, 0): Fraction(1) if exact else mpmath.mpc(1)},
                            exact, max(split, here) if n_children > 1 else split))
    for q, m, u, v, (xi, mult, xi_exact) in plan:
        sub_exact = exact and xi_exact
        with mpmath.workdps(NUMERIC_DPS):
            if sub_exact:
                Gs = G
            else:
                Gs = {k: _to_num(c) for k, c in G.items()} if exact else G
                xi = mpmath.mpc(xi)
            G1 = _substitute(Gs, xi, q, m, u, v, sub_exact)
            # the tau^0 row below the new Weierstrass degree vanishes in theory
            if not sub_exact:
                G1 = {k: c for k, c in G1.items() if not (k[1] == 0 and k[0] < mult)}
            lam1 = lam * xi ** (v * E)
            E1 = E * q
            P1: dict = {}
            for k, c in P.items():
                # P(tau) with tau = xi^v tau'^q
                P1[k * q] = P1.get(k * q, 0) + c * xi ** (v * k)
            # tau_old^M * z_k with z_k = tau^m (xi^u + z_{k+1})
            M1 = q * M + m
            P1[M1] = P1.get(M1, 0) + kappa * xi ** (v * M + u)
            kappa1 = kappa * xi ** (v * M)
            if not sub_exact:
                lam1 = _to_num(lam1)
                kappa1 = _to_num(kappa1)
                P1 = {k: _to_num(c) for k, c in P1.items()}
        here = Fraction(M1, E1)
        new_split = max(split, here) if n_children > 1 else split
        _duval(G1, sub_exact, lam1, E1, P1, kappa1, M1, new_split, leaves)


def _series_solve(G: dict, N: int, exact: bool) -> list:
    """Coefficients w_0..w_{N-1} of the root w(tau), w(0) = 0, of G(tau, w) = 0."""
    g1 = G.get((1, 0), 0)
    if g1 == 0:
        raise GermError("leaf germ is not smooth in z")
    zero = Fraction(0) if exact else mpmath.mpc(0)
    w = [zero] * N
    dz = max((i for (i, _) in G), default=0)
    rows: dict[int, list] = {}
    for (i, j), c in G.items():
        if j < N:
            rows.setdefault(i, [zero] * N)[j] += c

    def mul(a, b):
        out = [zero] * N
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j in range(N - i):
                if b[j] != 0:
                    out[i + j] += x * b[j]
        return out

    for _ in range(N):
        acc = [zero] * N
        for i in range(dz, -1, -1):
            acc = mul(acc, w)
            row = rows.get(i)
            if row:
                acc = [a + r for a, r in zip(acc, row)]
        new = [wi - ai / g1 for wi, ai in zip(w, acc)]
        if not exact:
            new[0] = zero
        if all((new[k] == w[k]) if exact else abs(new[k] - w[k]) <= _ZERO_REL * max(1, abs(w[k]))
               for k in range(N)):
            w = new
            break
        w = new
    return w


# -- branches -----------------------------------------------------------------

@dataclass(frozen=True)
class PuiseuxBranch:
    """One irreducible branch ``z = sum c_k t^(k/e)``.

    ``tau_series`` and ``lam`` give the rational-substitution form
    ``t = lam * tau^e``, ``z = sum tau_series[k] * tau^k``; these are exact
    Fractions when ``exact`` is true.
    """

    ramification_index: int
    exponents: tuple[Fraction, ...]
    coefficients: tuple[ComplexBox, ...]
    multiplicity: int
    truncation_order: Fraction
    lam: object
    tau_series: tuple
    exact: bool
    separation_order: Fraction = Fraction(0)

    def parametrization(self, t: str = "s") -> tuple[MPoly, MPoly]:
        """Exact polynomial pair ``(lam s^e, z(s))``; only for exact branches."""
        if not self.exact:
            raise GermError("branch coefficients are not rational")
        x = MPoly.monomial({t: self.ramification_index}, self.lam)
        z = MPoly.from_univariate(self.tau_series, t)
        return x, z

    def numeric_parametrization(self):
        return _to_num(self.lam), [_to_num(c) for c in self.tau_series]

    def residual_order(self, germ: PlaneCurveGerm) -> Fraction:
        """ord_t of the equation along the truncated branch (in t units)."""
        e = self.ramification_index
        N = len(self.tau_series)
        K = e * (germ.equation.degree() + 2) * (N + 2)
        supp = germ.support()
        exact = self.exact
        zero = Fraction(0) if exact else mpmath.mpc(0)
        with mpmath.workdps(NUMERIC_DPS):
            zs = list(self.tau_series) + [zero] * K
            zs = zs[:K] if exact else [_to_num(c) for c in zs[:K]]
            lam = self.lam if exact else _to_num(self.lam)
            total = [zero] * K
            maxz = max(i for i, _ in supp)
            powers = [[zero] * K for _ in range(maxz + 1)]
            powers[0][0] = Fraction(1) if exact else mpmath.mpc(1)
            for i in range(1, maxz + 1):
                prev = powers[i - 1]
                cur = [zero] * K
                for a, x in enumerate(prev):
                    if x == 0:
                        continue
                    for b in range(K - a):
                        if zs[b] != 0:
                            cur[a + b] += x * zs[b]
                powers[i] = cur
            for (i, j), c in supp.items():
                sh = e * j
                if sh >= K:
                    continue
                coeff = (c if exact else _to_num(c)) * lam ** j
                for k in range(K - sh):
                    if powers[i][k] != 0:
                        total[k + sh] += coeff * powers[i][k]
            scale = max(abs(_to_num(c)) for c in supp.values())
            for k, val in enumerate(total):
                if exact and val != 0:
                    return Fraction(k, e)
                if not exact and abs(val) > mpmath.mpf(10) ** -25 * scale:
                    return Fraction(k, e)
        return Fraction(K, e)


def _leaf_to_branch(leaf: _Leaf, order: Fraction, multiplicity: int) -> PuiseuxBranch:
    E = leaf.E
    need = math.floor(order * E) + 1          # tau exponents 0..need-1
    nser = max(need - leaf.M, 1)
    with mpmath.workdps(NUMERIC_DPS):
        w = _series_solve(leaf.G, nser, leaf.exact)
        series: dict[int, object] = dict(leaf.P)
        for k, c in enumerate(w):
            if c != 0:
                series[leaf.M + k] = series.get(leaf.M + k, 0) + leaf.kappa * c
        top = max([k for k in series if k < need] + [0])
        zero = Fraction(0) if leaf.exact else mpmath.mpc(0)
        tau = [series.get(k, zero) for k in range(top + 1)]
        if leaf.exact:
            tau = [Fraction(c) for c in tau]
        # standard form z = sum c_k t^(k/E): tau = (t/lam)^(1/E)
        lam = _to_num(leaf.lam)
        root = mpmath.root(mpmath.mpc(lam), E)
        exps, boxes = [], []
        for k, c in enumerate(tau):
            if c == 0 or (not leaf.exact and abs(c) < _ZERO_REL):
                continue
            val = mpmath.mpc(_to_num(c)) / root ** k
            exps.append(Fraction(k, E))
            rad = 0.0 if leaf.exact else float(abs(val)) * 1e-30
            boxes.append(ComplexBox(float(val.real), float(val.imag), rad))
    return PuiseuxBranch(E, tuple(exps), tuple(boxes), multiplicity, Fraction(order),
                         leaf.lam, tuple(tau), leaf.exact, leaf.split_order)


def _germ_dict(eq: MPoly, t: str, z: str) -> dict:
    it, iz = eq.vars.index(t), eq.vars.index(z)
    return {(e[iz], e[it]): c for e, c in eq.terms.items()}


def _squarefree_pieces(g: PlaneCurveGerm) -> list[tuple[dict, int]]:
    eq = g.equation
    pieces = []
    for factor, mult in squarefree_decomposition(eq, g.z):
        f = factor.with_vars((g.t, g.z))
        G = _germ_dict(f, g.t, g.z)
        if _weierstrass_degree(G) > 0:
            pieces.append((G, mult))
    return pieces


def _all_leaves(g: PlaneCurveGerm) -> list[tuple[_Leaf, int]]:
    out = []
    for G, mult in _squarefree_pieces(g):
        leaves: list[_Leaf] = []
        _duval(G, True, Fraction(1), 1, {}, Fraction(1), 0, Fraction(0), leaves)
        out.extend((lf, mult) for lf in leaves)
    return out


def puiseux_branches(g: PlaneCurveGerm, order=Fraction(4)) -> list[PuiseuxBranch]:
    """Branches of ``g`` with expansions truncated at t-exponent ``order``.

    Raises :class:`InsufficientOrderError` when ``order`` is below an
    exponent at which two branches separate.
    """
    order = Fraction(order)
    leaves = _all_leaves(g)
    needed = max((lf.split_order for lf, _ in leaves), default=Fraction(0))
    if order < needed:
        raise InsufficientOrderError(needed)
    return [_leaf_to_branch(lf, order, mult) for lf, mult in leaves]


def fast_path_irreducible(g: PlaneCurveGerm) -> bool:
    """Single Newton edge from (d, 0) to (0, n) with gcd(d, n) = 1."""
    poly = newton_polygon(g)
    if len(poly.segments) != 1:
        return False
    seg = poly.segments[0]
    return seg.start[0] == 0 and seg.interior_points == 0


def branch_count(g: PlaneCurveGerm) -> tuple[int, list[int]]:
    """Number of branches and their multiplicities (descending)."""
    if fast_path_irreducible(g):
        return 1, [1]
    mults = sorted((mult for _, mult in _all_leaves(g)), reverse=True)
    return len(mults), mults


def branch_degrees(g: PlaneCurveGerm) -> list[tuple[int, int]]:
    """(ramification index, multiplicity) for each branch."""
    return [(lf.E, mult) for lf, mult in _all_leaves(g)]


def is_irreducible_germ(g: PlaneCurveGerm, reduced: bool | None = None) -> bool:
    reduced = g.reduced if reduced is None else reduced
    count, mults = branch_count(g)
    if count != 1:
        return False
    return reduced or mults == [1]


def branch_report(branches: Sequence[PuiseuxBranch]) -> list[dict]:
    """Serializable summary: exponents as ``p/q``, coefficients as text boxes."""
    rep = []
    for b in branches:
        rep.append({
            "ramification_index": b.ramification_index,
            "multiplicity": b.multiplicity,
            "exact": b.exact,
            "exponents": [f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
                          for x in b.exponents],
            "coefficients": [c.to_str() for c in b.coefficients],
            "truncation_order": str(b.truncation_order),
        })
    return rep
