"""Embedded resolution of a plane curve germ by point blowups.

Charts use coordinates ``(u, v)``.  Blowing up a rational point ``p`` of a
chart produces the children ``<id>.u`` with ``(u, v) -> p + (u, u*v)`` and
``<id>.v`` with ``(u, v) -> p + (u*v, v)``; the new exceptional curve is
``{u = 0}`` resp. ``{v = 0}``.  Every point of the exceptional curve except
one is seen in the ``.u`` chart, the remaining one is the ``.v`` origin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .polyarith import (
    MPoly,
    gcd,
    squarefree_decomposition,
    substitute,
)
from .polyarith.numeric import compose, linear_image, npoly_from_mpoly
from .polyarith.roots import split_rational_roots, univariate_roots

U, V = "u", "v"
COORDS = (U, V)
DEFAULT_DEPTH_CAP = 32


class ResolutionError(RuntimeError):
    pass


class UnsupportedCenterError(ResolutionError):
    """A point that must be blown up has irrational coordinates."""

    def __init__(self, chart_id: str, minimal_polynomial: MPoly):
        super().__init__(f"irrational blowup center in chart {chart_id}: "
                         f"root of {minimal_polynomial.to_str()}")
        self.chart_id = chart_id
        self.minimal_polynomial = minimal_polynomial


class DepthCapExceeded(ResolutionError):
    pass


class CenterNotOnCurve(ResolutionError):
    pass


@dataclass(frozen=True)
class Divisor:
    label: str
    kind: str                 # "exceptional" or "strict"
    equation: MPoly           # in chart coordinates
    multiplicity: int

    def to_dict(self) -> dict:
        return {"label": self.label, "kind": self.kind,
                "equation": self.equation.to_str(), "multiplicity": self.multiplicity}


@dataclass
class Chart:
    id: str
    map_to_base: tuple[MPoly, MPoly]
    total_transform: MPoly
    divisors: list[Divisor]
    parent: str | None = None
    center: tuple[Fraction, Fraction] | None = None
    depth: int = 0
    coords: tuple[str, str] = COORDS

    def divisor(self, label: str) -> Divisor:
        for d in self.divisors:
            if d.label == label:
                return d
        raise KeyError(label)

    def exceptional(self) -> list[Divisor]:
        return [d for d in self.divisors if d.kind == "exceptional"]

    def strict(self) -> list[Divisor]:
        return [d for d in self.divisors if d.kind == "strict"]

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "map_to_base": [p.to_str() for p in self.map_to_base],
            "total_transform": self.total_transform.to_str(),
            "divisors": [d.to_dict() for d in self.divisors],
            "parent": self.parent,
            "center": [str(c) for c in self.center] if self.center else None,
        }


@dataclass
class NormalCrossing:
    """Two smooth transverse branches ``B1``, ``B2`` of the total transform.

    ``frame`` has columns tangent to ``B1`` and ``B2``: the chart point
    ``point + frame @ (s1, s2)`` has ``B1`` near ``{s2 = 0}`` and ``B2`` near
    ``{s1 = 0}``.  The loops are ``s2 = r2 e^{i theta}`` at ``s1 = r1`` (around
    ``B1``) and ``s1 = r1 e^{i theta}`` at ``s2 = r2`` (around ``B2``).
    """

    id: str
    chart_id: str
    point: tuple
    exact: bool
    branch_pair: tuple[Divisor, Divisor]
    frame: tuple[tuple, tuple] = ((1, 0), (0, 1))
    disk_radii: tuple[Fraction, Fraction] = (Fraction(1, 2), Fraction(1, 2))
    basepoint: tuple = ()

    @property
    def total_multiplicity(self) -> int:
        return self.branch_pair[0].multiplicity + self.branch_pair[1].multiplicity

    def chart_point(self, s1, s2):
        (a, c), (b, d) = self.frame[0], self.frame[1]
        # frame given as rows: frame[0] = (m11, m12), frame[1] = (m21, m22)
        return (self.point[0] + a * s1 + c * s2, self.point[1] + b * s1 + d * s2)

    def to_dict(self) -> dict:
        def fmt(x):
            if isinstance(x, Fraction):
                return str(x)
            x = complex(x)
            return f"{x.real:.15g}{'+' if x.imag >= 0 else '-'}{abs(x.imag):.15g}i"
        return {
            "id": self.id,
            "chart": self.chart_id,
            "point": [fmt(x) for x in self.point],
            "exact": self.exact,
            "branches": [self.branch_pair[0].label, self.branch_pair[1].label],
            "frame": [[fmt(x) for x in row] for row in self.frame],
            "disk_radii": [str(r) for r in self.disk_radii],
            "basepoint": [fmt(x) for x in self.basepoint],
        }


@dataclass
class ResolutionTree:
    delta: MPoly
    charts: list[Chart]
    edges: list[tuple[str, tuple, tuple[str, str]]]
    crossings: list[NormalCrossing] = field(default_factory=list)
    strict_labels: dict[str, MPoly] = field(default_factory=dict)

    def chart(self, cid: str) -> Chart:
        for c in self.charts:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def leaves(self) -> list[Chart]:
        parents = {e[0] for e in self.edges}
        return [c for c in self.charts if c.id not in parents]

    def exceptional_count(self) -> int:
        return len(self.edges)

    def strict_branch_count(self) -> int:
        """Branches of the strict transform, counted where they meet the last curves."""
        if not self.edges:
            return sum(1 for _ in self.strict_labels)
        return sum(1 for x in self.crossings
                   if {d.kind for d in x.branch_pair} == {"strict", "exceptional"})

    def to_dict(self) -> dict:
        return {
            "charts": [c.to_dict() for c in self.charts],
            "edges": [{"parent": p, "center": [str(x) for x in ctr], "children": list(ch)}
                      for p, ctr, ch in self.edges],
            "crossings": [x.to_dict() for x in self.crossings],
            "strict_branches": {k: v.to_str() for k, v in self.strict_labels.items()},
        }


# -- helpers -------------------------------------------------------------------

def _translate(f: MPoly, p) -> MPoly:
    return substitute(f, {U: MPoly.var(U) + p[0], V: MPoly.var(V) + p[1]}).with_vars(COORDS)


def _order_at(f: MPoly, p) -> int:
    g = _translate(f, p)
    return g.order() if not g.is_zero() else math.inf


def _at(f: MPoly, p) -> Fraction:
    return f.with_vars(COORDS).evaluate({U: p[0], V: p[1]})


def _grad(f: MPoly, p):
    return _at(f.diff(U), p), _at(f.diff(V), p)


def _strip(f: MPoly, var: str) -> tuple[MPoly, int]:
    """Divide out the largest power of ``var``."""
    g = f.with_vars(COORDS)
    i = g.vars.index(var)
    k = min(e[i] for e in g.terms)
    if k == 0:
        return g, 0
    terms = {tuple(x - (k if j == i else 0) for j, x in enumerate(e)): c for e, c in g.terms.items()}
    return MPoly._raw(terms, g.vars), k


def strict_factors(delta: MPoly) -> list[tuple[MPoly, int]]:
    """Squarefree pieces of ``delta`` through the origin, with multiplicity.

    The content with respect to ``v`` (a polynomial in ``u``) is split off
    and decomposed on its own, so coordinate lines become separate pieces.
    """
    d = delta.with_vars(COORDS)
    pieces: list[tuple[MPoly, int]] = []
    content = MPoly.const(0)
    for c in d.coeffs_in(V).values():
        content = gcd(content, c)
    if not content.is_constant():
        d = d.exact_div(content)
        pieces += squarefree_decomposition(content.with_vars(COORDS), U)
    if d.degree(V) > 0:
        pieces += squarefree_decomposition(d, V)
    out = []
    for f, m in pieces:
        f = f.with_vars(COORDS).primitive()
        if f.constant_term() == 0:
            out.append((f, m))
    return out


def _order_pair(a: Divisor, b: Divisor) -> tuple[Divisor, Divisor]:
    """B1 is the most recent exceptional curve of the pair, if any."""
    def rank(d: Divisor) -> int:
        return int(d.label[1:]) if d.kind == "exceptional" else -1
    return (b, a) if rank(b) > rank(a) else (a, b)


# -- the resolution ------------------------------------------------------------

class _Builder:
    def __init__(self, delta: MPoly, depth_cap: int):
        self.delta = delta.with_vars(("x", "y"))
        self.depth_cap = depth_cap
        self.charts: list[Chart] = []
        self.edges: list = []
        self.raw_crossings: list[tuple] = []
        self.e_count = 0
        self.strict_labels: dict[str, MPoly] = {}

    def root(self) -> Chart:
        base = substitute(self.delta, {"x": MPoly.var(U), "y": MPoly.var(V)}).with_vars(COORDS)
        divs = []
        for k, (f, m) in enumerate(strict_factors(base), start=1):
            label = f"D{k}"
            divs.append(Divisor(label, "strict", f, m))
            self.strict_labels[label] = f
        chart = Chart("0", (MPoly.var(U).with_vars(COORDS), MPoly.var(V).with_vars(COORDS)),
                      base, divs)
        self.charts.append(chart)
        return chart

    # classification of a rational point
    def _through(self, chart: Chart, p):
        exc = [d for d in chart.exceptional() if _at(d.equation, p) == 0]
        strict = [d for d in chart.strict() if _at(d.equation, p) == 0]
        return exc, strict

    def process(self, chart: Chart, p):
        exc, strict = self._through(chart, p)
        orders = [_order_at(d.equation, p) for d in strict]
        ms = sum(orders)
        ke = len(exc)
        good = False
        pair = None
        if ms == 0:
            good = ke <= 2
            if ke == 2:
                # {v = 0} first
                e1 = next(d for d in exc if d.equation.degree(V) == 1)
                e2 = next(d for d in exc if d.equation.degree(U) == 1)
                pair = (e1, e2)
        elif ms == 1 and ke == 0:
            good = True
        elif ms == 1 and ke == 1:
            s = strict[0]
            gu, gv = _grad(s.equation, p)
            e = exc[0]
            transverse = gv != 0 if e.equation.degree(U) == 1 else gu != 0
            if transverse:
                good = True
                pair = (s, e) if e.equation.degree(U) == 1 else (e, s)
        elif ms == 2 and ke == 0 and len(strict) == 2 and orders == [1, 1]:
            g1 = _grad(strict[0].equation, p)
            g2 = _grad(strict[1].equation, p)
            if g1[0] * g2[1] - g1[1] * g2[0] != 0:
                good = True
                pair = (strict[0], strict[1])
        if good:
            if pair is not None:
                self.raw_crossings.append((chart, tuple(p), True, _order_pair(*pair)))
            return
        if ms == 0 and ke == 0:
            return
        if chart.depth >= self.depth_cap:
            raise DepthCapExceeded(f"resolution deeper than {self.depth_cap} blowups")
        self.blowup(chart, p)

    def blowup(self, chart: Chart, p):
        if _at(chart.total_transform, p) != 0:
            raise CenterNotOnCurve(f"{p} is not on the total transform of chart {chart.id}")
        p = (Fraction(p[0]), Fraction(p[1]))
        self.e_count += 1
        e_label = f"E{self.e_count}"
        mult = _order_at(chart.total_transform, p)
        u, v = MPoly.var(U).with_vars(COORDS), MPoly.var(V).with_vars(COORDS)
        children = []
        for kind in ("u", "v"):
            if kind == "u":
                local = {U: u + p[0], V: u * v + p[1]}
                e_var, old_visible = U, V       # old line {b = 0} shows up as {v = 0}
            else:
                local = {U: u * v + p[0], V: v + p[1]}
                e_var, old_visible = V, U
            cmap = tuple(substitute(m, local).with_vars(COORDS) for m in chart.map_to_base)
            total = substitute(chart.total_transform, local).with_vars(COORDS)
            divs = [Divisor(e_label, "exceptional", MPoly.var(e_var).with_vars(COORDS), mult)]
            for d in chart.exceptional():
                # a parent axis through p keeps its coordinate role in one child
                axis = U if d.equation.degree(U) == 1 else V
                if _at(d.equation, p) != 0:
                    continue
                if axis == old_visible:
                    divs.append(Divisor(d.label, "exceptional",
                                        MPoly.var(old_visible).with_vars(COORDS), d.multiplicity))
            for d in chart.strict():
                k = _order_at(d.equation, p)
                if k == 0:
                    continue
                pulled = substitute(d.equation, local).with_vars(COORDS)
                stripped, got = _strip(pulled, e_var)
                if got != k:
                    raise ResolutionError("strict transform bookkeeping failed")
                divs.append(Divisor(d.label, "strict", stripped, d.multiplicity))
            child = Chart(f"{chart.id}.{kind}", cmap, total, divs, chart.id, p, chart.depth + 1)
            self.charts.append(child)
            children.append(child)
        self.edges.append((chart.id, p, (children[0].id, children[1].id)))
        self._explore_u(children[0], e_label)
        self.process(children[1], (Fraction(0), Fraction(0)))

    def _explore_u(self, chart: Chart, e_label: str):
        """Visit the points of the new exceptional curve {u = 0} that matter."""
        rational: set[Fraction] = set()
        if any(d.kind == "exceptional" and d.label != e_label for d in chart.divisors):
            rational.add(Fraction(0))
        numeric = []
        polys = []
        for d in chart.strict():
            r = d.equation.partial_evaluate({U: 0})
            coeffs = r.univariate_coeffs(V) if r.used_vars() else [r.constant_term()]
            polys.append((d, coeffs))
        # product restricted to E: used to detect coincident intersection points
        for d, coeffs in polys:
            if len(coeffs) <= 1:
                continue
            roots, rest = split_rational_roots(coeffs)
            for r, _ in roots:
                rational.add(r)
            if len(rest) > 1:
                numeric.append((d, rest))
        for c in sorted(rational):
            self.process(chart, (Fraction(0), c))
        for d, rest in numeric:
            others = [c for dd, c in polys if dd is not d]
            self._numeric_points(chart, e_label, d, rest, others)

    def _numeric_points(self, chart: Chart, e_label: str, d: Divisor, rest: list, others):
        rest_poly = MPoly.from_univariate(rest, V).with_vars(COORDS)
        sq = gcd(rest_poly, rest_poly.diff(V))
        if not sq.is_constant():
            raise UnsupportedCenterError(chart.id, sq)
        for oc in others:
            g = gcd(rest_poly, MPoly.from_univariate(oc, V).with_vars(COORDS))
            if not g.is_constant():
                raise UnsupportedCenterError(chart.id, g)
        e = chart.divisor(e_label)
        for box in univariate_roots(rest, digits=40):
            pt = (0j, complex(box.re, box.im))
            self.raw_crossings.append((chart, pt, False, _order_pair(d, e)))


def resolve_embedded(delta: MPoly, depth_cap: int = DEFAULT_DEPTH_CAP) -> ResolutionTree:
    """Resolve the germ of ``delta`` (in x, y) at the origin; see module notes."""
    if delta.is_zero():
        raise ResolutionError("cannot resolve the zero polynomial")
    b = _Builder(delta, depth_cap)
    root = b.root()
    if root.total_transform.constant_term() == 0:
        b.process(root, (Fraction(0), Fraction(0)))
    tree = ResolutionTree(b.delta, b.charts, b.edges, [], b.strict_labels)
    tree._raw = b.raw_crossings  # type: ignore[attr-defined]
    tree.crossings = enumerate_crossings(tree)
    return tree


def blowup(chart: Chart, center, e_label: str = "E") -> tuple[Chart, Chart]:
    """The two standard charts of the blowup of ``chart`` at ``center``."""
    b = _Builder(chart.map_to_base[0] * 0 + MPoly.var("x"), DEFAULT_DEPTH_CAP)
    b.e_count = 0
    b.charts = []
    b._explore_u = lambda *a, **k: None      # type: ignore[assignment]
    b.process = lambda *a, **k: None         # type: ignore[assignment]
    b.blowup(chart, center)
    u_child, v_child = b.charts[-2], b.charts[-1]
    fix = lambda c: Chart(c.id, c.map_to_base, c.total_transform,
                          [Divisor(e_label if d.label == "E1" and d.kind == "exceptional" else d.label,
                                   d.kind, d.equation, d.multiplicity) for d in c.divisors],
                          c.parent, c.center, c.depth)
    return fix(u_child), fix(v_child)


# -- crossings: frames, radii, basepoints ---------------------------------------

def _frame_for(chart: Chart, point, exact: bool, pair: tuple[Divisor, Divisor]):
    """Columns tangent to B1 and B2."""
    cols = []
    for d in pair:
        if d.kind == "exceptional":
            cols.append((Fraction(1), Fraction(0)) if d.equation.degree(V) == 1 else (Fraction(0), Fraction(1)))
            continue
        if exact:
            gu, gv = _grad(d.equation, point)
        else:
            gu = complex(npoly_eval_at(d.equation.diff(U), point))
            gv = complex(npoly_eval_at(d.equation.diff(V), point))
        if gv != 0:
            cols.append((Fraction(1) if exact else 1 + 0j, -gu / gv))
        else:
            cols.append((Fraction(0) if exact else 0j, Fraction(1) if exact else 1 + 0j))
    (a, b), (c, d) = cols
    return ((a, c), (b, d))


def npoly_eval_at(f: MPoly, point) -> complex:
    g = f.with_vars(COORDS)
    acc = 0j
    for e, c in g.terms.items():
        acc += complex(c) * complex(point[0]) ** e[0] * complex(point[1]) ** e[1]
    return acc


def _frame_poly(f: MPoly, cr_point, frame, exact: bool):
    """f(point + frame (s1, s2)) as {(i, j): coefficient}."""
    (a, c), (b, d) = frame
    if exact:
        s1, s2 = MPoly.var("s1"), MPoly.var("s2")
        g = substitute(f.with_vars(COORDS),
                       {U: s1 * a + s2 * c + cr_point[0], V: s1 * b + s2 * d + cr_point[1]})
        g = g.with_vars(("s1", "s2"))
        return {e: complex(val) for e, val in g.terms.items()}, {e: val for e, val in g.terms.items()}
    images = {U: linear_image(cr_point[0], (a, c), 2), V: linear_image(cr_point[1], (b, d), 2)}
    return compose(f.with_vars(COORDS), images, 2), None


def _rouche_ok(g: dict, lead: tuple[int, int], r1: float, r2: float) -> bool:
    lhs = abs(g.get(lead, 0)) * (r1 ** lead[0]) * (r2 ** lead[1])
    rhs = sum(abs(c) * r1 ** i * r2 ** j for (i, j), c in g.items() if (i, j) != lead)
    return lhs > rhs * (1 + 1e-9) + 1e-300


def _unit_ok(h: dict, r1: float, r2: float) -> bool:
    return _rouche_ok(h, (0, 0), r1, r2)


def _components(chart: Chart) -> list[tuple[str, MPoly]]:
    """(label, equation) for every factor of the chart's total transform."""
    comps = [(d.label, d.equation) for d in chart.divisors]
    prod = MPoly.const(1)
    for d in chart.divisors:
        prod = prod * d.equation ** d.multiplicity
    try:
        rest = chart.total_transform.exact_div(prod)
    except ArithmeticError:
        rest = None
    if rest is not None and not rest.is_constant():
        comps.append(("unit", rest.with_vars(COORDS)))
    return comps


def certify_bidisk(chart: Chart, point, exact: bool, pair, frame, r1: Fraction, r2: Fraction) -> bool:
    fr1, fr2 = float(r1), float(r2)
    for label, eq in _components(chart):
        g, _ = _frame_poly(eq, point, frame, exact)
        if label == pair[0].label:
            ok = _rouche_ok(g, (0, 1), fr1, fr2)
        elif label == pair[1].label:
            ok = _rouche_ok(g, (1, 0), fr1, fr2)
        else:
            ok = _unit_ok(g, fr1, fr2)
        if not ok:
            return False
    return True


def enumerate_crossings(tree: ResolutionTree, min_radius: Fraction = Fraction(1, 2 ** 40)) -> list[NormalCrossing]:
    """Normal crossings with certified bidisks of radius a power of 1/2."""
    raw = getattr(tree, "_raw", [])
    out = []
    for k, (chart, point, exact, pair) in enumerate(raw):
        frame = _frame_for(chart, point, exact, pair)
        r = Fraction(1, 2)
        while not certify_bidisk(chart, point, exact, pair, frame, r, r):
            r /= 2
            if r < min_radius:
                raise ResolutionError(f"no certified bidisk at a crossing in chart {chart.id}")
        nc = NormalCrossing(f"X{k + 1}", chart.id, point, exact, pair, frame, (r, r))
        nc.basepoint = nc.chart_point(r, r)
        out.append(nc)
    return out
