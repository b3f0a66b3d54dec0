"""Monodromy around normal crossings, divisors, generic arcs and germs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..germ import PlaneCurveGerm
from ..group import Permutation
from ..polyarith import MPoly, discriminant_z, substitute, univariate_roots
from ..polyarith.numeric import compose
from ..resolve import COORDS, Chart, Divisor, NormalCrossing, ResolutionTree, _at, _unit_ok
from .braid import BraidWord, compute_braid
from .tracking import DEFAULT_H0, LoopSpec, TrackingCertificate, TrackingError, run_loop

U, V = COORDS


@dataclass
class CrossingMonodromy:
    crossing: NormalCrossing
    P1: Permutation
    P2: Permutation
    certificates: tuple[TrackingCertificate, TrackingCertificate]
    loops: tuple[LoopSpec, LoopSpec]
    basepoint_roots: list[complex]
    braids: tuple[BraidWord, BraidWord] | None = None

    @property
    def commute(self) -> bool:
        return self.P1 * self.P2 == self.P2 * self.P1


def _chart_loop(chart: Chart, crossing: NormalCrossing, which: int, scale: Fraction = Fraction(1),
                label: str = "") -> LoopSpec:
    """Loop around ``B1`` (which=1) or ``B2`` (which=2) of the crossing, pushed to the base.

    The loop starts (s = 1) at the crossing basepoint; ``scale`` shrinks the
    offset along the encircled branch.
    """
    r1, r2 = crossing.disk_radii
    (a, c), (b, d) = crossing.frame
    p = crossing.point
    if which == 1:
        # s1 = r1 * scale fixed, s2 = r2 * s
        const = (p[0] + a * r1 * scale, p[1] + b * r1 * scale)
        lin = (c * r2, d * r2)
    else:
        const = (p[0] + c * r2 * scale, p[1] + d * r2 * scale)
        lin = (a * r1, b * r1)
    if crossing.exact:
        s = MPoly.var("s")
        local = {U: s * lin[0] + const[0], V: s * lin[1] + const[1]}
        images = {var: substitute(m, local).with_vars(("s",)) for var, m in zip(("x", "y"), chart.map_to_base)}
        return LoopSpec.make(images, 0, 1, "s", label)
    imgs = {U: {(0,): complex(const[0]), (1,): complex(lin[0])},
            V: {(0,): complex(const[1]), (1,): complex(lin[1])}}
    out = {}
    for var, m in zip(("x", "y"), chart.map_to_base):
        N = compose(m.with_vars(COORDS), imgs, 1)
        deg = max(e[0] for e in N)
        cs = [0j] * (deg + 1)
        for (k,), val in N.items():
            cs[k] += val
        out[var] = cs
    return LoopSpec.make_numeric(out, 0, 1, "s", label)


def crossing_monodromies(F: MPoly, tree: ResolutionTree, crossing: NormalCrossing,
                         d: int | None = None, h0: float = DEFAULT_H0, braids: bool = False,
                         kernel=None) -> CrossingMonodromy:
    """``(P1, P2)`` around ``B1`` and ``B2`` of ``crossing``, based at its corner point.

    Both permutations use the fiber labels of the shared basepoint sorted by
    (real, imaginary) part.
    """
    chart = tree.chart(crossing.chart_id)
    l1 = _chart_loop(chart, crossing, 1, label=f"{crossing.id}:B1")
    l2 = _chart_loop(chart, crossing, 2, label=f"{crossing.id}:B2")
    r1 = run_loop(F, l1, d=d, delta=tree.delta, h0=h0, kernel=kernel)
    r2 = run_loop(F, l2, d=d, delta=tree.delta, h0=h0, kernel=kernel)
    if max(abs(a - b) for a, b in zip(r1.roots, r2.roots)) > 1e-8 * (1 + max(abs(a) for a in r1.roots)):
        raise TrackingError("the two loops of a crossing do not share a fiber")
    bw = None
    if braids:
        w1, _ = compute_braid(F, l1, d=d, h0=h0, delta=tree.delta)
        w2, _ = compute_braid(F, l2, d=d, h0=h0, delta=tree.delta)
        bw = (w1, w2)
    return CrossingMonodromy(crossing, r1.permutation, r2.permutation,
                             (r1.certificate, r2.certificate), (l1, l2), r1.roots, bw)


# -- transversal monodromy --------------------------------------------------------

def _axis_point_candidates():
    yield Fraction(1, 2)
    k = 3
    while k < 64:
        yield Fraction(1, k)
        yield Fraction(-1, k)
        k += 1


def _exceptional_loop(chart: Chart, div: Divisor, offset: Fraction):
    """Transverse disk to an exceptional axis at a rational point ``offset``."""
    along_v = div.equation.degree(U) == 1        # {u = 0}: move along v
    point = (Fraction(0), offset) if along_v else (offset, Fraction(0))
    others = [d for d in chart.divisors if d.label != div.label]
    if any(_at(d.equation, point) == 0 for d in others):
        return None
    T = chart.total_transform
    var = U if along_v else V
    h = T.with_vars(COORDS).partial_evaluate({V if along_v else U: offset}).with_vars((var,))
    k = min(e[0] for e in h.terms)
    coeffs = {(e[0] - k, 0): complex(c) for e, c in h.terms.items()}
    r = Fraction(1, 2)
    for _ in range(40):
        if _unit_ok(coeffs, float(r), 0.0):
            break
        r /= 2
    else:
        return None
    s = MPoly.var("s")
    local = {U: s * r, V: MPoly.const(offset)} if along_v else {U: MPoly.const(offset), V: s * r}
    images = {var: substitute(m, local).with_vars(("s",)) for var, m in zip(("x", "y"), chart.map_to_base)}
    return LoopSpec.make(images, 0, 1, "s", f"{chart.id}:{div.label}@{offset}")


def transversal_monodromy(F: MPoly, tree: ResolutionTree, label: str, d: int | None = None,
                          h0: float = DEFAULT_H0, positions: int = 1) -> list[Permutation]:
    """Permutations of transverse loops around the divisor or strict branch ``label``.

    ``positions`` loops at different points of the component are returned;
    their cycle types agree.
    """
    out: list[Permutation] = []
    if label.startswith("E"):
        for chart in tree.leaves():
            try:
                div = chart.divisor(label)
            except KeyError:
                continue
            for off in _axis_point_candidates():
                loop = _exceptional_loop(chart, div, off)
                if loop is None:
                    continue
                out.append(run_loop(F, loop, d=d, delta=tree.delta, h0=h0).permutation)
                if len(out) >= positions:
                    return out
        if out:
            return out
        raise TrackingError(f"no transverse disk found for {label}")
    for x in tree.crossings:
        for which, div in ((1, x.branch_pair[0]), (2, x.branch_pair[1])):
            if div.label != label:
                continue
            chart = tree.chart(x.chart_id)
            for k in range(positions):
                loop = _chart_loop(chart, x, which, Fraction(1, 2 ** k))
                out.append(run_loop(F, loop, d=d, delta=tree.delta, h0=h0).permutation)
            return out
    raise TrackingError(f"component {label} meets no crossing")


# -- generic arcs and germs -------------------------------------------------------

def power_of_half_below(x: float) -> Fraction:
    """Largest 2^-k (k >= 1) not exceeding ``x``."""
    r = Fraction(1, 2)
    while float(r) > x:
        r /= 2
    return r


def safe_radius(P: MPoly, param: str) -> Fraction:
    """Half the smallest nonzero root modulus of ``P``, rounded down to 2^-k."""
    coeffs = P.univariate_coeffs(param) if P.used_vars() else [P.constant_value()]
    nz = [abs(b.center) for b in univariate_roots(coeffs) if abs(b.center) > b.radius]
    if not nz:
        return Fraction(1, 2)
    return power_of_half_below(0.5 * min(nz))


def arc_loop(x: MPoly, y: MPoly, delta: MPoly, param: str = "s", label: str = "") -> LoopSpec:
    """Loop ``|s| = r`` of a polynomial arc, with ``r`` separating the origin."""
    D = substitute(delta, {"x": x, "y": y}).with_vars((param,))
    if D.is_zero():
        raise TrackingError("the arc lies inside the discriminant")
    r = safe_radius(D, param)
    return LoopSpec.make({"x": x.with_vars((param,)), "y": y.with_vars((param,))}, 0, r, param, label)


def generic_monodromy(F: MPoly, direction=(1, 0), delta: MPoly | None = None, d: int | None = None,
                      h0: float = DEFAULT_H0) -> tuple[Permutation, TrackingCertificate, LoopSpec]:
    """Monodromy of the loop of the straight arc ``(a s, b s)``."""
    a, b = (Fraction(c) for c in direction)
    if delta is None:
        delta, _ = discriminant_z(F, "z")
    s = MPoly.var("s")
    loop = arc_loop(s * a, s * b, delta, "s", f"generic({a}:{b})")
    res = run_loop(F, loop, d=d, delta=delta, h0=h0)
    return res.permutation, res.certificate, loop


def germ_monodromy(g: PlaneCurveGerm, h0: float = DEFAULT_H0) -> tuple[Permutation, TrackingCertificate]:
    """Monodromy of the germ's local sheets around ``|t| = r``."""
    F = g.equation
    D, _ = discriminant_z(F, g.z)
    D = D.with_vars((g.t,))
    r = safe_radius(D, g.t)
    loop = LoopSpec.make({g.t: MPoly.var("s").with_vars(("s",))}, 0, r, "s", "germ")
    mapped = substitute(F, {g.t: MPoly.var("tt")}) if g.t == "s" else F
    if g.t == "s":
        loop = LoopSpec.make({"tt": MPoly.var("s").with_vars(("s",))}, 0, r, "s", "germ")
    if g.z != "z":
        mapped = substitute(mapped, {g.z: MPoly.var("z")})
    res = run_loop(mapped, loop, d=g.weierstrass_degree, delta=None, h0=h0)
    return res.permutation, res.certificate
