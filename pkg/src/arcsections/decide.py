"""Deciding whether a surface germ admits an irreducible arc-section.

The pipeline for a projection direction: adapt coordinates so the direction
is the z-axis, take the discriminant of the covering, try a generic straight
arc, and otherwise resolve the discriminant and look for a d-cycle in the
group generated by the two meridian permutations at each normal crossing.
"""

from __future__ import annotations

import contextvars
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .germ import (
    GermError,
    InsufficientOrderError,
    PlaneCurveGerm,
    branch_count,
    branch_report,
    fast_path_irreducible,
    puiseux_branches,
)
from .group import GroupCapExceeded, Permutation, PermGroupReport, generated_group
from .monodromy.crossing import (
    CrossingMonodromy,
    crossing_monodromies,
    generic_monodromy,
    safe_radius,
)
from .monodromy.tracking import DEFAULT_H0, TrackingError
from .polyarith import (
    MPoly,
    discriminant_z,
    gcd,
    initial_form,
    resultant,
    squarefree_decomposition,
    substitute,
    univariate_roots,
)
from .polyarith.numeric import compose
from .polyarith.roots import polished_roots
from .resolve import NormalCrossing, ResolutionError, ResolutionTree, resolve_embedded, strict_factors

X, Y, Z = MPoly.var("x"), MPoly.var("y"), MPoly.var("z")
XYZ = ("x", "y", "z")
CONE_TOL = 1e-6
PROP61_TOL = 1e-8


class ProjectionError(ValueError):
    pass


class WitnessValidationError(AssertionError):
    """A constructed witness arc failed its independent check."""


# -- projection setup ------------------------------------------------------------

AXES = {"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}


def parse_direction(direction) -> tuple[Fraction, Fraction, Fraction]:
    if isinstance(direction, str):
        if direction in AXES:
            return tuple(Fraction(c) for c in AXES[direction])
        parts = direction.replace("(", "").replace(")", "").split(",")
        direction = parts
    vec = tuple(Fraction(str(c).strip()) for c in direction)
    if len(vec) != 3 or not any(vec):
        raise ProjectionError("projection direction must be a nonzero 3-vector")
    return vec


def adapting_substitution(p) -> dict[str, MPoly]:
    """Images of x, y, z making ``p`` the new z-axis."""
    p1, p2, p3 = p
    if p3 != 0:
        return {"x": X + Z * p1, "y": Y + Z * p2, "z": Z * p3}
    if p2 != 0:
        return {"x": X + Z * p1, "y": Z * p2, "z": Y}
    return {"x": Z * p1, "y": X, "z": Y}


@dataclass
class ProjectionSetup:
    F: MPoly
    direction: tuple[Fraction, Fraction, Fraction]
    F_adapted: MPoly
    d: int
    m: int
    transverse: bool
    _delta: MPoly | None = field(default=None, repr=False)
    _delta_unit: Fraction | None = field(default=None, repr=False)

    @property
    def delta(self) -> MPoly:
        if self._delta is None:
            D, u = discriminant_z(self.F_adapted, "z")
            if D.is_zero():
                raise ProjectionError("the adapted equation is not squarefree in z")
            self._delta, self._delta_unit = D.with_vars(("x", "y")), u
        return self._delta

    @property
    def delta_unit(self) -> Fraction:
        self.delta
        return self._delta_unit

    def to_dict(self) -> dict:
        return {
            "surface": self.F.to_str(),
            "direction": [str(c) for c in self.direction],
            "adapted": self.F_adapted.to_str(),
            "degree": self.d,
            "multiplicity": self.m,
            "transverse": self.transverse,
        }


def setup_projection(F: MPoly, direction=(0, 0, 1)) -> ProjectionSetup:
    """Adapted equation, covering degree ``d``, multiplicity ``m`` and transversality."""
    p = parse_direction(direction)
    F = F.with_vars(XYZ)
    if F.is_zero():
        raise ProjectionError("zero surface equation")
    if F.constant_term() != 0:
        raise ProjectionError("the surface does not pass through the origin")
    G = substitute(F, adapting_substitution(p)).with_vars(XYZ)
    on_line = G.partial_evaluate({"x": 0, "y": 0}).with_vars(XYZ)
    if on_line.is_zero():
        raise ProjectionError("the projection line lies on the surface; the projection is not finite")
    d = min(e[2] for e in on_line.terms)
    m = F.order()
    cone = initial_form(F)
    transverse = cone.evaluate(dict(zip(XYZ, p))) != 0
    return ProjectionSetup(F, p, G, d, m, transverse)


# -- tangent cone screening ---------------------------------------------------------

@dataclass
class TangentCone:
    form: MPoly
    degree: int
    reduced_degree: int
    classification: str
    admissible_lines: list[dict]
    notes: list[str] = field(default_factory=list)
    certified: bool = True

    def to_dict(self) -> dict:
        return {
            "form": self.form.to_str(),
            "degree": self.degree,
            "classification": self.classification,
            "admissible_lines": self.admissible_lines,
            "certified": self.certified,
            "notes": list(self.notes),
        }


def _reduced_form(C: MPoly) -> tuple[MPoly, list[MPoly]]:
    """Product of the distinct squarefree pieces of a ternary form."""
    var = max(XYZ, key=lambda v: C.degree(v))
    pieces = [f for f, _ in squarefree_decomposition(C, var) if not f.is_constant()]
    content = C
    for f, k in squarefree_decomposition(C, var):
        content = content.exact_div(f ** k)
    red = MPoly.const(1)
    for f in pieces:
        red = red * f
    if not content.is_constant():
        # factors free of ``var``
        sub, extra = _reduced_form(content)
        red = red * sub
        pieces += extra
    return red.with_vars(XYZ), pieces


def _vertex(C: MPoly) -> tuple[Fraction, Fraction, Fraction] | None:
    """A point ``p`` with ``p . grad C == 0`` identically (a cone vertex), if any."""
    grads = [C.diff(v).with_vars(XYZ) for v in XYZ]
    monos = sorted({e for g in grads for e in g.terms})
    rows = [[g.terms.get(e, Fraction(0)) for g in grads] for e in monos]
    # kernel of rows (k x 3) by elimination
    A = [list(r) for r in rows]
    piv_cols = []
    r = 0
    for c in range(3):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        lead = A[r][c]
        A[r] = [x / lead for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        piv_cols.append(c)
        r += 1
    free = [c for c in range(3) if c not in piv_cols]
    if not free:
        return None
    fc = free[0]
    vec = [Fraction(0)] * 3
    vec[fc] = Fraction(1)
    for i, c in enumerate(piv_cols):
        vec[c] = -A[i][fc]
    return tuple(vec)


def _general_position(seed: int = 7):
    rng = random.Random(seed)
    while True:
        M = [[Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(3)] for _ in range(3)]
        det = (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
               - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
               + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))
        if det != 0:
            return M


def _eval_c(C: MPoly, p) -> mpmath.mpc:
    acc = mpmath.mpc(0)
    for e, c in C.terms.items():
        acc += mpmath.mpf(c.numerator) / c.denominator * p[0] ** e[0] * p[1] ** e[1] * p[2] ** e[2]
    return acc


def _line_restriction(C: MPoly, p, q, k: int) -> list:
    """Coefficients (lowest first) of C(p + lam q) in lam, via interpolation."""
    pts = [mpmath.exp(2j * mpmath.pi * j / (k + 1)) for j in range(k + 1)]
    vals = [_eval_c(C, [p[i] + w * q[i] for i in range(3)]) for w in pts]
    n = k + 1
    return [sum(vals[j] * pts[j] ** (-i) for j in range(n)) / n for i in range(n)]


def _contact_at_zero(coeffs: list, tol: float) -> tuple[int, bool]:
    """(number of roots of the line restriction clustered at 0, identically zero?)."""
    scale = max(abs(c) for c in coeffs)
    if scale == 0:
        return len(coeffs) - 1, True
    hi = list(reversed(coeffs))
    while hi and abs(hi[0]) <= tol * 1e-6 * scale:
        hi.pop(0)
    lo_k = 0
    while lo_k < len(coeffs) and abs(coeffs[lo_k]) <= 1e-30 * scale:
        lo_k += 1
    if len(hi) <= 1:
        return lo_k, False
    roots = mpmath.polyroots(hi, maxsteps=400, extraprec=200)
    rmax = max([abs(r) for r in roots] + [mpmath.mpf(1)])
    return sum(1 for r in roots if abs(r) <= tol * rmax), False


def _complement_basis(p):
    """Two vectors completing ``p`` to a basis."""
    idx = max(range(3), key=lambda i: abs(p[i]))
    basis = []
    for i in range(3):
        if i != idx:
            e = [0, 0, 0]
            e[i] = 1
            basis.append([mpmath.mpc(x) for x in e])
    return basis


def _candidate_lines(C: MPoly, p, k: int):
    """Directions q of the lines through ``p`` that can meet C only at ``p``."""
    g = [_eval_c(C.diff(v), p) for v in XYZ]
    gs = max(abs(x) for x in g)
    e1, e2 = _complement_basis(p)
    if gs > 1e-20 * max(1, max(abs(x) for x in p)) ** (k - 1):
        # smooth point: the tangent line
        a = sum(g[i] * e1[i] for i in range(3))
        b = sum(g[i] * e2[i] for i in range(3))
        if abs(b) > abs(a):
            return [[e1[i] - a / b * e2[i] for i in range(3)]], False
        return [[e2[i] - b / a * e1[i] for i in range(3)]], False
    # singular point: tangent-cone directions, from C(p + l1 e1 + l2 e2)
    out = []
    # binary form of degree mu: sample C on lam*(e1 + w e2) with small lam
    mu_coeffs = None
    for mu in range(2, k + 1):
        # coefficient of lam^mu in C(p + lam (e1 + w e2)) as a polynomial in w
        pts = [mpmath.exp(2j * mpmath.pi * j / (mu + 1)) for j in range(mu + 1)]
        vals = []
        for w in pts:
            q = [e1[i] + w * e2[i] for i in range(3)]
            vals.append(_line_restriction(C, p, q, k)[mu])
        n = mu + 1
        cs = [sum(vals[j] * pts[j] ** (-i) for j in range(n)) / n for i in range(n)]
        if max(abs(c) for c in cs) > 1e-25:
            mu_coeffs = cs
            break
    if mu_coeffs is None:
        return [], True
    hi = list(reversed(mu_coeffs))
    while hi and abs(hi[0]) < 1e-30:
        hi.pop(0)
    if len(hi) > 1:
        for w in mpmath.polyroots(hi, maxsteps=400, extraprec=200):
            out.append([e1[i] + w * e2[i] for i in range(3)])
    if len(hi) < len(mu_coeffs):
        out.append(list(e2))
    return out, True


def _special_points(C: MPoly, seed: int = 7):
    """Numeric points of C meeting its Hessian (flexes and singular points)."""
    k = C.degree()
    expected = k * 3 * (k - 2)
    u = [MPoly.var(v) for v in XYZ]
    for attempt in range(40):
        M = _general_position(seed + attempt)
        images = {XYZ[i]: u[0] * M[i][0] + u[1] * M[i][1] + u[2] * M[i][2] for i in range(3)}
        Cg = substitute(C, images).with_vars(XYZ)
        if Cg.evaluate({"x": 0, "y": 0, "z": 1}) == 0:
            continue
        H = _hessian(Cg)
        R = resultant(Cg, H, "z").with_vars(XYZ)
        # no intersection point may sit on y = 0
        if R.is_zero() or R.evaluate({"x": 1, "y": 0, "z": 0}) == 0:
            continue
        break
    else:
        return None
    R1 = R.partial_evaluate({"y": 1}).with_vars(("x",))
    coeffs = R1.univariate_coeffs("x")
    pts = []
    with mpmath.workdps(80):
        roots = polished_roots(coeffs, 80)
        total = sum(k for _, k in roots) + (expected - (len(coeffs) - 1))
        cz = Cg.partial_evaluate({"y": 1}).with_vars(("x", "z"))
        for xv, mult in roots:
            zc = [sum(mpmath.mpf(c.numerator) / c.denominator * xv ** e[0]
                      for e, c in cz.terms.items() if e[1] == j) for j in range(k + 1)]
            hi = list(reversed(zc))
            while hi and abs(hi[0]) < mpmath.mpf(10) ** -60:
                hi.pop(0)
            if len(hi) <= 1:
                continue
            zs = mpmath.polyroots(hi, maxsteps=400, extraprec=300)
            best = min(zs, key=lambda zz: abs(_eval_c(H, [xv, mpmath.mpc(1), zz])))
            q = [xv, mpmath.mpc(1), best]
            # back to the original coordinates
            p = [sum(M[i][j] * q[j] for j in range(3)) for i in range(3)]
            pts.append((p, mult))
    return pts, expected, total


def _hessian(C: MPoly) -> MPoly:
    H = [[C.diff(a).diff(b) for b in XYZ] for a in XYZ]
    return (H[0][0] * (H[1][1] * H[2][2] - H[1][2] * H[2][1])
            - H[0][1] * (H[1][0] * H[2][2] - H[1][2] * H[2][0])
            + H[0][2] * (H[1][0] * H[2][1] - H[1][1] * H[2][0])).with_vars(XYZ)


def _fmt_c(z) -> str:
    z = complex(z)
    re = 0.0 if abs(z.real) < 1e-15 else z.real
    im = 0.0 if abs(z.imag) < 1e-15 else z.imag
    return f"{re:.12g}{'+' if im >= 0 else '-'}{abs(im):.12g}i"


def tangent_cone_screen(F: MPoly, tol: float = CONE_TOL, seed: int = 7) -> TangentCone:
    """Which lines of the projectivized tangent cone could carry an irreducible arc-section."""
    C = initial_form(F.with_vars(XYZ)).with_vars(XYZ)
    m = C.degree()
    red, pieces = _reduced_form(C)
    k = red.degree()
    if k == 1:
        return TangentCone(C, m, k, "single-line", [{"kind": "all-lines", "exact": True}])
    vertex = _vertex(red)
    if vertex is not None:
        return TangentCone(C, m, k, "concurrent-lines",
                           [{"kind": "lines-through-vertex", "vertex": [str(c) for c in vertex],
                             "exact": True}])
    if k == 2:
        return TangentCone(C, m, k, "conic", [{"kind": "tangent-lines-of-conic", "exact": True}])
    found = _special_points(red, seed)
    if found is None:
        return TangentCone(C, m, k, "unknown-numeric", [], ["Hessian resultant vanished"], False)
    pts, expected, total = found
    notes = [f"{total} of {expected} Hessian intersections located (with multiplicity)"]
    certified = total == expected
    admissible = []
    contacts = []
    with mpmath.workdps(80):
        for p, mult in pts:
            lines, singular = _candidate_lines(red, p, k)
            for q in lines:
                coeffs = _line_restriction(red, p, q, k)
                contact, inside = _contact_at_zero(coeffs, tol)
                contacts.append(contact)
                if contact >= k and not inside:
                    admissible.append({"kind": "max-contact-line", "exact": False,
                                       "point": [_fmt_c(c) for c in p],
                                       "direction": [_fmt_c(c) for c in q],
                                       "singular_point": singular, "contact": contact})
    notes.append(f"contact orders found: {sorted(set(contacts))}")
    if not certified:
        return TangentCone(C, m, k, "unknown-numeric", admissible, notes, False)
    if not admissible:
        return TangentCone(C, m, k, "no-admissible-line", [], notes, True)
    cls = "reducible-with-common-point" if len(pieces) > 1 or any(a["singular_point"] for a in admissible) \
        else "max-contact-curve"
    return TangentCone(C, m, k, cls, admissible, notes, True)


# -- Prop. 6.1 style comparison ----------------------------------------------------

def _binary_roots(f: MPoly, a: str, b: str) -> list[tuple[complex, complex]]:
    """Projective roots (a:b) of a binary form, normalized with a = 1 when possible."""
    f = f.with_vars((a, b))
    k = f.degree()
    coeffs = [Fraction(0)] * (k + 1)
    for e, c in f.terms.items():
        coeffs[e[1]] = c           # f(1, w) coefficient of w^j
    out = []
    deg_w = max((j for j, c in enumerate(coeffs) if c != 0), default=0)
    if deg_w < k:
        out += [(0j, 1 + 0j)] * (k - deg_w)
    if deg_w > 0:
        for bx in univariate_roots(coeffs[:deg_w + 1], digits=30):
            out += [(1 + 0j, bx.center)] * bx.multiplicity
    return out


def _binary_squarefree(f: MPoly, a: str, b: str) -> MPoly:
    if f.is_constant():
        return f
    f = f.with_vars((a, b))
    red = MPoly.const(1)
    pieces = squarefree_decomposition(f, b)
    rest = f
    for g, k in pieces:
        rest = rest.exact_div(g ** k)
        red = red * g
    if not rest.is_constant():
        red = red * MPoly.var(a)
    return red.with_vars((a, b)).primitive()


@dataclass
class ConeDiscriminantReport:
    applicable: bool
    delta_directions: list[str]
    pencil_directions: list[str]
    exact_equal: bool | None
    max_distance: float | None
    agree: bool | None
    hypothesis: str = "projection direction assumed not to be an exceptional tangent"

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _direction_str(r) -> str:
    a, b = r
    if abs(a) < 1e-300:
        return "(0:1)"
    return f"(1:{_fmt_c(b / a)})"


def cone_discriminant_check(setup: ProjectionSetup, tol: float = PROP61_TOL) -> ConeDiscriminantReport:
    """Tangent directions of the discriminant versus the cone's pencil tangencies."""
    C = initial_form(setup.F_adapted).with_vars(XYZ)
    red, _ = _reduced_form(C)
    if red.degree() <= 1 or _vertex(red) is not None:
        return ConeDiscriminantReport(False, [], [], None, None, None,
                                      "cone is a line or a union of lines")
    D0 = initial_form(setup.delta).with_vars(("x", "y"))
    # pencil through (0:0:1): the line {(a s, b s, w)} is tangent iff C(a, b, w) has a double root
    P = discriminant_z(red, "z", normalize=True)[0].with_vars(("x", "y"))
    dd = _binary_squarefree(D0, "x", "y")
    pp = _binary_squarefree(P, "x", "y")
    exact_equal = dd == pp or dd == -pp
    r1 = _binary_roots(dd, "x", "y")
    r2 = _binary_roots(pp, "x", "y")

    def key(r):
        a, b = r
        return complex(b / a) if abs(a) > 0 else complex(1e300)

    k1 = sorted((key(r) for r in r1), key=lambda z: (z.real, z.imag))
    k2 = sorted((key(r) for r in r2), key=lambda z: (z.real, z.imag))
    dist = None
    agree = exact_equal
    if len(k1) == len(k2):
        used = set()
        dist = 0.0
        for z in k1:
            j = min((j for j in range(len(k2)) if j not in used), key=lambda j: abs(z - k2[j]))
            used.add(j)
            dist = max(dist, abs(z - k2[j]) / max(1.0, abs(z)))
        agree = exact_equal or dist <= tol
    else:
        agree = False
    rep = ConeDiscriminantReport(True, [_direction_str(r) for r in r1], [_direction_str(r) for r in r2],
                                 exact_equal, dist, agree)
    if not setup.transverse:
        rep.hypothesis = "projection direction lies on the tangent cone; comparison is informational only"
    return rep


# -- arcs and sections ------------------------------------------------------------

@dataclass
class Arc:
    """A parametrized arc ``(x(t), y(t))`` through the origin.

    Exact arcs carry MPoly components in ``param``.  Numeric arcs (truncated
    Puiseux parametrizations with irrational coefficients) carry coefficient
    lists, lowest degree first.
    """

    x: MPoly | None
    y: MPoly | None
    provenance: str
    param: str = "t"
    valid_radius: Fraction | None = None
    numeric: tuple[list, list] | None = None
    details: dict = field(default_factory=dict)

    @classmethod
    def exact(cls, x: MPoly, y: MPoly, provenance: str, param: str = "t", **details) -> "Arc":
        x = x.with_vars((param,)) if not x.used_vars() or x.used_vars() == (param,) else x
        y = y.with_vars((param,)) if not y.used_vars() or y.used_vars() == (param,) else y
        return cls(x, y, provenance, param, None, None, dict(details))

    @property
    def is_exact(self) -> bool:
        return self.numeric is None

    def tangent_direction(self) -> tuple:
        """Direction of the lowest-order term of the arc."""
        xs = self.x.univariate_coeffs(self.param) if self.x.used_vars() else [self.x.constant_value()]
        ys = self.y.univariate_coeffs(self.param) if self.y.used_vars() else [self.y.constant_value()]
        n = max(len(xs), len(ys))
        xs += [Fraction(0)] * (n - len(xs))
        ys += [Fraction(0)] * (n - len(ys))
        for a, b in zip(xs, ys):
            if a or b:
                return a, b
        return Fraction(0), Fraction(0)

    def to_dict(self) -> dict:
        out = {"provenance": self.provenance, "param": self.param, "exact": self.is_exact}
        if self.is_exact:
            out["x"] = self.x.to_str()
            out["y"] = self.y.to_str()
        else:
            out["x"] = [_fmt_c(c) for c in self.numeric[0]]
            out["y"] = [_fmt_c(c) for c in self.numeric[1]]
        if self.valid_radius is not None:
            out["valid_radius"] = str(self.valid_radius)
        for k, v in self.details.items():
            out[k] = v
        return out


def check_arc(arc: Arc) -> None:
    if not arc.is_exact:
        return
    if arc.x.constant_term() != 0 or arc.y.constant_term() != 0:
        raise ValueError("the arc does not pass through the origin")
    if arc.x.is_zero() and arc.y.is_zero():
        raise ValueError("constant arc")
    # a common reparametrization s -> s^g makes the arc non-injective
    exps = [e[0] for p in (arc.x, arc.y) for e in p.with_vars((arc.param,)).terms]
    g = 0
    for e in exps:
        g = math.gcd(g, e)
    if g > 1:
        raise ValueError(f"arc is a reparametrization by {arc.param}^{g}; not injective")


class ArcMeetsDiscriminant(ValueError):
    def __init__(self, parameter: complex):
        super().__init__(f"the arc meets the discriminant at parameter {parameter}")
        self.parameter = parameter


@dataclass
class SectionReport:
    germ: PlaneCurveGerm | None
    inside_discriminant: bool
    branch_count: int
    multiplicities: list[int]
    irreducible: bool
    reduced_irreducible: bool
    valid_radius: Fraction | None
    branches: list[dict] = field(default_factory=list)
    method: str = "exact"

    def to_dict(self) -> dict:
        return {
            "equation": self.germ.equation.to_str() if self.germ is not None else None,
            "inside_discriminant": self.inside_discriminant,
            "branch_count": self.branch_count,
            "multiplicities": list(self.multiplicities),
            "irreducible": self.irreducible,
            "reduced_irreducible": self.reduced_irreducible,
            "valid_radius": str(self.valid_radius) if self.valid_radius is not None else None,
            "branches": self.branches,
            "method": self.method,
        }


def section_equation(setup: ProjectionSetup, arc: Arc) -> MPoly:
    t = arc.param
    G = substitute(setup.F_adapted, {"x": arc.x, "y": arc.y, "z": MPoly.var("z")})
    return G.with_vars((t, "z"))


def arc_section(setup: ProjectionSetup, arc: Arc, with_branches: bool = True) -> SectionReport:
    """The germ ``F_adapted(x(t), y(t), z)`` and its branch data."""
    if not arc.is_exact:
        return _numeric_section(setup, arc)
    check_arc(arc)
    t = arc.param
    D = substitute(setup.delta, {"x": arc.x, "y": arc.y}).with_vars((t,))
    inside = D.is_zero()
    radius = None
    if not inside:
        radius = safe_radius(D, t)
        if arc.valid_radius is not None and arc.valid_radius > radius:
            coeffs = D.univariate_coeffs(t)
            hits = [b.center for b in univariate_roots(coeffs)
                    if b.radius < abs(b.center) <= float(arc.valid_radius)]
            if hits:
                raise ArcMeetsDiscriminant(min(hits, key=abs))
    G = section_equation(setup, arc)
    germ = PlaneCurveGerm(G, t, "z", reduced=inside)
    count, mults = branch_count(germ)
    branches: list[dict] = []
    if with_branches:
        try:
            branches = branch_report(puiseux_branches(germ, Fraction(4)))
        except InsufficientOrderError as exc:
            branches = branch_report(puiseux_branches(germ, exc.needed))
    return SectionReport(germ, inside, count, mults, count == 1 and mults == [1], count == 1,
                         radius, branches, "exact")


def _numeric_section(setup: ProjectionSetup, arc: Arc, rel_tol: float = 1e-10,
                     inside: bool = True) -> SectionReport:
    """Reduced section over a numerically parametrized arc lying in the discriminant.

    The fiber roots over a small circle are clustered (relative tolerance
    ``rel_tol``) and the clusters are followed once around the circle; each
    orbit of clusters is one branch of the reduced section.
    """
    xs, ys = arc.numeric
    d = setup.d
    F = setup.F_adapted
    zc = {k: c.with_vars(("x", "y")) for k, c in F.coeffs_in("z").items()}
    top = max(zc)

    def ev(poly: MPoly, xv, yv):
        acc = mpmath.mpc(0)
        for e, c in poly.terms.items():
            acc += mpmath.mpf(c.numerator) / c.denominator * xv ** e[0] * yv ** e[1]
        return acc

    def series(cs, s):
        return sum((mpmath.mpc(c) * s ** k for k, c in enumerate(cs)), mpmath.mpc(0))

    def fiber(s):
        xv, yv = series(xs, s), series(ys, s)
        hi = [ev(zc.get(k, MPoly.const(0)), xv, yv) for k in range(top, -1, -1)]
        while abs(hi[0]) == 0:
            hi.pop(0)
        roots = mpmath.polyroots(hi, maxsteps=800, extraprec=400)
        roots = sorted(roots, key=lambda r: abs(r))[:d]
        return roots

    def clusters(roots, floor):
        # roots split by the series truncation are far below the arc's own size
        scale = max([abs(r) for r in roots] + [floor])
        groups: list[list] = []
        for r in roots:
            for g in groups:
                if abs(g[0] - r) <= rel_tol * scale:
                    g.append(r)
                    break
            else:
                groups.append([r])
        return [(sum(g) / len(g), len(g)) for g in groups]

    with mpmath.workdps(60):
        rho = mpmath.mpf(1) / 2 ** 10
        while True:
            xv, yv = series(xs, rho), series(ys, rho)
            if max(abs(xv), abs(yv)) < 1e-4:
                break
            rho /= 2
        floor = abs(xv) + abs(yv)
        base = clusters(fiber(rho), floor)
        K = 64
        perm = None
        while K <= 4096 and perm is None:
            cur = [c for c, _ in base]
            ok = True
            for j in range(1, K + 1):
                s = rho * mpmath.exp(2j * mpmath.pi * j / K)
                nxt = clusters(fiber(s), floor)
                if len(nxt) != len(base):
                    ok = False
                    break
                sep = min([abs(a[0] - b[0]) for i, a in enumerate(nxt) for b in nxt[i + 1:]] + [mpmath.inf])
                new = []
                for c in cur:
                    dist = [abs(c - n[0]) for n in nxt]
                    i = min(range(len(nxt)), key=lambda i: dist[i])
                    if dist[i] >= sep / 3:
                        ok = False
                        break
                    new.append(nxt[i][0])
                if not ok:
                    break
                cur = new
            if ok:
                perm = [min(range(len(base)), key=lambda i: abs(c - base[i][0])) for c in cur]
            K *= 2
    if perm is None:
        raise TrackingError("could not follow the fiber clusters over the arc")
    seen = set()
    comps = []
    for i in range(len(base)):
        if i in seen:
            continue
        orbit = []
        j = i
        while j not in seen:
            seen.add(j)
            orbit.append(j)
            j = perm[j]
        comps.append(base[i][1])
    mults = sorted(comps, reverse=True)
    return SectionReport(None, inside, len(comps), mults, len(comps) == 1 and mults == [1],
                         len(comps) == 1, None, [], "numeric-clusters")


# -- generic arcs -----------------------------------------------------------------

def delta_tangent_form(setup: ProjectionSetup) -> MPoly:
    return initial_form(setup.delta).with_vars(("x", "y"))


def generic_directions(setup: ProjectionSetup, count: int = 5, seed: int = 0) -> list[tuple[Fraction, Fraction]]:
    """Seeded rational directions (a:b) off the tangent directions of the discriminant."""
    rng = random.Random(seed)
    T = delta_tangent_form(setup)
    out: list[tuple[Fraction, Fraction]] = []
    while len(out) < count:
        a = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        b = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        if T.evaluate({"x": a, "y": b}) == 0 or (a, b) in out:
            continue
        out.append((a, b))
    return out


@dataclass
class GenericReport:
    direction: tuple[Fraction, Fraction]
    permutation: Permutation
    radius: Fraction
    transitive: bool
    certificate: dict

    def to_dict(self) -> dict:
        return {
            "direction": [str(c) for c in self.direction],
            "permutation": self.permutation.to_cycle_str(),
            "cycle_type": list(self.permutation.cycle_type()),
            "radius": str(self.radius),
            "transitive": self.transitive,
            "certificate": self.certificate,
        }


def generic_report(setup: ProjectionSetup, direction=None, seed: int = 0, h0: float = DEFAULT_H0) -> GenericReport:
    if direction is None:
        direction = generic_directions(setup, 1, seed)[0]
    a, b = (Fraction(c) for c in direction)
    perm, cert, loop = generic_monodromy(setup.F_adapted, (a, b), setup.delta, setup.d, h0)
    return GenericReport((a, b), perm, loop.radius, len(perm.cycle_type()) == 1 and perm.degree == setup.d,
                         cert.to_dict())


def straight_arc(direction, param: str = "t") -> Arc:
    a, b = (Fraction(c) for c in direction)
    t = MPoly.var(param)
    return Arc.exact(t * a, t * b, "generic", param, direction=[str(a), str(b)])


# -- witnesses ----------------------------------------------------------------------

def _branch_series(g, lead: tuple[int, int], order: int, flip: bool) -> list[Fraction]:
    """Solve g(s1, s2) = 0 for the non-lead variable as a series in the other.

    With ``flip`` false the solution is s2 = phi(s1) (requires g01 != 0).
    """
    terms = dict(g)
    if flip:
        terms = {(j, i): c for (i, j), c in terms.items()}
    g01 = terms.get((0, 1), Fraction(0))
    if g01 == 0:
        raise ResolutionError("branch is not smooth in the expected direction")
    phi = [Fraction(0)] * (order + 1)
    for _ in range(order + 1):
        # phi <- -(g - g01*s2)(s1, phi)/g01, truncated
        powers = [[Fraction(1)] + [Fraction(0)] * order]
        new = [Fraction(0)] * (order + 1)
        maxj = max(j for _, j in terms)
        for j in range(1, maxj + 1):
            prev = powers[-1]
            cur = [Fraction(0)] * (order + 1)
            for a, x in enumerate(prev):
                if x:
                    for b, y in enumerate(phi[: order + 1 - a]):
                        if y:
                            cur[a + b] += x * y
            powers.append(cur)
        for (i, j), c in terms.items():
            if (i, j) == (0, 1):
                continue
            for k, val in enumerate(powers[j]):
                if val and i + k <= order:
                    new[i + k] -= c * val / g01
        phi = new
    return phi


def _frame_terms(chart, crossing: NormalCrossing, eq: MPoly) -> dict[tuple[int, int], Fraction]:
    from .resolve import _frame_poly
    _, exact = _frame_poly(eq, crossing.point, crossing.frame, True)
    return exact


def witness_irreducible_arc(setup: ProjectionSetup, tree: ResolutionTree, crossing: NormalCrossing,
                            exponents: tuple[int, int], orders: tuple[int, int],
                            seed: int = 0, param: str = "t") -> Arc:
    """Arc realizing ``P1^a P2^b`` at ``crossing``, pushed down and checked.

    In the crossing frame the arc is ``s2 - phi1(s1) = c2 t^a``,
    ``s1 - psi2(s2) = c1 t^b`` where ``s2 = phi1(s1)`` and ``s1 = psi2(s2)``
    are the two branches.
    """
    a, b = exponents
    a = a or orders[0]
    b = b or orders[1]
    g = math.gcd(a, b)
    a, b = a // g, b // g
    chart = tree.chart(crossing.chart_id)
    rng = random.Random(seed)
    if not crossing.exact:
        return _numeric_witness(setup, chart, crossing, (a, b), exponents, rng, param)
    N = 2 * (a + b) + 2
    B1, B2 = crossing.branch_pair
    phi1 = _branch_series(_frame_terms(chart, crossing, B1.equation), (0, 1), N, False)
    psi2 = _branch_series(_frame_terms(chart, crossing, B2.equation), (1, 0), N, True)
    r1, r2 = crossing.disk_radii
    t = MPoly.var(param)
    for attempt in range(20):
        c1 = r1 * Fraction(rng.randint(1, 7), 8)
        c2 = r2 * Fraction(rng.randint(1, 7), 8)
        s1, s2 = t ** b * c1, t ** a * c2
        for _ in range(N):
            s1n = t ** b * c1 + _compose_series(psi2, s2, param, N)
            s2n = t ** a * c2 + _compose_series(phi1, s1, param, N)
            s1, s2 = s1n, s2n
        (m11, m12), (m21, m22) = crossing.frame
        u = s1 * m11 + s2 * m12 + crossing.point[0]
        v = s1 * m21 + s2 * m22 + crossing.point[1]
        x = substitute(chart.map_to_base[0], {"u": u, "v": v}).with_vars((param,))
        y = substitute(chart.map_to_base[1], {"u": u, "v": v}).with_vars((param,))
        arc = Arc.exact(x, y, "chart-pushdown", param, chart=chart.id, crossing=crossing.id,
                        exponents=[exponents[0], exponents[1]])
        try:
            check_arc(arc)
            rep = arc_section(setup, arc, with_branches=False)
        except (ValueError, GermError):
            continue
        if rep.inside_discriminant:
            continue
        if not rep.irreducible:
            raise WitnessValidationError(
                f"arc at {crossing.id} with exponents {exponents} has {rep.branch_count} branches")
        return arc
    raise WitnessValidationError(f"no valid witness constants at {crossing.id}")


def _series_mul(p: list, q: list, N: int) -> list:
    out = [0j] * (N + 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q[: N + 1 - i]):
                out[i + j] += x * y
    return out


def _series_compose_numeric(phi: list, s: list, N: int) -> list:
    out = [0j] * (N + 1)
    p = [1 + 0j] + [0j] * N
    for k, c in enumerate(phi):
        if k:
            p = _series_mul(p, s, N)
        if c:
            out = [o + c * v for o, v in zip(out, p)]
    return out


def _numeric_witness(setup: ProjectionSetup, chart, crossing: NormalCrossing, ab: tuple[int, int],
                     exponents, rng: random.Random, param: str) -> Arc:
    """Witness at a crossing with irrational coordinates.

    The arc has floating-point coefficients; its section is checked by
    following the fiber roots around a small circle.
    """
    from .resolve import _frame_poly
    a, b = ab
    N = 2 * (a + b) + 2
    B1, B2 = crossing.branch_pair
    g1, _ = _frame_poly(B1.equation, crossing.point, crossing.frame, False)
    g2, _ = _frame_poly(B2.equation, crossing.point, crossing.frame, False)
    phi1 = _branch_series({e: complex(c) for e, c in g1.items()}, (0, 1), N, False)
    psi2 = _branch_series({e: complex(c) for e, c in g2.items()}, (1, 0), N, True)
    r1, r2 = (float(r) for r in crossing.disk_radii)
    (m11, m12), (m21, m22) = (tuple(complex(v) for v in row) for row in crossing.frame)
    p0, p1 = (complex(v) for v in crossing.point)
    for _ in range(20):
        c1 = r1 * rng.randint(1, 7) / 8
        c2 = r2 * rng.randint(1, 7) / 8
        mono1 = [0j] * (N + 1)
        mono2 = [0j] * (N + 1)
        mono1[b] = c1
        mono2[a] = c2
        s1, s2 = list(mono1), list(mono2)
        for _ in range(N):
            s1n = [m + v for m, v in zip(mono1, _series_compose_numeric(psi2, s2, N))]
            s2n = [m + v for m, v in zip(mono2, _series_compose_numeric(phi1, s1, N))]
            s1, s2 = s1n, s2n
        u = [m11 * x + m12 * y for x, y in zip(s1, s2)]
        v = [m21 * x + m22 * y for x, y in zip(s1, s2)]
        u[0] += p0
        v[0] += p1
        images = {"u": {(k,): c for k, c in enumerate(u) if c}, "v": {(k,): c for k, c in enumerate(v) if c}}
        comps = []
        for m in chart.map_to_base:
            img = compose(m.with_vars(("u", "v")), images, 1)
            cs = [0j] * (N + 1)
            for (k,), c in img.items():
                if k <= N:
                    cs[k] += c
            cs[0] = 0j        # the arc passes through the origin by construction
            comps.append(cs)
        arc = Arc(None, None, "chart-pushdown", param, None, (comps[0], comps[1]),
                  {"chart": chart.id, "crossing": crossing.id,
                   "exponents": [exponents[0], exponents[1]], "validation": "numeric"})
        try:
            rep = _numeric_section(setup, arc, inside=False)
        except TrackingError:
            continue
        if rep.branch_count == 1 and rep.multiplicities == [1]:
            return arc
        raise WitnessValidationError(
            f"numeric arc at {crossing.id} with exponents {exponents} has {rep.branch_count} branches")
    raise WitnessValidationError(f"no valid witness constants at {crossing.id}")


def _compose_series(phi: list[Fraction], s: MPoly, param: str, N: int) -> MPoly:
    out = MPoly.const(0)
    p = MPoly.const(1)
    for k, c in enumerate(phi):
        if k:
            p = _truncate(p * s, param, N)
        if c:
            out = out + p * c
    return _truncate(out, param, N)


def _truncate(f: MPoly, param: str, N: int) -> MPoly:
    g = f.with_vars((param,))
    return MPoly._raw({e: c for e, c in g.terms.items() if e[0] <= N}, g.vars)


def totally_reducible_arc(setup: ProjectionSetup, seed: int = 0, h0: float = DEFAULT_H0,
                          param: str = "t") -> tuple[Arc, SectionReport]:
    """An arc whose section has exactly ``d`` branches.

    The straight arc in a generic direction (a:b) has some permutation of
    order k; the arc ``t^k (a, b + t)`` winds k times around it, so its
    monodromy is trivial.
    """
    rng_dirs = generic_directions(setup, 5, seed)
    for a, b in rng_dirs:
        rep = generic_report(setup, (a, b), seed, h0)
        k = rep.permutation.order()
        t = MPoly.var(param)
        arc = Arc.exact(t ** k * a, t ** k * b + t ** (k + 1), "totally-reducible", param,
                        generic_order=k, direction=[str(a), str(b)])
        sec = arc_section(setup, arc, with_branches=False)
        if sec.branch_count == setup.d and sec.multiplicities == [1] * setup.d:
            return arc, sec
    raise WitnessValidationError("no totally reducible arc found among the sampled directions")


# -- discriminant branches ----------------------------------------------------------

@dataclass
class BranchSection:
    branch_id: str
    factor: str
    arc: Arc
    section: SectionReport | None
    prunable: bool
    error: str | None = None

    def to_dict(self) -> dict:
        return {
            "branch": self.branch_id,
            "factor": self.factor,
            "arc": self.arc.to_dict(),
            "section": self.section.to_dict() if self.section else None,
            "prunable": self.prunable,
            "error": self.error,
        }


def discriminant_branch_arcs(setup: ProjectionSetup, order: int = 12) -> list[tuple[str, str, Arc]]:
    """Parametrizations of the branches of the discriminant at the origin."""
    D = setup.delta
    uv = substitute(D, {"x": MPoly.var("u"), "y": MPoly.var("v")}).with_vars(("u", "v"))
    out = []
    s = MPoly.var("t")
    for k, (f, _) in enumerate(strict_factors(uv), start=1):
        fx = substitute(f, {"u": MPoly.var("x"), "v": MPoly.var("y")}).with_vars(("x", "y"))
        if fx.partial_evaluate({"x": 0}).is_zero():
            # a power of x: the branch x = 0
            out.append((f"D{k}.1", fx.to_str(), Arc.exact(MPoly.const(0), s, "discriminant-branch", "t")))
            continue
        germ = PlaneCurveGerm(fx, "x", "y")
        try:
            branches = puiseux_branches(germ, Fraction(order))
        except InsufficientOrderError as exc:
            branches = puiseux_branches(germ, exc.needed + order)
        for j, br in enumerate(branches, start=1):
            bid = f"D{k}.{j}"
            e = br.ramification_index
            if br.exact:
                x = MPoly.monomial({"t": e}, br.lam)
                y = MPoly.from_univariate(br.tau_series, "t")
                out.append((bid, fx.to_str(), Arc.exact(x, y, "discriminant-branch", "t",
                                                        branch=bid)))
            else:
                lam, ser = br.numeric_parametrization()
                arc = Arc(None, None, "discriminant-branch", "t", None,
                          ([mpmath.mpc(lam) if i == e else mpmath.mpc(0) for i in range(e + 1)],
                           [mpmath.mpc(c) for c in ser]), {"branch": bid})
                out.append((bid, fx.to_str(), arc))
    return out


def screen_discriminant_branches(setup: ProjectionSetup, order: int = 12) -> list[BranchSection]:
    """Reduced sections over each discriminant branch; reducible ones are prunable."""
    out = []
    for bid, factor, arc in discriminant_branch_arcs(setup, order):
        try:
            if arc.is_exact:
                D = substitute(setup.delta, {"x": arc.x, "y": arc.y}).with_vars(("t",))
                if not D.is_zero():
                    # truncated series: treat it numerically
                    xs = arc.x.univariate_coeffs("t") if arc.x.used_vars() else [arc.x.constant_value()]
                    ys = arc.y.univariate_coeffs("t") if arc.y.used_vars() else [arc.y.constant_value()]
                    arc = Arc(None, None, arc.provenance, "t", None,
                              ([mpmath.mpf(c.numerator) / c.denominator for c in xs],
                               [mpmath.mpf(c.numerator) / c.denominator for c in ys]), arc.details)
            sec = arc_section(setup, arc, with_branches=False)
            out.append(BranchSection(bid, factor, arc, sec, not sec.reduced_irreducible))
        except (TrackingError, GermError, ValueError) as exc:
            out.append(BranchSection(bid, factor, arc, None, False, str(exc)))
    return out


# -- the decision ----------------------------------------------------------------

@dataclass
class CrossingReport:
    crossing: NormalCrossing
    monodromy: CrossingMonodromy | None
    group: PermGroupReport | None
    pruned: bool = False
    error: str | None = None

    def to_dict(self) -> dict:
        out = {"id": self.crossing.id, "chart": self.crossing.chart_id,
               "branches": [d.label for d in self.crossing.branch_pair],
               "total_multiplicity": self.crossing.total_multiplicity,
               "pruned": self.pruned, "error": self.error}
        out.update({"point": self.crossing.to_dict()["point"],
                    "disk_radii": [str(r) for r in self.crossing.disk_radii],
                    "basepoint": self.crossing.to_dict()["basepoint"]})
        if self.monodromy is not None:
            m = self.monodromy
            out["P1"] = m.P1.to_cycle_str()
            out["P2"] = m.P2.to_cycle_str()
            out["cycle_types"] = [list(m.P1.cycle_type()), list(m.P2.cycle_type())]
            out["commute"] = m.commute
            out["certificates"] = [c.to_dict() for c in m.certificates]
            if m.braids is not None:
                out["braids"] = [str(w) for w in m.braids]
        if self.group is not None:
            out["group"] = self.group.to_dict()
        return out


@dataclass
class Verdict:
    exists_irreducible: str                   # "yes" | "no" | "unknown"
    witnesses: list[Arc]
    crossings: list[CrossingReport]
    totally_reducible_witness: Arc | None
    generic: GenericReport | None
    tree: ResolutionTree | None
    notes: list[str] = field(default_factory=list)
    errors: list[dict] = field(default_factory=list)
    branch_screen: list[BranchSection] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "exists_irreducible": self.exists_irreducible,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "totally_reducible_witness": (self.totally_reducible_witness.to_dict()
                                          if self.totally_reducible_witness else None),
            "generic": self.generic.to_dict() if self.generic else None,
            "crossings": [c.to_dict() for c in self.crossings],
            "branch_screen": [b.to_dict() for b in self.branch_screen],
            "notes": list(self.notes),
        }


def _run_crossing(setup, tree, x, h0, braids) -> CrossingReport:
    try:
        mono = crossing_monodromies(setup.F_adapted, tree, x, d=setup.d, h0=h0, braids=braids)
    except TrackingError as exc:
        return CrossingReport(x, None, None, error=str(exc))
    try:
        grp = generated_group(mono.P1, mono.P2)
    except GroupCapExceeded as exc:
        return CrossingReport(x, mono, None, error=str(exc))
    return CrossingReport(x, mono, grp)


def _pruned_labels(tree: ResolutionTree, screen: list[BranchSection]) -> set[str]:
    """Strict labels all of whose branches have reducible reduced sections."""
    by_factor: dict[str, list[bool]] = {}
    for b in screen:
        by_factor.setdefault(b.branch_id.split(".")[0], []).append(b.prunable)
    return {lab for lab, flags in by_factor.items() if flags and all(flags)}


def analyze(setup: ProjectionSetup, seed: int = 0, h0: float = DEFAULT_H0, prune: bool = True,
            workers: int = 1, braids: bool = False, depth_cap: int = 32,
            generic_first: bool = True) -> Verdict:
    """Run the full decision for one projection; see the module notes."""
    notes: list[str] = []
    errors: list[dict] = []
    try:
        delta = setup.delta
    except ProjectionError as exc:
        return Verdict("unknown", [], [], None, None, None, notes, [{"stage": "discriminant", "message": str(exc)}])
    generic = None
    if generic_first:
        try:
            generic = generic_report(setup, None, seed, h0)
        except TrackingError as exc:
            errors.append({"stage": "generic", "message": str(exc)})
    tr_arc = None
    try:
        tr_arc, _ = totally_reducible_arc(setup, seed, h0)
    except (WitnessValidationError, TrackingError, GermError) as exc:
        errors.append({"stage": "totally-reducible", "message": str(exc)})
    if generic is not None and generic.transitive:
        arc = straight_arc(generic.direction)
        sec = arc_section(setup, arc, with_branches=False)
        if not sec.irreducible:
            raise WitnessValidationError("generic arc with a d-cycle has a reducible section")
        notes.append("generic straight arc already gives an irreducible section")
        return Verdict("yes", [arc], [], tr_arc, generic, None, notes, errors)
    try:
        tree = resolve_embedded(delta, depth_cap)
    except ResolutionError as exc:
        errors.append({"stage": "resolve", "message": str(exc)})
        return Verdict("unknown", [], [], tr_arc, generic, None, notes, errors)
    screen: list[BranchSection] = []
    pruned: set[str] = set()
    if prune:
        screen = screen_discriminant_branches(setup)
        pruned = _pruned_labels(tree, screen)
        if pruned:
            notes.append(f"branches with reducible sections excluded from the witness search: {sorted(pruned)}")
    crossings = tree.crossings
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            ctx = contextvars.copy_context()
            futs = [pool.submit(ctx.copy().run, _run_crossing, setup, tree, x, h0, braids) for x in crossings]
            reports = [f.result() for f in futs]
    else:
        reports = [_run_crossing(setup, tree, x, h0, braids) for x in crossings]
    for r in reports:
        r.pruned = any(d.label in pruned for d in r.crossing.branch_pair)
        if r.error:
            errors.append({"stage": "crossing", "crossing": r.crossing.id, "message": r.error})
        elif not r.monodromy.commute:
            errors.append({"stage": "crossing", "crossing": r.crossing.id,
                           "message": "meridian permutations do not commute"})
    witnesses: list[Arc] = []
    order = sorted(reports, key=lambda r: (r.crossing.total_multiplicity, r.crossing.id))
    unknown = any(r.error for r in reports)
    for r in order:
        if r.group is None or r.pruned or not r.group.has_transitive:
            continue
        if r.group.capped:
            unknown = True
            continue
        m = r.monodromy
        arc = witness_irreducible_arc(setup, tree, r.crossing, r.group.witness_exponents,
                                      (m.P1.order(), m.P2.order()), seed)
        if not arc.is_exact:
            notes.append(f"crossing {r.crossing.id} has irrational coordinates; "
                         "the witness arc has floating-point coefficients")
        witnesses.append(arc)
        break
    if witnesses:
        return Verdict("yes", witnesses, reports, tr_arc, generic, tree, notes, errors, screen)
    if any(r.group is not None and r.group.has_transitive is None for r in reports):
        unknown = True
    return Verdict("unknown" if unknown else "no", [], reports, tr_arc, generic, tree, notes, errors, screen)
