"""Certified tracking of fiber roots along circular loops in the base."""

from __future__ import annotations

import contextlib
import contextvars
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from ..group import Permutation
from ..polyarith import MPoly, discriminant_z, substitute, univariate_roots
from ..polyarith.numeric import compose

if os.environ.get("ARCSECTIONS_PURE") == "1":
    from . import _kernel_py as _kernel
    KERNEL = "python"
else:
    try:
        from . import _kernel  # type: ignore[attr-defined]
        KERNEL = "compiled"
    except ImportError:  # pragma: no cover - depends on the build
        from . import _kernel_py as _kernel
        KERNEL = "python"

from . import _kernel_py

DEFAULT_H0 = 2 * math.pi / 64
MAX_STEPS = 2 ** 20
TWO_PI = 2 * math.pi

# (working digits for basepoint roots, step cap); overridable per job
_SETTINGS: contextvars.ContextVar[tuple[int, int]] = contextvars.ContextVar(
    "tracking_settings", default=(30, MAX_STEPS))


@contextlib.contextmanager
def tracking_settings(digits: int | None = None, max_steps: int | None = None):
    """Override the default working digits and step cap inside the block."""
    cur = _SETTINGS.get()
    token = _SETTINGS.set((digits or cur[0], max_steps or cur[1]))
    try:
        yield
    finally:
        _SETTINGS.reset(token)


class TrackingError(RuntimeError):
    """Tracking could not be certified; callers must not guess a result."""


class LoopTouchesDiscriminant(TrackingError):
    pass


@dataclass(frozen=True)
class LoopSpec:
    """Loop ``s = center + radius * exp(i theta)`` pushed to the base by ``images``.

    ``images`` maps every base variable of the surface to a polynomial in
    ``param``.  The basepoint is the image of ``s = center + radius``.
    """

    images: tuple[tuple[str, MPoly], ...]
    center: Fraction = Fraction(0)
    radius: Fraction = Fraction(1)
    param: str = "s"
    label: str = ""
    numeric: tuple[tuple[str, tuple[complex, ...]], ...] | None = None

    @classmethod
    def make(cls, images: Mapping[str, MPoly], center=0, radius=1, param="s", label=""):
        return cls(tuple(sorted(images.items())), Fraction(center), Fraction(radius), param, label)

    @classmethod
    def make_numeric(cls, images: Mapping[str, Sequence[complex]], center=0, radius=1,
                     param="s", label=""):
        """Loop whose base images are polynomials in ``param`` with complex
        coefficients (lowest degree first)."""
        num = tuple(sorted((v, tuple(complex(c) for c in cs)) for v, cs in images.items()))
        return cls((), Fraction(center), Fraction(radius), param, label, num)

    @property
    def is_numeric(self) -> bool:
        return self.numeric is not None

    def mapping(self) -> dict[str, MPoly]:
        if self.is_numeric:
            raise TypeError("numeric loop has no exact images")
        return dict(self.images)

    def basepoint(self) -> dict:
        s0 = self.center + self.radius
        if self.is_numeric:
            return {v: sum(c * complex(s0) ** k for k, c in enumerate(cs)) for v, cs in self.numeric}
        return {v: img.evaluate({self.param: s0}) if img.vars else img.constant_value()
                for v, img in self.images}

    def npoly_images(self, nvars: int = 1) -> dict[str, dict]:
        """Images as numeric polynomials in ``(param,)`` padded to ``nvars``."""
        pad = (0,) * (nvars - 1)
        if self.is_numeric:
            return {v: {(k,) + pad: c for k, c in enumerate(cs) if c} or {(0,) + pad: 0j}
                    for v, cs in self.numeric}
        out = {}
        for v, img in self.images:
            g = img.with_vars((self.param,))
            out[v] = {(e[0],) + pad: complex(c) for e, c in g.terms.items()} or {(0,) + pad: 0j}
        return out


@dataclass
class TrackingCertificate:
    steps: int
    rejections: int
    min_separation: float
    max_step_ratio: float
    refinement_passes: int
    avoidance_margin: float
    avoidance_samples: int
    kernel: str
    h0: float

    @property
    def matching_ok(self) -> bool:
        return self.max_step_ratio < 1.0 / 3.0

    def to_dict(self) -> dict:
        return {
            "steps": self.steps,
            "rejections": self.rejections,
            "min_separation": self.min_separation,
            "max_step_ratio": self.max_step_ratio,
            "refinement_passes": self.refinement_passes,
            "avoidance_margin": self.avoidance_margin,
            "avoidance_samples": self.avoidance_samples,
            "kernel": self.kernel,
        }


@dataclass
class FiberFamily:
    """``G(s, z)`` with exact coefficients (``None`` for numeric loops) and
    its complex coefficient array ``A[k, j]`` (``z^k s^j``)."""

    G: MPoly | None
    param: str
    zvar: str
    A: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, F: MPoly, loop: LoopSpec, zvar: str = "z") -> "FiberFamily":
        if loop.is_numeric:
            images = loop.npoly_images(2)
            images[zvar] = {(0, 1): 1 + 0j}
            N = compose(F, images, 2)
            dz = max(e[1] for e in N)
            ns = max(e[0] for e in N)
            A = np.zeros((dz + 1, ns + 1), dtype=np.complex128)
            for (j, k), c in N.items():
                A[k, j] += c
            while dz > 0 and not np.any(A[dz]):
                dz -= 1
            return cls(None, loop.param, zvar, A[:dz + 1])
        mapping = loop.mapping()
        mapping[zvar] = MPoly.var(zvar)
        G = substitute(F, mapping).with_vars((loop.param, zvar))
        coeffs = G.coeffs_in(zvar)
        dz = max(coeffs)
        ns = max((c.degree(loop.param) for c in coeffs.values()), default=0)
        A = np.zeros((dz + 1, ns + 1), dtype=np.complex128)
        for k, c in coeffs.items():
            for e, val in c.terms.items():
                A[k, e[0] if e else 0] = float(val)
        return cls(G, loop.param, zvar, A)

    def exact_fiber(self, s0: Fraction) -> list:
        """Coefficients (lowest first) of ``G(s0, z)``; complex for numeric loops."""
        if self.G is None:
            return [complex(np.polynomial.polynomial.polyval(complex(s0), row)) for row in self.A]
        coeffs = self.G.coeffs_in(self.zvar)
        out = [Fraction(0)] * (max(coeffs) + 1)
        for k, c in coeffs.items():
            out[k] = c.evaluate({self.param: s0}) if c.vars else c.constant_value()
        return out


def _shifted_coeffs(P, param: str, center: Fraction, radius: Fraction) -> list:
    """Coefficients of P(center + radius*w) in w; exact for an MPoly ``P``,
    complex for a coefficient list."""
    if isinstance(P, MPoly):
        coeffs = P.univariate_coeffs(param) if P.used_vars() else [P.constant_value()]
    else:
        coeffs = list(P)
    n = len(coeffs)
    out = [Fraction(0)] * n
    for j, c in enumerate(coeffs):
        if not c:
            continue
        for k in range(j + 1):
            out[k] += c * math.comb(j, k) * center ** (j - k) * radius ** k
    return out


def certify_avoidance(P, param: str, center: Fraction, radius: Fraction,
                      max_samples: int = 2 ** 16) -> tuple[float, int]:
    """Lower bound for |P| on the circle, via samples plus a Lipschitz bound.

    Returns ``(margin, samples)``; raises :class:`LoopTouchesDiscriminant` if
    no positive margin is obtained.
    """
    if (P.is_zero() if isinstance(P, MPoly) else not any(P)):
        raise LoopTouchesDiscriminant("the loop lies inside the discriminant")
    B = np.array([complex(c) for c in _shifted_coeffs(P, param, center, radius)], dtype=np.complex128)
    # normalize to avoid overflow on high degrees
    scale = np.max(np.abs(B))
    B = B / scale
    lip = float(np.sum(np.arange(len(B)) * np.abs(B)))
    err = 1e-13 * float(np.sum(np.abs(B))) * max(1, len(B))
    N = 64
    while N <= max_samples:
        theta = np.linspace(0.0, TWO_PI, N, endpoint=False)
        vals = np.polynomial.polynomial.polyval(np.exp(1j * theta), B)
        low = float(np.min(np.abs(vals)))
        margin = low - lip * math.pi / N
        if margin > 10 * err:
            return margin * float(scale), N
        N *= 2
    raise LoopTouchesDiscriminant(
        f"could not bound the discriminant away from zero on |{param}-{center}|={radius}")


def _avoid_poly(F: MPoly, fam: FiberFamily, loop: LoopSpec, delta: MPoly | None):
    if loop.is_numeric:
        if delta is None:
            raise TrackingError("numeric loops need the discriminant")
        D = compose(delta, loop.npoly_images(1), 1)
        dv = np.zeros(max(e[0] for e in D) + 1, dtype=np.complex128)
        for (j,), c in D.items():
            dv[j] += c
        return list(np.polynomial.polynomial.polymul(dv, fam.A[-1]))
    lc = fam.G.coeffs_in(fam.zvar)[max(fam.G.coeffs_in(fam.zvar))]
    if delta is not None:
        mapping = loop.mapping()
        D = substitute(delta, mapping) if delta.used_vars() else delta
    else:
        D, _ = discriminant_z(fam.G, fam.zvar, normalize=False)
    return (D * lc).with_vars((loop.param,))


def _initial_roots(fam: FiberFamily, s0: Fraction, digits: int) -> list[complex]:
    boxes = univariate_roots(fam.exact_fiber(s0), digits=digits)
    if any(b.multiplicity > 1 for b in boxes):
        raise LoopTouchesDiscriminant("repeated root at the basepoint")
    return [b.center for b in boxes]


def _match(final: list[complex], start: list[complex]) -> list[int]:
    n = len(start)
    sep = min((abs(start[i] - start[j]) for i in range(n) for j in range(i + 1, n)), default=math.inf)
    out = []
    for z in final:
        dists = [abs(z - w) for w in start]
        j = int(np.argmin(dists))
        if dists[j] >= sep / 3:
            raise TrackingError("endpoint does not match a basepoint root")
        out.append(j)
    if sorted(out) != list(range(n)):
        raise TrackingError("endpoint matching is not a bijection")
    return out


def _local_indices(roots: list[complex], d: int) -> list[int]:
    order = sorted(range(len(roots)), key=lambda i: abs(roots[i]))
    local = order[:d]
    if d < len(roots):
        inner = abs(roots[order[d - 1]])
        outer = abs(roots[order[d]])
        if not inner < 0.5 * outer:
            raise TrackingError("local roots are not separated from the remaining roots")
    return sorted(local)


@dataclass
class LoopResult:
    permutation: Permutation
    certificate: TrackingCertificate
    roots: list[complex]
    full_permutation: Permutation
    local: list[int]
    thetas: list[float] | None = None
    trajectory: list[list[complex]] | None = None


def run_loop(F: MPoly, loop: LoopSpec, d: int | None = None, delta: MPoly | None = None,
             h0: float = DEFAULT_H0, max_steps: int | None = None, digits: int | None = None,
             record: bool = False, kernel=None, certify: bool = True, zvar: str = "z") -> LoopResult:
    """Track every fiber root once around ``loop``; see :func:`track_loop`."""
    dflt_digits, dflt_steps = _SETTINGS.get()
    digits = digits or dflt_digits
    max_steps = max_steps or dflt_steps
    fam = FiberFamily.build(F, loop, zvar)
    margin, samples = 0.0, 0
    if certify:
        margin, samples = certify_avoidance(_avoid_poly(F, fam, loop, delta), loop.param,
                                            loop.center, loop.radius)
    s0 = loop.center + loop.radius
    start = _initial_roots(fam, s0, digits)
    n = len(start)
    if d is None:
        d = n
    local = _local_indices(start, d)
    k = _kernel_py if (record and kernel is None) else (kernel or _kernel)
    kname = "python" if k is _kernel_py else KERNEL
    out = k.track_arc(fam.A, complex(loop.center), float(loop.radius), 0.0, TWO_PI,
                      start, h0, max_steps, record)
    final, status, steps, rej, minsep, ratio, thetas, traj = out
    if status != 0:
        raise TrackingError(f"path tracking did not certify (status {status}, {steps} steps)")
    images = _match(list(final), start)
    order = sorted(range(n), key=lambda i: (start[i].real, start[i].imag))
    rank = {idx: r for r, idx in enumerate(order)}
    full = Permutation(tuple(rank[images[order[r]]] for r in range(n)))
    # restriction to the local sheets
    local_sorted = sorted(local, key=lambda i: (start[i].real, start[i].imag))
    lrank = {idx: r for r, idx in enumerate(local_sorted)}
    try:
        sub = Permutation(tuple(lrank[images[i]] for i in local_sorted))
    except KeyError as exc:
        raise TrackingError("local sheets are not invariant under the loop") from exc
    cert = TrackingCertificate(steps, rej, float(minsep), float(ratio), 0, float(margin),
                               samples, kname, h0)
    if not cert.matching_ok:
        raise TrackingError("matching-radius criterion violated")
    roots_sorted = [start[i] for i in local_sorted]
    return LoopResult(sub, cert, roots_sorted, full, local_sorted, thetas, traj)


def track_loop(F: MPoly, loop: LoopSpec, d: int | None = None, delta: MPoly | None = None,
               h0: float = DEFAULT_H0, max_steps: int | None = None, digits: int | None = None,
               kernel=None, zvar: str = "z") -> tuple[Permutation, TrackingCertificate]:
    """Monodromy permutation of the fiber roots around ``loop``.

    Labels are the basepoint roots sorted by (real, imaginary) part;
    ``perm[i]`` is the label reached by continuing root ``i`` once around.
    With ``d`` given, only the ``d`` roots of smallest modulus are reported.
    """
    res = run_loop(F, loop, d, delta, h0, max_steps, digits, False, kernel, True, zvar)
    return res.permutation, res.certificate
