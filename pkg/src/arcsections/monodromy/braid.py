"""Braid words read off tracked root trajectories."""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from ..group import Permutation
from ..polyarith import MPoly
from .tracking import DEFAULT_H0, LoopSpec, TrackingError, run_loop


class ProjectionDegeneracy(TrackingError):
    pass


@dataclass(frozen=True)
class BraidWord:
    """Artin generators as signed 0-based indices: ``+i`` is sigma_i, ``-(i+1)`` its inverse."""

    letters: tuple[tuple[int, int], ...]   # (generator index, exponent sign)
    strands: int
    angle: float = 0.0

    def permutation(self) -> Permutation:
        """Label permutation of the word (position p starts with strand p)."""
        pos = list(range(self.strands))
        for i, _ in self.letters:
            pos[i], pos[i + 1] = pos[i + 1], pos[i]
        images = [0] * self.strands
        for p, strand in enumerate(pos):
            images[strand] = p
        return Permutation(tuple(images))

    def freely_reduced(self) -> "BraidWord":
        """Cancel adjacent ``s_i s_i^-1`` pairs."""
        stack: list[tuple[int, int]] = []
        for letter in self.letters:
            if stack and stack[-1][0] == letter[0] and stack[-1][1] == -letter[1]:
                stack.pop()
            else:
                stack.append(letter)
        return BraidWord(tuple(stack), self.strands, self.angle)

    def to_str(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"s{i}" if e > 0 else f"s{i}^-1" for i, e in self.letters)

    def __str__(self) -> str:
        return self.to_str()


def _events(prev: list[complex], cur: list[complex], rot: complex):
    """Real-part order swaps between two consecutive samples, in time order."""
    pr = [z * rot for z in prev]
    cr = [z * rot for z in cur]
    out = []
    n = len(pr)
    for a in range(n):
        for b in range(a + 1, n):
            d0 = pr[a].real - pr[b].real
            d1 = cr[a].real - cr[b].real
            if d0 == 0 or d1 == 0:
                raise ProjectionDegeneracy("two roots share a real part at a sample")
            if (d0 < 0) != (d1 < 0):
                tau = d0 / (d0 - d1)
                ia = pr[a].imag + tau * (cr[a].imag - pr[a].imag)
                ib = pr[b].imag + tau * (cr[b].imag - pr[b].imag)
                out.append((tau, a, b, ia, ib))
    out.sort()
    return out


def braid_from_trajectory(traj: list[list[complex]], angle: float = 0.0) -> BraidWord:
    rot = cmath.exp(-1j * angle)
    n = len(traj[0])
    first = [z * rot for z in traj[0]]
    order = sorted(range(n), key=lambda i: (first[i].real, first[i].imag))
    letters = []
    for prev, cur in zip(traj, traj[1:]):
        for _, a, b, ia, ib in _events(prev, cur, rot):
            pa, pb = order.index(a), order.index(b)
            if abs(pa - pb) != 1:
                raise ProjectionDegeneracy("non-adjacent strands swapped in one step")
            lo = min(pa, pb)
            left = order[lo]
            # positive crossing when the strand moving right passes below
            ileft = ia if left == a else ib
            iright = ib if left == a else ia
            sign = 1 if ileft < iright else -1
            letters.append((lo, sign))
            order[lo], order[lo + 1] = order[lo + 1], order[lo]
    return BraidWord(tuple(letters), n, angle)


def compute_braid(F: MPoly, loop: LoopSpec, d: int | None = None, h0: float = DEFAULT_H0,
                  angles=(0.0, 1e-3, -2e-3, 5e-3), delta: MPoly | None = None) -> tuple[BraidWord, Permutation]:
    """Braid word of the local fiber roots around ``loop`` and the tracked permutation.

    Strands are ordered by real part (ties by imaginary part).  On a
    degenerate projection the convention angle is perturbed and retried.
    """
    res = run_loop(F, loop, d=d, delta=delta, h0=h0, record=True)
    traj = [[row[i] for i in res.local] for row in res.trajectory]
    last = None
    for ang in angles:
        try:
            word = braid_from_trajectory(traj, ang)
        except ProjectionDegeneracy as exc:
            last = exc
            continue
        if ang == 0.0 and word.permutation() != res.permutation:
            last = ProjectionDegeneracy("braid and tracked permutation disagree")
            continue
        return word.freely_reduced(), res.permutation
    raise last or ProjectionDegeneracy("no usable projection angle")
