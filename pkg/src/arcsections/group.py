"""Permutations of fiber labels and the groups they generate."""

from __future__ import annotations

import math
import re
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class GroupCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``{0, ..., d-1}``; ``images[i]`` is where label ``i`` goes."""

    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a permutation: {imgs}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, d: int) -> "Permutation":
        return cls(tuple(range(d)))

    @classmethod
    def from_cycles(cls, text: str, d: int) -> "Permutation":
        """Parse 1-based cycle notation such as ``"(1,4)(2,3)"``."""
        imgs = list(range(d))
        for body in re.findall(r"\(([^()]*)\)", text):
            items = [int(x) - 1 for x in body.replace(" ", "").split(",") if x]
            for a, b in zip(items, items[1:] + items[:1]):
                imgs[a] = b
        return cls(tuple(imgs))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def then(self, other: "Permutation") -> "Permutation":
        """Apply ``self`` first, then ``other``."""
        return Permutation(tuple(other.images[i] for i in self.images))

    def __mul__(self, other: "Permutation") -> "Permutation":
        return self.then(other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result.then(base)
            base = base.then(base)
            k >>= 1
        return result

    def conjugate(self, g: "Permutation") -> "Permutation":
        """Relabel by ``g``: the permutation ``g^-1 self g``."""
        return g.inverse().then(self).then(g)

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self) -> int:
        return math.lcm(*self.cycle_type()) if self.degree else 1

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def to_cycle_str(self) -> str:
        parts = ["(" + ",".join(str(i + 1) for i in c) + ")" for c in self.cycles() if len(c) > 1]
        return "".join(parts) or "()"

    def __str__(self) -> str:
        return self.to_cycle_str()


def is_transitive(p: Permutation) -> bool:
    """True iff ``p`` is a single cycle through all labels."""
    return len(p.cycles()) == 1


def orbits(gens: Sequence[Permutation]) -> list[set[int]]:
    d = gens[0].degree
    seen: set[int] = set()
    out = []
    for s in range(d):
        if s in seen:
            continue
        orb = {s}
        stack = [s]
        while stack:
            i = stack.pop()
            for g in gens:
                j = g.images[i]
                if j not in orb:
                    orb.add(j)
                    stack.append(j)
        seen |= orb
        out.append(orb)
    return out


@dataclass
class PermGroupReport:
    generators: list[Permutation]
    elements: list[Permutation]
    commuting: bool
    has_transitive: bool | None
    witness: Permutation | None = None
    witness_exponents: tuple[int, int] | None = None
    cycle_type_census: Counter = field(default_factory=Counter)
    group_transitive: bool = False
    capped: bool = False

    @property
    def order(self) -> int:
        return len(self.elements)

    def to_dict(self) -> dict:
        return {
            "generators": [g.to_cycle_str() for g in self.generators],
            "order": self.order,
            "commuting": self.commuting,
            "has_transitive": self.has_transitive,
            "witness": self.witness.to_cycle_str() if self.witness else None,
            "witness_exponents": list(self.witness_exponents) if self.witness_exponents else None,
            "cycle_type_census": {",".join(map(str, k)): v
                                  for k, v in sorted(self.cycle_type_census.items())},
            "group_transitive": self.group_transitive,
            "capped": self.capped,
        }


def generated_group(p1: Permutation, p2: Permutation, cap: int = 10 ** 6) -> PermGroupReport:
    """The group generated by ``p1`` and ``p2`` and its d-cycles.

    Commuting generators are enumerated as ``p1^a p2^b`` so a d-cycle comes
    with exponents; otherwise a breadth-first closure is used, stopping at
    ``cap`` elements (then ``has_transitive`` may be ``None``).
    """
    if p1.degree != p2.degree:
        raise ValueError("generators act on different label sets")
    commuting = p1.then(p2) == p2.then(p1)
    gens = [p1, p2]
    group_transitive = len(orbits(gens)) == 1
    if commuting:
        o1, o2 = p1.order(), p2.order()
        found: dict[Permutation, tuple[int, int]] = {}
        pairs = sorted(((a, b) for a in range(o1) for b in range(o2)), key=lambda ab: (ab[0] + ab[1], ab[0]))
        for a, b in pairs:
            el = (p1 ** a).then(p2 ** b)
            found.setdefault(el, (a, b))
        elements = list(found)
        witness = next((el for el in elements if is_transitive(el)), None)
        census = Counter(el.cycle_type() for el in elements)
        return PermGroupReport(gens, elements, True, witness is not None, witness,
                               found[witness] if witness else None, census, group_transitive)
    ident = Permutation.identity(p1.degree)
    seen = {ident}
    queue = deque([ident])
    capped = False
    while queue:
        el = queue.popleft()
        for g in gens:
            nxt = el.then(g)
            if nxt not in seen:
                if len(seen) >= cap:
                    capped = True
                    break
                seen.add(nxt)
                queue.append(nxt)
        if capped:
            break
    elements = sorted(seen, key=lambda el: el.images)
    witness = next((el for el in elements if is_transitive(el)), None)
    has = True if witness is not None else (None if capped else False)
    census = Counter(el.cycle_type() for el in elements)
    return PermGroupReport(gens, elements, False, has, witness, None, census, group_transitive, capped)
