"""Sparse multivariate polynomials with rational coefficients.

An :class:`MPoly` is immutable.  Variables are kept sorted by a fixed
canonical order (``x, y, z, t, u, v, s`` first, anything else
alphabetically afterwards) so that serialization is deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Rational = Fraction

CANONICAL_ORDER = ("x", "y", "z", "t", "u", "v", "s")

Number = Union[int, Fraction]


def var_key(name: str) -> tuple:
    try:
        return (0, CANONICAL_ORDER.index(name), "")
    except ValueError:
        return (1, 0, name)


def sort_vars(names: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=var_key))


def as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


class MPoly:
    """Polynomial over the rationals in named variables.

    Parameters
    ----------
    terms : mapping
        Exponent tuple (aligned with ``variables``) to coefficient.
    variables : iterable of str
        Variable names; reordered canonically.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, terms: Mapping[tuple, Number] | None = None,
                 variables: Iterable[str] = ()):
        given = tuple(variables)
        order = sort_vars(given)
        if len(order) != len(given):
            raise ValueError(f"duplicate variable names in {given}")
        perm = [given.index(v) for v in order]
        clean: dict[tuple, Fraction] = {}
        for exps, c in (terms or {}).items():
            if len(exps) != len(given):
                raise ValueError("exponent vector length does not match variables")
            c = as_fraction(c)
            if c == 0:
                continue
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            key = tuple(exps[i] for i in perm)
            clean[key] = clean.get(key, 0) + c
            if clean[key] == 0:
                del clean[key]
        self.vars = order
        self.terms = clean
        self._hash = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def _raw(cls, terms: dict, variables: tuple) -> "MPoly":
        # trusted fast path: variables already canonical, no zero coefficients
        obj = cls.__new__(cls)
        obj.vars = variables
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Number, variables: Iterable[str] = ()) -> "MPoly":
        vs = sort_vars(variables)
        c = as_fraction(c)
        return cls._raw({(0,) * len(vs): c} if c else {}, vs)

    @classmethod
    def var(cls, name: str) -> "MPoly":
        return cls._raw({(1,): Fraction(1)}, (name,))

    @classmethod
    def monomial(cls, exps: Mapping[str, int], c: Number = 1) -> "MPoly":
        vs = sort_vars(exps)
        c = as_fraction(c)
        return cls._raw({tuple(exps[v] for v in vs): c} if c else {}, vs)

    @classmethod
    def from_univariate(cls, coeffs: Iterable[Number], name: str) -> "MPoly":
        """Build ``sum coeffs[k] * name**k``."""
        terms = {}
        for k, c in enumerate(coeffs):
            c = as_fraction(c)
            if c:
                terms[(k,)] = c
        return cls._raw(terms, (name,))

    # -- variable alignment ---------------------------------------------

    def with_vars(self, variables: Iterable[str]) -> "MPoly":
        """Re-key onto a superset of the current variables."""
        vs = sort_vars(variables)
        if vs == self.vars:
            return self
        missing = set(self.vars) - set(vs)
        if missing and any(self.degree(v) > 0 for v in missing):
            raise ValueError(f"variables {sorted(missing)} are in use")
        idx = [self.vars.index(v) if v in self.vars else -1 for v in vs]
        terms = {tuple(e[i] if i >= 0 else 0 for i in idx): c
                 for e, c in self.terms.items()}
        return MPoly._raw(terms, vs)

    def used_vars(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.vars)
                     if any(e[i] for e in self.terms))

    def trim(self) -> "MPoly":
        """Drop variables that do not occur."""
        return self.with_vars(self.used_vars())

    def _align(self, other: "MPoly") -> tuple["MPoly", "MPoly"]:
        if self.vars == other.vars:
            return self, other
        vs = sort_vars(self.vars + other.vars)
        return self.with_vars(vs), other.with_vars(vs)

    @staticmethod
    def _coerce(other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(other)
        return NotImplemented

    # -- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._align(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MPoly._raw(terms, a.vars)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw({e: -c for e, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MPoly._raw({}, self.vars)
            return MPoly._raw({e: c * other for e, c in self.terms.items()}, self.vars)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._align(other)
        terms: dict[tuple, Fraction] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return MPoly._raw(terms, a.vars)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of polynomial by zero")
            inv = 1 / Fraction(other)
            return self * inv
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.exact_div(other)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def exact_div(self, other: "MPoly") -> "MPoly":
        """Quotient ``self / other``; raises if the division is not exact."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        a, b = self._align(other)
        if b.is_constant():
            return a * (1 / b.constant_value())
        lead_e, lead_c = b.leading_term()
        rem = dict(a.terms)
        quot: dict[tuple, Fraction] = {}
        b_items = list(b.terms.items())
        while rem:
            e = max(rem)
            c = rem[e]
            shift = tuple(i - j for i, j in zip(e, lead_e))
            if any(s < 0 for s in shift):
                raise ArithmeticError("polynomial division is not exact")
            q = c / lead_c
            quot[shift] = q
            for eb, cb in b_items:
                k = tuple(i + j for i, j in zip(eb, shift))
                s = rem.get(k, 0) - q * cb
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        return MPoly._raw(quot, a.vars)

    def divides(self, other: "MPoly") -> bool:
        try:
            other.exact_div(self)
        except ArithmeticError:
            return False
        return True

    # -- structure ------------------------------------------------------

    def leading_term(self) -> tuple[tuple, Fraction]:
        """Leading (exponent, coefficient) under lex order on ``self.vars``."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def degree(self, name: str | None = None) -> int:
        if not self.terms:
            return -1
        if name is None:
            return max(sum(e) for e in self.terms)
        if name not in self.vars:
            return 0
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def order(self) -> int:
        """Lowest total degree of a term (the multiplicity at the origin)."""
        if not self.terms:
            raise ValueError("zero polynomial has no order")
        return min(sum(e) for e in self.terms)

    def coeffs_in(self, name: str) -> dict[int, "MPoly"]:
        """Coefficients with respect to ``name``, as polynomials in the rest."""
        if name not in self.vars:
            return {0: self} if self.terms else {}
        i = self.vars.index(name)
        rest = self.vars[:i] + self.vars[i + 1:]
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            out.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {k: MPoly._raw(t, rest) for k, t in out.items()}

    @classmethod
    def from_coeffs(cls, coeffs: Mapping[int, "MPoly"], name: str) -> "MPoly":
        result = MPoly.const(0, (name,))
        x = MPoly.var(name)
        for k, c in coeffs.items():
            result = result + c * x ** k
        return result

    def diff(self, name: str) -> "MPoly":
        if name not in self.vars:
            return MPoly._raw({}, self.vars)
        i = self.vars.index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                terms[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return MPoly._raw(terms, self.vars)

    def homogeneous_part(self, degree: int) -> "MPoly":
        return MPoly._raw({e: c for e, c in self.terms.items() if sum(e) == degree},
                          self.vars)

    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        from math import gcd, lcm
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "MPoly":
        """Integer coefficients with gcd 1 and positive lex-leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        return self * (1 / c)

    def monic(self) -> "MPoly":
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient())

    # -- evaluation -----------------------------------------------------

    def evaluate(self, point: Mapping[str, object]):
        """Evaluate at a point; missing variables raise ``KeyError``."""
        vals = [point[v] for v in self.vars]
        total = 0
        for e, c in self.terms.items():
            term = c
            for val, k in zip(vals, e):
                if k:
                    term = term * val ** k
            total = total + term
        return total

    def partial_evaluate(self, point: Mapping[str, Number]) -> "MPoly":
        """Substitute rational values for some variables."""
        keep = tuple(v for v in self.vars if v not in point)
        idx_keep = [self.vars.index(v) for v in keep]
        fixed = [(self.vars.index(v), as_fraction(point[v])) for v in self.vars if v in point]
        terms: dict[tuple, Fraction] = {}
        for e, c in self.terms.items():
            for i, val in fixed:
                if e[i]:
                    c = c * val ** e[i]
            if not c:
                continue
            k = tuple(e[i] for i in idx_keep)
            s = terms.get(k, 0) + c
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        return MPoly._raw(terms, keep)

    def univariate_coeffs(self, name: str) -> list[Fraction]:
        """Coefficient list (lowest degree first) of a univariate polynomial."""
        used = self.used_vars()
        if any(v != name for v in used):
            raise ValueError(f"polynomial is not univariate in {name}: uses {used}")
        p = self.with_vars((name,)) if self.vars != (name,) else self
        if not p.terms:
            return []
        deg = max(e[0] for e in p.terms)
        out = [Fraction(0)] * (deg + 1)
        for e, c in p.terms.items():
            out[e[0]] = c
        return out

    # -- comparison / hashing / printing -------------------------------

    def _normalized(self) -> tuple:
        used = self.used_vars()
        p = self.with_vars(used) if used != self.vars else self
        return p.vars, frozenset(p.terms.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self._normalized() == other._normalized()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._normalized())
        return self._hash

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        """Terms in descending graded-lex order on ``self.vars``."""
        return sorted(self.terms.items(), key=lambda it: (sum(it[0]), it[0]), reverse=True)

    def to_str(self) -> str:
        """Canonical text form, e.g. ``z^4 - 4*x*z + 3*y^2``."""
        p = self.trim()
        if not p.terms:
            return "0"
        pieces = []
        for e, c in p.sorted_terms():
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(p.vars, e) if k)
            mag = abs(c)
            cs = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            if mono:
                body = mono if mag == 1 else f"{cs}*{mono}"
            else:
                body = cs
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = to_str

    def __repr__(self) -> str:
        return f"MPoly({self.to_str()!r})"


def zero() -> MPoly:
    return MPoly.const(0)


def one() -> MPoly:
    return MPoly.const(1)
