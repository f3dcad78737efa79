"""
Reduced colored Magnus ring.

Elements are non-commutative integer polynomials in variables X{i,j},
one variable per non-tree edge j of component i. A monomial that uses two
variables of the same color is zero, so no stored monomial is longer than
the number of colors D. Products are truncated at the series' degree bound.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass

from cm_engine.core.errors import NotInvertible


@dataclass(frozen=True, order=True)
class Variable:
    color: int
    index: int

    def __str__(self) -> str:
        return f"X{{{self.color},{self.index}}}"

    @property
    def generator_name(self) -> str:
        return f"m{self.color},{self.index}"


Monomial = tuple[Variable, ...]

ONE: Monomial = ()


def _admissible(monomial: Monomial) -> bool:
    colors = [v.color for v in monomial]
    return len(colors) == len(set(colors))


def render_monomial(monomial: Monomial) -> str:
    return "".join(str(v) for v in monomial) if monomial else "1"


def _term_key(item: tuple[Monomial, int]) -> tuple[int, Monomial]:
    return (len(item[0]), item[0])


class MagnusSeries:
    """
    An element of the reduced ring truncated at degree `degree`.

    Values are immutable; arithmetic returns new series. Two series compare
    equal when their terms agree, whatever their degree bounds.
    """

    __slots__ = ("_terms", "degree", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None, degree: int = 0):
        if degree < 0:
            raise ValueError("degree bound must be non-negative")
        clean: dict[Monomial, int] = {}
        for mono, coeff in (terms or {}).items():
            if coeff and len(mono) <= degree and _admissible(mono):
                clean[tuple(mono)] = clean.get(tuple(mono), 0) + coeff
        self._terms = {m: c for m, c in clean.items() if c}
        self.degree = degree
        self._hash: int | None = None

    # constructors

    @classmethod
    def one(cls, degree: int) -> MagnusSeries:
        return cls({ONE: 1}, degree)

    @classmethod
    def zero(cls, degree: int) -> MagnusSeries:
        return cls({}, degree)

    @classmethod
    def generator(cls, var: Variable, degree: int, exponent: int = 1) -> MagnusSeries:
        """1 + X for exponent +1 and 1 - X for -1; X squared is already zero."""
        if exponent not in (1, -1):
            raise ValueError("generator exponent must be +1 or -1")
        return cls({ONE: 1, (var,): exponent}, degree)

    # inspection

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, int]]:
        """Terms sorted by (degree, monomial)."""
        return iter(sorted(self._terms.items(), key=_term_key))

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._terms == ({ONE: other} if other else {})
        if not isinstance(other, MagnusSeries):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"MagnusSeries({render(self)!r}, degree={self.degree})"

    @property
    def constant(self) -> int:
        return self._terms.get(ONE, 0)

    def is_one(self) -> bool:
        return self._terms == {ONE: 1}

    def coefficient(self, monomial: Iterable[Variable]) -> int:
        return self._terms.get(tuple(monomial), 0)

    def variables(self) -> set[Variable]:
        return {v for m in self._terms for v in m}

    def colors(self) -> set[int]:
        return {v.color for v in self.variables()}

    # arithmetic

    def __add__(self, other: MagnusSeries) -> MagnusSeries:
        terms = Counter(self._terms)
        terms.update(other._terms)
        return MagnusSeries(terms, min(self.degree, other.degree))

    def __neg__(self) -> MagnusSeries:
        return MagnusSeries({m: -c for m, c in self._terms.items()}, self.degree)

    def __sub__(self, other: MagnusSeries) -> MagnusSeries:
        return self + (-other)

    def __mul__(self, other: MagnusSeries | int) -> MagnusSeries:
        if isinstance(other, int):
            return MagnusSeries({m: c * other for m, c in self._terms.items()}, self.degree)
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MagnusSeries:
        if n < 0:
            return self.inverse() ** (-n)
        result = MagnusSeries.one(self.degree)
        for _ in range(n):
            result = result * self
        return result

    def inverse(self) -> MagnusSeries:
        return inverse(self)

    def truncate(self, degree: int) -> MagnusSeries:
        return MagnusSeries(self._terms, min(degree, self.degree))


def multiply(a: MagnusSeries, b: MagnusSeries) -> MagnusSeries:
    degree = min(a.degree, b.degree)
    right = [(m, c, {v.color for v in m}) for m, c in b._terms.items()]
    out: dict[Monomial, int] = {}
    for m1, c1 in a._terms.items():
        colors1 = {v.color for v in m1}
        room = degree - len(m1)
        for m2, c2, colors2 in right:
            if len(m2) > room or not colors1.isdisjoint(colors2):
                continue
            key = m1 + m2
            out[key] = out.get(key, 0) + c1 * c2
    return MagnusSeries(out, degree)


def inverse(s: MagnusSeries) -> MagnusSeries:
    """Neumann series: (1 + N)^-1 = 1 - N + N^2 - ... up to the degree bound."""
    if s.constant != 1:
        raise NotInvertible(f"series with constant term {s.constant} is not invertible")
    nilpotent = s - MagnusSeries.one(s.degree)
    result = MagnusSeries.one(s.degree)
    power = MagnusSeries.one(s.degree)
    for k in range(1, s.degree + 1):
        power = power * nilpotent
        if not len(power):
            break
        result = result + (power if k % 2 == 0 else -power)
    return result


def commutator_series(a: MagnusSeries, b: MagnusSeries) -> MagnusSeries:
    """a^-1 b^-1 a b."""
    return inverse(a) * inverse(b) * a * b


def conjugate_series(a: MagnusSeries, g: MagnusSeries) -> MagnusSeries:
    """g^-1 a g."""
    return inverse(g) * a * g


def lowest_degree(s: MagnusSeries, *, skip_constant: bool = True) -> int | None:
    degrees = [len(m) for m in s._terms if len(m) or not skip_constant]
    return min(degrees) if degrees else None


def lowest_degree_with_color(s: MagnusSeries, color: int) -> int | None:
    degrees = [len(m) for m in s._terms if any(v.color == color for v in m)]
    return min(degrees) if degrees else None


def homogeneous_part(s: MagnusSeries, k: int) -> MagnusSeries:
    return MagnusSeries({m: c for m, c in s._terms.items() if len(m) == k}, s.degree)


def without_color(s: MagnusSeries, color: int) -> MagnusSeries:
    """Drop every monomial that mentions the given color."""
    return MagnusSeries(
        {m: c for m, c in s._terms.items() if all(v.color != color for v in m)}, s.degree
    )


def coefficient(s: MagnusSeries, monomial: Iterable[Variable]) -> int:
    return s.coefficient(monomial)


def render(s: MagnusSeries) -> str:
    """`±c·X{i,j}X{k,l}…` terms by (degree, monomial); the constant has no monomial."""
    if not len(s):
        return "0"
    parts = []
    for mono, coeff in s.items():
        sign = "+" if coeff > 0 else "-"
        if mono:
            parts.append(f"{sign}{abs(coeff)}·{render_monomial(mono)}")
        else:
            parts.append(f"{sign}{abs(coeff)}")
    return " ".join(parts)


def term_bound(variables: Iterable[Variable], degree: int) -> int:
    """
    Largest possible number of stored monomials: sum over k <= degree of
    k! times the k-th elementary symmetric polynomial of per-color counts.
    """
    per_color = list(Counter(v.color for v in set(variables)).values())
    total = 0
    for k in range(0, min(degree, len(per_color)) + 1):
        e_k = sum(math.prod(combo) for combo in itertools.combinations(per_color, k))
        total += math.factorial(k) * e_k
    return total
