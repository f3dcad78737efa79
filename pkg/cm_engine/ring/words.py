from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from functools import reduce

import pyparsing as pp

from cm_engine.core.errors import CodeSyntaxError, UnknownGenerator
from cm_engine.ring.series import MagnusSeries, Variable


@dataclass(frozen=True)
class Letter:
    var: Variable
    exponent: int = 1

    @property
    def inverse(self) -> Letter:
        return Letter(self.var, -self.exponent)

    def __str__(self) -> str:
        name = self.var.generator_name
        return name if self.exponent == 1 else f"{name}^-1"


@dataclass(frozen=True)
class GroupWord:
    """A freely reduced word in the meridian generators."""

    letters: tuple[Letter, ...] = ()

    @classmethod
    def of(cls, letters: Iterable[Letter]) -> GroupWord:
        stack: list[Letter] = []
        for letter in letters:
            if letter.exponent not in (1, -1):
                raise ValueError("letters carry exponent +1 or -1")
            if stack and stack[-1] == letter.inverse:
                stack.pop()
            else:
                stack.append(letter)
        return cls(tuple(stack))

    @classmethod
    def generator(cls, var: Variable) -> GroupWord:
        return cls((Letter(var, 1),))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: GroupWord) -> GroupWord:
        return GroupWord.of(self.letters + other.letters)

    def inverse(self) -> GroupWord:
        return GroupWord(tuple(l.inverse for l in reversed(self.letters)))

    def __pow__(self, n: int) -> GroupWord:
        base = self if n >= 0 else self.inverse()
        return GroupWord.of(base.letters * abs(n))

    def conjugate(self, g: GroupWord) -> GroupWord:
        """g^-1 w g."""
        return g.inverse() * self * g

    @staticmethod
    def commutator(a: GroupWord, b: GroupWord) -> GroupWord:
        """a^-1 b^-1 a b."""
        return a.inverse() * b.inverse() * a * b

    def variables(self) -> set[Variable]:
        return {l.var for l in self.letters}

    def colors(self) -> set[int]:
        return {l.var.color for l in self.letters}

    def __str__(self) -> str:
        return " ".join(str(l) for l in self.letters) if self.letters else "1"


def expand(w: GroupWord, degree: int) -> MagnusSeries:
    """Magnus expansion: m -> 1 + X and m^-1 -> 1 - X, multiplied out."""
    one = MagnusSeries.one(degree)
    return reduce(
        lambda acc, letter: acc * MagnusSeries.generator(letter.var, degree, letter.exponent),
        w.letters,
        one,
    )


def _word_grammar() -> pp.ParserElement:
    generator = pp.Regex(r"m(?P<color>\d+),(?P<index>\d+)").set_parse_action(
        lambda t: GroupWord.generator(Variable(int(t["color"]), int(t["index"])))
    )
    identity = pp.Literal("1").set_parse_action(lambda: GroupWord())
    exponent = pp.Regex(r"[+-]?\d+").set_parse_action(lambda t: int(t[0]))

    word = pp.Forward()
    bracket = (pp.Suppress("[") + word + pp.Suppress(",") + word + pp.Suppress("]")).set_parse_action(
        lambda t: GroupWord.commutator(t[0], t[1])
    )
    group = pp.Suppress("(") + word + pp.Suppress(")")
    atom = generator | identity | bracket | group
    power = (atom + pp.Optional(pp.Suppress("^") + exponent)).set_parse_action(
        lambda t: t[0] ** t[1] if len(t) > 1 else t[0]
    )
    word <<= pp.OneOrMore(power + pp.Optional(pp.Suppress("*"))).set_parse_action(
        lambda t: reduce(lambda a, b: a * b, t, GroupWord())
    )
    return word


_WORD = _word_grammar()


def parse_word(
    text: str,
    generators: Iterable[Variable] | None = None,
    *,
    line: int = 1,
    source: str | None = None,
) -> GroupWord:
    """
    Read a word such as `[m3,1,[m1,1,m2,1]] m3,2^-1`.

    Juxtaposition (or `*`) multiplies, `[a,b]` is a^-1 b^-1 a b, `^n` takes
    powers, parentheses group and `1` is the empty word. With `generators`,
    every letter must be one of them.
    """
    try:
        word = _WORD.parse_string(text, parse_all=True)[0]
    except pp.ParseException as exc:
        raise CodeSyntaxError(exc.msg, line=line, column=exc.col, source=source) from None
    if generators is not None:
        known = set(generators)
        unknown = sorted(word.variables() - known)
        if unknown:
            raise UnknownGenerator(f"undeclared generator {unknown[0].generator_name}")
    return word
