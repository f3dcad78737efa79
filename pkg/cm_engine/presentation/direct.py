"""
Presentations given directly as relator words.

Text format, one declaration per line, `#` starts a comment:

    gen m1,1 m1,2 m2,1
    rel [m1,1,[m1,2,m2,1]]

Generators may be spread over several `gen` lines; every relator letter
must be declared before the relator that uses it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import pyparsing as pp

from cm_engine.core.errors import CodeSyntaxError, UnknownGenerator, ValidationError
from cm_engine.presentation.bundle import PresentationBundle
from cm_engine.ring.series import MagnusSeries, Variable
from cm_engine.ring.words import GroupWord, expand, parse_word


@dataclass(frozen=True)
class DirectPresentation:
    generators: tuple[Variable, ...]
    relators: tuple[GroupWord, ...]

    @property
    def colors(self) -> tuple[int, ...]:
        return tuple(sorted({v.color for v in self.generators}))

    @property
    def degree(self) -> int:
        return len(self.colors)


class Relator(NamedTuple):
    label: str
    series: MagnusSeries
    length: int


_GEN_LINE = pp.Keyword("gen") + pp.OneOrMore(pp.Regex(r"m\d+,\d+"))("names")
_REL_LINE = pp.Keyword("rel") + pp.Regex(r".+")("word")
_LINE = _GEN_LINE | _REL_LINE


def parse_presentation(text: str, source: str | None = None) -> DirectPresentation:
    generators: list[Variable] = []
    relators: list[GroupWord] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        try:
            parsed = _LINE.parse_string(line, parse_all=True)
        except pp.ParseException as exc:
            raise CodeSyntaxError(exc.msg, line=lineno, column=exc.col, source=source) from None

        if parsed[0] == "gen":
            for name in parsed["names"]:
                color, index = (int(x) for x in name[1:].split(","))
                var = Variable(color, index)
                if var in generators:
                    raise ValidationError(f"line {lineno}: generator {name} declared twice")
                generators.append(var)
        else:
            offset = line.index(parsed["word"])
            try:
                relators.append(parse_word(parsed["word"], generators, line=lineno, source=source))
            except CodeSyntaxError as exc:
                raise CodeSyntaxError(exc.message, line=lineno, column=exc.column + offset, source=source) from None
    return DirectPresentation(tuple(generators), tuple(relators))


def serialize_presentation(p: DirectPresentation) -> str:
    lines = ["gen " + " ".join(v.generator_name for v in p.generators)] if p.generators else []
    lines.extend(f"rel {w}" for w in p.relators)
    return "\n".join(lines) + ("\n" if lines else "")


def expand_direct(p: DirectPresentation, max_degree: int | None = None) -> dict[str, MagnusSeries]:
    """Magnus expansion of every relator, keyed `rel1`, `rel2`, ... in file order."""
    degree = p.degree if max_degree is None else max_degree
    known = set(p.generators)
    out = {}
    for k, word in enumerate(p.relators, start=1):
        unknown = sorted(word.variables() - known)
        if unknown:
            raise UnknownGenerator(f"relator {k} uses undeclared generator {unknown[0].generator_name}")
        out[f"rel{k}"] = expand(word, degree)
    return out


def relator_series(
    source: PresentationBundle | DirectPresentation, max_degree: int | None = None
) -> list[Relator]:
    """Relators of either kind of source: surface elements `r<i>` or direct `rel<k>`."""
    if isinstance(source, PresentationBundle):
        return [Relator(f"r{color}", s, 0) for color, s in source.surface_elements.items()]
    expanded = expand_direct(source, max_degree)
    return [
        Relator(label, series, len(word))
        for (label, series), word in zip(expanded.items(), source.relators)
    ]
