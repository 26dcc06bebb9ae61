"""Plain-text reaction network format.

One reaction per line::

    # comment
    species S E SE P          (optional declaration, fixes names and order)
    S + E <-> SE
    SE -> P + E
    0 <-> 2 S

A complex is ``0`` or ``term (+ term)*`` with ``term := [coeff] NAME``;
``->`` is a single reaction and ``<->`` a reversible pair.  Names of the
form ``S<k>`` map to species ``k``; any other names are numbered in order of
first appearance (or declaration order when a ``species`` line is given).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .model import Reaction, ReactionNetwork, canonicalize_complex

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INDEXED = re.compile(r"S([1-9][0-9]*)")
_TOKEN = re.compile(r"\s*(<->|->|\+|[0-9]+|[A-Za-z_][A-Za-z0-9_]*)")


class NetworkSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass
class _Line:
    number: int
    source: list[tuple[str, int]]
    arrow: str
    product: list[tuple[str, int]]
    text: str


def _tokenize(text: str, lineno: int) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise NetworkSyntaxError(f"unexpected character {text[col - 1]!r}", lineno, col)
        tokens.append((m.group(1), m.start(1) + 1))
        pos = m.end()
    return tokens


def _parse_complex(tokens, i, lineno, eol_col):
    """Parse a complex starting at ``tokens[i]``; return (terms, next index)."""
    if i < len(tokens) and tokens[i][0] == "0":
        return [], i + 1
    terms = []
    while True:
        if i >= len(tokens):
            raise NetworkSyntaxError("expected species name", lineno, eol_col)
        tok, col = tokens[i]
        coeff = 1
        if tok.isdigit():
            coeff = int(tok)
            if coeff < 1:
                raise NetworkSyntaxError("coefficient must be positive", lineno, col)
            i += 1
            if i >= len(tokens):
                raise NetworkSyntaxError("expected species name after coefficient", lineno, eol_col)
            tok, col = tokens[i]
        if not _NAME.fullmatch(tok):
            raise NetworkSyntaxError(f"expected species name, found {tok!r}", lineno, col)
        terms.append((tok, coeff))
        i += 1
        if i < len(tokens) and tokens[i][0] == "+":
            i += 1
            continue
        return terms, i


def _parse_line(text: str, lineno: int) -> _Line:
    tokens = _tokenize(text, lineno)
    eol = len(text.rstrip()) + 1
    source, i = _parse_complex(tokens, 0, lineno, eol)
    if i >= len(tokens) or tokens[i][0] not in ("->", "<->"):
        col = tokens[i][1] if i < len(tokens) else eol
        raise NetworkSyntaxError("expected '->' or '<->'", lineno, col)
    arrow = tokens[i][0]
    product, j = _parse_complex(tokens, i + 1, lineno, eol)
    if j < len(tokens):
        raise NetworkSyntaxError(f"unexpected {tokens[j][0]!r}", lineno, tokens[j][1])
    return _Line(lineno, source, arrow, product, text)


def parse_network(text: str) -> ReactionNetwork:
    declared: list[str] | None = None
    lines: list[_Line] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        body = raw.split("#", 1)[0].rstrip("\r")
        if not body.strip():
            continue
        head = body.split()
        if head[0] == "species" and "->" not in body:
            if declared is not None:
                raise NetworkSyntaxError("duplicate species declaration", lineno, 1)
            if lines:
                raise NetworkSyntaxError("species declaration after reactions", lineno, 1)
            declared = head[1:]
            for name in declared:
                if not _NAME.fullmatch(name):
                    col = body.index(name) + 1
                    raise NetworkSyntaxError(f"invalid species name {name!r}", lineno, col)
            if len(set(declared)) != len(declared):
                raise NetworkSyntaxError("species declared twice", lineno, 1)
            continue
        lines.append(_parse_line(body, lineno))

    used = [name for ln in lines for name, _ in ln.source + ln.product]
    index = _species_index(declared, used, lines)

    reactions = set()
    for ln in lines:
        src = canonicalize_complex((index[name], c) for name, c in ln.source)
        dst = canonicalize_complex((index[name], c) for name, c in ln.product)
        if src == dst:
            raise NetworkSyntaxError("identical source and product", ln.number, 1)
        reactions.add(Reaction(src, dst))
        if ln.arrow == "<->":
            reactions.add(Reaction(dst, src))
    n = max(index.values(), default=0)
    return ReactionNetwork(n, frozenset(reactions))


def _species_index(declared, used, lines) -> dict[str, int]:
    names = declared if declared is not None else used
    if names and all(_INDEXED.fullmatch(s) for s in names):
        index = {s: int(s[1:]) for s in names}
    else:
        index = {}
        for s in names:
            index.setdefault(s, len(index) + 1)
    if declared is not None:
        for ln in lines:
            for name, _ in ln.source + ln.product:
                if name not in index:
                    col = re.search(rf"\b{re.escape(name)}\b", ln.text).start() + 1
                    raise NetworkSyntaxError(f"undeclared species {name!r}", ln.number, col)
    return index


def format_network(g: ReactionNetwork) -> str:
    """Canonical text: reversible pairs collapsed, lines sorted by complex order.

    A ``species`` line is written only when species beyond the highest one
    used are declared, so that the species count survives a round trip.
    """
    out = []
    top = max(g.species_used, default=0)
    if g.n_species > top:
        out.append("species " + " ".join(f"S{k}" for k in range(1, g.n_species + 1)))
    lines = []
    for r in g.reactions:
        rev = r.reversed()
        if rev in g.reactions:
            if r.source < r.product:
                lines.append((r.sort_key(), f"{r.source} <-> {r.product}"))
        else:
            lines.append((r.sort_key(), f"{r.source} -> {r.product}"))
    out.extend(text for _, text in sorted(lines))
    return "".join(line + "\n" for line in out)


__all__ = ["NetworkSyntaxError", "format_network", "parse_network"]
