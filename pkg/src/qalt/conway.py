"""Conway-style notation for rational tangles and Montesinos links.

Tangle words are read left to right, one digit per entry unless the entry is
parenthesized (``(-2)(-1)``) or the word is comma-separated (``12,3``).  A
trailing ``-`` appends a horizontal ``-1`` crossing to the word; see
:class:`RationalTangleWord` for how that tail is placed in a Montesinos slot.

Montesinos presentations are bracketed, semicolon-separated tangle words:
``[221;211;2-]``.  One slot may be wrapped in asterisks (``[*23*;211;2-]``) to
designate the tangle that gets replaced by a single crossing.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable


class ParseError(ValueError):
    """Raised for malformed notation; ``position`` is a 0-based character index."""

    def __init__(self, message: str, text: str = "", position: int | None = None):
        if position is not None:
            message = f"{message} at position {position} in {text!r}"
        super().__init__(message)
        self.text = text
        self.position = position


@dataclass(frozen=True)
class RationalTangleWord:
    """A rational tangle given by nonzero twist counts ``a_1 ... a_n``.

    ``horizontal_tail`` records that the last entry came from the KnotInfo
    trailing minus: it is a single horizontal crossing added beside the rest of
    the tangle, not a further vertical twist.
    """

    entries: tuple[int, ...]
    horizontal_tail: bool = False

    def __post_init__(self):
        entries = tuple(int(a) for a in self.entries)
        if not entries:
            raise ValueError("a tangle word needs at least one entry")
        if any(a == 0 for a in entries):
            raise ValueError(f"tangle entries must be nonzero: {entries}")
        if self.horizontal_tail and (len(entries) < 2 or entries[-1] != -1):
            raise ValueError("a horizontal tail is a final -1 after at least one entry")
        object.__setattr__(self, "entries", entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def body(self) -> tuple[int, ...]:
        """Entries excluding a horizontal tail."""
        return self.entries[:-1] if self.horizontal_tail else self.entries

    def __str__(self) -> str:
        return render_word(self)


@dataclass(frozen=True)
class MontesinosPresentation:
    tangles: tuple[RationalTangleWord, ...]
    half_twists: int = 0

    def __post_init__(self):
        tangles = tuple(self.tangles)
        if not tangles:
            raise ValueError("a Montesinos presentation needs at least one tangle")
        if self.half_twists < 0:
            raise ValueError("half-twist count must be nonnegative")
        object.__setattr__(self, "tangles", tangles)

    def __len__(self) -> int:
        return len(self.tangles)

    def __str__(self) -> str:
        return render_montesinos(self)

    def replace(self, slot: int, word: RationalTangleWord) -> "MontesinosPresentation":
        tangles = list(self.tangles)
        tangles[slot] = word
        return MontesinosPresentation(tuple(tangles), self.half_twists)


def word(*entries: int, tail: bool = False) -> RationalTangleWord:
    """Shorthand constructor used throughout the tests and examples."""
    return RationalTangleWord(tuple(entries), tail)


_SIGNED_INT = re.compile(r"[+-]?\d+$")


def _int_token(token: str, text: str, position: int) -> int:
    inner = token
    if inner.startswith("(") and inner.endswith(")"):
        inner = inner[1:-1]
        position += 1
    inner = inner.strip()
    if not _SIGNED_INT.match(inner):
        raise ParseError(f"malformed entry {token!r}", text, position)
    value = int(inner)
    if value == 0:
        raise ParseError("zero entry", text, position)
    return value


def parse_tangle_word(text: str) -> RationalTangleWord:
    """Parse a tangle word such as ``221``, ``2-``, ``(-2)(-1)`` or ``12,3``."""
    raw = text
    text = text.strip()
    if not text:
        raise ParseError("empty tangle word", raw, 0)

    tail = False
    body = text
    if body.endswith("-") and len(body) > 1 and body[-2] not in "(,-+":
        tail = True
        body = body[:-1]

    entries: list[int] = []
    if re.fullmatch(r"-\d+", body):
        entries.append(_int_token(body, raw, 0))
    elif "," in body:
        offset = 0
        for token in body.split(","):
            if not token.strip():
                raise ParseError("empty entry", raw, offset)
            entries.append(_int_token(token.strip(), raw, offset))
            offset += len(token) + 1
        # "a,...,-1" is the comma spelling of the trailing minus ([2-] = [2,-1])
        if (not tail and len(entries) > 1 and entries[-1] == -1
                and all(a > 0 for a in entries[:-1])):
            return RationalTangleWord(tuple(entries), True)
    else:
        i = 0
        while i < len(body):
            ch = body[i]
            if ch == "(":
                close = body.find(")", i)
                if close < 0:
                    raise ParseError("unclosed parenthesis", raw, i)
                entries.append(_int_token(body[i:close + 1], raw, i))
                i = close + 1
            elif ch == "0":
                raise ParseError("zero entry", raw, i)
            elif ch.isdigit():
                entries.append(int(ch))
                i += 1
            else:
                raise ParseError(f"unexpected character {ch!r}", raw, i)

    if tail:
        entries.append(-1)
    return RationalTangleWord(tuple(entries), tail)


def _split_slots(text: str) -> list[str]:
    stripped = text.strip()
    if not (stripped.startswith("[") and stripped.endswith("]")):
        raise ParseError("Montesinos notation must be enclosed in brackets", text, 0)
    inner = stripped[1:-1]
    slots = inner.split(";")
    for index, slot in enumerate(slots):
        if not slot.strip():
            raise ParseError(f"empty tangle slot {index}", text, stripped.find("[") + 1)
    return slots


def parse_montesinos(text: str) -> MontesinosPresentation:
    """Parse ``[w1;w2;...;wm]``; the half-twist count is always 0."""
    slots = _split_slots(text)
    tangles = []
    for slot in slots:
        slot = slot.strip()
        if slot.startswith("*") and slot.endswith("*") and len(slot) > 2:
            slot = slot[1:-1]
        tangles.append(parse_tangle_word(slot))
    return MontesinosPresentation(tuple(tangles), 0)


def designated_slot(text: str) -> tuple[MontesinosPresentation, int]:
    """Parse a presentation with exactly one ``*w*`` slot; return it and its index."""
    slots = [s.strip() for s in _split_slots(text)]
    marked = [i for i, s in enumerate(slots) if s.startswith("*") and s.endswith("*") and len(s) > 2]
    if len(marked) != 1:
        raise ParseError(f"expected exactly one designated slot, found {len(marked)}", text)
    return parse_montesinos(text), marked[0]


def render_word(w: RationalTangleWord) -> str:
    parts = []
    for a in w.body:
        parts.append(str(a) if 1 <= a <= 9 else f"({a})")
    return "".join(parts) + ("-" if w.horizontal_tail else "")


def render_montesinos(p: MontesinosPresentation, designated: int | None = None) -> str:
    slots = []
    for i, w in enumerate(p.tangles):
        s = render_word(w)
        slots.append(f"*{s}*" if i == designated else s)
    return "[" + ";".join(slots) + "]"


# -- packaged tables -------------------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    knot: str
    conway: str


def read_table(path: str | Path) -> list[TableRow]:
    """Read a ``knot,conway`` CSV file."""
    with open(path, newline="", encoding="utf-8") as fh:
        return _rows(csv.reader(fh), str(path))


def _rows(reader: Iterable[list[str]], source: str) -> list[TableRow]:
    rows = list(reader)
    if not rows:
        return []
    header = [h.strip() for h in rows[0]]
    if header != ["knot", "conway"]:
        raise ValueError(f"{source}: expected header 'knot,conway', got {','.join(header)!r}")
    out = []
    for line in rows[1:]:
        if not line or not "".join(line).strip():
            continue
        if len(line) != 2:
            raise ValueError(f"{source}: malformed row {line!r}")
        out.append(TableRow(line[0].strip(), line[1].strip()))
    return out


def table_path(name: str) -> Path:
    """Filesystem path of a packaged table (``table1.csv`` or ``table2.csv``)."""
    return Path(str(resources.files("qalt") / "data" / name))


def load_table(name: str) -> list[TableRow]:
    return read_table(table_path(name))
