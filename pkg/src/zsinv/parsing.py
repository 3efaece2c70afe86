"""Text formats: groups ``"3,3"``, elements ``"(1,0)"``, sequences
``"(1,0)^2 (0,1)"`` and module specs ``"p=3; U=[(1,0)]; V=[1:2]"``.

Printing any parsed value and parsing it again gives the same value.
"""
from __future__ import annotations

import re

from .abelian import AbelianGroup, GroupElement, Sequence
from .monomial import ModuleSpec


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            self.fail(f"expected {ch!r}")
        self.pos += 1

    def accept(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def integer(self) -> int:
        self.skip_ws()
        m = re.compile(r"-?\d+").match(self.text, self.pos)
        if not m:
            self.fail("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def word(self, w: str) -> None:
        self.skip_ws()
        if not self.text.startswith(w, self.pos):
            self.fail(f"expected {w!r}")
        self.pos += len(w)

    def fail(self, message: str):
        raise ParseError(message, self.text, self.pos)


def parse_group(text: str) -> AbelianGroup:
    s = _Scanner(text)
    orders = [s.integer()]
    while s.accept(","):
        orders.append(s.integer())
    if not s.at_end():
        s.fail("unexpected trailing input")
    if any(n < 1 for n in orders):
        raise ParseError("cyclic orders must be positive", text, 0)
    return AbelianGroup(tuple(orders))


def _element(s: _Scanner, group: AbelianGroup) -> GroupElement:
    start = s.pos
    if s.accept("("):
        coords = [s.integer()]
        while s.accept(","):
            coords.append(s.integer())
        s.expect(")")
    else:
        coords = [s.integer()]
    if len(coords) != group.rank:
        raise ParseError(f"element needs {group.rank} coordinates", s.text, start)
    return group(tuple(coords))


def parse_element(text: str, group: AbelianGroup) -> GroupElement:
    s = _Scanner(text)
    e = _element(s, group)
    if not s.at_end():
        s.fail("unexpected trailing input")
    return e


def parse_sequence(text: str, group: AbelianGroup) -> Sequence:
    s = _Scanner(text)
    if s.accept("["):
        s.expect("]")
        if not s.at_end():
            s.fail("unexpected trailing input")
        return Sequence.empty(group)
    counts: dict[int, int] = {}
    if s.at_end():
        s.fail("empty sequence (write [] for the empty sequence)")
    while not s.at_end():
        e = _element(s, group)
        k = 1
        if s.accept("^"):
            k = s.integer()
            if k < 0:
                s.fail("negative multiplicity")
        counts[e.code] = counts.get(e.code, 0) + k
    return Sequence.from_counts(group, counts)


def format_sequence(S: Sequence) -> str:
    return str(S)


def parse_module_spec(text: str) -> ModuleSpec:
    s = _Scanner(text)
    s.word("p")
    s.expect("=")
    p = s.integer()
    u: list[tuple[int, int]] = []
    n: dict[int, int] = {}
    while s.accept(";"):
        if s.at_end():
            break
        key = s.peek()
        if key == "U":
            s.pos += 1
            s.expect("=")
            s.expect("[")
            if not s.accept("]"):
                while True:
                    s.expect("(")
                    a = s.integer()
                    s.expect(",")
                    b = s.integer()
                    s.expect(")")
                    u.append((a, b))
                    if s.accept("]"):
                        break
                    s.expect(",")
        elif key == "V":
            s.pos += 1
            s.expect("=")
            s.expect("[")
            if not s.accept("]"):
                while True:
                    at = s.pos
                    i = s.integer()
                    s.expect(":")
                    c = s.integer()
                    if not 1 <= i <= p - 1:
                        raise ParseError(f"block index must be in 1..{p - 1}", text, at)
                    n[i] = n.get(i, 0) + c
                    if s.accept("]"):
                        break
                    s.expect(",")
        else:
            s.fail("expected U= or V=")
    if not s.at_end():
        s.fail("unexpected trailing input")
    try:
        return ModuleSpec(p, tuple(u), tuple(n.get(i, 0) for i in range(1, max(p, 2))))
    except ValueError as exc:
        raise ParseError(str(exc), text, 0) from None
