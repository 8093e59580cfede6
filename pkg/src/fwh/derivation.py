"""Derivation trees recording which rule justified each judgement step."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Derivation:
    rule: str
    conclusion: tuple
    premises: tuple["Derivation", ...] = ()
    note: str = ""

    def walk(self):
        yield self
        for p in self.premises:
            yield from p.walk()

    def rules(self) -> list[str]:
        return [d.rule for d in self.walk()]


def render(d: Derivation, show) -> str:
    """Indented tree; `show` maps a conclusion tuple to a line of text."""
    lines: list[str] = []

    def go(node: Derivation, depth: int):
        pad = "  " * depth
        note = f"   -- {node.note}" if node.note else ""
        lines.append(f"{pad}[{node.rule}] {show(node.conclusion)}{note}")
        for p in node.premises:
            go(p, depth + 1)

    go(d, 0)
    return "\n".join(lines)
