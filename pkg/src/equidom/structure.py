"""Weight structures ``(w, t)`` and their text format."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class WeightStructure:
    weights: dict[int, int]
    t: int
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("target value must be >= 1")
        for v, w in self.weights.items():
            if w < 1:
                raise ValueError(f"weight of {v} must be >= 1, got {w}")

    def as_list(self, n: int) -> list[int]:
        return [self.weights[v] for v in range(n)]

    def weight(self, vertices) -> int:
        return sum(self.weights[v] for v in vertices)

    @property
    def max_weight(self) -> int:
        return max(self.weights.values(), default=0)


def serialize_structure(s: WeightStructure) -> str:
    lines = [f"{v + 1} {s.weights[v]}" for v in sorted(s.weights)]
    lines.append(f"t {s.t}")
    return "\n".join(lines) + "\n"


def parse_structure(text: str | bytes) -> WeightStructure:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    weights = {}
    t = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected two fields")
        if parts[0] == "t":
            t = int(parts[1])
            continue
        v = int(parts[0])
        if v < 1:
            raise ValueError(f"line {lineno}: vertex ids are 1-based")
        if v - 1 in weights:
            raise ValueError(f"line {lineno}: duplicate vertex {v}")
        weights[v - 1] = int(parts[1])
    if t is None:
        raise ValueError("missing 't <value>' line")
    return WeightStructure(weights, t)
