"""Line-oriented result records printed by every command."""

import hashlib
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ginlex.display import diagram_lines, triple_lines
from ginlex.stable import BettiTable


def digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass
class ResultRecord:
    """``key: value`` lines; equal inputs and seeds give identical text.

    Timing is only rendered on request since it is the one field that
    varies between runs.
    """

    command: str
    input_digest: Optional[str] = None
    seeds: Dict[str, int] = field(default_factory=dict)
    outputs: List[Tuple[str, str]] = field(default_factory=list)
    timing: Optional[float] = None

    def add(self, key: str, value) -> "ResultRecord":
        self.outputs.append((key, str(value)))
        return self

    def add_betti(self, label: str, table: BettiTable, columns: Optional[int] = None):
        for line in triple_lines(table):
            self.add(f"{label} beta", line)
        for line in diagram_lines(table, columns):
            self.add(f"{label} diagram", line)

    def get(self, key: str) -> List[str]:
        return [value for k, value in self.outputs if k == key]

    def render(self, timing: bool = False) -> str:
        lines = [f"command: {self.command}"]
        if self.input_digest:
            lines.append(f"input: {self.input_digest}")
        for name in sorted(self.seeds):
            lines.append(f"{name}: {self.seeds[name]}")
        lines += [f"{key}: {value}" for key, value in self.outputs]
        if timing and self.timing is not None:
            lines.append(f"seconds: {self.timing:.3f}")
        return "\n".join(lines) + "\n"
