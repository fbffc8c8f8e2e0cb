"""Plain-text rendering of Betti tables."""

from typing import List, Optional

from ginlex.stable import BettiTable

ROW_LABEL = "row j-i={shift}:"


def triple_lines(table: BettiTable) -> List[str]:
    """``i j beta`` for every nonzero entry, by ``i`` then ``j``."""
    return [f"{i} {j} {value}" for (i, j), value in sorted(table.entries.items())]


def diagram_lines(table: BettiTable, columns: Optional[int] = None) -> List[str]:
    """Macaulay diagram: one labelled row per ``j - i``, columns ``i = 1, 2, ...``.

    Trailing zero columns are cut unless ``columns`` is given.
    """
    rows = table.diagram(columns)
    if columns is None and rows:
        width = max((k + 1 for _, values in rows for k, v in enumerate(values) if v), default=0)
        rows = [(shift, values[:width]) for shift, values in rows]
    return [ROW_LABEL.format(shift=shift) + "".join(f" {v}" for v in values)
            for shift, values in rows]

