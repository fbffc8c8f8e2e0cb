"""Exact linear algebra over the rationals.

Vectors are sparse dictionaries ``{column: value}``; matrices are lists of
such rows.  Rank computations clear denominators and run a fraction-free
elimination (two-step cross multiplication followed by removal of the row
content), so every number stays an exact integer.  Row reduction and kernels
work with ``Fraction`` entries.
"""

import logging
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from ginlex.errors import GinlexError

logger = logging.getLogger(__name__)

Vector = Dict[Hashable, Fraction]


class LinearAlgebraError(GinlexError):
    """Raised for singular or malformed matrices."""


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def clear_denominators(row: Dict[Hashable, Fraction]) -> Dict[Hashable, int]:
    """Scale a rational row to a primitive integer row with the same span."""
    if not row:
        return {}
    denominator = 1
    for value in row.values():
        denominator = _lcm(denominator, Fraction(value).denominator)
    scaled = {k: int(Fraction(v) * denominator) for k, v in row.items() if v}
    return _primitive(scaled)


def _primitive(row: Dict[Hashable, int]) -> Dict[Hashable, int]:
    content = 0
    for value in row.values():
        content = gcd(content, value)
        if content == 1:
            return row
    if content in (0, 1):
        return row
    return {k: v // content for k, v in row.items()}


class IntegerEchelon:
    """Incrementally maintained echelon form of integer rows.

    Each stored row is keyed by its pivot, the smallest column (under
    ``column_key``) carrying a nonzero entry.  Reducing a row against a pivot
    row ``p`` with pivot value ``a`` replaces ``r`` by ``a*r - r[c]*p`` and
    divides out the content, so no fractions ever appear.
    """

    def __init__(self, column_key: Optional[Callable] = None):
        self._key = column_key
        self._pivots: Dict[Hashable, Dict[Hashable, int]] = {}

    def _leading(self, row):
        if self._key is None:
            return min(row)
        return min(row, key=self._key)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, row: Dict[Hashable, Fraction]) -> Dict[Hashable, int]:
        """Return the part of ``row`` not reducible by the stored pivots."""
        current = clear_denominators(row)
        while current:
            column = self._leading(current)
            pivot_row = self._pivots.get(column)
            if pivot_row is None:
                return current
            a = pivot_row[column]
            b = current[column]
            g = gcd(a, b)
            a, b = a // g, b // g
            combined = {k: a * v for k, v in current.items()}
            for k, v in pivot_row.items():
                value = combined.get(k, 0) - b * v
                if value:
                    combined[k] = value
                else:
                    combined.pop(k, None)
            current = _primitive(combined)
        return current

    def add(self, row: Dict[Hashable, Fraction]) -> bool:
        """Insert ``row``; return True when it raised the rank."""
        reduced = self.reduce(row)
        if not reduced:
            return False
        self._pivots[self._leading(reduced)] = reduced
        return True

    def contains(self, row: Dict[Hashable, Fraction]) -> bool:
        return not self.reduce(row)


def rank(rows: Iterable[Dict[Hashable, Fraction]]) -> int:
    """Exact rank of a sparse rational matrix."""
    echelon = IntegerEchelon()
    for row in rows:
        echelon.add(row)
    return echelon.rank


def row_reduce(
    rows: Iterable[Dict[Hashable, Fraction]],
    column_key: Optional[Callable] = None,
) -> List[Vector]:
    """Reduced row echelon form with monic pivots.

    Pivots are chosen as the *smallest* column under ``column_key`` that
    survives in a row; pass a key that sorts the preferred columns first.
    The result is sorted by pivot.
    """
    key = column_key if column_key is not None else (lambda c: c)
    pivots: Dict[Hashable, Vector] = {}
    for row in rows:
        current = {k: Fraction(v) for k, v in row.items() if v}
        while current:
            column = min(current, key=key)
            pivot_row = pivots.get(column)
            if pivot_row is None:
                break
            factor = current[column]
            for k, v in pivot_row.items():
                value = current.get(k, 0) - factor * v
                if value:
                    current[k] = value
                else:
                    current.pop(k, None)
        if not current:
            continue
        column = min(current, key=key)
        # clear the remaining pivot columns; pivot rows vanish left of their
        # pivot, so the leading entry survives
        for other_column, other in pivots.items():
            factor = current.get(other_column)
            if factor:
                for k, v in other.items():
                    value = current.get(k, 0) - factor * v
                    if value:
                        current[k] = value
                    else:
                        current.pop(k, None)
        scale = current[column]
        current = {k: v / scale for k, v in current.items()}
        for other in pivots.values():
            factor = other.get(column)
            if factor:
                for k, v in current.items():
                    value = other.get(k, 0) - factor * v
                    if value:
                        other[k] = value
                    else:
                        other.pop(k, None)
        pivots[column] = current
    return [pivots[c] for c in sorted(pivots, key=key)]


def kernel(images: Sequence[Dict[Hashable, Fraction]]) -> List[Dict[int, Fraction]]:
    """Basis of ``{c : sum_s c[s] * images[s] = 0}``.

    ``images[s]`` is the image of the ``s``-th source basis vector; kernel
    vectors are returned as sparse dictionaries over source indices.
    """
    pivots: Dict[Hashable, Tuple[Vector, Dict[int, Fraction]]] = {}
    basis: List[Dict[int, Fraction]] = []
    for index, image in enumerate(images):
        current = {k: Fraction(v) for k, v in image.items() if v}
        tag: Dict[int, Fraction] = {index: Fraction(1)}
        while current:
            column = min(current)
            entry = pivots.get(column)
            if entry is None:
                break
            pivot_row, pivot_tag = entry
            factor = current[column] / pivot_row[column]
            for k, v in pivot_row.items():
                value = current.get(k, 0) - factor * v
                if value:
                    current[k] = value
                else:
                    current.pop(k, None)
            for k, v in pivot_tag.items():
                value = tag.get(k, 0) - factor * v
                if value:
                    tag[k] = value
                else:
                    tag.pop(k, None)
        if current:
            pivots[min(current)] = (current, tag)
        else:
            basis.append(tag)
    return basis


def determinant(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Bareiss determinant of a square rational matrix."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise LinearAlgebraError("determinant needs a square matrix")
    if n == 0:
        return Fraction(1)
    m = [[Fraction(v) for v in row] for row in matrix]
    sign = 1
    previous = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / previous
        previous = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse(matrix: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """Gauss-Jordan inverse of a square rational matrix."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise LinearAlgebraError("inverse needs a square matrix")
    left = [[Fraction(v) for v in row] for row in matrix]
    right = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        swap = next((r for r in range(i, n) if left[r][i] != 0), None)
        if swap is None:
            raise LinearAlgebraError("matrix is not invertible")
        left[i], left[swap] = left[swap], left[i]
        right[i], right[swap] = right[swap], right[i]
        pivot = left[i][i]
        left[i] = [v / pivot for v in left[i]]
        right[i] = [v / pivot for v in right[i]]
        for r in range(n):
            if r != i and left[r][i] != 0:
                factor = left[r][i]
                left[r] = [a - factor * b for a, b in zip(left[r], left[i])]
                right[r] = [a - factor * b for a, b in zip(right[r], right[i])]
    return right
