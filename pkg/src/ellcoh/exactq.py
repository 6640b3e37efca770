"""Exact linear algebra over the rationals, finite cochain complexes and
Betti vectors.

Everything in this module is computed with arbitrary-precision rational
arithmetic (``int`` and ``fractions.Fraction``); no floating point is used
anywhere.  Ranks are obtained by plain exact Gaussian elimination, which is
all the rest of the package ever needs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import FieldMismatchError, NotACochainComplexError

RATIONAL = "rational"
COMPLEX = "complex"

Rational = Union[int, Fraction]


def _check_rational(x) -> Rational:
    if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
        raise TypeError(f"exact rational expected, got {x!r}")
    return x


class RationalMatrix:
    """Immutable dense matrix with exact rational entries.

    >>> RationalMatrix.identity(2).rank()
    2
    >>> RationalMatrix.from_rows([[1, 2], [2, 4], [3, 6]]).rank()
    1
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[Iterable[Rational]]):
        entries = tuple(tuple(_check_rational(e) for e in row) for row in entries)
        if len(entries) != rows or any(len(row) != cols for row in entries):
            raise ValueError(f"entries do not form a {rows}x{cols} matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Rational]]) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, ((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, ((1 if i == j else 0 for j in range(n)) for i in range(n)))

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb)
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols})"

    def is_zero(self) -> bool:
        return all(not e for row in self.entries for e in row)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        result = [[0] * other.cols for _ in range(self.rows)]
        for i, row in enumerate(self.entries):
            out = result[i]
            for k, a in enumerate(row):
                if a:
                    for j, b in enumerate(other.entries[k]):
                        if b:
                            out[j] += a * b
        return RationalMatrix(self.rows, other.cols, result)

    def rank(self) -> int:
        """Exact rank by Gaussian elimination over the rationals."""
        m = [list(row) for row in self.entries]
        nrows, ncols = self.rows, self.cols
        r = 0
        for c in range(ncols):
            pivot_row = None
            for i in range(r, nrows):
                if m[i][c]:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            pivot = m[r]
            pv = pivot[c]
            for i in range(r + 1, nrows):
                f = m[i][c]
                if f:
                    ratio = Fraction(f) / Fraction(pv)
                    row = m[i]
                    row[c] = 0
                    for j in range(c + 1, ncols):
                        if pivot[j]:
                            row[j] -= ratio * pivot[j]
            r += 1
            if r == nrows:
                break
        return r


class BettiVector:
    """Cohomology dimensions by degree over a fixed coefficient field.

    The field tag is bookkeeping only: ``COMPLEX`` records that the stored
    numbers are complex dimensions.  Degrees with no entry are zero.

    >>> BettiVector([1, 2, 1]).euler_char()
    0
    >>> BettiVector([1, 2, 1]).shift(1).as_list()
    [0, 1, 2, 1]
    """

    __slots__ = ("_dims", "field_tag")

    def __init__(self, dims, field_tag: str = RATIONAL):
        if field_tag not in (RATIONAL, COMPLEX):
            raise ValueError(f"unknown field tag {field_tag!r}")
        if isinstance(dims, Mapping):
            items = dims.items()
        else:
            items = enumerate(dims)
        cleaned = {}
        for k, v in items:
            if not isinstance(k, int) or isinstance(v, bool) or not isinstance(v, int):
                raise TypeError("degrees and dimensions must be integers")
            if v < 0:
                raise ValueError(f"negative dimension {v} in degree {k}")
            if v:
                cleaned[k] = cleaned.get(k, 0) + v
        object.__setattr__(self, "_dims", tuple(sorted(cleaned.items())))
        object.__setattr__(self, "field_tag", field_tag)

    def __setattr__(self, name, value):
        raise AttributeError("BettiVector is immutable")

    def dim(self, degree: int) -> int:
        for k, v in self._dims:
            if k == degree:
                return v
        return 0

    @property
    def dims(self) -> dict:
        return dict(self._dims)

    @property
    def support(self) -> tuple:
        return tuple(k for k, _ in self._dims)

    def is_zero(self) -> bool:
        return not self._dims

    def min_degree(self) -> int:
        return self._dims[0][0] if self._dims else 0

    def max_degree(self) -> int:
        return self._dims[-1][0] if self._dims else 0

    def as_list(self, length: int | None = None) -> list:
        """Dimensions from degree 0 upward (requires support in degrees >= 0)."""
        if self._dims and self._dims[0][0] < 0:
            raise ValueError("vector has support in negative degrees")
        n = (self.max_degree() + 1) if length is None else length
        if not self._dims and length is None:
            n = 0
        return [self.dim(k) for k in range(n)]

    def direct_sum(self, other: "BettiVector") -> "BettiVector":
        if self.field_tag != other.field_tag:
            raise FieldMismatchError(
                f"cannot sum {self.field_tag} and {other.field_tag} Betti vectors"
            )
        out = dict(self._dims)
        for k, v in other._dims:
            out[k] = out.get(k, 0) + v
        return BettiVector(out, self.field_tag)

    __add__ = direct_sum

    def shift(self, s: int) -> "BettiVector":
        return BettiVector({k + s: v for k, v in self._dims}, self.field_tag)

    def euler_char(self) -> int:
        return sum((-1) ** k * v for k, v in self._dims)

    def tensor(self, other: "BettiVector") -> "BettiVector":
        """Graded tensor product (the Kunneth dimensions of a product)."""
        if self.field_tag != other.field_tag:
            raise FieldMismatchError(
                f"cannot tensor {self.field_tag} and {other.field_tag} Betti vectors"
            )
        out = {}
        for j, a in self._dims:
            for k, b in other._dims:
                out[j + k] = out.get(j + k, 0) + a * b
        return BettiVector(out, self.field_tag)

    def scale(self, n: int) -> "BettiVector":
        if n < 0:
            raise ValueError("scale factor must be non-negative")
        return BettiVector({k: n * v for k, v in self._dims}, self.field_tag)

    def retag(self, field_tag: str) -> "BettiVector":
        return BettiVector(dict(self._dims), field_tag)

    def __eq__(self, other):
        if not isinstance(other, BettiVector):
            return NotImplemented
        return self._dims == other._dims and self.field_tag == other.field_tag

    def __hash__(self):
        return hash((self._dims, self.field_tag))

    def __repr__(self):
        tag = "" if self.field_tag == RATIONAL else f", field_tag={self.field_tag!r}"
        if self._dims and self._dims[0][0] < 0:
            return f"BettiVector({dict(self._dims)!r}{tag})"
        return f"BettiVector({self.as_list()!r}{tag})"


class CochainComplex:
    """Finite complex of rational vector spaces with exact differentials.

    ``spaces[i]`` is the dimension in degree ``min_degree + i``;
    ``differentials[i]`` maps that degree into the next one and therefore has
    shape ``spaces[i+1] x spaces[i]``.
    """

    __slots__ = ("min_degree", "spaces", "differentials")

    def __init__(
        self,
        min_degree: int,
        spaces: Sequence[int],
        differentials: Sequence[RationalMatrix] | None = None,
    ):
        spaces = tuple(int(s) for s in spaces)
        if any(s < 0 for s in spaces):
            raise ValueError("space dimensions must be non-negative")
        if differentials is None:
            differentials = tuple(
                RationalMatrix.zero(spaces[i + 1], spaces[i]) for i in range(len(spaces) - 1)
            )
        else:
            differentials = tuple(differentials)
        if len(differentials) != max(len(spaces) - 1, 0):
            raise ValueError("need one differential per consecutive pair of degrees")
        for i, d in enumerate(differentials):
            if (d.rows, d.cols) != (spaces[i + 1], spaces[i]):
                raise ValueError(
                    f"differential {i} has shape {d.rows}x{d.cols}, "
                    f"expected {spaces[i + 1]}x{spaces[i]}"
                )
        object.__setattr__(self, "min_degree", min_degree)
        object.__setattr__(self, "spaces", spaces)
        object.__setattr__(self, "differentials", differentials)

    def __setattr__(self, name, value):
        raise AttributeError("CochainComplex is immutable")

    @property
    def max_degree(self) -> int:
        return self.min_degree + len(self.spaces) - 1

    def dimension(self, degree: int) -> int:
        i = degree - self.min_degree
        if 0 <= i < len(self.spaces):
            return self.spaces[i]
        return 0

    def differential(self, degree: int) -> RationalMatrix:
        i = degree - self.min_degree
        if 0 <= i < len(self.differentials):
            return self.differentials[i]
        return RationalMatrix.zero(self.dimension(degree + 1), self.dimension(degree))

    def is_complex(self) -> bool:
        """Check d composed with d vanishes for every consecutive pair."""
        return all(
            (self.differentials[i + 1] @ self.differentials[i]).is_zero()
            for i in range(len(self.differentials) - 1)
        )

    def cohomology(self) -> BettiVector:
        """Betti vector of the complex: kernel modulo image in each degree."""
        if not self.is_complex():
            raise NotACochainComplexError("differentials do not square to zero")
        ranks = [d.rank() for d in self.differentials]
        dims = {}
        for i, dim in enumerate(self.spaces):
            out_rank = ranks[i] if i < len(ranks) else 0
            in_rank = ranks[i - 1] if i > 0 else 0
            dims[self.min_degree + i] = dim - out_rank - in_rank
        return BettiVector(dims)

    def euler_char(self) -> int:
        return sum((-1) ** (self.min_degree + i) * s for i, s in enumerate(self.spaces))


def rank(m: RationalMatrix) -> int:
    return m.rank()


def cohomology(c: CochainComplex) -> BettiVector:
    return c.cohomology()


def direct_sum(a: BettiVector, b: BettiVector) -> BettiVector:
    return a.direct_sum(b)


def shift(a: BettiVector, s: int) -> BettiVector:
    return a.shift(s)


def euler_char(a: BettiVector) -> int:
    return a.euler_char()
