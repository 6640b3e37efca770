"""Executable local model of the elliptic tangent bundle complex on a
standard crossing chart.

On a chart where the divisor ideal is generated by
``(x_1^2 + y_1^2) ... (x_l^2 + y_l^2)`` the closed one-forms
``dlog r_1, dtheta_1, ..., dlog r_l, dtheta_l`` freely generate the algebroid
cohomology, so the chart model is the exterior algebra on ``2l`` labelled
degree-one generators with zero differential.  This module implements that
algebra, the radial residue operators that peel off ``dlog r`` factors, and a
brute-force rank check that the residue decomposition map

    alpha  |->  (restriction to the divisor complement,
                 residues over all multi-indices)

is a degreewise bijection.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import BadMultiIndexError, BoundExceededError, DimensionMismatchError
from .exactq import CochainComplex, RationalMatrix

LOG_R = "log_r"
THETA = "theta"

DEFAULT_LOCAL_BOUND = 6


@dataclass(frozen=True)
class Generator:
    """A degree-one generator: dlog r_i (kind LOG_R) or dtheta_i (kind THETA)."""

    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in (LOG_R, THETA):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.index < 1:
            raise ValueError("generator index starts at 1")

    def sort_key(self) -> tuple:
        return (0 if self.kind == LOG_R else 1, self.index)

    def __repr__(self):
        return f"{'l' if self.kind == LOG_R else 't'}{self.index}"


def log_r(i: int) -> Generator:
    return Generator(LOG_R, i)


def theta(i: int) -> Generator:
    return Generator(THETA, i)


def all_generators(l: int) -> tuple:
    """All 2l generators in canonical order: dlog r first, then dtheta."""
    return tuple(log_r(i) for i in range(1, l + 1)) + tuple(theta(i) for i in range(1, l + 1))


def _canonical(gens: Sequence[Generator]) -> tuple:
    """Sort a generator word into canonical order.

    Returns ``(sign, word)`` with the permutation sign, or ``(0, ())`` when a
    generator repeats (its square is zero).
    """
    word = list(gens)
    sign = 1
    # insertion sort, counting transpositions of adjacent degree-1 generators
    for i in range(1, len(word)):
        j = i
        while j > 0 and word[j - 1].sort_key() > word[j].sort_key():
            word[j - 1], word[j] = word[j], word[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(word, word[1:]):
        if a == b:
            return 0, ()
    return sign, tuple(word)


class MultiVectorForm:
    """Element of the free graded-commutative algebra on ``2l`` generators.

    Terms map canonically ordered generator tuples to nonzero rational
    coefficients.  Forms are immutable; all operations return new forms.
    """

    __slots__ = ("l", "_terms")

    def __init__(self, l: int, terms: Mapping[tuple, object] | None = None):
        if l < 0:
            raise ValueError("generator count must be non-negative")
        cleaned = {}
        for mono, coeff in (terms or {}).items():
            if isinstance(coeff, float):
                raise TypeError("coefficients must be exact rationals")
            for g in mono:
                if g.index > l:
                    raise ValueError(f"generator {g!r} out of range for l={l}")
            sign, word = _canonical(tuple(mono))
            if sign == 0 or coeff == 0:
                continue
            cleaned[word] = cleaned.get(word, 0) + sign * coeff
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "_terms", {m: c for m, c in cleaned.items() if c})

    def __setattr__(self, name, value):
        raise AttributeError("MultiVectorForm is immutable")

    @classmethod
    def zero(cls, l: int) -> "MultiVectorForm":
        return cls(l)

    @classmethod
    def unit(cls, l: int) -> "MultiVectorForm":
        return cls(l, {(): 1})

    @classmethod
    def from_generator(cls, l: int, g: Generator) -> "MultiVectorForm":
        return cls(l, {(g,): 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, mono: Sequence[Generator]):
        sign, word = _canonical(tuple(mono))
        if sign == 0:
            return 0
        return sign * self._terms.get(word, 0)

    def degree(self) -> int | None:
        """Degree of a homogeneous form, None for zero or mixed degree."""
        degrees = {len(m) for m in self._terms}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def homogeneous_part(self, k: int) -> "MultiVectorForm":
        return MultiVectorForm(self.l, {m: c for m, c in self._terms.items() if len(m) == k})

    def _require_same_l(self, other: "MultiVectorForm"):
        if self.l != other.l:
            raise DimensionMismatchError(f"forms over l={self.l} and l={other.l} generators")

    def __add__(self, other: "MultiVectorForm") -> "MultiVectorForm":
        self._require_same_l(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return MultiVectorForm(self.l, out)

    def __neg__(self) -> "MultiVectorForm":
        return self.scale(-1)

    def __sub__(self, other: "MultiVectorForm") -> "MultiVectorForm":
        return self + (-other)

    def scale(self, c) -> "MultiVectorForm":
        return MultiVectorForm(self.l, {m: c * v for m, v in self._terms.items()})

    def wedge(self, other: "MultiVectorForm") -> "MultiVectorForm":
        """Graded-commutative product."""
        self._require_same_l(other)
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                sign, word = _canonical(m1 + m2)
                if sign:
                    out[word] = out.get(word, 0) + sign * c1 * c2
        return MultiVectorForm(self.l, out)

    __xor__ = wedge

    def __eq__(self, other):
        if not isinstance(other, MultiVectorForm):
            return NotImplemented
        return self.l == other.l and self._terms == other._terms

    def __hash__(self):
        return hash((self.l, tuple(sorted(self._terms.items(), key=lambda t: t[0]))))

    def __repr__(self):
        if not self._terms:
            return f"MultiVectorForm(l={self.l}, 0)"
        parts = []
        for mono, coeff in sorted(self._terms.items(), key=lambda t: (len(t[0]), t[0])):
            name = "^".join(map(repr, mono)) if mono else "1"
            parts.append(f"{coeff}*{name}")
        return f"MultiVectorForm(l={self.l}, {' + '.join(parts)})"


def _check_multi_index(J: Sequence[int], l: int) -> tuple:
    J = tuple(J)
    if not J:
        raise BadMultiIndexError("multi-index is empty")
    if any(not isinstance(j, int) or j < 1 or j > l for j in J):
        raise BadMultiIndexError(f"multi-index {J} out of range 1..{l}")
    if any(a >= b for a, b in zip(J, J[1:])):
        raise BadMultiIndexError(f"multi-index {J} is not strictly increasing")
    return J


def _extract_log_front(mono: tuple, J: tuple):
    """Factor ``mono`` as ``l_J ^ rest`` if possible.

    Returns ``(sign, rest)`` where sign is the sign of the permutation moving
    the J-indexed LOG_R generators to the front, or None when some ``l_j`` is
    missing from the monomial.
    """
    positions = []
    wanted = set(J)
    for pos, g in enumerate(mono):
        if g.kind == LOG_R and g.index in wanted:
            positions.append(pos)
    if len(positions) != len(J):
        return None
    s = len(positions)
    sign = -1 if (sum(positions) - s * (s - 1) // 2) % 2 else 1
    rest = tuple(g for pos, g in enumerate(mono) if pos not in set(positions))
    return sign, rest


def radial_residue(a: MultiVectorForm, J: Sequence[int]) -> MultiVectorForm:
    """Contract away the ``dlog r_j`` factors named by the multi-index J.

    For each term divisible by ``l_{j_1} ^ ... ^ l_{j_s}`` the result picks
    up the complementary factor with the sign of the permutation moving those
    generators to the front.  Terms missing any ``l_j`` contribute nothing.
    Leftover LOG_R generators outside J are retained; discarding them is the
    restriction step of :func:`decomposition_map`.

    >>> l = 1
    >>> form = MultiVectorForm.from_generator(l, log_r(1)) ^ MultiVectorForm.from_generator(l, theta(1))
    >>> radial_residue(form, (1,)) == MultiVectorForm.from_generator(l, theta(1))
    True
    """
    J = _check_multi_index(J, a.l)
    out = {}
    for mono, coeff in a.terms.items():
        extracted = _extract_log_front(mono, J)
        if extracted is None:
            continue
        sign, rest = extracted
        out[rest] = out.get(rest, 0) + sign * coeff
    return MultiVectorForm(a.l, out)


def _theta_only(a: MultiVectorForm) -> MultiVectorForm:
    return MultiVectorForm(
        a.l, {m: c for m, c in a.terms.items() if all(g.kind == THETA for g in m)}
    )


def decomposition_map(a: MultiVectorForm) -> dict:
    """Split a form into its complement restriction and stratum residues.

    Returns a map from multi-indices to forms in the theta-only subalgebra:
    the empty index () receives the part of ``a`` free of LOG_R generators
    (restriction to the chart minus the divisor); the index J receives the
    radial residue over J restricted to the stratum, i.e. with any leftover
    LOG_R-containing terms discarded.  The map is linear in ``a``.
    """
    pieces = {(): _theta_only(a)}
    log_sets = set()
    for mono in a.terms:
        idx = tuple(g.index for g in mono if g.kind == LOG_R)
        if idx:
            log_sets.add(idx)
    for J in log_sets:
        pieces[J] = _theta_only(radial_residue(a, J))
    return {J: f for J, f in pieces.items() if J == () or not f.is_zero()}


class DecompositionTarget:
    """Codomain of the decomposition map for a chart with ``l`` crossings.

    One piece per multi-index J of {1..l} (the empty index included), each an
    exterior algebra on the ``l`` theta generators placed at degree shift |J|.
    """

    __slots__ = ("l",)

    def __init__(self, l: int):
        object.__setattr__(self, "l", l)

    def __setattr__(self, name, value):
        raise AttributeError("DecompositionTarget is immutable")

    def pieces(self) -> list:
        out = [()]
        for size in range(1, self.l + 1):
            out.extend(itertools.combinations(range(1, self.l + 1), size))
        return out

    def piece_count(self) -> int:
        return 2**self.l

    def dim(self, k: int) -> int:
        return sum(comb(self.l, i) * comb(self.l, k - i) for i in range(0, self.l + 1))

    def basis(self, k: int) -> list:
        """Pairs (J, theta monomial) spanning total degree k."""
        out = []
        thetas = [theta(i) for i in range(1, self.l + 1)]
        for J in self.pieces():
            rem = k - len(J)
            if 0 <= rem <= self.l:
                out.extend((J, mono) for mono in itertools.combinations(thetas, rem))
        return out


def build_local_complex(l: int) -> CochainComplex:
    """Chart-model complex: C(2l, k) in degree k with zero differential.

    All generators are closed, so the complex computes its own cohomology.

    >>> build_local_complex(2).cohomology().as_list()
    [1, 4, 6, 4, 1]
    """
    if l < 0:
        raise ValueError("crossing count must be non-negative")
    return CochainComplex(0, tuple(comb(2 * l, k) for k in range(2 * l + 1)))


@dataclass(frozen=True)
class DegreeCheck:
    degree: int
    source_dim: int
    target_dim: int
    rank: int


@dataclass(frozen=True)
class LocalModelReport:
    l: int
    degrees: tuple
    injective: bool
    surjective: bool

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective


def decomposition_matrix(l: int, k: int) -> RationalMatrix:
    """Matrix of the decomposition map in degree k, in the monomial bases."""
    gens = all_generators(l)
    source = list(itertools.combinations(gens, k))
    target = DecompositionTarget(l).basis(k)
    index = {pair: row for row, pair in enumerate(target)}
    columns = []
    for mono in source:
        col = {}
        image = decomposition_map(MultiVectorForm(l, {mono: 1}))
        for J, form in image.items():
            for tmono, coeff in form.terms.items():
                col[index[(J, tmono)]] = coeff
        columns.append(col)
    entries = [[0] * len(source) for _ in range(len(target))]
    for j, col in enumerate(columns):
        for i, coeff in col.items():
            entries[i][j] = coeff
    return RationalMatrix(len(target), len(source), entries)


def verify_local_isomorphism(l: int, bound: int = DEFAULT_LOCAL_BOUND) -> LocalModelReport:
    """Brute-force check that the decomposition map is a degreewise bijection.

    Builds the map degree by degree as an exact rational matrix and compares
    its rank against both side's dimensions.  Matrix sizes grow as C(2l, k),
    hence the configurable bound.
    """
    if l < 0:
        raise ValueError("crossing count must be non-negative")
    if l > bound:
        raise BoundExceededError(f"l={l} exceeds configured bound {bound}")
    checks = []
    injective = surjective = True
    for k in range(0, 2 * l + 1):
        matrix = decomposition_matrix(l, k)
        rk = matrix.rank()
        checks.append(DegreeCheck(k, matrix.cols, matrix.rows, rk))
        injective &= rk == matrix.cols
        surjective &= rk == matrix.rows
    return LocalModelReport(l, tuple(checks), injective, surjective)
