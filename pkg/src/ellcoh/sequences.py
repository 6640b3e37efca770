"""Exact-sequence toolkit: a finite exact-sequence solver plus the two long
exact sequences used for circle bundles and codimension-two complements.

The solver works purely with dimensions and map ranks.  Geometric facts (a
cup product being an isomorphism, a pushforward hitting a generator) enter as
explicit numeric rank inputs, which keeps every deduction auditable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from .errors import InconsistentError, RankOutOfRangeError, UnderdeterminedError
from .exactq import RATIONAL, BettiVector

Term = Union[int, str]  # int = known dimension, str = labelled unknown


@dataclass(frozen=True)
class SequenceSpec:
    """A finite exact sequence with possibly unknown dimensions and ranks.

    ``terms`` lists the spaces in order; an ``int`` is a known dimension and
    a ``str`` labels an unknown one.  ``ranks`` has one entry per arrow
    (``len(terms) - 1``); ``None`` marks an unknown rank.  The sequence must
    begin and end with the zero space.
    """

    terms: tuple
    ranks: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        object.__setattr__(self, "ranks", tuple(self.ranks))
        if len(self.terms) < 2:
            raise ValueError("sequence needs at least the two boundary zeros")
        if self.terms[0] != 0 or self.terms[-1] != 0:
            raise ValueError("sequence must begin and end with the zero space")
        if len(self.ranks) != len(self.terms) - 1:
            raise ValueError("need exactly one rank slot per arrow")
        labels = [t for t in self.terms if isinstance(t, str)]
        if len(labels) != len(set(labels)):
            raise ValueError("unknown labels must be distinct")
        for t in self.terms:
            if isinstance(t, int) and t < 0:
                raise ValueError("dimensions must be non-negative")
        for r in self.ranks:
            if r is not None and (not isinstance(r, int) or r < 0):
                raise ValueError("ranks must be non-negative integers or None")


@dataclass(frozen=True)
class SequenceSolution:
    dims: tuple
    ranks: tuple
    assignment: dict  # unknown label -> forced dimension


class _Interval:
    __slots__ = ("lo", "hi")

    def __init__(self, lo=0, hi=None):
        self.lo = lo
        self.hi = hi  # None = unbounded

    def tighten(self, lo=None, hi=None) -> bool:
        changed = False
        if lo is not None and lo > self.lo:
            self.lo = lo
            changed = True
        if hi is not None and (self.hi is None or hi < self.hi):
            self.hi = hi
            changed = True
        if self.hi is not None and self.lo > self.hi:
            raise InconsistentError(f"empty range [{self.lo}, {self.hi}]")
        return changed

    @property
    def pinned(self) -> bool:
        return self.hi is not None and self.lo == self.hi


def solve_exact(spec: SequenceSpec) -> SequenceSolution:
    """Force every unknown dimension and rank from exactness, or fail.

    At each interior term exactness gives ``dim = rank(in) + rank(out)``;
    arrows touching a zero space have rank zero; every rank is bounded by the
    dimensions of its source and target.  These constraints are propagated as
    integer intervals until nothing changes.  Only forced values are ever
    reported: if an unknown remains unpinned the solver raises
    ``UnderdeterminedError`` listing it, and contradictory constraints raise
    ``InconsistentError``.

    >>> solve_exact(SequenceSpec((0, 2, "X", 1, 0), (None, None, 1, None))).assignment
    {'X': 3}
    """
    n = len(spec.terms)
    dims = [
        _Interval(t, t) if isinstance(t, int) else _Interval(0, None) for t in spec.terms
    ]
    ranks = [
        _Interval(r, r) if r is not None else _Interval(0, None) for r in spec.ranks
    ]

    def propagate() -> bool:
        changed = False
        for j, r in enumerate(ranks):
            changed |= r.tighten(hi=dims[j].hi)
            changed |= r.tighten(hi=dims[j + 1].hi)
        # exactness at interior terms: dim = rank(in) + rank(out)
        for i in range(1, n - 1):
            rin, rout, d = ranks[i - 1], ranks[i], dims[i]
            changed |= d.tighten(lo=rin.lo + rout.lo)
            if rin.hi is not None and rout.hi is not None:
                changed |= d.tighten(hi=rin.hi + rout.hi)
            if d.hi is not None:
                changed |= rin.tighten(hi=d.hi - rout.lo)
                changed |= rout.tighten(hi=d.hi - rin.lo)
            if rout.hi is not None:
                changed |= rin.tighten(lo=d.lo - rout.hi)
            if rin.hi is not None:
                changed |= rout.tighten(lo=d.lo - rin.hi)
        return changed

    try:
        while propagate():
            pass
    except InconsistentError as err:
        raise InconsistentError(f"exactness constraints contradict: {err}") from None

    free = [t for i, t in enumerate(spec.terms) if isinstance(t, str) and not dims[i].pinned]
    free += [f"rank[{j}]" for j, r in enumerate(ranks) if not r.pinned]
    if free:
        raise UnderdeterminedError(free)

    assignment = {
        t: dims[i].lo for i, t in enumerate(spec.terms) if isinstance(t, str)
    }
    return SequenceSolution(
        dims=tuple(d.lo for d in dims),
        ranks=tuple(r.lo for r in ranks),
        assignment=assignment,
    )


def _rank_map(ranks: Mapping[int, int] | None) -> dict:
    out = {}
    for k, r in (ranks or {}).items():
        k, r = int(k), int(r)
        if r < 0:
            raise RankOutOfRangeError(f"negative rank {r} in degree {k}")
        if r:
            out[k] = r
    return out


def gysin_circle(base: BettiVector, cup_e_ranks: Mapping[int, int] | None = None) -> BettiVector:
    """Cohomology of a circle bundle from its base and Euler-class cup ranks.

    ``cup_e_ranks[k]`` is the rank of cupping with the Euler class
    ``H^k(B) -> H^{k+2}(B)``.  The long exact sequence splits the bundle's
    cohomology degreewise into a cokernel and a kernel of those cup maps:

        dim H^k(P) = (b_k - r_{k-2}) + (b_{k-1} - r_{k-1}).

    >>> gysin_circle(BettiVector([1, 2, 1])).as_list()
    [1, 3, 3, 1]
    """
    ranks = _rank_map(cup_e_ranks)
    for k, r in ranks.items():
        if r > min(base.dim(k), base.dim(k + 2)):
            raise RankOutOfRangeError(
                f"cup rank {r} in degree {k} exceeds min(b_{k}, b_{k + 2})"
            )
    top = base.max_degree()
    dims = {}
    for k in range(0, top + 2):
        coker = base.dim(k) - ranks.get(k - 2, 0)
        ker = base.dim(k - 1) - ranks.get(k - 1, 0)
        dims[k] = coker + ker
    return BettiVector(dims, base.field_tag)


def complement_betti(
    ambient: BettiVector,
    locus: BettiVector,
    pushforward_ranks: Mapping[int, int] | None = None,
) -> BettiVector:
    """Cohomology of the complement of a closed codimension-two locus.

    ``pushforward_ranks[k]`` is the rank of the degree-raising pushforward
    ``H^{k-2}(D) -> H^k(M)``.  The complement sequence gives

        dim H^k(M \\ D) = (m_k - p_k) + (d_{k-1} - p_{k+1}).

    >>> cp2 = BettiVector([1, 0, 1, 0, 1])
    >>> torus = BettiVector([1, 2, 1])
    >>> complement_betti(cp2, torus, {2: 1, 4: 1}).as_list()
    [1, 0, 2, 0, 0]
    """
    if ambient.field_tag != locus.field_tag:
        raise RankOutOfRangeError("ambient and locus Betti vectors use different fields")
    ranks = _rank_map(pushforward_ranks)
    for k, r in ranks.items():
        if r > min(locus.dim(k - 2), ambient.dim(k)):
            raise RankOutOfRangeError(
                f"pushforward rank {r} into degree {k} exceeds min(d_{k - 2}, m_{k})"
            )
    top = max(ambient.max_degree(), locus.max_degree() + 2)
    dims = {}
    for k in range(0, top + 1):
        coker = ambient.dim(k) - ranks.get(k, 0)
        ker = locus.dim(k - 1) - ranks.get(k + 1, 0)
        dims[k] = coker + ker
    return BettiVector(dims, ambient.field_tag)
