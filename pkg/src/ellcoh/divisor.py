"""Input data model for a stratified elliptic divisor.

A divisor is described purely by topological data: the cohomology of the
complement, one residue-space input per stratum depth, and the flags saying
which closed-form description of the residue spaces applies.  Betti vectors
are the whole interface; no differential geometry is represented.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Mapping, Union

from . import sequences
from .exactq import RATIONAL, BettiVector
from .errors import ValidationFailedError

ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    where: str
    message: str

    def __str__(self):
        return f"{self.severity} at {self.where}: {self.message}"

    @property
    def fatal(self) -> bool:
        return self.severity == ERROR


@dataclass(frozen=True)
class Flags:
    global_normal_crossing: bool = True
    d1_coorientable: bool = True


@dataclass(frozen=True)
class DirectResidue:
    """User-supplied residue-space cohomology for one stratum."""

    stratum_index: int
    betti: BettiVector
    closed_stratum: bool = False

    mode = "direct"


@dataclass(frozen=True)
class TrivialTorusResidue:
    """Residue space is the trivial torus bundle T^i x D[i]."""

    stratum_index: int
    base_betti: BettiVector
    closed_stratum: bool = False

    mode = "trivial_torus"


@dataclass(frozen=True)
class CircleGysinResidue:
    """Residue space is a circle bundle over D[1] with given cup-rank data."""

    stratum_index: int
    base_betti: BettiVector
    cup_e_ranks: tuple = ()
    closed_stratum: bool = False

    mode = "circle_gysin"

    def __post_init__(self):
        if isinstance(self.cup_e_ranks, Mapping):
            object.__setattr__(self, "cup_e_ranks", tuple(sorted(self.cup_e_ranks.items())))
        else:
            object.__setattr__(self, "cup_e_ranks", tuple(self.cup_e_ranks))

    def rank_map(self) -> dict:
        return dict(self.cup_e_ranks)


@dataclass(frozen=True)
class PointsResidue:
    """Deepest stratum is a finite point set; residue space is count copies of T^i."""

    stratum_index: int
    count: int

    mode = "points"
    closed_stratum = True


ResidueSpaceInput = Union[DirectResidue, TrivialTorusResidue, CircleGysinResidue, PointsResidue]


@dataclass(frozen=True)
class ComplementRecipe:
    """Complement cohomology specified through the codimension-two sequence."""

    ambient_betti: BettiVector
    locus_betti: BettiVector
    pushforward_ranks: tuple = ()

    def __post_init__(self):
        if isinstance(self.pushforward_ranks, Mapping):
            object.__setattr__(
                self, "pushforward_ranks", tuple(sorted(self.pushforward_ranks.items()))
            )
        else:
            object.__setattr__(self, "pushforward_ranks", tuple(self.pushforward_ranks))

    def rank_map(self) -> dict:
        return dict(self.pushforward_ranks)


@dataclass(frozen=True)
class CrossCheck:
    """Alternate reading of the same divisor used for divergence reporting."""

    complement: Union[BettiVector, ComplementRecipe, None] = None
    residues: Union[tuple, None] = None

    def __post_init__(self):
        if self.residues is not None:
            object.__setattr__(self, "residues", tuple(self.residues))


@dataclass(frozen=True)
class DivisorSpec:
    name: str
    ambient_dim: int
    intersection_number: int
    complement: Union[BettiVector, ComplementRecipe]
    residue_inputs: tuple
    flags: Flags = Flags()
    field_tag: str = RATIONAL
    cross_check: Union[CrossCheck, None] = None
    description: str = ""

    def __post_init__(self):
        object.__setattr__(self, "residue_inputs", tuple(self.residue_inputs))


def torus_betti(i: int, field_tag: str = RATIONAL) -> BettiVector:
    """Betti vector of the i-torus: binomial coefficients C(i, k)."""
    return BettiVector([comb(i, k) for k in range(i + 1)], field_tag)


def resolve_complement(spec: DivisorSpec) -> BettiVector:
    if isinstance(spec.complement, ComplementRecipe):
        return sequences.complement_betti(
            spec.complement.ambient_betti,
            spec.complement.locus_betti,
            spec.complement.rank_map(),
        )
    return spec.complement


def resolve_residue(res: ResidueSpaceInput, field_tag: str = RATIONAL) -> BettiVector:
    """Betti vector of the residue space for one stratum input."""
    if isinstance(res, DirectResidue):
        return res.betti
    if isinstance(res, TrivialTorusResidue):
        return torus_betti(res.stratum_index, field_tag).tensor(res.base_betti)
    if isinstance(res, CircleGysinResidue):
        return sequences.gysin_circle(res.base_betti, res.rank_map())
    if isinstance(res, PointsResidue):
        return torus_betti(res.stratum_index, field_tag).scale(res.count)
    raise TypeError(f"unknown residue input {res!r}")


def _residue_betti_inputs(res: ResidueSpaceInput):
    if isinstance(res, DirectResidue):
        yield "betti", res.betti
    elif isinstance(res, (TrivialTorusResidue, CircleGysinResidue)):
        yield "base_betti", res.base_betti


def validate(spec: DivisorSpec) -> list:
    """Structural diagnostics for a divisor description.

    Returns an empty list when every invariant holds.  Entries carry a
    severity; only ``error`` entries block assembly.  A warning is issued for
    residue inputs whose Euler characteristic is nonzero, since a genuine
    torus-bundle residue space always has Euler characteristic zero.
    """
    diags = []
    m, n = spec.ambient_dim, spec.intersection_number

    def err(where, message):
        diags.append(Diagnostic(ERROR, where, message))

    def warn(where, message):
        diags.append(Diagnostic(WARNING, where, message))

    if m < 0:
        err("ambient_dim", "ambient dimension must be non-negative")
    if n < 0:
        err("intersection_number", "intersection number must be non-negative")
    if n > m // 2:
        err(
            "intersection_number",
            f"intersection number {n} exceeds floor(ambient_dim / 2) = {m // 2}",
        )

    indices = sorted(r.stratum_index for r in spec.residue_inputs)
    if indices != list(range(1, n + 1)):
        err(
            "residues",
            f"expected exactly one residue input per stratum 1..{n}, got indices {indices}",
        )

    if isinstance(spec.complement, ComplementRecipe):
        for fname, vec in (
            ("ambient_betti", spec.complement.ambient_betti),
            ("locus_betti", spec.complement.locus_betti),
        ):
            if vec.field_tag != spec.field_tag:
                err(f"complement.recipe.{fname}", "field tag differs from the divisor's")
            if not vec.is_zero() and (vec.min_degree() < 0 or vec.max_degree() > m):
                err(f"complement.recipe.{fname}", f"support must lie in degrees 0..{m}")
        for k, r in spec.complement.rank_map().items():
            lim = min(spec.complement.locus_betti.dim(k - 2), spec.complement.ambient_betti.dim(k))
            if r < 0 or r > lim:
                err(
                    "complement.recipe.pushforward_ranks",
                    f"rank {r} into degree {k} exceeds bound {lim}",
                )
    else:
        if spec.complement.field_tag != spec.field_tag:
            err("complement.betti", "field tag differs from the divisor's")
        if not spec.complement.is_zero() and (
            spec.complement.min_degree() < 0 or spec.complement.max_degree() > m
        ):
            err("complement.betti", f"support must lie in degrees 0..{m}")

    derived_ok = spec.flags.d1_coorientable and (spec.flags.global_normal_crossing or m == 4)
    for res in spec.residue_inputs:
        where = f"residues[i={res.stratum_index}]"
        i = res.stratum_index
        if isinstance(res, CircleGysinResidue) and i != 1:
            err(where, "circle_gysin residues apply to stratum 1 only")
        if isinstance(res, PointsResidue):
            if m != 2 * i:
                err(where, f"points residue requires ambient_dim = 2*i = {2 * i}, got {m}")
            if res.count < 0:
                err(where, "point count must be non-negative")
        if not isinstance(res, DirectResidue) and not derived_ok:
            err(
                where,
                "derived residue modes need d1_coorientable and (global_normal_crossing "
                "or ambient_dim 4); supply the residue cohomology directly",
            )
        base_dim = m - 2 * i  # dimension of the stratum D[i]
        for fname, vec in _residue_betti_inputs(res):
            if vec.field_tag != spec.field_tag:
                err(f"{where}.{fname}", "field tag differs from the divisor's")
            top = base_dim if fname == "base_betti" else m - i
            if not vec.is_zero() and (vec.min_degree() < 0 or vec.max_degree() > top):
                err(f"{where}.{fname}", f"support must lie in degrees 0..{top}")
        if isinstance(res, CircleGysinResidue):
            for k, r in res.rank_map().items():
                lim = min(res.base_betti.dim(k), res.base_betti.dim(k + 2))
                if r < 0 or r > lim:
                    err(f"{where}.cup_e_ranks", f"rank {r} in degree {k} exceeds bound {lim}")

    if not any(d.fatal for d in diags):
        for res in spec.residue_inputs:
            chi = resolve_residue(res, spec.field_tag).euler_char()
            if chi:
                warn(
                    f"residues[i={res.stratum_index}]",
                    f"residue space has Euler characteristic {chi}; a torus-bundle "
                    "residue space has Euler characteristic 0",
                )
    return diags


def require_valid(spec: DivisorSpec) -> list:
    """Return diagnostics, raising when any of them is fatal."""
    diags = validate(spec)
    fatal = [d for d in diags if d.fatal]
    if fatal:
        raise ValidationFailedError(fatal)
    return diags
