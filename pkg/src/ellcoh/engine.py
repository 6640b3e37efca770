"""Assembly of the algebroid cohomology from resolved divisor data.

The decomposition of the cohomology of the elliptic tangent bundle,

    H^k(A) = H^k(M \\ D)  +  sum_i H^{k-i}(residue space of stratum i),

is realized here as exact Betti bookkeeping.  The map-level content behind
the formula is verified separately, by brute force, in ``local_model``.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from . import divisor as divisor_mod
from .divisor import (
    DirectResidue,
    DivisorSpec,
    PointsResidue,
    resolve_complement,
    resolve_residue,
)
from .errors import ValidationFailedError, WrongDimensionError
from .exactq import COMPLEX, BettiVector

PASS = "pass"
FAIL = "fail"
WARN = "warn"


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    detail: str = ""


@dataclass(frozen=True)
class ResidueSummand:
    stratum_index: int
    betti: BettiVector  # unshifted residue-space cohomology
    shift: int


@dataclass(frozen=True)
class CohomologyReport:
    divisor_name: str
    ambient_dim: int
    field_tag: str
    algebroid_betti: BettiVector
    complement: BettiVector
    residues: tuple
    checks: tuple = ()

    def to_dict(self) -> dict:
        length = max(
            self.ambient_dim + 1,
            self.algebroid_betti.max_degree() + 1,
            self.complement.max_degree() + 1,
        )
        return {
            "divisor": self.divisor_name,
            "ambient_dim": self.ambient_dim,
            "field": self.field_tag,
            "algebroid_betti": self.algebroid_betti.as_list(length),
            "breakdown": {
                "complement": self.complement.as_list(length),
                "residues": [
                    {
                        "i": r.stratum_index,
                        "betti": r.betti.as_list(),
                        "shift": r.shift,
                    }
                    for r in self.residues
                ],
            },
            "checks": [
                {"name": c.name, "status": c.status, "detail": c.detail} for c in self.checks
            ],
        }


def _sum_breakdown(complement: BettiVector, residues) -> BettiVector:
    total = complement
    for r in residues:
        total = total + r.betti.shift(r.shift)
    return total


def assemble(spec: DivisorSpec, run_checks: bool = True) -> CohomologyReport:
    """Compute the algebroid cohomology of a validated divisor description."""
    divisor_mod.require_valid(spec)
    complement = resolve_complement(spec)
    residues = tuple(
        ResidueSummand(r.stratum_index, resolve_residue(r, spec.field_tag), r.stratum_index)
        for r in sorted(spec.residue_inputs, key=lambda r: r.stratum_index)
    )
    report = CohomologyReport(
        divisor_name=spec.name,
        ambient_dim=spec.ambient_dim,
        field_tag=spec.field_tag,
        algebroid_betti=_sum_breakdown(complement, residues),
        complement=complement,
        residues=residues,
    )
    if run_checks:
        report = dataclasses.replace(report, checks=consistency_checks(report, spec))
    return report


def assemble_dim4(spec: DivisorSpec, run_checks: bool = True) -> CohomologyReport:
    """Four-manifold specialization:

        H^k(A) = H^k(M \\ D) + H^{k-1}(S^1 N D[1]) + H^{k-2}(T^2)^(# D[2]).

    Residue 1 must describe the circle bundle S^1 N D[1] (directly or through
    its Gysin data) and residue 2, when present, the finite point stratum.
    """
    if spec.ambient_dim != 4:
        raise WrongDimensionError(f"ambient dimension is {spec.ambient_dim}, expected 4")
    if spec.intersection_number > 2:
        raise ValidationFailedError(
            [], f"intersection number {spec.intersection_number} exceeds 2 in dimension 4"
        )
    if not spec.flags.d1_coorientable:
        raise ValidationFailedError([], "the dimension-4 formula needs d1_coorientable")
    for r in spec.residue_inputs:
        if r.stratum_index == 2 and not isinstance(r, (PointsResidue, DirectResidue)):
            raise ValidationFailedError(
                [], "stratum 2 of a four-manifold is a point set; use points or direct input"
            )
    divisor_mod.require_valid(spec)

    complement = resolve_complement(spec)
    by_index = {r.stratum_index: r for r in spec.residue_inputs}
    total = complement
    residues = []
    if 1 in by_index:
        circle = resolve_residue(by_index[1], spec.field_tag)
        residues.append(ResidueSummand(1, circle, 1))
        total = total + circle.shift(1)
    if 2 in by_index:
        points = resolve_residue(by_index[2], spec.field_tag)
        residues.append(ResidueSummand(2, points, 2))
        total = total + points.shift(2)
    report = CohomologyReport(
        divisor_name=spec.name,
        ambient_dim=4,
        field_tag=spec.field_tag,
        algebroid_betti=total,
        complement=complement,
        residues=tuple(residues),
    )
    if run_checks:
        report = dataclasses.replace(report, checks=consistency_checks(report, spec))
    return report


def complex_log_cohomology(complement_betti: BettiVector) -> BettiVector:
    """Cohomology of the complex log tangent bundle over the same divisor.

    The inclusion of the divisor complement induces an isomorphism with
    H(M \\ D; C), so the complex dimensions equal the complement's real Betti
    numbers.
    """
    return complement_betti.retag(COMPLEX)


def assemble_complex_log(spec: DivisorSpec, run_checks: bool = True) -> CohomologyReport:
    """Report for the complex log tangent bundle of the same input document."""
    divisor_mod.require_valid(spec)
    complement = complex_log_cohomology(resolve_complement(spec))
    report = CohomologyReport(
        divisor_name=spec.name,
        ambient_dim=spec.ambient_dim,
        field_tag=COMPLEX,
        algebroid_betti=complement,
        complement=complement,
        residues=(),
    )
    if run_checks:
        checks = [_check_degree_support(report)]
        alt = _cross_check_spec(spec)
        if alt is not None:
            checks.append(
                _diff_check(
                    report.algebroid_betti,
                    assemble_complex_log(alt, run_checks=False).algebroid_betti,
                    spec,
                )
            )
        report = dataclasses.replace(report, checks=tuple(checks))
    return report


def _fmt(vec: BettiVector, length: int) -> str:
    return "(" + ", ".join(str(d) for d in vec.as_list(length)) + ")"


def _check_degree_support(report: CohomologyReport) -> Check:
    vec = report.algebroid_betti
    if vec.is_zero() or (vec.min_degree() >= 0 and vec.max_degree() <= report.ambient_dim):
        return Check("degree-support", PASS, f"support within degrees 0..{report.ambient_dim}")
    return Check(
        "degree-support",
        FAIL,
        f"support {vec.support} leaves degrees 0..{report.ambient_dim}",
    )


def _cross_check_spec(spec: DivisorSpec):
    if spec.cross_check is None:
        return None
    alt = spec.cross_check
    return dataclasses.replace(
        spec,
        complement=alt.complement if alt.complement is not None else spec.complement,
        residue_inputs=alt.residues if alt.residues is not None else spec.residue_inputs,
        cross_check=None,
        name=spec.name + " (cross-check reading)",
    )


def _diff_check(ours: BettiVector, theirs: BettiVector, spec: DivisorSpec) -> Check:
    length = spec.ambient_dim + 1
    if ours.dims == theirs.dims:
        return Check("cross-check", PASS, "alternate reading produces the same table")
    return Check(
        "cross-check",
        WARN,
        "alternate reading disagrees: "
        f"this document gives {_fmt(ours, length)}, "
        f"the cross-check inputs give {_fmt(theirs, length)}",
    )


def consistency_checks(report: CohomologyReport, spec: DivisorSpec) -> tuple:
    """Cross-validation of an assembled report against its inputs.

    Includes the input-level warnings from validation, the internal
    breakdown-additivity redundancy check, Euler-characteristic additivity
    (applicable when every residue term has Euler characteristic zero), the
    degree-support bound, top-degree symmetry for residue spaces over closed
    strata, and the cross-check diff when an alternate reading is supplied.
    """
    checks = []
    for diag in divisor_mod.validate(spec):
        if not diag.fatal:
            checks.append(Check("input", WARN, str(diag)))

    recomputed = _sum_breakdown(report.complement, report.residues)
    checks.append(
        Check(
            "breakdown-additivity",
            PASS if recomputed == report.algebroid_betti else FAIL,
            "total equals complement plus shifted residue summands",
        )
    )

    residue_chis = {r.stratum_index: r.betti.euler_char() for r in report.residues}
    if all(chi == 0 for chi in residue_chis.values()):
        chi_a = report.algebroid_betti.euler_char()
        chi_c = report.complement.euler_char()
        checks.append(
            Check(
                "euler-additivity",
                PASS if chi_a == chi_c else FAIL,
                f"chi(A) = {chi_a}, chi(complement) = {chi_c}",
            )
        )
    else:
        bad = {i: chi for i, chi in residue_chis.items() if chi}
        checks.append(
            Check(
                "euler-additivity",
                WARN,
                "not conclusive: residue terms with nonzero Euler characteristic "
                + ", ".join(f"i={i} (chi={chi})" for i, chi in sorted(bad.items())),
            )
        )

    checks.append(_check_degree_support(report))

    by_index = {r.stratum_index: r for r in spec.residue_inputs}
    for summand in report.residues:
        res = by_index.get(summand.stratum_index)
        if res is None or not getattr(res, "closed_stratum", False):
            continue
        top = report.ambient_dim - summand.stratum_index
        b0, btop = summand.betti.dim(0), summand.betti.dim(top)
        checks.append(
            Check(
                f"top-degree-symmetry[i={summand.stratum_index}]",
                PASS if b0 == btop else WARN,
                f"closed orientable residue space of dimension {top}: "
                f"b_0 = {b0}, b_{top} = {btop}",
            )
        )

    alt = _cross_check_spec(spec)
    if alt is not None:
        fatal = [d for d in divisor_mod.validate(alt) if d.fatal]
        if fatal:
            checks.append(
                Check("cross-check", WARN, "alternate reading invalid: " + str(fatal[0]))
            )
        else:
            checks.append(
                _diff_check(
                    report.algebroid_betti,
                    assemble(alt, run_checks=False).algebroid_betti,
                    spec,
                )
            )
    return tuple(checks)
