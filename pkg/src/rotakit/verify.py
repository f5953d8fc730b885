"""Run every invariant on one body and collect violations instead of raising."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from rotakit.errors import InvariantViolation, RotakitError, TheoremViolation
from rotakit.geometry import ConvexBody, Tolerance
from rotakit.partitions import (
    ChainReport,
    chain_report,
    classify_equality_chain,
    dM_bruteforce,
    dM_formula,
    standard_partition,
    supporting_line_slack,
)
from rotakit.symmetry import SymmetryProfile, detect_symmetry, is_k_symmetric

# names used in the summary table
CHECKS = (
    "divisor_closure",
    "manifest_profile",
    "formula_vs_bruteforce",
    "chain_monotone",
    "chi2_strict",
    "unique_minimum",
    "equality_equivalence",
    "supporting_line",
)


@dataclass(frozen=True)
class Violation:
    body_id: str
    check: str
    message: str


@dataclass
class BodyVerification:
    body_id: str
    profile: SymmetryProfile | None = None
    report: ChainReport | None = None
    checked: Counter = field(default_factory=Counter)
    violations: list[Violation] = field(default_factory=list)

    def fail(self, check: str, message: str) -> None:
        self.violations.append(Violation(self.body_id, check, message))


def verify_body(
    body_id: str,
    body: ConvexBody,
    tol: Tolerance,
    expected_kC: int | None = None,
    expected_chi: int | None = None,
) -> BodyVerification:
    out = BodyVerification(body_id)
    R = body.circumradius
    try:
        prof = detect_symmetry(body, tol)
    except RotakitError as exc:
        out.fail("divisor_closure", f"{type(exc).__name__}: {exc}")
        return out
    out.profile = prof

    # closure, checked independently of the detector's own scan
    out.checked["divisor_closure"] += 1
    bad = [k for k in range(2, prof.max_degree + 1) if is_k_symmetric(body, k, tol) != (prof.max_degree % k == 0)]
    if bad:
        out.fail("divisor_closure", f"symmetry does not match divisibility of k_C={prof.max_degree} at k={bad}")

    if expected_kC is not None:
        out.checked["manifest_profile"] += 1
        if (prof.max_degree, prof.min_degree) != (expected_kC, expected_chi):
            out.fail(
                "manifest_profile",
                f"detected (k_C, chi)=({prof.max_degree}, {prof.min_degree}), manifest says ({expected_kC}, {expected_chi})",
            )

    for k in prof.divisors:
        try:
            part = standard_partition(body, k, tol)
        except RotakitError as exc:
            out.fail("supporting_line", f"k={k}: {type(exc).__name__}: {exc}")
            continue
        out.checked["supporting_line"] += 1
        slack = supporting_line_slack(body, part)
        if slack > tol.eps_geom * R:
            out.fail("supporting_line", f"k={k}: slack {slack:.3g} exceeds {tol.eps_geom * R:.3g}")
        if k >= 3:
            out.checked["formula_vs_bruteforce"] += 1
            diff = abs(dM_bruteforce(part) - dM_formula(body, k))
            if diff > tol.eps_dm * R:
                out.fail("formula_vs_bruteforce", f"k={k}: |brute - formula| = {diff:.3g}")

    if not prof.is_multi:
        return out
    try:
        out.report = chain_report(body, tol, prof)
    except TheoremViolation as exc:
        out.fail(exc.check, str(exc))
        return out
    except RotakitError as exc:
        out.fail("chain_monotone", f"{type(exc).__name__}: {exc}")
        return out
    out.checked["chain_monotone"] += 1
    if prof.min_degree == 2:
        out.checked["chi2_strict"] += 1
    else:
        out.checked["unique_minimum"] += 1
        out.checked["equality_equivalence"] += 1
        try:
            classify_equality_chain(out.report)
        except InvariantViolation as exc:
            out.fail("equality_equivalence", str(exc))
    return out
