"""Differential side of the consistency check: Janet normal forms with
derivative prolongations, passivity, radical membership via saturation,
and validation that a user-supplied differential system is simple.

The full differential Thomas decomposition is out of scope: callers must
supply systems that are already simple (this module verifies the
conditions it can and reports three-valued verdicts).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import algebraic
from .reduction import (
    JanetSystem,
    ReductionResult,
    complete_system,
    is_janet_reduced,
    janet_normal_form,
    passivity_residual_records,
)
from .ring import DERIVATIVE, OperatorPolynomial, Ranking


class DifferentialError(ValueError):
    pass


@dataclass
class SimpleDifferentialSystem:
    """A Janet-completed differential system with its validation verdict.

    original_equations preserves the user-supplied equations in input
    order (the completion may append prolongations)."""

    janet: JanetSystem
    verdict: str
    reasons: list[str] = field(default_factory=list)
    trusted: bool = False
    original_equations: list = field(default_factory=list)

    @property
    def equations(self):
        return self.janet.equations

    @property
    def inequations(self):
        return self.janet.inequations

    @property
    def ranking(self) -> Ranking:
        return self.janet.ranking


def _check_differential_input(polys):
    for p in polys:
        if p.kind != DERIVATIVE:
            raise DifferentialError("differential operations need derivative polynomials")


def make_simple_system(
    equations,
    rk: Ranking,
    symbol_order,
    inequations=(),
    trust: bool = False,
) -> SimpleDifferentialSystem:
    """Complete the system and validate the simplicity conditions.

    With trust=False a verdict of "no" raises; "unknown" is allowed and
    recorded so downstream reports can flag the weaker guarantee.
    """
    equations = list(equations)
    inequations = list(inequations)
    _check_differential_input(equations + inequations)
    T = complete_system(equations, rk, symbol_order, inequations)
    verdict, reasons = _validate_completed(T, rk)
    if verdict == "no" and not trust:
        raise DifferentialError(
            "differential system is not simple: " + "; ".join(reasons)
        )
    return SimpleDifferentialSystem(
        T, verdict, reasons, trusted=trust, original_equations=equations
    )


def _validate_completed(T: JanetSystem, rk: Ranking):
    reasons: list[str] = []
    verdict = "yes"
    records = passivity_residual_records(T)
    bad = [r for _, _, _, r in records if not r.normal_form.is_zero]
    if bad:
        return "no", ["a non-admissible prolongation has a nonzero normal form"]
    alg = algebraic.validate(
        algebraic.AlgebraicSystem(T.equations, T.inequations), rk, level="full"
    )
    if alg.verdict == "no":
        return "no", alg.reasons
    if alg.verdict == "unknown":
        verdict = "unknown"
        reasons.extend(alg.reasons)
    for g in T.inequations:
        if not is_janet_reduced(g, T, rk):
            return "no", ["an inequation is not Janet reduced"]
    return verdict, reasons


def validate_simple_differential(
    equations, rk: Ranking, symbol_order, inequations=()
):
    """Three-valued simplicity check of a differential system.

    Returns (verdict, reasons) without raising; Janet completion failures
    (shared leaders) count as "no".
    """
    try:
        _check_differential_input(list(equations) + list(inequations))
        T = complete_system(equations, rk, symbol_order, inequations)
    except Exception as exc:  # completion failures are verdicts, not crashes
        return "no", [str(exc)]
    return _validate_completed(T, rk)


def janet_normal_form_diff(
    f: OperatorPolynomial, S: SimpleDifferentialSystem
) -> ReductionResult:
    """Differential Janet normal form with a replayable certificate.

    The certificate multiplier is a product of initials and separants of
    the prolonged divisors.
    """
    _check_differential_input([f])
    return janet_normal_form(f, S.janet, S.ranking)


def diff_passivity_residuals(S: SimpleDifferentialSystem):
    return [res.normal_form for _, _, _, res in passivity_residual_records(S.janet)]


def membership_saturation(f: OperatorPolynomial, S: SimpleDifferentialSystem) -> bool:
    """Membership in the radical ideal obtained by saturating at the
    initials and separants: true iff the Janet normal form vanishes."""
    return janet_normal_form_diff(f, S).normal_form.is_zero
