"""Strong-consistency check of a difference approximation against a simple
differential system.

Pipeline: decompose the difference equations into passive quasi-simple
subsystems; drop subsystems carrying an inequation whose continuous limit
lies in the radical differential ideal; for the rest, take the continuous
limit of every equation and reduce it modulo the differential system.  A
subsystem is s-consistent when every such normal form vanishes, otherwise
it is only w-consistent and the offending equations are reported as
witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import difference, differential, limit as limit_mod
from .difference import DecomposeStats, Trace
from .differential import SimpleDifferentialSystem
from .limit import LimitResult
from .reduction import JanetSystem
from .ring import OperatorPolynomial, Ranking


class InputError(ValueError):
    """The inputs violate the check's contract (not a resource problem)."""


@dataclass
class Witness:
    equation: OperatorPolynomial
    limit: LimitResult
    nf: OperatorPolynomial


@dataclass
class SubsystemVerdict:
    system: JanetSystem
    s_consistent: bool
    witnesses: list[Witness] = field(default_factory=list)


@dataclass
class ConsistencyReport:
    subsystems: list[SubsystemVerdict]
    dropped: list[JanetSystem]
    overall: bool
    w_consistency: list[tuple[str, object]] = field(default_factory=list)
    membership_oracle: str = "saturation ideal of the given simple system"
    trusted_simplicity: bool = False
    stats: DecomposeStats | None = None


@dataclass
class CheckOptions:
    all_witnesses: bool = False
    max_taylor_order: int = 12
    step_limit: int = 2000
    max_shift_order: int = 64
    check_w_consistency: bool = True


def check(
    S: SimpleDifferentialSystem,
    fda_equations,
    difference_ranking: Ranking,
    symbol_order,
    options: CheckOptions | None = None,
    trace: Trace | None = None,
) -> ConsistencyReport:
    """Decide s-consistency of the difference equations with the simple
    differential system S.
    """
    options = options or CheckOptions()
    fda_equations = list(fda_equations)
    if not fda_equations:
        raise InputError("the difference system has no equations")

    w_records = []
    if options.check_w_consistency:
        pde_equations = _original_equations(S)
        if len(pde_equations) != len(fda_equations):
            raise InputError(
                "w-consistency pairing needs equal equation counts "
                f"({len(fda_equations)} difference vs {len(pde_equations)} differential)"
            )
        for ftilde, f in zip(fda_equations, pde_equations):
            try:
                status, c = limit_mod.w_consistency_check(
                    ftilde, f, options.max_taylor_order
                )
            except limit_mod.LimitError as exc:
                raise InputError(f"w-consistency check failed: {exc}") from exc
            if status == "no":
                raise InputError(
                    "a difference equation is not w-consistent with its "
                    "differential counterpart"
                )
            w_records.append((status, c))

    stats = DecomposeStats()
    subsystems = difference.decompose(
        fda_equations,
        difference_ranking,
        symbol_order,
        step_limit=options.step_limit,
        max_shift_order=options.max_shift_order,
        trace=trace,
        stats=stats,
    )

    verdicts: list[SubsystemVerdict] = []
    dropped: list[JanetSystem] = []
    for sub in subsystems:
        if _dropped_by_inequation_filter(sub, S, options):
            dropped.append(sub)
            continue
        verdicts.append(_judge_subsystem(sub, S, options))
    overall = all(v.s_consistent for v in verdicts)
    return ConsistencyReport(
        subsystems=verdicts,
        dropped=dropped,
        overall=overall,
        w_consistency=w_records,
        trusted_simplicity=S.trusted,
        stats=stats,
    )


def _original_equations(S: SimpleDifferentialSystem):
    """The user-supplied equations of S, before Janet completion."""
    return list(S.original_equations) if S.original_equations else list(S.equations)


def _dropped_by_inequation_filter(
    sub: JanetSystem, S: SimpleDifferentialSystem, options: CheckOptions
) -> bool:
    for g in sub.inequations:
        lim = limit_mod.continuous_limit(g, options.max_taylor_order)
        if differential.membership_saturation(lim.f, S):
            return True
    return False


def _judge_subsystem(
    sub: JanetSystem, S: SimpleDifferentialSystem, options: CheckOptions
) -> SubsystemVerdict:
    witnesses: list[Witness] = []
    for ftilde in sub.equations:
        lim = limit_mod.continuous_limit(ftilde, options.max_taylor_order)
        nf = differential.janet_normal_form_diff(lim.f, S).normal_form
        if not nf.is_zero:
            witnesses.append(Witness(ftilde, lim, nf))
            if not options.all_witnesses:
                break
    return SubsystemVerdict(sub, not witnesses, witnesses)
