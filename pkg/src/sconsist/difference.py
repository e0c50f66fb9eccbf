"""Difference decomposition: auto-reduction, difference Janet normal forms,
passivity, decomposition into passive quasi-simple difference systems, and
membership in the saturation ideal.

The workflow: a finite difference system is decomposed algebraically into
quasi-simple systems, each equation set is auto-reduced and Janet
completed, and non-admissible prolongations are reduced.  Nonzero
residuals re-enter the queue as new equations until every branch is
passive or provably inconsistent.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from . import algebraic
from .coeffs import Coefficient
from .reduction import (
    JanetSystem,
    ReductionError,
    ReductionResult,
    complete_system,
    is_passive,
    janet_normal_form,
    passivity_residual_records,
    passivity_residuals,
)
from .ring import (
    OperatorPolynomial,
    Ranking,
    SHIFT,
    content_normalize,
)


class DifferenceError(ValueError):
    pass


class DecompositionLimitError(RuntimeError):
    """A resource cap was hit; carries the partial trace for inspection."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


@dataclass
class Trace:
    """Event log shared by the decomposition layers.

    Records are (branch id, event, text); events are split, reduce,
    prolong, insert and discard.
    """

    records: list[tuple[int, str, str]] = field(default_factory=list)
    renderer: object = None
    _branch: int = 0

    def log(self, scope, event, payload):
        self.records.append((self._branch, event, f"{scope}: {payload}"))

    def branch(self) -> int:
        self._branch += 1
        return self._branch

    def set_branch(self, bid: int):
        self._branch = bid

    def render_lines(self):
        for bid, event, text in self.records:
            yield f"branch={bid} event={event} {text}"


def _check_difference_input(polys):
    for p in polys:
        if p.kind != SHIFT:
            raise DifferenceError("difference operations need shift polynomials")
        if any(s < 0 for v in p.variables() for s in v.shifts):
            raise DifferenceError(
                "negative shifts are not allowed in the core; clear them first"
            )


def auto_reduce(L, rk: Ranking):
    """One-step auto-reduction of a finite difference equation set.

    Returns (True, L') when no member's leader is a shift multiple of
    another member's leader with sufficient degree; otherwise performs a
    single pseudo-reduction and returns (False, L' + [remainder]).
    Members that reduce to zero are dropped silently.
    """
    L = list(L)
    _check_difference_input(L)
    for p in L:
        if p.is_constant:
            raise DifferenceError("constant polynomial in auto-reduction input")
    work = list(L)
    while True:
        pick = _find_reducible_pair(work, rk)
        if pick is None:
            return True, work
        i1, i2, theta = pick
        f1, f2 = work[i1], work[i2]
        del work[i1]
        from .ring import apply_operator

        v = f1.leader(rk)
        tf2 = apply_operator(theta, f2)
        d1 = f1.degree_in(v)
        d2 = tf2.degree_in(v)
        init2 = tf2.coeff_of_power(v, d2)
        init1 = f1.coeff_of_power(v, d1)
        vpow = (
            OperatorPolynomial.from_var(v, f1.nsyms, f1.cvars, d1 - d2)
            if d1 > d2
            else OperatorPolynomial.one(f1.kind, f1.nsyms, f1.cvars)
        )
        r = init2 * f1 - init1 * vpow * tf2
        if not r.is_zero:
            return False, work + [r]


def _find_reducible_pair(work, rk: Ranking):
    """Indices (i1, i2) and theta with ld(f1) = theta ld(f2) and a degree fit.

    The reducible member with the highest-ranked leader is preferred; its
    partner is the first fit in list order.
    """
    order = sorted(
        range(len(work)), key=lambda i: rk.var_key(work[i].leader(rk)), reverse=True
    )
    for i1 in order:
        f1 = work[i1]
        v1 = f1.leader(rk)
        d1 = f1.degree_in(v1)
        for i2, f2 in enumerate(work):
            if i2 == i1:
                continue
            v2 = f2.leader(rk)
            if v2.dep != v1.dep:
                continue
            theta = tuple(a - b for a, b in zip(v1.shifts, v2.shifts))
            if any(t < 0 for t in theta):
                continue
            if d1 >= f2.degree_in(v2):
                return i1, i2, theta
    return None


def janet_complete(equations, rk: Ranking, symbol_order, inequations=()) -> JanetSystem:
    """Janet completion of an auto-reduced difference equation set."""
    _check_difference_input(list(equations) + list(inequations))
    return complete_system(equations, rk, symbol_order, inequations)


@dataclass
class DecomposeStats:
    branches: int = 0
    discarded_inconsistent: int = 0
    residual_rounds: int = 0
    max_lineage_depth: int = 0
    lineages: list = field(default_factory=list)


def _leader_profile(equations, rk: Ranking):
    """Multiset of (dep, shift monomial, leader degree): the progress measure
    of a branch; a child must never repeat an ancestor's profile."""
    out = []
    for f in equations:
        ld = f.leader(rk)
        out.append((ld.dep, ld.shifts, f.degree_in(ld)))
    return frozenset((item, out.count(item)) for item in out)


def decompose(
    equations,
    rk: Ranking,
    symbol_order,
    inequations=(),
    step_limit: int = 2000,
    max_shift_order: int = 64,
    trace: Trace | None = None,
    stats: DecomposeStats | None = None,
) -> list[JanetSystem]:
    """Decompose a difference system into passive quasi-simple Janet systems.

    The output systems' solution sets partition the input's.  Passivity
    residuals that are nonzero constants mark a branch inconsistent;
    nonzero non-constant residuals are content-normalized and re-inserted
    as equations.  Hitting a resource cap raises DecompositionLimitError
    rather than returning a wrong answer.
    """
    equations = list(equations)
    inequations = list(inequations)
    _check_difference_input(equations + inequations)
    if stats is None:
        stats = DecomposeStats()
    queue: deque = deque()
    queue.append((algebraic.AlgebraicSystem(equations, inequations), ()))
    results: list[JanetSystem] = []
    steps = 0
    while queue:
        steps += 1
        if steps > step_limit:
            raise DecompositionLimitError(
                f"difference decomposition exceeded the step limit ({step_limit})",
                trace,
            )
        L, lineage = queue.popleft()
        if trace is not None:
            trace.set_branch(trace.branch())
        for p in L.equations + L.inequations:
            if p.max_shift_order() > max_shift_order:
                raise DecompositionLimitError(
                    "maximal shift order exceeded during decomposition", trace
                )
        subsystems = algebraic.quasi_simple_decompose(L, rk, trace)
        stats.branches += len(subsystems)
        for A in subsystems:
            if A.is_empty():
                if trace is not None:
                    trace.log("difference", "insert", "unconstrained system")
                return [JanetSystem([], [], rk, tuple(symbol_order))]
            profile = _leader_profile(A.equations, rk)
            if profile in lineage:
                raise DecompositionLimitError(
                    "decomposition made no progress on a branch", trace
                )
            child = lineage + (profile,)
            stats.max_lineage_depth = max(stats.max_lineage_depth, len(child))
            flag, G = auto_reduce(A.equations, rk) if A.equations else (True, [])
            if not flag:
                if trace is not None:
                    trace.log("difference", "reduce", "auto-reduction step")
                queue.append((algebraic.AlgebraicSystem(G, A.inequations), child))
                continue
            J = (
                complete_system(G, rk, symbol_order, A.inequations)
                if G
                else JanetSystem([], list(A.inequations), rk, tuple(symbol_order))
            )
            records = passivity_residual_records(J)
            if trace is not None:
                for i, s, g, res in records:
                    trace.log(
                        "difference",
                        "prolong",
                        f"pair {i} symbol {s} residual zero: {res.normal_form.is_zero}",
                    )
            residuals = [res.normal_form for _, _, _, res in records]
            nonzero = [p for p in residuals if not p.is_zero]
            if not nonzero:
                reduced_ineqs = []
                inconsistent = False
                for g in J.inequations:
                    nf = janet_normal_form(g, J, rk).normal_form
                    if nf.is_zero:
                        inconsistent = True
                        break
                    if nf.is_constant:
                        continue
                    reduced_ineqs.append(nf)
                if inconsistent:
                    stats.discarded_inconsistent += 1
                    if trace is not None:
                        trace.log("difference", "discard", "inequation reduced to zero")
                    continue
                out = JanetSystem(J.pairs, reduced_ineqs, rk, tuple(symbol_order))
                results.append(out)
                stats.lineages.append(child)
                if trace is not None:
                    trace.log("difference", "insert", f"passive system, {len(out.pairs)} equations")
                continue
            constants = [p for p in nonzero if p.is_constant]
            if constants:
                stats.discarded_inconsistent += 1
                if trace is not None:
                    trace.log("difference", "discard", "nonzero constant residual")
                continue
            stats.residual_rounds += 1
            new_eqs = list(J.equations)
            for p in nonzero:
                normalized, _ = content_normalize(p, rk)
                if normalized not in new_eqs:
                    new_eqs.append(normalized)
            if trace is not None:
                trace.log(
                    "difference", "insert", f"{len(nonzero)} residual equation(s) re-queued"
                )
            queue.append(
                (algebraic.AlgebraicSystem(new_eqs, A.inequations), child)
            )
    results.sort(key=_janet_system_key)
    return results


def _janet_system_key(T: JanetSystem):
    return (
        tuple(sorted(algebraic._poly_key(f) for f in T.equations)),
        tuple(sorted(algebraic._poly_key(g) for g in T.inequations)),
    )


def ideal_membership(f: OperatorPolynomial, T: JanetSystem) -> bool:
    """Membership in the saturation of the difference ideal of T's equations
    by shifted initials, decided by the Janet normal form.

    T must be passive; otherwise the normal form does not characterize
    membership and an error is raised.
    """
    if not is_passive(T):
        raise DifferenceError("membership test needs a passive system")
    return janet_normal_form(f, T, T.ranking).normal_form.is_zero
