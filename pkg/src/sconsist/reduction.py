"""Janet systems and Janet normal forms for both operator rings.

A Janet system is a finite set of pairs (polynomial, multiplicative
symbols) whose leader monomials are Janet complete per dependent
variable.  The normal form routine performs iterated pseudo-reductions,
including the recursive reduction of the coefficients with respect to
the working leader, and records a replayable certificate:

    b * r  =  sum of cofactor_k * theta_k(f_k)  +  normal_form,

with b the product of the step multipliers (initials of the prolonged
divisors; for proper derivative prolongations these are separants).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import janet
from .ring import (
    OperatorPolynomial,
    Ranking,
    ReductionStep,
    RingError,
    Var,
    apply_operator,
    certificate_multiplier,
    replay_steps,
)


class ReductionError(ValueError):
    pass


@dataclass
class JanetSystem:
    """Pairs (f_i, mu_i) with Janet complete leader sets, plus inequations."""

    pairs: list[tuple[OperatorPolynomial, frozenset[int]]]
    inequations: list[OperatorPolynomial]
    ranking: Ranking
    symbol_order: tuple[int, ...]

    def __post_init__(self):
        self._divisor_index: dict[int, dict] = {}
        for f, mult in self.pairs:
            ld = f.leader(self.ranking)
            self._divisor_index.setdefault(ld.dep, {})[ld.shifts] = (f, mult)

    @property
    def equations(self) -> list[OperatorPolynomial]:
        return [f for f, _ in self.pairs]

    @property
    def is_empty(self) -> bool:
        return not self.pairs

    def multiplicative_sets(self) -> list[frozenset[int]]:
        return [mult for _, mult in self.pairs]

    def find_divisor(self, v: Var):
        """The unique Janet divisor of the variable v, as (f, theta), or None."""
        per_dep = self._divisor_index.get(v.dep)
        if not per_dep:
            return None
        for mon, (f, mult) in per_dep.items():
            if not janet.mon_divides(mon, v.shifts):
                continue
            theta = janet.mon_quotient(v.shifts, mon)
            if all(theta[i] == 0 or i in mult for i in range(len(theta))):
                return f, theta
        return None

    def nonadmissible_prolongations(self):
        """All (pair index, symbol) with the symbol non-multiplicative."""
        out = []
        for i, (_, mult) in enumerate(self.pairs):
            for s in range(len(self.symbol_order)):
                if s not in mult:
                    out.append((i, s))
        return out


def complete_system(
    equations, rk: Ranking, symbol_order, inequations=()
) -> JanetSystem:
    """Janet completion of a leader-triangular set of equations.

    Every equation must have a distinct leader.  Added generators are the
    corresponding operator prolongations of the member they complete.
    """
    equations = list(equations)
    by_leader: dict[Var, OperatorPolynomial] = {}
    for f in equations:
        if f.is_constant:
            raise ReductionError("constant polynomial in a Janet system")
        ld = f.leader(rk)
        if ld in by_leader:
            raise ReductionError("two equations share a leader; auto-reduce first")
        by_leader[ld] = f
    pairs: list[tuple[OperatorPolynomial, frozenset[int]]] = []
    deps = sorted({v.dep for v in by_leader})
    for dep in deps:
        mons = {v.shifts: by_leader[v] for v in by_leader if v.dep == dep}
        J, parents = janet.janet_completion_with_provenance(set(mons), symbol_order)
        polys = dict(mons)
        # resolve provenance in dependency order
        pending = [m for m in J if m not in polys]
        while pending:
            progressed = False
            for m in list(pending):
                parent, sym = parents[m]
                if parent in polys:
                    step = tuple(
                        1 if i == sym else 0 for i in range(len(symbol_order))
                    )
                    polys[m] = apply_operator(step, polys[parent])
                    pending.remove(m)
                    progressed = True
            if not progressed:
                raise ReductionError("janet completion provenance cycle")
        classified = janet.classify(set(polys), symbol_order)
        for m in sorted(polys, key=lambda mm: janet.lex_key(mm, symbol_order), reverse=True):
            pairs.append((polys[m], classified[m]))
    return JanetSystem(pairs, list(inequations), rk, tuple(symbol_order))


@dataclass
class ReductionResult:
    normal_form: OperatorPolynomial
    multiplier: OperatorPolynomial
    certificate: list[ReductionStep]

    def verify(self, r: OperatorPolynomial) -> bool:
        """Replay the recorded identity b*r - sum cof*theta(f) = normal_form."""
        return replay_steps(r, self.certificate) == self.normal_form


def janet_normal_form(
    r: OperatorPolynomial, T: JanetSystem, rk: Ranking
) -> ReductionResult:
    """Janet normal form of r modulo T with a replayable certificate."""
    steps: list[ReductionStep] = []
    nf = _reduce(r, T, rk, steps)
    b = certificate_multiplier(steps, r)
    return ReductionResult(nf, b, steps)


def _reduce(r, T: JanetSystem, rk: Ranking, steps: list) -> OperatorPolynomial:
    if r.is_constant or T.is_empty:
        return r
    v = r.leader(rk)
    # eliminate the working leader as far as the Janet divisor reaches
    while not r.is_constant:
        dv = r.degree_in(v)
        if dv == 0:
            break
        hit = T.find_divisor(v)
        if hit is None:
            break
        f, theta = hit
        tf = apply_operator(theta, f)
        dtf = tf.degree_in(v)
        if dv < dtf:
            break
        init_tf = tf.coeff_of_power(v, dtf)
        cof = r.coeff_of_power(v, dv)
        if dv > dtf:
            cof = cof * OperatorPolynomial.from_var(v, r.nsyms, r.cvars, dv - dtf)
        r = init_tf * r - cof * tf
        steps.append(ReductionStep(init_tf, cof, theta, f))
    if r.is_constant:
        return r
    # recursively reduce the coefficients with respect to v
    for k in sorted(r.as_univariate(v), reverse=True):
        c_k = r.coeff_of_power(v, k)
        if c_k.is_zero or c_k.is_constant:
            continue
        substeps: list[ReductionStep] = []
        _reduce(c_k, T, rk, substeps)
        if not substeps:
            continue
        vpow = (
            OperatorPolynomial.from_var(v, r.nsyms, r.cvars, k)
            if k
            else OperatorPolynomial.one(r.kind, r.nsyms, r.cvars)
        )
        for st in substeps:
            lifted = ReductionStep(st.multiplier, st.cofactor * vpow, st.theta, st.divisor)
            r = lifted.multiplier * r - lifted.cofactor * apply_operator(
                lifted.theta, lifted.divisor
            )
            steps.append(lifted)
    return r


def is_janet_reduced(r: OperatorPolynomial, T: JanetSystem, rk: Ranking) -> bool:
    """No variable of r admits a Janet divisor with sufficient degree."""
    for v in r.variables():
        hit = T.find_divisor(v)
        if hit is None:
            continue
        f, theta = hit
        dtf = apply_operator(theta, f).degree_in(v)
        if dtf and r.degree_in(v) >= dtf:
            return False
    return True


def passivity_residual_records(T: JanetSystem):
    """Normal forms of all non-admissible prolongations, with provenance.

    Returns a list of (pair index, symbol index, prolonged polynomial,
    ReductionResult).
    """
    out = []
    nsyms = len(T.symbol_order)
    for i, s in T.nonadmissible_prolongations():
        f, _ = T.pairs[i]
        step = tuple(1 if j == s else 0 for j in range(nsyms))
        g = apply_operator(step, f)
        out.append((i, s, g, janet_normal_form(g, T, T.ranking)))
    return out


def passivity_residuals(T: JanetSystem) -> list[OperatorPolynomial]:
    return [res.normal_form for _, _, _, res in passivity_residual_records(T)]


def is_passive(T: JanetSystem) -> bool:
    return all(nf.is_zero for nf in passivity_residuals(T))
