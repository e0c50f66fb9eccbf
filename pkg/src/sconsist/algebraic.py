"""Algebraic-systems layer: pseudo-division, resultants, discriminants,
and decomposition of finite systems into quasi-simple algebraic systems.

Polynomials are operator polynomials viewed as ordinary multivariate
polynomials in their finitely many occurring variables, totally ordered
by the active ranking.  A quasi-simple system is triangular (pairwise
distinct leaders among equations and inequations), has no constant
members, and every member's initial is certified nonvanishing on the
solution set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count

from .coeffs import Coefficient
from .ring import (
    OperatorPolynomial,
    Ranking,
    ReductionStep,
    RingError,
    Var,
    apply_operator,
    replay_steps,
)


class AlgebraicError(ValueError):
    pass


@dataclass
class AlgebraicSystem:
    equations: list[OperatorPolynomial]
    inequations: list[OperatorPolynomial]

    def is_empty(self) -> bool:
        return not self.equations and not self.inequations


_IDENTITY_CACHE: dict[int, tuple[int, ...]] = {}


def _identity(nsyms: int) -> tuple[int, ...]:
    theta = _IDENTITY_CACHE.get(nsyms)
    if theta is None:
        theta = (0,) * nsyms
        _IDENTITY_CACHE[nsyms] = theta
    return theta


def pseudo_divide(p: OperatorPolynomial, q: OperatorPolynomial, z: Var):
    """Euclidean pseudo-division of p by q viewed as univariate in z.

    Returns (mult, quot, rem, steps) with mult * p = quot * q + rem,
    deg_z(rem) < deg_z(q) and mult a power of the initial of q.
    """
    dq = q.degree_in(z)
    if dq == 0:
        raise AlgebraicError("divisor does not involve the division variable")
    init_q = q.coeff_of_power(z, dq)
    one = OperatorPolynomial.one(p.kind, p.nsyms, p.cvars)
    mult = one
    quot = OperatorPolynomial.zero(p.kind, p.nsyms, p.cvars)
    rem = p
    steps: list[ReductionStep] = []
    theta = _identity(p.nsyms)
    while True:
        dr = rem.degree_in(z)
        if dr < dq or rem.is_zero:
            break
        lead = rem.coeff_of_power(z, dr)
        zpow = (
            OperatorPolynomial.from_var(z, p.nsyms, p.cvars, dr - dq)
            if dr > dq
            else one
        )
        cof = lead * zpow
        steps.append(ReductionStep(init_q, cof, theta, q))
        rem = init_q * rem - cof * q
        quot = init_q * quot + cof
        mult = mult * init_q
    return mult, quot, rem, steps


def _det(matrix, zero, memo, rows, cols):
    """Determinant by expansion along the first remaining row, with
    memoised column subsets; entries are operator polynomials."""
    if not rows:
        return None
    key = (rows, cols)
    got = memo.get(key)
    if got is not None:
        return got
    r = rows[0]
    rest = rows[1:]
    total = zero
    sign = 1
    for idx, c in enumerate(cols):
        entry = matrix[r][c]
        if not entry.is_zero:
            sub_cols = cols[:idx] + cols[idx + 1 :]
            if rest:
                minor = _det(matrix, zero, memo, rest, sub_cols)
                piece = entry * minor
            else:
                piece = entry
            total = total + piece if sign > 0 else total - piece
        sign = -sign
    memo[key] = total
    return total


def _coeff_rows(p: OperatorPolynomial, z: Var, width: int, copies: int):
    """Rows of coefficients of x^j * p for j = copies-1 .. 0 (degree-descending columns)."""
    d = p.degree_in(z)
    coeffs = [p.coeff_of_power(z, k) for k in range(d, -1, -1)]
    zero = OperatorPolynomial.zero(p.kind, p.nsyms, p.cvars)
    rows = []
    for j in range(copies):
        row = [zero] * width
        for i, c in enumerate(coeffs):
            row[j + i] = c
        rows.append(row)
    return rows


def resultant(p: OperatorPolynomial, q: OperatorPolynomial, z: Var) -> OperatorPolynomial:
    """Sylvester resultant of p and q with respect to z.

    Convention: if one argument is constant in z, the result is that
    argument raised to the other's z-degree; both constant is an error.
    """
    if p.is_zero or q.is_zero:
        raise AlgebraicError("resultant of zero polynomial")
    dp, dq = p.degree_in(z), q.degree_in(z)
    if dp == 0 and dq == 0:
        raise AlgebraicError("resultant: both arguments constant in the variable")
    if dq == 0:
        return q**dp
    if dp == 0:
        return p**dq
    width = dp + dq
    matrix = _coeff_rows(q, z, width, dp) + _coeff_rows(p, z, width, dq)
    zero = OperatorPolynomial.zero(p.kind, p.nsyms, p.cvars)
    memo: dict = {}
    return _det(matrix, zero, memo, tuple(range(width)), tuple(range(width)))


def discriminant(p: OperatorPolynomial, z: Var, rk: Ranking) -> OperatorPolynomial:
    """disc(p) = (-1)^(d(d-1)/2) res(p, dp/dz, z) / init(p)."""
    d = p.degree_in(z)
    if d < 1:
        raise AlgebraicError("discriminant needs positive degree in the leader")
    dp = p.partial_wrt(z)
    init = p.coeff_of_power(z, d)
    if dp.is_zero:
        # only possible in characteristic 0 if d = 0, unreachable
        raise AlgebraicError("zero derivative")
    res = resultant(p, dp, z)
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    num = res if sign > 0 else -res
    return _divexact_poly(num, init)


def _divexact_poly(f: OperatorPolynomial, g: OperatorPolynomial) -> OperatorPolynomial:
    """Exact division of operator polynomials; internal-consistency error if inexact."""
    if g.is_zero:
        raise AlgebraicError("polynomial division by zero")
    if f.is_zero:
        return f
    if g.is_constant:
        return f.scale(g.constant_value().inverse())
    # eliminate leading terms under a fixed structural term order
    def tkey(t):
        return tuple(sorted(((v.dep, v.shifts, e) for v, e in t), reverse=True))

    def lead(poly):
        t = max(poly.terms, key=tkey)
        return t, poly.terms[t]

    quot = OperatorPolynomial.zero(f.kind, f.nsyms, f.cvars)
    rem = f
    gt, gc = lead(g)
    gd = dict(gt)
    while not rem.is_zero:
        rt, rc = lead(rem)
        rd = dict(rt)
        for v, e in gd.items():
            if rd.get(v, 0) < e:
                raise AlgebraicError("inexact polynomial division")
        diff = tuple(
            (v, e - gd.get(v, 0)) for v, e in rd.items() if e - gd.get(v, 0) > 0
        )
        piece = OperatorPolynomial(f.kind, f.nsyms, f.cvars, {diff: rc / gc})
        quot = quot + piece
        rem = rem - piece * g
    return quot


def subresultant(p: OperatorPolynomial, q: OperatorPolynomial, z: Var, d: int):
    """The d-th subresultant polynomial S_d(p, q) in z (0 <= d < deg q <= deg p)."""
    m, n = p.degree_in(z), q.degree_in(z)
    if not (0 <= d < n <= m):
        raise AlgebraicError("subresultant index out of range")
    width = m + n - d
    rows = _coeff_rows(p, z, width, n - d) + _coeff_rows(q, z, width, m - d)
    nrows = len(rows)
    zero = OperatorPolynomial.zero(p.kind, p.nsyms, p.cvars)
    memo: dict = {}
    out = zero
    base_cols = tuple(range(nrows - 1))
    for j in range(d + 1):
        cols = base_cols + (nrows - 1 + j,)
        det = _det(rows, zero, memo, tuple(range(nrows)), cols)
        if det.is_zero:
            continue
        zpow = (
            OperatorPolynomial.from_var(z, p.nsyms, p.cvars, d - j)
            if d > j
            else OperatorPolynomial.one(p.kind, p.nsyms, p.cvars)
        )
        out = out + det * zpow
    return out


# -- decomposition into quasi-simple systems -----------------------------------


@dataclass
class _Branch:
    eqs: list
    ineqs: list
    done_eqs: list
    done_ineqs: list


def _is_nonzero_constant(p: OperatorPolynomial) -> bool:
    return p.is_constant and not p.is_zero


def quasi_simple_decompose(
    system: AlgebraicSystem, rk: Ranking, trace=None
) -> list[AlgebraicSystem]:
    """Thomas-style decomposition into quasi-simple algebraic systems.

    The output systems partition the solution set of the input.
    Inconsistent branches are discarded; an unconstrained input yields the
    single empty system.  Branches are explored depth-first with the
    equality branch first; the result list is sorted by a canonical key.
    """
    stack = [
        _Branch(list(system.equations), list(system.inequations), [], [])
    ]
    results: list[AlgebraicSystem] = []
    guard = count()
    while stack:
        if next(guard) > 100000:
            raise AlgebraicError("algebraic decomposition exceeded its step limit")
        br = stack.pop()
        out = _process_branch(br, rk, stack, trace)
        if out is not None:
            results.append(out)
    results.sort(key=_system_key)
    return results


def _emit(trace, event, payload):
    if trace is not None:
        trace.log("algebraic", event, payload)


def _initial_certified(init: OperatorPolynomial, br: _Branch) -> bool:
    """An initial is certified nonzero on the branch when it is a nonzero
    constant or divides a recorded inequation."""
    if init.is_constant:
        return not init.is_zero
    for q in br.ineqs + br.done_ineqs:
        try:
            _divexact_poly(q, init)
            return True
        except AlgebraicError:
            continue
    return False


def _process_branch(br: _Branch, rk: Ranking, stack, trace):
    """Run one branch until it finishes, splits (pushing onto the stack), or dies."""
    while True:
        # scrub constants and zeros
        eqs = []
        for p in br.eqs:
            if p.is_zero:
                continue
            if _is_nonzero_constant(p):
                _emit(trace, "discard", "nonzero constant equation")
                return None
            eqs.append(p)
        ineqs = []
        for p in br.ineqs:
            if p.is_zero:
                _emit(trace, "discard", "zero inequation")
                return None
            if _is_nonzero_constant(p):
                continue
            ineqs.append(p)
        br.eqs, br.ineqs = eqs, ineqs
        if not br.eqs and not br.ineqs:
            return AlgebraicSystem(br.done_eqs, br.done_ineqs)
        v = max((p.leader(rk) for p in br.eqs + br.ineqs), key=rk.var_key)
        egroup = [p for p in br.eqs if p.leader(rk) == v]
        qgroup = [p for p in br.ineqs if p.leader(rk) == v]
        br.eqs = [p for p in br.eqs if p.leader(rk) != v]
        br.ineqs = [p for p in br.ineqs if p.leader(rk) != v]

        if len(qgroup) >= 2:
            combined = qgroup[0]
            for q in qgroup[1:]:
                combined = combined * q
            br.eqs = egroup + br.eqs
            br.ineqs = [combined] + br.ineqs
            continue

        if len(egroup) >= 2:
            egroup.sort(key=lambda p: (p.degree_in(v), _poly_key(p)))
            divisor = egroup[0]
            init = divisor.coeff_of_power(v, divisor.degree_in(v))
            if not _initial_certified(init, br):
                _restore(br, egroup, qgroup)
                _split_on_initial(br, divisor, v, init, stack, trace)
                return None
            _, _, rem, _ = pseudo_divide(egroup[1], divisor, v)
            _emit(trace, "reduce", "equation pair at a shared leader")
            br.eqs = [divisor, rem] + egroup[2:] + br.eqs
            br.ineqs = qgroup + br.ineqs
            continue

        if egroup and qgroup:
            e, q = egroup[0], qgroup[0]
            de, dq = e.degree_in(v), q.degree_in(v)
            init_e = e.coeff_of_power(v, de)
            if not _initial_certified(init_e, br):
                _restore(br, egroup, qgroup)
                _split_on_initial(br, e, v, init_e, stack, trace)
                return None
            if dq >= de:
                _, _, rem, _ = pseudo_divide(q, e, v)
                _emit(trace, "reduce", "inequation modulo an equation")
                br.eqs = [e] + br.eqs
                br.ineqs = [rem] + br.ineqs
                continue
            init_q = q.coeff_of_power(v, dq)
            if not _initial_certified(init_q, br):
                _restore(br, egroup, qgroup)
                _split_on_initial(br, q, v, init_q, stack, trace, member_is_equation=False)
                return None
            _split_on_common_roots(br, e, q, v, stack, trace)
            return None

        member = egroup[0] if egroup else qgroup[0]
        is_eq = bool(egroup)
        init = member.coeff_of_power(v, member.degree_in(v))
        if not _initial_certified(init, br):
            _restore(br, egroup, qgroup)
            _split_on_initial(br, member, v, init, stack, trace, member_is_equation=is_eq)
            return None
        if is_eq:
            br.done_eqs.append(member)
        else:
            br.done_ineqs.append(member)


def _restore(br: _Branch, egroup, qgroup):
    br.eqs = egroup + br.eqs
    br.ineqs = qgroup + br.ineqs


def _split_on_initial(br, member, v, init, stack, trace, member_is_equation=True):
    """Push the init != 0 branch (member kept, initial recorded) and the
    init = 0 branch (member replaced by its reductum)."""
    d = member.degree_in(v)
    vpow = OperatorPolynomial.from_var(v, member.nsyms, member.cvars, d)
    reductum = member - init * vpow
    eqs = [p for p in br.eqs if p is not member]
    ineqs = [p for p in br.ineqs if p is not member]
    _emit(trace, "split", "case split on an initial")
    if member_is_equation:
        zero_eqs = [init, reductum] + eqs
        zero_ineqs = list(ineqs)
        nonzero_eqs = [member] + eqs
        nonzero_ineqs = [init] + ineqs
    else:
        zero_eqs = [init] + eqs
        zero_ineqs = [reductum] + ineqs
        nonzero_eqs = list(eqs)
        nonzero_ineqs = [member, init] + ineqs
    # depth-first with the equality branch on top of the stack
    stack.append(_Branch(nonzero_eqs, nonzero_ineqs, list(br.done_eqs), list(br.done_ineqs)))
    stack.append(_Branch(zero_eqs, zero_ineqs, list(br.done_eqs), list(br.done_ineqs)))


def _split_on_common_roots(br, e, q, v, stack, trace):
    """Resolve an equation/inequation pair with a shared leader and the
    inequation at lower positive degree, by a resultant branch and a
    gcd-degree case analysis on the subresultant chain.

    Both initials are certified nonzero when this is called.  On the
    branch where the resultant is nonzero the polynomials are coprime in
    v, so the inequation holds at every root of the equation and is
    dropped.  Where the resultant vanishes, the gcd has some degree
    d >= 1; the gcd collects exactly the roots shared with the
    inequation, so the equation is replaced by its pseudo-quotient.
    """
    res = resultant(e, q, v)
    _emit(trace, "split", "resultant split at a shared leader")
    stack.append(
        _Branch([e] + br.eqs, [res] + br.ineqs, list(br.done_eqs), list(br.done_ineqs))
    )
    dq = q.degree_in(v)
    for d in range(1, dq + 1):
        conds = [res] + [_psc(e, q, v, j) for j in range(1, d)]
        psc_d = _psc(e, q, v, d)
        g = subresultant(e, q, v, d) if d < dq else q
        _, quot, rem, _ = pseudo_divide(e, g, v)
        # rem vanishes identically in v on this branch: add its coefficients
        implied = list(rem.as_univariate(v).values()) if not rem.is_zero else []
        new_eqs = conds + [quot] + implied + br.eqs
        new_ineqs = [psc_d, q] + br.ineqs
        stack.append(
            _Branch(new_eqs, new_ineqs, list(br.done_eqs), list(br.done_ineqs))
        )


def _psc(p, q, z, d):
    """Principal subresultant coefficient: the z^d coefficient of S_d."""
    dq = q.degree_in(z)
    if d == dq:
        return q.coeff_of_power(z, dq)
    s = subresultant(p, q, z, d)
    return s.coeff_of_power(z, d)


def _poly_key(p: OperatorPolynomial):
    return tuple(
        sorted(
            (
                tuple(sorted((v.dep, v.shifts, e) for v, e in t)),
                tuple(sorted(c.num.terms.items())),
                tuple(sorted(c.den.terms.items())),
            )
            for t, c in p.terms.items()
        )
    )


def _system_key(system: AlgebraicSystem):
    return (
        tuple(sorted(_poly_key(p) for p in system.equations)),
        tuple(sorted(_poly_key(p) for p in system.inequations)),
    )


# -- validation -----------------------------------------------------------------


@dataclass
class ValidationReport:
    verdict: str  # yes | no | unknown
    reasons: list[str] = field(default_factory=list)


def _triangular_reduce(p: OperatorPolynomial, equations, rk: Ranking) -> OperatorPolynomial:
    """Full pseudo-remainder of p modulo a leader-triangular equation list."""
    rem = p
    changed = True
    while changed and not rem.is_zero and not rem.is_constant:
        changed = False
        for eq in equations:
            z = eq.leader(rk)
            if rem.degree_in(z) >= eq.degree_in(z) and rem.degree_in(z) > 0:
                _, _, rem, _ = pseudo_divide(rem, eq, z)
                changed = True
                if rem.is_zero or rem.is_constant:
                    break
    return rem


def _certified_nonzero(p, lower_eqs, inequations, rk) -> tuple[bool, str]:
    """Sufficient criterion: p pseudo-reduces modulo the lower equations to a
    nonzero constant or to a divisor of a recorded inequation."""
    rem = _triangular_reduce(p, lower_eqs, rk)
    if rem.is_zero:
        return False, "reduces to zero"
    if rem.is_constant:
        return True, "constant"
    for q in inequations:
        try:
            _divexact_poly(q, rem)
            return True, "divides a recorded inequation"
        except AlgebraicError:
            continue
    return False, "not certified"


def validate(system: AlgebraicSystem, rk: Ranking, level: str = "quasi") -> ValidationReport:
    """Check the quasi-simplicity (or full simplicity) conditions.

    Syntactic conditions are decided exactly; the nonvanishing conditions
    on initials (and discriminants at the full level) use a sufficient
    criterion and degrade to `unknown` rather than guess.
    """
    if level not in ("quasi", "full"):
        raise AlgebraicError(f"unknown validation level {level!r}")
    reasons: list[str] = []
    members = list(system.equations) + list(system.inequations)
    for p in members:
        if p.is_constant:
            return ValidationReport("no", ["a member is constant"])
    leaders = [p.leader(rk) for p in members]
    if len(set(leaders)) != len(leaders):
        return ValidationReport("no", ["two members share a leader"])
    verdict = "yes"
    for p in members:
        z = p.leader(rk)
        lower = [
            q for q in system.equations
            if q is not p and rk.compare(q.leader(rk), z) < 0
        ]
        init = p.coeff_of_power(z, p.degree_in(z))
        if not init.is_constant:
            ok, why = _certified_nonzero(init, lower, system.inequations, rk)
            if ok:
                reasons.append(f"initial certified: {why}")
            elif why == "reduces to zero":
                return ValidationReport("no", ["an initial vanishes on the solution set"])
            else:
                verdict = "unknown"
                reasons.append("initial not certified nonzero")
        if level == "full" and p.degree_in(z) >= 2:
            disc = discriminant(p, z, rk)
            if disc.is_zero:
                return ValidationReport("no", ["a discriminant is identically zero"])
            if not disc.is_constant:
                ok, why = _certified_nonzero(disc, lower, system.inequations, rk)
                if ok:
                    reasons.append(f"discriminant certified: {why}")
                elif why == "reduces to zero":
                    return ValidationReport("no", ["a discriminant vanishes on the solution set"])
                else:
                    verdict = "unknown"
                    reasons.append("discriminant not certified nonzero")
    return ValidationReport(verdict, reasons)
