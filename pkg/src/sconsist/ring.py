"""Sparse polynomials in shifted or differentiated dependent variables.

One engine serves both operator rings: difference polynomials (variables
are shifts sigma^J u_alpha) and differential polynomials (variables are
derivatives d^J u_alpha).  A polynomial carries a kind tag; coefficients
live in the field Q(a, h) from `coeffs` and are constants for both kinds
of operators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .coeffs import (
    Coefficient,
    CoefficientError,
    coefficient_gcd_content,
)

SHIFT = "shift"
DERIVATIVE = "derivative"


class RingError(ValueError):
    pass


class Var(NamedTuple):
    """One operator variable: sigma^J u_dep or d^J u_dep."""

    kind: str
    dep: int
    shifts: tuple[int, ...]

    def shifted(self, theta) -> "Var":
        return Var(self.kind, self.dep, tuple(a + b for a, b in zip(self.shifts, theta)))

    @property
    def order(self) -> int:
        return sum(self.shifts)


def _vkey(v: Var):
    return (v.dep, v.shifts)


# A term key is a tuple of (Var, exponent) pairs sorted by _vkey.
Term = tuple[tuple[Var, int], ...]

_EMPTY: Term = ()


def _term_mul(t1: Term, t2: Term) -> Term:
    if not t1:
        return t2
    if not t2:
        return t1
    merged = dict(t1)
    for v, e in t2:
        merged[v] = merged.get(v, 0) + e
    return tuple(sorted(merged.items(), key=lambda p: _vkey(p[0])))


class Ranking:
    """Total order on operator variables: TOP-lex or POT-lex.

    symbol_order lists symbol indices most significant first; dep_order
    lists dependent-variable indices highest ranked first.
    """

    TOPLEX = "toplex"
    POTLEX = "potlex"

    def __init__(self, scheme: str, symbol_order, dep_order):
        if scheme not in (self.TOPLEX, self.POTLEX):
            raise RingError(f"unknown ranking scheme {scheme!r}")
        self.scheme = scheme
        self.symbol_order = tuple(symbol_order)
        self.dep_order = tuple(dep_order)
        if sorted(self.symbol_order) != list(range(len(self.symbol_order))):
            raise RingError("symbol_order must be a permutation")
        if sorted(self.dep_order) != list(range(len(self.dep_order))):
            raise RingError("dep_order must be a permutation")
        self._dep_pos = {d: i for i, d in enumerate(self.dep_order)}

    def var_key(self, v: Var):
        """Sort key: v > w under the ranking iff var_key(v) > var_key(w)."""
        jlex = tuple(v.shifts[s] for s in self.symbol_order)
        deprank = -self._dep_pos[v.dep]
        if self.scheme == self.TOPLEX:
            return (jlex, deprank)
        return (deprank, jlex)

    def compare(self, v: Var, w: Var) -> int:
        if v.kind != w.kind:
            raise RingError("cannot rank variables of different kinds")
        a, b = self.var_key(v), self.var_key(w)
        return (a > b) - (a < b)

    def term_key(self, term: Term):
        return tuple(sorted(((self.var_key(v), e) for v, e in term), reverse=True))


def rank_compare(v: Var, w: Var, rk: Ranking) -> int:
    """-1, 0 or 1 as v ranks below, equal to, or above w."""
    return rk.compare(v, w)


@dataclass(frozen=True)
class LeaderData:
    leader: Var
    initial: "OperatorPolynomial"
    degree: int
    separant: "OperatorPolynomial"


class OperatorPolynomial:
    """Sparse polynomial in operator variables over Q(a, h)."""

    __slots__ = ("kind", "nsyms", "cvars", "terms")

    def __init__(self, kind: str, nsyms: int, cvars: int, terms=()):
        self.kind = kind
        self.nsyms = nsyms
        self.cvars = cvars
        items = terms.items() if isinstance(terms, dict) else terms
        data: dict[Term, Coefficient] = {}
        for t, c in items:
            if c.is_zero:
                continue
            t = tuple(sorted(((v, e) for v, e in t if e), key=lambda p: _vkey(p[0])))
            cur = data.get(t)
            if cur is None:
                data[t] = c
            else:
                cur = cur + c
                if cur.is_zero:
                    del data[t]
                else:
                    data[t] = cur
        self.terms = data

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, kind, nsyms, cvars) -> "OperatorPolynomial":
        return cls(kind, nsyms, cvars)

    @classmethod
    def constant(cls, kind, nsyms, coeff: Coefficient) -> "OperatorPolynomial":
        return cls(kind, nsyms, coeff.nvars, {_EMPTY: coeff})

    @classmethod
    def one(cls, kind, nsyms, cvars) -> "OperatorPolynomial":
        return cls.constant(kind, nsyms, Coefficient.one(cvars))

    @classmethod
    def from_var(cls, v: Var, nsyms: int, cvars: int, exp: int = 1, coeff=None) -> "OperatorPolynomial":
        if coeff is None:
            coeff = Coefficient.one(cvars)
        return cls(v.kind, nsyms, cvars, {((v, exp),): coeff})

    def _like(self, terms) -> "OperatorPolynomial":
        out = OperatorPolynomial(self.kind, self.nsyms, self.cvars)
        out.terms = {t: c for t, c in terms.items() if not c.is_zero}
        return out

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(t == _EMPTY for t in self.terms)

    def constant_value(self) -> Coefficient:
        if self.is_zero:
            return Coefficient.zero(self.cvars)
        if not self.is_constant:
            raise RingError("polynomial is not constant")
        return self.terms[_EMPTY]

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, OperatorPolynomial):
            return NotImplemented
        return self.kind == other.kind and self.terms == other.terms

    def __hash__(self):
        return hash((self.kind, frozenset(self.terms.items())))

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "OperatorPolynomial"):
        if self.kind != other.kind:
            raise RingError("cannot mix shift and derivative polynomials")
        if self.nsyms != other.nsyms or self.cvars != other.cvars:
            raise RingError("mixed ring contexts")

    def __add__(self, other):
        self._check(other)
        data = dict(self.terms)
        for t, c in other.terms.items():
            cur = data.get(t)
            if cur is None:
                data[t] = c
            else:
                cur = cur + c
                if cur.is_zero:
                    del data[t]
                else:
                    data[t] = cur
        return self._like(data)

    def __neg__(self):
        return self._like({t: -c for t, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        data: dict[Term, Coefficient] = {}
        for t1, c1 in self.terms.items():
            for t2, c2 in other.terms.items():
                t = _term_mul(t1, t2)
                c = c1 * c2
                cur = data.get(t)
                if cur is None:
                    data[t] = c
                else:
                    cur = cur + c
                    if cur.is_zero:
                        del data[t]
                    else:
                        data[t] = cur
        return self._like(data)

    def scale(self, coeff: Coefficient) -> "OperatorPolynomial":
        if coeff.is_zero:
            return OperatorPolynomial(self.kind, self.nsyms, self.cvars)
        return self._like({t: c * coeff for t, c in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise RingError("negative power")
        result = OperatorPolynomial.one(self.kind, self.nsyms, self.cvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- structure ----------------------------------------------------------

    def variables(self) -> set[Var]:
        out = set()
        for t in self.terms:
            for v, _ in t:
                out.add(v)
        return out

    def max_shift_order(self) -> int:
        return max((v.order for v in self.variables()), default=0)

    def min_shifts(self) -> tuple[int, ...]:
        """Componentwise minimum of the shift multi-indices that occur."""
        vars_ = self.variables()
        if not vars_:
            return (0,) * self.nsyms
        return tuple(
            min(v.shifts[i] for v in vars_) for i in range(self.nsyms)
        )

    def degree_in(self, var: Var) -> int:
        d = 0
        for t in self.terms:
            for v, e in t:
                if v == var and e > d:
                    d = e
        return d

    def as_univariate(self, var: Var) -> dict[int, "OperatorPolynomial"]:
        """Coefficients of the powers of var; key 0 holds the var-free part."""
        parts: dict[int, dict[Term, Coefficient]] = {}
        for t, c in self.terms.items():
            k = 0
            rest = []
            for v, e in t:
                if v == var:
                    k = e
                else:
                    rest.append((v, e))
            parts.setdefault(k, {})[tuple(rest)] = c
        return {
            k: self._like(d) for k, d in sorted(parts.items())
        }

    def coeff_of_power(self, var: Var, k: int) -> "OperatorPolynomial":
        return self.as_univariate(var).get(
            k, OperatorPolynomial(self.kind, self.nsyms, self.cvars)
        )

    def leader_data(self, rk: Ranking) -> LeaderData:
        """Leader, initial, leader degree and separant of a non-constant polynomial."""
        vars_ = self.variables()
        if not vars_:
            raise RingError("no leader: polynomial is constant")
        leader = max(vars_, key=rk.var_key)
        degree = self.degree_in(leader)
        initial = self.coeff_of_power(leader, degree)
        separant = self.partial_wrt(leader)
        return LeaderData(leader, initial, degree, separant)

    def leader(self, rk: Ranking) -> Var:
        vars_ = self.variables()
        if not vars_:
            raise RingError("no leader: polynomial is constant")
        return max(vars_, key=rk.var_key)

    def partial_wrt(self, var: Var) -> "OperatorPolynomial":
        """Formal partial derivative with respect to one operator variable."""
        data: dict[Term, Coefficient] = {}
        for t, c in self.terms.items():
            for i, (v, e) in enumerate(t):
                if v != var:
                    continue
                rest = list(t)
                if e == 1:
                    del rest[i]
                else:
                    rest[i] = (v, e - 1)
                key = tuple(rest)
                cc = c * Coefficient.from_fraction(self.cvars, e)
                cur = data.get(key)
                if cur is None:
                    data[key] = cc
                else:
                    cur = cur + cc
                    if cur.is_zero:
                        del data[key]
                    else:
                        data[key] = cur
                break
        return self._like(data)

    # -- operator action ------------------------------------------------------

    def apply_symbol(self, sym: int) -> "OperatorPolynomial":
        """Apply one operator symbol: a shift acts as a ring endomorphism,
        a derivation acts by the Leibniz rule with constant coefficients."""
        step = tuple(1 if i == sym else 0 for i in range(self.nsyms))
        if self.kind == SHIFT:
            data = {}
            for t, c in self.terms.items():
                nt = tuple((v.shifted(step), e) for v, e in t)
                data[tuple(sorted(nt, key=lambda p: _vkey(p[0])))] = c
            return self._like(data)
        out = OperatorPolynomial(self.kind, self.nsyms, self.cvars)
        for t, c in self.terms.items():
            for i, (v, e) in enumerate(t):
                rest = list(t)
                if e == 1:
                    del rest[i]
                else:
                    rest[i] = (v, e - 1)
                dvar = v.shifted(step)
                key = _term_mul(tuple(rest), ((dvar, 1),))
                piece = OperatorPolynomial(
                    self.kind,
                    self.nsyms,
                    self.cvars,
                    {key: c * Coefficient.from_fraction(self.cvars, e)},
                )
                out = out + piece
        return out


def apply_operator(theta, p: OperatorPolynomial) -> OperatorPolynomial:
    """Apply the operator monomial theta (tuple of symbol powers) to p."""
    if len(theta) != p.nsyms:
        raise RingError("operator monomial has wrong arity")
    if any(t < 0 for t in theta):
        raise RingError("negative operator power")
    if p.kind == SHIFT:
        if all(t == 0 for t in theta):
            return p
        data = {}
        for t, c in p.terms.items():
            nt = tuple((v.shifted(theta), e) for v, e in t)
            data[tuple(sorted(nt, key=lambda pr: _vkey(pr[0])))] = c
        return p._like(data)
    out = p
    for sym, power in enumerate(theta):
        for _ in range(power):
            out = out.apply_symbol(sym)
    return out


@dataclass(frozen=True)
class ReductionStep:
    """One pseudo-reduction step: r_new = multiplier * r_old - cofactor * theta(divisor)."""

    multiplier: OperatorPolynomial
    cofactor: OperatorPolynomial
    theta: tuple[int, ...]
    divisor: OperatorPolynomial


def replay_steps(r0: OperatorPolynomial, steps) -> OperatorPolynomial:
    """Re-run the recorded linear identity of a reduction certificate."""
    r = r0
    for st in steps:
        r = st.multiplier * r - st.cofactor * apply_operator(st.theta, st.divisor)
    return r


def certificate_multiplier(steps, like: OperatorPolynomial) -> OperatorPolynomial:
    b = OperatorPolynomial.one(like.kind, like.nsyms, like.cvars)
    for st in steps:
        b = b * st.multiplier
    return b


def pseudo_reduce_step(
    r: OperatorPolynomial, f: OperatorPolynomial, theta, rk: Ranking
) -> tuple[OperatorPolynomial, ReductionStep]:
    """One step of Janet/Euclidean pseudo-reduction of r by theta(f).

    With v the leader of theta(f) and d = deg_v(r) - deg_v(theta f) >= 0:
    r' = init(theta f) * r - init_v(r) * v^d * theta(f).
    """
    tf = apply_operator(theta, f)
    ld = tf.leader_data(rk)
    v = ld.leader
    dr = r.degree_in(v)
    if dr < ld.degree or dr == 0:
        raise RingError("pseudo-reduction precondition violated")
    init_r = r.coeff_of_power(v, dr)
    vpow = OperatorPolynomial.from_var(v, r.nsyms, r.cvars, dr - ld.degree) if dr > ld.degree else OperatorPolynomial.one(r.kind, r.nsyms, r.cvars)
    cofactor = init_r * vpow
    r_new = ld.initial * r - cofactor * tf
    step = ReductionStep(ld.initial, cofactor, tuple(theta), f)
    return r_new, step


def content_normalize(p: OperatorPolynomial, rk: Ranking):
    """Divide by the scalar content, sign-fixed so the canonical leading
    term has a positive leading rational.  Returns (normalized, content)."""
    if p.is_zero:
        return p, Coefficient.one(p.cvars)
    content = coefficient_gcd_content(p.terms.values())
    lead_term = max(p.terms, key=rk.term_key)
    lead = p.terms[lead_term]
    num = lead.num
    _, lc = num.leading_term()
    if lc < 0:
        content = -content
    inv = content.inverse()
    return p.scale(inv), content


def substitute(p: OperatorPolynomial, mapping) -> OperatorPolynomial:
    """Replace variables by polynomials (used by test oracles and the
    Taylor machinery); variables not in the mapping stay themselves.

    The result takes the kind of the mapped images, which lets a shift
    polynomial turn into a derivative polynomial."""
    sample = next(iter(mapping.values()), None)
    kind = sample.kind if sample is not None else p.kind
    out = OperatorPolynomial(kind, p.nsyms, p.cvars)
    for t, c in p.terms.items():
        piece = OperatorPolynomial.constant(kind, p.nsyms, c)
        for v, e in t:
            if v in mapping:
                piece = piece * (mapping[v] ** e)
            else:
                vv = Var(kind, v.dep, v.shifts)
                piece = piece * OperatorPolynomial.from_var(vv, p.nsyms, p.cvars, e)
        out = out + piece
    return out


def evaluate(p: OperatorPolynomial, var_values, param_values) -> Fraction:
    """Evaluate at rational variable and parameter values (h included last)."""
    total = Fraction(0)
    for t, c in p.terms.items():
        val = c.evaluate(param_values)
        for v, e in t:
            val *= Fraction(var_values[v]) ** e
        total += val
    return total
