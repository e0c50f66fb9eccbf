"""Continuous limits of difference polynomials.

A grid value sigma^J u(x) is replaced by the Taylor polynomial of
u(x + J h) about the grid point; after clearing any h-denominator the
expansion collects into h-strata, and the lowest nonzero stratum gives
the pair (d, f) with  cleared = h^d f + O(h^(d+1)).

Internally the expansion is h-graded throughout: a value is a map from
h-degree to a differential polynomial with h-free coefficients, and
products are convolved with truncation, which keeps intermediate sizes
bounded by the working order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _cartesian

from .coeffs import Coefficient
from .ring import (
    DERIVATIVE,
    OperatorPolynomial,
    Ranking,
    SHIFT,
    Var,
)


class LimitError(ValueError):
    pass


@dataclass(frozen=True)
class LimitResult:
    d: int
    f: OperatorPolynomial


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def taylor_grid_value(
    dep: int, J, order: int, nsyms: int, cvars: int
) -> OperatorPolynomial:
    """Taylor polynomial of u_dep(x + J h) truncated at total order `order`.

    The result is a differential polynomial whose coefficients carry the
    powers of h.
    """
    if order < 0:
        raise LimitError("negative truncation order")
    if any(j < 0 for j in J):
        raise LimitError("negative shift in a grid value")
    strata = _taylor_strata(dep, J, order, nsyms, cvars)
    out = OperatorPolynomial.zero(DERIVATIVE, nsyms, cvars)
    for k, poly in strata.items():
        out = out + poly.scale(Coefficient.h_power(cvars, k))
    return out


def _taylor_strata(dep, J, order, nsyms, cvars):
    """h-stratified Taylor expansion: degree k maps to the sum over |nu| = k
    of prod(J_i^nu_i / nu_i!) d^nu u_dep."""
    strata: dict[int, OperatorPolynomial] = {}
    ranges = [range(order + 1) for _ in range(nsyms)]
    for nu in _cartesian(*ranges):
        k = sum(nu)
        if k > order:
            continue
        coeff = Fraction(1)
        skip = False
        for j, n in zip(J, nu):
            if n == 0:
                continue
            if j == 0:
                skip = True
                break
            coeff *= Fraction(j**n, _factorial(n))
        if skip:
            continue
        var = Var(DERIVATIVE, dep, tuple(nu))
        piece = OperatorPolynomial.from_var(
            var, nsyms, cvars, 1, Coefficient.from_fraction(cvars, coeff)
        )
        cur = strata.get(k)
        strata[k] = piece if cur is None else cur + piece
    return strata


def _strata_mul(a, b, cap, nsyms, cvars):
    out: dict[int, OperatorPolynomial] = {}
    for ka, pa in a.items():
        for kb, pb in b.items():
            k = ka + kb
            if k > cap:
                continue
            piece = pa * pb
            cur = out.get(k)
            out[k] = piece if cur is None else cur + piece
    return {k: p for k, p in out.items() if not p.is_zero}


def _expand_strata(ftilde: OperatorPolynomial, order: int):
    """h-strata of the cleared difference polynomial up to the given order."""
    nsyms, cvars = ftilde.nsyms, ftilde.cvars
    taylor_cache: dict = {}
    total: dict[int, OperatorPolynomial] = {}
    for term, coeff in ftilde.terms.items():
        v, series = coeff.h_series(order)
        strata: dict[int, OperatorPolynomial] = {}
        for k, c in enumerate(series):
            if c.is_zero:
                continue
            kk = v + k
            if kk > order:
                break
            strata[kk] = OperatorPolynomial.constant(DERIVATIVE, nsyms, c)
        for var, exp in term:
            tv = taylor_cache.get(var)
            if tv is None:
                tv = _taylor_strata(var.dep, var.shifts, order, nsyms, cvars)
                taylor_cache[var] = tv
            for _ in range(exp):
                strata = _strata_mul(strata, tv, order, nsyms, cvars)
                if not strata:
                    break
        for k, p in strata.items():
            cur = total.get(k)
            total[k] = p if cur is None else cur + p
    return {k: p for k, p in total.items() if not p.is_zero}


def clear_h_denominator(ftilde: OperatorPolynomial) -> tuple[OperatorPolynomial, int]:
    """Multiply by the minimal h-power clearing h from denominators.

    Returns (cleared, k) with cleared = h^k * input and k >= 0.
    """
    if ftilde.is_zero:
        return ftilde, 0
    vmin = min(c.h_valuation() for c in ftilde.terms.values())
    if vmin >= 0:
        return ftilde, 0
    return ftilde.scale(Coefficient.h_power(ftilde.cvars, -vmin)), -vmin


def continuous_limit(ftilde: OperatorPolynomial, max_order: int = 12) -> LimitResult:
    """The pair (d, f) with cleared(ftilde) = h^d f + O(h^(d+1)).

    The truncation order starts at the maximal total shift order plus two
    and doubles while the expansion is identically zero; the candidate
    stratum is confirmed at one higher order before being returned.
    """
    if ftilde.is_zero:
        raise LimitError("continuous limit of the zero polynomial")
    if ftilde.kind != SHIFT:
        raise LimitError("continuous limit expects a difference polynomial")
    cleared, _ = clear_h_denominator(ftilde)
    order = max(cleared.max_shift_order() + 2, 2)
    while True:
        if order > max_order:
            raise LimitError(f"limit undetermined at order {max_order}")
        strata = _expand_strata(cleared, order)
        if strata:
            d = min(strata)
            confirm = _expand_strata(cleared, min(order, max_order) + 1)
            if min(confirm) != d or confirm[d] != strata[d]:
                raise LimitError("unstable limit stratum; raise max_order")
            return LimitResult(d, strata[d])
        order *= 2


def w_consistency_check(
    ftilde: OperatorPolynomial, f: OperatorPolynomial, max_order: int = 12
):
    """Weak-consistency comparison of a difference equation with a
    differential one.

    Returns ("exact", 1), ("scaled", c) for a nonzero h-free constant c,
    or ("no", None).
    """
    if ftilde.is_zero or f.is_zero:
        raise LimitError("w-consistency needs nonzero polynomials")
    lim = continuous_limit(ftilde, max_order)
    ratio = proportionality_constant(lim.f, f)
    if ratio is None:
        return "no", None
    if ratio == Coefficient.one(f.cvars):
        return "exact", ratio
    return "scaled", ratio


def proportionality_constant(p: OperatorPolynomial, q: OperatorPolynomial):
    """The constant c with p = c * q, if any; requires h-free c when both
    sides are h-free."""
    if p.is_zero or q.is_zero:
        return None
    if set(p.terms) != set(q.terms):
        return None
    ratio = None
    for t, cq in q.terms.items():
        cp = p.terms[t]
        r = cp / cq
        if ratio is None:
            ratio = r
        elif r != ratio:
            return None
    return ratio
