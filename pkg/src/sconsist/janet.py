"""Janet division on monomials in the operator symbols.

A monomial is a tuple of non-negative exponents, one slot per operator
symbol (sigma_i or d_i).  The symbol order is a permutation of the slot
indices, most significant first; it controls which symbols are
multiplicative for each generator.
"""

from __future__ import annotations

Monomial = tuple[int, ...]


class JanetError(ValueError):
    pass


def mon_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mon_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mon_quotient(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mon_total_degree(a: Monomial) -> int:
    return sum(a)


def lex_key(m: Monomial, symbol_order) -> tuple[int, ...]:
    return tuple(m[s] for s in symbol_order)


def multiplicative_variables(m: Monomial, G, symbol_order) -> frozenset[int]:
    """Multiplicative symbol indices for m within the finite set G.

    Symbol s_k (k-th in symbol_order) is multiplicative for m iff m's
    exponent at s_k is maximal among the members of G that agree with m
    on all earlier symbols in the order.
    """
    G = set(G)
    if m not in G:
        raise JanetError("monomial is not a member of the generating set")
    mult = set()
    candidates = G
    for s in symbol_order:
        top = max(g[s] for g in candidates)
        if m[s] == top:
            mult.add(s)
        candidates = {g for g in candidates if g[s] == m[s]}
    return frozenset(mult)


def classify(G, symbol_order) -> dict[Monomial, frozenset[int]]:
    """Per-monomial multiplicative sets for every member of G."""
    G = set(G)
    return {m: multiplicative_variables(m, G, symbol_order) for m in G}


def find_janet_divisor(v: Monomial, classified: dict[Monomial, frozenset[int]]):
    """The (m, theta) with v = theta * m and theta supported on mult(m), if any.

    For a Janet complete set the divisor is unique; the first hit is
    returned.
    """
    for m, mult in classified.items():
        if not mon_divides(m, v):
            continue
        theta = mon_quotient(v, m)
        if all(theta[i] == 0 or i in mult for i in range(len(theta))):
            return m, theta
    return None


def _minimal_generators(vecs):
    out = []
    for v in vecs:
        if any(w != v and mon_divides(w, v) for w in vecs):
            continue
        out.append(v)
    return set(out)


def _complete_rec(vecs: frozenset[tuple[int, ...]]) -> set[tuple[int, ...]]:
    """Completion on significance-ordered exponent tuples, slice by slice.

    Each slice in the most significant symbol is generated by the
    projections accumulated so far; the slice's layer is the recursive
    completion of the minimal generators together with the slice's own
    members.  Only the top slice has the leading symbol multiplicative,
    so every lower slice must be complete on its own.
    """
    if not vecs:
        return set()
    width = len(next(iter(vecs)))
    if width == 1:
        lo = min(v[0] for v in vecs)
        hi = max(v[0] for v in vecs)
        return {(e,) for e in range(lo, hi + 1)}
    top = max(v[0] for v in vecs)
    out: set[tuple[int, ...]] = set()
    acc: set[tuple[int, ...]] = set()
    for k in range(top + 1):
        slice_k = {v[1:] for v in vecs if v[0] == k}
        acc |= slice_k
        gens = _minimal_generators(acc) | slice_k
        if gens:
            for m in _complete_rec(frozenset(gens)):
                out.add((k,) + m)
    return out


def janet_completion(G, symbol_order) -> frozenset[Monomial]:
    """Minimal Janet completion of G: the smallest J containing G with the
    same multiple-closure whose cones partition that closure."""
    G = set(G)
    if not G:
        raise JanetError("cannot complete an empty set")
    ordered = frozenset(lex_key(m, symbol_order) for m in G)
    completed = _complete_rec(ordered)
    inverse = [0] * len(symbol_order)
    for pos, s in enumerate(symbol_order):
        inverse[s] = pos
    return frozenset(tuple(v[inverse[i]] for i in range(len(symbol_order))) for v in completed)


def janet_completion_with_provenance(G, symbol_order):
    """Completion plus parent links: each added monomial is y * parent for
    some member and symbol y (needed to attach prolonged polynomials)."""
    G = set(G)
    J = janet_completion(G, symbol_order)
    parents: dict[Monomial, tuple[Monomial, int]] = {}
    pending = set(J) - G
    known = set(G)
    while pending:
        progressed = False
        for m in sorted(pending, key=mon_total_degree):
            hit = None
            for s in range(len(symbol_order)):
                if m[s] == 0:
                    continue
                p = tuple(e - 1 if i == s else e for i, e in enumerate(m))
                if p in known:
                    hit = (p, s)
                    break
            if hit is not None:
                parents[m] = hit
                known.add(m)
                pending.remove(m)
                progressed = True
                break
        if not progressed:
            raise JanetError("completion element without a one-step parent")
    return J, parents


def is_janet_complete(G, symbol_order) -> bool:
    """Local involutivity test: every non-multiplicative prolongation of a
    member has a Janet divisor in the set."""
    G = set(G)
    if not G:
        return True
    classified = classify(G, symbol_order)
    for m, mult in classified.items():
        for s in range(len(symbol_order)):
            if s in mult:
                continue
            v = tuple(e + 1 if i == s else e for i, e in enumerate(m))
            if find_janet_divisor(v, classified) is None:
                return False
    return True


def in_multiple_closure(v: Monomial, G) -> bool:
    return any(mon_divides(m, v) for m in G)
