import itertools
import random

import pytest

from sconsist.janet import (
    JanetError,
    classify,
    find_janet_divisor,
    in_multiple_closure,
    is_janet_complete,
    janet_completion,
    mon_divides,
    mon_quotient,
    multiplicative_variables,
)

SO2 = (0, 1)


def test_multiplicative_variables_examples():
    G = {(1, 1), (0, 2)}
    assert multiplicative_variables((1, 1), G, SO2) == frozenset({0, 1})
    assert multiplicative_variables((0, 2), G, SO2) == frozenset({1})
    assert multiplicative_variables((3, 4), {(3, 4)}, SO2) == frozenset({0, 1})
    G = {(2, 0), (1, 1), (0, 2)}
    assert multiplicative_variables((2, 0), G, SO2) == frozenset({0, 1})
    assert multiplicative_variables((1, 1), G, SO2) == frozenset({1})
    assert multiplicative_variables((0, 2), G, SO2) == frozenset({1})


def test_multiplicative_variables_requires_membership():
    with pytest.raises(JanetError):
        multiplicative_variables((1, 0), {(0, 1)}, SO2)


def test_janet_completion_examples():
    assert janet_completion({(1, 0), (0, 1)}, SO2) == frozenset({(1, 0), (0, 1)})
    assert janet_completion({(2, 0), (0, 1)}, SO2) == frozenset(
        {(2, 0), (1, 1), (0, 1)}
    )
    assert janet_completion({(0, 0)}, SO2) == frozenset({(0, 0)})


def test_find_janet_divisor_examples():
    J = classify({(1, 1), (0, 2)}, SO2)
    assert find_janet_divisor((3, 1), J) == ((1, 1), (2, 0))
    assert find_janet_divisor((0, 0), J) is None
    assert find_janet_divisor((0, 3), J) == ((0, 2), (0, 1))


def _cone_oracle(G, symbol_order, max_deg):
    """Brute-force check that the completed cones partition the closure."""
    J = janet_completion(G, symbol_order)
    classified = classify(J, symbol_order)
    n = len(symbol_order)
    for v in itertools.product(range(max_deg + 1), repeat=n):
        hits = 0
        for m, mult in classified.items():
            if mon_divides(m, v):
                theta = mon_quotient(v, m)
                if all(theta[i] == 0 or i in mult for i in range(n)):
                    hits += 1
        expected = 1 if in_multiple_closure(v, G) else 0
        assert hits == expected, (v, sorted(J))
    return J


def test_cone_partition_property():
    rnd = random.Random(7)
    for case in range(200):
        n = rnd.randint(1, 4)
        so = list(range(n))
        rnd.shuffle(so)
        G = {
            tuple(rnd.randint(0, 5) for _ in range(n))
            for _ in range(rnd.randint(1, 6))
        }
        max_deg = 10 if n <= 2 else (7 if n == 3 else 5)
        J = _cone_oracle(G, tuple(so), max_deg)
        # idempotence and the local completeness criterion
        assert janet_completion(J, tuple(so)) == J
        assert is_janet_complete(J, tuple(so))
        # closure preservation by mutual divisibility of generators
        assert all(in_multiple_closure(m, G) for m in J)
        assert all(in_multiple_closure(m, J) for m in G)


def test_divisor_uniqueness_random_monomials():
    rnd = random.Random(8)
    for _ in range(200):
        n = rnd.randint(2, 4)
        so = tuple(range(n))
        G = {
            tuple(rnd.randint(0, 4) for _ in range(n))
            for _ in range(rnd.randint(1, 5))
        }
        J = janet_completion(G, so)
        classified = classify(J, so)
        for _ in range(20):
            v = tuple(rnd.randint(0, 10) for _ in range(n))
            hit = find_janet_divisor(v, classified)
            if in_multiple_closure(v, G):
                assert hit is not None
                m, theta = hit
                assert tuple(a + b for a, b in zip(m, theta)) == v
            else:
                assert hit is None
