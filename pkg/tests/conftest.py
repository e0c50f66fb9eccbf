"""Shared builders for the test suite.

Most tests work in one of two tiny contexts: a two-symbol grid with a
single dependent variable (the running nonlinear example), or a handful
of zero-shift "algebraic" variables.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from sconsist.coeffs import Coefficient, ParameterPolynomial
from sconsist.ring import DERIVATIVE, SHIFT, OperatorPolynomial, Ranking, Var


class Ctx:
    """Polynomial-building helpers bound to one ring context."""

    def __init__(self, kind: str, nsyms: int, cvars: int = 1, ndeps: int = 1):
        self.kind = kind
        self.nsyms = nsyms
        self.cvars = cvars
        self.ndeps = ndeps

    def var(self, dep: int, *shifts: int) -> Var:
        return Var(self.kind, dep, tuple(shifts))

    def poly(self, v: Var, exp: int = 1, coeff=None) -> OperatorPolynomial:
        if isinstance(coeff, (int, Fraction)):
            coeff = Coefficient.from_fraction(self.cvars, coeff)
        return OperatorPolynomial.from_var(v, self.nsyms, self.cvars, exp, coeff)

    def const(self, value) -> OperatorPolynomial:
        return OperatorPolynomial.constant(
            self.kind, self.nsyms, Coefficient.from_fraction(self.cvars, value)
        )

    @property
    def zero(self) -> OperatorPolynomial:
        return OperatorPolynomial.zero(self.kind, self.nsyms, self.cvars)

    @property
    def one(self) -> OperatorPolynomial:
        return OperatorPolynomial.one(self.kind, self.nsyms, self.cvars)

    def h(self, power: int = 1) -> Coefficient:
        return Coefficient.h_power(self.cvars, power)

    def q(self, value) -> Coefficient:
        return Coefficient.from_fraction(self.cvars, value)


@pytest.fixture
def shift2():
    """Two grid directions, one dependent variable, coefficients in Q(h)."""
    return Ctx(SHIFT, 2)


@pytest.fixture
def deriv2():
    return Ctx(DERIVATIVE, 2)


@pytest.fixture
def toplex2():
    return Ranking("toplex", (0, 1), (0,))


@pytest.fixture
def running_fda(shift2, toplex2):
    """The forward/forward discretization of u_x = u^2, u_y = -u^2."""
    c = shift2
    u, s1u, s2u = c.var(0, 0, 0), c.var(0, 1, 0), c.var(0, 0, 1)
    A = c.poly(s1u) - c.poly(u) - c.poly(u, 2, c.h())
    B = c.poly(s2u) - c.poly(u) + c.poly(u, 2, c.h())
    return A, B


@pytest.fixture
def running_pde(deriv2):
    c = deriv2
    du, dux, duy = c.var(0, 0, 0), c.var(0, 1, 0), c.var(0, 0, 1)
    f1 = c.poly(dux) - c.poly(du, 2)
    f2 = c.poly(duy) + c.poly(du, 2)
    return f1, f2
