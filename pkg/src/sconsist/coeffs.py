"""Exact scalar arithmetic: rational functions in the declared parameters and h.

Every polynomial in this package has coefficients in the field
Q(a_1, ..., a_l, h).  A scalar is a reduced fraction of two sparse
multivariate polynomials over Q; the grid spacing h always occupies the
last exponent slot, parameters come first in declaration order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd


class CoefficientError(ArithmeticError):
    pass


def fraction_gcd(a: Fraction, b: Fraction) -> Fraction:
    """gcd on Q: gcd of numerators over lcm of denominators."""
    if not a:
        return abs(b)
    if not b:
        return abs(a)
    num = _igcd(a.numerator, b.numerator)
    den = a.denominator * b.denominator // _igcd(a.denominator, b.denominator)
    return Fraction(num, den)


def _degrevlex_key(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)))


class ParameterPolynomial:
    """Sparse polynomial over Q in a_1..a_l and h (h is the last slot).

    Instances are immutable by convention; the stored term map never holds
    zero coefficients.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=()):
        self.nvars = nvars
        items = terms.items() if isinstance(terms, dict) else terms
        data: dict[tuple[int, ...], Fraction] = {}
        for exp, coeff in items:
            if not coeff:
                continue
            cur = data.get(exp)
            if cur is None:
                data[exp] = coeff
            else:
                cur = cur + coeff
                if cur:
                    data[exp] = cur
                else:
                    del data[exp]
        self.terms = data

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "ParameterPolynomial":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, value) -> "ParameterPolynomial":
        value = Fraction(value)
        if not value:
            return cls(nvars)
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def one(cls, nvars: int) -> "ParameterPolynomial":
        return cls.const(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, index: int, power: int = 1) -> "ParameterPolynomial":
        if not 0 <= index < nvars:
            raise CoefficientError(f"variable index {index} out of range")
        exp = tuple(power if i == index else 0 for i in range(nvars))
        return cls(nvars, {exp: Fraction(1)})

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_const(self) -> bool:
        return all(not any(e) for e in self.terms)

    def const_value(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        if not self.is_const:
            raise CoefficientError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ParameterPolynomial)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "ParameterPolynomial"):
        if self.nvars != other.nvars:
            raise CoefficientError("mixed parameter contexts")

    def __add__(self, other: "ParameterPolynomial") -> "ParameterPolynomial":
        self._check(other)
        data = dict(self.terms)
        for exp, coeff in other.terms.items():
            cur = data.get(exp)
            if cur is None:
                data[exp] = coeff
            else:
                cur = cur + coeff
                if cur:
                    data[exp] = cur
                else:
                    del data[exp]
        out = ParameterPolynomial(self.nvars)
        out.terms = data
        return out

    def __neg__(self) -> "ParameterPolynomial":
        out = ParameterPolynomial(self.nvars)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other: "ParameterPolynomial") -> "ParameterPolynomial":
        return self + (-other)

    def __mul__(self, other: "ParameterPolynomial") -> "ParameterPolynomial":
        self._check(other)
        data: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                cur = data.get(exp)
                if cur is None:
                    data[exp] = c
                else:
                    cur = cur + c
                    if cur:
                        data[exp] = cur
                    else:
                        del data[exp]
        out = ParameterPolynomial(self.nvars)
        out.terms = data
        return out

    def scale(self, value: Fraction) -> "ParameterPolynomial":
        if not value:
            return ParameterPolynomial(self.nvars)
        out = ParameterPolynomial(self.nvars)
        out.terms = {e: c * value for e, c in self.terms.items()}
        return out

    def __pow__(self, n: int) -> "ParameterPolynomial":
        if n < 0:
            raise CoefficientError("negative power of a polynomial")
        result = ParameterPolynomial.one(self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- structure ----------------------------------------------------------

    def degree(self, index: int) -> int:
        if self.is_zero:
            return -1
        return max(e[index] for e in self.terms)

    def min_degree(self, index: int) -> int:
        if self.is_zero:
            raise CoefficientError("min degree of zero polynomial")
        return min(e[index] for e in self.terms)

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        """Leading term under degrevlex with h last."""
        if self.is_zero:
            raise CoefficientError("leading term of zero polynomial")
        exp = max(self.terms, key=_degrevlex_key)
        return exp, self.terms[exp]

    def strip_var(self, index: int) -> tuple[int, "ParameterPolynomial"]:
        """Factor out the highest power of the given variable: p = x_i^v * q."""
        if self.is_zero:
            raise CoefficientError("cannot strip zero polynomial")
        v = self.min_degree(index)
        if v == 0:
            return 0, self
        out = ParameterPolynomial(self.nvars)
        out.terms = {
            tuple(e - v if i == index else e for i, e in enumerate(exp)): c
            for exp, c in self.terms.items()
        }
        return v, out

    def shift_var(self, index: int, amount: int) -> "ParameterPolynomial":
        """Multiply by x_i^amount (amount >= 0)."""
        if amount == 0:
            return self
        out = ParameterPolynomial(self.nvars)
        out.terms = {
            tuple(e + amount if i == index else e for i, e in enumerate(exp)): c
            for exp, c in self.terms.items()
        }
        return out

    def as_univariate(self, index: int) -> dict[int, "ParameterPolynomial"]:
        """View as univariate in x_i; coefficients have x_i-exponent zero."""
        parts: dict[int, dict] = {}
        for exp, c in self.terms.items():
            k = exp[index]
            rest = tuple(0 if i == index else e for i, e in enumerate(exp))
            parts.setdefault(k, {})[rest] = c
        return {
            k: ParameterPolynomial(self.nvars, d) for k, d in sorted(parts.items())
        }

    def evaluate(self, values) -> Fraction:
        values = [Fraction(v) for v in values]
        if len(values) != self.nvars:
            raise CoefficientError("wrong number of values")
        total = Fraction(0)
        for exp, c in self.terms.items():
            term = c
            for v, e in zip(values, exp):
                if e:
                    term *= v**e
            total += term
        return total

    def content(self) -> Fraction:
        g = Fraction(0)
        for c in self.terms.values():
            g = fraction_gcd(g, c)
        return g

    def __repr__(self):
        return f"ParameterPolynomial({self.nvars}, {self.terms!r})"


# -- gcd machinery ------------------------------------------------------------
#
# Multivariate gcd by recursive content / primitive-part reduction to a
# primitive pseudo-remainder sequence.  Parameter counts are tiny here, so no
# modular tricks are needed.


def divexact(f: ParameterPolynomial, g: ParameterPolynomial) -> ParameterPolynomial:
    """Exact division f / g; raises if the division leaves a remainder."""
    if g.is_zero:
        raise CoefficientError("division by zero polynomial")
    if f.is_zero:
        return ParameterPolynomial(f.nvars)
    quot: dict[tuple[int, ...], Fraction] = {}
    rem = f
    gexp, gc = g.leading_term()
    while not rem.is_zero:
        rexp, rc = rem.leading_term()
        diff = tuple(a - b for a, b in zip(rexp, gexp))
        if any(d < 0 for d in diff):
            raise CoefficientError("inexact polynomial division")
        qc = rc / gc
        quot[diff] = qc
        piece = ParameterPolynomial(f.nvars, {diff: qc})
        rem = rem - piece * g
    return ParameterPolynomial(f.nvars, quot)


def canonical(f: ParameterPolynomial) -> ParameterPolynomial:
    """Primitive representative with positive leading rational (degrevlex)."""
    if f.is_zero:
        return f
    c = f.content()
    _, lead = f.leading_term()
    if lead < 0:
        c = -c
    return f.scale(1 / c)


def _main_variable(f: ParameterPolynomial, g: ParameterPolynomial) -> int | None:
    for i in range(f.nvars - 1, -1, -1):
        if f.degree(i) > 0 or g.degree(i) > 0:
            return i
    return None


def _uni_content_pp(parts: dict[int, ParameterPolynomial]):
    cont = None
    for coeff in parts.values():
        cont = canonical(coeff) if cont is None else param_gcd(cont, coeff)
        if cont.is_const:
            cont = ParameterPolynomial.one(cont.nvars)
            break
    if cont.is_const and cont.const_value() == 1:
        return cont, dict(parts)
    pp = {k: divexact(c, cont) for k, c in parts.items()}
    return cont, pp


def _uni_prem(
    p: dict[int, ParameterPolynomial], q: dict[int, ParameterPolynomial], nvars: int
) -> dict[int, ParameterPolynomial]:
    """Pseudo-remainder of univariate polynomials with polynomial coefficients."""

    def deg(u):
        return max((k for k, c in u.items() if not c.is_zero), default=-1)

    dq = deg(q)
    lq = q[dq]
    r = dict(p)
    while True:
        dr = deg(r)
        if dr < dq:
            break
        lr = r[dr]
        new: dict[int, ParameterPolynomial] = {}
        for k, c in r.items():
            if c.is_zero:
                continue
            new[k] = c * lq
        for k, c in q.items():
            if c.is_zero:
                continue
            kk = k + dr - dq
            cur = new.get(kk, ParameterPolynomial(nvars))
            new[kk] = cur - c * lr
        r = {k: c for k, c in new.items() if not c.is_zero}
        if not r:
            break
    return r


def param_gcd(f: ParameterPolynomial, g: ParameterPolynomial) -> ParameterPolynomial:
    """Canonical gcd of two parameter polynomials (1 for coprime inputs;
    nonzero constants count as units)."""
    if f.is_zero:
        return canonical(g)
    if g.is_zero:
        return canonical(f)
    if f.is_const or g.is_const:
        return ParameterPolynomial.one(f.nvars)
    k = _main_variable(f, g)
    if k is None:
        return ParameterPolynomial.one(f.nvars)
    cf, pf = _uni_content_pp(f.as_univariate(k))
    cg, pg = _uni_content_pp(g.as_univariate(k))
    c = param_gcd(cf, cg)
    # primitive PRS on the primitive parts
    if max(pf) < max(pg):
        pf, pg = pg, pf
    while True:
        r = _uni_prem(pf, pg, f.nvars)
        if not r:
            break
        if all(e == 0 for e in r):
            return canonical(c)
        _, r = _uni_content_pp(r)
        pf, pg = pg, r
    out = ParameterPolynomial(f.nvars)
    for e, coeff in pg.items():
        out = out + coeff.shift_var(k, e)
    return canonical(c * out)


def param_lcm(f: ParameterPolynomial, g: ParameterPolynomial) -> ParameterPolynomial:
    if f.is_zero or g.is_zero:
        return ParameterPolynomial(f.nvars)
    return canonical(divexact(f * g, param_gcd(f, g)))


# -- the coefficient field -----------------------------------------------------


class Coefficient:
    """Reduced fraction of parameter polynomials with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: ParameterPolynomial, den: ParameterPolynomial):
        # use normalize(); this constructor trusts its inputs
        self.num = num
        self.den = den

    @property
    def nvars(self) -> int:
        return self.num.nvars

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_fraction(cls, nvars: int, value) -> "Coefficient":
        return cls(
            ParameterPolynomial.const(nvars, value), ParameterPolynomial.one(nvars)
        )

    @classmethod
    def zero(cls, nvars: int) -> "Coefficient":
        return cls.from_fraction(nvars, 0)

    @classmethod
    def one(cls, nvars: int) -> "Coefficient":
        return cls.from_fraction(nvars, 1)

    @classmethod
    def parameter(cls, nvars: int, index: int, power: int = 1) -> "Coefficient":
        return cls(
            ParameterPolynomial.variable(nvars, index, power),
            ParameterPolynomial.one(nvars),
        )

    @classmethod
    def h_power(cls, nvars: int, power: int) -> "Coefficient":
        if power >= 0:
            return cls(
                ParameterPolynomial.variable(nvars, nvars - 1, power)
                if power
                else ParameterPolynomial.one(nvars),
                ParameterPolynomial.one(nvars),
            )
        return cls(
            ParameterPolynomial.one(nvars),
            ParameterPolynomial.variable(nvars, nvars - 1, -power),
        )

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_rational(self) -> bool:
        return self.num.is_const and self.den.is_const

    def rational_value(self) -> Fraction:
        return self.num.const_value() / self.den.const_value()

    @property
    def is_h_free(self) -> bool:
        h = self.nvars - 1
        return self.num.degree(h) <= 0 and self.den.degree(h) <= 0

    def __bool__(self) -> bool:
        return not self.is_zero

    def __eq__(self, other) -> bool:
        if not isinstance(other, Coefficient):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- arithmetic --------------------------------------------------------

    def _den_one(self) -> bool:
        return self.den.is_const and self.den.const_value() == 1

    def __add__(self, other: "Coefficient") -> "Coefficient":
        if self._den_one() and other._den_one():
            return Coefficient(self.num + other.num, self.den)
        return normalize(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "Coefficient") -> "Coefficient":
        if self._den_one() and other._den_one():
            return Coefficient(self.num - other.num, self.den)
        return normalize(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "Coefficient":
        return Coefficient(-self.num, self.den)

    def __mul__(self, other: "Coefficient") -> "Coefficient":
        if self._den_one() and other._den_one():
            return Coefficient(self.num * other.num, self.den)
        return normalize(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "Coefficient") -> "Coefficient":
        if other.is_zero:
            raise CoefficientError("division by zero in coefficient field")
        return normalize(self.num * other.den, self.den * other.num)

    def inverse(self) -> "Coefficient":
        return Coefficient.one(self.nvars) / self

    def evaluate(self, values) -> Fraction:
        d = self.den.evaluate(values)
        if not d:
            raise CoefficientError("denominator vanishes at evaluation point")
        return self.num.evaluate(values) / d

    # -- h structure ---------------------------------------------------------

    def h_valuation(self) -> int:
        """The v with self = h^v * c' where c' has no h factor on either side."""
        if self.is_zero:
            raise CoefficientError("h-valuation of zero")
        h = self.nvars - 1
        return self.num.min_degree(h) - self.den.min_degree(h)

    def h_series(self, order: int) -> tuple[int, list["Coefficient"]]:
        """Expand as h^v * (s_0 + s_1 h + ... + s_order h^order) with h-free s_k."""
        if self.is_zero:
            raise CoefficientError("h-series of zero")
        h = self.nvars - 1
        vn, p = self.num.strip_var(h)
        vd, q = self.den.strip_var(h)
        pu = p.as_univariate(h)
        qu = q.as_univariate(h)
        nv = self.nvars
        one = ParameterPolynomial.one(nv)
        q0 = qu[0]  # nonzero: h was stripped

        def coeff_of(u, k):
            return u.get(k, ParameterPolynomial(nv))

        series: list[Coefficient] = []
        for k in range(order + 1):
            acc = Coefficient(coeff_of(pu, k), one)
            for j in range(1, k + 1):
                qj = coeff_of(qu, j)
                if qj.is_zero or series[k - j].is_zero:
                    continue
                acc = acc - Coefficient(qj, one) * series[k - j]
            series.append(normalize(acc.num, acc.den * q0))
        return vn - vd, series

    def __repr__(self):
        return f"Coefficient({self.num.terms!r}, {self.den.terms!r})"


def _strip_common_monomial(num, den):
    """Cancel the largest common monomial factor (cheap, no PRS)."""
    nv = num.nvars
    common = None
    for source in (num, den):
        for exp in source.terms:
            if common is None:
                common = list(exp)
            else:
                common = [min(a, b) for a, b in zip(common, exp)]
    if common and any(common):
        shift = ParameterPolynomial(nv, {tuple(common): Fraction(1)})
        num = divexact(num, shift)
        den = divexact(den, shift)
    return num, den


def normalize(num: ParameterPolynomial, den: ParameterPolynomial) -> Coefficient:
    """The unique reduced, denominator-monic representative of num/den."""
    if den.is_zero:
        raise CoefficientError("division by zero in coefficient field")
    if num.is_zero:
        return Coefficient(
            ParameterPolynomial.zero(num.nvars), ParameterPolynomial.one(num.nvars)
        )
    if den.is_const:
        c = den.const_value()
        if c == 1:
            return Coefficient(num, den)
        return Coefficient(num.scale(1 / c), ParameterPolynomial.one(num.nvars))
    if len(num.terms) == 1 or len(den.terms) == 1:
        # a monomial divides only monomial factors: no PRS needed
        num, den = _strip_common_monomial(num, den)
    else:
        g = param_gcd(num, den)
        if not (g.is_const and g.const_value() == 1):
            num = divexact(num, g)
            den = divexact(den, g)
    if den.is_const:
        c = den.const_value()
        return Coefficient(num.scale(1 / c), ParameterPolynomial.one(num.nvars))
    _, lead = den.leading_term()
    if lead != 1:
        num = num.scale(1 / lead)
        den = den.scale(1 / lead)
    return Coefficient(num, den)


def coefficient_gcd_content(coeffs) -> Coefficient:
    """Canonical content of a coefficient list: gcd of numerators over the
    lcm of denominators (sign left to the caller)."""
    coeffs = [c for c in coeffs if not c.is_zero]
    if not coeffs:
        raise CoefficientError("content of an empty term list")
    nv = coeffs[0].nvars
    den = ParameterPolynomial.one(nv)
    for c in coeffs:
        den = param_lcm(den, c.den)
    nums = [c.num * divexact(den, c.den) for c in coeffs]
    g = ParameterPolynomial.zero(nv)
    rat = Fraction(0)
    for n in nums:
        g = param_gcd(g, n)
        rat = fraction_gcd(rat, n.content())
    return normalize(g.scale(rat), den)


# -- rendering ----------------------------------------------------------------


def render_param_poly(p: ParameterPolynomial, names) -> str:
    if p.is_zero:
        return "0"
    pieces = []
    for exp in sorted(p.terms, key=_degrevlex_key, reverse=True):
        c = p.terms[exp]
        factors = []
        for name, e in zip(names, exp):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def render_coefficient(c: Coefficient, names) -> str:
    num = render_param_poly(c.num, names)
    if c.den.is_const and c.den.const_value() == 1:
        return num
    den = render_param_poly(c.den, names)
    if len(c.num.terms) > 1:
        num = f"({num})"
    if len(c.den.terms) > 1:
        den = f"({den})"
    return f"{num}/{den}"
