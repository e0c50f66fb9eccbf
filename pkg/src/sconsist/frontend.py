"""Input language, macro expansion, normalization and reporting.

A session file declares the rings and then gives the differential system
(pde block) and the difference system (fda block):

    independents x, y;
    dependents u;
    parameters ;
    ranking toplex order x > y;
    pde { D(u,x) - u^2 = 0; D(u,y) + u^2 = 0; }
    fda { Dplus(u,x) - u^2 = 0; Dminus(u,y) + u^2 = 0; }

Difference expressions use grid indices u[1,0], the reserved spacing h,
and the stencil macros Dplus, Dminus, Dcentral, Dt and Laplace; negative
shifts and h-denominators are cleared before anything reaches the core.
Derivatives are written D(u,x) or D(u,x,2,y,1).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .coeffs import Coefficient, render_coefficient
from .ring import (
    DERIVATIVE,
    OperatorPolynomial,
    Ranking,
    SHIFT,
    Var,
    apply_operator,
    content_normalize,
)


class ParseError(ValueError):
    def __init__(self, message, line=None, col=None):
        if line is not None:
            message = f"line {line}, column {col}: {message}"
        super().__init__(message)
        self.line = line
        self.col = col


MACROS = ("Dplus", "Dminus", "Dcentral", "Dt", "Laplace")


@dataclass
class SessionConfig:
    independents: list[str]
    dependents: list[str]
    parameters: list[str]
    pde_ranking: Ranking
    fda_ranking: Ranking
    max_taylor_order: int = 12
    step_limit: int = 2000

    def __post_init__(self):
        names = self.independents + self.dependents + self.parameters
        if "h" in names:
            raise ParseError("h is reserved and cannot be declared")
        if len(set(names)) != len(names):
            raise ParseError("variable names must be unique")
        self.indep_index = {n: i for i, n in enumerate(self.independents)}
        self.dep_index = {n: i for i, n in enumerate(self.dependents)}
        self.param_index = {n: i for i, n in enumerate(self.parameters)}

    @property
    def nsyms(self) -> int:
        return len(self.independents)

    @property
    def cvars(self) -> int:
        return len(self.parameters) + 1

    @property
    def symbol_order(self):
        return self.fda_ranking.symbol_order

    def to_json(self):
        def rankdoc(rk: Ranking):
            return {
                "scheme": rk.scheme,
                "symbols": [self.independents[i] for i in rk.symbol_order],
                "dependents": [self.dependents[i] for i in rk.dep_order],
            }

        return {
            "independents": self.independents,
            "dependents": self.dependents,
            "parameters": self.parameters,
            "ranking": {"pde": rankdoc(self.pde_ranking), "fda": rankdoc(self.fda_ranking)},
        }


@dataclass
class Normalizer:
    """Record of the clearing step: cleared = scalar * sigma^shift(original)."""

    shift: tuple[int, ...]
    scalar: Coefficient


@dataclass
class ParsedSession:
    config: SessionConfig
    pde_equations: list[OperatorPolynomial]
    pde_inequations: list[OperatorPolynomial]
    fda_equations: list[OperatorPolynomial]
    fda_inequations: list[OperatorPolynomial]
    fda_raw: list[OperatorPolynomial]
    normalizers: list[Normalizer]


# -- tokenizer -----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s+|#[^\n]*|(?P<int>\d+)|(?P<id>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>!=|[-+*/^=;,{}()\[\]><])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # int | id | op | eof
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    line = 1
    line_start = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            col = pos - line_start + 1
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        col = m.start() - line_start + 1
        if m.lastgroup == "int":
            tokens.append(Token("int", m.group(), line, col))
        elif m.lastgroup == "id":
            tokens.append(Token("id", m.group(), line, col))
        elif m.lastgroup == "op":
            tokens.append(Token("op", m.group(), line, col))
        newlines = text.count("\n", m.start(), m.end())
        if newlines:
            line += newlines
            line_start = text.rindex("\n", m.start(), m.end()) + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, len(text) - line_start + 1))
    return tokens


# -- expression AST -------------------------------------------------------------


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message):
        tok = self.peek()
        raise ParseError(message, tok.line, tok.col)

    def expect(self, text) -> Token:
        tok = self.next()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text!r}", tok.line, tok.col)
        return tok

    def accept(self, text) -> bool:
        if self.peek().text == text:
            self.next()
            return True
        return False

    # session := decl* block*
    def parse_session(self):
        decls = {"independents": None, "dependents": None, "parameters": None}
        rankings = {}
        blocks = {}
        while self.peek().kind != "eof":
            tok = self.peek()
            if tok.text in ("independents", "dependents", "parameters"):
                self.next()
                names = self.parse_idlist()
                self.expect(";")
                if decls[tok.text] is not None:
                    raise ParseError(f"duplicate {tok.text} declaration", tok.line, tok.col)
                decls[tok.text] = names
            elif tok.text == "ranking":
                self.next()
                ring = None
                if self.peek().text in ("pde", "fda"):
                    ring = self.next().text
                scheme_tok = self.next()
                if scheme_tok.text not in ("toplex", "potlex"):
                    raise ParseError(
                        "expected 'toplex' or 'potlex'", scheme_tok.line, scheme_tok.col
                    )
                orders = []
                while self.peek().text == "order":
                    self.next()
                    chain = [self.parse_ident()]
                    while self.accept(">"):
                        chain.append(self.parse_ident())
                    orders.append(chain)
                self.expect(";")
                spec = (scheme_tok.text, orders)
                if ring is None:
                    rankings["pde"] = spec
                    rankings["fda"] = spec
                else:
                    rankings[ring] = spec
            elif tok.text in ("pde", "fda"):
                self.next()
                self.expect("{")
                stmts = []
                while not self.accept("}"):
                    stmts.append(self.parse_statement())
                if tok.text in blocks:
                    raise ParseError(f"duplicate {tok.text} block", tok.line, tok.col)
                blocks[tok.text] = stmts
            else:
                self.error(f"unexpected token {tok.text!r}")
        return decls, rankings, blocks

    def parse_idlist(self):
        names = []
        if self.peek().kind == "id":
            names.append(self.next().text)
            while self.accept(","):
                names.append(self.parse_ident())
        return names

    def parse_ident(self) -> str:
        tok = self.next()
        if tok.kind != "id":
            raise ParseError(f"expected a name, found {tok.text!r}", tok.line, tok.col)
        return tok.text

    # stmt := expr (("="|"!=") expr)? ";"
    def parse_statement(self):
        lhs = self.parse_expr()
        tok = self.peek()
        relation = "="
        rhs = None
        if tok.text in ("=", "!="):
            relation = self.next().text
            rhs = self.parse_expr()
        self.expect(";")
        return (relation, lhs, rhs)

    def parse_expr(self):
        node = self.parse_term()
        while self.peek().text in ("+", "-"):
            op = self.next().text
            node = ("binop", op, node, self.parse_term())
        return node

    def parse_term(self):
        node = self.parse_unary()
        while self.peek().text in ("*", "/"):
            op = self.next().text
            node = ("binop", op, node, self.parse_unary())
        return node

    def parse_unary(self):
        if self.accept("-"):
            return ("neg", self.parse_unary())
        return self.parse_power()

    def parse_power(self):
        node = self.parse_atom()
        if self.accept("^"):
            tok = self.next()
            if tok.kind != "int":
                raise ParseError("exponent must be a non-negative integer", tok.line, tok.col)
            node = ("pow", node, int(tok.text))
        return node

    def parse_atom(self):
        tok = self.next()
        if tok.kind == "int":
            return ("num", Fraction(tok.text))
        if tok.text == "(":
            node = self.parse_expr()
            self.expect(")")
            return node
        if tok.kind != "id":
            raise ParseError(f"unexpected token {tok.text!r}", tok.line, tok.col)
        name = tok.text
        if self.peek().text == "[":
            self.next()
            indices = [self.parse_signed_int()]
            while self.accept(","):
                indices.append(self.parse_signed_int())
            self.expect("]")
            return ("bracket", name, indices, tok)
        if self.peek().text == "(":
            self.next()
            args = []
            if self.peek().text != ")":
                args.append(self.parse_call_arg())
                while self.accept(","):
                    args.append(self.parse_call_arg())
            self.expect(")")
            return ("call", name, args, tok)
        return ("name", name, tok)

    def parse_call_arg(self):
        tok = self.peek()
        if tok.kind == "int":
            self.next()
            return ("num", Fraction(tok.text))
        if tok.kind == "id":
            self.next()
            return ("name", tok.text, tok)
        self.error("call arguments must be names or integers")

    def parse_signed_int(self) -> int:
        sign = 1
        if self.accept("-"):
            sign = -1
        tok = self.next()
        if tok.kind != "int":
            raise ParseError("expected an integer index", tok.line, tok.col)
        return sign * int(tok.text)


# -- expression evaluation -------------------------------------------------------


class _Evaluator:
    """Turns expression ASTs into operator polynomials of one kind.

    In shift context negative grid indices and h-denominators are allowed;
    the clearing pass removes them afterwards.
    """

    def __init__(self, config: SessionConfig, kind: str):
        self.config = config
        self.kind = kind

    def _fail(self, message, tok=None):
        if tok is not None:
            raise ParseError(message, tok.line, tok.col)
        raise ParseError(message)

    def const(self, value) -> OperatorPolynomial:
        return OperatorPolynomial.constant(
            self.kind, self.config.nsyms, Coefficient.from_fraction(self.config.cvars, value)
        )

    def eval(self, node) -> OperatorPolynomial:
        tag = node[0]
        if tag == "num":
            return self.const(node[1])
        if tag == "binop":
            _, op, a, b = node
            pa, pb = self.eval(a), self.eval(b)
            if op == "+":
                return pa + pb
            if op == "-":
                return pa - pb
            if op == "*":
                return pa * pb
            if not pb.is_constant:
                self._fail("division is only allowed by parameter expressions")
            value = pb.constant_value()
            if value.is_zero:
                self._fail("division by zero")
            return pa.scale(value.inverse())
        if tag == "neg":
            return -self.eval(node[1])
        if tag == "pow":
            return self.eval(node[1]) ** node[2]
        if tag == "name":
            return self.eval_name(node[1], node[2])
        if tag == "bracket":
            return self.eval_bracket(*node[1:])
        if tag == "call":
            return self.eval_call(*node[1:])
        raise AssertionError(f"unknown node {tag}")

    def eval_name(self, name, tok) -> OperatorPolynomial:
        cfg = self.config
        if name == "h":
            if self.kind != SHIFT:
                self._fail("h is only meaningful in difference expressions", tok)
            return OperatorPolynomial.constant(
                self.kind, cfg.nsyms, Coefficient.h_power(cfg.cvars, 1)
            )
        if name in cfg.param_index:
            return OperatorPolynomial.constant(
                self.kind,
                cfg.nsyms,
                Coefficient.parameter(cfg.cvars, cfg.param_index[name]),
            )
        if name in cfg.dep_index:
            var = Var(self.kind, cfg.dep_index[name], (0,) * cfg.nsyms)
            return OperatorPolynomial.from_var(var, cfg.nsyms, cfg.cvars)
        if name in cfg.indep_index:
            self._fail(f"independent variable {name!r} cannot appear by itself", tok)
        self._fail(f"unknown identifier {name!r}", tok)

    def eval_bracket(self, name, indices, tok) -> OperatorPolynomial:
        cfg = self.config
        if self.kind != SHIFT:
            self._fail("grid indices are only allowed in difference expressions", tok)
        if name not in cfg.dep_index:
            self._fail(f"unknown dependent variable {name!r}", tok)
        if len(indices) != cfg.nsyms:
            self._fail(
                f"{name!r} needs {cfg.nsyms} indices, got {len(indices)}", tok
            )
        var = Var(SHIFT, cfg.dep_index[name], tuple(indices))
        return OperatorPolynomial.from_var(var, cfg.nsyms, cfg.cvars)

    def eval_call(self, name, args, tok) -> OperatorPolynomial:
        if name == "D":
            return self.eval_derivative(args, tok)
        if name in MACROS:
            return self.eval_macro(name, args, tok)
        self._fail(f"unknown function {name!r}", tok)

    def _dep_arg(self, args, tok, what):
        if not args or args[0][0] != "name":
            self._fail(f"{what} needs a dependent variable argument", tok)
        name = args[0][1]
        if name in self.config.param_index:
            self._fail(f"{what} applied to a parameter", tok)
        if name not in self.config.dep_index:
            self._fail(f"unknown dependent variable {name!r}", tok)
        return self.config.dep_index[name]

    def _indep_arg(self, arg, tok, what):
        if arg[0] != "name" or arg[1] not in self.config.indep_index:
            self._fail(f"{what} needs an independent variable argument", tok)
        return self.config.indep_index[arg[1]]

    def eval_derivative(self, args, tok) -> OperatorPolynomial:
        cfg = self.config
        if self.kind != DERIVATIVE:
            self._fail("D(...) is only allowed in differential expressions", tok)
        dep = self._dep_arg(args, tok, "D")
        orders = [0] * cfg.nsyms
        i = 1
        while i < len(args):
            sym = self._indep_arg(args[i], tok, "D")
            k = 1
            if i + 1 < len(args) and args[i + 1][0] == "num":
                k = int(args[i + 1][1])
                if k < 0 or args[i + 1][1] != k:
                    self._fail("derivative order must be a non-negative integer", tok)
                i += 1
            orders[sym] += k
            i += 1
        if not any(orders):
            self._fail("D(...) needs at least one differentiation", tok)
        var = Var(DERIVATIVE, dep, tuple(orders))
        return OperatorPolynomial.from_var(var, cfg.nsyms, cfg.cvars)

    def eval_macro(self, name, args, tok) -> OperatorPolynomial:
        cfg = self.config
        if self.kind != SHIFT:
            self._fail(f"{name} is only allowed in difference expressions", tok)
        dep = self._dep_arg(args, tok, name)

        def grid(J):
            return OperatorPolynomial.from_var(
                Var(SHIFT, dep, tuple(J)), cfg.nsyms, cfg.cvars
            )

        def unit(sym, amount):
            J = [0] * cfg.nsyms
            J[sym] = amount
            return J

        inv_h = Coefficient.h_power(cfg.cvars, -1)
        zero = [0] * cfg.nsyms
        if name == "Dt":
            if len(args) != 1:
                self._fail("Dt takes exactly one argument", tok)
            if "t" in cfg.indep_index:
                sym = cfg.indep_index["t"]
            else:
                sym = 0
            return (grid(unit(sym, 1)) - grid(zero)).scale(inv_h)
        if name == "Laplace":
            if len(args) != 1:
                self._fail("Laplace takes exactly one argument", tok)
            spatial = [
                i for n, i in cfg.indep_index.items() if n != "t"
            ]
            if not spatial:
                self._fail("Laplace needs at least one spatial direction", tok)
            spatial.sort()
            total = OperatorPolynomial.zero(SHIFT, cfg.nsyms, cfg.cvars)
            two = Coefficient.from_fraction(cfg.cvars, 2)
            for sym in spatial:
                total = total + grid(unit(sym, 1)) + grid(unit(sym, -1)) - grid(zero).scale(two)
            return total.scale(inv_h * inv_h)
        if len(args) != 2:
            self._fail(f"{name} takes a dependent and an independent variable", tok)
        sym = self._indep_arg(args[1], tok, name)
        if name == "Dplus":
            return (grid(unit(sym, 1)) - grid(zero)).scale(inv_h)
        if name == "Dminus":
            return (grid(zero) - grid(unit(sym, -1))).scale(inv_h)
        if name == "Dcentral":
            half = inv_h * Coefficient.from_fraction(cfg.cvars, Fraction(1, 2))
            return (grid(unit(sym, 1)) - grid(unit(sym, -1))).scale(half)
        raise AssertionError(name)


# -- session assembly -------------------------------------------------------------


def _build_ranking(scheme_orders, config_names, dep_names):
    scheme, orders = scheme_orders
    symbol_order = tuple(range(len(config_names)))
    dep_order = tuple(range(len(dep_names)))
    sym_index = {n: i for i, n in enumerate(config_names)}
    dep_index = {n: i for i, n in enumerate(dep_names)}
    for chain in orders:
        if all(n in sym_index for n in chain):
            if len(chain) != len(config_names):
                raise ParseError("symbol order must list every independent variable")
            symbol_order = tuple(sym_index[n] for n in chain)
        elif all(n in dep_index for n in chain):
            if len(chain) != len(dep_names):
                raise ParseError("dependent order must list every dependent variable")
            dep_order = tuple(dep_index[n] for n in chain)
        else:
            raise ParseError(
                "an order clause must list only independents or only dependents"
            )
    return Ranking(scheme, symbol_order, dep_order)


def parse(text: str) -> ParsedSession:
    """Parse a session; difference equations come back shift- and h-cleared."""
    tokens = tokenize(text)
    parser = _Parser(tokens)
    decls, rankings, blocks = parser.parse_session()
    independents = decls["independents"] or []
    dependents = decls["dependents"] or []
    if not independents or not dependents:
        raise ParseError("independents and dependents must both be declared")
    parameters = decls["parameters"] or []
    default = ("toplex", [])
    pde_rk = _build_ranking(rankings.get("pde", default), independents, dependents)
    fda_rk = _build_ranking(rankings.get("fda", default), independents, dependents)
    config = SessionConfig(independents, dependents, parameters, pde_rk, fda_rk)

    pde_eqs, pde_ineqs = [], []
    if "pde" in blocks:
        ev = _Evaluator(config, DERIVATIVE)
        for relation, lhs, rhs in blocks["pde"]:
            poly = ev.eval(lhs)
            if rhs is not None:
                poly = poly - ev.eval(rhs)
            if poly.is_zero:
                continue
            (pde_eqs if relation == "=" else pde_ineqs).append(poly)

    fda_eqs, fda_ineqs, fda_raw, normalizers = [], [], [], []
    if "fda" in blocks:
        ev = _Evaluator(config, SHIFT)
        for relation, lhs, rhs in blocks["fda"]:
            poly = ev.eval(lhs)
            if rhs is not None:
                poly = poly - ev.eval(rhs)
            if poly.is_zero:
                continue
            cleared, norm = clear_negative_shifts_and_denominators(poly, config)
            fda_raw.append(poly)
            normalizers.append(norm)
            (fda_eqs if relation == "=" else fda_ineqs).append(cleared)
    return ParsedSession(
        config, pde_eqs, pde_ineqs, fda_eqs, fda_ineqs, fda_raw, normalizers
    )


def expand_macros(expr_text: str, config: SessionConfig) -> OperatorPolynomial:
    """Parse one difference expression (macros allowed) without clearing."""
    tokens = tokenize(expr_text)
    parser = _Parser(tokens)
    node = parser.parse_expr()
    if parser.peek().kind != "eof":
        parser.error("trailing input after expression")
    return _Evaluator(config, SHIFT).eval(node)


def parse_differential_expression(expr_text: str, config: SessionConfig) -> OperatorPolynomial:
    tokens = tokenize(expr_text)
    parser = _Parser(tokens)
    node = parser.parse_expr()
    if parser.peek().kind != "eof":
        parser.error("trailing input after expression")
    return _Evaluator(config, DERIVATIVE).eval(node)


def clear_negative_shifts_and_denominators(
    poly: OperatorPolynomial, config: SessionConfig
):
    """Shift by the minimal forward monomial, clear the h-denominator, and
    normalize the scalar content; the returned Normalizer makes the step
    replayable: cleared = scalar * sigma^shift(original)."""
    if poly.is_zero:
        return poly, Normalizer((0,) * config.nsyms, Coefficient.one(config.cvars))
    mins = poly.min_shifts()
    theta = tuple(-m if m < 0 else 0 for m in mins)
    shifted = apply_operator(theta, poly)
    vmin = min(c.h_valuation() for c in shifted.terms.values())
    hclear = Coefficient.h_power(config.cvars, -vmin) if vmin < 0 else Coefficient.one(config.cvars)
    cleared = shifted.scale(hclear)
    normalized, content = content_normalize(cleared, config.fda_ranking)
    return normalized, Normalizer(theta, hclear * content.inverse())


# -- rendering -----------------------------------------------------------------


def coefficient_names(config: SessionConfig):
    return config.parameters + ["h"]


def render_var(v: Var, config: SessionConfig) -> str:
    name = config.dependents[v.dep]
    if v.kind == SHIFT:
        return f"{name}[{','.join(str(s) for s in v.shifts)}]"
    if not any(v.shifts):
        return name
    parts = []
    for i, k in enumerate(v.shifts):
        if k == 1:
            parts.append(config.independents[i])
        elif k:
            parts.append(f"{config.independents[i]},{k}")
    return f"D({name},{','.join(parts)})"


def render_poly(p: OperatorPolynomial, config: SessionConfig, ranking=None) -> str:
    if p.is_zero:
        return "0"
    rk = ranking or (config.fda_ranking if p.kind == SHIFT else config.pde_ranking)
    names = coefficient_names(config)
    pieces = []
    for term in sorted(p.terms, key=rk.term_key, reverse=True):
        c = p.terms[term]
        _, lead = c.num.leading_term()
        negative = lead < 0
        mag = (-c) if negative else c
        factors = [
            render_var(v, config) + (f"^{e}" if e > 1 else "") for v, e in term
        ]
        cstr = render_coefficient(mag, names)
        if not factors:
            body = cstr
        elif cstr == "1":
            body = "*".join(factors)
        else:
            if "+" in cstr or (" - " in cstr):
                cstr = f"({cstr})"
            body = "*".join([cstr] + factors)
        pieces.append(("-" if negative else "+", body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def render_janet_system(T, config: SessionConfig) -> dict:
    return {
        "equations": [render_poly(f, config) for f in T.equations],
        "inequations": [render_poly(g, config) for g in T.inequations],
        "multiplicative": [
            sorted(config.independents[s] for s in mult)
            for mult in T.multiplicative_sets()
        ],
        "passive": True,
    }


def report_check(result, config: SessionConfig, command="check") -> dict:
    systems = []
    for verdict in result.subsystems:
        doc = render_janet_system(verdict.system, config)
        doc["verdict"] = "s" if verdict.s_consistent else "w"
        doc["witnesses"] = [
            {
                "equation": render_poly(w.equation, config),
                "limit": {"d": w.limit.d, "f": render_poly(w.limit.f, config)},
                "nf": render_poly(w.nf, config),
            }
            for w in verdict.witnesses
        ]
        systems.append(doc)
    return {
        "command": command,
        "config": config.to_json(),
        "systems": systems,
        "dropped": len(result.dropped),
        "overall": result.overall,
    }


def report_decompose(systems, config: SessionConfig) -> dict:
    docs = []
    for T in systems:
        doc = render_janet_system(T, config)
        doc["verdict"] = None
        doc["witnesses"] = []
        docs.append(doc)
    return {
        "command": "decompose",
        "config": config.to_json(),
        "systems": docs,
        "dropped": 0,
        "overall": None,
    }


def report_to_text(doc: dict) -> str:
    lines = [f"command: {doc['command']}"]
    for i, system in enumerate(doc.get("systems", []), start=1):
        lines.append(f"system {i}:")
        for eq in system["equations"]:
            lines.append(f"  {eq} = 0")
        for g in system["inequations"]:
            lines.append(f"  {g} != 0")
        mults = system.get("multiplicative")
        if mults:
            lines.append("  multiplicative: " + "; ".join(
                "{" + ",".join(m) + "}" for m in mults))
        if system.get("verdict"):
            lines.append(f"  verdict: {'s-consistent' if system['verdict'] == 's' else 'w-consistent only'}")
        for w in system.get("witnesses", []):
            lines.append(
                f"  witness: {w['equation']} -> h^{w['limit']['d']} * ({w['limit']['f']})"
                f", differential NF = {w['nf']}"
            )
    if doc.get("dropped"):
        lines.append(f"dropped subsystems: {doc['dropped']}")
    if doc.get("overall") is not None:
        lines.append(f"overall: {'s-consistent' if doc['overall'] else 'NOT s-consistent'}")
    for key in ("limit", "nf"):
        if key in doc:
            lines.append(f"{key}: {json.dumps(doc[key]) if isinstance(doc[key], dict) else doc[key]}")
    return "\n".join(lines)


def report(doc: dict, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True)
    if fmt == "text":
        return report_to_text(doc)
    raise ValueError(f"unknown report format {fmt!r}")
