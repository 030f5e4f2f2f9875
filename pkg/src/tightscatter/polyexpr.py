"""tightscatter.polyexpr: parse initial-function expressions.

Grammar: integer literals, the coefficient variables p[i,j], the
parameters s and t, one formal variable (x or y), the operators + - * ^
and parentheses. Exponents are nonnegative integer literals. The
constant term of the result must be 1.

Usage:
    parsed = parse_poly("(1+s*x)^3")
    parsed.coeffs   # (1, 3*s, 3*s^2, s^3)
    format_poly(parsed.coeffs, "x")
"""

from __future__ import annotations

from dataclasses import dataclass

import pyparsing as pp

from .coeffring import ONE, ZERO, CoeffPolynomial, VarId, as_coeff, p, param
from .scattering import InitialData

pp.ParserElement.enable_packrat()

FORMAL_VARS = ("x", "y")
MAX_EXPONENT = 64


class PolyExprError(ValueError):
    """Syntax or semantic error in a polynomial expression.

    column is 1-based, or None when the error is not tied to a position.
    """

    def __init__(self, message: str, column: int | None = None):
        self.column = column
        where = f" (column {column})" if column is not None else ""
        super().__init__(f"{message}{where}")


@dataclass(frozen=True)
class ParsedPoly:
    variable: str | None
    coeffs: tuple[CoeffPolynomial, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


# ── Values: univariate polynomials in the formal variable ─────────


@dataclass(frozen=True)
class _Value:
    variable: str | None
    terms: dict  # power -> CoeffPolynomial

    @classmethod
    def const(cls, c: CoeffPolynomial) -> _Value:
        return cls(None, {0: c})

    def is_integer_constant(self) -> bool:
        if self.variable is not None or set(self.terms) - {0}:
            return False
        c = self.terms.get(0, ZERO)
        return not c.variables() and c.is_integral()

    def integer_value(self) -> int:
        return self.terms.get(0, ZERO).constant_term()


def _join_vars(a: _Value, b: _Value, s: str, loc: int) -> str | None:
    if a.variable and b.variable and a.variable != b.variable:
        raise pp.ParseFatalException(
            s, loc, f"Mixed formal variables '{a.variable}' and '{b.variable}'"
        )
    return a.variable or b.variable


def _add_values(a: _Value, b: _Value, sign: int, s: str, loc: int) -> _Value:
    out = dict(a.terms)
    for k, c in b.terms.items():
        out[k] = out.get(k, ZERO) + (c if sign > 0 else -c)
    return _Value(_join_vars(a, b, s, loc), {k: c for k, c in out.items() if not c.is_zero()})


def _mul_values(a: _Value, b: _Value, s: str, loc: int) -> _Value:
    out: dict[int, CoeffPolynomial] = {}
    for i, ci in a.terms.items():
        for j, cj in b.terms.items():
            out[i + j] = out.get(i + j, ZERO) + ci * cj
    return _Value(_join_vars(a, b, s, loc), {k: c for k, c in out.items() if not c.is_zero()})


# ── Parse actions ──────────────────────────────────────────────────


def _int_action(toks):
    return _Value.const(CoeffPolynomial.constant(int(toks[0])))


def _pvar_action(s, loc, toks):
    side, degree = int(toks[0]), int(toks[1])
    if side not in (1, 2) or degree < 1:
        raise pp.ParseFatalException(s, loc, f"Bad coefficient variable p[{side},{degree}]")
    return _Value.const(p(side, degree))


def _param_action(toks):
    return _Value.const(param(1 if toks[0] == "s" else 2))


def _formal_action(toks):
    return _Value(toks[0], {1: ONE})


def _neg_action(toks):
    _, operand = toks[0]
    return _Value(operand.variable, {k: -c for k, c in operand.terms.items()})


def _pow_action(s, loc, toks):
    items = list(toks[0])
    # Right associative: fold from the end.
    result = items[-1]
    for base in reversed(items[:-1:2]):
        if not result.is_integer_constant() or result.integer_value() < 0:
            raise pp.ParseFatalException(s, loc, "Exponent must be a nonnegative integer")
        e = result.integer_value()
        if e > MAX_EXPONENT:
            raise pp.ParseFatalException(s, loc, f"Exponent {e} exceeds {MAX_EXPONENT}")
        acc = _Value.const(ONE)
        for _ in range(e):
            acc = _mul_values(acc, base, s, loc)
        result = acc
    return result


def _mul_action(s, loc, toks):
    items = list(toks[0])
    result = items[0]
    for rhs in items[2::2]:
        result = _mul_values(result, rhs, s, loc)
    return result


def _add_action(s, loc, toks):
    items = list(toks[0])
    result = items[0]
    for op, rhs in zip(items[1::2], items[2::2]):
        result = _add_values(result, rhs, 1 if op == "+" else -1, s, loc)
    return result


def _build_grammar() -> pp.ParserElement:
    integer = pp.Word(pp.nums).set_parse_action(_int_action)
    pvar = (
        pp.Suppress(pp.Keyword("p") + pp.Literal("["))
        + pp.Word(pp.nums) + pp.Suppress(",") + pp.Word(pp.nums)
        + pp.Suppress("]")
    ).set_parse_action(_pvar_action)
    params = (pp.Keyword("s") | pp.Keyword("t")).set_parse_action(_param_action)
    formal = pp.one_of(list(FORMAL_VARS), as_keyword=True).set_parse_action(_formal_action)
    operand = pvar | params | formal | integer
    expr = pp.infix_notation(operand, [
        (pp.Literal("^"), 2, pp.OpAssoc.RIGHT, _pow_action),
        (pp.Literal("-"), 1, pp.OpAssoc.RIGHT, _neg_action),
        (pp.Literal("*"), 2, pp.OpAssoc.LEFT, _mul_action),
        (pp.one_of("+ -"), 2, pp.OpAssoc.LEFT, _add_action),
    ])
    return expr + pp.StringEnd()


_GRAMMAR = _build_grammar()


# ── Public API ─────────────────────────────────────────────────────


def parse_poly(src: str, variable: str | None = None) -> ParsedPoly:
    """Parse src into coefficients c_0..c_l of the formal variable.

    Args:
        src: Expression text.
        variable: Required formal variable ('x' or 'y'), if any.

    Raises:
        PolyExprError: Syntax error, mixed or unexpected variables, or a
            constant term other than 1.
    """
    if variable is not None and variable not in FORMAL_VARS:
        raise ValueError(f"Invalid formal variable '{variable}'. Valid: {list(FORMAL_VARS)}")
    try:
        value: _Value = _GRAMMAR.parse_string(src, parse_all=True)[0]
    except pp.ParseBaseException as exc:
        raise PolyExprError(f"Cannot parse '{src}': {exc.msg}", exc.col) from None
    if variable is not None and value.variable not in (None, variable):
        raise PolyExprError(f"Expected a polynomial in {variable}, got one in {value.variable}")
    constant = value.terms.get(0, ZERO)
    if not constant.is_one():
        raise PolyExprError(f"Constant term must be 1, got {constant}")
    degree = max(value.terms)
    coeffs = tuple(value.terms.get(k, ZERO) for k in range(degree + 1))
    return ParsedPoly(value.variable or variable, coeffs)


def _format_coeff(c: CoeffPolynomial) -> str:
    text = str(c)
    return f"({text})" if len(c) > 1 or text.startswith("-") else text


def format_poly(coeffs, variable: str = "x") -> str:
    """Inverse of parse_poly for integral coefficients without negative exponents.

    Raises:
        ValueError: A coefficient has a rational value or negative exponent.
    """
    parts = []
    for k, c in enumerate(coeffs):
        c = as_coeff(c)
        if c.is_zero():
            continue
        if not c.is_integral() or c.negative_exponent_vars():
            raise ValueError(f"Coefficient {c} has no expression form")
        if k == 0:
            parts.append(str(c))
            continue
        mono = variable if k == 1 else f"{variable}^{k}"
        parts.append(mono if c.is_one() else f"{_format_coeff(c)}*{mono}")
    return " + ".join(parts) if parts else "0"


def initial_data_from_exprs(p1_src: str, p2_src: str) -> InitialData:
    """P1 in x on the x-axis, P2 in y on the y-axis.

    Raises:
        PolyExprError: Either expression is invalid.
    """
    p1 = parse_poly(p1_src, "x")
    p2 = parse_poly(p2_src, "y")
    return InitialData.from_polys(p1.coeffs, p2.coeffs)


def assignment_from_poly(parsed: ParsedPoly, side: int) -> dict[VarId, CoeffPolynomial]:
    """p[side,j] -> c_j for j = 1..degree."""
    return {VarId(side, j): c for j, c in enumerate(parsed.coeffs) if j}
