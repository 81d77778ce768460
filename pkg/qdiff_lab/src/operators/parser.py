"""
Text format for operators and rational functions.

Grammar (multiplication is always explicit):

    expr   := ['+'] term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ['^' ['-'] INTEGER]
    atom   := INTEGER | NAME | '(' expr ')'

Names: x, z (variable), q, qt (scalars), sigma, sigma_qt, sigma_p (dilations
by q, q^(1/r) and 1/q), dq, dqt, dp (the matching q-derivatives). Division is
allowed only by functions, and sigma-type and d-type generators cannot be
mixed in one expression.

The printer writes generator powers in decreasing order, polynomials in
increasing (x-degree, q-degree) order, and rational functions as
"(num)/(den)", so that parse(format(L)) == L.
"""

import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from sympy.polys.fields import FracElement
from sympy.polys.rings import PolyElement

from core.exceptions import DomainError, IncompatibleFormsError, ParseError
from core.scalar_field import FIELD, QT, X, ScalarField, as_polynomial, constant, is_scalar, power
from operators.skew_operator import DQ, SIGMA, SkewOperator

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")

VARIABLES = ("x", "z")


def _generators(field: ScalarField):
    r = field.r
    return {
        "sigma": (SIGMA, r), "sigma_qt": (SIGMA, 1), "sigma_p": (SIGMA, -r),
        "dq": (DQ, r), "dqt": (DQ, 1), "dp": (DQ, -r),
    }


Value = Union[FracElement, SkewOperator]


@dataclass
class _Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> List[_Token]:
    """Split operator text into tokens."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            break
        number, name, symbol = match.groups()
        start = match.start(match.lastindex)
        if number is not None:
            tokens.append(_Token("number", number, start))
        elif name is not None:
            tokens.append(_Token("name", name, start))
        else:
            if symbol not in "+-*/^()":
                raise ParseError(f"unexpected character {symbol!r} at position {start}", details={"text": text})
            tokens.append(_Token("symbol", symbol, start))
        pos = match.end()
    return tokens


class OperatorParser:
    """
    Recursive-descent parser producing SkewOperator values.

    Args:
        field: Scalar field the text is read in
        form: Form used when the text contains no generator
    """

    def __init__(self, field: ScalarField = ScalarField(), form: str = SIGMA):
        self.field = field
        self.form = form
        self.generators = _generators(field)
        self.tokens: List[_Token] = []
        self.index = 0
        self.var: Optional[str] = None
        self.text = ""

    # ---- entry points ----

    def parse(self, text: str) -> SkewOperator:
        """Parse an operator (a bare function is read as an order-0 operator)."""
        value = self._parse_all(text)
        var = self.var or "x"
        if isinstance(value, SkewOperator):
            return value.with_var(var)
        return SkewOperator.scalar(value, self.form, self.field, None, var)

    def parse_function(self, text: str) -> FracElement:
        """Parse a rational function; generators are rejected."""
        value = self._parse_all(text)
        if isinstance(value, SkewOperator):
            raise ParseError("expected a function, found an operator", details={"text": text})
        return value

    def _parse_all(self, text: str) -> Value:
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0
        self.var = None
        if not self.tokens:
            raise ParseError("empty expression")
        value = self._expr()
        if self.index < len(self.tokens):
            token = self.tokens[self.index]
            raise ParseError(f"unexpected {token.text!r} at position {token.pos}", details={"text": text})
        return value

    # ---- token helpers ----

    def _peek(self) -> Optional[_Token]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def _accept(self, symbol: str) -> bool:
        token = self._peek()
        if token is not None and token.kind == "symbol" and token.text == symbol:
            self.index += 1
            return True
        return False

    def _expect(self, symbol: str) -> None:
        if not self._accept(symbol):
            token = self._peek()
            where = f"position {token.pos}" if token else "end of input"
            raise ParseError(f"expected {symbol!r} at {where}", details={"text": self.text})

    # ---- grammar ----

    def _expr(self) -> Value:
        self._accept("+")
        value = self._term()
        while True:
            if self._accept("+"):
                value = self._combine(value, self._term(), "+")
            elif self._accept("-"):
                value = self._combine(value, self._term(), "-")
            else:
                return value

    def _term(self) -> Value:
        value = self._unary()
        while True:
            if self._accept("*"):
                value = self._combine(value, self._unary(), "*")
            elif self._accept("/"):
                value = self._combine(value, self._unary(), "/")
            else:
                return value

    def _unary(self) -> Value:
        if self._accept("-"):
            return -self._unary()
        return self._power()

    def _power(self) -> Value:
        base = self._atom()
        if not self._accept("^"):
            return base
        sign = -1 if self._accept("-") else 1
        token = self._peek()
        if token is None or token.kind != "number":
            raise ParseError("exponent must be an integer", details={"text": self.text})
        self.index += 1
        exponent = sign * int(token.text)
        if isinstance(base, SkewOperator):
            if exponent < 0:
                raise ParseError("negative powers of operators are not defined", details={"text": self.text})
            return base.power(exponent)
        try:
            return power(base, exponent)
        except DomainError as exc:
            raise ParseError(str(exc.message), details={"text": self.text}) from exc

    def _atom(self) -> Value:
        token = self._peek()
        if token is None:
            raise ParseError("unexpected end of input", details={"text": self.text})
        if token.kind == "number":
            self.index += 1
            return FIELD(int(token.text))
        if token.kind == "name":
            self.index += 1
            return self._name(token)
        if self._accept("("):
            value = self._expr()
            self._expect(")")
            return value
        raise ParseError(f"unexpected {token.text!r} at position {token.pos}", details={"text": self.text})

    def _name(self, token: _Token) -> Value:
        name = token.text
        if name in VARIABLES:
            if self.var is not None and self.var != name:
                raise ParseError("an expression may use x or z, not both", details={"text": self.text})
            self.var = name
            return X
        if name == "q":
            return self.field.q
        if name == "qt":
            return QT
        if name in self.generators:
            form, step = self.generators[name]
            return SkewOperator.generator(form, self.field, step)
        raise ParseError(f"unknown name {name!r} at position {token.pos}", details={"text": self.text})

    def _combine(self, left: Value, right: Value, op: str) -> Value:
        left_op = isinstance(left, SkewOperator)
        right_op = isinstance(right, SkewOperator)
        try:
            if op == "/":
                if right_op:
                    raise ParseError("division by an operator", details={"text": self.text})
                if not right:
                    raise ParseError("division by zero", details={"text": self.text})
                return left * (FIELD.one / right)
            if op == "*":
                if not left_op and not right_op:
                    return left * right
                return right.scale(left) if not left_op else left * right
            if not left_op and not right_op:
                return left + right if op == "+" else left - right
            if not left_op:
                left = SkewOperator.scalar(left, right.form, self.field, right.step)
            if not right_op:
                right = SkewOperator.scalar(right, left.form, self.field, left.step)
            return left + right if op == "+" else left - right
        except IncompatibleFormsError as exc:
            raise ParseError(f"mixed operator forms: {exc.message}", details={"text": self.text}) from exc


def parse_operator(text: str, field: ScalarField = ScalarField(), form: str = SIGMA) -> SkewOperator:
    """
    Parse operator text.

    Args:
        text: e.g. "sigma^2 - (1+q^2*x)*sigma + q*x"
        field: Scalar field
        form: Form for texts without a generator

    Raises:
        ParseError: On malformed input or mixed forms
    """
    return OperatorParser(field, form).parse(text)


def parse_function(text: str, field: ScalarField = ScalarField()) -> FracElement:
    """Parse a rational function such as "(1-x)/(1-q*x)"."""
    return OperatorParser(field).parse_function(text)


def parse_matrix(text: str, field: ScalarField = ScalarField()) -> List[List[FracElement]]:
    """
    Parse a matrix written row by row: "1, 1; x, 1+q*x".

    Raises:
        ParseError: On an empty or ragged matrix
    """
    rows = [row for row in text.split(";") if row.strip()]
    if not rows:
        raise ParseError("empty matrix", details={"text": text})
    parsed = [[parse_function(entry, field) for entry in row.split(",")] for row in rows]
    if len({len(row) for row in parsed}) != 1:
        raise ParseError("matrix rows have different lengths", details={"text": text})
    return parsed


def parse_coefficients(lines: Sequence[str], field: ScalarField = ScalarField()) -> List[FracElement]:
    """
    Parse series coefficients, one function of q per line.

    Blank lines and lines starting with '#' are skipped.

    Raises:
        ParseError: If a line is malformed or depends on x
    """
    out = []
    for number, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        value = parse_function(line, field)
        if not is_scalar(value):
            raise ParseError(f"coefficient on line {number} depends on x", details={"line": line})
        out.append(value)
    return out


# ==================== Printing ====================

def _generator_name(op: SkewOperator) -> str:
    r = op.field.r
    # sigma and dq win when r = 1
    names = {1: ("sigma_qt", "dqt"), -r: ("sigma_p", "dp"), r: ("sigma", "dq")}
    if op.step not in names:
        raise DomainError(f"no printable name for the dilation by qt^{op.step}")
    sigma_name, dq_name = names[op.step]
    return sigma_name if op.form == SIGMA else dq_name


def _sorted_terms(poly: PolyElement) -> List[Tuple[Tuple[int, int], object]]:
    return sorted(poly.iterterms(), key=lambda term: term[0])


def _monomial(coeff, monom: Tuple[int, int], field: ScalarField, var: str) -> str:
    i, j = monom
    parts = []
    magnitude = abs(coeff)
    if magnitude != 1 or (i == 0 and j == 0):
        parts.append(str(magnitude))
    if j:
        symbol = field.symbol
        parts.append(symbol if j == 1 else f"{symbol}^{j}")
    if i:
        parts.append(var if i == 1 else f"{var}^{i}")
    return "*".join(parts)


def format_polynomial(poly: PolyElement, field: ScalarField = ScalarField(), var: str = "x") -> str:
    """Print a RING element, terms in increasing (x-degree, q-degree)."""
    if not poly:
        return "0"
    out = []
    for index, (monom, coeff) in enumerate(_sorted_terms(poly)):
        text = _monomial(coeff, monom, field, var)
        if coeff < 0:
            out.append("-" + text)
        else:
            out.append(("+" if index else "") + text)
    return "".join(out)


def _leading_negative(f: FracElement) -> bool:
    terms = _sorted_terms(f.numer)
    return bool(terms) and terms[0][1] < 0


def _is_single_term(f: FracElement) -> bool:
    return f.denom.is_ground and len(f.numer.terms()) == 1


def format_function(f, field: ScalarField = ScalarField(), var: str = "x") -> str:
    """Print a rational function as a polynomial or "(num)/(den)"."""
    f = constant(f)
    if not f:
        return "0"
    if f.denom.is_ground:
        return format_polynomial(as_polynomial(f), field, var)
    return f"({format_polynomial(f.numer, field, var)})/({format_polynomial(f.denom, field, var)})"


def format_operator(op: SkewOperator) -> str:
    """Print an operator in the text format read by parse_operator."""
    if op.is_zero():
        return "0"
    name = _generator_name(op)
    out = []
    for i in range(op.order, -1, -1):
        coeff = op.coeffs[i]
        if not coeff:
            continue
        negative = _leading_negative(coeff)
        magnitude = -coeff if negative else coeff
        text = format_function(magnitude, op.field, op.var)
        if i:
            gen = name if i == 1 else f"{name}^{i}"
            if magnitude == 1:
                text = gen
            elif _is_single_term(magnitude):
                text = f"{text}*{gen}"
            elif magnitude.denom.is_ground:
                text = f"({text})*{gen}"
            else:
                text = f"{text}*{gen}"
        elif magnitude.denom.is_ground and not _is_single_term(magnitude):
            text = f"({text})"
        if not out:
            out.append(("-" if negative else "") + text)
        else:
            out.append((" - " if negative else " + ") + text)
    return "".join(out)
