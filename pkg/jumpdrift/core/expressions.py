"""
Compile the closed-form piece expressions used in configuration documents.

Pieces are written as plain arithmetic in ``x`` with a handful of smooth
primitives.  Derivatives are never derived here; a configuration supplies
both the value and the derivative of every piece.
"""

from collections.abc import Callable
from tokenize import TokenError

import sympy
from sympy.parsing.sympy_parser import parse_expr, standard_transformations

from jumpdrift.errors import ProblemError


X = sympy.Symbol('x', real=True)
"""The only free symbol allowed in a piece expression."""


ALLOWED_FUNCTIONS: dict[str, type] = {
    'exp': sympy.exp,
    'sin': sympy.sin,
    'cos': sympy.cos,
    'tanh': sympy.tanh,
    'sinh': sympy.sinh,
    'cosh': sympy.cosh,
}
"""The smooth primitives a piece expression may call."""


_NAMESPACE: dict[str, object] = {
    'x': X,
    'pi': sympy.pi,
    'E': sympy.E,
    **ALLOWED_FUNCTIONS,
}


class ExpressionError(ProblemError):
    """Raised when a piece expression cannot be parsed or uses a forbidden construct."""


def parse_expression(text: str) -> sympy.Expr:
    """Parse a piece expression into a sympy expression.

    :param str text: The expression, for example ``'1 - 0.5*x**2'``.
    :raises ExpressionError: If the text does not parse, or names anything other than
                             ``x``, the allowed constants and the allowed functions.
    :returns sympy.Expr: The parsed expression.
    """
    if not isinstance(text, str) or not text.strip():
        raise ExpressionError('Expression must be a non-empty string.')

    try:
        # No builtins: parse_expr evaluates the token stream.
        expr = parse_expr(text, local_dict=dict(_NAMESPACE),
                          global_dict={'Integer': sympy.Integer, 'Float': sympy.Float,
                                       'Rational': sympy.Rational, 'Symbol': sympy.Symbol,
                                       'Function': sympy.Function,
                                       '__builtins__': {}},
                          transformations=standard_transformations)
    except (SyntaxError, TypeError, NameError, TokenError, AttributeError) as exc:
        raise ExpressionError(f"Cannot parse {text!r}: {exc}") from exc

    if not isinstance(expr, sympy.Expr):
        raise ExpressionError(f"{text!r} is not an arithmetic expression.")

    unknown = expr.free_symbols - {X}
    if unknown:
        names = ', '.join(sorted(str(sym) for sym in unknown))
        raise ExpressionError(f"{text!r} uses unknown names: {names}")

    for call in expr.atoms(sympy.Function):
        if call.func not in ALLOWED_FUNCTIONS.values():
            raise ExpressionError(f"{text!r} calls {call.func}, which is not allowed.")

    return expr


def compile_expression(text: str) -> Callable[[float], float]:
    """Compile a piece expression into a fast scalar callable.

    :param str text: The expression in ``x``.
    :returns: A function of one float returning a float.
    :rtype: Callable[[float], float]
    """
    expr = parse_expression(text)
    if expr.is_number:
        constant = float(expr)
        return lambda _x: constant

    compiled = sympy.lambdify(X, expr, modules='math')

    def evaluate(x: float) -> float:
        return float(compiled(x))

    return evaluate
