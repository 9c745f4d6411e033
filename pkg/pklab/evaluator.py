"""Evaluation of form and scalar expressions written in the presentation language."""

import ast
import fractions
import logging
import re
import typing as t

from sympy.polys.domains import QQ_I

from .coeffs import Scalar
from .errors import DimensionMismatch, ParseError, UnknownParameter
from .exterior import ExteriorAlgebra, Form

__all__ = ['ExpressionEvaluator', 'preprocess']

_LOG = logging.getLogger(__name__)

_GENERATOR = re.compile(r'^(wb?)([0-9]+)$')
_TILDE = re.compile(r'\bw([0-9]+)~')


def preprocess(text: str) -> t.Tuple[str, t.List[int]]:
    """Rewrite ``wk~`` as ``wbk`` and ``^`` as ``**``.

    Returns the rewritten text and, for each of its characters, the index of the character
    of the original text it comes from.
    """
    result = []  # type: t.List[str]
    origin = []  # type: t.List[int]
    position = 0
    while position < len(text):
        match = _TILDE.match(text, position)
        if match is not None:
            replacement = 'wb{}'.format(match.group(1))
            result.append(replacement)
            origin.extend([position] * len(replacement))
            position = match.end()
            continue
        if text[position] == '^':
            result.append('**')
            origin.extend([position, position])
        else:
            result.append(text[position])
            origin.append(position)
        position += 1
    return ''.join(result), origin


class ExpressionEvaluator(ast.NodeVisitor):

    """Evaluate an expression to a Form or to a scalar of the algebra's field.

    Names: ``I`` is the imaginary unit, ``f`` the twist character, ``wk`` and ``wbk``
    (written ``wk~``) the generators, anything else must be a declared parameter symbol.
    """

    def __init__(self, algebra: ExteriorAlgebra, line: t.Optional[int] = None):
        self.algebra = algebra
        self.field = algebra.field
        self.line = line
        self._origin = []  # type: t.List[int]

    def evaluate(self, text: str) -> t.Union[Form, Scalar]:
        source, self._origin = preprocess(text.strip())
        if not source:
            raise ParseError('empty expression', self.line)
        try:
            tree = ast.parse(source, mode='eval')
        except SyntaxError as err:
            raise ParseError('invalid syntax in "{}"'.format(text.strip()), self.line,
                             self._column(err.offset - 1 if err.offset else None)) from err
        _LOG.debug('%s', ast.dump(tree))
        return self.visit(tree.body)

    def _column(self, offset: t.Optional[int]) -> t.Optional[int]:
        if offset is None or not self._origin:
            return None
        return 1 + self._origin[min(max(offset, 0), len(self._origin) - 1)]

    def _error(self, node: ast.AST, message: str, error_type=ParseError):
        return error_type(message, self.line, self._column(getattr(node, 'col_offset', None)))

    def generic_visit(self, node):
        raise self._error(node, 'unsupported syntax: {}'.format(type(node).__name__))

    def visit_Constant(self, node: ast.Constant):
        value = node.value
        if isinstance(value, bool) or not isinstance(value, (int, float, complex)):
            raise self._error(node, 'unsupported constant {!r}'.format(value))
        if isinstance(value, int):
            return self.field.convert(value)
        if isinstance(value, float):
            return self.field.convert(fractions.Fraction(repr(value)))
        real = fractions.Fraction(repr(value.real))
        imaginary = fractions.Fraction(repr(value.imag))
        return self.field.convert(real) + self.field.convert(imaginary) * self.field.i

    def visit_Name(self, node: ast.Name):
        name = node.id
        if name == 'I':
            return self.field.i
        if name == 'f':
            return self.algebra.twist_character(1)
        match = _GENERATOR.match(name)
        if match is not None:
            index = int(match.group(2))
            if not 1 <= index <= self.algebra.n:
                raise self._error(node, 'generator {} outside of 1..{}'.format(
                    name, self.algebra.n), DimensionMismatch)
            if match.group(1) == 'w':
                return self.algebra.omega(index)
            return self.algebra.omega_bar(index)
        if name in self.field.symbols:
            return self.field.gen(name)
        raise self._error(node, 'undeclared parameter "{}"'.format(name), UnknownParameter)

    def visit_UnaryOp(self, node: ast.UnaryOp):
        operand = self.visit(node.operand)
        if isinstance(node.op, ast.USub):
            return -operand
        if isinstance(node.op, ast.UAdd):
            return operand
        return self.generic_visit(node.op)

    def _as_scalar(self, node: ast.AST, value) -> Scalar:
        if not isinstance(value, Form):
            return value
        items = value.items()
        if not items:
            return self.field.zero
        if len(items) == 1 and items[0][0] == ((), (), 0):
            return items[0][1]
        raise self._error(node, 'expected a scalar, got form {}'.format(value))

    def _power(self, node: ast.BinOp, base, exponent):
        if isinstance(exponent, Form):
            if isinstance(base, Form):
                return base.wedge(exponent)
            exponent = self._as_scalar(node.right, exponent)
        if not self.field.is_constant(exponent):
            raise self._error(node.right, 'exponent must be an integer')
        real, imaginary = self.field.complex_parts(exponent)
        if imaginary or real.denominator != 1:
            raise self._error(node.right, 'exponent must be an integer')
        exponent = int(real)
        if not isinstance(base, Form):
            return base ** exponent
        items = base.items()
        if len(items) == 1 and not items[0][0][0] and not items[0][0][1]:
            (_, _, weight), value = items[0]
            return self.algebra.scalar(value ** exponent, weight * exponent)
        if exponent < 0:
            raise self._error(node, 'negative power of a form')
        return base.power(exponent)

    def visit_BinOp(self, node: ast.BinOp):
        left = self.visit(node.left)
        right = self.visit(node.right)
        operator = node.op
        if isinstance(operator, ast.Add):
            return left + right if isinstance(left, Form) or not isinstance(right, Form) \
                else right + left
        if isinstance(operator, ast.Sub):
            return left - right if isinstance(left, Form) or not isinstance(right, Form) \
                else -right + left
        if isinstance(operator, ast.Mult):
            if isinstance(left, Form):
                return left * right
            return right * left if isinstance(right, Form) else left * right
        if isinstance(operator, ast.Div):
            divisor = self._as_scalar(node.right, right)
            if not divisor:
                raise self._error(node.right, 'division by zero')
            return left / divisor
        if isinstance(operator, (ast.Pow, ast.BitXor)):
            return self._power(node, left, right)
        return self.generic_visit(operator)
