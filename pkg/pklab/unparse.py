"""Printing of forms and presentations in the presentation language."""

import io
import logging
import typing as t

import sympy

from .coeffs import ParamKind, Scalar, ScalarField
from .exterior import Form, Key, Presentation

__all__ = ['Unparser', 'unparse', 'format_scalar']

_LOG = logging.getLogger(__name__)


def _is_atom(expr) -> bool:
    return expr.is_Integer and expr > 0 or expr.is_Symbol or expr == sympy.I


def _signed(expr) -> t.Tuple[bool, t.Any]:
    if expr.could_extract_minus_sign():
        return True, -expr
    return False, expr


def _scalar_text(expr) -> str:
    if expr.is_Add:
        return '({})'.format(expr)
    return str(expr)


def format_scalar(field: ScalarField, value: Scalar) -> str:
    return str(field.to_expr(value))


class Unparser:

    """Write a form or a presentation to a stream in canonical order."""

    def __init__(self, tree: t.Union[Form, Presentation], file: t.TextIO):
        self.file = file
        if isinstance(tree, Presentation):
            self._presentation(tree)
        elif isinstance(tree, Form):
            self._form(tree)
        else:
            raise TypeError('cannot unparse {}'.format(type(tree).__name__))

    def write(self, text: str) -> None:
        self.file.write(text)

    @staticmethod
    def _body(key: Key) -> t.List[str]:
        holomorphic, antiholomorphic, weight = key
        parts = []
        if weight:
            parts.append('f' if weight == 1 else 'f^{}'.format(weight))
        letters = ['w{}'.format(index) for index in holomorphic] \
            + ['w{}~'.format(index) for index in antiholomorphic]
        if letters:
            parts.append('^'.join(letters))
        return parts

    def _term(self, field: ScalarField, key: Key, value: Scalar) -> t.Tuple[bool, str]:
        negative, expr = _signed(field.to_expr(value))
        body = self._body(key)
        if not body:
            return negative, _scalar_text(expr)
        if expr == 1:
            return negative, '*'.join(body)
        if _is_atom(expr):
            return negative, '*'.join([str(expr)] + body)
        return negative, '*'.join(['({})'.format(expr)] + body)

    def _form(self, form: Form) -> None:
        items = form.items()
        if not items:
            self.write('0')
            return
        for position, (key, value) in enumerate(items):
            negative, text = self._term(form.field, key, value)
            if position == 0:
                self.write('-' + text if negative else text)
            else:
                self.write(' - ' + text if negative else ' + ' + text)

    def _presentation(self, presentation: Presentation) -> None:
        field = presentation.field
        if presentation.label:
            self.write('label {}\n'.format(presentation.label))
        self.write('dim {}\n'.format(presentation.n))
        for param in field.params:
            self.write('param {} {}'.format(param.name, param.kind.value))
            if param.kind is ParamKind.COMPLEX and param.partner != '{}bar'.format(param.name):
                self.write(' {}'.format(param.partner))
            self.write('\n')
        for symbol, value in field.relations.items():
            self.write('locus {} = {}\n'.format(symbol, format_scalar(field, value)))
        if presentation.twist is not None:
            self.write('twist lambda = ')
            self._form(presentation.twist)
            self.write('\n')
        for index, form in enumerate(presentation.d_omega, 1):
            self.write('d w{} = '.format(index))
            self._form(form)
            self.write('\n')


def unparse(tree: t.Union[Form, Presentation]) -> str:
    stream = io.StringIO()
    Unparser(tree, file=stream)
    return stream.getvalue()
