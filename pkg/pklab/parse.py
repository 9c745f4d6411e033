"""Parsing of presentation files, forms, scalars, assignments and loci.

A presentation file holds one manifold::

    # comment
    label ecccus-t
    dim 3
    param t complex
    locus tbar = -t
    twist lambda = w1 - w1~
    d w3 = w1^w2~ - t*w2^w1~

Header lines (``label``, ``dim``, ``param``, ``locus``, ``twist``) come before the structure
equations. Generators whose equation is omitted are closed.
"""

import fractions
import logging
import pathlib
import re
import typing as t

from .coeffs import Assignment, Locus, ParamDecl, ParamKind, Scalar, ScalarField
from .errors import DimensionMismatch, ParseError
from .evaluator import ExpressionEvaluator
from .exterior import ExteriorAlgebra, Form, Presentation

__all__ = [
    'parse_expression', 'parse_form', 'parse_scalar', 'parse_values', 'parse_assignment',
    'parse_locus', 'parse_params', 'parse_names', 'parse_degree', 'parse_range',
    'parse_presentation', 'load_presentation']

_LOG = logging.getLogger(__name__)

_EQUATION = re.compile(r'^d\s+w([0-9]+)\s*=(.*)$')
_ASSIGNMENT = re.compile(r'^\s*([A-Za-z_][A-Za-z_0-9]*)\s*=(.*)$')


def parse_expression(algebra: ExteriorAlgebra, text: str,
                     line: t.Optional[int] = None) -> t.Union[Form, Scalar]:
    return ExpressionEvaluator(algebra, line).evaluate(text)


def parse_form(algebra: ExteriorAlgebra, text: str, line: t.Optional[int] = None) -> Form:
    value = parse_expression(algebra, text, line)
    if isinstance(value, Form):
        return value
    return algebra.scalar(value)


def parse_scalar(field: ScalarField, text: str, line: t.Optional[int] = None) -> Scalar:
    value = parse_expression(ExteriorAlgebra(1, field), text, line)
    if isinstance(value, Form):
        raise ParseError('expected a scalar, got form {}'.format(value), line)
    return value


def _split_values(text: str) -> t.List[str]:
    """Split on commas outside of parentheses."""
    parts = []
    depth = 0
    current = []  # type: t.List[str]
    for character in text:
        if character == ',' and depth == 0:
            parts.append(''.join(current))
            current = []
            continue
        depth += {'(': 1, ')': -1}.get(character, 0)
        current.append(character)
    parts.append(''.join(current))
    return [part for part in parts if part.strip()]


def parse_values(field: ScalarField, text: t.Union[str, t.Sequence[str]]) -> t.Dict[str, Scalar]:
    """Parse ``t=1/2,s=-1`` (or a list of such strings) into symbol-to-scalar values."""
    texts = [text] if isinstance(text, str) else list(text)
    values = {}
    for part in (part for text_ in texts for part in _split_values(text_)):
        match = _ASSIGNMENT.match(part)
        if match is None:
            raise ParseError('expected "name=value", got "{}"'.format(part.strip()))
        symbol = match.group(1)
        field.param(symbol)
        if symbol in values:
            raise ParseError('value of {} given twice'.format(symbol))
        values[symbol] = parse_scalar(field, match.group(2))
    return values


def parse_assignment(field: ScalarField, text: t.Union[str, t.Sequence[str]]) -> Assignment:
    return Assignment(field, parse_values(field, text))


def parse_locus(field: ScalarField, text: t.Union[str, t.Sequence[str]]) -> Locus:
    return Locus(field, parse_values(field, text))


def parse_names(text: t.Union[str, t.Sequence[str]]) -> t.List[str]:
    """Names assigned in ``r=1,s=-1`` (or a list of such strings), in order of appearance."""
    texts = [text] if isinstance(text, str) else list(text)
    names = []
    for part in (part for text_ in texts for part in _split_values(text_)):
        match = _ASSIGNMENT.match(part)
        if match is None:
            raise ParseError('expected "name=value", got "{}"'.format(part.strip()))
        names.append(match.group(1))
    return names


def parse_degree(text: str) -> t.Union[int, t.Tuple[int, int]]:
    """Parse a degree ``k`` or a bidegree ``p,q``."""
    try:
        parts = [int(part) for part in text.split(',')]
    except ValueError as err:
        raise ParseError('degree must be "k" or "p,q", got "{}"'.format(text)) from err
    if len(parts) == 1:
        return parts[0]
    if len(parts) == 2:
        return parts[0], parts[1]
    raise ParseError('degree must be "k" or "p,q", got "{}"'.format(text))


def parse_range(text: str) -> t.List[fractions.Fraction]:
    """Exact values of ``start:stop:step`` (stop included when reached) or of one rational."""
    parts = text.split(':')
    try:
        values = [fractions.Fraction(part.strip()) for part in parts]
    except ValueError as err:
        raise ParseError('expected a rational or "start:stop:step", got "{}"'.format(
            text.strip())) from err
    if len(values) == 1:
        return values
    if len(values) != 3:
        raise ParseError('expected "start:stop:step", got "{}"'.format(text.strip()))
    start, stop, step = values
    if step <= 0:
        raise ParseError('step of "{}" must be positive'.format(text.strip()))
    result = []
    value = start
    while value <= stop:
        result.append(value)
        value += step
    return result


def parse_params(texts: t.Iterable[str]) -> t.List[ParamDecl]:
    """Parse ``name:kind`` or ``name:complex:partner`` declarations."""
    params = []
    for text in texts:
        parts = text.split(':')
        if not 1 <= len(parts) <= 3:
            raise ParseError('invalid parameter declaration "{}"'.format(text))
        try:
            params.append(ParamDecl(parts[0], ParamKind(parts[1]) if len(parts) > 1
                                    else ParamKind.COMPLEX, parts[2] if len(parts) > 2 else None))
        except ValueError as err:
            raise ParseError(str(err)) from err
    return params


class _PresentationBuilder:

    """Accumulate header and equation lines of a presentation file."""

    def __init__(self):
        self.label = None  # type: t.Optional[str]
        self.n = None  # type: t.Optional[int]
        self.params = []  # type: t.List[ParamDecl]
        self.locus_lines = []  # type: t.List[t.Tuple[int, str]]
        self.twist_line = None  # type: t.Optional[t.Tuple[int, str]]
        self.equations = {}  # type: t.Dict[int, t.Tuple[int, str]]

    def header(self, number: int, keyword: str, rest: str) -> None:
        if self.equations:
            raise ParseError('header line "{}" after structure equations'.format(keyword), number)
        if keyword == 'label':
            self.label = rest
        elif keyword == 'dim':
            if self.n is not None:
                raise ParseError('dimension declared twice', number)
            if not rest.isdigit():
                raise ParseError('invalid dimension "{}"'.format(rest), number)
            if int(rest) < 1:
                raise DimensionMismatch('dimension must be positive, got {}'.format(rest), number)
            self.n = int(rest)
        elif keyword == 'param':
            parts = rest.split()
            if not 1 <= len(parts) <= 3:
                raise ParseError('expected "param <name> real|complex [partner]"', number)
            try:
                kind = ParamKind(parts[1]) if len(parts) > 1 else ParamKind.COMPLEX
                self.params.append(ParamDecl(parts[0], kind, parts[2] if len(parts) > 2 else None))
            except ValueError as err:
                raise ParseError(str(err), number) from err
        elif keyword == 'locus':
            self.locus_lines.append((number, rest))
        elif keyword == 'twist':
            match = _ASSIGNMENT.match(rest)
            if match is None or match.group(1) != 'lambda':
                raise ParseError('expected "twist lambda = <form>"', number)
            self.twist_line = (number, match.group(2))
        else:
            raise ParseError('unknown keyword "{}"'.format(keyword), number)

    def equation(self, number: int, index: int, text: str) -> None:
        if self.n is None:
            raise ParseError('structure equation before "dim"', number)
        if not 1 <= index <= self.n:
            raise DimensionMismatch('generator w{} outside of 1..{}'.format(index, self.n), number)
        if index in self.equations:
            raise ParseError('second equation for d w{}'.format(index), number)
        self.equations[index] = (number, text)

    def build(self) -> Presentation:
        if self.n is None:
            raise ParseError('missing "dim" line')
        try:
            field = ScalarField(self.params)
        except ValueError as err:
            raise ParseError(str(err)) from err
        for number, text in self.locus_lines:
            match = _ASSIGNMENT.match(text)
            if match is None:
                raise ParseError('expected "locus <symbol> = <scalar>"', number)
            field.param(match.group(1))
            value = parse_scalar(field, match.group(2), number)
            field = Locus(field, {match.group(1): value}).target
        algebra = ExteriorAlgebra(self.n, field)
        d_omega = []
        for index in range(1, self.n + 1):
            if index in self.equations:
                number, text = self.equations[index]
                d_omega.append(parse_form(algebra, text, number))
            else:
                d_omega.append(algebra.zero)
        twist = None
        if self.twist_line is not None:
            twist = parse_form(algebra, self.twist_line[1], self.twist_line[0])
        return Presentation(algebra, d_omega, twist, self.label)


def parse_presentation(text: str) -> Presentation:
    builder = _PresentationBuilder()
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        match = _EQUATION.match(line)
        if match is not None:
            builder.equation(number, int(match.group(1)), match.group(2))
            continue
        keyword, _, rest = line.partition(' ')
        builder.header(number, keyword, rest.strip())
    presentation = builder.build()
    _LOG.debug('parsed presentation %s with n=%i', presentation.label, presentation.n)
    return presentation


def load_presentation(path: t.Union[str, pathlib.Path]) -> Presentation:
    path = pathlib.Path(path)
    presentation = parse_presentation(path.read_text(encoding='utf-8'))
    if presentation.label is None:
        presentation = presentation.relabel(path.stem)
    return presentation
