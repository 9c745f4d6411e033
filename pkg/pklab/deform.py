"""Deformations of complex structures given by a change of (1,0) coframe."""

import logging
import re
import typing as t

from .coeffs import ParamDecl, Scalar, ScalarField
from .errors import DimensionMismatch, NotIntegrable, NotInvertible, ParseError
from .exterior import Form, Presentation, rewrite
from .linalg import inverse
from .parse import parse_form

__all__ = ['CoframeSubstitution', 'Comparison', 'deform', 'transport', 'compare']

_LOG = logging.getLogger(__name__)

_NEW_GENERATOR = re.compile(r'^\s*h([0-9]+)\s*=(.*)$')


class CoframeSubstitution:

    """New (1,0) forms h^k written in the old coframe w, conj(w).

    Generators without an expression stay unchanged. The change of basis acts jointly on
    (w, conj w) and must be invertible over the scalar field.
    """

    def __init__(self, presentation: Presentation, forms: t.Mapping[int, Form]):
        self.presentation = presentation
        algebra = presentation.algebra
        self.forms = []  # type: t.List[Form]
        for index in range(1, algebra.n + 1):
            form = forms.get(index, algebra.omega(index))
            if form.algebra != algebra:
                raise DimensionMismatch('expression of h{} is not a form of {}'.format(
                    index, presentation.label))
            if form.degree not in (1, None) or form.weights - {0}:
                raise ValueError('h{} = {} is not an invariant 1-form'.format(index, form))
            self.forms.append(form)
        unknown = set(forms).difference(range(1, algebra.n + 1))
        if unknown:
            raise DimensionMismatch('new generators {} outside of 1..{}'.format(
                sorted(unknown), algebra.n))

    @classmethod
    def identity(cls, presentation: Presentation) -> 'CoframeSubstitution':
        return cls(presentation, {})

    @classmethod
    def parse(cls, presentation: Presentation, texts: t.Iterable[str],
              params: t.Sequence[ParamDecl] = ()) -> 'CoframeSubstitution':
        """Parse lines ``h2 = w2 - t*w1~``, declaring extra parameters on the presentation."""
        if params:
            presentation = presentation.with_field(presentation.field.extend(params))
        forms = {}  # type: t.Dict[int, Form]
        for text in texts:
            match = _NEW_GENERATOR.match(text)
            if match is None:
                raise ParseError('expected "h<k> = <1-form>", got "{}"'.format(text))
            index = int(match.group(1))
            if index in forms:
                raise ParseError('second expression for h{}'.format(index))
            if not 1 <= index <= presentation.n:
                raise DimensionMismatch('new generator h{} outside of 1..{}'.format(
                    index, presentation.n))
            forms[index] = parse_form(presentation.algebra, match.group(2))
        return cls(presentation, forms)

    @property
    def n(self) -> int:
        return self.presentation.n

    @property
    def field(self) -> ScalarField:
        return self.presentation.field

    def matrix(self) -> t.List[t.List[Scalar]]:
        """Rows h^k then conj(h^k), columns w^j then conj(w^j)."""
        n = self.n
        rows = []
        for form in self.forms + [form.conj() for form in self.forms]:
            row = [self.field.zero] * (2 * n)
            for (holomorphic, antiholomorphic, _), value in form.items():
                column = holomorphic[0] - 1 if holomorphic else n + antiholomorphic[0] - 1
                row[column] = value
            rows.append(row)
        return rows

    def inverse_matrix(self) -> t.List[t.List[Scalar]]:
        result = inverse(self.field, self.matrix())
        if result is None:
            raise NotInvertible('coframe change {} is not invertible'.format(self))
        return result

    def old_in_new(self) -> t.List[Form]:
        """Images of the old letters w^j, conj(w^j) as forms in the new letters."""
        algebra = self.presentation.algebra
        return [sum((algebra.letter(column).scale(value)
                     for column, value in enumerate(row) if value), algebra.zero)
                for row in self.inverse_matrix()]

    def inverse(self) -> 'CoframeSubstitution':
        """Substitution expressing the old coframe in the new one."""
        images = self.old_in_new()
        return CoframeSubstitution(self.presentation, {
            index: images[index - 1] for index in range(1, self.n + 1)})

    def dbar_closed_pieces(self, presentation: t.Optional[Presentation] = None) \
            -> t.Dict[int, bool]:
        """For each h^k, whether its (0,1) component is delbar-closed."""
        presentation = presentation or self.presentation
        result = {}
        for index, form in enumerate(self.forms, 1):
            piece = form.component(0, 1).embed(presentation.algebra)
            result[index] = not presentation.delbar(piece)
        return result

    def is_identity(self) -> bool:
        algebra = self.presentation.algebra
        return all(form == algebra.omega(index) for index, form in enumerate(self.forms, 1))

    def __str__(self):
        return '; '.join('h{} = {}'.format(index, form)
                         for index, form in enumerate(self.forms, 1))

    def __repr__(self):
        return 'CoframeSubstitution({!r})'.format(str(self))


def _aligned(presentation: Presentation, substitution: CoframeSubstitution) -> Presentation:
    if presentation.n != substitution.n:
        raise DimensionMismatch('substitution on {} generators applied to {} generators'.format(
            substitution.n, presentation.n))
    if presentation.field == substitution.field:
        return presentation
    missing = set(presentation.field.symbols).difference(substitution.field.symbols)
    if missing:
        raise ValueError('substitution does not know the parameters {}'.format(sorted(missing)))
    return presentation.with_field(substitution.field)


def transport(form: Form, substitution: CoframeSubstitution) -> Form:
    """Rewrite a form in the old coframe in terms of the new coframe."""
    algebra = substitution.presentation.algebra
    if form.algebra != algebra:
        form = form.embed(algebra)
    return rewrite(form, substitution.old_in_new(), algebra)


def deform(presentation: Presentation, substitution: CoframeSubstitution) -> Presentation:
    """Structure equations in the coframe h: d h^k computed in w, then rewritten in h."""
    presentation = _aligned(presentation, substitution)
    algebra = presentation.algebra
    images = substitution.old_in_new()
    d_omega = [rewrite(presentation.d(form), images, algebra) for form in substitution.forms]
    twist = None
    if presentation.twist is not None:
        twist = rewrite(presentation.twist, images, algebra)
    deformed = Presentation(algebra, d_omega, twist, presentation.label)
    report = deformed.validate()
    if not all(report.integrable.values()):
        raise NotIntegrable('coframe {} does not define an integrable structure: {}'.format(
            substitution, '; '.join(report.failures)))
    assert report.ok, report.failures
    _LOG.debug('deformed %s by %s', presentation.label, substitution)
    return deformed


class Comparison:

    """Term-by-term difference of two presentations."""

    def __init__(self, first: Presentation, second: Presentation):
        self.first = first
        self.second = second
        self.diff = {}  # type: t.Dict[str, str]
        if first.n != second.n:
            self.diff['dim'] = '{} != {}'.format(first.n, second.n)
            return
        if first.field != second.field:
            field = first.field.extend(
                param for param in second.field.params if param not in first.field.params)
            first, second = first.with_field(field), second.with_field(field)
        for index, (left, right) in enumerate(zip(first.d_omega, second.d_omega), 1):
            difference = left - right
            if difference:
                self.diff['d w{}'.format(index)] = str(difference)
        if (first.twist is None) != (second.twist is None):
            self.diff['twist'] = 'present in only one presentation'
        elif first.twist is not None and first.twist != second.twist:
            self.diff['twist'] = str(first.twist - second.twist)

    @property
    def equal(self) -> bool:
        return not self.diff

    def __bool__(self):
        return self.equal

    def to_dict(self) -> t.Dict[str, t.Any]:
        return {'equal': self.equal, 'diff': dict(self.diff)}


def compare(first: Presentation, second: Presentation) -> Comparison:
    """Canonical equality of structure equations; the diff names mismatched equations."""
    return Comparison(first, second)
