"""Exact scalars: rational functions over the Gaussian rationals in declared parameters.

Scalars are plain sympy domain elements. Without parameters they are elements of ``QQ_I``;
with parameters they are elements of a ``FracField`` over ``QQ_I`` whose generators are the
declared parameters and their conjugate partners, ordered as declared (graded lexicographic
monomial order). Either way they are immutable, hashable and canonical, so equality is
decided by comparing representations.

A ``ScalarField`` carries what sympy does not know: which symbols are conjugate partners,
and optional relations (a locus such as ``tbar = -t``) applied after every conjugation.
"""

import enum
import fractions
import keyword
import logging
import re
import typing as t

import ordered_set
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.fields import FracElement, field as frac_field
from sympy.polys.orderings import grlex

from .errors import DenominatorVanishes, ParametricInput, UnknownParameter

__all__ = [
    'ParamKind', 'ParamDecl', 'Scalar', 'ScalarField', 'Substitution', 'Assignment', 'Locus',
    'conj', 'specialize', 'is_zero']

_LOG = logging.getLogger(__name__)

Scalar = t.Any
"""Element of QQ_I or of a sympy FracField over QQ_I."""

_RESERVED_NAME = re.compile(r'^(I|f|wb?[0-9]+|h[0-9]+)$')


class ParamKind(enum.Enum):

    """Kind of a declared parameter."""

    REAL = 'real'
    COMPLEX = 'complex'


class ParamDecl:

    """Declared parameter.

    A real parameter is its own partner. A complex parameter is paired with an independent
    indeterminate standing for its conjugate, named ``<name>bar`` unless given explicitly.
    """

    def __init__(self, name: str, kind: ParamKind = ParamKind.COMPLEX,
                 partner: t.Optional[str] = None):
        kind = ParamKind(kind)
        if partner is None:
            partner = name if kind is ParamKind.REAL else '{}bar'.format(name)
        for symbol in {name, partner}:
            if not symbol.isidentifier() or keyword.iskeyword(symbol) \
                    or _RESERVED_NAME.match(symbol) is not None:
                raise ValueError('invalid parameter name "{}"'.format(symbol))
        if kind is ParamKind.REAL and partner != name:
            raise ValueError('real parameter {} cannot have partner {}'.format(name, partner))
        if kind is ParamKind.COMPLEX and partner == name:
            raise ValueError('complex parameter {} needs a distinct partner'.format(name))
        self.name = name
        self.kind = kind
        self.partner = partner

    @property
    def symbols(self) -> t.Tuple[str, ...]:
        if self.kind is ParamKind.REAL:
            return (self.name,)
        return (self.name, self.partner)

    def __eq__(self, other):
        if not isinstance(other, ParamDecl):
            return NotImplemented
        return (self.name, self.kind, self.partner) == (other.name, other.kind, other.partner)

    def __hash__(self):
        return hash((self.name, self.kind, self.partner))

    def __repr__(self):
        return 'ParamDecl({!r}, {}, {!r})'.format(self.name, self.kind.value, self.partner)


class ScalarField:

    """Field of exact scalars over declared parameters, with conjugation."""

    def __init__(self, params: t.Iterable[ParamDecl] = (),
                 relations: t.Optional[t.Mapping[str, t.Any]] = None):
        self.params = tuple(params)
        symbols = ordered_set.OrderedSet()
        self._partner = {}  # type: t.Dict[str, str]
        for param in self.params:
            for symbol in param.symbols:
                if symbol in symbols:
                    raise ValueError('parameter symbol {} declared twice'.format(symbol))
                symbols.add(symbol)
            self._partner[param.name] = param.partner
            self._partner[param.partner] = param.name
        self.symbols = tuple(symbols)
        if self.symbols:
            self._field = frac_field(self.symbols, QQ_I, grlex)[0]
            self._conj_order = tuple(self.symbols.index(self._partner[symbol])
                                     for symbol in self.symbols)
        else:
            self._field = None
            self._conj_order = ()
        self.relations = {}  # type: t.Dict[str, Scalar]
        for symbol, value in (relations or {}).items():
            if symbol not in self.symbols:
                raise UnknownParameter('relation for undeclared parameter {}'.format(symbol))
            self.relations[symbol] = self.convert(value)

    @property
    def is_constant_field(self) -> bool:
        return self._field is None

    @property
    def zero(self) -> Scalar:
        return self.convert(0)

    @property
    def one(self) -> Scalar:
        return self.convert(1)

    @property
    def i(self) -> Scalar:
        return self.convert(QQ_I(0, 1))

    def rational(self, numerator: int, denominator: int = 1) -> Scalar:
        return self.convert(fractions.Fraction(numerator, denominator))

    def gen(self, symbol: str) -> Scalar:
        """Indeterminate of a declared parameter symbol."""
        if symbol not in self.symbols:
            raise UnknownParameter('undeclared parameter "{}"'.format(symbol))
        if symbol in self.relations:
            return self.relations[symbol]
        return self._field.gens[self.symbols.index(symbol)]

    def partner(self, symbol: str) -> str:
        if symbol not in self._partner:
            raise UnknownParameter('undeclared parameter "{}"'.format(symbol))
        return self._partner[symbol]

    def param(self, symbol: str) -> ParamDecl:
        for param in self.params:
            if symbol in param.symbols:
                return param
        raise UnknownParameter('undeclared parameter "{}"'.format(symbol))

    def convert(self, value: t.Any) -> Scalar:
        """Convert an int, Fraction, Gaussian rational or scalar of a compatible field."""
        if isinstance(value, FracElement):
            return self._embed(value)
        if isinstance(value, bool):
            raise TypeError('cannot convert {!r} to a scalar'.format(value))
        if isinstance(value, fractions.Fraction):
            value = QQ_I(QQ(value.numerator, value.denominator), QQ(0))
        elif isinstance(value, int):
            value = QQ_I(value)
        elif not QQ_I.of_type(value):
            raise TypeError('cannot convert {!r} to a scalar'.format(value))
        if self._field is None:
            return value
        return self._field.ground_new(value)

    def _embed(self, value: FracElement) -> Scalar:
        if self._field is not None and value.field == self._field:
            return value
        source_symbols = [str(symbol) for symbol in value.field.symbols]
        images = [self.gen(symbol) if symbol in self.symbols else None
                  for symbol in source_symbols]
        return self._evaluate(value, images, source_symbols)

    def _evaluate_poly(self, poly, images: t.Sequence[t.Optional[Scalar]],
                       source_symbols: t.Sequence[str]) -> Scalar:
        result = self.zero
        powers = {}
        for monom, coeff in poly.terms():
            term = self.convert(coeff)
            for index, exponent in enumerate(monom):
                if not exponent:
                    continue
                if images[index] is None:
                    raise ParametricInput('scalar depends on "{}" which is not a parameter here'
                                          .format(source_symbols[index]))
                if (index, exponent) not in powers:
                    powers[index, exponent] = images[index] ** exponent
                term = term * powers[index, exponent]
            result = result + term
        return result

    def _evaluate(self, value: FracElement, images: t.Sequence[t.Optional[Scalar]],
                  source_symbols: t.Sequence[str]) -> Scalar:
        numerator = self._evaluate_poly(value.numer, images, source_symbols)
        denominator = self._evaluate_poly(value.denom, images, source_symbols)
        if not denominator:
            raise DenominatorVanishes('denominator {} vanishes'.format(value.denom.as_expr()))
        return numerator / denominator

    def evaluate(self, value: Scalar, mapping: t.Mapping[str, Scalar]) -> Scalar:
        """Substitute symbols of a scalar by scalars of this field.

        Symbols absent from the mapping are kept as indeterminates of this field.
        """
        if not isinstance(value, FracElement):
            return self.convert(value)
        source_symbols = [str(symbol) for symbol in value.field.symbols]
        images = []
        for symbol in source_symbols:
            if symbol in mapping:
                images.append(self.convert(mapping[symbol]))
            elif symbol in self.symbols:
                images.append(self.gen(symbol))
            else:
                images.append(None)
        return self.reduce(self._evaluate(value, images, source_symbols))

    def reduce(self, value: Scalar) -> Scalar:
        """Apply the relations of this field."""
        if not self.relations or not isinstance(value, FracElement):
            return value
        images = [self.relations.get(symbol, gen)
                  for symbol, gen in zip(self.symbols, self._field.gens)]
        return self._evaluate(value, images, self.symbols)

    def _conj_poly(self, poly):
        order = self._conj_order
        return poly.ring.from_dict({
            tuple(monom[order[index]] for index in range(len(monom))): QQ_I(coeff.x, -coeff.y)
            for monom, coeff in poly.items()})

    def conj(self, value: Scalar) -> Scalar:
        """Complex conjugation: i to -i, each parameter to its partner."""
        if self._field is None:
            return QQ_I(value.x, -value.y)
        conjugated = self._field.new(self._conj_poly(value.numer), self._conj_poly(value.denom))
        return self.reduce(conjugated)

    def real_part(self, value: Scalar) -> Scalar:
        return (value + self.conj(value)) / 2

    def imaginary_part(self, value: Scalar) -> Scalar:
        return (value - self.conj(value)) / (2 * self.i)

    def is_real(self, value: Scalar) -> bool:
        return self.conj(value) == value

    def is_constant(self, value: Scalar) -> bool:
        if not isinstance(value, FracElement):
            return True
        return value.numer.is_ground and value.denom.is_ground

    def constant(self, value: Scalar) -> Scalar:
        """Value of a constant scalar as an element of QQ_I."""
        if not isinstance(value, FracElement):
            return value
        if not self.is_constant(value):
            raise ParametricInput('scalar {} depends on parameters'.format(self.format(value)))
        return QQ_I.quo(value.numer.LC, value.denom.LC)

    def complex_parts(self, value: Scalar) -> t.Tuple[fractions.Fraction, fractions.Fraction]:
        value = self.constant(value)
        return (fractions.Fraction(int(value.x.numerator), int(value.x.denominator)),
                fractions.Fraction(int(value.y.numerator), int(value.y.denominator)))

    def sign(self, value: Scalar) -> int:
        """Sign of a real constant."""
        real, imaginary = self.complex_parts(value)
        if imaginary:
            raise ValueError('scalar {} is not real'.format(self.format(value)))
        return (real > 0) - (real < 0)

    def complexity(self, value: Scalar) -> t.Tuple[int, int, int, int]:
        """Sort key preferring constants, then low degree, then few terms."""
        if not isinstance(value, FracElement):
            return (0, 0, 0, 0)
        if self.is_constant(value):
            return (0, 0, 0, 0)
        numer, denom = value.numer, value.denom
        return (1, max(sum(monom) for monom in numer.keys()) + max(
            sum(monom) for monom in denom.keys()), len(numer), len(denom))

    def pivot_polynomial(self, value: Scalar) -> Scalar:
        """Monic numerator of a scalar: the polynomial whose vanishing makes it zero."""
        if not isinstance(value, FracElement):
            return self.one
        return self._field.new(value.numer.monic())

    def to_expr(self, value: Scalar):
        if not isinstance(value, FracElement):
            return QQ_I.to_sympy(value)
        return value.as_expr()

    def format(self, value: Scalar) -> str:
        return str(self.to_expr(value))

    def extend(self, params: t.Iterable[ParamDecl]) -> 'ScalarField':
        """Field with more parameters; scalars of this field embed via convert()."""
        return ScalarField(self.params + tuple(params), self.relations)

    def __eq__(self, other):
        if not isinstance(other, ScalarField):
            return NotImplemented
        return self.params == other.params and self.relations == other.relations

    def __hash__(self):
        return hash(self.params)

    def __repr__(self):
        return 'ScalarField({!r}, relations={!r})'.format(
            list(self.params), {k: self.format(v) for k, v in self.relations.items()})


class Substitution:

    """Field homomorphism given by images of parameter symbols."""

    def __init__(self, source: ScalarField, values: t.Mapping[str, t.Any]):
        for symbol in values:
            if symbol not in source.symbols:
                raise UnknownParameter('undeclared parameter "{}"'.format(symbol))
        self.source = source
        self.values = {symbol: source.convert(value) for symbol, value in values.items()}
        self.target = self._target_field()

    def _target_field(self) -> ScalarField:
        raise NotImplementedError()

    def apply(self, value: Scalar) -> Scalar:
        return self.target.evaluate(value, self._images())

    def _images(self) -> t.Dict[str, Scalar]:
        raise NotImplementedError()

    def __call__(self, value: Scalar) -> Scalar:
        return self.apply(value)

    def vanishes(self, value: Scalar) -> bool:
        """Check if a scalar becomes zero, or hits a pole, under this substitution."""
        try:
            return not self.apply(value)
        except DenominatorVanishes:
            return True

    def describe(self) -> str:
        return ','.join('{}={}'.format(symbol, self.source.format(value))
                        for symbol, value in self.values.items())

    def __repr__(self):
        return '{}({})'.format(type(self).__name__, self.describe())


class Assignment(Substitution):

    """Values of parameters respecting the conjugation pairing.

    Missing partners are filled in by conjugation. Parameters whose symbols are all assigned
    are dropped from the target field.
    """

    def __init__(self, source: ScalarField, values: t.Mapping[str, t.Any]):
        values = {symbol: source.convert(value) for symbol, value in values.items()}
        for symbol, value in list(values.items()):
            partner = source.partner(symbol) if symbol in source.symbols else symbol
            if partner not in values:
                values[partner] = source.conj(value)
        for symbol, value in values.items():
            if symbol not in source.symbols:
                continue
            partner = source.partner(symbol)
            if source.conj(value) != values[partner]:
                raise ValueError('assignment {}={} does not respect conjugation: {}={}'.format(
                    symbol, source.format(value), partner, source.format(values[partner])))
        super().__init__(source, values)

    def _target_field(self) -> ScalarField:
        params = [param for param in self.source.params
                  if not all(symbol in self.values for symbol in param.symbols)]
        bare = ScalarField(params)
        # values may only depend on parameters that stay
        self._mapping = {symbol: bare.evaluate(value, {})
                         for symbol, value in self.values.items()}
        relations = {symbol: bare.evaluate(value, self._mapping)
                     for symbol, value in self.source.relations.items()
                     if symbol not in self.values}
        target = ScalarField(params, relations)
        self._mapping = {symbol: target.convert(value) for symbol, value in self._mapping.items()}
        return target

    def _images(self) -> t.Dict[str, Scalar]:
        return self._mapping


class Locus(Substitution):

    """Relations restricting parameters to a locus, for example ``tbar = -t``.

    The target field keeps all parameters and applies the relations after each conjugation.
    """

    def _target_field(self) -> ScalarField:
        relations = dict(self.source.relations)
        relations.update(self.values)
        return ScalarField(self.source.params, relations)

    def _images(self) -> t.Dict[str, Scalar]:
        return self.target.relations


def conj(value: Scalar, field: ScalarField) -> Scalar:
    """Complex conjugate of a scalar of a given field."""
    return field.conj(value)


def specialize(value: Scalar, substitution: Substitution) -> Scalar:
    """Image of a scalar under an assignment or a locus substitution."""
    return substitution.apply(value)


def is_zero(value: Scalar) -> bool:
    return not value
