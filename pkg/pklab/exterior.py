"""Bigraded exterior algebra with twisted sectors, and structure equations of Lie algebras."""

import itertools
import logging
import typing as t

from .coeffs import Scalar, ScalarField, Substitution
from .errors import DimensionMismatch, MixedBidegree, TwistWithoutLambda

__all__ = [
    'Key', 'ExteriorAlgebra', 'Form', 'Presentation', 'ValidationReport',
    'PARAMETRIC_RATIONALITY_NOTE', 'wedge', 'd', 'del_', 'delbar', 'validate', 'rewrite']

_LOG = logging.getLogger(__name__)

PARAMETRIC_RATIONALITY_NOTE = 'structure constants depend on parameters; they are Gaussian' \
    ' rational at Gaussian rational parameter values'

Key = t.Tuple[t.Tuple[int, ...], t.Tuple[int, ...], int]
"""Term (I, J, m) standing for f^m w^I ^ w~^J, with I and J ascending."""


def _merge(first: t.Tuple[int, ...], second: t.Tuple[int, ...]) -> t.Tuple[int, t.Tuple[int, ...]]:
    """Sign of sorting the concatenation of two ascending tuples, and the sorted result."""
    if set(first).intersection(second):
        return 0, ()
    inversions = sum(1 for a in first for b in second if b < a)
    return (-1 if inversions % 2 else 1), tuple(sorted(first + second))


def _wedge_keys(left: Key, right: Key) -> t.Tuple[int, t.Optional[Key]]:
    sign_i, holomorphic = _merge(left[0], right[0])
    if not sign_i:
        return 0, None
    sign_j, antiholomorphic = _merge(left[1], right[1])
    if not sign_j:
        return 0, None
    sign = sign_i * sign_j * (-1 if len(left[1]) * len(right[0]) % 2 else 1)
    return sign, (holomorphic, antiholomorphic, left[2] + right[2])


def _key_order(key: Key):
    holomorphic, antiholomorphic, weight = key
    return (len(holomorphic) + len(antiholomorphic), -len(holomorphic),
            holomorphic, antiholomorphic, weight)


class ExteriorAlgebra:

    """Exterior algebra on n (1,0) generators and their conjugates over a scalar field."""

    def __init__(self, n: int, field: ScalarField):
        if n < 1:
            raise DimensionMismatch('dimension must be positive, got {}'.format(n))
        self.n = n
        self.field = field

    def form(self, terms: t.Optional[t.Mapping[Key, t.Any]] = None) -> 'Form':
        convert = self.field.convert
        return Form(self, {key: convert(value) for key, value in (terms or {}).items()})

    @property
    def zero(self) -> 'Form':
        return Form(self, {})

    def scalar(self, value: t.Any, weight: int = 0) -> 'Form':
        return self.form({((), (), weight): value})

    @property
    def one(self) -> 'Form':
        return self.scalar(1)

    def _check_index(self, index: int) -> None:
        if not 1 <= index <= self.n:
            raise DimensionMismatch('generator {} outside of 1..{}'.format(index, self.n))

    def omega(self, index: int) -> 'Form':
        self._check_index(index)
        return self.form({((index,), (), 0): 1})

    def omega_bar(self, index: int) -> 'Form':
        self._check_index(index)
        return self.form({((), (index,), 0): 1})

    def twist_character(self, weight: int = 1) -> 'Form':
        return self.scalar(1, weight)

    def letter(self, letter: int) -> 'Form':
        """Generator by letter index: 0..n-1 for w^k, n..2n-1 for their conjugates."""
        if letter < self.n:
            return self.omega(letter + 1)
        return self.omega_bar(letter - self.n + 1)

    def monomial(self, key: Key, coefficient: t.Any = 1) -> 'Form':
        holomorphic, antiholomorphic, _ = key
        for index in holomorphic + antiholomorphic:
            self._check_index(index)
        if list(holomorphic) != sorted(set(holomorphic)) \
                or list(antiholomorphic) != sorted(set(antiholomorphic)):
            raise ValueError('indices of {} must be strictly ascending'.format(key))
        return self.form({key: coefficient})

    def keys(self, p: int, q: int, weight: int = 0) -> t.List[Key]:
        """Basis keys of bidegree (p, q) in a given twisted sector."""
        indices = range(1, self.n + 1)
        return [(holomorphic, antiholomorphic, weight)
                for holomorphic in itertools.combinations(indices, p)
                for antiholomorphic in itertools.combinations(indices, q)]

    def degree_keys(self, degree: int, weight: int = 0) -> t.List[Key]:
        return [key for p in range(degree, -1, -1) for key in self.keys(p, degree - p, weight)]

    @property
    def volume_key(self) -> Key:
        indices = tuple(range(1, self.n + 1))
        return (indices, indices, 0)

    def __eq__(self, other):
        if not isinstance(other, ExteriorAlgebra):
            return NotImplemented
        return self.n == other.n and self.field == other.field

    def __hash__(self):
        return hash((self.n, self.field))

    def __repr__(self):
        return 'ExteriorAlgebra({}, {!r})'.format(self.n, self.field)


class Form:

    """Sparse element of an exterior algebra: map from keys to nonzero scalars."""

    __slots__ = ('algebra', '_terms')

    def __init__(self, algebra: ExteriorAlgebra, terms: t.Mapping[Key, Scalar]):
        self.algebra = algebra
        self._terms = {key: value for key, value in terms.items() if value}

    @property
    def field(self) -> ScalarField:
        return self.algebra.field

    def _compatible(self, other: 'Form') -> None:
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise DimensionMismatch('forms belong to different algebras: {!r} and {!r}'.format(
                self.algebra, other.algebra))

    def _coerce(self, other: t.Any) -> 'Form':
        if isinstance(other, Form):
            self._compatible(other)
            return other
        return self.algebra.scalar(other)

    def items(self) -> t.List[t.Tuple[Key, Scalar]]:
        return sorted(self._terms.items(), key=lambda item: _key_order(item[0]))

    def keys(self) -> t.List[Key]:
        return sorted(self._terms, key=_key_order)

    def coefficient(self, key: Key) -> Scalar:
        return self._terms.get(key, self.field.zero)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, Form):
            if other == 0:
                return not self._terms
            return NotImplemented
        return self.algebra == other.algebra and self._terms == other._terms

    __hash__ = None

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self._terms)
        for key, value in other._terms.items():
            terms[key] = terms[key] + value if key in terms else value
        return Form(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return Form(self.algebra, {key: -value for key, value in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, value: t.Any) -> 'Form':
        value = self.field.convert(value)
        if not value:
            return self.algebra.zero
        return Form(self.algebra, {key: coefficient * value
                                   for key, coefficient in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Form):
            return self.wedge(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        if isinstance(other, Form):
            raise TypeError('division by a form')
        return self.scale(self.field.one / self.field.convert(other))

    def wedge(self, other: 'Form') -> 'Form':
        self._compatible(other)
        terms = {}  # type: t.Dict[Key, Scalar]
        for left, a in self._terms.items():
            for right, b in other._terms.items():
                sign, key = _wedge_keys(left, right)
                if not sign:
                    continue
                value = a * b if sign > 0 else -(a * b)
                terms[key] = terms[key] + value if key in terms else value
        return Form(self.algebra, terms)

    __xor__ = wedge

    def power(self, exponent: int) -> 'Form':
        result = self.algebra.one
        for _ in range(exponent):
            result = result.wedge(self)
        return result

    def conj(self) -> 'Form':
        """Conjugate: f^m w^I ^ w~^J to f^-m w~^I ^ w^J, reordered."""
        conj = self.field.conj
        terms = {}
        for (holomorphic, antiholomorphic, weight), value in self._terms.items():
            value = conj(value)
            if len(holomorphic) * len(antiholomorphic) % 2:
                value = -value
            terms[antiholomorphic, holomorphic, -weight] = value
        return Form(self.algebra, terms)

    def component(self, p: int, q: int) -> 'Form':
        return Form(self.algebra, {key: value for key, value in self._terms.items()
                                   if len(key[0]) == p and len(key[1]) == q})

    def degree_component(self, degree: int) -> 'Form':
        return Form(self.algebra, {key: value for key, value in self._terms.items()
                                   if len(key[0]) + len(key[1]) == degree})

    def weight_component(self, weight: int) -> 'Form':
        return Form(self.algebra, {key: value for key, value in self._terms.items()
                                   if key[2] == weight})

    def shift_weight(self, weight: int) -> 'Form':
        if not weight:
            return self
        return Form(self.algebra, {(key[0], key[1], key[2] + weight): value
                                   for key, value in self._terms.items()})

    @property
    def bidegrees(self) -> t.Set[t.Tuple[int, int]]:
        return {(len(key[0]), len(key[1])) for key in self._terms}

    @property
    def weights(self) -> t.Set[int]:
        return {key[2] for key in self._terms}

    @property
    def bidegree(self) -> t.Optional[t.Tuple[int, int]]:
        """Bidegree of a pure form, None for zero."""
        bidegrees = self.bidegrees
        if len(bidegrees) > 1:
            raise MixedBidegree('form has components of bidegrees {}'.format(sorted(bidegrees)))
        return next(iter(bidegrees), None)

    @property
    def degree(self) -> t.Optional[int]:
        degrees = {p + q for p, q in self.bidegrees}
        if len(degrees) > 1:
            raise ValueError('form has components of degrees {}'.format(sorted(degrees)))
        return next(iter(degrees), None)

    def is_real(self) -> bool:
        return self.conj() == self

    def top_coefficient(self, weight: int = 0) -> Scalar:
        """Coefficient of the volume form w^{1..n} ^ w~^{1..n} in a given sector."""
        holomorphic, antiholomorphic, _ = self.algebra.volume_key
        return self.coefficient((holomorphic, antiholomorphic, weight))

    def map(self, function: t.Callable[[Scalar], Scalar],
            algebra: t.Optional[ExteriorAlgebra] = None) -> 'Form':
        """Apply a function to every coefficient, landing in another algebra if given."""
        return Form(algebra or self.algebra,
                    {key: function(value) for key, value in self._terms.items()})

    def embed(self, algebra: ExteriorAlgebra) -> 'Form':
        if algebra.n != self.algebra.n:
            raise DimensionMismatch('cannot embed forms on {} generators into {}'.format(
                self.algebra.n, algebra.n))
        return self.map(algebra.field.convert, algebra)

    def __str__(self):
        from .unparse import unparse
        return unparse(self)

    def __repr__(self):
        return 'Form({!r})'.format(str(self))


def _letters(key: Key, n: int) -> t.List[int]:
    return [index - 1 for index in key[0]] + [n + index - 1 for index in key[1]]


def _letters_key(letters: t.Sequence[int], n: int, weight: int = 0) -> Key:
    return (tuple(letter + 1 for letter in letters if letter < n),
            tuple(letter - n + 1 for letter in letters if letter >= n), weight)


def rewrite(form: Form, images: t.Sequence[Form], algebra: ExteriorAlgebra) -> Form:
    """Substitute every generator letter of a form by a 1-form of another algebra.

    Letter k < n is w^{k+1}, letter n + k its conjugate. Twist weights are kept.
    """
    convert = algebra.field.convert
    result = algebra.zero
    cache = {}  # type: t.Dict[t.Tuple[int, ...], Form]
    for key, value in form.items():
        letters = tuple(_letters(key, form.algebra.n))
        if letters not in cache:
            product = algebra.one
            for letter in letters:
                product = product.wedge(images[letter])
            cache[letters] = product
        result = result + cache[letters].shift_weight(key[2]).scale(convert(value))
    return result


class ValidationReport:

    """Outcome of checking a presentation."""

    def __init__(self, label: t.Optional[str], n: int):
        self.label = label
        self.n = n
        self.jacobi = {}  # type: t.Dict[int, bool]
        self.integrable = {}  # type: t.Dict[int, bool]
        self.twist = None  # type: t.Optional[bool]
        self.rational = False
        self.failures = []  # type: t.List[str]
        self.notes = []  # type: t.List[str]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> t.Dict[str, t.Any]:
        return {
            'label': self.label, 'n': self.n, 'ok': self.ok,
            'jacobi': {str(k): v for k, v in sorted(self.jacobi.items())},
            'integrable': {str(k): v for k, v in sorted(self.integrable.items())},
            'twist': self.twist, 'rational': self.rational, 'failures': list(self.failures),
            'notes': list(self.notes)}


class Presentation:

    """Complex structure equations: the values d(w^k) in a (1,0) coframe.

    An optional twist 1-form lambda = f^-1 df gives meaning to twisted terms f^m.
    """

    def __init__(self, algebra: ExteriorAlgebra, d_omega: t.Sequence[Form],
                 twist: t.Optional[Form] = None, label: t.Optional[str] = None):
        if len(d_omega) != algebra.n:
            raise DimensionMismatch('expected {} structure equations, got {}'.format(
                algebra.n, len(d_omega)))
        for form in list(d_omega) + ([twist] if twist is not None else []):
            if form.algebra != algebra:
                raise DimensionMismatch('structure equation outside of the algebra')
        self.algebra = algebra
        self.d_omega = tuple(d_omega)
        self.d_omega_bar = tuple(form.conj() for form in self.d_omega)
        self.twist = twist
        self.label = label
        self._cache = {}  # type: t.Dict[t.Tuple[t.Tuple[int, ...], t.Tuple[int, ...]], Form]

    @property
    def n(self) -> int:
        return self.algebra.n

    @property
    def field(self) -> ScalarField:
        return self.algebra.field

    @property
    def params(self):
        return self.field.params

    @property
    def default_weights(self) -> t.Tuple[int, ...]:
        return (0,) if self.twist is None else (-1, 0, 1)

    def _d_letter(self, letter: int) -> Form:
        if letter < self.n:
            return self.d_omega[letter]
        return self.d_omega_bar[letter - self.n]

    def _d_monomial(self, holomorphic: t.Tuple[int, ...],
                    antiholomorphic: t.Tuple[int, ...]) -> Form:
        cache_key = (holomorphic, antiholomorphic)
        if cache_key not in self._cache:
            letters = _letters((holomorphic, antiholomorphic, 0), self.n)
            result = self.algebra.zero
            for position, letter in enumerate(letters):
                prefix = self.algebra.form({_letters_key(letters[:position], self.n): 1})
                suffix = self.algebra.form({_letters_key(letters[position + 1:], self.n): 1})
                term = prefix.wedge(self._d_letter(letter)).wedge(suffix)
                result = result - term if position % 2 else result + term
            self._cache[cache_key] = result
        return self._cache[cache_key]

    def d(self, form: Form) -> Form:
        """Exterior differential: Leibniz rule, and d(f^m a) = f^m (m lambda ^ a + da)."""
        if form.algebra != self.algebra:
            raise DimensionMismatch('form does not belong to this presentation')
        result = self.algebra.zero
        for key, value in form.items():
            holomorphic, antiholomorphic, weight = key
            image = self._d_monomial(holomorphic, antiholomorphic)
            if weight:
                if self.twist is None:
                    raise TwistWithoutLambda(
                        'term of weight {} in a presentation without twist'.format(weight))
                monomial = self.algebra.form({(holomorphic, antiholomorphic, 0): 1})
                image = image + self.twist.wedge(monomial).scale(weight)
            result = result + image.shift_weight(weight).scale(value)
        return result

    def del_(self, form: Form) -> Form:
        bidegree = form.bidegree
        if bidegree is None:
            return self.algebra.zero
        return self.d(form).component(bidegree[0] + 1, bidegree[1])

    def delbar(self, form: Form) -> Form:
        bidegree = form.bidegree
        if bidegree is None:
            return self.algebra.zero
        return self.d(form).component(bidegree[0], bidegree[1] + 1)

    def validate(self) -> ValidationReport:
        report = ValidationReport(self.label, self.n)
        for index, form in enumerate(self.d_omega, 1):
            shapes_ok = all(len(key[0]) + len(key[1]) == 2 and key[2] == 0 for key in form.keys())
            integrable = shapes_ok and not form.component(0, 2)
            report.integrable[index] = integrable
            if not shapes_ok:
                report.failures.append('d w{} is not an invariant 2-form'.format(index))
            elif not integrable:
                report.failures.append('d w{} has a nonzero (0,2) component'.format(index))
            square = self.d(form) if shapes_ok else self.algebra.zero
            report.jacobi[index] = not square
            if square:
                report.failures.append('d(d w{}) = {} is nonzero'.format(index, square))
        if self.twist is not None:
            twist = self.twist
            checks = {
                'lambda is not an invariant 1-form':
                    all(len(key[0]) + len(key[1]) == 1 and key[2] == 0 for key in twist.keys()),
                'd lambda is nonzero': not self.d(twist.weight_component(0)),
                'conj(lambda) is not -lambda': twist.conj() == -twist}
            report.twist = all(checks.values())
            report.failures.extend(message for message, ok in checks.items() if not ok)
        # coefficients are Gaussian rational functions of the parameters by construction
        report.rational = True
        if not all(self.field.is_constant(value)
                   for form in self.d_omega for _, value in form.items()):
            report.notes.append(PARAMETRIC_RATIONALITY_NOTE)
        if report.failures:
            _LOG.info('presentation %s failed validation: %s', self.label, report.failures)
        return report

    def specialize(self, substitution: Substitution) -> 'Presentation':
        """Presentation with coefficients mapped by an assignment or a locus."""
        if substitution.source != self.field:
            raise ValueError('substitution is defined on {!r}, not on {!r}'.format(
                substitution.source, self.field))
        algebra = ExteriorAlgebra(self.n, substitution.target)
        apply = substitution.apply
        twist = None if self.twist is None else self.twist.map(apply, algebra)
        return Presentation(algebra, [form.map(apply, algebra) for form in self.d_omega],
                            twist, self.label)

    def with_field(self, field: ScalarField) -> 'Presentation':
        """Same equations over a field with more parameters."""
        algebra = ExteriorAlgebra(self.n, field)
        twist = None if self.twist is None else self.twist.embed(algebra)
        return Presentation(algebra, [form.embed(algebra) for form in self.d_omega],
                            twist, self.label)

    def relabel(self, label: t.Optional[str]) -> 'Presentation':
        return Presentation(self.algebra, self.d_omega, self.twist, label)

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return self.algebra == other.algebra and self.d_omega == other.d_omega \
            and self.twist == other.twist

    __hash__ = None

    def __str__(self):
        from .unparse import unparse
        return unparse(self)

    def __repr__(self):
        return 'Presentation({!r}, n={})'.format(self.label, self.n)


def wedge(a: Form, b: Form) -> Form:
    return a.wedge(b)


def d(a: Form, presentation: Presentation) -> Form:
    return presentation.d(a)


def del_(a: Form, presentation: Presentation) -> Form:
    return presentation.del_(a)


def delbar(a: Form, presentation: Presentation) -> Form:
    return presentation.delbar(a)


def validate(presentation: Presentation) -> ValidationReport:
    return presentation.validate()
