"""Real Lie algebras underlying complex structure equations: brackets, series, center."""

import logging
import typing as t

from .coeffs import Scalar, ScalarField, Substitution
from .errors import ParametricInput
from .exterior import ExteriorAlgebra, Form, Presentation, rewrite
from .linalg import Elimination, annihilator, span

__all__ = [
    'RealAlgebra', 'SeriesReport', 'realize', 'lower_central_series', 'nilpotency', 'center',
    'ascending_central_series', 'j_series', 'product', 'torus']

_LOG = logging.getLogger(__name__)

Vector = t.List[Scalar]


def real_coframe(presentation: Presentation,
                 real_algebra: ExteriorAlgebra) -> t.List[Form]:
    """Images of w^k and w~^k as forms in the real coframe e^1..e^2n of another algebra.

    The real coframe is stored in the holomorphic letters of an algebra on 2n generators,
    with w^k = e^{2k-1} + i e^{2k}.
    """
    n = presentation.n
    i = real_algebra.field.i
    holomorphic = [real_algebra.omega(2 * k - 1) + real_algebra.omega(2 * k).scale(i)
                   for k in range(1, n + 1)]
    antiholomorphic = [real_algebra.omega(2 * k - 1) - real_algebra.omega(2 * k).scale(i)
                       for k in range(1, n + 1)]
    return holomorphic + antiholomorphic


class RealAlgebra:

    """Real Lie algebra on the basis e_1..e_2n dual to the real coframe.

    ``brackets[a, b]`` for a < b is the coordinate vector of [e_a, e_b] (0-based indices).
    ``j_matrix[a][b]`` is the e_a coordinate of J e_b, where J e_{2k-1} = -e_{2k} and
    J e_{2k} = e_{2k-1}.
    """

    def __init__(self, field: ScalarField, dimension: int,
                 brackets: t.Mapping[t.Tuple[int, int], Vector],
                 j_matrix: t.Optional[t.Sequence[Vector]] = None, label: t.Optional[str] = None):
        self.field = field
        self.dimension = dimension
        self.brackets = {key: list(value) for key, value in brackets.items()
                         if any(value)}
        self.j_matrix = None if j_matrix is None else [list(row) for row in j_matrix]
        self.label = label

    @property
    def zero(self) -> Vector:
        return [self.field.zero] * self.dimension

    def basis_vector(self, index: int) -> Vector:
        vector = self.zero
        vector[index] = self.field.one
        return vector

    def structure_constant(self, a: int, b: int) -> Vector:
        if a == b:
            return self.zero
        if a < b:
            return self.brackets.get((a, b), self.zero)
        return [-value for value in self.brackets.get((b, a), self.zero)]

    def bracket(self, x: Vector, y: Vector) -> Vector:
        result = self.zero
        for (a, b), value in self.brackets.items():
            coefficient = x[a] * y[b] - x[b] * y[a]
            if not coefficient:
                continue
            result = [r + coefficient * v if v else r for r, v in zip(result, value)]
        return result

    def apply_j(self, x: Vector) -> Vector:
        if self.j_matrix is None:
            raise ValueError('algebra {} has no complex structure'.format(self.label))
        return [sum((row[b] * x[b] for b in range(self.dimension) if row[b] and x[b]),
                    self.field.zero) for row in self.j_matrix]

    def check_jacobi(self) -> bool:
        for a in range(self.dimension):
            for b in range(a + 1, self.dimension):
                for c in range(b + 1, self.dimension):
                    x, y, z = (self.basis_vector(_) for _ in (a, b, c))
                    total = [p + q + r for p, q, r in zip(
                        self.bracket(x, self.bracket(y, z)),
                        self.bracket(y, self.bracket(z, x)),
                        self.bracket(z, self.bracket(x, y)))]
                    if any(total):
                        _LOG.info('Jacobi identity fails on e%i, e%i, e%i', a + 1, b + 1, c + 1)
                        return False
        return True

    def is_abelian(self) -> bool:
        return not self.brackets

    def __repr__(self):
        return 'RealAlgebra({!r}, dimension={})'.format(self.label, self.dimension)


class SeriesReport:

    """Dimensions of a monotone series of subspaces, with bases of its terms."""

    def __init__(self, kind: str, dimensions: t.Sequence[int], bases: t.Sequence[t.List[Vector]],
                 total: int, tag: str):
        self.kind = kind
        self.dimensions = list(dimensions)
        self.bases = list(bases)
        self.total = total
        self.tag = tag

    @property
    def step(self) -> int:
        """Index of the first term after which the series is constant."""
        for index in range(len(self.dimensions) - 1):
            if self.dimensions[index] == self.dimensions[index + 1]:
                return index
        return len(self.dimensions) - 1

    @property
    def limit(self) -> int:
        return self.dimensions[-1]

    def to_dict(self) -> t.Dict[str, t.Any]:
        return {'kind': self.kind, 'dimensions': self.dimensions, 'step': self.step,
                'tag': self.tag}

    def __repr__(self):
        return 'SeriesReport({!r}, {}, {!r})'.format(self.kind, self.dimensions, self.tag)


def realize(presentation: Presentation,
            assignment: t.Optional[Substitution] = None) -> RealAlgebra:
    """Real Lie algebra dual to the structure equations: de(x, y) = -e([x, y])."""
    if assignment is not None:
        presentation = presentation.specialize(assignment)
    field = presentation.field
    if field.symbols:
        raise ParametricInput('presentation {} depends on parameters {}; assign them first'
                              .format(presentation.label, ', '.join(field.symbols)))
    n = presentation.n
    dimension = 2 * n
    real_algebra = ExteriorAlgebra(dimension, field)
    images = real_coframe(presentation, real_algebra)
    half = field.rational(1, 2)
    brackets = {}  # type: t.Dict[t.Tuple[int, int], Vector]
    for k, form in enumerate(presentation.d_omega):
        conjugate = presentation.d_omega_bar[k]
        real_parts = ((form + conjugate).scale(half),
                      (form - conjugate).scale(half / field.i))
        for offset, part in enumerate(real_parts):
            target = 2 * k + offset
            real_part = rewrite(part, images, real_algebra)
            for (letters, antiletters, weight), value in real_part.items():
                assert not antiletters and not weight, (letters, antiletters, weight)
                if not field.is_real(value):
                    raise ValueError('structure constants of {} are not real'.format(
                        presentation.label))
                a, b = (index - 1 for index in letters)
                vector = brackets.setdefault((a, b), [field.zero] * dimension)
                vector[target] = -value
    j_matrix = [[field.zero] * dimension for _ in range(dimension)]
    for k in range(n):
        j_matrix[2 * k + 1][2 * k] = -field.one
        j_matrix[2 * k][2 * k + 1] = field.one
    algebra = RealAlgebra(field, dimension, brackets, j_matrix, presentation.label)
    _LOG.debug('realized %s: %i nonzero brackets', presentation.label, len(algebra.brackets))
    return algebra


def _span(algebra: RealAlgebra, vectors: t.Sequence[Vector]) -> t.List[Vector]:
    return span(algebra.field, [v for v in vectors if any(v)], algebra.dimension)


def _brackets_with_all(algebra: RealAlgebra, subspace: t.Sequence[Vector]) -> t.List[Vector]:
    return [algebra.bracket(algebra.basis_vector(a), v)
            for a in range(algebra.dimension) for v in subspace]


def lower_central_series(algebra: RealAlgebra) -> SeriesReport:
    """Series g^1 = g, g^{k+1} = [g, g^k] until it stabilizes."""
    current = [algebra.basis_vector(a) for a in range(algebra.dimension)]
    bases = [current]
    dimensions = [algebra.dimension]
    while True:
        current = _span(algebra, _brackets_with_all(algebra, current))
        if len(current) == dimensions[-1]:
            break
        bases.append(current)
        dimensions.append(len(current))
        if not current:
            break
    tag = 'nilpotent' if dimensions[-1] == 0 else 'non-nilpotent'
    return SeriesReport('lower central', dimensions, bases, algebra.dimension, tag)


def nilpotency(algebra: RealAlgebra) -> t.Tuple[bool, t.Optional[int]]:
    """Nilpotency and step: the first s with g^{s+1} = 0."""
    series = lower_central_series(algebra)
    if series.limit:
        return False, None
    return True, max(len(series.dimensions) - 1, 1)


def _preimage(algebra: RealAlgebra, subspace: t.Sequence[Vector],
              with_j: bool = False) -> t.List[Vector]:
    """Vectors x with [x, g] in a subspace (and [Jx, g] too if requested)."""
    field = algebra.field
    functionals = annihilator(field, subspace, algebra.dimension) if subspace \
        else [algebra.basis_vector(a) for a in range(algebra.dimension)]
    sources = [algebra.basis_vector(a) for a in range(algebra.dimension)]
    transforms = [sources]
    if with_j:
        transforms.append([algebra.apply_j(v) for v in sources])
    rows = []
    for images in transforms:
        for b in range(algebra.dimension):
            brackets = [algebra.bracket(image, algebra.basis_vector(b)) for image in images]
            for functional in functionals:
                row = {}
                for a, vector in enumerate(brackets):
                    value = sum((p * q for p, q in zip(functional, vector) if p and q),
                                field.zero)
                    if value:
                        row[a] = value
                if row:
                    rows.append(row)
    return Elimination(field, rows, algebra.dimension).nullspace()


def center(algebra: RealAlgebra) -> t.List[Vector]:
    return _preimage(algebra, [])


def _ascending(algebra: RealAlgebra, kind: str, with_j: bool) -> SeriesReport:
    current = []  # type: t.List[Vector]
    bases = [current]
    dimensions = [0]
    while True:
        current = _preimage(algebra, current, with_j)
        if len(current) == dimensions[-1]:
            break
        bases.append(current)
        dimensions.append(len(current))
        if len(current) == algebra.dimension:
            break
    if dimensions[-1] == algebra.dimension:
        tag = 'nilpotent'
    elif with_j and dimensions[-1] == 0:
        tag = 'strongly-non-nilpotent'
    elif with_j:
        tag = 'weakly-non-nilpotent'
    else:
        tag = 'non-nilpotent'
    return SeriesReport(kind, dimensions, bases, algebra.dimension, tag)


def ascending_central_series(algebra: RealAlgebra) -> SeriesReport:
    """Series g_0 = 0, g_k = {x : [x, g] in g_{k-1}}."""
    return _ascending(algebra, 'ascending central', with_j=False)


def _is_j_invariant(algebra: RealAlgebra, basis: t.Sequence[Vector]) -> bool:
    elimination = Elimination(algebra.field, [
        {a: v for a, v in enumerate(vector) if v} for vector in basis], algebra.dimension)
    return all(elimination.contains({a: v for a, v in enumerate(algebra.apply_j(vector)) if v})
               for vector in basis)


def j_series(algebra: RealAlgebra) -> SeriesReport:
    """Ascending J-compatible series a_0 = 0, a_k = {x : [x, g], [Jx, g] in a_{k-1}}.

    Tag is nilpotent if it reaches g, strongly-non-nilpotent if a_1 = 0, and
    weakly-non-nilpotent otherwise.
    """
    report = _ascending(algebra, 'ascending J-compatible', with_j=True)
    for index, basis in enumerate(report.bases):
        if len(basis) % 2 or not _is_j_invariant(algebra, basis):
            raise AssertionError('term {} of the J-compatible series of {} is not J-invariant'
                                 .format(index, algebra.label))
    _LOG.info('J-series of %s: %s, %s', algebra.label, report.dimensions, report.tag)
    return report


def product(first: Presentation, second: Presentation) -> Presentation:
    """Direct sum of structure equations, generators of the second shifted by n1."""
    if first.twist is not None and second.twist is not None:
        raise ValueError('cannot multiply two twisted presentations')
    shared = set(first.field.symbols).intersection(second.field.symbols)
    if shared:
        raise ValueError('parameters {} declared in both factors'.format(sorted(shared)))
    relations = dict(first.field.relations)
    relations.update(second.field.relations)
    field = ScalarField(first.field.params + second.field.params, relations)
    n = first.n + second.n
    algebra = ExteriorAlgebra(n, field)
    shift = first.n

    def shifted(form: Form, offset: int) -> Form:
        return algebra.form({
            (tuple(i + offset for i in holomorphic), tuple(j + offset for j in antiholomorphic),
             weight): value for (holomorphic, antiholomorphic, weight), value in form.items()})

    d_omega = [shifted(form, 0) for form in first.d_omega] \
        + [shifted(form, shift) for form in second.d_omega]
    twist = None
    if first.twist is not None:
        twist = shifted(first.twist, 0)
    elif second.twist is not None:
        twist = shifted(second.twist, shift)
    label = None
    if first.label and second.label:
        label = '{}x{}'.format(first.label, second.label)
    return Presentation(algebra, d_omega, twist, label)


def torus(n: int) -> Presentation:
    """Abelian presentation with all d w^k = 0."""
    algebra = ExteriorAlgebra(n, ScalarField())
    return Presentation(algebra, [algebra.zero] * n, None, 'torus-{}'.format(n))
