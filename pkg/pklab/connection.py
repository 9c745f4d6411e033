"""Levi-Civita connection and curvature of invariant metrics in the basis Z_k, conj(Z_k).

Basis index A < n stands for Z_{A+1} = (e_{2A+1} - i e_{2A+2}) / 2, and n + A for its
conjugate, so that the letters of the exterior algebra are the dual basis. With the
convention d theta(A, B) = -theta([A, B]) the brackets are read off the structure equations.
"""

import logging
import typing as t

from .coeffs import Scalar, ScalarField
from .errors import NotInvariant, NotType11, SingularMetric
from .exterior import Form, Presentation, _letters, _letters_key
from .linalg import inverse

__all__ = [
    'ConnectionTable', 'CurvatureTable', 'levi_civita', 'check_parallel', 'curvature',
    'ricci', 'is_flat', 'is_ricci_flat', 'complex_metric']

_LOG = logging.getLogger(__name__)

Vector = t.List[Scalar]
Matrix = t.List[t.List[Scalar]]


def _two_form_value(form: Form, a: int, b: int) -> Scalar:
    """Value of a 2-form on basis vectors a and b."""
    n = form.algebra.n
    if a == b:
        return form.field.zero
    low, high = min(a, b), max(a, b)
    value = form.coefficient(_letters_key((low, high), n))
    return value if a < b else -value


def _j_eigenvalue(field: ScalarField, index: int, n: int) -> Scalar:
    return -field.i if index < n else field.i


def complex_metric(presentation: Presentation, metric: t.Union[Form, t.Sequence[Vector]]) \
        -> Matrix:
    """Metric g(A, B) in the complexified basis, from F via g = F(J., .) or from a real matrix."""
    field = presentation.field
    n = presentation.n
    size = 2 * n
    if isinstance(metric, Form):
        if metric.weights - {0}:
            raise NotInvariant('form {} has twisted terms'.format(metric))
        if not metric.bidegrees <= {(1, 1)}:
            raise NotType11('form {} is not of bidegree (1,1)'.format(metric))
        return [[_j_eigenvalue(field, a, n) * _two_form_value(metric, a, b) for b in range(size)]
                for a in range(size)]
    real = [[field.convert(value) for value in row] for row in metric]
    if len(real) != size or any(len(row) != size for row in real):
        raise ValueError('expected a {0}x{0} metric matrix'.format(size))
    # Z_k = (e_{2k-1} - i e_{2k}) / 2 and its conjugate
    half = field.rational(1, 2)
    change = []
    for index in range(size):
        k = index % n
        sign = -1 if index < n else 1
        vector = [field.zero] * size
        vector[2 * k] = half
        vector[2 * k + 1] = half * field.i * sign
        change.append(vector)
    result = []
    for a in range(size):
        row = []
        for b in range(size):
            total = field.zero
            for x, left in enumerate(change[a]):
                if not left:
                    continue
                for y, right in enumerate(change[b]):
                    if right and real[x][y]:
                        total = total + left * right * real[x][y]
            row.append(total)
        result.append(row)
    return result


class ConnectionTable:

    """Christoffel symbols: nabla_A B = sum over C of gamma[A, B][C] C."""

    def __init__(self, presentation: Presentation, metric: Matrix, inverse_metric: Matrix):
        self.presentation = presentation
        self.field = presentation.field
        self.n = presentation.n
        self.size = 2 * self.n
        self.metric = metric
        self.inverse_metric = inverse_metric
        self.brackets = {}  # type: t.Dict[t.Tuple[int, int], Vector]
        self.gamma = {}  # type: t.Dict[t.Tuple[int, int], Vector]
        self._compute_brackets()
        self._compute_gamma()

    @property
    def zero(self) -> Vector:
        return [self.field.zero] * self.size

    def basis_vector(self, index: int) -> Vector:
        vector = self.zero
        vector[index] = self.field.one
        return vector

    def _compute_brackets(self) -> None:
        differentials = list(self.presentation.d_omega) + list(self.presentation.d_omega_bar)
        for a in range(self.size):
            for b in range(self.size):
                self.brackets[a, b] = [-_two_form_value(differential, a, b)
                                       for differential in differentials]

    def g(self, x: Vector, y: Vector) -> Scalar:
        total = self.field.zero
        for a, left in enumerate(x):
            if not left:
                continue
            for b, right in enumerate(y):
                if right and self.metric[a][b]:
                    total = total + left * right * self.metric[a][b]
        return total

    def bracket(self, x: Vector, y: Vector) -> Vector:
        result = self.zero
        for a, left in enumerate(x):
            if not left:
                continue
            for b, right in enumerate(y):
                if not right:
                    continue
                for c, value in enumerate(self.brackets[a, b]):
                    if value:
                        result[c] = result[c] + left * right * value
        return result

    def _compute_gamma(self) -> None:
        half = self.field.rational(1, 2)
        basis = [self.basis_vector(index) for index in range(self.size)]
        pairing = {}  # type: t.Dict[t.Tuple[int, int, int], Scalar]

        def bracket_pairing(a: int, b: int, c: int) -> Scalar:
            if (a, b, c) not in pairing:
                pairing[a, b, c] = self.g(self.brackets[a, b], basis[c])
            return pairing[a, b, c]

        for a in range(self.size):
            for b in range(self.size):
                koszul = [(bracket_pairing(a, b, c) - bracket_pairing(b, c, a)
                           + bracket_pairing(c, a, b)) * half for c in range(self.size)]
                vector = self.zero
                for c, value in enumerate(koszul):
                    if not value:
                        continue
                    for d in range(self.size):
                        if self.inverse_metric[c][d]:
                            vector[d] = vector[d] + value * self.inverse_metric[c][d]
                self.gamma[a, b] = vector

    def nabla(self, a: int, vector: Vector) -> Vector:
        """Covariant derivative along basis vector a of an invariant vector field."""
        result = self.zero
        for b, value in enumerate(vector):
            if not value:
                continue
            for c, coefficient in enumerate(self.gamma[a, b]):
                if coefficient:
                    result[c] = result[c] + value * coefficient
        return result

    def nabla_along(self, x: Vector, vector: Vector) -> Vector:
        result = self.zero
        for a, value in enumerate(x):
            if value:
                result = [r + value * s for r, s in zip(result, self.nabla(a, vector))]
        return result

    def conj_vector(self, vector: Vector) -> Vector:
        conj = self.field.conj
        n = self.n
        return [conj(value) for value in vector[n:]] + [conj(value) for value in vector[:n]]

    def _conj_index(self, index: int) -> int:
        return index + self.n if index < self.n else index - self.n

    def check_torsion(self) -> bool:
        for a in range(self.size):
            for b in range(a + 1, self.size):
                torsion = [x - y - z for x, y, z in zip(
                    self.gamma[a, b], self.gamma[b, a], self.brackets[a, b])]
                if any(torsion):
                    return False
        return True

    def check_metric(self) -> bool:
        for a in range(self.size):
            for b in range(self.size):
                for c in range(b, self.size):
                    value = self.g(self.gamma[a, b], self.basis_vector(c)) \
                        + self.g(self.basis_vector(b), self.gamma[a, c])
                    if value:
                        return False
        return True

    def check_conjugation(self) -> bool:
        for a in range(self.size):
            for b in range(self.size):
                expected = self.gamma[self._conj_index(a), self._conj_index(b)]
                if self.conj_vector(self.gamma[a, b]) != expected:
                    return False
        return True

    def preserves_types(self) -> bool:
        """Check that nabla maps (1,0) vectors to (1,0) vectors."""
        n = self.n
        return all(not any(self.gamma[a, b][n:])
                   for a in range(self.size) for b in range(n))

    def symbol_text(self, a: int, b: int) -> str:
        terms = ['({})*{}'.format(self.field.format(value), _vector_name(c, self.n))
                 for c, value in enumerate(self.gamma[a, b]) if value]
        return ' + '.join(terms) or '0'

    def to_dict(self) -> t.Dict[str, t.Any]:
        n = self.n
        symbols = {}
        for (a, b), vector in sorted(self.gamma.items()):
            if any(vector):
                symbols['{},{}'.format(_vector_name(a, n), _vector_name(b, n))] = \
                    self.symbol_text(a, b)
        return {
            'label': self.presentation.label,
            'nabla': symbols,
            'torsion_free': self.check_torsion(),
            'metric': self.check_metric(),
            'conjugation': self.check_conjugation()}


def _vector_name(index: int, n: int) -> str:
    if index < n:
        return 'Z{}'.format(index + 1)
    return 'Z{}~'.format(index - n + 1)


def levi_civita(presentation: Presentation, metric: t.Union[Form, t.Sequence[Vector]]) \
        -> ConnectionTable:
    """Levi-Civita connection by the Koszul formula.

    2 g(nabla_A B, C) = g([A, B], C) - g([B, C], A) + g([C, A], B) for invariant fields.
    """
    if presentation.twist is not None:
        raise NotInvariant('presentation {} is twisted'.format(presentation.label))
    matrix = complex_metric(presentation, metric)
    inverse_matrix = inverse(presentation.field, matrix)
    if inverse_matrix is None:
        raise SingularMetric('metric on {} is degenerate'.format(presentation.label))
    connection = ConnectionTable(presentation, matrix, inverse_matrix)
    _LOG.debug('Levi-Civita connection on %s: %i nonzero symbols', presentation.label,
               sum(1 for vector in connection.gamma.values() if any(vector)))
    return connection


def _nabla_letter(connection: ConnectionTable, a: int, letter: int) -> Form:
    """nabla_A theta^C = -sum over B of gamma[A, B][C] theta^B."""
    algebra = connection.presentation.algebra
    result = algebra.zero
    for b in range(connection.size):
        value = connection.gamma[a, b][letter]
        if value:
            result = result - algebra.letter(b).scale(value)
    return result


def _nabla_form(connection: ConnectionTable, a: int, form: Form) -> Form:
    algebra = form.algebra
    n = algebra.n
    result = algebra.zero
    for key, value in form.items():
        letters = _letters(key, n)
        for position, letter in enumerate(letters):
            prefix = algebra.form({_letters_key(letters[:position], n): 1})
            suffix = algebra.form({_letters_key(letters[position + 1:], n): 1})
            derivative = prefix.wedge(_nabla_letter(connection, a, letter)).wedge(suffix)
            result = result + derivative.scale(value)
    return result


def check_parallel(presentation: Presentation, connection: ConnectionTable,
                   tensor: t.Union[str, Form]) -> bool:
    """Check nabla J = 0 (tensor 'J') or nabla of an invariant form is zero."""
    if isinstance(tensor, str):
        if tensor != 'J':
            raise ValueError('unknown tensor "{}"'.format(tensor))
        # (nabla_A J) B = sum over D of gamma[A, B][D] (j_B - j_D) D
        return connection.preserves_types() and all(
            not any(connection.gamma[a, b][:presentation.n])
            for a in range(connection.size) for b in range(presentation.n, connection.size))
    if tensor.weights - {0}:
        raise NotInvariant('form {} has twisted terms'.format(tensor))
    return all(not _nabla_form(connection, a, tensor) for a in range(connection.size))


class CurvatureTable:

    """Riemann tensor R(A, B, C, D) = g(R(A, B) C, D), computed lazily.

    R(A, B) C = nabla_A nabla_B C - nabla_B nabla_A C - nabla_[A, B] C.
    """

    def __init__(self, connection: ConnectionTable):
        self.connection = connection
        self.field = connection.field
        self.size = connection.size
        self._vectors = {}  # type: t.Dict[t.Tuple[int, int, int], Vector]

    def vector(self, a: int, b: int, c: int) -> Vector:
        key = (a, b, c)
        if key not in self._vectors:
            connection = self.connection
            gamma_b_c = connection.gamma[b, c]
            gamma_a_c = connection.gamma[a, c]
            first = connection.nabla(a, gamma_b_c)
            second = connection.nabla(b, gamma_a_c)
            third = connection.nabla_along(connection.brackets[a, b], connection.basis_vector(c))
            self._vectors[key] = [x - y - z for x, y, z in zip(first, second, third)]
        return self._vectors[key]

    def component(self, a: int, b: int, c: int, d: int) -> Scalar:
        metric = self.connection.metric
        total = self.field.zero
        for index, value in enumerate(self.vector(a, b, c)):
            if value and metric[index][d]:
                total = total + value * metric[index][d]
        return total

    def is_zero(self) -> bool:
        return all(not any(self.vector(a, b, c)) for a in range(self.size)
                   for b in range(a + 1, self.size) for c in range(self.size))

    def check_symmetries(self) -> bool:
        """Antisymmetries, pair symmetry and the first Bianchi identity."""
        size = self.size
        for a in range(size):
            for b in range(size):
                for c in range(size):
                    bianchi = [x + y + z for x, y, z in zip(
                        self.vector(a, b, c), self.vector(b, c, a), self.vector(c, a, b))]
                    if any(bianchi):
                        return False
                    if any(x + y for x, y in zip(self.vector(a, b, c), self.vector(b, a, c))):
                        return False
                    for d in range(size):
                        value = self.component(a, b, c, d)
                        if value + self.component(a, b, d, c) \
                                or value != self.component(c, d, a, b):
                            return False
        return True

    def nonzero_components(self) -> t.Dict[t.Tuple[int, int, int, int], Scalar]:
        size = self.size
        result = {}
        for a in range(size):
            for b in range(a + 1, size):
                for c in range(size):
                    for d in range(c + 1, size):
                        value = self.component(a, b, c, d)
                        if value:
                            result[a, b, c, d] = value
        return result

    def to_dict(self) -> t.Dict[str, t.Any]:
        n = self.connection.n
        return {'components': {
            ','.join(_vector_name(index, n) for index in key): self.field.format(value)
            for key, value in self.nonzero_components().items()}}


def curvature(presentation: Presentation, connection: ConnectionTable) -> CurvatureTable:
    if presentation != connection.presentation:
        raise ValueError('connection belongs to {}, not to {}'.format(
            connection.presentation.label, presentation.label))
    return CurvatureTable(connection)


def ricci(table: CurvatureTable, metric: t.Optional[Matrix] = None) -> Matrix:
    """Ricci tensor Ric(B, C) = trace of A to R(A, B) C.

    Without a metric the trace is taken directly on the coordinate of R(A, B) C along A.
    With a metric it is the g-trace of R(A, B, C, D) with the inverse matrix; both agree for
    the metric of the connection.
    """
    size = table.size
    field = table.field
    inverse_metric = None
    if metric is not None:
        inverse_metric = inverse(field, metric)
        if inverse_metric is None:
            raise SingularMetric('metric is degenerate')
    result = []
    for b in range(size):
        row = []
        for c in range(size):
            total = field.zero
            for a in range(size):
                if inverse_metric is None:
                    value = table.vector(a, b, c)[a]
                    if value:
                        total = total + value
                    continue
                for d in range(size):
                    if inverse_metric[d][a]:
                        total = total + table.component(a, b, c, d) * inverse_metric[d][a]
            row.append(total)
        result.append(row)
    return result


def is_flat(table: CurvatureTable) -> bool:
    return table.is_zero()


def is_ricci_flat(table: CurvatureTable) -> bool:
    return not any(any(row) for row in ricci(table))
