"""Exact linear algebra over a scalar field, with logging of pivots assumed nonzero."""

import logging
import typing as t

import ordered_set

from .coeffs import Scalar, ScalarField
from .errors import SingularMetric

__all__ = [
    'Row', 'Elimination', 'sparse_rows', 'rank', 'nullspace', 'span', 'annihilator',
    'inverse', 'determinant', 'inertia', 'mat_mul', 'transpose']

_LOG = logging.getLogger(__name__)

Row = t.Dict[int, Scalar]
"""Sparse row: column index to nonzero scalar."""


def sparse_rows(matrix: t.Sequence[t.Sequence[Scalar]]) -> t.List[Row]:
    return [{column: value for column, value in enumerate(row) if value} for row in matrix]


def _subtract_multiple(target: Row, factor: Scalar, row: Row) -> None:
    for column, value in row.items():
        if column in target:
            updated = target[column] - factor * value
        else:
            updated = -(factor * value)
        if updated:
            target[column] = updated
        else:
            target.pop(column, None)


class Elimination:

    """Reduced row echelon form computed column by column.

    Over a field with parameters every pivot is assumed nonzero; non-constant pivots are
    recorded in pivot_log as monic numerators. The reduced rows are valid exactly on the
    generic branch where none of the logged polynomials vanishes.
    """

    def __init__(self, field: ScalarField, rows: t.Iterable[t.Mapping[int, Scalar]] = (),
                 columns: t.Optional[int] = None):
        self.field = field
        self.rows = []  # type: t.List[Row]
        self.pivots = []  # type: t.List[int]
        self.pivot_log = ordered_set.OrderedSet()
        pending = [dict(row) for row in rows if row]
        if columns is None:
            columns = 1 + max((max(row) for row in pending), default=-1)
        self.columns = columns
        self._eliminate(pending)

    def _record(self, value: Scalar) -> None:
        if not self.field.is_constant(value):
            pivot = self.field.pivot_polynomial(value)
            if pivot not in self.pivot_log:
                _LOG.debug('assuming pivot %s is nonzero', self.field.format(pivot))
            self.pivot_log.add(pivot)

    def _use_pivot(self, row: Row, column: int) -> None:
        value = row[column]
        self._record(value)
        inverse_value = self.field.one / value
        pivot_row = {c: v * inverse_value for c, v in row.items()}
        pivot_row[column] = self.field.one
        for other in self.rows:
            if column in other:
                _subtract_multiple(other, other[column], pivot_row)
        self.rows.append(pivot_row)
        self.pivots.append(column)

    def _eliminate(self, pending: t.List[Row]) -> None:
        for column in range(self.columns):
            candidates = [index for index, row in enumerate(pending) if column in row]
            if not candidates:
                continue
            chosen = min(candidates,
                         key=lambda index: self.field.complexity(pending[index][column]))
            row = pending.pop(chosen)
            self._use_pivot(row, column)
            pivot_row = self.rows[-1]
            for other in pending:
                if column in other:
                    _subtract_multiple(other, other[column], pivot_row)
            pending = [other for other in pending if other]
            if not pending:
                break
        _LOG.debug('eliminated to rank %i over %i columns', len(self.rows), self.columns)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: t.Mapping[int, Scalar]) -> Row:
        """Remainder of a row modulo the row space."""
        remainder = {column: value for column, value in row.items() if value}
        for pivot_row, column in zip(self.rows, self.pivots):
            if column in remainder:
                _subtract_multiple(remainder, remainder[column], pivot_row)
        return remainder

    def contains(self, row: t.Mapping[int, Scalar]) -> bool:
        return not self.reduce(row)

    def add_row(self, row: t.Mapping[int, Scalar]) -> bool:
        """Extend the row space; return False if the row was already in it."""
        remainder = self.reduce(row)
        if not remainder:
            return False
        column = min(remainder, key=lambda c: (self.field.complexity(remainder[c]), c))
        self.columns = max(self.columns, 1 + max(remainder))
        self._use_pivot(remainder, column)
        return True

    def free_columns(self) -> t.List[int]:
        pivots = set(self.pivots)
        return [column for column in range(self.columns) if column not in pivots]

    def nullspace(self) -> t.List[t.List[Scalar]]:
        """Basis of solutions x of rows * x = 0, one vector per free column."""
        basis = []
        for free in self.free_columns():
            vector = [self.field.zero] * self.columns
            vector[free] = self.field.one
            for row, column in zip(self.rows, self.pivots):
                if free in row:
                    vector[column] = -row[free]
            basis.append(vector)
        return basis

    def dense_rows(self) -> t.List[t.List[Scalar]]:
        zero = self.field.zero
        return [[row.get(column, zero) for column in range(self.columns)] for row in self.rows]


def rank(field: ScalarField, matrix: t.Sequence[t.Sequence[Scalar]]) -> int:
    return Elimination(field, sparse_rows(matrix)).rank


def nullspace(field: ScalarField, matrix: t.Sequence[t.Sequence[Scalar]],
              columns: int) -> t.List[t.List[Scalar]]:
    return Elimination(field, sparse_rows(matrix), columns).nullspace()


def span(field: ScalarField, vectors: t.Sequence[t.Sequence[Scalar]],
         dimension: int) -> t.List[t.List[Scalar]]:
    """Reduced basis of the span of given vectors."""
    return Elimination(field, sparse_rows(vectors), dimension).dense_rows()


def annihilator(field: ScalarField, vectors: t.Sequence[t.Sequence[Scalar]],
                dimension: int) -> t.List[t.List[Scalar]]:
    """Basis of linear functionals vanishing on given vectors."""
    return nullspace(field, vectors, dimension)


def transpose(matrix: t.Sequence[t.Sequence[Scalar]]) -> t.List[t.List[Scalar]]:
    return [list(column) for column in zip(*matrix)]


def mat_mul(field: ScalarField, left: t.Sequence[t.Sequence[Scalar]],
            right: t.Sequence[t.Sequence[Scalar]]) -> t.List[t.List[Scalar]]:
    columns = transpose(right)
    result = []
    for row in left:
        result_row = []
        for column in columns:
            total = field.zero
            for a, b in zip(row, column):
                if a and b:
                    total = total + a * b
            result_row.append(total)
        result.append(result_row)
    return result


def inverse(field: ScalarField,
            matrix: t.Sequence[t.Sequence[Scalar]]) -> t.Optional[t.List[t.List[Scalar]]]:
    """Inverse of a square matrix, or None if it is singular."""
    size = len(matrix)
    augmented = []
    for index, row in enumerate(matrix):
        sparse = {column: value for column, value in enumerate(row) if value}
        sparse[size + index] = field.one
        augmented.append(sparse)
    elimination = Elimination(field, augmented, 2 * size)
    if elimination.rank < size or any(column >= size for column in elimination.pivots):
        return None
    result = [None] * size  # type: t.List[t.Any]
    for row, column in zip(elimination.rows, elimination.pivots):
        result[column] = [row.get(size + j, field.zero) for j in range(size)]
    return result


def determinant(field: ScalarField, matrix: t.Sequence[t.Sequence[Scalar]]) -> Scalar:
    """Determinant by Gaussian elimination with row swaps."""
    rows = [list(row) for row in matrix]
    size = len(rows)
    result = field.one
    for column in range(size):
        candidates = [index for index in range(column, size) if rows[index][column]]
        if not candidates:
            return field.zero
        chosen = min(candidates, key=lambda index: field.complexity(rows[index][column]))
        if chosen != column:
            rows[column], rows[chosen] = rows[chosen], rows[column]
            result = -result
        pivot = rows[column][column]
        result = result * pivot
        for index in range(column + 1, size):
            factor = rows[index][column]
            if not factor:
                continue
            factor = factor / pivot
            rows[index] = [a - factor * b if b else a for a, b in zip(rows[index], rows[column])]
    return result


def inertia(field: ScalarField, matrix: t.Sequence[t.Sequence[Scalar]]) -> t.Tuple[int, int]:
    """Numbers of positive and negative squares of a real symmetric constant matrix.

    Diagonalizes by congruence; a zero diagonal is repaired by adding a row and column with
    a nonzero off-diagonal entry.
    """
    rows = [[field.constant(value) for value in row] for row in matrix]
    positive = negative = 0
    while rows:
        size = len(rows)
        pivot = next((index for index in range(size) if rows[index][index]), None)
        if pivot is None:
            pair = next(((i, j) for i in range(size) for j in range(size) if rows[i][j]), None)
            if pair is None:
                raise SingularMetric('matrix has a {}-dimensional radical'.format(size))
            i, j = pair
            rows[i] = [a + b for a, b in zip(rows[i], rows[j])]
            for row in rows:
                row[i] = row[i] + row[j]
            pivot = i
        value = rows[pivot][pivot]
        if value.y:
            raise ValueError('matrix is not real')
        if value.x > 0:
            positive += 1
        else:
            negative += 1
        remaining = [index for index in range(size) if index != pivot]
        rows = [[rows[a][b] - rows[a][pivot] * rows[pivot][b] / value
                 if rows[a][pivot] and rows[pivot][b] else rows[a][b]
                 for b in remaining] for a in remaining]
    return positive, negative
