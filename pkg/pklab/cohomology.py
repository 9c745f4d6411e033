"""Cohomology of the invariant complex: de Rham, Dolbeault, Bott-Chern and Aeppli.

Dimensions are those of the complex of invariant forms (with twisted sectors when the
presentation has a twist); they agree with manifold cohomology only where a symmetrization
or Nomizu-type theorem applies, which is not computed here.
"""

import enum
import itertools
import logging
import typing as t

import ordered_set

from .coeffs import Assignment, Scalar, Substitution
from .exterior import Form, Key, Presentation
from .linalg import Elimination

__all__ = [
    'Theory', 'CohomologyTable', 'ProbeReport', 'DualityReport', 'cohomology', 'dimensions',
    'delta_k', 'upper_semicontinuity_probe', 'duality_check', 'origin_assignment']

_LOG = logging.getLogger(__name__)

INVARIANT_NOTE = 'invariant complex'


class Theory(enum.Enum):

    """Cohomology theory of the invariant complex."""

    DE_RHAM = 'deRham'
    DOLBEAULT = 'Dolbeault'
    BOTT_CHERN = 'BottChern'
    AEPPLI = 'Aeppli'

    @classmethod
    def from_text(cls, text: str) -> 'Theory':
        key = text.replace('-', '').replace('_', '').lower()
        if key not in _THEORY_NAMES:
            raise ValueError('unknown cohomology theory "{}"; known: {}'.format(
                text, ', '.join(theory.value for theory in cls)))
        return _THEORY_NAMES[key]


_THEORY_NAMES = {
    'derham': Theory.DE_RHAM, 'dr': Theory.DE_RHAM,
    'dolbeault': Theory.DOLBEAULT, 'dol': Theory.DOLBEAULT,
    'bottchern': Theory.BOTT_CHERN, 'bc': Theory.BOTT_CHERN,
    'aeppli': Theory.AEPPLI, 'a': Theory.AEPPLI}


class CohomologyTable:

    """Dimension and representatives of one cohomology space."""

    def __init__(self, theory: Theory, degree: t.Union[int, t.Tuple[int, int]],
                 presentation: Presentation, context: t.Optional[str] = None):
        self.theory = theory
        self.degree = degree
        self.presentation = presentation
        self.context = context
        self.representatives = []  # type: t.List[Form]
        self.pivots = ordered_set.OrderedSet()
        self.ranks = {}  # type: t.Dict[str, int]
        self.by_weight = {}  # type: t.Dict[int, int]
        self.notes = [INVARIANT_NOTE]

    @property
    def dimension(self) -> int:
        return len(self.representatives)

    def to_dict(self) -> t.Dict[str, t.Any]:
        field = self.presentation.field
        key = 'degree' if isinstance(self.degree, int) else 'bidegree'
        return {
            'theory': self.theory.value,
            key: self.degree if isinstance(self.degree, int) else list(self.degree),
            'dimension': self.dimension,
            'context': self.context or 'generic',
            'pivots': [field.format(pivot) for pivot in self.pivots],
            'representatives': [str(form) for form in self.representatives],
            'by_weight': {str(weight): value for weight, value in sorted(self.by_weight.items())},
            'notes': list(self.notes)}

    def __repr__(self):
        return 'CohomologyTable({}, {}, dimension={})'.format(
            self.theory.value, self.degree, self.dimension)


class _Complex:

    """Matrices of d, del, delbar and del delbar between spaces of monomials."""

    def __init__(self, presentation: Presentation):
        self.presentation = presentation
        self.algebra = presentation.algebra
        self.field = presentation.field
        self.pivots = ordered_set.OrderedSet()

    def bidegree_keys(self, p: int, q: int, weight: int) -> t.List[Key]:
        n = self.algebra.n
        if not (0 <= p <= n and 0 <= q <= n):
            return []
        return self.algebra.keys(p, q, weight)

    def degree_keys(self, degree: int, weight: int) -> t.List[Key]:
        if not 0 <= degree <= 2 * self.algebra.n:
            return []
        return self.algebra.degree_keys(degree, weight)

    def apply(self, operator: str, form: Form) -> Form:
        presentation = self.presentation
        if operator == 'd':
            return presentation.d(form)
        if operator == 'del':
            return presentation.del_(form)
        if operator == 'delbar':
            return presentation.delbar(form)
        if operator == 'deldelbar':
            return presentation.del_(presentation.delbar(form))
        raise ValueError('unknown operator {}'.format(operator))

    def images(self, operator: str, keys: t.Sequence[Key]) -> t.List[Form]:
        return [self.apply(operator, self.algebra.monomial(key)) for key in keys]

    def _eliminate(self, rows, columns: int) -> Elimination:
        elimination = Elimination(self.field, rows, columns)
        self.pivots.update(elimination.pivot_log)
        return elimination

    def kernel(self, operators: t.Sequence[str], keys: t.Sequence[Key]) -> t.List[Form]:
        """Forms in the span of keys killed by all operators."""
        rows = {}  # type: t.Dict[t.Tuple[str, Key], t.Dict[int, Scalar]]
        for operator in operators:
            for column, image in enumerate(self.images(operator, keys)):
                for key, value in image.items():
                    rows.setdefault((operator, key), {})[column] = value
        elimination = self._eliminate(list(rows.values()), len(keys))
        _LOG.debug('kernel of %s on %i monomials: rank %i', '+'.join(operators), len(keys),
                   elimination.rank)
        return [self.algebra.form({keys[j]: v for j, v in enumerate(vector) if v})
                for vector in elimination.nullspace()]

    def image_rows(self, operator: str, keys: t.Sequence[Key],
                   index: t.Mapping[Key, int]) -> t.List[t.Dict[int, Scalar]]:
        rows = []
        for image in self.images(operator, keys):
            row = {index[key]: value for key, value in image.items() if key in index}
            assert len(row) == len(image), (operator, image)
            if row:
                rows.append(row)
        return rows

    def quotient(self, kernel: t.Sequence[Form], image_rows: t.Sequence[t.Dict[int, Scalar]],
                 keys: t.Sequence[Key], candidates: t.Optional[t.Sequence[Form]] = None) \
            -> t.Tuple[t.List[Form], int, int]:
        """Representatives of kernel modulo the span of image rows."""
        index = {key: position for position, key in enumerate(keys)}
        elimination = self._eliminate(image_rows, len(keys))
        image_rank = elimination.rank
        target = len(kernel) - image_rank
        representatives = []
        for form in (kernel if candidates is None else candidates):
            if len(representatives) == target:
                break
            if elimination.add_row({index[key]: value for key, value in form.items()}):
                representatives.append(form)
        self.pivots.update(elimination.pivot_log)
        return representatives, len(kernel), image_rank


def _context_field(presentation: Presentation, context: t.Optional[Substitution]) \
        -> t.Tuple[Presentation, t.Optional[str]]:
    if context is None:
        return presentation, None
    return presentation.specialize(context), context.describe()


def _real_candidates(kernel: t.Sequence[Form]) -> t.List[Form]:
    candidates = []
    for form in kernel:
        conjugate = form.conj()
        half = form.field.rational(1, 2)
        candidates.append((form + conjugate).scale(half))
        candidates.append((form - conjugate).scale(half / form.field.i))
    return [form for form in candidates if form]


def cohomology(presentation: Presentation, theory: Theory,
               degree: t.Union[int, t.Tuple[int, int]],
               context: t.Optional[Substitution] = None,
               weights: t.Optional[t.Sequence[int]] = None) -> CohomologyTable:
    """Cohomology space of the invariant complex in a degree (de Rham) or bidegree.

    The context is None for generic parameters, or an assignment or locus substitution.
    Generic results hold off the zero set of the logged pivots.
    """
    theory = Theory(theory)
    presentation, description = _context_field(presentation, context)
    if weights is None:
        weights = presentation.default_weights
    complex_ = _Complex(presentation)
    table = CohomologyTable(theory, degree, presentation, description)
    if presentation.twist is not None and set(weights) != {0}:
        table.notes.append('twisted sectors {}'.format(', '.join(str(w) for w in weights)))
    for weight in weights:
        if theory is Theory.DE_RHAM:
            if not isinstance(degree, int):
                raise ValueError('de Rham cohomology is indexed by a degree, got {}'.format(degree))
            keys = complex_.degree_keys(degree, weight)
            kernel = complex_.kernel(['d'], keys)
            index = {key: position for position, key in enumerate(keys)}
            rows = complex_.image_rows('d', complex_.degree_keys(degree - 1, weight), index)
            symmetric = set(weights) == {-w for w in weights}
            candidates = _real_candidates(kernel) if symmetric and weight == 0 else None
            representatives, kernel_dim, image_rank = complex_.quotient(
                kernel, rows, keys, candidates)
        else:
            if isinstance(degree, int):
                raise ValueError('{} cohomology is indexed by a bidegree'.format(theory.value))
            p, q = degree
            keys = complex_.bidegree_keys(p, q, weight)
            index = {key: position for position, key in enumerate(keys)}
            if theory is Theory.BOTT_CHERN:
                kernel = complex_.kernel(['del', 'delbar'], keys)
                rows = complex_.image_rows(
                    'deldelbar', complex_.bidegree_keys(p - 1, q - 1, weight), index)
            elif theory is Theory.AEPPLI:
                kernel = complex_.kernel(['deldelbar'], keys)
                rows = complex_.image_rows('del', complex_.bidegree_keys(p - 1, q, weight), index) \
                    + complex_.image_rows('delbar', complex_.bidegree_keys(p, q - 1, weight), index)
            else:
                kernel = complex_.kernel(['delbar'], keys)
                rows = complex_.image_rows(
                    'delbar', complex_.bidegree_keys(p, q - 1, weight), index)
            representatives, kernel_dim, image_rank = complex_.quotient(kernel, rows, keys)
        table.representatives.extend(representatives)
        table.by_weight[weight] = len(representatives)
        table.ranks['kernel{:+d}'.format(weight) if weight else 'kernel'] = kernel_dim
        table.ranks['image{:+d}'.format(weight) if weight else 'image'] = image_rank
    table.pivots = complex_.pivots
    _LOG.debug('%s %s of %s (%s): %i', theory.value, degree, presentation.label,
               description or 'generic', table.dimension)
    return table


def dimensions(presentation: Presentation, theory: Theory,
               context: t.Optional[Substitution] = None,
               weights: t.Optional[t.Sequence[int]] = None) -> t.Dict[t.Any, int]:
    """All dimensions of a theory: by degree for de Rham, by bidegree otherwise."""
    theory = Theory(theory)
    n = presentation.n
    if theory is Theory.DE_RHAM:
        degrees = list(range(2 * n + 1))  # type: t.List[t.Any]
    else:
        degrees = list(itertools.product(range(n + 1), repeat=2))
    return {degree: cohomology(presentation, theory, degree, context, weights).dimension
            for degree in degrees}


def delta_k(presentation: Presentation, k: int, context: t.Optional[Substitution] = None,
            weights: t.Optional[t.Sequence[int]] = None) -> int:
    """Sum over p + q = k of Bott-Chern and Aeppli numbers, minus twice the Betti number."""
    total = 0
    for p in range(k + 1):
        q = k - p
        if p > presentation.n or q > presentation.n:
            continue
        total += cohomology(presentation, Theory.BOTT_CHERN, (p, q), context, weights).dimension
        total += cohomology(presentation, Theory.AEPPLI, (p, q), context, weights).dimension
    total -= 2 * cohomology(presentation, Theory.DE_RHAM, k, context, weights).dimension
    if total < 0:
        _LOG.warning('negative Delta^%i = %i for %s', k, total, presentation.label)
    return total


def origin_assignment(presentation: Presentation) -> Assignment:
    """Assignment of zero to every parameter."""
    field = presentation.field
    return Assignment(field, {param.name: 0 for param in field.params})


class ProbeReport:

    """Dimensions at sample points compared with the generic dimension."""

    def __init__(self, theory: Theory, degree, generic: CohomologyTable):
        self.theory = theory
        self.degree = degree
        self.generic = generic
        self.samples = []  # type: t.List[t.Dict[str, t.Any]]

    @property
    def ok(self) -> bool:
        return all(sample['ok'] for sample in self.samples)

    @property
    def jump_locus(self) -> t.List[str]:
        return list(ordered_set.OrderedSet(
            pivot for sample in self.samples for pivot in sample['vanished']))

    def to_dict(self) -> t.Dict[str, t.Any]:
        return {'theory': self.theory.value, 'degree': self.degree,
                'generic': self.generic.dimension, 'samples': list(self.samples),
                'ok': self.ok, 'jump_locus': self.jump_locus}


def upper_semicontinuity_probe(
        presentation: Presentation, degree: t.Union[int, t.Tuple[int, int]],
        samples: t.Sequence[Substitution] = (), theory: Theory = Theory.BOTT_CHERN,
        weights: t.Optional[t.Sequence[int]] = None) -> ProbeReport:
    """Check h(sample) >= h(generic) at the origin and at every sample.

    The ranks of the defining matrices may only drop under specialization; pivots of the
    generic computation that vanish at a sample are reported as jump locus candidates.
    """
    generic = cohomology(presentation, theory, degree, None, weights)
    report = ProbeReport(Theory(theory), degree, generic)
    field = presentation.field
    points = list(samples)
    if field.params and not any(
            all(not value for value in sample.values.values()) for sample in points):
        points.insert(0, origin_assignment(presentation))
    for sample in points:
        table = cohomology(presentation, theory, degree, sample, weights)
        ranks_ok = all(table.ranks.get(name, 0) <= rank
                       for name, rank in generic.ranks.items() if name.startswith('image'))
        ok = table.dimension >= generic.dimension and ranks_ok
        vanished = [field.format(pivot) for pivot in generic.pivots if sample.vanishes(pivot)]
        if not ranks_ok:
            _LOG.warning('rank of a defining matrix grows at %s', sample.describe())
        report.samples.append({'at': sample.describe(), 'dimension': table.dimension,
                               'ok': ok, 'vanished': vanished})
    _LOG.info('probe %s %s of %s: generic %i, samples %s', report.theory.value, degree,
              presentation.label, generic.dimension,
              [sample['dimension'] for sample in report.samples])
    return report


class DualityReport:

    """Comparison of h^{p,q}_BC with h^{n-q,n-p}_A."""

    def __init__(self, label: t.Optional[str]):
        self.label = label
        self.pairs = []  # type: t.List[t.Tuple[t.Tuple[int, int], int, int]]

    @property
    def discrepancies(self):
        return [pair for pair in self.pairs if pair[1] != pair[2]]

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def to_dict(self) -> t.Dict[str, t.Any]:
        return {'label': self.label, 'ok': self.ok,
                'pairs': [{'bidegree': list(b), 'bott_chern': h, 'aeppli_dual': a}
                          for b, h, a in self.pairs]}


def duality_check(presentation: Presentation, context: t.Optional[Substitution] = None,
                  weights: t.Optional[t.Sequence[int]] = None) -> DualityReport:
    """Spot-check of Bott-Chern and Aeppli duality; discrepancies are logged, not raised."""
    n = presentation.n
    report = DualityReport(presentation.label)
    for p, q in itertools.product(range(n + 1), repeat=2):
        bott_chern = cohomology(presentation, Theory.BOTT_CHERN, (p, q), context, weights)
        aeppli = cohomology(presentation, Theory.AEPPLI, (n - q, n - p), context, weights)
        report.pairs.append(((p, q), bott_chern.dimension, aeppli.dimension))
    for (p, q), bott_chern, aeppli in report.discrepancies:
        _LOG.warning('duality discrepancy on %s: h^{%i,%i}_BC = %i, h^{%i,%i}_A = %i',
                     presentation.label, p, q, bott_chern, n - q, n - p, aeppli)
    return report
