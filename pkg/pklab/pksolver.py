"""Closed compatible forms, pseudo-Kaehler and symplectic existence, metrics and signatures."""

import itertools
import logging
import typing as t

import ordered_set

from .coeffs import Assignment, ParamDecl, ParamKind, Scalar, ScalarField, Substitution
from .cohomology import Theory, cohomology
from .connection import check_parallel, curvature, is_ricci_flat, levi_civita
from .errors import (
    NotClosed, NotInvariant, NotReal, NotType11, ParametricInput, SingularMetric,
    UnresolvedCaseSplit)
from .exterior import ExteriorAlgebra, Form, Key, Presentation, rewrite
from .lie import nilpotency, real_coframe, realize
from .linalg import Elimination, inertia

__all__ = [
    'Unknown', 'ClosedFamily', 'MetricVerdict', 'HPlus', 'PhsDecomposition', 'EfvReport',
    'real_ansatz', 'complex_ansatz', 'closed_compatible_family', 'pk_exists', 'h_plus',
    'metric_matrix', 'signature', 'neutral_cy_check', 'symplectic_exists', 'phs_decompose',
    'efv_family', 'efv_counterexample_check', 'witness_values']

_LOG = logging.getLogger(__name__)

SYMMETRIZATION_NOTE = 'invariant forms suffice on nilmanifolds by symmetrization'
INVARIANT_ONLY_NOTE = 'verdict concerns invariant forms only'


class Unknown:

    """Coefficient of one generator of an ansatz."""

    def __init__(self, name: str, generator: Form, kind: ParamKind = ParamKind.REAL):
        self.name = name
        self.generator = generator
        self.kind = kind

    def __repr__(self):
        return 'Unknown({!r}, {})'.format(self.name, self.generator)


def _suffix(weight: int) -> str:
    if weight > 0:
        return '_f{}'.format(weight)
    if weight < 0:
        return '_fm{}'.format(-weight)
    return ''


def _key_name(key: Key) -> str:
    holomorphic, antiholomorphic, weight = key
    letter = 'x' if len(holomorphic) == len(antiholomorphic) else 'y'
    return '{}{}{}'.format(letter, ''.join(str(i) for i in holomorphic + antiholomorphic),
                           _suffix(weight))


def _conj_key(key: Key) -> t.Tuple[Key, int]:
    holomorphic, antiholomorphic, weight = key
    sign = -1 if len(holomorphic) * len(antiholomorphic) % 2 else 1
    return (antiholomorphic, holomorphic, -weight), sign


def _ansatz_keys(algebra: ExteriorAlgebra, bidegrees: t.Sequence[t.Tuple[int, int]],
                 weights: t.Sequence[int]) -> t.List[Key]:
    return [key for p, q in bidegrees for weight in weights for key in algebra.keys(p, q, weight)]


def real_ansatz(algebra: ExteriorAlgebra, bidegrees: t.Sequence[t.Tuple[int, int]] = ((1, 1),),
                weights: t.Sequence[int] = (0,)) -> t.List[Unknown]:
    """Real generators: b + conj(b) and i(b - conj(b)) per conjugate pair, then self-conjugate ones.

    A self-conjugate monomial b with conj(b) = -b gives the generator i b.
    """
    keys = _ansatz_keys(algebra, bidegrees, weights)
    available = set(keys)
    paired = []  # type: t.List[Unknown]
    diagonal = []  # type: t.List[Unknown]
    seen = set()  # type: t.Set[Key]
    i = algebra.field.i
    for key in keys:
        if key in seen:
            continue
        partner, sign = _conj_key(key)
        seen.update({key, partner})
        monomial = algebra.monomial(key)
        if partner == key:
            generator = monomial.scale(i) if sign < 0 else monomial
            diagonal.append(Unknown(_key_name(key), generator))
            continue
        if partner not in available:
            raise ValueError('ansatz is not closed under conjugation: {} without {}'.format(
                key, partner))
        conjugate = monomial.conj()
        name = _key_name(key)
        paired.append(Unknown('re_{}'.format(name), monomial + conjugate))
        paired.append(Unknown('im_{}'.format(name), (monomial - conjugate).scale(i)))
    return paired + diagonal


def complex_ansatz(algebra: ExteriorAlgebra, bidegrees: t.Sequence[t.Tuple[int, int]] = ((1, 1),),
                   weights: t.Sequence[int] = (0,)) -> t.List[Unknown]:
    return [Unknown(_key_name(key), algebra.monomial(key), ParamKind.COMPLEX)
            for key in _ansatz_keys(algebra, bidegrees, weights)]


class ClosedFamily:

    """Solution space of dF = 0 within an ansatz: free unknowns, pinned unknowns, pivots.

    The family is exact on the generic branch where no logged pivot vanishes.
    """

    def __init__(self, presentation: Presentation, unknowns: t.Sequence[Unknown],
                 elimination: Elimination, reality: bool, context: t.Optional[str] = None):
        self.presentation = presentation
        self.unknowns = list(unknowns)
        self.reality = reality
        self.context = context
        self.pivots = ordered_set.OrderedSet(elimination.pivot_log)
        names = [unknown.name for unknown in self.unknowns]
        self.free = [names[column] for column in elimination.free_columns()]
        self.pinned = {}  # type: t.Dict[str, t.Dict[str, Scalar]]
        for row, column in zip(elimination.rows, elimination.pivots):
            self.pinned[names[column]] = {names[c]: -value for c, value in row.items()
                                          if c != column}
        self.basis = []  # type: t.List[Form]
        for vector in elimination.nullspace():
            form = presentation.algebra.zero
            for unknown, value in zip(self.unknowns, vector):
                if value:
                    form = form + unknown.generator.scale(value)
            self.basis.append(form)
        assert len(self.basis) == len(self.free)
        _LOG.debug('closed family of %s: %i free of %i unknowns, %i pivots',
                   presentation.label, len(self.free), len(self.unknowns), len(self.pivots))

    @property
    def dimension(self) -> int:
        return len(self.free)

    @property
    def field(self) -> ScalarField:
        return self.presentation.field

    def member(self, values: t.Mapping[str, t.Any]) -> Form:
        """Family member with given values of the free unknowns (missing ones are zero)."""
        unknown_names = set(values).difference(self.free)
        if unknown_names:
            raise ValueError('{} are not free unknowns of the family; free: {}'.format(
                sorted(unknown_names), self.free))
        form = self.presentation.algebra.zero
        for name, basis_form in zip(self.free, self.basis):
            if name in values:
                form = form + basis_form.scale(values[name])
        return form

    def extended_presentation(self, names: t.Optional[t.Mapping[str, str]] = None) \
            -> Presentation:
        names = dict(names or {})
        kind = ParamKind.REAL if self.reality else ParamKind.COMPLEX
        params = [ParamDecl(names.get(name, name), kind) for name in self.free]
        clashes = {param.name for param in params}.intersection(self.field.symbols)
        if clashes:
            raise ValueError('unknown names {} clash with parameters'.format(sorted(clashes)))
        return self.presentation.with_field(self.field.extend(params))

    def general_form(self, names: t.Optional[t.Mapping[str, str]] = None) \
            -> t.Tuple[Presentation, Form]:
        """Family member with free unknowns as new parameters, optionally renamed."""
        names = dict(names or {})
        presentation = self.extended_presentation(names)
        field = presentation.field
        form = presentation.algebra.zero
        for name, basis_form in zip(self.free, self.basis):
            form = form + basis_form.embed(presentation.algebra).scale(
                field.gen(names.get(name, name)))
        return presentation, form

    def specialize(self, context: Substitution) -> 'ClosedFamily':
        """Family at a point or locus; refuses when a logged pivot vanishes there."""
        for pivot in self.pivots:
            if context.vanishes(pivot):
                raise UnresolvedCaseSplit(pivot, self.field.format(pivot))
        presentation = self.presentation.specialize(context)
        apply = context.apply
        unknowns = [Unknown(unknown.name, unknown.generator.map(apply, presentation.algebra),
                            unknown.kind) for unknown in self.unknowns]
        return _solve(presentation, unknowns, self.reality,
                      context.describe() if self.context is None
                      else '{};{}'.format(self.context, context.describe()))

    def to_dict(self) -> t.Dict[str, t.Any]:
        field = self.field
        return {
            'label': self.presentation.label,
            'context': self.context or 'generic',
            'reality': self.reality,
            'unknowns': [unknown.name for unknown in self.unknowns],
            'free': list(self.free),
            'pinned': {name: ' + '.join('({})*{}'.format(field.format(value), free)
                                        for free, value in expression.items()) or '0'
                       for name, expression in self.pinned.items()},
            'pivots': [field.format(pivot) for pivot in self.pivots],
            'basis': [str(form) for form in self.basis]}

    def __repr__(self):
        return 'ClosedFamily({!r}, free={})'.format(self.presentation.label, self.free)


def _solve(presentation: Presentation, unknowns: t.Sequence[Unknown], reality: bool,
           context: t.Optional[str]) -> ClosedFamily:
    rows = {}  # type: t.Dict[Key, t.Dict[int, Scalar]]
    for column, unknown in enumerate(unknowns):
        for key, value in presentation.d(unknown.generator).items():
            rows.setdefault(key, {})[column] = value
    elimination = Elimination(presentation.field, list(rows.values()), len(unknowns))
    return ClosedFamily(presentation, unknowns, elimination, reality, context)


def closed_compatible_family(
        presentation: Presentation, context: t.Optional[Substitution] = None,
        reality: bool = True, weights: t.Optional[t.Sequence[int]] = None,
        bidegrees: t.Sequence[t.Tuple[int, int]] = ((1, 1),)) -> ClosedFamily:
    """Closed forms in the span of an ansatz: real forms if reality, complex otherwise.

    Twisted presentations use the sectors of weight -1, 0 and 1 unless weights are given.
    """
    description = None
    if context is not None:
        presentation = presentation.specialize(context)
        description = context.describe()
    if weights is None:
        weights = presentation.default_weights
    ansatz = real_ansatz if reality else complex_ansatz
    unknowns = ansatz(presentation.algebra, bidegrees, weights)
    family = _solve(presentation, unknowns, reality, description)
    for pivot in family.pivots:
        _LOG.info('%s: generic branch assumes %s != 0', presentation.label,
                  presentation.field.format(pivot))
    return family


def _value_order(bound: int) -> t.List[int]:
    order = [0]
    for value in range(1, bound + 1):
        order.extend([value, -value])
    return order


def witness_values(free: t.Sequence[str], test: t.Callable[[t.Dict[str, int]], bool],
                   max_bound: int = 2) -> t.Optional[t.Dict[str, int]]:
    """First integer assignment in lexicographic order over 0, 1, -1, 2, -2, ... passing a test.

    Assignments are searched by increasing bound on the absolute values.
    """
    for bound in range(0, max_bound + 1):
        order = _value_order(bound)
        for values in itertools.product(order, repeat=len(free)):
            if bound and max(abs(v) for v in values) < bound:
                continue
            assignment = dict(zip(free, values))
            if test(assignment):
                return assignment
    return None


class MetricVerdict:

    """Existence verdict for one closed form or for a family of them."""

    def __init__(self, kind: str, presentation: Presentation,
                 family: t.Optional[ClosedFamily] = None):
        self.kind = kind
        self.presentation = presentation
        self.family = family
        self.exists = False
        self.pnd = None  # type: t.Optional[Scalar]
        self.pnd_field = None  # type: t.Optional[ScalarField]
        self.witness = None  # type: t.Optional[t.Dict[str, int]]
        self.witness_form = None  # type: t.Optional[Form]
        self.signature = None  # type: t.Optional[t.Tuple[int, int]]
        self.tags = []  # type: t.List[str]
        self.checks = {}  # type: t.Dict[str, t.Any]
        self.lemma = {}  # type: t.Dict[int, int]
        self.notes = []  # type: t.List[str]

    def to_dict(self) -> t.Dict[str, t.Any]:
        result = {
            'kind': self.kind,
            'label': self.presentation.label,
            'exists': self.exists,
            'family': None if self.family is None else self.family.to_dict(),
            'nondegeneracy': None if self.pnd is None else self.pnd_field.format(self.pnd),
            'witness': self.witness,
            'witness_form': None if self.witness_form is None else str(self.witness_form),
            'signature': None if self.signature is None else list(self.signature),
            'tags': list(self.tags),
            'checks': dict(self.checks),
            'lemma': {str(k): v for k, v in sorted(self.lemma.items())},
            'notes': list(self.notes)}
        if not self.exists and self.pnd is not None:
            result['certificate'] = {'top_coefficient': '0',
                                     'family_dimension': self.family.dimension}
        return result

    def __repr__(self):
        return 'MetricVerdict({!r}, exists={}, tags={})'.format(
            self.presentation.label, self.exists, self.tags)


def _nondegeneracy(family: ClosedFamily) -> t.Tuple[Presentation, Form, Scalar]:
    presentation, form = family.general_form()
    power = form.power(presentation.n)
    for weight in sorted(power.weights):
        if weight and power.top_coefficient(weight):
            _LOG.warning('volume term of weight %i in the top power on %s', weight,
                         presentation.label)
    return presentation, form, power.top_coefficient(0)


def _search_witness(verdict: MetricVerdict, presentation: Presentation, max_bound: int) -> None:
    family = verdict.family
    field = verdict.pnd_field

    def nonzero(values: t.Dict[str, int]) -> bool:
        return bool(Assignment(field, values).apply(verdict.pnd)) if values else bool(verdict.pnd)

    values = witness_values(family.free, nonzero, max_bound)
    if values is None:
        verdict.notes.append('no witness with entries up to {}'.format(max_bound))
        return
    verdict.witness = values
    form = family.member({k: v for k, v in values.items() if v})
    closed = not presentation.d(form)
    top = form.power(presentation.n).top_coefficient()
    verdict.checks['witness_closed'] = closed
    verdict.checks['witness_nondegenerate'] = bool(top)
    assert closed and top, 'witness {} of {} failed re-verification'.format(
        values, presentation.label)
    verdict.witness_form = form
    if presentation.field.symbols:
        return
    if form.weights == {0} and form.bidegrees == {(1, 1)}:
        verdict.signature = signature(metric_matrix(form, presentation), presentation.field)


def _nilpotent_note(presentation: Presentation) -> str:
    if presentation.field.symbols or presentation.twist is not None:
        return INVARIANT_ONLY_NOTE
    try:
        nilpotent, _ = nilpotency(realize(presentation))
    except ParametricInput:
        return INVARIANT_ONLY_NOTE
    return SYMMETRIZATION_NOTE if nilpotent else INVARIANT_ONLY_NOTE


def _signature_tags(n: int, signature_: t.Optional[t.Tuple[int, int]]) -> t.List[str]:
    if signature_ is None:
        return []
    tags = []
    if 0 in signature_:
        tags.append('Kahler')
    if n % 2 == 0 and signature_ == (n, n):
        tags.append('neutralKahler')
    return tags


def pk_exists(presentation: Presentation, context: t.Optional[Substitution] = None,
              weights: t.Optional[t.Sequence[int]] = None, witness: bool = True,
              max_bound: int = 2, lemma_degrees: t.Optional[t.Sequence[int]] = (1,)) \
        -> MetricVerdict:
    """Decide existence of a closed nondegenerate real (1,1) form.

    Exists iff the volume coefficient of F^n for the general family member is not
    identically zero. Bott-Chern numbers h^{k,k} for the given k are reported as a
    necessary condition.
    """
    family = closed_compatible_family(presentation, context, True, weights)
    presentation = family.presentation
    verdict = MetricVerdict('pseudoKahler', presentation, family)
    extended, _, pnd = _nondegeneracy(family)
    verdict.pnd, verdict.pnd_field = pnd, extended.field
    verdict.exists = bool(pnd)
    for k in lemma_degrees or ():
        verdict.lemma[k] = cohomology(
            presentation, Theory.BOTT_CHERN, (k, k), None, weights).dimension
        if verdict.exists and not verdict.lemma[k]:
            _LOG.warning('%s: metric found although h^(%i,%i)_BC vanishes',
                         presentation.label, k, k)
    if verdict.exists:
        verdict.tags.append('pseudoKahler')
        if witness:
            _search_witness(verdict, presentation, max_bound)
            verdict.tags.extend(_signature_tags(presentation.n, verdict.signature))
    else:
        verdict.notes.append(_nilpotent_note(presentation))
    _LOG.info('pseudo-Kahler on %s (%s): %s', presentation.label,
              family.context or 'generic', verdict.exists)
    return verdict


class HPlus:

    """Closed real (1,1) forms modulo exact ones."""

    def __init__(self, presentation: Presentation, representatives: t.Sequence[Form],
                 closed_dimension: int, exact_dimension: int):
        self.presentation = presentation
        self.representatives = list(representatives)
        self.closed_dimension = closed_dimension
        self.exact_dimension = exact_dimension

    @property
    def dimension(self) -> int:
        return len(self.representatives)

    def to_dict(self) -> t.Dict[str, t.Any]:
        return {'label': self.presentation.label, 'dimension': self.dimension,
                'closed': self.closed_dimension, 'exact': self.exact_dimension,
                'representatives': [str(form) for form in self.representatives]}


def _real_one_forms(algebra: ExteriorAlgebra) -> t.List[Form]:
    i = algebra.field.i
    forms = []
    for k in range(1, algebra.n + 1):
        forms.append(algebra.omega(k) + algebra.omega_bar(k))
        forms.append((algebra.omega(k) - algebra.omega_bar(k)).scale(i))
    return forms


def h_plus(presentation: Presentation, context: t.Optional[Substitution] = None) -> HPlus:
    """Classes of closed real (1,1) forms modulo d of real 1-forms of type (1,1)."""
    family = closed_compatible_family(presentation, context, True, (0,))
    presentation = family.presentation
    algebra = presentation.algebra
    differentials = [presentation.d(form) for form in _real_one_forms(algebra)]
    rows = {}  # type: t.Dict[Key, t.Dict[int, Scalar]]
    for column, form in enumerate(differentials):
        for key, value in form.items():
            if len(key[0]) != 1 or len(key[1]) != 1:
                rows.setdefault(key, {})[column] = value
    solutions = Elimination(presentation.field, list(rows.values()), len(differentials))
    keys = algebra.keys(1, 1)
    index = {key: position for position, key in enumerate(keys)}
    exact = Elimination(presentation.field, columns=len(keys))
    for vector in solutions.nullspace():
        form = algebra.zero
        for differential, value in zip(differentials, vector):
            if value:
                form = form + differential.scale(value)
        exact.add_row({index[key]: value for key, value in form.items()})
    exact_dimension = exact.rank
    representatives = [form for form in family.basis
                       if exact.add_row({index[key]: value for key, value in form.items()})]
    _LOG.info('H+ of %s: %i closed, %i exact', presentation.label, family.dimension,
              exact_dimension)
    return HPlus(presentation, representatives, family.dimension, exact_dimension)


def metric_matrix(form: Form, presentation: Presentation) -> t.List[t.List[Scalar]]:
    """Matrix of g(x, y) = F(Jx, y) in the real basis e_1..e_2n."""
    if any(key[2] for key in form.keys()):
        raise NotInvariant('form {} has twisted terms'.format(form))
    if not form.bidegrees <= {(1, 1)}:
        raise NotType11('form {} is not of bidegree (1,1)'.format(form))
    if not form.is_real():
        raise NotReal('form {} is not real'.format(form))
    field = presentation.field
    dimension = 2 * presentation.n
    real_algebra = ExteriorAlgebra(dimension, field)
    real_form = rewrite(form, real_coframe(presentation, real_algebra), real_algebra)
    two_form = [[field.zero] * dimension for _ in range(dimension)]
    for (letters, _, _), value in real_form.items():
        a, b = (index - 1 for index in letters)
        two_form[a][b] = value
        two_form[b][a] = -value
    # J e_{2k-1} = -e_{2k}, J e_{2k} = e_{2k-1}
    matrix = []
    for a in range(dimension):
        if a % 2 == 0:
            matrix.append([-value for value in two_form[a + 1]])
        else:
            matrix.append(list(two_form[a - 1]))
    return matrix


def signature(matrix: t.Sequence[t.Sequence[Scalar]], field: ScalarField) -> t.Tuple[int, int]:
    """Inertia (positive, negative) of a fully specialized nonsingular symmetric matrix."""
    if any(not field.is_constant(value) for row in matrix for value in row):
        raise ParametricInput('matrix depends on parameters; assign them first')
    positive, negative = inertia(field, matrix)
    if positive + negative != len(matrix):
        raise SingularMetric('metric is degenerate')
    return positive, negative


def neutral_cy_check(presentation: Presentation, form: Form,
                     assignment: t.Optional[Substitution] = None) -> MetricVerdict:
    """Closedness, signature, parallel J and parallel (n,0)-form for a given metric.

    The signature needs numeric coefficients; with symbolic ones it is skipped and noted.
    """
    if assignment is not None:
        presentation = presentation.specialize(assignment)
        form = form.map(assignment.apply, presentation.algebra)
    n = presentation.n
    verdict = MetricVerdict('neutralCalabiYau', presentation)
    closed = not presentation.d(form)
    top = form.power(n).top_coefficient()
    verdict.checks['closed'] = closed
    verdict.checks['nondegenerate'] = bool(top)
    verdict.witness_form = form
    verdict.exists = closed and bool(top)
    if not verdict.exists:
        return verdict
    verdict.tags.append('pseudoKahler')
    matrix = metric_matrix(form, presentation)
    if presentation.field.symbols:
        verdict.notes.append('signature not computed for symbolic coefficients')
    else:
        verdict.signature = signature(matrix, presentation.field)
        verdict.tags.extend(_signature_tags(n, verdict.signature))
    connection = levi_civita(presentation, form)
    phi = presentation.algebra.form({(tuple(range(1, n + 1)), (), 0): 1})
    verdict.checks['J_parallel'] = check_parallel(presentation, connection, 'J')
    verdict.checks['phi_parallel'] = check_parallel(presentation, connection, phi)
    verdict.checks['ricci_flat'] = is_ricci_flat(curvature(presentation, connection))
    if 'neutralKahler' in verdict.tags and verdict.checks['phi_parallel']:
        verdict.tags.append('neutralCalabiYau')
    _LOG.info('neutral Calabi-Yau check on %s: %s', presentation.label, verdict.tags)
    return verdict


def symplectic_exists(presentation: Presentation, context: t.Optional[Substitution] = None,
                      witness: bool = True, max_bound: int = 2) -> MetricVerdict:
    """Decide existence of a closed nondegenerate real invariant 2-form of any bidegree."""
    family = closed_compatible_family(presentation, context, True, (0,),
                                      ((2, 0), (1, 1), (0, 2)))
    presentation = family.presentation
    verdict = MetricVerdict('symplectic', presentation, family)
    extended, _, pnd = _nondegeneracy(family)
    verdict.pnd, verdict.pnd_field = pnd, extended.field
    verdict.exists = bool(pnd)
    if verdict.exists:
        verdict.tags.append('symplectic')
        if witness:
            _search_witness(verdict, presentation, max_bound)
    else:
        verdict.notes.append(_nilpotent_note(presentation))
    _LOG.info('symplectic on %s: %s', presentation.label, verdict.exists)
    return verdict


class PhsDecomposition:

    """Bidegree components of a closed real 2-form."""

    def __init__(self, omega: Form, alpha: Form, form: Form, beta: Form, d_form: Form):
        self.omega = omega
        self.alpha = alpha
        self.form = form
        self.beta = beta
        self.d_form = d_form
        n = omega.algebra.n
        self.top = form.power(n).top_coefficient()

    @property
    def nondegenerate_11(self) -> bool:
        return bool(self.top)

    def to_dict(self) -> t.Dict[str, t.Any]:
        return {'alpha': str(self.alpha), 'F': str(self.form), 'beta': str(self.beta),
                'nondegenerate_11': self.nondegenerate_11, 'dF': str(self.d_form),
                'pseudo_hermitian_symplectic': self.nondegenerate_11}


def phs_decompose(omega: Form, presentation: Presentation) -> PhsDecomposition:
    """Split a closed 2-form into its (2,0), (1,1) and (0,2) components."""
    differential = presentation.d(omega)
    if differential:
        raise NotClosed('d of {} is {}'.format(omega, differential))
    alpha = omega.component(2, 0)
    form = omega.component(1, 1)
    beta = omega.component(0, 2)
    if omega.is_real():
        assert beta == alpha.conj()
    return PhsDecomposition(omega, alpha, form, beta, presentation.d(form))


def efv_family(rho: int, d_value: t.Optional[t.Any] = None) -> Presentation:
    """Nilmanifolds d w3 = rho w12 + w11~ + rho w12~ + D w22~ with rho in {0, 1}.

    D is a complex parameter when no value is given. The metric coefficient r is declared
    as a real parameter.
    """
    if rho not in (0, 1):
        raise ValueError('rho must be 0 or 1, got {}'.format(rho))
    params = [ParamDecl('r', ParamKind.REAL)]
    if d_value is None:
        params.append(ParamDecl('D', ParamKind.COMPLEX))
    field = ScalarField(params)
    algebra = ExteriorAlgebra(3, field)
    d_coefficient = field.gen('D') if d_value is None else field.convert(d_value)
    w = algebra.omega
    wb = algebra.omega_bar
    d_omega3 = (w(1) ^ w(2)).scale(rho) + (w(1) ^ wb(1)) + (w(1) ^ wb(2)).scale(rho) \
        + (w(2) ^ wb(2)).scale(d_coefficient)
    return Presentation(algebra, [algebra.zero, algebra.zero, d_omega3], None,
                        'efv-rho{}'.format(rho))


class EfvReport:

    """Identities of a closed real 2-form which is degenerate with nondegenerate (1,1) part."""

    def __init__(self):
        self.checks = {}  # type: t.Dict[str, bool]
        self.top_coefficient = None  # type: t.Optional[str]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> t.Dict[str, t.Any]:
        return {'checks': dict(self.checks), 'ok': self.ok,
                'F_cubed_coefficient': self.top_coefficient}


def efv_counterexample_check(presentation: Presentation, r: t.Any) -> EfvReport:
    """Check del alpha = 0, del F = -delbar alpha, d Omega = 0 and Omega^3 = 0.

    Here F = (i/2) r w11~ - w23~ + w32~, alpha = -w23 and Omega = alpha + F + conj(alpha).
    """
    algebra = presentation.algebra
    field = presentation.field
    r = field.convert(r) if not isinstance(r, str) else field.gen(r)
    w = algebra.omega
    wb = algebra.omega_bar
    form = (w(1) ^ wb(1)).scale(field.i * r / 2) - (w(2) ^ wb(3)) + (w(3) ^ wb(2))
    alpha = -(w(2) ^ w(3))
    omega = alpha + form + alpha.conj()
    report = EfvReport()
    top = form.power(3).top_coefficient()
    report.top_coefficient = field.format(top)
    report.checks['del_alpha_zero'] = not presentation.del_(alpha)
    report.checks['del_F_is_minus_delbar_alpha'] = \
        presentation.del_(form) == -presentation.delbar(alpha)
    report.checks['omega_closed'] = not presentation.d(omega)
    report.checks['omega_cubed_zero'] = not omega.power(3)
    report.checks['F_nondegenerate'] = bool(top)
    if not top:
        _LOG.info('F^3 vanishes on %s: F is degenerate', presentation.label)
    return report
