"""Catalog of shipped structure equations and re-derivation of their golden values."""

import json
import logging
import os
import pathlib
import re
import typing as t

from .cohomology import Theory, cohomology, delta_k, origin_assignment
from .deform import CoframeSubstitution, compare, deform
from .errors import UnknownEntry
from .exterior import Presentation
from .lie import center, j_series, nilpotency, realize, torus
from .parse import load_presentation, parse_degree, parse_form, parse_locus, parse_params
from .pksolver import efv_counterexample_check, h_plus, neutral_cy_check, pk_exists, \
    symplectic_exists

__all__ = ['CATALOG_ENV', 'CatalogEntry', 'Check', 'Verification', 'catalog_directory',
           'load_catalog', 'find_entry', 'verify_entry']

_LOG = logging.getLogger(__name__)

CATALOG_ENV = 'PKLAB_CATALOG'

_TORUS = re.compile(r'^torus-([1-9][0-9]*)$')


def catalog_directory() -> pathlib.Path:
    """Directory named by PKLAB_CATALOG, or the data directory of the package."""
    path = os.environ.get(CATALOG_ENV)
    if path:
        return pathlib.Path(path)
    return pathlib.Path(__file__).resolve().parent.joinpath('data')


class CatalogEntry:

    """Presentation file with its provenance and expected values."""

    def __init__(self, id_: str, path: t.Optional[pathlib.Path], provenance: str,
                 expected: t.Mapping[str, t.Any], cited: t.Sequence[str] = (),
                 directory: t.Optional[pathlib.Path] = None):
        self.id = id_
        self.path = path
        self.provenance = provenance
        self.expected = dict(expected)
        self.cited = list(cited)
        self.directory = directory
        self._presentation = None  # type: t.Optional[Presentation]

    @classmethod
    def torus(cls, n: int) -> 'CatalogEntry':
        expected = {
            'n': n, 'valid': True, 'step': 1, 'center': 2 * n, 'j_series': 'nilpotent',
            'pk': True, 'pk_family': n * n, 'delta': {'1': 0, '2': 0}}
        entry = cls('torus-{}'.format(n), None, 'complex torus of dimension {}'.format(n),
                    expected)
        entry._presentation = torus(n)
        return entry

    @property
    def presentation(self) -> Presentation:
        if self._presentation is None:
            presentation = load_presentation(self.path)
            if presentation.label != self.id:
                presentation = presentation.relabel(self.id)
            self._presentation = presentation
        return self._presentation

    def to_dict(self) -> t.Dict[str, t.Any]:
        return {'id': self.id, 'file': None if self.path is None else self.path.name,
                'provenance': self.provenance, 'expected': self.expected, 'cited': self.cited}

    def __repr__(self):
        return 'CatalogEntry({!r})'.format(self.id)


def load_catalog(directory: t.Optional[t.Union[str, pathlib.Path]] = None) \
        -> t.Dict[str, CatalogEntry]:
    """Entries listed in catalog.json, in file order."""
    directory = catalog_directory() if directory is None else pathlib.Path(directory)
    index_path = directory.joinpath('catalog.json')
    with index_path.open(encoding='utf-8') as index_file:
        data = json.load(index_file)
    entries = {}  # type: t.Dict[str, CatalogEntry]
    for item in data['entries']:
        if item['id'] in entries:
            raise ValueError('{}: entry {} listed twice'.format(index_path, item['id']))
        entries[item['id']] = CatalogEntry(
            item['id'], directory.joinpath(item['file']), item.get('provenance', ''),
            item.get('expected', {}), item.get('cited', ()), directory)
    _LOG.debug('loaded %i catalog entries from %s', len(entries), directory)
    return entries


def find_entry(id_: str, directory: t.Optional[t.Union[str, pathlib.Path]] = None) \
        -> CatalogEntry:
    """Entry of a given id; torus-<n> is generated for every n >= 1."""
    match = _TORUS.match(id_)
    if match is not None:
        return CatalogEntry.torus(int(match.group(1)))
    entries = load_catalog(directory)
    if id_ not in entries:
        raise UnknownEntry('no catalog entry "{}"; known entries: {}, torus-<n>'.format(
            id_, ', '.join(entries)))
    return entries[id_]


class Check:

    """One golden value: expected and re-derived."""

    def __init__(self, name: str, expected: t.Any, actual: t.Any):
        self.name = name
        self.expected = expected
        self.actual = actual

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    def to_dict(self) -> t.Dict[str, t.Any]:
        return {'expected': self.expected, 'actual': self.actual, 'ok': self.ok}

    def __repr__(self):
        return 'Check({!r}, expected={!r}, actual={!r})'.format(
            self.name, self.expected, self.actual)


class Verification:

    """Outcome of re-deriving all golden values of an entry."""

    def __init__(self, entry: CatalogEntry):
        self.entry = entry
        self.checks = []  # type: t.List[Check]

    @property
    def ok(self) -> bool:
        return all(check.ok for check in self.checks)

    @property
    def failures(self) -> t.List[Check]:
        return [check for check in self.checks if not check.ok]

    def to_dict(self) -> t.Dict[str, t.Any]:
        return {'id': self.entry.id, 'ok': self.ok,
                'checks': {check.name: check.to_dict() for check in self.checks},
                'cited': list(self.entry.cited)}


class _Derivation:

    """Lazily computed facts about one entry, shared between checks."""

    def __init__(self, entry: CatalogEntry):
        self.entry = entry
        self.presentation = entry.presentation
        self._cache = {}  # type: t.Dict[str, t.Any]

    def _cached(self, name: str, compute: t.Callable[[], t.Any]) -> t.Any:
        if name not in self._cache:
            self._cache[name] = compute()
        return self._cache[name]

    @property
    def algebra(self):
        return self._cached('algebra', lambda: realize(self.presentation))

    @property
    def pk_verdict(self):
        return self._cached('pk', lambda: pk_exists(self.presentation))

    def base(self, id_: str) -> Presentation:
        return find_entry(id_, self.entry.directory).presentation

    def n(self, expected):
        return self.presentation.n

    def valid(self, expected):
        return self.presentation.validate().ok

    def step(self, expected):
        return nilpotency(self.algebra)[1]

    def center(self, expected):
        return len(center(self.algebra))

    def j_series(self, expected):
        return j_series(self.algebra).tag

    def h11_bc(self, expected):
        return cohomology(self.presentation, Theory.BOTT_CHERN, (1, 1)).dimension

    def h11_bc_origin(self, expected):
        return cohomology(self.presentation, Theory.BOTT_CHERN, (1, 1),
                          origin_assignment(self.presentation)).dimension

    def pk(self, expected):
        return self.pk_verdict.exists

    def pk_family(self, expected):
        return self.pk_verdict.family.dimension

    def pk_locus(self, expected):
        locus = parse_locus(self.presentation.field, expected['locus'])
        return {'locus': expected['locus'], 'pk': pk_exists(self.presentation, locus).exists}

    def symplectic(self, expected):
        return symplectic_exists(self.presentation).exists

    def h_plus(self, expected):
        return h_plus(self.presentation).dimension

    def delta(self, expected):
        return {k: delta_k(self.presentation, int(k)) for k in expected}

    def dimensions(self, expected):
        return {theory: {degree: cohomology(self.presentation, Theory.from_text(theory),
                                            parse_degree(degree)).dimension
                         for degree in degrees}
                for theory, degrees in expected.items()}

    def origin_equals(self, expected):
        origin = self.presentation.specialize(origin_assignment(self.presentation))
        comparison = compare(origin, self.base(expected))
        return expected if comparison.equal else comparison.to_dict()

    def deformation(self, expected):
        base = self.base(expected['of'])
        substitution = CoframeSubstitution.parse(
            base, expected['sub'], parse_params(expected.get('params', ())))
        comparison = compare(deform(base, substitution), self.presentation)
        return expected if comparison.equal else comparison.to_dict()

    def forms(self, expected):
        results = []
        for item in expected:
            presentation = self.presentation
            result = {'form': item['form']}
            if 'locus' in item:
                presentation = presentation.specialize(
                    parse_locus(presentation.field, item['locus']))
                result['locus'] = item['locus']
            form = parse_form(presentation.algebra, item['form'])
            result['closed'] = not presentation.d(form)
            result['nondegenerate'] = bool(form.power(presentation.n).top_coefficient())
            results.append(result)
        return results

    def neutral_cy(self, expected):
        form = parse_form(self.presentation.algebra, expected['form'])
        verdict = neutral_cy_check(self.presentation, form)
        return {'form': expected['form'],
                'signature': None if verdict.signature is None else list(verdict.signature),
                'neutral_calabi_yau': 'neutralCalabiYau' in verdict.tags}

    def efv(self, expected):
        report = efv_counterexample_check(self.presentation, expected['r'])
        return {'r': expected['r'], 'ok': report.ok}


def verify_entry(entry: t.Union[str, CatalogEntry]) -> Verification:
    """Re-derive every expected value of an entry; nothing is read back from the catalog."""
    if isinstance(entry, str):
        entry = find_entry(entry)
    derivation = _Derivation(entry)
    verification = Verification(entry)
    for name, expected in entry.expected.items():
        compute = getattr(derivation, name, None)
        if compute is None or name.startswith('_') or not callable(compute):
            raise ValueError('catalog entry {} has unknown golden value "{}"'.format(
                entry.id, name))
        actual = compute(expected)
        verification.checks.append(Check(name, expected, actual))
        if not verification.checks[-1].ok:
            _LOG.warning('catalog entry %s: %s expected %r, got %r', entry.id, name,
                         expected, actual)
    _LOG.info('verified catalog entry %s: %s', entry.id, 'ok' if verification.ok else 'FAILED')
    return verification
