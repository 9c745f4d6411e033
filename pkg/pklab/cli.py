"""Command-line interface of pklab."""

import argparse
import csv
import io
import itertools
import json
import logging
import pathlib
import sys
import time
import typing as t

from ._version import VERSION
from .catalog import find_entry, load_catalog, verify_entry
from .coeffs import Assignment, ParamDecl, ParamKind, Scalar, Substitution
from .cohomology import Theory, cohomology, delta_k, duality_check, upper_semicontinuity_probe
from .connection import curvature, is_flat, is_ricci_flat, levi_civita
from .deform import CoframeSubstitution, compare, deform
from .errors import PklabError
from .exterior import Presentation
from .lie import ascending_central_series, center, j_series, lower_central_series, nilpotency, \
    realize
from .parse import load_presentation, parse_assignment, parse_degree, parse_form, parse_locus, \
    parse_names, parse_params, parse_range, parse_scalar
from .pksolver import closed_compatible_family, efv_counterexample_check, h_plus, \
    neutral_cy_check, phs_decompose, pk_exists, symplectic_exists
from .unparse import unparse

__all__ = ['COMMANDS', 'Report', 'parse', 'load_source', 'run', 'main']

_LOG = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2

COMMANDS = (
    'validate', 'classify', 'cohomology', 'delta', 'pseudokahler', 'symplectic', 'curvature',
    'deform', 'decompose', 'sweep', 'catalog')


class Report:

    """Result of one command: verdicts, certificates and exit code."""

    def __init__(self, command: str, inputs: t.Mapping[str, t.Any]):
        self.command = command
        self.inputs = dict(inputs)
        self.verdicts = {}  # type: t.Dict[str, t.Any]
        self.certificates = {}  # type: t.Dict[str, t.Any]
        self.notes = []  # type: t.List[str]
        self.exit_code = EXIT_OK
        self.timing = None  # type: t.Optional[float]
        self.text = None  # type: t.Optional[str]

    def to_dict(self, timing: bool = True) -> t.Dict[str, t.Any]:
        result = {
            'command': self.command, 'inputs': self.inputs, 'verdicts': self.verdicts,
            'certificates': self.certificates, 'notes': self.notes,
            'exit_code': self.exit_code}
        if timing:
            result['timing'] = self.timing
        return result

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2)

    def to_text(self) -> str:
        if self.text is not None:
            return self.text
        lines = []
        for name, value in sorted(self.verdicts.items()):
            if isinstance(value, (dict, list)):
                value = json.dumps(value, sort_keys=True)
            lines.append('{}: {}'.format(name, value))
        lines.extend('note: {}'.format(note) for note in self.notes)
        return '\n'.join(lines) + '\n'


def parse(path: t.Union[str, pathlib.Path]) -> Presentation:
    """Presentation read from a file."""
    return load_presentation(path)


def load_source(source: str) -> Presentation:
    """Presentation from a file path, or from the catalog when no such file exists."""
    path = pathlib.Path(source)
    if path.is_file():
        return load_presentation(path)
    return find_entry(source).presentation


def _context(presentation: Presentation, args: argparse.Namespace) -> t.Optional[Substitution]:
    assign = getattr(args, 'assign', None)
    locus = getattr(args, 'locus', None)
    if assign and locus:
        raise ValueError('give either --assign or --locus, not both')
    if assign:
        return parse_assignment(presentation.field, assign)
    if locus:
        return parse_locus(presentation.field, locus)
    return None


def _validate(args: argparse.Namespace, report: Report) -> None:
    presentation = load_source(args.source)
    validation = presentation.validate()
    report.verdicts.update(validation.to_dict())
    report.notes.extend(validation.notes)
    if not validation.ok:
        report.exit_code = EXIT_NEGATIVE
    report.text = '{}: {}\n{}'.format(
        presentation.label, 'valid' if validation.ok else 'INVALID',
        ''.join('  {}\n'.format(failure) for failure in validation.failures)) \
        + unparse(presentation)


def _classify(args: argparse.Namespace, report: Report) -> None:
    presentation = load_source(args.source)
    algebra = realize(presentation, _context(presentation, args))
    nilpotent, step = nilpotency(algebra)
    report.verdicts['nilpotent'] = nilpotent
    report.verdicts['step'] = step
    report.verdicts['center'] = len(center(algebra))
    report.verdicts['lower_central'] = lower_central_series(algebra).to_dict()
    report.verdicts['ascending_central'] = ascending_central_series(algebra).to_dict()
    series = j_series(algebra)
    report.verdicts['j_series'] = series.to_dict()
    report.verdicts['complex_structure'] = series.tag
    report.verdicts['jacobi'] = algebra.check_jacobi()


def _cohomology(args: argparse.Namespace, report: Report) -> None:
    presentation = load_source(args.source)
    context = _context(presentation, args)
    theory = Theory.from_text(args.theory)
    if args.duality:
        duality = duality_check(presentation, context)
        report.verdicts['duality'] = duality.to_dict()
        if not duality.ok:
            report.exit_code = EXIT_NEGATIVE
        return
    degree = parse_degree(args.degree)
    table = cohomology(presentation, theory, degree, context)
    report.verdicts['dimension'] = table.dimension
    report.verdicts['table'] = table.to_dict()
    report.certificates['pivots'] = table.to_dict()['pivots']
    if args.probe:
        probe = upper_semicontinuity_probe(presentation, degree, (), theory)
        report.verdicts['probe'] = probe.to_dict()
        if not probe.ok:
            report.exit_code = EXIT_NEGATIVE


def _delta(args: argparse.Namespace, report: Report) -> None:
    presentation = load_source(args.source)
    context = _context(presentation, args)
    degrees = [args.k] if args.k is not None else list(range(1, 2 * presentation.n))
    values = {str(k): delta_k(presentation, k, context) for k in degrees}
    report.verdicts['delta'] = values
    report.verdicts['ddbar_lemma'] = all(value == 0 for value in values.values()) \
        if args.k is None else None
    report.text = ''.join('Delta^{} = {}\n'.format(k, value) for k, value in values.items())


def _verdict_report(verdict, report: Report, witness: bool = False) -> None:
    data = verdict.to_dict()
    if witness:
        report.verdicts['witness'] = data['witness']
        report.verdicts['witness_form'] = data['witness_form']
    report.verdicts[verdict.kind] = verdict.exists
    report.verdicts['family_dimension'] = verdict.family.dimension
    report.verdicts['tags'] = data['tags']
    report.verdicts['signature'] = data['signature']
    report.verdicts['lemma'] = data['lemma']
    report.certificates['family'] = data['family']
    report.certificates['nondegeneracy'] = data['nondegeneracy']
    report.certificates['witness'] = data['witness']
    report.certificates['witness_form'] = data['witness_form']
    report.certificates['checks'] = data['checks']
    if 'certificate' in data:
        report.certificates['zero_polynomial'] = data['certificate']
    report.notes.extend(data['notes'])
    if not verdict.exists:
        report.exit_code = EXIT_NEGATIVE


def _pseudokahler(args: argparse.Namespace, report: Report) -> None:
    presentation = load_source(args.source)
    verdict = pk_exists(presentation, _context(presentation, args),
                        max_bound=args.max_bound,
                        lemma_degrees=range(1, presentation.n + 1) if args.all_lemma else (1,))
    _verdict_report(verdict, report, args.witness)
    if args.h_plus:
        report.verdicts['h_plus'] = h_plus(presentation, _context(presentation, args)).to_dict()


def _symplectic(args: argparse.Namespace, report: Report) -> None:
    presentation = load_source(args.source)
    verdict = symplectic_exists(presentation, _context(presentation, args),
                                max_bound=args.max_bound)
    _verdict_report(verdict, report, args.witness)


def _specialized(presentation: Presentation, form, substitution: t.Optional[Substitution]):
    if substitution is None:
        return presentation, form
    specialized = presentation.specialize(substitution)
    return specialized, form.map(substitution.apply, specialized.algebra)


def _metric(presentation: Presentation, args: argparse.Namespace):
    """Presentation and metric form of the curvature command.

    The metric is an expression or ``family``, the general closed real invariant (1,1) form
    with free unknowns x11, re_x12, im_x12, ... Names given to ``--at`` that are not declared
    parameters become real parameters of the expression.
    """
    at = args.at or []
    if args.metric == 'family':
        family = closed_compatible_family(presentation, _context(presentation, args), True, (0,))
        presentation, form = family.general_form()
    else:
        extra = [name for name in parse_names(at) if name not in presentation.field.symbols]
        if extra:
            presentation = presentation.with_field(presentation.field.extend(
                [ParamDecl(name, ParamKind.REAL) for name in extra]))
        form = parse_form(presentation.algebra, args.metric)
        presentation, form = _specialized(presentation, form, _context(presentation, args))
    if at:
        presentation, form = _specialized(
            presentation, form, parse_assignment(presentation.field, at))
    return presentation, form


def _curvature(args: argparse.Namespace, report: Report) -> None:
    presentation, form = _metric(load_source(args.source), args)
    report.verdicts['metric'] = str(form)
    verdict = neutral_cy_check(presentation, form)
    report.verdicts['tags'] = list(verdict.tags)
    report.verdicts['signature'] = None if verdict.signature is None else list(verdict.signature)
    report.verdicts['checks'] = dict(verdict.checks)
    report.notes.extend(verdict.notes)
    if not verdict.exists:
        report.exit_code = EXIT_NEGATIVE
        return
    connection = levi_civita(presentation, form)
    table = curvature(presentation, connection)
    report.verdicts['flat'] = is_flat(table)
    report.verdicts['ricci_flat'] = is_ricci_flat(table)
    report.certificates['connection'] = connection.to_dict()
    report.certificates['curvature'] = table.to_dict()


def _deform(args: argparse.Namespace, report: Report) -> None:
    presentation = load_source(args.source)
    substitution = CoframeSubstitution.parse(presentation, args.sub, parse_params(args.param))
    deformed = deform(presentation, substitution)
    if args.label:
        deformed = deformed.relabel(args.label)
    text = unparse(deformed)
    report.verdicts['presentation'] = text
    report.verdicts['dbar_closed'] = {
        str(k): v for k, v in substitution.dbar_closed_pieces().items()}
    if args.compare:
        comparison = compare(deformed, load_source(args.compare))
        report.verdicts['compare'] = comparison.to_dict()
        if not comparison.equal:
            report.exit_code = EXIT_NEGATIVE
    if args.emit:
        pathlib.Path(args.emit).write_text(text, encoding='utf-8')
        report.notes.append('written to {}'.format(args.emit))
    report.text = text


def _decompose(args: argparse.Namespace, report: Report) -> None:
    presentation = load_source(args.source)
    if args.efv is not None:
        r = args.efv if args.efv in presentation.field.symbols \
            else parse_scalar(presentation.field, args.efv)
        efv = efv_counterexample_check(presentation, r)
        report.verdicts['efv'] = efv.to_dict()
        if not efv.ok:
            report.exit_code = EXIT_NEGATIVE
        return
    if args.form is None:
        raise ValueError('decompose needs --form or --efv')
    decomposition = phs_decompose(parse_form(presentation.algebra, args.form), presentation)
    report.verdicts.update(decomposition.to_dict())
    if not decomposition.nondegenerate_11:
        report.exit_code = EXIT_NEGATIVE


GridPoint = t.Tuple[t.Dict[str, str], t.Dict[str, Scalar]]


def _grid(presentation: Presentation, texts: t.Sequence[str]) -> t.List[GridPoint]:
    """Points of ``NAME=V1,V2,...`` axes; a value may be an exact range ``start:stop:step``."""
    field = presentation.field
    axes = []
    for text in texts:
        name, _, values = text.partition('=')
        name = name.strip()
        field.param(name)
        axis = []
        for value in (value.strip() for value in values.split(',') if value.strip()):
            if ':' in value:
                axis.extend((name, str(number), field.convert(number))
                            for number in parse_range(value))
            else:
                axis.append((name, value, parse_scalar(field, value)))
        axes.append(axis)
    return [({name: text for name, text, _ in point}, {name: value for name, _, value in point})
            for point in itertools.product(*axes)]


def _parameter_grid(presentation: Presentation, name: str, texts: t.Sequence[str]) \
        -> t.List[GridPoint]:
    """Points ``re + i*im`` of one parameter from ``re=start:stop:step,im=...`` axes."""
    field = presentation.field
    param = field.param(name)
    parts = {'re': parse_range('0'), 'im': parse_range('0')}
    for item in (item for text in texts for item in text.split(',') if item.strip()):
        part, _, values = item.partition('=')
        part = part.strip()
        if part not in parts:
            raise ValueError('grid of parameter {} takes "re=..." and "im=...", got "{}"'.format(
                name, item.strip()))
        parts[part] = parse_range(values)
    real = param.kind is ParamKind.REAL
    if real and parts['im'] != [0]:
        raise ValueError('parameter {} is real, its grid has no "im" axis'.format(name))
    points = []
    for re_, im in itertools.product(parts['re'], parts['im']):
        row = {'re': str(re_)} if real else {'re': str(re_), 'im': str(im)}
        points.append((row, {name: field.convert(re_) + field.convert(im) * field.i}))
    return points


def _sweep_value(presentation: Presentation, context: Substitution, quantity: str,
                 degree) -> t.Any:
    if quantity == 'pk':
        return pk_exists(presentation, context, witness=False, lemma_degrees=()).exists
    if quantity == 'symplectic':
        return symplectic_exists(presentation, context, witness=False).exists
    theory = Theory.from_text(quantity)
    return cohomology(presentation, theory, degree, context).dimension


def _sweep(args: argparse.Namespace, report: Report) -> None:
    presentation = load_source(args.source)
    degree = parse_degree(args.degree)
    if args.param:
        points = _parameter_grid(presentation, args.param, args.grid)
    else:
        points = _grid(presentation, args.grid)
    rows = []
    for row, values in points:
        context = Assignment(presentation.field, values)
        row[args.quantity] = _sweep_value(presentation, context, args.quantity, degree)
        rows.append(row)
    report.verdicts['points'] = rows
    stream = io.StringIO()
    if rows:
        writer = csv.DictWriter(stream, fieldnames=list(rows[0]), lineterminator='\n')
        writer.writeheader()
        writer.writerows(rows)
    report.text = stream.getvalue()


def _catalog(args: argparse.Namespace, report: Report) -> None:
    if args.ids:
        entries = [find_entry(id_) for id_ in args.ids]
    else:
        entries = list(load_catalog().values())
    if not args.verify_catalog:
        report.verdicts['entries'] = [entry.to_dict() for entry in entries]
        report.text = ''.join('{:12} {}\n'.format(entry.id, entry.provenance)
                              for entry in entries)
        return
    results = {}
    lines = []
    for entry in entries:
        verification = verify_entry(entry)
        results[entry.id] = verification.to_dict()
        lines.append('{:12} {}'.format(entry.id, 'ok' if verification.ok else 'FAILED'))
        lines.extend('  {}: expected {!r}, got {!r}'.format(
            check.name, check.expected, check.actual) for check in verification.failures)
        lines.extend('  cited: {}'.format(note) for note in entry.cited)
    report.verdicts['verification'] = results
    report.verdicts['ok'] = all(result['ok'] for result in results.values())
    if not report.verdicts['ok']:
        report.exit_code = EXIT_NEGATIVE
    report.text = '\n'.join(lines) + '\n'


_HANDLERS = {
    'validate': _validate, 'classify': _classify, 'cohomology': _cohomology, 'delta': _delta,
    'pseudokahler': _pseudokahler, 'symplectic': _symplectic, 'curvature': _curvature,
    'deform': _deform, 'decompose': _decompose, 'sweep': _sweep, 'catalog': _catalog}


def _add_context(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--assign', action='append', metavar='NAME=VALUE',
                        help='specialize parameters, e.g. "t=1/2"')
    parser.add_argument('--locus', action='append', metavar='NAME=VALUE',
                        help='restrict to a locus, e.g. "tbar=-t"')


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='pklab', description='Exact pseudo-Kahler and neutral Calabi-Yau verification'
        ' on nilmanifolds given by complex structure equations.')
    parser.add_argument('--version', action='version', version='pklab {}'.format(VERSION))
    parser.add_argument('--json', action='store_true', help='print the report as JSON')
    # suppressed default keeps a --json given before the command
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', default=argparse.SUPPRESS,
                        help='print the report as JSON')
    subparsers = parser.add_subparsers(dest='command', metavar='command')
    subparsers.required = True

    def command(name: str, help_: str, source: bool = True) -> argparse.ArgumentParser:
        subparser = subparsers.add_parser(name, help=help_, parents=[common])
        if source:
            subparser.add_argument('source', help='presentation file or catalog id')
        return subparser

    command('validate', 'check d^2 = 0, integrability and the twist')
    subparser = command('classify', 'nilpotency, center and the J-compatible series')
    _add_context(subparser)
    subparser = command('cohomology', 'dimension of an invariant cohomology space')
    subparser.add_argument('--theory', default='bc',
                           help='deRham, Dolbeault, BottChern (bc) or Aeppli (a)')
    subparser.add_argument('--bidegree', '--degree', dest='degree', default='1,1',
                           metavar='P,Q', help='bidegree "p,q", or degree "k" for de Rham')
    subparser.add_argument('--probe', action='store_true',
                           help='also compare with the origin (upper semicontinuity)')
    subparser.add_argument('--duality', action='store_true',
                           help='compare Bott-Chern and Aeppli numbers in all bidegrees')
    _add_context(subparser)
    subparser = command('delta', 'Delta^k invariants')
    subparser.add_argument('-k', type=int, help='degree (default: all)')
    _add_context(subparser)
    for name, help_ in (('pseudokahler', 'existence of pseudo-Kahler metrics'),
                        ('symplectic', 'existence of invariant symplectic forms')):
        subparser = command(name, help_)
        subparser.add_argument('--max-bound', type=int, default=2,
                               help='largest absolute value tried in the witness search')
        subparser.add_argument('--witness', action='store_true',
                               help='print the witness assignment and form with the verdict')
        _add_context(subparser)
    pk_parser = subparsers.choices['pseudokahler']
    pk_parser.add_argument('--h-plus', action='store_true',
                           help='also compute classes of closed real (1,1) forms')
    pk_parser.add_argument('--all-lemma', action='store_true',
                           help='report h^{k,k}_BC for every k, not only k = 1')
    subparser = command('curvature', 'Levi-Civita connection and curvature of a metric')
    subparser.add_argument('--metric', '--form', dest='metric', required=True,
                           metavar='FORM|family',
                           help='real closed (1,1) form F, or "family" for the general one')
    subparser.add_argument('--at', action='append', metavar='NAME=VALUE,...',
                           help='values of the metric coefficients, e.g. "r=1,s=-1,u=0,v=0"')
    _add_context(subparser)
    subparser = command('deform', 'structure equations in a new (1,0) coframe')
    subparser.add_argument('--sub', action='append', required=True, metavar='"hK = FORM"',
                           help='new generator in terms of the old ones')
    subparser.add_argument('--param', action='append', default=[], metavar='NAME[:KIND]',
                           help='parameter used by the substitution, e.g. "t:complex"')
    subparser.add_argument('--label', help='label of the deformed presentation')
    subparser.add_argument('--emit', help='write the deformed presentation to a file')
    subparser.add_argument('--compare', help='presentation expected after deformation')
    subparser = command('decompose', 'bidegree decomposition of a closed 2-form')
    subparser.add_argument('--form', help='closed real 2-form')
    subparser.add_argument('--efv', metavar='R',
                           help='check the degenerate symplectic-type identities with F_R')
    subparser = command('sweep', 'evaluate a quantity on an exact parameter grid (CSV)')
    subparser.add_argument('--param', metavar='NAME',
                           help='parameter swept over re=...,im=... axes given by --grid')
    subparser.add_argument('--grid', action='append', required=True,
                           metavar='NAME=V1,V2,...|re=A:B:STEP,im=A:B:STEP',
                           help='values per parameter, or ranges of the real and imaginary'
                           ' part of --param')
    subparser.add_argument('--quantity', default='bc',
                           help='pk, symplectic, or a cohomology theory')
    subparser.add_argument('--bidegree', '--degree', dest='degree', default='1,1',
                           metavar='P,Q', help='bidegree "p,q", or degree "k" for de Rham')
    subparser = command('catalog', 'list or verify shipped examples', source=False)
    subparser.add_argument('ids', nargs='*', help='entries (default: all)')
    subparser.add_argument('--verify-catalog', action='store_true',
                           help='re-derive every golden value')
    return parser


def run(command: str, args: argparse.Namespace) -> Report:
    """Execute one command; errors propagate to the caller."""
    if command not in _HANDLERS:
        raise ValueError('unknown command "{}"; known: {}'.format(command, ', '.join(COMMANDS)))
    inputs = {key: value for key, value in sorted(vars(args).items())
              if key not in {'command', 'json'}}
    report = Report(command, inputs)
    start = time.perf_counter()
    _HANDLERS[command](args, report)
    report.timing = time.perf_counter() - start
    _LOG.debug('%s finished in %.3fs with exit code %i', command, report.timing,
               report.exit_code)
    return report


def main(argv: t.Optional[t.Sequence[str]] = None) -> int:
    from . import _logging  # noqa: F401
    args = _parser().parse_args(argv)
    try:
        report = run(args.command, args)
    except (PklabError, OSError, ValueError) as err:
        print('pklab {}: {}'.format(args.command, err), file=sys.stderr)
        return EXIT_ERROR
    print(report.to_json() if args.json else report.to_text(), end='' if not args.json else '\n')
    return report.exit_code
