import logging
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import wraps

import click
from pydantic import BaseModel

from chebpart import __version__
from chebpart.config import config
from chebpart.const import Cell, OrbitMap, Suite, TraceTag
from chebpart.density import cell_census, compare, predicted_cell_densities
from chebpart.dynamics import chebyshev_map_orbit, orbit_divisor_report, rotation_orbit
from chebpart.lib.arith import canonical, is_odd_prime, parse_rational, primes_up_to
from chebpart.lib.exceptions import ChebpartError, ExcludedPrime, IdentityViolation, InvalidRational, NotAnOddPrime, TrivialTrace
from chebpart.lucas import LucasParams, classify_params, divisor_class_routes, simple_values, trace_of, twin_params
from chebpart.models import (
    CellCensusModel,
    ClassifyModel,
    DensityModel,
    DensityRowModel,
    LucasModel,
    LucasPrimeModel,
    OrbitModel,
    OrbitPointModel,
    OutputEnvelope,
    PrimeClassModel,
    SuiteModel,
    TraceModel,
)
from chebpart.partition import DENOMINATOR_DIVISOR, cell_assignment, classify_prime
from chebpart.sl2 import appearance_index
from chebpart.traceclass import classify_trace, relate_partitions, theoretical_densities
from chebpart.verify import run_suite

logger = logging.getLogger(__name__)

PREDICTED_TAGS = (TraceTag.GENERIC, TraceTag.CASE_A, TraceTag.CASE_B, TraceTag.CASE_C)


class RationalParamType(click.ParamType):
    name = 'rational'

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return parse_rational(value)
        except InvalidRational:
            self.fail(f'{value!r} is not of the form a/b or a', param, ctx)


RATIONAL = RationalParamType()


@dataclass
class Options:
    fmt: str
    threads: int | None


def handle_errors(f):
    """Report a ChebpartError on stderr and exit with its exit code."""

    @wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except ChebpartError as e:
            click.echo(f'{e.error_code}: {e}', err=True)
            if isinstance(e, IdentityViolation):
                click.echo(f'failing instance: {_jsonable(e.instance)}', err=True)
            click.get_current_context().exit(e.exit_code)

    return wrapper


def _jsonable(value):
    if isinstance(value, Fraction):
        return canonical(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def emit(command: str, parameters: dict, model: BaseModel, text: str, started: float, cache_hit: bool = False):
    if click.get_current_context().obj.fmt == 'json':
        envelope = OutputEnvelope(
            command=command,
            parameters=_jsonable(parameters),
            result=model.dict(),
            timing=round(time.perf_counter() - started, 6),
            cache_hit=cache_hit,
        )
        click.echo(envelope.json())
    else:
        click.echo(text)


def _odd_primes(prime: int | None, limit: int | None) -> list[int]:
    if (prime is None) == (limit is None):
        raise click.UsageError('give exactly one of --prime and --limit')
    if prime is not None:
        if not is_odd_prime(prime):
            raise NotAnOddPrime(f'{prime}')
        return [prime]
    if limit < 3:
        raise click.BadParameter(f'{limit} < 3', param_hint='--limit')
    return primes_up_to(limit)[1:]


@click.group()
@click.version_option(__version__)
@click.option('--format', 'fmt', type=click.Choice(['text', 'json']), default='text',
              help='aligned text tables, or one JSON object per line')
@click.option('--threads', type=int, help='census worker processes; default one per core')
@click.option('--log-level', type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR'], case_sensitive=False))
@click.pass_context
def cli(ctx, fmt, threads, log_level):
    """Prime partitions induced by Chebyshev polynomials at rational traces."""
    logging.basicConfig(
        level=(log_level or config.LOG_LEVEL).upper(),
        stream=sys.stderr,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
    )
    ctx.obj = Options(fmt, threads)


def _prime_row(q: Fraction, p: int, depth: int) -> PrimeClassModel:
    cls = classify_prime(q, p)
    if cls == DENOMINATOR_DIVISOR:
        return PrimeClassModel(p=p, cls=str(cls), xi=None, cell_path=[])
    path = []
    try:
        for k in range(1, depth + 1):
            path += [(cell := cell_assignment(q, p, k).cell).value]
            if cell != Cell.BOTH_R:
                break
    except ExcludedPrime:
        pass
    return PrimeClassModel(p=p, cls=str(cls), xi=appearance_index(q, p).xi, cell_path=path)


@cli.command()
@click.option('--q', 'q', type=RATIONAL, required=True, help='rational trace a/b')
@click.option('--prime', type=int, help='classify this odd prime')
@click.option('--limit', type=int, help='classify every odd prime up to this bound')
@click.option('--depth', type=int, default=3, show_default=True, help='deepest cell table on the cell path')
@handle_errors
def classify(q, prime, limit, depth):
    """The class of each prime in the partition of q."""
    started = time.perf_counter()
    rows = [_prime_row(q, p, depth) for p in _odd_primes(prime, limit)]

    lines = [f'{"p":>10}  {"class":<20}{"xi":>10}  cells']
    for row in rows:
        xi = '' if row.xi is None else row.xi
        lines += [f'{row.p:>10}  {row.cls:<20}{xi:>10}  {" > ".join(row.cell_path)}']

    emit('classify', {'q': q, 'prime': prime, 'limit': limit}, ClassifyModel(q=canonical(q), primes=rows),
         '\n'.join(lines), started)


def _cells_model(q: Fraction, limit: int, depth: int, threads: int | None) -> CellCensusModel:
    census = cell_census(q, limit, depth, threads)
    predicted = None
    if classify_trace(q).tag in PREDICTED_TAGS:
        predicted = {}
        for k in range(1, depth + 1):
            pr = predicted_cell_densities(q, k)
            predicted[k] = {'omega': canonical(pr.omega), 'r': canonical(pr.r)} | {
                f'r_gamma_{s}': canonical(v) for s, v in pr.r_gamma.items()
            }
    return CellCensusModel(
        max_depth=depth,
        admissible=census.admissible,
        cells={k: {cell.value: n for cell, n in cells.items()} for k, cells in census.cells.items()},
        omega_plus=census.omega_plus,
        omega_minus=census.omega_minus,
        r_counts=census.r_counts,
        coincide=census.coincide,
        violations=census.violations,
        predicted=predicted,
    )


@cli.command()
@click.option('--q', 'q', type=RATIONAL, required=True)
@click.option('--limit', type=int, required=True, help='census of the odd primes up to this bound')
@click.option('--tolerance', type=float, help=f'absolute tolerance; default {config.LIMITS.TOLERANCE}')
@click.option('--cells', type=int, help='also tally the cell tables down to this depth')
@click.option('--cache/--no-cache', default=None, help='reuse stored classifications')
@click.pass_obj
@handle_errors
def density(opts, q, limit, tolerance, cells, cache):
    """Empirical class densities against the exact profile; exits 1 on FAIL."""
    started = time.perf_counter()
    report = compare(q, limit, tolerance, opts.threads, cache)
    census = report.census
    cells_model = _cells_model(q, limit, cells, opts.threads) if cells else None

    model = DensityModel(
        q=canonical(q),
        limit=limit,
        tolerance=report.tolerance,
        admissible=census.admissible,
        excluded=census.excluded,
        rows=[
            DensityRowModel(
                cls=str(row.cls), count=row.count, empirical=float(row.empirical),
                theoretical=canonical(row.theoretical), deviation=float(row.deviation), flagged=row.flagged,
            )
            for row in report.rows
        ],
        dyadic_ratios={s: float(r) for s, r in report.dyadic_ratios().items()},
        passed=report.passed,
        cells=cells_model,
    )

    lines = [
        f'q = {canonical(q)}: {census.admissible} admissible odd primes up to {limit}, '
        f'{census.excluded} excluded, tolerance {report.tolerance}',
        f'{"class":<10}{"count":>10}{"empirical":>12}{"exact":>10}{"deviation":>12}',
    ]
    for row in model.rows:
        verdict = 'FAIL' if row.flagged else 'PASS'
        lines += [f'{row.cls:<10}{row.count:>10}{row.empirical:>12.5f}{row.theoretical:>10}{row.deviation:>12.5f}  {verdict}']
    if model.dyadic_ratios:
        lines += ['dyadic ratios: ' + ', '.join(f's={s}: {r:.3f}' for s, r in model.dyadic_ratios.items())]
    if cells_model:
        for k, row in cells_model.cells.items():
            fractions = ', '.join(f'{cell} {n / cells_model.admissible:.4f}' for cell, n in row.items())
            lines += [f'table {k}: {fractions}; |R_{k}| {cells_model.r_counts[k] / cells_model.admissible:.4f}'
                      f'{" (coincide)" if cells_model.coincide[k] else ""}']
        if cells_model.violations:
            lines += [f'{cells_model.violations} cell containment violations']

    emit('density', {'q': q, 'limit': limit, 'tolerance': tolerance, 'cells': cells}, model,
         '\n'.join(lines), started, census.cache_hit)

    ctx = click.get_current_context()
    if cells_model and cells_model.violations:
        ctx.exit(IdentityViolation.exit_code)
    if not report.passed:
        ctx.exit(1)


@cli.command()
@click.option('--suite', 'suite_name', type=click.Choice([s.value for s in Suite]), required=True)
@click.option('--limit', type=int, help='largest prime checked')
@handle_errors
def verify(suite_name, limit):
    """Run a verification suite; exits 4 on any violation."""
    started = time.perf_counter()
    report = run_suite(suite_name, limit)
    violations = _jsonable(report.violations)
    model = SuiteModel(
        suite=report.suite.value, limit=report.limit, instances=report.instances,
        violations=violations, passed=report.passed,
    )
    verdict = 'PASS' if report.passed else 'FAIL'
    text = f'{report.suite.value}: {report.instances} instances, {len(violations)} violations  {verdict}'
    emit('verify', {'suite': suite_name, 'limit': limit}, model, text, started)

    if violations:
        for v in violations[:20]:
            click.echo(f'failing instance: {v}', err=True)
        click.get_current_context().exit(IdentityViolation.exit_code)


@cli.command()
@click.option('--q', 'q', type=RATIONAL, required=True)
@handle_errors
def trace(q):
    """Trace classification, exact density profile and partition relations."""
    started = time.perf_counter()
    tc = classify_trace(q)
    try:
        profile = theoretical_densities(q)
    except TrivialTrace:
        profile = None
    relations = [st for relation in relate_partitions(q) for st in relation.statements]

    values = [canonical(v) for v in profile.values(profile.dyadic_from + 2)] if profile else None
    model = TraceModel(
        q=canonical(q), tag=tc.tag.value, classification=str(tc), profile=values,
        dyadic_from=profile.dyadic_from if profile else None, relations=relations,
    )
    lines = [f'{canonical(q)}: {tc}']
    if values:
        lines += [f'profile ({", ".join(values)}, …), dyadic from Pi({profile.dyadic_from})']
    lines += relations
    emit('trace', {'q': q}, model, '\n'.join(lines), started)


@cli.command()
@click.option('--t', 'T', type=int, required=True, help='trace T')
@click.option('--det', 'Q', type=int, required=True, help='determinant Q, nonzero')
@click.option('--prime', type=int)
@click.option('--limit', type=int)
@handle_errors
def lucas(T, Q, prime, limit):
    """Square conditions of (T, Q) and the class of prime divisors of L_n, K_n by both routes."""
    started = time.perf_counter()
    if Q == 0:
        raise click.BadParameter('must be nonzero', param_hint='--det')
    params = LucasParams(T, Q)
    pc = classify_params(params)
    sv, _ = simple_values(params)
    twin = twin_params(params)

    rows = []
    if prime is not None or limit is not None:
        for p in _odd_primes(prime, limit):
            try:
                by_trace, direct = divisor_class_routes(params, p)
            except ExcludedPrime:
                if prime is not None:
                    raise
                continue
            if by_trace != direct:
                raise IdentityViolation('divisor class routes', {
                    'params': str(params), 'p': p, 'classifier': str(by_trace), 'direct': str(direct),
                })
            rows += [LucasPrimeModel(p=p, classifier=str(by_trace), direct=str(direct))]

    model = LucasModel(
        T=T, Q=Q, D=params.D, q=canonical(trace_of(params)),
        simple_value=(sv.params.T, sv.params.Q), twin=(twin.T, twin.Q),
        tag=pc.classification.tag.value, squares=pc.squares, primes=rows,
    )
    lines = [
        f'{params}: q = {model.q}, D = {params.D}, {pc.classification}',
        f'simple value ({sv.params.T},{sv.params.Q}), twin {twin}',
        f'squares: {", ".join(pc.squares) or "none"}',
    ]
    lines += [f'{row.p:>10}  {row.classifier:<12} (direct {row.direct})' for row in rows]
    emit('lucas', {'t': T, 'det': Q, 'prime': prime, 'limit': limit}, model, '\n'.join(lines), started)


@cli.command()
@click.option('--map', 'map_', type=click.Choice([m.value for m in OrbitMap]), required=True)
@click.option('--degree', type=int, default=2, show_default=True, help='m of q -> C_m(q)')
@click.option('--q0', type=RATIONAL, required=True, help='starting trace; q1 for the rotation')
@click.option('--w0', type=RATIONAL, help='imaginary part of a start on q^2 + w^2 = 4')
@click.option('--steps', type=int, help=f'default {config.LIMITS.ORBIT_STEPS}')
@click.option('--factor-bound', type=int, help='trial division bound for the numerators')
@handle_errors
def orbit(map_, degree, q0, w0, steps, factor_bound):
    """Orbit numerators with their prime factors and divisor checks."""
    started = time.perf_counter()
    if OrbitMap(map_) == OrbitMap.ROTATION:
        points = rotation_orbit(q0, w0, steps)
    else:
        points = chebyshev_map_orbit(degree, q0, steps, w0)
    report = orbit_divisor_report(points, factor_bound)

    model = OrbitModel(
        map=map_,
        degree=points.degree,
        start=canonical(points.start),
        points=[
            OrbitPointModel(
                n=pt.n, q=canonical(pt.q), w=None if pt.w is None else canonical(pt.w),
                numerator=pt.numerator, exponent=pt.exponent, factors=step.factors, cofactor=step.cofactor,
            )
            for pt, step in zip(points, report.steps)
        ],
        bound_violations=report.bound_violations,
        gcd_violations=report.gcd_violations,
        distinct_primes=report.distinct_primes,
        prime_count=report.prime_count,
        classes=report.classes,
        passed=report.passed,
    )
    lines = []
    for pt in model.points:
        parts = [f'{p}^{e}' if e > 1 else f'{p}' for p, e in pt.factors]
        if pt.cofactor > 1:
            parts += [f'({pt.cofactor} unfactored)']
        lines += [f"{pt.n:>3}  a = {pt.numerator}  [{' · '.join(parts)}]"]
    lines += [
        f'{report.distinct_primes} distinct odd prime divisors of {report.prime_count} odd primes '
        f'up to {report.factor_bound}',
        f'bound violations {report.bound_violations}, gcd violations {report.gcd_violations}  '
        f'{"PASS" if report.passed else "FAIL"}',
    ]
    if report.classes:
        lines += ['divisor classes: ' + ', '.join(f'{c} {n}' for c, n in sorted(report.classes.items()))]
    emit('orbit', {'map': map_, 'degree': degree, 'q0': q0, 'w0': w0, 'steps': steps}, model,
         '\n'.join(lines), started)
    if not report.passed:
        click.get_current_context().exit(IdentityViolation.exit_code)


def main():
    cli(prog_name='chebpart')
