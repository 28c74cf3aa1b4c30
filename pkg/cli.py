"""
Command-line entry point.

    python cli.py compute ball:1 --n 4
    python cli.py verify interlacing --n 6 --k 3 --trials 1000 --seed 7
    python cli.py sweep surface-slicing --n 4 --r 2,4,8 --seed 7

Exit codes: 0 pass, 1 violation found, 2 usage/parse/domain error,
3 numerical failure.
"""

import argparse
import json
import logging
import os
import sys
import traceback
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from config import (
    CHUNK_SIZE,
    DEBUG,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    DEFAULT_WORKERS,
    LOG_LEVEL,
    OUTPUT_DIR,
    VERIFY_MIN_SAMPLES,
)
from bodies.families import EllipsoidRef
from bodies.metrics import METRIC_FIELDS, mc_metrics
from ellipsoid.ellipsoid import Ellipsoid
from experiments.records import VerdictReport
from experiments.sweeps import sweep_p_limits, sweep_q_unbounded, sweep_quermass_slicing, sweep_surface_slicing
from experiments.verifiers import (
    RANDOM_DIMENSIONS,
    default_body_matrix,
    random_dimension,
    random_ellipsoid,
    verify_body_inequalities,
    verify_cube_section,
    verify_ellipsoid_suite,
    verify_extremal_sections,
    verify_interlacing,
    verify_positive_bound,
    verify_prop_sec71,
    verify_random_positive_bounds,
)
from numkit.errors import DomainError, GeometryError
from sampling.rng import RngStream
from utils.body_spec import parse_body_spec
from utils.record_formatter import VERDICT_HEADER, RecordFormatter

logger = logging.getLogger(__name__)

COMMANDS = ('compute', 'verify', 'sweep')
FORMATS = ('csv', 'json')
VERIFY_TARGETS = (
    'interlacing', 'extremal-sections', 'positive-bound',
    'ellipsoid-slicing', 'cube-section', 'inequalities',
)
SWEEP_TARGETS = ('surface-slicing', 'quermass-slicing', 'q-unbounded', 'p-limits')
METRICS_HEADER = ['body', 'dim', 'seed'] + [column for name in METRIC_FIELDS for column in (name, f'{name}_se')]
SWEEP_HEADER = ['sweep_name', 'parameter', 'inputs', 'seed', 'ratio', 'ratio_se']

DEFAULT_COUNT = 50
DEFAULT_GRID = [2.0, 4.0, 8.0]
DEFAULT_NEEDLES = [0.5, 0.25, 0.125]
DEFAULT_WL1_GRID = [1.0, 10.0, 100.0]
DEFAULT_BOX_GRID = [10.0, 100.0, 1000.0]
CUBE_SCAN_TRIALS = 10_000


@dataclass
class RunConfig:
    """Everything a run depends on; echoed into every output file."""

    command: str
    target: Optional[str] = None
    body: Optional[str] = None
    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES
    out: Optional[str] = None
    format: Optional[str] = None
    n: Optional[int] = None
    k: Optional[int] = None
    j: Optional[int] = None
    r: List[float] = field(default_factory=list)
    a: List[float] = field(default_factory=list)
    s: List[float] = field(default_factory=list)
    trials: Optional[int] = None
    family: str = 'wl1'
    count: int = DEFAULT_COUNT
    workers: int = DEFAULT_WORKERS
    chunk_size: int = CHUNK_SIZE

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise DomainError(f'unknown command {self.command!r}, expected one of {COMMANDS}')
        targets = {'verify': VERIFY_TARGETS, 'sweep': SWEEP_TARGETS}.get(self.command)
        if targets is not None and self.target not in targets:
            raise DomainError(f'unknown {self.command} target {self.target!r}, expected one of {targets}')
        if self.command == 'compute' and not self.body:
            raise DomainError('compute needs a body description')
        if self.format is None:
            self.format = 'json' if self.command == 'verify' else 'csv'
        if self.format not in FORMATS:
            raise DomainError(f'unknown format {self.format!r}, expected one of {FORMATS}')
        if self.command == 'verify' and self.samples < VERIFY_MIN_SAMPLES:
            raise DomainError(f'verify needs at least {VERIFY_MIN_SAMPLES} samples, got {self.samples}')
        if self.samples < 2:
            raise DomainError(f'samples must be >= 2, got {self.samples}')
        for name in ('trials', 'count', 'workers', 'chunk_size'):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise DomainError(f'{name} must be positive, got {value}')
        if self.command == 'sweep' and self.family == 'box' and len(self.s) > 1:
            raise DomainError(f'the box family sweeps --a at a single --s, got s={self.s}')
        RngStream(self.seed)

    def echo(self) -> Dict[str, Any]:
        return asdict(self)

    def stream(self) -> RngStream:
        return RngStream(self.seed)

    def default_path(self) -> str:
        name = '-'.join(part for part in (self.command, self.target) if part)
        return os.path.join(OUTPUT_DIR, f'{name}-{self.seed}.{self.format}')


# Each runner returns (rows, fixed header, passed)
RunResult = Tuple[List[Dict[str, Any]], List[str], bool]


def _ellipsoid_body(config: RunConfig) -> Optional[Ellipsoid]:
    if not config.body:
        return None
    body = parse_body_spec(config.body, config.n)
    if not isinstance(body, Ellipsoid):
        raise DomainError(f'{config.target} needs an ellipsoid body, got {config.body!r}')
    return body


def _dims(config: RunConfig) -> Tuple[int, int]:
    return (config.n, config.n) if config.n is not None else RANDOM_DIMENSIONS


def _verdict(report: VerdictReport) -> RunResult:
    return [report.to_row()], list(VERDICT_HEADER), report.passed


def run_compute(config: RunConfig) -> RunResult:
    body = parse_body_spec(config.body, config.n)
    if isinstance(body, Ellipsoid):
        body = EllipsoidRef(body)
    metrics = mc_metrics(body, config.samples, config.stream(), config.chunk_size, config.workers)
    return [metrics.to_row()], list(METRICS_HEADER), True


def _verify_interlacing(config: RunConfig) -> VerdictReport:
    n = config.n or 6
    k = config.k or max(1, n // 2)
    return verify_interlacing(n, k, config.trials or DEFAULT_TRIALS, config.stream())


def _verify_extremal_sections(config: RunConfig) -> VerdictReport:
    return verify_extremal_sections(
        config.count, config.trials or DEFAULT_TRIALS, config.samples, config.stream(),
        codim=config.k or 1, index=1 if config.j is None else config.j, dims=_dims(config),
        chunk_size=config.chunk_size, workers=config.workers,
    )


def _verify_positive_bound(config: RunConfig) -> VerdictReport:
    body = _ellipsoid_body(config)
    trials = config.trials or 100
    if body is None:
        return verify_random_positive_bounds(
            config.count, config.samples, config.stream(), trials=trials, dims=_dims(config),
            codim=config.k, chunk_size=config.chunk_size, workers=config.workers,
        )
    return verify_positive_bound(
        body, config.k or 1, config.samples, config.stream(), trials=trials,
        chunk_size=config.chunk_size, workers=config.workers,
    )


def _verify_ellipsoid_slicing(config: RunConfig) -> VerdictReport:
    body = _ellipsoid_body(config)
    rng = config.stream()
    if body is not None:
        return verify_prop_sec71(body, config.samples, rng, chunk_size=config.chunk_size, workers=config.workers)
    report = VerdictReport(theorem_tag='ellipsoid-slicing', seeds=[rng.seed])
    constants = []
    for c in range(config.count):
        sub = rng.derive(c)
        ellipsoid = random_ellipsoid(random_dimension(sub.derive(0), _dims(config)), sub.derive(1))
        single = verify_prop_sec71(ellipsoid, config.samples, sub.derive(2), chunk_size=config.chunk_size, workers=config.workers)
        constants.append(single.details['section_constant'])
        report.merge(single)
    report.details = {'ellipsoids': config.count, 'section_constant_sup': max(constants)}
    return report


def _verify_cube_section(config: RunConfig) -> VerdictReport:
    return verify_cube_section(config.trials or CUBE_SCAN_TRIALS, config.stream())


def _verify_inequalities(config: RunConfig) -> VerdictReport:
    rng = config.stream()
    if config.body:
        body = parse_body_spec(config.body, config.n)
        if isinstance(body, Ellipsoid):
            report = verify_body_inequalities([EllipsoidRef(body)], config.samples, rng.derive(0),
                                              chunk_size=config.chunk_size, workers=config.workers)
            return report.merge(verify_ellipsoid_suite([body], config.samples, rng.derive(1),
                                                       chunk_size=config.chunk_size, workers=config.workers))
        return verify_body_inequalities([body], config.samples, rng.derive(0),
                                        chunk_size=config.chunk_size, workers=config.workers)

    low, high = _dims(config)
    bodies = default_body_matrix(range(low, high + 1), config.count, rng.derive(2))
    report = verify_body_inequalities(bodies, config.samples, rng.derive(0),
                                      chunk_size=config.chunk_size, workers=config.workers)
    ellipsoids = [body.ellipsoid for body in bodies if isinstance(body, EllipsoidRef)]
    report.merge(verify_ellipsoid_suite(ellipsoids, config.samples, rng.derive(1),
                                        chunk_size=config.chunk_size, workers=config.workers))
    report.theorem_tag = 'inequalities'
    return report


VERIFIERS: Dict[str, Callable[[RunConfig], VerdictReport]] = {
    'interlacing': _verify_interlacing,
    'extremal-sections': _verify_extremal_sections,
    'positive-bound': _verify_positive_bound,
    'ellipsoid-slicing': _verify_ellipsoid_slicing,
    'cube-section': _verify_cube_section,
    'inequalities': _verify_inequalities,
}


def run_verify(config: RunConfig) -> RunResult:
    return _verdict(VERIFIERS[config.target](config))


def run_sweep(config: RunConfig) -> RunResult:
    rng = config.stream()
    options = {'chunk_size': config.chunk_size, 'workers': config.workers}
    if config.target == 'surface-slicing':
        records = sweep_surface_slicing(config.n or 4, config.r or DEFAULT_GRID, config.samples, rng, **options)
    elif config.target == 'quermass-slicing':
        records = sweep_quermass_slicing(
            config.n or 5, config.k or 2, 1 if config.j is None else config.j,
            config.r or DEFAULT_GRID, config.samples, rng, **options,
        )
    elif config.target == 'q-unbounded':
        records = sweep_q_unbounded(config.n or 3, config.a or DEFAULT_NEEDLES, config.samples, rng, **options)
    elif config.family == 'box':
        s = config.s[0] if config.s else 1.0
        records = sweep_p_limits(config.n or 8, 'box', config.a or DEFAULT_BOX_GRID, config.samples, rng, s=s, **options)
    else:
        records = sweep_p_limits(config.n or 8, config.family, config.s or DEFAULT_WL1_GRID, config.samples, rng, **options)
    return [record.to_row() for record in records], list(SWEEP_HEADER), True


RUNNERS: Dict[str, Callable[[RunConfig], RunResult]] = {
    'compute': run_compute,
    'verify': run_verify,
    'sweep': run_sweep,
}


def run(config: RunConfig) -> Tuple[int, str]:
    """
    Execute a run and render its output.

    Returns:
        (exit status, rendered CSV or JSON text). The status is 1 when a
        verifier found a violation and 0 otherwise.
    """
    logger.info(f"Running {config.command} {config.target or ''} (seed={config.seed}, samples={config.samples})")
    rows, fixed, passed = RUNNERS[config.command](config)
    if config.format == 'json':
        text = RecordFormatter.to_json(config.echo(), rows)
    else:
        text = RecordFormatter.to_csv(rows, RecordFormatter.header_for(rows, fixed))
    return (0 if passed else 1), text


def execute(config: RunConfig, stdout=None, stderr=None) -> int:
    """Run, write the output (atomically unless it goes to stdout) and return the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        status, text = run(config)
    except GeometryError as e:
        logger.error(f"Run failed: {str(e)}")
        logger.debug(traceback.format_exc())
        stderr.write(json.dumps(RecordFormatter.format_error(e)) + '\n')
        return e.exit_code
    except (ArithmeticError, ValueError) as e:
        logger.error(f"Numerical failure: {str(e)}")
        logger.debug(traceback.format_exc())
        stderr.write(json.dumps(RecordFormatter.format_error(e)) + '\n')
        return 3

    if config.out == '-':
        stdout.write(text)
    else:
        path = config.out or config.default_path()
        RecordFormatter.write_atomic(path, text)
        logger.info(f"Wrote {path}")
    return status


def _float_list(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(',')]
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected comma-separated numbers, got {text!r}') from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=DEFAULT_SEED, help='Unsigned 64-bit seed')
    common.add_argument('--samples', type=int, default=DEFAULT_SAMPLES, help='Monte-Carlo samples per estimate')
    common.add_argument('--out', default=None, help="Output path ('-' for stdout)")
    common.add_argument('--format', choices=FORMATS, default=None, help='Output format')
    common.add_argument('--n', type=int, default=None, help='Dimension')
    common.add_argument('--k', type=int, default=None, help='Codimension or subspace dimension')
    common.add_argument('--j', type=int, default=None, help='Quermassintegral index')
    common.add_argument('--trials', type=int, default=None, help='Random subspaces or directions per scan')
    common.add_argument('--count', type=int, default=DEFAULT_COUNT, help='Random bodies in a batch')
    common.add_argument('--workers', type=int, default=DEFAULT_WORKERS, help='Threads per estimate')
    common.add_argument('--chunk-size', type=int, default=CHUNK_SIZE, help='Samples per chunk')

    parser = argparse.ArgumentParser(description='Convex-geometry toolkit: metrics, verifiers and sweeps')
    commands = parser.add_subparsers(dest='command', required=True)

    compute = commands.add_parser('compute', parents=[common], help='Metrics of one body')
    compute.add_argument('body', help='Body description, e.g. ball:1 or ellipsoid:1,2,3')

    verify = commands.add_parser('verify', parents=[common], help='Run an inequality verifier')
    verify.add_argument('target', choices=VERIFY_TARGETS)
    verify.add_argument('--body', default=None, help='Body description (ellipsoid targets)')

    sweep = commands.add_parser('sweep', parents=[common], help='Run a divergence sweep')
    sweep.add_argument('target', choices=SWEEP_TARGETS)
    sweep.add_argument('--r', type=_float_list, default=[], help='Grid of r values')
    sweep.add_argument('--a', type=_float_list, default=[], help='Grid of a values')
    sweep.add_argument('--s', type=_float_list, default=[], help='Grid of s values (box: the short side)')
    sweep.add_argument('--family', choices=('wl1', 'box'), default='wl1', help='p-limits family')
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        target=getattr(args, 'target', None),
        body=getattr(args, 'body', None),
        seed=args.seed,
        samples=args.samples,
        out=args.out,
        format=args.format,
        n=args.n,
        k=args.k,
        j=args.j,
        r=getattr(args, 'r', []),
        a=getattr(args, 'a', []),
        s=getattr(args, 's', []),
        trials=args.trials,
        family=getattr(args, 'family', 'wl1'),
        count=args.count,
        workers=args.workers,
        chunk_size=args.chunk_size,
    )


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=logging.DEBUG if DEBUG else getattr(logging, LOG_LEVEL, logging.INFO))
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
    except GeometryError as e:
        sys.stderr.write(json.dumps(RecordFormatter.format_error(e)) + '\n')
        return e.exit_code
    return execute(config)


if __name__ == '__main__':
    sys.exit(main())
