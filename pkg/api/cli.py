"""
coxnorm/api/cli.py
Command-line interface: build Coxeter groups and reflection graphs, emit and
verify percolation certificates, evaluate kernel norms and run inequality suites.

Exit codes: 0 success, 1 a check failed, 2 usage or build error.
"""

import argparse
import json
import logging
import re
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from api.config import load_config, setup_logging  # noqa: E402
from coxeter.group import build_group  # noqa: E402
from coxeter.serialize import dump_group, load_group  # noqa: E402
from coxeter.spec import parse_spec  # noqa: E402
from kernels.kernel_io import load_kernel, write_reports  # noqa: E402
from kernels.norms import abs_graph_norm, complex_graph_norm, graph_norm  # noqa: E402
from kernels.suites import SUITES, run_suite  # noqa: E402
from percolation.certificate import (build_percolating_certificate, load_certificate,  # noqa: E402
                                     verify_percolation)
from refgraph.graph_io import hypergraph_to_dict, load_graph, to_dot, write_graph  # noqa: E402
from refgraph.hypergraph import ReflectionHypergraph, build_reflection_hypergraph  # noqa: E402
from refgraph.presets import preset  # noqa: E402

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

_SUBSET_FLAG = re.compile(r'^--s(\d+)(?:=(.*))?$')

GRAMMAR = """
Group specs:
  A<n>, B<n>, D<n>   classical families of rank n (D needs n >= 2; D2 is A1xA1)
  I2:<m>             dihedral group of order 2m
  H3, F4             exceptional groups
  X x Y              products, e.g. B3xA1 or A1xA1xA1

Generator subsets are 0-indexed: --s1 1,2 --s2 0,2 gives S_1 = {s_1, s_2}
and S_2 = {s_0, s_2}.

Examples:
  python api/cli.py group-info --group A3
  python api/cli.py group-info --group-file b3.json
  python api/cli.py build --preset q3_hypercube --out q3.json --dot q3.dot
  python api/cli.py build --group A3 --s1 1,2 --s2 0,2
  python api/cli.py percolate --preset c6 --out c6_certificate.json
  python api/cli.py verify --certificate c6_certificate.json
  python api/cli.py verify --suite sidorenko --trials 100 --n 3
  python api/cli.py norm --preset c4 --kernel f.csv
  python api/cli.py norm --graph edges.txt --kernel f.csv --symmetric
"""


def extract_subset_flags(argv: Sequence[str]) -> Tuple[List[str], List[List[int]]]:
    """
    Pull --s1 ... --sk out of argv. The indices must run 1..k without gaps;
    each value is a comma-separated list of generator indices.
    """
    rest, found = [], {}
    argv = list(argv)
    i = 0
    while i < len(argv):
        match = _SUBSET_FLAG.match(argv[i])
        if not match:
            rest.append(argv[i])
            i += 1
            continue
        value = match.group(2)
        if value is None:
            if i + 1 >= len(argv):
                raise ValueError(f"{argv[i]} needs a comma-separated list of generator indices")
            value = argv[i + 1]
            i += 1
        index = int(match.group(1))
        if index in found:
            raise ValueError(f"--s{index} given twice")
        try:
            found[index] = [int(token) for token in value.split(',') if token.strip()]
        except ValueError as exc:
            raise ValueError(f"--s{index} expects integers, got {value!r}") from exc
        i += 1
    if found and sorted(found) != list(range(1, len(found) + 1)):
        raise ValueError(f"Subset flags must be --s1..--s{len(found)}, got {sorted(found)}")
    return rest, [found[j] for j in sorted(found)]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='coxnorm',
        description='Reflection graphs, percolation certificates and graph-norm inequality checks',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=GRAMMAR,
    )
    parser.add_argument('--config', type=str, help='Path to configuration file (JSON or YAML)')
    parser.add_argument('--log-level', type=str, help='Override the configured log level')
    parser.add_argument('--version', action='version', version='%(prog)s v0.1.0')
    commands = parser.add_subparsers(dest='command', required=True)

    def graph_source(sub):
        sub.add_argument('--preset', type=str, help='Named preset, e.g. c6 or gowers_octahedron(3)')
        sub.add_argument('--group', type=str, help='Group spec, used with --s1 ... --sk')
        sub.add_argument('--order-cap', type=int, help='Refuse groups larger than this')

    info = commands.add_parser('group-info', help='Order, positive roots, longest length, reflections')
    source = info.add_mutually_exclusive_group(required=True)
    source.add_argument('--group', type=str, help='Group spec')
    source.add_argument('--group-file', type=str, help='Group JSON written by --out')
    info.add_argument('--order-cap', type=int)
    info.add_argument('--out', type=str, help='Write the group JSON document here')

    build = commands.add_parser('build', help='Build a reflection (hyper)graph')
    graph_source(build)
    build.add_argument('--out', type=str, help='Graph JSON path (default: stdout)')
    build.add_argument('--dot', type=str, help='Also write DOT (graphs only)')

    percolate = commands.add_parser('percolate', help='Emit and verify a percolation certificate')
    graph_source(percolate)
    percolate.add_argument('--out', type=str, help='Certificate JSON path (default: stdout)')

    verify = commands.add_parser('verify', help='Verify a certificate or run an inequality suite')
    graph_source(verify)
    verify.add_argument('--certificate', type=str, help='Certificate JSON to replay')
    verify.add_argument('--suite', type=str, choices=sorted(SUITES))
    verify.add_argument('--target', type=str, action='append',
                        help='Suite target (repeatable; default: the suite\'s own list)')
    verify.add_argument('--trials', type=int)
    verify.add_argument('--n', type=int, help='Kernel resolution')
    verify.add_argument('--seed', type=int)
    verify.add_argument('--tol', type=float)
    verify.add_argument('--jobs', type=int)
    verify.add_argument('--out', type=str, help='JSON-lines report path (default: stdout)')

    norm = commands.add_parser('norm', help='Evaluate the graph norms of a kernel file')
    graph_source(norm)
    norm.add_argument('--graph', type=str, help='Graph JSON or adjacency list instead of a reflection graph')
    norm.add_argument('--kernel', type=str, required=True, help='CSV (2-ary) or JSON kernel')
    norm.add_argument('--symmetric', action='store_true')
    return parser


def _order_cap(args, config: Dict) -> int:
    return args.order_cap if getattr(args, 'order_cap', None) else config['limits']['order_cap']


def _hypergraph(args, subsets: List[List[int]], config: Dict) -> ReflectionHypergraph:
    cap = _order_cap(args, config)
    if args.preset:
        if args.group or subsets:
            raise ValueError("Give either --preset or --group with subsets, not both")
        return preset(args.preset, order_cap=cap)
    if not args.group or len(subsets) < 2:
        raise ValueError("Give --preset, or --group with at least --s1 and --s2")
    group = build_group(parse_spec(args.group, order_cap=cap), tolerance=config['tolerances']['root_match'])
    return build_reflection_hypergraph(group, subsets)


def _emit(text: str, path: Optional[str]):
    if path:
        Path(path).write_text(text, encoding='utf-8')
    else:
        sys.stdout.write(text)


def cmd_group_info(args, subsets, config) -> int:
    if args.group_file:
        group = load_group(args.group_file)
    else:
        group = build_group(parse_spec(args.group, order_cap=_order_cap(args, config)),
                            tolerance=config['tolerances']['root_match'])
    stats = {'group': group.label, 'order': group.order, 'positive_roots': group.num_positive_roots,
             'max_length': group.max_length, 'reflections': len(group.reflections)}
    if args.out:
        dump_group(group, args.out)
    print(json.dumps(stats, sort_keys=True))
    return EXIT_OK


def cmd_build(args, subsets, config) -> int:
    h = _hypergraph(args, subsets, config)
    if args.out:
        write_graph(h, args.out)
        print(json.dumps({'vertices': h.num_vertices, 'edges': h.num_edges, 'k': h.k,
                          'stable': h.stable, 'out': args.out}, sort_keys=True))
    else:
        print(json.dumps(hypergraph_to_dict(h), indent=2))
    if args.dot:
        Path(args.dot).write_text(to_dot(h), encoding='utf-8')
    return EXIT_OK


def cmd_percolate(args, subsets, config) -> int:
    h = _hypergraph(args, subsets, config)
    cert = build_percolating_certificate(h.group, h.subsets, hypergraph=h)
    result = verify_percolation(h, cert)
    _emit(cert.to_json(h.group) + '\n', args.out)
    print(result.to_json_line())
    return EXIT_OK if result.passed else EXIT_FAILED


def _verify_certificate(args, subsets, config) -> int:
    cert = load_certificate(args.certificate)
    if args.preset or args.group:
        h = _hypergraph(args, subsets, config)
    else:
        group = build_group(cert.spec, tolerance=config['tolerances']['root_match'])
        h = build_reflection_hypergraph(group, cert.subsets)
    result = verify_percolation(h, cert)
    print(result.to_json_line())
    return EXIT_OK if result.passed else EXIT_FAILED


def _verify_suite(args, config) -> int:
    defaults = config['defaults']
    reports = run_suite(
        args.suite,
        trials=defaults['trials'] if args.trials is None else args.trials,
        n=args.n,
        seed=defaults['seed'] if args.seed is None else args.seed,
        tol=config['tolerances']['inequality'] if args.tol is None else args.tol,
        jobs=args.jobs or defaults['jobs'],
        targets=args.target,
        work_cap=config['limits']['work_cap'],
    )
    if args.out:
        with open(args.out, 'w', encoding='utf-8') as f:
            write_reports(reports, f)
    else:
        write_reports(reports, sys.stdout)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def cmd_verify(args, subsets, config) -> int:
    if bool(args.certificate) == bool(args.suite):
        raise ValueError("verify needs exactly one of --certificate or --suite")
    if args.certificate:
        return _verify_certificate(args, subsets, config)
    return _verify_suite(args, config)


def cmd_norm(args, subsets, config) -> int:
    if args.graph:
        if args.preset or args.group or subsets:
            raise ValueError("Give either --graph or a reflection graph source, not both")
        h = load_graph(args.graph)
    else:
        h = _hypergraph(args, subsets, config)
    kernel = load_kernel(args.kernel, symmetric=args.symmetric)
    work_cap = config['limits']['work_cap']
    result = {'graph': args.graph or args.preset or args.group, 'edges': h.num_edges, 'n': kernel.resolution,
              'norm': graph_norm(h, kernel, work_cap=work_cap),
              'abs_norm': abs_graph_norm(h, kernel, work_cap=work_cap)}
    if kernel.is_complex and isinstance(h, ReflectionHypergraph) and h.stable:
        result['complex_norm'] = complex_graph_norm(h, kernel, work_cap=work_cap)
    print(json.dumps(result, sort_keys=True))
    return EXIT_OK


COMMANDS = {
    'group-info': cmd_group_info,
    'build': cmd_build,
    'percolate': cmd_percolate,
    'verify': cmd_verify,
    'norm': cmd_norm,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    try:
        rest, subsets = extract_subset_flags(sys.argv[1:] if argv is None else argv)
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"coxnorm: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    try:
        args = parser.parse_args(rest)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR

    try:
        config = load_config(args.config)
        setup_logging(config, args.log_level)
        if subsets and args.command not in ('build', 'percolate', 'verify', 'norm'):
            raise ValueError(f"{args.command} takes no generator subsets")
        return COMMANDS[args.command](args, subsets, config)
    except (ValueError, KeyError, OSError) as exc:
        logger.debug("Command failed", exc_info=True)
        print(f"coxnorm: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
