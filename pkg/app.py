"""
TapCert - Main Application
Greedy solver and dual-fitting certifier for 2-node-connectivity tree
augmentation, with exact LP/IP oracles for checking it on small instances
"""

import argparse
import json
import logging
import os
import sys
import time
from fractions import Fraction

from modules.analysis.dual_certificate import ratio_certificate, verify_certificate
from modules.errors import BadParams, CheckFailed, SchemaError, TapCertError, ValidationError
from modules.generators.families import generate_family, get_supported_families
from modules.generators.inflation import InflationMap, deflate_solution, inflate, integrality_ratios
from modules.model.instance import NcssInstance, TapInstance, scale_costs, tree_lambda
from modules.model.rationals import fmt, fmt_human, to_cost
from modules.oracle.ip_solver import solve_ip
from modules.oracle.lp_export import export_lp
from modules.oracle.lp_model import MODEL_KINDS
from modules.oracle.lp_solver import solve_lp
from modules.parsers.certificate_parser import load_certificate, save_certificate
from modules.parsers.instance_parser import (
    decode_json,
    instance_digest,
    load_instance,
    save_instance,
    serialize_instance,
)
from modules.utils.config import OracleLimits
from modules.utils.reports import (
    build_report,
    certificate_table,
    export_csv,
    get_summary_stats,
    report_frame,
    report_json,
    report_lines,
)

logger = logging.getLogger('tapcert')


def setup_logging(verbose):
    level = logging.DEBUG if verbose else os.environ.get('TAPCERT_LOG_LEVEL', 'WARNING').upper()
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s', stream=sys.stderr)


def emit(args, payload, lines):
    """Print the JSON payload under --json, the human lines otherwise"""
    if args.json:
        print(json.dumps(payload, indent=1, sort_keys=True))
    else:
        for line in lines:
            print(line)


def rational_arg(value, name):
    try:
        return to_cost(value, field=name)
    except ValidationError as e:
        raise BadParams(f"--{name}: {e.reason}")


def load(args, path):
    instance, error = load_instance(path)
    if error is not None:
        raise error
    if args.scale is not None:
        instance = scale_costs(instance, rational_arg(args.scale, 'scale'))
    return instance


def require_tap(instance, command):
    if not isinstance(instance, TapInstance):
        raise ValidationError(f"'{command}' needs a TAP instance")


# Commands

def cmd_generate(args, limits):
    params = {
        'lam': args.lam,
        'k': args.k,
        'n': args.n,
        'eps': rational_arg(args.eps, 'eps') if args.eps is not None else None,
        'cost': rational_arg(args.cost, 'cost') if args.cost is not None else None,
        'max_lambda': args.max_lambda,
        'link_density': args.density,
        'cost_range': (args.cost_min, args.cost_max),
        'denominator': args.denominator,
        'seed': args.seed,
    }
    instance = generate_family(args.family, **params)
    if args.scale is not None:
        instance = scale_costs(instance, rational_arg(args.scale, 'scale'))
    digest = instance_digest(instance)
    if args.out:
        save_instance(instance, args.out)
    elif not args.json:
        sys.stdout.write(serialize_instance(instance).decode('utf-8'))
    emit(args, {'digest': digest, 'n': instance.n, 'links': len(instance.links), 'path': args.out},
         [f"digest: {digest}"] + ([f"written to {args.out}"] if args.out else []))
    return 0


def cmd_solve(args, limits):
    instance = load(args, args.instance)
    require_tap(instance, 'solve')
    digest = instance_digest(instance)

    started = time.perf_counter()
    result = ratio_certificate(instance)
    elapsed = time.perf_counter() - started
    result.certificate.instance_digest = digest
    if not result.passed:
        failed = [name for name, ok in result.checks.items() if not ok]
        raise CheckFailed(failed[0], "certificate built from this run does not verify")
    verify_certificate(instance, result.certificate, digest)
    if args.cert:
        save_certificate(result.certificate, args.cert)

    report = build_report(instance, digest, name=args.instance, certificate=result,
                          timings={'greedy': elapsed})
    payload = report_json(report)
    payload['picked'] = [link.link_id for link in result.trace.picked]
    lines = report_lines(report)
    table = certificate_table(result.certificate)
    lines.append("dual weights per node:")
    lines.extend(table.to_string(index=False, formatters={'weight': fmt, 'y': fmt}).splitlines())
    lines.append("picked links: " + ', '.join(
        f"{l.link_id} {{{l.u},{l.v}}} ({fmt(l.cost)})" for l in result.trace.picked))
    if args.cert:
        lines.append(f"certificate written to {args.cert}")
    emit(args, payload, lines)
    return 0


def cmd_exact(args, limits):
    instance = load(args, args.instance)
    digest = instance_digest(instance)
    want_lp = args.lp or not args.ip
    want_ip = args.ip or not args.lp
    lp_opt = ip_opt = None
    timings = {}
    extra = {}

    if want_lp:
        started = time.perf_counter()
        solution = solve_lp(instance, args.model, limits)
        timings['lp'] = time.perf_counter() - started
        lp_opt = solution.objective
        extra['lp_model'] = solution.model.kind
        extra['lp_rounds'] = solution.rounds
        extra['lp_vertex'] = solution.is_vertex
        extra['lp_solution'] = {f"{e.u}-{e.v}": fmt(v) for e, v in solution.by_edge() if v}
    if want_ip:
        started = time.perf_counter()
        items, ip_opt = solve_ip(instance, args.connectivity, limits)
        timings['ip'] = time.perf_counter() - started
        extra['ip_solution'] = [f"{e.u}-{e.v}" for e in items]

    report = build_report(instance, digest, name=args.instance, lp_opt=lp_opt, ip_opt=ip_opt,
                          timings=timings)
    if isinstance(instance, TapInstance) and instance.links:
        report['lambda'] = tree_lambda(instance)
    payload = report_json(report)
    payload.update(extra)
    lines = report_lines(report)
    if 'lp_solution' in extra:
        lines.append(f"LP ({extra['lp_model']}, {extra['lp_rounds']} rounds): "
                     + ', '.join(f"x[{k}]={v}" for k, v in extra['lp_solution'].items()))
    if 'ip_solution' in extra:
        lines.append("IP edges: " + ', '.join(extra['ip_solution']))
    emit(args, payload, lines)
    return 0


def cmd_verify(args, limits):
    instance = load(args, args.instance)
    require_tap(instance, 'verify')
    cert, error = load_certificate(args.certificate, instance)
    if error is not None:
        raise error
    verify_certificate(instance, cert, instance_digest(instance))
    emit(args, {'verified': True, 'digest': cert.instance_digest},
         [f"certificate verified for {cert.instance_digest}"])
    return 0


def cmd_inflate(args, limits):
    instance = load(args, args.instance)
    inflated, mapping = inflate(instance)
    digest = instance_digest(inflated)
    doc = json.loads(serialize_instance(inflated))
    doc['inflation'] = mapping.to_document()
    text = json.dumps(doc, sort_keys=True, indent=1) + '\n'
    if args.out:
        with open(args.out, 'w', encoding='utf-8') as f:
            f.write(text)
    elif not args.json:
        sys.stdout.write(text)
    emit(args, {'digest': digest, 'n': inflated.n, 'edges': len(inflated.edges), 'path': args.out},
         [f"inflated instance: n={inflated.n}, {len(inflated.edges)} edges, digest {digest}"])
    return 0


def read_inflation_map(path, inflated):
    with open(path, 'rb') as f:
        doc = decode_json(f.read())
    mapping = InflationMap.from_document(doc.get('inflation'))
    if len(mapping.edge_map) != mapping.original_edges or any(
            not 0 <= j < len(inflated.edges) for j in mapping.edge_map.values()):
        raise SchemaError("edge map does not fit the inflated instance", field='inflation')
    return mapping


def cmd_deflate(args, limits):
    inflated = load(args, args.inflated)
    if not isinstance(inflated, NcssInstance):
        raise ValidationError("'deflate' needs the output of 'inflate'")
    mapping = read_inflation_map(args.inflated, inflated)

    if args.solution:
        try:
            with open(args.solution, 'rb') as f:
                raw = f.read()
        except OSError as e:
            raise SchemaError(f"cannot read {args.solution}: {e.strerror}")
        values = decode_json(raw, 'solution').get('x')
        if not isinstance(values, list):
            raise SchemaError("expected a list of values", field='x')
        x_inflated = [to_cost(v, field=f"x[{i}]") for i, v in enumerate(values)]
    else:
        x_inflated = list(solve_lp(inflated, 'ncss-partition', limits).x)

    x = deflate_solution(inflated, mapping, x_inflated, limits)
    cost = sum((inflated.edges[mapping.edge_map[i]].cost * v for i, v in enumerate(x)), Fraction(0))
    emit(args, {'x': [fmt(v) for v in x], 'cost': fmt(cost), 'original_n': mapping.original_n},
         [f"x on the {mapping.original_edges} original edges: " + ', '.join(fmt(v) for v in x),
          f"cost: {fmt_human(cost)}"])
    return 0


def cmd_ratio(args, limits):
    instance = load(args, args.instance)
    result = integrality_ratios(instance, limits)
    payload = {key: (fmt(value) if isinstance(value, Fraction) else value)
               for key, value in result.items()}
    payload['equal'] = result['ratio'] == result['inflated_ratio']
    lines = [
        f"input:    cut LP {fmt_human(result['lp'])}, 2EC IP {fmt_human(result['ip'])}, "
        f"ratio {fmt_human(result['ratio']) if result['ratio'] is not None else '-'}",
        f"inflated: partition LP {fmt_human(result['inflated_lp'])}, 2NC IP {fmt_human(result['inflated_ip'])}, "
        f"ratio {fmt_human(result['inflated_ratio']) if result['inflated_ratio'] is not None else '-'} "
        f"(n={result['inflated_n']})",
        f"ratios equal: {payload['equal']}",
    ]
    emit(args, payload, lines)
    return 0


def cmd_lp_export(args, limits):
    instance = load(args, args.instance)
    text = export_lp(instance, args.model, full=args.full, limits=limits)
    if args.out:
        with open(args.out, 'w', encoding='utf-8') as f:
            f.write(text)
        emit(args, {'path': args.out}, [f"LP written to {args.out}"])
    else:
        sys.stdout.write(text)
    return 0


def bench_instances(args):
    """Named family instances followed by seeded random ones"""
    eps = Fraction(1, 100)
    named = [(f"tight-path lam={lam}", generate_family('tight-path', lam=lam, eps=eps)) for lam in range(2, 9)]
    named += [(f"star-cycle n={n}", generate_family('star-cycle', n=n)) for n in range(4, 10)]
    named.append(('four-thirds-gap', generate_family('four-thirds-gap')))
    named.append(('chained lam=4 k=3', generate_family('chained', lam=4, k=3, eps=eps)))
    seed = args.seed or 0
    for i in range(args.random):
        instance = generate_family('random', n=args.n or 8, max_lambda=args.max_lambda,
                                   link_density=args.density, seed=seed + i)
        named.append((f"random seed={seed + i}", instance))
    return named


def cmd_bench(args, limits):
    reports = []
    for name, instance in bench_instances(args):
        if args.scale is not None:
            instance = scale_costs(instance, rational_arg(args.scale, 'scale'))
        timings = {}
        started = time.perf_counter()
        result = ratio_certificate(instance)
        timings['greedy'] = time.perf_counter() - started
        lp_opt = ip_opt = None
        if not args.no_lp:
            started = time.perf_counter()
            lp_opt = solve_lp(instance, limits=limits).objective
            timings['lp'] = time.perf_counter() - started
            if result.greedy_cost > result.harmonic * lp_opt:
                logger.error("%s: greedy cost exceeds H(lambda-1) times the LP value", name)
        if not args.no_ip:
            started = time.perf_counter()
            _, ip_opt = solve_ip(instance, limits=limits)
            timings['ip'] = time.perf_counter() - started
        reports.append(build_report(instance, instance_digest(instance), name=name, certificate=result,
                                    lp_opt=lp_opt, ip_opt=ip_opt, timings=timings))

    frame = report_frame(reports)
    stats = get_summary_stats(frame)
    if args.csv:
        export_csv(frame, args.csv)
    payload = {
        'reports': [report_json(r) for r in reports],
        'summary': {k: (fmt(v) if isinstance(v, Fraction) else v) for k, v in stats.items()},
    }
    shown = frame.drop(columns=['digest']).astype(str)
    lines = [shown.to_string(index=False), '']
    lines += [f"{key.replace('_', ' ')}: {fmt_human(value) if isinstance(value, Fraction) else value}"
              for key, value in stats.items()]
    emit(args, payload, lines)
    return 0 if stats['all_checks_passed'] else CheckFailed.exit_code


# Argument parsing

def build_parser():
    parser = argparse.ArgumentParser(
        prog='tapcert',
        description='Greedy solver, dual-fitting certificates and exact oracles for 2NC-TAP.')
    parser.add_argument('--json', action='store_true', help='machine-readable output (exact rationals only)')
    parser.add_argument('--seed', type=int, default=None, help='seed for random instances')
    parser.add_argument('--scale', default=None, help='multiply every cost by this rational')
    parser.add_argument('-v', '--verbose', action='store_true', help='debug logging to stderr')
    sub = parser.add_subparsers(dest='command', required=True)

    gen = sub.add_parser('generate', help='write a family instance')
    gen.add_argument('--family', required=True, help=', '.join(sorted(get_supported_families())))
    gen.add_argument('--lambda', dest='lam', type=int)
    gen.add_argument('--eps')
    gen.add_argument('--k', type=int)
    gen.add_argument('--n', type=int)
    gen.add_argument('--cost')
    gen.add_argument('--max-lambda', type=int, default=3)
    gen.add_argument('--density', type=float, default=0.5)
    gen.add_argument('--cost-min', type=int, default=1)
    gen.add_argument('--cost-max', type=int, default=10)
    gen.add_argument('--denominator', type=int, default=1)
    gen.add_argument('-o', '--out')
    gen.set_defaults(handler=cmd_generate)

    solve = sub.add_parser('solve', help='run the greedy algorithm and certify it')
    solve.add_argument('instance')
    solve.add_argument('--cert', help='write the certificate here')
    solve.set_defaults(handler=cmd_solve)

    exact = sub.add_parser('exact', help='exact LP and/or IP optimum')
    exact.add_argument('instance')
    exact.add_argument('--lp', action='store_true')
    exact.add_argument('--ip', action='store_true')
    exact.add_argument('--model', choices=MODEL_KINDS, help='LP family (default by instance)')
    exact.add_argument('--connectivity', choices=('2nc', '2ec'), help='IP feasibility (default by instance)')
    exact.set_defaults(handler=cmd_exact)

    verify = sub.add_parser('verify', help='re-verify a certificate against its instance')
    verify.add_argument('instance')
    verify.add_argument('certificate')
    verify.set_defaults(handler=cmd_verify)

    infl = sub.add_parser('inflate', help='clique inflation to a 2NCSS instance')
    infl.add_argument('instance')
    infl.add_argument('-o', '--out')
    infl.set_defaults(handler=cmd_inflate)

    defl = sub.add_parser('deflate', help='map a 2NCSS solution of an inflated instance back to the original edges')
    defl.add_argument('inflated', help='output of inflate, with its inflation block')
    defl.add_argument('--solution', help='JSON {"x": [...]} on the inflated edges (default: its LP optimum)')
    defl.set_defaults(handler=cmd_deflate)

    ratio = sub.add_parser('ratio', help='integrality ratio before and after inflation')
    ratio.add_argument('instance')
    ratio.set_defaults(handler=cmd_ratio)

    export = sub.add_parser('lp-export', help='write the LP in LP file format')
    export.add_argument('instance')
    export.add_argument('--full', action='store_true', help='every row of the family, within the caps')
    export.add_argument('--model', choices=MODEL_KINDS)
    export.add_argument('-o', '--out')
    export.set_defaults(handler=cmd_lp_export)

    bench = sub.add_parser('bench', help='families and random instances, one report row each')
    bench.add_argument('--random', type=int, default=20, help='number of random instances')
    bench.add_argument('--n', type=int, default=8)
    bench.add_argument('--max-lambda', type=int, default=4)
    bench.add_argument('--density', type=float, default=0.4)
    bench.add_argument('--no-lp', action='store_true')
    bench.add_argument('--no-ip', action='store_true')
    bench.add_argument('--csv')
    bench.set_defaults(handler=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose)
    try:
        limits = OracleLimits.from_env()
        return args.handler(args, limits)
    except TapCertError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except Exception:
        logger.exception("internal error")
        return 1


if __name__ == '__main__':
    sys.exit(main())
