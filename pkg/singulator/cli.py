#!/usr/bin/env python3
"""
Singulator CLI - Command line interface for singularity invariants
"""

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from singulator import Singulator
from singulator.config import load_config
from singulator.cz import SymplecticPath, find_crossings, parity_holds
from singulator.errors import InputError, SingulatorError
from singulator.family import FamilySpec, family_check
from singulator.hashing import fingerprint_payload
from singulator.invariants import lct, lefschetz_sequence, zeta
from singulator.resolution import to_dot
from singulator.spectral import check_floer_range, floer_lct_profile, lct_from_profile, multiplicity_via_ss


def print_banner():
    """Print CLI banner"""
    print(
        """
╔═══════════════════════════════════════════╗
║     SINGULATOR - Singularity Invariants   ║
║   Resolutions, Monodromy and Floer Data   ║
╚═══════════════════════════════════════════╝
        """
    )


def parse_int_list(text):
    """Parse '4,6,11' into [4, 6, 11]"""
    try:
        return [int(part) for part in text.split(',') if part.strip()]
    except ValueError as e:
        raise InputError(f"expected comma-separated integers, got {text!r}") from e


def parse_vars(text):
    if not text:
        return None
    return [v.strip() for v in text.split(',') if v.strip()]


def emit(args, config, payload, text_lines):
    """Print text or JSON, and write JSON to --output when given"""
    indent = config.get('json_indent', 2)
    if args.json:
        print(json.dumps(payload, indent=indent, sort_keys=True, default=str))
    else:
        for line in text_lines:
            print(line)
    if args.output:
        with open(args.output, 'w', encoding='utf-8') as f:
            json.dump(payload, f, indent=indent, sort_keys=True, default=str)
            f.write('\n')
        if not args.json:
            print(f"\n💾 Results saved to: {args.output}")


def write_dot(args, tree):
    if args.dot:
        Path(args.dot).write_text(to_dot(tree), encoding='utf-8')
        if not args.json:
            print(f"🗺️  Dual graph written to: {args.dot}")


def tree_lines(tree):
    lines = [f"  • Divisors: {len(tree.divisors)} (branches: {tree.branches})"]
    for d in tree.divisors:
        adjacent = ','.join(f"E{j}" for j in sorted(d.adjacent)) or '-'
        lines.append(
            f"    E{d.id}: m={d.m} a={d.a} self={d.self_intersection} "
            f"adjacent={adjacent} strict={d.strict_points}"
        )
    return lines


# ---------- Subcommands ----------

def cmd_invariants(args, singulator):
    f = singulator.parse(args.poly, parse_vars(args.vars))
    report, tree = singulator.invariants_with_tree(f)
    lines = [
        f"\n📊 Invariants of {report['input']}:",
        f"  • Milnor number mu: {report['mu']}",
        f"  • Multiplicity nu: {report['nu']}",
        f"  • Log canonical threshold: {report['lct']}",
    ]
    if tree is not None:
        fiber = report['fiber']
        lines += [
            f"  • Lefschetz numbers: {report['lefschetz']}",
            f"  • Zeta exponents: {report['zeta']}",
            f"  • Milnor fiber: genus {fiber['genus']}, {fiber['branches']} boundary components, "
            f"euler {fiber['euler']}",
        ]
        write_dot(args, tree)
    elif args.dot:
        print(f"⚠️  No dual graph for {f.nvars} variables; {args.dot} not written", file=sys.stderr)
    emit(args, singulator.config, report, lines)
    return 0


def cmd_resolve(args, singulator):
    f = singulator.parse(args.poly, parse_vars(args.vars))
    tree = singulator.resolve(f, separating=args.separating)
    payload = {'input': str(f), 'tree': tree.to_dict()}
    payload['fingerprint'] = fingerprint_payload(payload['tree'])
    lines = [f"\n🌳 Embedded resolution of {f}:"] + tree_lines(tree)
    write_dot(args, tree)
    emit(args, singulator.config, payload, lines)
    return 0


def cmd_lefschetz(args, singulator):
    f = singulator.parse(args.poly, parse_vars(args.vars))
    tree = singulator.resolve(f)
    count = args.m or singulator.lefschetz_range(tree)
    values = lefschetz_sequence(tree, count)
    payload = {'input': str(f), 'lefschetz': {str(m): v for m, v in enumerate(values, 1)}}
    lines = [f"\n🔁 Lefschetz numbers of the monodromy iterates of {f}:"]
    lines += [f"  • m={m}: {v}" for m, v in enumerate(values, 1)]
    emit(args, singulator.config, payload, lines)
    return 0


def cmd_zeta(args, singulator):
    f = singulator.parse(args.poly, parse_vars(args.vars))
    z = zeta(singulator.resolve(f))
    payload = {'input': str(f), 'zeta': {str(d): e for d, e in z.factors}}
    emit(args, singulator.config, payload, [f"\nζ(t) = {z}"])
    return 0


def cmd_ss(args, singulator):
    f = singulator.parse(args.poly, parse_vars(args.vars))
    weights = parse_int_list(args.weights) if args.weights else None
    tree, page = singulator.spectral_page(f, args.m, weights)
    payload = page.to_dict()
    payload['input'] = str(f)
    lines = [f"\n📐 E1 page for m={args.m} (weights {list(page.weights)}):"]
    if page.is_empty():
        lines.append("  • empty page")
    for (p, q), rank in page.entries:
        lines.append(f"  • E1^({p},{q}) rank {rank}")
    lines.append(f"  • Euler characteristic: {page.euler_characteristic()}")
    write_dot(args, tree)
    emit(args, singulator.config, payload, lines)
    return 0


def cmd_lct(args, singulator):
    f = singulator.parse(args.poly, parse_vars(args.vars))
    tree = singulator.resolve(f)
    payload = {'input': str(f), 'lct': str(lct(tree))}
    lines = [f"\n📏 lct({f}) = {lct(tree)}"]
    if args.via_floer:
        m_max = args.mmax or singulator.config['floer_mmax'] or tree.lcm_multiplicity()
        check_floer_range(tree, m_max)
        profile = floer_lct_profile(tree, m_max)
        value = lct_from_profile(profile)
        payload['lct_via_floer'] = str(value)
        payload['m_max'] = m_max
        payload['profile'] = [
            {'k': s.k, 'raw': str(s.raw_infimum), 'limit': str(s.limit)} for s in profile
        ]
        lines.append(f"  • via Floer degrees (m_max={m_max}): {value}")
        lines.append(f"  • multiplicity from first nonzero page: {multiplicity_via_ss(tree)}")
    emit(args, singulator.config, payload, lines)
    return 0


def cmd_family(args, singulator):
    spec = FamilySpec.from_json(args.spec)
    workers = args.workers or singulator.config['family_workers']
    report = family_check(spec, workers=workers)
    payload = report.to_dict()
    payload['family'] = str(spec.poly)
    lines = [f"\n👪 Family {spec.poly} in {spec.parameter}:", "      t |  mu |  nu | lct"]
    for row in report.rows:
        shown = row.to_dict()
        lines.append(f"  {shown['t']:>5} | {str(row.mu):>3} | {str(row.nu):>3} | {shown['lct']}"
                     + (f"  ({row.note})" if row.note else ""))
    lines += [
        f"  • mu constant: {report.mu_constant}",
        f"  • nu constant: {report.nu_constant}",
        f"  • lct constant: {payload['lct_constant']}",
        f"  • verdict: {report.zariski_verdict}",
    ]
    emit(args, singulator.config, payload, lines)
    return 0


def cmd_cz(args, singulator):
    path = SymplecticPath.from_json(args.path, singulator.config['cz_symplectic_tol'])
    crossings = find_crossings(path, singulator.config)
    index = sum((c.weight for c in crossings), Fraction(0))
    parity = parity_holds(path, index)
    payload = {
        'dimension': path.dimension,
        'crossings': [c.to_dict() for c in crossings],
        'cz': str(index),
        'parity_law': parity if parity is not None else 'not-applicable',
    }
    lines = [f"\n🌀 Conley-Zehnder index: {index}"]
    for c in crossings:
        kind = 'endpoint' if c.endpoint else 'interior'
        lines.append(f"  • t={c.time:.6f} kernel={c.kernel_dim} signature={c.signature:+d} ({kind})")
    emit(args, singulator.config, payload, lines)
    return 0


def cmd_milnor(args, singulator):
    f = singulator.parse(args.poly, parse_vars(args.vars))
    report = singulator.milnor(f)
    lines = [
        f"\n🧮 {report['input']}:",
        f"  • mu = {report['mu']}",
        f"  • tau = {report['tau']}",
        f"  • sigma = {report['sigma']}",
    ]
    emit(args, singulator.config, report, lines)
    return 0


COMMANDS = {
    'invariants': cmd_invariants,
    'resolve': cmd_resolve,
    'lefschetz': cmd_lefschetz,
    'zeta': cmd_zeta,
    'ss': cmd_ss,
    'lct': cmd_lct,
    'family': cmd_family,
    'cz': cmd_cz,
    'milnor': cmd_milnor,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--vars', type=str, help='Comma-separated variable order, e.g. x,y')
    common.add_argument('--json', action='store_true', help='Print machine-readable JSON')
    common.add_argument('--output', type=str, help='Also write the JSON result to this file')
    common.add_argument('--config', type=str, help='Path to configuration file (JSON)')
    common.add_argument('-v', '--verbose', action='store_true', help='Verbose output')

    parser = argparse.ArgumentParser(
        description='Singulator - invariants of isolated hypersurface singularities',
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('invariants', parents=[common], help='mu, nu, lct, Lefschetz numbers, zeta, fiber')
    p.add_argument('poly')
    p.add_argument('--dot', type=str, help='Write the resolution dual graph (DOT) to PATH')

    p = sub.add_parser('resolve', parents=[common], help='Embedded resolution of a plane curve')
    p.add_argument('poly')
    p.add_argument('--dot', type=str, help='Write the dual graph (DOT) to PATH')
    p.add_argument('--separating', type=int, help='Refine to an M-separating resolution')

    p = sub.add_parser('lefschetz', parents=[common], help='Lefschetz numbers of monodromy iterates')
    p.add_argument('poly')
    p.add_argument('--m', type=int, help='Largest iterate (default: 2 lcm(m_i), capped at 60)')

    p = sub.add_parser('zeta', parents=[common], help='Monodromy zeta function')
    p.add_argument('poly')

    p = sub.add_parser('ss', parents=[common], help='E1 page of the spectral sequence for the m-th iterate')
    p.add_argument('poly')
    p.add_argument('--m', type=int, required=True, help='Iterate')
    p.add_argument('--weights', type=str, help='Ample weights w1,w2,... (default: computed)')
    p.add_argument('--dot', type=str, help='Write the m-separating dual graph (DOT) to PATH')

    p = sub.add_parser('lct', parents=[common], help='Log canonical threshold')
    p.add_argument('poly')
    p.add_argument('--via-floer', action='store_true', help='Also compute lct from Floer degrees')
    p.add_argument('--mmax', type=int, help='Largest iterate for --via-floer (default: lcm(m_i))')

    p = sub.add_parser('family', parents=[common], help='mu-constant family check')
    p.add_argument('spec', help='Family specification (JSON)')
    p.add_argument('--workers', type=int, help='Worker processes for the samples')

    p = sub.add_parser('cz', parents=[common], help='Conley-Zehnder index of a symplectic path')
    p.add_argument('path', help='Path specification (JSON list of segments)')

    p = sub.add_parser('milnor', parents=[common], help='Milnor, Tjurina and sigma numbers')
    p.add_argument('poly')

    return parser


def main(argv=None):
    """Main CLI function"""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
    )
    if args.verbose and not args.json:
        print_banner()

    try:
        config = load_config(args.config)
        code = COMMANDS[args.command](args, Singulator(config))
    except SingulatorError as e:
        print(f"❌ Error: {e}", file=sys.stderr)
        sys.exit(e.exit_code)
    except (OSError, json.JSONDecodeError, ValueError) as e:
        print(f"❌ Error: {e}", file=sys.stderr)
        sys.exit(2)
    sys.exit(code)


if __name__ == '__main__':
    main()
