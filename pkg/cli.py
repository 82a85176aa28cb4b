#!/usr/bin/env python3
import argparse
import sys

from central_char import CASE_KINDS
from oracle_suite import HeckeVerifier


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument(
        '--json',
        action='store_true',
        help='Print the JSON run report to stdout instead of the text summary'
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='Exact verifier for dAHA modules built from U(p,q) principal series',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s check-params sample_params/case_a.json
  %(prog)s verify --oracle sample_params/case_a.json
  %(prog)s verify --oracle --max-dim 5000 --json sample_params/equal_rank.json
  %(prog)s central 1 2 case1 --k 1
  %(prog)s central 1 2 case2 --at 0,0
  %(prog)s selftest
  %(prog)s batch --grid sample_params/grid.json --oracle
"""
    )

    parser.add_argument(
        '--yaml-override',
        '-y',
        help='Path to YAML file with configuration overrides'
    )

    parser.add_argument(
        '--verbose',
        '-v',
        action='store_true',
        help='Verbose output'
    )

    parser.add_argument(
        '--mode',
        '-m',
        choices=['normal', 'debug'],
        default='normal',
        help='Run mode: normal or debug (default: normal)'
    )

    parser.add_argument(
        '--output',
        '-o',
        help='Output directory for reports (default: verification_reports)'
    )

    commands = parser.add_subparsers(dest='command')

    check = commands.add_parser('check-params', help='Validate a parameter file and echo derived quantities')
    check.add_argument('params_file', help='JSON parameter file {p, q, n, mu, nvec, xi, nu}')
    _add_common(check)

    verify = commands.add_parser('verify', help='Verify the dAHA module of one parameter pack')
    verify.add_argument('params_file', help='JSON parameter file {p, q, n, mu, nvec, xi, nu}')
    verify.add_argument('--oracle', action='store_true', help='Also build the explicit tensor model')
    verify.add_argument('--max-dim', type=int, help='Override the tensor-space guardrail')
    _add_common(verify)

    central = commands.add_parser('central', help='Check the y1 squared identity for one shape')
    central.add_argument('p', type=int)
    central.add_argument('q', type=int)
    central.add_argument('case', choices=CASE_KINDS)
    central.add_argument('--k', type=int, default=1, help='Deficient torus index for case1 and equal-rank')
    where = central.add_mutually_exclusive_group()
    where.add_argument('--symbolic', action='store_true', help='Symbolic identity (default)')
    where.add_argument('--at', help='Comma-separated values of mu,tau,nu1,...,nup')
    _add_common(central)

    selftest = commands.add_parser('selftest', help='Run the full acceptance suite')
    _add_common(selftest)

    batch = commands.add_parser('batch', help='Verify every entry of a parameter grid')
    batch.add_argument('--grid', '-b', required=True, help='JSON file with a list of parameter objects')
    batch.add_argument('--oracle', action='store_true', help='Also build the explicit tensor model')
    _add_common(batch)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return 1

    verifier = HeckeVerifier()

    # Set mode from argument
    verifier.config.MODE = 'debug' if args.verbose else args.mode

    if args.yaml_override:
        try:
            verifier.config.override_from_yaml(args.yaml_override)
        except (FileNotFoundError, ValueError, KeyError) as exc:
            print(f"❌ Error loading YAML overrides: {exc}", file=sys.stderr)
            return 1

    if args.output:
        verifier.config.REPORT_DIR = args.output

    if args.command == 'check-params':
        result = verifier.check_params(args.params_file)
    elif args.command == 'verify':
        result = verifier.verify(args.params_file, oracle=args.oracle, max_dim=args.max_dim)
    elif args.command == 'central':
        at = [v.strip() for v in args.at.split(',')] if args.at else None
        result = verifier.central(args.p, args.q, args.case, k=args.k, at=at)
    elif args.command == 'selftest':
        print("🧪 Running the acceptance suite\n", file=sys.stderr)
        result = verifier.selftest()
    else:
        print(f"📚 Batch verification from {args.grid}\n", file=sys.stderr)
        result = verifier.batch(args.grid, oracle=args.oracle)

    report = result['report']
    if args.json:
        print(report.to_json())
        return result['exit_code']

    if result['success']:
        print("\n✅ Verification Complete!")
    else:
        print("\n❌ Verification Failed")
    for line in HeckeVerifier.summary(report):
        print(line)
    if args.command == 'central':
        data = report.results.get('central_character', {})
        if data:
            print(f"\ny1^2 = {data['y1_squared']}")
            print(f"expected {data['expected']}")
            if 'values' in data:
                print(f"at {data['at']}: {data['values']}")
    print("\n📄 Reports generated:")
    print(f"  HTML: {result['reports']['html']}")
    print(f"  JSON: {result['reports']['json']}")
    return result['exit_code']


if __name__ == '__main__':
    sys.exit(main())
