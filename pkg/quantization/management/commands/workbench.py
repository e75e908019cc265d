"""
Management command running the star-product workbench.
"""
import json
import sys

from django.core.management.base import BaseCommand

from quantization.domain.errors import InputError
from quantization.domain.scalars import DOUBLE, EXTENDED
from quantization.services.error_handler import ErrorHandler
from quantization.services.runner import SUBCOMMANDS, RunConfig, run_command

INPUT_FLAGS = ('input', 'a', 'b', 'c', 'expect')


class Command(BaseCommand):
    help = 'Compute star products, seminorms and property checks; write JSON results and a table'

    def add_arguments(self, parser):
        parser.add_argument('subcommand', choices=SUBCOMMANDS)
        parser.add_argument('--input', '-i', help='Input element (JSON)')
        parser.add_argument('--output', '-o', help='Result file; the table goes to <output>.txt')
        parser.add_argument('--a', help='First factor (JSON)')
        parser.add_argument('--b', help='Second factor (JSON)')
        parser.add_argument('--c', help='Third factor for assoc-check (JSON)')
        parser.add_argument('--expect', help='Expected product (JSON); a mismatch exits with status 2')
        parser.add_argument(
            '--lambda',
            dest='form',
            help="Bilinear form (JSON matrix) or 'symplectic'",
        )
        parser.add_argument('--lie', help='Catalog name (heisenberg, so3, solvable2, abelian) or JSON file')
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--R', dest='R', help='Seminorm exponent, rational')
        parser.add_argument('--weights', help='Comma separated positive weights')
        parser.add_argument('--rho', help='Disc norm radius')
        parser.add_argument('--hbar', help='Value of the deformation parameter for numeric evaluation')
        parser.add_argument('--max-degree', type=int)
        parser.add_argument('--max-n', type=int)
        parser.add_argument('--precision', choices=(DOUBLE, EXTENDED), default=DOUBLE)
        parser.add_argument('--dim', type=int)
        parser.add_argument('--n', type=int)
        parser.add_argument('--kind', help='Instance kind for generate, series family for convergence-demo')
        parser.add_argument('--xi', help='Comma separated coordinates of the first Lie vector')
        parser.add_argument('--eta', help='Comma separated coordinates of the second Lie vector')
        parser.add_argument('--record', action='store_true', help='Store the run in the database')

    def handle(self, *args, **options):
        try:
            cfg = RunConfig(
                command=options['subcommand'],
                inputs={name: options[name] for name in INPUT_FLAGS if options.get(name)},
                output=options['output'],
                seed=options['seed'],
                R=options['R'],
                weights=options['weights'],
                rho=options['rho'],
                hbar=options['hbar'],
                max_degree=options['max_degree'],
                max_n=options['max_n'],
                precision=options['precision'],
                dim=options['dim'],
                n=options['n'],
                kind=options['kind'],
                lie=options['lie'],
                form=options['form'],
                xi=options['xi'],
                eta=options['eta'],
                record=options['record'],
            )
        except InputError as exc:
            code, payload = ErrorHandler.handle_error(exc)
            self.stderr.write(json.dumps(payload, sort_keys=True))
            sys.exit(code)

        code = run_command(cfg, self.stdout, self.stderr)
        if code:
            sys.exit(code)
        if cfg.output:
            self.stdout.write(self.style.SUCCESS(f'Wrote {cfg.output}'))
