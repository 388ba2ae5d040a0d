from argparse import ArgumentParser
from typing import Any, ClassVar

from django.core.management.base import BaseCommand, CommandError

from hakenkit.cli import FORMATS, run, RunConfig
from hakenkit.utilities import MODES


class RunCommand(BaseCommand):
    """The base class of the pipeline commands.

    The report is written to standard output before a nonzero exit
    status is raised as a :class:`CommandError`.
    """

    command: ClassVar[str]

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument('path', type=str, help='The diagram file')
        parser.add_argument('--mode', choices=MODES, help='The search mode')
        parser.add_argument(
            '--paper-triangulation',
            action='store_true',
            help='Build the complement in paper mode',
        )
        parser.add_argument(
            '--budget-candidates',
            type=int,
            help='The maximum number of candidates',
        )
        parser.add_argument(
            '--budget-seconds',
            type=float,
            help='The maximum wall-clock seconds',
        )
        parser.add_argument(
            '--workers',
            type=int,
            help='The number of worker threads',
        )
        parser.add_argument(
            '--format',
            choices=FORMATS,
            default='json',
            help='The output format',
        )

    def get_config_kwargs(self, options: dict[str, Any]) -> dict[str, Any]:
        kwargs = {
            'command': self.command,
            'path': options['path'],
            'format_': options['format'],
        }

        for name in ('mode', 'budget_candidates', 'budget_seconds', 'workers'):
            if options[name] is not None:
                kwargs[name] = options[name]

        if options['paper_triangulation']:
            kwargs['construction'] = 'paper'

        return kwargs

    def handle(self, *args: Any, **options: Any) -> None:
        try:
            config = RunConfig(**self.get_config_kwargs(options))
        except ValueError as error:
            raise CommandError(str(error), returncode=2) from error

        status, report = run(config)

        self.stdout.write(report)

        if status:
            raise CommandError(
                f'The {self.command} run exited with status {status}.',
                returncode=status,
            )
