from argparse import ArgumentParser
from typing import Any

from hakenkit.management.base import RunCommand


class Command(RunCommand):
    help = 'Verifies a certificate against a diagram.'
    command = 'verify'

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument(
            'certificate_path',
            type=str,
            help='The certificate file',
        )
        super().add_arguments(parser)

    def get_config_kwargs(self, options: dict[str, Any]) -> dict[str, Any]:
        return super().get_config_kwargs(options) | {
            'certificate_path': options['certificate_path'],
        }
