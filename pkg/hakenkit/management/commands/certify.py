from argparse import ArgumentParser
from typing import Any

from hakenkit.decide import KINDS
from hakenkit.management.base import RunCommand


class Command(RunCommand):
    help = 'Decides a diagram and emits a certificate of a yes verdict.'
    command = 'certify'

    def add_arguments(self, parser: ArgumentParser) -> None:
        super().add_arguments(parser)
        parser.add_argument(
            '--kind',
            choices=KINDS,
            default='unknot',
            help='The certificate kind',
        )

    def get_config_kwargs(self, options: dict[str, Any]) -> dict[str, Any]:
        return super().get_config_kwargs(options) | {'kind': options['kind']}
