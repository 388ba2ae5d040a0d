from argparse import ArgumentParser
from functools import partial
from glob import glob
from itertools import chain
from pathlib import Path
from typing import Any

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from hakenkit import models


class Command(BaseCommand):
    help = 'Installs the diagrams to the database.'

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument(
            'pathnames',
            nargs='+',
            type=str,
            help='One or more pathnames',
        )

    def handle(self, *args: Any, **options: Any) -> None:
        pathnames = options['pathnames']
        count = 0

        for pathname in chain.from_iterable(
                map(partial(glob, recursive=True), pathnames),
        ):
            path = Path(pathname)

            try:
                models.Diagram(name=path.stem, source=path.read_text()).save()
            except ValidationError as error:
                raise CommandError(
                    f'Failed to load diagram file {repr(pathname)}: {error}',
                )

            count += 1

        self.stdout.write(
            self.style.SUCCESS(f'Success: created {count} diagram models'),
        )
