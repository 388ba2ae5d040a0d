from __future__ import annotations

from typing import Any
import json

from django.core.exceptions import ValidationError
from django.db import models
from django.utils.translation import gettext_lazy as _

from hakenkit.diagram import LinkDiagram, parse_diagram
import hakenkit.decide as decide


class Kind(models.TextChoices):
    UNKNOT = 'unknot', _('Unknottedness')
    SPLIT = 'split', _('Splittability')


class Diagram(models.Model):
    name = models.CharField(max_length=255, unique=True)
    source = models.TextField()
    created_on = models.DateTimeField(auto_now_add=True)

    def load(self) -> LinkDiagram:
        return parse_diagram(self.source)

    def clean(self) -> None:
        try:
            self.load()
        except ValueError as error:
            raise ValidationError(
                f'An invalid diagram {repr(self.name)} was supplied: {error}',
            )

    def save(self, *args: Any, **kwargs: Any) -> None:
        self.full_clean()

        super().save(*args, **kwargs)

    def __str__(self) -> str:
        return self.name


class Certificate(models.Model):
    diagram = models.ForeignKey(
        Diagram,
        models.CASCADE,
        related_name='certificates',
    )
    kind = models.CharField(max_length=255, choices=Kind.choices)
    payload = models.JSONField()
    created_on = models.DateTimeField(auto_now_add=True)

    def load(self) -> decide.Certificate:
        return decide.Certificate.loads(json.dumps(self.payload))

    def clean(self) -> None:
        try:
            certificate = self.load()
        except ValueError:
            raise ValidationError('A malformed certificate was supplied.')

        if certificate.kind != self.kind:
            raise ValidationError(
                (
                    f'The certificate kind {repr(certificate.kind)} does not'
                    f' match {repr(self.kind)}.'
                ),
            )

        if self.diagram_id is None:
            raise ValidationError(
                {'diagram': 'A certificate needs a diagram to be checked.'},
            )

        verification = decide.verify_certificate(
            certificate,
            self.diagram.load(),
        )

        if not verification:
            raise ValidationError(
                (
                    'The certificate failed the'
                    f' {repr(verification.reason)} check.'
                ),
            )

    def save(self, *args: Any, **kwargs: Any) -> None:
        self.full_clean()

        super().save(*args, **kwargs)

    def __str__(self) -> str:
        return f'{self.get_kind_display()} certificate of {self.diagram}'
