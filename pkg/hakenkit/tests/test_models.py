from dataclasses import replace
from unittest import skipUnless

from django.conf import settings
from django.core.exceptions import ValidationError
from django.test import TestCase

from hakenkit.decide import Certificate as CertificateData
from hakenkit.decide import decide_unknotted, emit_certificate
from hakenkit.diagram import parse_diagram
from hakenkit.models import Certificate, Diagram
from hakenkit.tests.fixtures import HOPF, MERIDIAN_DISK, TREFOIL, UNKNOT

_CERTIFICATE = CertificateData(
    'unknot',
    '0' * 64,
    MERIDIAN_DISK,
    'fundamental',
    {'meridians': [[[0, 0]]], 'arcs': [], 'arc_ends': []},
)


class DiagramTestCase(TestCase):
    def test_load(self) -> None:
        diagram = Diagram.objects.create(name='trefoil', source=TREFOIL)

        self.assertEqual(diagram.load(), parse_diagram(TREFOIL))
        self.assertEqual(str(diagram), 'trefoil')

    def test_clean(self) -> None:
        self.assertRaises(
            ValidationError,
            Diagram.objects.create,
            name='broken',
            source='PD[X(1,2,3)]',
        )
        Diagram.objects.create(name='hopf', source=HOPF)
        self.assertRaises(
            ValidationError,
            Diagram.objects.create,
            name='hopf',
            source=HOPF,
        )


class CertificateTestCase(TestCase):
    def setUp(self) -> None:
        self.trefoil = Diagram.objects.create(name='trefoil', source=TREFOIL)
        self.hopf = Diagram.objects.create(name='hopf', source=HOPF)

    def test_clean(self) -> None:
        for diagram, kind, payload in (
                (self.trefoil, 'unknot', {}),
                (self.trefoil, 'unknot', {'kind': 'unknot'}),
                (self.trefoil, 'split', _CERTIFICATE.serialize()),
                (
                    self.trefoil,
                    'unknot',
                    replace(_CERTIFICATE, version=2).serialize(),
                ),
                (
                    self.trefoil,
                    'unknot',
                    replace(_CERTIFICATE, construction='fast').serialize(),
                ),
                (self.hopf, 'unknot', _CERTIFICATE.serialize()),
                (
                    self.trefoil,
                    'genus',
                    replace(_CERTIFICATE, kind='genus').serialize(),
                ),
        ):
            self.assertRaises(
                ValidationError,
                Certificate.objects.create,
                diagram=diagram,
                kind=kind,
                payload=payload,
            )

        self.assertFalse(Certificate.objects.exists())

    def test_missing_diagram(self) -> None:
        certificate = Certificate(
            kind='unknot',
            payload=_CERTIFICATE.serialize(),
        )

        with self.assertRaises(ValidationError) as context:
            certificate.clean()

        self.assertIn('diagram', context.exception.message_dict)
        self.assertRaises(ValidationError, certificate.save)
        self.assertFalse(Certificate.objects.exists())


@skipUnless(settings.HAKENKIT_SLOW_TESTS, 'slow diagram decisions')
class VerifiedCertificateTestCase(TestCase):
    def test_unknot(self) -> None:
        diagram = Diagram.objects.create(name='unknot', source=UNKNOT)
        certificate = emit_certificate(
            decide_unknotted(diagram.load()),
            'unknot',
        )
        model = Certificate.objects.create(
            diagram=diagram,
            kind='unknot',
            payload=certificate.serialize(),
        )

        self.assertEqual(model.load(), certificate)
        self.assertEqual(str(model), 'Unknottedness certificate of unknot')


class DiagramInvariantsViewTestCase(TestCase):
    def test_knot(self) -> None:
        diagram = Diagram.objects.create(name='trefoil', source=TREFOIL)
        response = self.client.get(f'/diagrams/{diagram.pk}/invariants/')

        self.assertEqual(response.status_code, 200)

        invariants = response.json()

        self.assertEqual(invariants['canonical_source'], TREFOIL)
        self.assertEqual(invariants['components'], 1)
        self.assertEqual(len(invariants['crossing_signs']), 3)
        self.assertEqual(
            invariants['genus_bounds'],
            {'lower': 1, 'upper': 1},
        )
        self.assertNotIn('linking_number', invariants)

    def test_link(self) -> None:
        diagram = Diagram.objects.create(name='hopf', source=HOPF)
        invariants = self.client.get(
            f'/diagrams/{diagram.pk}/invariants/',
        ).json()

        self.assertEqual(abs(invariants['linking_number']), 1)
        self.assertNotIn('genus_bounds', invariants)
        self.assertEqual(
            self.client.get('/diagrams/0/invariants/').status_code,
            404,
        )

    def test_api(self) -> None:
        Diagram.objects.create(name='trefoil', source=TREFOIL)

        response = self.client.get('/diagrams/')

        self.assertEqual(response.status_code, 200)

        result, = response.json()['results']

        self.assertEqual(result['name'], 'trefoil')
        self.assertEqual(result['crossing_measure'], 3)
        self.assertEqual(result['canonical_source'], TREFOIL)
