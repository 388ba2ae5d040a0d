from dataclasses import replace
from unittest import skipUnless

from django.conf import settings
from django.test import SimpleTestCase
from django.test.utils import override_settings

from hakenkit.complement import MarkedComplement
from hakenkit.cone import HakenCone, matching_equations
from hakenkit.decide import (
    binding_constraints,
    Certificate,
    compute_genus,
    decide_splittable,
    decide_unknotted,
    DecisionResult,
    emit_certificate,
    genus_in,
    spanning_genus,
    splittable_in,
    splitting_arc,
    unknotted_in,
    Verdict,
    verify_certificate,
    verify_certificate_in,
)
from hakenkit.diagram import parse_diagram
from hakenkit.tests.fixtures import (
    FIGURE_EIGHT,
    HOPF,
    KINKED_UNKNOT,
    layered_solid_torus,
    MERIDIAN,
    MERIDIAN_DISK,
    MIDDLE_SPHERE,
    MOBIUS_BAND,
    solid_torus_complement,
    thickened_sphere,
    thickened_sphere_complement,
    TREFOIL,
    UNKNOT,
    UNLINK,
    VERTEX_LINK_DISK,
    VERTICAL_ARC,
)
from hakenkit.utilities import Budget


class DecisionResultTestCase(SimpleTestCase):
    def test_verification(self) -> None:
        self.assertRaises(ValueError, DecisionResult, Verdict.YES)
        self.assertRaises(
            ValueError,
            DecisionResult,
            Verdict.NO,
            MERIDIAN_DISK,
            problem='split',
        )
        self.assertRaises(
            ValueError,
            DecisionResult,
            Verdict.NO,
            problem='knotted',
        )
        DecisionResult(Verdict.NO, problem='genus')
        DecisionResult(Verdict.BUDGET_EXCEEDED)

    def test_serialize(self) -> None:
        self.assertEqual(
            DecisionResult(
                Verdict.YES,
                MERIDIAN_DISK,
                statistics={'candidates': 5},
            ).serialize(),
            {
                'verdict': 'yes',
                'witness': list(MERIDIAN_DISK),
                'stats': {'candidates': 5},
            },
        )
        self.assertEqual(
            DecisionResult(
                Verdict.BUDGET_EXCEEDED,
                problem='genus',
            ).serialize(),
            {
                'verdict': 'budget-exceeded',
                'witness': None,
                'genus': None,
                'stats': {},
            },
        )


class UnknottedTestCase(SimpleTestCase):
    def test_vertex_mode(self) -> None:
        complement = solid_torus_complement()
        result = unknotted_in(complement, 'vertex', workers=1)

        self.assertEqual(result.verdict, Verdict.YES)
        self.assertEqual(result.witness, MERIDIAN_DISK)
        self.assertEqual(result.problem, 'unknot')
        self.assertIs(result.complement, complement)
        self.assertEqual(result.statistics['mode'], 'vertex')
        self.assertEqual(result.statistics['rays'], 4)
        self.assertEqual(result.statistics['tetrahedra'], 1)
        self.assertEqual(result.statistics['construction'], 'compact')
        self.assertEqual(
            unknotted_in(complement, 'vertex', workers=4).witness,
            result.witness,
        )

    def test_haken_mode(self) -> None:
        complement = solid_torus_complement()
        result = unknotted_in(complement, 'haken', workers=1)

        self.assertEqual(result.verdict, Verdict.YES)
        self.assertEqual(result.witness, MERIDIAN_DISK)
        self.assertEqual(result.statistics['mode'], 'haken')
        self.assertGreater(result.statistics['candidates'], 510)
        self.assertEqual(
            unknotted_in(complement, 'haken', workers=4).witness,
            MERIDIAN_DISK,
        )

    def test_wrong_meridian(self) -> None:
        complement = MarkedComplement(
            layered_solid_torus(),
            (),
            meridians=(((0, 1),),),
        )

        self.assertEqual(
            unknotted_in(complement, 'vertex').verdict,
            Verdict.NO,
        )

    def test_budget(self) -> None:
        result = unknotted_in(solid_torus_complement(), 'vertex', Budget(1))

        self.assertEqual(result.verdict, Verdict.BUDGET_EXCEEDED)
        self.assertIsNone(result.witness)
        self.assertEqual(result.statistics['mode'], 'vertex')

    def test_invalid(self) -> None:
        self.assertRaises(
            ValueError,
            unknotted_in,
            solid_torus_complement(),
            'exhaustive',
        )
        self.assertRaises(
            ValueError,
            unknotted_in,
            MarkedComplement(layered_solid_torus(), ()),
        )
        self.assertRaises(
            ValueError,
            unknotted_in,
            MarkedComplement(
                layered_solid_torus(),
                (),
                meridians=(MERIDIAN, MERIDIAN),
            ),
        )
        self.assertRaises(ValueError, decide_unknotted, parse_diagram(HOPF))
        self.assertRaises(
            ValueError,
            decide_unknotted,
            parse_diagram(TREFOIL),
            'exhaustive',
        )


class SplittableTestCase(SimpleTestCase):
    def test_splitting_arc(self) -> None:
        triangulation = thickened_sphere()

        self.assertEqual(
            splitting_arc(triangulation, MIDDLE_SPHERE, [VERTICAL_ARC]),
            0,
        )
        self.assertEqual(
            splitting_arc(
                triangulation,
                MIDDLE_SPHERE,
                [((2, 0), (5, 0)), VERTICAL_ARC],
            ),
            1,
        )
        self.assertIsNone(
            splitting_arc(triangulation, MIDDLE_SPHERE, [((2, 0), (5, 0))]),
        )
        self.assertIsNone(
            splitting_arc(
                triangulation,
                tuple(2 * value for value in MIDDLE_SPHERE),
                [VERTICAL_ARC],
            ),
        )
        self.assertIsNone(
            splitting_arc(triangulation, (0,) * 84, [VERTICAL_ARC]),
        )
        self.assertIsNone(
            splitting_arc(layered_solid_torus(), MERIDIAN_DISK, []),
        )

    def test_splittable_in(self) -> None:
        result = splittable_in(thickened_sphere_complement(), Budget(1))

        self.assertEqual(result.verdict, Verdict.BUDGET_EXCEEDED)
        self.assertEqual(result.problem, 'split')

        result = splittable_in(MarkedComplement(thickened_sphere(), ()))

        self.assertEqual(result.verdict, Verdict.NO)
        self.assertEqual(result.statistics['candidates'], 0)

    def test_decide_splittable(self) -> None:
        for text in (TREFOIL, KINKED_UNKNOT, UNKNOT):
            result = decide_splittable(parse_diagram(text))

            self.assertEqual(result.verdict, Verdict.NO)
            self.assertEqual(result.statistics['components'], 1)
            self.assertIsNone(result.complement)


class GenusTestCase(SimpleTestCase):
    def test_spanning_genus(self) -> None:
        triangulation = layered_solid_torus()

        self.assertEqual(
            spanning_genus(triangulation, MERIDIAN_DISK, MERIDIAN),
            0,
        )

        for vector in (
                VERTEX_LINK_DISK,
                MOBIUS_BAND,
                (0, 1, 1, 0, 0, 0, 1),
                (0, 0, 0, 0, 1, 0, 1),
                (0,) * 7,
        ):
            self.assertIsNone(
                spanning_genus(triangulation, vector, MERIDIAN),
            )

        self.assertIsNone(
            spanning_genus(triangulation, MERIDIAN_DISK, ((0, 1),)),
        )

    def test_genus_in(self) -> None:
        result = genus_in(solid_torus_complement())

        self.assertEqual(result.verdict, Verdict.YES)
        self.assertEqual(result.genus, 0)
        self.assertEqual(result.witness, MERIDIAN_DISK)
        self.assertEqual(result.problem, 'genus')
        self.assertEqual(result.statistics['tier'], 'vertex')
        self.assertTrue(result.statistics['exact'])
        self.assertEqual(
            result.statistics['bounds'],
            {'lower': 0, 'upper': None},
        )
        self.assertEqual(result.serialize()['genus'], 0)
        self.assertEqual(
            genus_in(solid_torus_complement(), 0, 0, workers=4).witness,
            MERIDIAN_DISK,
        )

    def test_budget(self) -> None:
        result = genus_in(solid_torus_complement(), budget=Budget(1))

        self.assertEqual(result.verdict, Verdict.BUDGET_EXCEEDED)
        self.assertIsNone(result.genus)
        self.assertFalse(result.statistics['exact'])

    def test_invalid(self) -> None:
        self.assertRaises(
            ValueError,
            genus_in,
            MarkedComplement(layered_solid_torus(), ()),
        )
        self.assertRaises(ValueError, compute_genus, parse_diagram(HOPF))
        self.assertRaises(ValueError, compute_genus, parse_diagram(UNLINK))


class CertificateTestCase(SimpleTestCase):
    def setUp(self) -> None:
        self.complement = solid_torus_complement()
        self.triangulation = self.complement.triangulation
        self.cone = matching_equations(self.triangulation)
        self.certificate = emit_certificate(
            unknotted_in(self.complement, 'vertex'),
            'unknot',
        )

    def certify(self, vector: tuple[int, ...]) -> Certificate:
        bindings = binding_constraints(self.cone, vector)

        assert bindings is not None

        return Certificate(
            'unknot',
            self.triangulation.hash(),
            vector,
            bindings,
            self.complement.markings(),
        )

    def verify(self, certificate: Certificate) -> str:
        return verify_certificate_in(certificate, self.complement).reason

    def test_binding_constraints(self) -> None:
        bindings = binding_constraints(self.cone, MERIDIAN_DISK)

        self.assertIsNotNone(bindings)
        self.assertEqual(len(bindings or ()), 6)
        self.assertTrue(all(0 <= i < 10 for i in bindings or ()))
        self.assertIsNone(
            binding_constraints(self.cone, (2, 1, 1, 2, 1, 0, 0)),
        )
        self.assertEqual(
            binding_constraints(HakenCone.from_rows([[1, -1]]), (1, 1)),
            (0,),
        )

    def test_emit(self) -> None:
        certificate = self.certificate

        self.assertEqual(certificate.kind, 'unknot')
        self.assertEqual(
            certificate.triangulation_hash,
            self.triangulation.hash(),
        )
        self.assertEqual(certificate.vector, MERIDIAN_DISK)
        self.assertIsInstance(certificate.bindings, tuple)
        self.assertEqual(len(certificate.bindings), 6)
        self.assertEqual(
            certificate.markings,
            {'meridians': [[[0, 0]]], 'arcs': [], 'arc_ends': []},
        )
        self.assertEqual(certificate.construction, 'compact')
        self.assertEqual(certificate.version, 1)
        self.assertEqual(
            Certificate.loads(certificate.dumps()),
            certificate,
        )

        certificate = emit_certificate(
            unknotted_in(self.complement, 'haken'),
            'unknot',
        )

        self.assertEqual(certificate.bindings, 'fundamental')
        self.assertTrue(verify_certificate_in(certificate, self.complement))

        self.assertRaises(
            ValueError,
            emit_certificate,
            unknotted_in(self.complement, 'vertex', Budget(1)),
            'unknot',
        )
        self.assertRaises(
            ValueError,
            emit_certificate,
            unknotted_in(self.complement, 'vertex'),
            'genus',
        )

    def test_loads(self) -> None:
        for text in (
                '{}',
                'certificate',
                '[]',
                self.certificate.dumps().replace('"bindings": [', '"x": ['),
        ):
            self.assertRaises(ValueError, Certificate.loads, text)

    def test_valid(self) -> None:
        verification = verify_certificate_in(
            self.certificate,
            self.complement,
        )

        self.assertTrue(verification)
        self.assertTrue(verification.valid)
        self.assertEqual(verification.reason, 'ok')

    def test_mutations(self) -> None:
        for i in range(7):
            for delta in (-1, 1):
                vector = list(MERIDIAN_DISK)
                vector[i] += delta

                self.assertEqual(
                    self.verify(
                        replace(self.certificate, vector=tuple(vector)),
                    ),
                    'admissible',
                )

    def test_rejections(self) -> None:
        certificate = self.certificate

        self.assertEqual(
            self.verify(replace(certificate, triangulation_hash='0' * 64)),
            'hash',
        )
        self.assertEqual(
            self.verify(replace(certificate, kind='genus')),
            'kind',
        )
        self.assertEqual(
            self.verify(replace(certificate, vector=MERIDIAN_DISK + (0,))),
            'length',
        )
        self.assertEqual(
            self.verify(replace(certificate, vector=(0,) * 7)),
            'admissible',
        )
        self.assertEqual(
            self.verify(
                replace(
                    certificate,
                    vector=tuple(2 * value for value in MERIDIAN_DISK),
                ),
            ),
            'gcd',
        )

        for bindings in ((0, 1, 2), (0, 1, 2, 3, 4, 5), (0, 0, 1, 2, 7, 8)):
            self.assertEqual(
                self.verify(replace(certificate, bindings=bindings)),
                'bindings',
            )

        self.assertEqual(
            self.verify(replace(certificate, bindings='extreme')),
            'bindings',
        )
        self.assertEqual(
            self.verify(
                replace(
                    certificate,
                    vector=(2, 1, 1, 2, 1, 0, 0),
                    bindings='fundamental',
                ),
            ),
            'fundamental',
        )
        self.assertEqual(
            self.verify(
                replace(
                    certificate,
                    markings={
                        'meridians': [[[0, 1]]],
                        'arcs': [],
                        'arc_ends': [],
                    },
                ),
            ),
            'markings',
        )
        self.assertEqual(self.verify(self.certify(MOBIUS_BAND)), 'chi')
        self.assertEqual(self.verify(self.certify(VERTEX_LINK_DISK)), 'parity')
        self.assertEqual(
            self.verify(replace(certificate, kind='split')),
            'chi',
        )

    @override_settings(HAKENKIT_CERTIFICATE_VERSION=2)
    def test_version(self) -> None:
        self.assertEqual(self.verify(self.certificate), 'version')
        verification = verify_certificate(
            self.certificate,
            parse_diagram(TREFOIL),
        )

        self.assertEqual(verification.reason, 'version')

    @override_settings(HAKENKIT_BOX_LIMIT=2)
    def test_box_limit(self) -> None:
        self.assertEqual(
            self.verify(replace(self.certificate, bindings='fundamental')),
            'budget',
        )

    def test_diagram_mismatch(self) -> None:
        certificate = self.certificate

        self.assertEqual(
            verify_certificate(certificate, parse_diagram(HOPF)).reason,
            'diagram',
        )
        self.assertEqual(
            verify_certificate(
                replace(certificate, kind='split'),
                parse_diagram(TREFOIL),
            ).reason,
            'diagram',
        )
        self.assertEqual(
            verify_certificate(
                replace(certificate, construction='fast'),
                parse_diagram(TREFOIL),
            ).reason,
            'construction',
        )

    def test_splitting_certificate(self) -> None:
        complement = thickened_sphere_complement()
        result = DecisionResult(
            Verdict.YES,
            MIDDLE_SPHERE,
            statistics={'mode': 'haken'},
            problem='split',
            complement=complement,
        )
        certificate = emit_certificate(result, 'split')

        self.assertEqual(certificate.bindings, 'fundamental')
        self.assertEqual(
            certificate.markings,
            {'meridians': [], 'arcs': [[[2, 0]]], 'arc_ends': [[0, 1]]},
        )
        self.assertTrue(verify_certificate_in(certificate, complement))
        self.assertEqual(
            verify_certificate_in(
                replace(certificate, kind='unknot'),
                complement,
            ).reason,
            'chi',
        )

        complement = MarkedComplement(
            thickened_sphere(),
            (),
            arcs=(((2, 0), (5, 0)),),
            arc_ends=((0, 1),),
        )
        certificate = replace(certificate, markings=complement.markings())

        self.assertEqual(
            verify_certificate_in(certificate, complement).reason,
            'parity',
        )


@skipUnless(settings.HAKENKIT_SLOW_TESTS, 'slow diagram decisions')
class DiagramDecisionTestCase(SimpleTestCase):
    def test_unknot(self) -> None:
        diagram = parse_diagram(UNKNOT)
        result = decide_unknotted(diagram)

        self.assertEqual(result.verdict, Verdict.YES)

        certificate = emit_certificate(result, 'unknot')

        self.assertTrue(verify_certificate(certificate, diagram))
        self.assertEqual(
            verify_certificate(
                Certificate.loads(certificate.dumps()),
                diagram,
            ).reason,
            'ok',
        )

    def test_unlink(self) -> None:
        diagram = parse_diagram(UNLINK)
        result = decide_splittable(diagram)

        self.assertEqual(result.verdict, Verdict.YES)
        self.assertTrue(
            verify_certificate(emit_certificate(result, 'split'), diagram),
        )

    def test_trefoil_budget(self) -> None:
        result = decide_unknotted(parse_diagram(TREFOIL), budget=Budget(10))

        self.assertEqual(result.verdict, Verdict.BUDGET_EXCEEDED)


@skipUnless(settings.HAKENKIT_SLOW_TESTS, 'golden diagram decisions')
class GoldenDecisionTestCase(SimpleTestCase):
    def budget(self) -> Budget:
        return Budget(10 ** 12, 6 * 3600.0)

    def test_knotted(self) -> None:
        for text in (TREFOIL, FIGURE_EIGHT):
            diagram = parse_diagram(text)
            result = decide_unknotted(diagram, 'vertex', budget=self.budget())

            self.assertEqual(result.verdict, Verdict.NO)
            self.assertIsNone(result.witness)
            self.assertGreater(result.statistics['rays'], 0)

    def test_kinked_unknot(self) -> None:
        diagram = parse_diagram(KINKED_UNKNOT)
        result = decide_unknotted(diagram, 'vertex', budget=self.budget())

        self.assertEqual(result.verdict, Verdict.YES)
        self.assertTrue(
            verify_certificate(emit_certificate(result, 'unknot'), diagram),
        )

    def test_genus_one(self) -> None:
        for text in (TREFOIL, FIGURE_EIGHT):
            diagram = parse_diagram(text)
            result = compute_genus(diagram, budget=self.budget())

            self.assertEqual(result.verdict, Verdict.YES)
            self.assertEqual(result.genus, 1)
            self.assertTrue(result.statistics['exact'])
            self.assertIsNotNone(result.witness)

    def test_hopf(self) -> None:
        diagram = parse_diagram(HOPF)
        result = decide_splittable(diagram, budget=self.budget())

        self.assertEqual(result.verdict, Verdict.NO)
        self.assertIsNone(result.witness)
        self.assertEqual(result.statistics['mode'], 'vertex')
