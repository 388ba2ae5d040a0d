from unittest.mock import patch

from django.test import SimpleTestCase

from hakenkit.cone import (
    box_size,
    haken_bounds,
    haken_box,
    HakenCone,
    hilbert_basis,
    hilbert_bound,
    is_admissible,
    is_fundamental,
    matching_equations,
    normalize,
    PAIR_CHUNK_SIZE,
    quadrilateral_type,
    satisfies_quadrilateral_conditions,
    verify_box,
    vertex_bound,
    vertex_solutions,
)
from hakenkit.surface import vertex_link
from hakenkit.tests.fixtures import (
    boundary_of_simplex,
    LAYERED_SOLID_TORUS_RAYS,
    layered_solid_torus,
    MERIDIAN_DISK,
    MIDDLE_SPHERE,
    MOBIUS_BAND,
    thickened_sphere,
    VERTEX_LINK_DISK,
)
from hakenkit.utilities import Budget, BudgetExceededError


class HakenConeTestCase(SimpleTestCase):
    def test_quadrilateral_type(self) -> None:
        self.assertEqual(quadrilateral_type(0, 1), 4)
        self.assertEqual(quadrilateral_type(3, 2), 4)
        self.assertEqual(quadrilateral_type(0, 2), 5)
        self.assertEqual(quadrilateral_type(1, 3), 5)
        self.assertEqual(quadrilateral_type(3, 0), 6)
        self.assertEqual(quadrilateral_type(1, 2), 6)
        self.assertRaises(ValueError, quadrilateral_type, 1, 1)

    def test_verification(self) -> None:
        self.assertRaises(ValueError, HakenCone, -1, ())
        self.assertRaises(ValueError, HakenCone, 6, (), 1)
        self.assertRaises(ValueError, HakenCone, 2, (((2, 1),),))
        self.assertRaises(ValueError, HakenCone.from_rows, [[1, 2], [1]])

        cone = HakenCone.from_rows([[1, -1, 0]])

        self.assertEqual(cone.width, 3)
        self.assertEqual(cone.rows, (((0, 1), (1, -1)),))
        self.assertEqual(cone.dense_rows(), [[1, -1, 0]])
        self.assertEqual(cone.rank, 1)
        self.assertEqual(cone.dimension, 2)
        self.assertEqual(cone.residual((2, 1, 5)), (1,))
        self.assertRaises(ValueError, cone.verify_length, (1, 1))
        self.assertEqual(cone.dumps([(1, 1, 0)]), '1 -1 0\n\n1 1 0\n')

    def test_matching_equations(self) -> None:
        cone = matching_equations(layered_solid_torus())

        self.assertEqual(cone.width, 7)
        self.assertEqual(cone.tetrahedra, 1)
        self.assertEqual(
            cone.rows,
            (
                ((0, -1), (1, 1), (4, 1), (6, -1)),
                ((1, -1), (2, 1)),
                ((2, -1), (3, 1), (4, -1), (6, 1)),
            ),
        )
        self.assertEqual(cone.rank, 3)
        self.assertEqual(cone.dimension, 4)

        triangulation = boundary_of_simplex()
        cone = matching_equations(triangulation)

        self.assertEqual(cone.width, 35)
        self.assertEqual(len(cone.rows), 30)

        for vertex_class in range(5):
            self.assertTrue(
                is_admissible(cone, vertex_link(triangulation, vertex_class)),
            )

        cone = matching_equations(thickened_sphere())

        self.assertEqual(cone.width, 84)
        self.assertTrue(is_admissible(cone, MIDDLE_SPHERE))

    def test_admissibility(self) -> None:
        cone = matching_equations(layered_solid_torus())

        for vector in (MERIDIAN_DISK, VERTEX_LINK_DISK, MOBIUS_BAND):
            self.assertTrue(is_admissible(cone, vector))

        self.assertTrue(is_admissible(cone, (0,) * 7))
        self.assertFalse(is_admissible(cone, (0, 0, 0, 0, 1, 0, 1)))
        self.assertFalse(
            satisfies_quadrilateral_conditions(cone, (0, 0, 0, 0, 1, 0, 1)),
        )
        self.assertFalse(is_admissible(cone, (1, 0, 0, 0, 0, 0, 0)))
        self.assertFalse(is_admissible(cone, (-1, 0, 0, -1, -1, 0, 0)))
        self.assertRaises(ValueError, is_admissible, cone, (0,) * 6)

        generic = HakenCone.from_rows([[1, -1, 0, 0, 0, 0, 0]])

        self.assertTrue(
            satisfies_quadrilateral_conditions(generic, (1, 1, 0, 0, 1, 1, 1)),
        )

    def test_normalize(self) -> None:
        self.assertEqual(normalize((2, 4, 6)), (1, 2, 3))
        self.assertEqual(normalize([3, 0, 5]), (3, 0, 5))
        self.assertEqual(normalize((0, 0)), (0, 0))


class VertexSolutionsTestCase(SimpleTestCase):
    def test_toy_cones(self) -> None:
        self.assertEqual(
            vertex_solutions(HakenCone.from_rows([[1, -1]])),
            [(1, 1)],
        )
        self.assertEqual(
            vertex_solutions(HakenCone.from_rows([[1, 1, -1, -1]])),
            [(0, 1, 0, 1), (0, 1, 1, 0), (1, 0, 0, 1), (1, 0, 1, 0)],
        )
        self.assertEqual(
            vertex_solutions(HakenCone.from_rows([[2, -1]])),
            [(1, 2)],
        )
        self.assertEqual(vertex_solutions(HakenCone.from_rows([[1, 1]])), [])
        self.assertEqual(
            vertex_solutions(HakenCone(2, ())),
            [(0, 1), (1, 0)],
        )

    def test_layered_solid_torus(self) -> None:
        cone = matching_equations(layered_solid_torus())
        rays = vertex_solutions(cone)

        self.assertEqual(rays, LAYERED_SOLID_TORUS_RAYS)
        self.assertEqual(vertex_solutions(cone, workers=3), rays)
        self.assertTrue(all(max(ray) <= vertex_bound(cone) for ray in rays))

        for ray in rays:
            self.assertEqual(normalize(ray), ray)
            self.assertFalse(any(cone.residual(ray)))

    def test_budget(self) -> None:
        cone = matching_equations(layered_solid_torus())

        self.assertRaises(
            BudgetExceededError,
            vertex_solutions,
            cone,
            Budget(1),
        )

        budget = Budget(100)

        vertex_solutions(cone, budget)
        self.assertGreater(budget.spent, 3)

    def test_time_budget_per_wave(self) -> None:
        cone = HakenCone.from_rows([[1] * 50 + [-1] * 50])
        budget = Budget(10 ** 9, 5.0)
        start = budget.started_at

        with patch(
                'hakenkit.utilities.monotonic',
                side_effect=[start, start, start + 10 ** 6],
        ):
            self.assertRaises(
                BudgetExceededError,
                vertex_solutions,
                cone,
                budget,
                1,
            )

        self.assertEqual(budget.spent, 1 + 2 * PAIR_CHUNK_SIZE)

    def test_admissible_rays(self) -> None:
        cone = matching_equations(layered_solid_torus())
        rays = vertex_solutions(cone, admissible=True)

        self.assertEqual(
            rays,
            [
                ray
                for ray in LAYERED_SOLID_TORUS_RAYS
                if is_admissible(cone, ray)
            ],
        )
        self.assertEqual(len(rays), 4)
        self.assertEqual(
            vertex_solutions(cone, admissible=True, workers=3),
            rays,
        )


class HilbertBasisTestCase(SimpleTestCase):
    def test_box(self) -> None:
        cone = matching_equations(layered_solid_torus())
        bounds = haken_bounds(cone)

        self.assertEqual(bounds, (2, 2, 2, 2, 2, 1, 2))
        self.assertEqual(
            haken_bounds(cone, LAYERED_SOLID_TORUS_RAYS),
            bounds,
        )
        self.assertEqual(box_size(bounds), 1458)

        vectors = list(haken_box(cone, bounds))

        self.assertEqual(len(vectors), 1458)
        self.assertEqual(vectors, sorted(vectors))
        self.assertEqual(vectors[0], (0,) * 7)
        self.assertEqual(vectors[-1], bounds)
        self.assertEqual(vectors.index(MERIDIAN_DISK), 510)
        self.assertRaises(BudgetExceededError, verify_box, bounds, 1000)
        self.assertRaises(
            BudgetExceededError,
            list,
            haken_box(cone, bounds, 100),
        )
        verify_box(bounds, 1458)

    def test_hilbert_basis(self) -> None:
        self.assertEqual(
            hilbert_basis(HakenCone.from_rows([[1, 1, -1, -1]])),
            [(0, 1, 0, 1), (0, 1, 1, 0), (1, 0, 0, 1), (1, 0, 1, 0)],
        )
        self.assertEqual(
            hilbert_basis(HakenCone.from_rows([[2, -1, -1]])),
            [(1, 0, 2), (1, 1, 1), (1, 2, 0)],
        )

        cone = matching_equations(layered_solid_torus())

        self.assertEqual(hilbert_basis(cone), LAYERED_SOLID_TORUS_RAYS)
        self.assertRaises(BudgetExceededError, hilbert_basis, cone, 100)
        self.assertEqual(hilbert_bound(cone), 512)

    def test_is_fundamental(self) -> None:
        cone = HakenCone.from_rows([[2, -1, -1]])

        self.assertTrue(is_fundamental(cone, (1, 1, 1)))
        self.assertTrue(is_fundamental(cone, (1, 2, 0)))
        self.assertFalse(is_fundamental(cone, (2, 2, 2)))
        self.assertFalse(is_fundamental(cone, (2, 1, 3)))
        self.assertFalse(is_fundamental(cone, (0, 0, 0)))

        cone = matching_equations(layered_solid_torus())

        self.assertTrue(is_fundamental(cone, MERIDIAN_DISK))
        self.assertTrue(is_fundamental(cone, MOBIUS_BAND))
        self.assertFalse(is_fundamental(cone, (2, 1, 1, 2, 1, 0, 0)))
        self.assertFalse(is_fundamental(cone, (0, 0, 0, 0, 0, 2, 0)))
        self.assertRaises(
            BudgetExceededError,
            is_fundamental,
            cone,
            (2, 1, 1, 2, 1, 0, 0),
            10,
        )

        cone = matching_equations(thickened_sphere())

        self.assertTrue(is_fundamental(cone, MIDDLE_SPHERE))
