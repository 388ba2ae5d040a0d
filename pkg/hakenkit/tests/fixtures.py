from itertools import combinations
from pathlib import Path
from tempfile import TemporaryDirectory

from django.test import SimpleTestCase

from hakenkit.complement import MarkedComplement
from hakenkit.triangulation import Triangulation

TREFOIL = 'PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]'
FIGURE_EIGHT = 'PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]'
HOPF = 'PD[X(1,3,2,4),X(3,1,4,2)]'
KINKED_UNKNOT = 'PD[X(1,2,2,1)]'
UNKNOT = 'L[0]'
UNLINK = 'L[0] L[1]'

LAYERED_SOLID_TORUS = (((0, (3, 0, 1, 2)), None, None, (0, (1, 2, 3, 0))),)
MERIDIAN = ((0, 0),)
MERIDIAN_DISK = 1, 0, 0, 1, 1, 0, 0
VERTEX_LINK_DISK = 1, 1, 1, 1, 0, 0, 0
MOBIUS_BAND = 0, 0, 0, 0, 0, 1, 0
LAYERED_SOLID_TORUS_RAYS = [
    (0, 0, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 1, 0, 1),
    (0, 1, 1, 0, 0, 0, 1),
    (1, 0, 0, 1, 1, 0, 0),
    (1, 1, 1, 1, 0, 0, 0),
]

MIDDLE_SPHERE = (
    0, 0, 0, 1, 0, 0, 0,
    0, 0, 0, 0, 1, 0, 0,
    1, 0, 0, 0, 0, 0, 0,
) * 4
VERTICAL_ARC = ((2, 0),)


def layered_solid_torus() -> Triangulation:
    return Triangulation(LAYERED_SOLID_TORUS)


def solid_torus_complement() -> MarkedComplement:
    return MarkedComplement(
        layered_solid_torus(),
        (),
        meridians=(MERIDIAN,),
    )


def thickened_sphere() -> Triangulation:
    simplices = []

    for a, b, c in combinations(range(4), 3):
        simplices.extend(
            (
                ((a, 0), (b, 0), (c, 0), (c, 1)),
                ((a, 0), (b, 0), (b, 1), (c, 1)),
                ((a, 0), (a, 1), (b, 1), (c, 1)),
            ),
        )

    return Triangulation.from_simplices(simplices)


def thickened_sphere_complement() -> MarkedComplement:
    return MarkedComplement(
        thickened_sphere(),
        (),
        arcs=(VERTICAL_ARC,),
        arc_ends=((0, 1),),
    )


def boundary_of_simplex() -> Triangulation:
    return Triangulation.from_simplices(combinations(range(5), 4))


class TemporaryFilesTestCaseMixin(SimpleTestCase):
    def setUp(self) -> None:
        directory = TemporaryDirectory()
        self.directory = Path(directory.name)

        self.addCleanup(directory.cleanup)

    def write(self, name: str, text: str) -> str:
        path = self.directory / name

        path.write_text(text)

        return str(path)
