""":mod:`hakenkit.homology` implements mod 2 intersection tests.

Marked curves lie in the 1-skeleton, so a normal surface meets them
transversally in the points it has on their edges.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from logging import getLogger

from hakenkit.complement import LocalEdge
from hakenkit.cone import (
    DISK_TYPE_COUNT,
    is_admissible,
    matching_equations,
    quadrilateral_type,
)
from hakenkit.surface import (
    classify,
    connected_components,
    edge_weight,
    euler_characteristic,
    NormalSurface,
    reconstruct,
)
from hakenkit.triangulation import (
    edge_index,
    face_vertices,
    LOCAL_EDGES,
    Triangulation,
)

_logger = getLogger(__name__)


@dataclass(frozen=True)
class BoundaryClass:
    """The class for mod 2 boundary classes against one meridian."""

    meridian_parity: int
    """The intersection parity with the meridian."""
    component: int
    """The boundary component of the meridian."""

    def __post_init__(self) -> None:
        if self.meridian_parity not in (0, 1):
            raise ValueError(
                f'The parity {self.meridian_parity} is not a bit.',
            )


def _meridian_classes(
        triangulation: Triangulation,
        meridian: Sequence[LocalEdge],
) -> frozenset[int]:
    return frozenset(triangulation.edge_class_of[edge] for edge in meridian)


def boundary_parity(
        triangulation: Triangulation,
        vector: Sequence[int],
        meridian: Sequence[LocalEdge],
) -> int:
    """Return half the number of boundary arc ends on a meridian,
    modulo 2.

    The count is linear in the vector and needs no reconstruction.

    :param triangulation: The triangulation.
    :param vector: The normal coordinates.
    :param meridian: The meridian edge loop.
    :return: The parity.
    """
    classes = _meridian_classes(triangulation, meridian)
    endpoints = 0

    for tetrahedron, face in triangulation.boundary_faces:
        offset = DISK_TYPE_COUNT * tetrahedron

        for corner in face_vertices(face):
            arcs = (
                vector[offset + corner]
                + vector[offset + quadrilateral_type(corner, face)]
            )

            for other in face_vertices(face):
                edge = tetrahedron, edge_index(corner, other)

                if (
                        other != corner
                        and triangulation.edge_class_of[edge] in classes
                ):
                    endpoints += arcs

    assert endpoints % 2 == 0

    return endpoints // 2 % 2


def _direct_parity(
        triangulation: Triangulation,
        surface: NormalSurface,
        classes: frozenset[int],
) -> int:
    count = 0

    for tetrahedron, a, b, _ in surface.vertices:
        edge = tetrahedron, LOCAL_EDGES.index((a, b))

        if triangulation.edge_class_of[edge] in classes:
            count += 1

    return count % 2


def meridian_parity(
        triangulation: Triangulation,
        vector: Sequence[int],
        meridian: Sequence[LocalEdge],
        surface: NormalSurface | None = None,
) -> int:
    """Return the intersection parity of the surface boundary with a
    meridian.

    Half the number of boundary arc ends on the meridian edges is
    compared with the number of reconstructed surface points on them.

    :param triangulation: The triangulation.
    :param vector: The admissible normal coordinates.
    :param meridian: The meridian edge loop.
    :param surface: The reconstructed surface, if already known.
    :return: The parity.
    :raises ValueError: If the two counts disagree.
    """
    if not any(vector):
        return 0

    classes = _meridian_classes(triangulation, meridian)
    formula = boundary_parity(triangulation, vector, meridian)

    if surface is None:
        surface = reconstruct(triangulation, vector)

    direct = _direct_parity(triangulation, surface, classes)

    if formula != direct:
        raise ValueError(
            (
                f'The meridian parities {formula} and {direct} disagree,'
                ' so the meridian is not marked on the boundary.'
            ),
        )

    return formula


def boundary_classes(
        triangulation: Triangulation,
        vector: Sequence[int],
        meridians: Sequence[Sequence[LocalEdge]],
) -> tuple[BoundaryClass, ...]:
    """Return the boundary class against every meridian.

    :param triangulation: The triangulation.
    :param vector: The admissible normal coordinates.
    :param meridians: The meridians, one per boundary component.
    :return: The classes.
    """
    surface = reconstruct(triangulation, vector) if any(vector) else None

    return tuple(
        BoundaryClass(
            meridian_parity(triangulation, vector, meridian, surface),
            component,
        )
        for component, meridian in enumerate(meridians)
    )


def is_essential_disk(
        triangulation: Triangulation,
        vector: Sequence[int],
        meridian: Sequence[LocalEdge],
) -> bool:
    """Return whether a vector is a disk whose boundary meets the
    meridian an odd number of times.

    >>> lst = Triangulation(
    ...     (((0, (3, 0, 1, 2)), None, None, (0, (1, 2, 3, 0))),),
    ... )
    >>> is_essential_disk(lst, (1, 0, 0, 1, 1, 0, 0), ((0, 0),))
    True
    >>> is_essential_disk(lst, (1, 1, 1, 1, 0, 0, 0), ((0, 0),))
    False

    :param triangulation: The triangulation.
    :param vector: The normal coordinates.
    :param meridian: The meridian edge loop.
    :return: ``True`` for essential disks, otherwise ``False``.
    """
    if not any(vector) or not is_admissible(
            matching_equations(triangulation),
            vector,
    ):
        return False

    if euler_characteristic(triangulation, vector) != 1:
        return False

    if boundary_parity(triangulation, vector, meridian) != 1:
        return False

    surface = reconstruct(triangulation, vector)

    if connected_components(surface) != 1:
        return False

    report = classify(triangulation, vector)

    _logger.debug('Disk candidate %s has %s', vector, report)

    return (
        report.is_disk
        and meridian_parity(triangulation, vector, meridian, surface) == 1
    )


def arc_parity(
        triangulation: Triangulation,
        vector: Sequence[int],
        arc: Sequence[LocalEdge],
) -> int:
    """Return the intersection parity of a surface with an arc.

    :param triangulation: The triangulation.
    :param vector: The admissible normal coordinates.
    :param arc: The interior edge path.
    :return: The parity.
    :raises ValueError: If an arc edge lies on the boundary.
    """
    count = 0

    for tetrahedron, local in arc:
        edge_class = triangulation.edge_class_of[tetrahedron, local]

        if edge_class in triangulation.boundary_edge_classes:
            raise ValueError(
                f'The arc edge {(tetrahedron, local)} lies on the boundary.',
            )

        a, b = LOCAL_EDGES[local]
        count += edge_weight(vector, tetrahedron, a, b)

    return count % 2
