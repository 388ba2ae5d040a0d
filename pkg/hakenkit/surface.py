""":mod:`hakenkit.surface` reconstructs and classifies normal surfaces.

Elementary disks of one type in a tetrahedron are stacked in sheets:
triangle sheet 0 is nearest the vertex it cuts off, quadrilateral sheet
0 is nearest the vertex pair containing vertex 0. On every face corner
the normal arcs are ordered outward from the corner, triangles first,
and the k-th arc on one side of a glued face is glued to the k-th arc
on the other side.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from logging import getLogger
from typing import TypeAlias

from networkx.utils import UnionFind
import networkx as nx

from hakenkit.cone import (
    DISK_TYPE_COUNT,
    is_admissible,
    matching_equations,
    QUADRILATERAL_PAIRS,
    quadrilateral_type,
    TRIANGLE_COUNT,
)
from hakenkit.triangulation import (
    face_vertices,
    LOCAL_EDGES,
    Triangulation,
)

Disk: TypeAlias = tuple[int, int, int]
"""An elementary disk, as (tetrahedron, disk type, sheet)."""
Point: TypeAlias = tuple[int, int, int, int]
"""A surface vertex, as (tetrahedron, lesser vertex, greater vertex,
position from the lesser vertex)."""

_logger = getLogger(__name__)


def _coordinates(vector: Sequence[int], tetrahedron: int) -> Sequence[int]:
    offset = DISK_TYPE_COUNT * tetrahedron

    return vector[offset:offset + DISK_TYPE_COUNT]


def _is_first(vertex: int, disk_type: int) -> bool:
    return vertex in QUADRILATERAL_PAIRS[disk_type - TRIANGLE_COUNT][0]


def separating_quadrilaterals(a: int, b: int) -> tuple[int, ...]:
    """Return the quadrilateral types separating two vertices.

    >>> separating_quadrilaterals(0, 1)
    (5, 6)

    :param a: The first vertex.
    :param b: The second vertex.
    :return: The disk types.
    """
    return tuple(
        disk_type
        for disk_type in range(TRIANGLE_COUNT, DISK_TYPE_COUNT)
        if disk_type != quadrilateral_type(a, b)
    )


def edge_weight(
        vector: Sequence[int],
        tetrahedron: int,
        a: int,
        b: int,
) -> int:
    """Return the number of disks meeting a tetrahedron edge.

    :param vector: The normal coordinates.
    :param tetrahedron: The tetrahedron.
    :param a: The first vertex of the edge.
    :param b: The second vertex of the edge.
    :return: The intersection count.
    """
    coordinates = _coordinates(vector, tetrahedron)

    return coordinates[a] + coordinates[b] + sum(
        coordinates[disk_type]
        for disk_type in separating_quadrilaterals(a, b)
    )


def corner_arcs(
        vector: Sequence[int],
        tetrahedron: int,
        face: int,
        corner: int,
) -> list[tuple[Disk, int]]:
    """Return the disks with arcs at a face corner, ordered outward.

    Each disk is paired with the sign of its side facing the corner.

    :param vector: The normal coordinates.
    :param tetrahedron: The tetrahedron.
    :param face: The face.
    :param corner: The corner vertex of the face.
    :return: The (disk, side) pairs.
    """
    coordinates = _coordinates(vector, tetrahedron)
    disk_type = quadrilateral_type(corner, face)
    arcs = [
        ((tetrahedron, corner, sheet), 1)
        for sheet in range(coordinates[corner])
    ]
    sheets = range(coordinates[disk_type])

    if _is_first(corner, disk_type):
        arcs.extend(((tetrahedron, disk_type, sheet), 1) for sheet in sheets)
    else:
        arcs.extend(
            ((tetrahedron, disk_type, sheet), -1)
            for sheet in reversed(sheets)
        )

    return arcs


def _point(
        vector: Sequence[int],
        tetrahedron: int,
        a: int,
        b: int,
        position: int,
) -> Point:
    if a < b:
        return tetrahedron, a, b, position

    count = edge_weight(vector, tetrahedron, a, b)

    return tetrahedron, b, a, count - 1 - position


@dataclass(frozen=True)
class NormalSurface:
    """The class for reconstructed normal surfaces.

    Glued arcs are recorded as (disk, side, disk, side) quadruples whose
    sides face the glued corners; free arcs as (disk, point, point)
    triples on the boundary.
    """

    triangulation: Triangulation
    """The ambient triangulation."""
    vector: tuple[int, ...]
    """The normal coordinates."""
    disks: tuple[Disk, ...]
    """The elementary disks."""
    glued_arcs: tuple[tuple[int, int, int, int], ...]
    """The glued arc pairs."""
    free_arcs: tuple[tuple[int, Point, Point], ...]
    """The arcs on the boundary."""
    vertices: tuple[Point, ...]
    """The least representative of every surface vertex."""

    @property
    def edge_count(self) -> int:
        """Return the number of surface edges.

        :return: The edge count.
        """
        return len(self.glued_arcs) + len(self.free_arcs)

    @property
    def euler_characteristic(self) -> int:
        """Return ``V - E + F`` of the cell complex.

        Splitting every quadrilateral into four triangles about its
        centre leaves the value unchanged.

        :return: The Euler characteristic.
        """
        return len(self.vertices) - self.edge_count + len(self.disks)

    @cached_property
    def component_of(self) -> dict[int, int]:
        """Return the component index of every disk.

        :return: The component indices.
        """
        union_find = UnionFind(range(len(self.disks)))

        for first, _, second, _ in self.glued_arcs:
            union_find.union(first, second)

        components = sorted(
            tuple(sorted(s)) for s in union_find.to_sets()
        )

        return {
            disk: index
            for index, members in enumerate(components)
            for disk in members
        }


def reconstruct(
        triangulation: Triangulation,
        vector: Sequence[int],
) -> NormalSurface:
    """Reconstruct the normal surface of an admissible vector.

    :param triangulation: The triangulation.
    :param vector: The admissible nonzero normal coordinates.
    :return: The surface.
    :raises ValueError: If the vector is zero or not admissible.
    """
    vector = tuple(vector)

    if not is_admissible(matching_equations(triangulation), vector):
        raise ValueError('The vector is not admissible.')

    if not any(vector):
        raise ValueError('The zero vector has no surface.')

    disks = tuple(
        (tetrahedron, disk_type, sheet)
        for tetrahedron in range(triangulation.size)
        for disk_type in range(DISK_TYPE_COUNT)
        for sheet in range(vector[DISK_TYPE_COUNT * tetrahedron + disk_type])
    )
    disk_index = {disk: index for index, disk in enumerate(disks)}
    points = UnionFind(
        _point(vector, tetrahedron, a, b, position)
        for tetrahedron in range(triangulation.size)
        for a, b in LOCAL_EDGES
        for position in range(edge_weight(vector, tetrahedron, a, b))
    )
    glued_arcs = []
    boundary = []

    for tetrahedron, face, gluing in triangulation.faces():
        if gluing is not None:
            target, permutation = gluing

            if (target, permutation[face]) < (tetrahedron, face):
                continue

        for corner in face_vertices(face):
            others = [v for v in face_vertices(face) if v != corner]
            arcs = corner_arcs(vector, tetrahedron, face, corner)

            if gluing is None:
                for position, (disk, _) in enumerate(arcs):
                    boundary.append(
                        (
                            disk_index[disk],
                            _point(
                                vector,
                                tetrahedron,
                                corner,
                                others[0],
                                position,
                            ),
                            _point(
                                vector,
                                tetrahedron,
                                corner,
                                others[1],
                                position,
                            ),
                        ),
                    )

                continue

            image = permutation[corner]
            target_arcs = corner_arcs(
                vector,
                target,
                permutation[face],
                image,
            )

            assert len(arcs) == len(target_arcs)

            for position, ((disk, side), (target_disk, target_side)) in (
                    enumerate(zip(arcs, target_arcs))
            ):
                glued_arcs.append(
                    (
                        disk_index[disk],
                        side,
                        disk_index[target_disk],
                        target_side,
                    ),
                )

                for other in others:
                    points.union(
                        _point(vector, tetrahedron, corner, other, position),
                        _point(
                            vector,
                            target,
                            image,
                            permutation[other],
                            position,
                        ),
                    )

    free_arcs = tuple(
        (disk, points[u], points[v]) for disk, u, v in boundary
    )
    vertices = tuple(sorted(min(s) for s in points.to_sets()))

    _logger.debug(
        'Reconstructed %d disks and %d vertices',
        len(disks),
        len(vertices),
    )

    return NormalSurface(
        triangulation,
        vector,
        disks,
        tuple(glued_arcs),
        free_arcs,
        vertices,
    )


def triangle_count(vector: Sequence[int]) -> int:
    """Return the number of triangular disks.

    :param vector: The normal coordinates.
    :return: The triangle count.
    """
    return sum(
        value
        for index, value in enumerate(vector)
        if index % DISK_TYPE_COUNT < TRIANGLE_COUNT
    )


def boundary_arc_count(
        triangulation: Triangulation,
        vector: Sequence[int],
) -> int:
    """Return the number of normal arcs on boundary faces.

    :param triangulation: The triangulation.
    :param vector: The normal coordinates.
    :return: The arc count.
    """
    count = 0

    for tetrahedron, face in triangulation.boundary_faces:
        coordinates = _coordinates(vector, tetrahedron)

        for corner in face_vertices(face):
            count += coordinates[corner]
            count += coordinates[quadrilateral_type(corner, face)]

    return count


def edge_class_weights(
        triangulation: Triangulation,
        vector: Sequence[int],
) -> tuple[Fraction, ...]:
    """Return the surface intersections with every edge class.

    Every class averages the counts of its tetrahedron edges, so the
    result is integral exactly when the vector satisfies the matching
    equations.

    :param triangulation: The triangulation.
    :param vector: The normal coordinates.
    :return: The intersection counts.
    """
    weights = []

    for members, valence in zip(
            triangulation.edge_classes,
            triangulation.edge_valences,
    ):
        total = 0

        for tetrahedron, local in members:
            a, b = LOCAL_EDGES[local]
            total += edge_weight(vector, tetrahedron, a, b)

        weights.append(Fraction(total, valence))

    return tuple(weights)


def weight(triangulation: Triangulation, vector: Sequence[int]) -> int:
    """Return the number of intersections with the 1-skeleton.

    :param triangulation: The triangulation.
    :param vector: The normal coordinates.
    :return: The weight.
    :raises ValueError: If the weighted sum is not integral.
    """
    total = sum(edge_class_weights(triangulation, vector), Fraction())

    if total.denominator != 1:
        raise ValueError(f'The weight {total} is not integral.')

    return total.numerator


def euler_characteristic(
        triangulation: Triangulation,
        vector: Sequence[int],
) -> int:
    """Return the Euler characteristic of the surface of a vector.

    The value is ``S3 / 2 - sigma + wt - beta / 2`` for the triangle
    count ``S3``, the disk count ``sigma``, the weight ``wt`` and the
    number ``beta`` of normal arcs on the boundary. Every term is linear
    in the vector.

    :param triangulation: The triangulation.
    :param vector: The admissible normal coordinates.
    :return: The Euler characteristic.
    :raises ValueError: If the vector is not admissible.
    """
    if not is_admissible(matching_equations(triangulation), vector):
        raise ValueError('The vector is not admissible.')

    doubled = (
        triangle_count(vector)
        - 2 * sum(vector)
        + 2 * weight(triangulation, vector)
        - boundary_arc_count(triangulation, vector)
    )

    assert doubled % 2 == 0

    return doubled // 2


def connected_components(surface: NormalSurface) -> int:
    """Return the number of connected components.

    :param surface: The surface.
    :return: The component count.
    """
    return len(set(surface.component_of.values()))


def is_orientable(surface: NormalSurface) -> bool:
    """Return whether a connected surface is two-sided.

    Two sides of glued disks facing the glued corners are joined, as are
    the opposite sides. The surface is two-sided when no disk has both
    of its sides joined.

    :param surface: The connected surface.
    :return: ``True`` if two-sided, otherwise ``False``.
    :raises ValueError: If the surface is disconnected.
    """
    if connected_components(surface) != 1:
        raise ValueError('The surface is not connected.')

    sides = UnionFind(
        (disk, side) for disk in range(len(surface.disks)) for side in (1, -1)
    )

    for first, first_side, second, second_side in surface.glued_arcs:
        sides.union((first, first_side), (second, second_side))
        sides.union((first, -first_side), (second, -second_side))

    return all(
        sides[disk, 1] != sides[disk, -1]
        for disk in range(len(surface.disks))
    )


def boundary_curves(surface: NormalSurface) -> int:
    """Return the number of boundary curves.

    :param surface: The surface.
    :return: The curve count.
    :raises ValueError: If the free arcs do not close up.
    """
    graph = nx.MultiGraph()

    for _, u, v in surface.free_arcs:
        graph.add_edge(u, v)

    for node, degree in graph.degree():
        if degree != 2:
            raise ValueError(
                f'The boundary point {node} meets {degree} free arcs.',
            )

    return nx.number_connected_components(graph)


@dataclass(frozen=True)
class SurfaceReport:
    """The class for surface classifications."""

    chi: int
    """The Euler characteristic."""
    weight: int
    """The number of intersections with the 1-skeleton."""
    components: int
    """The number of connected components."""
    orientable: bool
    """The orientability."""
    boundary_curves: int
    """The number of boundary curves."""
    vector: tuple[int, ...]
    """The normal coordinates."""

    @property
    def is_disk(self) -> bool:
        """Return whether the surface is a disk.

        :return: ``True`` for disks.
        """
        return self.chi == 1 and self.boundary_curves > 0

    @property
    def is_sphere(self) -> bool:
        """Return whether the surface is a sphere.

        :return: ``True`` for spheres.
        """
        return self.chi == 2 and self.boundary_curves == 0

    @property
    def genus(self) -> int | None:
        """Return the genus of an orientable surface.

        :return: ``(2 - chi - b) / 2``, or ``None`` if non-orientable.
        """
        if not self.orientable:
            return None

        doubled = 2 - self.chi - self.boundary_curves

        assert doubled % 2 == 0

        return doubled // 2

    def serialize(self) -> dict[str, object]:
        """Return the JSON-ready report.

        :return: The report.
        """
        return {
            'chi': self.chi,
            'weight': self.weight,
            'components': self.components,
            'orientable': self.orientable,
            'boundary_curves': self.boundary_curves,
            'is_disk': self.is_disk,
            'is_sphere': self.is_sphere,
            'genus': self.genus,
            'vector': list(self.vector),
        }


def classify(
        triangulation: Triangulation,
        vector: Sequence[int],
) -> SurfaceReport:
    """Classify the connected surface of an admissible vector.

    :param triangulation: The triangulation.
    :param vector: The admissible nonzero normal coordinates.
    :return: The report.
    :raises ValueError: If the surface is disconnected.
    """
    surface = reconstruct(triangulation, vector)
    components = connected_components(surface)

    if components != 1:
        raise ValueError(f'The surface has {components} components.')

    chi = euler_characteristic(triangulation, vector)

    assert chi == surface.euler_characteristic

    return SurfaceReport(
        chi,
        weight(triangulation, vector),
        components,
        is_orientable(surface),
        boundary_curves(surface),
        tuple(vector),
    )


def vertex_link(
        triangulation: Triangulation,
        vertex_class: int,
) -> tuple[int, ...]:
    """Return the normal coordinates of a vertex link.

    >>> from itertools import combinations
    >>> boundary = Triangulation.from_simplices(combinations(range(5), 4))
    >>> vertex_link(boundary, 0)[:7]
    (1, 0, 0, 0, 0, 0, 0)

    :param triangulation: The triangulation.
    :param vertex_class: The vertex class index.
    :return: One triangle per corner of the class.
    """
    vector = [0] * (DISK_TYPE_COUNT * triangulation.size)

    for tetrahedron, v in triangulation.vertex_classes[vertex_class]:
        vector[DISK_TYPE_COUNT * tetrahedron + v] += 1

    return tuple(vector)

