""":mod:`hakenkit.triangulation` implements triangulated 3-manifolds.

A triangulation is a list of tetrahedra whose faces are either on the
boundary or glued to faces of (possibly the same) tetrahedra. Face
``f`` of a tetrahedron is the face opposite its vertex ``f``; a gluing
of face ``f`` is a target tetrahedron together with a permutation of
the four vertex indices that sends ``f`` to the target face and the
remaining three vertices onto the target face's vertices.

>>> faces = (0, (3, 0, 1, 2)), None, None, (0, (1, 2, 3, 0))
>>> layered = Triangulation((faces,))
>>> layered.size, len(layered.edge_classes)
(1, 3)
>>> layered.edge_valences
(3, 2, 1)
>>> layered.is_orientable()
True
>>> layered.first_homology()
(0,)
"""

from __future__ import annotations

from collections import defaultdict, deque
from collections.abc import Hashable, Iterable
from dataclasses import dataclass, field
from functools import cached_property
from hashlib import sha256
from itertools import combinations, permutations
from logging import getLogger
from typing import Any, TypeAlias

from networkx.utils import UnionFind
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

Permutation: TypeAlias = tuple[int, int, int, int]
"""A permutation of the vertex indices 0-3."""
Gluing: TypeAlias = tuple[int, Permutation]
"""A face gluing, as (target tetrahedron, vertex permutation)."""

LOCAL_EDGES: tuple[tuple[int, int], ...] = (
    (0, 1),
    (0, 2),
    (0, 3),
    (1, 2),
    (1, 3),
    (2, 3),
)
"""The local edges of a tetrahedron, indexed 0-5."""
PERMUTATIONS_3: tuple[tuple[int, ...], ...] = tuple(permutations(range(3)))
PERMUTATIONS_4: tuple[Permutation, ...] = tuple(
    (a, b, c, d) for a, b, c, d in permutations(range(4))
)
IDENTITY: Permutation = 0, 1, 2, 3

_logger = getLogger(__name__)


def face_vertices(face: int) -> tuple[int, int, int]:
    """Return the vertices of a face in increasing order.

    >>> face_vertices(2)
    (0, 1, 3)

    :param face: The face index.
    :return: The three vertices.
    """
    a, b, c = (v for v in range(4) if v != face)

    return a, b, c


def edge_index(a: int, b: int) -> int:
    """Return the local index of the edge between two vertices.

    >>> edge_index(3, 1)
    4

    :param a: The first vertex.
    :param b: The second vertex.
    :return: The local edge index.
    """
    return LOCAL_EDGES.index((min(a, b), max(a, b)))


def label_key(label: Any) -> tuple[Any, ...]:
    """Return a sort key for nested vertex labels.

    Frozensets are keyed by their sorted members, so the order does not
    depend on the hash seed.

    >>> sorted([frozenset({2, 1}), frozenset({1})], key=label_key)
    [frozenset({1}), frozenset({1, 2})]

    :param label: The label.
    :return: The key.
    """
    match label:
        case frozenset():
            return 3, tuple(sorted(map(label_key, label)))
        case tuple():
            return 2, tuple(map(label_key, label))
        case str():
            return 1, label
        case _:
            return 0, label


def inverse(permutation: Permutation) -> Permutation:
    """Return the inverse of a permutation.

    :param permutation: The permutation.
    :return: The inverse permutation.
    """
    values = [0] * 4

    for i, image in enumerate(permutation):
        values[image] = i

    a, b, c, d = values

    return a, b, c, d


def parity(permutation: tuple[int, ...]) -> int:
    """Return the sign of a permutation.

    >>> parity((1, 0, 2, 3)), parity((1, 2, 3, 0))
    (-1, -1)

    :param permutation: The permutation.
    :return: ``1`` for even and ``-1`` for odd permutations.
    """
    inversions = sum(
        1 for i, j in combinations(range(len(permutation)), 2)
        if permutation[i] > permutation[j]
    )

    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class BoundaryComponent:
    """The class for boundary surface components."""

    faces: tuple[tuple[int, int], ...]
    """The boundary faces, as (tetrahedron, face) pairs."""
    edge_classes: tuple[int, ...]
    """The edge classes lying on the component."""
    vertex_classes: tuple[int, ...]
    """The vertex classes lying on the component."""

    @property
    def euler_characteristic(self) -> int:
        """Return the Euler characteristic of the component.

        :return: The Euler characteristic.
        """
        return (
            len(self.vertex_classes)
            - len(self.edge_classes)
            + len(self.faces)
        )


@dataclass(frozen=True)
class Triangulation:
    """The class for triangulations.

    ``labels``, when present, names the vertices of every tetrahedron.
    Labels are provenance only; they take no part in equality or in the
    serialization.
    """

    gluings: tuple[tuple[Gluing | None, ...], ...]
    """The gluing of every face of every tetrahedron."""
    labels: tuple[tuple[Hashable, ...], ...] | None = field(
        default=None,
        compare=False,
        repr=False,
    )
    """The optional vertex labels of every tetrahedron."""

    def __post_init__(self) -> None:
        self.verify()

    def verify(self) -> None:
        """Verify that the gluings are well formed and involutive.

        :return: ``None``.
        :raises ValueError: If a gluing is malformed.
        """
        for tetrahedron, faces in enumerate(self.gluings):
            if len(faces) != 4:
                raise ValueError(
                    (
                        f'The tetrahedron {tetrahedron} has {len(faces)}'
                        ' faces instead of 4.'
                    ),
                )

            for face, gluing in enumerate(faces):
                if gluing is None:
                    continue

                target, permutation = gluing

                if not 0 <= target < self.size:
                    raise ValueError(
                        f'The target tetrahedron {target} does not exist.',
                    )

                if tuple(sorted(permutation)) != IDENTITY:
                    raise ValueError(
                        f'The gluing {permutation} is not a permutation.',
                    )

                target_face = permutation[face]

                if (target, target_face) == (tetrahedron, face):
                    raise ValueError(
                        (
                            f'The face {face} of the tetrahedron'
                            f' {tetrahedron} is glued to itself.'
                        ),
                    )

                if self.gluings[target][target_face] != (
                        tetrahedron,
                        inverse(permutation),
                ):
                    raise ValueError(
                        (
                            f'The gluing of the face {face} of the'
                            f' tetrahedron {tetrahedron} is not involutive.'
                        ),
                    )

        if self.labels is not None and len(self.labels) != self.size:
            raise ValueError('The labels do not match the tetrahedra.')

    @classmethod
    def from_simplices(
            cls,
            simplices: Iterable[tuple[Hashable, ...]],
    ) -> Triangulation:
        """Glue labelled tetrahedra along faces with equal labels.

        >>> boundary = Triangulation.from_simplices(combinations(range(5), 4))
        >>> boundary.size, boundary.boundary_faces
        (5, ())

        :param simplices: The vertex labels of the tetrahedra.
        :return: The triangulation.
        :raises ValueError: If a face is shared by more than two
                            tetrahedra or labels repeat.
        """
        labels = tuple(tuple(simplex) for simplex in simplices)
        faces = defaultdict[frozenset[Hashable], list[tuple[int, int]]](list)

        for tetrahedron, simplex in enumerate(labels):
            if len(simplex) != 4 or len(set(simplex)) != 4:
                raise ValueError(
                    (
                        f'The simplex {simplex!r} does not have 4 distinct'
                        ' labels.'
                    ),
                )

            for face in range(4):
                key = frozenset(simplex[:face] + simplex[face + 1:])

                faces[key].append((tetrahedron, face))

        gluings = [[None] * 4 for _ in labels]

        for key, incidences in faces.items():
            if len(incidences) > 2:
                raise ValueError(
                    (
                        f'The face {set(key)!r} is shared by more than 2'
                        ' simplices.'
                    ),
                )
            elif len(incidences) == 2:
                (t0, f0), (t1, f1) = incidences

                for source, face, target, target_face in (
                        (t0, f0, t1, f1),
                        (t1, f1, t0, f0),
                ):
                    a, b, c, d = (
                        target_face
                        if v == face
                        else labels[target].index(label)
                        for v, label in enumerate(labels[source])
                    )
                    gluings[source][face] = target, (a, b, c, d)

        return cls(tuple(map(tuple, gluings)), labels)

    @property
    def size(self) -> int:
        """Return the number of tetrahedra.

        :return: The tetrahedron count.
        """
        return len(self.gluings)

    def faces(self) -> Iterable[tuple[int, int, Gluing | None]]:
        """Iterate over all tetrahedron faces and their gluings.

        :return: The (tetrahedron, face, gluing) triples.
        """
        for tetrahedron, faces in enumerate(self.gluings):
            for face, gluing in enumerate(faces):
                yield tetrahedron, face, gluing

    @cached_property
    def boundary_faces(self) -> tuple[tuple[int, int], ...]:
        """Return the faces on the boundary.

        :return: The (tetrahedron, face) pairs.
        """
        return tuple(
            (tetrahedron, face)
            for tetrahedron, face, gluing in self.faces()
            if gluing is None
        )

    @cached_property
    def _vertex_union_find(self) -> UnionFind:
        union_find = UnionFind(
            (tetrahedron, v)
            for tetrahedron in range(self.size)
            for v in range(4)
        )

        for tetrahedron, face, gluing in self.faces():
            if gluing is not None:
                target, permutation = gluing

                for v in face_vertices(face):
                    union_find.union(
                        (tetrahedron, v),
                        (target, permutation[v]),
                    )

        return union_find

    @cached_property
    def _oriented_edge_union_find(self) -> UnionFind:
        union_find = UnionFind(
            (tetrahedron, a, b)
            for tetrahedron in range(self.size)
            for a in range(4)
            for b in range(4)
            if a != b
        )

        for tetrahedron, face, gluing in self.faces():
            if gluing is not None:
                target, permutation = gluing

                for a in face_vertices(face):
                    for b in face_vertices(face):
                        if a != b:
                            union_find.union(
                                (tetrahedron, a, b),
                                (target, permutation[a], permutation[b]),
                            )

        return union_find

    @cached_property
    def vertex_classes(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Return the vertex equivalence classes.

        :return: The classes of (tetrahedron, vertex) pairs, sorted.
        """
        return tuple(
            sorted(
                tuple(sorted(s))
                for s in self._vertex_union_find.to_sets()
            ),
        )

    @cached_property
    def vertex_class_of(self) -> dict[tuple[int, int], int]:
        """Return the vertex class index of every tetrahedron vertex.

        :return: The class indices.
        """
        return {
            member: index
            for index, members in enumerate(self.vertex_classes)
            for member in members
        }

    @cached_property
    def edge_classes(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Return the edge equivalence classes.

        :return: The classes of (tetrahedron, local edge) pairs, sorted.
        """
        union_find = self._oriented_edge_union_find
        classes = defaultdict[Any, list[tuple[int, int]]](list)

        for tetrahedron in range(self.size):
            for index, (a, b) in enumerate(LOCAL_EDGES):
                root = frozenset(
                    (
                        union_find[(tetrahedron, a, b)],
                        union_find[(tetrahedron, b, a)],
                    ),
                )

                classes[root].append((tetrahedron, index))

        return tuple(sorted(tuple(members) for members in classes.values()))

    @cached_property
    def edge_class_of(self) -> dict[tuple[int, int], int]:
        """Return the edge class index of every tetrahedron edge.

        :return: The class indices.
        """
        return {
            member: index
            for index, members in enumerate(self.edge_classes)
            for member in members
        }

    @cached_property
    def edge_valences(self) -> tuple[int, ...]:
        """Return the number of tetrahedron edges in every edge class.

        :return: The valences ``t_j``.
        """
        return tuple(map(len, self.edge_classes))

    def edge_orientation(self, tetrahedron: int, edge: int) -> int:
        """Return whether a tetrahedron edge agrees with its class.

        Every class is oriented like its first member, from the lesser
        to the greater local vertex.

        :param tetrahedron: The tetrahedron.
        :param edge: The local edge index.
        :return: ``1`` if the orientations agree, otherwise ``-1``.
        """
        union_find = self._oriented_edge_union_find
        members = self.edge_classes[self.edge_class_of[tetrahedron, edge]]
        first_tetrahedron, first_edge = members[0]
        a, b = LOCAL_EDGES[first_edge]
        c, d = LOCAL_EDGES[edge]
        root = union_find[(first_tetrahedron, a, b)]

        return 1 if union_find[(tetrahedron, c, d)] == root else -1

    def edge_endpoints(self, edge_class: int) -> tuple[int, int]:
        """Return the vertex classes at the ends of an edge class.

        :param edge_class: The edge class index.
        :return: The tail and head vertex classes.
        """
        tetrahedron, edge = self.edge_classes[edge_class][0]
        a, b = LOCAL_EDGES[edge]

        return (
            self.vertex_class_of[tetrahedron, a],
            self.vertex_class_of[tetrahedron, b],
        )

    def is_edge_valid(self, edge_class: int) -> bool:
        """Return whether an edge class is not identified with its
        reverse.

        :param edge_class: The edge class index.
        :return: ``True`` if valid, otherwise ``False``.
        """
        union_find = self._oriented_edge_union_find
        tetrahedron, edge = self.edge_classes[edge_class][0]
        a, b = LOCAL_EDGES[edge]

        return union_find[(tetrahedron, a, b)] != union_find[
            (tetrahedron, b, a)
        ]

    @cached_property
    def boundary_edge_classes(self) -> frozenset[int]:
        """Return the edge classes lying on the boundary.

        :return: The edge class indices.
        """
        return frozenset(
            self.edge_class_of[tetrahedron, edge_index(a, b)]
            for tetrahedron, face in self.boundary_faces
            for a, b in combinations(face_vertices(face), 2)
        )

    @cached_property
    def boundary_vertex_classes(self) -> frozenset[int]:
        """Return the vertex classes lying on the boundary.

        :return: The vertex class indices.
        """
        return frozenset(
            self.vertex_class_of[tetrahedron, v]
            for tetrahedron, face in self.boundary_faces
            for v in face_vertices(face)
        )

    @cached_property
    def boundary_components(self) -> tuple[BoundaryComponent, ...]:
        """Return the connected components of the boundary.

        :return: The components, ordered by their first face.
        """
        union_find = UnionFind(self.boundary_faces)
        first_face = dict[int, tuple[int, int]]()

        for tetrahedron, face in self.boundary_faces:
            for a, b in combinations(face_vertices(face), 2):
                edge_class = self.edge_class_of[tetrahedron, edge_index(a, b)]

                if edge_class in first_face:
                    union_find.union(
                        first_face[edge_class],
                        (tetrahedron, face),
                    )
                else:
                    first_face[edge_class] = tetrahedron, face

        components = []

        for faces in sorted(tuple(sorted(s)) for s in union_find.to_sets()):
            edge_classes = set[int]()
            vertex_classes = set[int]()

            for tetrahedron, face in faces:
                for a, b in combinations(face_vertices(face), 2):
                    edge_classes.add(
                        self.edge_class_of[tetrahedron, edge_index(a, b)],
                    )

                for v in face_vertices(face):
                    vertex_classes.add(self.vertex_class_of[tetrahedron, v])

            components.append(
                BoundaryComponent(
                    faces,
                    tuple(sorted(edge_classes)),
                    tuple(sorted(vertex_classes)),
                ),
            )

        return tuple(components)

    def vertex_link_euler_characteristics(self) -> tuple[int, ...]:
        """Return the Euler characteristic of every vertex link.

        :return: The characteristics, indexed by vertex class.
        """
        corners = UnionFind(
            (tetrahedron, face, v)
            for tetrahedron in range(self.size)
            for face in range(4)
            for v in face_vertices(face)
        )

        for tetrahedron, face, gluing in self.faces():
            if gluing is not None:
                target, permutation = gluing

                for v in face_vertices(face):
                    corners.union(
                        (tetrahedron, face, v),
                        (target, permutation[face], permutation[v]),
                    )

        counts = [0] * len(self.vertex_classes)

        for members in self.vertex_classes:
            index = self.vertex_class_of[members[0]]
            counts[index] += len(members)

        oriented_edges = set[tuple[int, Any]]()

        for tetrahedron in range(self.size):
            for a in range(4):
                for b in range(4):
                    if a != b:
                        oriented_edges.add(
                            (
                                self.vertex_class_of[tetrahedron, a],
                                self._oriented_edge_union_find[
                                    (tetrahedron, a, b)
                                ],
                            ),
                        )

        for index, _ in oriented_edges:
            counts[index] += 1

        link_edges = set[tuple[int, Any]]()

        for tetrahedron in range(self.size):
            for face in range(4):
                for v in face_vertices(face):
                    link_edges.add(
                        (
                            self.vertex_class_of[tetrahedron, v],
                            corners[(tetrahedron, face, v)],
                        ),
                    )

        for index, _ in link_edges:
            counts[index] -= 1

        return tuple(counts)

    def verify_manifold(self) -> None:
        """Verify that the triangulation is a 3-manifold.

        Interior vertex links must be spheres, boundary vertex links
        disks, and no edge may be identified with its reverse.

        :return: ``None``.
        :raises ValueError: If the triangulation is not a manifold.
        """
        for edge_class in range(len(self.edge_classes)):
            if not self.is_edge_valid(edge_class):
                raise ValueError(
                    f'The edge class {edge_class} is glued to its reverse.',
                )

        characteristics = self.vertex_link_euler_characteristics()

        for vertex_class, characteristic in enumerate(characteristics):
            if vertex_class in self.boundary_vertex_classes:
                expected = 1
            else:
                expected = 2

            if characteristic != expected:
                raise ValueError(
                    (
                        f'The link of the vertex class {vertex_class} has'
                        f' Euler characteristic {characteristic} instead of'
                        f' {expected}.'
                    ),
                )

    def orientations(self) -> tuple[int, ...] | None:
        """Return a consistent orientation of the tetrahedra, if any.

        :return: The signs of the tetrahedra or ``None``.
        """
        signs: list[int | None] = [None] * self.size

        for start in range(self.size):
            if signs[start] is not None:
                continue

            signs[start] = 1
            queue = deque([start])

            while queue:
                tetrahedron = queue.popleft()
                sign = signs[tetrahedron]

                assert sign is not None

                for gluing in self.gluings[tetrahedron]:
                    if gluing is None:
                        continue

                    target, permutation = gluing
                    expected = -sign * parity(permutation)

                    if signs[target] is None:
                        signs[target] = expected

                        queue.append(target)
                    elif signs[target] != expected:
                        return None

        return tuple(sign for sign in signs if sign is not None)

    def is_orientable(self) -> bool:
        """Return whether the triangulation is orientable.

        :return: ``True`` if orientable, otherwise ``False``.
        """
        return self.orientations() is not None

    @cached_property
    def face_class_count(self) -> int:
        """Return the number of distinct triangles.

        :return: The triangle count.
        """
        return (4 * self.size + len(self.boundary_faces)) // 2

    def euler_characteristic(self) -> int:
        """Return the Euler characteristic of the triangulated space.

        :return: The Euler characteristic.
        """
        return (
            len(self.vertex_classes)
            - len(self.edge_classes)
            + self.face_class_count
            - self.size
        )

    def first_homology(self) -> tuple[int, ...]:
        """Return the first integral homology group.

        The result lists ``0`` for every free summand followed by the
        orders of the torsion summands. The Smith normal form is taken
        over dense matrices, so only small triangulations are practical.

        :return: The invariant factors.
        """
        vertex_count = len(self.vertex_classes)
        edge_count = len(self.edge_classes)
        boundary_1 = Matrix.zeros(vertex_count, edge_count)

        for edge_class in range(edge_count):
            tail, head = self.edge_endpoints(edge_class)
            boundary_1[head, edge_class] += 1
            boundary_1[tail, edge_class] -= 1

        columns = []

        for tetrahedron, face, gluing in self.faces():
            if gluing is not None:
                target, permutation = gluing

                if (target, permutation[face]) < (tetrahedron, face):
                    continue

            a, b, c = face_vertices(face)
            column = [0] * edge_count

            for (x, y), coefficient in (
                    ((a, b), 1),
                    ((b, c), 1),
                    ((a, c), -1),
            ):
                edge = edge_index(x, y)
                column[self.edge_class_of[tetrahedron, edge]] += (
                    coefficient * self.edge_orientation(tetrahedron, edge)
                )

            columns.append(column)

        rank_1 = boundary_1.rank() if edge_count else 0

        if columns:
            boundary_2 = Matrix(columns).T
            factors = [
                int(factor)
                for factor in invariant_factors(boundary_2, domain=ZZ)
            ]
        else:
            factors = []

        nonzero = [abs(factor) for factor in factors if factor]
        free_rank = edge_count - rank_1 - len(nonzero)

        return (0,) * free_rank + tuple(
            factor for factor in nonzero if factor > 1
        )

    def barycentric_subdivide(self) -> Triangulation:
        """Return the barycentric subdivision.

        Every tetrahedron splits into 24 tetrahedra indexed by the
        permutations of its vertices in lexicographic order. Vertex
        ``k`` of a new tetrahedron is the barycentre of the face
        spanned by the first ``k + 1`` permuted vertices.

        >>> single = Triangulation(((None, None, None, None),))
        >>> single.barycentric_subdivide().size
        24

        :return: The subdivided triangulation.
        """
        index_of = {
            permutation: index
            for index, permutation in enumerate(PERMUTATIONS_4)
        }
        gluings = []
        labels = None if self.labels is None else list[tuple[Hashable, ...]]()

        for tetrahedron in range(self.size):
            for permutation in PERMUTATIONS_4:
                faces: list[Gluing | None] = []

                for level in range(3):
                    swapped = list(permutation)
                    swapped[level], swapped[level + 1] = (
                        swapped[level + 1],
                        swapped[level],
                    )
                    a, b, c, d = swapped
                    faces.append(
                        (
                            tetrahedron * 24 + index_of[a, b, c, d],
                            IDENTITY,
                        ),
                    )

                gluing = self.gluings[tetrahedron][permutation[3]]

                if gluing is None:
                    faces.append(None)
                else:
                    target, outer = gluing
                    a, b, c, d = (outer[v] for v in permutation)
                    faces.append(
                        (target * 24 + index_of[a, b, c, d], IDENTITY),
                    )

                gluings.append(tuple(faces))

                if labels is not None:
                    assert self.labels is not None

                    vertices = self.labels[tetrahedron]
                    labels.append(
                        tuple(
                            frozenset(
                                vertices[v] for v in permutation[:level + 1]
                            )
                            for level in range(4)
                        ),
                    )

        _logger.debug(
            'Subdivided %d tetrahedra into %d',
            self.size,
            len(gluings),
        )

        return Triangulation(
            tuple(gluings),
            None if labels is None else tuple(labels),
        )

    def restrict(self, kept: Iterable[int]) -> Triangulation:
        """Return the subcomplex of the kept tetrahedra.

        Faces glued to dropped tetrahedra become boundary faces.

        :param kept: The indices of the kept tetrahedra.
        :return: The restricted triangulation.
        """
        order = sorted(set(kept))
        new_index = {tetrahedron: i for i, tetrahedron in enumerate(order)}
        gluings = []

        for tetrahedron in order:
            faces: list[Gluing | None] = []

            for gluing in self.gluings[tetrahedron]:
                if gluing is None or gluing[0] not in new_index:
                    faces.append(None)
                else:
                    faces.append((new_index[gluing[0]], gluing[1]))

            gluings.append(tuple(faces))

        labels = None

        if self.labels is not None:
            labels = tuple(self.labels[tetrahedron] for tetrahedron in order)

        return Triangulation(tuple(gluings), labels)

    def dumps(self) -> str:
        """Serialize the triangulation in the line-based format.

        The first line is the tetrahedron count. Every following line
        lists the four face gluings of one tetrahedron, each either
        ``-`` or ``target:face:permutation`` where the permutation of
        the three face vertices is ranked lexicographically.

        >>> print(Triangulation(((None, None, None, None),)).dumps())
        1
        - - - -
        <BLANKLINE>

        :return: The serialization.
        """
        lines = [str(self.size)]

        for faces in self.gluings:
            entries = []

            for face, gluing in enumerate(faces):
                if gluing is None:
                    entries.append('-')
                else:
                    target, permutation = gluing
                    target_face = permutation[face]
                    targets = face_vertices(target_face)
                    ranks = tuple(
                        targets.index(permutation[v])
                        for v in face_vertices(face)
                    )
                    entries.append(
                        (
                            f'{target}:{target_face}:'
                            f'{PERMUTATIONS_3.index(ranks)}'
                        ),
                    )

            lines.append(' '.join(entries))

        return '\n'.join(lines) + '\n'

    @classmethod
    def loads(cls, text: str) -> Triangulation:
        """Parse the line-based format.

        :param text: The serialization.
        :return: The triangulation.
        :raises ValueError: If the text is malformed.
        """
        lines = text.strip().splitlines()

        try:
            size = int(lines[0])
        except (IndexError, ValueError) as error:
            raise ValueError('The tetrahedron count is missing.') from error

        if len(lines) != size + 1:
            raise ValueError(
                f'Expected {size} tetrahedron lines, not {len(lines) - 1}.',
            )

        gluings = []

        for line in lines[1:]:
            entries = line.split()

            if len(entries) != 4:
                raise ValueError(f'The line {line!r} does not have 4 faces.')

            faces: list[Gluing | None] = []

            for face, entry in enumerate(entries):
                if entry == '-':
                    faces.append(None)

                    continue

                try:
                    target, target_face, rank = map(int, entry.split(':'))
                    ranks = PERMUTATIONS_3[rank]
                except (ValueError, IndexError) as error:
                    raise ValueError(
                        f'The gluing {entry!r} is malformed.',
                    ) from error

                if not 0 <= target_face < 4:
                    raise ValueError(
                        f'The face {target_face} does not exist.',
                    )

                images = [0] * 4
                images[face] = target_face
                targets = face_vertices(target_face)

                for v, r in zip(face_vertices(face), ranks):
                    images[v] = targets[r]

                a, b, c, d = images
                faces.append((target, (a, b, c, d)))

            gluings.append(tuple(faces))

        return cls(tuple(gluings))

    def hash(self) -> str:
        """Return the canonical SHA-256 digest of the serialization.

        :return: The hexadecimal digest.
        """
        return sha256(self.dumps().encode()).hexdigest()
