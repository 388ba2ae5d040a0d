""":mod:`hakenkit.cone` implements the normal surface cone.

A normal coordinate vector lists seven integers per tetrahedron: the
numbers of triangles cutting off vertices 0-3, then the numbers of
quadrilaterals separating 01|23, 02|13 and 03|12. The cone is cut out
of the nonnegative orthant by one matching equation per interior face
and corner.

>>> cone = HakenCone.from_rows([[1, 1, -1, -1]])
>>> hilbert_basis(cone)
[(0, 1, 0, 1), (0, 1, 1, 0), (1, 0, 0, 1), (1, 0, 1, 0)]
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property, partial
from itertools import chain, islice, product
from logging import getLogger
from math import gcd, prod
from typing import TypeAlias

from sympy import Matrix

from hakenkit.triangulation import Triangulation
from hakenkit.utilities import (
    Budget,
    BudgetExceededError,
    get_box_limit,
    get_workers,
)

NormalVector: TypeAlias = tuple[int, ...]
"""A normal coordinate vector."""
Row: TypeAlias = tuple[tuple[int, int], ...]
"""A sparse matrix row, as (column, coefficient) pairs."""

TRIANGLE_COUNT: int = 4
QUADRILATERAL_COUNT: int = 3
DISK_TYPE_COUNT: int = TRIANGLE_COUNT + QUADRILATERAL_COUNT
QUADRILATERAL_PAIRS: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = (
    ((0, 1), (2, 3)),
    ((0, 2), (1, 3)),
    ((0, 3), (1, 2)),
)
"""The vertex pairs separated by each quadrilateral type."""
PAIR_CHUNK_SIZE: int = 1024
"""The number of ray pairs tested per task."""

_logger = getLogger(__name__)


def quadrilateral_type(a: int, b: int) -> int:
    """Return the quadrilateral type that pairs two vertices.

    >>> quadrilateral_type(3, 0), quadrilateral_type(1, 3)
    (6, 5)

    :param a: The first vertex.
    :param b: The second vertex.
    :return: The disk type index 4-6.
    """
    for index, pairs in enumerate(QUADRILATERAL_PAIRS):
        if (min(a, b), max(a, b)) in pairs:
            return TRIANGLE_COUNT + index

    raise ValueError(f'The vertices {a} and {b} are not distinct.')


@dataclass(frozen=True)
class HakenCone:
    """The class for normal surface cones.

    Generic cones with ``tetrahedra`` equal to ``0`` carry no
    quadrilateral conditions.
    """

    width: int
    """The number of coordinates."""
    rows: tuple[Row, ...]
    """The sparse matching rows."""
    tetrahedra: int = 0
    """The number of tetrahedra."""

    def __post_init__(self) -> None:
        if self.width < 0:
            raise ValueError(f'The width {self.width} is negative.')

        if self.tetrahedra and self.width != DISK_TYPE_COUNT * self.tetrahedra:
            raise ValueError(
                (
                    f'The width {self.width} does not match'
                    f' {self.tetrahedra} tetrahedra.'
                ),
            )

        for row in self.rows:
            for column, _ in row:
                if not 0 <= column < self.width:
                    raise ValueError(f'The column {column} is out of range.')

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> HakenCone:
        """Create a generic cone from dense rows.

        :param rows: The dense rows, all of the same length.
        :return: The cone.
        """
        rows = [tuple(row) for row in rows]
        widths = set(map(len, rows))

        if len(widths) != 1:
            raise ValueError('The rows do not have a common width.')

        width, = widths

        return cls(
            width,
            tuple(
                tuple((j, value) for j, value in enumerate(row) if value)
                for row in rows
            ),
        )

    def dense_rows(self) -> list[list[int]]:
        """Return the rows as dense lists.

        :return: The dense rows.
        """
        rows = []

        for row in self.rows:
            dense = [0] * self.width

            for column, value in row:
                dense[column] = value

            rows.append(dense)

        return rows

    @cached_property
    def rank(self) -> int:
        """Return the rank of the matching matrix.

        :return: The rank.
        """
        if not self.rows:
            return 0

        return Matrix(self.dense_rows()).rank()

    @property
    def dimension(self) -> int:
        """Return the dimension of the cone's linear span.

        :return: The width minus the rank.
        """
        return self.width - self.rank

    def residual(self, vector: Sequence[int]) -> tuple[int, ...]:
        """Return the matching rows applied to a vector.

        :param vector: The vector.
        :return: The row values.
        """
        return tuple(_dot(row, vector) for row in self.rows)

    def verify_length(self, vector: Sequence[int]) -> None:
        """Verify the length of a vector.

        :param vector: The vector.
        :return: ``None``.
        :raises ValueError: If the length does not match the width.
        """
        if len(vector) != self.width:
            raise ValueError(
                (
                    f'The vector has {len(vector)} coordinates instead of'
                    f' {self.width}.'
                ),
            )

    def dumps(self, vectors: Iterable[Sequence[int]] = ()) -> str:
        """Dump the matrix and optionally vectors, one per line.

        :param vectors: The vectors to list after the matrix.
        :return: The dump.
        """
        lines = [' '.join(map(str, row)) for row in self.dense_rows()]
        lines.append('')
        lines.extend(' '.join(map(str, vector)) for vector in vectors)

        return '\n'.join(lines) + '\n'


def _dot(row: Row, vector: Sequence[int]) -> int:
    return sum(value * vector[column] for column, value in row)


def matching_equations(triangulation: Triangulation) -> HakenCone:
    """Build the cone of a triangulation.

    Every interior face yields one row per corner, equating the normal
    arcs at that corner contributed by the tetrahedra on either side.
    Rows that cancel under self-gluings keep their reduced support;
    rows that vanish are dropped.

    :param triangulation: The triangulation.
    :return: The cone.
    """
    rows = []

    for tetrahedron, face, gluing in triangulation.faces():
        if gluing is None:
            continue

        target, permutation = gluing
        target_face = permutation[face]

        if (target, target_face) < (tetrahedron, face):
            continue

        for corner in range(4):
            if corner == face:
                continue

            image = permutation[corner]
            coefficients = dict[int, int]()

            for column, value in (
                    (DISK_TYPE_COUNT * tetrahedron + corner, 1),
                    (
                        DISK_TYPE_COUNT * tetrahedron
                        + quadrilateral_type(corner, face),
                        1,
                    ),
                    (DISK_TYPE_COUNT * target + image, -1),
                    (
                        DISK_TYPE_COUNT * target
                        + quadrilateral_type(image, target_face),
                        -1,
                    ),
            ):
                coefficients[column] = coefficients.get(column, 0) + value

            row = tuple(
                (column, value)
                for column, value in sorted(coefficients.items())
                if value
            )

            if row:
                rows.append(row)

    _logger.debug(
        'Built %d matching rows for %d tetrahedra',
        len(rows),
        triangulation.size,
    )

    return HakenCone(
        DISK_TYPE_COUNT * triangulation.size,
        tuple(rows),
        triangulation.size,
    )


def satisfies_quadrilateral_conditions(
        cone: HakenCone,
        vector: Sequence[int],
) -> bool:
    """Return whether every tetrahedron has at most one quadrilateral
    type.

    :param cone: The cone.
    :param vector: The vector.
    :return: ``True`` if the conditions hold, otherwise ``False``.
    """
    for tetrahedron in range(cone.tetrahedra):
        offset = DISK_TYPE_COUNT * tetrahedron + TRIANGLE_COUNT
        quadrilaterals = vector[offset:offset + QUADRILATERAL_COUNT]

        if sum(1 for count in quadrilaterals if count) > 1:
            return False

    return True


def is_admissible(cone: HakenCone, vector: Sequence[int]) -> bool:
    """Return whether a vector is admissible.

    >>> cone = HakenCone.from_rows([[1, -1]])
    >>> is_admissible(cone, (2, 2)), is_admissible(cone, (1, 0))
    (True, False)

    :param cone: The cone.
    :param vector: The vector.
    :return: ``True`` if the vector is nonnegative, satisfies the
             matching rows and the quadrilateral conditions.
    :raises ValueError: If the length does not match.
    """
    cone.verify_length(vector)

    return (
        all(value >= 0 for value in vector)
        and not any(cone.residual(vector))
        and satisfies_quadrilateral_conditions(cone, vector)
    )


def normalize(vector: Iterable[int]) -> NormalVector:
    """Divide a vector by the gcd of its entries.

    :param vector: The vector.
    :return: The primitive vector.
    """
    values = tuple(vector)
    divisor = gcd(*values)

    if divisor in (0, 1):
        return values

    return tuple(value // divisor for value in values)


def _support(vector: Sequence[int]) -> int:
    mask = 0

    for i, value in enumerate(vector):
        if value:
            mask |= 1 << i

    return mask


def _quadrilateral_masks(cone: HakenCone) -> list[int]:
    return [
        ((1 << QUADRILATERAL_COUNT) - 1)
        << (DISK_TYPE_COUNT * tetrahedron + TRIANGLE_COUNT)
        for tetrahedron in range(cone.tetrahedra)
    ]


def _adjacent_pairs(
        pairs: Sequence[tuple[int, int]],
        supports: Sequence[int],
        masks: Sequence[int],
) -> list[bool]:
    flags = []

    for p, n in pairs:
        union = supports[p] | supports[n]
        flags.append(
            all((union & mask).bit_count() <= 1 for mask in masks)
            and not any(
                r != p and r != n and not support & ~union
                for r, support in enumerate(supports)
            ),
        )

    return flags


def vertex_solutions(
        cone: HakenCone,
        budget: Budget | None = None,
        workers: int | None = None,
        admissible: bool = False,
) -> list[NormalVector]:
    """Enumerate the minimal integer points of all extreme rays.

    The double description method intersects the nonnegative orthant
    with one matching hyperplane at a time. Two rays on opposite sides
    are combined only if no third ray has its support inside the union
    of theirs. If ``admissible`` is set, pairs whose union has two
    quadrilateral types in a tetrahedron are skipped as well, which
    leaves exactly the admissible extreme rays.

    Pairs are tested in chunks of :data:`PAIR_CHUNK_SIZE`, and the
    budget is charged before every round of chunks.

    >>> vertex_solutions(HakenCone.from_rows([[1, -1]]))
    [(1, 1)]

    :param cone: The cone.
    :param budget: The optional budget charged per ray pair.
    :param workers: The number of threads testing adjacency.
    :param admissible: Whether to apply the quadrilateral conditions.
    :return: The primitive extreme ray vectors, sorted.
    :raises BudgetExceededError: If the budget is exhausted.
    """
    if budget is None:
        budget = Budget()

    if workers is None:
        workers = get_workers()

    workers = max(workers, 1)
    masks = _quadrilateral_masks(cone) if admissible else []
    rays = [
        tuple(int(i == j) for j in range(cone.width))
        for i in range(cone.width)
    ]

    with ThreadPoolExecutor(max_workers=workers) as executor:
        for step, row in enumerate(cone.rows):
            budget.spend()

            values = [_dot(row, ray) for ray in rays]
            zero = [ray for ray, value in zip(rays, values) if value == 0]
            positive = [i for i, value in enumerate(values) if value > 0]
            negative = [i for i, value in enumerate(values) if value < 0]
            supports = [_support(ray) for ray in rays]
            combined = dict.fromkeys(zero)
            pairs = product(positive, negative)

            while wave := list(islice(pairs, PAIR_CHUNK_SIZE * workers)):
                budget.spend(len(wave))

                chunks = [
                    wave[i:i + PAIR_CHUNK_SIZE]
                    for i in range(0, len(wave), PAIR_CHUNK_SIZE)
                ]
                flags = chain.from_iterable(
                    executor.map(
                        partial(
                            _adjacent_pairs,
                            supports=supports,
                            masks=masks,
                        ),
                        chunks,
                    ),
                )

                for (p, n), flag in zip(wave, flags):
                    if flag:
                        combined[
                            normalize(
                                values[p] * b - values[n] * a
                                for a, b in zip(rays[p], rays[n])
                            )
                        ] = None

            rays = list(combined)

            _logger.debug(
                'Row %d of %d leaves %d rays',
                step + 1,
                len(cone.rows),
                len(rays),
            )

    rays.sort()

    _logger.info('Enumerated %d extreme rays', len(rays))

    return rays


def box_size(bounds: Sequence[int]) -> int:
    """Return the number of lattice points in a box.

    :param bounds: The inclusive upper bounds.
    :return: The lattice point count.
    """
    return prod(bound + 1 for bound in bounds)


def verify_box(bounds: Sequence[int], limit: int | None = None) -> None:
    """Verify that a box is small enough to search.

    :param bounds: The inclusive upper bounds.
    :param limit: The maximum lattice point count.
    :return: ``None``.
    :raises BudgetExceededError: If the box is too large.
    """
    if limit is None:
        limit = get_box_limit()

    size = box_size(bounds)

    if size > limit:
        raise BudgetExceededError(
            f'The box has {size} lattice points, more than {limit}.',
        )


def haken_bounds(
        cone: HakenCone,
        rays: Iterable[Sequence[int]] | None = None,
) -> NormalVector:
    """Return the coordinate-wise sum of the extreme rays.

    Every fundamental solution lies in the box below this bound.

    :param cone: The cone.
    :param rays: The extreme rays, enumerated if omitted.
    :return: The bounds.
    """
    if rays is None:
        rays = vertex_solutions(cone)

    bounds = [0] * cone.width

    for ray in rays:
        for i, value in enumerate(ray):
            bounds[i] += value

    return tuple(bounds)


def _bounded_vectors(
        bounds: Sequence[int],
        total: int,
) -> Iterator[NormalVector]:
    if not bounds:
        if total == 0:
            yield ()

        return

    remaining = sum(bounds[1:])

    for head in range(max(0, total - remaining), min(bounds[0], total) + 1):
        for tail in _bounded_vectors(bounds[1:], total - head):
            yield (head, *tail)


def haken_box(
        cone: HakenCone,
        bounds: Sequence[int] | None = None,
        limit: int | None = None,
) -> Iterator[NormalVector]:
    """Iterate over the box of candidate fundamental solutions in
    lexicographic order.

    :param cone: The cone.
    :param bounds: The inclusive bounds, the ray sum if omitted.
    :param limit: The maximum lattice point count.
    :return: The vectors.
    :raises BudgetExceededError: If the box is too large.
    """
    if bounds is None:
        bounds = haken_bounds(cone)

    verify_box(bounds, limit)

    for vector in product(*(range(bound + 1) for bound in bounds)):
        yield vector


def hilbert_basis(
        cone: HakenCone,
        limit: int | None = None,
        budget: Budget | None = None,
) -> list[NormalVector]:
    """Return the minimal Hilbert basis by a guarded box search.

    Candidates are visited in increasing coordinate sum, so a cone
    point is kept exactly when no kept element lies below it.

    :param cone: The cone.
    :param limit: The maximum lattice point count.
    :param budget: The optional budget.
    :return: The basis, sorted.
    :raises BudgetExceededError: If the box or budget is exhausted.
    """
    if budget is None:
        budget = Budget()

    bounds = haken_bounds(cone, vertex_solutions(cone, budget))

    verify_box(bounds, limit)

    basis = list[NormalVector]()

    for total in range(1, sum(bounds) + 1):
        for vector in _bounded_vectors(bounds, total):
            if any(cone.residual(vector)):
                continue

            if not any(
                    all(h <= x for h, x in zip(element, vector))
                    for element in basis
            ):
                basis.append(vector)

        budget.spend()

    basis.sort()

    _logger.info('Found %d Hilbert basis elements', len(basis))

    return basis


def is_fundamental(
        cone: HakenCone,
        vector: Sequence[int],
        limit: int | None = None,
) -> bool:
    """Return whether a cone point is not a sum of two nonzero ones.

    >>> cone = HakenCone.from_rows([[1, -1]])
    >>> is_fundamental(cone, (1, 1)), is_fundamental(cone, (2, 2))
    (True, False)

    :param cone: The cone.
    :param vector: The cone point.
    :param limit: The maximum lattice point count.
    :return: ``True`` if fundamental, otherwise ``False``.
    :raises BudgetExceededError: If the box is too large.
    """
    cone.verify_length(vector)
    verify_box(vector, limit)

    if not any(vector):
        return False

    support = [i for i, value in enumerate(vector) if value]

    for values in product(*(range(vector[i] + 1) for i in support)):
        if not any(values) or all(
                value == vector[i] for value, i in zip(values, support)
        ):
            continue

        part = [0] * cone.width

        for i, value in zip(support, values):
            part[i] = value

        if not any(cone.residual(part)):
            return False

    return True


def vertex_bound(cone: HakenCone) -> int:
    """Return the coordinate bound of minimal vertex solutions.

    :param cone: The cone.
    :return: ``2 ** (7t - 1)``.
    """
    return 2 ** (cone.width - 1)


def hilbert_bound(cone: HakenCone) -> int:
    """Return the coordinate bound of fundamental solutions.

    :param cone: The cone.
    :return: ``t * 2 ** (7t + 2)``.
    """
    return max(cone.tetrahedra, 1) * 2 ** (cone.width + 2)
