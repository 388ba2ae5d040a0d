""":mod:`hakenkit.complement` builds triangulated link complements.

The augmented plane graph of a diagram is thickened to a slab of two
layers. The link runs through the middle layer, except that the over
strand at a crossing climbs to the top copy of the crossing vertex and
the under strand drops to the bottom copy. The slab is closed up to the
3-sphere and a derived neighbourhood of the link is removed.

In ``'compact'`` mode every face walk of the augmented graph is coned to
a centre, or surrounded by a ring of new vertices when a cone would not
be simplicial, so that the link is a full subcomplex. The slab is capped
by two poles and only the simplices meeting the link are subdivided. In
``'paper'`` mode the faces are triangulated by the chords of the planar
grid drawing triangulation, the slab boundary is coned to a point at
infinity, and two full subdivisions are made.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Hashable, Iterable
from dataclasses import dataclass, field, replace
from itertools import combinations, permutations
from logging import getLogger
from typing import Any, TypeAlias
import json

from networkx.algorithms.planar_drawing import triangulate_embedding
from networkx.utils import UnionFind
import networkx as nx

from hakenkit.diagram import (
    crossing_measure,
    end_node,
    LinkDiagram,
    Node,
)
from hakenkit.triangulation import (
    BoundaryComponent,
    face_vertices,
    label_key,
    LOCAL_EDGES,
    Triangulation,
)
from hakenkit.utilities import CONSTRUCTIONS, serialize

LocalEdge: TypeAlias = tuple[int, int]
"""A tetrahedron edge, as (tetrahedron, local edge index)."""
LabelEdge: TypeAlias = frozenset[Hashable]
"""An edge of a labelled complex, as the set of its end labels."""
Triangle: TypeAlias = tuple[Node, Node, Node]
"""A plane triangle."""

COMPACT_CONSTANT: int = 2016
"""The compact-mode bound ``t <= COMPACT_CONSTANT * (n + 1)``.

Every sphere triangle carries eight coarse tetrahedra. Each of them
keeps at most ten pieces outside the link, or one if it misses the
link. A walk of length ``d`` costs at most ``80 * d`` tetrahedra when
coned and ``168 * d`` when ringed. The walks of ``c`` crossings and
``l`` loops have ``12 * c + 6 * l`` sides in total and every annulus
adds 32 tetrahedra.
"""
PAPER_CONSTANT: int = 253440
"""The paper-mode bound ``t <= PAPER_CONSTANT * (n + 1)``."""

SOUTH = 'S'
NORTH = 'N'
INFINITY = 'oo'

_logger = getLogger(__name__)


@dataclass(frozen=True)
class MarkedComplement:
    """The class for link complements with marked curves.

    Meridians are listed in the order of the boundary components they
    lie on. Every arc is an interior edge path between the components
    named by the corresponding entry of ``arc_ends``.
    """

    triangulation: Triangulation
    """The complement triangulation."""
    knot_edges: tuple[tuple[LabelEdge, ...], ...]
    """The link edges of the coarse complex, per link component."""
    construction: str = 'compact'
    """The construction mode."""
    meridians: tuple[tuple[LocalEdge, ...], ...] = ()
    """The meridian edge loops."""
    arcs: tuple[tuple[LocalEdge, ...], ...] = ()
    """The connecting arc edge paths."""
    arc_ends: tuple[tuple[int, int], ...] = ()
    """The boundary components joined by every arc."""
    coarse: Triangulation | None = field(
        default=None,
        compare=False,
        repr=False,
    )
    """The labelled complex before the last subdivision."""

    @property
    def boundary_components(self) -> tuple[BoundaryComponent, ...]:
        """Return the boundary components.

        :return: The boundary components.
        """
        return self.triangulation.boundary_components

    def markings(self) -> dict[str, Any]:
        """Return the markings as JSON-ready data.

        :return: The markings.
        """
        return {
            'meridians': serialize(self.meridians),
            'arcs': serialize(self.arcs),
            'arc_ends': serialize(self.arc_ends),
        }

    def dump_markings(self) -> str:
        """Serialize the markings.

        :return: The JSON text.
        """
        return json.dumps(self.markings(), sort_keys=True)


def grid_embed(diagram: LinkDiagram) -> dict[Node, tuple[int, int]]:
    """Draw the augmented plane graph on an integer grid.

    Edges are straight segments and no two of them cross. Every
    coordinate is at most ``10 * max(n, 1) - 1`` for the crossing
    measure ``n``.

    >>> from hakenkit.diagram import parse_diagram
    >>> sorted(grid_embed(parse_diagram('L[0]')).values())
    [(0, 0), (1, 1), (2, 0)]

    :param diagram: The diagram.
    :return: The positions of the nodes.
    """
    positions = nx.combinatorial_embedding_to_pos(
        diagram.planar_embedding,
        fully_triangulate=False,
    )
    bound = 10 * max(crossing_measure(diagram), 1) - 1

    assert all(
        0 <= x <= bound and 0 <= y <= bound for x, y in positions.values()
    )

    return {node: (x, y) for node, (x, y) in sorted(positions.items())}


def node_tier(diagram: LinkDiagram, node: Node) -> int:
    """Return the tier of a plane node in the global vertex order.

    Special vertices next to over ends come first, crossings second and
    everything else last, so that the over strand can climb from a
    special vertex to the top copy of its crossing and the under strand
    can drop from a crossing's bottom copy to a special vertex.

    :param diagram: The diagram.
    :param node: The plane node.
    :return: The tier.
    """
    match node:
        case ('c', _):
            return 1
        case ('e', label, side):
            i, k = diagram.edges[label][side]

            return 0 if k % 2 == 1 else 2
        case _:
            return 2


def link_edges(
        diagram: LinkDiagram,
) -> tuple[tuple[tuple[Hashable, Hashable], ...], ...]:
    """Return the link edges in the slab, grouped by component.

    Slab vertices are (plane node, layer) pairs with layers 0-2.

    :param diagram: The diagram.
    :return: The link edges of every component.
    """
    edges = []

    for label in diagram.edges:
        edges.append(((('e', label, 0), 1), (('e', label, 1), 1)))

    for i in range(len(diagram.crossings)):
        crossing_node = 'c', i

        for k in range(4):
            special = end_node(diagram, (i, k)), 1

            if k % 2 == 1:
                edges.append((special, (crossing_node, 2)))
            else:
                edges.append(((crossing_node, 0), special))

    for m in range(diagram.loops):
        for j in range(3):
            edges.append(((('l', m, j), 1), (('l', m, (j + 1) % 3), 1)))

    return _group_edges(edges)


def _group_edges(
        edges: Iterable[tuple[Hashable, Hashable]],
) -> tuple[tuple[tuple[Hashable, Hashable], ...], ...]:
    edges = list(edges)
    union_find = UnionFind()

    for u, v in edges:
        union_find.union(u, v)

    groups = defaultdict[Hashable, list[tuple[Hashable, Hashable]]](list)

    for u, v in edges:
        groups[union_find[u]].append((u, v))

    def edge_key(edge: tuple[Hashable, Hashable]) -> Any:
        return tuple(sorted(map(label_key, edge)))

    return tuple(
        sorted(
            (tuple(sorted(group, key=edge_key)) for group in groups.values()),
            key=lambda group: edge_key(group[0]),
        ),
    )


def _cone_triangles(walk: tuple[Node, ...], index: int) -> list[Triangle]:
    centre = 'z', index

    return [
        (centre, walk[i], walk[(i + 1) % len(walk)])
        for i in range(len(walk))
    ]


def _ring_triangles(
        walk: tuple[Node, ...],
        index: int,
) -> tuple[list[Triangle], list[Triangle]]:
    size = len(walk)
    ring = [('r', index, i) for i in range(size)]
    centre = 'z', index
    triangles = list[Triangle]()
    centres = list[Triangle]()

    for i in range(size):
        w, w_next = walk[i], walk[(i + 1) % size]
        r, r_next = ring[i], ring[(i + 1) % size]

        triangles.append((w, w_next, r))
        triangles.append((w_next, r, r_next))
        centres.append((centre, r, r_next))

    return triangles + centres, centres


def _piece_of(diagram: LinkDiagram) -> dict[Node, int]:
    piece_of = dict[Node, int]()

    for index, piece in enumerate(diagram.pieces):
        for i in piece:
            piece_of['c', i] = index

    for label, (first, second) in diagram.edges.items():
        piece_of['e', label, 0] = piece_of['c', first[0]]
        piece_of['e', label, 1] = piece_of['c', second[0]]

    for m in range(diagram.loops):
        for j in range(3):
            piece_of['l', m, j] = len(diagram.pieces) + m

    return piece_of


def sphere_triangles(diagram: LinkDiagram) -> list[Triangle]:
    """Triangulate a 2-sphere containing the augmented plane graph as a
    full subcomplex.

    A face walk without repeated nodes is coned to a centre. Any other
    walk is surrounded by a ring of new vertices coned to a centre. The
    spheres of separate diagram pieces are joined by annuli replacing a
    centre triangle of the first two walks of each, which are ringed
    for that purpose.

    :param diagram: The diagram.
    :return: The triangles.
    """
    piece_of = _piece_of(diagram)
    walks_by_piece = defaultdict[int, list[tuple[Node, ...]]](list)

    for face in diagram.faces:
        walks_by_piece[piece_of[face[0]]].append(face)

    pieces = sorted(walks_by_piece)
    triangles = list[Triangle]()
    centres = dict[tuple[int, int], list[Triangle]]()
    index = 0

    for piece in pieces:
        for position, walk in enumerate(walks_by_piece[piece]):
            if (
                    len(pieces) > 1 and position < 2
                    or len(set(walk)) < len(walk)
            ):
                ring, centres[piece, position] = _ring_triangles(walk, index)
                triangles.extend(ring)
            else:
                triangles.extend(_cone_triangles(walk, index))

            index += 1

    removed = set[Triangle]()

    for previous, current in zip(pieces, pieces[1:]):
        a0, a1, a2 = centres[previous, 1][0]
        b0, b1, b2 = centres[current, 0][0]
        removed.update(((a0, a1, a2), (b0, b1, b2)))
        triangles.extend(
            (
                (a0, a1, b0),
                (a1, b0, b1),
                (a1, a2, b1),
                (a2, b1, b2),
                (a2, a0, b2),
                (a0, b2, b0),
            ),
        )

    return [triangle for triangle in triangles if triangle not in removed]


def slab_simplices(
        diagram: LinkDiagram,
        triangles: Iterable[tuple[Node, Node, Node]],
) -> list[tuple[Hashable, ...]]:
    """Thicken triangles to a slab of two prism layers.

    Every prism is split into three tetrahedra along the global vertex
    order, so neighbouring prisms agree on their common side.

    :param diagram: The diagram.
    :param triangles: The plane triangles.
    :return: The tetrahedra.
    """
    simplices = list[tuple[Hashable, ...]]()

    for triangle in triangles:
        a, b, c = _ordered(diagram, triangle)

        for layer in range(2):
            above = layer + 1
            simplices.extend(
                (
                    ((a, layer), (b, layer), (c, layer), (c, above)),
                    ((a, layer), (b, layer), (b, above), (c, above)),
                    ((a, layer), (a, above), (b, above), (c, above)),
                ),
            )

    return simplices


def _ordered(
        diagram: LinkDiagram,
        nodes: Iterable[Node],
) -> list[Node]:
    return sorted(
        nodes,
        key=lambda node: (node_tier(diagram, node), label_key(node)),
    )


def _drill(
        fine: Triangulation,
        link_vertices: Iterable[Hashable],
) -> Triangulation:
    assert fine.labels is not None

    drilled = {frozenset((vertex,)) for vertex in link_vertices}
    kept = [
        tetrahedron
        for tetrahedron, labels in enumerate(fine.labels)
        if labels[0] not in drilled
    ]

    return fine.restrict(kept)


def derived_exterior(
        simplices: Iterable[tuple[Hashable, ...]],
        link_vertices: Iterable[Hashable],
) -> list[tuple[frozenset[Hashable], ...]]:
    """Subdivide the simplices meeting a full subcomplex and keep the
    pieces outside its derived neighbourhood.

    Only simplices meeting the subcomplex get barycentres. As in a
    barycentric subdivision, a vertex is labelled by the singleton of
    its label and a barycentre by the vertex set of its simplex. A
    tetrahedron meeting 1, 2, 3 or 4 subcomplex vertices keeps 10, 10,
    6 or 0 pieces.

    >>> len(derived_exterior([(0, 1, 2, 3)], {0}))
    10
    >>> len(derived_exterior([(0, 1, 2, 3)], {0, 1, 2}))
    6
    >>> derived_exterior([(0, 1, 2, 3)], {4}) == [
    ...     tuple(frozenset((v,)) for v in range(4)),
    ... ]
    True

    :param simplices: The tetrahedra of the complex.
    :param link_vertices: The vertices of the full subcomplex.
    :return: The kept pieces.
    """
    link_vertices = set(link_vertices)
    pieces = list[tuple[frozenset[Hashable], ...]]()

    for simplex in simplices:
        inside = [v for v in simplex if v in link_vertices]
        outside = [v for v in simplex if v not in link_vertices]

        if not inside:
            pieces.append(tuple(frozenset((v,)) for v in simplex))

            continue

        for vertex in inside:
            for size in range(1, len(outside) + 1):
                for face in combinations(outside, size):
                    base = frozenset(face) | {vertex}
                    rest = [v for v in simplex if v not in base]

                    for order in permutations(rest):
                        chain = [base]

                        for v in order:
                            chain.append(chain[-1] | {v})

                        pieces.append(
                            (*(frozenset((v,)) for v in face), *chain),
                        )

    return pieces


def _compact_complement(diagram: LinkDiagram) -> MarkedComplement:
    triangles = sphere_triangles(diagram)
    simplices = slab_simplices(diagram, triangles)

    for triangle in triangles:
        a, b, c = _ordered(diagram, triangle)
        simplices.append((SOUTH, (a, 0), (b, 0), (c, 0)))
        simplices.append((NORTH, (a, 2), (b, 2), (c, 2)))

    coarse = Triangulation.from_simplices(simplices)
    knot_edges = link_edges(diagram)
    link_vertices = {
        vertex
        for component in knot_edges
        for edge in component
        for vertex in edge
    }

    return MarkedComplement(
        Triangulation.from_simplices(
            derived_exterior(simplices, link_vertices),
        ),
        tuple(tuple(map(frozenset, component)) for component in knot_edges),
        'compact',
        coarse=coarse,
    )


def disk_triangles(
        diagram: LinkDiagram,
) -> tuple[list[Triangle], list[Node]]:
    """Triangulate a disk containing the augmented plane graph.

    The chords are those of the planar triangulation behind the grid
    drawing; the largest face is kept as the outer face.

    :param diagram: The diagram.
    :return: The triangles and the outer boundary walk.
    """
    embedding, outer_face = triangulate_embedding(
        diagram.planar_embedding,
        fully_triangulate=False,
    )
    outer = _directed_canonical(outer_face)
    marked = set[tuple[Node, Node]]()
    triangles = []

    for v, w in sorted(embedding.edges()):
        if (v, w) in marked:
            continue

        face = embedding.traverse_face(v, w, marked)

        if _directed_canonical(face) == outer:
            continue

        assert len(face) == 3

        a, b, c = face
        triangles.append((a, b, c))

    return triangles, list(outer_face)


def _directed_canonical(cycle: list[Node]) -> tuple[Node, ...]:
    return min(
        tuple(cycle[i:] + cycle[:i]) for i in range(len(cycle))
    )


def _paper_complement(diagram: LinkDiagram) -> MarkedComplement:
    grid_embed(diagram)

    triangles, outer_face = disk_triangles(diagram)
    simplices = slab_simplices(diagram, triangles)
    caps = list[tuple[Hashable, Hashable, Hashable]]()

    for triangle in triangles:
        a, b, c = _ordered(diagram, triangle)
        caps.append(((a, 0), (b, 0), (c, 0)))
        caps.append(((a, 2), (b, 2), (c, 2)))

    for u, v in zip(outer_face, outer_face[1:] + outer_face[:1]):
        a, b = _ordered(diagram, (u, v))

        for layer in range(2):
            caps.append(((a, layer), (b, layer), (b, layer + 1)))
            caps.append(((a, layer), (a, layer + 1), (b, layer + 1)))

    simplices.extend((INFINITY, *cap) for cap in caps)

    knot_edges = link_edges(diagram)
    first = Triangulation.from_simplices(simplices).barycentric_subdivide()
    derived_edges = []

    for component in knot_edges:
        for u, v in component:
            middle = frozenset((u, v))
            derived_edges.append((frozenset((u,)), middle))
            derived_edges.append((frozenset((v,)), middle))

    derived_components = _group_edges(derived_edges)
    link_vertices = {
        vertex
        for component in derived_components
        for edge in component
        for vertex in edge
    }
    fine = first.barycentric_subdivide()

    return MarkedComplement(
        _drill(fine, link_vertices),
        tuple(
            tuple(map(frozenset, component))
            for component in derived_components
        ),
        'paper',
        coarse=first,
    )


def build_complement(
        diagram: LinkDiagram,
        mode: str = 'compact',
) -> MarkedComplement:
    """Build the marked complement of the link of a diagram.

    :param diagram: The diagram.
    :param mode: ``'compact'`` or ``'paper'``.
    :return: The marked complement.
    :raises ValueError: If the mode is unknown.
    """
    match mode:
        case 'compact':
            complement = _compact_complement(diagram)
            constant = COMPACT_CONSTANT
        case 'paper':
            complement = _paper_complement(diagram)
            constant = PAPER_CONSTANT
        case _:
            raise ValueError(
                f'The construction {mode!r} is not one of {CONSTRUCTIONS}.',
            )

    size = complement.triangulation.size

    assert size <= constant * (crossing_measure(diagram) + 1)

    _logger.info(
        'Built a %s complement with %d tetrahedra',
        mode,
        size,
    )

    return mark_meridian_and_arcs(complement)


def label_edge_index(
        triangulation: Triangulation,
) -> dict[LabelEdge, LocalEdge]:
    """Index the edges of a labelled triangulation by their end labels.

    :param triangulation: The labelled triangulation.
    :return: The first (tetrahedron, local edge) of every label pair.
    """
    assert triangulation.labels is not None

    index = dict[LabelEdge, LocalEdge]()

    for tetrahedron, labels in enumerate(triangulation.labels):
        for local, (a, b) in enumerate(LOCAL_EDGES):
            index.setdefault(
                frozenset((labels[a], labels[b])),
                (tetrahedron, local),
            )

    return index


def meridian_cycle(
        coarse: Triangulation,
        edge: LabelEdge,
) -> list[Hashable]:
    """Return the meridian around an edge of a labelled complex.

    The meridian alternates between the barycentres of the triangles and
    the tetrahedra around the edge, so it lies in the frontier of the
    derived neighbourhood of the edge.

    :param coarse: The labelled complex.
    :param edge: The edge.
    :return: The barycentre labels of the cycle.
    """
    assert coarse.labels is not None

    around = defaultdict[frozenset[Hashable], list[frozenset[Hashable]]](list)

    for labels in coarse.labels:
        tetrahedron = frozenset(labels)

        if edge <= tetrahedron:
            for other in tetrahedron - edge:
                triangle = edge | {other}
                around[tetrahedron].append(triangle)
                around[triangle].append(tetrahedron)

    start = min(
        (simplex for simplex in around if len(simplex) == 4),
        key=label_key,
    )
    cycle: list[Hashable] = [start]
    previous: frozenset[Hashable] | None = None
    current = start

    while True:
        options = [
            simplex
            for simplex in sorted(around[current], key=label_key)
            if simplex != previous
        ]
        previous, current = current, options[0]

        if current == start:
            break

        cycle.append(current)

    return cycle


def _boundary_labels(
        complement: MarkedComplement,
) -> list[set[Hashable]]:
    triangulation = complement.triangulation

    assert triangulation.labels is not None

    return [
        {
            triangulation.labels[tetrahedron][v]
            for tetrahedron, face in component.faces
            for v in face_vertices(face)
        }
        for component in triangulation.boundary_components
    ]


def mark_meridian_and_arcs(complement: MarkedComplement) -> MarkedComplement:
    """Mark a meridian on every boundary torus and arcs joining the
    boundary components.

    The arcs run from the first boundary component to every other one
    along edges off the boundary.

    :param complement: The complement with its link provenance.
    :return: The marked complement.
    :raises ValueError: If a boundary component is not a torus.
    """
    triangulation = complement.triangulation
    coarse = complement.coarse

    assert coarse is not None

    for position, component in enumerate(
            triangulation.boundary_components,
    ):
        if component.euler_characteristic != 0:
            raise ValueError(
                (
                    f'The boundary component {position} has Euler'
                    f' characteristic {component.euler_characteristic}'
                    ' and is not a torus.'
                ),
            )

    index = label_edge_index(triangulation)
    meridians = []

    for component in complement.knot_edges:
        cycle = meridian_cycle(coarse, component[0])
        meridians.append(
            tuple(
                index[frozenset((u, v))]
                for u, v in zip(cycle, cycle[1:] + cycle[:1])
            ),
        )

    def component_of(meridian: tuple[LocalEdge, ...]) -> int:
        edge_class = triangulation.edge_class_of[meridian[0]]

        for i, component in enumerate(triangulation.boundary_components):
            if edge_class in component.edge_classes:
                return i

        raise ValueError('The meridian does not lie on the boundary.')

    meridians.sort(key=component_of)

    arcs, arc_ends = connecting_arcs(complement, index)

    _logger.info(
        'Marked %d meridian(s) and %d arc(s)',
        len(meridians),
        len(arcs),
    )

    return replace(
        complement,
        meridians=tuple(meridians),
        arcs=arcs,
        arc_ends=arc_ends,
    )


def connecting_arcs(
        complement: MarkedComplement,
        index: dict[LabelEdge, LocalEdge],
) -> tuple[tuple[tuple[LocalEdge, ...], ...], tuple[tuple[int, int], ...]]:
    """Find shortest interior edge paths from the first boundary
    component to each of the others.

    :param complement: The complement.
    :param index: The label pair index of the complement.
    :return: The arcs and their end components.
    """
    triangulation = complement.triangulation

    assert triangulation.labels is not None

    boundary_edges = set[LabelEdge]()

    for tetrahedron, face in triangulation.boundary_faces:
        labels = triangulation.labels[tetrahedron]

        for a, b in combinations(face_vertices(face), 2):
            boundary_edges.add(frozenset((labels[a], labels[b])))

    boundary_labels = _boundary_labels(complement)
    on_boundary = set[Hashable]().union(*boundary_labels)
    graph = nx.Graph()

    for labels in triangulation.labels:
        for a, b in LOCAL_EDGES:
            if frozenset((labels[a], labels[b])) not in boundary_edges:
                graph.add_edge(labels[a], labels[b])

    arcs = []
    arc_ends = []

    for target in range(1, len(boundary_labels)):
        allowed = (
            (set(graph.nodes) - on_boundary)
            | boundary_labels[0]
            | boundary_labels[target]
        )
        subgraph = nx.Graph(graph.subgraph(allowed))
        source_node = ('source',)
        target_node = ('target',)

        for label in sorted(boundary_labels[0], key=label_key):
            if label in subgraph:
                subgraph.add_edge(source_node, label)

        for label in sorted(boundary_labels[target], key=label_key):
            if label in subgraph:
                subgraph.add_edge(label, target_node)

        path = nx.shortest_path(subgraph, source_node, target_node)[1:-1]

        arcs.append(
            tuple(
                index[frozenset((u, v))] for u, v in zip(path, path[1:])
            ),
        )
        arc_ends.append((0, target))

    return tuple(arcs), tuple(arc_ends)

