""":mod:`hakenkit.diagram` implements link diagrams.

A link diagram is stored as a planar-diagram (PD) code: every crossing
lists the labels of its four incident edges counterclockwise, starting
at the incoming under-strand. Crossing-free closed components, which a
PD code cannot express, are counted separately as loops.

>>> d = parse_diagram('PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]')
>>> len(d.crossings), d.components
(3, 1)
>>> crossing_measure(d)
3
>>> d = parse_diagram('L[0]')
>>> len(d.crossings), d.components
(0, 1)
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass
from functools import cached_property
from itertools import chain
from typing import Any, TypeAlias
import json
import re

from networkx.utils import UnionFind
import networkx as nx

End: TypeAlias = tuple[int, int]
"""A crossing end, as (crossing index, position 0-3)."""
Node: TypeAlias = tuple[Any, ...]
"""A node of the augmented plane graph."""

_CROSSING_PATTERN = re.compile(r'X\s*[\(\[]([^\)\]]*)[\)\]]')
_LOOP_PATTERN = re.compile(r'L\s*\[\s*(\d+)\s*\]')
_PD_PATTERN = re.compile(r'PD\s*\[')


@dataclass(frozen=True)
class Crossing:
    """The class for crossings.

    The ends are listed counterclockwise, starting at the incoming
    under-strand, so positions 0 and 2 carry the under-strand and
    positions 1 and 3 the over-strand.
    """

    ends: tuple[int, int, int, int]
    """The labels of the edges at the four ends."""

    def __post_init__(self) -> None:
        if len(self.ends) != 4:
            raise ValueError(
                (
                    f'A crossing must have exactly 4 incident ends, not'
                    f' {len(self.ends)} ({self.ends}).'
                ),
            )

        for label in self.ends:
            if not isinstance(label, int) or isinstance(label, bool):
                raise ValueError(f'The edge label {label!r} is not integral.')

            if label < 1:
                raise ValueError(f'The edge label {label} is not 1-based.')

    @staticmethod
    def is_over(position: int) -> bool:
        """Return whether the end at the position belongs to the over-strand.

        :param position: The end position.
        :return: ``True`` for over ends, ``False`` for under ends.
        """
        return position % 2 == 1


@dataclass(frozen=True)
class LinkDiagram:
    """The class for link diagrams.

    >>> d = LinkDiagram((Crossing((1, 3, 2, 4)), Crossing((3, 1, 4, 2))))
    >>> d.components
    2
    >>> LinkDiagram((Crossing((1, 2, 1, 2)),))  # doctest: +ELLIPSIS
    Traceback (most recent call last):
        ...
    ValueError: The diagram is not planar: ...
    """

    crossings: tuple[Crossing, ...]
    """The crossings."""
    loops: int = 0
    """The number of crossing-free closed components."""

    def __post_init__(self) -> None:
        self.verify()

    def verify(self) -> None:
        """Verify the diagram.

        :return: ``None``.
        :raises ValueError: If the diagram is malformed or not planar.
        """
        if self.loops < 0:
            raise ValueError(f'The loop count {self.loops} is negative.')

        if not self.crossings and not self.loops:
            raise ValueError('The diagram has no components.')

        counts = Counter(
            chain.from_iterable(crossing.ends for crossing in self.crossings),
        )

        for label, count in sorted(counts.items()):
            if count != 2:
                raise ValueError(
                    (
                        f'The edge label {label} occurs {count} time(s) but'
                        ' every edge must have a label at each end.'
                    ),
                )

        try:
            self.planar_embedding.check_structure()
        except nx.NetworkXException as error:
            raise ValueError(f'The diagram is not planar: {error}') from error

    @cached_property
    def edges(self) -> dict[int, tuple[End, End]]:
        """Return the two ends of every edge.

        :return: The ends, keyed by edge label.
        """
        ends = dict[int, list[End]]()

        for i, crossing in enumerate(self.crossings):
            for k, label in enumerate(crossing.ends):
                ends.setdefault(label, []).append((i, k))

        return {
            label: (value[0], value[1])
            for label, value in sorted(ends.items())
        }

    def other_end(self, label: int, end: End) -> End:
        """Return the end of an edge opposite to the given one.

        :param label: The edge label.
        :param end: One end of the edge.
        :return: The other end.
        """
        first, second = self.edges[label]

        return second if end == first else first

    def label_at(self, end: End) -> int:
        """Return the label of the edge at an end.

        :param end: The end.
        :return: The edge label.
        """
        i, k = end

        return self.crossings[i].ends[k]

    def trace(self, label: int, start: End) -> Iterator[tuple[int, End]]:
        """Trace a circuit from an edge, leaving it through ``start``'s
        opposite end and passing straight through every crossing.

        :param label: The initial edge label.
        :param start: The end the circuit departs from.
        :return: The traversed (edge label, arrival end) pairs.
        """
        current_label, departure = label, start

        while True:
            arrival = self.other_end(current_label, departure)

            yield current_label, arrival

            i, k = arrival
            departure = i, (k + 2) % 4
            current_label = self.label_at(departure)

            if (current_label, departure) == (label, start):
                break

    @cached_property
    def circuits(self) -> tuple[tuple[tuple[int, End], ...], ...]:
        """Return the closed circuits through crossings.

        Loops are not included.

        :return: The circuits as (edge label, arrival end) sequences.
        """
        circuits = []
        visited = set[int]()

        for label, (first, _) in self.edges.items():
            if label not in visited:
                circuit = tuple(self.trace(label, first))

                visited.update(traversed for traversed, _ in circuit)
                circuits.append(circuit)

        return tuple(circuits)

    @property
    def components(self) -> int:
        """Return the number of link components.

        :return: The component count.
        """
        return len(self.circuits) + self.loops

    @cached_property
    def pieces(self) -> tuple[tuple[int, ...], ...]:
        """Return the crossing indices of each connected diagram piece
        that contains crossings.

        :return: The pieces, sorted.
        """
        union_find = UnionFind(range(len(self.crossings)))

        for (i, _), (j, _) in self.edges.values():
            union_find.union(i, j)

        return tuple(sorted(tuple(sorted(s)) for s in union_find.to_sets()))

    @cached_property
    def planar_embedding(self) -> nx.PlanarEmbedding:
        """Return the embedding of the augmented plane graph.

        Every edge is subdivided by two special vertices, one next to
        each end, and every loop becomes a 3-cycle so that the graph is
        simple. The rotation at every crossing follows the PD order.

        :return: The planar embedding (unchecked).
        """
        data = dict[Node, list[Node]]()

        for i, crossing in enumerate(self.crossings):
            data[('c', i)] = [
                end_node(self, (i, k)) for k in reversed(range(4))
            ]

        for label, (first, second) in self.edges.items():
            data[('e', label, 0)] = [('c', first[0]), ('e', label, 1)]
            data[('e', label, 1)] = [('e', label, 0), ('c', second[0])]

        for m in range(self.loops):
            for j in range(3):
                data[('l', m, j)] = [
                    ('l', m, (j + 1) % 3),
                    ('l', m, (j + 2) % 3),
                ]

        embedding = nx.PlanarEmbedding()

        embedding.set_data(data)

        return embedding

    @cached_property
    def faces(self) -> tuple[tuple[Node, ...], ...]:
        """Return the faces of the augmented plane graph.

        Every face is rotated to start at its least node and read in the
        direction with the lesser second node, so the list does not
        depend on the reflection of the embedding.

        :return: The faces, sorted.
        """
        embedding = self.planar_embedding
        marked = set[tuple[Node, Node]]()
        faces = []

        for v, w in sorted(embedding.edges()):
            if (v, w) not in marked:
                face = embedding.traverse_face(v, w, marked)

                faces.append(canonicalize_cycle(face))

        return tuple(sorted(faces))

    def dumps(self, format_: str = 'pd') -> str:
        """Serialize the diagram.

        :param format_: ``'pd'`` or ``'json'``.
        :return: The serialized diagram.
        """
        return serialize_diagram(self, format_)


def end_node(diagram: LinkDiagram, end: End) -> Node:
    """Return the special vertex next to a crossing end.

    :param diagram: The diagram.
    :param end: The end.
    :return: The special vertex.
    """
    label = diagram.label_at(end)
    first, _ = diagram.edges[label]

    return 'e', label, 0 if end == first else 1


def canonicalize_cycle(cycle: list[Node] | tuple[Node, ...]) -> tuple[
        Node,
        ...,
]:
    """Return the least rotation of a cycle over both directions.

    :param cycle: The cycle.
    :return: The canonical rotation.
    """
    candidates = []

    for sequence in (list(cycle), list(reversed(cycle))):
        for i in range(len(sequence)):
            candidates.append(tuple(sequence[i:] + sequence[:i]))

    return min(candidates)


def normalize_labels(
        ends: list[tuple[int, int, int, int]],
) -> list[tuple[int, int, int, int]]:
    """Reduce wrap-around labels modulo twice the crossing count.

    Some generators label the last edge ``2n + 1`` (and so on) instead
    of wrapping around to ``1``. When any label occurs only once, every
    label is reduced into ``1..2n``.

    >>> normalize_labels([(1, 4, 2, 3)])
    [(1, 2, 2, 1)]
    >>> normalize_labels([(1, 3, 2, 4), (3, 1, 4, 2)])
    [(1, 3, 2, 4), (3, 1, 4, 2)]

    :param ends: The crossing ends.
    :return: The normalized crossing ends.
    """
    counts = Counter(chain.from_iterable(ends))

    if all(count == 2 for count in counts.values()):
        return ends

    modulus = 2 * len(ends)

    return [
        (
            (a - 1) % modulus + 1,
            (b - 1) % modulus + 1,
            (c - 1) % modulus + 1,
            (d - 1) % modulus + 1,
        )
        for a, b, c, d in ends
    ]


def _parse_ints(raw_values: str) -> tuple[int, ...]:
    try:
        return tuple(int(value) for value in raw_values.split(','))
    except ValueError:
        raise ValueError(f'The crossing {raw_values!r} is not integral.')


def _split_bracket(text: str, start: int) -> tuple[str, str]:
    depth = 1

    for index in range(start, len(text)):
        match text[index]:
            case '[':
                depth += 1
            case ']':
                depth -= 1

                if not depth:
                    return text[start:index], text[index + 1:]

    raise ValueError(f'The PD code {text!r} has an unbalanced bracket.')


def parse_pd(text: str) -> LinkDiagram:
    """Parse a PD code, optionally followed by loop tokens.

    Every ``L[i]`` token adds exactly one crossing-free loop. The index
    ``i`` is only an identifier and never a loop count, so ``L[2]`` is a
    single loop like ``L[0]``.

    >>> parse_pd('PD[X(1,3,2,4),X(3,1,4,2)]').components
    2
    >>> parse_pd('L[0] L[1]').loops
    2
    >>> parse_pd('L[2]').loops
    1

    :param text: The PD code.
    :return: The diagram.
    :raises ValueError: If the code is malformed.
    """
    remainder = text.strip()
    ends = list[tuple[int, int, int, int]]()
    match_ = _PD_PATTERN.match(remainder)

    if match_ is not None:
        body, remainder = _split_bracket(remainder, match_.end())
        head = body

        for crossing_match in _CROSSING_PATTERN.finditer(body):
            values = _parse_ints(crossing_match.group(1))

            if len(values) != 4:
                raise ValueError(
                    (
                        f'The crossing {crossing_match.group(0)!r} does not'
                        ' have exactly 4 incident ends.'
                    ),
                )

            ends.append((values[0], values[1], values[2], values[3]))

        head = _CROSSING_PATTERN.sub('', head)

        if head.replace(',', '').strip():
            raise ValueError(f'The PD body {body!r} is malformed.')

    loops = len(_LOOP_PATTERN.findall(remainder))
    remainder = _LOOP_PATTERN.sub('', remainder)

    if remainder.replace(',', '').strip():
        raise ValueError(f'The diagram text {text!r} is malformed.')

    ends = normalize_labels(ends)

    return LinkDiagram(tuple(map(Crossing, ends)), loops)


def parse_json(text: str) -> LinkDiagram:
    """Parse a JSON diagram.

    Crossings may carry an ``"over"`` list of four booleans; they must
    alternate and the ends are rotated to start at an under end.

    >>> parse_json('{"crossings": [], "loops": 2}').components
    2

    :param text: The JSON diagram.
    :return: The diagram.
    :raises ValueError: If the document is malformed.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as error:
        raise ValueError(f'The JSON diagram is malformed: {error}') from error

    if not isinstance(document, dict):
        raise ValueError('The JSON diagram must be an object.')

    ends = list[tuple[int, int, int, int]]()

    raw_crossings = document.get('crossings', [])

    if not isinstance(raw_crossings, list):
        raise ValueError(f'The crossings {raw_crossings!r} are not a list.')

    for raw_crossing in raw_crossings:
        if not isinstance(raw_crossing, dict):
            raise ValueError(
                f'The crossing {raw_crossing!r} is not an object.',
            )

        raw_ends = list(raw_crossing.get('ends', []))

        if len(raw_ends) != 4:
            raise ValueError(
                (
                    f'The crossing {raw_crossing!r} does not have exactly 4'
                    ' incident ends.'
                ),
            )

        if 'over' in raw_crossing:
            overs = list(map(bool, raw_crossing['over']))

            if len(overs) != 4 or any(
                    overs[k] == overs[(k + 1) % 4] for k in range(4)
            ):
                raise ValueError(
                    (
                        f'The over/under labels {raw_crossing["over"]!r} do'
                        ' not alternate.'
                    ),
                )

            if overs[0]:
                raw_ends = raw_ends[1:] + raw_ends[:1]

        ends.append((raw_ends[0], raw_ends[1], raw_ends[2], raw_ends[3]))

    loops = document.get('loops', 0)

    if not isinstance(loops, int):
        raise ValueError(f'The loop count {loops!r} is not integral.')

    return LinkDiagram(tuple(map(Crossing, normalize_labels(ends))), loops)


def parse_diagram(text: str) -> LinkDiagram:
    """Parse a diagram in either accepted encoding.

    :param text: The PD code or JSON diagram.
    :return: The validated diagram.
    :raises ValueError: If the text is malformed or the diagram invalid.
    """
    if text.lstrip().startswith('{'):
        return parse_json(text)

    return parse_pd(text)


def serialize_diagram(diagram: LinkDiagram, format_: str = 'pd') -> str:
    """Serialize a diagram.

    >>> serialize_diagram(parse_diagram('PD[X(1,2,2,1)] L[7]'))
    'PD[X(1,2,2,1)] L[0]'

    :param diagram: The diagram.
    :param format_: ``'pd'`` or ``'json'``.
    :return: The text.
    """
    match format_:
        case 'pd':
            tokens = []

            if diagram.crossings:
                tokens.append(
                    'PD[{}]'.format(
                        ','.join(
                            'X({},{},{},{})'.format(*crossing.ends)
                            for crossing in diagram.crossings
                        ),
                    ),
                )

            tokens.extend(f'L[{m}]' for m in range(diagram.loops))

            text = ' '.join(tokens)
        case 'json':
            text = json.dumps(
                {
                    'crossings': [
                        {'ends': list(crossing.ends)}
                        for crossing in diagram.crossings
                    ],
                    'loops': diagram.loops,
                },
            )
        case _:
            raise ValueError(f'The format {format_!r} is unknown.')

    return text


def crossing_measure(diagram: LinkDiagram) -> int:
    """Return the crossing measure of a diagram.

    The measure is the number of crossings plus the number of connected
    diagram pieces (loops included) minus one.

    :param diagram: The diagram.
    :return: The crossing measure.
    """
    return len(diagram.crossings) + len(diagram.pieces) + diagram.loops - 1


def is_knot_diagram(diagram: LinkDiagram) -> bool:
    """Return whether the diagram has exactly one component.

    :param diagram: The diagram.
    :return: ``True`` for knot diagrams.
    """
    return diagram.components == 1
