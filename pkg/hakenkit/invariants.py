""":mod:`hakenkit.invariants` implements classical diagram invariants.

They are cheap compared with normal surface enumeration and bound the
answers the decision procedures must produce.

>>> from hakenkit.diagram import parse_diagram
>>> trefoil = parse_diagram('PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]')
>>> alexander_polynomial(trefoil).as_expr()
t**2 - t + 1
>>> seifert_genus_bound(trefoil), alexander_genus_bound(trefoil)
(1, 1)
"""

from __future__ import annotations

from networkx.utils import UnionFind
import sympy

from hakenkit.diagram import End, is_knot_diagram, LinkDiagram

t = sympy.Symbol('t')


def orientation(diagram: LinkDiagram) -> dict[int, tuple[End, End]]:
    """Orient every edge of a diagram.

    Every circuit is directed so that its under passages run from end 0
    to end 2. Circuits without under passages keep their trace
    direction.

    :param diagram: The diagram.
    :return: The (tail, head) ends, keyed by edge label.
    """
    directions = dict[int, tuple[End, End]]()

    for circuit in diagram.circuits:
        reverse = False

        for label, (i, k) in circuit:
            if k == 0:
                break
            elif k == 2:
                reverse = True

                break

        for label, arrival in circuit:
            departure = diagram.other_end(label, arrival)

            if reverse:
                directions[label] = arrival, departure
            else:
                directions[label] = departure, arrival

    return dict(sorted(directions.items()))


def crossing_signs(diagram: LinkDiagram) -> tuple[int, ...]:
    """Return the sign of every crossing.

    >>> from hakenkit.diagram import parse_diagram
    >>> crossing_signs(parse_diagram('PD[X(1,3,2,4),X(3,1,4,2)]'))
    (1, 1)

    :param diagram: The diagram.
    :return: The signs.
    """
    directions = orientation(diagram)
    signs = []

    for i, crossing in enumerate(diagram.crossings):
        _, head = directions[crossing.ends[1]]

        signs.append(-1 if head == (i, 1) else 1)

    return tuple(signs)


def wirtinger_arcs(diagram: LinkDiagram) -> dict[int, int]:
    """Return the over-arc index of every edge.

    :param diagram: The diagram.
    :return: The arc indices, keyed by edge label.
    """
    union_find = UnionFind(diagram.edges)

    for crossing in diagram.crossings:
        union_find.union(crossing.ends[1], crossing.ends[3])

    arcs = sorted(tuple(sorted(s)) for s in union_find.to_sets())

    return {label: index for index, arc in enumerate(arcs) for label in arc}


def alexander_polynomial(diagram: LinkDiagram) -> sympy.Poly:
    """Return the Alexander polynomial of a knot diagram.

    The polynomial is normalized to a nonzero positive constant term.

    :param diagram: The knot diagram.
    :return: The polynomial in ``t``.
    :raises ValueError: If the diagram is not a knot diagram.
    """
    if not is_knot_diagram(diagram):
        raise ValueError('The Alexander polynomial needs a knot diagram.')

    if not diagram.crossings:
        return sympy.Poly(1, t)

    arcs = wirtinger_arcs(diagram)
    signs = crossing_signs(diagram)
    size = len(diagram.crossings)
    matrix = sympy.zeros(size, max(arcs.values()) + 1)

    for row, (crossing, sign) in enumerate(zip(diagram.crossings, signs)):
        i = arcs[crossing.ends[0]]
        j = arcs[crossing.ends[2]]
        k = arcs[crossing.ends[1]]

        if sign > 0:
            matrix[row, k] += 1 - t
            matrix[row, i] += t
            matrix[row, j] -= 1
        else:
            matrix[row, k] += t - 1
            matrix[row, i] += 1
            matrix[row, j] -= t

    minor = matrix[:-1, :-1]
    determinant = sympy.expand(minor.det(method='berkowitz'))

    return normalize_laurent(sympy.Poly(determinant, t))


def normalize_laurent(polynomial: sympy.Poly) -> sympy.Poly:
    """Shift a polynomial to a nonzero constant term of positive sign.

    >>> normalize_laurent(sympy.Poly(-t**3 + t**2 - t, t)).as_expr()
    t**2 - t + 1

    :param polynomial: The polynomial.
    :return: The normalized polynomial.
    """
    if polynomial.is_zero:
        return polynomial

    coefficients = polynomial.all_coeffs()

    while coefficients[-1] == 0:
        coefficients.pop()

    if coefficients[-1] < 0:
        coefficients = [-coefficient for coefficient in coefficients]

    return sympy.Poly(coefficients, t)


def seifert_circles(diagram: LinkDiagram) -> int:
    """Return the number of Seifert circles of a diagram.

    :param diagram: The diagram.
    :return: The number of circles, loops included.
    """
    directions = orientation(diagram)
    ends = [
        (i, k) for i in range(len(diagram.crossings)) for k in range(4)
    ]
    union_find = UnionFind(ends)

    for first, second in diagram.edges.values():
        union_find.union(first, second)

    for i, crossing in enumerate(diagram.crossings):
        _, head = directions[crossing.ends[1]]

        if head == (i, 1):
            pairs = ((0, 3), (1, 2))
        else:
            pairs = ((0, 1), (3, 2))

        for a, b in pairs:
            union_find.union((i, a), (i, b))

    return len(list(union_find.to_sets())) + diagram.loops


def seifert_genus_bound(diagram: LinkDiagram) -> int:
    """Return the genus of the Seifert surface of a knot diagram.

    >>> from hakenkit.diagram import parse_diagram
    >>> seifert_genus_bound(parse_diagram('PD[X(1,2,2,1)]'))
    0

    :param diagram: The knot diagram.
    :return: The upper bound on the knot genus.
    :raises ValueError: If the diagram is not a knot diagram.
    """
    if not is_knot_diagram(diagram):
        raise ValueError('The Seifert genus bound needs a knot diagram.')

    doubled = len(diagram.crossings) - seifert_circles(diagram) + 1

    assert doubled % 2 == 0

    return doubled // 2


def alexander_genus_bound(diagram: LinkDiagram) -> int:
    """Return half the span of the Alexander polynomial.

    :param diagram: The knot diagram.
    :return: The lower bound on the knot genus.
    """
    degree = alexander_polynomial(diagram).degree()

    assert degree % 2 == 0

    return degree // 2


def linking_number(diagram: LinkDiagram) -> int:
    """Return the linking number of a two-component diagram.

    >>> from hakenkit.diagram import parse_diagram
    >>> linking_number(parse_diagram('L[0] L[1]'))
    0

    :param diagram: The diagram.
    :return: The linking number.
    :raises ValueError: If the diagram does not have two components.
    """
    if diagram.components != 2:
        raise ValueError(
            (
                f'The linking number needs 2 components, not'
                f' {diagram.components}.'
            ),
        )

    component_of = {
        label: index
        for index, circuit in enumerate(diagram.circuits)
        for label, _ in circuit
    }
    total = 0

    for crossing, sign in zip(diagram.crossings, crossing_signs(diagram)):
        if component_of[crossing.ends[0]] != component_of[crossing.ends[1]]:
            total += sign

    assert total % 2 == 0

    return total // 2
