""":mod:`hakenkit.decide` implements the decision procedures and their
certificates.

Every procedure enumerates a finite list of candidate normal vectors in
canonical order and reports the first (or, for the genus, the least)
candidate that passes its test. Candidates are tested concurrently in
fixed-size batches, so neither the verdict nor the witness depends on
the number of workers.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import islice
from logging import getLogger
from math import gcd
from typing import Any, TypeVar
import json

from sympy import Matrix

from hakenkit.complement import build_complement, MarkedComplement
from hakenkit.cone import (
    haken_bounds,
    haken_box,
    HakenCone,
    hilbert_basis,
    is_admissible,
    is_fundamental,
    matching_equations,
    NormalVector,
    vertex_solutions,
)
from hakenkit.diagram import is_knot_diagram, LinkDiagram
from hakenkit.homology import arc_parity, boundary_parity, is_essential_disk
from hakenkit.invariants import alexander_genus_bound, seifert_genus_bound
from hakenkit.surface import (
    boundary_arc_count,
    boundary_curves,
    connected_components,
    euler_characteristic,
    is_orientable,
    reconstruct,
)
from hakenkit.triangulation import Triangulation
from hakenkit.utilities import (
    Budget,
    BudgetExceededError,
    CONSTRUCTIONS,
    get_certificate_version,
    get_construction,
    get_mode,
    get_workers,
    MODES,
    serialize,
)

_T = TypeVar('_T')

BATCH_SIZE: int = 64
"""The number of candidates tested between two budget charges."""
KINDS: tuple[str, ...] = 'unknot', 'split'
PROBLEMS: tuple[str, ...] = *KINDS, 'genus'

_logger = getLogger(__name__)


class Verdict(str, Enum):
    """The enum class for decision verdicts."""

    YES = 'yes'
    NO = 'no'
    BUDGET_EXCEEDED = 'budget-exceeded'


@dataclass(frozen=True)
class DecisionResult:
    """The class for decision results.

    Unknot and splitting results carry a witness exactly when the
    verdict is yes. Genus results carry the minimizing vector.
    """

    verdict: Verdict
    """The verdict."""
    witness: NormalVector | None = None
    """The witness vector."""
    genus: int | None = None
    """The genus, for genus results."""
    statistics: dict[str, Any] = field(default_factory=dict)
    """The run statistics."""
    problem: str = 'unknot'
    """The decided problem."""
    complement: MarkedComplement | None = field(
        default=None,
        compare=False,
        repr=False,
    )
    """The complement the candidates were drawn from."""

    def __post_init__(self) -> None:
        if self.problem not in PROBLEMS:
            raise ValueError(
                f'The problem {self.problem!r} is not one of {PROBLEMS}.',
            )

        if (
                self.problem in KINDS
                and (self.witness is not None) != (self.verdict == Verdict.YES)
        ):
            raise ValueError('A witness must accompany exactly yes verdicts.')

    def serialize(self) -> dict[str, Any]:
        """Return the JSON-ready report.

        :return: The report.
        """
        report = {
            'verdict': self.verdict.value,
            'witness': serialize(self.witness),
        }

        if self.problem == 'genus':
            report['genus'] = self.genus

        report['stats'] = serialize(self.statistics)

        return report


def _batches(items: Iterable[_T]) -> Iterator[list[_T]]:
    iterator = iter(items)

    while batch := list(islice(iterator, BATCH_SIZE)):
        yield batch


def _scan(
        candidates: Iterable[NormalVector],
        test: Callable[[NormalVector], _T],
        budget: Budget,
        workers: int,
) -> Iterator[tuple[NormalVector, _T]]:
    with ThreadPoolExecutor(max_workers=max(workers, 1)) as executor:
        for batch in _batches(candidates):
            budget.spend(len(batch))

            yield from zip(batch, executor.map(test, batch))


def _first_witness(
        candidates: Iterable[NormalVector],
        test: Callable[[NormalVector], bool],
        budget: Budget,
        workers: int,
) -> NormalVector | None:
    for candidate, passed in _scan(candidates, test, budget, workers):
        if passed:
            return candidate

    return None


def _statistics(
        budget: Budget,
        complement: MarkedComplement,
        **kwargs: Any,
) -> dict[str, Any]:
    return {
        'candidates': budget.spent,
        'elapsed_ms': round(1000 * budget.elapsed),
        'construction': complement.construction,
        'tetrahedra': complement.triangulation.size,
        **kwargs,
    }


def _verify_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f'The mode {mode!r} is not one of {MODES}.')


def unknotted_in(
        complement: MarkedComplement,
        mode: str | None = None,
        budget: Budget | None = None,
        workers: int | None = None,
) -> DecisionResult:
    """Search a knot complement for an essential disk.

    In ``'vertex'`` mode the candidates are the minimal vertex
    solutions. In ``'haken'`` mode they are the fundamental solutions in
    the box bounded by the sum of the extreme rays, visited in
    lexicographic order.

    :param complement: The marked knot complement.
    :param mode: ``'vertex'`` or ``'haken'``.
    :param budget: The optional budget.
    :param workers: The number of testing threads.
    :return: The result.
    :raises ValueError: If the mode is unknown or no meridian is marked.
    """
    if mode is None:
        mode = get_mode()

    if budget is None:
        budget = Budget()

    if workers is None:
        workers = get_workers()

    _verify_mode(mode)

    if len(complement.meridians) != 1:
        raise ValueError(
            (
                f'A knot complement has 1 meridian, not'
                f' {len(complement.meridians)}.'
            ),
        )

    triangulation = complement.triangulation
    cone = matching_equations(triangulation)
    meridian, = complement.meridians

    def test(vector: NormalVector) -> bool:
        if not is_admissible(cone, vector):
            return False

        if not is_essential_disk(triangulation, vector, meridian):
            return False

        return mode == 'vertex' or is_fundamental(cone, vector)

    try:
        rays = vertex_solutions(
            cone,
            budget,
            workers,
            admissible=mode == 'vertex',
        )
        candidates: Iterable[NormalVector]

        if mode == 'vertex':
            candidates = rays
        else:
            candidates = haken_box(cone, haken_bounds(cone, rays))

        witness = _first_witness(candidates, test, budget, workers)
    except BudgetExceededError as error:
        _logger.warning('The unknot search ran out of budget: %s', error)

        return DecisionResult(
            Verdict.BUDGET_EXCEEDED,
            statistics=_statistics(budget, complement, mode=mode),
            problem='unknot',
            complement=complement,
        )

    verdict = Verdict.NO if witness is None else Verdict.YES

    _logger.info('The unknot search answered %s', verdict.value)

    return DecisionResult(
        verdict,
        witness,
        statistics=_statistics(
            budget,
            complement,
            mode=mode,
            rays=len(rays),
        ),
        problem='unknot',
        complement=complement,
    )


def splitting_arc(
        triangulation: Triangulation,
        vector: Sequence[int],
        arcs: Sequence[Sequence[tuple[int, int]]],
) -> int | None:
    """Return the first arc that a connected normal sphere meets an odd
    number of times.

    :param triangulation: The triangulation.
    :param vector: The normal coordinates.
    :param arcs: The marked arcs.
    :return: The arc index, or ``None`` if the vector is not a sphere
             separating the ends of an arc.
    """
    if not any(vector) or not is_admissible(
            matching_equations(triangulation),
            vector,
    ):
        return None

    if boundary_arc_count(triangulation, vector):
        return None

    if euler_characteristic(triangulation, vector) != 2:
        return None

    parities = [arc_parity(triangulation, vector, arc) for arc in arcs]

    if 1 not in parities:
        return None

    if connected_components(reconstruct(triangulation, vector)) != 1:
        return None

    return parities.index(1)


def splittable_in(
        complement: MarkedComplement,
        budget: Budget | None = None,
        workers: int | None = None,
) -> DecisionResult:
    """Search a link complement for a splitting sphere among the
    minimal vertex solutions.

    :param complement: The marked link complement.
    :param budget: The optional budget.
    :param workers: The number of testing threads.
    :return: The result.
    """
    if budget is None:
        budget = Budget()

    if workers is None:
        workers = get_workers()

    if not complement.arcs:
        return DecisionResult(
            Verdict.NO,
            statistics=_statistics(budget, complement, mode='vertex'),
            problem='split',
            complement=complement,
        )

    triangulation = complement.triangulation

    def test(vector: NormalVector) -> bool:
        arc = splitting_arc(triangulation, vector, complement.arcs)

        return arc is not None

    try:
        rays = vertex_solutions(
            matching_equations(triangulation),
            budget,
            workers,
            admissible=True,
        )
        witness = _first_witness(rays, test, budget, workers)
    except BudgetExceededError as error:
        _logger.warning('The splitting search ran out of budget: %s', error)

        return DecisionResult(
            Verdict.BUDGET_EXCEEDED,
            statistics=_statistics(budget, complement, mode='vertex'),
            problem='split',
            complement=complement,
        )

    verdict = Verdict.NO if witness is None else Verdict.YES

    _logger.info('The splitting search answered %s', verdict.value)

    return DecisionResult(
        verdict,
        witness,
        statistics=_statistics(
            budget,
            complement,
            mode='vertex',
            rays=len(rays),
        ),
        problem='split',
        complement=complement,
    )


def spanning_genus(
        triangulation: Triangulation,
        vector: Sequence[int],
        meridian: Sequence[tuple[int, int]],
) -> int | None:
    """Return the genus of a spanning surface.

    The surface must be connected and orientable with a single boundary
    curve meeting the meridian an odd number of times.

    >>> lst = Triangulation(
    ...     (((0, (3, 0, 1, 2)), None, None, (0, (1, 2, 3, 0))),),
    ... )
    >>> spanning_genus(lst, (1, 0, 0, 1, 1, 0, 0), ((0, 0),))
    0
    >>> spanning_genus(lst, (0, 0, 0, 0, 0, 1, 0), ((0, 0),)) is None
    True

    :param triangulation: The triangulation.
    :param vector: The normal coordinates.
    :param meridian: The meridian edge loop.
    :return: The genus, or ``None`` if the vector does not qualify.
    """
    if not any(vector) or not is_admissible(
            matching_equations(triangulation),
            vector,
    ):
        return None

    chi = euler_characteristic(triangulation, vector)

    if chi > 1 or chi % 2 == 0:
        return None

    if boundary_parity(triangulation, vector, meridian) != 1:
        return None

    surface = reconstruct(triangulation, vector)

    if connected_components(surface) != 1 or boundary_curves(surface) != 1:
        return None

    if not is_orientable(surface):
        return None

    return (1 - chi) // 2


def _minimize(
        candidates: Iterable[NormalVector],
        triangulation: Triangulation,
        meridian: Sequence[tuple[int, int]],
        lower: int,
        ceiling: int | None,
        budget: Budget,
        workers: int,
) -> tuple[int, NormalVector] | None:
    best: tuple[int, NormalVector] | None = None

    def test(vector: NormalVector) -> int | None:
        limit = ceiling if best is None else best[0] - 1
        chi = euler_characteristic(triangulation, vector)

        if limit is not None and chi < 1 - 2 * limit:
            return None

        return spanning_genus(triangulation, vector, meridian)

    cone = matching_equations(triangulation)
    admissible = (
        vector for vector in candidates if is_admissible(cone, vector)
    )

    for vector, genus in _scan(admissible, test, budget, workers):
        if genus is None or (best is not None and genus >= best[0]):
            continue

        best = genus, vector

        _logger.debug('Found a spanning surface of genus %d', genus)

        if genus == lower:
            break

    return best


def genus_in(
        complement: MarkedComplement,
        lower: int = 0,
        upper: int | None = None,
        budget: Budget | None = None,
        workers: int | None = None,
        limit: int | None = None,
) -> DecisionResult:
    """Find a minimal genus spanning surface in a knot complement.

    The minimal vertex solutions are searched first. Unless the least
    genus found there meets the lower bound, the Hilbert basis is
    searched as well, and a result cut short by the budget is reported
    as an upper bound.

    :param complement: The marked knot complement.
    :param lower: The known lower bound on the genus.
    :param upper: The known upper bound on the genus.
    :param budget: The optional budget.
    :param workers: The number of testing threads.
    :param limit: The box limit of the Hilbert basis search.
    :return: The result.
    """
    if budget is None:
        budget = Budget()

    if workers is None:
        workers = get_workers()

    if len(complement.meridians) != 1:
        raise ValueError(
            (
                f'A knot complement has 1 meridian, not'
                f' {len(complement.meridians)}.'
            ),
        )

    triangulation = complement.triangulation
    cone = matching_equations(triangulation)
    meridian, = complement.meridians
    bounds = {'lower': lower, 'upper': upper}
    best: tuple[int, NormalVector] | None = None
    tier = 'vertex'
    exact = False

    try:
        best = _minimize(
            vertex_solutions(cone, budget, workers, admissible=True),
            triangulation,
            meridian,
            lower,
            upper,
            budget,
            workers,
        )

        if best is not None and best[0] == lower:
            exact = True
        else:
            fundamental = _minimize(
                hilbert_basis(cone, limit, budget),
                triangulation,
                meridian,
                lower,
                upper if best is None else best[0] - 1,
                budget,
                workers,
            )

            if fundamental is not None:
                best = fundamental
                tier = 'fundamental'

            exact = True
    except BudgetExceededError as error:
        _logger.warning('The genus search ran out of budget: %s', error)

        if best is None:
            return DecisionResult(
                Verdict.BUDGET_EXCEEDED,
                statistics=_statistics(
                    budget,
                    complement,
                    mode='vertex',
                    bounds=bounds,
                    exact=False,
                ),
                problem='genus',
                complement=complement,
            )

    statistics = _statistics(
        budget,
        complement,
        mode='vertex',
        tier=tier,
        exact=exact,
        bounds=bounds,
    )

    if best is None:
        _logger.error('No spanning surface was found')

        return DecisionResult(
            Verdict.NO,
            statistics=statistics,
            problem='genus',
            complement=complement,
        )

    genus, witness = best

    _logger.info('The genus search found genus %d (%s tier)', genus, tier)

    return DecisionResult(
        Verdict.YES,
        witness,
        genus,
        statistics,
        'genus',
        complement,
    )


def _verify_knot(diagram: LinkDiagram) -> None:
    if not is_knot_diagram(diagram):
        raise ValueError(
            (
                f'The diagram has {diagram.components} components and is not'
                ' a knot diagram.'
            ),
        )


def decide_unknotted(
        diagram: LinkDiagram,
        mode: str | None = None,
        construction: str | None = None,
        budget: Budget | None = None,
        workers: int | None = None,
) -> DecisionResult:
    """Decide whether a knot diagram represents the unknot.

    :param diagram: The knot diagram.
    :param mode: ``'vertex'`` or ``'haken'``.
    :param construction: ``'compact'`` or ``'paper'``.
    :param budget: The optional budget.
    :param workers: The number of testing threads.
    :return: The result, with an essential disk as the yes-witness.
    :raises ValueError: If the diagram is not a knot diagram.
    """
    _verify_knot(diagram)
    _verify_mode(get_mode() if mode is None else mode)

    if budget is None:
        budget = Budget()

    if construction is None:
        construction = get_construction()

    complement = build_complement(diagram, construction)

    return unknotted_in(complement, mode, budget, workers)


def decide_splittable(
        diagram: LinkDiagram,
        construction: str | None = None,
        budget: Budget | None = None,
        workers: int | None = None,
) -> DecisionResult:
    """Decide whether a link diagram represents a splittable link.

    :param diagram: The link diagram.
    :param construction: ``'compact'`` or ``'paper'``.
    :param budget: The optional budget.
    :param workers: The number of testing threads.
    :return: The result, with a splitting sphere as the yes-witness.
    """
    if budget is None:
        budget = Budget()

    if diagram.components < 2:
        return DecisionResult(
            Verdict.NO,
            statistics={
                'candidates': 0,
                'elapsed_ms': round(1000 * budget.elapsed),
                'components': diagram.components,
            },
            problem='split',
        )

    if construction is None:
        construction = get_construction()

    complement = build_complement(diagram, construction)

    return splittable_in(complement, budget, workers)


def compute_genus(
        diagram: LinkDiagram,
        construction: str | None = None,
        budget: Budget | None = None,
        workers: int | None = None,
        limit: int | None = None,
) -> DecisionResult:
    """Compute the genus of the knot of a diagram.

    :param diagram: The knot diagram.
    :param construction: ``'compact'`` or ``'paper'``.
    :param budget: The optional budget.
    :param workers: The number of testing threads.
    :param limit: The box limit of the Hilbert basis search.
    :return: The result, with a minimal spanning surface as witness.
    :raises ValueError: If the diagram is not a knot diagram.
    """
    _verify_knot(diagram)

    if budget is None:
        budget = Budget()

    if construction is None:
        construction = get_construction()

    lower = alexander_genus_bound(diagram)
    upper = seifert_genus_bound(diagram)
    complement = build_complement(diagram, construction)

    return genus_in(complement, lower, upper, budget, workers, limit)


@dataclass(frozen=True)
class Certificate:
    """The class for unknottedness and splitting certificates.

    ``bindings`` lists linearly independent rows of the matching
    equations stacked over the identity that vanish on the vector, or is
    ``'fundamental'`` when the vector is attested by a box search.
    """

    kind: str
    """``'unknot'`` or ``'split'``."""
    triangulation_hash: str
    """The digest of the complement triangulation."""
    vector: NormalVector
    """The witness vector."""
    bindings: tuple[int, ...] | str
    """The binding constraint indices or ``'fundamental'``."""
    markings: dict[str, Any]
    """The marked meridians and arcs."""
    construction: str = 'compact'
    """The construction mode of the complement."""
    version: int = field(default_factory=get_certificate_version)
    """The certificate format version."""

    def serialize(self) -> dict[str, Any]:
        """Return the JSON-ready certificate.

        :return: The certificate.
        """
        data: dict[str, Any] = serialize(self)

        return data

    def dumps(self) -> str:
        """Serialize the certificate.

        :return: The JSON text.
        """
        return json.dumps(self.serialize(), sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> Certificate:
        """Parse a certificate.

        :param text: The JSON text.
        :return: The certificate.
        :raises ValueError: If the certificate is malformed.
        """
        try:
            data = json.loads(text)
            bindings = data['bindings']

            if not isinstance(bindings, str):
                bindings = tuple(map(int, bindings))

            return cls(
                str(data['kind']),
                str(data['triangulation_hash']),
                tuple(map(int, data['vector'])),
                bindings,
                dict(data['markings']),
                str(data['construction']),
                int(data['version']),
            )
        except (KeyError, TypeError, ValueError) as error:
            raise ValueError('The certificate is malformed.') from error


def _stacked_rows(cone: HakenCone) -> list[list[int]]:
    return cone.dense_rows() + [
        [int(i == j) for j in range(cone.width)] for i in range(cone.width)
    ]


def _value(row: Sequence[int], vector: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(row, vector))


def binding_constraints(
        cone: HakenCone,
        vector: Sequence[int],
) -> tuple[int, ...] | None:
    """Return independent constraints pinning a vector to its ray.

    :param cone: The cone.
    :param vector: The cone point.
    :return: The indices into the matching rows stacked over the
             identity, or ``None`` if the vector is not on an extreme
             ray.
    """
    rows = _stacked_rows(cone)
    binding = [i for i, row in enumerate(rows) if _value(row, vector) == 0]

    if cone.width == 1:
        return () if binding else None

    if not binding:
        return None

    _, pivots = Matrix([rows[i] for i in binding]).T.rref()

    if len(pivots) != cone.width - 1:
        return None

    return tuple(binding[pivot] for pivot in pivots)


def emit_certificate(result: DecisionResult, kind: str) -> Certificate:
    """Turn a yes-result into a certificate.

    :param result: The result with its witness and complement.
    :param kind: ``'unknot'`` or ``'split'``.
    :return: The certificate.
    :raises ValueError: If the result has no witness.
    """
    if kind not in KINDS:
        raise ValueError(f'The kind {kind!r} is not one of {KINDS}.')

    if result.witness is None or result.complement is None:
        raise ValueError(
            f'A {result.verdict.value!r} verdict has no witness to certify.',
        )

    triangulation = result.complement.triangulation
    cone = matching_equations(triangulation)
    bindings: tuple[int, ...] | str | None = 'fundamental'

    if result.statistics.get('mode') != 'haken':
        bindings = binding_constraints(cone, result.witness)

    if bindings is None:
        bindings = 'fundamental'

    return Certificate(
        kind,
        triangulation.hash(),
        result.witness,
        bindings,
        result.complement.markings(),
        result.complement.construction,
    )


@dataclass(frozen=True)
class Verification:
    """The class for certificate verification outcomes."""

    valid: bool
    """The validity."""
    reason: str = 'ok'
    """The code of the first failed check."""

    def __bool__(self) -> bool:
        return self.valid


def _verify_bindings(
        cone: HakenCone,
        vector: Sequence[int],
        bindings: Sequence[int],
) -> bool:
    rows = _stacked_rows(cone)

    if len(bindings) != cone.width - 1:
        return False

    if not all(0 <= i < len(rows) for i in bindings):
        return False

    if any(_value(rows[i], vector) for i in bindings):
        return False

    if not bindings:
        return True

    return Matrix([rows[i] for i in bindings]).rank() == cone.width - 1


def verify_certificate_in(
        certificate: Certificate,
        complement: MarkedComplement,
) -> Verification:
    """Verify a certificate against a rebuilt complement.

    Every check is polynomial in the size of the triangulation and the
    bit length of the vector, except the box search behind a
    ``'fundamental'`` attestation.

    :param certificate: The certificate.
    :param complement: The complement.
    :return: The verification outcome.
    """
    triangulation = complement.triangulation
    vector = certificate.vector

    if certificate.version != get_certificate_version():
        return Verification(False, 'version')

    if certificate.kind not in KINDS:
        return Verification(False, 'kind')

    if certificate.triangulation_hash != triangulation.hash():
        return Verification(False, 'hash')

    cone = matching_equations(triangulation)

    if len(vector) != cone.width:
        return Verification(False, 'length')

    if not any(vector) or not is_admissible(cone, vector):
        return Verification(False, 'admissible')

    if gcd(*vector) != 1:
        return Verification(False, 'gcd')

    if isinstance(certificate.bindings, str):
        if certificate.bindings != 'fundamental':
            return Verification(False, 'bindings')

        try:
            if not is_fundamental(cone, vector):
                return Verification(False, 'fundamental')
        except BudgetExceededError:
            return Verification(False, 'budget')
    elif not _verify_bindings(cone, vector, certificate.bindings):
        return Verification(False, 'bindings')

    if certificate.markings != complement.markings():
        return Verification(False, 'markings')

    chi = euler_characteristic(triangulation, vector)
    arcs = boundary_arc_count(triangulation, vector)

    if certificate.kind == 'unknot':
        if chi != 1:
            return Verification(False, 'chi')

        if not arcs:
            return Verification(False, 'boundary')

        if len(complement.meridians) != 1 or boundary_parity(
                triangulation,
                vector,
                complement.meridians[0],
        ) != 1:
            return Verification(False, 'parity')
    else:
        if chi != 2:
            return Verification(False, 'chi')

        if arcs:
            return Verification(False, 'boundary')

        if not any(
                arc_parity(triangulation, vector, arc)
                for arc in complement.arcs
        ):
            return Verification(False, 'parity')

    return Verification(True)


def verify_certificate(
        certificate: Certificate,
        diagram: LinkDiagram,
) -> Verification:
    """Verify a certificate against a diagram.

    The complement is rebuilt from the diagram in the construction mode
    named by the certificate.

    :param certificate: The certificate.
    :param diagram: The diagram.
    :return: The verification outcome.
    """
    if certificate.version != get_certificate_version():
        return Verification(False, 'version')

    if certificate.kind not in KINDS:
        return Verification(False, 'kind')

    if certificate.construction not in CONSTRUCTIONS:
        return Verification(False, 'construction')

    if certificate.kind == 'unknot' and not is_knot_diagram(diagram):
        return Verification(False, 'diagram')

    if certificate.kind == 'split' and diagram.components < 2:
        return Verification(False, 'diagram')

    complement = build_complement(diagram, certificate.construction)
    verification = verify_certificate_in(certificate, complement)

    _logger.info(
        'Verified the %s certificate: %s',
        certificate.kind,
        verification.reason,
    )

    return verification
