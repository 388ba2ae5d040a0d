""":mod:`hakenkit.cli` runs one pipeline command and renders its report.

The management commands are thin wrappers around :func:`run`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from logging import getLogger
from pathlib import Path
from typing import Any
import json

from hakenkit.complement import build_complement
from hakenkit.decide import (
    Certificate,
    compute_genus,
    decide_splittable,
    decide_unknotted,
    DecisionResult,
    emit_certificate,
    KINDS,
    Verdict,
    verify_certificate,
)
from hakenkit.diagram import parse_diagram
from hakenkit.utilities import (
    Budget,
    CONSTRUCTIONS,
    get_budget_candidates,
    get_budget_seconds,
    get_construction,
    get_mode,
    get_workers,
    MODES,
    serialize,
)

COMMANDS: tuple[str, ...] = (
    'unknot',
    'split',
    'genus',
    'triangulate',
    'certify',
    'verify',
)
FORMATS: tuple[str, ...] = 'json', 'text'

COMPLETED: int = 0
"""The exit status of completed runs, whatever the verdict."""
INPUT_ERROR: int = 2
"""The exit status of unreadable or invalid input."""
BUDGET_EXCEEDED: int = 3
"""The exit status of runs cut short by their budget."""

_logger = getLogger(__name__)


@dataclass(frozen=True)
class RunConfig:
    """The class for run configurations.

    Unset limits fall back to the ``HAKENKIT_*`` settings.
    """

    command: str
    """The command."""
    path: str
    """The diagram file path."""
    certificate_path: str | None = None
    """The certificate file path, for ``verify``."""
    kind: str = 'unknot'
    """The certificate kind, for ``certify``."""
    mode: str = field(default_factory=get_mode)
    """The enumeration mode."""
    construction: str = field(default_factory=get_construction)
    """The triangulation construction mode."""
    budget_candidates: int = field(default_factory=get_budget_candidates)
    """The candidate budget."""
    budget_seconds: float = field(default_factory=get_budget_seconds)
    """The time budget in seconds."""
    workers: int = field(default_factory=get_workers)
    """The number of worker threads."""
    format_: str = 'json'
    """The output format."""

    def __post_init__(self) -> None:
        self.verify()

    def verify(self) -> None:
        """Verify the configuration.

        :return: ``None``.
        :raises ValueError: If an option is invalid.
        """
        for name, value, choices in (
                ('command', self.command, COMMANDS),
                ('kind', self.kind, KINDS),
                ('mode', self.mode, MODES),
                ('construction', self.construction, CONSTRUCTIONS),
                ('format', self.format_, FORMATS),
        ):
            if value not in choices:
                raise ValueError(
                    f'The {name} {value!r} is not one of {choices}.',
                )

        if self.command == 'verify' and self.certificate_path is None:
            raise ValueError('The verify command needs a certificate.')

        if self.workers <= 0:
            raise ValueError(
                f'The worker count {self.workers} is not positive.',
            )

        Budget(self.budget_candidates, self.budget_seconds)

    def create_budget(self) -> Budget:
        """Create a fresh budget for one run.

        :return: The budget.
        """
        return Budget(self.budget_candidates, self.budget_seconds)


def _decide(config: RunConfig, kind: str) -> DecisionResult:
    diagram = parse_diagram(Path(config.path).read_text())
    budget = config.create_budget()

    match kind:
        case 'unknot':
            return decide_unknotted(
                diagram,
                config.mode,
                config.construction,
                budget,
                config.workers,
            )
        case 'split':
            return decide_splittable(
                diagram,
                config.construction,
                budget,
                config.workers,
            )
        case 'genus':
            return compute_genus(
                diagram,
                config.construction,
                budget,
                config.workers,
            )
        case _:
            raise AssertionError


def _status(result: DecisionResult) -> int:
    if result.verdict == Verdict.BUDGET_EXCEEDED:
        return BUDGET_EXCEEDED

    return COMPLETED


def _execute(config: RunConfig) -> tuple[int, dict[str, Any]]:
    match config.command:
        case 'unknot' | 'split' | 'genus':
            result = _decide(config, config.command)

            return _status(result), result.serialize()
        case 'triangulate':
            diagram = parse_diagram(Path(config.path).read_text())
            complement = build_complement(diagram, config.construction)
            triangulation = complement.triangulation

            return COMPLETED, {
                'construction': complement.construction,
                'tetrahedra': triangulation.size,
                'hash': triangulation.hash(),
                'triangulation': triangulation.dumps(),
                'markings': complement.markings(),
            }
        case 'certify':
            result = _decide(config, config.kind)

            if result.verdict != Verdict.YES:
                return _status(result), result.serialize()

            certificate = emit_certificate(result, config.kind)

            return COMPLETED, certificate.serialize()
        case 'verify':
            assert config.certificate_path is not None

            certificate = Certificate.loads(
                Path(config.certificate_path).read_text(),
            )
            diagram = parse_diagram(Path(config.path).read_text())

            return COMPLETED, serialize(
                verify_certificate(certificate, diagram),
            )
        case _:
            raise AssertionError


def render(report: dict[str, Any], format_: str = 'json') -> str:
    """Render a report.

    >>> print(render({'verdict': 'no', 'stats': {'mode': 'vertex'}}, 'text'))
    stats: {"mode": "vertex"}
    verdict: no

    :param report: The JSON-ready report.
    :param format_: ``'json'`` or ``'text'``.
    :return: The rendering.
    """
    if format_ == 'json':
        return json.dumps(report, sort_keys=True)

    lines = []

    for key, value in sorted(report.items()):
        if isinstance(value, str):
            lines.append(f'{key}: {value}')
        else:
            lines.append(f'{key}: {json.dumps(value, sort_keys=True)}')

    return '\n'.join(lines)


def run(config: RunConfig) -> tuple[int, str]:
    """Run a command.

    :param config: The configuration.
    :return: The exit status and the rendered report.
    """
    _logger.info('Running %s on %s', config.command, config.path)

    try:
        status, report = _execute(config)
    except (OSError, ValueError) as error:
        _logger.error('The %s run failed: %s', config.command, error)

        status, report = INPUT_ERROR, {'error': str(error)}

    return status, render(report, config.format_)
