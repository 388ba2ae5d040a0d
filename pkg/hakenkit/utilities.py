from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field, fields, is_dataclass, KW_ONLY
from datetime import datetime
from enum import Enum
from fractions import Fraction
from threading import Lock
from time import monotonic
from typing import Any

from django.conf import settings

DEFAULT_AUTH: bool = True
DEFAULT_ADMIN: bool = True
DEFAULT_MODE: str = 'vertex'
DEFAULT_CONSTRUCTION: str = 'compact'
DEFAULT_BUDGET_CANDIDATES: int = 1_000_000
DEFAULT_BUDGET_SECONDS: float = 300.0
DEFAULT_WORKERS: int = 1
DEFAULT_BOX_LIMIT: int = 2_000_000
DEFAULT_CERTIFICATE_VERSION: int = 1

MODES: tuple[str, ...] = 'haken', 'vertex'
CONSTRUCTIONS: tuple[str, ...] = 'compact', 'paper'


class BudgetExceededError(Exception):
    """The error raised when a computation runs out of its budget."""


@dataclass
class Budget:
    """The class for computation budgets.

    A budget is shared by every stage of a single decision so that ray
    enumeration and candidate testing draw from the same allowance.
    """

    candidates: int = field(default_factory=lambda: get_budget_candidates())
    """The maximum number of candidates (rays, vectors) to examine."""
    seconds: float = field(default_factory=lambda: get_budget_seconds())
    """The maximum wall-clock time in seconds."""
    _: KW_ONLY
    spent: int = 0
    """The number of candidates examined so far."""
    started_at: float = field(default_factory=monotonic)
    """The monotonic timestamp of the budget creation."""
    _lock: Lock = field(default_factory=Lock, repr=False, compare=False)

    def __post_init__(self) -> None:
        self.verify_limits()

    def verify_limits(self) -> None:
        """Verify that the limits are positive.

        :return: ``None``.
        :raises ValueError: If a limit is not positive.
        """
        if self.candidates <= 0:
            raise ValueError(
                f'The candidate budget {self.candidates} is not positive.',
            )

        if self.seconds <= 0:
            raise ValueError(
                f'The time budget {self.seconds} is not positive.',
            )

    @property
    def elapsed(self) -> float:
        """Return the seconds elapsed since the budget was created.

        :return: The elapsed seconds.
        """
        return monotonic() - self.started_at

    def spend(self, count: int = 1) -> None:
        """Charge candidates against the budget.

        :param count: The number of candidates examined.
        :return: ``None``.
        :raises BudgetExceededError: If either limit is exhausted.
        """
        with self._lock:
            self.spent += count

            if self.spent > self.candidates:
                raise BudgetExceededError(
                    f'More than {self.candidates} candidates were examined.',
                )

        if self.elapsed > self.seconds:
            raise BudgetExceededError(
                f'More than {self.seconds} seconds have elapsed.',
            )


def get_auth() -> bool:
    return getattr(settings, 'HAKENKIT_AUTH', DEFAULT_AUTH)


def get_admin() -> bool:
    return getattr(settings, 'HAKENKIT_ADMIN', DEFAULT_ADMIN)


def get_mode() -> str:
    return getattr(settings, 'HAKENKIT_MODE', DEFAULT_MODE)


def get_construction() -> str:
    return getattr(settings, 'HAKENKIT_CONSTRUCTION', DEFAULT_CONSTRUCTION)


def get_budget_candidates() -> int:
    return getattr(
        settings,
        'HAKENKIT_BUDGET_CANDIDATES',
        DEFAULT_BUDGET_CANDIDATES,
    )


def get_budget_seconds() -> float:
    return getattr(settings, 'HAKENKIT_BUDGET_SECONDS', DEFAULT_BUDGET_SECONDS)


def get_workers() -> int:
    return getattr(settings, 'HAKENKIT_WORKERS', DEFAULT_WORKERS)


def get_box_limit() -> int:
    return getattr(settings, 'HAKENKIT_BOX_LIMIT', DEFAULT_BOX_LIMIT)


def get_certificate_version() -> int:
    return getattr(
        settings,
        'HAKENKIT_CERTIFICATE_VERSION',
        DEFAULT_CERTIFICATE_VERSION,
    )


def serialize(obj: Any) -> Any:
    if obj is None or isinstance(obj, bytes | str | bool | int | float):
        return obj
    elif isinstance(obj, Enum):
        return serialize(obj.value)
    elif isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else str(obj)
    elif is_dataclass(obj) and not isinstance(obj, type):
        return {
            field_.name: serialize(getattr(obj, field_.name))
            for field_ in fields(obj)
            if not field_.name.startswith('_')
        }
    elif isinstance(obj, Mapping):
        return dict(zip(serialize(obj.keys()), serialize(obj.values())))
    elif isinstance(obj, Iterable):
        return list(map(serialize, obj))
    elif isinstance(obj, datetime):
        return obj.isoformat()
    else:
        raise AssertionError
