"""Exception hierarchy shared by the engine and the CLI."""

from __future__ import annotations


class EngineError(Exception):
    """Base class for every error raised by the engine."""


class ZeroConstraintError(EngineError):
    """A zero character was given as a constraint: <0, mu> >= 1 is impossible."""


class InfeasibleError(EngineError):
    """The constraint system <chi, mu> >= 1 has no solution (0 lies in the hull)."""


class UnsupportedTypeError(EngineError):
    """Unknown or unsupported Cartan-type tag."""


class MalformedSpecError(EngineError):
    """A textual relative root datum description could not be parsed."""


class BudgetExceeded(EngineError):
    """An enumeration or recursion limit was hit (SIZE_LIMIT / recursion budget)."""


class RelativeRecursionError(EngineError):
    """A relative Levi recursion would require data the weights do not carry."""


class NoRealizationError(EngineError):
    """No matrix realization is bundled for this root datum."""
