"""Result container and error types shared by every evaluator."""
from __future__ import annotations

import math
from dataclasses import dataclass


class NumericalError(Exception):
    """Base class for numerical failures."""


class PoleError(ValueError):
    """Raised when a function is evaluated exactly at a pole."""


class DomainError(ValueError):
    """Raised when arguments fall outside the supported domain."""


class ConvergenceError(NumericalError):
    """Raised when an iterative scheme fails to reach its tolerance."""


class ConsistencyError(NumericalError):
    """Raised when two independent evaluation routes disagree."""


@dataclass(frozen=True)
class EvalResult:
    """A complex value with an absolute error estimate.

    ``converged=False`` means the value should not be trusted.
    """

    value: complex
    abs_err: float = 0.0
    converged: bool = True

    def __post_init__(self):
        v = complex(self.value)
        object.__setattr__(self, "value", v)
        object.__setattr__(self, "abs_err", float(self.abs_err))
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            object.__setattr__(self, "converged", False)
            if not math.isfinite(self.abs_err):
                object.__setattr__(self, "abs_err", math.inf)

    @property
    def real(self) -> float:
        return self.value.real

    @property
    def imag(self) -> float:
        return self.value.imag

    def __complex__(self) -> complex:
        return self.value

    def __float__(self) -> float:
        return self.value.real

    def combine(self, other: "EvalResult", value: complex) -> "EvalResult":
        """Result of a binary operation, summing the error estimates."""
        return EvalResult(value, self.abs_err + other.abs_err,
                          self.converged and other.converged)


def total(parts, coeffs=None) -> EvalResult:
    """Linear combination of results with propagated error."""
    parts = list(parts)
    if coeffs is None:
        coeffs = [1.0] * len(parts)
    val = 0j
    err = 0.0
    ok = True
    for c, p in zip(coeffs, parts):
        if isinstance(p, EvalResult):
            val += c * p.value
            err += abs(c) * p.abs_err
            ok = ok and p.converged
        else:
            val += c * complex(p)
    return EvalResult(val, err, ok)
