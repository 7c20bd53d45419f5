"""Shared tolerance configuration.

Every module takes its thresholds from one ``Tolerances`` bundle so that a
single override (programmatic, ``--tol``, or the ``DEFECTWALK_TOL`` env var)
propagates consistently.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

ENV_TOL = "DEFECTWALK_TOL"


@dataclass(frozen=True)
class Tolerances:
    """Tolerance bundle.

    complex_eq : absolute tolerance for equality of complex scalars.
    circle     : tolerance on ``| |lambda| - 1 |`` for unit-circle membership.
    angle      : tolerance in radians on ``arg(lambda)`` for arc membership.
    eig_match  : max distance between a user-supplied eigenvalue and the
                 nearest closed-form one before it is rejected.
    newton     : residual threshold ``|D(root)|`` declaring Newton convergence.
    """

    complex_eq: float = 1e-12
    circle: float = 1e-9
    angle: float = 1e-9
    eig_match: float = 1e-6
    newton: float = 1e-11

    def with_complex_eq(self, value: float) -> "Tolerances":
        if not value > 0:
            raise ValueError(f"tolerance must be positive, got {value!r}")
        return replace(self, complex_eq=value)

    def with_equality_tol(self, value: float) -> "Tolerances":
        """Override the membership/equality knobs (complex_eq, circle, angle)
        together; the algorithmic knobs (eig_match, newton) stay put."""
        if not value > 0:
            raise ValueError(f"tolerance must be positive, got {value!r}")
        return replace(self, complex_eq=value, circle=value, angle=value)

    @classmethod
    def from_env(cls) -> "Tolerances":
        """Default bundle, with ``DEFECTWALK_TOL`` overriding the equality knobs."""
        raw = os.environ.get(ENV_TOL)
        if raw is None:
            return cls()
        try:
            value = float(raw)
        except ValueError as exc:
            raise ValueError(f"{ENV_TOL} must be a float, got {raw!r}") from exc
        return cls().with_equality_tol(value)


DEFAULT_TOLERANCES = Tolerances()
