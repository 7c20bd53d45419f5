"""Complex square root on the branch arg z in (-pi, pi].

All spectral formulas in this package depend on one consistent root
convention: Re sqrt(z) >= 0, and on the negative real axis (where the real
part vanishes) the root with Im >= 0 is taken, i.e. sqrt(-r) = +i sqrt(r)
for r > 0. Two independent evaluation routes are provided; they must agree
exactly in branch choice and to rounding in value.
"""

from __future__ import annotations

import cmath
import math

__all__ = ["principal_sqrt", "sqrt_cartesian"]


def principal_sqrt(z: complex) -> complex:
    """Root via the polar form, branch arg z in (-pi, pi].

    A ``-0.0`` imaginary part is normalized to ``+0.0`` first: the negative
    real axis belongs to the upper edge of the cut, and ``cmath.sqrt`` would
    otherwise follow the signed zero to the lower edge.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"principal_sqrt requires finite input, got {z!r}")
    if z.imag == 0.0:
        z = complex(z.real, 0.0)
    return cmath.sqrt(z)


def sqrt_cartesian(a: float, b: float) -> complex:
    """Same root computed from real and imaginary parts, no polar conversion.

    For z = a + ib and h = hypot(a, b):

        sqrt(z) = sqrt((h + a)/2) + s * i * sqrt((h - a)/2),  s = +1 iff b >= 0.

    Only the radicand h + |a| is evaluated directly; h - |a| cancels
    catastrophically when |b| << |a|, so the smaller component comes from
    b / (2 * larger) instead (exact consequence of (re + i im)^2 = z). ``b =
    -0.0`` compares ``>= 0`` and therefore lands on the upper edge, matching
    :func:`principal_sqrt`.
    """
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError(f"sqrt_cartesian requires finite input, got ({a!r}, {b!r})")
    h = math.hypot(a, b)
    if h == 0.0:
        return complex(0.0, 0.0)
    w = math.sqrt((h + abs(a)) / 2.0)
    if a >= 0.0:
        re, im = w, b / (2.0 * w)
        if b == 0.0:
            im = 0.0  # drop a signed zero from b = -0.0
    else:
        re = abs(b) / (2.0 * w)
        im = w if b >= 0.0 else -w  # -0.0 compares >= 0: upper edge of the cut
    return complex(re, im)
