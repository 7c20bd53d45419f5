"""Closed-form point spectrum of the one-defect walk operator.

The operator acts on two-component amplitudes over the integer lattice as
U = (shift) * (coin), with coin (1/sqrt2)[[1,-1],[1,1]] away from the origin
and omega times that at the origin, omega real and nonzero. For omega not in
{0, 1} the point spectrum is a symmetric quadruple

    lambda_1 = a + ib,  lambda_2 = -a + ib,  lambda_3 = -a - ib,  lambda_4 = a - ib

with a = abs_real_part(omega) > 0 and b = abs_imag_part(omega) > 0. Solutions
of the eigenvalue recurrence factor through one-site transfer matrices whose
bulk eigenvalues are the multipliers z_+ and z_- (z_+ z_- = 1); all decay /
growth statements reduce to their moduli.

Everything here is a pure function of omega and the spectral parameter.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .sqrtbranch import principal_sqrt
from .walk import WaveFunction

__all__ = [
    "Region",
    "Family",
    "SpectralQuadruple",
    "EigenvectorProfile",
    "abs_real_part",
    "abs_imag_part",
    "eigenvalues",
    "eigenvalue_modulus_squared",
    "bulk_multipliers",
    "bulk_slopes",
    "bulk_eigenvectors",
    "transfer_matrix",
    "classify",
    "det_parameter_plus",
    "det_parameter_minus",
    "dependence_det_plus",
    "dependence_det_minus",
    "eigenvector_profile",
    "eigenvector",
    "essential_spectrum_arcs",
]

_SQRT2 = math.sqrt(2.0)
_PI = math.pi


# ---------------------------------------------------------------------------
# validation helpers

def _check_omega(omega: float, *, exclude_one: bool = False) -> float:
    omega = float(omega)
    if not math.isfinite(omega):
        raise ValueError(f"omega must be finite, got {omega!r}")
    if omega == 0.0:
        raise ValueError("omega must be a nonzero real (the defect coin is omega times the bulk coin)")
    if exclude_one and omega == 1.0:
        raise ValueError(
            "omega = 1 is the homogeneous walk: the closed-form point spectrum "
            "requires a nonzero real omega with omega != 1"
        )
    return omega


def _check_lambda(lam: complex) -> complex:
    lam = complex(lam)
    if not (math.isfinite(lam.real) and math.isfinite(lam.imag)):
        raise ValueError(f"lambda must be finite, got {lam!r}")
    if lam == 0:
        raise ValueError("lambda = 0 is not an admissible spectral parameter")
    return lam


def _branch_sqrt(z):
    """principal_sqrt extended to numpy arrays (same -0.0 normalization)."""
    arr = np.asarray(z, dtype=complex)
    arr = np.where(arr.imag == 0.0, arr.real + 0j, arr)
    return np.sqrt(arr)


# ---------------------------------------------------------------------------
# eigenvalue magnitudes and the quadruple

def _radical_parts(omega: float) -> tuple[float, float]:
    """Numerator radical and denominator shared by the two magnitudes."""
    q = omega * omega - omega + 1.0
    root = abs(omega) * math.sqrt((omega - 1.0) ** 4 + q * q)
    den = 4.0 * (omega - 0.5) ** 2 + 1.0
    return root, den


def abs_real_part(omega: float) -> float:
    """Common |Re lambda_j| of the four point eigenvalues.

    Equals sqrt((-omega (omega-1)^2 + |omega| sqrt((omega-1)^4
    + (omega^2-omega+1)^2)) / (4 (omega-1/2)^2 + 1)); strictly positive for
    every nonzero real omega.
    """
    omega = _check_omega(omega)
    root, den = _radical_parts(omega)
    return math.sqrt((-omega * (omega - 1.0) ** 2 + root) / den)


def abs_imag_part(omega: float) -> float:
    """Common |Im lambda_j| of the four point eigenvalues (the + sign twin)."""
    omega = _check_omega(omega)
    root, den = _radical_parts(omega)
    return math.sqrt((omega * (omega - 1.0) ** 2 + root) / den)


@dataclass(frozen=True)
class SpectralQuadruple:
    """The four point eigenvalues, indexed 1..4 counterclockwise from the
    first quadrant: lambda_2 = -conj(lambda_1), lambda_3 = -lambda_1,
    lambda_4 = conj(lambda_1)."""

    lambda1: complex
    lambda2: complex
    lambda3: complex
    lambda4: complex

    def as_tuple(self) -> tuple[complex, complex, complex, complex]:
        return (self.lambda1, self.lambda2, self.lambda3, self.lambda4)

    def by_index(self, index: int) -> complex:
        if index not in (1, 2, 3, 4):
            raise ValueError(f"eigenvalue index must be 1..4, got {index!r}")
        return self.as_tuple()[index - 1]

    def __iter__(self):
        return iter(self.as_tuple())


def eigenvalues(omega: float) -> SpectralQuadruple:
    """Closed-form point spectrum for omega not in {0, 1}."""
    omega = _check_omega(omega, exclude_one=True)
    a = abs_real_part(omega)
    b = abs_imag_part(omega)
    lam1 = complex(a, b)
    return SpectralQuadruple(lam1, -lam1.conjugate(), -lam1, lam1.conjugate())


def eigenvalue_modulus_squared(omega: float) -> float:
    """|lambda_j|^2 via the independent closed identity
    sgn(omega) * omega * sqrt((omega^2 - 2 omega + 2) / (2 omega^2 - 2 omega + 1))."""
    omega = _check_omega(omega)
    return abs(omega) * math.sqrt(
        (omega * omega - 2.0 * omega + 2.0) / (2.0 * omega * omega - 2.0 * omega + 1.0)
    )


# ---------------------------------------------------------------------------
# transfer machinery away from the defect

def bulk_multipliers(lam: complex) -> tuple[complex, complex]:
    """Eigenvalues (z_+, z_-) of the bulk transfer matrix.

    z_pm = (lambda + lambda^{-1} +- sqrt(lambda^2 + lambda^{-2})) / sqrt2,
    with the shared branch of :func:`principal_sqrt`. Always z_+ z_- = 1;
    they coalesce exactly at the four arc endpoints e^{i(2k+1)pi/4}.
    """
    lam = _check_lambda(lam)
    inv = 1.0 / lam
    s = principal_sqrt(lam * lam + inv * inv)
    return (lam + inv + s) / _SQRT2, (lam + inv - s) / _SQRT2


def bulk_slopes(lam: complex) -> tuple[complex, complex]:
    """Second components (kappa, kappa') of the bulk transfer eigenvectors
    [1, kappa] and [1, kappa']; kappa * kappa' = -1.

    kappa  = (-lambda + lambda^{-1} + sqrt(lambda^2 + lambda^{-2})) / sqrt2
    kappa' = (-lambda + lambda^{-1} - sqrt(lambda^2 + lambda^{-2})) / sqrt2
    """
    lam = _check_lambda(lam)
    inv = 1.0 / lam
    s = principal_sqrt(lam * lam + inv * inv)
    return (-lam + inv + s) / _SQRT2, (-lam + inv - s) / _SQRT2


def bulk_eigenvectors(lam: complex) -> tuple[np.ndarray, np.ndarray]:
    """Bulk transfer eigenvectors (chi_+, chi_-) = ([1, kappa], [1, kappa'])."""
    kappa, kappa_p = bulk_slopes(lam)
    return np.array([1.0, kappa], dtype=complex), np.array([1.0, kappa_p], dtype=complex)


def transfer_matrix(lam: complex, x: int, omega: float) -> np.ndarray:
    """One-site transfer matrix propagating [psi_L(x-1), psi_R(x)] to site x+1.

    Bulk sites: [[sqrt2 lambda, 1], [1, sqrt2 / lambda]]; at the defect x = 0
    the diagonal picks up omega: [[sqrt2 lambda / omega, 1], [1, sqrt2 omega / lambda]].
    Determinant is exactly 1 in both cases.
    """
    lam = _check_lambda(lam)
    omega = _check_omega(omega)
    if int(x) != x:
        raise ValueError(f"site index must be an integer, got {x!r}")
    if x == 0:
        return np.array(
            [[_SQRT2 * lam / omega, 1.0], [1.0, _SQRT2 * omega / lam]], dtype=complex
        )
    return np.array([[_SQRT2 * lam, 1.0], [1.0, _SQRT2 / lam]], dtype=complex)


# ---------------------------------------------------------------------------
# spectral regions

class Region(enum.Enum):
    """Partition of the punctured plane by the modulus of z_+.

    SIGMA  : unit-circle arcs arg in [pi/4, 3pi/4] U [5pi/4, 7pi/4]; |z_+| = 1.
    SIGMA0 : the four arc endpoints e^{i(2k+1)pi/4}; z_+ = z_-.
    XI_PLUS  : |z_+| > 1 (open right half-plane plus the imaginary-axis
               segments it : t in (-1,0) U (1,inf), minus SIGMA).
    XI_MINUS : |z_+| < 1 (mirror of XI_PLUS).
    """

    SIGMA0 = "sigma0"
    SIGMA = "sigma"
    XI_PLUS = "xi_plus"
    XI_MINUS = "xi_minus"


def classify(lam: complex, tol: Tolerances | None = None) -> Region:
    """Assign lambda to its spectral region; most specific label wins.

    Unit-circle membership is tested first (within ``tol.circle``), then the
    argument against the arc endpoints (``tol.angle``, yielding SIGMA0) and the
    closed arcs (SIGMA). Off-circle points split by half-plane, with points
    exactly on the imaginary axis assigned by the segment rule above.
    """
    tol = tol or DEFAULT_TOLERANCES
    lam = _check_lambda(lam)
    if abs(abs(lam) - 1.0) <= tol.circle:
        theta = math.atan2(lam.imag, lam.real) % (2.0 * _PI)
        if min(abs(theta - k * _PI / 4.0) for k in (1, 3, 5, 7)) <= tol.angle:
            return Region.SIGMA0
        if (_PI / 4.0 - tol.angle <= theta <= 3.0 * _PI / 4.0 + tol.angle) or (
            5.0 * _PI / 4.0 - tol.angle <= theta <= 7.0 * _PI / 4.0 + tol.angle
        ):
            return Region.SIGMA
    if lam.real > 0.0:
        return Region.XI_PLUS
    if lam.real < 0.0:
        return Region.XI_MINUS
    t = lam.imag
    if -1.0 < t < 0.0 or t > 1.0:
        return Region.XI_PLUS
    return Region.XI_MINUS


def essential_spectrum_arcs(samples_per_arc: int) -> np.ndarray:
    """Evenly spaced points on the two essential-spectrum arcs, endpoints
    included; ``samples_per_arc = 2`` returns exactly the four SIGMA0 points."""
    n = int(samples_per_arc)
    if n < 2:
        raise ValueError(f"samples_per_arc must be >= 2, got {samples_per_arc!r}")
    first = np.exp(1j * np.linspace(_PI / 4.0, 3.0 * _PI / 4.0, n))
    second = np.exp(1j * np.linspace(5.0 * _PI / 4.0, 7.0 * _PI / 4.0, n))
    return np.concatenate([first, second])


# ---------------------------------------------------------------------------
# dependence determinants (whose roots are the point eigenvalues)

def det_parameter_plus(lam: complex, omega: float) -> complex:
    """Parameter (omega / lambda) * kappa driving the right-decaying
    dependence determinant; its root values are (-1 +- i)/sqrt2."""
    lam = _check_lambda(lam)
    omega = _check_omega(omega)
    kappa, _ = bulk_slopes(lam)
    return (omega / lam) * kappa


def det_parameter_minus(lam: complex, omega: float) -> complex:
    """Parameter (lambda / omega) * kappa driving the left-decaying
    dependence determinant; its root values are (1 +- i)/sqrt2."""
    lam = _check_lambda(lam)
    omega = _check_omega(omega)
    kappa, _ = bulk_slopes(lam)
    return (lam / omega) * kappa


def _cross_checked(raw: complex, closed: complex) -> complex:
    scale = max(1.0, abs(raw), abs(closed))
    if abs(raw - closed) > 1e-9 * scale:
        raise ArithmeticError(
            f"dependence determinant routes disagree: raw={raw!r} closed={closed!r}"
        )
    return closed


def dependence_det_plus(lam: complex, omega: float) -> complex:
    """det [ T_lambda(0) chi_+ | chi_- ]: vanishes exactly at the two point
    eigenvalues with |z_+| > 1 (positive-real-part pair).

    Computed both from the literal 2x2 determinant and from the closed form
    -2 - sqrt2 * P - sqrt2 / P with P = det_parameter_plus; the routes must
    agree or an ArithmeticError is raised.
    """
    lam = _check_lambda(lam)
    omega = _check_omega(omega)
    chi_p, chi_m = bulk_eigenvectors(lam)
    col = transfer_matrix(lam, 0, omega) @ chi_p
    raw = col[0] * chi_m[1] - col[1] * chi_m[0]
    p = det_parameter_plus(lam, omega)
    if p == 0:
        raise ValueError("degenerate parameter in dependence determinant")
    closed = -2.0 - _SQRT2 * p - _SQRT2 / p
    return _cross_checked(complex(raw), complex(closed))


def dependence_det_minus(lam: complex, omega: float) -> complex:
    """det [ T_lambda(0) chi_- | chi_+ ]: vanishes exactly at the two point
    eigenvalues with |z_+| < 1 (negative-real-part pair).

    Closed form -2 + sqrt2 * P + sqrt2 / P with P = det_parameter_minus,
    cross-checked against the literal 2x2 determinant.
    """
    lam = _check_lambda(lam)
    omega = _check_omega(omega)
    chi_p, chi_m = bulk_eigenvectors(lam)
    col = transfer_matrix(lam, 0, omega) @ chi_m
    raw = col[0] * chi_p[1] - col[1] * chi_p[0]
    p = det_parameter_minus(lam, omega)
    if p == 0:
        raise ValueError("degenerate parameter in dependence determinant")
    closed = -2.0 + _SQRT2 * p + _SQRT2 / p
    return _cross_checked(complex(raw), complex(closed))


def _det_plus_grid(lams: np.ndarray, omega: float) -> np.ndarray:
    """Vectorized closed form of dependence_det_plus for root scans."""
    inv = 1.0 / lams
    kappa = (-lams + inv + _branch_sqrt(lams * lams + inv * inv)) / _SQRT2
    p = (omega * inv) * kappa
    return -2.0 - _SQRT2 * p - _SQRT2 / p


def _det_minus_grid(lams: np.ndarray, omega: float) -> np.ndarray:
    """Vectorized closed form of dependence_det_minus for root scans."""
    inv = 1.0 / lams
    kappa = (-lams + inv + _branch_sqrt(lams * lams + inv * inv)) / _SQRT2
    p = (lams / omega) * kappa
    return -2.0 + _SQRT2 * p + _SQRT2 / p


# ---------------------------------------------------------------------------
# eigenvectors

class Family(enum.Enum):
    """Which dependence determinant an eigenvalue annihilates: PLUS for the
    positive-real-part pair (right tail carried by z_-), MINUS for the
    negative-real-part pair (right tail carried by z_+)."""

    PLUS = "plus"
    MINUS = "minus"


@dataclass(frozen=True)
class EigenvectorProfile:
    """Closed-form data of one bound state.

    ``sign`` is +1 when sgn(Im lambda) * sgn(omega) > 0 and -1 otherwise; it
    fixes the defect-site phase. ``gamma`` is the collinearity factor with
    T_lambda(0) chi_in = gamma chi_out across the defect. The tail multipliers
    satisfy |z_decay_right| < 1 < |z_decay_left|.
    """

    omega: float
    lam: complex
    index: int
    family: Family
    sign: int
    kappa: complex
    gamma: complex
    z_decay_right: complex
    z_decay_left: complex

    def defect_site(self) -> tuple[complex, complex]:
        """(L, R) amplitudes at x = 0 before normalization."""
        return (self.gamma, self.kappa)


def _match_eigenvalue(omega: float, lam: complex, tol: Tolerances) -> tuple[int, complex]:
    quad = eigenvalues(omega)
    dists = [abs(lam - mu) for mu in quad]
    j = int(np.argmin(dists))
    if dists[j] > tol.eig_match:
        raise ValueError(
            f"lambda {lam!r} is not a point eigenvalue for omega={omega!r}; "
            f"nearest is lambda_{j + 1} = {quad.by_index(j + 1)!r} at distance {dists[j]:.3e}"
        )
    return j + 1, quad.by_index(j + 1)


def eigenvector_profile(
    omega: float, lam: complex, tol: Tolerances | None = None
) -> EigenvectorProfile:
    """Family, sign choice, and tail multipliers for a point eigenvalue.

    ``lam`` is matched against the closed-form quadruple within
    ``tol.eig_match`` and snapped to the matched value.
    """
    tol = tol or DEFAULT_TOLERANCES
    omega = _check_omega(omega, exclude_one=True)
    lam = _check_lambda(lam)
    index, lam = _match_eigenvalue(omega, lam, tol)
    z_plus, z_minus = bulk_multipliers(lam)
    kappa, kappa_p = bulk_slopes(lam)
    sign = 1 if (lam.imag > 0) == (omega > 0) else -1
    if lam.real > 0:
        family = Family.PLUS
        gamma = sign * 1j * kappa
        return EigenvectorProfile(
            omega, lam, index, family, sign, kappa, gamma, z_minus, z_plus
        )
    family = Family.MINUS
    gamma = -sign * 1j * kappa_p
    return EigenvectorProfile(
        omega, lam, index, family, sign, kappa_p, gamma, z_plus, z_minus
    )


def eigenvector(
    omega: float,
    lam: complex,
    window: int,
    tol: Tolerances | None = None,
) -> WaveFunction:
    """Normalized bound state on sites [-window, window].

    Three-piece closed form, written with s = sign, k = kappa (or kappa' for
    the MINUS family), z_r = z_decay_right, z_l = z_decay_left:

        x >= 1 : [ s i z_r^x k, -s i z_r^{x-1} ]   (PLUS family)
        x  = 0 : [ s i k,        k ]
        x <= -1: [ z_l^{x+1},    z_l^x k ]

    and for the MINUS family the same shape with s replaced by -s in the
    right piece and at the defect. Scaled to unit norm over the window with
    the right component at the defect site real and positive.
    """
    window = int(window)
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window!r}")
    prof = eigenvector_profile(omega, lam, tol)
    lam = prof.lam
    k = prof.kappa
    z_r = prof.z_decay_right
    z_l = prof.z_decay_left
    front = prof.gamma  # s i k for PLUS, -s i kappa' for MINUS
    back = -prof.gamma / k  # pairs with the shifted right tail; equals -+ s i
    amps = np.zeros((2 * window + 1, 2), dtype=complex)
    for x in range(-window, window + 1):
        i = x + window
        if x >= 1:
            amps[i, 0] = front * z_r**x
            amps[i, 1] = back * z_r ** (x - 1)
        elif x == 0:
            amps[i, 0] = front
            amps[i, 1] = k
        else:
            amps[i, 0] = z_l ** (x + 1)
            amps[i, 1] = z_l**x * k
    state = WaveFunction(window, amps)
    r0 = state.amps[window, 1]
    state.amps *= (r0.conjugate() / abs(r0)) / state.norm()
    return state
