"""Quantitative mean-value checks: Carlson identity, truncation tails, and
Besicovitch mean-square distances.

These operations make the proof's bookkeeping measurable at desk scale: the
time-averaged square of a Dirichlet-series remainder against its coefficient
sum, the Kronecker-restricted double integral against its prime-tail envelope
(the implied constant is reported, never asserted), the area-to-sup bound for
analytic functions, and the mean-square distance between the sup-difference
functional built from L and the one built from partial sums.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .characters import DirichletCharacter, char_value
from .diophantine import KroneckerTarget, kronecker_membership
from .density import ShiftFamily, _validate_cap
from .errors import DomainError
from .lfunc import (
    DEFAULT_CONFIG,
    EvaluatorConfig,
    StripRegion,
    hurwitz_zeta,
    l_partial_sum,
    l_value,
    log_l_truncated_ratio,
)
from .primes import prime_zeta_tail
from .sampling import block_slices, map_blocks, uniform_samples

__all__ = [
    "TrigPolynomial",
    "trig_poly_eval",
    "max_modulus_bound",
    "coprime_tail_sum",
    "carlson_mean_value",
    "CarlsonResult",
    "truncation_tail_check",
    "b2_distance",
    "b2_ladder",
]


@dataclass(frozen=True)
class TrigPolynomial:
    """Finite exponential sum P(tau) = sum_n a_n exp(i lambda_n tau)."""

    frequencies: tuple
    coefficients: tuple

    def __post_init__(self):
        if len(self.frequencies) != len(self.coefficients):
            raise DomainError("frequencies and coefficients must have equal length")


def trig_poly_eval(poly: TrigPolynomial, tau):
    tau = np.asarray(tau, dtype=float)
    freqs = np.asarray(poly.frequencies, dtype=float)
    coeffs = np.asarray(poly.coefficients, dtype=complex)
    if len(freqs) == 0:
        out = np.zeros(tau.shape, dtype=complex)
        return complex(out) if tau.ndim == 0 else out
    out = (coeffs * np.exp(1j * np.multiply.outer(tau, freqs))).sum(axis=-1)
    return complex(out) if tau.ndim == 0 else out


def max_modulus_bound(area_integral: float, margin: float) -> float:
    """sup bound sqrt(eps/pi)/d for an analytic f with integral_U |f|^2 <= eps,
    K at distance d from the boundary of U."""
    if area_integral < 0:
        raise DomainError("area integral must be nonnegative")
    if margin <= 0:
        raise DomainError("margin must be positive")
    return math.sqrt(area_integral / math.pi) / margin


def coprime_tail_sum(chi: DirichletCharacter, y: float, exponent: float) -> float:
    """sum_{n > y} |chi(n)| / n^exponent, requires exponent > 1.

    Computed as zeta(exponent) * prod_{p | q}(1 - p^-exponent) minus the head.
    """
    if exponent <= 1.0:
        raise DomainError("tail sum needs exponent > 1")
    q = chi.modulus
    total = hurwitz_zeta(complex(exponent), 1.0).real
    for p in range(2, q + 1):
        if q % p == 0 and all(p % r for r in range(2, p)):
            total *= 1.0 - p ** (-exponent)
    head = sum(
        n ** (-exponent)
        for n in range(1, int(math.floor(y)) + 1)
        if chi.value_table[(n - 1) % q] is not None
    )
    return total - head


@dataclass(frozen=True)
class CarlsonResult:
    empirical: float
    theoretical: float
    stderr: float

    @property
    def relative_gap(self) -> float:
        return abs(self.empirical - self.theoretical) / self.theoretical


def carlson_mean_value(
    chi: DirichletCharacter,
    s: complex,
    y: float,
    x: float = 1.0,
    T: float = 5000.0,
    n_samples: int = 50000,
    seed: int = 0,
    cfg: EvaluatorConfig = DEFAULT_CONFIG,
    threads: int = 1,
) -> CarlsonResult:
    """Time-averaged |L - L_y|^2 along vertical shifts against its limit.

    empirical: (1/T) int_0^T |L(s+ix tau, chi) - L_y(s+ix tau, chi)|^2 dtau by
    Monte Carlo, where L_y is the Dirichlet partial sum over n <= y (the
    truncation for which the limit equals the tail coefficient sum exactly).
    theoretical: sum_{n > y} |chi(n)| / n^{2 sigma}.
    """
    s = complex(s)
    if not 0.5 < s.real < 1.0:
        raise DomainError("carlson_mean_value requires 1/2 < sigma < 1")
    if x == 0:
        raise DomainError("shift scale x must be nonzero")
    if T <= 0 or n_samples < 2:
        raise DomainError("T must be positive and n_samples >= 2")
    if abs(x) * T + abs(s.imag) > cfg.im_cap:
        raise DomainError(f"T*|x| exceeds evaluator cap {cfg.im_cap:.3g}")
    taus = uniform_samples(seed, n_samples, 0.0, T)
    n_trunc = int(math.floor(y))

    def work(i0, i1):
        pts = s + 1j * x * taus[i0:i1]
        diff = l_value(pts, chi, cfg) - l_partial_sum(pts, chi, n_trunc)
        return np.abs(diff) ** 2

    sq = np.concatenate(map_blocks(work, n_samples, threads))
    empirical = float(np.mean(sq))
    stderr = float(np.std(sq, ddof=1) / math.sqrt(n_samples))
    theoretical = coprime_tail_sum(chi, y, 2.0 * s.real)
    return CarlsonResult(empirical, theoretical, stderr)


def truncation_tail_check(
    chi: DirichletCharacter,
    target: KroneckerTarget,
    region: StripRegion,
    y: float,
    T: float,
    n_samples: int = 20000,
    seed: int = 0,
    cfg: EvaluatorConfig = DEFAULT_CONFIG,
    u_grid: tuple = (6, 6),
    threads: int = 1,
) -> dict:
    """Kronecker-restricted tail average against its prime-tail envelope.

    empirical: (1/T) int over the Kronecker set of
    int_U sum_k |log(L_y/L_v)(s + i d_k tau)|^2 dsigma dt, with the U integral
    by midpoint rule; the shifts are the target's independent ones.
    bound: meas R * sum_{p > v} p^{-2 sigma_1} with sigma_1 the left edge of U.
    The ratio empirical/bound estimates the implied constant (reported only).
    """
    v = target.prime_bound
    if y < v:
        raise DomainError("truncation_tail_check requires y >= v")
    taus = uniform_samples(seed, n_samples, 0.0, T)
    mask = np.zeros(n_samples, dtype=bool)
    for i0, i1 in block_slices(n_samples):
        mask[i0:i1] = kronecker_membership(taus[i0:i1], target)
    hit_taus = taus[mask]
    centers, cell_area = region.u_grid(*u_grid)
    sigma1 = region.u_rect[0]
    tail = prime_zeta_tail(2.0 * sigma1, v)
    bound = target.expected_density * tail
    if y == v or len(hit_taus) == 0:
        empirical = 0.0
    else:
        def work(i0, i1):
            sub = hit_taus[i0:i1]
            acc = np.zeros(len(sub))
            for dk in target.shifts:
                pts = centers[None, :] + 1j * dk * sub[:, None]
                acc += (np.abs(log_l_truncated_ratio(pts, chi, v, y, cfg)) ** 2).sum(axis=1)
            return acc * cell_area

        integrals = np.concatenate(map_blocks(work, len(hit_taus), threads))
        empirical = float(np.sum(integrals) / n_samples)
    report = {
        "empirical": empirical,
        "bound": bound,
        "ratio": empirical / bound if bound > 0 else 0.0,
        "n_samples": n_samples,
        "n_hits": int(len(hit_taus)),
        "v": float(v),
        "y": float(y),
        "sigma1": sigma1,
        "warning": None,
    }
    if len(hit_taus) < 30:
        report["warning"] = (
            f"only {len(hit_taus)} Kronecker hits out of {n_samples} samples; "
            "empirical average is noisy"
        )
    return report


def b2_distance(
    family: ShiftFamily,
    n_partial: int,
    T: float,
    region: StripRegion,
    cfg: EvaluatorConfig = DEFAULT_CONFIG,
    n_samples: int = 2000,
    seed: int = 0,
    pair: tuple = (0, 1),
    threads: int = 1,
):
    """Mean-square distance (1/2T) int_{-T}^{T} |f - f_N|^2 dtau by Monte Carlo.

    f(tau) is the sup over the K grid of |L(s+i d_j tau, chi_j) -
    L(s+i d_k tau, chi_k)| for the selected pair, f_N the same functional with
    partial sums of length n_partial.  Two-sided in tau, as the mean-square
    almost-periodicity distance is.  Returns (estimate, stderr).
    """
    if n_partial < 1:
        raise DomainError("n_partial must be >= 1")
    j, k = pair
    _validate_cap(family, region, T, cfg)
    taus = uniform_samples(seed, n_samples, -T, T)
    grid, _ = region.grid_points(refine=False)

    def work(i0, i1):
        sub = taus[i0:i1]
        vals = []
        vals_n = []
        for idx in (j, k):
            dk, chik = family.shifts[idx], family.characters[idx]
            pts = grid[None, :] + 1j * dk * sub[:, None]
            vals.append(l_value(pts, chik, cfg))
            vals_n.append(l_partial_sum(pts, chik, n_partial))
        f = np.abs(vals[0] - vals[1]).max(axis=1)
        f_n = np.abs(vals_n[0] - vals_n[1]).max(axis=1)
        return (f - f_n) ** 2

    sq = np.concatenate(map_blocks(work, n_samples, threads))
    return float(np.mean(sq)), float(np.std(sq, ddof=1) / math.sqrt(len(sq)))


def b2_ladder(
    family: ShiftFamily,
    n_ladder,
    T: float,
    region: StripRegion,
    cfg: EvaluatorConfig = DEFAULT_CONFIG,
    n_samples: int = 2000,
    seed: int = 0,
    pair: tuple = (0, 1),
    threads: int = 1,
) -> list:
    """b2_distance across an N ladder on one shared tau sample set."""
    return [
        b2_distance(family, n, T, region, cfg, n_samples, seed, pair, threads)
        for n in n_ladder
    ]
