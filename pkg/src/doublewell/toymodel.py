"""Two-state reduction: one level per well coupled by a tunnelling element t.

The reduced Hamiltonian has eigenvalues (E_L + E_R)/2 -+ sqrt(delta^2 + t^2)
with delta = (E_L - E_R)/2, and ground-state well weights

    |c_L|^2 = (1 - delta / sqrt(delta^2 + t^2)) / 2
    |c_R|^2 = (1 + delta / sqrt(delta^2 + t^2)) / 2.

For the square double well delta is identified with (vl - vr)/2 of the
potential; the small difference between level offset and floor offset is
ignored. Inverting the weight formula at a single measured point yields t in
closed form; the exponential scale of t itself comes from the isolated-well
bound state (value-and-slope matching at the well edge gives
k cot(k w) = -kappa) through the barrier attenuation e^(-kappa b).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DomainError,
    InconsistentDataError,
    NumericalError,
    ValidationError,
)
from .potential import PotentialSpec

__all__ = [
    "TwoStateModel",
    "OccupancyCurve",
    "energy_pair",
    "occupancies",
    "fit_t",
    "fit_from_sweep",
    "occupancy_curve",
    "estimate_t_exponential",
]


@dataclass(frozen=True)
class TwoStateModel:
    """Isolated-well levels e_left, e_right and tunnelling element t > 0."""

    e_left: float
    e_right: float
    t: float

    def __post_init__(self):
        if not self.t > 0.0:
            raise ValidationError(f"tunnelling element must be positive, got t={self.t}")

    @property
    def delta(self) -> float:
        return (self.e_left - self.e_right) / 2.0


@dataclass(frozen=True)
class OccupancyCurve:
    """Well weights of the two-state ground state versus delta/t."""

    ratios: np.ndarray
    p_left: np.ndarray
    p_right: np.ndarray

    def to_csv(self, path) -> None:
        import csv

        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["delta_over_t", "p_left", "p_right"])
            for row in zip(self.ratios, self.p_left, self.p_right):
                writer.writerow([format(v, ".17g") for v in row])


def energy_pair(model: TwoStateModel) -> tuple[float, float]:
    """(E-, E+) of the coupled system; the gap is exactly 2 sqrt(delta^2 + t^2)."""
    mean = (model.e_left + model.e_right) / 2.0
    half_gap = math.hypot(model.delta, model.t)
    return mean - half_gap, mean + half_gap


def _weights_from_s(s: float) -> tuple[float, float]:
    # complement the dominant side so the pair sums to 1 exactly
    if s >= 0.0:
        p_right = (1.0 + s) / 2.0
        return 1.0 - p_right, p_right
    p_left = (1.0 - s) / 2.0
    return p_left, 1.0 - p_left


def occupancies(model: TwoStateModel) -> tuple[float, float]:
    """Ground-state weights (|c_L|^2, |c_R|^2); they sum to 1 exactly."""
    s = model.delta / math.hypot(model.delta, model.t)
    return _weights_from_s(s)


def fit_t(delta: float, p_left_measured: float) -> float:
    """Tunnelling element from one measured left-well weight.

    Closed-form inversion of the weight formula: with r = 1 - 2 p_left,
    t = |delta| sqrt(1 - r^2) / |r|, computed as
    2 |delta| sqrt(p (1 - p)) / |r| for accuracy near saturation.

    Raises InconsistentDataError when the point cannot come from the model
    (weight on the wrong side of 1/2 for the sign of delta, or delta = 0).
    """
    if not 0.0 < p_left_measured < 1.0:
        raise InconsistentDataError(
            f"p_left must lie strictly inside (0, 1), got {p_left_measured}"
        )
    if delta == 0.0:
        raise InconsistentDataError("a symmetric point (delta = 0) cannot determine t")
    r = 1.0 - 2.0 * p_left_measured
    if r == 0.0 or (r > 0.0) != (delta > 0.0):
        raise InconsistentDataError(
            f"p_left={p_left_measured} is inconsistent with delta={delta}: "
            "the lower well must hold the larger weight"
        )
    return (
        2.0
        * abs(delta)
        * math.sqrt(p_left_measured * (1.0 - p_left_measured))
        / abs(r)
    )


def fit_from_sweep(deltas, p_lefts) -> tuple[float, int]:
    """Fit t from the best-conditioned sweep point.

    Picks the asymmetric row whose p_left is closest to 0.25 (away from both
    the flat symmetric region and the saturated tails) and returns
    (t, row_index).
    """
    deltas = np.asarray(deltas, dtype=np.float64)
    p_lefts = np.asarray(p_lefts, dtype=np.float64)
    if deltas.shape != p_lefts.shape or deltas.ndim != 1:
        raise ValidationError("deltas and p_lefts must be 1-d arrays of equal length")
    usable = np.flatnonzero(deltas != 0.0)
    if usable.size == 0:
        raise InconsistentDataError("no asymmetric rows to fit from")
    index = int(usable[np.argmin(np.abs(p_lefts[usable] - 0.25))])
    return fit_t(deltas[index], p_lefts[index]), index


def occupancy_curve(t: float, ratios) -> OccupancyCurve:
    """Weight curves versus delta/t (t only validates scale; the curves
    depend on the ratio alone)."""
    if not t > 0.0:
        raise ValidationError(f"tunnelling element must be positive, got t={t}")
    ratios = np.asarray(ratios, dtype=np.float64)
    p_left = np.empty_like(ratios)
    p_right = np.empty_like(ratios)
    for i, x in enumerate(ratios):
        p_left[i], p_right[i] = _weights_from_s(x / math.hypot(x, 1.0))
    return OccupancyCurve(ratios=ratios, p_left=p_left, p_right=p_right)


def _isolated_ground_energy(spec: PotentialSpec) -> float:
    """Ground level of one well with a hard outer wall and the barrier as a
    soft step: root of k cos(kw) + kappa sin(kw) in the first bound window."""
    w, floor = spec.w, spec.vl
    lower = floor + 1.0 / (4.0 * w * w)
    upper = min(spec.v0, floor + 1.0 / (w * w))
    if spec.v0 <= lower:
        raise DomainError(
            f"barrier v0={spec.v0} is too shallow for a bound level "
            f"(needs v0 > {lower})"
        )

    def h(e: float) -> float:
        k = math.pi * math.sqrt(e - floor)
        kappa = math.pi * math.sqrt(spec.v0 - e)
        return k * math.cos(k * w) + kappa * math.sin(k * w)

    lo = lower + 1e-12 * (1.0 + abs(lower))
    hi = upper - 1e-12 * (1.0 + abs(upper))
    flo, fhi = h(lo), h(hi)
    if not (flo > 0.0 and fhi < 0.0):
        raise NumericalError(
            f"isolated-well bracket lost its sign change on ({lo}, {hi})"
        )
    while True:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            return mid
        fm = h(mid)
        if fm == 0.0:
            return mid
        if fm < 0.0:
            hi = mid
        else:
            lo = mid


def estimate_t_exponential(spec: PotentialSpec) -> tuple[float, float]:
    """Barrier decay constant and attenuation factor of the splitting.

    Solves the isolated-well quantization for the single-well ground energy
    e_iso, then returns (kappa, e^(-kappa b)) with kappa evaluated at e_iso.
    The factor carries the exponential dependence of t on barrier height and
    width; the order-one prefactor is deliberately not modeled.
    """
    if not spec.symmetric:
        raise ValidationError("the exponential estimate is defined for symmetric wells")
    e_iso = _isolated_ground_energy(spec)
    kappa = math.pi * math.sqrt(spec.v0 - e_iso)
    return kappa, math.exp(-kappa * spec.b)
