"""Asymmetric square double well inside an infinite box.

Everything is dimensionless: energies in units of the ground-state energy of
the empty box (pi^2 hbar^2 / (2 m a^2)), lengths in units of the box width a.
In these units the wavenumbers of a state with energy e are

    k = pi * sqrt(e - vL)   (left well)
    q = pi * sqrt(e - vR)   (right well)
    kappa = pi * sqrt(v0 - e)   (barrier, for e < v0)

The geometry is a barrier of width b centered in the box, flanked by two
wells of width w = (1 - b)/2 whose floors sit at vL and vR.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, ValidationError

__all__ = ["PotentialSpec", "evaluate", "make_symmetric", "load_spec"]


@dataclass(frozen=True)
class PotentialSpec:
    """Geometry and levels of the double well.

    Fields:
        v0: barrier height.
        vl: left-well floor.
        vr: right-well floor.
        b: barrier width (fraction of the box).

    The barrier must not sit below either well floor; equality is allowed so
    the degenerate free-box case (v0 = vl = vr) stays constructible, but the
    analytic solver needs a non-empty sub-barrier window max(vl, vr) < e < v0.
    """

    v0: float
    vl: float
    vr: float
    b: float

    def __post_init__(self):
        if not 0.0 < self.b < 1.0:
            raise ValidationError(f"barrier width must lie in (0, 1), got b={self.b}")
        if self.v0 < max(self.vl, self.vr):
            raise ValidationError(
                f"barrier height v0={self.v0} is below a well floor "
                f"(vl={self.vl}, vr={self.vr})"
            )

    @property
    def w(self) -> float:
        """Width of each well, (1 - b)/2."""
        return (1.0 - self.b) / 2.0

    @property
    def delta(self) -> float:
        """Asymmetry parameter (vl - vr)/2; positive means the right well is lower."""
        return (self.vl - self.vr) / 2.0

    @property
    def symmetric(self) -> bool:
        return self.vl == self.vr


def evaluate(spec: PotentialSpec, x: float) -> float:
    """Potential value at position x in [0, 1].

    The barrier edges belong to the barrier: vl on [0, w), v0 on [w, w+b],
    vr on (w+b, 1]. Positions outside the box hit the infinite walls.
    """
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"position x={x} is outside the box [0, 1]")
    w = spec.w
    if x < w:
        return spec.vl
    if x <= w + spec.b:
        return spec.v0
    return spec.vr


def make_symmetric(v0: float, b: float) -> PotentialSpec:
    """Symmetric well with both floors at zero."""
    if v0 <= 0.0:
        raise ValidationError(f"barrier height must be positive, got v0={v0}")
    return PotentialSpec(v0=v0, vl=0.0, vr=0.0, b=b)


_CONFIG_KEYS = {"v0": "v0", "vL": "vl", "vR": "vr", "b": "b"}


def load_spec(path) -> PotentialSpec:
    """Read a spec from a plain-text config file.

    Format: one `key=value` per line with keys v0, vL, vR, b; blank lines and
    lines starting with # are ignored. Missing vL/vR default to 0.
    """
    values = {"vl": 0.0, "vr": 0.0}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            key = key.strip()
            if not sep or key not in _CONFIG_KEYS:
                raise ValidationError(f"{path}:{lineno}: expected key=value with key in "
                                      f"{sorted(_CONFIG_KEYS)}, got {line!r}")
            try:
                values[_CONFIG_KEYS[key]] = float(value.strip())
            except ValueError as exc:
                raise ValidationError(f"{path}:{lineno}: bad number {value.strip()!r}") from exc
    for required in ("v0", "b"):
        if required not in values:
            raise ValidationError(f"{path}: missing required key {required!r}")
    return PotentialSpec(**values)
