"""Shared fixtures: canonical well shapes and the expensive solves they need.

Everything here is session scoped so the jit warmup and the N=400
diagonalizations happen once; tests must treat the returned objects as
read-only.
"""

import numpy as np
import pytest
from hypothesis import settings

from doublewell import analytic, observables, spectral, toymodel
from doublewell.potential import PotentialSpec

settings.register_profile("suite", deadline=None, max_examples=40)
settings.load_profile("suite")

BARRIER = 0.2

# Right-floor tilts used by the shipped sweeps, weakest localization first.
LEGEND_500 = (0.0, -1e-7, -5e-7, -1e-6, -5e-6, -1e-5)
LEGEND_1000 = (0.0, -1e-10, -3e-10, -1e-9, -2e-9, -5e-9, -1e-8, -3e-8)


@pytest.fixture(scope="session")
def sym500():
    return PotentialSpec(v0=500.0, vl=0.0, vr=0.0, b=BARRIER)


@pytest.fixture(scope="session")
def flea500():
    return PotentialSpec(v0=500.0, vl=0.0, vr=-1e-5, b=BARRIER)


@pytest.fixture(scope="session")
def sym1000():
    return PotentialSpec(v0=1000.0, vl=0.0, vr=0.0, b=BARRIER)


@pytest.fixture(scope="session")
def sol500(sym500):
    return spectral.solve(sym500, 400)


@pytest.fixture(scope="session")
def sol_flea(flea500):
    return spectral.solve(flea500, 400)


@pytest.fixture(scope="session")
def levels500(sym500):
    return analytic.find_levels(sym500, 2)


@pytest.fixture(scope="session")
def levels_flea(flea500):
    return analytic.find_levels(flea500, 2)


@pytest.fixture(scope="session")
def levels1000(sym1000):
    return analytic.find_levels(sym1000, 2)


@pytest.fixture(scope="session")
def ground500(sym500, levels500):
    return analytic.assemble_state(sym500, levels500[0])


@pytest.fixture(scope="session")
def excited500(sym500, levels500):
    return analytic.assemble_state(sym500, levels500[1])


@pytest.fixture(scope="session")
def ground_flea(flea500, levels_flea):
    return analytic.assemble_state(flea500, levels_flea[0])


def _occupancy_sweep(v0, tilts):
    """Analytic ground-state occupancies along a list of right-floor tilts.

    Returns parallel arrays (vr, delta, p_left, p_right, energy).
    """
    rows = []
    for vr in tilts:
        spec = PotentialSpec(v0=v0, vl=0.0, vr=vr, b=BARRIER)
        e0 = analytic.find_levels(spec, 1)[0]
        occ = observables.occupancy(analytic.assemble_state(spec, e0), spec)
        rows.append((vr, (0.0 - vr) / 2.0, occ.p_left, occ.p_right, e0))
    return tuple(np.array(col) for col in zip(*rows))


@pytest.fixture(scope="session")
def sweep500():
    return _occupancy_sweep(500.0, LEGEND_500)


@pytest.fixture(scope="session")
def sweep1000():
    return _occupancy_sweep(1000.0, LEGEND_1000)


@pytest.fixture(scope="session")
def fit500(sweep500):
    _, deltas, p_lefts, _, _ = sweep500
    t, index = toymodel.fit_from_sweep(deltas, p_lefts)
    return t, index


@pytest.fixture(scope="session")
def fit1000(sweep1000):
    _, deltas, p_lefts, _, _ = sweep1000
    t, index = toymodel.fit_from_sweep(deltas, p_lefts)
    return t, index
