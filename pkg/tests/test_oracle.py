import math

import pytest

from conftest import SQRT2, TEST_NORMS
from normplane import (
    GridSpec,
    InvalidInput,
    ZeroVector,
    delta,
    james,
    oracle_delta,
    oracle_james,
    oracle_partner,
    oracle_rho,
    oracle_schaffer,
    rho,
    schaffer,
)

GRID = GridSpec(n_directions=2048)


@pytest.mark.parametrize("name, want", [("hexagon", 22 / 13), ("euclidean", SQRT2), ("square", 2.0)])
def test_james(name, want):
    assert oracle_james(TEST_NORMS[name], GRID) == pytest.approx(want, abs=3e-3)


@pytest.mark.parametrize("name, want", [("square", 1.0), ("euclidean", SQRT2)])
def test_schaffer(name, want):
    assert oracle_schaffer(TEST_NORMS[name], GRID) == pytest.approx(want, abs=3e-3)


def test_schaffer_matches_fast_path(hexagon):
    assert oracle_schaffer(hexagon, GRID) == pytest.approx(schaffer(hexagon), abs=3e-3)


def test_moduli(square, euclid):
    assert oracle_delta(square, 1.0, GRID) == pytest.approx(0.0, abs=1e-9)
    assert oracle_delta(euclid, 1.0, GRID) == pytest.approx(1 - math.sqrt(3) / 2, abs=3e-3)
    assert oracle_rho(euclid, 1.0, GRID) == pytest.approx(1 - math.sqrt(3) / 2, abs=3e-3)


@pytest.mark.parametrize("name", sorted(TEST_NORMS))
def test_moduli_zero_and_agreement(name):
    norm = TEST_NORMS[name]
    assert oracle_delta(norm, 0.0, GRID) == pytest.approx(0.0, abs=1e-12)
    for eps in (0.5, 1.5):
        assert oracle_delta(norm, eps, GRID) == pytest.approx(delta(norm, eps), abs=3e-3)
        assert oracle_rho(norm, eps, GRID) == pytest.approx(rho(norm, eps), abs=3e-3)


@pytest.mark.parametrize("name", ["hexagon", "octagon", "regular6", "l3"])
def test_james_agreement(name):
    norm = TEST_NORMS[name]
    assert oracle_james(norm, GRID) == pytest.approx(james(norm), abs=3e-3)


def test_unrefined_grid_is_monotone_in_density(hexagon):
    # Doubling n nests the grids, so the raw grid maximum cannot decrease.
    grids = [GridSpec(n_directions=n, refine_rounds=0) for n in (64, 128, 256, 512)]
    js = [oracle_james(hexagon, g) for g in grids]
    ss = [oracle_schaffer(hexagon, g) for g in grids]
    assert all(b >= a for a, b in zip(js, js[1:]))
    assert all(b <= a for a, b in zip(ss, ss[1:]))
    assert js[-1] <= 22 / 13 + 1e-12


def test_deterministic(octagon):
    assert oracle_james(octagon, GRID) == oracle_james(octagon, GRID)


@pytest.mark.parametrize(
    "name, x, want",
    [("hexagon", (1, -1), (9 / 13, 21 / 13)), ("euclidean", (1, 0), (0, 1)), ("square", (1, 0), (0, 1))],
)
def test_partner(name, x, want):
    y = oracle_partner(TEST_NORMS[name], x, GRID)
    assert (y.x, y.y) == pytest.approx(want, abs=1e-6)


def test_partner_rejects_zero(hexagon):
    with pytest.raises(ZeroVector):
        oracle_partner(hexagon, (0, 0))


@pytest.mark.parametrize("kw", [{"n_directions": 4}, {"tolerance": 0.0}])
def test_gridspec_validation(kw):
    with pytest.raises(InvalidInput):
        GridSpec(**kw)
