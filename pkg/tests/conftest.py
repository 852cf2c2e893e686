# tests/conftest.py
import pytest

from core.lattice_core import diagonal, direct_sum, e8, hyperbolic_plane
from core.riemann_roch import SurfaceData


@pytest.fixture(autouse=True)
def isolated_db(tmp_path, monkeypatch):
    """Every test gets its own settings and history database."""
    path = tmp_path / "nslat.sqlite"
    monkeypatch.setenv("NSLAT_DB", str(path))
    return path


@pytest.fixture
def plane():
    return SurfaceData(diagonal([1]), (-3,))


@pytest.fixture
def quadric():
    return SurfaceData(hyperbolic_plane(), (-2, -2))


@pytest.fixture
def plane_blown_up_once():
    return SurfaceData(diagonal([1, -1]), (-3, 1))


@pytest.fixture
def enriques_lattice():
    return direct_sum(hyperbolic_plane(), e8(-1))
