"""
Pytest configuration and shared fixtures

Catalog theories are built once per session; building the four-dimensional
ones interns a few thousand symbols.
"""
import pytest

from src.dsl import load_theory, shipped_path
from src.numverify import SamplePlan
from src.theories import catalog_entry, make_particle_mechanics


@pytest.fixture(scope="session")
def maxwell():
    """Maxwell on fixed Minkowski space"""
    return catalog_entry("maxwell").theory


@pytest.fixture(scope="session")
def maxwell_parametric():
    """Maxwell with a parametric metric g"""
    return catalog_entry("maxwell_parametric").theory


@pytest.fixture(scope="session")
def chern_simons():
    return catalog_entry("chern_simons").theory


@pytest.fixture(scope="session")
def polyakov():
    """Polyakov string with a three-dimensional Euclidean target"""
    return catalog_entry("polyakov").theory


@pytest.fixture(scope="session")
def relativistic_particle():
    return catalog_entry("relativistic_particle").theory


@pytest.fixture(scope="session")
def mechanics():
    """Generic particle mechanics on a one-dimensional configuration space"""
    return make_particle_mechanics(1)


@pytest.fixture(scope="session")
def shipped():
    """Elaborate a shipped .thy file by catalog id"""
    cache = {}

    def load(theory_id):
        if theory_id not in cache:
            cache[theory_id] = load_theory(shipped_path(theory_id))
        return cache[theory_id]

    return load


@pytest.fixture
def quick_plan():
    """A small sample plan for fast numeric checks"""
    return SamplePlan(n_samples=5, tol=1e-9, seed=7)
