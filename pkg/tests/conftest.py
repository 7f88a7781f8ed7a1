import pytest

import hallie
from hallie import ARFamily, load_algebra


@pytest.fixture(scope="session")
def algebras():
    """Parsed shipped algebras, keyed by name."""
    return {name: load_algebra(hallie.example_algebra_path(name))
            for name in hallie.example_algebra_names()}


@pytest.fixture(scope="session")
def families(algebras):
    """One ARFamily per shipped algebra, shared to reuse knits and counts."""
    return {name: ARFamily(spec) for name, spec in algebras.items()}
