import pytest
from hypothesis import HealthCheck, settings

from selfaffine.specfile import bundled_path, load_boundary, load_expansion, load_rule

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

RULES = ["fibonacci", "unit-square", "figure1", "figure3"]


@pytest.fixture(scope="session")
def rules():
    return {name: load_rule(bundled_path(name)) for name in RULES}


@pytest.fixture(scope="session")
def fig1_boundary():
    return load_boundary(bundled_path("figure1-boundary"))


@pytest.fixture(scope="session")
def fig3_boundary():
    return load_boundary(bundled_path("figure3-boundary"))


@pytest.fixture(scope="session")
def expansion_specs():
    names = ["diag-3pm-sqrt2", "sqrt2", "sqrt2-pm", "sqrt2-sqrt2-msqrt2", "figure1-expansion", "figure2"]
    return {n: load_expansion(bundled_path(n)) for n in names}
