import pytest
from hypothesis import settings

from valdensity.exreal import ExtValue
from valdensity.pervin import close_lattice
from valdensity.valuation import dirac_combo

# JIT warm-up on first use makes per-example timing meaningless
settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture
def sierpinski():
    return close_lattice([["s1"]], ["s0", "s1"])


@pytest.fixture
def mu_two(sierpinski):
    return dirac_combo(sierpinski, [(ExtValue(1), "s0"), (ExtValue(1), "s1")])
