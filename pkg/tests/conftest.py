"""Shared fixtures: random passive stacks and the bundled demo structures."""
import importlib.resources

import numpy as np
import pytest

import planarfed as pf


def random_lossy_stack(rng, n_layers=None, excitation=None):
    """A 3-5 layer stack of random lossy dielectrics/metals."""
    if n_layers is None:
        n_layers = int(rng.integers(3, 6))
    layers = []
    for _ in range(n_layers):
        nr = rng.uniform(0.5, 3.5)
        ni = rng.uniform(0.01, 1.5)
        layers.append(pf.Layer(pf.ConstantIndex(complex(nr, ni)), excitation=excitation))
    zs = np.concatenate([[0.0], np.cumsum(rng.uniform(5.0, 60.0, n_layers - 2))])
    zs -= zs[-1] / 2.0
    return pf.LayerStack(layers, zs)


def demo_scenario(case):
    text = (importlib.resources.files("planarfed")
            .joinpath("data", f"demo_{case}.scn").read_text())
    return pf.parse_scenario(text, label=f"demo_{case}")


@pytest.fixture(scope="session")
def thermal_stack():
    return demo_scenario("thermal").build_stack()


@pytest.fixture(scope="session")
def biased_stack():
    return demo_scenario("biased").build_stack()


@pytest.fixture
def rng():
    return np.random.default_rng(20260826)
