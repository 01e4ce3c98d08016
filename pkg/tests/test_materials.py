import cmath
import importlib.resources

import numpy as np
import pytest
from hypothesis import given, strategies as st

import planarfed as pf
from planarfed.errors import MaterialDomainError, MaterialRangeError
from planarfed.materials import sqrt_upper


def test_sqrt_upper_branch():
    assert sqrt_upper(4.0) == 2.0
    assert sqrt_upper(-1.0) == 1j
    s = sqrt_upper(1.0 - 0.3j)
    assert s.imag >= 0.0
    assert abs(s * s - (1.0 - 0.3j)) < 1e-15


@given(st.complex_numbers(allow_nan=False, allow_infinity=False,
                          min_magnitude=1e-12, max_magnitude=1e12))
def test_sqrt_upper_properties(w):
    s = sqrt_upper(w)
    assert s.imag >= 0.0
    assert cmath.isclose(s * s, w, rel_tol=1e-12)


def test_constant_index_response():
    resp = pf.ConstantIndex(2.0 + 0.1j).evaluate(1.5)
    assert resp.index == 2.0 + 0.1j
    assert abs(resp.epsilon - (2.0 + 0.1j) ** 2) < 1e-15
    assert resp.mu == 1.0


def test_drude_silver_anchor():
    n = pf.Drude(9.04, 0.02125).evaluate(2.76).index
    assert abs(n.real - 0.013) < 1e-3
    assert abs(n.imag - 3.119) < 1e-3


@given(st.floats(min_value=0.1, max_value=20.0))
def test_drude_is_passive(e):
    eps = pf.Drude(9.04, 0.02125).evaluate(e).epsilon
    assert eps.imag > 0.0


def test_energy_must_be_positive():
    with pytest.raises(MaterialDomainError):
        pf.ConstantIndex(1.5).evaluate(0.0)
    with pytest.raises(MaterialDomainError):
        pf.Drude(9.0, 0.02).evaluate(-1.0)


def test_tabulated_nodes_and_interpolation():
    tab = pf.Tabulated(energies=(1.0, 2.0, 4.0),
                       indices=(1.5 + 0.0j, 2.0 + 0.2j, 3.0 + 0.1j))
    assert tab.evaluate(2.0).index == 2.0 + 0.2j
    mid = tab.evaluate(3.0).index
    assert abs(mid - (2.5 + 0.15j)) < 1e-14
    with pytest.raises(MaterialRangeError):
        tab.evaluate(0.5)
    with pytest.raises(MaterialRangeError):
        tab.evaluate(4.5)


def test_tabulated_validation():
    with pytest.raises(MaterialDomainError):
        pf.Tabulated(energies=(1.0,), indices=(1.5 + 0j,))
    with pytest.raises(MaterialDomainError):
        pf.Tabulated(energies=(2.0, 1.0), indices=(1.0 + 0j, 2.0 + 0j))


def test_vegard_endpoints_bit_for_bit():
    a = pf.ConstantIndex(2.51 + 0.0029j)
    b = pf.ConstantIndex(2.51 + 0.61j)
    assert pf.VegardAlloy(0.0, a, b).evaluate(2.76).index == a.evaluate(2.76).index
    assert pf.VegardAlloy(1.0, a, b).evaluate(2.76).index == b.evaluate(2.76).index


@given(st.floats(min_value=0.0, max_value=1.0))
def test_vegard_linear_in_index(x):
    a = pf.ConstantIndex(2.0 + 0.1j)
    b = pf.ConstantIndex(3.0 + 0.5j)
    n = pf.VegardAlloy(x, a, b).evaluate(2.0).index
    assert abs(n - ((1 - x) * (2.0 + 0.1j) + x * (3.0 + 0.5j))) < 1e-14


def test_vegard_fraction_domain():
    a = pf.ConstantIndex(2.0)
    with pytest.raises(MaterialDomainError):
        pf.VegardAlloy(1.5, a, a)


def test_load_dispersion_table(tmp_path):
    p = tmp_path / "mat.nt"
    p.write_text("# comment line\n1.0 1.5 0.0\n\n2.0 1.6 0.01\n3.0 1.7 0.02\n")
    tab = pf.load_dispersion_table(str(p), label="mat")
    assert tab.evaluate(2.0).index == 1.6 + 0.01j

    bad = tmp_path / "bad.nt"
    bad.write_text("1.0 1.5\n")
    with pytest.raises(MaterialDomainError):
        pf.load_dispersion_table(str(bad))


def test_bundled_tables_cover_demo_band():
    data = importlib.resources.files("planarfed").joinpath("data")
    for name, n276 in [("gan.nt", 2.51 + 0.0029j),
                       ("sapphire.nt", 1.78 + 0.0j)]:
        tab = pf.load_dispersion_table(str(data / name), label=name)
        assert tab.energies[0] <= 1.0 and tab.energies[-1] >= 6.0
        assert abs(tab.evaluate(2.76).index - n276) < 1e-12
    gan = pf.load_dispersion_table(str(data / "gan.nt"))
    inn = pf.load_dispersion_table(str(data / "inn.nt"))
    alloy = pf.VegardAlloy(0.15, gan, inn).evaluate(2.76).index
    assert abs(alloy - (2.51 + 0.094j)) < 1e-12
