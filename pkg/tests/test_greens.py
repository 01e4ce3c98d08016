import numpy as np
import pytest

import planarfed as pf
from planarfed.errors import CoincidenceError
from planarfed.greens import TENSOR_KINDS, greens_tensor

from conftest import random_lossy_stack

RECIP_D = np.diag([-1.0, 1.0, -1.0])
PAIRED = {"ee": "ee", "mm": "mm", "em": "me", "me": "em"}


def _vacuum_stack():
    return pf.LayerStack([pf.Layer(pf.ConstantIndex(1.0)),
                          pf.Layer(pf.ConstantIndex(1.0))], [0.0])


def test_free_space_tensor():
    """Uniform vacuum: every interface coefficient vanishes and the tensor
    reduces to the homogeneous-medium form."""
    E, z, zp = 2.0, 7.0, -3.0
    k0 = pf.vacuum_wavenumber(E)
    K = 0.6 * k0
    ctx = pf.spectral_context(_vacuum_stack(), K=K, omega_ev=E, loss_floor=0.0)
    co = pf.stack_coefficients(ctx)
    kz = ctx.kz[0]
    xi = 1j * np.exp(1j * kz * abs(z - zp)) / (2.0 * kz)
    s = 1.0 if z > zp else -1.0
    g = greens_tensor(ctx, co, "ee", z, zp).entries
    assert abs(g[0, 0] - xi) < 1e-12 * abs(xi)
    assert abs(g[1, 1] - (kz * kz / (k0 * k0)) * xi) < 1e-12 * abs(xi)
    assert abs(g[2, 2] - (K * K / (k0 * k0)) * xi) < 1e-12 * abs(xi)
    assert abs(g[1, 2] + s * (K / k0) * (kz / k0) * xi) < 1e-12 * abs(xi)
    assert abs(g[2, 1] + s * (K / k0) * (kz / k0) * xi) < 1e-12 * abs(xi)
    assert np.allclose(greens_tensor(ctx, co, "mm", z, zp).entries, g)


def test_sparsity_patterns(rng):
    stack = random_lossy_stack(rng, n_layers=4)
    ctx = pf.spectral_context(stack, K=0.02, omega_ev=2.0)
    co = pf.stack_coefficients(ctx)
    direct_zero = [(0, 1), (0, 2), (1, 0), (2, 0)]
    exchange_zero = [(0, 0), (1, 1), (1, 2), (2, 1), (2, 2)]
    for kind in ("ee", "mm"):
        g = greens_tensor(ctx, co, kind, 3.0, -11.0).entries
        assert all(g[i] == 0.0 for i in direct_zero)
    for kind in ("em", "me"):
        g = greens_tensor(ctx, co, kind, 3.0, -11.0).entries
        assert all(g[i] == 0.0 for i in exchange_zero)


def test_coincidence_rejected(rng):
    stack = random_lossy_stack(rng)
    ctx = pf.spectral_context(stack, K=0.01, omega_ev=2.0)
    co = pf.stack_coefficients(ctx)
    with pytest.raises(CoincidenceError):
        greens_tensor(ctx, co, "ee", 1.0, 1.0)


def _recip_err(ctx, co, kind, z, zp):
    g = greens_tensor(ctx, co, kind, z, zp).entries
    h = greens_tensor(ctx, co, PAIRED[kind], zp, z).entries
    want = RECIP_D @ g.T @ RECIP_D
    scale = max(np.abs(g).max(), np.abs(h).max(), 1e-300)
    return np.abs(h - want).max() / scale


def test_reciprocity_random_stacks(rng):
    E = 2.3
    k0 = pf.vacuum_wavenumber(E)
    worst = 0.0
    for _ in range(25):
        stack = random_lossy_stack(rng)
        lo, hi = stack.interfaces[0] - 40.0, stack.interfaces[-1] + 40.0
        z, zp = rng.uniform(lo, hi, 2)
        if z == zp:
            continue
        ctx = pf.spectral_context(stack, K=rng.uniform(0.0, 3.0) * k0, omega_ev=E)
        co = pf.stack_coefficients(ctx)
        for kind in TENSOR_KINDS:
            worst = max(worst, _recip_err(ctx, co, kind, z, zp))
    assert worst < 1e-12


def test_tangential_continuity(biased_stack):
    """Transverse field rows are continuous across an interface between the
    evaluation point's neighbours; the normal electric row jumps by eps."""
    E = 2.786
    k0 = pf.vacuum_wavenumber(E)
    ctx = pf.spectral_context(biased_stack, K=1.3 * k0, omega_ev=E)
    co = pf.stack_coefficients(ctx)
    h = 1e-7
    zp = -41.0
    for z_if in (-40.0, -20.0, 0.0):
        lo_side = {k: greens_tensor(ctx, co, k, z_if - h, zp).entries
                   for k in TENSOR_KINDS}
        hi_side = {k: greens_tensor(ctx, co, k, z_if + h, zp).entries
                   for k in TENSOR_KINDS}
        l_lo = biased_stack.locate_layer(z_if - h)
        l_hi = biased_stack.locate_layer(z_if + h)
        for kind in TENSOR_KINDS:
            a, b = lo_side[kind], hi_side[kind]
            scale = max(np.abs(a).max(), np.abs(b).max())
            # rows 0, 1 carry transverse E (ee, em) or transverse H (me, mm)
            assert np.abs(a[:2] - b[:2]).max() < 1e-6 * scale
            # row 2 of the electric-field kinds jumps so that eps * row stays
            # continuous; magnetic kinds have mu = 1 everywhere here
            if kind in ("ee", "em"):
                wa, wb = ctx.eps[l_lo], ctx.eps[l_hi]
            else:
                wa, wb = ctx.mu[l_lo], ctx.mu[l_hi]
            assert np.abs(wa * a[2] - wb * b[2]).max() < 1e-6 * scale


def test_magnetic_kind_is_curl_of_electric(rng):
    """g_me must equal the curl of g_ee over k0*mu, checked by finite
    differences in z on a random multilayer."""
    E = 2.1
    k0 = pf.vacuum_wavenumber(E)
    stack = random_lossy_stack(rng, n_layers=4)
    ctx = pf.spectral_context(stack, K=0.9 * k0, omega_ev=E)
    co = pf.stack_coefficients(ctx)
    z, zp = stack.interfaces[1] + 3.7, stack.interfaces[0] - 6.0
    L = stack.locate_layer(z)
    h = 1e-5
    gm = greens_tensor(ctx, co, "me", z, zp).entries
    ge = greens_tensor(ctx, co, "ee", z, zp).entries
    dge = (greens_tensor(ctx, co, "ee", z + h, zp).entries
           - greens_tensor(ctx, co, "ee", z - h, zp).entries) / (2.0 * h)
    K = ctx.K
    fac = 1.0 / (k0 * ctx.mu[L])
    want = np.vstack([
        fac * (1j * K * ge[2] - dge[1]),
        fac * dge[0],
        fac * (-1j * K * ge[0]),
    ])
    scale = np.abs(gm).max()
    assert np.abs(gm - want).max() < 1e-6 * scale
