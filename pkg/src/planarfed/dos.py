"""Nonlocal, local, and interference densities of states.

All densities are per unit (energy x volume) in the eV/nm unit system.
Because every dyadic entry is a finite sum of exponentials in the source
coordinate z', integrals over whole source layers are evaluated in closed
form: |sum_m a_m e^{q_m z'}|^2 and Im[e1 e2*] expand into pairwise products
a_m conj(a_n) exp((q_m + conj(q_n)) z') which integrate exactly.
"""
from __future__ import annotations

import numpy as np

from .constants import HBAR_C
from .errors import TailDivergenceError
from .greens import ABOVE, ALL, BELOW, EntryTerm, eval_entry, tensor_entry_terms
from .stack import SpectralContext


def exp_integral(gamma: complex, lo: float, hi: float) -> complex:
    """Closed form of int_lo^hi exp(gamma t) dt; lo/hi may be -+inf."""
    if hi == np.inf:
        if gamma.real >= 0.0:
            raise TailDivergenceError(
                f"non-decaying tail toward +inf (Re gamma = {gamma.real:g})"
            )
        if lo == -np.inf:
            raise TailDivergenceError("doubly infinite exponential integral")
        return -np.exp(gamma * lo) / gamma
    if lo == -np.inf:
        if gamma.real <= 0.0:
            raise TailDivergenceError(
                f"non-decaying tail toward -inf (Re gamma = {gamma.real:g})"
            )
        return np.exp(gamma * hi) / gamma
    if gamma == 0:
        return complex(hi - lo)
    d = gamma * (hi - lo)
    if abs(d) < 1e-6:
        # Series form avoids cancellation between nearly equal exponentials.
        return (hi - lo) * np.exp(gamma * lo) * (1.0 + d / 2.0 + d * d / 6.0)
    return (np.exp(gamma * hi) - np.exp(gamma * lo)) / gamma


def _segments(lo: float, hi: float, z: float):
    """Split a source layer at the field point, tagging which direct-term
    region applies on each piece."""
    if lo < z < hi:
        return [(lo, z, BELOW), (z, hi, ABOVE)]
    if z <= lo:
        return [(lo, hi, ABOVE)]
    return [(lo, hi, BELOW)]


def _pick(terms: list[EntryTerm], region: int) -> list[EntryTerm]:
    return [t for t in terms if t.region in (ALL, region)]


def integral_abs2(terms: list[EntryTerm], lo: float, hi: float, z: float) -> float:
    """int |sum_m amp_m exp(q_m z')|^2 dz' over [lo, hi]."""
    out = 0.0
    for slo, shi, region in _segments(lo, hi, z):
        sub = _pick(terms, region)
        for m in sub:
            for n in sub:
                out += (m.amp * np.conj(n.amp) * exp_integral(m.q + np.conj(n.q), slo, shi)).real
    return out


def integral_bilinear(
    t1: list[EntryTerm], t2: list[EntryTerm], lo: float, hi: float, z: float
) -> complex:
    """int e1(z') conj(e2(z')) dz' over [lo, hi].

    Evaluated in extended precision: near sharp guided-mode resonances the
    resonance factors inflate the pairwise terms, which then cancel almost
    completely in flux balances; plain doubles would leave ~1e-8 relative
    residue there.
    """
    out = np.clongdouble(0)
    for slo, shi, region in _segments(lo, hi, z):
        for m in _pick(t1, region):
            for n in _pick(t2, region):
                amp = np.clongdouble(m.amp) * np.conj(np.clongdouble(n.amp))
                out += amp * exp_integral(
                    np.clongdouble(m.q) + np.conj(np.clongdouble(n.q)), slo, shi)
    return complex(out)


def _prefactor(ctx: SpectralContext) -> float:
    return ctx.k0**3 / (2.0 * np.pi**3 * HBAR_C)


def nldos(ctx: SpectralContext, coeffs, z: float, zp: float) -> tuple[float, float, float]:
    """Pointwise nonlocal density of states (electric, magnetic, total).

    The total is weighted by the field-point response, (|eps| rho_e +
    |mu| rho_m) / 2, so that it reduces to rho_e in vacuum.
    """
    stack = ctx.stack
    L = stack.locate_layer(z)
    Lp = stack.locate_layer(zp)
    pref = _prefactor(ctx)
    ei, mi = ctx.eps_i(Lp), ctx.mu_i(Lp)

    banks = {k: tensor_entry_terms(ctx, coeffs, k, z, Lp) for k in ("ee", "mm", "em", "me")}
    sums = {k: sum(abs(eval_entry(t, z, zp)) ** 2 for t in bank.values())
            for k, bank in banks.items()}
    rho_e = pref * (ei * sums["ee"] + mi * sums["em"])
    rho_m = pref * (ei * sums["me"] + mi * sums["mm"])
    rho_t = 0.5 * (abs(ctx.eps[L]) * rho_e + abs(ctx.mu[L]) * rho_m)
    return rho_e, rho_m, rho_t


def ldos(ctx: SpectralContext, coeffs, z: float) -> tuple[float, float, float]:
    """Local density of states from the coincidence-limit trace."""
    stack = ctx.stack
    L = stack.locate_layer(z)
    eps, mu = ctx.eps[L], ctx.mu[L]
    pref = ctx.k0 / (2.0 * np.pi**3 * HBAR_C)

    def trace(kind, w):
        bank = tensor_entry_terms(ctx, coeffs, kind, z, L)
        g11 = eval_entry(bank[(0, 0)], z, z)
        g22 = eval_entry(bank[(1, 1)], z, z)
        g33 = eval_entry(bank[(2, 2)], z, z)
        return (g11 + g22 + (w * w / abs(w) ** 2) * g33).imag

    rho_e = pref * trace("ee", eps)
    rho_m = pref * trace("mm", mu)
    rho_t = 0.5 * (abs(eps) * rho_e + abs(mu) * rho_m)
    return rho_e, rho_m, rho_t


# Entry pairs whose bilinear products build the interference density:
# (field tensor entry, exchange tensor entry, sign).
_IF_PAIRS = (((0, 0), (1, 0), +1.0), ((1, 1), (0, 1), -1.0), ((1, 2), (0, 2), -1.0))


def ifdos_reduced(ctx: SpectralContext, coeffs, z: float, zp: float) -> float:
    """Interference density of states divided by the local refractive index
    Re n(z); the energy flux picks up a factor c / Re n that cancels it."""
    stack = ctx.stack
    Lp = stack.locate_layer(zp)
    pref = _prefactor(ctx)
    ei, mi = ctx.eps_i(Lp), ctx.mu_i(Lp)

    ee = tensor_entry_terms(ctx, coeffs, "ee", z, Lp)
    mm = tensor_entry_terms(ctx, coeffs, "mm", z, Lp)
    em = tensor_entry_terms(ctx, coeffs, "em", z, Lp)
    me = tensor_entry_terms(ctx, coeffs, "me", z, Lp)

    s_m = sum(sgn * (eval_entry(mm[a], z, zp) * np.conj(eval_entry(em[b], z, zp))).imag
              for a, b, sgn in _IF_PAIRS)
    s_e = sum(sgn * (eval_entry(ee[a], z, zp) * np.conj(eval_entry(me[b], z, zp))).imag
              for a, b, sgn in _IF_PAIRS)
    return pref * (mi * s_m - ei * s_e)


def ifdos(ctx: SpectralContext, coeffs, z: float, zp: float) -> float:
    """Interference density of states (directional weight of the z flux)."""
    L = ctx.stack.locate_layer(z)
    return ctx.n[L].real * ifdos_reduced(ctx, coeffs, z, zp)


def source_layer_integrals(ctx: SpectralContext, coeffs, z: float):
    """Exact z'-integrals of the source-resolved densities, one value per
    source layer.

    Returns (A_e, A_m, F_red) where A_j[Lp] integrates the nonlocal density
    rho_j over layer Lp and F_red[Lp] integrates the reduced interference
    density.  sum(A_j) reproduces the local trace density.
    """
    stack = ctx.stack
    pref = _prefactor(ctx)
    nl = stack.n_layers
    A_e = np.zeros(nl)
    A_m = np.zeros(nl)
    F = np.zeros(nl)
    for Lp in range(nl):
        lo, hi = stack.bounds(Lp)
        ei, mi = ctx.eps_i(Lp), ctx.mu_i(Lp)
        ee = tensor_entry_terms(ctx, coeffs, "ee", z, Lp)
        mm = tensor_entry_terms(ctx, coeffs, "mm", z, Lp)
        em = tensor_entry_terms(ctx, coeffs, "em", z, Lp)
        me = tensor_entry_terms(ctx, coeffs, "me", z, Lp)

        s_ee = sum(integral_abs2(t, lo, hi, z) for t in ee.values())
        s_mm = sum(integral_abs2(t, lo, hi, z) for t in mm.values())
        s_em = sum(integral_abs2(t, lo, hi, z) for t in em.values())
        s_me = sum(integral_abs2(t, lo, hi, z) for t in me.values())
        A_e[Lp] = pref * (ei * s_ee + mi * s_em)
        A_m[Lp] = pref * (ei * s_me + mi * s_mm)

        f_m = sum(sgn * integral_bilinear(mm[a], em[b], lo, hi, z).imag
                  for a, b, sgn in _IF_PAIRS)
        f_e = sum(sgn * integral_bilinear(ee[a], me[b], lo, hi, z).imag
                  for a, b, sgn in _IF_PAIRS)
        F[Lp] = pref * (mi * f_m - ei * f_e)
    return A_e, A_m, F


def ldos_consistency(ctx: SpectralContext, coeffs, z: float) -> float:
    """Largest relative mismatch between the integrated nonlocal density and
    the coincidence-limit trace, a cross-check of the two routes."""
    A_e, A_m, _ = source_layer_integrals(ctx, coeffs, z)
    rho_e, rho_m, _ = ldos(ctx, coeffs, z)
    err_e = abs(A_e.sum() - rho_e) / max(abs(rho_e), 1e-300)
    err_m = abs(A_m.sum() - rho_m) / max(abs(rho_m), 1e-300)
    return max(err_e, err_m)
