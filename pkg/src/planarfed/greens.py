"""Spectral scalar and dyadic Green's functions for stratified media.

Every scaled scalar Green's function xi^{+-}(z, z') is, for a fixed pair of
field layer L and source layer Lp, a finite sum of exponentials

    xi(z, z') = sum_m  c_m  exp(p_m z + q_m z')

with constant complex amplitudes and rates.  The terms are materialized
explicitly (XiTerm) so that pointwise values, analytic z-derivatives, and
closed-form z'-integrals over whole source layers all come from the same
decomposition.  In the same-layer case the direct exp(i kz |z - z'|) term
carries a region tag splitting z' < z from z' > z.

Dyadic Green's functions are 3x3 matrices in the orthonormal basis
(Khat x zhat, Khat, zhat).  The ee/mm tensors exclude the delta(z - z')
zz self-term; its effect enters only through the local-DOS trace weights.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coefficients import ChannelCoefficients, StackCoefficients
from .errors import CoincidenceError
from .stack import SpectralContext

# Region of validity in z' relative to the field point z.
ALL, BELOW, ABOVE = 0, 1, 2

TENSOR_KINDS = ("ee", "mm", "em", "me")

# Nonzero entry patterns (row, col), 0-based, in the (Khat x zhat, Khat, zhat)
# basis.
SPARSITY = {
    "ee": ((0, 0), (1, 1), (1, 2), (2, 1), (2, 2)),
    "mm": ((0, 0), (1, 1), (1, 2), (2, 1), (2, 2)),
    "em": ((0, 1), (0, 2), (1, 0), (2, 0)),
    "me": ((0, 1), (0, 2), (1, 0), (2, 0)),
}


@dataclass(frozen=True)
class XiTerm:
    c: complex
    p: complex  # rate multiplying the field coordinate z
    q: complex  # rate multiplying the source coordinate z'
    region: int = ALL


def xi_terms(
    ctx: SpectralContext,
    coeffs: StackCoefficients,
    kind: str,
    pol: str,
    sign: int,
    field_layer: int,
    source_layer: int,
) -> list[XiTerm]:
    """Exponential decomposition of xi^{sign} for the given layer pair."""
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    ch = coeffs[(kind, pol)]
    if field_layer == source_layer:
        return _xi_terms_same(ctx, ch, sign, source_layer)
    if field_layer > source_layer:
        return _xi_terms_above(ctx, ch, sign, field_layer, source_layer)
    return _xi_terms_below(ctx, ch, sign, field_layer, source_layer)


def _xi_terms_same(ctx, ch: ChannelCoefficients, s: int, L: int) -> list[XiTerm]:
    stack = ctx.stack
    kz = ctx.kz[L]
    pref = 1j / (2.0 * kz)
    nu = ch.nu[L]
    Ru = ch.R_above(L)   # reflection off the interfaces above layer L
    Rd = ch.R_below(L)   # reflection off the interfaces below layer L
    ik = 1j * kz
    terms = [
        XiTerm(pref, +ik, -ik, BELOW),  # direct, z' < z
        XiTerm(pref, -ik, +ik, ABOVE),  # direct, z' > z
    ]
    if Ru != 0:
        z_up = stack.interfaces[L]
        terms.append(XiTerm(s * pref * nu * Ru * np.exp(2.0 * ik * z_up), -ik, -ik))
    if Rd != 0:
        z_dn = stack.interfaces[L - 1]
        terms.append(XiTerm(s * pref * nu * Rd * np.exp(-2.0 * ik * z_dn), +ik, +ik))
    if Ru != 0 and Rd != 0:
        pd = np.exp(2.0 * ik * stack.thickness(L))
        terms.append(XiTerm(pref * nu * Ru * Rd * pd, -ik, +ik))
        terms.append(XiTerm(pref * nu * Rd * Ru * pd, +ik, -ik))
    return terms


def _xi_terms_above(ctx, ch: ChannelCoefficients, s: int, L: int, Lp: int) -> list[XiTerm]:
    """Field layer above the source layer (L > Lp)."""
    stack = ctx.stack
    kzp = ctx.kz[Lp]
    kz = ctx.kz[L]
    ikp, ik = 1j * kzp, 1j * kz
    pref = 1j / (2.0 * kzp) * ch.t_cum(Lp, L)
    nu = ch.nu[Lp]
    Ru = ch.R_above(Lp)
    Rd = ch.R_below(Lp)
    z_up = stack.interfaces[Lp]

    src = [(np.exp(ikp * z_up), -ikp)]
    if Rd != 0:
        z_dn = stack.interfaces[Lp - 1]
        d = stack.thickness(Lp)
        src.append((s * nu * Rd * np.exp(ikp * (d - z_dn)), +ikp))
        if Ru != 0:
            src.append((nu * Rd * Ru * np.exp(ikp * (2.0 * d + z_up)), -ikp))

    z_fdn = stack.interfaces[L - 1]
    fld = [(np.exp(-ik * z_fdn), +ik)]
    RuL = ch.R_above(L)
    if RuL != 0:
        fld.append((s * RuL * np.exp(ik * (z_fdn + 2.0 * stack.thickness(L))), -ik))

    return [XiTerm(pref * a * b, p, q) for b, q in src for a, p in fld]


def _xi_terms_below(ctx, ch: ChannelCoefficients, s: int, L: int, Lp: int) -> list[XiTerm]:
    """Field layer below the source layer (L < Lp)."""
    stack = ctx.stack
    kzp = ctx.kz[Lp]
    kz = ctx.kz[L]
    ikp, ik = 1j * kzp, 1j * kz
    pref = 1j / (2.0 * kzp) * ch.t_cum(Lp, L)
    nu = ch.nu[Lp]
    Ru = ch.R_above(Lp)
    Rd = ch.R_below(Lp)
    z_dn = stack.interfaces[Lp - 1]

    src = [(np.exp(-ikp * z_dn), +ikp)]
    if Ru != 0:
        d = stack.thickness(Lp)
        src.append((s * nu * Ru * np.exp(ikp * (2.0 * d + z_dn)), -ikp))
        if Rd != 0:
            src.append((nu * Ru * Rd * np.exp(ikp * (2.0 * d - z_dn)), +ikp))

    z_fup = stack.interfaces[L]
    fld = [(np.exp(ik * z_fup), -ik)]
    RdL = ch.R_below(L)
    if RdL != 0:
        z_fdn = stack.interfaces[L - 1]
        fld.append((s * RdL * np.exp(ik * (stack.thickness(L) - z_fdn)), +ik))

    return [XiTerm(pref * a * b, p, q) for b, q in src for a, p in fld]


def _eval_terms(terms: list[XiTerm], z: float, zp: float) -> complex:
    want = BELOW if zp < z else (ABOVE if zp > z else ALL)
    out = 0j
    for t in terms:
        if t.region != ALL and want != ALL and t.region != want:
            continue
        if t.region != ALL and want == ALL:
            # z' == z: both direct pieces coincide; take BELOW once.
            if t.region != BELOW:
                continue
        out += t.c * np.exp(t.p * z + t.q * zp)
    return out


def scalar_xi(
    ctx: SpectralContext,
    coeffs: StackCoefficients,
    kind: str,
    pol: str,
    sign: int,
    z: float,
    zp: float,
) -> complex:
    """xi^{sign}_{kind,pol}(z, z') in nm."""
    stack = ctx.stack
    terms = xi_terms(ctx, coeffs, kind, pol, sign, stack.locate_layer(z), stack.locate_layer(zp))
    return _eval_terms(terms, z, zp)


def scalar_xi_dz(
    ctx: SpectralContext,
    coeffs: StackCoefficients,
    kind: str,
    pol: str,
    sign: int,
    z: float,
    zp: float,
) -> complex:
    """(1/kz) d(xi)/dz, analytic term-by-term; undefined at the z = z' kink."""
    if z == zp:
        raise CoincidenceError("d(xi)/dz has a kink at z = z'")
    stack = ctx.stack
    L = stack.locate_layer(z)
    terms = xi_terms(ctx, coeffs, kind, pol, sign, L, stack.locate_layer(zp))
    kz = ctx.kz[L]
    want = BELOW if zp < z else ABOVE
    out = 0j
    for t in terms:
        if t.region != ALL and t.region != want:
            continue
        out += (t.p / kz) * t.c * np.exp(t.p * z + t.q * zp)
    return out


@dataclass(frozen=True)
class GreensTensor:
    """One spectral dyadic Green's function as a 3x3 complex matrix (nm)."""

    entries: np.ndarray
    kind: str
    delta_excluded: bool = True


@dataclass
class EntryTerm:
    """One exponential contribution to one tensor entry at fixed z:
    amp * exp(q z')."""

    amp: complex
    q: complex
    region: int = ALL

    def conj(self) -> "EntryTerm":
        return EntryTerm(np.conj(self.amp), np.conj(self.q), self.region)


def tensor_entry_terms(
    ctx: SpectralContext,
    coeffs: StackCoefficients,
    kind: str,
    z: float,
    source_layer: int,
) -> dict[tuple[int, int], list[EntryTerm]]:
    """Exponential-in-z' decomposition of every nonzero tensor entry.

    Derivative entries are taken analytically: each exp(p z) maps to
    (p/kz) exp(p z) (or p/k0 for the exchange tensors).
    """
    stack = ctx.stack
    L = stack.locate_layer(z)
    Lp = source_layer
    kz, kzp = ctx.kz[L], ctx.kz[Lp]
    k = ctx.k0 * ctx.n[L]
    kp = ctx.k0 * ctx.n[Lp]
    K, k0 = ctx.K, ctx.k0

    if kind in ("ee", "mm"):
        j = "e" if kind == "ee" else "m"
        scale = ctx.mu[Lp] if kind == "ee" else ctx.eps[Lp]
        par_p = xi_terms(ctx, coeffs, j, "par", +1, L, Lp)
        per_p = xi_terms(ctx, coeffs, j, "perp", +1, L, Lp)
        per_m = xi_terms(ctx, coeffs, j, "perp", -1, L, Lp)
        out: dict[tuple[int, int], list[EntryTerm]] = {}
        out[(0, 0)] = _entry(par_p, z, scale)
        out[(1, 1)] = _entry(per_p, z, scale * kz * kzp / (k * kp))
        out[(1, 2)] = _entry(per_m, z, scale * 1j * kz * K / (k * kp), dz_norm=kz)
        out[(2, 1)] = _entry(per_p, z, scale * 1j * K * kzp / (k * kp), dz_norm=kz)
        out[(2, 2)] = _entry(per_m, z, scale * K * K / (k * kp))
        return out

    if kind == "me":
        j = "e"
        scale = ctx.mu[Lp] / ctx.mu[L]
    elif kind == "em":
        j = "m"
        scale = -ctx.eps[Lp] / ctx.eps[L]
    else:
        raise ValueError(f"unknown tensor kind {kind!r}")
    par_p = xi_terms(ctx, coeffs, j, "par", +1, L, Lp)
    per_p = xi_terms(ctx, coeffs, j, "perp", +1, L, Lp)
    per_m = xi_terms(ctx, coeffs, j, "perp", -1, L, Lp)
    out = {}
    out[(0, 1)] = _entry(per_p, z, -scale * kzp * k / (kz * kp), dz_norm=k0)
    out[(0, 2)] = _entry(per_m, z, scale * 1j * K * k / (k0 * kp))
    out[(1, 0)] = _entry(par_p, z, scale, dz_norm=k0)
    out[(2, 0)] = _entry(par_p, z, -scale * 1j * K / k0)
    return out


def _entry(terms: list[XiTerm], z: float, pref: complex, dz_norm: complex | None = None):
    out = []
    for t in terms:
        amp = pref * t.c * np.exp(t.p * z)
        if dz_norm is not None:
            amp *= t.p / dz_norm
        out.append(EntryTerm(amp, t.q, t.region))
    return out


def eval_entry(terms: list[EntryTerm], z: float, zp: float) -> complex:
    want = BELOW if zp < z else (ABOVE if zp > z else ALL)
    out = 0j
    for t in terms:
        if t.region != ALL:
            if want == ALL:
                if t.region != BELOW:
                    continue
            elif t.region != want:
                continue
        out += t.amp * np.exp(t.q * zp)
    return out


def greens_tensor(
    ctx: SpectralContext,
    coeffs: StackCoefficients,
    kind: str,
    z: float,
    zp: float,
) -> GreensTensor:
    """Assemble g_{kind}(z, K, omega, z'); z != z' (delta self-term and
    derivative kinks are excluded by contract)."""
    if z == zp:
        raise CoincidenceError(
            "greens_tensor requires z != z'; the zz delta self-term and the "
            "derivative kink live at coincidence"
        )
    entries = np.zeros((3, 3), dtype=complex)
    bank = tensor_entry_terms(ctx, coeffs, kind, z, ctx.stack.locate_layer(zp))
    for (a, b), terms in bank.items():
        entries[a, b] = eval_entry(terms, z, zp)
    return GreensTensor(entries=entries, kind=kind)
