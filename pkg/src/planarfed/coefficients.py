"""Interface and multilayer reflection/transmission coefficients.

Four channels are tracked: field kind j in {e, m} crossed with polarization
sigma in {par, perp}.  Per channel and interface i (between layers i and
i+1) the single-interface coefficients are r[i], t[i] for left (+z)
incidence and rp[i], tp[i] for right incidence (media swapped).

Multilayer coefficients follow the downward/upward recursions

    R[i]  = (r[i]  + R[i+1]  P2[i+1]) / (1 + r[i]  R[i+1]  P2[i+1])
    Rp[i] = (rp[i] + Rp[i-1] P2[i])   / (1 + rp[i] Rp[i-1] P2[i])

with P2[l] = exp(2 i kz[l] d[l]) for interior layers, R past the last
interface and Rp before the first both identically zero.  The resonance
factor of layer l is nu[l] = 1 / (1 - Rp[l-1] R[l] P2[l]) and the
transmission through interface i is

    T[i]  = t[i]  nu[i+1] / (nu[i]   (1 - Rp[i-1] r[i]  P2[i]))
    Tp[i] = tp[i] nu[i]   / (nu[i+1] (1 - R[i+1]  rp[i] P2[i+1]))

(Tp mirrors T with the left/right roles exchanged.)  Cumulative
transmissions chain interface coefficients with single-pass propagation
factors exp(i kz d) through every intermediate layer.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

from .errors import DegeneracyError
from .materials import OpticalResponse
from .stack import SpectralContext

FIELD_KINDS = ("e", "m")
POLARIZATIONS = ("par", "perp")
CHANNELS = tuple((j, s) for j in FIELD_KINDS for s in POLARIZATIONS)


@dataclass(frozen=True)
class InterfaceCoefficients:
    r: complex
    t: complex


def fresnel(
    kind: str,
    pol: str,
    medium1: OpticalResponse,
    medium2: OpticalResponse,
    kz1: complex,
    kz2: complex,
) -> InterfaceCoefficients:
    """Single-interface coefficients for incidence from medium 1 to 2.

    The e/m and par/perp variants differ only by the eps <-> mu roles and a
    material-impedance factor in t; signs follow the tangential-continuity
    convention, not the textbook Fresnel one.
    """
    e1, m1, n1, n2 = medium1.epsilon, medium1.mu, medium1.index, medium2.index
    e2, m2 = medium2.epsilon, medium2.mu
    # The impedance-like roots sqrt(eps/mu) and sqrt(mu/eps) must stay on
    # the branch consistent with n = sqrt(eps mu) (Im n >= 0), i.e. eps/n
    # and mu/n; an independent principal root flips the sign for media
    # where Im(mu/n) < 0 and breaks tangential field continuity.
    if kind == "e":
        if pol == "par":
            den = m2 * kz1 + m1 * kz2
            _check_denominator(den)
            return InterfaceCoefficients((m2 * kz1 - m1 * kz2) / den, 2.0 * m2 * kz1 / den)
        den = e2 * kz1 + e1 * kz2
        _check_denominator(den)
        return InterfaceCoefficients(
            (e1 * kz2 - e2 * kz1) / den,
            2.0 * (e1 / n1) * n2 * kz1 / den,
        )
    if pol == "par":
        den = e2 * kz1 + e1 * kz2
        _check_denominator(den)
        return InterfaceCoefficients((e2 * kz1 - e1 * kz2) / den, 2.0 * e2 * kz1 / den)
    den = m2 * kz1 + m1 * kz2
    _check_denominator(den)
    return InterfaceCoefficients(
        (m1 * kz2 - m2 * kz1) / den,
        2.0 * (m1 / n1) * n2 * kz1 / den,
    )


def _check_denominator(den: complex) -> None:
    if den == 0:
        raise DegeneracyError("vanishing interface-coefficient denominator")


class ChannelCoefficients:
    """All multilayer coefficients of one (kind, pol) channel."""

    def __init__(self, ctx: SpectralContext, kind: str, pol: str) -> None:
        stack = ctx.stack
        nif = stack.n_interfaces
        nlay = stack.n_layers
        kz = ctx.kz
        resp = [
            OpticalResponse(ctx.eps[l], ctx.mu[l], ctx.n[l]) for l in range(nlay)
        ]

        self.r = [0j] * nif
        self.t = [0j] * nif
        self.rp = [0j] * nif
        self.tp = [0j] * nif
        for i in range(nif):
            fwd = fresnel(kind, pol, resp[i], resp[i + 1], kz[i], kz[i + 1])
            bwd = fresnel(kind, pol, resp[i + 1], resp[i], kz[i + 1], kz[i])
            self.r[i], self.t[i] = fwd.r, fwd.t
            self.rp[i], self.tp[i] = bwd.r, bwd.t

        # Round-trip propagation factors for interior layers; |P2| <= 1.
        self.p2 = [0j] * nlay
        self.p1 = [0j] * nlay
        for l in range(1, nlay - 1):
            phase = 1j * kz[l] * stack.thickness(l)
            self.p1[l] = cmath.exp(phase)
            self.p2[l] = cmath.exp(2.0 * phase)

        # Downward pass: R[i] from the last interface back.
        self.R = [0j] * nif
        self.R[nif - 1] = self.r[nif - 1]
        for i in range(nif - 2, -1, -1):
            g = self.R[i + 1] * self.p2[i + 1]
            den = 1.0 + self.r[i] * g
            _check_denominator(den)
            self.R[i] = (self.r[i] + g) / den

        # Upward pass: Rp[i] from the first interface on.
        self.Rp = [0j] * nif
        self.Rp[0] = self.rp[0]
        for i in range(1, nif):
            g = self.Rp[i - 1] * self.p2[i]
            den = 1.0 + self.rp[i] * g
            _check_denominator(den)
            self.Rp[i] = (self.rp[i] + g) / den

        # Layer resonance factors; boundary layers have no round trip.
        self.nu = [1.0 + 0j] * nlay
        for l in range(1, nlay - 1):
            den = 1.0 - self.Rp[l - 1] * self.R[l] * self.p2[l]
            _check_denominator(den)
            self.nu[l] = 1.0 / den

        self.T = [0j] * nif
        self.Tp = [0j] * nif
        for i in range(nif):
            den = 1.0 + 0j
            if i >= 1:
                den = 1.0 - self.Rp[i - 1] * self.r[i] * self.p2[i]
                _check_denominator(den)
            self.T[i] = self.t[i] * self.nu[i + 1] / (self.nu[i] * den)
            den = 1.0 + 0j
            if i <= nif - 2:
                den = 1.0 - self.R[i + 1] * self.rp[i] * self.p2[i + 1]
                _check_denominator(den)
            self.Tp[i] = self.tp[i] * self.nu[i] / (self.nu[i + 1] * den)

    def R_above(self, layer: int) -> complex:
        """Reflection seen by an up-going wave in `layer` off everything above."""
        nif = len(self.R)
        return self.R[layer] if layer <= nif - 1 else 0j

    def R_below(self, layer: int) -> complex:
        """Reflection seen by a down-going wave in `layer` off everything below."""
        return self.Rp[layer - 1] if layer >= 1 else 0j

    def t_cum(self, src: int, dst: int) -> complex:
        """Cumulative transmission from source layer src into field layer dst."""
        if dst > src:
            out = self.T[src]
            for l in range(src + 1, dst):
                out *= self.p1[l] * self.T[l]
            return out
        if dst < src:
            out = self.Tp[src - 1]
            for l in range(src - 1, dst, -1):
                out *= self.p1[l] * self.Tp[l - 1]
            return out
        return 1.0 + 0j


class StackCoefficients:
    """Per-channel multilayer coefficients at one (K, omega)."""

    def __init__(self, ctx: SpectralContext) -> None:
        self.ctx = ctx
        self.channels = {(j, s): ChannelCoefficients(ctx, j, s) for j, s in CHANNELS}

    def __getitem__(self, key: tuple[str, str]) -> ChannelCoefficients:
        return self.channels[key]


def stack_coefficients(ctx: SpectralContext) -> StackCoefficients:
    return StackCoefficients(ctx)
