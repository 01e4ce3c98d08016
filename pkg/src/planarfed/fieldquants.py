"""Occupation-weighted field quantities for nonequilibrium stratified media.

Given per-layer photon occupation rules (excitations), the local trace
density of states, and the source-resolved layer integrals, this module
forms effective photon numbers and temperatures, field fluctuation
spectra, the spectral Poynting flux along z, and the local net emitted
power density.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import HBAR_C, K_B
from .dos import ldos, source_layer_integrals
from .errors import InversionDomainError, NoSourcesError
from .stack import SpectralContext


def bose_einstein(energy_ev: float, temperature_k: float) -> float:
    """Equilibrium photon occupation at the given temperature."""
    if temperature_k < 0:
        raise InversionDomainError("temperature must be nonnegative")
    if temperature_k == 0:
        return 0.0
    x = energy_ev / (K_B * temperature_k)
    return 1.0 / np.expm1(x)


class Excitation:
    """Rule giving the photon occupation eta(omega) a layer radiates with."""

    def eta(self, energy_ev: float) -> float:
        raise NotImplementedError


@dataclass(frozen=True)
class Thermal(Excitation):
    temperature_k: float

    def eta(self, energy_ev: float) -> float:
        return bose_einstein(energy_ev, self.temperature_k)


@dataclass(frozen=True)
class BiasedQuantumWell(Excitation):
    """Electrically pumped emitter with quasi Fermi level splitting eU.

    Occupation follows a chemical-potential-shifted Bose factor
    1 / (exp((E - eU) / kT) - 1); only valid for photon energies above eU.
    """

    bias_v: float
    temperature_k: float

    def eta(self, energy_ev: float) -> float:
        if energy_ev <= self.bias_v:
            raise InversionDomainError(
                f"photon energy {energy_ev:g} eV does not exceed the bias "
                f"{self.bias_v:g} V; occupation would be inverted"
            )
        if self.temperature_k == 0:
            return 0.0
        x = (energy_ev - self.bias_v) / (K_B * self.temperature_k)
        return 1.0 / np.expm1(x)


@dataclass(frozen=True)
class ConstantEta(Excitation):
    value: float

    def eta(self, energy_ev: float) -> float:
        return self.value


def effective_temperature(energy_ev: float, n: float) -> float:
    """Temperature whose equilibrium occupation at this energy equals n."""
    if n < 0:
        raise InversionDomainError("photon number must be nonnegative")
    if n == 0:
        return 0.0
    return energy_ev / (K_B * np.log1p(1.0 / n))


@dataclass(frozen=True)
class FieldReport:
    """All derived field quantities at one (z, K, omega) sample."""

    rho_e: float
    rho_m: float
    rho_tot: float
    n_e: float
    n_m: float
    n_tot: float
    t_eff_e: float
    t_eff_m: float
    t_eff_tot: float
    e_sq: float      # electric fluctuation spectrum <|E|^2>(z, K, omega)
    h_sq: float      # magnetic fluctuation spectrum
    u: float         # spectral energy density
    s_z: float       # spectral Poynting flux along z
    q: float         # local net emitted power density

    def as_dict(self) -> dict[str, float]:
        return {
            "rho_e": self.rho_e, "rho_m": self.rho_m, "rho_tot": self.rho_tot,
            "n_e": self.n_e, "n_m": self.n_m, "n_tot": self.n_tot,
            "t_eff_e": self.t_eff_e, "t_eff_m": self.t_eff_m,
            "t_eff_tot": self.t_eff_tot, "e_sq": self.e_sq, "h_sq": self.h_sq,
            "u": self.u, "s_z": self.s_z, "q": self.q,
        }


def layer_etas(ctx: SpectralContext, energy_ev: float) -> np.ndarray:
    out = np.empty(ctx.stack.n_layers)
    for l, layer in enumerate(ctx.stack.layers):
        out[l] = layer.excitation.eta(energy_ev)
    return out


def _weighted_number(etas: np.ndarray, weights: np.ndarray) -> float:
    total = weights.sum()
    if total <= 0:
        raise NoSourcesError("all source weights vanish; photon number undefined")
    return float(np.dot(etas, weights) / total)


def field_report(ctx: SpectralContext, coeffs, z: float) -> FieldReport:
    """Evaluate every field quantity at one spatial point of one spectral
    component."""
    stack = ctx.stack
    E = ctx.omega
    L = stack.locate_layer(z)
    eps, mu = ctx.eps[L], ctx.mu[L]

    rho_e, rho_m, rho_tot = ldos(ctx, coeffs, z)
    A_e, A_m, F_red = source_layer_integrals(ctx, coeffs, z)
    A_tot = 0.5 * (abs(eps) * A_e + abs(mu) * A_m)
    etas = layer_etas(ctx, E)

    n_e = _weighted_number(etas, A_e)
    n_m = _weighted_number(etas, A_m)
    n_tot = _weighted_number(etas, A_tot)

    eta_here = etas[L]
    s_z = E * HBAR_C * float(np.dot(etas, F_red))
    q = E * E * (ctx.eps_i(L) * rho_e * (eta_here - n_e)
                 + ctx.mu_i(L) * rho_m * (eta_here - n_m))

    return FieldReport(
        rho_e=rho_e, rho_m=rho_m, rho_tot=rho_tot,
        n_e=n_e, n_m=n_m, n_tot=n_tot,
        t_eff_e=effective_temperature(E, n_e),
        t_eff_m=effective_temperature(E, n_m),
        t_eff_tot=effective_temperature(E, n_tot),
        e_sq=E * rho_e * (n_e + 0.5),
        h_sq=E * rho_m * (n_m + 0.5),
        u=E * rho_tot * (n_tot + 0.5),
        s_z=s_z,
        q=q,
    )
