"""Dispersive material models: complex epsilon(omega), mu(omega), n(omega).

All models are evaluated at a photon energy in eV and return an
OpticalResponse.  The refractive-index branch is always Im(n) >= 0 (passive
media only), and n^2 = eps * mu by construction.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .errors import MaterialDomainError, MaterialRangeError


def sqrt_upper(w: complex) -> complex:
    """Complex square root on the branch Im >= 0 (Re >= 0 when Im == 0)."""
    s = cmath.sqrt(w)
    if s.imag < 0.0 or (s.imag == 0.0 and s.real < 0.0):
        s = -s
    return s


@dataclass(frozen=True)
class OpticalResponse:
    """Material response at one frequency: eps, mu, and n = sqrt(eps*mu)."""

    epsilon: complex
    mu: complex
    index: complex

    @classmethod
    def from_eps_mu(cls, epsilon: complex, mu: complex = 1.0 + 0.0j) -> "OpticalResponse":
        return cls(complex(epsilon), complex(mu), sqrt_upper(complex(epsilon) * complex(mu)))

    @classmethod
    def from_index(cls, index: complex, mu: complex = 1.0 + 0.0j) -> "OpticalResponse":
        index = complex(index)
        mu = complex(mu)
        return cls(index * index / mu, mu, index)


class MaterialModel:
    """Base class; subclasses implement evaluate(photon_energy_ev)."""

    def evaluate(self, photon_energy_ev: float) -> OpticalResponse:
        raise NotImplementedError

    @staticmethod
    def _check_energy(photon_energy_ev: float) -> None:
        if not photon_energy_ev > 0.0:
            raise MaterialDomainError(
                f"photon energy must be positive, got {photon_energy_ev}"
            )


@dataclass(frozen=True)
class ConstantIndex(MaterialModel):
    """Non-dispersive material with fixed complex refractive index."""

    index: complex
    mu: complex = 1.0 + 0.0j

    def evaluate(self, photon_energy_ev: float) -> OpticalResponse:
        self._check_energy(photon_energy_ev)
        return OpticalResponse.from_index(self.index, self.mu)


@dataclass(frozen=True)
class Drude(MaterialModel):
    """Free-electron metal: eps = 1 - Ep^2 / (E^2 + i E Et).

    Ep is the plasma energy and Et the damping energy, both in eV, in the
    e^{-i omega t} time convention.
    """

    plasma_energy: float
    damping_energy: float

    def evaluate(self, photon_energy_ev: float) -> OpticalResponse:
        self._check_energy(photon_energy_ev)
        e = photon_energy_ev
        eps = 1.0 - self.plasma_energy**2 / (e * e + 1j * e * self.damping_energy)
        return OpticalResponse.from_eps_mu(eps)


@dataclass(frozen=True)
class Tabulated(MaterialModel):
    """Refractive index interpolated linearly (real and imaginary parts
    independently) from a strictly increasing energy table."""

    energies: tuple[float, ...]
    indices: tuple[complex, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if len(self.energies) < 2:
            raise MaterialDomainError("dispersion table needs at least 2 points")
        if len(self.energies) != len(self.indices):
            raise MaterialDomainError("table energy/index length mismatch")
        e = np.asarray(self.energies)
        if not np.all(np.diff(e) > 0.0):
            raise MaterialDomainError("table energies must be strictly increasing")

    def evaluate(self, photon_energy_ev: float) -> OpticalResponse:
        self._check_energy(photon_energy_ev)
        if not self.energies[0] <= photon_energy_ev <= self.energies[-1]:
            raise MaterialRangeError(
                f"energy {photon_energy_ev} eV outside table range "
                f"[{self.energies[0]}, {self.energies[-1]}] eV"
                + (f" for {self.label!r}" if self.label else "")
            )
        e = np.asarray(self.energies)
        nr = np.interp(photon_energy_ev, e, [c.real for c in self.indices])
        ni = np.interp(photon_energy_ev, e, [c.imag for c in self.indices])
        return OpticalResponse.from_index(complex(nr, ni))


@dataclass(frozen=True)
class VegardAlloy(MaterialModel):
    """Alloy A_{1-x}B_x whose refractive index is the linear mix
    n = (1-x) n_A + x n_B."""

    fraction: float
    model_a: MaterialModel
    model_b: MaterialModel

    def __post_init__(self) -> None:
        if not 0.0 <= self.fraction <= 1.0:
            raise MaterialDomainError(f"alloy fraction {self.fraction} not in [0, 1]")

    def evaluate(self, photon_energy_ev: float) -> OpticalResponse:
        # Endpoints reproduce the pure models bit-for-bit.
        if self.fraction == 0.0:
            return self.model_a.evaluate(photon_energy_ev)
        if self.fraction == 1.0:
            return self.model_b.evaluate(photon_energy_ev)
        na = self.model_a.evaluate(photon_energy_ev).index
        nb = self.model_b.evaluate(photon_energy_ev).index
        return OpticalResponse.from_index((1.0 - self.fraction) * na + self.fraction * nb)


def load_dispersion_table(path, label: str = "") -> Tabulated:
    """Read a plain-text table: photon_energy_eV n_real n_imag per line,
    '#' comments allowed."""
    energies: list[float] = []
    indices: list[complex] = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise MaterialDomainError(
                    f"{path}:{lineno}: expected 3 fields, got {len(parts)}"
                )
            try:
                e, nr, ni = (float(p) for p in parts)
            except ValueError as exc:
                raise MaterialDomainError(f"{path}:{lineno}: {exc}") from exc
            energies.append(e)
            indices.append(complex(nr, ni))
    if any(b <= a for a, b in zip(energies, energies[1:])):
        raise MaterialDomainError(f"{path}: energies must be strictly increasing")
    return Tabulated(tuple(energies), tuple(indices), label=label or str(path))
