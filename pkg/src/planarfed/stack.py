"""Planar layer-stack geometry and per-(K, omega) spectral bookkeeping.

A stack with N interfaces at strictly increasing positions zs[0..N-1] (nm)
has N+1 layers indexed 0..N.  Layer l occupies (zs[l-1], zs[l]); layers 0 and
N are semi-infinite.  Interface i sits between layers i and i+1.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constants import vacuum_wavenumber
from .errors import StackError
from .materials import MaterialModel, OpticalResponse, sqrt_upper

MIN_THICKNESS = 1e-6  # nm; zero-thickness layers are rejected, not special-cased

# |k0^2 n^2 - K^2| below this (nm^-2) counts as an exact light-line hit and
# triggers the relative K nudge.
BRANCH_EPS = 1e-24
BRANCH_NUDGE = 1e-9


@dataclass(frozen=True)
class Layer:
    """One material slab plus the occupation rule its noise sources follow.

    excitation is any object with an eta(energy_ev) method; it may stay None
    for purely spectral work that never evaluates source occupations.
    """

    material: MaterialModel
    excitation: object = None


@dataclass(frozen=True)
class SpectralCoordinate:
    """Evaluation point: depth z (nm), in-plane wavenumber K (nm^-1),
    photon energy omega (eV)."""

    z: float
    K: float
    omega: float

    def __post_init__(self) -> None:
        if self.K < 0.0:
            raise StackError(f"K must be >= 0, got {self.K}")
        if not self.omega > 0.0:
            raise StackError(f"omega must be > 0, got {self.omega}")


class LayerStack:
    """Ordered layers separated by interfaces at zs (nm)."""

    def __init__(self, layers: list[Layer], interfaces) -> None:
        interfaces = np.asarray(interfaces, dtype=float)
        if interfaces.ndim != 1 or interfaces.size < 1:
            raise StackError("need at least one interface")
        if not np.all(np.diff(interfaces) > 0.0):
            raise StackError("interface positions must be strictly increasing")
        if len(layers) != interfaces.size + 1:
            raise StackError(
                f"{len(layers)} layers with {interfaces.size} interfaces; "
                "layer count must be interface count + 1"
            )
        d = np.diff(interfaces)
        if interfaces.size >= 2 and np.min(d) < MIN_THICKNESS:
            raise StackError(
                f"interior layer thinner than {MIN_THICKNESS} nm not supported"
            )
        self.layers = list(layers)
        self.interfaces = interfaces

    @property
    def n_interfaces(self) -> int:
        return self.interfaces.size

    @property
    def n_layers(self) -> int:
        return len(self.layers)

    def thickness(self, layer: int) -> float:
        """d_l = zs[l] - zs[l-1]; only defined for interior layers."""
        if not 1 <= layer <= self.n_interfaces - 1:
            raise StackError(f"layer {layer} is semi-infinite; no thickness")
        return float(self.interfaces[layer] - self.interfaces[layer - 1])

    def bounds(self, layer: int) -> tuple[float, float]:
        lo = -np.inf if layer == 0 else float(self.interfaces[layer - 1])
        hi = np.inf if layer == self.n_interfaces else float(self.interfaces[layer])
        return lo, hi

    def locate_layer(self, z: float) -> int:
        """Layer index l with zs[l-1] < z <= zs[l]; points exactly on an
        interface belong to the layer below."""
        return int(np.searchsorted(self.interfaces, z, side="left"))


@dataclass(frozen=True)
class SpectralContext:
    """Per-layer optical data at one (K, omega) sample.

    The loss floor raises Im(eps) of nominally lossless layers so that
    thermal sources exist everywhere and semi-infinite source integrals
    converge; activations are recorded in floor_layers.
    """

    stack: LayerStack
    omega: float
    K: float
    k0: float
    eps: tuple[complex, ...]
    mu: tuple[complex, ...]
    n: tuple[complex, ...]
    kz: tuple[complex, ...]
    floor_layers: tuple[int, ...] = ()
    nudged: bool = False

    def eps_i(self, layer: int) -> float:
        return self.eps[layer].imag

    def mu_i(self, layer: int) -> float:
        return self.mu[layer].imag


def kz_branch(k0: float, n: complex, K: float) -> complex:
    """k_z = sqrt(k0^2 n^2 - K^2) on the branch Im >= 0 (Re >= 0 if Im = 0)."""
    return sqrt_upper(k0 * k0 * n * n - K * K)


def kz_in_layer(stack: LayerStack, layer: int, K: float, omega_ev: float) -> complex:
    resp = stack.layers[layer].material.evaluate(omega_ev)
    return kz_branch(vacuum_wavenumber(omega_ev), resp.index, K)


def spectral_context(
    stack: LayerStack,
    K: float,
    omega_ev: float,
    loss_floor: float = 1e-9,
    responses: list[OpticalResponse] | None = None,
) -> SpectralContext:
    """Evaluate all layer materials at omega and resolve k_z branches.

    K is nudged by one part in 1e9 when it lands numerically on a light line
    of some layer (k_z = 0 would divide out later).
    """
    if K < 0.0:
        raise StackError(f"K must be >= 0, got {K}")
    k0 = vacuum_wavenumber(omega_ev)
    if responses is None:
        responses = [lay.material.evaluate(omega_ev) for lay in stack.layers]
    eps: list[complex] = []
    mu: list[complex] = []
    floored: list[int] = []
    for idx, resp in enumerate(responses):
        e, m = resp.epsilon, resp.mu
        if loss_floor > 0.0 and e.imag < loss_floor:
            e = complex(e.real, loss_floor)
            floored.append(idx)
        eps.append(e)
        mu.append(m)
    n = [sqrt_upper(e * m) for e, m in zip(eps, mu)]
    nudged = False
    if any(abs(k0 * k0 * ni * ni - K * K) < BRANCH_EPS for ni in n):
        K = K * (1.0 + BRANCH_NUDGE) if K > 0.0 else BRANCH_EPS**0.5
        nudged = True
    kz = [kz_branch(k0, ni, K) for ni in n]
    return SpectralContext(
        stack=stack,
        omega=omega_ev,
        K=K,
        k0=k0,
        eps=tuple(eps),
        mu=tuple(mu),
        n=tuple(n),
        kz=tuple(kz),
        floor_layers=tuple(floored),
        nudged=nudged,
    )
