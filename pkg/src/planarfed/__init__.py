"""planarfed: quantized fluctuational electrodynamics in planar stacks.

Computes spectral dyadic Green's functions for stratified magnetodielectric
media and, from them, nonlocal/local/interference densities of states,
effective photon numbers and temperatures, field fluctuation spectra,
Poynting fluxes, and net emitted power for layers held at independent
thermal or electrical excitations.

Units: photon energies in eV, lengths in nm, temperatures in K.
"""
from .constants import HBAR_C, K_B, vacuum_wavenumber
from .errors import (CoincidenceError, DegeneracyError, InversionDomainError,
                     MaterialDomainError, MaterialRangeError, NoSourcesError,
                     PlanarfedError, ScenarioError, StackError,
                     TailDivergenceError)
from .materials import (ConstantIndex, Drude, MaterialModel, OpticalResponse,
                        Tabulated, VegardAlloy, load_dispersion_table)
from .stack import Layer, LayerStack, SpectralContext, kz_branch, spectral_context
from .coefficients import StackCoefficients, fresnel, stack_coefficients
from .greens import GreensTensor, greens_tensor, scalar_xi, scalar_xi_dz
from .dos import ifdos, ifdos_reduced, ldos, ldos_consistency, nldos, source_layer_integrals
from .fieldquants import (BiasedQuantumWell, ConstantEta, Excitation,
                          FieldReport, Thermal, bose_einstein,
                          effective_temperature, field_report)
from .scenario import (ResultGrid, Scenario, load_scenario, parse_scenario,
                       run_scenario, write_results)

__version__ = "0.1.0"
