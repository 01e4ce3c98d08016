"""Physical constants for the eV/nm unit system.

All lengths are in nm and photon energies in eV.  The vacuum wavenumber of a
photon of energy E is k0 = E / HBAR_C (nm^-1).  Formulas written in terms of
(omega, c, hbar) are evaluated with omega -> E, c -> HBAR_C, hbar -> 1, which
is an exact global rescaling: ratios, balance conditions, and the divergence
identity are unaffected.
"""

# hbar * c in eV nm (CODATA)
HBAR_C = 197.3269804

# Boltzmann constant in eV / K (exact, SI 2019)
K_B = 8.617333262e-5


def vacuum_wavenumber(energy_ev: float) -> float:
    """k0 in nm^-1 for a photon energy in eV."""
    return energy_ev / HBAR_C
