"""Exception types shared across the solver."""


class PlanarfedError(Exception):
    """Base class for all solver errors."""


class MaterialDomainError(PlanarfedError, ValueError):
    """Material model evaluated outside its physical domain (e.g. E <= 0)."""


class MaterialRangeError(PlanarfedError, ValueError):
    """Tabulated dispersion queried outside the table's energy range."""


class StackError(PlanarfedError, ValueError):
    """Invalid layer-stack geometry."""


class DegeneracyError(PlanarfedError, ArithmeticError):
    """A coefficient denominator vanished at a numerically degenerate point."""


class CoincidenceError(PlanarfedError, ArithmeticError):
    """Quantity with a |z - z'| kink requested exactly at z = z'."""


class TailDivergenceError(PlanarfedError, ArithmeticError):
    """Semi-infinite source integral does not decay (zero loss, propagating
    k_z); enable the loss floor."""


class InversionDomainError(PlanarfedError, ValueError):
    """Voltage-biased source photon number requested at hbar*omega <= eU,
    where the Bose factor diverges or turns negative."""


class NoSourcesError(PlanarfedError, ArithmeticError):
    """Photon-number denominator vanished: no emitting sources anywhere."""


class ScenarioError(PlanarfedError, ValueError):
    """Scenario file failed validation; message carries line references."""
