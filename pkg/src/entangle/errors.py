"""Exception hierarchy shared by all modules.

Every error carries an ``exit_code`` so the command line front end can map
failures onto distinct process statuses without inspecting messages.
"""


class EntanglementError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class InputDomainError(EntanglementError, ValueError):
    """An argument lies outside the domain an operation accepts."""

    exit_code = 2


class OnCutError(InputDomainError):
    """Spectral parameter sits on the branch cut [-1, 1]."""


class DegenerateStateError(InputDomainError):
    """A ground state requested from an oracle is not unique."""


class CapabilityError(EntanglementError, NotImplementedError):
    """The requested combination of options is not supported."""

    exit_code = 3


class ResourceError(EntanglementError):
    """A desk-scale size cap would be exceeded."""

    exit_code = 4


class NumericalContractError(EntanglementError, ArithmeticError):
    """A numerical post-condition failed (convergence, spectrum bounds, ...)."""

    exit_code = 5


class SpectrumRangeError(NumericalContractError):
    """Eigenvalues fall outside the interval their convention allows."""
