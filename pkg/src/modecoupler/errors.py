"""Exception types shared across the package."""


class ModeCouplerError(Exception):
    """Base class for all package errors."""


class DomainError(ModeCouplerError):
    """A physical parameter or state violates its domain constraints."""


class SingularRegimeError(ModeCouplerError):
    """The evolution generator is singular (balanced maximal collective decay);
    the steady state depends on the initial antisymmetric-state population."""


class MissingInitialCondition(SingularRegimeError):
    """An operation in the singular regime was called without rho_dd(0)."""


class StepSizeError(ModeCouplerError):
    """Requested integration step violates the stability guard."""


class NonFiniteError(ModeCouplerError):
    """Integration produced a non-finite value."""
