"""
Error types raised across the hecke_identity package
"""

from typing import Any, Dict, Optional


class HeckeIdentityError(RuntimeError):
    """Base error for every failure raised by this package"""

    def __init__(self, message: str, *, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.details: Dict[str, Any] = dict(details or {})


class UnsupportedPrime(HeckeIdentityError):
    """q is not a prime with q = 3 (mod 4), q > 3, or a formula is not integral for it"""


class InvalidElement(HeckeIdentityError):
    """Matrix entries do not define an element of PSL2(F_q)"""


class ModulusMismatch(HeckeIdentityError):
    """Operands live over different fields F_q"""


class ConductorTooLarge(HeckeIdentityError):
    """Common conductor of a cyclotomic operation exceeds the configured ceiling"""


class ExactModeUnavailable(HeckeIdentityError):
    """Exact character arithmetic is not possible under the current ceiling"""


class UnknownLabel(HeckeIdentityError):
    """Irrep or class label is not part of the table"""


class InternalInconsistency(HeckeIdentityError):
    """A quantity that must be an integer (or rational) is not"""


class NotARepresentationTrace(HeckeIdentityError):
    """No nonnegative integer eigenvalue multiplicities reproduce the trace"""


class NotInGroup(HeckeIdentityError):
    """Integer matrix is not an element of Gamma_1(q)"""


class SignConventionViolation(HeckeIdentityError):
    """Dirichlet class number disagrees with the reduced-forms count"""


class UsageError(HeckeIdentityError):
    """Invalid command-line input"""
