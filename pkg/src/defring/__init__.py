"""Dimension bounds, component counts and fibre data for mod-p local
deformation problems of residual representations.

The package computes, for a residual representation of a local Galois
group given by topological generators over a finite field:

* group/monoid closures, pseudo-characters and Brauer-Nesbitt equivalence;
* adjoint-module cohomology dimensions via the local Euler characteristic;
* exact dimensions and upper bounds for the framed, generic-matrix and
  fixed-determinant deformation rings, with exhaustive partition sweeps;
* irreducible-component counts, determinant-ring structure and smoothness
  predicates;
* exhaustive fibre enumeration of pseudo-character fibres over small
  fields with tangent-space dimensions at every point.

The functionality is exposed as a library, an HTTP service
(``defring.service.app``) and a CLI (``defring``).
"""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (AssertionFailedError, CapExceededError, DefringError,
                     DimensionMismatchError, InconclusiveError,
                     InconsistentLambdaError, InconsistentPartitionError,
                     InputValidationError, NotInvertibleError,
                     PreconditionError, SizeExceededError,
                     UnsupportedFieldError, UnsupportedModuleError)
from .ffalg import Field

__all__ = [
    "__version__",
    "Field",
    "DefringError",
    "AssertionFailedError",
    "CapExceededError",
    "DimensionMismatchError",
    "InconclusiveError",
    "InconsistentLambdaError",
    "InconsistentPartitionError",
    "InputValidationError",
    "NotInvertibleError",
    "PreconditionError",
    "SizeExceededError",
    "UnsupportedFieldError",
    "UnsupportedModuleError",
]
