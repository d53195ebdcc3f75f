"""Dimension ledger for local Galois cohomology of tensor modules.

h0 is the dimension of the joint fixed space of the generator actions.  h2
is defined through local duality as the h0 of the dualised module twisted by
the cyclotomic character, with the dual taken from the closed-form registry
(ad is self-dual, ad0 and ad-bar are dual to each other, Hom(A,B) dualises
to Hom(B,A)).  h1 is defined by the Euler characteristic formula
h1 = h0 + h2 + dim(M) * n with n = [F : Q_p]; no cochain spaces are ever
formed.

The profile of a residual representation collects these numbers for ad and
ad0 along with the presentation data (r, s, t) and the expected dimensions
of the framed deformation ring and its fixed-determinant variant.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict
from typing import Sequence, Tuple

from . import gmodules
from .errors import PreconditionError
from .gmodules import GModule, LocalFieldData, ResidualRep


def h0(module: GModule) -> int:
    """dim H^0 = dimension of the invariants of the generator actions."""
    return gmodules.invariants_dim(module)


def h2(module: GModule) -> int:
    """dim H^2 via local duality: h0 of the registered dual, twisted by 1."""
    dual = gmodules.registered_dual(module)
    return gmodules.invariants_dim(gmodules.twist(dual, 1))


def h1(module: GModule, local_field: LocalFieldData) -> int:
    """dim H^1 from the Euler characteristic formula; never via cocycles."""
    return h0(module) + h2(module) + module.dim * local_field.n


@dataclass(frozen=True)
class CohomProfile:
    """h-values for ad and ad0 plus presentation and dimension data.

    r = dim Z^1(ad) = d^2 - h0_ad + h1_ad, s = h2_ad, t = h2_ad0;
    dimZ1_ad0 is the analogous cocycle dimension for the trace-zero module.
    """

    d: int
    n: int
    h0_ad: int
    h1_ad: int
    h2_ad: int
    h0_ad0: int
    h1_ad0: int
    h2_ad0: int
    dimZ1_ad: int
    dimZ1_ad0: int
    r: int
    s: int
    t: int
    expected_dim_R: int
    expected_dim_R_mod: int
    rel_dim_fixed_det: int

    def as_dict(self) -> dict:
        return asdict(self)


def profile(rep: ResidualRep) -> CohomProfile:
    d = rep.d
    n = rep.local_field.n
    ad = gmodules.make_ad(rep)
    ad0 = gmodules.make_ad0(rep)
    h0_ad = h0(ad)
    h2_ad = h2(ad)
    h1_ad = h0_ad + h2_ad + d * d * n
    h0_ad0 = h0(ad0)
    h2_ad0 = h2(ad0)
    h1_ad0 = h0_ad0 + h2_ad0 + (d * d - 1) * n
    dimZ1_ad = d * d - h0_ad + h1_ad
    dimZ1_ad0 = (d * d - 1) - h0_ad0 + h1_ad0
    return CohomProfile(
        d=d, n=n,
        h0_ad=h0_ad, h1_ad=h1_ad, h2_ad=h2_ad,
        h0_ad0=h0_ad0, h1_ad0=h1_ad0, h2_ad0=h2_ad0,
        dimZ1_ad=dimZ1_ad, dimZ1_ad0=dimZ1_ad0,
        r=dimZ1_ad, s=h2_ad, t=h2_ad0,
        expected_dim_R=1 + d * d + d * d * n,
        expected_dim_R_mod=d * d + d * d * n,
        rel_dim_fixed_det=(d * d - 1) * (n + 1),
    )


def ext_dims(rho_i: GModule, rho_j: GModule,
             local_field: LocalFieldData) -> Tuple[int, int, int]:
    """(hom, ext1, ext2) between non-isomorphic absolutely irreducible modules.

    hom vanishes by Schur; ext2 = dim Hom(rho_i, rho_j(1)) which is 0 or 1;
    ext1 follows from the Euler formula for Hom(rho_i, rho_j).
    """
    if not gmodules.is_absolutely_irreducible(rho_i):
        raise PreconditionError("rho_i is not absolutely irreducible")
    if not gmodules.is_absolutely_irreducible(rho_j):
        raise PreconditionError("rho_j is not absolutely irreducible")
    if gmodules.modules_isomorphic(rho_i, rho_j):
        raise PreconditionError("constituents are isomorphic; ext_dims needs i != j")
    hom = gmodules.invariants_dim(gmodules.hom_module(rho_i, rho_j))
    ext2 = gmodules.invariants_dim(
        gmodules.hom_module(rho_i, gmodules.twist(rho_j, 1)))
    if ext2 not in (0, 1):
        raise PreconditionError(f"twist hom dimension {ext2} is not 0 or 1; "
                                "inputs are not non-isomorphic irreducibles")
    n = local_field.n
    ext1 = rho_i.dim * rho_j.dim * n + ext2
    return hom, ext1, ext2


def fibre_tangent_dim(constituent_dims: Sequence[int],
                      twist_hom: Sequence[Sequence[int]], n: int) -> int:
    """Tangent dimension dim n_P * (1+n) + sum_{i<j} twist_hom[i][j].

    dim n_P = sum_{i<j} d_i d_j is the nilpotent-block count for the flag of
    the given constituents; only the strictly upper off-diagonal twist
    entries enter.
    """
    dims = list(constituent_dims)
    r = len(dims)
    for row in twist_hom:
        for v in row:
            if v not in (0, 1):
                raise PreconditionError("twist_hom entries must be 0 or 1")
    dim_n = sum(dims[i] * dims[j] for i in range(r) for j in range(i + 1, r))
    extra = sum(twist_hom[i][j] for i in range(r) for j in range(i + 1, r))
    return dim_n * (1 + n) + extra
