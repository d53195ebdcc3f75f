"""Irreducible-component bookkeeping for framed deformation spaces.

The generic fibre decomposes along characters of the group mu of p-power
roots of unity in the base field, so the component count is just mu_order
(stated after base change to a sufficiently large coefficient field; reports
carry a flag for that convention).  The determinant ring is the group
algebra of mu with n+1 formal variables.  phi_d splits d into its prime-to-p
and p-power parts; the p-power part contributes a finite flat degree of
(p^m)^(n+1) through the monomial basis box with exponents below p^m.

Smoothness predicates reduce to vanishing of the ad0 obstruction, with the
classical two-character hypotheses evaluated directly on d = 2 extensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from . import cohom, dimension, gmodules
from .errors import PreconditionError
from .gmodules import LocalFieldData, ResidualRep


@dataclass(frozen=True)
class MuCharacter:
    """A character of mu, recorded as an exponent against a fixed generator."""

    mu_order: int
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.mu_order:
            raise PreconditionError(
                f"character index {self.index} out of range for mu_order {self.mu_order}")


def enumerate_mu_characters(mu_order: int) -> Tuple[MuCharacter, ...]:
    return tuple(MuCharacter(mu_order, i) for i in range(mu_order))


@dataclass(frozen=True)
class ComponentReport:
    """Component count, determinant-ring shape, phi_d data and flags."""

    mu_order: int
    component_count_generic: int
    det_ring: Tuple[int, int]               # (group-algebra rank, variable count)
    phi_d: Tuple[int, int, int]             # (prime-to-p part, p-part, flat degree)
    per_chi_dims: Dict[str, int]
    fixed_det_dims: Dict[str, int]
    smoothness: Dict[str, object]
    factorial_exception: Optional[bool]     # None when the rep is not irreducible
    large_L_convention: bool = True         # counts hold after enlarging the
                                            # coefficient field

    def as_dict(self) -> dict:
        return {
            "mu_order": self.mu_order,
            "component_count_generic": self.component_count_generic,
            "det_ring": list(self.det_ring),
            "phi_d": list(self.phi_d),
            "per_chi_dims": dict(self.per_chi_dims),
            "fixed_det_dims": dict(self.fixed_det_dims),
            "smoothness": dict(self.smoothness),
            "factorial_exception": self.factorial_exception,
            "large_L_convention": self.large_L_convention,
        }


def component_count(rep: ResidualRep) -> int:
    """Number of irreducible components of the generic fibre: mu_order."""
    return rep.local_field.mu_order


def det_ring_structure(local_field: LocalFieldData) -> Tuple[int, int]:
    """(mu_order, n+1): group-algebra rank and formal-variable count."""
    return local_field.mu_order, local_field.n + 1


def phi_d_data(d: int, local_field: LocalFieldData) -> Tuple[int, int, int]:
    """Split d = e * p^m with p not dividing e; flat degree (p^m)^(n+1)."""
    if d < 1:
        raise PreconditionError("d must be >= 1")
    p = local_field.p
    p_part = 1
    e = d
    while e % p == 0:
        e //= p
        p_part *= p
    return e, p_part, p_part ** (local_field.n + 1)


def _extension_characters(rep: ResidualRep) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """The two diagonal characters of a d=2 extension of characters, or None.

    Characters are returned as value tuples on the generators, read off the
    composition factors of the rep (both factors must be 1-dimensional).
    """
    if rep.d != 2:
        return None
    ss = gmodules.semisimplify_tuple(rep.field, rep.matrices)
    if ss.dims != (1, 1):
        return None
    psi1 = tuple(m[0][0] for m in ss.constituents[0])
    psi2 = tuple(m[0][0] for m in ss.constituents[1])
    return psi1, psi2


def _char_twist_equal(F, psi_a: Tuple[int, ...], psi_b: Tuple[int, ...],
                      omegas: Tuple[int, ...]) -> bool:
    """psi_a == psi_b * omega as characters on the generators."""
    return all(a == F.mul(b, F.embed(o))
               for a, b, o in zip(psi_a, psi_b, omegas))


def smoothness_predicates(rep: ResidualRep) -> Dict[str, object]:
    """Obstruction vanishing and the two-character smoothness hypotheses.

    formally_smooth reports h2_ad0 == 0.  For d = 2 extensions of
    characters, pnot2_hypothesis evaluates psi1 != psi2(1) and
    psi2 != psi1(1) (meaningful for p > 2); peq2_applicable marks the p = 2,
    F = Q_2, non-split distinct-character situation.
    """
    F = rep.field
    prof = cohom.profile(rep)
    out: Dict[str, object] = {
        "h2_ad": prof.s,
        "h2_ad0": prof.t,
        "formally_smooth": prof.t == 0,
        "is_character_extension": False,
        "characters_distinct": None,
        "is_split": None,
        "pnot2_hypothesis": None,
        "peq2_applicable": False,
    }
    chars = _extension_characters(rep)
    if chars is None:
        return out
    psi1, psi2 = chars
    omegas = rep.omegas
    out["is_character_extension"] = True
    distinct = psi1 != psi2
    out["characters_distinct"] = distinct
    ss = gmodules.semisimplify_tuple(F, rep.matrices)
    split = gmodules.find_isomorphism(F, rep.matrices, ss.block_tuple) is not None
    out["is_split"] = split
    if F.p > 2:
        out["pnot2_hypothesis"] = (
            not _char_twist_equal(F, psi1, psi2, omegas)
            and not _char_twist_equal(F, psi2, psi1, omegas))
    lf = rep.local_field
    if F.p == 2 and lf.e == 1 and lf.f == 1 and distinct and not split:
        out["peq2_applicable"] = True
    return out


def factorial_exception(rep: ResidualRep) -> bool:
    """The d=2, F=Q_3, self-twist case where factoriality fails.

    Preconditions: the rep is absolutely irreducible.  True exactly when
    d = 2, the local field is Q_3 (p=3, e=1, f=1), and the rep is
    isomorphic to its own cyclotomic twist, checked both by pseudo-character
    equality and by an explicit intertwiner.
    """
    F = rep.field
    module = gmodules.make_rep_module(rep)
    if not gmodules.is_absolutely_irreducible(module):
        raise PreconditionError("factorial_exception needs an absolutely "
                                "irreducible rep")
    lf = rep.local_field
    if rep.d != 2 or (lf.p, lf.e, lf.f) != (3, 1, 1):
        return False
    twisted = gmodules.twist(module, 1)
    from . import pseudochar
    if not pseudochar.pseudo_equal(F, module.actions, twisted.actions):
        return False
    return gmodules.find_isomorphism(F, module.actions, twisted.actions) is not None


def component_report(rep: ResidualRep) -> ComponentReport:
    lf = rep.local_field
    d = rep.d
    n = lf.n
    dims = dimension.expected_dims(d, n, lf.mu_order)
    per_chi = {"R_chi": dims["R_chi"], "R_chi_mod_p": dims["R_chi_mod_p"]}
    fixed = {"R_psi": dims["R_psi"], "R_psi_mod_p": dims["R_psi_mod_p"],
             "A_gen_psi": dims["A_gen_psi"]}
    module = gmodules.make_rep_module(rep)
    irr = gmodules.is_absolutely_irreducible(module)
    fact = factorial_exception(rep) if irr else None
    return ComponentReport(
        mu_order=lf.mu_order,
        component_count_generic=component_count(rep),
        det_ring=det_ring_structure(lf),
        phi_d=phi_d_data(d, lf),
        per_chi_dims=per_chi,
        fixed_det_dims=fixed,
        smoothness=smoothness_predicates(rep),
        factorial_exception=fact,
    )
