"""Pseudo-characters of matrix tuples via characteristic polynomial data.

For a d x d matrix m over GF(q) write det(t*I - m) = sum_i (-1)^i L_i(m)
t^(d-i); the tuple (L_0, ..., L_d) starts at L_0 = 1, has L_1 = trace and
L_d = det, and L_d is multiplicative.  The pseudo-character of a matrix tuple
records these coefficient tuples on every element of the generated group.

Equality of two pseudo-characters is decided exactly on the paired closure:
run a joint breadth-first closure of the zipped generator pairs and compare
coefficient tuples pair by pair.  Over a field this equality holds if and
only if the two tuples have isomorphic semisimplifications, which is what the
module layer cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import ffalg
from .errors import CapExceededError, DimensionMismatchError
from .ffalg import Field, Mat, MatrixGroup


def char_poly_coeffs(F: Field, m: Mat) -> Tuple[int, ...]:
    """(L_1, ..., L_d) with det(t*I - m) = sum_i (-1)^i L_i t^(d-i), L_0 = 1.

    L_1 is the trace and L_d the determinant.
    """
    coeffs = ffalg.charpoly(F, m)
    out = []
    for i, c in enumerate(coeffs):
        if i == 0:
            continue
        out.append(F.neg(c) if i % 2 == 1 else c)
    return tuple(out)


@dataclass(frozen=True)
class PseudoCharacter:
    """Coefficient tuples on every element of the closure of a matrix tuple."""

    field: Field
    d: int
    group: MatrixGroup
    values: Dict[Mat, Tuple[int, ...]]

    def value(self, m: Mat) -> Tuple[int, ...]:
        return self.values[m]

    def value_of_word(self, word: Sequence[int]) -> Tuple[int, ...]:
        return self.values[self.group.evaluate_word(tuple(word))]


def pseudo_of(F: Field, mats: Sequence[Mat], cap: Optional[int] = None) -> PseudoCharacter:
    """Pseudo-character of the group generated by an invertible matrix tuple."""
    G = ffalg.closure(F, mats, cap=cap)
    values = {m: char_poly_coeffs(F, m) for m in G.elements}
    return PseudoCharacter(field=F, d=G.d, group=G, values=values)


def pseudo_equal(F: Field, left: Sequence[Mat], right: Sequence[Mat],
                 cap: Optional[int] = None) -> bool:
    """Exact pseudo-character equality via the paired-tuple closure.

    Both tuples must have the same arity and matrix size.  The paired monoid
    closure of (left_i, right_i) is walked breadth first; any element whose
    two components have different coefficient tuples ends the walk with
    False.  Raises CapExceededError if the paired closure outgrows the cap.
    """
    lefts = tuple(ffalg.mat_from_rows(m) for m in left)
    rights = tuple(ffalg.mat_from_rows(m) for m in right)
    if len(lefts) != len(rights):
        raise DimensionMismatchError("tuples have different arity")
    if not lefts:
        raise DimensionMismatchError("need at least one matrix per tuple")
    d = len(lefts[0])
    for m in lefts + rights:
        if len(m) != d or any(len(r) != d for r in m):
            raise DimensionMismatchError("all matrices must be d x d for a common d")
    limit = ffalg.effective_cap(cap)
    ident = ffalg.mat_identity(F, d)
    start = (ident, ident)
    seen = {start}
    frontier: List[Tuple[Mat, Mat]] = [start]
    while frontier:
        new_frontier = []
        for a, b in frontier:
            if char_poly_coeffs(F, a) != char_poly_coeffs(F, b):
                return False
            for ga, gb in zip(lefts, rights):
                na, nb = ffalg.mat_mul(F, a, ga), ffalg.mat_mul(F, b, gb)
                if (na, nb) not in seen:
                    seen.add((na, nb))
                    new_frontier.append((na, nb))
                    if len(seen) > limit:
                        raise CapExceededError(
                            f"paired closure exceeded cap of {limit} elements")
        frontier = new_frontier
    return True


def cayley_hamilton_check(F: Field, m: Mat) -> bool:
    """True when sum_i (-1)^i L_i(m) m^(d-i) is the zero matrix."""
    d = len(m)
    lam = (F.one,) + char_poly_coeffs(F, m)
    acc = ffalg.mat_zero(d)
    for i in range(d + 1):
        c = lam[i] if i % 2 == 0 else F.neg(lam[i])
        term = ffalg.mat_scalar(F, c, ffalg.mat_pow(F, m, d - i))
        acc = ffalg.mat_add(F, acc, term)
    return acc == ffalg.mat_zero(d)
