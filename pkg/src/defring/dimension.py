"""Pure-arithmetic bound ledger for reducibility loci and ring dimensions.

A partition groups the irreducible constituents of a semisimple determinant
law into blocks of dimensions d_1..d_r; twist classes collect blocks that
agree up to a cyclotomic twist (blocks in one class must share a dimension).
The statistics

    l_P = sum d_j^2,   n_P = (d^2 - l_P)/2,   p_P = l_P + n_P,
    delta_P = max(0, sum C(n'_i, 2) - (1 + n))

feed upper bounds for the dimensions of the corresponding loci, and the gap
between the ambient dimension d^2 + d^2 n and each bound is certified to be
at least n (d = 2) or 1 + n (d > 2) for every partition other than the
one-block partition.  Everything here is exact integer (or half-integer)
arithmetic; no linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, Iterator, List, Sequence, Tuple

from .errors import AssertionFailedError, InconsistentPartitionError


@dataclass(frozen=True)
class PartitionData:
    """A block partition with twist classes and its derived statistics."""

    d: int
    n: int
    block_dims: Tuple[int, ...]
    twist_classes: Tuple[Tuple[int, ...], ...]
    l_P: int
    n_P: int
    p_P: int
    delta_P: int

    @property
    def r(self) -> int:
        return len(self.block_dims)

    @property
    def class_sizes(self) -> Tuple[int, ...]:
        return tuple(len(c) for c in self.twist_classes)

    def as_dict(self) -> dict:
        return {
            "d": self.d, "n": self.n,
            "block_dims": list(self.block_dims),
            "twist_classes": [list(c) for c in self.twist_classes],
            "l_P": self.l_P, "n_P": self.n_P, "p_P": self.p_P,
            "delta_P": self.delta_P,
        }


def partition_stats(d: int, n: int, block_dims: Sequence[int],
                    twist_classes: Sequence[Sequence[int]]) -> PartitionData:
    """Validate a partition with twist classes and compute its statistics."""
    block_dims = tuple(int(x) for x in block_dims)
    if d < 1 or n < 0:
        raise InconsistentPartitionError("need d >= 1 and n >= 0")
    if not block_dims or any(x < 1 for x in block_dims):
        raise InconsistentPartitionError("block dimensions must be positive")
    if sum(block_dims) != d:
        raise InconsistentPartitionError(
            f"block dimensions {block_dims} do not sum to d={d}")
    r = len(block_dims)
    classes = tuple(tuple(sorted(int(i) for i in c)) for c in twist_classes)
    flat = [i for c in classes for i in c]
    if sorted(flat) != list(range(r)):
        raise InconsistentPartitionError(
            "twist classes must partition the block indices 0..r-1")
    for c in classes:
        dims = {block_dims[i] for i in c}
        if len(dims) > 1:
            raise InconsistentPartitionError(
                f"twist class {c} mixes block dimensions {sorted(dims)}")
    l_P = sum(x * x for x in block_dims)
    if (d * d - l_P) % 2 != 0:
        raise InconsistentPartitionError("parity violation in n_P (impossible)")
    n_P = (d * d - l_P) // 2
    p_P = l_P + n_P
    delta_P = max(0, sum(comb(len(c), 2) for c in classes) - (1 + n))
    return PartitionData(d=d, n=n, block_dims=block_dims, twist_classes=classes,
                         l_P=l_P, n_P=n_P, p_P=p_P, delta_P=delta_P)


def bound_fibre(constituent_dims: Sequence[int], n: int,
                class_sizes: Sequence[int]) -> int:
    """Upper bound d^2 - r + n_P*n + sum C(n_i, 2) for a fibre over a point.

    ``constituent_dims`` are the dimensions of the r fibre constituents and
    ``class_sizes`` the sizes of their twist-equivalence classes.
    """
    dims = tuple(int(x) for x in constituent_dims)
    if not dims or any(x < 1 for x in dims):
        raise InconsistentPartitionError("constituent dimensions must be positive")
    if sum(int(s) for s in class_sizes) != len(dims):
        raise InconsistentPartitionError("class sizes must sum to the number "
                                         "of constituents")
    d = sum(dims)
    r = len(dims)
    l = sum(x * x for x in dims)
    n_P = (d * d - l) // 2
    return d * d - r + n_P * n + sum(comb(int(s), 2) for s in class_sizes)


def bound_ZP(pd: PartitionData) -> int:
    """Upper bound d^2 + p_P*n + delta_P for the locus of this partition."""
    return pd.d * pd.d + pd.p_P * pd.n + pd.delta_P


def bound_ZPij(pd: PartitionData) -> int:
    """Refined bound d^2 + p_P*n + sum C(n'_i,2) - (1+n)."""
    return (pd.d * pd.d + pd.p_P * pd.n
            + sum(comb(s, 2) for s in pd.class_sizes) - (1 + pd.n))


def bound_Y(pd_max: PartitionData) -> int:
    """Bound d^2 + n_Pmax*n + n_Pmax - 1 for the one-dimensional-glueing locus.

    ``pd_max`` must be the finest partition (every constituent its own
    block), whose n_P is the n_Pmax of the formula.
    """
    return pd_max.d * pd_max.d + pd_max.n_P * pd_max.n + pd_max.n_P - 1


def codim_gap(pd: PartitionData) -> int:
    """Gap d^2 + d^2*n - bound_ZP, certified >= n (d=2) or >= 1+n (d>2).

    The certification applies to every partition with more than one block;
    a violation raises AssertionFailedError since the inequality is a
    theorem about the formulas.
    """
    gap = pd.d * pd.d + pd.d * pd.d * pd.n - bound_ZP(pd)
    if pd.r > 1:
        needed = pd.n if pd.d == 2 else 1 + pd.n
        if gap < needed:
            raise AssertionFailedError(
                f"codimension gap {gap} below certified minimum {needed} "
                f"for {pd}")
    return gap


def expected_dims(d: int, n: int, mu_order: int = 1) -> Dict[str, int]:
    """Exact dimensions of the ring variants, as a flat record."""
    full = d * d + d * d * n
    fixed = (d * d - 1) * (n + 1)
    return {
        "R_framed": 1 + full,
        "R_framed_mod_p": full,
        "A_gen": 1 + full,
        "A_gen_mod_p": full,
        "R_chi": 1 + full,
        "R_chi_mod_p": full,
        "R_psi": 1 + fixed,
        "R_psi_mod_p": fixed,
        "A_gen_psi": 1 + fixed,
        "component_count": mu_order,
    }


def mrs_bound(d: int, n: int, constituent_dims: Sequence[int]) -> Tuple[int, int]:
    """(generic, special) bounds 1 + d^2 + n*sum d_i^2 and one less."""
    dims = tuple(int(x) for x in constituent_dims)
    if sum(dims) != d:
        raise InconsistentPartitionError(
            f"constituent dimensions {dims} do not sum to d={d}")
    generic = 1 + d * d + n * sum(x * x for x in dims)
    return generic, generic - 1


def kummer_codims(d: int, n: int, m_constituents: int) -> Dict[str, object]:
    """Codimension lower bounds for the non-Kummer-irreducible loci.

    z_spcl is the special locus bound n*d^2/2 (kept as an exact fraction),
    z_kred the Kummer-reducible locus bound n*d, and the complement bounds
    are for the loci where Kummer-irreducibility fails: n for d=2, 1+n for
    d>2, and d*n when the determinant law is irreducible (one constituent),
    in which case the generic-fibre irreducible locus is everything.
    """
    if d < 1 or n < 1 or m_constituents < 1:
        raise InconsistentPartitionError("need d, n, m_constituents >= 1")
    spcl = Fraction(n * d * d, 2)
    kred = n * d
    if m_constituents == 1:
        complement = d * n
    elif d == 2:
        complement = n
    else:
        complement = 1 + n
    return {
        "z_spcl_codim_lb": spcl,
        "z_kred_codim_lb": kred,
        "kirr_complement_codim_lb": complement,
        "virr_complement_codim_lb": complement,
        "virr_is_everything": m_constituents == 1,
    }


# ----------------------------------------------------------------------
# exhaustive structure enumeration (for sweeps and reports)
# ----------------------------------------------------------------------

def integer_partitions(d: int, largest: int | None = None) -> Iterator[Tuple[int, ...]]:
    """Multisets of positive integers summing to d, descending order."""
    largest = d if largest is None else largest
    if d == 0:
        yield ()
        return
    for first in range(min(d, largest), 0, -1):
        for rest in integer_partitions(d - first, first):
            yield (first,) + rest


def set_partitions(items: Sequence[int]) -> Iterator[List[List[int]]]:
    """All set partitions of a list, in a deterministic order."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def partition_structures(d: int, n: int) -> Iterator[PartitionData]:
    """Every partition-with-twist-classes structure on d, deduplicated.

    Constituent dimension multisets run over integer partitions of d;
    partitions of the constituents into blocks are deduplicated by the
    resulting block-dimension multiset (the statistics depend on nothing
    else); twist classes then group equal-dimension blocks in every
    possible way.
    """
    seen_blocks = set()
    for constituents in integer_partitions(d):
        for blocks in set_partitions(list(range(len(constituents)))):
            block_dims = tuple(sum(constituents[i] for i in b) for b in blocks)
            key = tuple(sorted(block_dims))
            if key in seen_blocks:
                continue
            seen_blocks.add(key)
            r = len(block_dims)
            # group block indices by dimension, then twist-partition each group
            by_dim: Dict[int, List[int]] = {}
            for i, bd in enumerate(block_dims):
                by_dim.setdefault(bd, []).append(i)
            groups = [by_dim[k] for k in sorted(by_dim)]
            seen_classes = set()
            for combo in _product_of_partitions(groups):
                classes = tuple(sorted(tuple(sorted(c)) for c in combo))
                ckey = tuple(sorted(tuple(sorted(block_dims[i] for i in c))
                                    for c in classes))
                if (key, ckey) in seen_classes:
                    continue
                seen_classes.add((key, ckey))
                yield partition_stats(d, n, block_dims, classes)


def _product_of_partitions(groups: Sequence[List[int]]) -> Iterator[List[List[int]]]:
    if not groups:
        yield []
        return
    for head in set_partitions(groups[0]):
        for tail in _product_of_partitions(groups[1:]):
            yield head + tail


def sweep_table(d: int, n: int) -> List[dict]:
    """One row per structure: statistics, bounds and the certified gap."""
    rows = []
    for pd in partition_structures(d, n):
        row = pd.as_dict()
        row["bound_ZP"] = bound_ZP(pd)
        row["bound_ZPij"] = bound_ZPij(pd)
        row["codim_gap"] = codim_gap(pd)
        rows.append(row)
    return rows
