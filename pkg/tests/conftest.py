"""Shared builders for the test-suite."""

from __future__ import annotations

from typing import Sequence

from defring.ffalg import Field
from defring.gmodules import LocalFieldData, ResidualRep


def make_rep(p: int, mats: Sequence[Sequence[Sequence[int]]],
             omegas: Sequence[int] | None = None, f: int = 1,
             e: int = 1, lf_f: int = 1, mu_order: int = 1) -> ResidualRep:
    """Residual rep over GF(p^f) with local-field data (p, e, lf_f)."""
    F = Field(p, f)
    if omegas is None:
        omegas = [1] * len(mats)
    if p == 2 and mu_order == 1:
        mu_order = 2  # -1 is a 2-power root of unity in any 2-adic field
    gens = tuple((tuple(tuple(x % F.q for x in row) for row in m), o)
                 for m, o in zip(mats, omegas))
    lf = LocalFieldData(p=p, e=e, f=lf_f, mu_order=mu_order)
    return ResidualRep(field=F, local_field=lf, generators=gens)


def primitive_root(p: int) -> int:
    """Smallest primitive root mod p (p an odd prime)."""
    for g in range(2, p):
        seen = set()
        x = 1
        for _ in range(p - 1):
            x = x * g % p
            seen.add(x)
        if len(seen) == p - 1:
            return g
    raise ValueError(p)


def trivial_rep_q5() -> ResidualRep:
    """Trivial 2-dim rep with Q_5 local data; one generator carries omega."""
    return make_rep(5, [[[1, 0], [0, 1]], [[1, 0], [0, 1]]], omegas=[1, 2])


def one_plus_omega_q5() -> ResidualRep:
    """1 + cyclotomic as a diagonal 2-dim rep with Q_5 local data."""
    return make_rep(5, [[[1, 0], [0, 2]]], omegas=[2])
