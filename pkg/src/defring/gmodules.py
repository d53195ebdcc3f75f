"""Finite modules over the image of a residual representation.

A residual representation is a tuple of invertible matrices over GF(q),
q = p^f, each paired with the value of the mod-p cyclotomic character on
that generator (an element of GF(p)^x).  From it the adjoint module ad
(conjugation on d x d matrices), its trace-zero submodule ad0, the quotient
ad-bar of ad by scalars, Tate twists by powers of the cyclotomic character,
and Hom modules between constituents are built as explicit matrix actions on
coordinate spaces.

Irreducibility is decided exhaustively (spin every nonzero vector) when the
ambient space is small, and by seeded random spinning with the kernel
double-check on the transpose module otherwise, so every answer is
certified.  Semisimplification walks invariant flags down to irreducible
blocks and returns both the constituents and a conjugated block-diagonal
tuple.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Set, Tuple

from . import ffalg
from .errors import (
    DimensionMismatchError,
    InconclusiveError,
    NotInvertibleError,
    PreconditionError,
    UnsupportedFieldError,
    UnsupportedModuleError,
)
from .ffalg import Field, Mat, MatrixGroup

EXHAUSTIVE_LIMIT = 1 << 20
ISO_SAMPLE_BUDGET = 256


# ----------------------------------------------------------------------
# input data
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class LocalFieldData:
    """Invariants of a p-adic base field F / Q_p.

    n = e * f is the degree [F : Q_p]; mu_order is the number of p-power
    roots of unity contained in F (always a power of p, and at least 2 when
    p = 2 since -1 is there).
    """

    p: int
    e: int
    f: int
    mu_order: int = 1

    def __post_init__(self):
        if not ffalg._is_prime(self.p):
            raise UnsupportedFieldError(f"p={self.p} is not prime")
        if self.e < 1 or self.f < 1:
            raise UnsupportedFieldError("ramification and residue degrees must be >= 1")
        m = self.mu_order
        if m < 1:
            raise UnsupportedFieldError("mu_order must be >= 1")
        while m % self.p == 0:
            m //= self.p
        if m != 1:
            raise UnsupportedFieldError(
                f"mu_order={self.mu_order} is not a power of p={self.p}")
        if self.p == 2 and self.mu_order < 2:
            raise UnsupportedFieldError("for p=2 the group of 2-power roots of unity "
                                        "contains -1, so mu_order must be >= 2")

    @property
    def n(self) -> int:
        return self.e * self.f


@dataclass(frozen=True)
class ResidualRep:
    """A matrix model of a residual representation together with omega.

    ``generators`` pairs each matrix with the value of the mod-p cyclotomic
    character omega on that group element, as an integer in GF(p)^x.  The
    generators are expected to generate the joint image of (rep, omega); all
    invariant computations only ever use the generators, so that convention
    is what makes them correct.
    """

    field: Field
    local_field: LocalFieldData
    generators: Tuple[Tuple[Mat, int], ...]

    def __post_init__(self):
        if self.field.p != self.local_field.p:
            raise DimensionMismatchError("coefficient field and local field disagree on p")
        if not self.generators:
            raise DimensionMismatchError("need at least one generator")
        d = len(self.generators[0][0])
        for m, o in self.generators:
            if len(m) != d or any(len(r) != d for r in m):
                raise DimensionMismatchError("generator matrices have mixed sizes")
            if ffalg.det(self.field, ffalg.mat_from_rows(m)) == 0:
                raise NotInvertibleError("generator matrix is singular")
            if not (1 <= o < max(self.field.p, 2)) and not (self.field.p == 2 and o == 1):
                raise UnsupportedFieldError(
                    f"omega value {o} is not in GF({self.field.p})^x")

    @property
    def d(self) -> int:
        return len(self.generators[0][0])

    @property
    def matrices(self) -> Tuple[Mat, ...]:
        return tuple(ffalg.mat_from_rows(m) for m, _ in self.generators)

    @property
    def omegas(self) -> Tuple[int, ...]:
        return tuple(o for _, o in self.generators)

    def omega_order(self) -> int:
        """Multiplicative order of omega as a character of the image."""
        p = self.field.p
        order = 1
        for o in self.omegas:
            k = 1
            v = o % p
            while v != 1 % p:
                v = (v * o) % p
                k += 1
            order = _lcm(order, k)
        return order

    def image(self, cap: Optional[int] = None) -> MatrixGroup:
        return ffalg.closure(self.field, self.matrices, cap=cap)


def _lcm(a: int, b: int) -> int:
    from math import gcd
    return a * b // gcd(a, b)


# ----------------------------------------------------------------------
# modules
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class GModule:
    """A module given by explicit matrix actions of the rep generators.

    ``omegas`` carries the cyclotomic character values so the module can be
    Tate-twisted; ``label``/``twist``/``source`` identify the construction,
    which is what the dual registry keys on.
    """

    field: Field
    dim: int
    actions: Tuple[Mat, ...]
    omegas: Tuple[int, ...]
    label: str
    twist: int = 0
    source: object = dc_field(default=None, compare=False, hash=False)

    @property
    def p(self) -> int:
        return self.field.p


def make_rep_module(rep: ResidualRep) -> GModule:
    return GModule(field=rep.field, dim=rep.d, actions=rep.matrices,
                   omegas=rep.omegas, label="rep", source=rep)


def _ad_action(F: Field, g: Mat) -> Mat:
    """Matrix of M -> g M g^-1 on row-major vectorised d x d matrices."""
    d = len(g)
    ginv = ffalg.mat_inv(F, g)
    rows = []
    for i in range(d):
        for j in range(d):
            row = [0] * (d * d)
            for a in range(d):
                gia = g[i][a]
                if gia:
                    for b in range(d):
                        v = F.mul(gia, ginv[b][j])
                        if v:
                            row[a * d + b] = F.add(row[a * d + b], v)
            rows.append(tuple(row))
    return tuple(rows)


def make_ad(rep: ResidualRep) -> GModule:
    F = rep.field
    actions = tuple(_ad_action(F, g) for g in rep.matrices)
    return GModule(field=F, dim=rep.d * rep.d, actions=actions,
                   omegas=rep.omegas, label="ad", source=rep)


def _trace_zero_basis(F: Field, d: int) -> List[Tuple[int, ...]]:
    functional = [0] * (d * d)
    for i in range(d):
        functional[i * d + i] = F.one
    return ffalg.kernel_basis(F, [tuple(functional)])


def _subspace_action(F: Field, basis: Sequence[Tuple[int, ...]], ambient: Mat) -> Mat:
    """Action matrix on an invariant subspace, in echelon basis coordinates.

    The basis vectors must each carry coefficient 1 in their own designated
    coordinate and 0 in the designated coordinate of every other basis
    vector (kernel_basis output has this shape), so coordinates of an image
    are read off directly.  Raises if the subspace is not invariant.
    """
    marks = []
    for k, v in enumerate(basis):
        for c, x in enumerate(v):
            if x == F.one and all(basis[j][c] == 0 for j in range(len(basis)) if j != k):
                marks.append(c)
                break
        else:
            raise DimensionMismatchError("basis is not in the expected echelon shape")
    cols = []
    for v in basis:
        w = ffalg.mat_vec(F, ambient, v)
        coords = [w[c] for c in marks]
        # invariance check: the residual must vanish
        resid = list(w)
        for x, bvec in zip(coords, basis):
            for idx in range(len(resid)):
                resid[idx] = F.sub(resid[idx], F.mul(x, bvec[idx]))
        if any(resid):
            raise DimensionMismatchError("subspace is not invariant under the action")
        cols.append(coords)
    return tuple(tuple(cols[j][i] for j in range(len(basis))) for i in range(len(basis)))


def make_ad0(rep: ResidualRep) -> GModule:
    F = rep.field
    d = rep.d
    basis = _trace_zero_basis(F, d)
    actions = []
    for g in rep.matrices:
        amb = _ad_action(F, g)
        actions.append(_subspace_action(F, basis, amb))
    return GModule(field=F, dim=d * d - 1, actions=tuple(actions),
                   omegas=rep.omegas, label="ad0", source=rep)


def make_adbar(rep: ResidualRep) -> GModule:
    """ad modulo scalars, in the basis of classes of e_ij with (i,j) != (d,d)."""
    F = rep.field
    d = rep.d
    n2 = d * d
    keep = [idx for idx in range(n2) if idx != n2 - 1]
    actions = []
    for g in rep.matrices:
        amb = _ad_action(F, g)
        cols = []
        for src in keep:
            e = [0] * n2
            e[src] = F.one
            w = ffalg.mat_vec(F, amb, e)
            # reduce modulo the scalar line: subtract w_dd * identity-matrix vector
            wdd = w[n2 - 1]
            col = []
            for tgt in keep:
                i, j = divmod(tgt, d)
                val = w[tgt]
                if i == j and wdd:
                    val = F.sub(val, wdd)
                col.append(val)
            cols.append(col)
        actions.append(tuple(tuple(cols[j][i] for j in range(len(keep)))
                             for i in range(len(keep))))
    return GModule(field=F, dim=n2 - 1, actions=tuple(actions),
                   omegas=rep.omegas, label="adbar", source=rep)


def hom_module(A: GModule, B: GModule) -> GModule:
    """Hom(A, B) with action phi -> B(g) phi A(g)^-1, row-major vectorised."""
    if A.field != B.field or A.omegas != B.omegas:
        raise DimensionMismatchError("Hom needs modules over one rep and field")
    F = A.field
    da, db = A.dim, B.dim
    actions = []
    for ga, gb in zip(A.actions, B.actions):
        ga_inv = ffalg.mat_inv(F, ga)
        rows = []
        for i in range(db):
            for j in range(da):
                row = [0] * (db * da)
                for a in range(db):
                    gia = gb[i][a]
                    if gia:
                        for b in range(da):
                            v = F.mul(gia, ga_inv[b][j])
                            if v:
                                row[a * da + b] = F.add(row[a * da + b], v)
                rows.append(tuple(row))
        actions.append(tuple(rows))
    return GModule(field=F, dim=da * db, actions=tuple(actions),
                   omegas=A.omegas, label="hom", source=(A, B))


def twist(module: GModule, k: int) -> GModule:
    """Tate twist: scale the action of each generator by omega(g)^k."""
    F = module.field
    p = F.p
    actions = []
    for act, o in zip(module.actions, module.omegas):
        scalar = F.embed(pow(o, k % (p - 1) if p > 2 else 0, p)) if p > 2 else F.one
        actions.append(ffalg.mat_scalar(F, scalar, act))
    return GModule(field=F, dim=module.dim, actions=tuple(actions),
                   omegas=module.omegas, label=module.label,
                   twist=module.twist + k, source=module.source)


def registered_dual(module: GModule) -> GModule:
    """Closed-form dual from the construction registry.

    ad is self-dual via the trace pairing; ad0 and ad-bar are dual to each
    other; Hom(A, B) is dual to Hom(B, A); the standard module's dual is the
    transpose-inverse action.  A twist by k dualises to a twist by -k.
    """
    base_label = module.label
    if base_label == "ad":
        out = make_ad(module.source)
    elif base_label == "ad0":
        out = make_adbar(module.source)
    elif base_label == "adbar":
        out = make_ad0(module.source)
    elif base_label == "hom":
        A, B = module.source
        out = hom_module(B, A)
    elif base_label == "rep":
        F = module.field
        acts = tuple(ffalg.transpose(ffalg.mat_inv(F, g)) for g in module.actions)
        out = GModule(field=F, dim=module.dim, actions=acts,
                      omegas=module.omegas, label="rep_dual", source=module.source)
    elif base_label == "rep_dual":
        out = make_rep_module(module.source)
    else:
        raise UnsupportedModuleError(f"no registered dual for label {base_label!r}")
    if module.twist:
        out = twist(out, -module.twist)
    return out


def direct_sum(modules: Sequence[GModule]) -> GModule:
    if not modules:
        raise DimensionMismatchError("need at least one summand")
    F = modules[0].field
    omegas = modules[0].omegas
    for m in modules[1:]:
        if m.field != F or m.omegas != omegas:
            raise DimensionMismatchError("summands over different reps")
    total = sum(m.dim for m in modules)
    actions = []
    for gi in range(len(omegas)):
        rows = []
        offset = 0
        for m in modules:
            act = m.actions[gi]
            for r in act:
                rows.append((0,) * offset + tuple(r) + (0,) * (total - offset - m.dim))
            offset += m.dim
        actions.append(tuple(rows))
    return GModule(field=F, dim=total, actions=tuple(actions), omegas=omegas,
                   label="sum", source=tuple(modules))


def restrict_to_words(rep: ResidualRep, words: Sequence[Sequence[int]]) -> ResidualRep:
    """Sub-representation generated by the given generator words."""
    F = rep.field
    p = F.p
    mats = rep.matrices
    omegas = rep.omegas
    gens = []
    for word in words:
        m = ffalg.mat_identity(F, rep.d)
        o = 1
        for i in word:
            if not 0 <= i < len(mats):
                raise DimensionMismatchError(f"word index {i} out of range")
            m = ffalg.mat_mul(F, m, mats[i])
            o = (o * omegas[i]) % p if p > 2 else 1
        gens.append((m, o))
    return ResidualRep(field=F, local_field=rep.local_field, generators=tuple(gens))


# ----------------------------------------------------------------------
# invariants and irreducibility
# ----------------------------------------------------------------------

def invariants_dim(module: GModule) -> int:
    """Dimension of the joint fixed space of the generator actions."""
    F = module.field
    ident = ffalg.mat_identity(F, module.dim)
    ops = [ffalg.mat_sub(F, act, ident) for act in module.actions]
    return len(ffalg.solve_joint_kernel(F, ops))


def _spin(F: Field, actions: Sequence[Mat], seeds: Sequence[Tuple[int, ...]],
          dim: int, stop_at: Optional[int] = None) -> List[Tuple[int, ...]]:
    """Echelonised basis of the submodule generated by the seed vectors."""
    basis: List[List[int]] = []
    pivots: List[int] = []

    def reduce_add(vec: Sequence[int]) -> bool:
        v = list(vec)
        for b, pc in zip(basis, pivots):
            if v[pc] != 0:
                c = v[pc]
                for idx in range(dim):
                    v[idx] = F.sub(v[idx], F.mul(c, b[idx]))
        for idx in range(dim):
            if v[idx] != 0:
                inv = F.inv(v[idx])
                v = [F.mul(inv, x) for x in v]
                for b, pc in zip(basis, pivots):
                    if b[idx] != 0:
                        c = b[idx]
                        for k in range(dim):
                            b[k] = F.sub(b[k], F.mul(c, v[k]))
                basis.append(v)
                pivots.append(idx)
                return True
        return False

    queue = [tuple(s) for s in seeds]
    qi = 0
    fresh = [s for s in queue if reduce_add(s)]
    queue = fresh
    while qi < len(queue):
        if stop_at is not None and len(basis) >= stop_at:
            break
        v = queue[qi]
        qi += 1
        for act in actions:
            w = ffalg.mat_vec(F, act, v)
            if reduce_add(w):
                queue.append(w)
    order = sorted(range(len(basis)), key=lambda i: pivots[i])
    return [tuple(basis[i]) for i in order]


def find_proper_submodule(module: GModule,
                          exhaustive_limit: int = EXHAUSTIVE_LIMIT,
                          seed: int = 20240901,
                          budget: int = 64) -> Optional[List[Tuple[int, ...]]]:
    """A basis of a proper nonzero submodule, or None if the module is simple.

    When q^dim is within the exhaustive limit every nonzero vector (up to a
    leading-coefficient normalisation) is spun.  Otherwise random vectors
    are spun and the kernel of random algebra elements is examined on both
    the module and its transpose; that variant is still certified in both
    directions.  Raises InconclusiveError only if the randomized search runs
    out of budget without a certificate.
    """
    F = module.field
    dim = module.dim
    if dim == 0:
        raise PreconditionError("the zero module has no submodule structure")
    if dim == 1:
        return None
    actions = module.actions
    if F.q ** dim <= exhaustive_limit:
        for code in range(1, F.q ** dim):
            vec = []
            v = code
            for _ in range(dim):
                vec.append(v % F.q)
                v //= F.q
            # normalise: only consider vectors whose leading coefficient is 1
            lead = next(x for x in vec if x != 0)
            if lead != F.one:
                continue
            sub = _spin(F, actions, [tuple(vec)], dim, stop_at=dim)
            if len(sub) < dim:
                return sub
        return None
    return _random_proper_submodule(module, seed, budget)


def _random_proper_submodule(module: GModule, seed: int,
                             budget: int) -> Optional[List[Tuple[int, ...]]]:
    F = module.field
    dim = module.dim
    actions = module.actions
    rng = random.Random((seed, F.q, dim, len(actions)).__hash__())
    transposed = [ffalg.transpose(a) for a in actions]

    def random_algebra_element() -> Mat:
        # random low-length word products, randomly combined
        acc = ffalg.mat_zero(dim)
        for _ in range(rng.randint(2, 4)):
            m = ffalg.mat_identity(F, dim)
            for _ in range(rng.randint(1, 3)):
                m = ffalg.mat_mul(F, m, actions[rng.randrange(len(actions))])
            c = rng.randrange(1, F.q)
            acc = ffalg.mat_add(F, acc, ffalg.mat_scalar(F, c, m))
        return acc

    for _ in range(budget):
        theta = random_algebra_element()
        ker = ffalg.kernel_basis(F, theta)
        if not ker:
            continue
        for v in ker:
            sub = _spin(F, actions, [v], dim, stop_at=dim)
            if len(sub) < dim:
                return sub
        kert = ffalg.kernel_basis(F, ffalg.transpose(theta))
        if not kert:
            continue
        w = kert[0]
        dual_sub = _spin(F, transposed, [w], dim, stop_at=dim)
        if len(dual_sub) < dim:
            # the transpose module has a proper submodule; its annihilator
            # is a proper nonzero submodule of the original
            ann = ffalg.kernel_basis(F, dual_sub)
            if 0 < len(ann) < dim:
                return ann
        elif len(ker) == 1:
            # nullity-one certificate: the kernel vector generates the
            # module and the transpose kernel vector generates the
            # transpose module, so no proper submodule can exist
            return None
    raise InconclusiveError("random submodule search exhausted its budget")


def is_irreducible(module: GModule, exhaustive_limit: int = EXHAUSTIVE_LIMIT,
                   seed: int = 20240901) -> bool:
    return find_proper_submodule(module, exhaustive_limit=exhaustive_limit,
                                 seed=seed) is None


def is_absolutely_irreducible(module: GModule,
                              exhaustive_limit: int = EXHAUSTIVE_LIMIT) -> bool:
    """Irreducible with endomorphism algebra reduced to scalars."""
    if not is_irreducible(module, exhaustive_limit=exhaustive_limit):
        return False
    return ffalg.commutant_dim(module.field, list(module.actions)) == 1


# ----------------------------------------------------------------------
# semisimplification
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Semisimplification:
    """Composition factors of a matrix tuple and a block-diagonal model."""

    field: Field
    constituents: Tuple[Tuple[Mat, ...], ...]     # one matrix tuple per factor
    block_tuple: Tuple[Mat, ...]                  # direct sum of the factors

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(len(c[0]) for c in self.constituents)


def _tuple_as_module(F: Field, mats: Sequence[Mat],
                     omegas: Optional[Sequence[int]] = None) -> GModule:
    omegas = tuple(omegas) if omegas is not None else (1,) * len(mats)
    return GModule(field=F, dim=len(mats[0]), actions=tuple(mats),
                   omegas=omegas, label="rep", source=None)


def _complete_basis(F: Field, vectors: Sequence[Tuple[int, ...]], dim: int) -> Mat:
    """Square matrix whose first columns are the given independent vectors."""
    cols: List[Tuple[int, ...]] = [tuple(v) for v in vectors]
    have = [list(v) for v in vectors]
    _, pivots = ffalg.rref(F, have)
    pivot_set = set(pivots)
    for c in range(dim):
        if len(cols) == dim:
            break
        if c in pivot_set:
            continue
        e = [0] * dim
        e[c] = F.one
        trial = have + [e]
        if len(ffalg.rref(F, trial)[1]) > len(ffalg.rref(F, have)[1]):
            cols.append(tuple(e))
            have.append(e)
    if len(cols) != dim:
        raise DimensionMismatchError("could not complete to a basis")
    return tuple(tuple(cols[j][i] for j in range(dim)) for i in range(dim))


def semisimplify_tuple(F: Field, mats: Sequence[Mat],
                       exhaustive_limit: int = EXHAUSTIVE_LIMIT) -> Semisimplification:
    """Composition factors of the module given by a matrix tuple.

    Factors appear in the deterministic order produced by repeatedly
    splitting off a minimal invariant subspace; the returned block tuple is
    their direct sum, which is conjugate to the input exactly when the input
    was already semisimple.
    """
    mats = tuple(ffalg.mat_from_rows(m) for m in mats)
    module = _tuple_as_module(F, mats)
    factors: List[Tuple[Mat, ...]] = []

    def split(acts: Tuple[Mat, ...]) -> None:
        dim = len(acts[0])
        mod = _tuple_as_module(F, acts)
        sub = find_proper_submodule(mod, exhaustive_limit=exhaustive_limit)
        if sub is None:
            factors.append(acts)
            return
        B = _complete_basis(F, sub, dim)
        Binv = ffalg.mat_inv(F, B)
        k = len(sub)
        tops, bottoms = [], []
        for a in acts:
            conj = ffalg.mat_mul(F, Binv, ffalg.mat_mul(F, a, B))
            tops.append(tuple(tuple(conj[i][j] for j in range(k)) for i in range(k)))
            bottoms.append(tuple(tuple(conj[i][j] for j in range(k, dim))
                                 for i in range(k, dim)))
        split(tuple(tops))
        split(tuple(bottoms))

    split(mats)
    dim_total = len(mats[0])
    block = []
    for gi in range(len(mats)):
        rows = []
        offset = 0
        for fac in factors:
            fd = len(fac[gi])
            for r in fac[gi]:
                rows.append((0,) * offset + tuple(r) + (0,) * (dim_total - offset - fd))
            offset += fd
        block.append(tuple(rows))
    return Semisimplification(field=F, constituents=tuple(factors),
                              block_tuple=tuple(block))


# ----------------------------------------------------------------------
# module isomorphism
# ----------------------------------------------------------------------

def intertwiner_space(F: Field, acts1: Sequence[Mat],
                      acts2: Sequence[Mat]) -> List[Tuple[int, ...]]:
    """Basis of {X : X A_i = B_i X}, X as row-major (dim2 x dim1) vectors."""
    if len(acts1) != len(acts2):
        raise DimensionMismatchError("action tuples have different arity")
    d1, d2 = len(acts1[0]), len(acts2[0])
    ops = []
    for A, B in zip(acts1, acts2):
        rows = []
        for i in range(d2):
            for j in range(d1):
                row = [0] * (d1 * d2)
                for b in range(d1):
                    row[i * d1 + b] = F.add(row[i * d1 + b], A[b][j])
                for a in range(d2):
                    row[a * d1 + j] = F.sub(row[a * d1 + j], B[i][a])
                rows.append(tuple(row))
        ops.append(tuple(rows))
    return ffalg.solve_joint_kernel(F, ops)


def find_isomorphism(F: Field, acts1: Sequence[Mat], acts2: Sequence[Mat],
                     seed: int = 20240901) -> Optional[Mat]:
    """An invertible intertwiner between two action tuples, or None.

    Random combinations of an intertwiner basis are sampled first (at most
    ISO_SAMPLE_BUDGET draws from a seeded generator); if none is invertible
    and the solution space is small enough, all combinations are tried, so
    the negative answer is exact.  Raises InconclusiveError for large
    solution spaces where sampling failed.
    """
    d1, d2 = len(acts1[0]), len(acts2[0])
    if d1 != d2:
        return None
    sol = intertwiner_space(F, acts1, acts2)
    if not sol:
        return None

    def as_matrix(coeffs: Sequence[int]) -> Mat:
        entries = [0] * (d1 * d1)
        for c, vec in zip(coeffs, sol):
            if c:
                for idx, x in enumerate(vec):
                    if x:
                        entries[idx] = F.add(entries[idx], F.mul(c, x))
        return tuple(tuple(entries[i * d1 + j] for j in range(d1)) for i in range(d1))

    k = len(sol)
    rng = random.Random((seed, F.q, d1, k).__hash__())
    for _ in range(ISO_SAMPLE_BUDGET):
        coeffs = [rng.randrange(F.q) for _ in range(k)]
        if all(c == 0 for c in coeffs):
            continue
        X = as_matrix(coeffs)
        if ffalg.det(F, X) != 0:
            return X
    if F.q ** k <= EXHAUSTIVE_LIMIT:
        for code in range(1, F.q ** k):
            coeffs = []
            v = code
            for _ in range(k):
                coeffs.append(v % F.q)
                v //= F.q
            X = as_matrix(coeffs)
            if ffalg.det(F, X) != 0:
                return X
        return None
    raise InconclusiveError("no invertible intertwiner found by sampling and the "
                            "solution space is too large to exhaust")


def modules_isomorphic(A: GModule, B: GModule, seed: int = 20240901) -> bool:
    if A.field != B.field or A.dim != B.dim:
        return False
    return find_isomorphism(A.field, A.actions, B.actions, seed=seed) is not None


# ----------------------------------------------------------------------
# field extension (for twist characters needing roots of unity)
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def _extension_with_embedding(p: int, f: int, modulus: Tuple[int, ...],
                              s: int) -> Tuple[Field, Tuple[int, ...]]:
    """GF(p^(f*s)) together with the image of each GF(p^f) element."""
    small = Field(p, f, modulus)
    big = Field(p, f * s)
    if f == 1:
        table = tuple(big.embed(a) for a in range(small.q))
        return big, table
    # find a root of the small modulus inside the big field
    coeffs = list(small.modulus)
    root = None
    for cand in range(big.q):
        acc = big.zero
        power = big.one
        for c in coeffs:
            acc = big.add(acc, big.mul(big.embed(c), power))
            power = big.mul(power, cand)
        if acc == 0:
            root = cand
            break
    if root is None:
        raise UnsupportedFieldError("modulus has no root in the extension")
    table = []
    for a in range(small.q):
        digits = small.digits(a)
        acc = big.zero
        power = big.one
        for c in digits:
            acc = big.add(acc, big.mul(big.embed(c), power))
            power = big.mul(power, root)
        table.append(acc)
    return big, tuple(table)


def extend_scalars(module: GModule, s: int) -> GModule:
    """The same module with coefficients extended to GF(q^s)."""
    F = module.field
    big, table = _extension_with_embedding(F.p, F.f, F.modulus, s)
    actions = tuple(tuple(tuple(table[x] for x in row) for row in act)
                    for act in module.actions)
    return GModule(field=big, dim=module.dim, actions=actions,
                   omegas=module.omegas, label=module.label,
                   twist=module.twist, source=module.source)


# ----------------------------------------------------------------------
# Clifford test
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CliffordReport:
    """Outcome of the restriction test for a normal subgroup.

    The character, when present, is recorded by its values on the group
    generators (over the listed extension field), together with its kernel
    as a subset of the group elements.
    """

    quotient_order: int
    restriction_irreducible: bool
    character_values: Optional[Tuple[int, ...]]
    character_field: Optional[Field]
    kernel_elements: Optional[Tuple[Mat, ...]]
    extension_degree: int


def clifford_test(group: MatrixGroup, module: GModule,
                  H: Sequence[Mat]) -> CliffordReport:
    """Restriction-to-H irreducibility versus self-twist characters.

    Preconditions: the module is absolutely irreducible, H is a normal
    subgroup of the closed group with cyclic quotient of order m, and the
    field characteristic does not divide m.  The test searches for a
    character chi of G/H, with values in the smallest extension of the
    coefficient field containing the m-th roots of unity, such that the
    module is isomorphic to its chi-twist; for m > 1 such a nontrivial chi
    exists exactly when the restriction to H is reducible, where
    reducibility of the restriction is taken geometrically (after any
    scalar extension).
    """
    F = module.field
    members: Set[Mat] = set(ffalg.mat_from_rows(h) for h in H)
    if not members.issubset(set(group.elements)):
        raise PreconditionError("H is not a subset of the group")
    m = group.order // len(members)
    if group.order % len(members) != 0:
        raise PreconditionError("|H| does not divide |G|")
    if m % F.p == 0:
        raise PreconditionError("the characteristic divides the quotient order")
    # normality
    inv_cache = {g: ffalg.mat_inv(F, g) for g in group.generators}
    for g, gi in inv_cache.items():
        for h in members:
            if ffalg.mat_mul(F, ffalg.mat_mul(F, g, h), gi) not in members:
                raise PreconditionError("H is not normal")
    if not is_absolutely_irreducible(module):
        raise PreconditionError("module is not absolutely irreducible")

    # module matrix for an arbitrary group element, via its word witness
    def module_matrix(g: Mat) -> Mat:
        out = ffalg.mat_identity(F, module.dim)
        for i in group.word_for(g):
            out = ffalg.mat_mul(F, out, module.actions[i])
        return out

    # reducibility of the restriction is meant geometrically, matching the
    # field over which the twist characters live
    restriction = _tuple_as_module(F, tuple(module_matrix(h) for h in sorted(members)))
    res_irred = is_absolutely_irreducible(restriction)

    if m == 1:
        return CliffordReport(quotient_order=1, restriction_irreducible=res_irred,
                              character_values=None, character_field=None,
                              kernel_elements=None, extension_degree=1)

    # cyclic generator of the quotient
    def coset_key(g: Mat) -> Mat:
        return min(ffalg.mat_mul(F, g, h) for h in members)

    gen_elt = None
    for g in group.elements:
        acc, k = g, 1
        while acc not in members:
            acc = ffalg.mat_mul(F, acc, g)
            k += 1
        if k == m:
            gen_elt = g
            break
    if gen_elt is None:
        raise PreconditionError("G/H is not cyclic")

    coset_log: Dict[Mat, int] = {}
    acc = ffalg.mat_identity(F, group.d)
    for k in range(m):
        coset_log[coset_key(acc)] = k
        acc = ffalg.mat_mul(F, acc, gen_elt)

    # smallest extension containing the m-th roots of unity
    s = 1
    while (F.q ** s - 1) % m != 0:
        s += 1
    if s == 1:
        big_module = module
        bigF = F
    else:
        big_module = extend_scalars(module, s)
        bigF = big_module.field
    zeta = bigF.pow(bigF.generator if bigF.f > 1 else _primitive_root_modp(bigF.p),
                   (bigF.q - 1) // m)

    gen_logs = [coset_log[coset_key(g)] for g in group.generators]
    for j in range(1, m):
        chi_vals = tuple(bigF.pow(zeta, (j * k) % m) for k in gen_logs)
        twisted = tuple(ffalg.mat_scalar(bigF, c, act)
                        for c, act in zip(chi_vals, big_module.actions))
        if find_isomorphism(bigF, big_module.actions, twisted) is not None:
            kernel = tuple(g for g in group.elements
                           if (j * coset_log[coset_key(g)]) % m == 0)
            return CliffordReport(quotient_order=m, restriction_irreducible=res_irred,
                                  character_values=chi_vals, character_field=bigF,
                                  kernel_elements=kernel, extension_degree=s)
    return CliffordReport(quotient_order=m, restriction_irreducible=res_irred,
                          character_values=None, character_field=None,
                          kernel_elements=None, extension_degree=s)


def _primitive_root_modp(p: int) -> int:
    if p == 2:
        return 1
    target = p - 1
    for cand in range(2, p):
        ok = True
        for ell in ffalg._prime_divisors(target):
            if pow(cand, target // ell, p) == 1:
                ok = False
                break
        if ok:
            return cand
    raise UnsupportedFieldError(f"no primitive root mod {p}")


# ----------------------------------------------------------------------
# Kummer irreducibility
# ----------------------------------------------------------------------

def kummer_irreducible(rep: ResidualRep,
                       subgroups: Sequence[Sequence[Sequence[int]]],
                       cross_check: bool = True) -> bool:
    """True when the rep stays absolutely irreducible on every listed subgroup.

    Each subgroup is a list of generator words (indices into the rep's
    generators).  When the answer is True and cross_check is set, the
    vanishing of the ad0 obstruction is verified as a consistency check.
    """
    if not subgroups:
        raise PreconditionError("need at least one subgroup to restrict to")
    for words in subgroups:
        sub = restrict_to_words(rep, words)
        if not is_absolutely_irreducible(make_rep_module(sub)):
            return False
    if cross_check:
        from . import cohom
        h2 = cohom.h2(make_ad0(rep))
        if h2 != 0:
            raise PreconditionError(
                "restrictions are absolutely irreducible but the ad0 "
                f"obstruction is {h2}, not 0; inconsistent input data")
    return True
