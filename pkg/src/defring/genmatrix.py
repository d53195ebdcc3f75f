"""Generic-matrix presentations and brute-force fibre enumeration.

A presentation assigns to each abstract generator a d x d matrix of formal
entry variables, evaluates the supplied noncommutative relations on those
generic matrices, and adds the Cayley-Hamilton generators: for each word w
with a supplied coefficient vector, the polynomial c_i(word product) minus
the supplied value.  The truncation policy (maximum word length) is part of
the returned presentation, since the full ideal ranges over all algebra
elements.

Fibre enumeration walks every matrix tuple over a tiny field, keeps the ones
whose pseudo-character matches a reference tuple on the paired closure, and
computes the tangent dimension at each matched point by linearising the
coefficient equations over the dual numbers GF(q)[eps].
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from . import ffalg, gmodules, pseudochar
from .errors import (
    DimensionMismatchError,
    InconsistentLambdaError,
    SizeExceededError,
)
from .ffalg import Field, Mat
from .polys import Poly, PolyRing

Word = Tuple[int, ...]

FIBRE_ENVELOPE = 1 << 25
TRACE_MAX_L = 6
TRACE_MAX_D = 3
TRACE_MAX_GENS = 3


# ----------------------------------------------------------------------
# symbolic helpers
# ----------------------------------------------------------------------

def generic_matrix(ring: PolyRing, gen_name: str, d: int) -> Tuple[Tuple[Poly, ...], ...]:
    return tuple(tuple(ring.var(entry_var_name(gen_name, i, j)) for j in range(d))
                 for i in range(d))


def entry_var_name(gen_name: str, i: int, j: int) -> str:
    return f"{gen_name}{i + 1}{j + 1}"


def poly_mat_mul(ring: PolyRing, A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ring.zero
            for t in range(k):
                acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def poly_identity(ring: PolyRing, d: int):
    return tuple(tuple(ring.one if i == j else ring.zero for j in range(d))
                 for i in range(d))


def symbolic_coeffs(ring: PolyRing, M) -> List[Poly]:
    """(L_1..L_d) for a matrix of polynomials, same sign convention as
    pseudochar.char_poly_coeffs."""
    raw = ffalg.berkowitz(ring, M)
    out = []
    for i, c in enumerate(raw):
        if i == 0:
            continue
        out.append(-c if i % 2 == 1 else c)
    return out


# ----------------------------------------------------------------------
# presentations
# ----------------------------------------------------------------------

NCTerm = Tuple[Union[int, Poly], Word]
LambdaValues = Union[Mapping[Word, Sequence[Union[int, Poly]]],
                     Iterable[Tuple[Word, Sequence[Union[int, Poly]]]]]


@dataclass(frozen=True)
class GenericAlgebraPresentation:
    """The evaluated relation ideal of a generic-matrix algebra.

    ``relation_ideal`` holds the d^2 entries of every noncommutative
    relation evaluated on generic matrices, followed by the Cayley-Hamilton
    generators c_i(word) - supplied value for every admitted word.
    ``truncated_words`` lists supplied words that exceeded the word bound
    and were therefore not used; the bound is a declared policy, not a
    silent default.
    """

    d: int
    n_gens: int
    gen_names: Tuple[str, ...]
    base_vars: Tuple[str, ...]
    matrix_vars: Tuple[str, ...]
    ring: PolyRing
    relation_ideal: Tuple[Poly, ...]
    word_bound: int
    lambda_words: Tuple[Word, ...]
    truncated_words: Tuple[Word, ...]


def build_agen(d: int, gens: Sequence[str],
               relations: Sequence[Sequence[NCTerm]] = (),
               lambda_values: Optional[LambdaValues] = None,
               word_bound: Optional[int] = None,
               base_vars: Sequence[str] = ()) -> GenericAlgebraPresentation:
    """Evaluate relations and Cayley-Hamilton data on generic matrices.

    Each relation is a noncommutative polynomial given as a list of
    (coefficient, word) terms; the empty word is the identity matrix.
    ``lambda_values`` maps words (tuples of generator indices) to the d
    coefficient values c_1..c_d the word's product must take; values may be
    integers or polynomials in the base variables.
    """
    gen_names = tuple(gens)
    if d < 1 or not gen_names:
        raise DimensionMismatchError("need d >= 1 and at least one generator name")
    if word_bound is None:
        word_bound = 2 * len(gen_names)
    matrix_vars = tuple(entry_var_name(g, i, j)
                        for g in gen_names for i in range(d) for j in range(d))
    ring = PolyRing(tuple(base_vars) + matrix_vars)
    mats = {gi: generic_matrix(ring, g, d) for gi, g in enumerate(gen_names)}

    def word_product(word: Word):
        M = poly_identity(ring, d)
        for gi in word:
            if not 0 <= gi < len(gen_names):
                raise DimensionMismatchError(f"generator index {gi} out of range")
            M = poly_mat_mul(ring, M, mats[gi])
        return M

    def coerce(value: Union[int, Poly]) -> Poly:
        if isinstance(value, Poly):
            return ring.lift(value)
        return ring.const(value)

    ideal: List[Poly] = []
    for rel in relations:
        acc = tuple(tuple(ring.zero for _ in range(d)) for _ in range(d))
        for coeff, word in rel:
            term = word_product(tuple(word))
            c = coerce(coeff)
            acc = tuple(tuple(acc[i][j] + c * term[i][j] for j in range(d))
                        for i in range(d))
        for row in acc:
            for entry in row:
                if not entry.is_zero():
                    ideal.append(entry)

    # normalise lambda input and reject double assignments
    pairs: List[Tuple[Word, Tuple[Poly, ...]]] = []
    if lambda_values is not None:
        items = (lambda_values.items() if isinstance(lambda_values, Mapping)
                 else lambda_values)
        seen: Dict[Word, Tuple[Poly, ...]] = {}
        for word, values in items:
            word = tuple(word)
            values = tuple(coerce(v) for v in values)
            if len(values) != d:
                raise InconsistentLambdaError(
                    f"word {word} needs exactly {d} coefficient values")
            if word in seen and seen[word] != values:
                raise InconsistentLambdaError(
                    f"word {word} received two different coefficient vectors")
            if word not in seen:
                seen[word] = values
                pairs.append((word, values))

    admitted: List[Word] = []
    truncated: List[Word] = []
    for word, values in pairs:
        if len(word) > word_bound:
            truncated.append(word)
            continue
        admitted.append(word)
        coeffs = symbolic_coeffs(ring, word_product(word))
        for ci, lam in zip(coeffs, values):
            ideal.append(ci - lam)

    return GenericAlgebraPresentation(
        d=d, n_gens=len(gen_names), gen_names=gen_names,
        base_vars=tuple(base_vars), matrix_vars=matrix_vars, ring=ring,
        relation_ideal=tuple(ideal), word_bound=word_bound,
        lambda_words=tuple(admitted), truncated_words=tuple(truncated))


# ----------------------------------------------------------------------
# the 2x2 worked example
# ----------------------------------------------------------------------

def verify_example_3_5() -> dict:
    """Symbolic regression of the 2x2 one-generator worked example.

    Over Z[t, d, x11, x12, x21, x22] with M the generic 2x2 matrix:
    (a) the matrix identity M^2 - (2+t)M + (1+d)I reduces to zero entrywise
    after substituting t -> x11+x22-2 and d -> x11*x22-x12*x21-1;
    (b) the two ideal generators equal tr(M)-(2+t) and det(M)-(1+d);
    (c) the unipotent specialisation x = [[1,u],[0,1]] satisfies both
    generators with t = 0, d = 0 (u stays formal).
    All checks are exact integer polynomial identities.
    """
    ring = PolyRing(["t", "d", "x11", "x12", "x21", "x22", "u"])
    t, dv = ring.var("t"), ring.var("d")
    x11, x12 = ring.var("x11"), ring.var("x12")
    x21, x22 = ring.var("x21"), ring.var("x22")
    u = ring.var("u")
    M = ((x11, x12), (x21, x22))
    M2 = poly_mat_mul(ring, M, M)
    ident = poly_identity(ring, 2)
    ch = tuple(tuple(M2[i][j] - (2 + t) * M[i][j] + (1 + dv) * ident[i][j]
                     for j in range(2)) for i in range(2))

    g1 = x11 + x22 - (2 + t)
    g2 = x11 * x22 - x12 * x21 - (1 + dv)

    coeffs = symbolic_coeffs(ring, M)
    trace_matches = (g1 == coeffs[0] - (2 + t))
    det_matches = (g2 == coeffs[1] - (1 + dv))

    elim = {"t": x11 + x22 - 2, "d": x11 * x22 - x12 * x21 - 1}
    ch_reduced = [[ch[i][j].subs(elim) for j in range(2)] for i in range(2)]
    ch_entries_zero = [[ch_reduced[i][j].is_zero() for j in range(2)]
                       for i in range(2)]
    generators_eliminated = g1.subs(elim).is_zero() and g2.subs(elim).is_zero()

    unipotent = {"x11": 1, "x12": u, "x21": 0, "x22": 1, "t": 0, "d": 0}
    unipotent_ok = g1.subs(unipotent).is_zero() and g2.subs(unipotent).is_zero()

    ok = (trace_matches and det_matches and generators_eliminated
          and unipotent_ok and all(all(r) for r in ch_entries_zero))
    return {
        "ok": ok,
        "generators": [repr(g1), repr(g2)],
        "generator_is_trace_relation": trace_matches,
        "generator_is_det_relation": det_matches,
        "ch_entries_reduce_to_zero": ch_entries_zero,
        "substitution_eliminates_generators": generators_eliminated,
        "unipotent_specialisation_ok": unipotent_ok,
    }


# ----------------------------------------------------------------------
# trace invariants
# ----------------------------------------------------------------------

def trace_invariants(n_gens: int, d: int, word_length: int) -> List[Poly]:
    """Deduplicated c_i(word) polynomials for all words up to a length.

    The outputs are conjugation invariants of the tuple of generic
    matrices; invariance is checked numerically in the test-suite, not
    here.
    """
    if word_length > TRACE_MAX_L or d > TRACE_MAX_D or n_gens > TRACE_MAX_GENS:
        raise SizeExceededError(
            f"trace_invariants supports L <= {TRACE_MAX_L}, d <= {TRACE_MAX_D}, "
            f"n_gens <= {TRACE_MAX_GENS}")
    gen_names = [f"x{k}" for k in range(n_gens)] if n_gens > 1 else ["x"]
    matrix_vars = tuple(entry_var_name(g, i, j)
                        for g in gen_names for i in range(d) for j in range(d))
    ring = PolyRing(matrix_vars)
    mats = [generic_matrix(ring, g, d) for g in gen_names]
    out: List[Poly] = []
    seen = set()
    words: List[Word] = [()]
    for _ in range(word_length):
        words = [w + (g,) for w in words for g in range(n_gens)]
        for w in words:
            M = poly_identity(ring, d)
            for gi in w:
                M = poly_mat_mul(ring, M, mats[gi])
            for c in symbolic_coeffs(ring, M):
                if c not in seen:
                    seen.add(c)
                    out.append(c)
    return out


# ----------------------------------------------------------------------
# orbit closedness
# ----------------------------------------------------------------------

def orbit_is_closed(F: Field, mats: Sequence[Mat],
                    cap: Optional[int] = None) -> bool:
    """True iff the tuple is conjugate to its semisimplification."""
    mats = tuple(ffalg.mat_from_rows(m) for m in mats)
    ss = gmodules.semisimplify_tuple(F, mats)
    return gmodules.find_isomorphism(F, mats, ss.block_tuple) is not None


# ----------------------------------------------------------------------
# fibre enumeration over tiny fields
# ----------------------------------------------------------------------

class _LinRing:
    """Dual numbers a + eps*(v . y) with a in GF(q) and v a linear form."""

    def __init__(self, F: Field, nvars: int):
        self.F = F
        self.nvars = nvars
        self.zero = (0, (0,) * nvars)
        self.one = (F.one, (0,) * nvars)

    def add(self, a, b):
        F = self.F
        return (F.add(a[0], b[0]),
                tuple(F.add(x, y) for x, y in zip(a[1], b[1])))

    def mul(self, a, b):
        F = self.F
        const = F.mul(a[0], b[0])
        vec = tuple(F.add(F.mul(a[0], y), F.mul(b[0], x))
                    for x, y in zip(a[1], b[1]))
        return (const, vec)

    def neg(self, a):
        F = self.F
        return (F.neg(a[0]), tuple(F.neg(x) for x in a[1]))


@dataclass(frozen=True)
class FibreEnumeration:
    """Matched points of a pseudo-character fibre with tangent data."""

    field: Field
    d: int
    arity: int
    points: Tuple[Tuple[Mat, ...], ...]
    tangent_dims: Tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.points)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        header = [f"m{g}_{i}{j}" for g in range(self.arity)
                  for i in range(self.d) for j in range(self.d)]
        writer.writerow(header + ["tangent_dim"])
        for point, tdim in zip(self.points, self.tangent_dims):
            row = [point[g][i][j] for g in range(self.arity)
                   for i in range(self.d) for j in range(self.d)]
            writer.writerow(row + [tdim])
        return buf.getvalue()


def _monoid_words(F: Field, mats: Sequence[Mat], cap: int) -> List[Word]:
    """One witness word per element of the monoid closure of the tuple."""
    d = len(mats[0])
    ident = ffalg.mat_identity(F, d)
    words: Dict[Mat, Word] = {ident: ()}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for gi, g in enumerate(mats):
                nm = ffalg.mat_mul(F, m, g)
                if nm not in words:
                    words[nm] = words[m] + (gi,)
                    nxt.append(nm)
                    if len(words) > cap:
                        raise SizeExceededError("monoid closure exceeded cap")
        frontier = nxt
    return [w for m, w in words.items() if w]


def tangent_dim_at(F: Field, point: Sequence[Mat],
                   words: Optional[Sequence[Word]] = None) -> int:
    """Solution dimension of the linearised coefficient equations at a point.

    Each matrix entry gets a dual-number deformation x + eps*y; for every
    word in the spanning set (by default one witness word per element of
    the point's own monoid closure) the eps-parts of the characteristic
    coefficients of the deformed word product give linear equations in y.
    """
    point = tuple(ffalg.mat_from_rows(m) for m in point)
    d = len(point[0])
    arity = len(point)
    nvars = arity * d * d
    ring = _LinRing(F, nvars)
    if words is None:
        words = _monoid_words(F, point, cap=4096)

    def dual_matrix(g: int):
        rows = []
        for i in range(d):
            row = []
            for j in range(d):
                vec = [0] * nvars
                vec[g * d * d + i * d + j] = F.one
                row.append((point[g][i][j], tuple(vec)))
            rows.append(tuple(row))
        return tuple(rows)

    duals = [dual_matrix(g) for g in range(arity)]
    ident = tuple(tuple(ring.one if i == j else ring.zero for j in range(d))
                  for i in range(d))
    equations: List[Tuple[int, ...]] = []
    for word in words:
        M = ident
        for gi in word:
            M = _dual_mat_mul(ring, M, duals[gi])
        for coeff in ffalg.berkowitz(ring, M)[1:]:
            equations.append(coeff[1])
    if not equations:
        return nvars
    return len(ffalg.kernel_basis(F, equations))


def _dual_mat_mul(ring: _LinRing, A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ring.zero
            for t in range(k):
                acc = ring.add(acc, ring.mul(A[i][t], B[t][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def fibre_enumerate(F: Field, d: int, target: Sequence[Mat],
                    arity: Optional[int] = None,
                    cap: Optional[int] = None) -> FibreEnumeration:
    """All matrix tuples over GF(q) pseudo-equal to the target tuple.

    The search space is the full q^(d^2 * arity) grid (envelope 2^25); a
    candidate matches when the paired monoid closure with the target shows
    identical characteristic coefficients throughout.  Tangent dimensions
    are computed at every matched point.
    """
    target = tuple(ffalg.mat_from_rows(m) for m in target)
    if arity is None:
        arity = len(target)
    if arity != len(target):
        raise DimensionMismatchError("arity disagrees with the target tuple")
    q = F.q
    cells = d * d * arity
    if q ** cells > FIBRE_ENVELOPE:
        raise SizeExceededError(
            f"search space q^(d^2*arity) = {q ** cells} exceeds {FIBRE_ENVELOPE}")
    target_coeffs = [pseudochar.char_poly_coeffs(F, m) for m in target]

    def decode(code: int) -> Tuple[Mat, ...]:
        entries = []
        for _ in range(cells):
            entries.append(code % q)
            code //= q
        mats = []
        for g in range(arity):
            base = g * d * d
            mats.append(tuple(tuple(entries[base + i * d + j] for j in range(d))
                              for i in range(d)))
        return tuple(mats)

    points: List[Tuple[Mat, ...]] = []
    for code in range(q ** cells):
        cand = decode(code)
        # cheap length-one prefilter before the paired walk
        if any(pseudochar.char_poly_coeffs(F, m) != tc
               for m, tc in zip(cand, target_coeffs)):
            continue
        if pseudochar.pseudo_equal(F, cand, target, cap=cap):
            points.append(cand)
    tangents = tuple(tangent_dim_at(F, p) for p in points)
    return FibreEnumeration(field=F, d=d, arity=arity,
                            points=tuple(points), tangent_dims=tangents)
