"""Dense linear algebra and matrix-group closures over small finite fields.

Field elements are plain integers in ``[0, q)`` whose base-p digits are the
coefficients of a polynomial over GF(p); the field GF(p^f) is realised modulo
a fixed monic irreducible polynomial of degree f.  By default the modulus is
the lexicographically least monic irreducible polynomial (coefficients
compared from the constant term up), which makes element encodings
reproducible across runs and machines; callers may pass their own modulus.

Matrices are immutable tuples of row tuples of field elements.  The functions
here cover row reduction, kernels, inverses, determinants and a division-free
characteristic polynomial (Samuelson-Berkowitz), plus breadth-first closure of
a generating set into a finite matrix group with a word witness for every
element.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import (
    CapExceededError,
    DimensionMismatchError,
    NotInvertibleError,
    UnsupportedFieldError,
)

Mat = Tuple[Tuple[int, ...], ...]

MAX_Q = 1 << 16
MAX_DIM = 8
DEFAULT_CAP = 200_000
CAP_ENV_VAR = "DEFRING_CAP"


def effective_cap(cap: Optional[int] = None) -> int:
    """Resolve the closure cap: explicit argument, then env var, then default."""
    if cap is not None:
        return cap
    env = os.environ.get(CAP_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise UnsupportedFieldError(f"{CAP_ENV_VAR} must be an integer, got {env!r}") from exc
    return DEFAULT_CAP


# ----------------------------------------------------------------------
# polynomial helpers over GF(p), used only for modulus construction
# ----------------------------------------------------------------------

def _poly_mod(a: List[int], m: Sequence[int], p: int) -> List[int]:
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < dm:
            break
        lead = a[-1]
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - lead * c) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _poly_mod(out, m, p)


def _poly_powmod(a: Sequence[int], n: int, m: Sequence[int], p: int) -> List[int]:
    result = [1]
    base = _poly_mod(list(a), m, p)
    while n:
        if n & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        n >>= 1
    return result


def _poly_gcd(a: List[int], b: List[int], p: int) -> List[int]:
    a, b = list(a), list(b)
    while any(b):
        a = _poly_mod(a, _monic(b, p), p)
        a, b = b, a
    return a


def _monic(a: Sequence[int], p: int) -> List[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    lead_inv = pow(a[-1], p - 2, p)
    return [(c * lead_inv) % p for c in a]


def _is_irreducible(m: Sequence[int], p: int) -> bool:
    """Rabin test for a monic polynomial over GF(p)."""
    f = len(m) - 1
    if f == 1:
        return True
    x = [0, 1]
    # x^(p^f) == x mod m
    acc = list(x)
    for _ in range(f):
        acc = _poly_powmod(acc, p, m, p)
    diff = list(acc)
    while len(diff) < 2:
        diff.append(0)
    diff[1] = (diff[1] - 1) % p
    if any(diff):
        return False
    # gcd(x^(p^(f/l)) - x, m) == 1 for every prime l | f
    for ell in _prime_divisors(f):
        acc = list(x)
        for _ in range(f // ell):
            acc = _poly_powmod(acc, p, m, p)
        diff = list(acc)
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        if not any(diff):
            return False
        g = _poly_gcd(list(m), diff, p)
        while g and g[-1] == 0:
            g.pop()
        if len(g) - 1 > 0:
            return False
    return True


def _prime_divisors(n: int) -> List[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def default_modulus(p: int, f: int) -> Tuple[int, ...]:
    """Lexicographically least monic irreducible polynomial of degree f.

    Coefficients are compared from the constant term upward, so the result
    is deterministic and independent of any randomness.
    """
    if f == 1:
        return (0, 1)
    total = p ** f
    for code in range(total):
        coeffs = []
        v = code
        for _ in range(f):
            coeffs.append(v % p)
            v //= p
        m = coeffs + [1]
        if m[0] == 0:
            continue
        if _is_irreducible(m, p):
            return tuple(m)
    raise UnsupportedFieldError(f"no irreducible polynomial of degree {f} over GF({p})")


class Field:
    """The finite field GF(p^f), q = p^f <= 2^16.

    Elements are integers 0 .. q-1; the base-p digits of an element are the
    coefficients of its polynomial representative (constant term first).
    For f > 1 multiplication and inversion go through exp/log tables built
    from a fixed primitive element, so all operations are O(1) after init.
    """

    def __init__(self, p: int, f: int = 1, modulus: Optional[Sequence[int]] = None):
        if not _is_prime(p):
            raise UnsupportedFieldError(f"p={p} is not prime")
        if f < 1:
            raise UnsupportedFieldError(f"f={f} must be >= 1")
        q = p ** f
        if q > MAX_Q:
            raise UnsupportedFieldError(f"q={q} exceeds the supported maximum {MAX_Q}")
        self.p = p
        self.f = f
        self.q = q
        if modulus is None:
            modulus = default_modulus(p, f)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != f + 1 or modulus[-1] != 1:
            raise UnsupportedFieldError(
                f"modulus must be monic of degree f={f}, got {modulus}")
        if f > 1 and not _is_irreducible(list(modulus), p):
            raise UnsupportedFieldError(f"modulus {modulus} is reducible over GF({p})")
        self.modulus = modulus
        self.zero = 0
        self.one = 1 % q
        if f > 1:
            self._build_tables()

    # -- encoding -------------------------------------------------------

    def digits(self, a: int) -> Tuple[int, ...]:
        out = []
        for _ in range(self.f):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_digits(self, digits: Sequence[int]) -> int:
        a = 0
        for c in reversed(list(digits)):
            a = a * self.p + (c % self.p)
        return a

    def embed(self, c: int) -> int:
        """Image of the integer c under Z -> GF(p) subset GF(q)."""
        return c % self.p

    # -- table construction ---------------------------------------------

    def _mul_slow(self, a: int, b: int) -> int:
        prod = [0] * (2 * self.f - 1)
        da, db = self.digits(a), self.digits(b)
        for i, ca in enumerate(da):
            if ca:
                for j, cb in enumerate(db):
                    prod[i + j] = (prod[i + j] + ca * cb) % self.p
        rem = _poly_mod(prod, self.modulus, self.p)
        return self.from_digits(rem + [0] * (self.f - len(rem)))

    def _build_tables(self) -> None:
        q = self.q
        # smallest primitive element, found by direct order computation
        target = q - 1
        prime_parts = _prime_divisors(target)
        gen = None
        for cand in range(2, q):
            ok = True
            for ell in prime_parts:
                if self._pow_slow(cand, target // ell) == 1:
                    ok = False
                    break
            if ok:
                gen = cand
                break
        if gen is None:
            raise UnsupportedFieldError("no primitive element found (bad modulus?)")
        self._exp = [0] * (2 * target)
        self._log = [0] * q
        v = 1
        for i in range(target):
            self._exp[i] = v
            self._log[v] = i
            v = self._mul_slow(v, gen)
        for i in range(target, 2 * target):
            self._exp[i] = self._exp[i - target]
        self.generator = gen

    def _pow_slow(self, a: int, n: int) -> int:
        r = 1
        while n:
            if n & 1:
                r = self._mul_slow(r, a)
            a = self._mul_slow(a, a)
            n >>= 1
        return r

    # -- arithmetic -----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.f == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.f):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        if self.f == 1:
            return (-a) % self.p
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.f):
            out += ((-a) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.f == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise NotInvertibleError("0 has no inverse")
        if self.f == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(self.q - 1) - self._log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        r = self.one
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def element_order(self, a: int) -> int:
        if a == 0:
            raise NotInvertibleError("0 has no multiplicative order")
        n = 1
        v = a
        while v != self.one:
            v = self.mul(v, a)
            n += 1
        return n

    def elements(self) -> range:
        return range(self.q)

    def __repr__(self) -> str:
        return f"Field(p={self.p}, f={self.f})"

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Field) and other.p == self.p
                and other.f == self.f and other.modulus == self.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.f, self.modulus))


# ----------------------------------------------------------------------
# matrices
# ----------------------------------------------------------------------

def mat_from_rows(rows: Iterable[Iterable[int]]) -> Mat:
    return tuple(tuple(r) for r in rows)


def mat_identity(F: Field, d: int) -> Mat:
    return tuple(tuple(F.one if i == j else 0 for j in range(d)) for i in range(d))


def mat_zero(d: int, e: Optional[int] = None) -> Mat:
    e = d if e is None else e
    return tuple((0,) * e for _ in range(d))


def _check_square(A: Mat) -> int:
    d = len(A)
    if any(len(r) != d for r in A):
        raise DimensionMismatchError("matrix is not square")
    return d


def mat_add(F: Field, A: Mat, B: Mat) -> Mat:
    if len(A) != len(B) or len(A[0]) != len(B[0]):
        raise DimensionMismatchError("shape mismatch in mat_add")
    return tuple(tuple(F.add(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_sub(F: Field, A: Mat, B: Mat) -> Mat:
    return mat_add(F, A, mat_neg(F, B))


def mat_neg(F: Field, A: Mat) -> Mat:
    return tuple(tuple(F.neg(a) for a in row) for row in A)


def mat_scalar(F: Field, c: int, A: Mat) -> Mat:
    return tuple(tuple(F.mul(c, a) for a in row) for row in A)


def mat_mul(F: Field, A: Mat, B: Mat) -> Mat:
    n, k = len(A), len(A[0])
    if len(B) != k:
        raise DimensionMismatchError("shape mismatch in mat_mul")
    m = len(B[0])
    Bt = tuple(zip(*B))
    out = []
    add, mul = F.add, F.mul
    for i in range(n):
        Ai = A[i]
        row = []
        for j in range(m):
            Bj = Bt[j]
            acc = 0
            for t in range(k):
                a = Ai[t]
                if a:
                    acc = add(acc, mul(a, Bj[t]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(F: Field, A: Mat, v: Sequence[int]) -> Tuple[int, ...]:
    if len(A[0]) != len(v):
        raise DimensionMismatchError("shape mismatch in mat_vec")
    add, mul = F.add, F.mul
    out = []
    for row in A:
        acc = 0
        for a, x in zip(row, v):
            if a and x:
                acc = add(acc, mul(a, x))
        out.append(acc)
    return tuple(out)


def transpose(A: Mat) -> Mat:
    return tuple(zip(*A))


def mat_pow(F: Field, A: Mat, n: int) -> Mat:
    d = _check_square(A)
    if n < 0:
        return mat_pow(F, mat_inv(F, A), -n)
    R = mat_identity(F, d)
    while n:
        if n & 1:
            R = mat_mul(F, R, A)
        A = mat_mul(F, A, A)
        n >>= 1
    return R


def trace(F: Field, A: Mat) -> int:
    d = _check_square(A)
    t = 0
    for i in range(d):
        t = F.add(t, A[i][i])
    return t


def rref(F: Field, rows: Sequence[Sequence[int]]) -> Tuple[List[List[int]], List[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    R = [list(r) for r in rows]
    if not R:
        return [], []
    ncols = len(R[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(R)):
            if R[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        R[r], R[pivot_row] = R[pivot_row], R[r]
        inv = F.inv(R[r][c])
        R[r] = [F.mul(inv, x) for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c] != 0:
                factor = R[i][c]
                R[i] = [F.sub(x, F.mul(factor, y)) for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R, pivots


def rank(F: Field, rows: Sequence[Sequence[int]]) -> int:
    return len(rref(F, rows)[1])


def kernel_basis(F: Field, rows: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    """Basis of the right kernel {v : rows @ v = 0}, in echelon form."""
    if not rows:
        return []
    ncols = len(rows[0])
    R, pivots = rref(F, rows)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        v = [0] * ncols
        v[fc] = F.one
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(R[i][fc])
        basis.append(tuple(v))
    return basis


def mat_inv(F: Field, A: Mat) -> Mat:
    d = _check_square(A)
    aug = [list(A[i]) + [F.one if j == i else 0 for j in range(d)] for i in range(d)]
    R, pivots = rref(F, aug)
    if pivots != list(range(d)):
        raise NotInvertibleError("matrix is singular")
    return tuple(tuple(R[i][d:]) for i in range(d))


def det(F: Field, A: Mat) -> int:
    d = _check_square(A)
    M = [list(r) for r in A]
    result = F.one
    for c in range(d):
        pivot = None
        for i in range(c, d):
            if M[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            return 0
        if pivot != c:
            M[c], M[pivot] = M[pivot], M[c]
            result = F.neg(result)
        result = F.mul(result, M[c][c])
        inv = F.inv(M[c][c])
        for i in range(c + 1, d):
            if M[i][c] != 0:
                factor = F.mul(inv, M[i][c])
                M[i] = [F.sub(x, F.mul(factor, y)) for x, y in zip(M[i], M[c])]
    return result


def is_invertible(F: Field, A: Mat) -> bool:
    return det(F, A) != 0


# ----------------------------------------------------------------------
# characteristic polynomial (division-free, works over any commutative ring)
# ----------------------------------------------------------------------

def berkowitz(ring, A: Sequence[Sequence[object]]) -> List[object]:
    """Coefficients of det(tI - A), leading term first, over any ring.

    ``ring`` must provide zero, one, add(a,b), mul(a,b), neg(a).  Uses the
    Samuelson-Berkowitz recursion so no divisions are performed.
    """
    n = len(A)
    if n == 0:
        return [ring.one]
    poly = [ring.one, ring.neg(A[0][0])]
    for i in range(1, n):
        a = A[i][i]
        row = [A[i][j] for j in range(i)]
        col = [A[j][i] for j in range(i)]
        sub = [[A[x][y] for y in range(i)] for x in range(i)]
        # items[k] = coefficient sequence: 1, -a, -(row col), -(row sub col), ...
        items = [ring.one, ring.neg(a)]
        vec = list(col)
        for _ in range(i - 1):
            s = ring.zero
            for rv, vv in zip(row, vec):
                s = ring.add(s, ring.mul(rv, vv))
            items.append(ring.neg(s))
            vec = [_ring_dot(ring, sub[x], vec) for x in range(i)]
        s = ring.zero
        for rv, vv in zip(row, vec):
            s = ring.add(s, ring.mul(rv, vv))
        items.append(ring.neg(s))
        # lower-triangular Toeplitz multiply of `items` against `poly`
        new_poly = []
        for r in range(i + 2):
            s = ring.zero
            for k in range(len(poly)):
                idx = r - k
                if 0 <= idx < len(items):
                    s = ring.add(s, ring.mul(items[idx], poly[k]))
            new_poly.append(s)
        poly = new_poly
    return poly


def _ring_dot(ring, xs, ys):
    s = ring.zero
    for x, y in zip(xs, ys):
        s = ring.add(s, ring.mul(x, y))
    return s


def charpoly(F: Field, A: Mat) -> List[int]:
    """Coefficients of det(tI - A) over F, leading (=1) coefficient first."""
    _check_square(A)
    return berkowitz(F, A)


# ----------------------------------------------------------------------
# group closure
# ----------------------------------------------------------------------

Word = Tuple[int, ...]


@dataclass(frozen=True)
class MatrixGroup:
    """A finite matrix group with BFS word witnesses.

    ``elements`` is in breadth-first order starting at the identity;
    ``words[m]`` is a tuple of generator indices whose left-to-right product
    equals m.
    """

    field: Field
    d: int
    generators: Tuple[Mat, ...]
    elements: Tuple[Mat, ...]
    words: Dict[Mat, Word] = dc_field(repr=False, default_factory=dict)

    @property
    def order(self) -> int:
        return len(self.elements)

    def word_for(self, m: Mat) -> Word:
        return self.words[m]

    def __contains__(self, m: Mat) -> bool:
        return m in self.words

    def evaluate_word(self, word: Word) -> Mat:
        m = mat_identity(self.field, self.d)
        for i in word:
            m = mat_mul(self.field, m, self.generators[i])
        return m


def closure(F: Field, generators: Sequence[Mat], cap: Optional[int] = None,
            require_invertible: bool = True) -> MatrixGroup:
    """Breadth-first monoid closure of a generating set.

    When every generator is invertible (the default requirement) the result
    is the generated group.  Raises CapExceededError once the element count
    passes the cap (argument, then DEFRING_CAP env var, then 200000).
    """
    gens = tuple(mat_from_rows(g) for g in generators)
    if not gens:
        raise DimensionMismatchError("need at least one generator")
    d = _check_square(gens[0])
    if d > MAX_DIM:
        raise DimensionMismatchError(f"matrix dimension {d} exceeds supported maximum {MAX_DIM}")
    for g in gens:
        if _check_square(g) != d:
            raise DimensionMismatchError("generators have mixed sizes")
        if require_invertible and det(F, g) == 0:
            raise NotInvertibleError(f"generator {g} is singular")
    limit = effective_cap(cap)
    ident = mat_identity(F, d)
    words: Dict[Mat, Word] = {ident: ()}
    order_list: List[Mat] = [ident]
    frontier = [ident]
    while frontier:
        new_frontier = []
        for m in frontier:
            for i, g in enumerate(gens):
                nm = mat_mul(F, m, g)
                if nm not in words:
                    words[nm] = words[m] + (i,)
                    order_list.append(nm)
                    new_frontier.append(nm)
                    if len(order_list) > limit:
                        raise CapExceededError(
                            f"closure exceeded cap of {limit} elements")
        frontier = new_frontier
    return MatrixGroup(field=F, d=d, generators=gens,
                       elements=tuple(order_list), words=words)


def solve_joint_kernel(F: Field, operators: Sequence[Mat]) -> List[Tuple[int, ...]]:
    """Basis of the joint right kernel of a list of n x n operators."""
    if not operators:
        raise DimensionMismatchError("need at least one operator")
    ncols = len(operators[0][0])
    stacked: List[Sequence[int]] = []
    for op in operators:
        if len(op[0]) != ncols:
            raise DimensionMismatchError("operators have mixed column counts")
        stacked.extend(op)
    return kernel_basis(F, stacked)


def commutant_dim(F: Field, mats: Sequence[Mat]) -> int:
    """Dimension of {X : XA = AX for all A}, computed via kron operators."""
    if not mats:
        raise DimensionMismatchError("need at least one matrix")
    d = _check_square(mats[0])
    ops = []
    for A in mats:
        if _check_square(A) != d:
            raise DimensionMismatchError("matrices have mixed sizes")
        # row-major vec: X -> AX - XA is kron(A, I) - kron(I, A^T)
        op = []
        for i in range(d):
            for j in range(d):
                row = [0] * (d * d)
                for b in range(d):
                    row[i * d + b] = F.add(row[i * d + b], F.neg(A[b][j]))
                for a in range(d):
                    row[a * d + j] = F.add(row[a * d + j], A[i][a])
                op.append(tuple(row))
        ops.append(tuple(op))
    return len(solve_joint_kernel(F, ops))


# ----------------------------------------------------------------------
# group-theoretic helpers on closures (used by the module layer)
# ----------------------------------------------------------------------

def conjugacy_classes(G: MatrixGroup) -> List[Tuple[Mat, ...]]:
    """Conjugacy classes of a closed group, each sorted for determinism."""
    F = G.field
    inv = {m: mat_inv(F, m) for m in G.elements}
    seen = set()
    classes = []
    for m in G.elements:
        if m in seen:
            continue
        cls = set()
        for g in G.elements:
            cls.add(mat_mul(F, mat_mul(F, g, m), inv[g]))
        seen |= cls
        classes.append(tuple(sorted(cls)))
    return classes


def normal_subgroups(G: MatrixGroup) -> List[Tuple[Mat, ...]]:
    """All normal subgroups, found as class unions closed under product."""
    F = G.field
    classes = conjugacy_classes(G)
    ident = mat_identity(F, G.d)
    ident_cls = [c for c in classes if ident in c][0]
    others = [c for c in classes if c is not ident_cls]
    n = G.order
    out = []
    for mask in range(1 << len(others)):
        members = set(ident_cls)
        for i, cls in enumerate(others):
            if mask >> i & 1:
                members.update(cls)
        if n % len(members) != 0:
            continue
        ok = True
        for a in members:
            for b in members:
                if mat_mul(F, a, b) not in members:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(tuple(sorted(members)))
    out.sort(key=lambda s: (len(s), s))
    return out


def quotient_cyclic_order(G: MatrixGroup, H: Sequence[Mat]) -> Optional[int]:
    """Order of G/H if the quotient is cyclic, else None.  H must be normal."""
    F = G.field
    members = set(H)
    m = G.order // len(members)
    if m == 1:
        return 1
    for g in G.elements:
        # order of gH in the quotient
        acc = g
        k = 1
        while acc not in members:
            acc = mat_mul(F, acc, g)
            k += 1
        if k == m:
            return m
    return None
