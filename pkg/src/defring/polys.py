"""Sparse multivariate polynomials with exact integer coefficients.

A ring fixes an ordered tuple of variable names; a polynomial is a map from
exponent tuples to nonzero integer coefficients.  Arithmetic is exact over Z.
Polynomials can be substituted into (variable -> polynomial) and evaluated in
a finite field, which is how symbolic identities get cross-checked
numerically.

The ring object exposes zero / one / add / mul / neg so it plugs directly
into the division-free characteristic polynomial in ffalg.
"""

from __future__ import annotations

from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from .errors import DimensionMismatchError

Expo = Tuple[int, ...]


class PolyRing:
    """Z[x_1, ..., x_n] for a fixed ordered list of variable names."""

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise DimensionMismatchError("duplicate variable names")
        self.names = names
        self.nvars = len(names)
        self._index = {n: i for i, n in enumerate(names)}
        self.zero = Poly(self, {})
        self.one = Poly(self, {(0,) * self.nvars: 1})

    def var(self, name: str) -> "Poly":
        i = self._index[name]
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def const(self, c: int) -> "Poly":
        if c == 0:
            return self.zero
        return Poly(self, {(0,) * self.nvars: int(c)})

    def gens(self) -> Tuple["Poly", ...]:
        return tuple(self.var(n) for n in self.names)

    # ring protocol for berkowitz
    def add(self, a: "Poly", b: "Poly") -> "Poly":
        return a + b

    def mul(self, a: "Poly", b: "Poly") -> "Poly":
        return a * b

    def neg(self, a: "Poly") -> "Poly":
        return -a

    def lift(self, p: "Poly") -> "Poly":
        """Reinterpret a polynomial from a ring whose names are a subset."""
        if p.ring is self:
            return p
        mapping = []
        for n in p.ring.names:
            if n not in self._index:
                raise DimensionMismatchError(f"variable {n!r} not present in target ring")
            mapping.append(self._index[n])
        terms: Dict[Expo, int] = {}
        for expo, c in p.terms.items():
            e = [0] * self.nvars
            for src, deg in enumerate(expo):
                e[mapping[src]] = deg
            terms[tuple(e)] = c
        return Poly(self, terms)

    def __repr__(self) -> str:
        return f"PolyRing({list(self.names)})"


Coefficient = Union[int, "Poly"]


class Poly:
    """Immutable sparse polynomial; do not mutate ``terms`` after creation."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Expo, int]):
        self.ring = ring
        self.terms: Dict[Expo, int] = {e: c for e, c in terms.items() if c != 0}
        self._hash: Optional[int] = None

    # -- basics ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(d == 0 for d in e) for e in self.terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise DimensionMismatchError("polynomial is not constant")
        return self.terms.get((0,) * self.ring.nvars, 0)

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def _coerce(self, other: Coefficient) -> "Poly":
        if isinstance(other, Poly):
            if other.ring is not self.ring:
                raise DimensionMismatchError("polynomials from different rings")
            return other
        return self.ring.const(other)

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: Coefficient) -> "Poly":
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Coefficient) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Coefficient) -> "Poly":
        return self._coerce(other) + (-self)

    def __mul__(self, other: Coefficient) -> "Poly":
        other = self._coerce(other)
        terms: Dict[Expo, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Poly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise DimensionMismatchError("negative powers are not defined")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- equality -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((id(self.ring), frozenset(self.terms.items())))
        return self._hash

    # -- substitution and evaluation ------------------------------------

    def subs(self, assignment: Mapping[str, Coefficient]) -> "Poly":
        """Substitute polynomials (or ints) for variables, by name."""
        ring = self.ring
        images = []
        for i, name in enumerate(ring.names):
            if name in assignment:
                v = assignment[name]
                images.append(ring.const(v) if isinstance(v, int) else ring.lift(v))
            else:
                images.append(ring.var(name))
        out = ring.zero
        for expo, c in self.terms.items():
            term = ring.const(c)
            for i, deg in enumerate(expo):
                if deg:
                    term = term * images[i] ** deg
            out = out + term
        return out

    def evaluate(self, field, assignment: Mapping[str, int]) -> int:
        """Evaluate in a finite field; every variable must be assigned."""
        vals = []
        for name in self.ring.names:
            if name not in assignment:
                raise DimensionMismatchError(f"no value for variable {name!r}")
            vals.append(assignment[name])
        acc = field.zero
        for expo, c in self.terms.items():
            term = field.embed(c)
            for i, deg in enumerate(expo):
                if deg:
                    term = field.mul(term, field.pow(vals[i], deg))
            acc = field.add(acc, term)
        return acc

    # -- printing -------------------------------------------------------

    def sorted_terms(self) -> Iterable[Tuple[Expo, int]]:
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for expo, c in self.sorted_terms():
            factors = []
            for name, deg in zip(self.ring.names, expo):
                if deg == 1:
                    factors.append(name)
                elif deg > 1:
                    factors.append(f"{name}^{deg}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        s = " + ".join(parts)
        return s.replace("+ -", "- ")
