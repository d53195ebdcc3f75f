"""Generic matrices, trace invariants and fibre enumeration."""

from __future__ import annotations

from itertools import product

import pytest

from defring import ffalg, genmatrix, pseudochar
from defring.errors import InconsistentLambdaError, SizeExceededError
from defring.ffalg import Field
from defring.polys import PolyRing


class TestGenericMatrices:
    def test_entry_names(self):
        R = PolyRing([genmatrix.entry_var_name("x", i, j)
                      for i in range(2) for j in range(2)])
        M = genmatrix.generic_matrix(R, "x", 2)
        assert M[0][0] == R.var("x11")
        assert M[1][0] == R.var("x21")

    def test_symbolic_charpoly_2x2(self):
        names = [genmatrix.entry_var_name("x", i, j)
                 for i in range(2) for j in range(2)]
        R = PolyRing(names)
        M = genmatrix.generic_matrix(R, "x", 2)
        tr, det = genmatrix.symbolic_coeffs(R, M)
        assert tr == R.var("x11") + R.var("x22")
        assert det == R.var("x11") * R.var("x22") - R.var("x12") * R.var("x21")

    def test_symbolic_charpoly_matches_numeric(self):
        names = [genmatrix.entry_var_name("x", i, j)
                 for i in range(3) for j in range(3)]
        R = PolyRing(names)
        M = genmatrix.generic_matrix(R, "x", 3)
        coeffs = genmatrix.symbolic_coeffs(R, M)
        F = Field(7)
        vals = {"x11": 1, "x12": 2, "x13": 0, "x21": 0, "x22": 3,
                "x23": 1, "x31": 1, "x32": 0, "x33": 2}
        num = pseudochar.char_poly_coeffs(
            F, tuple(tuple(vals[genmatrix.entry_var_name("x", i, j)]
                           for j in range(3)) for i in range(3)))
        assert tuple(c.evaluate(F, vals) for c in coeffs) == tuple(num)


class TestBuildAgen:
    def test_presentation_shape(self):
        pres = genmatrix.build_agen(2, ["x", "y"], relations=[],
                                    lambda_values={})
        assert pres.d == 2 and pres.n_gens == 2
        assert pres.word_bound == 4
        assert "x11" in pres.ring.names and "y22" in pres.ring.names

    def test_inconsistent_lambda_rejected(self):
        with pytest.raises(InconsistentLambdaError):
            genmatrix.build_agen(2, ["x"], relations=[],
                                 lambda_values=[((0,), (1, 1)),
                                                ((0,), (2, 1))])
        with pytest.raises(InconsistentLambdaError):
            genmatrix.build_agen(2, ["x"], relations=[],
                                 lambda_values={(0,): (1,)})

    def test_long_words_truncated(self):
        pres = genmatrix.build_agen(
            2, ["x"], relations=[],
            lambda_values={(0,) * 5: (1, 1)}, word_bound=2)
        assert pres.truncated_words == ((0,) * 5,)
        assert pres.lambda_words == ()


class TestExample:
    def test_full_verification(self):
        rep = genmatrix.verify_example_3_5()
        assert rep["ok"]
        assert rep["generator_is_trace_relation"]
        assert rep["generator_is_det_relation"]
        assert all(all(row) for row in rep["ch_entries_reduce_to_zero"])
        assert rep["substitution_eliminates_generators"]
        assert rep["unipotent_specialisation_ok"]


class TestTraceInvariants:
    def test_size_caps(self):
        with pytest.raises(SizeExceededError):
            genmatrix.trace_invariants(4, 2, 3)
        with pytest.raises(SizeExceededError):
            genmatrix.trace_invariants(2, 4, 3)
        with pytest.raises(SizeExceededError):
            genmatrix.trace_invariants(2, 2, 7)

    def test_conjugation_invariance_over_large_prime(self):
        invs = genmatrix.trace_invariants(2, 2, 3)
        F = Field(101)
        a = ((3, 7), (1, 4))
        b = ((2, 0), (5, 9))
        g = ((1, 3), (2, 8))
        gi = ffalg.mat_inv(F, g)
        conj = [ffalg.mat_mul(F, ffalg.mat_mul(F, g, m), gi) for m in (a, b)]

        def assignment(mats):
            out = {}
            for gidx, name in enumerate(["x0", "x1"]):
                for i in range(2):
                    for j in range(2):
                        out[genmatrix.entry_var_name(name, i, j)] = mats[gidx][i][j]
            return out

        for inv in invs:
            assert inv.evaluate(F, assignment([a, b])) == \
                inv.evaluate(F, assignment(conj))


class TestFibreEnumeration:
    def test_order4_target_two_oracles(self):
        # oracle 1: exhaustive enumeration; oracle 2: the conjugation orbit
        F = Field(3)
        target = ((0, 1), (2, 0))
        enum = genmatrix.fibre_enumerate(F, 2, (target,))
        orbit = set()
        for rows in product(product(range(3), repeat=2), repeat=2):
            g = tuple(tuple(r) for r in rows)
            if ffalg.det(F, g) != 0:
                orbit.add(ffalg.mat_mul(F, ffalg.mat_mul(F, g, target),
                                        ffalg.mat_inv(F, g)))
        assert {p[0] for p in enum.points} == orbit
        assert enum.count == 6
        assert set(enum.tangent_dims) == {2}

    def test_orbit_size_explains_count(self):
        # |GL2(F3)| = 48 and the centraliser of the order-4 matrix is the
        # multiplicative group of GF(9), of order 8, so the orbit has 6 points
        F = Field(3)
        target = ((0, 1), (2, 0))
        centraliser = sum(
            1 for rows in product(product(range(3), repeat=2), repeat=2)
            if ffalg.det(F, g := tuple(tuple(r) for r in rows)) != 0
            and ffalg.mat_mul(F, g, target) == ffalg.mat_mul(F, target, g))
        assert centraliser == 8
        assert 48 // centraliser == 6

    def test_trivial_target(self):
        F = Field(3)
        enum = genmatrix.fibre_enumerate(F, 1, (((2,),),))
        assert enum.count == 1
        assert enum.points[0] == (((2,),),)

    def test_scalar_target_d2(self):
        # only the scalar itself matches the pseudo-character of 2*I over
        # GF(5): any other conjugacy class differs in some coefficient, and
        # non-semisimple matches share the semisimplification 2*I
        F = Field(5)
        enum = genmatrix.fibre_enumerate(F, 2, (((2, 0), (0, 2)),))
        mats = {p[0] for p in enum.points}
        assert ((2, 0), (0, 2)) in mats
        for m in mats:
            ss = pseudochar.char_poly_coeffs(F, m)
            assert ss == pseudochar.char_poly_coeffs(F, ((2, 0), (0, 2)))

    def test_csv_shape(self):
        F = Field(3)
        enum = genmatrix.fibre_enumerate(F, 2, ((((0, 1), (2, 0))),))
        lines = enum.to_csv().strip().splitlines()
        assert lines[0] == "m0_00,m0_01,m0_10,m0_11,tangent_dim"
        assert len(lines) == enum.count + 1

    def test_envelope_guard(self):
        F = Field(7)
        with pytest.raises(SizeExceededError):
            genmatrix.fibre_enumerate(F, 3, (ffalg.mat_identity(F, 3),) * 2)

    def test_tangent_at_separable_point(self):
        # distinct-eigenvalue diagonal: the fibre is the orbit, smooth of
        # dimension d^2 - d; tangent dim equals orbit dimension 2
        F = Field(5)
        enum = genmatrix.fibre_enumerate(F, 2, (((1, 0), (0, 2)),))
        pt_dims = dict(zip(enum.points, enum.tangent_dims))
        assert pt_dims[(((1, 0), (0, 2)),)] >= 2


class TestOrbitClosed:
    def test_semisimple_is_closed(self):
        F = Field(5)
        assert genmatrix.orbit_is_closed(F, (((1, 0), (0, 2)),))

    def test_nonsplit_is_not_closed(self):
        F = Field(5)
        assert not genmatrix.orbit_is_closed(F, (((1, 1), (0, 1)),))
