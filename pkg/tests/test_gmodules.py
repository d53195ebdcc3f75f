"""Adjoint modules, irreducibility, semisimplification and Clifford theory."""

from __future__ import annotations

from itertools import product

import pytest

from defring import ffalg, gmodules
from defring.errors import PreconditionError, UnsupportedModuleError
from defring.ffalg import Field
from conftest import make_rep, one_plus_omega_q5


def brute_invariants(module) -> int:
    """Exhaustive invariant count for tiny modules (oracle)."""
    F = module.field
    n = module.dim
    count = 0
    for v in product(range(F.q), repeat=n):
        if all(ffalg.mat_vec(F, act, v) == v for act in module.actions):
            count += 1
    # the invariants form a subspace, so count = q^dim
    dim = 0
    while F.q ** dim < count:
        dim += 1
    assert F.q ** dim == count
    return dim


class TestModuleConstructions:
    def test_ad_dimensions_and_invariants_oracle(self):
        rep = make_rep(3, [[[1, 1], [0, 1]], [[0, 1], [2, 0]]])
        ad = gmodules.make_ad(rep)
        assert ad.dim == 4
        assert gmodules.invariants_dim(ad) == brute_invariants(ad)

    def test_ad_invariants_equal_commutant(self):
        # invariants of ad are exactly the commutant of the image
        for mats in [
            [[[1, 1], [0, 1]]],
            [[[1, 1], [0, 1]], [[0, 1], [2, 0]]],
            [[[2, 0], [0, 1]]],
        ]:
            rep = make_rep(3, mats)
            ad = gmodules.make_ad(rep)
            assert gmodules.invariants_dim(ad) == \
                ffalg.commutant_dim(rep.field, rep.matrices)

    def test_ad0_splits_off_when_p_does_not_divide_d(self):
        rep = make_rep(5, [[[1, 1], [0, 1]], [[2, 0], [0, 1]]])
        ad0 = gmodules.make_ad0(rep)
        assert ad0.dim == 3
        assert gmodules.invariants_dim(gmodules.make_ad(rep)) == \
            gmodules.invariants_dim(ad0) + 1

    def test_adbar_when_p_divides_d(self):
        rep = make_rep(2, [[[1, 1], [0, 1]], [[0, 1], [1, 0]]])
        ad0 = gmodules.make_ad0(rep)
        adbar = gmodules.make_adbar(rep)
        assert ad0.dim == 3 and adbar.dim == 3
        # scalars sit inside ad0 here, so the two quotient data differ
        assert gmodules.invariants_dim(ad0) >= 1

    def test_twist_order_p_minus_1(self):
        rep = one_plus_omega_q5()
        m = gmodules.make_rep_module(rep)
        t = gmodules.twist(m, 4)  # omega^(p-1) = 1
        assert t.actions == m.actions

    def test_twist_at_p2_is_trivial(self):
        rep = make_rep(2, [[[1, 1], [0, 1]]])
        m = gmodules.make_rep_module(rep)
        assert gmodules.twist(m, 1).actions == m.actions

    def test_hom_module_invariants_are_intertwiners(self):
        F = Field(3)
        rep = make_rep(3, [[[0, 1], [2, 0]], [[1, 1], [1, 2]]])
        m = gmodules.make_rep_module(rep)
        hom = gmodules.hom_module(m, m)
        assert hom.dim == 4
        assert gmodules.invariants_dim(hom) == \
            len(gmodules.intertwiner_space(F, m.actions, m.actions))

    def test_registered_duals_are_involutive(self):
        rep = make_rep(5, [[[1, 1], [0, 1]], [[2, 0], [0, 1]]], omegas=[1, 2])
        for build in (gmodules.make_rep_module, gmodules.make_ad):
            m = build(rep)
            dd = gmodules.registered_dual(gmodules.registered_dual(m))
            assert dd.dim == m.dim
            assert gmodules.invariants_dim(dd) == gmodules.invariants_dim(m)

    def test_ad0_adbar_duality_pairing(self):
        rep = make_rep(5, [[[1, 1], [0, 1]], [[2, 0], [0, 1]]], omegas=[1, 2])
        d_ad0 = gmodules.registered_dual(gmodules.make_ad0(rep))
        assert d_ad0.dim == 3

    def test_unregistered_dual_raises(self):
        rep = make_rep(3, [[[1, 1], [0, 1]]])
        m = gmodules.make_rep_module(rep)
        s = gmodules.direct_sum([m, m])
        with pytest.raises(UnsupportedModuleError):
            gmodules.registered_dual(s)


class TestIrreducibility:
    def test_known_irreducibles(self):
        cases = [
            (3, [[[0, 1], [2, 0]], [[1, 1], [1, 2]]]),   # quaternion image
            (7, [[[2, 0], [0, 4]], [[0, 1], [1, 0]]]),   # S3 2-dim
            (2, [[[1, 1], [0, 1]], [[0, 1], [1, 0]]]),   # GL2(F2) standard
        ]
        for p, mats in cases:
            rep = make_rep(p, mats)
            assert gmodules.is_irreducible(gmodules.make_rep_module(rep))

    def test_known_reducibles(self):
        cases = [
            (3, [[[1, 1], [0, 1]]]),
            (5, [[[2, 0], [0, 1]], [[3, 0], [0, 1]]]),
        ]
        for p, mats in cases:
            rep = make_rep(p, mats)
            m = gmodules.make_rep_module(rep)
            sub = gmodules.find_proper_submodule(m)
            assert sub is not None
            # the returned basis spans an invariant subspace
            F, basis = rep.field, sub
            for act in m.actions:
                for v in basis:
                    w = ffalg.mat_vec(F, act, v)
                    stacked = list(basis) + [w]
                    assert ffalg.rank(F, stacked) == len(basis)

    def test_absolutely_irreducible_vs_irreducible(self):
        # order-4 cyclic: irreducible over GF(3) but not absolutely
        rep = make_rep(3, [[[0, 1], [2, 0]]])
        m = gmodules.make_rep_module(rep)
        assert gmodules.is_irreducible(m)
        assert not gmodules.is_absolutely_irreducible(m)
        # after extending scalars it splits
        big = gmodules.extend_scalars(m, 2)
        assert not gmodules.is_irreducible(big)

    def test_random_path_agrees_with_exhaustive(self):
        # force the randomized certificate by lowering the exhaustive limit
        cases = [
            (3, [[[0, 1], [2, 0]], [[1, 1], [1, 2]]], True),
            (3, [[[1, 1], [0, 1]], [[2, 0], [0, 1]]], False),
            (5, [[[0, 1], [4, 0]], [[2, 0], [0, 3]]], True),
        ]
        for p, mats, expect in cases:
            m = gmodules.make_rep_module(make_rep(p, mats))
            exhaustive = gmodules.find_proper_submodule(m) is None
            randomized = gmodules.find_proper_submodule(m, exhaustive_limit=1) is None
            assert exhaustive == randomized == expect


class TestSemisimplify:
    def test_diagonal_blocks(self):
        F = Field(5)
        mats = (((2, 1, 0), (0, 3, 0), (0, 0, 2)),)
        ss = gmodules.semisimplify_tuple(F, mats)
        assert sorted(ss.dims) == [1, 1, 1]
        from defring import pseudochar
        assert pseudochar.pseudo_equal(F, mats, ss.block_tuple)

    def test_irreducible_is_fixed_point(self):
        F = Field(3)
        mats = (((0, 1), (2, 0)), ((1, 1), (1, 2)))
        ss = gmodules.semisimplify_tuple(F, mats)
        assert ss.dims == (2,)
        assert gmodules.find_isomorphism(F, mats, ss.block_tuple) is not None

    def test_nonsplit_extension_splits(self):
        F = Field(5)
        mats = (((1, 1), (0, 1)), ((2, 3), (0, 1)))
        ss = gmodules.semisimplify_tuple(F, mats)
        assert ss.dims == (1, 1)
        from defring import pseudochar
        assert pseudochar.pseudo_equal(F, mats, ss.block_tuple)

    def test_constituents_multiset_stable_under_conjugation(self):
        F = Field(3)
        mats = (((1, 1, 0), (0, 1, 0), (0, 0, 2)),)
        g = ((1, 0, 1), (2, 1, 0), (0, 1, 2))
        gi = ffalg.mat_inv(F, g)
        conj = tuple(ffalg.mat_mul(F, ffalg.mat_mul(F, g, m), gi) for m in mats)
        a = gmodules.semisimplify_tuple(F, mats)
        b = gmodules.semisimplify_tuple(F, conj)
        assert sorted(a.dims) == sorted(b.dims)
        assert gmodules.find_isomorphism(F, a.block_tuple, b.block_tuple) is not None


class TestIsomorphism:
    def test_conjugate_iff_isomorphic(self):
        F = Field(5)
        a = (((1, 1), (0, 1)), ((2, 0), (0, 1)))
        g = ((1, 2), (3, 2))
        gi = ffalg.mat_inv(F, g)
        b = tuple(ffalg.mat_mul(F, ffalg.mat_mul(F, g, m), gi) for m in a)
        T = gmodules.find_isomorphism(F, a, b)
        assert T is not None
        Ti = ffalg.mat_inv(F, T)
        for x, y in zip(a, b):
            assert ffalg.mat_mul(F, ffalg.mat_mul(F, T, x), Ti) == y

    def test_nonisomorphic_detected(self):
        F = Field(5)
        assert gmodules.find_isomorphism(
            F, (((2, 0), (0, 1)),), (((3, 0), (0, 1)),)) is None

    def test_scalar_twist_not_isomorphic(self):
        F = Field(7)
        a = (((2, 0), (0, 4)), ((0, 1), (1, 0)))
        b = tuple(ffalg.mat_scalar(F, 2, m) for m in a)
        assert gmodules.find_isomorphism(F, a, a) is not None
        assert gmodules.find_isomorphism(F, a, b) is None


class TestClifford:
    @staticmethod
    def _index2_subgroup(G, F):
        for H in ffalg.normal_subgroups(G):
            if len(H) * 2 == G.order:
                return H
        raise AssertionError("no index-2 subgroup")

    def test_s3_over_gf7_restriction_reducible(self):
        # 2-dim rep of S3 restricted to A3 splits; detected via the sign twist
        F = Field(7)
        gens = (((2, 0), (0, 4)), ((0, 1), (1, 0)))
        G = ffalg.closure(F, gens)
        rep = make_rep(7, [[[2, 0], [0, 4]], [[0, 1], [1, 0]]], e=1)
        module = gmodules.make_rep_module(rep)
        H = self._index2_subgroup(G, F)
        rpt = gmodules.clifford_test(G, module, H)
        assert rpt.quotient_order == 2
        assert not rpt.restriction_irreducible
        assert rpt.character_values is not None

    def test_quaternion_over_gf3_self_twist(self):
        F = Field(3)
        gens = (((0, 1), (2, 0)), ((1, 1), (1, 2)))
        G = ffalg.closure(F, gens)
        assert G.order == 8
        rep = make_rep(3, [[[0, 1], [2, 0]], [[1, 1], [1, 2]]])
        module = gmodules.make_rep_module(rep)
        # each index-2 subgroup is cyclic of order 4, so its restriction
        # splits geometrically and a sign-character self-twist must exist
        tested = 0
        for H in ffalg.normal_subgroups(G):
            m = G.order // len(H)
            if m % F.p == 0 or m == 1:
                continue
            try:
                rpt = gmodules.clifford_test(G, module, H)
            except PreconditionError as exc:
                assert "not cyclic" in str(exc)
                continue
            assert rpt.restriction_irreducible == (rpt.character_values is None)
            assert not rpt.restriction_irreducible
            tested += 1
        assert tested >= 3  # the three index-2 subgroups of the quaternions

    def test_trivial_quotient(self):
        F = Field(3)
        gens = (((0, 1), (2, 0)), ((1, 1), (1, 2)))
        G = ffalg.closure(F, gens)
        rpt = gmodules.clifford_test(
            G, gmodules.make_rep_module(
                make_rep(3, [[[0, 1], [2, 0]], [[1, 1], [1, 2]]])),
            G.elements)
        assert rpt.quotient_order == 1
        assert rpt.restriction_irreducible

    def test_preconditions(self):
        F = Field(3)
        gens = (((1, 1), (0, 1)),)
        G = ffalg.closure(F, gens)   # order 3, char divides it
        rep = make_rep(3, [[[1, 1], [0, 1]]])
        with pytest.raises(PreconditionError):
            gmodules.clifford_test(G, gmodules.make_rep_module(rep),
                                   [ffalg.mat_identity(F, 2)])


class TestExtendScalars:
    def test_dimension_and_order_preserved(self):
        rep = make_rep(3, [[[0, 1], [2, 0]], [[1, 1], [1, 2]]])
        m = gmodules.make_rep_module(rep)
        big = gmodules.extend_scalars(m, 2)
        assert big.field.q == 9
        G_small = ffalg.closure(rep.field, m.actions)
        G_big = ffalg.closure(big.field, big.actions)
        assert G_small.order == G_big.order

    def test_embedding_is_field_hom(self):
        # scalar extension of a 1x1 module preserves multiplicative orders
        rep = make_rep(7, [[[3]]])
        m = gmodules.make_rep_module(rep)
        big = gmodules.extend_scalars(m, 2)
        assert big.field.element_order(big.actions[0][0][0]) == \
            rep.field.element_order(3)


class TestKummer:
    def test_irreducible_on_subgroup_words(self):
        rep = make_rep(3, [[[0, 1], [2, 0]], [[1, 1], [1, 2]]],
                       omegas=[2, 1])
        # the subgroup generated by both generators is the full image,
        # which is absolutely irreducible
        assert gmodules.kummer_irreducible(rep, [[[0], [1]]],
                                           cross_check=False)

    def test_reducible_restriction_detected(self):
        rep = make_rep(7, [[[2, 0], [0, 4]], [[0, 1], [1, 0]]])
        # restriction to the diagonal generator alone is reducible
        assert not gmodules.kummer_irreducible(rep, [[[0]]], cross_check=False)

    def test_needs_subgroups(self):
        rep = make_rep(3, [[[0, 1], [2, 0]], [[1, 1], [1, 2]]])
        with pytest.raises(PreconditionError):
            gmodules.kummer_irreducible(rep, [])
