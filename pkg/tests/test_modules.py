import pytest

from quivlat.algebra import Quiver, validate_admissible
from quivlat.linalg import GF, QQ, Matrix
from quivlat.modules import (Representation, ar_translate, decompose,
                             direct_sum, enumerate_submodules,
                             find_split_embedding, full_submodule, hom_space,
                             identity_morphism, is_isomorphic,
                             quotient_by, radical_layers, reject, simple_at,
                             sub_representation, summand_indices, tau_rigid,
                             trace, zero_submodule)

from tests.oracles import all_morphisms

F2 = GF(2)
F3 = GF(3)


@pytest.fixture(scope="module")
def a2():
    return validate_admissible(
        Quiver(["1", "2"], [("a", "1", "2")]), [], name="a2")


@pytest.fixture(scope="module")
def loop():
    return validate_admissible(
        Quiver(["1"], [("e", "1", "1")]), [("e", "e")], name="loop")


def rep(algebra, field, dims, maps):
    built = {name: Matrix(field, dims[t], dims[s],
                          [[field.from_int(x) for x in row] for row in data])
             for name, s, t, data in maps}
    return Representation(algebra, field, dims, built, check=True)


def interval(a2, field=F2):
    return rep(a2, field, {"1": 1, "2": 1}, [("a", "1", "2", [[1]])])


def loop_proj(loop, field=F2):
    return rep(loop, field, {"1": 2}, [("e", "1", "1", [[0, 0], [1, 0]])])


class TestHomSpaces:
    def test_dimension_matches_exhaustive_enumeration(self, a2, loop):
        cases = [
            (simple_at(a2, "1", F2), simple_at(a2, "2", F2)),
            (simple_at(a2, "2", F2), interval(a2)),
            (interval(a2), simple_at(a2, "1", F2)),
            (interval(a2), interval(a2)),
            (loop_proj(loop), loop_proj(loop)),
            (loop_proj(loop), simple_at(loop, "1", F2)),
            (simple_at(loop, "1", F2), loop_proj(loop)),
        ]
        for m, n in cases:
            found = all_morphisms(m, n)
            assert 2 ** hom_space(m, n).dim == len(found)

    def test_basis_members_satisfy_the_intertwining_condition(self, loop):
        p = loop_proj(loop, F3)
        hs = hom_space(p, p)
        assert hs.dim == 2
        e = p.maps["e"]
        for f in hs.basis:
            b = f.blocks["1"]
            assert b.mul(e).data == e.mul(b).data

    def test_directionality(self, a2):
        s1, s2 = simple_at(a2, "1", QQ), simple_at(a2, "2", QQ)
        assert hom_space(s1, s2).dim == 0
        assert hom_space(s2, interval(a2, QQ)).dim == 1
        assert hom_space(interval(a2, QQ), s2).dim == 0
        assert hom_space(interval(a2, QQ), s1).dim == 1


class TestMorphismCalculus:
    def test_then_composes_left_to_right(self, a2):
        m = interval(a2)
        s2 = simple_at(a2, "2", F2)
        (into,) = hom_space(s2, m).basis
        (onto,) = hom_space(m, simple_at(a2, "1", F2)).basis
        composite = into.then(onto)
        assert composite.is_zero()

    def test_kernel_image_of_projection(self, a2):
        m = interval(a2)
        (onto,) = hom_space(m, simple_at(a2, "1", F2)).basis
        assert onto.is_surjective() and not onto.is_injective()
        ker = onto.kernel()
        assert [ker.spaces[v].dim for v in ("1", "2")] == [0, 1]
        img = onto.image()
        assert img.is_full()

    def test_identity_and_scaling(self, loop):
        p = loop_proj(loop, F3)
        ident = identity_morphism(p)
        assert ident.then(ident.scale(F3.from_int(2))).blocks["1"].data == \
            ident.scale(F3.from_int(2)).blocks["1"].data


class TestSubQuotient:
    def test_submodule_and_quotient_dimensions_add_up(self, a2):
        m = interval(a2)
        socle = trace([simple_at(a2, "2", F2)], m)
        sub, incl = sub_representation(m, socle)
        quot, proj = quotient_by(m, socle)
        assert sub.dims == {"1": 0, "2": 1}
        assert quot.dims == {"1": 1, "2": 0}
        assert incl.is_injective() and proj.is_surjective()
        assert incl.then(proj).is_zero()

    def test_trace_and_reject_are_dual_on_the_interval(self, a2):
        m = interval(a2)
        s1, s2 = simple_at(a2, "1", F2), simple_at(a2, "2", F2)
        assert trace([s2], m).spaces["2"].dim == 1
        assert trace([s1], m).is_zero()
        assert reject([s1], m).spaces["2"].dim == 1
        assert reject([s2], m).is_full()
        assert trace([m], m).is_full()
        assert zero_submodule(m).is_zero() and full_submodule(m).is_full()

    def test_submodule_enumeration_on_a_semisimple_square(self, loop):
        s = simple_at(loop, "1", F2)
        double, _ = direct_sum([s, s])
        subs = enumerate_submodules(double)
        assert len(subs) == 5
        assert sorted(x.spaces["1"].dim for x in subs) == [0, 1, 1, 1, 2]

    def test_loop_square_has_three_submodules(self, loop):
        p = loop_proj(loop)
        assert len(enumerate_submodules(p)) == 3


class TestDecomposition:
    def test_indecomposables_stay_whole(self, a2, loop):
        for m in (interval(a2), loop_proj(loop), simple_at(a2, "1", F2)):
            assert len(decompose(m)) == 1

    def test_sum_splits_into_the_right_pieces(self, a2):
        m = interval(a2)
        s1 = simple_at(a2, "1", F2)
        total, _ = direct_sum([m, s1, m])
        parts = decompose(total)
        assert sorted(p.total_dim for p in parts) == [1, 2, 2]
        assert sum(is_isomorphic(p, m) for p in parts) == 2

    def test_isomorphism_survives_base_change(self, loop):
        p = loop_proj(loop)
        twisted = rep(loop, F2, {"1": 2},
                      [("e", "1", "1", [[1, 1], [1, 1]])])
        assert is_isomorphic(p, twisted)
        assert not is_isomorphic(p, simple_at(loop, "1", F2))


class TestSplitEmbeddings:
    def test_found_for_genuine_summands(self, a2):
        m = interval(a2)
        s1 = simple_at(a2, "1", F2)
        total, _ = direct_sum([m, s1])
        got = find_split_embedding(m, total)
        assert got is not None
        phi, psi = got
        assert phi.then(psi).blocks["1"].data == \
            identity_morphism(m).blocks["1"].data

    def test_rejected_for_non_summands(self, a2, loop):
        m = interval(a2)
        s2 = simple_at(a2, "2", F2)
        assert find_split_embedding(s2, m) is None
        s = simple_at(loop, "1", F2)
        assert find_split_embedding(s, loop_proj(loop)) is None

    def test_summand_indices_reads_off_multiplicities(self, a2):
        m = interval(a2)
        s1, s2 = simple_at(a2, "1", F2), simple_at(a2, "2", F2)
        total, _ = direct_sum([m, s2, m])
        picked = summand_indices(total, [m, s1, s2])
        assert picked == [0, 0, 2]
        assert summand_indices(total, [s1, s2]) is None


class TestStructure:
    def test_radical_layers_of_the_loop_square(self, loop):
        assert radical_layers(loop_proj(loop)) == [{"1": 1}, {"1": 1}]

    def test_translate_fixes_the_simple_and_kills_the_projective(self, loop):
        s = simple_at(loop, "1", F2)
        assert is_isomorphic(ar_translate(s), s)
        assert ar_translate(loop_proj(loop)).is_zero()

    def test_rigidity_flags_on_the_loop(self, loop):
        assert not tau_rigid(simple_at(loop, "1", F2))
        assert tau_rigid(loop_proj(loop))

    def test_translate_on_the_interval_quiver(self, a2):
        s1 = simple_at(a2, "1", QQ)
        t = ar_translate(s1)
        assert is_isomorphic(t, simple_at(a2, "2", QQ))
        assert ar_translate(interval(a2, QQ)).is_zero()
        assert tau_rigid(s1)

    def test_cast_preserves_structure(self, a2):
        m = interval(a2, QQ)
        over2 = m.cast(F2)
        assert over2.field == F2
        assert hom_space(over2, over2).dim == 1
