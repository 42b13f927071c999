import pytest

from quivlat.algebra import (Quiver, classify, connected_components,
                             distributivity_criterion, find_band,
                             is_string_algebra, lrd_criterion,
                             validate_admissible)
from quivlat.errors import (ArrowInIdeal, InputError, NotAdmissible,
                            RelationNotAPath)

from tests.conftest import ALL_FIXTURES


def make(vertices, arrows, relations, name="t"):
    return validate_admissible(Quiver(vertices, arrows), relations, name=name)


class TestAdmissibility:
    def test_unbounded_loop_is_rejected_with_a_witness(self):
        with pytest.raises(NotAdmissible) as exc:
            make(["1"], [("e", "1", "1")], [])
        assert exc.value.witness_path == ("e", "e")

    def test_relation_shorter_than_two_is_rejected(self):
        with pytest.raises(ArrowInIdeal):
            make(["1", "2"], [("a", "1", "2")], [("a",)])

    def test_relation_must_compose_left_to_right(self):
        arrows = [("a", "1", "2"), ("b", "2", "3")]
        make(["1", "2", "3"], arrows, [("a", "b")])
        with pytest.raises(RelationNotAPath):
            make(["1", "2", "3"], arrows, [("b", "a")])

    def test_unknown_arrow_in_relation(self):
        with pytest.raises(RelationNotAPath):
            make(["1", "2"], [("a", "1", "2")], [("a", "z")])

    def test_duplicate_names_are_rejected(self):
        with pytest.raises(InputError):
            Quiver(["1", "1"], [])
        with pytest.raises(InputError):
            Quiver(["1"], [("a", "1", "1"), ("a", "1", "1")])

    def test_dimension_counts_the_surviving_paths(self):
        assert make(["1", "2"], [("a", "1", "2")], []).dimension == 3
        loop = make(["1"], [("e", "1", "1")], [("e", "e")])
        assert loop.dimension == 2
        cube = make(["1"], [("e", "1", "1")], [("e", "e", "e")])
        assert cube.dimension == 3


class TestIdealMembership:
    def test_contiguous_subword_semantics(self):
        alg = make(["1", "2", "3"],
                   [("a", "1", "2"), ("b", "2", "1"), ("c", "2", "3")],
                   [("b", "a")])
        assert alg.path_in_ideal(("b", "a"))
        assert alg.path_in_ideal(("a", "b", "a"))
        assert alg.path_in_ideal(("b", "a", "c"))
        assert not alg.path_in_ideal(("a", "b"))
        assert not alg.path_in_ideal(("a", "c"))

    def test_paths_between_respects_the_ideal(self):
        alg = make(["1"], [("e", "1", "1")], [("e", "e", "e")])
        assert sorted(len(p) for p in alg.paths_from("1")) == [0, 1, 2]


# verdicts fixed by hand from the arrow patterns at each vertex
EXPECTED = {
    # name: (string, band, criterion_holds, family, lrd_holds)
    "a2": (True, None, True, None, True),
    "a3-linear": (True, None, True, None, True),
    "a3-sink": (True, None, False, "i", False),
    "a3-source": (True, None, True, None, True),
    "loop-eps2": (True, None, True, None, False),
    "loop-plus-arrow": (True, None, False, "i", False),
    "d4-subspace": (False, None, False, "ii", False),
    "d4-source": (False, None, False, "iii", False),
    "kronecker": (True, "a*b^-1", False, "i", False),
    "two-loops": (True, "d*e^-1", False, "i", False),
    "loop-exit-norel": (False, None, False, "iii", False),
    "twocycle-exit": (False, None, False, "iii", False),
}


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_fixture_classification(name, fixture_file):
    alg = fixture_file(name).algebra
    stringy, band, crit, family, lrd = EXPECTED[name]
    got_string, witness = is_string_algebra(alg)
    assert got_string is stringy
    if not stringy:
        assert witness
    if stringy:
        found = find_band(alg)
        assert (str(found) if found else None) == band
    verdict = distributivity_criterion(alg)
    assert verdict.holds is crit
    assert verdict.family == family
    if not crit:
        assert verdict.witness()
    assert lrd_criterion(alg).holds is lrd


def test_bare_loop_passes_but_two_sided_crowding_fails():
    loop = make(["1"], [("e", "1", "1")], [("e", "e")])
    assert distributivity_criterion(loop).holds
    assert not lrd_criterion(loop).holds

    crowd = make(["1", "2"], [("a", "1", "2"), ("e", "2", "2")], [("e", "e")])
    v = distributivity_criterion(crowd)
    assert not v.holds and v.family == "i" and v.vertex == "2"


def test_exit_relation_restores_the_criterion():
    arrows = [("e", "1", "1"), ("m", "1", "2")]
    with_rel = make(["1", "2"], arrows, [("e", "e")])
    assert distributivity_criterion(with_rel).holds
    without = make(["1", "2"], arrows, [("e", "e", "e")])
    v = distributivity_criterion(without)
    assert not v.holds and v.family == "iii"


def test_connected_components_split_relations_too():
    alg = make(["0", "1", "2"], [("a", "1", "2")], [])
    parts = connected_components(alg)
    assert sorted(len(p.quiver.vertices) for p in parts) == [1, 2]
    assert sum(len(p.quiver.arrows) for p in parts) == 1


def test_classify_bundles_everything(fixture_file):
    rep = classify(fixture_file("kronecker").algebra)
    assert rep.string_algebra and rep.band == "a*b^-1"
    assert not rep.distributive.holds
    assert rep.num_components == 1
    assert rep.dimension == 4
