import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zsinv.abelian import AbelianGroup, Sequence
from zsinv.monomial import ModuleSpec
from zsinv.parsing import ParseError, parse_element, parse_group, parse_module_spec, parse_sequence


def test_examples():
    assert parse_group("3,3") == AbelianGroup((3, 3))
    A = parse_group("3, 3")
    S = parse_sequence("(1,0)^2 (0,1)", A)
    assert len(S) == 3 and S.count(A(1, 0)) == 2
    assert parse_module_spec("p=3;V=[1:1]") == ModuleSpec.single(3)
    assert parse_element("(2,1)", A) == A(2, 1)
    assert parse_sequence("[]", A) == Sequence.empty(A)


def test_module_spec_round_trip():
    for text in ("p=3;V=[1:1]", "p=3; U=[(1,0)]; V=[1:2]", "p=5; V=[1:1,3:2]", "p=3; U=[(1,0),(0,1)]; V=[]"):
        spec = parse_module_spec(text)
        assert parse_module_spec(spec.format()) == spec


@pytest.mark.parametrize(
    "text, pos",
    [("3,x", 2), ("3,3,", 4), ("3 3", 2)],
)
def test_group_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as err:
        parse_group(text)
    assert err.value.pos == pos
    assert f"position {pos}" in str(err.value)


def test_sequence_errors():
    A = AbelianGroup((3, 3))
    with pytest.raises(ParseError, match="coordinates"):
        parse_sequence("(1,0) (1)", A)
    with pytest.raises(ParseError, match="expected"):
        parse_sequence("(1,0", A)
    with pytest.raises(ParseError):
        parse_sequence("", A)
    with pytest.raises(ParseError, match="block index"):
        parse_module_spec("p=3;V=[3:1]")


@settings(max_examples=150, deadline=None)
@given(
    st.sampled_from([(3,), (3, 3), (2, 4), (5, 5)]).flatmap(
        lambda orders: st.tuples(
            st.just(AbelianGroup(orders)),
            st.dictionaries(st.integers(0, AbelianGroup(orders).order - 1), st.integers(1, 5), max_size=5),
        )
    )
)
def test_sequence_round_trip(case):
    A, counts = case
    S = Sequence.from_counts(A, counts)
    assert parse_sequence(str(S), A) == S
    assert parse_group(A.format()) == A
