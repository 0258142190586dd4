import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sphersub.groups import (
    Factor,
    InvalidFactorError,
    NonSimple,
    ParseError,
    descriptor,
    normalize_strictly_classical,
    parse_descriptor,
    parse_linexpr,
    parse_pattern,
    simple_type_of,
    sl,
    so,
    sp,
    type_atom,
)
from sphersub.rootsys import SimpleType, dim_group
from sphersub.weights import Characteristic


def test_dimensions():
    assert parse_descriptor("Sp(8)").dim == 36
    assert parse_descriptor("G2xSp(2)").dim == 17
    assert parse_descriptor("Sp(4)xSp(2)").dim == 13
    assert parse_descriptor("Gm").dim == 1
    assert parse_descriptor("SGL(4,3)").dim == 4 * 4 + 3 * 3 - 1
    assert parse_descriptor("GL(5)").dim == 25
    assert parse_descriptor("DeltaSL2(q=4)").dim == 3
    assert parse_descriptor("Sp(8)").dim - parse_descriptor("G2xSp(2)").dim == 19


def test_ranks():
    assert parse_descriptor("SL(5)").rank == 4
    assert parse_descriptor("SO(9)").rank == 4
    assert parse_descriptor("Gm*Sp(6)").rank == 4
    assert parse_descriptor("DeltaSL2(q=9)").rank == 1


def test_dim_flag():
    assert parse_descriptor("Sp(8)").dim_flag == 16
    assert parse_descriptor("SO(8)").dim_flag == 12
    assert parse_descriptor("SL(2)").dim_flag == 1


def test_normalize_strictly_classical():
    p2 = Characteristic(2)
    g, subs = normalize_strictly_classical(parse_descriptor("SO(9)"), p2)
    assert str(g) == "Sp(8)" and subs == ("SO(9) -> Sp(8)",)
    g, subs = normalize_strictly_classical(parse_descriptor("SO(9)"), Characteristic(5))
    assert str(g) == "SO(9)" and subs == ()
    g, subs = normalize_strictly_classical(parse_descriptor("SO(7)xSO(3)"), p2)
    assert str(g) == "Sp(6)xSp(2)"
    # spin factors and even orthogonal factors are untouched
    g, _ = normalize_strictly_classical(parse_descriptor("Spin(7)xSO(8)"), p2)
    assert str(g) == "Spin(7)xSO(8)"


def test_simple_type_of():
    assert simple_type_of(parse_descriptor("Sp(6)")) == SimpleType("C", 3)
    assert simple_type_of(parse_descriptor("SO(7)")) == SimpleType("B", 3)
    assert simple_type_of(parse_descriptor("SO(6)")) == SimpleType("A", 3)
    assert simple_type_of(parse_descriptor("SL(5)")) == SimpleType("A", 4)
    res = simple_type_of(parse_descriptor("SO(4)"))
    assert isinstance(res, NonSimple)
    res = simple_type_of(parse_descriptor("SO(2)"))
    assert isinstance(res, NonSimple)
    res = simple_type_of(parse_descriptor("GL(3)"))
    assert isinstance(res, NonSimple)


SIMPLE_CLASSICAL = (
    [("SL", n) for n in range(2, 11)]
    + [("SO", n) for n in (3, 5, 6, 7, 8, 9, 10, 11, 12)]
    + [("Sp", n) for n in (2, 4, 6, 8, 10, 12)]
)


@pytest.mark.parametrize("kind,n", SIMPLE_CLASSICAL)
def test_dims_agree_with_root_system(kind, n):
    g = descriptor(Factor(kind, n))
    t = simple_type_of(g)
    assert isinstance(t, SimpleType)
    assert dim_group(t) == g.dim
    assert t.rank == g.rank


def test_block_identities_over_wide_range():
    # orthogonal form, both parities of n
    for n in range(2, 120):
        for m in range(1, n // 2 + 1):
            lhs = (
                (so(n).dim - so(n).rank) // 2 * 2
                + (so(n - 2 * m).dim + so(n - 2 * m).rank)
                - 2 * so(n - m).dim
            )
            assert lhs == m * (m - 1)
            assert so(n).rank - so(n - 2 * m).rank == m
    # symplectic form
    for n in range(2, 120):
        for m in range(1, n // 2 + 1):
            lhs = n * n + (n - 2 * m) * (n - 2 * m + 1) - (n - m) * (2 * n - 2 * m + 1)
            assert lhs == m * (2 * m - 1)


def test_factor_validation():
    with pytest.raises(InvalidFactorError):
        Factor("Sp", 7)
    with pytest.raises(InvalidFactorError):
        Factor("SL", 0)
    with pytest.raises(InvalidFactorError):
        Factor("Dq", 1)
    with pytest.raises(InvalidFactorError):
        type_atom("B", 3, short=True)
    assert sp(0).is_trivial and so(1).is_trivial and sl(1).is_trivial


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        parse_descriptor("SO(4)y")
    assert err.value.pos == 5
    with pytest.raises(ParseError):
        parse_descriptor("Qx(3)")
    with pytest.raises(ParseError):
        parse_descriptor("G2x")
    with pytest.raises(ParseError):
        parse_descriptor("D2")
    with pytest.raises(ParseError):
        parse_descriptor("SO(m)")
    with pytest.raises(ParseError):
        parse_descriptor("")


def test_pattern_instantiation():
    pat = parse_pattern("SO(m)xSO(n)")
    assert sorted(pat.variables) == ["m", "n"]
    inst = pat.instantiate({"m": 5, "n": 3})
    assert str(inst) == "SO(5)xSO(3)"
    pat = parse_pattern("Sp(2m+2n)")
    assert pat.instantiate({"m": 2, "n": 1}) == parse_descriptor("Sp(6)")
    assert parse_pattern("SO(2n-1)").try_instantiate({"n": 0}) is None


def test_linexpr_round_trip():
    for text in ("2n", "m+n", "m+n-1", "2m+2n", "2n+1", "7", "q"):
        e = parse_linexpr(text)
        assert parse_linexpr(str(e)) == e


def test_signatures_conflate_isogeny():
    sig = lambda s: parse_descriptor(s).signature()
    assert sig("GL(2)") == sig("Gm*SL(2)")
    assert sig("SO(3)") == sig("SL(2)") == sig("Sp(2)")
    assert sig("SO(6)") == sig("SL(4)")
    assert sig("SO(5)") == sig("Sp(4)")
    assert sig("SO(4)") == sig("SL(2)xSL(2)")
    assert sig("SGL(3,2)") == sig("Gm*SL(3)xSL(2)")
    assert sig("Spin(7)") == sig("SO(7)") == sig("B3")
    assert sig("At1") != sig("A1")
    assert sig("DeltaSL2(q=4)") != sig("SL(2)")
    assert sig("DeltaSL2(q=4)") != sig("DeltaSL2(q=8)")


FACTOR_POOL = [
    "SL(2)", "SL(5)", "SO(3)", "SO(7)", "SO(8)", "Sp(4)", "Sp(6)",
    "GL(3)", "SGL(4,2)", "Spin(9)", "Gm", "DeltaSL2(q=4)",
    "G2", "F4", "E6", "A3", "B4", "At1", "At2",
]


@given(parts=st.lists(st.sampled_from(FACTOR_POOL), min_size=1, max_size=4))
@settings(max_examples=80, deadline=None)
def test_parse_print_round_trip(parts):
    text = "x".join(parts)
    g = parse_descriptor(text)
    again = parse_descriptor(str(g))
    assert again == g
    assert again.dim == g.dim and again.rank == g.rank
    # dim - rank is always even: the flag dimension is well defined
    assert (g.dim - g.rank) % 2 == 0
