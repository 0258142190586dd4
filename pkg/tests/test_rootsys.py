from itertools import permutations

import pytest

from oracle_helpers import brute_weyl_order
from sphersub.rootsys import (
    InvalidRankError,
    NonSimpleError,
    SimpleType,
    canonicalize,
    cartan_matrix,
    dim_group,
    highest_root,
    num_positive_roots,
    parabolic_weyl_order,
    positive_roots,
    subdiagram_types,
    validate,
    weyl_order,
)

ALL_RANK8 = (
    [SimpleType("A", n) for n in range(1, 9)]
    + [SimpleType("B", n) for n in range(2, 9)]
    + [SimpleType("C", n) for n in range(2, 9)]
    + [SimpleType("D", n) for n in range(3, 9)]
    + [SimpleType("E", n) for n in (6, 7, 8)]
    + [SimpleType("F", 4), SimpleType("G", 2)]
)


def test_cartan_plates():
    assert cartan_matrix(SimpleType("A", 1)) == ((2,),)
    assert cartan_matrix(SimpleType("A", 2)) == ((2, -1), (-1, 2))
    assert cartan_matrix(SimpleType("G", 2)) == ((2, -1), (-3, 2))
    assert cartan_matrix(SimpleType("B", 2)) == ((2, -2), (-1, 2))
    assert cartan_matrix(SimpleType("C", 2)) == ((2, -1), (-2, 2))
    f4 = cartan_matrix(SimpleType("F", 4))
    assert f4[1][2] == -2 and f4[2][1] == -1


@pytest.mark.parametrize("t", ALL_RANK8, ids=str)
def test_cartan_entry_ranges(t):
    a = cartan_matrix(t)
    n = t.rank
    for i in range(n):
        assert a[i][i] == 2
        for j in range(n):
            if i != j:
                assert a[i][j] in (0, -1, -2, -3)
                assert a[i][j] * a[j][i] in (0, 1, 2, 3)


@pytest.mark.parametrize("t", ALL_RANK8, ids=str)
def test_positive_root_count_matches_dimension(t):
    roots = positive_roots(t)
    assert len(set(roots)) == len(roots)
    assert 2 * len(roots) + t.rank == dim_group(t)
    assert len(roots) == num_positive_roots(t)
    for r in roots:
        assert all(c >= 0 for c in r)


@pytest.mark.parametrize("t", ALL_RANK8, ids=str)
def test_root_closure_by_height(t):
    # every non-simple positive root splits off a simple root, so the set is
    # exactly the additive closure of the simple roots
    roots = set(positive_roots(t))
    n = t.rank
    for r in roots:
        if sum(r) == 1:
            continue
        found = False
        for i in range(n):
            lowered = list(r)
            lowered[i] -= 1
            if tuple(lowered) in roots:
                found = True
                break
        assert found, f"{r} has no simple-root predecessor in {t}"


def test_positive_roots_a2_exact():
    assert set(positive_roots(SimpleType("A", 2))) == {(1, 0), (0, 1), (1, 1)}
    assert len(positive_roots(SimpleType("G", 2))) == 6
    assert len(positive_roots(SimpleType("B", 2))) == 4


def test_closed_form_dimensions():
    assert dim_group(SimpleType("B", 3)) == 21
    assert dim_group(SimpleType("D", 4)) == 28
    assert dim_group(SimpleType("G", 2)) == 14
    for n in range(1, 9):
        assert dim_group(SimpleType("A", n)) == n * (n + 2)
    for t in ALL_RANK8:
        fam, n = t.family, t.rank
        expected = {
            "A": n * (n + 2),
            "B": n * (2 * n + 1),
            "C": n * (2 * n + 1),
            "D": n * (2 * n - 1),
        }.get(fam)
        if expected is not None:
            assert dim_group(t) == expected


@pytest.mark.parametrize(
    "t",
    [st for st in ALL_RANK8 if st.rank <= 4],
    ids=str,
)
def test_weyl_order_against_brute_force(t):
    assert weyl_order(t) == brute_weyl_order(t)


def test_weyl_order_examples():
    assert weyl_order(SimpleType("A", 1)) == 2
    assert weyl_order(SimpleType("A", 2)) == 6
    assert weyl_order(SimpleType("B", 3)) == 48


def test_canonicalize():
    assert canonicalize(SimpleType("D", 3)) == SimpleType("A", 3)
    assert canonicalize(SimpleType("C", 2)) == SimpleType("B", 2)
    assert canonicalize(SimpleType("E", 7)) == SimpleType("E", 7)
    with pytest.raises(NonSimpleError):
        canonicalize(SimpleType("D", 2))
    with pytest.raises(InvalidRankError):
        validate(SimpleType("E", 5))
    with pytest.raises(InvalidRankError):
        validate(SimpleType("B", 1))
    with pytest.raises(InvalidRankError):
        SimpleType("A", 0)


def test_d3_a3_graph_isomorphism():
    a = cartan_matrix(SimpleType("D", 3))
    b = cartan_matrix(SimpleType("A", 3))
    assert any(
        all(a[p[i]][p[j]] == b[i][j] for i in range(3) for j in range(3))
        for p in permutations(range(3))
    )


def test_highest_root_is_unique_maximum():
    for t in ALL_RANK8:
        roots = positive_roots(t)
        theta = highest_root(t)
        top = max(sum(r) for r in roots)
        assert sum(theta) == top
        assert sum(1 for r in roots if sum(r) == top) == 1


def test_subdiagram_types():
    b3 = SimpleType("B", 3)
    assert subdiagram_types(b3, {0, 1}) == (SimpleType("A", 2),)
    assert subdiagram_types(b3, {1, 2}) == (SimpleType("B", 2),)
    assert subdiagram_types(b3, {0, 2}) == (SimpleType("A", 1), SimpleType("A", 1))
    f4 = SimpleType("F", 4)
    assert subdiagram_types(f4, {0, 1, 2, 3}) == (SimpleType("F", 4),)
    # two long roots and one short span B3; one long and two short span C3
    assert subdiagram_types(f4, {0, 1, 2}) == (SimpleType("B", 3),)
    assert subdiagram_types(f4, {1, 2, 3}) == (SimpleType("C", 3),)
    e7 = SimpleType("E", 7)
    assert subdiagram_types(e7, {0, 1, 2, 3, 4, 5}) == (SimpleType("E", 6),)
    d5 = SimpleType("D", 5)
    assert subdiagram_types(d5, {1, 2, 3, 4}) == (SimpleType("D", 4),)
    assert subdiagram_types(d5, {0, 1, 2, 3}) == (SimpleType("A", 4),)


def test_parabolic_weyl_order():
    b3 = SimpleType("B", 3)
    assert parabolic_weyl_order(b3, {0, 1}) == 6
    assert parabolic_weyl_order(b3, {1, 2}) == 8
    assert parabolic_weyl_order(b3, set()) == 1
