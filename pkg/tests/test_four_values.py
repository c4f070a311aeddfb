import itertools
from fractions import Fraction

import pytest

from finmetric.four_values import (
    outer_swap,
    AmalgamationError,
    amalgamate,
    bad_quadruples,
    canonical_quadruple,
    check_four_values,
    interval,
    is_good,
    similar,
    swap,
)
from finmetric.spaces import DistanceSet, FiniteMetricSpace


def ds(*vals):
    return DistanceSet(vals)


class TestInterval:
    def test_published_bad_quadruple_125(self):
        iv = interval((2, 5, 1, 1))
        assert (iv.lo, iv.hi) == (3, 2)
        assert not is_good((2, 5, 1, 1), ds(1, 2, 5))

    def test_singleton_good(self):
        iv = interval((1, 1, 1, 1))
        assert (iv.lo, iv.hi) == (0, 2)
        assert is_good((1, 1, 1, 1), ds(1))

    def test_published_bad_quadruple_2379(self):
        iv = interval((3, 7, 2, 2))
        assert (iv.lo, iv.hi) == (4, 4)
        assert not is_good((3, 7, 2, 2), ds(2, 3, 7, 9))

    def test_invariant_under_trivial_permutations(self):
        q = (1, 5, 2, 3)
        for a, b in ((0, 1), (1, 0)):
            for c, d in ((2, 3), (3, 2)):
                assert interval((q[a], q[b], q[c], q[d])) == interval(q)
                assert interval((q[c], q[d], q[a], q[b])) == interval(q)


class TestCheckFourValues:
    def test_1_2_4_fails_with_katetov_witness(self):
        res = check_four_values(ds(1, 2, 4))
        assert not res
        assert res.witness == (1, 1, 2, 4)

    def test_1_2_5_holds(self):
        assert check_four_values(ds(1, 2, 5))

    def test_5_14_5_7_witness(self):
        res = check_four_values(ds(5, 7, 8, 14))
        assert not res
        assert res.witness_bad == (5, 14, 5, 7)

    def test_singleton_holds(self):
        assert check_four_values(ds(1))


# verdicts of the |S|<=3 classification
CLASSIFICATION = {
    (1, 2): True,
    (1, 3): True,
    (2, 3, 4): True,
    (1, 2, 3): True,
    (1, 2, 4): False,
    (1, 2, 5): True,
    (1, 3, 4): True,
    (1, 3, 6): True,
    (1, 3, 7): True,
}


@pytest.mark.parametrize("s,expected", sorted(CLASSIFICATION.items()))
def test_small_classification(s, expected):
    assert bool(check_four_values(ds(*s))) is expected


# published size-4 verdicts; failures carry their named bad quadruple
VERDICTS_TRUE = [
    (5, 7, 8, 10),
    (5, 7, 8, 11),
    (5, 7, 8, 13),
    (5, 7, 8, 17),
    (5, 6, 9, 10),
    (5, 6, 9, 11),
    (5, 6, 9, 12),
    (5, 6, 9, 13),
    (5, 6, 9, 14),
    (5, 6, 9, 19),
    (4, 7, 9, 11),
    (4, 7, 9, 12),
    (4, 7, 9, 13),
    (4, 7, 9, 19),
    (8, 14, 21, 22),
    (8, 14, 21, 28),
    (8, 14, 21, 43),
    (2, 3, 7, 9),
    (2, 3, 7, 14),
    (2, 3, 7, 15),
    (2, 6, 7, 8),
    (2, 6, 7, 12),
    (2, 6, 7, 15),
    (1, 4, 6, 7),
    (1, 4, 6, 8),
    (1, 4, 6, 10),
    (1, 4, 6, 13),
    (2, 5, 9, 10),
    (2, 5, 9, 14),
    (2, 5, 9, 19),
    (1, 3, 7, 8),
    (1, 3, 7, 10),
    (1, 3, 7, 14),
    (1, 3, 7, 15),
]

VERDICTS_FALSE = {
    (5, 7, 8, 14): (5, 14, 5, 7),
    (5, 7, 8, 15): (5, 15, 5, 7),
    (5, 7, 8, 16): (7, 16, 7, 8),
    (5, 6, 9, 15): None,  # via similarity with {5,7,8,15}
    (5, 6, 9, 18): None,  # via similarity with {5,7,8,16}
    (4, 7, 9, 14): (4, 14, 4, 7),
    # the printed witness (4,16,4,7) cannot witness a swap mismatch: both of
    # its pairings give empty intervals; (4,16,4,9) is the correct quadruple
    (4, 7, 9, 16): (4, 16, 4, 9),
    (4, 7, 9, 18): (7, 18, 4, 9),
    (8, 14, 21, 29): (14, 29, 8, 8),
    (8, 14, 21, 35): None,  # via similarity with {4,7,9,16}
    (8, 14, 21, 42): None,  # via similarity with {4,7,9,18}
    (2, 3, 7, 10): (2, 10, 2, 7),
    (2, 6, 7, 9): (6, 9, 2, 2),
    (2, 6, 7, 13): (2, 13, 6, 6),
    (2, 6, 7, 14): (6, 14, 2, 7),
    (1, 4, 6, 12): (4, 12, 4, 6),
    (2, 5, 9, 11): (5, 11, 2, 5),
    (2, 5, 9, 18): (5, 18, 5, 9),
}


@pytest.mark.parametrize("s", VERDICTS_TRUE)
def test_published_true_verdicts(s):
    assert check_four_values(ds(*s))


@pytest.mark.parametrize("s,named", sorted(VERDICTS_FALSE.items()))
def test_published_false_verdicts(s, named):
    res = check_four_values(ds(*s))
    assert not res
    # res.witness_bad is the lex-least mismatch; the published witness is a
    # hand-picked one, so verify it is a genuine witness: bad, with a good swap
    if named is not None:
        sset = ds(*s)
        assert not is_good(named, sset)
        assert is_good(swap(named), sset) or is_good(outer_swap(named), sset)
    # and the reported witness itself must be genuine
    assert is_good(res.witness, sset := ds(*s)) != is_good(res.witness_swap, sset)
    assert not is_good(res.witness_bad, sset)


# published bad-quadruple tables, rows as (interval, quadruple)
TABLES = {
    (1, 2, 5): [
        ((3, 2), (2, 5, 1, 1)),
        ((3, 3), (2, 5, 1, 2)),
        ((3, 4), (2, 5, 2, 2)),
        ((4, 2), (1, 5, 1, 1)),
        ((4, 3), (1, 5, 1, 2)),
        ((4, 4), (1, 5, 2, 2)),
    ],
    (1, 3, 4): [
        ((2, 2), (1, 3, 1, 1)),
        ((3, 2), (1, 4, 1, 1)),
    ],
    (1, 3, 6): [
        ((2, 2), (1, 3, 1, 1)),
        ((3, 2), (3, 6, 1, 1)),
        ((5, 2), (1, 6, 1, 1)),
        ((5, 4), (1, 6, 1, 3)),
    ],
    (2, 3, 7, 9): [
        ((4, 4), (3, 7, 2, 2)),
        ((4, 5), (3, 7, 2, 3)),
        ((4, 6), (3, 7, 3, 3)),
        ((5, 4), (2, 7, 2, 2)),
        ((5, 5), (2, 7, 2, 3)),
        ((5, 6), (2, 7, 3, 3)),
        ((6, 4), (3, 9, 2, 2)),
        ((6, 5), (3, 9, 2, 3)),
        ((6, 6), (3, 9, 3, 3)),
        ((7, 4), (2, 9, 2, 2)),
        ((7, 5), (2, 9, 2, 3)),
        ((7, 6), (2, 9, 3, 3)),
    ],
    (2, 3, 7, 14): [
        ((4, 4), (3, 7, 2, 2)),
        ((4, 5), (3, 7, 2, 3)),
        ((4, 6), (3, 7, 3, 3)),
        ((5, 4), (2, 7, 2, 2)),
        ((5, 5), (2, 7, 2, 3)),
        ((5, 6), (2, 7, 3, 3)),
        ((7, 4), (7, 14, 2, 2)),
        ((7, 5), (7, 14, 2, 3)),
        ((7, 6), (7, 14, 3, 3)),
        ((11, 4), (3, 14, 2, 2)),
        ((11, 5), (3, 14, 2, 3)),
        ((11, 6), (3, 14, 3, 3)),
        ((11, 9), (3, 14, 2, 7)),
        ((11, 10), (3, 14, 3, 7)),
        ((12, 4), (2, 14, 2, 2)),
        ((12, 5), (2, 14, 2, 3)),
        ((12, 6), (2, 14, 3, 3)),
        ((12, 9), (2, 14, 2, 7)),
        ((12, 10), (2, 14, 3, 7)),
    ],
    (1, 4, 6, 7): [
        ((2, 2), (4, 6, 1, 1)),
        ((3, 2), (4, 7, 1, 1)),
        ((3, 2), (1, 4, 1, 1)),
        ((5, 2), (1, 6, 1, 1)),
        ((5, 5), (1, 6, 1, 4)),
        ((6, 2), (1, 7, 1, 1)),
        ((6, 5), (1, 7, 1, 4)),
    ],
    (1, 4, 6, 8): [
        ((2, 2), (4, 6, 1, 1)),
        ((2, 2), (6, 8, 1, 1)),
        ((3, 2), (1, 4, 1, 1)),
        ((4, 2), (4, 8, 1, 1)),
        ((5, 2), (1, 6, 1, 1)),
        ((5, 5), (1, 6, 1, 4)),
        ((7, 2), (1, 8, 1, 1)),
        ((7, 5), (1, 8, 1, 4)),
        ((7, 7), (1, 8, 1, 6)),
    ],
    (1, 4, 6, 10): [
        ((2, 2), (4, 6, 1, 1)),
        ((3, 2), (1, 4, 1, 1)),
        ((4, 2), (6, 10, 1, 1)),
        ((5, 2), (1, 6, 1, 1)),
        ((5, 5), (1, 6, 1, 4)),
        ((6, 2), (4, 10, 1, 1)),
        ((6, 5), (4, 10, 1, 4)),
        ((9, 2), (1, 10, 1, 1)),
        ((9, 5), (1, 10, 1, 4)),
        ((9, 7), (1, 10, 1, 6)),
        ((9, 8), (1, 10, 4, 4)),
    ],
    (2, 6, 7, 8): [
        ((4, 4), (2, 6, 2, 2)),
        ((5, 4), (2, 7, 2, 2)),
        ((6, 4), (2, 8, 2, 2)),
    ],
    (2, 6, 7, 12): [
        ((4, 4), (2, 6, 2, 2)),
        ((5, 4), (2, 7, 2, 2)),
        ((5, 4), (7, 12, 2, 2)),
        # the printed table also lists (2,8,2,2) under [6,4], but 8 is not in
        # {2,6,7,12}; that row is a slip carried over from the {2,6,7,8} case
        ((6, 4), (6, 12, 2, 2)),
        ((10, 4), (2, 12, 2, 2)),
        ((10, 8), (2, 12, 2, 6)),
        ((10, 9), (2, 12, 2, 7)),
    ],
    (1, 3, 7, 8): [
        ((2, 2), (1, 3, 1, 1)),
        ((4, 2), (3, 7, 1, 1)),
        ((4, 4), (3, 7, 1, 3)),
        ((4, 6), (3, 7, 3, 3)),
        ((5, 2), (3, 8, 1, 1)),
        ((5, 4), (3, 8, 1, 3)),
        ((5, 6), (3, 8, 3, 3)),
        ((6, 2), (1, 7, 1, 1)),
        ((6, 4), (1, 7, 1, 3)),
        ((6, 6), (1, 7, 3, 3)),
        ((7, 2), (1, 8, 1, 1)),
        ((7, 4), (1, 8, 1, 3)),
        ((7, 6), (1, 8, 3, 3)),
    ],
    (1, 3, 7, 10): [
        ((2, 2), (1, 3, 1, 1)),
        ((3, 2), (7, 10, 1, 1)),
        ((4, 2), (3, 7, 1, 1)),
        ((4, 4), (3, 7, 1, 3)),
        ((4, 6), (3, 7, 3, 3)),
        ((6, 2), (1, 7, 1, 1)),
        ((6, 4), (1, 7, 1, 3)),
        ((6, 6), (1, 7, 3, 3)),
        ((7, 2), (3, 10, 1, 1)),
        ((7, 4), (3, 10, 1, 3)),
        ((7, 6), (3, 10, 3, 3)),
        ((9, 2), (1, 10, 1, 1)),
        ((9, 4), (1, 10, 1, 3)),
        ((9, 6), (1, 10, 3, 3)),
        ((9, 8), (1, 10, 1, 7)),
    ],
    (1, 3, 7, 14): [
        ((2, 2), (1, 3, 1, 1)),
        ((4, 2), (3, 7, 1, 1)),
        ((4, 4), (3, 7, 1, 3)),
        ((4, 6), (3, 7, 3, 3)),
        ((6, 2), (1, 7, 1, 1)),
        ((6, 4), (1, 7, 1, 3)),
        ((6, 6), (1, 7, 3, 3)),
        ((7, 2), (7, 14, 1, 1)),
        ((7, 4), (7, 14, 1, 3)),
        ((7, 6), (7, 14, 3, 3)),
        ((11, 2), (3, 14, 1, 1)),
        ((11, 4), (3, 14, 1, 3)),
        ((11, 6), (3, 14, 3, 3)),
        ((11, 8), (3, 14, 1, 7)),
        ((11, 10), (3, 14, 3, 7)),
        ((13, 2), (1, 14, 1, 1)),
        ((13, 4), (1, 14, 1, 3)),
        ((13, 6), (1, 14, 3, 3)),
        ((13, 8), (1, 14, 1, 7)),
        ((13, 10), (1, 14, 3, 7)),
    ],
}


@pytest.mark.parametrize("s", sorted(TABLES))
def test_published_tables(s):
    rows = bad_quadruples(ds(*s))
    got = {((r.interval.lo, r.interval.hi), r.quadruple) for r in rows}
    expected = {
        ((Fraction(a), Fraction(b)), tuple(Fraction(v) for v in quad))
        for (a, b), quad in TABLES[s]
    }
    assert got == expected
    assert not any(r.unresolved for r in rows)


def test_bad_quadruples_empty_for_singleton():
    assert bad_quadruples(ds(1)) == []


def test_every_listed_quadruple_is_bad_and_interval_exact():
    for s, rows in TABLES.items():
        sset = ds(*s)
        for (a, b), quad in rows:
            assert not is_good(quad, sset)
            iv = interval(quad)
            assert (iv.lo, iv.hi) == (a, b)
            assert canonical_quadruple(quad) == tuple(Fraction(v) for v in quad)


class TestSimilar:
    def test_12_23(self):
        assert similar(ds(1, 2), ds(2, 3))

    def test_12_13(self):
        assert not similar(ds(1, 2), ds(1, 3))

    def test_reflexive(self):
        s = ds(1, 4, 6, 10)
        assert similar(s, s)

    def test_published_similarities(self):
        assert similar(ds(5, 6, 9, 15), ds(5, 7, 8, 15))
        assert similar(ds(5, 6, 9, 18), ds(5, 7, 8, 16))
        assert similar(ds(8, 14, 21, 28), ds(4, 7, 9, 12))
        assert similar(ds(2, 5, 9, 10), ds(1, 4, 6, 7))
        assert similar(ds(2, 5, 9, 14), ds(1, 4, 6, 10))

    def test_similar_implies_same_verdict_exhaustive(self):
        # every nonempty subset of {1..6}, verdicts agree across similar pairs
        sets = [
            DistanceSet(c)
            for size in (1, 2, 3, 4, 5, 6)
            for c in itertools.combinations(range(1, 7), size)
        ]
        verdicts = {s: bool(check_four_values(s)) for s in sets}
        for a in sets:
            for b in sets:
                if similar(a, b):
                    assert verdicts[a] == verdicts[b]

    def test_initial_segments_of_omega_hold(self):
        for m in range(1, 7):
            assert check_four_values(ds(*range(1, m + 1)))


def one_point_configurations(sset):
    """All V-configurations: two S-triangles sharing a base edge of length t.

    The second side must range over ordered pairs: which new point faces
    which base endpoint changes the admissible interval for the missing
    distance (pairing (1,3) against (7,3) is not the same V as against (3,7)).
    """
    vals = sset.values
    for t in vals:
        for s0, s1 in itertools.combinations_with_replacement(vals, 2):
            if not (abs(s0 - s1) <= t <= s0 + s1):
                continue
            for s0p, s1p in itertools.product(vals, repeat=2):
                if not (abs(s0p - s1p) <= t <= s0p + s1p):
                    continue
                yield t, (s0, s1), (s0p, s1p)


def brute_force_one_point_oracle(sset):
    """4-values via exhaustive one-point amalgamation over S-triangles."""
    for t, (s0, s1), (s0p, s1p) in one_point_configurations(sset):
        ok = any(
            abs(s0 - s0p) <= u <= s0 + s0p and abs(s1 - s1p) <= u <= s1 + s1p
            for u in sset.values
        )
        if not ok:
            return False
    return True


def test_oracle_equivalence_over_subsets_of_1_to_8():
    # acceptance-grade cross-check at module level, small slice
    for size in (1, 2, 3):
        for c in itertools.combinations(range(1, 9), size):
            sset = ds(*c)
            assert bool(check_four_values(sset)) == brute_force_one_point_oracle(sset)


def literal_definition_form(sset):
    """t-exists implies u-exists, quantified exactly as the condition reads."""
    vals = sset.values
    for s0, s1, s0p, s1p in itertools.product(vals, repeat=4):
        t_exists = any(
            abs(s0 - s1) <= t <= s0 + s1 and abs(s0p - s1p) <= t <= s0p + s1p
            for t in vals
        )
        if not t_exists:
            continue
        if not any(
            abs(s0 - s0p) <= u <= s0 + s0p and abs(s1 - s1p) <= u <= s1 + s1p
            for u in vals
        ):
            return False
    return True


def test_quadruple_formulation_matches_literal_definition():
    # the swap formulation is equivalent to the two-quantifier original
    for size in (1, 2, 3, 4):
        for c in itertools.combinations(range(1, 8), size):
            sset = ds(*c)
            assert bool(check_four_values(sset)) == literal_definition_form(sset), c


class TestAmalgamate:
    def test_identity_amalgam(self):
        s = ds(1, 2, 3)
        x = FiniteMetricSpace([[0, 2], [2, 0]])
        res = amalgamate(s, x, x, [0, 1], [0, 1])
        assert res == x

    def test_two_triangles_over_shared_edge(self):
        s = ds(1, 2, 3)
        tri = FiniteMetricSpace([[0, 1, 2], [1, 0, 3], [2, 3, 0]])
        res = amalgamate(s, tri, tri, [0, 1], [0, 1])
        assert res.n == 4
        # y0 copied verbatim, y1's exclusive point appended
        assert res.submetric([0, 1, 2]) == tri
        assert res.submetric([0, 1, 3]) == tri
        u = res.d[2][3]
        lo = max(abs(tri.d[0][2] - tri.d[0][2]), abs(tri.d[1][2] - tri.d[1][2]))
        hi = min(tri.d[0][2] + tri.d[0][2], tri.d[1][2] + tri.d[1][2])
        admissible = [v for v in s.values if lo <= v <= hi]
        assert u in admissible
        assert u == min(admissible)

    def test_respects_block_structure_in_125(self):
        s = ds(1, 2, 5)
        # two points at distance 1 each extended by a far point at distance 5
        y0 = FiniteMetricSpace([[0, 1, 5], [1, 0, 5], [5, 5, 0]])
        y1 = FiniteMetricSpace([[0, 1, 5], [1, 0, 5], [5, 5, 0]])
        res = amalgamate(s, y0, y1, [0, 1], [0, 1])
        # the two far points must be 5 apart or in the same near-block
        assert res.d[2][3] in (Fraction(1), Fraction(2), Fraction(5))
        # exhaustive oracle: collect all S-valued completions
        completions = []
        for u in s.values:
            rows = [row[:] for row in [list(r) for r in res.d]]
            rows[2][3] = rows[3][2] = u
            try:
                FiniteMetricSpace(rows)
            except Exception:
                continue
            completions.append(u)
        assert res.d[2][3] == min(completions)

    def test_failure_on_bad_set(self):
        s = ds(1, 2, 4)
        x = FiniteMetricSpace([[0, 1], [1, 0]])
        with pytest.raises(AmalgamationError):
            amalgamate(s, x, x, [0], [0])

    def test_small_exhaustive_one_point_consistency(self):
        # for S subsets of {1..8} of size <= 3 holding 4-values, every V-configuration amalgamates
        for c in itertools.combinations(range(1, 9), 3):
            sset = ds(*c)
            if not check_four_values(sset):
                continue
            for t, (s0, s1), (s0p, s1p) in one_point_configurations(sset):
                y0 = FiniteMetricSpace([[0, t, s0], [t, 0, s1], [s0, s1, 0]])
                y1 = FiniteMetricSpace([[0, t, s0p], [t, 0, s1p], [s0p, s1p, 0]])
                res = amalgamate(sset, y0, y1, [0, 1], [0, 1])
                assert res.n == 4
                assert res.distances() <= set(sset.values)
