"""Hypothesis property suites for the structural invariants."""

import math
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from finmetric.four_values import check_four_values, interval, is_good, swap
from finmetric.katetov import extend_with, is_katetov
from finmetric.spaces import (
    DistanceSet,
    FiniteMetricSpace,
    canonical_key,
    isometries,
)


@st.composite
def metric_spaces(draw, max_n=5, max_value=6):
    n = draw(st.integers(min_value=2, max_value=max_n))
    w = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            w[i][j] = w[j][i] = Fraction(draw(st.integers(1, max_value)))
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if w[i][k] + w[k][j] < w[i][j]:
                    w[i][j] = w[i][k] + w[k][j]
    return FiniteMetricSpace(w)


@st.composite
def distance_sets(draw, max_size=4, max_value=12):
    vals = draw(
        st.sets(st.integers(1, max_value), min_size=1, max_size=max_size)
    )
    return DistanceSet(vals)


@given(metric_spaces())
@settings(max_examples=60, deadline=None)
def test_isometry_order_divides_factorial(x):
    assert math.factorial(x.n) % len(isometries(x)) == 0


@given(metric_spaces(max_n=4), st.permutations(list(range(4))))
@settings(max_examples=60, deadline=None)
def test_canonical_form_invariant_under_relabelling(x, perm):
    perm = perm[: x.n]
    if sorted(perm) != list(range(x.n)):
        perm = list(range(x.n))
    y = FiniteMetricSpace(
        [[x.d[perm[i]][perm[j]] for j in range(x.n)] for i in range(x.n)]
    )
    assert canonical_key(y) == canonical_key(x)


@given(distance_sets())
@settings(max_examples=100, deadline=None)
def test_interval_invariant_under_trivial_permutations(s):
    vals = list(s.values)
    quads = [(a, b, c, d) for a in vals for b in vals for c in vals for d in vals]
    for q in quads[:40]:
        u0, u1, u2, u3 = q
        assert interval(q) == interval((u1, u0, u2, u3))
        assert interval(q) == interval((u0, u1, u3, u2))
        assert interval(q) == interval((u2, u3, u0, u1))


@given(distance_sets())
@settings(max_examples=100, deadline=None)
def test_swap_is_an_involution_preserving_failure(s):
    res = check_four_values(s)
    if not res.holds:
        q = res.witness
        assert swap(swap(q)) == q
        assert is_good(q, s) != is_good(swap(q), s)


@given(metric_spaces(max_n=4), st.data())
@settings(max_examples=60, deadline=None)
def test_random_katetov_maps_yield_metric_extensions(x, data):
    # rejection-sample a Katetov map, then the one-point extension must be metric
    for _ in range(20):
        f = [
            Fraction(data.draw(st.integers(1, 8), label="f"))
            for _ in range(x.n)
        ]
        ok, _ = is_katetov(x, f)
        if ok:
            extend_with(x, f)  # constructor validates the triangle inequality
            return


@given(st.integers(1, 8))
@settings(max_examples=8, deadline=None)
def test_initial_segments_satisfy_four_values(m):
    assert check_four_values(DistanceSet(range(1, m + 1)))
