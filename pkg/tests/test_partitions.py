import itertools
import random
from fractions import Fraction

import pytest

from finmetric.partitions import (
    NetSystem,
    PreconditionError,
    annulus_lemma_check,
    band_color,
    divisibility_coloring,
    epsilon_neighborhood,
    greedy_monochromatic,
    indivisibility_search,
    lambda_epsilon,
)
from finmetric.katetov import urysohn_approx
from finmetric.spaces import (
    Config,
    DistanceSet,
    FiniteMetricSpace,
    InvalidSpace,
    copies,
)


def line_space(positions):
    # |p_i - p_j| is a metric by construction; skip the O(n^3) validation
    pos = [Fraction(p) for p in positions]
    n = len(pos)
    return FiniteMetricSpace(
        [[abs(pos[i] - pos[j]) for j in range(n)] for i in range(n)], check=False
    )


class TestEpsilonNeighborhood:
    def test_zero_epsilon_identity(self):
        x = FiniteMetricSpace.equilateral(4, 2)
        assert epsilon_neighborhood(x, [1, 2], 0) == [1, 2]

    def test_diameter_covers_all(self):
        x = FiniteMetricSpace.equilateral(4, 2)
        assert epsilon_neighborhood(x, [0], 2) == [0, 1, 2, 3]

    def test_equilateral_2_with_eps_1(self):
        x = FiniteMetricSpace.equilateral(4, 2)
        assert epsilon_neighborhood(x, [0, 3], 1) == [0, 3]


class TestIndivisibilitySearch:
    def test_pigeonhole_on_equilateral(self):
        x = FiniteMetricSpace.equilateral(6, 1)
        target = FiniteMetricSpace.equilateral(3, 1)
        report = indivisibility_search(x, target, k=2)
        assert report.exhaustive and report.all_monochromatic()

    def test_target_larger_than_space(self):
        x = FiniteMetricSpace.equilateral(2, 1)
        target = FiniteMetricSpace.equilateral(3, 1)
        report = indivisibility_search(x, target, k=2)
        assert not report.all_monochromatic()
        assert all(not o.found for o in report.outcomes)

    def test_rado_like_space_pair_report(self):
        space, _ = urysohn_approx(DistanceSet((1, 2)), 3)
        target = FiniteMetricSpace([[0, 1], [1, 0]])
        report = indivisibility_search(
            x=space, target=target, k=2, mode="sampled", samples=40, seed=5
        )
        # found copies must be genuine
        for o in report.outcomes:
            if o.found:
                i, j = o.copy_indices
                assert space.d[i][j] == 1
                assert o.coloring[i] == o.coloring[j] == o.color

    def test_exhaustive_report_consistency_on_closure_subspace(self):
        # exhaustive scan over a 10-point subspace of the Rado-like closure:
        # every reported copy is genuine and every failure is a real failure
        space, _ = urysohn_approx(DistanceSet((1, 2)), 3)
        sub = space.submetric(range(10))
        target = FiniteMetricSpace([[0, 1], [1, 0]])
        report = indivisibility_search(sub, target, k=2)
        assert report.exhaustive and len(report.outcomes) == 2 ** 9
        for o in report.outcomes:
            classes = [
                [p for p in range(10) if o.coloring[p] == c] for c in (0, 1)
            ]
            has_copy = any(
                sub.d[a][b] == 1
                for cls in classes
                for i, a in enumerate(cls)
                for b in cls[i + 1 :]
            )
            assert o.found == has_copy
            if o.found:
                i, j = o.copy_indices
                assert sub.d[i][j] == 1
                assert o.coloring[i] == o.coloring[j] == o.color

    def test_sampled_mode_reproducible(self):
        x = FiniteMetricSpace.equilateral(5, 1)
        t = FiniteMetricSpace.equilateral(2, 1)
        a = indivisibility_search(x, t, k=3, mode="sampled", samples=20, seed=9)
        b = indivisibility_search(x, t, k=3, mode="sampled", samples=20, seed=9)
        assert [o.coloring for o in a.outcomes] == [o.coloring for o in b.outcomes]


class TestGreedyMonochromatic:
    def test_constant_coloring_full_copy(self):
        space, _ = urysohn_approx(DistanceSet((1, 2)), 3)
        target = FiniteMetricSpace([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
        res = greedy_monochromatic(space, [0] * space.n, target)
        assert res.complete and res.color == 0
        sub = space.submetric(res.copy_indices)
        assert sub == target

    def test_alternating_on_equilateral(self):
        x = FiniteMetricSpace.equilateral(6, 1)
        coloring = [i % 2 for i in range(6)]
        target = FiniteMetricSpace.equilateral(3, 1)
        res = greedy_monochromatic(x, coloring, target)
        assert res.complete
        assert len(res.copy_indices) == 3

    def test_random_colorings_validated_by_copies(self):
        space, _ = urysohn_approx(DistanceSet((1, 2)), 3)
        path4 = FiniteMetricSpace(
            [[0, 1, 2, 2], [1, 0, 1, 2], [2, 1, 0, 1], [2, 2, 1, 0]]
        )
        rng = random.Random(12)
        complete_runs = 0
        for _ in range(12):
            coloring = [rng.randrange(2) for _ in range(space.n)]
            res = greedy_monochromatic(space, coloring, path4)
            if res.complete:
                complete_runs += 1
                sub = space.submetric(res.copy_indices)
                assert sub == path4
                assert len({coloring[p] for p in res.copy_indices}) == 1
            else:
                assert res.obstruction is not None
        assert complete_runs  # the space is rich enough for some to finish


def small_net_space():
    """Five points split between two centers, radii clear of band endpoints."""
    # center 0 owns points 1 (d = 21/100) and 2 (d = 29/100); center 3 owns 4
    rows = [[Fraction(0)] * 5 for _ in range(5)]

    def put(i, j, v):
        rows[i][j] = rows[j][i] = Fraction(v)

    put(0, 1, "21/100")
    put(0, 2, "29/100")
    put(1, 2, "1/5")
    put(0, 3, "9/10")
    put(0, 4, "9/10")
    put(1, 3, "9/10")
    put(1, 4, "9/10")
    put(2, 3, "9/10")
    put(2, 4, "9/10")
    put(3, 4, "21/100")
    x = FiniteMetricSpace(rows)
    net = NetSystem(
        centers=(0, 3), radii={0: Fraction(2, 5), 3: Fraction(2, 5)}
    )
    return x, net


class TestDivisibilityColoring:
    def test_center_gets_base_color(self):
        x, net = small_net_space()
        colors = divisibility_coloring(x, net)
        assert colors[0] == 0 and colors[3] == 0

    def test_band_arithmetic(self):
        x, net = small_net_space()
        colors = divisibility_coloring(x, net)
        # d(0,1) = 21/100 inside the first 0-band [r/2, 2r/3) = [20, 26.66)/100
        assert colors[1] == 0
        # d(0,2) = 29/100 in the gap between 2r/3 and 3r/10*... next 0-band
        # starts at r(1-1/4) = 30/100, so 29/100 is odd territory
        assert colors[2] == 1

    def test_band_rule_closed_left_endpoint(self):
        # the classic instance: r = 2/5, d = 1/5 = r(1 - 1/2) opens the first
        # even band, so the rule itself assigns color 0 at the endpoint
        r = Fraction(2, 5)
        assert band_color(Fraction(1, 5), r) == 0
        assert band_color(Fraction(4, 15), r) == 1  # right endpoint excluded
        assert band_color(Fraction(0), r) == 0
        assert band_color(Fraction(3, 10), r) == 0  # second even band opens

    def test_same_band_same_color(self):
        x, net = small_net_space()
        colors = divisibility_coloring(x, net)
        # points 1 and 4 sit at equal distance from their centers
        assert colors[1] == colors[4]

    def test_uncovered_point_rejected(self):
        x, _ = small_net_space()
        bad = NetSystem(centers=(0,), radii={0: Fraction(2, 5)})
        with pytest.raises(InvalidSpace):
            divisibility_coloring(x, bad)

    def test_endpoint_collision_rejected(self):
        rows = [[Fraction(0), Fraction(1, 4)], [Fraction(1, 4), Fraction(0)]]
        x = FiniteMetricSpace(rows)
        # d/r = (1/4)/(49/100) = 25/49 -> 1/(1 - 25/49) = 49/24, not an integer
        good = NetSystem(centers=(0,), radii={0: Fraction(49, 100)})
        divisibility_coloring(x, good)
        # d/r = (1/4)/(3/8) = 2/3 -> 1/(1 - 2/3) = 3: exactly a band endpoint
        bad = NetSystem(centers=(0,), radii={0: Fraction(3, 8)})
        with pytest.raises(InvalidSpace, match="endpoint"):
            divisibility_coloring(x, bad)


class TestAnnulusLemma:
    def test_constructed_line_chain(self):
        # y at 0; start at 1/10; end at 9/10; r = 2/5 (so band n=1: [1/5, 4/15))
        positions = [Fraction(0), Fraction(1, 10)]
        step = Fraction(1, 30)
        p = Fraction(1, 10)
        while p < Fraction(9, 10):
            p = min(p + step, Fraction(9, 10))
            positions.append(p)
        x = line_space(positions)
        idx = annulus_lemma_check(
            x,
            y=0,
            start=1,
            end=len(positions) - 1,
            r=Fraction(2, 5),
            n=1,
            chain=list(range(1, len(positions))),
            eps=Fraction(1, 30),
        )
        d = x.d[0][list(range(1, len(positions)))[idx]]
        assert Fraction(1, 5) <= d < Fraction(4, 15)

    def test_eps_violation_named(self):
        positions = [0, Fraction(1, 10), Fraction(9, 10)]
        x = line_space(positions)
        with pytest.raises(PreconditionError, match="chain step"):
            annulus_lemma_check(
                x, 0, 1, 2, Fraction(2, 5), 1, [1, 2], Fraction(1, 30)
            )

    def test_thousand_random_instances(self):
        rng = random.Random(99)
        for _ in range(1000):
            n = rng.randint(1, 3)
            r = Fraction(rng.randint(5, 45), 100) + Fraction(1, 997)
            band_width = r * (Fraction(1, n + 1) - Fraction(1, n + 2))
            eps_cap = Fraction(1, (n + 1) * (n + 2))
            eps = min(eps_cap, band_width) * Fraction(rng.randint(50, 99), 100)
            start_d = r * (1 - Fraction(1, n + 1)) * Fraction(rng.randint(1, 98), 100)
            positions = [Fraction(0), start_d]
            goal = start_d + r + Fraction(1, 53)
            p = start_d
            while p < goal:
                p = p + eps * Fraction(rng.randint(60, 100), 100)
                positions.append(p)
            x = line_space(positions)
            chain = list(range(1, len(positions)))
            idx = annulus_lemma_check(
                x, 0, 1, len(positions) - 1, r, n, chain, eps
            )
            d = x.d[0][chain[idx]]
            assert r * (1 - Fraction(1, n + 1)) <= d < r * (1 - Fraction(1, n + 2))

    def test_literal_preconditions_do_not_suffice(self):
        # documented finding: a single allowed step can jump the whole band
        r = Fraction(1, 100)
        x = line_space([0, Fraction(1, 400), Fraction(1, 400) + Fraction(1, 50)])
        with pytest.raises(AssertionError):
            annulus_lemma_check(
                x, 0, 1, 2, r, 1, [1, 2], Fraction(1, 7)
            )


class TestLambdaEpsilon:
    def test_isolated_point(self):
        x = FiniteMetricSpace([[0, 1], [1, 0]])
        assert lambda_epsilon(x, 0, Fraction(1, 2)) == 0

    def test_chain_spans_one(self):
        x = line_space([0, Fraction(1, 2), 1])
        assert lambda_epsilon(x, 0, Fraction(1, 2)) == 1

    def test_eps_at_diameter(self):
        x = FiniteMetricSpace.equilateral(3, Fraction(1, 3))
        assert lambda_epsilon(x, 1, 2) == Fraction(1, 3)

    def test_monotone_in_eps(self):
        x = line_space([0, Fraction(1, 4), Fraction(1, 2), Fraction(7, 8)])
        values = [
            lambda_epsilon(x, 0, e)
            for e in (Fraction(1, 8), Fraction(1, 4), Fraction(3, 8), Fraction(1, 2))
        ]
        assert values == sorted(values)
        assert all(v <= 1 for v in values)
