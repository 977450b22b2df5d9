import numpy as np
import pytest

from qocd.communities import Covering
from qocd.edgestats import (EdgeClass, classify_edge, conditional_weights,
                            median_low, partition_edges, size_ccdf,
                            weight_ccdf)
from qocd.weighting import WeightedDigraph


def cov(universe, *groups):
    return Covering(universe=frozenset(universe),
                    communities=tuple(frozenset(g) for g in groups))


class TestClassify:
    def test_identical_memberships(self):
        assert classify_edge(frozenset("A"), frozenset("A")) is EdgeClass.INTRA

    def test_disjoint_memberships(self):
        assert classify_edge(frozenset("A"), frozenset("B")) is EdgeClass.INTER

    def test_partial_overlap(self):
        assert classify_edge(frozenset("AB"), frozenset("A")) is EdgeClass.MIXED

    def test_empty_membership_is_an_error(self):
        with pytest.raises(ValueError):
            classify_edge(frozenset(), frozenset("A"))

    def test_symmetry(self):
        rng = np.random.default_rng(40)
        labels = list("ABCDE")
        for _ in range(200):
            mu = frozenset(rng.choice(labels, size=int(rng.integers(1, 4)),
                                      replace=False))
            mf = frozenset(rng.choice(labels, size=int(rng.integers(1, 4)),
                                      replace=False))
            assert classify_edge(mu, mf) is classify_edge(mf, mu)


class TestPartition:
    def test_singleton_endpoints_are_inter(self):
        wg = WeightedDigraph(nodes=frozenset("ab"),
                             weights={("a", "b"): 1.0}, scheme="t")
        classes = partition_edges(wg, cov("ab"))
        assert classes[("a", "b")] is EdgeClass.INTER

    def test_one_community_makes_everything_intra(self):
        wg = WeightedDigraph(nodes=frozenset("abc"),
                             weights={("a", "b"): 1.0, ("b", "c"): 1.0},
                             scheme="t")
        classes = partition_edges(wg, cov("abc", "abc"))
        assert set(classes.values()) == {EdgeClass.INTRA}

    def test_three_way_example(self):
        wg = WeightedDigraph(
            nodes=frozenset("abcd"),
            weights={("a", "b"): 1.0, ("a", "c"): 1.0, ("a", "d"): 1.0},
            scheme="t")
        covering = cov("abcd", "ab", "ad", "cd")
        classes = partition_edges(wg, covering)
        # a is in {ab},{ad}; b in {ab} only -> mixed
        assert classes[("a", "b")] is EdgeClass.MIXED
        # c is in {cd} only, sharing nothing with a -> inter
        assert classes[("a", "c")] is EdgeClass.INTER

    def test_node_without_membership_is_an_error(self):
        wg = WeightedDigraph(nodes=frozenset("ab"),
                             weights={("a", "b"): 1.0}, scheme="t")
        with pytest.raises(ValueError, match="'b'"):
            partition_edges(wg, cov("a"))

    def test_totality_and_exclusivity(self):
        rng = np.random.default_rng(41)
        nodes = [f"n{i:02d}" for i in range(15)]
        weights = {(a, b): float(rng.random())
                   for a in nodes for b in nodes
                   if a != b and rng.random() < 0.3}
        wg = WeightedDigraph(nodes=frozenset(nodes), weights=weights,
                             scheme="t")
        covering = cov(nodes, nodes[:6], nodes[4:9])
        classes = partition_edges(wg, covering)
        assert set(classes) == set(wg.edges)
        counts = {cls: 0 for cls in EdgeClass}
        for cls in classes.values():
            counts[cls] += 1
        assert sum(counts.values()) == len(wg.edges)


class TestMedian:
    def test_odd_count(self):
        assert median_low([3, 1, 2]) == 2

    def test_even_count_takes_lower_middle(self):
        assert median_low([2, 1]) == 1
        assert median_low([4, 1, 3, 2]) == 2

    def test_empty_is_an_error(self):
        with pytest.raises(ValueError):
            median_low([])


class TestConditionalWeights:
    def wg_and_classes(self):
        weights = {("a", "b"): 1.0, ("b", "c"): 2.0, ("c", "a"): 3.0,
                   ("a", "d"): 1.0, ("d", "a"): 2.0}
        wg = WeightedDigraph(nodes=frozenset("abcd"), weights=weights,
                             scheme="t")
        classes = {("a", "b"): EdgeClass.INTRA, ("b", "c"): EdgeClass.INTRA,
                   ("c", "a"): EdgeClass.INTRA, ("a", "d"): EdgeClass.INTER,
                   ("d", "a"): EdgeClass.INTER}
        return wg, classes

    def test_medians_and_counts(self):
        wg, classes = self.wg_and_classes()
        report = conditional_weights(wg, classes)
        intra = report.per_class[EdgeClass.INTRA]
        inter = report.per_class[EdgeClass.INTER]
        mixed = report.per_class[EdgeClass.MIXED]
        assert (intra.count, intra.median) == (3, 2.0)
        assert (inter.count, inter.median) == (2, 1.0)  # lower middle
        assert (mixed.count, mixed.median) == (0, None)
        total = sum(report.per_class[c].count for c in EdgeClass)
        assert total == len(wg.weights)

    def test_histograms_share_bin_edges(self):
        wg, classes = self.wg_and_classes()
        report = conditional_weights(wg, classes, bins=10)
        intra = report.per_class[EdgeClass.INTRA].histogram
        inter = report.per_class[EdgeClass.INTER].histogram
        assert intra is not None and inter is not None
        assert np.array_equal(intra[0], inter[0])
        assert len(intra[0]) == 11
        assert intra[1].sum() == 3

    def test_missing_class_is_an_error(self):
        wg, classes = self.wg_and_classes()
        del classes[("a", "b")]
        with pytest.raises(ValueError):
            conditional_weights(wg, classes)

    def test_random_classes_give_similar_medians(self):
        # null case: class labels assigned at random, medians should sit
        # within the resampling spread of the global median
        rng = np.random.default_rng(42)
        nodes = [f"n{i:02d}" for i in range(30)]
        weights = {(a, b): float(rng.lognormal(0, 1))
                   for a in nodes for b in nodes if a != b}
        wg = WeightedDigraph(nodes=frozenset(nodes), weights=weights,
                             scheme="t")
        edges = sorted(weights)
        values = np.array([weights[e] for e in edges])
        global_median = float(np.median(values))
        spreads = []
        for rep in range(50):
            assignment = rng.integers(0, 3, size=len(edges))
            meds = [float(np.median(values[assignment == c]))
                    for c in range(3)]
            spreads.append(max(abs(m - global_median) for m in meds))
        tolerance = 3 * max(spreads)
        assignment = rng.integers(0, 3, size=len(edges))
        classes = {e: list(EdgeClass)[a] for e, a in zip(edges, assignment)}
        report = conditional_weights(wg, classes)
        for cls in EdgeClass:
            med = report.per_class[cls].median
            assert med is not None
            assert abs(med - global_median) <= tolerance

    def test_summary_roundtrips_to_json(self):
        import json
        wg, classes = self.wg_and_classes()
        report = conditional_weights(wg, classes)
        payload = json.loads(json.dumps(report.to_summary()))
        assert payload["classes"]["intra"]["count"] == 3
        assert payload["classes"]["mixed"]["median"] is None


def test_detected_covering_concentrates_weight_inside():
    # partitioning a weighting by the covering detected on that same
    # weighting must put at least as much median weight inside communities
    # as across them
    from qocd.communities import detect_communities
    from qocd.synth import SynthConfig, generate
    from qocd.weighting import mention_retweet_weights

    log, graph, _ = generate(SynthConfig(
        nodes=40, communities=4, bins=60, p_in=0.5, p_out=0.08, rho=0.1,
        epsilon=0.2, mention_events=15, retweet_events=15, seed=15))
    wg = mention_retweet_weights(graph, log)
    covering = detect_communities(wg)
    classes = partition_edges(wg, covering)
    grouped = {cls: [] for cls in EdgeClass}
    for edge, cls in classes.items():
        grouped[cls].append(wg.weights[edge])
    assert grouped[EdgeClass.INTRA] and grouped[EdgeClass.INTER]
    assert median_low(grouped[EdgeClass.INTRA]) >= \
        median_low(grouped[EdgeClass.INTER])


class TestWeightCcdf:
    def test_strictly_greater_fractions(self):
        points = weight_ccdf([1.0, 1.0, 2.0, 3.0])
        assert points == ((1.0, 0.5), (2.0, 0.25), (3.0, 0.0))

    def test_empty(self):
        assert weight_ccdf([]) == ()


class TestSizeCcdf:
    def test_small_example(self):
        c = cov("abcdefghijk", "abc", "def", "ghijk")
        assert size_ccdf(c) == [(3, 1 / 3), (5, 0.0)]

    def test_single_community_hits_zero(self):
        c = cov("abc", "abc")
        assert size_ccdf(c) == [(3, 0.0)]

    def test_no_communities(self):
        assert size_ccdf(cov("ab")) == []

    def test_longer_tail_dominates_pointwise(self):
        def ccdf_at(points, s):
            value = 1.0
            for size, frac in points:
                if size <= s:
                    value = frac
            return value

        short = cov("abcdefgh", "ab", "cd", "ef", "gh")
        lettered = "abcdefghijklmnop"
        long_tail = cov(lettered, lettered[:2], lettered[2:8], lettered[8:])
        short_pts, long_pts = size_ccdf(short), size_ccdf(long_tail)
        for s in range(1, 10):
            assert ccdf_at(long_pts, s) >= ccdf_at(short_pts, s)
