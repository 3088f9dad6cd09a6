#!/usr/bin/env python

import unittest
from collections import Counter

import numpy as np
from scipy.stats import chisquare

from divsamp.dpp import Subset
from divsamp.features import FeatureTable
from divsamp.samplers.kmeanspp import KppState, kmeanspp_sample
from divsamp.verify import kmeanspp_exact_distribution, FrequencyCheck
from divsamp.utilities import InsufficientSupportError, substream


class KppStateTest(unittest.TestCase):

    def test_masses(self):
        state = KppState([[0.0], [1.0], [3.0]], [1.0, 1.0, 2.0])
        self.assertTrue(np.array_equal(state.masses(), [1.0, 1.0, 2.0]))
        state.add(0)
        self.assertTrue(np.array_equal(state.masses(), [0.0, 1.0, 18.0]))
        state.add(2)
        self.assertTrue(np.array_equal(state.d2, [0.0, 1.0, 0.0]))

    def test_distances_match_recompute(self):
        x = np.random.default_rng(12).standard_normal((30, 3))
        state = KppState(x, np.ones(30))
        for index in (4, 17, 2, 25, 9):
            state.add(index)
            centres = x[state.chosen]
            d2 = ((x[:, None, :] - centres[None, :, :]) ** 2).sum(axis=2)
            self.assertTrue(np.allclose(state.d2, d2.min(axis=1),
                                        rtol=1e-12, atol=1e-12))
            self.assertTrue(np.all(state.d2[state.chosen] == 0.0))

    def test_copy_is_independent(self):
        state = KppState([[0.0], [1.0]], [1.0, 1.0])
        other = state.copy()
        other.add(1)
        self.assertEqual(state.chosen, [])
        self.assertTrue(np.all(np.isinf(state.d2)))


class ExactDistributionTest(unittest.TestCase):

    def test_three_points(self):
        dist = kmeanspp_exact_distribution([0.0, 1.0, 3.0], np.ones(3), 2)
        self.assertAlmostEqual(dist[Subset([0, 1])], 0.1)
        self.assertAlmostEqual(dist[Subset([0, 2])], 0.5308, places=4)
        self.assertAlmostEqual(dist[Subset([1, 2])], 0.3692, places=4)
        self.assertAlmostEqual(sum(dist.values()), 1.0)


class KMeansPPSampleTest(unittest.TestCase):

    def test_three_points_frequencies(self):
        table = FeatureTable([[0.0], [1.0], [3.0]])
        rng = substream(1, "kmeanspp")
        draws = 20000
        counts = Counter(kmeanspp_sample(table, 2, rng)
                         for _ in range(draws))
        expected = kmeanspp_exact_distribution(table.features,
                                               table.weights, 2)
        self.assertTrue(FrequencyCheck(expected, counts, draws).passed)

    def test_first_pick_follows_weights(self):
        weights = np.array([1.0, 2.0, 3.0, 4.0])
        table = FeatureTable([[0.0], [1.0], [2.0], [3.0]], weights=weights)
        rng = substream(2, "kmeanspp")
        draws = 10000
        counts = Counter(list(kmeanspp_sample(table, 1, rng))[0]
                         for _ in range(draws))
        observed = [counts[i] for i in range(4)]
        expected = weights / weights.sum() * draws
        self.assertGreater(chisquare(observed, expected).pvalue, 0.001)

    def test_duplicates_fall_back(self):
        table = FeatureTable([[0.0], [0.0], [0.0]])
        subset = kmeanspp_sample(table, 3, substream(3))
        self.assertEqual(subset, Subset([0, 1, 2]))

    def test_zero_weight_never_chosen(self):
        table = FeatureTable([[0.0], [5.0], [1.0], [2.0]],
                             weights=[1.0, 0.0, 1.0, 1.0])
        rng = substream(4, "kmeanspp")
        for _ in range(200):
            self.assertEqual(kmeanspp_sample(table, 3, rng),
                             Subset([0, 2, 3]))

    def test_insufficient_support(self):
        table = FeatureTable([[0.0], [1.0], [2.0]], weights=[1.0, 0.0, 0.0])
        self.assertRaises(InsufficientSupportError, kmeanspp_sample, table,
                          2, substream(0))

    def test_weights_override(self):
        table = FeatureTable([[0.0], [1.0], [2.0]])
        subset = kmeanspp_sample(table, 1, substream(5),
                                 weights=np.array([0.0, 0.0, 1.0]))
        self.assertEqual(subset, Subset([2]))


if __name__ == "__main__":
    unittest.main()

# vim: set et ts=4 sw=4 :
