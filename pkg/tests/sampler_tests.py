#!/usr/bin/env python

import unittest
from collections import Counter

import numpy as np

from divsamp.dpp import Subset
from divsamp.features import FeatureTable
from divsamp.samplers import (Sampler, SamplerKind, load_sampler_classes,
                              sampler_class)
from divsamp.samplers.weighted import (weighted_random_sample,
                                       WeightedRandomSampler)
from divsamp.samplers.kdpp import KDppSampler
from divsamp.samplers.kmeanspp import KMeansPPSampler
from divsamp.verify import FrequencyCheck
from divsamp.utilities import (ValidationError, InsufficientSupportError,
                               substream)


class MockSampler(Sampler):
    """A sampler used only in tests"""

    sampler_name = "mock"
    option_list = [
        ("count", "an integer option", 3),
        ("name", "a string option", "x"),
    ]


class SamplerKindTest(unittest.TestCase):

    def test_parse(self):
        self.assertEqual(SamplerKind.parse("kdpp"), SamplerKind.K_DPP)
        self.assertEqual(SamplerKind.parse("k-means++"),
                         SamplerKind.K_MEANS_PP)
        self.assertEqual(SamplerKind.parse(SamplerKind.WEIGHTED_RANDOM),
                         SamplerKind.WEIGHTED_RANDOM)
        self.assertRaises(ValidationError, SamplerKind.parse, "greedy")

    def test_names(self):
        self.assertEqual(str(SamplerKind.K_DPP), "k-dpp")
        self.assertEqual(SamplerKind.K_MEANS_PP.short_name, "kmeanspp")


class SamplerOptionTest(unittest.TestCase):

    def setUp(self):
        self.sampler = MockSampler()

    def test_name(self):
        self.assertEqual(self.sampler.name(), "mock")

    def test_description(self):
        self.assertEqual(self.sampler.get_description(),
                         "A sampler used only in tests")

    def test_get_option(self):
        self.assertEqual(self.sampler.get_option("count"), 3)
        self.assertEqual(self.sampler.get_option("missing", "dflt"), "dflt")
        self.assertEqual(self.sampler.get_option("class_balance"), False)

    def test_set_option_preserves_type(self):
        self.assertTrue(self.sampler.set_option("count", "7"))
        self.assertEqual(self.sampler.get_option("count"), 7)
        self.assertTrue(self.sampler.set_option("class_balance", "true"))
        self.assertEqual(self.sampler.get_option("class_balance"), True)
        self.assertFalse(self.sampler.set_option("missing", 1))

    def test_all_options(self):
        names, parms = self.sampler.get_all_options()
        self.assertEqual(names, ["count", "name", "class_balance"])
        self.assertEqual(parms[1]["enabled"], "x")

    def test_options_are_per_instance(self):
        other = MockSampler()
        self.sampler.set_option("count", 9)
        self.assertEqual(other.get_option("count"), 3)

    def test_sample_not_implemented(self):
        self.assertRaises(NotImplementedError, self.sampler.sample, 1,
                          substream(0))


class DiscoveryTest(unittest.TestCase):

    def test_every_kind_has_a_class(self):
        classes = load_sampler_classes()
        self.assertEqual(classes[SamplerKind.WEIGHTED_RANDOM],
                         WeightedRandomSampler)
        self.assertEqual(classes[SamplerKind.K_DPP], KDppSampler)
        self.assertEqual(classes[SamplerKind.K_MEANS_PP], KMeansPPSampler)

    def test_sampler_class(self):
        self.assertEqual(sampler_class("random"), WeightedRandomSampler)


class WeightedRandomTest(unittest.TestCase):

    def test_zero_weight_excluded(self):
        table = FeatureTable([[0.0], [1.0], [2.0]], weights=[1.0, 0.0, 1.0])
        rng = substream(1, "weighted")
        for _ in range(100):
            self.assertEqual(weighted_random_sample(table, 2, rng),
                             Subset([0, 2]))

    def test_proportional(self):
        table = FeatureTable([[0.0], [1.0], [2.0]], weights=[2.0, 1.0, 1.0])
        rng = substream(2, "weighted")
        draws = 20000
        counts = Counter(list(weighted_random_sample(table, 1, rng))[0]
                         for _ in range(draws))
        self.assertAlmostEqual(counts[0] / float(draws), 0.5, delta=0.02)

    def test_sequential_pairs(self):
        # each step is proportional to the weights not yet drawn
        table = FeatureTable([[0.0], [1.0], [2.0]], weights=[1.0, 2.0, 3.0])
        rng = substream(3, "weighted")
        draws = 20000
        counts = Counter(weighted_random_sample(table, 2, rng)
                         for _ in range(draws))
        expected = {Subset([0, 1]): 1 / 15.0 + 1 / 12.0,
                    Subset([0, 2]): 1 / 10.0 + 1 / 6.0,
                    Subset([1, 2]): 1 / 4.0 + 1 / 3.0}
        self.assertTrue(FrequencyCheck(expected, counts, draws).passed)

    def test_insufficient_support(self):
        table = FeatureTable([[0.0], [1.0]], weights=[1.0, 0.0])
        self.assertRaises(InsufficientSupportError, weighted_random_sample,
                          table, 2, substream(0))


class SetupTest(unittest.TestCase):

    def setUp(self):
        rng = np.random.default_rng(8)
        self.table = FeatureTable(rng.standard_normal((12, 2)),
                                  labels=["a"] * 9 + ["b"] * 3,
                                  weights=[1.0] * 11 + [0.0])

    def test_kdpp_kernel_support(self):
        sampler = KDppSampler()
        sampler.setup(self.table)
        self.assertEqual(len(sampler.support), 11)
        self.assertEqual(sampler.kernel.n, 11)
        rng = substream(9, "kdpp")
        for _ in range(50):
            subset = sampler.sample(4, rng)
            self.assertEqual(len(subset), 4)
            self.assertFalse(11 in subset)

    def test_kdpp_gammas_option(self):
        sampler = KDppSampler()
        sampler.set_option("gammas", "0.5,2")
        sampler.setup(self.table)
        self.assertEqual(len(sampler.gram.gamma_set), 2)
        self.assertEqual(sampler.gram.s[0, 0], 2.0)

    def test_esp_cached(self):
        sampler = KDppSampler()
        sampler.setup(self.table)
        self.assertIs(sampler.esp(3), sampler.esp(3))

    def test_class_balance(self):
        sampler = KMeansPPSampler()
        sampler.set_option("class_balance", True)
        sampler.setup(self.table)
        self.assertAlmostEqual(sampler.weights[0], 12 / (2 * 9.0))
        self.assertAlmostEqual(sampler.weights[11], 12 / (2 * 3.0))

    def test_check_support(self):
        sampler = WeightedRandomSampler()
        sampler.setup(self.table)
        self.assertRaises(InsufficientSupportError, sampler.sample, 12,
                          substream(0))


if __name__ == "__main__":
    unittest.main()

# vim: set et ts=4 sw=4 :
