#!/usr/bin/env python

import math
import unittest

import numpy as np

from divsamp.bench import (qe_bench, distance_mape_bench, mmd_mape_bench,
                           distance_function, pair_key, POOLED, AVERAGE)
from divsamp.features import FeatureTable, DomainCollection
from divsamp.metrics import mmd
from divsamp.reporting import CsvReport
from divsamp.synth import SynthSpec, generate_domains
from divsamp.utilities import ValidationError


def _assert_below(test, lower, higher, sigmas, value="mean"):
    """lower must sit under higher by more than ``sigmas`` combined standard
    errors"""
    low = getattr(lower, value)
    high = getattr(higher, value)
    combined = math.sqrt(lower.stderr ** 2 + higher.stderr ** 2)
    test.assertGreater(high - low, sigmas * combined,
                       "%s=%g+/-%g vs %g+/-%g" % (value, low, lower.stderr,
                                                high, higher.stderr))


def _small(seed=0):
    rng = np.random.default_rng(seed)
    return DomainCollection(
        FeatureTable(rng.standard_normal((30, 2)) + i, domain="d%d" % i)
        for i in range(3))


class QeBenchTest(unittest.TestCase):

    def test_report_keys(self):
        result = qe_bench(_small(), "random", 4, 10, None, seed=1)
        self.assertEqual(list(result.reports), ["d0", "d1", "d2", POOLED])
        self.assertEqual(result[POOLED].draws, 30)
        self.assertEqual(result["d0"].draws, 10)

    def test_thread_count_irrelevant(self):
        single = qe_bench(_small(), "kdpp", 4, 12, None, seed=2, threads=1)
        many = qe_bench(_small(), "kdpp", 4, 12, None, seed=2, threads=3)
        for key in single.reports:
            self.assertEqual(single[key].values, many[key].values)
            self.assertEqual(single[key].mean, many[key].mean)

    def test_seed_required(self):
        self.assertRaises(ValidationError, qe_bench, _small(), "random", 4,
                          10, None, None)

    def test_diverse_samplers_cover_subgroups(self):
        # tight, strongly imbalanced subgroups: random draws keep repeating
        # the large ones
        collection = generate_domains(SynthSpec(
            num_domains=2, per_domain=200, dim=8, subgroups=4,
            shift_scale=0.0, imbalance=0.9, cluster_spread=0.05, seed=3))
        pooled = dict(
            (kind, qe_bench(collection, kind, 4, 500, None, seed=3)[POOLED])
            for kind in ("random", "kdpp", "kmeanspp"))
        _assert_below(self, pooled["kmeanspp"], pooled["kdpp"], 5)
        _assert_below(self, pooled["kdpp"], pooled["random"], 5)


class DistanceBenchTest(unittest.TestCase):

    def test_pairs_and_average(self):
        result = mmd_mape_bench(_small(), "random", 5, 8, None, seed=4)
        self.assertEqual(list(result.reports),
                         ["d0|d1", "d0|d2", "d1|d2", AVERAGE])
        truth = mmd(_small()["d0"], _small()["d1"]).value
        self.assertAlmostEqual(result["d0|d1"].ground_truth, truth)
        pairs = [result[key].ground_truth for key in
                 ("d0|d1", "d0|d2", "d1|d2")]
        self.assertAlmostEqual(result[AVERAGE].ground_truth,
                               sum(pairs) / 3.0)

    def test_held_out(self):
        result = distance_mape_bench(_small(), "kmeanspp", 5, 8, None,
                                     seed=5, distance="coral",
                                     held_out=True)
        for tag in ("d0", "d1", "d2"):
            self.assertTrue("held-out:%s" % tag in result.reports)
        self.assertAlmostEqual(result["held-out:d2"].ground_truth,
                               result["d0|d1"].ground_truth)
        stats = result.summaries["held-out:average"]
        self.assertEqual(stats[0].data["metric"], "coral_mape")
        self.assertEqual(stats[0].data["draws"], 3)

    def test_needs_two_domains(self):
        self.assertRaises(ValidationError, mmd_mape_bench,
                          _small().select(["d0"]), "random", 4, 5, None, 1)

    def test_held_out_needs_three_domains(self):
        self.assertRaises(ValidationError, distance_mape_bench,
                          _small().select(["d0", "d1"]), "random", 4, 5,
                          None, 1, held_out=True)

    def test_unknown_distance(self):
        self.assertRaises(ValidationError, distance_function, "cosine")

    def test_diverse_samplers_estimate_better(self):
        collection = generate_domains(SynthSpec(
            num_domains=3, per_domain=200, dim=8, subgroups=4,
            shift_scale=0.5, imbalance=0.0, cluster_spread=0.02, seed=6))
        average = dict(
            (kind, mmd_mape_bench(collection, kind, 4, 200, None, seed=6)
             [AVERAGE])
            for kind in ("random", "kdpp", "kmeanspp"))
        _assert_below(self, average["kdpp"], average["random"], 3,
                      value="mape")
        _assert_below(self, average["kmeanspp"], average["random"], 3,
                      value="mape")

    def test_larger_batches_estimate_better(self):
        rng = np.random.default_rng(12)
        collection = DomainCollection([
            FeatureTable(rng.standard_normal((300, 2)), domain="a"),
            FeatureTable(rng.standard_normal((300, 2)) + 1.0, domain="b"),
        ])
        small = mmd_mape_bench(collection, "random", 16, 200, None, seed=8)
        large = mmd_mape_bench(collection, "random", 64, 200, None, seed=8)
        self.assertLess(large["a|b"].mape, small["a|b"].mape)

    def test_csv_rows(self):
        result = mmd_mape_bench(_small(), "random", 5, 8, None, seed=7)
        rows = list(CsvReport(result.to_report(), {}, result.sampler,
                              result.k, result.seed).rows())
        self.assertEqual(len(rows), 4 * 3)
        self.assertEqual(rows[0][:3], ("random", pair_key("d0", "d1"),
                                       "mmd_mape"))
        self.assertEqual(rows[2][2], "mmd_ground_truth")
        self.assertEqual(rows[2][5], 1)


if __name__ == "__main__":
    unittest.main()

# vim: set et ts=4 sw=4 :
