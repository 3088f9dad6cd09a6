#!/usr/bin/env python

import math
import unittest

import numpy as np

from divsamp.features import FeatureTable
from divsamp.metrics import (quantisation_error, mmd, mape, coral_distance,
                             mean_distance, MapeReport, QeReport)
from divsamp.utilities import ValidationError


class QuantisationErrorTest(unittest.TestCase):

    def test_single_centre(self):
        self.assertEqual(quantisation_error([[0.0], [2.0]], [0]), 4.0)

    def test_nearest_member(self):
        table = FeatureTable([[0.0], [1.0], [5.0]])
        self.assertEqual(quantisation_error(table, [0, 2]), 1.0)

    def test_full_subset(self):
        x = np.random.default_rng(1).standard_normal((6, 2))
        self.assertEqual(quantisation_error(x, range(6)), 0.0)

    def test_empty_subset(self):
        self.assertRaises(ValidationError, quantisation_error, [[0.0]], [])

    def test_out_of_range(self):
        self.assertRaises(ValidationError, quantisation_error, [[0.0]], [1])

    def test_adding_members_never_increases(self):
        x = np.random.default_rng(13).standard_normal((40, 2))
        order = np.random.default_rng(14).permutation(40)
        values = [quantisation_error(x, order[:m]) for m in range(1, 41)]
        for before, after in zip(values, values[1:]):
            self.assertLessEqual(after, before)
        self.assertEqual(values[-1], 0.0)


class MmdTest(unittest.TestCase):

    def test_two_points(self):
        est = mmd([[0.0]], [[1.0]], gammas=[1.0])
        self.assertAlmostEqual(est.value, math.sqrt(2.0 - 2.0 * math.exp(-1)))
        self.assertAlmostEqual(est.value, 1.124385, places=6)
        self.assertEqual(est.sample_sizes, (1, 1))

    def test_identical_sets(self):
        x = np.random.default_rng(2).standard_normal((10, 3))
        self.assertEqual(mmd(x, x).value, 0.0)

    def test_symmetric(self):
        rng = np.random.default_rng(3)
        a = rng.standard_normal((8, 2))
        b = rng.standard_normal((5, 2)) + 1.0
        self.assertAlmostEqual(mmd(a, b).value, mmd(b, a).value)
        self.assertGreater(mmd(a, b).value, 0.0)

    def test_dimension_mismatch(self):
        self.assertRaises(ValidationError, mmd, np.zeros((2, 2)),
                          np.zeros((2, 3)))

    def test_triangle_inequality(self):
        for seed in range(5):
            rng = np.random.default_rng(200 + seed)
            a = rng.standard_normal((12, 2))
            b = rng.standard_normal((7, 2)) + rng.uniform(0, 2, size=2)
            c = rng.standard_normal((9, 2)) * 2.0
            ab = mmd(a, b).value
            bc = mmd(b, c).value
            ac = mmd(a, c).value
            self.assertLessEqual(ac, ab + bc + 1e-12)
            self.assertLessEqual(ab, ac + bc + 1e-12)
            self.assertLessEqual(bc, ab + ac + 1e-12)

    def test_permutation_null(self):
        """Two samples of one distribution stay below the 95th percentile of
        their permutation distribution for most seeds."""
        below = 0
        for seed in range(5):
            rng = np.random.default_rng(100 + seed)
            a = rng.standard_normal((30, 2))
            b = rng.standard_normal((30, 2))
            observed = mmd(a, b).value
            pooled = np.vstack([a, b])
            null = []
            for _ in range(200):
                perm = rng.permutation(60)
                null.append(mmd(pooled[perm[:30]], pooled[perm[30:]]).value)
            if observed < np.percentile(null, 95):
                below += 1
        self.assertGreaterEqual(below, 4)


class MapeTest(unittest.TestCase):

    def test_value(self):
        self.assertEqual(mape(2.0, [1.0, 3.0]), 50.0)
        self.assertEqual(mape(2.0, [2.0]), 0.0)

    def test_invalid(self):
        self.assertRaises(ValidationError, mape, 0.0, [1.0])
        self.assertRaises(ValidationError, mape, 1.0, [])

    def test_report(self):
        report = MapeReport(2.0, [1.0, 3.0])
        self.assertEqual(report.draws, 2)
        self.assertEqual(report.mape, 50.0)
        self.assertEqual(report.stderr, 0.0)
        self.assertEqual(report.estimate_summary(), (2.0, 1.0))


class QeReportTest(unittest.TestCase):

    def test_summary(self):
        report = QeReport([1.0, 2.0, 3.0])
        self.assertEqual(report.draws, 3)
        self.assertEqual(report.mean, 2.0)
        self.assertAlmostEqual(report.stderr, 1.0 / math.sqrt(3.0))


class DistanceTest(unittest.TestCase):

    def test_coral(self):
        self.assertAlmostEqual(coral_distance([[-1.0], [1.0]],
                                              [[-2.0], [2.0]]), 9.0)

    def test_coral_identical(self):
        x = np.random.default_rng(4).standard_normal((20, 3))
        self.assertEqual(coral_distance(x, x), 0.0)

    def test_coral_needs_two_rows(self):
        self.assertRaises(ValidationError, coral_distance, [[0.0]],
                          [[1.0], [2.0]])

    def test_mean_distance(self):
        self.assertAlmostEqual(mean_distance([[0.0, 0.0], [2.0, 0.0]],
                                             [[1.0, 1.0]]), 1.0)


if __name__ == "__main__":
    unittest.main()

# vim: set et ts=4 sw=4 :
