#!/usr/bin/env python

import unittest

import numpy as np

# PYCOMPAT
from six import StringIO

from divsamp.dpp import Subset
from divsamp.verify import (kdpp_exact_distribution, FrequencyCheck,
                            verify_kdpp, random_kernel, VERIFY_COLUMNS)
from divsamp.utilities import ValidationError, substream


class ExactDistributionTest(unittest.TestCase):

    def test_sums_to_one(self):
        kernel = random_kernel(6, substream(1, "kernel"))
        dist = kdpp_exact_distribution(kernel, 3)
        self.assertEqual(len(dist), 20)
        self.assertAlmostEqual(sum(dist.values()), 1.0)

    def test_diagonal(self):
        dist = kdpp_exact_distribution(np.diag([2.0, 1.0]), 1)
        self.assertAlmostEqual(dist[Subset([0])], 2 / 3.0)


class FrequencyCheckTest(unittest.TestCase):

    def test_exact_counts_pass(self):
        expected = {Subset([0]): 0.25, Subset([1]): 0.75}
        counts = {Subset([0]): 250, Subset([1]): 750}
        check = FrequencyCheck(expected, counts, 1000)
        self.assertEqual(check.max_abs_z, 0.0)
        self.assertTrue(check.passed)

    def test_skewed_counts_fail(self):
        expected = {Subset([0]): 0.5, Subset([1]): 0.5}
        counts = {Subset([0]): 700, Subset([1]): 300}
        self.assertFalse(FrequencyCheck(expected, counts, 1000).passed)

    def test_unexpected_subset_fails(self):
        expected = {Subset([0]): 1.0}
        counts = {Subset([0]): 99, Subset([1]): 1}
        self.assertFalse(FrequencyCheck(expected, counts, 100).passed)

    def test_write(self):
        expected = {Subset([0, 1]): 1.0}
        check = FrequencyCheck(expected, {Subset([0, 1]): 10}, 10)
        buf = StringIO()
        check.write(buf, config={"n": 2})
        lines = buf.getvalue().splitlines()
        self.assertEqual(lines[0], '# {"n": 2}')
        self.assertEqual(lines[1], ",".join(VERIFY_COLUMNS))
        self.assertTrue(lines[2].startswith("0 1,1.0,1.0,0.0,"))

    def test_write_numpy_scalars(self):
        expected = {Subset([0]): np.float64(0.25),
                    Subset([1]): np.float64(0.75)}
        counts = {Subset([0]): 260, Subset([1]): 740}
        buf = StringIO()
        FrequencyCheck(expected, counts, 1000).write(buf)
        rows = buf.getvalue().splitlines()[1:]
        self.assertEqual(rows[0].split(",")[:3], ["0", "0.25", "0.26"])
        for row in rows:
            for field in row.split(",")[1:]:
                self.assertFalse("np" in field, row)
                float(field)


class VerifyKDppTest(unittest.TestCase):

    def test_small_kernel(self):
        check = verify_kdpp(5, 2, 20000, seed=3)
        self.assertEqual(len(check.rows), 10)
        self.assertTrue(check.passed)

    def test_default_size(self):
        check = verify_kdpp(6, 2, 200000, seed=1)
        self.assertEqual(len(check.rows), 15)
        self.assertLess(abs(sum(row[1] for row in check.rows) - 1.0), 1e-10)
        self.assertTrue(check.passed)

    def test_invalid(self):
        self.assertRaises(ValidationError, verify_kdpp, 3, 4, 10, 0)
        self.assertRaises(ValidationError, verify_kdpp, 3, 2, 0, 0)


if __name__ == "__main__":
    unittest.main()

# vim: set et ts=4 sw=4 :
