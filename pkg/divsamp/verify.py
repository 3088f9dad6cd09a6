# This file is part of the divsamp project.
#
# This copyrighted material is made available to anyone wishing to use,
# modify, copy, or redistribute it subject to the terms and conditions of
# version 2 of the GNU General Public License.
#
# See the LICENSE file in the source distribution for further information.

""" Brute-force reference distributions for the samplers and the frequency
    checks built on them. Only practical for small n.
"""

import csv
import json
import math
import logging
from itertools import combinations
from collections import OrderedDict, Counter

import numpy as np

from divsamp.dpp import (Subset, decompose, esp_table, kdpp_sample,
                         kdpp_subset_probability)
from divsamp.kernels import rbf_mixture_gram, weighted_likelihood
from divsamp.samplers.kmeanspp import KppState
from divsamp.utilities import (ValidationError, InsufficientSupportError,
                               substream, format_float)

log = logging.getLogger('divsamp')

#: largest |z| accepted by the frequency check
Z_LIMIT = 4.0
VERIFY_COLUMNS = ("subset", "expected", "empirical", "stddev", "zscore")


def kdpp_exact_distribution(kernel, k):
    """Map every size-k subset to det(L_A) / e_k(lambda)"""
    l = getattr(kernel, "l", kernel)
    n = np.asarray(l).shape[0]
    return OrderedDict((Subset(c), kdpp_subset_probability(l, c, k))
                       for c in combinations(range(n), k))


def _kpp_branch(state, k, prob, out):
    if len(state.chosen) == k:
        key = Subset(state.chosen)
        out[key] = out.get(key, 0.0) + prob
        return
    mass = state.masses()
    if not np.any(mass > 0):
        mass = state.fallback_masses()
        if not np.any(mass > 0):
            raise InsufficientSupportError("no positive-weight instance "
                                           "left")
    total = math.fsum(mass)
    for i in np.flatnonzero(mass > 0):
        branch = state.copy()
        branch.add(int(i))
        _kpp_branch(branch, k, prob * mass[i] / total, out)


def kmeanspp_exact_distribution(features, weights, k):
    """Exact subset distribution of weighted k-means++ seeding, summed over
    every ordered selection sequence. The zero-mass fallback matches
    kmeanspp_sample."""
    features = np.asarray(features, dtype=np.float64)
    if features.ndim == 1:
        features = features.reshape(-1, 1)
    out = {}
    _kpp_branch(KppState(features, weights), k, 1.0, out)
    return OrderedDict(sorted(out.items(), key=lambda item: item[0].indices))


class FrequencyCheck(object):
    """Expected probabilities against observed counts, with multinomial
    z-scores per subset."""

    def __init__(self, expected, counts, draws):
        self.draws = draws
        self.rows = []
        keys = list(expected.keys()) + sorted(
            (s for s in counts if s not in expected),
            key=lambda s: s.indices)
        for subset in keys:
            p = expected.get(subset, 0.0)
            freq = counts.get(subset, 0) / float(draws)
            stddev = math.sqrt(p * (1.0 - p) / draws)
            if stddev > 0:
                z = (freq - p) / stddev
            else:
                z = 0.0 if freq == p else float("inf")
            self.rows.append((subset, p, freq, stddev, z))

    @property
    def max_abs_z(self):
        return max(abs(row[4]) for row in self.rows)

    @property
    def passed(self):
        return self.max_abs_z <= Z_LIMIT

    def write(self, fp, config=None):
        if config is not None:
            fp.write(u"# %s\n" % json.dumps(config, sort_keys=True))
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(VERIFY_COLUMNS)
        for subset, p, freq, stddev, z in self.rows:
            writer.writerow([" ".join(str(i) for i in subset)] +
                            [format_float(v) for v in (p, freq, stddev, z)])


def random_kernel(n, rng, gammas=None, dim=2):
    """A strictly positive definite likelihood kernel over n random points
    with random weights in [0.5, 1.5)."""
    points = rng.standard_normal((n, dim))
    weights = rng.uniform(0.5, 1.5, size=n)
    return weighted_likelihood(rbf_mixture_gram(points, gammas), weights)


def verify_kdpp(n, k, draws, seed, gammas=None):
    """Sample ``draws`` subsets from a random kernel and compare them with
    the exact k-DPP distribution."""
    if n < 1 or k < 1 or k > n:
        raise ValidationError("need 1 <= k <= n, got n=%d k=%d" % (n, k))
    if draws < 1:
        raise ValidationError("number of draws must be positive")
    rng = substream(seed, "dpp-verify")
    kernel = random_kernel(n, rng, gammas)
    decomp = decompose(kernel)
    esp = esp_table(decomp.eigenvalues, k)
    counts = Counter(kdpp_sample(decomp, esp, k, rng)
                     for _ in range(draws))
    check = FrequencyCheck(kdpp_exact_distribution(kernel, k), counts, draws)
    log.info("dpp-verify n=%d k=%d draws=%d: max |z| = %.3f"
             % (n, k, draws, check.max_abs_z))
    return check

# vim: set et ts=4 sw=4 :
