# This file is part of the divsamp project.
#
# This copyrighted material is made available to anyone wishing to use,
# modify, copy, or redistribute it subject to the terms and conditions of
# version 2 of the GNU General Public License.
#
# See the LICENSE file in the source distribution for further information.

""" Subset quality and domain distance metrics.

    quantisation_error measures how well a subset covers its table; mmd,
    coral_distance and mean_distance compare two sample sets, and mape
    scores small-sample distance estimates against a full-data value.
"""

import math

import numpy as np

from divsamp.kernels import cross_gram, as_matrix
from divsamp.utilities import ValidationError, mean_and_stderr


class MmdEstimate(object):
    """A plug-in MMD value between two sample sets"""

    def __init__(self, value, sample_sizes):
        if value < 0:
            raise ValidationError("MMD must be non-negative")
        self.value = value
        self.sample_sizes = tuple(sample_sizes)

    def __float__(self):
        return float(self.value)

    def __repr__(self):
        return "MmdEstimate(%r, sample_sizes=%s)" % (self.value,
                                                     self.sample_sizes)


class MapeReport(object):
    """Ground truth D, estimates D_r and their percentage error"""

    def __init__(self, ground_truth, estimates):
        self.ground_truth = float(ground_truth)
        self.estimates = [float(e) for e in estimates]

    @property
    def draws(self):
        return len(self.estimates)

    @property
    def mape(self):
        return mape(self.ground_truth, self.estimates)

    @property
    def stderr(self):
        """Standard error of the per-draw absolute percentage errors"""
        errors = [100.0 * abs(self.ground_truth - e) / self.ground_truth
                  for e in self.estimates]
        return mean_and_stderr(errors)[1]

    def estimate_summary(self):
        return mean_and_stderr(self.estimates)

    def __repr__(self):
        return "MapeReport(D=%g, draws=%d, mape=%.3f%%)" % (
            self.ground_truth, self.draws, self.mape)


class QeReport(object):
    """Per-draw quantisation errors"""

    def __init__(self, values):
        self.values = [float(v) for v in values]

    @property
    def draws(self):
        return len(self.values)

    @property
    def mean(self):
        return mean_and_stderr(self.values)[0]

    @property
    def stderr(self):
        return mean_and_stderr(self.values)[1]

    def __repr__(self):
        return "QeReport(draws=%d, mean=%g)" % (self.draws, self.mean)


def _subset_indices(subset, n):
    idx = np.asarray(list(subset), dtype=np.intp)
    if idx.size == 0:
        raise ValidationError("quantisation error of an empty subset")
    if idx.min() < 0 or idx.max() >= n:
        raise ValidationError("subset index out of range for n=%d" % n)
    return idx


def quantisation_error(table, subset):
    """Sum over all instances of the squared distance to the nearest
    subset member. Members contribute exactly 0."""
    x = as_matrix(table)
    idx = _subset_indices(subset, x.shape[0])
    nearest = np.full(x.shape[0], np.inf)
    for i in idx:
        diff = x - x[i]
        np.minimum(nearest, np.einsum('ij,ij->i', diff, diff), out=nearest)
    return math.fsum(nearest)


def mmd(a, b, gammas=None):
    """Biased (plug-in) MMD under the RBF mixture kernel::

        sqrt(max(0, mean(K_aa) + mean(K_bb) - 2 mean(K_ab)))
    """
    xa = as_matrix(a)
    xb = as_matrix(b)
    if xa.shape[1] != xb.shape[1]:
        raise ValidationError("dimension mismatch: %d != %d"
                              % (xa.shape[1], xb.shape[1]))
    kaa = cross_gram(xa, xa, gammas).mean()
    kbb = cross_gram(xb, xb, gammas).mean()
    kab = cross_gram(xa, xb, gammas).mean()
    value = math.sqrt(max(0.0, kaa + kbb - 2.0 * kab))
    return MmdEstimate(value, (xa.shape[0], xb.shape[0]))


def mape(ground_truth, estimates):
    """Mean absolute percentage error 100 / (R * D) * sum |D - D_r|"""
    estimates = [float(e) for e in estimates]
    if not estimates:
        raise ValidationError("MAPE needs at least one estimate")
    if not ground_truth > 0:
        raise ValidationError("MAPE needs a positive ground truth, got %r"
                              % ground_truth)
    total = math.fsum(abs(ground_truth - e) for e in estimates)
    return 100.0 * total / (len(estimates) * ground_truth)


def _covariance(x):
    return np.atleast_2d(np.cov(x, rowvar=False, ddof=1))


def coral_distance(a, b):
    """Squared Frobenius distance between the feature covariances, scaled
    by 1/(4 d^2)."""
    xa = as_matrix(a)
    xb = as_matrix(b)
    if xa.shape[1] != xb.shape[1]:
        raise ValidationError("dimension mismatch: %d != %d"
                              % (xa.shape[1], xb.shape[1]))
    if xa.shape[0] < 2 or xb.shape[0] < 2:
        raise ValidationError("covariance distance needs at least 2 rows "
                              "per set")
    d = xa.shape[1]
    diff = _covariance(xa) - _covariance(xb)
    return float(np.sum(diff * diff)) / (4.0 * d * d)


def mean_distance(a, b):
    """Squared Euclidean distance between the feature means"""
    xa = as_matrix(a)
    xb = as_matrix(b)
    if xa.shape[1] != xb.shape[1]:
        raise ValidationError("dimension mismatch: %d != %d"
                              % (xa.shape[1], xb.shape[1]))
    diff = xa.mean(axis=0) - xb.mean(axis=0)
    return float(np.dot(diff, diff))

# vim: set et ts=4 sw=4 :
