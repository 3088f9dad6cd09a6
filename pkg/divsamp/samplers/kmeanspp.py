# This file is part of the divsamp project.
#
# This copyrighted material is made available to anyone wishing to use,
# modify, copy, or redistribute it subject to the terms and conditions of
# version 2 of the GNU General Public License.
#
# See the LICENSE file in the source distribution for further information.

""" Weighted k-means++ seeding used as a subset sampler.

    The first point is drawn with probability proportional to the instance
    weights, every further point with probability proportional to
    w_i * D(x_i)^2, where D(x_i) is the distance to the nearest point chosen
    so far. Only the seeding is performed, never the clustering iterations.
"""

import numpy as np

from divsamp.samplers import Sampler, SamplerKind
from divsamp.dpp import Subset
from divsamp.utilities import (InsufficientSupportError, ValidationError,
                               weighted_index)


class KppState(object):
    """Chosen indices plus the squared distance of every point to its
    nearest chosen point."""

    def __init__(self, features, weights):
        self.features = np.asarray(features, dtype=np.float64)
        self.weights = np.asarray(weights, dtype=np.float64)
        self.chosen = []
        self.d2 = np.full(self.features.shape[0], np.inf)

    def copy(self):
        other = KppState(self.features, self.weights)
        other.chosen = list(self.chosen)
        other.d2 = self.d2.copy()
        return other

    def masses(self):
        """Unnormalised selection masses for the next step"""
        if not self.chosen:
            return self.weights.copy()
        mass = self.weights * self.d2
        mass[self.chosen] = 0.0
        return mass

    def fallback_masses(self):
        mass = self.weights.copy()
        mass[self.chosen] = 0.0
        return mass

    def add(self, index):
        if index in self.chosen:
            raise ValidationError("index %d already chosen" % index)
        self.chosen.append(index)
        diff = self.features - self.features[index]
        np.minimum(self.d2, np.einsum('ij,ij->i', diff, diff), out=self.d2)
        self.d2[index] = 0.0


def kmeanspp_sample(table, k, rng, weights=None):
    """Select k distinct instances of ``table`` by weighted k-means++.

    When every remaining mass is zero (only duplicates of chosen points are
    left) the next pick falls back to weighted random among the remaining
    positive-weight instances.
    """
    w = table.weights if weights is None else weights
    if k < 1:
        raise ValidationError("subset size must be positive")
    state = KppState(table.features, w)
    support = int(np.count_nonzero(state.weights > 0))
    if k > support:
        raise InsufficientSupportError(
            "cannot draw %d distinct instances: only %d have positive weight"
            % (k, support))
    while len(state.chosen) < k:
        mass = state.masses()
        if not np.any(mass > 0):
            mass = state.fallback_masses()
            if not np.any(mass > 0):
                raise InsufficientSupportError(
                    "ran out of positive-weight instances after %d of %d"
                    % (len(state.chosen), k))
        state.add(weighted_index(mass, rng))
    return Subset(state.chosen, n=state.features.shape[0])


class KMeansPPSampler(Sampler):
    """Weighted k-means++ seeding"""

    sampler_name = 'kmeanspp'
    kind = SamplerKind.K_MEANS_PP
    version = '1.0'

    def sample(self, k, rng):
        self.check_support(k)
        return kmeanspp_sample(self.table, k, rng, weights=self.weights)

# vim: set et ts=4 sw=4 :
