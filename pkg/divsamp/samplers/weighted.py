# This file is part of the divsamp project.
#
# This copyrighted material is made available to anyone wishing to use,
# modify, copy, or redistribute it subject to the terms and conditions of
# version 2 of the GNU General Public License.
#
# See the LICENSE file in the source distribution for further information.

import numpy as np

from divsamp.samplers import Sampler, SamplerKind
from divsamp.dpp import Subset
from divsamp.utilities import (InsufficientSupportError, ValidationError,
                               weighted_index)


def weighted_random_sample(table, k, rng, weights=None):
    """Draw k distinct instances sequentially without replacement, each step
    proportional to the weights of the instances not yet drawn.

    :param table: the FeatureTable to draw from
    :param k: subset size
    :param rng: a numpy Generator
    :param weights: optional weights overriding ``table.weights``
    """
    w = table.weights if weights is None else weights
    remaining = np.array(w, dtype=np.float64, copy=True)
    if k < 1:
        raise ValidationError("subset size must be positive")
    support = int(np.count_nonzero(remaining > 0))
    if k > support:
        raise InsufficientSupportError(
            "cannot draw %d distinct instances: only %d have positive weight"
            % (k, support))
    chosen = []
    for _ in range(k):
        i = weighted_index(remaining, rng)
        chosen.append(i)
        remaining[i] = 0.0
    return Subset(chosen, n=remaining.shape[0])


class WeightedRandomSampler(Sampler):
    """Weighted random sampling without replacement"""

    sampler_name = 'random'
    kind = SamplerKind.WEIGHTED_RANDOM
    version = '1.0'

    def sample(self, k, rng):
        self.check_support(k)
        return weighted_random_sample(self.table, k, rng,
                                      weights=self.weights)

# vim: set et ts=4 sw=4 :
