# This file is part of the divsamp project.
#
# This copyrighted material is made available to anyone wishing to use,
# modify, copy, or redistribute it subject to the terms and conditions of
# version 2 of the GNU General Public License.
#
# See the LICENSE file in the source distribution for further information.

import threading

import numpy as np

from divsamp.samplers import Sampler, SamplerKind
from divsamp.kernels import (GammaSet, rbf_mixture_gram,
                             weighted_likelihood)
from divsamp.dpp import decompose, esp_table, kdpp_sample, Subset


class KDppSampler(Sampler):
    """Exact k-DPP sampling with an RBF mixture likelihood kernel"""

    sampler_name = 'kdpp'
    kind = SamplerKind.K_DPP
    version = '1.0'

    option_list = [
        ('gammas', 'comma separated RBF mixture parameters',
         str(GammaSet())),
    ]

    def prepare(self):
        # zero-weight instances have null rows in L and are left out of the
        # kernel altogether
        self.support = np.flatnonzero(self.weights > 0)
        gamma_set = GammaSet.parse(self.get_option('gammas'))
        self.gram = rbf_mixture_gram(self.table.features[self.support],
                                     gamma_set)
        self.kernel = weighted_likelihood(self.gram,
                                          self.weights[self.support])
        self.decomposition = decompose(self.kernel)
        self._esp = {}
        self._esp_lock = threading.Lock()
        self._log_debug("domain '%s': kernel over %d of %d instances, "
                        "effective rank %d"
                        % (self.table.domain, len(self.support),
                           self.table.n, self.decomposition.effective_rank))

    def esp(self, k):
        with self._esp_lock:
            if k not in self._esp:
                self._esp[k] = esp_table(self.decomposition.eigenvalues, k)
            return self._esp[k]

    def sample(self, k, rng):
        self.check_support(k)
        local = kdpp_sample(self.decomposition, self.esp(k), k, rng)
        return Subset(self.support[local.as_array()], n=self.table.n)

# vim: set et ts=4 sw=4 :
