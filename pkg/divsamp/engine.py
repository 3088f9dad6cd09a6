# This file is part of the divsamp project.
#
# This copyrighted material is made available to anyone wishing to use,
# modify, copy, or redistribute it subject to the terms and conditions of
# version 2 of the GNU General Public License.
#
# See the LICENSE file in the source distribution for further information.

""" Minibatch streams over the per-domain samplers with a periodic refresh
    policy.

    The engine keeps one sampler per domain, all of the same kind and batch
    size k. Caches (kernels and their spectra for the k-DPP, the feature
    snapshot for k-means++) are only rebuilt when the caller invokes
    ``refresh`` with new features; draws in between are independent and
    never exclude previously drawn instances.
"""

import logging
import threading
from collections import OrderedDict

from divsamp.samplers import SamplerKind, sampler_class
from divsamp.kernels import as_gamma_set
from divsamp.utilities import ValidationError, substream

__all__ = ['SamplerKind', 'RefreshPolicy', 'SamplerEngine']

DEFAULT_K = 32
DEFAULT_PERIOD = 400


class RefreshPolicy(object):
    """Refresh the samplers every ``period_t`` iterations. With ``warmup``
    the first period uses weighted random sampling."""

    def __init__(self, period_t=DEFAULT_PERIOD, warmup=True):
        period_t = int(period_t)
        if period_t < 1:
            raise ValidationError("refresh period must be >= 1, got %d"
                                  % period_t)
        self.period_t = period_t
        self.warmup = bool(warmup)

    def is_refresh_point(self, iteration):
        return iteration % self.period_t == 0

    def refresh_points(self, total_iterations):
        """Iterations 0, t, 2t, ... below ``total_iterations``. Point 0 is
        where the warmup phase starts."""
        return list(range(0, int(total_iterations), self.period_t))

    def __repr__(self):
        return "RefreshPolicy(period_t=%d, warmup=%s)" % (self.period_t,
                                                          self.warmup)


class SamplerEngine(object):
    """Per-domain minibatch sampling of size k.

    :param collection: the DomainCollection supplying the initial features
    :param kind: a SamplerKind or its command line alias
    :param k: batch size drawn from every domain
    :param gammas: RBF parameters for the k-DPP kernel
    :param seed: root seed of the default per-draw streams
    :param policy: a RefreshPolicy; with warmup on the engine starts with
                   weighted random samplers until the first ``refresh``
    :param class_balance: use inverse class-frequency weights
    """

    def __init__(self, collection, kind, k=DEFAULT_K, gammas=None, seed=0,
                 policy=None, class_balance=False, log=None):
        self.kind = SamplerKind.parse(kind)
        self.k = int(k)
        if self.k < 1:
            raise ValidationError("batch size must be positive")
        self.gamma_set = as_gamma_set(gammas)
        self.seed = seed
        self.policy = policy or RefreshPolicy()
        self.class_balance = class_balance
        self.log = log or logging.getLogger('divsamp')
        self.iteration = 0
        self.refresh_count = 0
        self.tags = list(collection.tags)
        self._lock = threading.Lock()

        if self.policy.warmup and self.kind != SamplerKind.WEIGHTED_RANDOM:
            self.warming_up = True
            self._samplers = self._build(collection,
                                         SamplerKind.WEIGHTED_RANDOM)
            self._log_info("warmup: weighted random sampling until the "
                           "first refresh")
        else:
            self.warming_up = False
            self._samplers = self._build(collection, self.kind)

    def _format_msg(self, msg):
        return "[engine] %s" % msg

    def _log_info(self, msg):
        self.log.info(self._format_msg(msg))

    def _log_debug(self, msg):
        self.log.debug(self._format_msg(msg))

    def _build(self, collection, kind):
        cls = sampler_class(kind)
        samplers = OrderedDict()
        commons = {'log': self.log}
        for table in collection:
            sampler = cls(commons)
            sampler.set_option('gammas', str(self.gamma_set))
            sampler.set_option('class_balance', self.class_balance)
            sampler.setup(table)
            samplers[table.domain] = sampler
        self._log_debug("built %s samplers for %d domains"
                        % (kind, len(samplers)))
        return samplers

    @property
    def active_kind(self):
        """The kind of sampler currently answering next_minibatch"""
        if self.warming_up:
            return SamplerKind.WEIGHTED_RANDOM
        return self.kind

    def sampler(self, domain):
        try:
            return self._samplers[domain]
        except KeyError:
            raise ValidationError("unknown domain '%s'" % domain)

    def next_minibatch(self, domain, rng=None):
        """Draw one batch of k instances of ``domain``.

        Without an explicit generator the draw uses the stream
        (seed, domain, iteration).
        """
        sampler = self.sampler(domain)
        with self._lock:
            iteration = self.iteration
            self.iteration += 1
        if rng is None:
            rng = substream(self.seed, domain, iteration)
        return sampler.sample(self.k, rng)

    def refresh(self, collection):
        """Rebuild every domain's sampler from new features. The iteration
        counter is left unchanged."""
        if set(collection.tags) != set(self.tags):
            missing = sorted(set(self.tags) - set(collection.tags))
            extra = sorted(set(collection.tags) - set(self.tags))
            raise ValidationError("refresh domains do not match: missing %s, "
                                  "unexpected %s" % (missing, extra))
        samplers = self._build(collection.select(self.tags), self.kind)
        with self._lock:
            self._samplers = samplers
            self.warming_up = False
            self.refresh_count += 1
        self._log_info("refresh %d at iteration %d"
                       % (self.refresh_count, self.iteration))

# vim: set et ts=4 sw=4 :
