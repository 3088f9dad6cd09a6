# This file is part of the divsamp project.
#
# This copyrighted material is made available to anyone wishing to use,
# modify, copy, or redistribute it subject to the terms and conditions of
# version 2 of the GNU General Public License.
#
# See the LICENSE file in the source distribution for further information.

""" Synthetic multi-domain feature sets.

    Every domain is a Gaussian mixture over G subgroup centres shared by all
    domains. Domains differ in two ways: the subgroup proportions are tilted
    away from uniform by ``imbalance``, and the whole domain is translated by
    an offset of norm ``shift_scale`` in a random direction. Points scatter
    around their centre with spherical Gaussian noise whose overall radius
    (root mean square norm) is ``cluster_spread``.
"""

import logging

import numpy as np

from divsamp.features import FeatureTable, DomainCollection
from divsamp.utilities import ValidationError, substream

log = logging.getLogger('divsamp')


class SynthSpec(object):
    """Parameters of a synthetic collection.

    :param num_domains: number of domains, at least 2
    :param per_domain: instances per domain
    :param dim: feature dimension
    :param subgroups: number of shared mixture components
    :param shift_scale: norm of every domain's mean offset
    :param imbalance: in [0, 1); 0 gives uniform subgroup proportions
    :param cluster_spread: root mean square distance of a point from its
                           subgroup centre, whatever the dimension
    :param seed: root seed
    """

    def __init__(self, num_domains=4, per_domain=2000, dim=16, subgroups=8,
                 shift_scale=1.0, imbalance=0.3, cluster_spread=0.7, seed=0):
        self.num_domains = int(num_domains)
        self.per_domain = int(per_domain)
        self.dim = int(dim)
        self.subgroups = int(subgroups)
        self.shift_scale = float(shift_scale)
        self.imbalance = float(imbalance)
        self.cluster_spread = float(cluster_spread)
        self.seed = seed
        self.validate()

    def validate(self):
        if self.num_domains < 2:
            raise ValidationError("need at least 2 domains")
        if self.subgroups < 1:
            raise ValidationError("need at least 1 subgroup")
        if self.per_domain < self.subgroups:
            raise ValidationError("per-domain size %d is smaller than the "
                                  "number of subgroups %d"
                                  % (self.per_domain, self.subgroups))
        if self.dim < 1:
            raise ValidationError("dimension must be positive")
        if not self.cluster_spread > 0:
            raise ValidationError("cluster spread must be positive")
        if not 0 <= self.imbalance < 1:
            raise ValidationError("imbalance must lie in [0, 1)")
        if not self.shift_scale >= 0:
            raise ValidationError("shift scale must be non-negative")

    def dict(self):
        return {"num_domains": self.num_domains,
                "per_domain": self.per_domain,
                "dim": self.dim,
                "subgroups": self.subgroups,
                "shift_scale": self.shift_scale,
                "imbalance": self.imbalance,
                "cluster_spread": self.cluster_spread,
                "seed": self.seed}

    def __repr__(self):
        return "SynthSpec(%s)" % ", ".join(
            "%s=%r" % item for item in sorted(self.dict().items()))


def domain_tag(index):
    return "domain%d" % index


def _proportions(spec, rng):
    uniform = np.full(spec.subgroups, 1.0 / spec.subgroups)
    tilt = rng.dirichlet(np.ones(spec.subgroups))
    return (1.0 - spec.imbalance) * uniform + spec.imbalance * tilt


def subgroup_proportions(spec):
    """The subgroup mixture weights of every domain, one row per domain"""
    return np.array([_proportions(spec, substream(spec.seed, index))
                     for index in range(spec.num_domains)])


def _unit_vector(rng, dim):
    while True:
        direction = rng.standard_normal(dim)
        norm = np.linalg.norm(direction)
        if norm > 0:
            return direction / norm


def _generate_domain(spec, index, centers):
    rng = substream(spec.seed, index)
    proportions = _proportions(spec, rng)
    counts = rng.multinomial(spec.per_domain, proportions)
    offset = spec.shift_scale * _unit_vector(rng, spec.dim)
    labels = rng.permutation(np.repeat(np.arange(spec.subgroups), counts))
    # per-coordinate sd spread/sqrt(d), so that E|noise|^2 = spread^2
    noise = rng.standard_normal((spec.per_domain, spec.dim))
    scale = spec.cluster_spread / np.sqrt(spec.dim)
    features = centers[labels] + offset + scale * noise
    tag = domain_tag(index)
    log.debug("generated %s: subgroup counts %s" % (tag, counts.tolist()))
    return FeatureTable(features,
                        ids=["%s-%d" % (tag, i)
                             for i in range(spec.per_domain)],
                        domain=tag,
                        labels=[str(label) for label in labels],
                        weights=np.ones(spec.per_domain))


def generate_domains(spec):
    """Generate the DomainCollection described by ``spec``.

    Subgroup centres come from the stream (seed, 'centers'); domain i uses
    its own stream (seed, i), so the collection depends on nothing but the
    spec.
    """
    spec.validate()
    centers = substream(spec.seed, "centers").standard_normal(
        (spec.subgroups, spec.dim))
    return DomainCollection(_generate_domain(spec, index, centers)
                            for index in range(spec.num_domains))

# vim: set et ts=4 sw=4 :
