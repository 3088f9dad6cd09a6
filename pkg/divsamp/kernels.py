# This file is part of the divsamp project.
#
# This copyrighted material is made available to anyone wishing to use,
# modify, copy, or redistribute it subject to the terms and conditions of
# version 2 of the GNU General Public License.
#
# See the LICENSE file in the source distribution for further information.

""" RBF mixture similarity matrices, the weighted DPP likelihood kernel and
    cross-domain kernel blocks.

    The similarity between two embeddings is a sum of Gaussian kernels over
    a set of inverse squared length scales::

        S_ij = sum_{g in G} exp(-g * |x_i - x_j|^2)

    with the default set G = {0.001, 0.01, 0.1, 1, 10}.
"""

import numpy as np

from divsamp.utilities import (ValidationError, NumericError,
                               parse_float_list)

DEFAULT_GAMMAS = (0.001, 0.01, 0.1, 1.0, 10.0)


class GammaSet(object):
    """Ordered, non-empty list of positive RBF parameters"""

    def __init__(self, gammas=DEFAULT_GAMMAS):
        gammas = tuple(float(g) for g in gammas)
        if not gammas:
            raise ValidationError("the gamma set must not be empty")
        if not all(np.isfinite(g) and g > 0 for g in gammas):
            raise ValidationError("gammas must be positive reals: %s"
                                  % (gammas,))
        self.gammas = gammas

    @classmethod
    def parse(cls, value):
        """Build a GammaSet from the command line notation '0.1,1,10'"""
        return cls(parse_float_list(value, name="gammas"))

    def __len__(self):
        return len(self.gammas)

    def __iter__(self):
        return iter(self.gammas)

    def __eq__(self, other):
        return isinstance(other, GammaSet) and self.gammas == other.gammas

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.gammas)

    def __str__(self):
        return ",".join(repr(g) for g in self.gammas)

    def __repr__(self):
        return "GammaSet(%s)" % str(self)


def as_gamma_set(gammas):
    if gammas is None:
        return GammaSet()
    if isinstance(gammas, GammaSet):
        return gammas
    return GammaSet(gammas)


def as_matrix(x):
    """Accept a FeatureTable or anything array-like"""
    x = getattr(x, "features", x)
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 1:
        x = x.reshape(-1, 1)
    if x.ndim != 2 or x.shape[0] == 0:
        raise ValidationError("expected a non-empty n x d matrix")
    if not np.all(np.isfinite(x)):
        raise NumericError("non-finite feature value")
    return x


def squared_distances(a, b=None):
    """Pairwise squared Euclidean distances by explicit expansion
    |a|^2 + |b|^2 - 2 a.b, clamped at zero.

    With a single argument the result is exactly symmetric with an exact
    zero diagonal.
    """
    a = as_matrix(a)
    same = b is None
    b = a if same else as_matrix(b)
    if a.shape[1] != b.shape[1]:
        raise ValidationError("dimension mismatch: %d != %d"
                              % (a.shape[1], b.shape[1]))
    sq_a = np.einsum('ij,ij->i', a, a)
    sq_b = sq_a if same else np.einsum('ij,ij->i', b, b)
    dist = sq_a[:, None] + sq_b[None, :] - 2.0 * np.dot(a, b.T)
    np.maximum(dist, 0.0, out=dist)
    if same:
        dist = 0.5 * (dist + dist.T)
        np.fill_diagonal(dist, 0.0)
    return dist


def _rbf_mixture(dist, gamma_set):
    out = np.zeros_like(dist)
    for gamma in gamma_set:
        out += np.exp(-gamma * dist)
    return out


class GramMatrix(object):
    """The RBF mixture similarity matrix S of one feature table"""

    def __init__(self, s, gamma_set):
        self.s = s
        self.gamma_set = gamma_set

    @property
    def n(self):
        return self.s.shape[0]

    def __repr__(self):
        return "GramMatrix(n=%d, gammas=%s)" % (self.n, self.gamma_set)


class LikelihoodKernel(object):
    """The weighted DPP likelihood kernel L_ij = sqrt(w_i w_j) S_ij"""

    def __init__(self, l, source_weights):
        self.l = l
        self.source_weights = source_weights

    @property
    def n(self):
        return self.l.shape[0]

    def __repr__(self):
        return "LikelihoodKernel(n=%d)" % self.n


def rbf_mixture_gram(table, gammas=None):
    """Similarity matrix of a table (or n x d matrix) under the RBF
    mixture kernel. The diagonal equals |G| exactly."""
    gamma_set = as_gamma_set(gammas)
    s = _rbf_mixture(squared_distances(table), gamma_set)
    s.setflags(write=False)
    return GramMatrix(s, gamma_set)


def cross_gram(a, b, gammas=None):
    """The n_a x n_b RBF mixture kernel block between two tables"""
    gamma_set = as_gamma_set(gammas)
    return _rbf_mixture(squared_distances(a, as_matrix(b)), gamma_set)


def weighted_likelihood(gram, weights):
    """Scale a similarity matrix by the square roots of instance weights.

    This is a congruence by a non-negative diagonal matrix, so symmetry and
    positive semi-definiteness carry over from S to L, and an instance of
    weight zero gets an all-zero row and column.
    """
    s = getattr(gram, "s", gram)
    s = np.asarray(s, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64).reshape(-1)
    if weights.shape[0] != s.shape[0]:
        raise ValidationError("expected %d weights, got %d"
                              % (s.shape[0], weights.shape[0]))
    if np.any(weights < 0) or not np.all(np.isfinite(weights)):
        raise ValidationError("weights must be finite and non-negative")
    root = np.sqrt(weights)
    l = s * np.outer(root, root)
    l.setflags(write=False)
    return LikelihoodKernel(l, weights.copy())

# vim: set et ts=4 sw=4 :
