# This file is part of the divsamp project.
#
# This copyrighted material is made available to anyone wishing to use,
# modify, copy, or redistribute it subject to the terms and conditions of
# version 2 of the GNU General Public License.
#
# See the LICENSE file in the source distribution for further information.

""" Exact spectral sampling from a fixed-cardinality determinantal point
    process (k-DPP).

    A draw proceeds in two phases. The eigen phase selects k eigenvectors of
    the likelihood kernel using the elementary symmetric polynomials of the
    eigenvalues, and the projection phase samples k items from the
    projection DPP spanned by the selected eigenvectors. Subsets of size k
    are then drawn with probability det(L_A) / e_k(lambda).
"""

import logging

import numpy as np
import scipy.linalg

from divsamp.utilities import (ValidationError, NumericError,
                               InsufficientRankError, weighted_index)

log = logging.getLogger('divsamp')

#: relative eigenvalue cut-off, scaled by lambda_max * n
EIGEN_CLAMP = 1e-10
#: tolerated loss of orthogonality before a second Gram-Schmidt pass
ORTHO_TOL = 1e-8
#: smallest usable squared row norm in the projection phase
DEGENERATE_NORM = 1e-12


class Subset(object):
    """A sorted set of distinct instance indices"""

    def __init__(self, indices, n=None):
        indices = sorted(int(i) for i in indices)
        if len(set(indices)) != len(indices):
            raise ValidationError("subset indices must be distinct: %s"
                                  % indices)
        if indices and indices[0] < 0:
            raise ValidationError("negative subset index %d" % indices[0])
        if n is not None and indices and indices[-1] >= n:
            raise ValidationError("subset index %d out of range for n=%d"
                                  % (indices[-1], n))
        self.indices = tuple(indices)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, index):
        return index in self.indices

    def __eq__(self, other):
        if isinstance(other, Subset):
            return self.indices == other.indices
        return NotImplemented

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.indices)

    def __repr__(self):
        return "Subset(%s)" % list(self.indices)

    def as_array(self):
        return np.array(self.indices, dtype=np.intp)


class SpectralDecomposition(object):

    def __init__(self, eigenvalues, eigenvectors, effective_rank):
        self.eigenvalues = eigenvalues
        self.eigenvectors = eigenvectors
        self.effective_rank = effective_rank

    @property
    def n(self):
        return self.eigenvalues.shape[0]

    def __repr__(self):
        return ("SpectralDecomposition(n=%d, effective_rank=%d)"
                % (self.n, self.effective_rank))


class EspTable(object):
    """Prefix table e[j][m] = e_j(lambda_1, ..., lambda_m) for j <= k"""

    def __init__(self, e):
        self.e = e

    @property
    def k(self):
        return self.e.shape[0] - 1

    @property
    def n(self):
        return self.e.shape[1] - 1

    @property
    def normalizer(self):
        """e_k over all n eigenvalues"""
        return self.e[self.k, self.n]

    def __getitem__(self, key):
        return self.e[key]


def _kernel_matrix(kernel):
    l = getattr(kernel, "l", kernel)
    l = np.asarray(l, dtype=np.float64)
    if l.ndim != 2 or l.shape[0] != l.shape[1] or l.shape[0] == 0:
        raise ValidationError("kernel must be a non-empty square matrix")
    if not np.all(np.isfinite(l)):
        raise NumericError("kernel has non-finite entries")
    return l


def decompose(kernel):
    """Eigendecomposition of a symmetric PSD likelihood kernel.

    Eigenvalues come back in descending order. Values below
    ``EIGEN_CLAMP * lambda_max * n`` (including the small negative ones that
    round-off produces for near-duplicate points) are set to exactly 0 and
    do not count towards the effective rank.
    """
    l = _kernel_matrix(kernel)
    n = l.shape[0]
    try:
        lam, vec = scipy.linalg.eigh(l)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise NumericError("eigendecomposition failed: %s" % e)

    order = np.argsort(lam)[::-1]
    lam = lam[order]
    vec = vec[:, order]

    lam_max = max(lam[0], 0.0)
    lam[lam < EIGEN_CLAMP * lam_max * n] = 0.0
    rank = int(np.count_nonzero(lam > 0))
    log.debug("decomposed %dx%d kernel: lambda_max=%g, effective rank %d"
              % (n, n, lam_max, rank))
    lam.setflags(write=False)
    vec.setflags(write=False)
    return SpectralDecomposition(lam, vec, rank)


def esp_table(eigenvalues, k):
    """Build the elementary symmetric polynomial table with the recurrence
    e[j][m] = e[j][m-1] + lambda_m * e[j-1][m-1]."""
    lam = np.asarray(eigenvalues, dtype=np.float64).reshape(-1)
    n = lam.shape[0]
    k = int(k)
    if k < 0 or k > n:
        raise ValidationError("subset size %d outside [0, %d]" % (k, n))
    e = np.zeros((k + 1, n + 1))
    e[0, :] = 1.0
    for m in range(1, n + 1):
        e[1:, m] = e[1:, m - 1] + lam[m - 1] * e[:-1, m - 1]
    if not np.all(np.isfinite(e)):
        raise NumericError("elementary symmetric polynomials overflowed "
                           "for k=%d" % k)
    e.setflags(write=False)
    return EspTable(e)


def sample_eigenvector_subset(decomp, esp, k, rng):
    """Choose k eigenvector indices for the projection phase.

    Walks m = n, ..., 1 keeping j open slots and takes eigenvector m with
    probability lambda_m * e[j-1][m-1] / e[j][m]. Once only j candidates
    are left that ratio is exactly 1, so exactly k indices come back.
    """
    k = int(k)
    if k < 1:
        raise ValidationError("subset size must be positive")
    if k > decomp.effective_rank:
        raise InsufficientRankError(
            "cannot draw %d items: kernel has effective rank %d"
            % (k, decomp.effective_rank))
    if k > esp.k:
        raise ValidationError("table built for k=%d, asked for %d"
                              % (esp.k, k))

    lam = decomp.eigenvalues
    e = esp.e
    selected = []
    j = k
    for m in range(decomp.n, 0, -1):
        if j == 0:
            break
        denom = e[j, m]
        if denom <= 0:
            raise NumericError("vanishing normalizer e[%d][%d]" % (j, m))
        if rng.random() < lam[m - 1] * e[j - 1, m - 1] / denom:
            selected.append(m - 1)
            j -= 1
    if j:
        raise NumericError("eigen phase selected %d of %d vectors"
                           % (k - j, k))
    return sorted(selected)


def _orthogonality_loss(v):
    return np.max(np.abs(np.dot(v.T, v) - np.eye(v.shape[1])))


def _gram_schmidt(v):
    v = np.array(v, copy=True)
    for a in range(v.shape[1]):
        norm = np.linalg.norm(v[:, a])
        if norm < DEGENERATE_NORM:
            raise NumericError("degenerate basis: column %d vanished" % a)
        v[:, a] /= norm
        if a + 1 < v.shape[1]:
            v[:, a + 1:] -= np.outer(v[:, a], np.dot(v[:, a], v[:, a + 1:]))
    return v


def orthonormalize(v):
    """Modified Gram-Schmidt, repeated once if orthogonality is off by more
    than ``ORTHO_TOL``."""
    v = _gram_schmidt(v)
    if _orthogonality_loss(v) > ORTHO_TOL:
        v = _gram_schmidt(v)
    return v


def sample_projection_dpp(v_selected, rng):
    """Draw one subset from the projection DPP spanned by the orthonormal
    columns of ``v_selected``.

    At each step item i is picked with probability |V_i|^2 / cols. The
    basis is then restricted to vectors vanishing at row i by eliminating
    the column with the largest magnitude at i, and re-orthonormalised.
    """
    v = np.array(v_selected, dtype=np.float64, copy=True)
    if v.ndim != 2 or v.shape[1] == 0 or v.shape[1] > v.shape[0]:
        raise ValidationError("basis must be an n x k matrix with "
                              "1 <= k <= n")
    if _orthogonality_loss(v) > ORTHO_TOL:
        raise ValidationError("basis columns are not orthonormal")

    k = v.shape[1]
    chosen = []
    for step in range(k):
        cols = v.shape[1]
        norms = np.einsum('ij,ij->i', v, v)
        norms[chosen] = 0.0
        if np.all(norms < DEGENERATE_NORM):
            raise NumericError("degenerate basis at step %d of %d"
                               % (step + 1, k))
        i = weighted_index(norms / cols, rng)
        chosen.append(i)
        if cols == 1:
            break
        j = int(np.argmax(np.abs(v[i, :])))
        vj = v[:, j].copy()
        v = v - np.outer(vj, v[i, :] / vj[i])
        v = np.delete(v, j, axis=1)
        v = orthonormalize(v)
    return Subset(chosen, n=v.shape[0])


def kdpp_sample(decomp, esp, k, rng):
    """Draw a size-k subset with probability det(L_A) / e_k(lambda)"""
    picked = sample_eigenvector_subset(decomp, esp, k, rng)
    return sample_projection_dpp(decomp.eigenvectors[:, picked], rng)


def kdpp_subset_probability(kernel, subset, k):
    """The exact k-DPP probability det(L_A) / e_k(lambda) of ``subset``"""
    l = _kernel_matrix(kernel)
    if not isinstance(subset, Subset):
        subset = Subset(subset, n=l.shape[0])
    if len(subset) != k:
        raise ValidationError("subset has %d items, expected %d"
                              % (len(subset), k))
    normalizer = esp_table(decompose(l).eigenvalues, k).normalizer
    if normalizer <= 0:
        raise InsufficientRankError("e_%d of the kernel spectrum is zero" % k)
    idx = subset.as_array()
    det = scipy.linalg.det(l[np.ix_(idx, idx)])
    return float(min(max(det / normalizer, 0.0), 1.0))

# vim: set et ts=4 sw=4 :
