"""Construction of biorthonormal eigenvector systems.

Inner products are conjugate linear in the first argument throughout:
``(x, y) = x^* y`` as computed by ``np.vdot``.  A system pairs right
eigenvectors psi_i with left eigenvectors chi_i so that
``(chi_j, psi_i) = delta_ij``; psi keeps unit norm and a deterministic
phase while chi absorbs the normalization freedom.

Whether a system exists at all is decided sector by sector: the kernels
of ``A - lambda I`` and ``A^* - conj(lambda) I`` must have equal dimension
and a nonsingular cross-Gram.  Sectors of non-semi-simple clusters can
never pass that test in exact arithmetic, so the skew-link screen runs
first and the diagonalizability check remains as a backstop.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    IncompleteSystemError,
    NotDiagonalizableError,
    SkewLinkFailureError,
)
from .linalg import DEFAULT_TOL, as_matrix
from .spectral import point_spectrum

__all__ = [
    "SkewLinkVerdict",
    "skew_link_check",
    "multiplicity_match",
    "BiorthoPair",
    "BiorthonormalSystem",
    "biorthonormalize",
    "expand",
    "resolution_of_identity",
]


@dataclass(frozen=True)
class SkewLinkVerdict:
    """Outcome of pairing two equal-ambient subspaces skewly.

    linked is true iff the subspaces have equal dimension and their
    cross-Gram has full rank; defect_dim counts the rank deficiency and
    self_orthogonality is the smallest singular value of the cross-Gram
    (1 for identical subspaces, 0 for orthogonal ones).
    """

    cluster_index: int
    linked: bool
    defect_dim: int
    self_orthogonality: float


def skew_link_check(s1, s2, tol=DEFAULT_TOL, cluster_index=-1):
    """Check whether two subspaces intersect each other's complement trivially.

    The criterion is rank-based on the cross-Gram C = B2^* B1 of the
    orthonormal bases: linked iff dim(s1) == dim(s2) and
    sigma_min(C) > rank_eps * dim(s1).
    """
    if s1.ambient_dim != s2.ambient_dim:
        raise ValueError("subspaces live in different ambient dimensions")
    k1, k2 = s1.dim, s2.dim
    if k1 == 0 and k2 == 0:
        return SkewLinkVerdict(cluster_index, True, 0, 1.0)
    if k1 == 0 or k2 == 0:
        return SkewLinkVerdict(cluster_index, False, k1, 0.0)
    cross = s2.basis.conj().T @ s1.basis
    s = np.linalg.svd(cross, compute_uv=False)
    sigma_min = float(s[-1])
    rank = int(np.count_nonzero(s > tol.rank_eps * k1))
    linked = (k1 == k2) and sigma_min > tol.rank_eps * k1
    return SkewLinkVerdict(cluster_index, linked, k1 - rank, sigma_min)


def multiplicity_match(cluster):
    """True iff the cluster's right and left kernels have equal dimension."""
    return cluster.right_kernel.dim == cluster.left_kernel.dim


@dataclass(frozen=True)
class BiorthoPair:
    """One (psi, chi) pair tagged with the cluster it belongs to."""

    psi: np.ndarray
    chi: np.ndarray
    cluster_index: int


@dataclass(frozen=True)
class BiorthonormalSystem:
    """A family of pairs with (chi_j, psi_i) = delta_ij.

    complete means the pairs span the whole space, i.e. their count
    equals ambient_dim.  gram_residual is the Frobenius distance of the
    full cross-Gram from the identity, a cheap certificate recomputable
    from the pairs alone.
    """

    ambient_dim: int
    pairs: tuple
    gram_residual: float
    complete: bool

    def psi_matrix(self):
        if not self.pairs:
            return np.zeros((self.ambient_dim, 0), dtype=complex)
        return np.column_stack([p.psi for p in self.pairs])

    def chi_matrix(self):
        if not self.pairs:
            return np.zeros((self.ambient_dim, 0), dtype=complex)
        return np.column_stack([p.chi for p in self.pairs])

    def swapped(self):
        """The system with the roles of psi and chi exchanged.

        Expanding through the swapped system yields the coefficients
        (psi_i, f) of the adjoint-side expansion.  The Gram matrix turns
        into its conjugate transpose, so the residual carries over.
        """
        flipped = tuple(
            replace(p, psi=p.chi, chi=p.psi) for p in self.pairs
        )
        return BiorthonormalSystem(
            ambient_dim=self.ambient_dim,
            pairs=flipped,
            gram_residual=self.gram_residual,
            complete=self.complete,
        )


def biorthonormalize(a, spectrum=None, tol=DEFAULT_TOL):
    """Build the biorthonormal eigenvector system of a diagnosed matrix.

    spectrum may be passed to reuse an existing clustering; it is
    computed from a at the given tolerance otherwise.  Raises
    SkewLinkFailureError as soon as one sector's kernels cannot be
    paired (carrying that sector's index and self-orthogonality), and
    NotDiagonalizableError if every sector pairs but some cluster is
    defective, which cannot happen for genuinely linked sectors and so
    only guards against inconsistent inputs.
    """
    a = as_matrix(a)
    n = a.shape[0]
    if spectrum is None:
        spectrum = point_spectrum(a, tol)
    if spectrum.ambient_dim != n:
        raise ValueError("spectrum belongs to a matrix of different size")
    for i, c in enumerate(spectrum.clusters):
        verdict = skew_link_check(c.right_kernel, c.left_kernel, tol, i)
        if not verdict.linked:
            raise SkewLinkFailureError(i, verdict.self_orthogonality)
    defective = [i for i, c in enumerate(spectrum.clusters) if not c.semi_simple]
    if defective:
        raise NotDiagonalizableError(defective)
    pairs = []
    for i, c in enumerate(spectrum.clusters):
        psi = c.right_kernel.basis
        left = c.left_kernel.basis
        gram = left.conj().T @ psi
        # chi = left @ inv(gram)^*, so that chi^* psi = identity
        chi = left @ np.linalg.solve(gram.conj().T, np.eye(c.geometric_multiplicity))
        for j in range(c.geometric_multiplicity):
            pairs.append(BiorthoPair(psi[:, j].copy(), chi[:, j].copy(), i))
    if pairs:
        v = np.column_stack([p.psi for p in pairs])
        w = np.column_stack([p.chi for p in pairs])
        gram_full = w.conj().T @ v
        residual = float(np.linalg.norm(gram_full - np.eye(len(pairs)), "fro"))
    else:
        residual = 0.0
    return BiorthonormalSystem(
        ambient_dim=n,
        pairs=tuple(pairs),
        gram_residual=residual,
        complete=(len(pairs) == n),
    )


def expand(system, f):
    """Coefficients (chi_i, f) of f in the system's psi basis.

    Only complete systems can expand arbitrary vectors; incomplete ones
    raise IncompleteSystemError.
    """
    if not system.complete:
        raise IncompleteSystemError(
            "system spans %d of %d dimensions and cannot expand arbitrary vectors"
            % (len(system.pairs), system.ambient_dim)
        )
    f = np.asarray(f, dtype=complex).reshape(-1)
    if f.shape[0] != system.ambient_dim:
        raise ValueError("vector length does not match the ambient dimension")
    return system.chi_matrix().conj().T @ f


def resolution_of_identity(system):
    """The operator sum of psi_i (chi_i, .) as an explicit matrix.

    Equals the identity exactly when the system is complete and exactly
    biorthonormal; its distance from the identity is a global quality
    certificate for the construction.
    """
    v = system.psi_matrix()
    w = system.chi_matrix()
    return v @ w.conj().T
