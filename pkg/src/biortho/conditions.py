"""Existence conditions for biorthonormal eigensystems, checked one by one.

The eigenvector-level checks ask whether the spectrum is conjugation
symmetric (C1), whether left and right kernels pair up skewly wherever
they differ (C2), whether geometric multiplicities match across the
adjoint (C3) and whether eigenvectors span the whole space on both sides
(C4).  The primed checks C2'/C3'/C4' ask the same questions of root
subspaces.  Every verdict carries the witnesses that decided it, so a
FAIL names the clusters responsible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .biorthogonal import biorthonormalize, multiplicity_match, skew_link_check
from .errors import NotDiagonalizableError, SkewLinkFailureError
from .linalg import (
    DEFAULT_TOL,
    Subspace,
    as_matrix,
    complement,
    condition_number,
    range_space,
    subspace_angle,
)
from .rootspace import root_space, span_report
from .spectral import (
    adjoint_point_spectrum,
    collapsed_at_resolution,
    eigvec_matrix,
    point_spectrum,
)

__all__ = [
    "PASS",
    "FAIL",
    "VACUOUS",
    "STRUCTURAL_NOTES",
    "ConditionVerdict",
    "NormalityReport",
    "DiagnosisReport",
    "sigma_set",
    "residual_identity_check",
    "check_conditions",
]

PASS = "PASS"
FAIL = "FAIL"
VACUOUS = "VACUOUS"

# facts of finite dimension that hold for every input, stated once
STRUCTURAL_NOTES = (
    "residual spectrum is empty in finite dimensions; the point spectrum "
    "decides everything checked here",
    "eigenvector-span completeness needs no condensation-point proviso in "
    "finite dimensions",
)


@dataclass(frozen=True)
class ConditionVerdict:
    """One condition's outcome with the clusters that decided it."""

    id: str
    status: str
    detail: str
    witnesses: tuple


@dataclass(frozen=True)
class NormalityReport:
    """Commutator norm plus the five textbook marks of normality.

    properties maps the labels a..e to PASS/FAIL: (a) eigenspaces
    mutually orthogonal, (b) every cluster semi-simple, (c) spectrum
    conjugation symmetric, (d) eigenvectors span, (e) left kernels equal
    right kernels everywhere.  is_normal is decided directly from the
    commutator, relative to the squared operator norm.
    """

    is_normal: bool
    commutator_norm: float
    properties: dict


@dataclass(frozen=True)
class DiagnosisReport:
    """Everything the checker found out about one matrix."""

    ambient_dim: int
    spectrum: object
    sigma_set: tuple
    conditions: tuple
    normality: NormalityReport
    kappa_v: float
    diagonalizable: bool
    biorthonormal_basis_exists: bool
    residual_identity_angle: float

    def condition(self, cid):
        for v in self.conditions:
            if v.id == cid:
                return v
        raise KeyError(cid)


def sigma_set(spectrum, tol=DEFAULT_TOL):
    """Indices of clusters whose left and right kernels differ.

    A cluster enters the set when the kernel dimensions differ or the
    subspaces sit at an angle above 10 * residual_eps.
    """
    out = []
    for i, c in enumerate(spectrum.clusters):
        if c.right_kernel.dim != c.left_kernel.dim:
            out.append(i)
        elif subspace_angle(c.right_kernel, c.left_kernel) > 10.0 * tol.residual_eps:
            out.append(i)
    return tuple(out)


def residual_identity_check(a, spectrum=None, tol=DEFAULT_TOL):
    """Largest angle between Ran(A - lambda I)-perp and Ker(A* - conj(lambda) I).

    The two subspaces coincide for every lambda in exact arithmetic, so
    the returned angle measures how consistently the ranks were decided.
    """
    a = as_matrix(a)
    if spectrum is None:
        spectrum = point_spectrum(a, tol)
    n = a.shape[0]
    eye = np.eye(n, dtype=complex)
    worst = 0.0
    for c in spectrum.clusters:
        shifted = a - c.value * eye
        if collapsed_at_resolution(shifted, c.value, c.scatter, tol):
            ran = Subspace(n, np.zeros((n, 0), dtype=complex))
        else:
            ran = range_space(shifted, tol, scale_floor=abs(c.value))
        angle = subspace_angle(complement(ran, tol), c.left_kernel)
        worst = max(worst, angle)
    return worst


def _hausdorff(p, q):
    if len(p) == 0 and len(q) == 0:
        return 0.0
    d = np.abs(np.asarray(p)[:, None] - np.asarray(q)[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def _check_c1(ps, aps, radius):
    pvals = ps.values()
    qvals = np.conj(aps.values())
    dist = np.abs(pvals[:, None] - qvals[None, :])
    match = dist.argmin(axis=1)
    haus = _hausdorff(pvals, qvals)
    bad = tuple(i for i in range(len(pvals)) if dist[i].min() > radius)
    status = PASS if haus <= radius else FAIL
    detail = (
        "spectra of the matrix and its adjoint match under conjugation to "
        "within %.3e (allowed %.3e)" % (haus, radius)
    )
    return ConditionVerdict("C1", status, detail, bad), match


def _check_skew(cid, members, left_right_pairs, tol, empty_detail):
    if not members:
        return ConditionVerdict(cid, VACUOUS, empty_detail, ())
    fails = []
    worst = np.inf
    for i in members:
        right, left = left_right_pairs[i]
        verdict = skew_link_check(right, left, tol, i)
        worst = min(worst, verdict.self_orthogonality)
        if not verdict.linked:
            fails.append(i)
    if fails:
        detail = (
            "cross-Gram singular for cluster(s) %s; smallest "
            "self-orthogonality %.3e" % (list(fails), worst)
        )
        return ConditionVerdict(cid, FAIL, detail, tuple(fails))
    detail = "all %d differing cluster(s) pair skewly; smallest self-orthogonality %.3e" % (
        len(members),
        worst,
    )
    return ConditionVerdict(cid, PASS, detail, tuple(members))


def check_conditions(a, tol=DEFAULT_TOL):
    """Run the full battery of existence checks on one square matrix.

    Returns a DiagnosisReport.  Propagates EigenIterationError,
    ClusteringError and RootSpaceMismatchError when the underlying
    decompositions come out internally inconsistent at this tolerance.
    """
    a = as_matrix(a)
    n = a.shape[0]
    if n != a.shape[1]:
        raise ValueError("diagnosis requires a square matrix")
    ps = point_spectrum(a, tol)
    adj = a.conj().T
    aps = adjoint_point_spectrum(a, tol)
    radius = tol.cluster_eps * ps.scale

    c1, match = _check_c1(ps, aps, radius)

    sig = sigma_set(ps, tol)
    kernel_pairs = {
        i: (c.right_kernel, c.left_kernel) for i, c in enumerate(ps.clusters)
    }
    c2 = _check_skew(
        "C2",
        sig,
        kernel_pairs,
        tol,
        "no cluster distinguishes its left kernel from its right kernel",
    )

    mismatched = tuple(
        i for i, c in enumerate(ps.clusters) if not multiplicity_match(c)
    )
    c3 = ConditionVerdict(
        "C3",
        FAIL if mismatched else PASS,
        "left and right kernel dimensions %s"
        % ("differ for cluster(s) %s" % (list(mismatched),) if mismatched else "agree on every cluster"),
        mismatched,
    )

    roots = [root_space(a, c, tol) for c in ps.clusters]
    adj_roots = [root_space(adj, c, tol) for c in aps.clusters]

    c3_bad = []
    sig_root = []
    root_pairs = {}
    for i in range(len(ps.clusters)):
        j = int(match[i]) if len(aps.clusters) else -1
        if j < 0:
            c3_bad.append(i)
            continue
        mine, theirs = roots[i].space, adj_roots[j].space
        root_pairs[i] = (mine, theirs)
        if mine.dim != theirs.dim:
            c3_bad.append(i)
            sig_root.append(i)
        elif subspace_angle(mine, theirs) > 10.0 * tol.residual_eps:
            sig_root.append(i)
    c3p = ConditionVerdict(
        "C3'",
        FAIL if c3_bad else PASS,
        "root-space dimensions %s under conjugation of the spectrum"
        % ("differ for cluster(s) %s" % (list(c3_bad),) if c3_bad else "match"),
        tuple(c3_bad),
    )

    c2p = _check_skew(
        "C2'",
        tuple(i for i in sig_root if i in root_pairs),
        root_pairs,
        tol,
        "no cluster distinguishes its root subspace from the adjoint's",
    )

    spans = span_report(a, tol, spectrum=ps, root_spaces=roots)
    adj_spans = span_report(adj, tol, spectrum=aps, root_spaces=adj_roots)
    eigen_ok = spans.eigen_span_dim == n and adj_spans.eigen_span_dim == n
    c4 = ConditionVerdict(
        "C4",
        PASS if eigen_ok else FAIL,
        "eigenvectors span %d/%d dimensions (adjoint side %d/%d)"
        % (spans.eigen_span_dim, n, adj_spans.eigen_span_dim, n),
        tuple(i for i, c in enumerate(ps.clusters) if not c.semi_simple),
    )
    root_ok = spans.root_span_dim == n and adj_spans.root_span_dim == n
    c4p = ConditionVerdict(
        "C4'",
        PASS if root_ok else FAIL,
        "root subspaces span %d/%d dimensions (adjoint side %d/%d)"
        % (spans.root_span_dim, n, adj_spans.root_span_dim, n),
        (),
    )

    commutator = a @ adj - adj @ a
    commutator_norm = float(np.linalg.norm(commutator, "fro"))
    norm_a = float(np.linalg.norm(a, 2))
    is_normal = commutator_norm <= tol.residual_eps * max(1.0, norm_a * norm_a)
    overlap = 0.0
    for i in range(len(ps.clusters)):
        for j in range(i + 1, len(ps.clusters)):
            cross = ps.clusters[i].right_kernel.basis.conj().T @ ps.clusters[j].right_kernel.basis
            if cross.size:
                overlap = max(overlap, float(np.linalg.norm(cross, 2)))
    properties = {
        "a": PASS if overlap <= 10.0 * tol.residual_eps else FAIL,
        "b": PASS if all(c.semi_simple for c in ps.clusters) else FAIL,
        "c": c1.status,
        "d": PASS if spans.eigen_span_dim == n else FAIL,
        "e": PASS if not sig else FAIL,
    }
    normality = NormalityReport(is_normal, commutator_norm, properties)

    v = eigvec_matrix(ps)
    kappa = condition_number(v, tol) if v.shape[0] == v.shape[1] else float("inf")
    diagonalizable = all(c.semi_simple for c in ps.clusters)
    try:
        biorthonormalize(a, ps, tol)
        exists = True
    except (SkewLinkFailureError, NotDiagonalizableError):
        exists = False
    angle = residual_identity_check(a, ps, tol)

    return DiagnosisReport(
        ambient_dim=n,
        spectrum=ps,
        sigma_set=sig,
        conditions=(c1, c2, c3, c4, c2p, c3p, c4p),
        normality=normality,
        kappa_v=kappa,
        diagonalizable=diagonalizable,
        biorthonormal_basis_exists=exists,
        residual_identity_angle=angle,
    )
