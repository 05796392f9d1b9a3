"""Spatial-compatibility metrics computed from local CSI.

Each base station maps the local channels of a candidate set to one
nonnegative scalar that estimates the effective channel gain it would
obtain after precoding. Three metrics cover the antenna regimes:

* ``metric_mus``  (Nt >= B): null-space projection plus an SNR-weighted
  share of the in-span component, g = ||Qh||^2 + alpha ||Ph||^2.
* ``metric_mus2`` (Nt < B): norm-ratio and determinant-volume heuristic
  for the interference-limited regime.
* ``metric_nspa`` (any Nt): inner-product approximation of the NSP,
  g = ||h||^2 prod sin^2(angle to each co-channel).

Only these scalars (plus the shared set catalogue) ever travel to the
central unit, never CSI.
"""

from typing import NamedTuple

import numpy as np

from . import linalg
from .precoding import DVSINR, DZF


class MetricReport(NamedTuple):
    """One (b, l, value) backhaul triple as delivered to the central unit."""

    b: int
    l: int
    value: float


def alpha_weight(htilde, rho):
    """SNR-dependent weight 1 / (rho * lambda_max(Htilde^H Htilde) + 1)^2.

    Decreases monotonically from 1 (matched-filter regime) towards 0 as
    rho grows, fading out the in-span channel component.
    """
    if rho <= 0:
        raise ValueError("rho must be positive")
    htilde = np.asarray(htilde, dtype=complex)
    gram = htilde.conj().T @ htilde
    lam_max = float(np.linalg.eigvalsh(gram)[-1].real)
    return 1.0 / (rho * lam_max + 1.0) ** 2


def metric_mus(h, htilde, rho, kind):
    """Projection metric g = ||Qh||^2 + alpha ||Ph||^2 for Nt >= B.

    alpha is 0 for DZF (the precoder lives entirely in the null space)
    and ``alpha_weight`` for DVSINR.
    """
    h = np.asarray(h, dtype=complex).ravel()
    htilde = np.asarray(htilde, dtype=complex)
    b = htilde.shape[1] + 1
    if h.size < b:
        raise ValueError(
            f"metric undefined for Nt={h.size} < B={b}; use metric_mus2 or metric_nspa"
        )
    p, q = linalg.projectors(htilde)
    qh2 = float(np.linalg.norm(q @ h) ** 2)
    if kind == DZF:
        return qh2
    if kind == DVSINR:
        ph2 = float(np.linalg.norm(p @ h) ** 2)
        return qh2 + alpha_weight(htilde, rho) * ph2
    raise ValueError(f"unknown precoder kind {kind!r}")


def metric_mus2(h, h_full, htilde, rho):
    """Interference-limited heuristic g = ||h||^2 (alpha + (1-alpha) M zeta).

    M is the own squared norm over the geometric mean of the interferers'
    squared norms; zeta is the determinant-volume ratio
    |det(H H^H)| / |det(rho^-1 I + Htilde Htilde^H)| with both
    determinants taken in the ambient Nt x Nt space. With B > Nt columns
    the B x B Gram H^H H is always singular, so det(H H^H), the product
    of the squared nonzero singular values of H, is the volume that
    actually discriminates between candidate sets.
    """
    h = np.asarray(h, dtype=complex).ravel()
    h_full = np.asarray(h_full, dtype=complex)
    htilde = np.asarray(htilde, dtype=complex)
    nt = h.size
    b = h_full.shape[1]
    if nt >= b:
        raise ValueError(f"metric_mus2 is for Nt < B, got Nt={nt}, B={b}")
    norms2 = np.linalg.norm(htilde, axis=0) ** 2
    if np.any(norms2 == 0.0):
        raise ValueError("zero-norm interferer column")
    h2 = float(np.linalg.norm(h) ** 2)
    m = h2 / float(np.prod(norms2 ** (1.0 / (b - 1))))
    num = linalg.abs_det(h_full @ h_full.conj().T)
    den = linalg.abs_det(np.eye(nt) / rho + htilde @ htilde.conj().T)
    zeta = num / den
    alpha = alpha_weight(htilde, rho)
    return h2 * (alpha + (1.0 - alpha) * m * zeta)


def metric_nspa(h, cochannel_vectors):
    """NSP approximation g = ||h||^2 prod (1 - eta^2(h, h_i)).

    Needs only inner products, so it works for any Nt >= 2 regardless
    of B.
    """
    h = np.asarray(h, dtype=complex).ravel()
    g = float(np.linalg.norm(h) ** 2)
    if g == 0.0:
        raise ValueError("zero intended channel")
    for hi in cochannel_vectors:
        eta = linalg.correlation_coeff(h, hi)
        g *= 1.0 - eta**2
    return g
