"""Distributed precoder construction and the resulting link arithmetic.

Two schemes, both computed from local CSI only:

* DZF steers the beam inside the null space of the local aggregate
  interference matrix, nulling every cross-link from that BS. Requires
  Nt >= B.
* DVSINR maximizes a local signal-to-leakage-plus-noise ratio through
  the regularized matrix C = rho^-1 I + Htilde Htilde^H, with
  w = C^-1 h / ||C^-1 h||. Defined for any Nt.

Both precoders are unit norm with the received phase aligned, so the
effective channel gain is simply |h^H w|^2.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .channel import aggregate_interference_matrix

DZF = "DZF"
DVSINR = "DVSINR"


@dataclass
class Precoder:
    w: np.ndarray
    kind: str
    rho: float | None = None


@dataclass
class LinkBudget:
    """Per-user received powers and the rate they produce.

    ``interference[i]`` is the power leaked by the i-th other BS
    (ascending BS order, own BS skipped).
    """

    signal: float
    interference: np.ndarray
    sinr: float
    rate: float


def dzf_precoder(h, htilde):
    """Distributed zero-forcing precoder for intended channel ``h``.

    w = V (h^H V)^H / ||h^H V|| with V the orthonormal null-space basis
    of ``htilde``; equivalently the normalized projection of h onto the
    orthogonal complement of the interference span.
    """
    h = np.asarray(h, dtype=complex).ravel()
    htilde = np.asarray(htilde, dtype=complex)
    nt = h.size
    b = htilde.shape[1] + 1
    if nt < b:
        raise ValueError(f"DZF undefined for Nt={nt} < B={b}")
    v = linalg.null_space_basis(htilde)
    coeff = v.conj().T @ h  # (h^H V)^H
    scale = np.linalg.norm(coeff)
    if scale <= 1e-15 * np.linalg.norm(h):
        raise ValueError("zero effective channel: h orthogonal to the null space")
    return Precoder(w=v @ (coeff / scale), kind=DZF)


def dvsinr_precoder(h, htilde, rho):
    """Distributed virtual-SINR precoder w = D h / ||D h||, D = C^-1.

    Solved through the eigenstructure of C = rho^-1 I + Htilde Htilde^H
    (the left singular vectors of Htilde): applying D as
    U diag(1/(rho^-1 + s_i^2)) U^H keeps the Hermitian symmetry exact,
    so the aligned phase of h^H w survives even at extreme rho.
    """
    h = np.asarray(h, dtype=complex).ravel()
    htilde = np.asarray(htilde, dtype=complex)
    if rho <= 0:
        raise ValueError("rho must be positive")
    if np.linalg.norm(h) == 0.0:
        raise ValueError("zero intended channel")
    u, s, _ = np.linalg.svd(htilde, full_matrices=True)
    lam = np.zeros(h.size)
    lam[: s.size] = s**2
    d = 1.0 / (1.0 / rho + lam)
    x = u @ (d * (u.conj().T @ h))
    return Precoder(w=x / np.linalg.norm(x), kind=DVSINR, rho=float(rho))


def make_precoder(h, htilde, kind, rho=None):
    if kind == DZF:
        return dzf_precoder(h, htilde)
    if kind == DVSINR:
        return dvsinr_precoder(h, htilde, rho)
    raise ValueError(f"unknown precoder kind {kind!r}")


def link_budgets(real, members, kind, rho):
    """Evaluate one candidate set: per-BS signal, leakage, SINR, rate.

    Every BS builds its precoder from local CSI of the set; the budget of
    user k_b then collects |h_{b,k_b}^H w_b|^2 and the cross powers
    |h_{j,k_b}^H w_j|^2 from every other BS. SINR follows the normalized
    form rho*signal / (rho*sum interference + 1).
    """
    members = tuple(int(k) for k in members)
    precoders = [
        make_precoder(
            real.h[b, members[b]],
            aggregate_interference_matrix(real, b, members),
            kind,
            rho,
        )
        for b in range(real.B)
    ]
    budgets = []
    for b in range(real.B):
        k = members[b]
        signal = float(np.abs(np.vdot(real.h[b, k], precoders[b].w)) ** 2)
        interference = np.array(
            [
                np.abs(np.vdot(real.h[j, k], precoders[j].w)) ** 2
                for j in range(real.B)
                if j != b
            ]
        )
        sinr = rho * signal / (rho * interference.sum() + 1.0)
        budgets.append(
            LinkBudget(
                signal=signal,
                interference=interference,
                sinr=sinr,
                rate=float(np.log2(1.0 + sinr)),
            )
        )
    return budgets


def sum_rate(budgets):
    """Sum of log2(1 + SINR) over the set's links, in bits/s/Hz."""
    return float(sum(np.log2(1.0 + bud.sinr) for bud in budgets))
