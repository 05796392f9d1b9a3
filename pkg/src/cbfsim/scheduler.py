"""Central-unit user selection over the candidate-set catalogue.

All base stations share one canonical, lexicographically ordered
catalogue of candidate sets (one user per BS). Selection strategies:

* ``select_ogcsi``: exhaustive benchmark over the true achievable sum
  rates (needs global CSI, used as the upper reference).
* ``select_by_metric_product``: the CU picks argmax_l prod_b g_{bl}
  from the reported scalars only.
* ``prune_pools``: ranking-based per-antenna pre-selection that caps a
  pool at Nt + 1 users before the catalogue is built.
* ``select_max_snr``: selfish per-BS strongest-user baseline.

Ties always break towards the lowest index so runs are reproducible.
"""

import math
from dataclasses import dataclass

import numpy as np

from .channel import aggregate_interference_matrix, local_channel_matrix
from .metrics import MetricReport, metric_mus, metric_mus2, metric_nspa
from .precoding import link_budgets, sum_rate

MUS = "MUS"
MUS2 = "MUS2"
NSPA = "NSPA"

STRATEGIES = (
    "O-GCSI",
    "O-MUS",
    "R-MUS",
    "O-MUS2",
    "R-MUS2",
    "O-NSPA",
    "R-NSPA",
    "MAX-SNR",
)


@dataclass(frozen=True)
class CandidateSet:
    members: tuple
    l: int


@dataclass
class SelectionOutcome:
    strategy: str
    chosen_l: int
    members: tuple
    metrics_reported_per_bs: int
    sum_rate: float | None = None


def enumerate_sets(pools):
    """Lexicographic catalogue of all one-user-per-BS combinations."""
    pools = [list(p) for p in pools]
    if any(len(p) == 0 for p in pools):
        raise ValueError("empty user pool")
    sizes = [len(p) for p in pools]
    total = math.prod(sizes)
    positions = np.indices(sizes).reshape(len(pools), total)
    return [
        CandidateSet(
            members=tuple(int(pools[b][positions[b, l]]) for b in range(len(pools))),
            l=l,
        )
        for l in range(total)
    ]


def catalogue_index(positions, sizes):
    """Lexicographic set index from per-pool positions."""
    return int(np.ravel_multi_index(tuple(positions), tuple(sizes)))


def select_ogcsi(real, sets, kind, rho):
    """Exhaustive search over the true sum rates; argmax, lowest-l ties."""
    if not sets:
        raise ValueError("empty catalogue")
    best_l, best_rate, best_members = -1, -np.inf, None
    for cand in sets:
        rate = sum_rate(link_budgets(real, cand.members, kind, rho))
        if rate > best_rate:
            best_l, best_rate, best_members = cand.l, rate, cand.members
    return SelectionOutcome(
        strategy="O-GCSI",
        chosen_l=best_l,
        members=best_members,
        metrics_reported_per_bs=len(sets),
        sum_rate=best_rate,
    )


def compute_metric_reports(real, sets, metric, kind, rho):
    """Per-BS metric vectors over the catalogue, shape (B, L).

    ``metric`` is one of MUS, MUS2, NSPA; the value at [b, l] is what BS b
    would report to the CU for set l.
    """
    values = np.empty((real.B, len(sets)))
    for cand in sets:
        for b in range(real.B):
            h = real.h[b, cand.members[b]]
            htilde = aggregate_interference_matrix(real, b, cand.members)
            if metric == MUS:
                values[b, cand.l] = metric_mus(h, htilde, rho, kind)
            elif metric == MUS2:
                h_full = local_channel_matrix(real, b, cand.members)
                values[b, cand.l] = metric_mus2(h, h_full, htilde, rho)
            elif metric == NSPA:
                values[b, cand.l] = metric_nspa(h, list(htilde.T))
            else:
                raise ValueError(f"unknown metric {metric!r}")
    return values


def metric_report_triples(values):
    """Flatten a (B, L) report table into (b, l, value) triples.

    These scalars, plus the shared set catalogue, are the only payload a
    BS ever sends to the central unit.
    """
    values = np.asarray(values, dtype=float)
    return [
        MetricReport(b=b, l=l, value=float(values[b, l]))
        for b in range(values.shape[0])
        for l in range(values.shape[1])
    ]


def select_by_metric_product(values, sets=None, strategy=""):
    """argmax_l of prod_b g_{bl}, computed as a sum of logs.

    ``values`` holds one row per BS over the same catalogue; any gap
    (NaN or ragged rows) means a BS failed to report and is an error.
    Zero metrics map to -inf so a set is only eligible when every BS
    reported something positive (unless all products vanish).
    """
    values = np.asarray(values, dtype=float)
    if values.ndim != 2:
        raise ValueError("incomplete backhaul: ragged metric reports")
    if values.shape[1] == 0 or np.any(np.isnan(values)):
        raise ValueError("incomplete backhaul: missing metric report")
    if np.any(values < 0.0):
        raise ValueError("metrics must be nonnegative")
    with np.errstate(divide="ignore"):
        scores = np.log(values).sum(axis=0)
    chosen = int(np.argmax(scores))
    members = sets[chosen].members if sets is not None else ()
    return SelectionOutcome(
        strategy=strategy,
        chosen_l=chosen,
        members=members,
        metrics_reported_per_bs=values.shape[1],
    )


def prune_pools(real, b):
    """Pre-selected pool for BS b: per-antenna dominant users plus the
    max-norm user, duplicates removed. Size is between 1 and Nt + 1."""
    pool = real.users_of(b)
    absh = np.abs(real.h[b, pool, :])  # (K, Nt)
    winners = {int(pool[i]) for i in np.argmax(absh, axis=0)}
    norms = np.linalg.norm(real.h[b, pool, :], axis=1)
    winners.add(int(pool[np.argmax(norms)]))
    return sorted(winners)


def select_max_snr(real):
    """Each BS serves its own strongest user; no coordination at all."""
    members = []
    positions = []
    for b in range(real.B):
        pool = real.users_of(b)
        norms = np.linalg.norm(real.h[b, pool, :], axis=1)
        idx = int(np.argmax(norms))
        members.append(int(pool[idx]))
        positions.append(idx)
    sizes = [len(real.users_of(b)) for b in range(real.B)]
    return SelectionOutcome(
        strategy="MAX-SNR",
        chosen_l=catalogue_index(positions, sizes),
        members=tuple(members),
        metrics_reported_per_bs=0,
    )
