"""Cluster geometry, user deployment, and per-trial Rayleigh channels.

A cluster of B base stations sits on a regular polygon of radius ``r``
around the coordination area, a disk of radius ``r_coop`` at the center
where all cell-edge users live. Long-term gains follow a power-law path
loss normalized to 1 at distance ``r``, so the configured cell-border SNR
rho is the received SNR of a unit-norm matched channel at the border.
"""

import csv
from dataclasses import dataclass, field

import numpy as np


@dataclass
class NetworkConfig:
    """Static cluster parameters for one deployment."""

    B: int
    Nt: int
    K: int
    r: float = 1000.0
    r_coop: float = 300.0
    pathloss_exponent: float = 4.0
    sigma_n2: float = 1.0
    rho_db: float = 0.0

    def __post_init__(self):
        if self.B < 2:
            raise ValueError("need at least two base stations")
        if self.Nt < 2:
            raise ValueError("need at least two antennas per base station")
        if self.K < 1:
            raise ValueError("need at least one user per base station")
        if self.r <= 0 or self.r_coop <= 0:
            raise ValueError("radii must be positive")
        if self.r_coop >= self.r:
            raise ValueError("cooperation radius must be smaller than the cell radius")

    @property
    def epsilon(self):
        """Null-space dimension max(Nt - (B - 1), 0)."""
        return max(self.Nt - (self.B - 1), 0)

    @property
    def rho(self):
        """Cell-border SNR in linear scale."""
        return 10.0 ** (self.rho_db / 10.0)


@dataclass
class ChannelRealization:
    """One trial's channels between every BS and every cell-edge user.

    ``h[b, u]`` is the length-Nt channel from BS ``b`` to user ``u`` and
    already includes the long-term gain; ``gain[b, u]`` is that long-term
    power gain on its own. Users carry global indices 0..B*K-1 and user
    ``u`` belongs to the pool of BS ``owner[u]``.
    """

    B: int
    Nt: int
    K: int
    h: np.ndarray
    gain: np.ndarray
    owner: np.ndarray
    positions: np.ndarray
    bs_positions: np.ndarray
    epsilon: int = field(init=False)

    def __post_init__(self):
        self.epsilon = max(self.Nt - (self.B - 1), 0)

    @property
    def num_users(self):
        return self.B * self.K

    def users_of(self, b):
        """Global indices of the pool S_b (disjoint across base stations)."""
        return np.arange(b * self.K, (b + 1) * self.K)

    def pools(self):
        return [self.users_of(b) for b in range(self.B)]


def deploy(cfg, rng_seed):
    """Draw one deployment: positions, path gains, and fast fading.

    Deterministic for a given seed (an int, or a tuple of ints when a
    per-trial stream is derived from a master seed). BS ``b`` sits at
    angle 2*pi*b/B on the circle of radius ``r``; users are area-uniform
    on the central disk of radius ``r_coop``.
    """
    rng = np.random.default_rng(rng_seed)
    n_users = cfg.B * cfg.K

    angles = 2.0 * np.pi * np.arange(cfg.B) / cfg.B
    bs_positions = cfg.r * np.stack([np.cos(angles), np.sin(angles)], axis=1)

    radius = cfg.r_coop * np.sqrt(rng.random(n_users))
    theta = 2.0 * np.pi * rng.random(n_users)
    positions = np.stack([radius * np.cos(theta), radius * np.sin(theta)], axis=1)

    dist = np.linalg.norm(
        positions[None, :, :] - bs_positions[:, None, :], axis=2
    )
    gain = (dist / cfg.r) ** (-cfg.pathloss_exponent)

    fading = (
        rng.standard_normal((cfg.B, n_users, cfg.Nt))
        + 1j * rng.standard_normal((cfg.B, n_users, cfg.Nt))
    ) / np.sqrt(2.0)
    h = np.sqrt(gain)[:, :, None] * fading

    owner = np.repeat(np.arange(cfg.B), cfg.K)
    return ChannelRealization(
        B=cfg.B,
        Nt=cfg.Nt,
        K=cfg.K,
        h=h,
        gain=gain,
        owner=owner,
        positions=positions,
        bs_positions=bs_positions,
    )


def aggregate_interference_matrix(real, b, members):
    """Local interference matrix at BS ``b`` for one candidate set.

    Columns are the channels from BS ``b`` to the set's non-intended
    users, in ascending BS order, giving an Nt x (B-1) matrix.
    """
    members = _check_members(real, members)
    cols = [real.h[b, members[j]] for j in range(real.B) if j != b]
    return np.stack(cols, axis=1)


def local_channel_matrix(real, b, members):
    """All B local channels of a candidate set at BS ``b`` (Nt x B)."""
    members = _check_members(real, members)
    return np.stack([real.h[b, k] for k in members], axis=1)


def _check_members(real, members):
    members = tuple(int(k) for k in members)
    if len(members) != real.B:
        raise ValueError(f"candidate set needs {real.B} users, got {len(members)}")
    for b, k in enumerate(members):
        if not 0 <= k < real.num_users:
            raise ValueError(f"user index {k} out of range")
        if real.owner[k] != b:
            raise ValueError(f"user {k} does not belong to the pool of BS {b}")
    return members


def dump_channels_csv(real, fileobj, trial=0, header=True):
    """Write one realization as (trial, b, k, antenna, re, im, gain) rows."""
    writer = csv.writer(fileobj, lineterminator="\n")
    if header:
        writer.writerow(["trial", "b", "k", "antenna", "re", "im", "gain"])
    for b in range(real.B):
        for k in range(real.num_users):
            for n in range(real.Nt):
                c = real.h[b, k, n]
                writer.writerow(
                    [
                        trial,
                        b,
                        k,
                        n,
                        f"{c.real:.10g}",
                        f"{c.imag:.10g}",
                        f"{real.gain[b, k]:.10g}",
                    ]
                )
