import io

import numpy as np
import pytest

from cbfsim.channel import (
    ChannelRealization,
    NetworkConfig,
    aggregate_interference_matrix,
    deploy,
    dump_channels_csv,
    local_channel_matrix,
)


def test_config_validation():
    NetworkConfig(B=3, Nt=3, K=10)
    with pytest.raises(ValueError):
        NetworkConfig(B=1, Nt=3, K=10)
    with pytest.raises(ValueError):
        NetworkConfig(B=3, Nt=3, K=0)
    with pytest.raises(ValueError):
        NetworkConfig(B=3, Nt=3, K=10, r=200.0, r_coop=300.0)


def test_epsilon():
    assert NetworkConfig(B=3, Nt=4, K=1).epsilon == 2
    assert NetworkConfig(B=3, Nt=2, K=1).epsilon == 0


def test_geometry_gain_bounds():
    cfg = NetworkConfig(B=3, Nt=3, K=10)
    real = deploy(cfg, 123)
    dist = np.linalg.norm(
        real.positions[None, :, :] - real.bs_positions[:, None, :], axis=2
    )
    assert np.all(dist >= cfg.r - cfg.r_coop - 1e-9)
    assert np.all(dist <= cfg.r + cfg.r_coop + 1e-9)
    assert np.all(real.gain >= (1300.0 / 1000.0) ** -4 - 1e-12)
    assert np.all(real.gain <= (700.0 / 1000.0) ** -4 + 1e-12)


def test_border_gain_is_unity():
    cfg = NetworkConfig(B=2, Nt=2, K=1)
    # gain = (d/r)^-4 so a user exactly at distance r has unit gain
    assert (cfg.r / cfg.r) ** (-cfg.pathloss_exponent) == 1.0


def test_determinism():
    cfg = NetworkConfig(B=3, Nt=4, K=5)
    a = deploy(cfg, 99)
    b = deploy(cfg, 99)
    assert np.array_equal(a.h, b.h)
    assert np.array_equal(a.positions, b.positions)
    c = deploy(cfg, 100)
    assert not np.array_equal(a.h, c.h)


def test_tuple_seed_streams_differ():
    cfg = NetworkConfig(B=2, Nt=2, K=2)
    a = deploy(cfg, (7, 0))
    b = deploy(cfg, (7, 1))
    assert not np.array_equal(a.h, b.h)
    assert np.array_equal(a.h, deploy(cfg, (7, 0)).h)


def test_ownership_and_pools():
    cfg = NetworkConfig(B=3, Nt=2, K=4)
    real = deploy(cfg, 5)
    seen = set()
    for b in range(3):
        pool = set(real.users_of(b).tolist())
        assert len(pool) == 4
        assert not pool & seen
        seen |= pool
        assert all(real.owner[k] == b for k in pool)
    assert seen == set(range(12))


def test_fading_unit_variance():
    # mean ||g||^2 over >= 1e5 draws equals Nt within 2%
    cfg = NetworkConfig(B=2, Nt=4, K=125)
    draws = []
    for seed in range(200):
        real = deploy(cfg, seed)
        g = real.h / np.sqrt(real.gain)[:, :, None]
        draws.append(np.sum(np.abs(g) ** 2, axis=2).ravel())
    g2 = np.concatenate(draws)
    assert g2.size >= 1e5
    assert abs(g2.mean() / cfg.Nt - 1.0) < 0.02


def test_uniform_disk_mean_square_radius():
    cfg = NetworkConfig(B=2, Nt=2, K=100)
    r2 = []
    for seed in range(500):
        real = deploy(cfg, seed)
        r2.append(np.sum(real.positions**2, axis=1))
    r2 = np.concatenate(r2)
    assert r2.size >= 1e5
    assert abs(r2.mean() / (cfg.r_coop**2 / 2.0) - 1.0) < 0.02


class TestAggregateInterferenceMatrix:
    def make(self):
        return deploy(NetworkConfig(B=3, Nt=4, K=2), 42)

    def test_two_bs_single_column(self):
        real = deploy(NetworkConfig(B=2, Nt=3, K=2), 1)
        ht = aggregate_interference_matrix(real, 0, (0, 2))
        assert ht.shape == (3, 1)
        assert np.array_equal(ht[:, 0], real.h[0, 2])

    def test_column_ordering(self):
        real = self.make()
        members = (1, 2, 5)
        ht = aggregate_interference_matrix(real, 1, members)
        assert ht.shape == (4, 2)
        assert np.array_equal(ht[:, 0], real.h[1, 1])
        assert np.array_equal(ht[:, 1], real.h[1, 5])

    def test_excludes_own_user(self):
        real = self.make()
        members = (0, 3, 4)
        for b in range(3):
            ht = aggregate_interference_matrix(real, b, members)
            own = real.h[b, members[b]]
            for j in range(ht.shape[1]):
                assert not np.array_equal(ht[:, j], own)

    def test_malformed_set_rejected(self):
        real = self.make()
        with pytest.raises(ValueError):
            aggregate_interference_matrix(real, 0, (0, 1))  # too short
        with pytest.raises(ValueError):
            aggregate_interference_matrix(real, 0, (2, 3, 4))  # user 2 not in S_0

    def test_local_channel_matrix(self):
        real = self.make()
        members = (1, 3, 4)
        full = local_channel_matrix(real, 2, members)
        assert full.shape == (4, 3)
        assert np.array_equal(full[:, 1], real.h[2, 3])


def test_dump_channels_csv():
    real = deploy(NetworkConfig(B=2, Nt=2, K=1), 3)
    buf = io.StringIO()
    dump_channels_csv(real, buf, trial=7)
    lines = buf.getvalue().strip().split("\n")
    assert lines[0] == "trial,b,k,antenna,re,im,gain"
    assert len(lines) == 1 + 2 * 2 * 2
    first = lines[1].split(",")
    assert first[0] == "7"
    assert float(first[4]) == pytest.approx(real.h[0, 0, 0].real, rel=1e-9)
