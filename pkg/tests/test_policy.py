import math

import numpy as np
import pytest

from conftest import make_synthetic_episode
from pfoe.episode import Action, Episode, Event, Observation
from pfoe.filter import ParticleSet
from pfoe.policy import mean_policy, mode_policy


def episode_with_actions(actions):
    z = Observation(10, 10, 10, 10)
    return Episode(tuple(Event(a, z) for a in actions))


def point_mass(T, t, n=20):
    return ParticleSet(np.full(n, t), np.full(n, 1.0 / n), T)


class TestModePolicy:
    def test_point_mass_returns_successor(self):
        ep = make_synthetic_episode(20)
        ps = point_mass(20, 7)
        assert mode_policy(ps, ep) == ep.event_at(8).action

    def test_scale_invariance(self):
        ep = make_synthetic_episode(10)
        t = np.array([3, 3, 9, 9, 9, 5])
        w = np.array([0.2, 0.25, 0.1, 0.15, 0.1, 0.2])
        scaled = ParticleSet(t, w * 4.0, 10)
        plain = ParticleSet(t, w, 10)
        assert mode_policy(scaled, ep) == mode_policy(plain, ep)

    def test_split_belief_argmax(self):
        # 0.4 at t=3, 0.35 at t=9, 0.25 spread elsewhere -> a_4.
        ep = make_synthetic_episode(12)
        t = np.array([3, 9, 1, 5, 11])
        w = np.array([0.4, 0.35, 0.1, 0.1, 0.05])
        ps = ParticleSet(t, w, 12)
        assert mode_policy(ps, ep) == ep.event_at(4).action

    def test_mass_at_last_index_is_excluded(self):
        ep = make_synthetic_episode(6)
        t = np.array([6, 6, 6, 2])
        w = np.array([0.3, 0.3, 0.3, 0.1])
        ps = ParticleSet(t, w, 6)
        # t=T has no successor; the argmax falls back to the best of 1..T-1.
        assert mode_policy(ps, ep) == ep.event_at(3).action

    def test_tie_breaks_to_smallest_index(self):
        ep = make_synthetic_episode(8)
        ps = ParticleSet(np.array([5, 2]), np.array([0.5, 0.5]), 8)
        assert mode_policy(ps, ep) == ep.event_at(3).action


class TestMeanPolicy:
    def test_point_mass_degenerate_average(self):
        ep = make_synthetic_episode(15)
        ps = point_mass(15, 4)
        assert mean_policy(ps, ep) == ep.event_at(5).action

    def test_forward_backward_offset_to_zero(self):
        actions = [Action(0, 0), Action(0.2, 0), Action(-0.2, 0), Action(0, 0)]
        ep = episode_with_actions(actions)
        # Half the mass on t=1 (successor a_2 = +0.2), half on t=2 (a_3 = -0.2).
        ps = ParticleSet(np.array([1, 2]), np.array([0.5, 0.5]), 4)
        out = mean_policy(ps, ep)
        assert out.v_linear == pytest.approx(0.0, abs=1e-15)
        assert out.v_angular == pytest.approx(0.0, abs=1e-15)

    def test_weighted_average_value(self):
        actions = [Action(0, 0), Action(0.2, 0.0), Action(0.0, math.pi / 2), Action(0, 0)]
        ep = episode_with_actions(actions)
        ps = ParticleSet(np.array([1, 2]), np.array([0.25, 0.75]), 4)
        out = mean_policy(ps, ep)
        assert out.v_linear == pytest.approx(0.05, abs=1e-12)
        assert out.v_angular == pytest.approx(3 * math.pi / 8, abs=1e-12)

    def test_renormalizes_when_mass_sits_at_end(self):
        actions = [Action(0, 0), Action(0.1, 0), Action(0.3, 0), Action(0, 0)]
        ep = episode_with_actions(actions)
        # 0.5 at t=2 (successor a_3 = 0.3) and 0.5 at t=T: the t=T mass has no
        # successor, so the result is a_3 exactly after renormalization.
        ps = ParticleSet(np.array([2, 4]), np.array([0.5, 0.5]), 4)
        out = mean_policy(ps, ep)
        assert out.v_linear == pytest.approx(0.3, abs=1e-12)

    def test_convex_combination_bounds(self):
        rng = np.random.default_rng(6)
        ep = make_synthetic_episode(30)
        successors = ep.actions_array[1:]
        for _ in range(20):
            t = rng.integers(1, 30, size=40)
            w = rng.random(40)
            ps = ParticleSet(t, w / w.sum(), 30)
            out = mean_policy(ps, ep)
            cand = np.unique(t[t < 30])
            used = successors[cand - 1]
            assert used[:, 0].min() - 1e-12 <= out.v_linear <= used[:, 0].max() + 1e-12
            assert used[:, 1].min() - 1e-12 <= out.v_angular <= used[:, 1].max() + 1e-12


class TestPoliciesAgree:
    def test_point_mass_agreement(self):
        ep = make_synthetic_episode(25)
        for t in (1, 10, 24):
            ps = point_mass(25, t)
            assert mode_policy(ps, ep) == mean_policy(ps, ep)
