import numpy as np
import pytest

from conftest import make_synthetic_episode, synthetic_observation
from pfoe.episode import Action, Episode, Event, Observation
from pfoe.filter import KernelParams, ParticleSet, filter_step, init_particles
from pfoe.oracle import ExactBelief, exact_correct, exact_predict, tv_distance

DEFAULT = KernelParams()


def brute_force_kernel_matrix(T: int, params: KernelParams) -> np.ndarray:
    """Explicit T x T transition matrix, built by per-source enumeration."""
    K = np.zeros((T, T))
    for src in range(1, T + 1):
        for off, p in zip(params.alpha_offsets, params.alpha_probs):
            dest = src + 1 + off
            if 1 <= dest <= T:
                K[src - 1, dest - 1] += (1 - params.delta) * p
            else:
                K[src - 1, :] += (1 - params.delta) * p / T
        K[src - 1, :] += params.delta / T
    return K


class TestExactPredict:
    def test_uniform_nearly_stationary_for_long_episodes(self):
        # Direct computation shows uniform is NOT an exact fixed point: the
        # head indices (t=1, 2) receive mass from fewer sources than interior
        # ones, and the overflow recycles uniformly. The deviation is O(1/T):
        # TV(K(uniform), uniform) = (1-delta) * (1/T) * (|off| summed drift).
        for T in (10, 100, 1000):
            bel = ExactBelief.uniform(T)
            out = exact_predict(bel, DEFAULT)
            tv = 0.5 * np.abs(out.probs - bel.probs).sum()
            assert tv <= 2.0 / T
        # T=1 is the one case where uniform is trivially exact.
        out = exact_predict(ExactBelief.uniform(1), DEFAULT)
        assert out.probs[0] == pytest.approx(1.0, abs=1e-15)

    def test_point_mass_interior_delta_zero(self):
        bel = ExactBelief.point_mass(20, 8)
        out = exact_predict(bel, KernelParams(delta=0.0))
        expected = np.zeros(20)
        expected[[7, 8, 9]] = 1 / 3
        assert np.max(np.abs(out.probs - expected)) < 1e-12

    def test_point_mass_at_end_delta_zero(self):
        T = 12
        bel = ExactBelief.point_mass(T, T)
        out = exact_predict(bel, KernelParams(delta=0.0))
        expected = np.full(T, (2 / 3) / T)
        expected[T - 1] += 1 / 3
        assert np.max(np.abs(out.probs - expected)) < 1e-12

    def test_matches_brute_force_matrix(self):
        rng = np.random.default_rng(17)
        for T in range(1, 31):
            K = brute_force_kernel_matrix(T, DEFAULT)
            assert np.allclose(K.sum(axis=1), 1.0, atol=1e-12)
            probs = rng.random(T)
            probs /= probs.sum()
            expected = probs @ K
            out = exact_predict(ExactBelief(probs), DEFAULT)
            assert np.max(np.abs(out.probs - expected)) < 1e-12

    def test_matches_brute_force_custom_kernel(self):
        params = KernelParams(delta=0.25, alpha_offsets=(-2, 0, 3), alpha_probs=(0.5, 0.3, 0.2))
        rng = np.random.default_rng(23)
        for T in (1, 2, 5, 30):
            K = brute_force_kernel_matrix(T, params)
            probs = rng.random(T)
            probs /= probs.sum()
            out = exact_predict(ExactBelief(probs), params)
            assert np.max(np.abs(out.probs - probs @ K)) < 1e-12

    def test_preserves_total_probability(self):
        rng = np.random.default_rng(5)
        probs = rng.random(77)
        probs /= probs.sum()
        out = exact_predict(ExactBelief(probs), DEFAULT)
        assert abs(out.probs.sum() - 1.0) < 1e-12


class TestExactCorrect:
    def test_constant_observations_leave_belief_unchanged(self):
        z = Observation(9, 9, 9, 9)
        ep = Episode(tuple(Event(Action(0, 0), z) for _ in range(6)))
        probs = np.array([0.1, 0.2, 0.05, 0.15, 0.3, 0.2])
        out = exact_correct(ExactBelief(probs), z, ep)
        assert np.max(np.abs(out.probs - probs)) < 1e-12

    def test_hand_bayes(self):
        ep = Episode(
            (
                Event(Action(0, 0), Observation(10, 10, 10, 10)),
                Event(Action(0, 0), Observation(100, 10, 10, 10)),
            )
        )
        out = exact_correct(ExactBelief.uniform(2), Observation(10, 10, 10, 10), ep)
        assert out.probs == pytest.approx([2 / 3, 1 / 3], abs=1e-12)

    def test_normalizes_random_inputs(self):
        ep = make_synthetic_episode(40)
        rng = np.random.default_rng(2)
        probs = rng.random(40)
        probs /= probs.sum()
        out = exact_correct(ExactBelief(probs), synthetic_observation(ep, 3), ep)
        assert abs(out.probs.sum() - 1.0) < 1e-12


class TestTvDistance:
    def test_identical_distributions(self):
        ps = ParticleSet([1, 2, 3, 4], np.full(4, 0.25), 4)
        assert tv_distance(ExactBelief.uniform(4), ps) == pytest.approx(0.0, abs=1e-12)

    def test_disjoint_point_masses(self):
        ps = ParticleSet([2], [1.0], 4)
        assert tv_distance(ExactBelief.point_mass(4, 1), ps) == pytest.approx(1.0)

    def test_point_mass_vs_uniform(self):
        ps = ParticleSet([1, 2, 3, 4], np.full(4, 0.25), 4)
        assert tv_distance(ExactBelief.point_mass(4, 1), ps) == pytest.approx(0.75)

    def test_dimension_mismatch(self):
        ps = ParticleSet([1], [1.0], 3)
        with pytest.raises(ValueError):
            tv_distance(ExactBelief.uniform(4), ps)


class TestFilterAgainstOracle:
    def test_lockstep_convergence_moderate_n(self):
        # The acceptance suite runs the full criterion (N=1e5, 10 seeds);
        # this is the fast regression version.
        ep = make_synthetic_episode(100)
        tvs = []
        for seed in range(3):
            rng = np.random.default_rng(seed)
            ps = init_particles(ep, 20_000, rng)
            bel = ExactBelief.uniform(100)
            for k in range(20):
                z = synthetic_observation(ep, k)
                ps = filter_step(ps, Action(0, 0), z, ep, DEFAULT, rng)
                bel = exact_correct(exact_predict(bel, DEFAULT), z, ep)
            tvs.append(tv_distance(bel, ps))
        assert np.mean(tvs) <= 0.10
