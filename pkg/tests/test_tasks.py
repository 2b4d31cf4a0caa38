import numpy as np
import pytest

from pfoe.episode import Action, Observation, trim
from pfoe.sim2d import MotionNoise, Pose, SensorModel, load_environment
from pfoe.tasks import (
    DNF,
    FAILURE,
    MISCHOICE,
    SUCCESS,
    ConfigError,
    ExperimentConfig,
    TaskSpec,
    Trace,
    TraceStep,
    TrialOutcome,
    UnknownTaskError,
    count_swings,
    counting_table,
    choice_table,
    deserialize_trace,
    evaluate_choice,
    evaluate_counting,
    parse_config,
    replay_counting,
    report_to_tsv,
    run_experiment,
    run_teacher,
    scripted_teacher,
    segment_counting_cycles,
    serialize_trace,
)

QUIET = MotionNoise.zero()
CLEAN = SensorModel(sigma=0.0)


def teach(task_text, cycles=3, seed=0, noise=QUIET, sensor=CLEAN):
    task = TaskSpec.parse(task_text)
    world = load_environment(task.environment)
    stream = scripted_teacher(task, cycles, np.random.default_rng(seed))
    return world, run_teacher(world, stream, seed=seed, noise=noise, sensor_model=sensor)


class TestTaskSpec:
    def test_parse_valid(self):
        assert TaskSpec.parse("counting:4") == TaskSpec("counting", 4)
        assert TaskSpec.parse("choice:B") == TaskSpec("choice", "B")
        assert TaskSpec.parse("wall_follow").kind == "wall_follow"
        assert TaskSpec.parse("rect_corridor").environment == "rect_corridor"

    def test_parse_invalid(self):
        for bad in ("counting", "counting:x", "counting:0", "choice:Q", "juggling"):
            with pytest.raises(UnknownTaskError):
                TaskSpec.parse(bad)


class TestScriptedTeacher:
    def test_zero_cycles_empty_stream(self):
        assert scripted_teacher("counting:3", 0, np.random.default_rng(0)) == []

    def test_counting_stream_quantized(self):
        stream = scripted_teacher("counting:2", 3, np.random.default_rng(1))
        for step in stream:
            assert step.action.v_linear in (-0.2, 0.0, 0.2)
            assert not step.lift

    def test_recording_length_equals_steps_driven(self):
        stream = scripted_teacher("counting:3", 3, np.random.default_rng(4))
        world = load_environment("counting_wall")
        result = run_teacher(world, stream, seed=4)
        assert len(result.episode) == len(stream)

    def test_choice_has_carries_and_recording_is_uninterrupted(self):
        stream = scripted_teacher("choice:B", 3, np.random.default_rng(2))
        lifts = [s.lift for s in stream]
        assert any(lifts)
        world = load_environment("choice_maze")
        result = run_teacher(world, stream, seed=3)
        # every cycle recorded, including the carries
        assert len(result.episode) == len(stream)
        carried = [s for s in result.trace.steps if s.carried]
        assert carried and all(s.observation == Observation(1, 1, 1, 1) for s in carried)

    def test_teacher_counts_its_own_swings(self):
        # Noise-free closed loop: 3 cycles of counting:1 produce exactly
        # 3 nose-leaving events, one per cycle.
        world, result = teach("counting:1")
        assert count_swings(result.trace, world) == 3
        cycles = segment_counting_cycles(result.trace)
        assert len(cycles) == 2  # the third cycle has no successor start
        for a, b in cycles:
            seg = Trace(result.trace.steps[a:b], 0.1)
            assert evaluate_counting(seg, 1, world).label == SUCCESS


class TestEvaluateCounting:
    def test_teacher_trace_passes_per_cycle(self):
        world, result = teach("counting:2")
        for a, b in segment_counting_cycles(result.trace):
            seg = Trace(result.trace.steps[a:b], 0.1)
            outcome = evaluate_counting(seg, 2, world)
            assert outcome.label == SUCCESS
            assert outcome.metrics["count"] == 2

    def test_empty_trace_fails(self):
        world = load_environment("counting_wall")
        outcome = evaluate_counting(Trace([], 0.1), 1, world)
        assert outcome.label == FAILURE
        assert outcome.metrics["count"] == 0

    def test_wrong_count_fails(self):
        world, result = teach("counting:3")
        a, b = segment_counting_cycles(result.trace)[0]
        seg = Trace(result.trace.steps[a:b], 0.1)
        assert evaluate_counting(seg, 2, world).label == FAILURE
        assert evaluate_counting(seg, 3, world).label == SUCCESS


def synthetic_choice_trace(points, cycle=0.1, action=Action(0.2, 0.0)):
    steps = [
        TraceStep(i, Pose(x, y, 0.0), action, Observation(5, 5, 5, 5), 1, 1.0)
        for i, (x, y) in enumerate(points)
    ]
    return Trace(steps, cycle)


class TestEvaluateChoice:
    def test_enter_target_pocket(self):
        world = load_environment("choice_maze")
        trace = synthetic_choice_trace([(0.0, -0.4), (0.0, 0.0), (0.0, 0.45)])
        outcome = evaluate_choice(trace, "B", world)
        assert outcome.label == SUCCESS
        assert outcome.metrics["pocket"] == "B"

    def test_enter_wrong_pocket(self):
        world = load_environment("choice_maze")
        trace = synthetic_choice_trace([(0.0, -0.4), (-0.45, 0.0)])
        assert evaluate_choice(trace, "B", world).label == MISCHOICE

    def test_stall_six_seconds_is_dnf(self):
        world = load_environment("choice_maze")
        still = [(0.0, 0.0)] * 60
        trace = synthetic_choice_trace(still, action=Action(0.0, 0.0))
        outcome = evaluate_choice(trace, "B", world)
        assert outcome.label == DNF
        assert outcome.metrics["reason"] == "stall"

    def test_timeout_is_dnf(self):
        world = load_environment("choice_maze")
        # moving, but never reaching a pocket
        points = [(0.0, -0.4 + 0.001 * i) for i in range(50)]
        assert evaluate_choice(points and synthetic_choice_trace(points), "B", world).label == DNF

    def test_teacher_run_reaches_each_pocket(self):
        for pocket in ("A", "B", "C"):
            world, result = teach(f"choice:{pocket}")
            # judge from the first commanded motion (the preparation pause
            # before it is longer than the stall window by design)
            first = next(i for i, s in enumerate(result.trace.steps) if s.action.v_linear)
            run = Trace(result.trace.steps[first:], result.trace.cycle_duration)
            outcome = evaluate_choice(run, pocket, world)
            assert outcome.label == SUCCESS, (pocket, outcome)


class TestTraceSerialization:
    def test_round_trip(self):
        world, result = teach("counting:1", cycles=1)
        text = serialize_trace(result.trace)
        back = deserialize_trace(text)
        assert back.steps == result.trace.steps
        assert back.cycle_duration == result.trace.cycle_duration

    def test_evaluator_pure_after_round_trip(self):
        world, result = teach("counting:2")
        outcome1 = evaluate_counting(result.trace, 2, world)
        outcome2 = evaluate_counting(deserialize_trace(serialize_trace(result.trace)), 2, world)
        assert outcome1 == outcome2


class TestReplayDeterminism:
    def test_bit_identical_traces(self):
        world, result = teach("counting:2", noise=MotionNoise(), sensor=SensorModel())
        episode = trim(result.episode, 5.0, 5.0)

        def run():
            return replay_counting(
                episode, world, 2, "mode", trials=2, seed=123,
                start_pose=result.final_pose,
            )

        t1 = serialize_trace(run().trace)
        t2 = serialize_trace(run().trace)
        assert t1 == t2


class TestExperimentConfig:
    def test_parse_counting(self):
        cfg = parse_config("task=counting\nn=1,2\nsets=2\ntrials=3\nseed=5\n")
        assert cfg.variants == (1, 2)
        assert cfg.sets == 2 and cfg.trials == 3 and cfg.seed == 5

    def test_parse_choice(self):
        cfg = parse_config("task=choice\npockets=A,B\npolicy=mode,mean\n")
        assert cfg.variants == ("A", "B")
        assert cfg.policies == ("mode", "mean")

    def test_parse_errors(self):
        with pytest.raises(ConfigError):
            parse_config("task=flying\n")
        with pytest.raises(ConfigError):
            parse_config("task=counting\nbogus_key=1\n")
        with pytest.raises(ConfigError):
            parse_config("no equals sign")


class TestRunExperiment:
    def test_zero_trials_empty_report(self):
        cfg = ExperimentConfig(task="counting", variants=(1,), sets=1, trials=0)
        report = run_experiment(cfg)
        assert report.rows == []

    def test_counting_report_shape(self):
        cfg = ExperimentConfig(task="counting", variants=(1,), sets=2, trials=3, seed=9)
        report = run_experiment(cfg)
        assert len(report.rows) == 2 * 3
        assert {r.set_index for r in report.rows} == {0, 1}
        table = counting_table(report)
        assert "set 1" in table and "all" in table
        tsv = report_to_tsv(report)
        assert tsv.startswith("task\tvariant\tpolicy\tset\ttrial\toutcome\tmetrics")
        assert len(tsv.strip().splitlines()) == 1 + len(report.rows)

    def test_choice_report_shape(self):
        cfg = ExperimentConfig(
            task="choice", variants=("B",), policies=("mean", "mode"),
            sets=1, trials=2, seed=4,
        )
        report = run_experiment(cfg)
        assert len(report.rows) == 2 * 2
        table = choice_table(report)
        for label in (SUCCESS, DNF, MISCHOICE):
            assert label in table

    def test_deterministic_given_seed(self):
        cfg = ExperimentConfig(task="counting", variants=(1,), sets=1, trials=2, seed=11)
        r1 = run_experiment(cfg)
        r2 = run_experiment(cfg)
        assert r1.rows == r2.rows
