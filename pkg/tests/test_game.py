import pytest

from genlimit.adversaries import Enumerator, VennAdversary
from genlimit.algebra import Language, LanguageClass, Progression
from genlimit.baselines import UniformBaseline
from genlimit.classes import venn
from genlimit.game import (AdversaryRepeatedElement, Adversary, Generator, GeneratorRepeatedElement,
                           StepRecord, TargetNeverDeclared, last_mistake_time, read_transcript_csv,
                           run_game, total_mistakes, transcript_csv, write_transcript_csv)
from genlimit.weighted import Constant, Uniform, WeightedGenerator


def hybrid(cls):
    return WeightedGenerator(cls, Uniform(cls.max_index), Constant(cls.max_index))


class Fixed(Generator):
    name = "fixed"

    def __init__(self, outputs):
        self.outputs = list(outputs)

    def propose(self, revealed):
        return self.outputs[len(revealed)]

    def observe(self, generated, revealed):
        pass


class Repeater(Adversary):
    name = "repeater"

    def reveal(self, generated, revealed):
        return 0


def records(mistake_steps, horizon):
    return [StepRecord(t, 0, 0, t in mistake_steps, False) for t in range(1, horizon + 1)]


@pytest.mark.parametrize("steps, horizon, total, last", [({2, 5}, 6, 2, 5), (set(), 6, 0, 0), ({1}, 100, 1, 1)])
def test_mistake_accounting(steps, horizon, total, last):
    rs = records(steps, horizon)
    assert total_mistakes(rs) == total
    assert last_mistake_time(rs) == last


def test_hybrid_vs_venn_six():
    r = run_game(hybrid(venn(6)), VennAdversary(6), 20)
    assert (r.total_mistakes, r.last_mistake_time) == (1, 7)


def test_singleton_class_no_mistakes():
    cls = LanguageClass.from_languages([Language((Progression(3, 5),))])
    r = run_game(hybrid(cls), Enumerator(cls, 1), 10)
    assert r.total_mistakes == 0
    assert [s.revealed for s in r.steps][:3] == [3, 8, 13]


def test_baseline_vs_venn_six():
    r = run_game(UniformBaseline(venn(6)), VennAdversary(6), 20)
    assert r.last_mistake_time == 7
    assert r.total_mistakes >= 1


def test_generator_may_not_repeat_revealed():
    cls = venn(2)
    with pytest.raises(GeneratorRepeatedElement):
        run_game(Fixed([5, 0]), Enumerator(cls, 1), 2)


def test_adversary_uniqueness_enforced():
    cls = venn(2)
    with pytest.raises(AdversaryRepeatedElement):
        run_game(Fixed([10, 11, 12]), Repeater(cls, 1), 3)
    r = run_game(Fixed([10, 11, 12]), Repeater(cls, 1), 3, enforce_unique=False)
    assert [s.revealed for s in r.steps] == [0, 0, 0]


def test_target_must_be_declared():
    cls = venn(3)
    with pytest.raises(TargetNeverDeclared):
        run_game(hybrid(cls), VennAdversary(3), 2)
    with pytest.raises(ValueError):
        run_game(hybrid(cls), VennAdversary(3), 0)


def test_static_target_fallback():
    cls = venn(3)
    r = run_game(hybrid(cls), VennAdversary(3), 2, target=2)
    assert r.target_index == 2


def test_flags_are_scored_against_target():
    cls = venn(2)
    # L1 = {0,1} u {2+3k}; L2 = {0,1} u {3+3k}
    r = run_game(Fixed([3, 4, 7]), Enumerator(cls, 1), 3)
    assert [s.generator_mistake for s in r.steps] == [True, True, True]
    assert [s.revealed for s in r.steps] == [0, 1, 2]
    assert r.noise_count == 0


def test_transcript_csv_round_trip(tmp_path):
    r = run_game(hybrid(venn(4)), VennAdversary(4), 12)
    text = transcript_csv(r)
    assert text.splitlines()[0] == "t,generated,revealed,generator_mistake,adversary_noise"
    path = tmp_path / "game.csv"
    write_transcript_csv(r, path)
    assert read_transcript_csv(path) == r.steps
    again = run_game(hybrid(venn(4)), VennAdversary(4), 12)
    assert transcript_csv(again) == text


@pytest.mark.parametrize("n", [1, 3, 9])
def test_mistakes_never_exceed_last_time(n):
    for gen in (hybrid(venn(n)), UniformBaseline(venn(n))):
        r = run_game(gen, VennAdversary(n), 3 * n + 4)
        if r.last_mistake_time:
            assert r.total_mistakes <= r.last_mistake_time
