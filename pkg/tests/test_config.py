import pytest

from genlimit.adversaries import Enumerator, NoisyAdversary, TradeoffAdversary, VennAdversary
from genlimit.baselines import ModifiedGreedy
from genlimit.config import ConfigError, build_adversary, build_class, build_generator
from genlimit.lfd import LfdGenerator
from genlimit.weighted import Constant, InverseSquare, PowerOfTwo, Uniform, WeightedGenerator

EXPLICIT = {
    "languages": [
        {"label": "A", "atoms": [{"finite": [0, 1, 2]}, {"progression": {"start": 100, "stride": 7}}]},
        {"label": "B", "atoms": [{"progression": {"start": 1, "stride": 2}}]},
    ],
    "noise_source": {"start": 6, "stride": 14},
}


def test_explicit_class():
    cls = build_class(EXPLICIT)
    assert cls.max_index == 2
    assert 114 in cls[1] and 3 not in cls[1]
    assert cls[1].label == "A"


@pytest.mark.parametrize("cfg, path", [
    ({"languages": [{"atoms": [{"finite": [1]}]}]}, "class.languages[0]"),
    ({"languages": [{"atoms": [{"progression": {"start": 0}}]}]}, "class.languages[0].atoms[0].progression.stride"),
    ({"languages": [{"atoms": [{"finite": [2, "x"]}]}]}, "class.languages[0].atoms[0].finite"),
    ({"builder": "venn"}, "class.n"),
    ({"builder": "nope"}, "class.builder"),
    ({"builder": "tradeoff", "n": 3, "max_index": 4, "row_cap": 2}, "class"),
])
def test_class_errors_carry_key_path(cfg, path):
    with pytest.raises(ConfigError) as err:
        build_class(cfg)
    assert err.value.path == path


def test_generator_defaults_follow_class_kind():
    finite = build_class({"builder": "venn", "n": 3})
    g = build_generator({"generator": "weighted"}, finite)
    assert isinstance(g.prior, Uniform) and g.growth == Constant(2)
    stream = build_class({"builder": "tradeoff", "n": 3, "max_index": 5})
    g = build_generator("weighted", stream)
    assert isinstance(g.prior, InverseSquare) and isinstance(g.growth, PowerOfTwo)
    assert isinstance(build_generator({"generator": "lfd", "gamma": "3/4"}, stream), LfdGenerator)
    assert isinstance(build_generator("modified_greedy", stream), ModifiedGreedy)
    assert build_generator({"generator": "weighted", "growth": "constant:9"}, finite).growth == Constant(9)


@pytest.mark.parametrize("cfg, path", [
    ({"generator": "lfd", "gamma": "4/5"}, "generator.gamma"),
    ({"generator": "lfd", "gamma": "abc"}, "generator.gamma"),
    ({"generator": "weighted", "prior": "uniform"}, "generator.prior"),
    ({"generator": "weighted", "growth": "cubic"}, "generator.growth"),
    ({"generator": "uniform_baseline"}, "generator"),
    ({"generator": "magic"}, "generator.generator"),
])
def test_generator_errors(cfg, path):
    stream = build_class({"builder": "tradeoff", "n": 3, "max_index": 5})
    with pytest.raises(ConfigError) as err:
        build_generator(cfg, stream)
    assert err.value.path == path


def test_adversary_string_forms():
    assert isinstance(build_adversary("venn:4", None), VennAdversary)
    adv = build_adversary("tradeoff:3,4", None)
    assert isinstance(adv, TradeoffAdversary) and adv.i_star == 4
    cls = build_class(EXPLICIT)
    assert build_adversary("enumerator:2", cls).target == 2


def test_random_target_depends_on_seed_only():
    cls = build_class({"builder": "littlestone", "n": 16})
    picks = [build_adversary({"adversary": "enumerator", "target": "random"}, cls, seed).target for seed in range(6)]
    again = [build_adversary({"adversary": "enumerator", "target": "random"}, cls, seed).target for seed in range(6)]
    assert picks == again
    assert all(1 <= p <= 16 for p in picks)


def test_noisy_adversary_config():
    adv = build_adversary({"adversary": "noisy", "base": "venn:3", "count": 3, "first": 2, "every": 2}, None)
    assert isinstance(adv, NoisyAdversary)
    assert adv.steps == frozenset({2, 4, 6})
    cls = build_class(EXPLICIT)
    adv = build_adversary({"adversary": "noisy", "base": {"adversary": "enumerator"}, "steps": [1]}, cls)
    assert adv.source.start == 6


@pytest.mark.parametrize("cfg, path", [
    ("venn:x", "adversary"),
    ("zigzag:1", "adversary"),
    ({"adversary": "enumerator", "target": 9}, "adversary.target"),
    ({"adversary": "noisy", "base": "venn:3", "steps": [0]}, "adversary.steps"),
    ({"adversary": "tradeoff", "n": 3, "i_star": 1}, "adversary.i_star"),
])
def test_adversary_errors(cfg, path):
    with pytest.raises(ConfigError) as err:
        build_adversary(cfg, build_class(EXPLICIT))
    assert err.value.path == path
