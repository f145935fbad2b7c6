"""Scenario orchestration: play games, check them against the proven bounds, sweep, write CSV."""

from __future__ import annotations

import copy
import csv
import io
import itertools
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .adversaries import LittlestoneAdversary, NoisyAdversary, TradeoffAdversary, VennAdversary
from .algebra import BRUTE_FORCE_CAP, closure_dimension
from .baselines import ModifiedGreedy, UniformBaseline, greedy_bounds
from .config import (ConfigError, adversary_builds_class, build_adversary, build_class,
                     build_generator)
from .game import GameResult, run_game
from .lfd import (LfdGenerator, consistent_bound, noisy_finite_bound, noisy_stream_bound,
                  regret_bound)
from .weighted import (Constant, InverseSquare, PowerOfTwo, Uniform, WeightedGenerator,
                       f_inverse, floor_log2, log_index_bound, mistake_bound_formula)

CSV_COLUMNS = ("scenario", "params", "target_i", "mistakes", "last_mistake", "noise",
               "bound_name", "bound_value", "satisfied")


@dataclass(frozen=True)
class BoundCheck:
    name: str
    value: int
    satisfied: bool
    kind: str = "upper"  # "upper": observed <= value; "lower": observed >= value


@dataclass
class BoundReport:
    scenario: str
    generator: str
    adversary: str
    target_index: int
    mistakes: int
    last_mistake: int
    bounds: list[BoundCheck]
    noise: int
    seed: int
    stabilized: bool
    params: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(b.satisfied for b in self.bounds)

    def failures(self) -> list[BoundCheck]:
        return [b for b in self.bounds if not b.satisfied]


@dataclass
class Scenario:
    name: str
    generator: Any
    adversary: Any
    horizon: int = 64
    language_class: Any = None
    seeds: tuple = (0,)
    allow_repeats_noisy: bool = False

    @classmethod
    def from_dict(cls, d: Any) -> "Scenario":
        if not isinstance(d, dict):
            raise ConfigError("scenario", "expected an object")
        for key in ("name", "generator", "adversary"):
            if key not in d:
                raise ConfigError(key, "missing")
        horizon = d.get("horizon", 64)
        if isinstance(horizon, bool) or not isinstance(horizon, int) or horizon < 1:
            raise ConfigError("horizon", "expected a positive integer")
        seeds = d.get("seeds", [0])
        if not isinstance(seeds, list) or not seeds or not all(isinstance(s, int) for s in seeds):
            raise ConfigError("seeds", "expected a nonempty list of integers")
        if d.get("class") is None and not adversary_builds_class(d["adversary"]):
            raise ConfigError("class", "required unless the adversary builds its own class")
        return cls(name=str(d["name"]), generator=d["generator"], adversary=d["adversary"],
                   horizon=horizon, language_class=d.get("class"), seeds=tuple(seeds),
                   allow_repeats_noisy=bool(d.get("allow_repeats_noisy", False)))

    def to_dict(self) -> dict:
        d = {"name": self.name, "generator": self.generator, "adversary": self.adversary,
             "horizon": self.horizon, "seeds": list(self.seeds),
             "allow_repeats_noisy": self.allow_repeats_noisy}
        if self.language_class is not None:
            d["class"] = self.language_class
        return d


def play(scenario: Scenario, seed: int) -> GameResult:
    """Build everything fresh from the scenario and play one game."""
    cls = build_class(scenario.language_class, seed) if scenario.language_class is not None else None
    adversary = build_adversary(scenario.adversary, cls, seed)
    cls = adversary.language_class
    generator = build_generator(scenario.generator, cls)
    noisy = isinstance(adversary, NoisyAdversary)
    return run_game(generator, adversary, scenario.horizon,
                    enforce_unique=not (noisy and scenario.allow_repeats_noisy))


def _upper(name, value, observed) -> BoundCheck:
    return BoundCheck(name, int(value), observed <= value, "upper")


def _lower(name, value, observed) -> BoundCheck:
    return BoundCheck(name, int(value), observed >= value, "lower")


def _finite_hybrid(gen) -> bool:
    return (isinstance(gen.prior, Uniform) and isinstance(gen.growth, Constant)
            and gen.cls.is_finite and gen.growth.n >= gen.cls.max_index)


def _log_index(gen) -> bool:
    return isinstance(gen.prior, InverseSquare) and isinstance(gen.growth, PowerOfTwo)


def _cdim(cls) -> Optional[int]:
    if not cls.is_finite or cls.max_index > BRUTE_FORCE_CAP:
        return None
    return closure_dimension(cls)


def generator_bounds(result: GameResult) -> list[BoundCheck]:
    gen, cls, i = result.generator, result.adversary.language_class, result.target_index
    mistakes, last, noise = result.total_mistakes, result.last_mistake_time, result.noise_count
    out: list[BoundCheck] = []
    if isinstance(gen, WeightedGenerator):
        if noise:
            return out
        out.append(_upper("weighted_mistakes", mistake_bound_formula(gen.growth, gen.prior, i), mistakes))
        if _log_index(gen):
            out.append(_upper("log_index_mistakes", int(log_index_bound(i) // 1), mistakes))
        if _finite_hybrid(gen):
            cdim = _cdim(cls)
            if cdim is not None:
                # one step later than the uniform horizon, since the generator moves first
                out.append(_upper("hybrid_mistakes", min(floor_log2(Fraction(cls.max_index)), cdim + 1), mistakes))
                out.append(_upper("hybrid_last_mistake", cdim + 1, last))
    elif isinstance(gen, UniformBaseline):
        cdim = _cdim(cls)
        if cdim is not None and not noise:
            out.append(_upper("uniform_last_mistake", cdim + 1, last))
    elif isinstance(gen, ModifiedGreedy):
        if not noise and i <= BRUTE_FORCE_CAP + 1:
            last_b, mist_b = greedy_bounds(cls, i)
            out.append(_upper("greedy_last_mistake", last_b, last))
            out.append(_upper("greedy_mistakes", mist_b, mistakes))
    elif isinstance(gen, LfdGenerator):
        lr = gen.learner
        fi = f_inverse(lr.growth, i)
        if lr.gamma == 1:
            if not noise:
                out.append(_upper("consistent_mistakes", consistent_bound(lr.prior, lr.growth, i)[0], mistakes))
        else:
            T = len(result.steps)
            regret = lr.demonstrator_regret(i, int(fi) + 1, T)
            out.append(_upper("regret_mistakes",
                              regret_bound(lr.prior, lr.growth, i, lr.gamma, regret)[0], mistakes))
            if isinstance(lr.prior, Uniform) and cls.is_finite:
                out.append(_upper("noisy_finite_mistakes",
                                  noisy_finite_bound(cls.max_index, lr.gamma, noise)[0], mistakes))
            if _log_index(lr) and i >= 2:
                # two readings of where the noise window starts
                for label, start in (("finv", int(fi) + 1), ("log", floor_log2(Fraction(i)))):
                    window_noise = sum(1 for s in result.steps if s.adversary_noise and s.t >= start)
                    out.append(_upper(f"noisy_stream_mistakes_{label}_window",
                                      noisy_stream_bound(i, lr.gamma, window_noise)[0], mistakes))
    return out


def adversary_bounds(result: GameResult) -> list[BoundCheck]:
    adv = result.adversary
    base = adv.base if isinstance(adv, NoisyAdversary) else adv
    if isinstance(adv, NoisyAdversary):
        return []
    mistakes = result.total_mistakes
    if isinstance(base, LittlestoneAdversary):
        return [_lower("littlestone_forced", base.m, mistakes)] if base.declared_at is not None else []
    if isinstance(base, VennAdversary):
        return [_lower("venn_forced", 1, mistakes)] if base.declared_at is not None else []
    if isinstance(base, TradeoffAdversary) and base.halt_rule is not None:
        b = base.halt_boundary
        t = base.boundary_steps[b]
        mistake_at = {s.t for s in result.steps if s.generator_mistake}
        ok = mistakes >= base.i_star - 1 or t in mistake_at
        return [BoundCheck(f"tradeoff_rule{base.halt_rule}", base.i_star - 1 if base.halt_rule == 2 else t,
                           ok, "lower")]
    return []


def _stabilized(result: GameResult) -> bool:
    """No mistakes in the second half of the horizon."""
    return result.last_mistake_time <= result.transcript.horizon // 2


def verify(scenario, seed: Optional[int] = None, params: Optional[dict] = None) -> BoundReport:
    if not isinstance(scenario, Scenario):
        scenario = Scenario.from_dict(scenario)
    seed = scenario.seeds[0] if seed is None else seed
    result = play(scenario, seed)
    checks = generator_bounds(result) + adversary_bounds(result)
    return BoundReport(
        scenario=scenario.name,
        generator=result.generator.name,
        adversary=result.adversary.name,
        target_index=result.target_index,
        mistakes=result.total_mistakes,
        last_mistake=result.last_mistake_time,
        bounds=checks,
        noise=result.noise_count,
        seed=seed,
        stabilized=_stabilized(result),
        params=dict(params or {}),
    )


def set_dotted(cfg: dict, key: str, value) -> None:
    parts = key.split(".")
    node = cfg
    for p in parts[:-1]:
        if not isinstance(node.get(p), dict):
            raise ConfigError(key, f"{p!r} is not an object in the template")
        node = node[p]
    node[parts[-1]] = value


def parse_range(text: str) -> tuple[str, list]:
    """``key=a..b`` (inclusive integers) or ``key=a,b,c``."""
    key, sep, spec = text.partition("=")
    if not sep or not key:
        raise ConfigError(text, "expected key=a..b or key=a,b,c")
    if ".." in spec:
        lo, _, hi = spec.partition("..")
        try:
            lo_i, hi_i = int(lo), int(hi)
        except ValueError:
            raise ConfigError(key, f"bad integer range {spec!r}") from None
        if hi_i < lo_i:
            raise ConfigError(key, "empty range")
        return key, list(range(lo_i, hi_i + 1))
    vals = []
    for v in spec.split(","):
        try:
            vals.append(json.loads(v))
        except json.JSONDecodeError:
            vals.append(v)
    return key, vals


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("GENLIMIT_THREADS", "4")))
    except ValueError:
        return 1


def sweep(template: dict, ranges: dict[str, list]) -> list[BoundReport]:
    """One report per parameter tuple, in the order of the Cartesian product."""
    keys = list(ranges)
    jobs = []
    for combo in itertools.product(*(ranges[k] for k in keys)):
        cfg = copy.deepcopy(template)
        seed = None
        params = dict(zip(keys, combo))
        for k, v in params.items():
            if k == "seed":
                seed = v
            else:
                set_dotted(cfg, k, v)
        jobs.append((Scenario.from_dict(cfg), seed, params))
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        return list(pool.map(lambda job: verify(*job), jobs))


def reports_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        params = json.dumps({"seed": r.seed, **r.params}, sort_keys=True, separators=(",", ":"))
        head = [r.scenario, params, r.target_index, r.mistakes, r.last_mistake, r.noise]
        if not r.bounds:
            w.writerow(head + ["", "", 1])
        for b in r.bounds:
            w.writerow(head + [b.name, b.value, int(b.satisfied)])
    return buf.getvalue()
