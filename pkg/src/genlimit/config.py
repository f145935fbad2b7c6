"""Build classes, generators and adversaries from JSON-style dictionaries.

Atoms are ``{"finite": [...]}`` or ``{"progression": {"start": a, "stride": d}}``.
Classes are either ``{"languages": [{"label": ..., "atoms": [...]}, ...]}`` or a
parametric builder such as ``{"builder": "tradeoff", "n": 3, "max_index": 8}``.
Adversaries accept the compact string forms ``"venn:6"``, ``"littlestone:8"``,
``"tradeoff:3,4"`` as well as dictionaries.  A noisy adversary takes either an
explicit ``steps`` list or ``count`` (with optional ``first`` and ``every``).
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from typing import Any, Optional

from . import classes
from .adversaries import (Enumerator, LittlestoneAdversary, NoisyAdversary,
                          TradeoffAdversary, VennAdversary)
from .algebra import FiniteSet, Language, LanguageClass, Progression
from .baselines import ModifiedGreedy, UniformBaseline
from .lfd import InvalidGamma, reduce_generation_to_lfd
from .weighted import Constant, InverseSquare, PowerOfTwo, Uniform, WeightedGenerator


class ConfigError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _int(cfg: dict, key: str, path: str, default=None, minimum: Optional[int] = None) -> int:
    v = cfg.get(key, default)
    if v is None or isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"{path}.{key}", f"expected an integer, got {v!r}")
    if minimum is not None and v < minimum:
        raise ConfigError(f"{path}.{key}", f"must be >= {minimum}")
    return v


def parse_progression(d: Any, path: str) -> Progression:
    if not isinstance(d, dict):
        raise ConfigError(path, "expected {'start': a, 'stride': d}")
    try:
        return Progression(_int(d, "start", path), _int(d, "stride", path))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(path, str(exc)) from None


def parse_atom(d: Any, path: str):
    if isinstance(d, dict) and "finite" in d:
        vals = d["finite"]
        if not isinstance(vals, list):
            raise ConfigError(f"{path}.finite", "expected a list of naturals")
        try:
            return FiniteSet.of(vals)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{path}.finite", str(exc)) from None
    if isinstance(d, dict) and "progression" in d:
        return parse_progression(d["progression"], f"{path}.progression")
    raise ConfigError(path, "an atom is {'finite': [...]} or {'progression': {...}}")


def parse_language(d: Any, path: str) -> Language:
    if not isinstance(d, dict) or not isinstance(d.get("atoms"), list):
        raise ConfigError(path, "a language is {'label': ..., 'atoms': [...]}")
    atoms = tuple(parse_atom(a, f"{path}.atoms[{k}]") for k, a in enumerate(d["atoms"]))
    try:
        return Language(atoms, label=d.get("label"))
    except ValueError as exc:
        raise ConfigError(path, str(exc)) from None


def build_class(cfg: Any, seed: int = 0, path: str = "class") -> LanguageClass:
    if not isinstance(cfg, dict):
        raise ConfigError(path, "expected an object")
    if "languages" in cfg:
        langs = cfg["languages"]
        if not isinstance(langs, list) or not langs:
            raise ConfigError(f"{path}.languages", "expected a nonempty list")
        parsed = [parse_language(L, f"{path}.languages[{k}]") for k, L in enumerate(langs)]
        noise = cfg.get("noise_source")
        noise = parse_progression(noise, f"{path}.noise_source") if noise is not None else None
        return LanguageClass.from_languages(parsed, name=cfg.get("name", "custom"), noise_source=noise)
    builder = cfg.get("builder")
    try:
        if builder == "venn":
            return classes.venn(_int(cfg, "n", path, minimum=1))
        if builder == "littlestone":
            return classes.littlestone(_int(cfg, "n", path, minimum=2))
        if builder == "tradeoff":
            row_cap = cfg.get("row_cap")
            return classes.tradeoff(_int(cfg, "n", path, minimum=2),
                                    _int(cfg, "max_index", path, minimum=1),
                                    None if row_cap is None else _int(cfg, "row_cap", path))
        if builder == "random":
            return classes.random_class(_int(cfg, "seed", path, default=seed),
                                        _int(cfg, "size", path, default=5, minimum=1),
                                        _int(cfg, "max_element", path, default=64, minimum=0),
                                        _int(cfg, "max_stride", path, default=8, minimum=1))
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(path, str(exc)) from None
    raise ConfigError(f"{path}.builder", f"unknown builder {builder!r}")


def _parse_growth(spec, cls: LanguageClass, path: str):
    if spec is None:
        spec = "constant" if cls.is_finite else "pow2"
    if spec == "pow2":
        return PowerOfTwo()
    if isinstance(spec, str) and spec.startswith("constant"):
        _, _, n = spec.partition(":")
        if not n:
            return Constant(cls.max_index)
        if not n.isdigit() or int(n) < 1:
            raise ConfigError(path, f"bad constant growth {spec!r}")
        return Constant(int(n))
    raise ConfigError(path, f"unknown growth {spec!r} (constant:N | pow2)")


def _parse_prior(spec, cls: LanguageClass, path: str):
    if spec is None:
        spec = "uniform" if cls.is_finite else "inverse_square"
    if spec == "uniform":
        if not cls.is_finite:
            raise ConfigError(path, "a uniform prior needs a finite class")
        return Uniform(cls.max_index)
    if spec == "inverse_square":
        return InverseSquare()
    raise ConfigError(path, f"unknown prior {spec!r} (uniform | inverse_square)")


def build_generator(cfg: Any, cls: LanguageClass, path: str = "generator"):
    if isinstance(cfg, str):
        cfg = {"generator": cfg}
    if not isinstance(cfg, dict):
        raise ConfigError(path, "expected an object")
    kind = cfg.get("generator")
    if kind == "weighted":
        return WeightedGenerator(cls, _parse_prior(cfg.get("prior"), cls, f"{path}.prior"),
                                 _parse_growth(cfg.get("growth"), cls, f"{path}.growth"))
    if kind == "uniform_baseline":
        if not cls.is_finite:
            raise ConfigError(path, "uniform_baseline needs a finite class")
        return UniformBaseline(cls)
    if kind == "modified_greedy":
        return ModifiedGreedy(cls)
    if kind == "lfd":
        try:
            gamma = Fraction(str(cfg.get("gamma", "1")))
        except ValueError:
            raise ConfigError(f"{path}.gamma", f"not a rational: {cfg.get('gamma')!r}") from None
        try:
            return reduce_generation_to_lfd(cls, gamma, _parse_prior(cfg.get("prior"), cls, f"{path}.prior"),
                                            _parse_growth(cfg.get("growth"), cls, f"{path}.growth"))
        except InvalidGamma as exc:
            raise ConfigError(f"{path}.gamma", str(exc)) from None
    raise ConfigError(f"{path}.generator", f"unknown generator {kind!r}")


def _expand_adversary(cfg: Any, path: str) -> dict:
    if isinstance(cfg, dict):
        return cfg
    if not isinstance(cfg, str):
        raise ConfigError(path, "expected a string or an object")
    name, _, args = cfg.partition(":")
    vals = [a for a in args.split(",") if a]
    try:
        nums = [int(a) for a in vals]
    except ValueError:
        raise ConfigError(path, f"bad adversary parameters in {cfg!r}") from None
    if name == "venn" and len(nums) == 1:
        return {"adversary": "venn", "n": nums[0]}
    if name == "littlestone" and len(nums) == 1:
        return {"adversary": "littlestone", "n": nums[0]}
    if name == "tradeoff" and len(nums) == 2:
        return {"adversary": "tradeoff", "n": nums[0], "i_star": nums[1]}
    if name == "enumerator" and len(nums) <= 1:
        return {"adversary": "enumerator", **({"target": nums[0]} if nums else {})}
    raise ConfigError(path, f"unknown adversary {cfg!r}")


def adversary_builds_class(cfg: Any) -> bool:
    cfg = _expand_adversary(cfg, "adversary")
    if cfg.get("adversary") == "noisy":
        return adversary_builds_class(cfg.get("base"))
    return cfg.get("adversary") in ("venn", "littlestone", "tradeoff")


def build_adversary(cfg: Any, cls: Optional[LanguageClass], seed: int = 0, path: str = "adversary"):
    cfg = _expand_adversary(cfg, path)
    kind = cfg.get("adversary")
    try:
        if kind == "venn":
            return VennAdversary(_int(cfg, "n", path, minimum=1))
        if kind == "littlestone":
            return LittlestoneAdversary(_int(cfg, "n", path, minimum=2))
        if kind == "tradeoff":
            mi = cfg.get("max_index")
            return TradeoffAdversary(_int(cfg, "n", path, minimum=2), _int(cfg, "i_star", path, minimum=2),
                                     None if mi is None else _int(cfg, "max_index", path))
        if kind == "enumerator":
            if cls is None:
                raise ConfigError(path, "an enumerator needs a class")
            target = cfg.get("target", 1)
            if target == "random":
                target = random.Random(seed).randint(1, cls.max_index)
            if isinstance(target, bool) or not isinstance(target, int) or not 1 <= target <= cls.max_index:
                raise ConfigError(f"{path}.target", f"must be an index in [1, {cls.max_index}]")
            return Enumerator(cls, target)
        if kind == "noisy":
            base = build_adversary(cfg.get("base"), cls, seed, f"{path}.base")
            if "count" in cfg:
                count = _int(cfg, "count", path, minimum=0)
                every = _int(cfg, "every", path, default=1, minimum=1)
                first = _int(cfg, "first", path, default=1, minimum=1)
                steps = [first + k * every for k in range(count)]
            else:
                steps = cfg.get("steps", [])
            if not isinstance(steps, list) or not all(isinstance(s, int) and s >= 1 for s in steps):
                raise ConfigError(f"{path}.steps", "expected a list of positive step indices")
            src = cfg.get("source")
            src = parse_progression(src, f"{path}.source") if src is not None else None
            return NoisyAdversary(base, steps, src)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(path, str(exc)) from None
    raise ConfigError(f"{path}.adversary", f"unknown adversary {kind!r}")


def load_json(path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(str(path), str(exc)) from None
