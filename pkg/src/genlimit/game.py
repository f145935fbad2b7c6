"""Online game between a generator and an adversary.

The generator moves first at every step: it proposes x̂_t having seen
x_1..x_{t-1}, then the adversary reveals x_t having seen x̂_1..x̂_t.  Mistakes
are scored after the game against the target the adversary declared.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Optional

from .algebra import LanguageClass


class GameError(RuntimeError):
    pass


class GeneratorRepeatedElement(GameError):
    pass


class AdversaryRepeatedElement(GameError):
    pass


class TargetNeverDeclared(GameError):
    pass


class Generator:
    """Online generator: ``propose`` before each reveal, ``observe`` after it."""

    name = "generator"

    def propose(self, revealed: list[int]) -> int:
        raise NotImplementedError

    def observe(self, generated: int, revealed: int) -> None:
        pass


class Adversary:
    """Base adversary.

    ``target`` is the 1-based index of the target language, or ``None`` until
    an adaptive strategy commits to one.  Once set it must not change.
    """

    name = "adversary"

    def __init__(self, language_class: LanguageClass, target: Optional[int] = None):
        self.language_class = language_class
        self.target = target
        self.declared_at: Optional[int] = 0 if target is not None else None

    def declare(self, index: int, step: int) -> None:
        if self.target is not None and self.target != index:
            raise GameError(f"{self.name} re-declared target {self.target} -> {index}")
        if self.target is None:
            self.target = index
            self.declared_at = step

    def reveal(self, generated: list[int], revealed: list[int]) -> int:
        raise NotImplementedError


@dataclass(frozen=True)
class StepRecord:
    t: int
    generated: int
    revealed: int
    generator_mistake: bool
    adversary_noise: bool


@dataclass
class Transcript:
    steps: list[StepRecord]
    target_index: int
    horizon: int


@dataclass
class GameResult:
    transcript: Transcript
    total_mistakes: int
    last_mistake_time: int
    noise_count: int
    generator: object = field(default=None, repr=False, compare=False)
    adversary: object = field(default=None, repr=False, compare=False)

    @property
    def steps(self) -> list[StepRecord]:
        return self.transcript.steps

    @property
    def target_index(self) -> int:
        return self.transcript.target_index


def total_mistakes(steps) -> int:
    steps = steps.steps if hasattr(steps, "steps") else steps
    return sum(1 for s in steps if s.generator_mistake)


def last_mistake_time(steps) -> int:
    steps = steps.steps if hasattr(steps, "steps") else steps
    return max((s.t for s in steps if s.generator_mistake), default=0)


def run_game(generator, adversary: Adversary, horizon: int, *, enforce_unique: bool = True,
             target: Optional[int] = None) -> GameResult:
    """Play ``horizon`` steps and score them against the declared target.

    ``enforce_unique=False`` lets the adversary repeat elements (noisy
    exploration); the generator may never repeat a revealed element.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    generated: list[int] = []
    revealed: list[int] = []
    seen: set[int] = set()
    for t in range(1, horizon + 1):
        xhat = generator.propose(list(revealed))
        if xhat in seen:
            raise GeneratorRepeatedElement(f"{generator.name} proposed revealed element {xhat} at t={t}")
        generated.append(xhat)
        x = adversary.reveal(list(generated), list(revealed))
        if enforce_unique and x in seen:
            raise AdversaryRepeatedElement(f"{adversary.name} repeated {x} at t={t}")
        revealed.append(x)
        seen.add(x)
        generator.observe(xhat, x)

    index = adversary.target if adversary.target is not None else target
    if index is None:
        raise TargetNeverDeclared(f"{adversary.name} never declared a target within {horizon} steps")
    lang = adversary.language_class[index]
    steps = [StepRecord(t, xh, x, xh not in lang, x not in lang)
             for t, (xh, x) in enumerate(zip(generated, revealed), start=1)]
    return GameResult(
        transcript=Transcript(steps, index, horizon),
        total_mistakes=total_mistakes(steps),
        last_mistake_time=last_mistake_time(steps),
        noise_count=sum(1 for s in steps if s.adversary_noise),
        generator=generator,
        adversary=adversary,
    )


TRANSCRIPT_COLUMNS = ("t", "generated", "revealed", "generator_mistake", "adversary_noise")


def transcript_csv(result: GameResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TRANSCRIPT_COLUMNS)
    for s in result.steps:
        w.writerow([s.t, s.generated, s.revealed, int(s.generator_mistake), int(s.adversary_noise)])
    return buf.getvalue()


def write_transcript_csv(result: GameResult, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(transcript_csv(result))


def read_transcript_csv(path) -> list[StepRecord]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return [StepRecord(int(r["t"]), int(r["generated"]), int(r["revealed"]),
                       r["generator_mistake"] == "1", r["adversary_noise"] == "1") for r in rows]
