"""Two languages sharing a core of n elements, against a committing adversary.

The adversary reveals the shared core for n rounds, then reads the generator's
next output and commits to the language that output misses. Nobody can avoid
that one mistake, and it lands at step n+1, one past the closure dimension,
because the generator moves before the reveal. After the commitment both
generators settle immediately.
"""

from genlimit.adversaries import VennAdversary
from genlimit.algebra import closure_dimension
from genlimit.baselines import UniformBaseline
from genlimit.game import run_game
from genlimit.weighted import Constant, Uniform, WeightedGenerator

for n in (1, 3, 6, 12):
    adv = VennAdversary(n)
    cls = adv.language_class
    hybrid = run_game(WeightedGenerator(cls, Uniform(cls.max_index), Constant(cls.max_index)), adv, n + 8)

    adv = VennAdversary(n)
    base = run_game(UniformBaseline(adv.language_class), adv, n + 8)

    print(f"n={n:>2}  Cdim={closure_dimension(cls):>2}  "
          f"hybrid: {hybrid.total_mistakes} mistake(s), last at {hybrid.last_mistake_time:>2}   "
          f"baseline: {base.total_mistakes} mistake(s), last at {base.last_mistake_time:>2}")
