"""A binary-tree class where every generator can be forced into log2 n mistakes.

Each round the adversary splits the surviving languages in half and reveals
an element from the half the generator's output did not belong to. The weighted
hybrid matches this exactly, and the brute-force minimax oracle agrees on the
small instances.
"""

from fractions import Fraction

from genlimit.adversaries import LittlestoneAdversary
from genlimit.classes import littlestone
from genlimit.game import run_game
from genlimit.oracle import minimax_oracle
from genlimit.weighted import Constant, Uniform, WeightedGenerator, floor_log2

for n in (2, 4, 8, 16):
    adv = LittlestoneAdversary(n)
    gen = WeightedGenerator(adv.language_class, Uniform(n), Constant(n))
    r = run_game(gen, adv, 32)
    marks = "".join("x" if s.generator_mistake else "." for s in r.steps[:12])
    print(f"n={n:>2}  forced {r.total_mistakes} = log2 n {floor_log2(Fraction(n))}   first rounds {marks}")

for n in (2, 4):
    print(f"oracle value for n={n}: {minimax_oracle(littlestone(n), 6)}")
