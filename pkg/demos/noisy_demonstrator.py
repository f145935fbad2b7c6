"""Learning from a demonstrator that sometimes shows elements outside the target.

With gamma = 1 the demonstration learner is the weighted generator in disguise,
so the transcripts match byte for byte. With gamma = 1/2 a noisy reveal only
halves a language's weight, and the mistake count grows linearly in the noise.
"""

from fractions import Fraction

from genlimit.adversaries import LittlestoneAdversary, NoisyAdversary
from genlimit.game import run_game, transcript_csv
from genlimit.lfd import noisy_finite_bound, reduce_generation_to_lfd
from genlimit.weighted import Constant, Uniform, WeightedGenerator

n = 8
adv = LittlestoneAdversary(n)
a = run_game(WeightedGenerator(adv.language_class, Uniform(n), Constant(n)), adv, 30)
adv = LittlestoneAdversary(n)
b = run_game(reduce_generation_to_lfd(adv.language_class, 1, Uniform(n), Constant(n)), adv, 30)
print("gamma=1 transcript identical to the weighted generator:", transcript_csv(a) == transcript_csv(b))

half = Fraction(1, 2)
for noise in (0, 1, 2, 4, 8):
    adv = NoisyAdversary(LittlestoneAdversary(n), range(1, noise + 1))
    gen = reduce_generation_to_lfd(adv.language_class, half, Uniform(n), Constant(n))
    r = run_game(gen, adv, 48)
    bound, _ = noisy_finite_bound(n, half, r.noise_count)
    print(f"noise={noise}  mistakes={r.total_mistakes:>2}  bound={bound}")
