"""Generation in the limit: exact language algebra, generators, adversaries and bound checks."""

from .algebra import (FiniteSet, Language, LanguageClass, PairCode, Progression, SetExpr,
                      classify_size, closure_dimension, contains, intersect, intersect_all,
                      nonuniform_complexity, smallest_unseen)
from .adversaries import (Enumerator, LittlestoneAdversary, NoisyAdversary, TradeoffAdversary,
                          VennAdversary)
from .baselines import ModifiedGreedy, UniformBaseline, greedy_bounds
from .bounds import BoundCheck, BoundReport, Scenario, reports_csv, sweep, verify
from .classes import littlestone, random_class, tradeoff, venn
from .config import ConfigError
from .game import GameResult, run_game, transcript_csv, write_transcript_csv
from .lfd import LfdGenerator, LfdLearner, reduce_generation_to_lfd
from .oracle import minimax_oracle
from .weighted import (Constant, InverseSquare, PowerOfTwo, Uniform, WeightedGenerator,
                       f_inverse, mistake_bound_formula)

__version__ = "0.1.0"
