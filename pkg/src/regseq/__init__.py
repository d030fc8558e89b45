"""Analysis of k-automatic and k-regular sequences.

Evaluate sequences from automata and linear representations, verify and
discover recurrences among kernel subsequences, and cross-check counts
of unbordered factors against brute-force enumeration.
"""

from .kernels import IMPLEMENTATION as KERNELS
from .linrep import LinRep, eval_word, example_fixture, tm_fixture
from .relations import Identity, KernelTerm, RecurrenceSystem, discover, verify
from .sequences import Dfao, Morphism, sequence_prefix
from .words import Word, from_base, is_unbordered, to_base

__version__ = "0.1.0"
