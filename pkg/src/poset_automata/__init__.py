"""Toolkit for partially ordered NFAs: class detection, class-specialized
universality deciders, and generators for the hardness constructions."""

from .caps import Caps, default_caps
from .classify import (ClassReport, classify, format_report, is_complete,
                       is_confluent, is_partially_ordered, is_ptnfa,
                       is_saturated, is_self_loop_deterministic, is_ums)
from .core import (Dfa, Letter, Nfa, ReachOrder, Word, accepts, complement,
                   complete_nfa, determinize, enumerate_language, format_word,
                   language_equal_bounded, parse_automaton, parse_word,
                   print_automaton, product, reach_order, step, union_disjoint)
from .dtm import Dtm, RunRecord, parse_dtm, simulate_dtm
from .errors import InputError, ResourceLimitError, SimulationError
from .hardness import (Dag, build_aknn, check_suffix_rejection, dag_gadget,
                       dag_reachable, parse_dag, sigma_alphabet, trim_aknn,
                       w_word)
from .reduction import (PairAlphabet, ReductionArtifact, build_part_a,
                        build_part_b, build_part_c, choose_n, encode_run,
                        expected_next, pair_alphabet, reduce)
from .universality import (UniversalityResult, format_result, universal,
                           universal_antichain, universal_brute,
                           universal_sponfa, universal_subset,
                           universal_unary_po)
