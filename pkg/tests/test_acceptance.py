"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as they
complete.  Every tolerance is exact unless stated in the criterion.
"""

import random
import time
from math import comb

from poset_automata.caps import Caps
from poset_automata.classify import classify, is_ptnfa
from poset_automata.core import (Nfa, accepts, complement, determinize,
                                 enumerate_language, language_equal_bounded,
                                 make_alphabet)
from poset_automata.errors import ResourceLimitError
from poset_automata.hardness import (build_aknn, check_suffix_rejection,
                                     dag_gadget, dag_reachable, trim_aknn,
                                     w_word)
from poset_automata.reduction import encode_run, reduce
from poset_automata.sampling import (random_complete_po_sld, random_dag,
                                     random_nfa, random_saturated,
                                     random_unary_po)
from poset_automata.universality import (accepts_with_cutoff, universal,
                                         universal_antichain, universal_brute,
                                         universal_sponfa, universal_state_mask,
                                         universal_subset, universal_unary_po)

from conftest import accepting_machine, rejecting_machine


def report(num, ok, text):
    print(f"ACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {text}")
    assert ok, f"criterion {num} failed: {text}"


def test_criterion_1_exact_language_law():
    """determinize+complement of A_{k,n} accepts exactly {w_word(k,n)}."""
    t0 = time.time()
    for k in (1, 2, 3):
        for n in (1, 2, 3):
            a = build_aknn(k, n)
            word = w_word(k, n)
            assert len(word) == comb(k + n, n) - 1
            comp = complement(determinize(a)).to_nfa()
            assert enumerate_language(comp, len(word) + 2) == [word], (k, n)
    assert len(w_word(3, 3)) == 19
    elapsed = time.time() - t0
    report(1, elapsed < 10.0,
           f"complement language == {{W_k,n}} for (k,n) in {{1,2,3}}^2 "
           f"in {elapsed:.2f}s (< 10 s)")


def test_criterion_2_state_count_formula():
    bad = [(k, n) for k in range(1, 7) for n in range(1, 7)
           if build_aknn(k, n).n_states != n * (2 * k + 1) + 1]
    report(2, not bad, f"A_k,n has n(2k+1)+1 states for all k,n <= 6 (bad: {bad})")


def test_criterion_3_classifier_matrix():
    problems = []
    for k in (1, 2, 3):
        for n in (1, 2, 3):
            a = build_aknn(k, n)
            if classify(a).label != "ptNFA":
                problems.append(("aknn-label", k, n))
            t = trim_aknn(a, k, n)
            if language_equal_bounded(a, t, len(w_word(k, n)) + 2) is not None:
                problems.append(("trim-language", k, n))
            if n >= 2:  # at n=1 nothing kept loses a transition (see notes)
                rep = classify(t)
                if rep.label != "rpoNFA" or rep.complete:
                    problems.append(("trim-label", k, n))
    # the forbidden pattern of a self-loop with an exit under one letter
    fig1 = Nfa(2, make_alphabet(["a1"]), ((0, 0, 0), (0, 0, 1)), (0,), (0, 1),
               ("s0", "s1"))
    rep = classify(fig1)
    if rep.label != "poNFA" or rep.self_loop_deterministic:
        problems.append(("fig1",))
    report(3, not problems,
           f"A_k,n -> ptNFA; trim -> incomplete rpoNFA (n >= 2), language-equal "
           f"to length |W|+2; forbidden-pattern automaton -> poNFA (bad: {problems})")


def test_criterion_4_confluent_iff_ums():
    rng = random.Random(4242)
    samples = 1000
    discrepancies = 0
    for _ in range(samples):
        a = random_complete_po_sld(rng, max_states=8, max_letters=3)
        rep = classify(a)
        assert rep.complete and rep.partially_ordered and rep.self_loop_deterministic
        if rep.confluent != rep.ums:
            discrepancies += 1
    report(4, discrepancies == 0,
           f"confluent <-> UMS on {samples} complete po self-loop-deterministic "
           f"NFAs, {discrepancies} discrepancies")


def test_criterion_5_suffix_rejection():
    bad = [(k, n) for k in (1, 2, 3) for n in (1, 2, 3)
           if not check_suffix_rejection(k, n)]
    report(5, not bad, f"suffix rejection holds for all k,n <= 3 (bad: {bad})")


def test_criterion_6_dag_gadget():
    rng = random.Random(606)
    problems = 0
    non_universal = 0
    for _ in range(200):
        g = random_dag(rng, max_nodes=12)
        gadget = dag_gadget(g)
        res = universal(gadget)
        if res.universal != dag_reachable(g):
            problems += 1
            continue
        if not res.universal:
            non_universal += 1
            # the paper's witness a^{n-1} must be rejected, and the produced
            # counterexample must be rejected and brute-force shortest
            if accepts(gadget, (0,) * (g.n_nodes - 1)):
                problems += 1
            elif accepts(gadget, res.counterexample):
                problems += 1
            elif len(res.counterexample) != len(universal_subset(gadget).counterexample):
                problems += 1
    report(6, problems == 0,
           f"gadget universality == BFS reachability on 200 DAGs "
           f"({non_universal} non-universal, a^(n-1) rejected each time), "
           f"{problems} problems")


def test_criterion_7_universality_oracle_agreement():
    rng = random.Random(707)
    t0 = time.time()
    mismatches = 0
    for _ in range(10**4):
        a = random_nfa(rng, max_states=6, max_letters=3)
        fast = universal_antichain(a)
        oracle = universal_subset(a)
        if fast.universal != oracle.universal:
            mismatches += 1
        elif not fast.universal and (
                len(fast.counterexample) != len(oracle.counterexample)
                or accepts(a, fast.counterexample)):
            mismatches += 1
    elapsed = time.time() - t0
    report(7, mismatches == 0 and elapsed < 60.0,
           f"antichain == subset-construction oracle on 10^4 NFAs, "
           f"{mismatches} mismatches, {elapsed:.1f}s (< 60 s)")


def test_criterion_8_tm_reduction_end_to_end():
    lines = []
    ok = True
    for pval in (1, 2):
        for machine, accepts_input in ((accepting_machine(), True),
                                       (rejecting_machine(), False)):
            art = reduce(machine, "1", pval)
            ptnfa, failures = is_ptnfa(art.automaton)
            ok = ok and ptnfa
            tag = f"p={pval} {'acc' if accepts_input else 'rej'} n={art.n}"
            if accepts_input:
                word = encode_run(machine, "1", pval, art.n)
                u = universal_state_mask(art.automaton)
                rejected = not accepts_with_cutoff(art.automaton, word, u)
                ok = ok and rejected
                pa = art.pair_alphabet
                missed = 0
                for pos in range(len(word)):
                    a_idx, d_orig = pa.first(word[pos]), pa.second(word[pos])
                    for d in range(pa.n_delta):
                        if d == d_orig:
                            continue
                        corrupted = (word[:pos] + (pa.pi_id(a_idx, d),)
                                     + word[pos + 1:])
                        if not accepts_with_cutoff(art.automaton, corrupted, u):
                            missed += 1
                ok = ok and missed == 0
                lines.append(f"{tag}: ptNFA={ptnfa} witness-rejected={rejected} "
                             f"corruptions-missed={missed}/{len(word) * (pa.n_delta - 1)}")
            try:
                res = universal_antichain(art.automaton, Caps(antichain_nodes=10**6))
                ok = ok and res.universal == (not accepts_input)
                lines.append(f"{tag}: full universality verdict={res.universal} "
                             f"expected={not accepts_input} "
                             f"(explored {res.explored} nodes)")
            except ResourceLimitError:
                # criterion scope: full check only where the cap suffices
                lines.append(f"{tag}: antichain cap exceeded, witness+sampling "
                             f"mode only")
    report(8, ok, "; ".join(lines))


def test_criterion_9_sponfa_constant_decider():
    rng = random.Random(909)
    mismatches = 0
    for _ in range(500):
        a = random_saturated(rng, max_states=8, max_letters=3)
        if universal_sponfa(a).universal != universal_subset(a).universal:
            mismatches += 1
    report(9, mismatches == 0,
           f"spoNFA constant-time check == brute force on 500 saturated "
           f"poNFAs, {mismatches} mismatches")


def test_criterion_10_unary_pumping_decider():
    rng = random.Random(1010)
    caps = Caps(enum_len=512, enum_nodes=10**6)
    mismatches = 0
    for _ in range(500):
        a = random_unary_po(rng, max_states=8)
        res = universal_unary_po(a)
        brute = universal_brute(a, 2 ** a.n_states, caps)
        if res.universal != brute.universal:
            mismatches += 1
        elif not res.universal and res.counterexample != brute.counterexample:
            mismatches += 1
    report(10, mismatches == 0,
           f"unary pumping decider == literal brute force (length <= 2^|Q|) "
           f"on 500 unary poNFAs, {mismatches} mismatches")
