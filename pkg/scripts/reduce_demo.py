#!/usr/bin/env python3
"""Walk through the DTM-to-ptNFA universality reduction on two micro
machines (one accepting, one looping) at space bound 1.

Usage: python scripts/reduce_demo.py [pval]
"""

import sys
import time

from poset_automata.classify import is_ptnfa
from poset_automata.dtm import Dtm
from poset_automata.reduction import encode_run, reduce
from poset_automata.universality import (accepts_with_cutoff,
                                         universal_antichain,
                                         universal_state_mask)


def machines():
    base = dict(states=("q0", "qf"), initial="q0", accepting="qf",
                tape_alphabet=("_", "1"), input_alphabet=("1",), blank="_")
    accept = Dtm(rules=(("q0", "1", "qf", "1", "S"), ("q0", "_", "q0", "_", "S")),
                 **base)
    loop = Dtm(rules=(("q0", "1", "q0", "1", "S"), ("q0", "_", "q0", "_", "S")),
               **base)
    return (("accepting", accept), ("looping", loop))


def main():
    pval = int(sys.argv[1]) if len(sys.argv) > 1 else 1
    for label, machine in machines():
        print(f"== {label} machine, input '1', space bound {pval} ==")
        t0 = time.time()
        art = reduce(machine, "1", pval)
        print(f"built in {time.time() - t0:.2f}s: n={art.n}, "
              f"{art.automaton.n_states} states, "
              f"{len(art.automaton.alphabet)} pair letters")
        for name, offset, count in art.components:
            print(f"  {name:<8} offset={offset:<6} states={count}")
        ok, failures = is_ptnfa(art.automaton)
        print(f"is_ptnfa: {ok}")
        if label == "accepting":
            word = encode_run(machine, "1", pval, art.n)
            u = universal_state_mask(art.automaton)
            print(f"run encoding: {len(word)} letters, "
                  f"rejected={not accepts_with_cutoff(art.automaton, word, u)}")
        t0 = time.time()
        res = universal_antichain(art.automaton)
        print(f"universal: {res.universal} (expected {label != 'accepting'}), "
              f"{res.explored} nodes in {time.time() - t0:.2f}s")
        print()


if __name__ == "__main__":
    main()
