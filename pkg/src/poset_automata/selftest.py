"""Cross-module oracle battery behind the CLI selftest subcommand."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .caps import default_caps
from .classify import classify, is_complete
from .core import complement, determinize, enumerate_language, language_equal_bounded
from .hardness import build_aknn, dag_gadget, dag_reachable, trim_aknn, w_word
from .sampling import random_complete_po_sld, random_dag
from .universality import universal
from .core import accepts


@dataclass
class SuiteResult:
    name: str
    passed: int
    total: int
    failures: list

    @property
    def ok(self) -> bool:
        return self.passed == self.total


def _suite_lemma2(seed: int, samples: int) -> SuiteResult:
    """Confluence and UMS must agree on complete partially ordered
    self-loop deterministic automata (both directions of the rpoNFA/ptNFA
    equivalence)."""
    rng = random.Random(seed)
    failures = []
    for i in range(samples):
        a = random_complete_po_sld(rng)
        rep = classify(a)
        assert rep.complete and rep.partially_ordered and rep.self_loop_deterministic
        if rep.confluent != rep.ums:
            failures.append((i, rep.confluent, rep.ums))
    return SuiteResult("lemma2-equivalence", samples - len(failures), samples, failures)


def _suite_aknn(seed: int, samples: int) -> SuiteResult:
    """Exact-language law for the W-rejecting family at k,n <= 3: the
    complement of A_{k,n} accepts exactly {W_{k,n}}, the state count is
    n(2k+1)+1, and the trimmed variant is language-equal."""
    caps = default_caps()
    failures = []
    cases = [(k, n) for k in (1, 2, 3) for n in (1, 2, 3)]
    for (k, n) in cases:
        a = build_aknn(k, n)
        word = w_word(k, n)
        ok = a.n_states == n * (2 * k + 1) + 1
        comp = complement(determinize(a, caps)).to_nfa()
        ok = ok and enumerate_language(comp, len(word) + 2, caps) == [word]
        ok = ok and classify(a).label == "ptNFA"
        trimmed = trim_aknn(a, k, n)
        if n >= 2:  # at n = 1 no group-6 transitions exist, so nothing is lost
            ok = ok and not is_complete(trimmed)[0]
            ok = ok and classify(trimmed).label == "rpoNFA"
        ok = ok and language_equal_bounded(a, trimmed, len(word) + 2, caps) is None
        if not ok:
            failures.append((k, n))
    return SuiteResult("aknn-exact-language", len(cases) - len(failures), len(cases),
                       failures)


def _suite_dag(seed: int, samples: int) -> SuiteResult:
    """Gadget universality must equal plain BFS reachability; non-universal
    gadgets must reject a^{n-1}."""
    rng = random.Random(seed + 1)
    failures = []
    total = min(samples, 200) or 200
    for i in range(total):
        g = random_dag(rng)
        gadget = dag_gadget(g)
        res = universal(gadget)
        ok = res.universal == dag_reachable(g)
        if not res.universal:
            ok = ok and not accepts(gadget, (0,) * (g.n_nodes - 1))
            ok = ok and not accepts(gadget, res.counterexample)
        if not ok:
            failures.append(i)
    return SuiteResult("dag-gadget", total - len(failures), total, failures)


SUITES: tuple[tuple[str, Callable[[int, int], SuiteResult]], ...] = (
    ("lemma2-equivalence", _suite_lemma2),
    ("aknn-exact-language", _suite_aknn),
    ("dag-gadget", _suite_dag),
)


def run_selftest(seed: int = 0, samples: int = 1000, emit=print) -> bool:
    results = [fn(seed, samples) for _name, fn in SUITES]
    for r in results:
        emit(f"suite {r.name}: {r.passed}/{r.total} pass")
    ok = all(r.ok for r in results)
    emit(f"selftest: {'PASS' if ok else 'FAIL'} ({len(results)} suites)")
    return ok
