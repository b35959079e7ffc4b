"""Structural class detection with violation witnesses.

Predicates: completeness, partial order, self-loop determinism, saturation,
confluence, and the unique-maximal-state (UMS) property.  The ptNFA verdict
is always derived from complete + partially ordered + UMS, never from
confluence, so the equivalence "complete confluent self-loop deterministic
poNFA = ptNFA" stays testable as a theorem.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .core import Nfa, strongly_connected_components
from .errors import InputError

LABELS = ("NFA", "poNFA", "rpoNFA", "spoNFA", "ptNFA", "DFA", "poDFA", "confluent-poDFA")


@dataclass(frozen=True)
class ClassReport:
    complete: bool
    partially_ordered: bool
    self_loop_deterministic: bool
    saturated: bool
    confluent: bool
    ums: bool
    deterministic: bool
    label: str
    witnesses: dict = field(default_factory=dict)


def is_complete(a: Nfa) -> tuple[bool, Optional[tuple[int, int]]]:
    """True iff every (state, letter) has a successor; witness is the first
    failing pair in (state, letter) order."""
    succ = a.succ
    for q in range(a.n_states):
        for x in range(a.n_letters):
            if (q, x) not in succ:
                return False, (q, x)
    return True, None


def is_partially_ordered(a: Nfa) -> tuple[bool, Optional[tuple[int, int]]]:
    """True iff the only cycles are self-loops; witness is a mutually
    reachable pair of distinct states."""
    for comp in strongly_connected_components(a):
        if len(comp) > 1:
            return False, (comp[0], comp[1])
    return True, None


def is_self_loop_deterministic(a: Nfa) -> tuple[bool, Optional[tuple[int, int, int, int]]]:
    """No state may combine a self-loop and an exit under one letter;
    witness is (q, letter, q, exit-target)."""
    for (q, x), targets in sorted(a.succ.items()):
        if q in targets and len(targets) > 1:
            other = next(r for r in targets if r != q)
            return False, (q, x, q, other)
    return True, None


def is_saturated(a: Nfa) -> tuple[bool, Optional[tuple[int, int]]]:
    """Self-loop under every letter in every state; witness is the first
    (state, letter) without one."""
    succ = a.succ
    for q in range(a.n_states):
        for x in range(a.n_letters):
            if q not in succ.get((q, x), ()):
                return False, (q, x)
    return True, None


def is_deterministic(a: Nfa) -> bool:
    if len(a.initial) != 1:
        return False
    return all(len(t) <= 1 for t in a.succ.values())


def self_loop_letters(a: Nfa) -> list[set[int]]:
    """Per state, the letters labeling self-loops (the alphabet Sigma(q))."""
    out: list[set[int]] = [set() for _ in range(a.n_states)]
    for (q, x), targets in a.succ.items():
        if q in targets:
            out[q].add(x)
    return out


# ---------------------------------------------------------------------------
# confluence


def _pairs_meet(a: Nfa, s: int, t: int, letters: tuple[int, int],
                memo: dict) -> bool:
    """Does some w over ``letters`` send {s} and {t} to intersecting sets?
    Fixpoint over unordered pairs of state sets; finite, hence terminating."""
    start = (1 << s, 1 << t) if s <= t else (1 << t, 1 << s)
    known = memo.get(start)
    if known is not None:
        return known
    seen = {start}
    queue = deque([start])
    alphabet = sorted(set(letters))
    while queue:
        (ms, mt) = queue.popleft()
        if ms & mt:
            memo[start] = True
            return True
        if memo.get((ms, mt)) is True:
            memo[start] = True
            return True
        for x in alphabet:
            ns, nt = a.step_mask(ms, x), a.step_mask(mt, x)
            if not ns or not nt:
                continue
            pair = (ns, nt) if ns <= nt else (nt, ns)
            if pair not in seen:
                seen.add(pair)
                queue.append(pair)
    for pair in seen:
        memo[pair] = False
    return False


def _confluent_raw(a: Nfa) -> tuple[bool, Optional[tuple[int, int, int, int, int]]]:
    succ = a.succ
    for q in range(a.n_states):
        for ax in range(a.n_letters):
            sa = succ.get((q, ax), ())
            if not sa:
                continue
            for bx in range(ax, a.n_letters):
                sb = succ.get((q, bx), ())
                if not sb:
                    continue
                memo: dict = {}
                for s in sa:
                    for t in sb:
                        if s == t:
                            continue  # w = epsilon already meets
                        if not _pairs_meet(a, s, t, (ax, bx), memo):
                            return False, (q, ax, bx, s, t)
    return True, None


def is_confluent(a: Nfa) -> tuple[bool, Optional[tuple[int, int, int, int, int]]]:
    """Confluence for NFAs: for every q and letters a, b (possibly equal),
    successors s of q under a and t under b admit w in {a,b}* with
    sw and tw intersecting.  Requires a partially ordered input."""
    po, _ = is_partially_ordered(a)
    if not po:
        raise InputError("confluence check requires a partially ordered automaton")
    return _confluent_raw(a)


# ---------------------------------------------------------------------------
# UMS property


def _ums_analysis(a: Nfa, gamma: frozenset[int]):
    """Weak components of G(A, gamma) plus each component's maximal states.

    A state is maximal when it has no gamma-transition to a different state
    (then nothing else is reachable from it inside the subgraph)."""
    parent = list(range(a.n_states))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    has_exit = [False] * a.n_states
    for (q, x, r) in a.transitions:
        if x in gamma:
            if q != r:
                has_exit[q] = True
                ra, rb = find(q), find(r)
                if ra != rb:
                    parent[ra] = rb
    members: dict[int, list[int]] = {}
    for q in range(a.n_states):
        members.setdefault(find(q), []).append(q)
    comp_of = {}
    maximal: dict[int, tuple[int, ...]] = {}
    for root, states in members.items():
        for q in states:
            comp_of[q] = root
        maximal[root] = tuple(q for q in states if not has_exit[q])
    return comp_of, members, maximal


def is_ums(a: Nfa) -> tuple[bool, Optional[tuple]]:
    """Unique-maximal-state property: every q is the unique maximal state of
    the weakly connected component of G(A, Sigma(q)) containing q.  Witness:
    (q, component states, maximal states of that component)."""
    loops = self_loop_letters(a)
    cache: dict[frozenset[int], tuple] = {}
    for q in range(a.n_states):
        gamma = frozenset(loops[q])
        if gamma not in cache:
            cache[gamma] = _ums_analysis(a, gamma)
        comp_of, members, maximal = cache[gamma]
        root = comp_of[q]
        if maximal[root] != (q,):
            return False, (q, tuple(members[root]), maximal[root])
    return True, None


def is_ptnfa(a: Nfa) -> tuple[bool, dict]:
    """Complete + partially ordered + UMS; returns failures keyed by flag."""
    failures = {}
    ok, w = is_complete(a)
    if not ok:
        failures["complete"] = w
    ok, w = is_partially_ordered(a)
    if not ok:
        failures["partially_ordered"] = w
    ok, w = is_ums(a)
    if not ok:
        failures["ums"] = w
    return not failures, failures


# ---------------------------------------------------------------------------
# full report


def _label(complete: bool, po: bool, sld: bool, saturated: bool, confluent: bool,
           ums: bool, deterministic: bool) -> str:
    """Most specific class first.  spoNFA and ptNFA outrank the DFA-family
    labels (a deterministic member of those classes still reports the
    class); the DFA family then covers the remaining deterministic cases."""
    if po and saturated:
        return "spoNFA"
    if po and complete and ums:
        return "ptNFA"
    if deterministic:
        if po:
            return "confluent-poDFA" if confluent else "poDFA"
        return "DFA"
    if po:
        return "rpoNFA" if sld else "poNFA"
    return "NFA"


def classify(a: Nfa) -> ClassReport:
    witnesses: dict = {}
    complete, w = is_complete(a)
    if not complete:
        witnesses["complete"] = w
    po, w = is_partially_ordered(a)
    if not po:
        witnesses["partially_ordered"] = w
    sld, w = is_self_loop_deterministic(a)
    if not sld:
        witnesses["self_loop_deterministic"] = w
    saturated, w = is_saturated(a)
    if not saturated:
        witnesses["saturated"] = w
    confluent, w = _confluent_raw(a)
    if not confluent:
        witnesses["confluent"] = w
    ums, w = is_ums(a)
    if not ums:
        witnesses["ums"] = w
    deterministic = is_deterministic(a)
    label = _label(complete, po, sld, saturated, confluent, ums, deterministic)
    return ClassReport(complete, po, sld, saturated, confluent, ums,
                       deterministic, label, witnesses)


def _fmt_witness(a: Nfa, flag: str, w: tuple) -> str:
    s = a.state_names
    x = lambda i: a.alphabet[i].name
    if flag in ("complete", "saturated"):
        return f"{s[w[0]]} {x(w[1])}"
    if flag == "partially_ordered":
        return f"{s[w[0]]} {s[w[1]]}"
    if flag == "self_loop_deterministic":
        return f"{s[w[0]]} {x(w[1])} {s[w[2]]} {s[w[3]]}"
    if flag == "confluent":
        return f"{s[w[0]]} {x(w[1])} {x(w[2])} {s[w[3]]} {s[w[4]]}"
    if flag == "ums":
        q, comp, maxes = w
        return (f"{s[q]} component: {' '.join(s[i] for i in comp)}"
                f" maximal: {' '.join(s[i] for i in maxes)}")
    return " ".join(map(str, w))


def format_report(a: Nfa, report: ClassReport) -> str:
    """Line-oriented serialization with a stable field order."""
    flags = [
        ("complete", report.complete),
        ("partially_ordered", report.partially_ordered),
        ("self_loop_deterministic", report.self_loop_deterministic),
        ("saturated", report.saturated),
        ("confluent", report.confluent),
        ("ums", report.ums),
    ]
    lines = []
    for name, value in flags:
        line = f"{name}: {'true' if value else 'false'}"
        if not value and name in report.witnesses:
            line += f" [witness: {_fmt_witness(a, name, report.witnesses[name])}]"
        lines.append(line)
    lines.append(f"class: {report.label}")
    return "\n".join(lines) + "\n"
