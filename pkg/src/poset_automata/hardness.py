"""Generators for the explicit hardness constructions.

* ``w_word(k, n)``: the recursively defined word of length C(k+n, n) - 1.
* ``build_aknn(k, n)``: the ptNFA over n letters with n(2k+1)+1 states whose
  unique non-accepted word is W_{k,n}.
* ``trim_aknn``: the incomplete rpoNFA variant accepting the same language,
  obtained by deleting the states (k+1;i)..(2k;i).
* ``check_suffix_rejection``: for every suffix a_i w of W_{k,n}, w must be
  rejected from state (k+1;i).
* ``dag_gadget``: the unary ptNFA that is universal iff a target node is
  reachable from a source node in a DAG.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .builder import NfaBuilder
from .caps import Caps, default_caps
from .core import Letter, Nfa, Word, make_alphabet, step
from .errors import InputError, ResourceLimitError


def sigma_alphabet(n: int) -> tuple[Letter, ...]:
    """The n-letter alphabet a1..an."""
    return make_alphabet([f"a{i}" for i in range(1, n + 1)])


def w_word(k: int, n: int, caps: Caps | None = None) -> Word:
    """W_{k,1} = a1^k, W_{1,n} = a1 a2 .. an, and
    W_{k,n} = W_{k,n-1} a_n W_{k-1,n}; empty whenever k*n = 0.
    Letter a_i is represented by id i-1."""
    caps = caps or default_caps()
    if k < 0 or n < 0:
        raise InputError("k and n must be nonnegative")
    if k and n and comb(k + n, n) - 1 > caps.word_len:
        raise ResourceLimitError(
            f"|W_{{{k},{n}}}| = C({k + n},{n})-1 exceeds word_len cap ({caps.word_len})")

    @lru_cache(maxsize=None)
    def build(kk: int, nn: int) -> Word:
        if kk == 0 or nn == 0:
            return ()
        if nn == 1:
            return (0,) * kk
        if kk == 1:
            return tuple(range(nn))
        return build(kk, nn - 1) + (nn - 1,) + build(kk - 1, nn)

    return build(k, n)


# ---------------------------------------------------------------------------
# the A_{k,n} family


def _st(i: int, m: int) -> str:
    return f"({i};{m})"


def build_aknn(k: int, n: int) -> Nfa:
    """The ptNFA over a1..an that accepts exactly Sigma_n^* minus {W_{k,n}}.

    Level m holds states (0;m)..(2k;m); (0;m) is initial and (i;m) with
    i < k is accepting, plus the accepting sink ``max``.  Level 1 is the
    a1-chain DFA with its k extra states; each later level m adds:
      1. self-loops on (i;m) under every a_j with j < m,
      2. the a_m-chain (i;m) -> (i+1;m) skipping i = k,
      3. (k;m), (2k;m) and max itself to max under a_m,
      4. (i;m) -> (i+1;m') under a_m for i < k and every lower level m',
      5. accepting lower-level states to max under a_m,
      6. non-accepting lower-level states to (k+1;m) under a_m.
    """
    if k < 1 or n < 1:
        raise InputError("A_{k,n} needs k >= 1 and n >= 1")
    b = NfaBuilder(sigma_alphabet(n))
    for m in range(1, n + 1):
        for i in range(2 * k + 1):
            b.state(_st(i, m), initial=(i == 0), accepting=(i < k))
    b.state("max", accepting=True)
    for m in range(1, n + 1):
        x = m - 1  # letter a_m
        for i in range(2 * k):
            if i != k:
                b.arc(_st(i, m), x, _st(i + 1, m))
        b.arc(_st(k, m), x, "max")
        b.arc(_st(2 * k, m), x, "max")
        b.arc("max", x, "max")
        for j in range(m - 1):
            for i in range(2 * k + 1):
                b.arc(_st(i, m), j, _st(i, m))
        for i in range(k):
            for mm in range(1, m):
                b.arc(_st(i, m), x, _st(i + 1, mm))
        for mm in range(1, m):
            for i in range(2 * k + 1):
                if i < k:
                    b.arc(_st(i, mm), x, "max")
                else:
                    b.arc(_st(i, mm), x, _st(k + 1, m))
    return b.build()


def trim_aknn(a: Nfa, k: int, n: int) -> Nfa:
    """Corollary-style trimming: delete states (k+1;i)..(2k;i) for every
    level i with their incident transitions.  Language-equivalent but no
    longer complete."""
    if a != build_aknn(k, n):
        raise InputError("trim_aknn expects an unmodified build_aknn output")
    removed = {a.state_index[_st(i, m)]
               for m in range(1, n + 1) for i in range(k + 1, 2 * k + 1)}
    keep = [q for q in range(a.n_states) if q not in removed]
    remap = {q: j for j, q in enumerate(keep)}
    trans = tuple((remap[q], x, remap[r]) for (q, x, r) in a.transitions
                  if q not in removed and r not in removed)
    return Nfa(len(keep), a.alphabet, trans,
               tuple(remap[q] for q in a.initial if q not in removed),
               tuple(remap[q] for q in a.accepting if q not in removed),
               tuple(a.state_names[q] for q in keep))


def check_suffix_rejection(k: int, n: int, caps: Caps | None = None) -> bool:
    """For every suffix a_i w of W_{k,n}: simulating w from {(k+1;i)} must
    end outside the accepting set."""
    a = build_aknn(k, n)
    word = w_word(k, n, caps)
    for t, letter in enumerate(word):
        level = letter + 1
        frontier: tuple[int, ...] = (a.state_index[_st(k + 1, level)],)
        for x in word[t + 1:]:
            frontier = step(a, frontier, x)
        if set(frontier) & a.accepting_set:
            return False
    return True


# ---------------------------------------------------------------------------
# unary DAG-reachability gadget


@dataclass(frozen=True)
class Dag:
    """Directed acyclic graph with a source and a target node."""

    n_nodes: int
    edges: tuple[tuple[int, int], ...]
    source: int
    target: int

    def __post_init__(self):
        if self.n_nodes <= 0:
            raise InputError("DAG needs at least one node")
        object.__setattr__(self, "edges", tuple(sorted(set(self.edges))))
        for (u, v) in self.edges:
            if not (0 <= u < self.n_nodes and 0 <= v < self.n_nodes):
                raise InputError(f"edge {(u, v)} out of range")
        for node in (self.source, self.target):
            if not 0 <= node < self.n_nodes:
                raise InputError(f"node {node} out of range")
        # Kahn's algorithm; leftovers mean a cycle
        indeg = [0] * self.n_nodes
        succ: dict[int, list[int]] = {}
        for (u, v) in self.edges:
            indeg[v] += 1
            succ.setdefault(u, []).append(v)
        queue = deque(q for q in range(self.n_nodes) if indeg[q] == 0)
        seen = 0
        while queue:
            u = queue.popleft()
            seen += 1
            for v in succ.get(u, ()):
                indeg[v] -= 1
                if indeg[v] == 0:
                    queue.append(v)
        if seen != self.n_nodes:
            raise InputError("graph has a cycle; a DAG is required")


def parse_dag(text: str) -> Dag:
    """Line format: ``nodes: n``, repeated ``edge: u v``, ``source: s``,
    ``target: t``; '#' starts a comment token."""
    n_nodes = source = target = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        for i, tok in enumerate(tokens):
            if tok.startswith("#"):
                tokens = tokens[:i]
                break
        if not tokens:
            continue
        head, rest = tokens[0], tokens[1:]
        try:
            if head == "nodes:" and len(rest) == 1:
                n_nodes = int(rest[0])
            elif head == "edge:" and len(rest) == 2:
                edges.append((int(rest[0]), int(rest[1])))
            elif head == "source:" and len(rest) == 1:
                source = int(rest[0])
            elif head == "target:" and len(rest) == 1:
                target = int(rest[0])
            else:
                raise InputError(f"line {lineno}: cannot parse {raw!r}")
        except ValueError:
            raise InputError(f"line {lineno}: expected integers in {raw!r}") from None
    if n_nodes is None or source is None or target is None:
        raise InputError("DAG file needs nodes:, source: and target: lines")
    return Dag(n_nodes, tuple(edges), source, target)


def dag_reachable(g: Dag) -> bool:
    """Plain BFS reachability; the independent oracle for the gadget."""
    succ: dict[int, list[int]] = {}
    for (u, v) in g.edges:
        succ.setdefault(u, []).append(v)
    seen = {g.source}
    queue = deque([g.source])
    while queue:
        u = queue.popleft()
        if u == g.target:
            return True
        for v in succ.get(u, ()):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return g.target in seen


def dag_gadget(g: Dag) -> Nfa:
    """Unary ptNFA with 2n-1 states: node states (all accepting) carry the
    DAG edges, a non-accepting chain f1..f_{n-1} catches departures, the
    target keeps the only self-loop, and the chain re-enters the target.
    Universal iff the target is reachable from the source."""
    n = g.n_nodes
    b = NfaBuilder(make_alphabet(["a"]))
    for v in range(n):
        b.state(f"n{v}", initial=(v == g.source), accepting=True)
    for i in range(1, n):
        b.state(f"f{i}")
    for (u, v) in g.edges:
        b.arc(f"n{u}", 0, f"n{v}")
    for v in range(n):
        if v != g.target:
            b.arc(f"n{v}", 0, "f1")
    for i in range(1, n - 1):
        b.arc(f"f{i}", 0, f"f{i + 1}")
    b.arc(f"n{g.target}", 0, f"n{g.target}")
    if n > 1:
        b.arc(f"f{n - 1}", 0, f"n{g.target}")
    return b.build()
