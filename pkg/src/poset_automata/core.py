"""Representation and basic semantics of NFAs.

State sets are kept as sorted index tuples (or int bitmasks in the search
routines) so that every operation is deterministic and outputs are
diff-stable.  All values are immutable after construction; operations are
pure functions.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .caps import Caps, default_caps
from .errors import InputError, ResourceLimitError

Word = tuple[int, ...]  # letter ids

_NAME_RE = re.compile(r"^[^\s#][^\s]*$")


def _check_name(name: str, kind: str) -> None:
    if not _NAME_RE.match(name):
        raise InputError(f"bad {kind} name {name!r}: names are nonempty, whitespace-free "
                         "and must not start with '#'")


@dataclass(frozen=True)
class Letter:
    """One alphabet symbol: a small index plus its display name."""

    id: int
    name: str


def make_alphabet(names: Sequence[str]) -> tuple[Letter, ...]:
    seen = set()
    for name in names:
        _check_name(name, "letter")
        if name in seen:
            raise InputError(f"duplicate letter name {name!r}")
        seen.add(name)
    return tuple(Letter(i, n) for i, n in enumerate(names))


@dataclass(frozen=True)
class Nfa:
    """A = (Q, Sigma, transitions, I, F) with named states.

    Transitions are stored duplicate-free and sorted by (src, letter, dst).
    """

    n_states: int
    alphabet: tuple[Letter, ...]
    transitions: tuple[tuple[int, int, int], ...]
    initial: tuple[int, ...]
    accepting: tuple[int, ...]
    state_names: tuple[str, ...]

    def __post_init__(self):
        if self.n_states <= 0:
            raise InputError("automaton needs at least one state")
        if len(self.state_names) != self.n_states:
            raise InputError("state name count does not match state count")
        seen = set()
        for name in self.state_names:
            _check_name(name, "state")
            if name in seen:
                raise InputError(f"duplicate state name {name!r}")
            seen.add(name)
        for i, letter in enumerate(self.alphabet):
            if letter.id != i:
                raise InputError("alphabet letter ids must be 0..len-1 in order")
        n, L = self.n_states, len(self.alphabet)
        object.__setattr__(self, "transitions",
                           tuple(sorted(set(map(tuple, self.transitions)))))
        for (q, a, r) in self.transitions:
            if not (0 <= q < n and 0 <= r < n and 0 <= a < L):
                raise InputError(f"transition {(q, a, r)} out of range")
        object.__setattr__(self, "initial", tuple(sorted(set(self.initial))))
        object.__setattr__(self, "accepting", tuple(sorted(set(self.accepting))))
        for q in self.initial + self.accepting:
            if not 0 <= q < n:
                raise InputError(f"state index {q} out of range")

    # -- derived lookups ------------------------------------------------

    @property
    def n_letters(self) -> int:
        return len(self.alphabet)

    @cached_property
    def succ(self) -> dict[tuple[int, int], tuple[int, ...]]:
        table: dict[tuple[int, int], list[int]] = {}
        for (q, a, r) in self.transitions:
            table.setdefault((q, a), []).append(r)
        return {k: tuple(v) for k, v in table.items()}

    @cached_property
    def initial_set(self) -> frozenset[int]:
        return frozenset(self.initial)

    @cached_property
    def accepting_set(self) -> frozenset[int]:
        return frozenset(self.accepting)

    @cached_property
    def letter_index(self) -> dict[str, int]:
        return {l.name: l.id for l in self.alphabet}

    @cached_property
    def state_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.state_names)}

    # -- bitmask view, used by the search routines ----------------------

    @cached_property
    def initial_mask(self) -> int:
        return sum(1 << q for q in self.initial)

    @cached_property
    def accepting_mask(self) -> int:
        return sum(1 << q for q in self.accepting)

    @cached_property
    def _succ_masks(self) -> dict[tuple[int, int], int]:
        return {}

    def succ_mask(self, q: int, a: int) -> int:
        cache = self._succ_masks
        key = (q, a)
        m = cache.get(key)
        if m is None:
            m = 0
            for r in self.succ.get(key, ()):
                m |= 1 << r
            cache[key] = m
        return m

    def step_mask(self, mask: int, a: int) -> int:
        out = 0
        while mask:
            low = mask & -mask
            mask ^= low
            out |= self.succ_mask(low.bit_length() - 1, a)
        return out

    def states_of_mask(self, mask: int) -> tuple[int, ...]:
        out = []
        while mask:
            low = mask & -mask
            mask ^= low
            out.append(low.bit_length() - 1)
        return tuple(out)


def mask_of(states: Iterable[int]) -> int:
    return sum(1 << q for q in set(states))


@dataclass(frozen=True)
class ReachOrder:
    """Reflexive-transitive reachability matrix, one bitmask row per state."""

    rows: tuple[int, ...]
    is_partial_order: bool

    def reaches(self, p: int, q: int) -> bool:
        return bool(self.rows[p] >> q & 1)


@dataclass(frozen=True)
class Dfa:
    """Deterministic automaton: one initial state, at most one successor per
    (state, letter).  Missing successors are allowed only when ``partial``."""

    n_states: int
    alphabet: tuple[Letter, ...]
    table: tuple[tuple[Optional[int], ...], ...]
    initial: int
    accepting: tuple[int, ...]
    state_names: tuple[str, ...]
    partial: bool = False

    def __post_init__(self):
        if self.n_states <= 0:
            raise InputError("automaton needs at least one state")
        if len(self.table) != self.n_states:
            raise InputError("transition table must have one row per state")
        holes = False
        for row in self.table:
            if len(row) != len(self.alphabet):
                raise InputError("transition table row width must match alphabet")
            for r in row:
                if r is None:
                    holes = True
                elif not 0 <= r < self.n_states:
                    raise InputError(f"transition target {r} out of range")
        if holes and not self.partial:
            raise InputError("missing successors in a DFA not marked partial")
        if not 0 <= self.initial < self.n_states:
            raise InputError("initial state out of range")
        object.__setattr__(self, "accepting", tuple(sorted(set(self.accepting))))

    @property
    def n_letters(self) -> int:
        return len(self.alphabet)

    def to_nfa(self) -> Nfa:
        trans = [(q, a, r) for q, row in enumerate(self.table)
                 for a, r in enumerate(row) if r is not None]
        return Nfa(self.n_states, self.alphabet, tuple(trans), (self.initial,),
                   self.accepting, self.state_names)


# ---------------------------------------------------------------------------
# basic semantics


def step(a: Nfa, states: Iterable[int], letter: int) -> tuple[int, ...]:
    """Image of a state set under one letter: union of q.letter, sorted."""
    if not 0 <= letter < a.n_letters:
        raise InputError(f"letter id {letter} not in alphabet of size {a.n_letters}")
    out: set[int] = set()
    succ = a.succ
    for q in states:
        if not 0 <= q < a.n_states:
            raise InputError(f"state index {q} out of range")
        out.update(succ.get((q, letter), ()))
    return tuple(sorted(out))


def run(a: Nfa, word: Sequence[int]) -> frozenset[int]:
    """Set of states reachable from the initial set under ``word``."""
    current: Iterable[int] = a.initial
    for x in word:
        current = step(a, current, x)
        if not current:
            return frozenset()
    return frozenset(current)


def accepts(a: Nfa, word: Sequence[int]) -> bool:
    for x in word:
        if not 0 <= x < a.n_letters:
            raise InputError(f"letter id {x} not in alphabet of size {a.n_letters}")
    return bool(run(a, word) & a.accepting_set)


def reach_order(a: Nfa) -> ReachOrder:
    """Reflexive-transitive closure of the one-step successor relation."""
    rows = [1 << q for q in range(a.n_states)]
    for (q, _x, r) in a.transitions:
        rows[q] |= 1 << r
    changed = True
    while changed:
        changed = False
        for q in range(a.n_states):
            acc = rows[q]
            rest = acc & ~(1 << q)
            while rest:
                low = rest & -rest
                rest ^= low
                acc |= rows[low.bit_length() - 1]
            if acc != rows[q]:
                rows[q] = acc
                changed = True
    po = True
    for p in range(a.n_states):
        row = rows[p] & ~(1 << p)
        while row:
            low = row & -row
            row ^= low
            q = low.bit_length() - 1
            if rows[q] >> p & 1:
                po = False
                row = 0
        if not po:
            break
    return ReachOrder(tuple(rows), po)


def strongly_connected_components(a: Nfa) -> list[tuple[int, ...]]:
    """Tarjan SCCs in deterministic order (iterative)."""
    succ: dict[int, list[int]] = {q: [] for q in range(a.n_states)}
    for (q, _x, r) in a.transitions:
        if r != q:
            succ[q].append(r)
    index = {}
    low = {}
    on_stack = set()
    stack: list[int] = []
    sccs: list[tuple[int, ...]] = []
    counter = 0
    for root in range(a.n_states):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            node, pi = work[-1]
            if pi == 0:
                index[node] = low[node] = counter
                counter += 1
                stack.append(node)
                on_stack.add(node)
            advanced = False
            for i in range(pi, len(succ[node])):
                nxt = succ[node][i]
                if nxt not in index:
                    work[-1] = (node, i + 1)
                    work.append((nxt, 0))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                sccs.append(tuple(sorted(comp)))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
    return sccs


# ---------------------------------------------------------------------------
# determinization, boolean operations


def determinize(a: Nfa, caps: Caps | None = None) -> Dfa:
    """Accessible subset construction; the empty subset is kept as an explicit
    dead state so the result is always total."""
    caps = caps or default_caps()
    start = frozenset(a.initial)
    ids: dict[frozenset[int], int] = {start: 0}
    order: list[frozenset[int]] = [start]
    rows: list[list[int]] = []
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        row = []
        for x in range(a.n_letters):
            img = frozenset(step(a, subset, x))
            node = ids.get(img)
            if node is None:
                if len(ids) >= caps.det_states:
                    raise ResourceLimitError(
                        f"determinization exceeded det_states cap ({caps.det_states})")
                node = len(ids)
                ids[img] = node
                order.append(img)
                queue.append(img)
            row.append(node)
        rows.append(row)
    acc = tuple(i for i, subset in enumerate(order) if subset & a.accepting_set)
    names = tuple("{%s}" % ",".join(a.state_names[q] for q in sorted(s)) for s in order)
    return Dfa(len(order), a.alphabet, tuple(map(tuple, rows)), 0, acc, names)


def complement(d: Dfa) -> Dfa:
    if d.partial:
        raise InputError("complement requires a total DFA")
    acc = tuple(q for q in range(d.n_states) if q not in set(d.accepting))
    return Dfa(d.n_states, d.alphabet, d.table, d.initial, acc, d.state_names)


def _require_same_alphabet(parts: Sequence[Nfa]) -> None:
    first = parts[0].alphabet
    for p in parts[1:]:
        if p.alphabet != first:
            raise InputError("operands must share an identical alphabet")


def product(a: Nfa, b: Nfa, mode: str = "intersect") -> Nfa:
    """Synchronized product (intersect) or language union of two NFAs."""
    if mode == "union":
        return union_disjoint([a, b])
    if mode != "intersect":
        raise InputError(f"unknown product mode {mode!r}")
    _require_same_alphabet([a, b])
    start = [(p, q) for p in a.initial for q in b.initial]
    ids: dict[tuple[int, int], int] = {}
    order: list[tuple[int, int]] = []
    for pair in start:
        if pair not in ids:
            ids[pair] = len(order)
            order.append(pair)
    trans = []
    queue = deque(order)
    while queue:
        (p, q) = queue.popleft()
        src = ids[(p, q)]
        for x in range(a.n_letters):
            for p2 in a.succ.get((p, x), ()):
                for q2 in b.succ.get((q, x), ()):
                    pair = (p2, q2)
                    node = ids.get(pair)
                    if node is None:
                        node = len(order)
                        ids[pair] = node
                        order.append(pair)
                        queue.append(pair)
                    trans.append((src, x, node))
    if not order:
        # no initial pair: empty-language placeholder state
        return Nfa(1, a.alphabet, (), (), (), ("dead",))
    acc = tuple(i for i, (p, q) in enumerate(order)
                if p in a.accepting_set and q in b.accepting_set)
    names = tuple(f"({a.state_names[p]},{b.state_names[q]})" for (p, q) in order)
    init = tuple(ids[pair] for pair in start)
    return Nfa(len(order), a.alphabet, tuple(trans), init, acc, names)


def union_disjoint(parts: Sequence[Nfa]) -> Nfa:
    """Disjoint union over one alphabet; preserves each operand's structure.

    States are concatenated in operand order (operand i starts at the sum of
    the earlier operands' state counts).  Colliding state names get a
    deterministic ``u<i>:`` prefix.
    """
    if not parts:
        raise InputError("union of zero automata is undefined")
    _require_same_alphabet(parts)
    offsets = []
    total = 0
    for p in parts:
        offsets.append(total)
        total += p.n_states
    seen: set[str] = set()
    names: list[str] = []
    for i, p in enumerate(parts):
        for name in p.state_names:
            if name in seen:
                name = f"u{i}:{name}"
            seen.add(name)
            names.append(name)
    trans = []
    initial = []
    accepting = []
    for off, p in zip(offsets, parts):
        trans.extend((q + off, x, r + off) for (q, x, r) in p.transitions)
        initial.extend(q + off for q in p.initial)
        accepting.extend(q + off for q in p.accepting)
    return Nfa(total, parts[0].alphabet, tuple(trans), tuple(initial),
               tuple(accepting), tuple(names))


def complete_nfa(a: Nfa, sink_name: str = "sink") -> Nfa:
    """Explicit completion: route every undefined (state, letter) to a fresh
    non-accepting sink.  Returns ``a`` unchanged when already complete."""
    missing = [(q, x) for q in range(a.n_states) for x in range(a.n_letters)
               if (q, x) not in a.succ]
    if not missing:
        return a
    sink = a.n_states
    name = sink_name
    while name in a.state_index:
        name += "'"
    trans = list(a.transitions)
    trans.extend((q, x, sink) for (q, x) in missing)
    trans.extend((sink, x, sink) for x in range(a.n_letters))
    return Nfa(a.n_states + 1, a.alphabet, tuple(trans), a.initial, a.accepting,
               a.state_names + (name,))


# ---------------------------------------------------------------------------
# bounded-language oracles


def _coaccessible_mask(a: Nfa) -> int:
    pred: dict[int, set[int]] = {}
    for (q, _x, r) in a.transitions:
        pred.setdefault(r, set()).add(q)
    mask = a.accepting_mask
    queue = deque(a.accepting)
    seen = set(a.accepting)
    while queue:
        r = queue.popleft()
        for q in pred.get(r, ()):
            if q not in seen:
                seen.add(q)
                mask |= 1 << q
                queue.append(q)
    return mask


def enumerate_language(a: Nfa, max_len: int, caps: Caps | None = None) -> list[Word]:
    """All accepted words of length <= max_len, in length-then-lexicographic
    order by letter id.  Walks the prefix tree, pruning prefixes whose state
    set cannot reach acceptance."""
    caps = caps or default_caps()
    if max_len < 0:
        raise InputError("max_len must be nonnegative")
    if max_len > caps.enum_len:
        raise ResourceLimitError(f"enumeration length {max_len} exceeds enum_len cap "
                                 f"({caps.enum_len})")
    coacc = _coaccessible_mask(a)
    acc = a.accepting_mask
    out: list[Word] = []
    level: list[tuple[Word, int]] = [((), a.initial_mask & coacc)]
    visited_nodes = 0
    for length in range(max_len + 1):
        nxt: list[tuple[Word, int]] = []
        for word, mask in level:
            visited_nodes += 1
            if visited_nodes > caps.enum_nodes:
                raise ResourceLimitError(f"enumeration exceeded enum_nodes cap "
                                         f"({caps.enum_nodes})")
            if mask & acc:
                out.append(word)
            if length == max_len:
                continue
            for x in range(a.n_letters):
                img = a.step_mask(mask, x) & coacc
                if img:
                    nxt.append((word + (x,), img))
        level = nxt
    return out


def language_equal_bounded(a: Nfa, b: Nfa, max_len: int,
                           caps: Caps | None = None) -> Optional[Word]:
    """First (length-lex) word of length <= max_len on which the two languages
    differ, or None.  Synchronized subset search with dedup."""
    caps = caps or default_caps()
    _require_same_alphabet([a, b])
    start = (a.initial_mask, b.initial_mask)
    seen = {start}
    level = [((), start)]
    nodes = 0
    for length in range(max_len + 1):
        nxt = []
        for word, (ma, mb) in level:
            nodes += 1
            if nodes > caps.enum_nodes:
                raise ResourceLimitError(f"bounded comparison exceeded enum_nodes cap "
                                         f"({caps.enum_nodes})")
            if bool(ma & a.accepting_mask) != bool(mb & b.accepting_mask):
                return word
            if length == max_len:
                continue
            for x in range(a.n_letters):
                pair = (a.step_mask(ma, x), b.step_mask(mb, x))
                if pair not in seen:
                    seen.add(pair)
                    nxt.append((word + (x,), pair))
        level = nxt
    return None


# ---------------------------------------------------------------------------
# text format


def _strip_comment(tokens: list[str]) -> list[str]:
    for i, tok in enumerate(tokens):
        if tok.startswith("#"):
            return tokens[:i]
    return tokens


def parse_automaton(text: str) -> Nfa:
    """Parse the line-oriented automaton format (see print_automaton)."""
    directives: dict[str, list[str]] = {}
    trans_lines: list[list[str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = _strip_comment(raw.split())
        if not tokens:
            continue
        head, rest = tokens[0], tokens[1:]
        if not head.endswith(":"):
            raise InputError(f"line {lineno}: expected a directive, got {head!r}")
        key = head[:-1]
        if key == "trans":
            if len(rest) != 3:
                raise InputError(f"line {lineno}: trans needs <src> <letter> <dst>")
            trans_lines.append(rest)
        elif key in ("alphabet", "states", "initial", "accepting"):
            if key in directives:
                raise InputError(f"line {lineno}: duplicate directive {key!r}")
            directives[key] = rest
        else:
            raise InputError(f"line {lineno}: unknown directive {key!r}")
    for key in ("alphabet", "states", "initial", "accepting"):
        if key not in directives:
            raise InputError(f"missing directive {key!r}")
    alphabet = make_alphabet(directives["alphabet"])
    names = tuple(directives["states"])
    letter_of = {l.name: l.id for l in alphabet}
    state_of: dict[str, int] = {}
    for i, name in enumerate(names):
        if name in state_of:
            raise InputError(f"duplicate state name {name!r}")
        state_of[name] = i

    def state(tok: str) -> int:
        if tok not in state_of:
            raise InputError(f"undeclared state {tok!r}")
        return state_of[tok]

    def letter(tok: str) -> int:
        if tok not in letter_of:
            raise InputError(f"undeclared letter {tok!r}")
        return letter_of[tok]

    trans = tuple((state(s), letter(x), state(d)) for (s, x, d) in trans_lines)
    initial = tuple(state(tok) for tok in directives["initial"])
    accepting = tuple(state(tok) for tok in directives["accepting"])
    return Nfa(len(names), alphabet, trans, initial, accepting, names)


def print_automaton(a: Nfa, header: Sequence[str] = ()) -> str:
    """Canonical serialization: fixed directive order, names in declared
    order, transitions sorted by (src, letter, dst)."""
    lines = [f"# {h}" for h in header]
    lines.append(("alphabet: " + " ".join(l.name for l in a.alphabet)).rstrip())
    lines.append("states: " + " ".join(a.state_names))
    lines.append(("initial: " + " ".join(a.state_names[q] for q in a.initial)).rstrip())
    lines.append(("accepting: " + " ".join(a.state_names[q] for q in a.accepting)).rstrip())
    for (q, x, r) in a.transitions:
        lines.append(f"trans: {a.state_names[q]} {a.alphabet[x].name} {a.state_names[r]}")
    return "\n".join(lines) + "\n"


def parse_word(a: Nfa, tokens: Sequence[str]) -> Word:
    out = []
    for tok in tokens:
        if tok not in a.letter_index:
            raise InputError(f"letter {tok!r} not in alphabet")
        out.append(a.letter_index[tok])
    return tuple(out)


def format_word(a: Nfa, word: Sequence[int]) -> str:
    return " ".join(a.alphabet[x].name for x in word)
