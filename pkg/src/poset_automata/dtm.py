"""Deterministic Turing machines on a bounded tape.

The machine description mirrors the reduction's needs: a distinguished
accepting state with no outgoing rules, a blank outside the input alphabet,
and an explicit space bound supplied per run.  Configurations are recorded
as tuples of (tape symbol, state-or-None) cells, the marker sitting under
the head.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from .errors import InputError, SimulationError

MOVES = ("L", "R", "S")

Cell = tuple[str, Optional[str]]
Config = tuple[Cell, ...]


@dataclass(frozen=True)
class Dtm:
    states: tuple[str, ...]
    initial: str
    accepting: str
    tape_alphabet: tuple[str, ...]
    input_alphabet: tuple[str, ...]
    blank: str
    rules: tuple[tuple[str, str, str, str, str], ...]  # (q, read, q', write, move)

    def __post_init__(self):
        if len(set(self.states)) != len(self.states):
            raise InputError("duplicate machine states")
        if len(set(self.tape_alphabet)) != len(self.tape_alphabet):
            raise InputError("duplicate tape symbols")
        if self.initial not in self.states or self.accepting not in self.states:
            raise InputError("initial/accepting must be declared states")
        if self.initial == self.accepting:
            raise InputError("initial and accepting states must differ")
        if not set(self.input_alphabet) <= set(self.tape_alphabet):
            raise InputError("input alphabet must be part of the tape alphabet")
        if self.blank not in self.tape_alphabet or self.blank in self.input_alphabet:
            raise InputError("blank must be a tape symbol outside the input alphabet")
        seen = set()
        for (q, read, q2, write, move) in self.rules:
            if q not in self.states or q2 not in self.states:
                raise InputError(f"rule references unknown state: {q} -> {q2}")
            if read not in self.tape_alphabet or write not in self.tape_alphabet:
                raise InputError(f"rule references unknown symbol: {read} -> {write}")
            if move not in MOVES:
                raise InputError(f"rule move must be one of {MOVES}, got {move!r}")
            if q == self.accepting:
                raise InputError("the accepting state has no outgoing rules")
            if (q, read) in seen:
                raise InputError(f"duplicate rule for ({q}, {read})")
            seen.add((q, read))
        object.__setattr__(self, "rules", tuple(sorted(self.rules)))

    @cached_property
    def delta(self) -> dict[tuple[str, str], tuple[str, str, str]]:
        return {(q, read): (q2, write, move) for (q, read, q2, write, move) in self.rules}


@dataclass(frozen=True)
class RunRecord:
    verdict: str          # "accept" | "reject" | "cap"
    configs: tuple[Config, ...]
    steps: int


def simulate_dtm(m: Dtm, x: Sequence[str], pval: int, step_cap: int = 10**5) -> RunRecord:
    """Deterministic simulation on a pval-cell tape (cells 1..pval).

    Verdicts: "accept" once the accepting state is entered, "reject" when no
    rule applies, "cap" when step_cap steps pass without either.  Leaving the
    tape raises SimulationError.
    """
    if pval < 1:
        raise InputError("space bound must be at least 1")
    if len(x) > pval:
        raise InputError(f"input length {len(x)} exceeds space bound {pval}")
    for sym in x:
        if sym not in m.input_alphabet:
            raise InputError(f"input symbol {sym!r} not in the input alphabet")
    tape = list(x) + [m.blank] * (pval - len(x))
    head = 1
    state = m.initial

    def config() -> Config:
        return tuple((sym, state if i + 1 == head else None)
                     for i, sym in enumerate(tape))

    configs = [config()]
    steps = 0
    while state != m.accepting:
        if steps >= step_cap:
            return RunRecord("cap", tuple(configs), steps)
        rule = m.delta.get((state, tape[head - 1]))
        if rule is None:
            return RunRecord("reject", tuple(configs), steps)
        state, tape[head - 1], move = rule
        if move == "L":
            head -= 1
        elif move == "R":
            head += 1
        if not 1 <= head <= pval:
            raise SimulationError(f"head left the {pval}-cell tape after {steps + 1} steps")
        steps += 1
        configs.append(config())
    return RunRecord("accept", tuple(configs), steps)


def parse_dtm(text: str) -> Dtm:
    """Line format: states:/initial:/accepting:/tape:/input:/blank: once each
    and repeated ``delta: q a -> q' b D`` lines with D in {L,R,S}."""
    single: dict[str, list[str]] = {}
    rules: list[tuple[str, str, str, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        for i, tok in enumerate(tokens):
            if tok.startswith("#"):
                tokens = tokens[:i]
                break
        if not tokens:
            continue
        head, rest = tokens[0], tokens[1:]
        if head == "delta:":
            if len(rest) != 6 or rest[2] != "->":
                raise InputError(f"line {lineno}: delta needs `q a -> q' b D`")
            rules.append((rest[0], rest[1], rest[3], rest[4], rest[5]))
        elif head in ("states:", "initial:", "accepting:", "tape:", "input:", "blank:"):
            key = head[:-1]
            if key in single:
                raise InputError(f"line {lineno}: duplicate directive {key!r}")
            single[key] = rest
        else:
            raise InputError(f"line {lineno}: unknown directive {head!r}")
    for key in ("states", "initial", "accepting", "tape", "blank"):
        if key not in single:
            raise InputError(f"missing directive {key!r}")
    for key in ("initial", "accepting", "blank"):
        if len(single[key]) != 1:
            raise InputError(f"directive {key!r} needs exactly one name")
    return Dtm(states=tuple(single["states"]),
               initial=single["initial"][0],
               accepting=single["accepting"][0],
               tape_alphabet=tuple(single["tape"]),
               input_alphabet=tuple(single.get("input", ())),
               blank=single["blank"][0],
               rules=tuple(rules))
