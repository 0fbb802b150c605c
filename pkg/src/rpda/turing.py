"""Deterministic single-tape Turing machines.

Tape symbols are the integers ``1..gamma_size`` and ``1`` is the blank.  The
tape is a finite sequence that only grows when the head moves right off its
last cell; a left move on the first cell leaves the head where it is.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

BLANK = 1

Move = Tuple[str, int, str]


class SpaceExceeded(Exception):
    """The machine wrote past the supplied space bound."""

    def __init__(self, bound: int, config: "TmConfiguration"):
        super().__init__(f"tape length {len(config.tape)} exceeds space bound {bound}")
        self.bound = bound
        self.config = config


@dataclass(frozen=True)
class TuringMachine:
    states: frozenset
    gamma_size: int
    input_symbols: frozenset
    delta: Dict[Tuple[str, int], Move]
    initial: str
    accepting: frozenset

    def __post_init__(self) -> None:
        if self.gamma_size < 1:
            raise ValueError("tape alphabet needs at least the blank symbol")
        if BLANK in self.input_symbols:
            raise ValueError("the blank (1) cannot be an input symbol")
        if not set(self.input_symbols) <= set(self.gamma):
            raise ValueError("input symbols must be tape symbols")
        if self.initial not in self.states or not set(self.accepting) <= set(self.states):
            raise ValueError("initial and accepting states must be declared")
        missing = [(q, a) for q in sorted(self.states) for a in self.gamma if (q, a) not in self.delta]
        if missing:
            q, a = missing[0]
            raise ValueError(f"delta not total: no entry for ({q}, {a})")
        for (q, a), (q2, b, m) in self.delta.items():
            if q2 not in self.states or b not in self.gamma or m not in ("L", "R"):
                raise ValueError(f"bad transition for ({q}, {a}): {(q2, b, m)}")

    @property
    def gamma(self) -> range:
        return range(1, self.gamma_size + 1)

    def __hash__(self) -> int:
        return hash((self.states, self.gamma_size, self.initial, frozenset(self.delta.items())))


@dataclass(frozen=True)
class TmConfiguration:
    state: str
    tape: Tuple[int, ...]
    head: int  # 1-based


def initial_tm_configuration(m: TuringMachine, u: Sequence[int]) -> TmConfiguration:
    # the empty input starts on a single blank cell so that the head has somewhere to be
    tape = tuple(u) if u else (BLANK,)
    return TmConfiguration(m.initial, tape, 1)


def tm_step(m: TuringMachine, c: TmConfiguration) -> TmConfiguration:
    q2, b, move = m.delta[(c.state, c.tape[c.head - 1])]
    tape = c.tape[: c.head - 1] + (b,) + c.tape[c.head :]
    if move == "L":
        return TmConfiguration(q2, tape, max(1, c.head - 1))
    if c.head == len(tape):
        tape += (BLANK,)
    return TmConfiguration(q2, tape, c.head + 1)


def tm_accepts(m: TuringMachine, u: Sequence[int], space_bound: int) -> bool:
    """Run *m* on *u* until it enters an accepting state or repeats itself.

    Raises :class:`SpaceExceeded` if the tape ever grows beyond *space_bound*.
    """
    c = initial_tm_configuration(m, u)
    seen = set()
    while True:
        if len(c.tape) > space_bound:
            raise SpaceExceeded(space_bound, c)
        if c.state in m.accepting:
            return True
        if c in seen:
            return False
        seen.add(c)
        c = tm_step(m, c)


def check_space_bound(m: TuringMachine, u: Sequence[int], f_of_n: int) -> bool:
    """True iff every configuration reachable from input *u* has tape length <= *f_of_n*.

    Accepting states do not stop the exploration here.
    """
    c = initial_tm_configuration(m, u)
    seen = set()
    while c not in seen:
        if len(c.tape) > f_of_n:
            return False
        seen.add(c)
        c = tm_step(m, c)
    return True


def m_even() -> TuringMachine:
    """Accepts words over {2, 3} containing an even number of 2s.

    One sweep to the right; on the first blank it moves left into ``acc`` or
    ``rej``, so the tape never exceeds ``|u| + 1`` cells.
    """
    delta = {
        ("even", 1): ("acc", 1, "L"),
        ("even", 2): ("odd", 2, "R"),
        ("even", 3): ("even", 3, "R"),
        ("odd", 1): ("rej", 1, "L"),
        ("odd", 2): ("even", 2, "R"),
        ("odd", 3): ("odd", 3, "R"),
    }
    for q in ("acc", "rej"):
        for a in (1, 2, 3):
            delta[(q, a)] = (q, a, "L")
    return TuringMachine(
        states=frozenset({"even", "odd", "acc", "rej"}),
        gamma_size=3,
        input_symbols=frozenset({2, 3}),
        delta=delta,
        initial="even",
        accepting=frozenset({"acc"}),
    )
