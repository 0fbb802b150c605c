"""Data model and one-step semantics of register pushdown automata.

A k-RPDA reads data words, i.e. sequences of ``(symbol, value)`` pairs where
values come from an infinite domain and are only ever compared for equality.
Besides a finite control it has ``k`` registers and a stack, both holding data
values.  Every rule inspects the current input value ``d`` and the stack top
``e``, may load ``d`` into one register, and then rewrites the top of the stack
with zero, one or two register contents.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence, Tuple, Union


@dataclass(frozen=True, slots=True)
class DataValue:
    """A data value; ``name is None`` is the designated bottom value."""

    name: Optional[str] = None

    @property
    def is_bottom(self) -> bool:
        return self.name is None

    def __str__(self) -> str:
        return "_" if self.name is None else self.name

    def __repr__(self) -> str:
        return "BOTTOM" if self.name is None else f"named({self.name!r})"


BOTTOM = DataValue()


def named(name: str) -> DataValue:
    if not name or name == "_":
        raise ValueError(f"invalid data value identifier {name!r}")
    return DataValue(name)


def fresh_value(avoid: Iterable[DataValue], prefix: str = "f") -> DataValue:
    """Return a named value ``<prefix><i>`` (smallest ``i >= 1``) not in *avoid*."""
    taken = {v.name for v in avoid}
    i = 1
    while f"{prefix}{i}" in taken:
        i += 1
    return DataValue(f"{prefix}{i}")


Letter = Tuple[str, DataValue]
DataWord = Tuple[Letter, ...]
RegisterAssignment = Tuple[DataValue, ...]


def word(*letters: Tuple[str, Union[str, DataValue, None]]) -> DataWord:
    """Build a data word from ``(symbol, value)`` pairs; ``None``/``"_"`` mean bottom."""
    out = []
    for sym, val in letters:
        if isinstance(val, DataValue):
            out.append((sym, val))
        elif val is None or val == "_":
            out.append((sym, BOTTOM))
        else:
            out.append((sym, named(val)))
    return tuple(out)


def initial_assignment(k: int) -> RegisterAssignment:
    return (BOTTOM,) * k


def assign(regs: RegisterAssignment, i: int, d: DataValue) -> RegisterAssignment:
    """``regs[i <- d]`` with 1-based register index *i*."""
    if not 1 <= i <= len(regs):
        raise IndexError(f"register index {i} out of range 1..{len(regs)}")
    return regs[: i - 1] + (d,) + regs[i:]


# -- guards -----------------------------------------------------------------


class Guard:
    """Base class of guard expressions.  Only five constructors exist:
    :class:`Tt`, :class:`RegEq`, :class:`TopEq`, :class:`Or` and :class:`Not`;
    everything else is sugar built from them."""

    __slots__ = ()

    def registers(self) -> Iterator[int]:
        return iter(())


@dataclass(frozen=True, slots=True)
class Tt(Guard):
    pass


@dataclass(frozen=True, slots=True)
class RegEq(Guard):
    index: int

    def registers(self) -> Iterator[int]:
        yield self.index


@dataclass(frozen=True, slots=True)
class TopEq(Guard):
    pass


@dataclass(frozen=True, slots=True)
class Or(Guard):
    left: Guard
    right: Guard

    def registers(self) -> Iterator[int]:
        yield from self.left.registers()
        yield from self.right.registers()


@dataclass(frozen=True, slots=True)
class Not(Guard):
    operand: Guard

    def registers(self) -> Iterator[int]:
        yield from self.operand.registers()


TT = Tt()
TOP_EQ = TopEq()
FF = Not(TT)


def And(left: Guard, right: Guard) -> Guard:  # noqa: N802
    return Not(Or(Not(left), Not(right)))


def reg_ne(i: int) -> Guard:
    return Not(RegEq(i))


def top_ne() -> Guard:
    return Not(TOP_EQ)


def eval_guard(g: Guard, regs: RegisterAssignment, d: DataValue, top: DataValue) -> bool:
    """Satisfaction of *g* by register contents *regs*, input value *d* and stack top *top*."""
    if isinstance(g, RegEq):
        if not 1 <= g.index <= len(regs):
            raise IndexError(f"guard uses register {g.index} but only {len(regs)} exist")
        return regs[g.index - 1] == d
    if isinstance(g, Tt):
        return True
    if isinstance(g, TopEq):
        return d == top
    if isinstance(g, Not):
        return not eval_guard(g.operand, regs, d, top)
    if isinstance(g, Or):
        return eval_guard(g.left, regs, d, top) or eval_guard(g.right, regs, d, top)
    raise TypeError(f"not a guard: {g!r}")


# -- rules and automata -----------------------------------------------------


@dataclass(frozen=True, slots=True)
class TransitionRule:
    """``(source, guard[, load]) --label--> (target, action)``.

    ``label`` is ``None`` for an epsilon rule.  ``action`` lists the registers
    whose contents replace the stack top, new top first: ``()`` pops,
    ``(j1,)`` replaces and ``(j1, j2)`` pushes.
    """

    source: str
    label: Optional[str]
    guard: Guard
    load: Optional[int]
    target: str
    action: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.action) > 2:
            raise ValueError("a rule writes at most two stack cells")

    @property
    def is_epsilon(self) -> bool:
        return self.label is None

    @property
    def kind(self) -> str:
        return ("pop", "replace", "push")[len(self.action)]

    @property
    def height_change(self) -> int:
        return len(self.action) - 1


def rule(
    source: str,
    label: Optional[str],
    guard: Guard,
    target: str,
    action: Sequence[int] = (),
    load: Optional[int] = None,
) -> TransitionRule:
    return TransitionRule(source, label, guard, load, target, tuple(action))


class Subclass(enum.Enum):
    GENERAL = "general"
    NON_DECREASING = "non-decreasing"
    GROWING = "growing"
    EPSILON_FREE = "epsilon-free"

    def implies(self, other: Subclass) -> bool:
        """True if every automaton labelled ``self`` also satisfies ``other``."""
        return _RANK[self] >= _RANK[other]


_RANK = {
    Subclass.GENERAL: 0,
    Subclass.NON_DECREASING: 1,
    Subclass.GROWING: 2,
    Subclass.EPSILON_FREE: 3,
}


@dataclass(frozen=True)
class Rpda:
    k: int
    states: frozenset
    initial: str
    rules: Tuple[TransitionRule, ...]
    alphabet: frozenset = field(default_factory=frozenset)

    @classmethod
    def build(
        cls,
        k: int,
        initial: str,
        rules: Iterable[TransitionRule],
        states: Iterable[str] = (),
        alphabet: Iterable[str] = (),
    ) -> Rpda:
        """Construct an automaton, collecting states and symbols mentioned by *rules*."""
        rules = tuple(rules)
        all_states = {initial, *states}
        all_symbols = set(alphabet)
        for r in rules:
            all_states.update((r.source, r.target))
            if r.label is not None:
                all_symbols.add(r.label)
        return cls(k, frozenset(all_states), initial, rules, frozenset(all_symbols))

    @cached_property
    def rules_by_source(self) -> dict:
        table: dict = {}
        for r in self.rules:
            table.setdefault(r.source, []).append(r)
        return {q: tuple(rs) for q, rs in table.items()}


@dataclass(frozen=True, slots=True)
class Configuration:
    """Instantaneous description; ``stack[0]`` is the top."""

    state: str
    regs: RegisterAssignment
    input: DataWord
    stack: Tuple[DataValue, ...]

    @property
    def height(self) -> int:
        return len(self.stack)


def initial_configuration(a: Rpda, w: Sequence[Letter]) -> Configuration:
    return Configuration(a.initial, initial_assignment(a.k), tuple(w), (BOTTOM,))


def is_accepting(c: Configuration) -> bool:
    return not c.input and not c.stack


def classify(a: Rpda) -> Subclass:
    eps = [r for r in a.rules if r.is_epsilon]
    if not eps:
        return Subclass.EPSILON_FREE
    if all(r.kind == "push" for r in eps):
        return Subclass.GROWING
    if all(r.kind != "pop" for r in eps):
        return Subclass.NON_DECREASING
    return Subclass.GENERAL


def validate(a: Rpda) -> list:
    """Return human-readable problems with *a*; empty iff well-formed."""
    problems = []
    if a.k < 0:
        problems.append(f"negative register count {a.k}")
    if a.initial not in a.states:
        problems.append(f"initial state {a.initial!r} is not a declared state")
    for n, r in enumerate(a.rules, 1):
        where = f"rule {n} ({r.source} -> {r.target})"
        for q in (r.source, r.target):
            if q not in a.states:
                problems.append(f"{where}: unknown state {q!r}")
        if r.label is not None and r.label not in a.alphabet:
            problems.append(f"{where}: label {r.label!r} not in alphabet")
        indices = [("guard", i) for i in r.guard.registers()]
        if r.load is not None:
            indices.append(("load", r.load))
        indices += [("action", j) for j in r.action]
        for what, i in indices:
            if not 1 <= i <= a.k:
                problems.append(f"{where}: {what} register {i} outside 1..{a.k}")
    return problems


# -- semantics --------------------------------------------------------------


def live_values(c: Configuration) -> Iterator[DataValue]:
    yield from c.regs
    yield from c.stack


def candidate_values(c: Configuration, w: Sequence[Letter] = ()) -> Tuple[DataValue, ...]:
    """Finite stand-in for "any data value" on epsilon rules.

    Bottom, the values of *w* and of the remaining input (first occurrence
    order), the values held in registers and on the stack, and one value
    occurring nowhere else.  Any other choice is a renaming of the fresh one.
    """
    seen = dict.fromkeys([BOTTOM])
    for _, v in w:
        seen.setdefault(v)
    for _, v in c.input:
        seen.setdefault(v)
    for v in live_values(c):
        seen.setdefault(v)
    seen.setdefault(fresh_value(seen))
    return tuple(seen)


def apply_rule(r: TransitionRule, c: Configuration, d: DataValue) -> Optional[Configuration]:
    """Fire *r* on *c* with input value *d*; ``None`` if the step is not allowed."""
    if r.source != c.state or not c.stack:
        return None
    if r.label is None:
        rest = c.input
    else:
        if not c.input or c.input[0] != (r.label, d):
            return None
        rest = c.input[1:]
    top = c.stack[0]
    if not eval_guard(r.guard, c.regs, d, top):
        return None
    regs = c.regs if r.load is None else assign(c.regs, r.load, d)
    written = tuple(regs[j - 1] for j in r.action)
    return Configuration(r.target, regs, rest, written + c.stack[1:])


def step(
    a: Rpda, c: Configuration, candidates: Optional[Sequence[DataValue]] = None
) -> list:
    """All one-step successors of *c* as ``(rule, value, configuration)`` triples.

    Rules are tried in declaration order.  An epsilon rule tries every value in
    *candidates* (default: :func:`candidate_values` of *c*); an epsilon rule
    without a load leaves no trace of its value, so only the first satisfying
    candidate is reported for it.
    """
    if not c.stack:
        return []
    out = []
    head = c.input[0] if c.input else None
    for r in a.rules_by_source.get(c.state, ()):
        if r.label is not None:
            if head is None or head[0] != r.label:
                continue
            nxt = apply_rule(r, c, head[1])
            if nxt is not None:
                out.append((r, head[1], nxt))
            continue
        if candidates is None:
            candidates = candidate_values(c)
        for d in candidates:
            nxt = apply_rule(r, c, d)
            if nxt is not None:
                out.append((r, d, nxt))
                if r.load is None:
                    break
    return out


def replay(a: Rpda, w: Sequence[Letter], run: Iterable[Tuple[TransitionRule, DataValue]]) -> list:
    """Re-execute *run* from the initial configuration; returns every configuration.

    Raises ``ValueError`` on the first step that is not a legal transition.
    """
    c = initial_configuration(a, w)
    trail = [c]
    for n, (r, d) in enumerate(run, 1):
        if r not in a.rules:
            raise ValueError(f"step {n}: rule is not part of the automaton")
        nxt = apply_rule(r, c, d)
        if nxt is None:
            raise ValueError(f"step {n}: rule {r} cannot fire with value {d}")
        c = nxt
        trail.append(c)
    return trail
