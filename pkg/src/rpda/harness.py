"""Brute-force oracles and fixtures.

Nothing here is clever: :func:`enumerate_accepting_runs` walks every run up to
the given bounds, which is what makes it a useful cross-check for the deciders
in :mod:`rpda.membership`.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from .core import (
    BOTTOM,
    TOP_EQ,
    TT,
    And,
    Configuration,
    DataValue,
    DataWord,
    Guard,
    Letter,
    Not,
    Or,
    RegEq,
    Rpda,
    Subclass,
    TransitionRule,
    apply_rule,
    candidate_values,
    fresh_value,
    initial_configuration,
    is_accepting,
    live_values,
    replay,
    rule,
    step,
)
from .membership import Rejected, SearchBudget, canonicalize, decide


@dataclass(frozen=True)
class RunTrace:
    word: DataWord
    steps: Tuple[Tuple[TransitionRule, DataValue, Configuration], ...]

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def run(self) -> Tuple[Tuple[TransitionRule, DataValue], ...]:
        return tuple((r, d) for r, d, _ in self.steps)

    def configurations(self, a: Rpda) -> List[Configuration]:
        return [initial_configuration(a, self.word)] + [c for _, _, c in self.steps]


def enumerate_accepting_runs(
    a: Rpda, w: Sequence[Letter], max_len: int, max_height: int
) -> List[RunTrace]:
    """Every accepting run of length <= *max_len* whose stack stays <= *max_height*.

    Epsilon choices range over :func:`candidate_values`; runs that differ only
    by the names of fresh values are reported once.
    """
    w = tuple(w)
    anchors = {BOTTOM, *(v for _, v in w)}
    found: List[RunTrace] = []
    seen = set()
    path: list = []
    signature: list = []

    def walk(c: Configuration) -> None:
        if is_accepting(c):
            sig = tuple(signature)
            if sig not in seen:
                seen.add(sig)
                found.append(RunTrace(w, tuple(path)))
            return
        if len(path) >= max_len:
            return
        for r, d, nxt in step(a, c, candidate_values(c, w)):
            if nxt.height > max_height:
                continue
            path.append((r, d, nxt))
            signature.append((r, canonicalize(nxt, anchors)))
            walk(nxt)
            path.pop()
            signature.pop()

    walk(initial_configuration(a, w))
    return found


def reachable_configurations(a: Rpda, w: Sequence[Letter], max_len: int, max_height: int) -> Iterator[Configuration]:
    """Concrete configurations reachable within the bounds, one per renaming class."""
    w = tuple(w)
    anchors = {BOTTOM, *(v for _, v in w)}
    start = initial_configuration(a, w)
    seen = {canonicalize(start, anchors)}
    queue = deque([(start, 0)])
    while queue:
        c, depth = queue.popleft()
        yield c
        if depth >= max_len:
            continue
        for _, _, nxt in step(a, c, candidate_values(c, w)):
            key = canonicalize(nxt, anchors)
            if nxt.height <= max_height and key not in seen:
                seen.add(key)
                queue.append((nxt, depth + 1))


def example_a1() -> Rpda:
    """The 2-register automaton for ``(a,d0)(b,d1)..(b,dn)(b,dn)..(b,d1)(a,d0)``, all di != d0."""
    rules = [
        rule("q0", "a", TT, "q1", (1, 1), load=1),
        rule("q1", "b", Not(RegEq(1)), "q1", (2, 2), load=2),
        rule("q1", None, TT, "q2", ()),
        rule("q2", "b", And(TOP_EQ, Not(RegEq(1))), "q2", ()),
        rule("q2", "a", TOP_EQ, "q3", ()),
    ]
    return Rpda.build(2, "q0", rules, states=["q0", "q1", "q2", "q3"], alphabet=["a", "b"])


def a1_language_predicate(w: Sequence[Letter]) -> bool:
    if len(w) < 2 or len(w) % 2:
        return False
    (s0, d0), (s1, d1) = w[0], w[-1]
    if (s0, s1) != ("a", "a") or d0 != d1:
        return False
    middle = w[1:-1]
    half = len(middle) // 2
    if any(s != "b" for s, _ in middle):
        return False
    values = [v for _, v in middle]
    if values != values[::-1]:
        return False
    return all(v != d0 for v in values[:half])


def witness_search(
    a: Rpda, max_word_len: int, budget: Optional[SearchBudget] = None
) -> Optional[DataWord]:
    """Look for some word of length <= *max_word_len* accepted by *a*.

    The input is invented on the fly: each letter carries bottom, a value
    already held in a register or on the stack, or a fresh value.  Epsilon
    steps are free and letters cost one, so the first hit is a shortest
    witness.  A hit is replayed and re-checked with :func:`decide` before it
    is returned.  ``None`` only means nothing was found within the bounds.
    """
    b = budget or SearchBudget()
    max_height = b.max_stack_height if b.max_stack_height is not None else max_word_len + a.k + 4
    anchors = frozenset([BOTTOM])
    start = Configuration(a.initial, (BOTTOM,) * a.k, (), (BOTTOM,))
    best = {canonicalize(start, anchors): 0}
    queue = deque([(start, (), 0)])
    while queue:
        c, run, eps = queue.popleft()
        n_read = sum(r.label is not None for r, _ in run)
        if best[canonicalize(c, anchors)] < n_read:
            continue
        if b.max_total_steps is not None and len(run) >= b.max_total_steps:
            continue
        values = list(dict.fromkeys([BOTTOM, *live_values(c)]))
        values.append(fresh_value(values + [d for _, d in run]))
        for r in a.rules_by_source.get(c.state, ()):
            if r.label is None:
                if b.max_epsilon_steps is not None and eps >= b.max_epsilon_steps:
                    continue
                probe, cost = c, 0
            elif n_read >= max_word_len:
                continue
            else:
                cost = 1
            for d in values:
                if cost:
                    probe = Configuration(c.state, c.regs, ((r.label, d),), c.stack)
                nxt = apply_rule(r, probe, d)
                if nxt is None:
                    continue
                got = run + ((r, d),)
                if not nxt.stack:
                    w = _verified_word(a, got)
                    if w is not None:
                        return w
                elif nxt.height <= max_height:
                    key = canonicalize(nxt, anchors)
                    if best.get(key, max_word_len + 1) > n_read + cost:
                        best[key] = n_read + cost
                        item = (nxt, got, eps + (1 - cost))
                        if cost:
                            queue.append(item)
                        else:
                            queue.appendleft(item)
                if r.label is None and r.load is None:
                    break
    return None


def _verified_word(a: Rpda, run) -> Optional[DataWord]:
    w = accepted_word_of(run)
    if not is_accepting(replay(a, w, run)[-1]):
        return None
    verdict = decide(a, w)
    if isinstance(verdict, Rejected):
        raise AssertionError(f"decider rejects replayable witness {w}")
    return w


# -- random automata for property tests -------------------------------------


def random_guard(rng: random.Random, k: int, depth: int = 2) -> Guard:
    leaves = [TT, TOP_EQ] + [RegEq(i) for i in range(1, k + 1)]
    if depth == 0 or rng.random() < 0.4:
        g = rng.choice(leaves)
        return Not(g) if rng.random() < 0.3 else g
    op = rng.choice(["or", "and", "not"])
    if op == "not":
        return Not(random_guard(rng, k, depth - 1))
    left, right = random_guard(rng, k, depth - 1), random_guard(rng, k, depth - 1)
    return Or(left, right) if op == "or" else And(left, right)


def random_rpda(
    rng: random.Random,
    k: int = 2,
    n_states: int = 3,
    n_rules: int = 6,
    alphabet: Sequence[str] = ("a", "b"),
    subclass: Subclass = Subclass.GENERAL,
    eps_rate: float = 0.3,
) -> Rpda:
    """A random automaton whose epsilon rules respect *subclass*."""
    states = [f"s{i}" for i in range(n_states)]
    eps_kinds = {
        Subclass.GENERAL: (0, 1, 2),
        Subclass.NON_DECREASING: (1, 2),
        Subclass.GROWING: (2,),
        Subclass.EPSILON_FREE: (),
    }[subclass]
    regs = list(range(1, k + 1))
    rules = []
    for _ in range(n_rules):
        epsilon = bool(eps_kinds) and rng.random() < eps_rate
        width = rng.choice(eps_kinds) if epsilon else rng.choice((0, 1, 2))
        if not regs:
            width = 0
        action = tuple(rng.choice(regs) for _ in range(width))
        load = rng.choice(regs) if regs and rng.random() < 0.5 else None
        rules.append(
            rule(
                rng.choice(states),
                None if epsilon else rng.choice(list(alphabet)),
                random_guard(rng, k),
                rng.choice(states),
                action,
                load=load,
            )
        )
    return Rpda.build(k, states[0], rules, states=states, alphabet=alphabet)


def random_word(rng: random.Random, length: int, alphabet: Sequence[str] = ("a", "b"),
                values: Sequence[DataValue] = (BOTTOM,)) -> DataWord:
    return tuple((rng.choice(list(alphabet)), rng.choice(list(values))) for _ in range(length))


def relabel_trace(run: Sequence[Tuple[TransitionRule, DataValue]], label: str = "a") -> Tuple[DataWord, list]:
    """Map a run to the word and run of the relabelled automaton.

    Every epsilon step ``(r, d)`` becomes a read of ``(label, d)`` by the
    relabelled copy of ``r``.
    """
    letters, steps = [], []
    for r, d in run:
        if r.label is None:
            r = TransitionRule(r.source, label, r.guard, r.load, r.target, r.action)
        letters.append((r.label, d))
        steps.append((r, d))
    return tuple(letters), steps


def accepted_word_of(run: Sequence[Tuple[TransitionRule, DataValue]]) -> DataWord:
    """Letters consumed by *run*."""
    return tuple((r.label, d) for r, d in run if r.label is not None)


__all__ = [
    "RunTrace",
    "a1_language_predicate",
    "accepted_word_of",
    "enumerate_accepting_runs",
    "example_a1",
    "random_guard",
    "random_rpda",
    "random_word",
    "reachable_configurations",
    "relabel_trace",
    "witness_search",
]
