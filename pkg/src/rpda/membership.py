"""Membership deciders.

All three deciders share one breadth-first search over configurations taken
modulo renaming of the data values that are neither bottom nor part of the
input word.  Two configurations that agree up to such a renaming have
isomorphic futures, so it suffices to expand one of them.  They differ only in
how the search is cut off:

* growing automata: runs longer than ``2|w|+1`` are never needed;
* non-decreasing automata: every pop consumes a letter, so a stack taller than
  the remaining input can never be emptied;
* general automata: user budgets, with ``Unknown`` when a budget was hit.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence, Tuple, Union

from .core import (
    BOTTOM,
    Configuration,
    DataValue,
    Letter,
    Rpda,
    Subclass,
    TransitionRule,
    candidate_values,
    classify,
    initial_configuration,
    is_accepting,
    step,
)

__all__ = [
    "Accepted",
    "Rejected",
    "Unknown",
    "SearchBudget",
    "SubclassError",
    "accepting_run",
    "candidate_values",
    "canonicalize",
    "decide",
    "default_budget",
    "member_general",
    "member_growing",
    "member_non_decreasing",
]

Step = Tuple[TransitionRule, DataValue]


class SubclassError(ValueError):
    pass


@dataclass(frozen=True)
class SearchBudget:
    max_stack_height: Optional[int] = None
    max_epsilon_steps: Optional[int] = None
    max_total_steps: Optional[int] = None

    def __post_init__(self) -> None:
        for name in ("max_stack_height", "max_epsilon_steps", "max_total_steps"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ValueError(f"{name} must be >= 0, got {v}")


@dataclass(frozen=True)
class Accepted:
    run: Tuple[Step, ...]

    def __len__(self) -> int:
        return len(self.run)


@dataclass(frozen=True)
class Rejected:
    pass


@dataclass(frozen=True)
class Unknown:
    reason: str = "search budget exhausted"


MembershipVerdict = Union[Accepted, Rejected, Unknown]


def default_budget(a: Rpda, w: Sequence[Letter]) -> SearchBudget:
    return SearchBudget(max_stack_height=len(w) + a.k + 4, max_epsilon_steps=1000)


def canonicalize(c: Configuration, anchors: Iterable[DataValue]) -> Configuration:
    """Rename non-anchor values of *c* to ``n1, n2, ...`` by first occurrence.

    Registers are scanned before the stack (top first).  Canonical names skip
    any identifier already used by an anchor.
    """
    anchors = set(anchors)
    taken = {v.name for v in anchors}
    mapping: dict = {}
    counter = 0

    def rename(v: DataValue) -> DataValue:
        nonlocal counter
        if v in anchors:
            return v
        got = mapping.get(v)
        if got is None:
            counter += 1
            while f"n{counter}" in taken:
                counter += 1
            got = mapping[v] = DataValue(f"n{counter}")
        return got

    regs = tuple(rename(v) for v in c.regs)
    stack = tuple(rename(v) for v in c.stack)
    return Configuration(c.state, regs, c.input, stack)


def _key(c: Configuration, anchors: frozenset) -> tuple:
    # cheaper than canonicalize(): the name of a non-anchor value is its first-occurrence rank
    rank: dict = {}
    out = []
    for v in c.regs + c.stack:
        if v in anchors:
            out.append(v)
        else:
            out.append(rank.setdefault(v, len(rank)))
    return (c.state, len(c.input), len(c.regs), tuple(out))


Prune = Callable[[Configuration, int, int], Optional[str]]


def _search(a: Rpda, w: Sequence[Letter], prune: Prune) -> MembershipVerdict:
    """BFS over configurations modulo anchor-fixing renamings.

    ``prune(config, depth, eps_steps)`` returns ``None`` to keep a successor,
    ``"drop"`` when the cut is provably harmless, or a reason string when the
    cut is a budget that makes a negative answer inconclusive.
    """
    w = tuple(w)
    anchors = frozenset([BOTTOM, *(v for _, v in w)])
    start = initial_configuration(a, w)
    if is_accepting(start):  # unreachable with a bottom-initialised stack; kept for clarity
        return Accepted(())
    cut = prune(start, 0, 0)
    if cut is not None:
        return Rejected() if cut == "drop" else Unknown(cut)

    parent: dict = {_key(start, anchors): None}
    queue = deque([(start, _key(start, anchors), 0, 0)])
    truncated: Optional[str] = None
    while queue:
        c, key, depth, eps = queue.popleft()
        for r, d, nxt in step(a, c, candidate_values(c, w)):
            n_eps = eps + (r.label is None)
            if is_accepting(nxt):
                run = [(r, d)]
                while key is not None:
                    link = parent[key]
                    if link is None:
                        break
                    key, step_taken = link
                    run.append(step_taken)
                run.reverse()
                return Accepted(tuple(run))
            nkey = _key(nxt, anchors)
            if nkey in parent:
                continue
            cut = prune(nxt, depth + 1, n_eps)
            if cut is not None:
                if cut != "drop":
                    truncated = cut
                continue
            parent[nkey] = (key, (r, d))
            queue.append((nxt, nkey, depth + 1, n_eps))
    return Unknown(truncated) if truncated else Rejected()


def _height_exceeds_input(c: Configuration, depth: int, eps: int) -> Optional[str]:
    return "drop" if c.height > len(c.input) else None


def member_growing(a: Rpda, w: Sequence[Letter]) -> MembershipVerdict:
    """Decide ``w in L(a)`` for a growing (or epsilon-free) automaton.

    Each epsilon step pushes and each pop reads a letter, so accepting runs
    have length at most ``2|w|+1``; the search never looks further.
    """
    label = classify(a)
    if not label.implies(Subclass.GROWING):
        raise SubclassError(f"member_growing needs a growing automaton, got {label.value}")
    limit = 2 * len(w) + 1

    def prune(c: Configuration, depth: int, eps: int) -> Optional[str]:
        if depth > limit:
            return "drop"
        return _height_exceeds_input(c, depth, eps)

    return _search(a, w, prune)


def member_non_decreasing(a: Rpda, w: Sequence[Letter]) -> MembershipVerdict:
    """Decide ``w in L(a)`` for a non-decreasing automaton (epsilon rules never pop)."""
    label = classify(a)
    if not label.implies(Subclass.NON_DECREASING):
        raise SubclassError(
            f"member_non_decreasing needs a non-decreasing automaton, got {label.value}"
        )
    return _search(a, w, _height_exceeds_input)


def member_general(
    a: Rpda, w: Sequence[Letter], budget: Optional[SearchBudget] = None
) -> MembershipVerdict:
    """Bounded search for any automaton.

    ``Accepted`` is always sound.  ``Rejected`` is returned only when the whole
    reachable space was explored without touching a budget; otherwise the
    answer is ``Unknown``.
    """
    b = default_budget(a, w) if budget is None else budget

    def prune(c: Configuration, depth: int, eps: int) -> Optional[str]:
        if b.max_stack_height is not None and c.height > b.max_stack_height:
            return f"stack height above {b.max_stack_height}"
        if b.max_epsilon_steps is not None and eps > b.max_epsilon_steps:
            return f"more than {b.max_epsilon_steps} epsilon steps"
        if b.max_total_steps is not None and depth > b.max_total_steps:
            return f"run longer than {b.max_total_steps} steps"
        return None

    return _search(a, w, prune)


def decide(
    a: Rpda, w: Sequence[Letter], budget: Optional[SearchBudget] = None
) -> MembershipVerdict:
    """Dispatch to the tightest decider for ``classify(a)``."""
    label = classify(a)
    if label.implies(Subclass.GROWING):
        return member_growing(a, w)
    if label is Subclass.NON_DECREASING:
        return member_non_decreasing(a, w)
    return member_general(a, w, budget)


def accepting_run(
    a: Rpda, w: Sequence[Letter], budget: Optional[SearchBudget] = None
) -> Optional[Tuple[Step, ...]]:
    verdict = decide(a, w, budget)
    return verdict.run if isinstance(verdict, Accepted) else None
