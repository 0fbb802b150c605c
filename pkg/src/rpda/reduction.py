"""Generators that turn TM membership, 3-SAT and emptiness questions into RPDA questions.

``tm_to_rpda``
    A space-bounded TM run on ``u`` becomes a non-decreasing automaton that
    accepts the one-letter word ``(a, bottom)`` iff the TM accepts ``u``.  The
    registers hold one distinct value per tape symbol followed by one register
    per tape cell; the head position and scanned symbol live in the state.
``cnf_to_rpda``
    A 3-CNF over ``n`` variables becomes an epsilon-free ``(2n+1)``-register
    automaton accepting ``(a, d)^(n+m+3)`` (for any non-bottom ``d``) iff the
    formula is satisfiable.
``de_epsilonize``
    Relabels every epsilon rule with a letter; emptiness is unaffected.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .core import (
    BOTTOM,
    TT,
    And,
    DataWord,
    Not,
    RegEq,
    Rpda,
    TransitionRule,
    named,
    rule,
)
from .turing import BLANK, TuringMachine, check_space_bound

Literal = Tuple[int, bool]  # (variable index from 1, positive?)
Clause = Tuple[Literal, Literal, Literal]


class ReductionError(ValueError):
    pass


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: Tuple[Clause, ...]

    def __post_init__(self) -> None:
        for c in self.clauses:
            if len(c) != 3:
                raise ValueError(f"clause {c} does not have exactly 3 literals")
            for j, _ in c:
                if not 1 <= j <= self.num_vars:
                    raise ValueError(f"variable {j} outside 1..{self.num_vars}")

    @classmethod
    def from_ints(cls, num_vars: int, clauses: Iterable[Sequence[int]]) -> CnfFormula:
        """DIMACS-style literals: ``3`` is y3, ``-3`` is not y3."""
        return cls(num_vars, tuple(tuple((abs(x), x > 0) for x in c) for c in clauses))

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        """*assignment[j-1]* is the value of variable ``j``."""
        return all(any(assignment[j - 1] == pos for j, pos in c) for c in self.clauses)


@dataclass(frozen=True)
class ReductionReport:
    generated: Rpda
    target_word: DataWord
    provenance: Dict[TransitionRule, str]


def literal_register(lit: Literal) -> int:
    j, positive = lit
    return 2 * j if positive else 2 * j + 1


def sat_bruteforce(phi: CnfFormula, max_vars: int = 24) -> Optional[Tuple[bool, ...]]:
    """Exhaustive truth-table search; first satisfying assignment or ``None``."""
    if phi.num_vars > max_vars:
        raise ValueError(f"{phi.num_vars} variables is too many for a truth table")
    for bits in itertools.product((False, True), repeat=phi.num_vars):
        if phi.evaluate(bits):
            return bits
    return None


class _Collector:
    def __init__(self) -> None:
        self.rules: List[TransitionRule] = []
        self.provenance: Dict[TransitionRule, str] = {}

    def add(self, family: str, r: TransitionRule) -> None:
        if r not in self.provenance:
            self.rules.append(r)
            self.provenance[r] = family


CNF_VALUE = named("d1")


def cnf_to_rpda(phi: CnfFormula) -> ReductionReport:
    """Register 1 keeps the input value (read as true, bottom as false); registers
    ``2j`` / ``2j+1`` receive it when ``y_j`` / ``not y_j`` is chosen true."""
    n, m = phi.num_vars, len(phi.clauses)
    out = _Collector()
    out.add("init", rule("q0", "a", TT, "P0", (1,), load=1))
    for i in range(1, n + 1):
        for j in (0, 1):
            out.add("choose-literal", rule(f"P{i - 1}", "a", RegEq(1), f"P{i}", (1,), load=2 * i + j))
    out.add("begin-clauses", rule(f"P{n}", "a", RegEq(1), "C0", (1,)))
    for i, clause in enumerate(phi.clauses, 1):
        for lit in clause:
            out.add("check-clause", rule(f"C{i - 1}", "a", RegEq(literal_register(lit)), f"C{i}", (1,)))
    out.add("accept", rule(f"C{m}", "a", RegEq(1), "E", ()))
    states = ["q0", *(f"P{i}" for i in range(n + 1)), *(f"C{i}" for i in range(m + 1)), "E"]
    a = Rpda.build(2 * n + 1, "q0", out.rules, states=states, alphabet=["a"])
    return ReductionReport(a, (("a", CNF_VALUE),) * (n + m + 3), out.provenance)


def _t(i: int, j: int) -> str:
    return f"T_{i}_{j}"


def _ab(kind: str, q: str, i: int, j: int) -> str:
    return f"{kind}_{q}_{i}_{j}"


def tm_state_count(m: TuringMachine, u: Sequence[int], p: int) -> int:
    """Closed-form size of the state set produced by :func:`tm_to_rpda`."""
    g = m.gamma_size
    return g * (g - 1) // 2 + 1 + (len(u) + 1) + 2 * len(m.states) * g * p + 1


def tm_to_rpda(m: TuringMachine, u: Sequence[int], p: int) -> ReductionReport:
    """Build the non-decreasing ``(|Gamma| + p)``-RPDA simulating *m* on *u*.

    Registers ``1..|Gamma|`` hold one pairwise distinct value per tape symbol
    (register 1, the blank, keeps bottom); register ``|Gamma| + j`` holds the
    symbol value of tape cell ``j``.  State ``A_q_i_j`` means "in state q,
    head on cell j, which holds i"; ``B_q_i_j`` is the same with the cell
    content still to be verified against the registers.
    """
    u = tuple(u)
    g = m.gamma_size
    if any(x not in m.input_symbols for x in u):
        raise ReductionError(f"input {u} is not over the machine's input symbols")
    if not check_space_bound(m, u, p):
        raise ReductionError(f"machine is not {p}-space bounded on input {u}")
    if len(u) > p:
        raise ReductionError(f"input of length {len(u)} does not fit in {p} cells")
    states_m = sorted(m.states)
    out = _Collector()
    cell = lambda j: g + j  # noqa: E731

    # distinct non-bottom values into registers 2..g, register 1 stays bottom
    for i in range(2, g + 1):
        out.add("load-symbol", rule(_t(i - 1, i - 2), None, Not(RegEq(1)), _t(i, 1), (1,), load=i))
        for j in range(2, i):
            out.add(
                "distinct-symbol",
                rule(_t(i, j - 1), None, And(RegEq(i), Not(RegEq(j))), _t(i, j), (1,)),
            )
    out.add("begin-tape", rule(_t(g, g - 1), None, TT, "W_0", (1,)))
    for i, sym in enumerate(u, 1):
        out.add("load-input", rule(f"W_{i - 1}", None, RegEq(sym), f"W_{i}", (1,), load=cell(i)))
    first = u[0] if u else BLANK
    out.add("start", rule(f"W_{len(u)}", None, TT, _ab("A", m.initial, first, 1), (1,)))

    for q in states_m:
        for i in m.gamma:
            q2, b, move = m.delta[(q, i)]
            for j in range(1, p + 1):
                j2 = max(1, j + (1 if move == "R" else -1))
                if j2 > p:
                    continue  # never taken by a p-space-bounded machine
                for a in m.gamma:
                    out.add(
                        "write-move",
                        rule(_ab("A", q, i, j), None, RegEq(b), _ab("B", q2, a, j2), (1,), load=cell(j)),
                    )
    for q in states_m:
        for a in m.gamma:
            for j in range(1, p + 1):
                out.add(
                    "read-cell",
                    rule(_ab("B", q, a, j), None, And(RegEq(a), RegEq(cell(j))), _ab("A", q, a, j), (1,)),
                )
    for qf in sorted(m.accepting):
        for i in m.gamma:
            for j in range(1, p + 1):
                out.add("accept", rule(_ab("A", qf, i, j), "a", RegEq(1), "E", ()))

    states = [_t(1, 0)]
    states += [_t(i, j) for i in range(2, g + 1) for j in range(1, i)]
    states += [f"W_{i}" for i in range(len(u) + 1)]
    states += [_ab(k, q, i, j) for k in "AB" for q in states_m for i in m.gamma for j in range(1, p + 1)]
    states.append("E")
    a = Rpda.build(g + p, _t(1, 0), out.rules, states=states, alphabet=["a"])
    return ReductionReport(a, (("a", BOTTOM),), out.provenance)


def de_epsilonize(a: Rpda, label: str = "a") -> Rpda:
    """Replace the label of every epsilon rule by *label*, which joins the alphabet."""
    rules = tuple(replace(r, label=label) if r.label is None else r for r in a.rules)
    return Rpda(a.k, a.states, a.initial, rules, a.alphabet | {label})
