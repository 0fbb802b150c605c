"""Line-oriented text formats for automata, data words, Turing machines and CNF.

The grammars are documented in ``docs/formats.md``.  Every ``format_*``
function produces text that the matching ``parse_*`` reads back to an equal
value.
"""

from __future__ import annotations

import re
from typing import List, Optional, Sequence, Tuple

from .core import (
    BOTTOM,
    FF,
    TOP_EQ,
    TT,
    And,
    DataWord,
    Guard,
    Not,
    Or,
    RegEq,
    Rpda,
    TopEq,
    TransitionRule,
    Tt,
    named,
    validate,
)
from .reduction import CnfFormula
from .turing import TuringMachine


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


# -- guards -----------------------------------------------------------------

_GUARD_TOKEN = re.compile(r"\s*(x\d+!=|x\d+=|top!=|top=|tt|ff|[()!&|])")


def _tokenize_guard(text: str) -> List[str]:
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _GUARD_TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"unexpected {text[pos:].strip()!r} in guard")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


def parse_guard(text: str) -> Guard:
    tokens = _tokenize_guard(text)
    if not tokens:
        raise ValueError("empty guard")
    pos = 0

    def atom() -> Guard:
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("guard ends unexpectedly")
        tok = tokens[pos]
        pos += 1
        if tok == "!":
            return Not(atom())
        if tok == "(":
            g = atom()
            op = None
            while pos < len(tokens) and tokens[pos] in "&|":
                if op is not None and tokens[pos] != op:
                    raise ValueError("mixing & and | needs parentheses")
                op = tokens[pos]
                pos += 1
                rhs = atom()
                g = And(g, rhs) if op == "&" else Or(g, rhs)
            if op is None or pos >= len(tokens) or tokens[pos] != ")":
                raise ValueError("expected '(G & G)' or '(G | G)'")
            pos += 1
            return g
        if tok == "tt":
            return TT
        if tok == "ff":
            return FF
        if tok == "top=":
            return TOP_EQ
        if tok == "top!=":
            return Not(TOP_EQ)
        if tok.startswith("x"):
            i = int(tok[1:].rstrip("!="))
            return Not(RegEq(i)) if tok.endswith("!=") else RegEq(i)
        raise ValueError(f"unexpected {tok!r} in guard")

    g = atom()
    if pos != len(tokens):
        raise ValueError(f"trailing {' '.join(tokens[pos:])!r} after guard")
    return g


def format_guard(g: Guard) -> str:
    """Inverse of :func:`parse_guard`; the sugar it emits parses back to the same tree."""
    if isinstance(g, Tt):
        return "tt"
    if isinstance(g, TopEq):
        return "top="
    if isinstance(g, RegEq):
        return f"x{g.index}="
    if isinstance(g, Or):
        return f"({format_guard(g.left)} | {format_guard(g.right)})"
    inner = g.operand
    if isinstance(inner, Tt):
        return "ff"
    if isinstance(inner, TopEq):
        return "top!="
    if isinstance(inner, RegEq):
        return f"x{inner.index}!="
    if isinstance(inner, Or) and isinstance(inner.left, Not) and isinstance(inner.right, Not):
        return f"({format_guard(inner.left.operand)} & {format_guard(inner.right.operand)})"
    return "!" + format_guard(inner)


# -- automata ---------------------------------------------------------------

EPS = "eps"


def parse_rule(line: str) -> TransitionRule:
    if "->" not in line:
        raise ValueError("rule needs '-> TARGET'")
    lhs, rhs = line.rsplit("->", 1)
    target = rhs.split()
    if len(target) != 1:
        raise ValueError("exactly one target state after '->'")
    tokens = lhs.split()
    if len(tokens) < 3:
        raise ValueError("rule needs SOURCE LABEL ... ACTION -> TARGET")
    source, label = tokens[0], tokens[1]
    body = tokens[2:]

    def nums(xs: Sequence[str]) -> Tuple[int, ...]:
        if not all(x.isdigit() for x in xs):
            raise ValueError(f"register indices expected, got {' '.join(xs)!r}")
        return tuple(int(x) for x in xs)

    if body[-1] == "pop":
        action, body = (), body[:-1]
    elif len(body) >= 2 and body[-2] == "replace":
        action, body = nums(body[-1:]), body[:-2]
    elif len(body) >= 3 and body[-3] == "push":
        action, body = nums(body[-2:]), body[:-3]
    else:
        raise ValueError("rule must end with 'pop', 'replace J' or 'push J1 J2' before '->'")
    load = None
    if len(body) >= 2 and body[-2] == "load":
        load = nums(body[-1:])[0]
        body = body[:-2]
    guard = parse_guard(" ".join(body)) if body else TT
    return TransitionRule(source, None if label == EPS else label, guard, load, target[0], action)


def format_rule(r: TransitionRule) -> str:
    parts = [r.source, EPS if r.label is None else r.label, format_guard(r.guard)]
    if r.load is not None:
        parts += ["load", str(r.load)]
    parts.append(r.kind)
    parts += [str(j) for j in r.action]
    parts += ["->", r.target]
    return " ".join(parts)


def parse_rpda(text: str) -> Rpda:
    k = initial = None
    states: List[str] = []
    alphabet: List[str] = []
    rules: List[TransitionRule] = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        head, _, rest = line.partition(" ")
        try:
            if head == "registers":
                if k is not None:
                    raise ValueError("duplicate 'registers' line")
                k = int(rest)
            elif head == "initial":
                if initial is not None or len(rest.split()) != 1:
                    raise ValueError("'initial' takes one state, once")
                initial = rest.strip()
            elif head == "states":
                states += rest.split()
            elif head == "alphabet":
                alphabet += rest.split()
            else:
                rules.append(parse_rule(line))
        except ValueError as exc:
            raise ParseError(str(exc), n) from None
    if k is None:
        raise ParseError("missing 'registers K' line")
    if initial is None:
        raise ParseError("missing 'initial STATE' line")
    if EPS in alphabet:
        raise ParseError(f"'{EPS}' is reserved for the empty label")
    a = Rpda.build(k, initial, rules, states=states, alphabet=alphabet)
    problems = validate(a)
    if problems:
        raise ParseError("; ".join(problems))
    return a


def format_rpda(a: Rpda, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"registers {a.k}")
    lines.append(f"initial {a.initial}")
    lines.append("states " + " ".join(sorted(a.states)))
    if a.alphabet:
        lines.append("alphabet " + " ".join(sorted(a.alphabet)))
    lines += [format_rule(r) for r in a.rules]
    return "\n".join(lines) + "\n"


# -- data words -------------------------------------------------------------


def parse_word(text: str) -> DataWord:
    letters = []
    for tok in _strip_all(text).split():
        sym, sep, val = tok.partition(":")
        if not sep or not sym or not val:
            raise ParseError(f"token {tok!r} is not SYMBOL:VALUE")
        letters.append((sym, BOTTOM if val == "_" else named(val)))
    return tuple(letters)


def _strip_all(text: str) -> str:
    return "\n".join(_strip(line) for line in text.splitlines())


def format_word(w: DataWord) -> str:
    return " ".join(f"{s}:{v}" for s, v in w)


# -- Turing machines --------------------------------------------------------


def parse_tm(text: str) -> TuringMachine:
    header: dict = {}
    delta: dict = {}
    for n, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        head, _, rest = line.partition(" ")
        try:
            if head == "delta":
                m = re.fullmatch(r"(\S+)\s+(\d+)\s*->\s*(\S+)\s+(\d+)\s+([LR])", rest.strip())
                if not m:
                    raise ValueError("expected 'delta Q A -> Q2 B L|R'")
                key = (m.group(1), int(m.group(2)))
                if key in delta:
                    raise ValueError(f"second entry for {key}")
                delta[key] = (m.group(3), int(m.group(4)), m.group(5))
            elif head in ("states", "gamma", "input", "initial", "accepting"):
                if head in header:
                    raise ValueError(f"duplicate '{head}' line")
                header[head] = rest.split()
            else:
                raise ValueError(f"unknown line kind {head!r}")
        except ValueError as exc:
            raise ParseError(str(exc), n) from None
    for key in ("states", "gamma", "initial"):
        if key not in header:
            raise ParseError(f"missing '{key}' line")
    try:
        if len(header["gamma"]) != 1 or len(header["initial"]) != 1:
            raise ValueError("'gamma' and 'initial' take a single value")
        return TuringMachine(
            states=frozenset(header["states"]),
            gamma_size=int(header["gamma"][0]),
            input_symbols=frozenset(int(x) for x in header.get("input", [])),
            delta=delta,
            initial=header["initial"][0],
            accepting=frozenset(header.get("accepting", [])),
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_tm(m: TuringMachine) -> str:
    lines = [
        "states " + " ".join(sorted(m.states)),
        f"gamma {m.gamma_size}",
        "input " + " ".join(str(x) for x in sorted(m.input_symbols)),
        f"initial {m.initial}",
        "accepting " + " ".join(sorted(m.accepting)),
    ]
    for (q, a), (q2, b, mv) in sorted(m.delta.items()):
        lines.append(f"delta {q} {a} -> {q2} {b} {mv}")
    return "\n".join(line.rstrip() for line in lines) + "\n"


# -- DIMACS CNF -------------------------------------------------------------


def parse_cnf(text: str) -> CnfFormula:
    """DIMACS ``p cnf N M``.  Clauses with one or two literals are padded by
    repeating their last literal; longer or empty clauses are rejected."""
    n_vars = n_clauses = None
    clauses, current = [], []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] in "c%":
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf" or n_vars is not None:
                raise ParseError("expected a single 'p cnf VARS CLAUSES' header", n)
            n_vars, n_clauses = int(parts[2]), int(parts[3])
            continue
        if n_vars is None:
            raise ParseError("clause before 'p cnf' header", n)
        for tok in line.split():
            try:
                x = int(tok)
            except ValueError:
                raise ParseError(f"not a literal: {tok!r}", n) from None
            if x == 0:
                if not current:
                    raise ParseError("empty clause", n)
                if len(current) > 3:
                    raise ParseError(f"clause arity {len(current)} != 3", n)
                current += [current[-1]] * (3 - len(current))
                clauses.append(tuple(current))
                current = []
            elif abs(x) > n_vars:
                raise ParseError(f"variable {abs(x)} exceeds declared {n_vars}", n)
            else:
                current.append(x)
    if n_vars is None:
        raise ParseError("missing 'p cnf' header")
    if current:
        raise ParseError("last clause is not terminated by 0")
    if len(clauses) != n_clauses:
        raise ParseError(f"header announces {n_clauses} clauses, found {len(clauses)}")
    return CnfFormula.from_ints(n_vars, clauses)


def format_cnf(phi: CnfFormula) -> str:
    lines = [f"p cnf {phi.num_vars} {len(phi.clauses)}"]
    for c in phi.clauses:
        lines.append(" ".join(str(j if pos else -j) for j, pos in c) + " 0")
    return "\n".join(lines) + "\n"
