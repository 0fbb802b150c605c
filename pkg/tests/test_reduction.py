import itertools

import pytest

from rpda.core import BOTTOM, Subclass, classify, is_accepting, replay, validate
from rpda.harness import example_a1, reachable_configurations
from rpda.membership import Accepted, member_growing, member_non_decreasing
from rpda.reduction import (
    CnfFormula,
    ReductionError,
    cnf_to_rpda,
    de_epsilonize,
    literal_register,
    sat_bruteforce,
    tm_state_count,
    tm_to_rpda,
)
from rpda.turing import TuringMachine, m_even, tm_accepts

SAT1 = CnfFormula.from_ints(1, [[1, 1, 1]])
UNSAT1 = CnfFormula.from_ints(1, [[1, 1, 1], [-1, -1, -1]])


@pytest.mark.parametrize("lit, reg", [((1, True), 2), ((1, False), 3), ((3, True), 6), ((3, False), 7)])
def test_literal_register(lit, reg):
    assert literal_register(lit) == reg


class TestSatBruteforce:
    def test_satisfiable(self):
        assert sat_bruteforce(SAT1) == (True,)

    def test_unsatisfiable(self):
        assert sat_bruteforce(UNSAT1) is None

    def test_empty_formula(self):
        assert sat_bruteforce(CnfFormula(3, ())) is not None

    def test_too_many_variables(self):
        with pytest.raises(ValueError):
            sat_bruteforce(CnfFormula(25, ()))


class TestCnfToRpda:
    def test_shape(self):
        rep = cnf_to_rpda(SAT1)
        a = rep.generated
        assert a.k == 3
        assert a.states == {"q0", "P0", "P1", "C0", "C1", "E"}
        # the three literals of the clause coincide, so the clause family collapses to one rule
        assert len(a.rules) == 1 + 2 + 1 + 1 + 1
        assert rep.target_word == (("a", rep.target_word[0][1]),) * 5
        assert rep.target_word[0][1] != BOTTOM
        assert validate(a) == []

    def test_rule_count_without_duplicates(self):
        phi = CnfFormula.from_ints(2, [[1, -1, 2]])
        a = cnf_to_rpda(phi).generated
        n, m = 2, 1
        assert len(a.rules) == 1 + 2 * n + 1 + 3 * m + 1
        assert len(a.states) == n + m + 4

    def test_epsilon_free(self):
        assert classify(cnf_to_rpda(UNSAT1).generated) is Subclass.EPSILON_FREE

    def test_provenance_covers_every_rule(self):
        rep = cnf_to_rpda(CnfFormula.from_ints(2, [[1, -2, 2], [-1, -1, 2]]))
        assert set(rep.provenance) == set(rep.generated.rules)
        assert set(rep.provenance.values()) == {"init", "choose-literal", "begin-clauses", "check-clause", "accept"}

    def test_deterministic(self):
        phi = CnfFormula.from_ints(2, [[1, -2, 2]])
        assert cnf_to_rpda(phi) == cnf_to_rpda(phi)

    @pytest.mark.parametrize("phi, sat", [(SAT1, True), (UNSAT1, False)])
    def test_membership_matches_satisfiability(self, phi, sat):
        rep = cnf_to_rpda(phi)
        assert isinstance(member_growing(rep.generated, rep.target_word), Accepted) == sat
        assert (sat_bruteforce(phi) is not None) == sat


class TestTmToRpda:
    @pytest.mark.parametrize("u", [(), (2,), (3, 2), (2, 3, 2)])
    def test_shape(self, u):
        m = m_even()
        p = len(u) + 1
        rep = tm_to_rpda(m, u, p)
        a = rep.generated
        assert a.k == m.gamma_size + p
        assert len(a.states) == tm_state_count(m, u, p)
        assert classify(a) is Subclass.NON_DECREASING
        assert all(r.kind == "replace" for r in a.rules if r.label is None)
        assert rep.target_word == (("a", BOTTOM),)
        assert set(rep.provenance) == set(a.rules)
        assert validate(a) == []

    def test_space_violation_is_reported(self):
        with pytest.raises(ReductionError):
            tm_to_rpda(m_even(), (2, 3), 2)

    def test_bad_input_symbol(self):
        with pytest.raises(ReductionError):
            tm_to_rpda(m_even(), (1,), 3)

    @pytest.mark.parametrize("n", range(4))
    def test_equivalence_with_tm(self, n):
        m = m_even()
        for u in itertools.product((2, 3), repeat=n):
            rep = tm_to_rpda(m, u, n + 1)
            verdict = member_non_decreasing(rep.generated, rep.target_word)
            assert isinstance(verdict, Accepted) == tm_accepts(m, u, n + 1)
            if isinstance(verdict, Accepted):
                assert is_accepting(replay(rep.generated, rep.target_word, verdict.run)[-1])

    def test_symbol_registers_distinct_after_setup(self):
        m = TuringMachine(
            frozenset({"p", "f"}), 4, frozenset({2, 3, 4}),
            {(q, a): ("f", a, "L") for q in ("p", "f") for a in (1, 2, 3, 4)},
            "p", frozenset({"f"}),
        )
        u = (4, 2)
        rep = tm_to_rpda(m, u, 4)
        setup = {r.target for r, fam in rep.provenance.items() if fam in ("begin-tape", "load-input", "start")}
        seen_past_setup = 0
        for c in reachable_configurations(rep.generated, rep.target_word, 60, 2):
            if c.state in setup or c.state.startswith(("A_", "B_")) or c.state == "E":
                seen_past_setup += 1
                assert c.regs[0] == BOTTOM
                symbols = c.regs[1 : m.gamma_size]
                assert BOTTOM not in symbols
                assert len(set(symbols)) == len(symbols)
        assert seen_past_setup > 0

    def test_deterministic(self):
        assert tm_to_rpda(m_even(), (2, 3), 3) == tm_to_rpda(m_even(), (2, 3), 3)


class TestDeEpsilonize:
    def test_a1(self):
        a1 = example_a1()
        g = de_epsilonize(a1)
        assert classify(g) is Subclass.EPSILON_FREE
        assert len(g.rules) == len(a1.rules)
        assert g.states == a1.states and g.k == a1.k and g.initial == a1.initial
        changed = [(r, s) for r, s in zip(a1.rules, g.rules) if r != s]
        assert len(changed) == 1
        r, s = changed[0]
        assert r.label is None and s.label == "a"

    def test_epsilon_free_input_is_unchanged(self):
        a = cnf_to_rpda(SAT1).generated
        assert de_epsilonize(a) == a

    def test_custom_label_joins_alphabet(self):
        g = de_epsilonize(example_a1(), "z")
        assert "z" in g.alphabet and validate(g) == []
