import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rpda.turing import (
    SpaceExceeded,
    TmConfiguration,
    TuringMachine,
    check_space_bound,
    initial_tm_configuration,
    m_even,
    tm_accepts,
    tm_step,
)


def right_runner():
    return TuringMachine(
        states=frozenset({"go"}),
        gamma_size=2,
        input_symbols=frozenset({2}),
        delta={("go", 1): ("go", 1, "R"), ("go", 2): ("go", 2, "R")},
        initial="go",
        accepting=frozenset(),
    )


class TestStep:
    def test_left_move_at_first_cell_stays(self):
        c = tm_step(m_even(), TmConfiguration("acc", (2, 3), 1))
        assert c == TmConfiguration("acc", (2, 3), 1)

    def test_right_move_off_the_end_appends_blank(self):
        c = tm_step(m_even(), TmConfiguration("odd", (2, 2), 2))
        assert c == TmConfiguration("even", (2, 2, 1), 3)

    def test_interior_move_keeps_length(self):
        c = tm_step(m_even(), TmConfiguration("even", (3, 2, 3), 2))
        assert c == TmConfiguration("odd", (3, 2, 3), 3)
        c = tm_step(m_even(), TmConfiguration("rej", (3, 2, 3), 2))
        assert c == TmConfiguration("rej", (3, 2, 3), 1)

    def test_write(self):
        m = TuringMachine(
            frozenset({"p"}), 2, frozenset({2}),
            {("p", 1): ("p", 2, "L"), ("p", 2): ("p", 1, "L")}, "p", frozenset(),
        )
        assert tm_step(m, TmConfiguration("p", (2, 2), 2)) == TmConfiguration("p", (2, 1), 1)


def test_hand_traced_runs():
    m = m_even()
    # u = 2 2: even@1 -> odd@2 -> even@3 (tape grew) -> acc@2
    c = initial_tm_configuration(m, (2, 2))
    trace = [c]
    for _ in range(3):
        c = tm_step(m, c)
        trace.append(c)
    assert trace == [
        TmConfiguration("even", (2, 2), 1),
        TmConfiguration("odd", (2, 2), 2),
        TmConfiguration("even", (2, 2, 1), 3),
        TmConfiguration("acc", (2, 2, 1), 2),
    ]
    assert tm_accepts(m, (2, 2), 3) is True
    # u = 2: even@1 -> odd@2 -> rej@1 -> rej@1 (repeat)
    assert tm_accepts(m, (2,), 2) is False


def test_empty_input_starts_on_one_blank():
    assert initial_tm_configuration(m_even(), ()) == TmConfiguration("even", (1,), 1)
    assert tm_accepts(m_even(), (), 1) is True


def test_initial_accepting_state_accepts_immediately():
    m = right_runner()
    m = TuringMachine(m.states, m.gamma_size, m.input_symbols, m.delta, m.initial, frozenset({"go"}))
    assert tm_accepts(m, (2, 2), 2)


def test_space_exceeded():
    with pytest.raises(SpaceExceeded):
        tm_accepts(right_runner(), (2,), 5)


@pytest.mark.parametrize("n", range(4))
def test_m_even_language(n):
    for u in itertools.product((2, 3), repeat=n):
        assert tm_accepts(m_even(), u, n + 1) == (u.count(2) % 2 == 0)


def test_check_space_bound():
    for n in range(4):
        for u in itertools.product((2, 3), repeat=n):
            assert check_space_bound(m_even(), u, n + 1)
            if n:
                assert not check_space_bound(m_even(), u, n)
    assert not check_space_bound(right_runner(), (2, 2), 2)
    assert check_space_bound(m_even(), (2, 3), 10**6)


def test_delta_must_be_total():
    with pytest.raises(ValueError, match="delta not total"):
        TuringMachine(frozenset({"p"}), 2, frozenset({2}), {("p", 1): ("p", 1, "R")}, "p", frozenset())


def test_blank_is_not_an_input_symbol():
    m = m_even()
    with pytest.raises(ValueError):
        TuringMachine(m.states, 3, frozenset({1, 2}), m.delta, m.initial, m.accepting)


@given(st.lists(st.sampled_from([2, 3]), max_size=6), st.integers(0, 40))
def test_head_stays_on_tape_and_tape_grows_by_at_most_one(u, steps):
    m = m_even()
    c = initial_tm_configuration(m, u)
    for _ in range(steps):
        nxt = tm_step(m, c)
        assert 1 <= nxt.head <= len(nxt.tape)
        assert len(c.tape) <= len(nxt.tape) <= len(c.tape) + 1
        assert tm_step(m, c) == nxt
        c = nxt
