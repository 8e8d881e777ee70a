import random
from fractions import Fraction

import pytest

from delaysched import (
    PeriodicSchedule,
    build_framed_schedule,
    build_window,
    is_collision_free_at,
    line_network,
    make_network,
    rate_vector,
    schedule_from_closed_path,
    schedule_from_json,
    schedule_to_json,
    validate,
    verify,
)
from conftest import v

F = Fraction


def s_prime_n4():
    """Period-3 schedule around the three-column collision witness."""
    return PeriodicSchedule(3, ((1, 0, 0), (1, 1, 0), (0, 1, 1), (0, 0, 1)))


def test_empty_collision_set_is_always_free(line41):
    s = PeriodicSchedule(2, ((1, 1), (0, 0), (0, 0), (1, 1)))
    for t in range(4):
        assert is_collision_free_at(line41, s, "l4", t)


def test_hyper_collision_at_reference_slot(hyper_n4):
    s = s_prime_n4()
    assert not is_collision_free_at(hyper_n4, s, "l2", 1)
    # The pair straddles the period wrap for the other active slots.
    assert is_collision_free_at(hyper_n4, s, "l2", 0)
    assert not is_collision_free_at(hyper_n4, s, "l3", 1)
    assert is_collision_free_at(hyper_n4, s, "l3", 2)


def test_collision_check_wraps_modulo_period(line41):
    s = PeriodicSchedule(2, ((1, 0), (0, 1), (0, 1), (1, 0)))
    # (l1, 0): both collision sets are checked at their offsets mod 2,
    # and negative slots read the same wrapped columns.
    assert not is_collision_free_at(line41, s, "l1", 0)
    assert is_collision_free_at(line41, s, "l1", -2) == is_collision_free_at(
        line41, s, "l1", 0
    )
    assert is_collision_free_at(line41, s, "l2", -1) == is_collision_free_at(
        line41, s, "l2", 1
    )


def test_verify_reference_cases(line41, hyper_n4):
    assert verify(line41, PeriodicSchedule(3, ((0,) * 3,) * 4))
    assert not verify(hyper_n4, s_prime_n4())


def test_rate_vector_zero_and_colliding(hyper_n4):
    zero = PeriodicSchedule(2, ((0, 0),) * 4)
    assert rate_vector(hyper_n4, zero) == (F(0),) * 4
    # One of each middle link's two active slots collides.
    assert rate_vector(hyper_n4, s_prime_n4()) == (F(1, 3),) * 4


def test_rate_vector_counts_only_collision_free_slots(line41):
    s = PeriodicSchedule(2, ((1, 0), (0, 1), (0, 1), (1, 0)))
    # (l1,0) collides via l2 one slot later; (l3,1) collides via l4 at wrap.
    assert rate_vector(line41, s) == (F(0), F(1, 2), F(0), F(1, 2))


def test_rate_vector_of_half_rate_cycle_schedule(line41):
    path = (v(5), v(8), v(7), v(6), v(5))
    s = schedule_from_closed_path(path, 1, 4)
    assert verify(line41, s)
    assert rate_vector(line41, s) == (F(1, 2),) * 4
    # Collision-free schedules earn every active slot.
    assert rate_vector(line41, s) == tuple(
        F(sum(row), s.period) for row in s.rows
    )


def test_framed_schedule_reference(line41):
    s = build_framed_schedule(line41, [({"l1", "l4"}, 1)], 3)
    assert s.period == 3
    assert verify(line41, s)
    assert rate_vector(line41, s) == (F(2, 3), F(0), F(0), F(2, 3))


def test_framed_schedule_empty_frame(line41):
    s = build_framed_schedule(line41, [(set(), 1)], 3)
    assert s.period == 3
    assert s.rows == ((0, 0, 0),) * 4


def test_framed_schedule_rejects_dependent_set(line41):
    with pytest.raises(ValueError, match="not independent"):
        build_framed_schedule(line41, [({"l1", "l2"}, 1)], 3)


def test_framed_schedule_rejects_short_frame(line41, hyper_n4):
    with pytest.raises(ValueError, match="below minimum"):
        build_framed_schedule(line41, [({"l1"}, 1)], 2)
    # The general profile needs 3 D* + 1 rather than 2 D* + 1.
    with pytest.raises(ValueError, match="below minimum"):
        build_framed_schedule(hyper_n4, [({"l1"}, 1)], 3)


def test_framed_schedule_hyper_profile(hyper_n4):
    s = build_framed_schedule(hyper_n4, [({"l1", "l2", "l4"}, 1)], 4)
    assert verify(hyper_n4, s)
    assert rate_vector(hyper_n4, s) == (F(3, 4), F(3, 4), F(0), F(3, 4))


def test_framed_rate_factor(line41):
    # rate(l) = (1 - D*/T_F) * (fraction of frames containing l)
    frames = [({"l1", "l4"}, 2), ({"l2"}, 1), (set(), 1)]
    for T_F in (3, 5, 8):
        s = build_framed_schedule(line41, frames, T_F)
        assert verify(line41, s)
        factor = F(T_F - 1, T_F)
        assert rate_vector(line41, s) == (
            factor * F(2, 4), factor * F(1, 4), F(0), factor * F(2, 4),
        )


def test_schedule_from_closed_path_shapes():
    zero = schedule_from_closed_path((0, 0), 2, 3)
    assert zero.period == 2 and zero.rows == ((0, 0),) * 3
    const = schedule_from_closed_path((v(6), v(6)), 1, 4)
    assert const.period == 1 and const.rows == ((1,), (1,), (0,), (0,))
    with pytest.raises(ValueError, match="not closed"):
        schedule_from_closed_path((v(5), v(6)), 1, 4)


def test_one_cycles_give_constant_schedules(line41):
    s = schedule_from_closed_path((v(5), v(5)), 1, 4)
    assert verify(line41, s)
    assert rate_vector(line41, s) == (F(1), F(0), F(0), F(1))


def test_closed_path_below_regime_can_fail_verify(hyper_n4):
    # All 16 columns are scheduling-graph vertices and the graph is
    # complete, so the collision witness is a closed window-1 path; its
    # induced schedule still collides (window 1 is below twice the
    # character).
    cols = [
        int("".join(str(b) for b in col), 2)
        for col in [(1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1)]
    ]
    s = schedule_from_closed_path((*cols, cols[0]), 1, 4)
    assert not verify(hyper_n4, s)


@pytest.mark.parametrize("seed", range(6))
def test_closed_paths_in_regime_verify(line41, hyper_n4, seed):
    rng = random.Random(4000 + seed)
    for net, T in ((line41, 1), (hyper_n4, 2)):
        w2 = build_window(net, 2 * T)
        nbits = len(net.links) * T
        vertices = list(build_window(net, T).independent_sets())
        path = [rng.choice(vertices)]
        for _ in range(rng.randint(1, 4)):
            options = [
                b for b in vertices
                if w2.is_independent((path[-1] << nbits) | b)
            ]
            path.append(rng.choice(options))
        if not w2.is_independent((path[-1] << nbits) | path[0]):
            path.append(0)
        path.append(path[0])
        s = schedule_from_closed_path(tuple(path), T, len(net.links))
        assert verify(net, s)


def test_verify_invariant_under_rotation(line41):
    s = build_framed_schedule(line41, [({"l1", "l4"}, 1), ({"l2"}, 1)], 3)
    rows = s.rows
    for shift in range(s.period):
        rotated = PeriodicSchedule(
            s.period,
            tuple(tuple(row[(t + shift) % s.period] for t in range(s.period))
                  for row in rows),
        )
        assert verify(line41, rotated) == verify(line41, s)


def test_schedule_json_roundtrip(line41):
    s = build_framed_schedule(line41, [({"l1", "l4"}, 1), ({"l3"}, 2)], 3)
    doc = schedule_to_json(line41, s)
    back = schedule_from_json(line41, doc)
    assert back == s
    assert doc["period"] == 9
    assert set(doc["active"]) == {"l1", "l4", "l3"}
