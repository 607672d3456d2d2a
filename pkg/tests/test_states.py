"""States: Bosbach/Riecan verdicts, extremal states, correspondences."""

from fractions import Fraction
from itertools import product as iproduct

import pytest

from blstate.constructors import (
    diagonal_operator_table,
    direct_product,
    four_element_example,
    godel_chain,
    mv_chain,
)
from blstate.operators import identity_table, verify_operator
from blstate.states import (
    NotAStateError,
    RationalState,
    bosbach_solution_space,
    check_state,
    convex_coefficients,
    extremal_states,
    format_fraction,
    is_compatible,
    mix_states,
    pull_back_state,
    sigma_compatible_correspondence,
    solve_linear,
    state_to_image,
)

F = Fraction


def test_example_state_is_bosbach_and_extremal():
    a, _ = four_element_example()
    verdict = check_state(a, (F(0), F(1, 2), F(1), F(1)))
    assert verdict.bosbach and verdict.riecan and verdict.extremal
    assert verdict.state_morphism and verdict.max_join and verdict.luk_mult


def test_two_element_state():
    a = mv_chain(1)
    verdict = check_state(a, (F(0), F(1)))
    assert verdict.bosbach and verdict.extremal


def test_non_state_has_witness():
    a, _ = four_element_example()
    verdict = check_state(a, (F(0), F(1, 3), F(1), F(1)))
    assert not verdict.bosbach and not verdict.riecan
    assert verdict.witnesses[0][0] == "bosbach"


def test_bosbach_riecan_agree_exhaustively_small():
    """Every rational map with small denominators gets matching verdicts.

    check_state raises InternalCheckError on any mismatch, so a clean
    sweep is the assertion.
    """
    values = [F(0), F(1, 2), F(1)]
    for a in (mv_chain(1), mv_chain(2), godel_chain(3)):
        for combo in iproduct(values, repeat=a.size):
            check_state(a, combo)


def test_extremal_states_catalogue():
    a, _ = four_element_example()
    assert [s.values for s in extremal_states(a)] == [(F(0), F(1, 2), F(1), F(1))]
    m4 = mv_chain(4)
    assert [s.values for s in extremal_states(m4)] == [
        tuple(F(i, 4) for i in range(5))
    ]
    square = direct_product(mv_chain(1), mv_chain(1))
    ext = extremal_states(square)
    assert [s.values for s in ext] == [
        (F(0), F(1), F(0), F(1)),  # second-coordinate projection
        (F(0), F(0), F(1), F(1)),  # first-coordinate projection
    ]
    g3 = godel_chain(3)
    assert [s.values for s in extremal_states(g3)] == [(F(0), F(1), F(1))]


def test_all_states_live_in_the_extremal_hull():
    """The Bosbach solution space pinned to the unit box is the hull."""
    square = direct_product(mv_chain(1), mv_chain(1))
    particular, basis = bosbach_solution_space(square)
    assert len(basis) == 1
    ext = [s.values for s in extremal_states(square)]
    # deterministic sample of box-feasible solutions of the linear system
    for t in (F(0), F(1, 4), F(1, 2), F(2, 3), F(1)):
        candidate = tuple(p + t * b for p, b in zip(particular, basis[0]))
        if any(v < 0 or v > 1 for v in candidate):
            continue
        assert check_state(square, candidate).bosbach
        assert convex_coefficients(ext, candidate) is not None


def test_solve_linear_inconsistent():
    assert solve_linear([[F(1)], [F(1)]], [F(0), F(1)]) is None


def test_mix_states_and_hull():
    square = direct_product(mv_chain(1), mv_chain(1))
    ext = extremal_states(square)
    mixed = mix_states(ext, [F(1, 3), F(2, 3)])
    assert check_state(square, mixed.values).bosbach
    assert not check_state(square, mixed.values).extremal
    coeffs = convex_coefficients([s.values for s in ext], mixed.values)
    assert coeffs == (F(1, 3), F(2, 3))
    outside = (F(0), F(1), F(1), F(1))
    assert convex_coefficients([s.values for s in ext], outside) is None


def test_pull_back_state():
    a, sigma = four_element_example()
    op = verify_operator(a, sigma)
    pulled = pull_back_state(op, (F(0), F(1, 2), F(1)))
    assert pulled.values == (F(0), F(1, 2), F(1), F(1))
    ident = verify_operator(a, identity_table(a))
    same = pull_back_state(ident, (F(0), F(1, 2), F(1), F(1)))
    assert same.values == (F(0), F(1, 2), F(1), F(1))
    with pytest.raises(NotAStateError):
        pull_back_state(op, (F(0), F(1, 3), F(1)))


def test_pull_back_through_diagonal():
    b = mv_chain(2)
    square = direct_product(b, b)
    op = verify_operator(square, diagonal_operator_table(b, 1))
    image_state = tuple(F(i, 2) for i in range(3))
    pulled = pull_back_state(op, image_state)
    # (a, b) -> a/2
    expected = tuple(F(i, 2) for i in range(3) for _ in range(3))
    assert pulled.values == expected
    assert is_compatible(op, pulled)


def test_compatibility_filters_states():
    b = mv_chain(1)
    square = direct_product(b, b)
    op = verify_operator(square, diagonal_operator_table(b, 1))
    first = RationalState(square, (F(0), F(0), F(1), F(1)))
    second = RationalState(square, (F(0), F(1), F(0), F(1)))
    assert is_compatible(op, first)
    assert not is_compatible(op, second)


def test_correspondence_reports():
    a, sigma = four_element_example()
    op = verify_operator(a, sigma)
    report = sigma_compatible_correspondence(a, op)
    assert report.bijection_ok
    assert [s.values for s in report.compatible_extremal] == [(F(0), F(1, 2), F(1), F(1))]

    b = mv_chain(1)
    square = direct_product(b, b)
    diag = verify_operator(square, diagonal_operator_table(b, 1))
    rep = sigma_compatible_correspondence(square, diag)
    assert rep.bijection_ok
    assert len(rep.compatible_extremal) == 1
    assert len(extremal_states(square)) == 2  # compatibility strictly filters

    ident = verify_operator(square, identity_table(square))
    rep_id = sigma_compatible_correspondence(square, ident)
    assert rep_id.bijection_ok
    assert [s.values for s in rep_id.compatible_extremal] == [
        s.values for s in rep_id.image_extremal
    ]


def test_state_to_image_round_trip():
    a, sigma = four_element_example()
    op = verify_operator(a, sigma)
    st = RationalState(a, (F(0), F(1, 2), F(1), F(1)))
    assert state_to_image(op, st) == (F(0), F(1, 2), F(1))


def test_format_fraction():
    assert format_fraction(F(1, 2)) == "1/2"
    assert format_fraction(F(1)) == "1"
    assert format_fraction(F(0)) == "0"


def test_random_extremal_mixtures_stay_in_the_hull(corpus):
    """Seeded sampler: random rational mixtures of extremals are states
    and land back inside the hull (exact membership)."""
    import random

    rng = random.Random(7)
    for inst in corpus:
        a = inst.algebra
        if a.size > 9:
            continue
        ext = extremal_states(a)
        points = [s.values for s in ext]
        for _ in range(3):
            raw = [F(rng.randrange(0, 5), 4) for _ in ext]
            total = sum(raw)
            if total == 0:
                continue
            weights = [w / total for w in raw]
            mixed = mix_states(ext, weights)
            assert check_state(a, mixed.values).bosbach
            assert convex_coefficients(points, mixed.values) is not None
