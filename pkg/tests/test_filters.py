"""Filters, radical, classification predicates, subdirect irreducibility."""
from hypothesis import given, settings

from blstate.algebra import INFINITE_ORDER
from blstate.constructors import (
    direct_product,
    four_element_example,
    godel_chain,
    mv_chain,
    ordinal_sum,
    quotient_by_filter,
)
from blstate.filters import (
    _filters_by_idempotents,
    _filters_by_subset_scan,
    all_filters,
    classify_algebra,
    filter_generated,
    filter_sort_key,
    is_primary,
    maximal_filters,
    radical,
    radical_by_formula,
    state_filters,
    subdirectly_irreducible,
)
from blstate.operators import identity_table, verify_operator
from blstate.constructors import diagonal_operator_table

from .strategies import algebras


def brute_force_filters(a):
    """Independent oracle: scan every subset against the two filter axioms."""
    found = []
    n = a.size
    for mask in range(1, 1 << n):
        s = frozenset(i for i in range(n) if mask >> i & 1)
        closed = all(a.prod[x][y] in s for x in s for y in s)
        upward = all(y in s for x in s for y in range(n) if a.le(x, y))
        if closed and upward and a.top in s:
            found.append(s)
    return sorted(found, key=filter_sort_key)


def test_filters_of_example_3_4():
    a, _ = four_element_example()
    expected = brute_force_filters(a)
    assert list(all_filters(a)) == expected
    assert [sorted(f) for f in expected] == [[3], [2, 3], [0, 1, 2, 3]]


def test_filters_of_two_element_algebra():
    a = mv_chain(1)
    assert [sorted(f) for f in all_filters(a)] == [[1], [0, 1]]


@settings(max_examples=30, deadline=None)
@given(algebras)
def test_subset_scan_equals_idempotent_route(a):
    if a.size > 12:
        return
    assert sorted(_filters_by_subset_scan(a), key=filter_sort_key) == list(
        _filters_by_idempotents(a)
    )


def test_filter_generated():
    a, _ = four_element_example()
    assert filter_generated(a, {a.top}) == frozenset({3})
    assert filter_generated(a, {2}) == frozenset({2, 3})
    assert filter_generated(a, {1}) == frozenset({0, 1, 2, 3})  # a*a = 0


def test_maximal_filters_and_radical():
    a, _ = four_element_example()
    assert [sorted(f) for f in maximal_filters(a)] == [[2, 3]]
    assert sorted(radical(a)) == [2, 3]
    # b is co-infinitesimal: (b^n)- = 0 <= b
    assert radical_by_formula(a) == frozenset({2, 3})
    for n in range(1, 5):
        assert radical(mv_chain(n)) == frozenset({mv_chain(n).top})
    square = direct_product(mv_chain(1), mv_chain(1))
    assert len(maximal_filters(square)) == 2
    assert radical(square) == frozenset({square.top})


def test_classification_flags():
    a, _ = four_element_example()
    cls = classify_algebra(a)
    assert cls.local and not cls.perfect and not cls.simple
    assert cls.perfect_witness == (1,)  # a is in neither Rad nor Rad-

    for n in range(1, 5):
        c = classify_algebra(mv_chain(n))
        assert c.simple and c.semisimple and c.locally_finite and c.local

    three = ordinal_sum([mv_chain(1), mv_chain(1)])
    c3 = classify_algebra(three)
    assert c3.perfect and c3.local and not c3.simple
    assert sorted(c3.radical) == [1, 2]


def test_primary_and_quotient_local():
    a, _ = four_element_example()
    everything = frozenset(range(a.size))
    for f in all_filters(a):
        if f == everything:
            continue
        quotient, _ = quotient_by_filter(a, f)
        assert is_primary(a, f) == (len(maximal_filters(quotient)) == 1)


def test_ord_criterion_matches_local():
    for a in (four_element_example()[0], mv_chain(3), godel_chain(4)):
        local = len(maximal_filters(a)) == 1
        crit = all(
            a.ord_of(x) != INFINITE_ORDER or a.ord_of(a.neg(x)) != INFINITE_ORDER
            for x in range(a.size)
        )
        assert local == crit


def test_subdirectly_irreducible_plain():
    b = mv_chain(2)
    a = direct_product(b, b)
    irr, least = subdirectly_irreducible(a)
    assert not irr and least is None  # two incomparable minimal filters
    irr, least = subdirectly_irreducible(b)
    assert irr and least == frozenset(range(3))  # simple: the whole algebra
    g = godel_chain(4)
    irr, least = subdirectly_irreducible(g)
    assert irr and least == frozenset({2, 3})


def test_subdirectly_irreducible_with_operator():
    b = mv_chain(2)
    a = direct_product(b, b)
    sigma = diagonal_operator_table(b, 1)
    irr, least = subdirectly_irreducible(a, sigma)
    op = verify_operator(a, sigma)
    assert irr and least == op.kernel
    # with the identity operator the plain verdict is recovered
    irr_id, _ = subdirectly_irreducible(a, identity_table(a))
    assert not irr_id


def test_state_filters():
    a, sigma = four_element_example()
    fams = state_filters(a, sigma)
    assert [sorted(f) for f in fams] == [[3], [2, 3], [0, 1, 2, 3]]


def test_plain_irreducible_corpus_algebras_are_linear(corpus):
    """Subdirectly irreducible plain algebras in the corpus are chains;
    state algebras need not be (the diagonal instances)."""
    for inst in corpus:
        irr, _ = subdirectly_irreducible(inst.algebra)
        if irr:
            assert inst.algebra.is_linear
    # contrast: a non-linear state algebra that is irreducible
    b = mv_chain(2)
    square = direct_product(b, b)
    assert not subdirectly_irreducible(square)[0]
    assert subdirectly_irreducible(square, diagonal_operator_table(b, 1))[0]
