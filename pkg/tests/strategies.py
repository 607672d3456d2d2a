"""Hypothesis strategies: random sealed algebras built from constructor recipes.

Random tables essentially never satisfy the axioms, so the sensible
search space is the constructor closure: chains, products and ordinal
sums of small pieces.
"""

from hypothesis import strategies as st

from blstate.constructors import (
    direct_product,
    four_element_example,
    godel_chain,
    mv_chain,
    ordinal_sum,
)

_small_chain = st.one_of(
    st.integers(1, 4).map(mv_chain),
    st.integers(2, 4).map(godel_chain),
)
_tiny_chain = st.one_of(
    st.integers(1, 2).map(mv_chain),
    st.integers(2, 3).map(godel_chain),
)

algebras = st.one_of(
    _small_chain,
    st.just(four_element_example()[0]),
    st.tuples(_tiny_chain, _tiny_chain).map(lambda ab: direct_product(*ab)),
    st.lists(_small_chain, min_size=2, max_size=3).map(ordinal_sum),
    st.tuples(_tiny_chain, st.tuples(_tiny_chain, _tiny_chain)).map(
        lambda t: ordinal_sum([t[0], direct_product(*t[1])])
    ),
)

linear_algebras = st.one_of(
    _small_chain,
    st.lists(_small_chain, min_size=2, max_size=3).map(ordinal_sum),
)
