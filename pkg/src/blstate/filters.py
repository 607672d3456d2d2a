"""Filters, radicals and the classification predicates.

Filters are plain ``frozenset[int]`` values over a sealed algebra's
carrier.  Deterministic orderings sort by (size, bit pattern) where the
bit pattern treats element ``i`` as bit ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct
from typing import Iterable, Sequence

from .algebra import FiniteBLAlgebra, INFINITE_ORDER, InternalCheckError

Filter = frozenset


def subset_mask(members: Iterable[int]) -> int:
    m = 0
    for x in members:
        m |= 1 << x
    return m


def filter_sort_key(members: frozenset[int]) -> tuple[int, int]:
    return (len(members), subset_mask(members))


def filter_violation(algebra: FiniteBLAlgebra, members: frozenset[int]):
    """None if ``members`` is a filter, else a short reason string."""
    if not members:
        return "empty set"
    if algebra.top not in members:
        return "top missing"
    if any(not (0 <= x < algebra.size) for x in members):
        return "element out of range"
    for x in members:
        for y in members:
            if algebra.prod[x][y] not in members:
                return f"not closed under prod at ({x}, {y})"
        for y in range(algebra.size):
            if algebra.le(x, y) and y not in members:
                return f"not upward closed at ({x}, {y})"
    return None


def is_filter(algebra: FiniteBLAlgebra, members: frozenset[int]) -> bool:
    return filter_violation(algebra, members) is None


def _filters_by_subset_scan(algebra: FiniteBLAlgebra) -> list[frozenset[int]]:
    n = algebra.size
    top_bit = 1 << algebra.top
    found = []
    for mask in range(1 << n):
        if not mask & top_bit:
            continue
        members = frozenset(i for i in range(n) if mask >> i & 1)
        if is_filter(algebra, members):
            found.append(members)
    return found


def _filters_by_idempotents(algebra: FiniteBLAlgebra) -> list[frozenset[int]]:
    # in a finite BL-algebra every filter is the upset of an idempotent
    return sorted({algebra.upset(a) for a in algebra.idempotents}, key=filter_sort_key)


@lru_cache(maxsize=None)
def all_filters(algebra: FiniteBLAlgebra) -> tuple[frozenset[int], ...]:
    """Every filter, ordered by size then bit pattern.

    Uses the exhaustive subset scan for carriers of at most 16 elements
    and the idempotent-upset construction beyond that; the two routes
    are cross-checked by the test suite for small carriers.
    """
    if algebra.size <= 16:
        found = _filters_by_subset_scan(algebra)
    else:
        found = _filters_by_idempotents(algebra)
    return tuple(sorted(found, key=filter_sort_key))


def filter_generated(algebra: FiniteBLAlgebra, seed: Iterable[int]) -> frozenset[int]:
    """Least filter containing ``seed``: up-closure of finite products."""
    xs = set(seed)
    if not xs:
        raise ValueError("seed must be nonempty")
    members = set(xs)
    members.add(algebra.top)
    changed = True
    while changed:
        changed = False
        cur = list(members)
        for x in cur:
            for y in cur:
                p = algebra.prod[x][y]
                if p not in members:
                    members.add(p)
                    changed = True
        for x in cur:
            for y in range(algebra.size):
                if algebra.le(x, y) and y not in members:
                    members.add(y)
                    changed = True
    return frozenset(members)


def is_maximal_by_power_criterion(algebra: FiniteBLAlgebra, members: frozenset[int]) -> bool:
    """x not in F implies (x^n)- in F for some n, for every element x."""
    for x in range(algebra.size):
        if x in members:
            continue
        if not any(algebra.neg(p) in members for p in algebra.power_values(x)):
            return False
    return True


@lru_cache(maxsize=None)
def maximal_filters(algebra: FiniteBLAlgebra) -> tuple[frozenset[int], ...]:
    """Maximal proper filters, with the power-criterion cross-check."""
    everything = frozenset(range(algebra.size))
    proper = [f for f in all_filters(algebra) if f != everything]
    out = []
    for f in proper:
        if not any(f < g for g in proper):
            out.append(f)
    for f in proper:
        if (f in out) != is_maximal_by_power_criterion(algebra, f):
            raise InternalCheckError(
                f"maximality criterion disagrees with inclusion order on {sorted(f)}"
            )
    return tuple(out)


def radical_by_formula(algebra: FiniteBLAlgebra) -> frozenset[int]:
    """Co-infinitesimals: x with (x^n)- <= x for every n >= 1."""
    out = set()
    for x in range(algebra.size):
        if all(algebra.le(algebra.neg(p), x) for p in algebra.power_values(x)):
            out.add(x)
    return frozenset(out)


@lru_cache(maxsize=None)
def radical(algebra: FiniteBLAlgebra) -> frozenset[int]:
    """Intersection of maximal filters, cross-checked against the
    co-infinitesimal formula."""
    maxes = maximal_filters(algebra)
    if maxes:
        inter = frozenset.intersection(*maxes)
    else:
        inter = frozenset(range(algebra.size))
    formula = radical_by_formula(algebra)
    if inter != formula:
        raise InternalCheckError(
            f"radical mismatch: intersection {sorted(inter)} vs formula {sorted(formula)}"
        )
    return inter


def is_primary(algebra: FiniteBLAlgebra, members: frozenset[int]) -> bool:
    """(a*b)- in P implies (a^n)- in P or (b^n)- in P for some n."""
    n = algebra.size
    for a, b in iproduct(range(n), range(n)):
        if algebra.neg(algebra.prod[a][b]) not in members:
            continue
        ok = any(algebra.neg(p) in members for p in algebra.power_values(a)) or any(
            algebra.neg(p) in members for p in algebra.power_values(b)
        )
        if not ok:
            return False
    return True


@dataclass(frozen=True)
class AlgebraClassification:
    simple: bool
    semisimple: bool
    local: bool
    perfect: bool
    locally_finite: bool
    radical: frozenset[int]
    radical_neg: frozenset[int]
    maximal_filters: tuple[frozenset[int], ...]
    perfect_witness: tuple[int, ...] | None = None


def classify_algebra(algebra: FiniteBLAlgebra) -> AlgebraClassification:
    """All classification flags with their internal cross-checks.

    The one-element algebra is degenerate: it is reported as not simple
    (it has a single filter), not local, not locally finite and trivially
    semisimple; the equivalence cross-checks are skipped for it.
    """
    n = algebra.size
    everything = frozenset(range(n))
    filters = all_filters(algebra)
    maxes = tuple(maximal_filters(algebra))
    rad = radical(algebra)
    rad_neg = frozenset(algebra.neg(x) for x in rad)

    simple = len(filters) == 2
    semisimple = rad == frozenset({algebra.top})
    local = len(maxes) == 1
    locally_finite = all(
        algebra.ord_of(x) != INFINITE_ORDER for x in range(n) if x != algebra.top
    )

    perfect_witness = None
    perfect = True
    for x in range(n):
        if x not in rad and x not in rad_neg:
            perfect = False
            perfect_witness = (x,)
            break

    if n > 1:
        # local iff ord(x) or ord(x-) finite for every x
        ord_local = all(
            algebra.ord_of(x) != INFINITE_ORDER
            or algebra.ord_of(algebra.neg(x)) != INFINITE_ORDER
            for x in range(n)
        )
        if ord_local != local:
            raise InternalCheckError("local flag disagrees with the order criterion")
        if locally_finite != simple:
            raise InternalCheckError("locally finite and simple flags disagree")
        # local iff every proper filter is primary
        all_primary = all(
            is_primary(algebra, f) for f in filters if f != everything
        )
        if all_primary != local:
            raise InternalCheckError("local flag disagrees with the primary-filter criterion")
        # radical closure facts
        for x in rad:
            if algebra.neg(x) not in rad_neg:
                raise InternalCheckError("x in Rad does not give x- in Rad-")
        for x in rad_neg:
            if algebra.neg(x) not in rad:
                raise InternalCheckError("x in Rad- does not give x- in Rad")
        if perfect:
            for x in rad:
                for y in rad_neg:
                    if not algebra.le(algebra.neg(x), algebra.neg(y)):
                        raise InternalCheckError(
                            f"perfect-algebra negation comparison fails at ({x}, {y})"
                        )

    return AlgebraClassification(
        simple=simple,
        semisimple=semisimple,
        local=local,
        perfect=perfect,
        locally_finite=locally_finite,
        radical=rad,
        radical_neg=rad_neg,
        maximal_filters=maxes,
        perfect_witness=perfect_witness,
    )


@lru_cache(maxsize=None)
def state_filters(
    algebra: FiniteBLAlgebra, sigma: tuple[int, ...]
) -> tuple[frozenset[int], ...]:
    """Filters closed under the operator table ``sigma``."""
    return tuple(
        f for f in all_filters(algebra) if all(sigma[x] in f for x in f)
    )


def least_nontrivial(
    filters: Sequence[frozenset[int]], top: int
) -> frozenset[int] | None:
    """Unique minimum of the nontrivial members, or None."""
    trivial = frozenset({top})
    nontrivial = [f for f in filters if f != trivial]
    for f in nontrivial:
        if all(f <= g for g in nontrivial):
            return f
    return None


def subdirectly_irreducible(
    algebra: FiniteBLAlgebra, sigma=None
) -> tuple[bool, frozenset[int] | None]:
    """Whether the nontrivial (state-)filters have a unique minimum.

    With ``sigma`` given (an operator table or a verified operator),
    only filters closed under it count.  Returns the least nontrivial
    (state-)filter when it exists.
    """
    if sigma is not None and hasattr(sigma, "table"):
        sigma = sigma.table
    fams = state_filters(algebra, tuple(sigma)) if sigma is not None else all_filters(algebra)
    least = least_nontrivial(fams, algebra.top)
    return (least is not None, least)
