#!/usr/bin/env python3
"""Search for state operators that are not strong.

Whether such an operator exists is open; this sweep enumerates both
classes over a family of small algebras and reports any difference as a
candidate counterexample with its witness, never as a proof.
"""

import argparse
import sys

from blstate.constructors import direct_product, godel_chain, mv_chain, ordinal_sum
from blstate.operators import enumerate_operator_tables, verify_operator


def candidates(max_chain: int):
    chains = [mv_chain(n) for n in range(1, max_chain + 1)]
    chains += [godel_chain(n) for n in range(2, max_chain + 1)]
    for a in chains:
        yield a
    for a in chains:
        for b in chains:
            if a.size * b.size <= 9:
                yield direct_product(a, b)
    for a in chains:
        for b in chains:
            if a.is_linear and a.size + b.size - 1 <= 9:
                yield ordinal_sum([a, b])


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-chain", type=int, default=4)
    args = parser.parse_args(argv)

    total_state = total_candidates = 0
    seen = set()
    for a in candidates(args.max_chain):
        key = (a.meet, a.join, a.prod, a.impl)
        if key in seen:
            continue
        seen.add(key)
        state = enumerate_operator_tables(a, "state")
        strong = set(enumerate_operator_tables(a, "strong"))
        gap = [t for t in state if t not in strong]
        total_state += len(state)
        total_candidates += len(gap)
        marker = f"  <-- {len(gap)} candidate(s)" if gap else ""
        print(f"n={a.size:2d} state={len(state):3d} strong={len(strong):3d}{marker}")
        for t in gap:
            op = verify_operator(a, t)
            witness = op.witness_for("3s")
            print(f"    candidate (not a proof): {t} strong axiom fails at {witness}")
    print(f"searched {len(seen)} algebras, {total_state} state operators,"
          f" {total_candidates} candidate(s) that are state but not strong")
    return 0


if __name__ == "__main__":
    sys.exit(main())
