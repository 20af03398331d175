#!/usr/bin/env python3
"""
linear_maps.py

Most symmetries of these spaces are not linear.  This script counts
the linear ones by direct enumeration, checks the antichain closed
form where it applies, and shows why a translation never qualifies.
"""

from ohb import (
    Field,
    SpaceConfig,
    as_rank_table,
    aut_order_antichain,
    aut_report,
    enumerate_automorphisms,
    full_order,
    is_linear,
    make_translation,
)


def main():
    print("antichain configurations (closed form available):")
    for pi in [[[1], [1]], [[2], [1]], [[2], [2]]]:
        cfg = SpaceConfig(Field(2), len(pi), 1, pi)
        formula = aut_order_antichain(cfg)
        count, _ = enumerate_automorphisms(cfg)
        total = full_order(cfg)
        print(
            f"   q=2 pi={pi}: {count} linear of {total} total"
            f" (formula {formula}, {'match' if formula == count else 'MISMATCH'})"
        )

    print()
    print("a chain (no closed form shipped; enumeration only):")
    chain = SpaceConfig(Field(2), 1, 2, [[1, 1]])
    count, tables = enumerate_automorphisms(chain, want_list=True)
    print(f"   q=2 chain n=2: {count} linear of {full_order(chain)} total")
    for t in tables:
        print(f"      rank table {t}, linear: {is_linear(chain, t)}")

    print()
    print("translations preserve distance but break the scalar law:")
    w = chain.unrank(3)
    table = as_rank_table(make_translation(w)).tolist()
    print(f"   translation by rank 3: table {table}, linear: {is_linear(chain, table)}")

    print()
    rep = aut_report(SpaceConfig(Field(2), 2, 1, [[2], [2]]))
    print("report document for q=2, pi=((2),(2)):")
    for k, v in sorted(rep.to_json().items()):
        print(f"   {k}: {v}")


if __name__ == "__main__":
    main()
