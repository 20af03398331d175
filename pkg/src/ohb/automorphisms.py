"""Linear symmetries of an ordered Hamming block space.

An automorphism is an isometry that is also F_q-linear.  For a single
antichain level (n = 1) the group order has a closed form: a product of
general linear group orders, one per block, times the number of
admissible chain permutations.  For n > 1 no closed form is evaluated
here; enumeration over basis images with weight pruning is the
authority.
"""

from __future__ import annotations

import numpy as np

from .errors import CapExceeded, DomainError, UsageError
from .space import SpaceConfig, add_ranks, scale_ranks, weight_array
from .symmetry import s_pi_order

ENUM_CAP = 1 << 12


def gl_order(q: int, k: int) -> int:
    """Number of invertible k x k matrices over F_q."""
    if k < 1:
        raise UsageError(f"block width must be >= 1, got {k}")
    total = 1
    for t in range(k):
        total *= q ** k - q ** t
    return total


def aut_order_antichain(config: SpaceConfig) -> int:
    """Closed-form automorphism count for n = 1: each block carries an
    independent GL factor and equal-width chains may be permuted."""
    if config.n != 1:
        raise DomainError(
            f"closed form requires a single level, this space has n = {config.n}; "
            "use enumeration instead"
        )
    total = s_pi_order(config)
    for row in config.pi:
        total *= gl_order(config.q, row[0])
    return total


def is_linear(config: SpaceConfig, table) -> bool:
    """True iff the bijection table is additive and scalar-linear.

    The table is compared against the linear extension of its own basis
    images (which settles additivity for every pair at once), and the
    scalar law f(c*u) = c*f(u) is then checked directly for every c.
    """
    S = config.size
    table = np.asarray([int(x) for x in table], dtype=np.int64)
    if len(table) != S:
        raise UsageError(f"table has {len(table)} entries, space has {S}")
    if table[0] != 0:
        return False
    q = config.q
    expected = np.zeros(S, dtype=np.int64)
    for t in range(config.N):
        e_t = q ** t
        # ranks in [c*e_t, (c+1)*e_t) are c*e_t plus a lower-digit part,
        # so each scalar block extends the prefix computed so far
        for c in range(1, q):
            fce = scale_ranks(config, c, table[e_t])[0]
            expected[c * e_t: (c + 1) * e_t] = add_ranks(config, expected[:e_t], fce)
    if not np.array_equal(expected, table):
        return False
    ranks = np.arange(S, dtype=np.int64)
    for c in range(2, q):
        if not np.array_equal(table[scale_ranks(config, c, ranks)], scale_ranks(config, c, table)):
            return False
    return True


def enumerate_automorphisms(config: SpaceConfig, cap: int = ENUM_CAP, want_list: bool = False):
    """Count (and optionally list) every linear isometry.

    Images are assigned one standard basis slot at a time; a partial
    assignment dies as soon as any vector in the span it determines
    would change weight.  Returns (count, tables or None).
    """
    S = config.size
    if S > cap:
        raise CapExceeded(f"space has q^N = {S} points, over the cap {cap}")
    q = config.q
    weights = weight_array(config)
    tables = [] if want_list else None
    count = 0

    span_x = np.array([0], dtype=np.int64)
    span_y = np.array([0], dtype=np.int64)

    def rec(t, span_x, span_y):
        nonlocal count
        if t == config.N:
            count += 1
            if tables is not None:
                full = np.empty(S, dtype=np.int64)
                full[span_x] = span_y
                tables.append(full.tolist())
            return
        e_t = q ** t
        we = weights[e_t]
        for w in range(S):
            if weights[w] != we:
                continue
            new_x = [span_x]
            new_y = [span_y]
            ok = True
            for c in range(1, q):
                xs = add_ranks(config, span_x, scale_ranks(config, c, e_t)[0])
                ys = add_ranks(config, span_y, scale_ranks(config, c, w)[0])
                if not np.array_equal(weights[xs], weights[ys]):
                    ok = False
                    break
                new_x.append(xs)
                new_y.append(ys)
            if ok:
                rec(t + 1, np.concatenate(new_x), np.concatenate(new_y))

    rec(0, span_x, span_y)
    return count, tables


class AutReport:
    """Automorphism-count report: closed form (when stated), enumerated
    count, per-block GL factors, and a discrepancy flag."""

    def __init__(self, config, formula_order, enumerated_order, per_block_gl_orders):
        self.config = config
        self.formula_order = formula_order
        self.enumerated_order = enumerated_order
        self.per_block_gl_orders = per_block_gl_orders
        self.discrepant = (
            formula_order is not None
            and enumerated_order is not None
            and formula_order != enumerated_order
        )

    def to_json(self) -> dict:
        return {
            "space": self.config.to_json(),
            "formula_order": self.formula_order,
            "enumerated_order": self.enumerated_order,
            "per_block_gl_orders": self.per_block_gl_orders,
            "discrepant": self.discrepant,
        }


def aut_report(config: SpaceConfig, enumerate_count: bool = True, cap: int = ENUM_CAP) -> AutReport:
    formula = aut_order_antichain(config) if config.n == 1 else None
    enumerated = None
    if enumerate_count:
        enumerated, _ = enumerate_automorphisms(config, cap=cap)
    per_block = [[gl_order(config.q, k) for k in row] for row in config.pi]
    return AutReport(config, formula, enumerated, per_block)
