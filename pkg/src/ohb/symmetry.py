"""The full symmetry group of an ordered Hamming block space.

Every isometry of the space factors uniquely as T(v)_i = g_{s(i)}(v_{s(i)}):
an admissible permutation s of the chains (output row i is fed by input
row s(i)) after a triangular symmetry g_k on each input chain k.  The
Symmetry class stores exactly that canonical pair; translations are
ordinary triangular maps and need no separate representation.

Throughout the Python API, permutations are 0-based tuples; the JSON
form uses the 1-based image sequence.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from itertools import permutations, product

import numpy as np

from .chains import (
    ChainSymmetry,
    all_chain_symmetries,
    chain_order,
    compose_chain,
    decompose_chain,
    identity_chain,
    invert_chain,
    random_chain,
)
from .errors import (
    CapExceeded,
    NotIsometryError,
    StructureError,
    UsageError,
    ValidationError,
)
from .fields import block_rank, block_unrank
from .space import (
    BlockVector,
    SpaceConfig,
    distance_matrix_array,
    dist_ranks,
    sub_ranks,
)

ENUM_CAP = 1 << 20


def is_admissible(sigma, config: SpaceConfig) -> bool:
    """True iff chain s(i) has the same block widths as chain i for all i."""
    sigma = tuple(int(x) for x in sigma)
    if sorted(sigma) != list(range(config.m)):
        raise UsageError(f"not a permutation of 0..{config.m - 1}: {sigma}")
    return all(config.pi[sigma[i]] == config.pi[i] for i in range(config.m))


def admissible_permutations(config: SpaceConfig):
    """All admissible permutations, as 0-based tuples, deterministic order."""
    classes = {}
    for i, row in enumerate(config.pi):
        classes.setdefault(row, []).append(i)
    groups = list(classes.values())
    for images in product(*(permutations(g) for g in groups)):
        sigma = [0] * config.m
        for g, img in zip(groups, images):
            for pos, i in enumerate(g):
                sigma[i] = img[pos]
        yield tuple(sigma)


def s_pi_order(config: SpaceConfig) -> int:
    counts = Counter(config.pi)
    total = 1
    for c in counts.values():
        total *= math.factorial(c)
    return total


def full_order(config: SpaceConfig) -> int:
    """Order of the symmetry group: product of the chain group orders
    times the number of admissible permutations."""
    total = s_pi_order(config)
    for row in config.pi:
        total *= chain_order(config.q, row)
    return total


def alt_full_order_unit(q, m, n) -> int:
    """Alternative closed form sometimes quoted for the all-unit-width
    space: (q!)^(m*(q^n-1)/(q-1) + m) * m!.

    Carries the same extra q!-per-chain factor as alt_chain_order_unit
    and disagrees with full_order and with enumeration; reported next
    to the enumerated count so the mismatch is visible.
    """
    return math.factorial(q) ** (m * ((q ** n - 1) // (q - 1)) + m) * math.factorial(m)


class Symmetry:
    """Canonical (sigma, chains) form of a space isometry.

    sigma is 0-based: output row i is input row sigma[i] transformed by
    chains[sigma[i]].  chains[k] acts on chain k of the input.
    """

    __slots__ = ("config", "sigma", "chains")

    def __init__(self, config: SpaceConfig, sigma, chains):
        sigma = tuple(int(x) for x in sigma)
        if not is_admissible(sigma, config):
            raise ValidationError(f"permutation {sigma} moves a chain onto different widths")
        chains = tuple(chains)
        if len(chains) != config.m:
            raise UsageError(f"need {config.m} chain symmetries, got {len(chains)}")
        for k, ch in enumerate(chains):
            if not isinstance(ch, ChainSymmetry):
                raise UsageError(f"chain {k + 1}: not a ChainSymmetry")
            if ch.q != config.q or ch.chain_pi != config.pi[k]:
                raise UsageError(
                    f"chain {k + 1}: shape {ch.chain_pi} over q={ch.q} does not "
                    f"match config row {config.pi[k]} over q={config.q}"
                )
        self.config = config
        self.sigma = sigma
        self.chains = chains

    def apply(self, v: BlockVector) -> BlockVector:
        if v.config != self.config:
            raise UsageError("vector does not belong to this symmetry's space")
        cfg = self.config
        out = []
        for i in range(cfg.m):
            k = self.sigma[i]
            row = tuple(block_rank(cfg.q, b) for b in v.blocks[k])
            out.append(cfg.row_from_ranks(i, self.chains[k].apply(row)))
        return BlockVector(cfg, tuple(out))

    def is_identity(self) -> bool:
        return self.sigma == tuple(range(self.config.m)) and all(
            ch == identity_chain(self.config.q, self.config.pi[k])
            for k, ch in enumerate(self.chains)
        )

    def __eq__(self, other):
        return (
            isinstance(other, Symmetry)
            and self.config == other.config
            and self.sigma == other.sigma
            and self.chains == other.chains
        )

    def __hash__(self):
        return hash((self.config, self.sigma, self.chains))

    def __repr__(self):
        return f"Symmetry(sigma={tuple(x + 1 for x in self.sigma)}, m={self.config.m})"

    def to_json(self) -> dict:
        return {
            "sigma": [x + 1 for x in self.sigma],
            "chains": [ch.to_json() for ch in self.chains],
        }

    @classmethod
    def from_json(cls, doc, config: SpaceConfig) -> "Symmetry":
        try:
            sigma = tuple(int(x) - 1 for x in doc["sigma"])
            chains = [
                ChainSymmetry.from_json(cd, config.q) for cd in doc["chains"]
            ]
        except (KeyError, TypeError) as exc:
            raise UsageError(f"bad symmetry document: {exc}") from exc
        return cls(config, sigma, chains)


def identity_symmetry(config: SpaceConfig) -> Symmetry:
    return Symmetry(
        config,
        tuple(range(config.m)),
        [identity_chain(config.q, row) for row in config.pi],
    )


def apply_symmetry(T: Symmetry, v: BlockVector) -> BlockVector:
    return T.apply(v)


def compose_symmetry(A: Symmetry, B: Symmetry) -> Symmetry:
    """The symmetry v -> A(B(v)), in canonical form."""
    if A.config != B.config:
        raise UsageError("cannot compose symmetries of different spaces")
    m = A.config.m
    sigma = tuple(B.sigma[A.sigma[i]] for i in range(m))
    inv_b = [0] * m
    for i, j in enumerate(B.sigma):
        inv_b[j] = i
    chains = [compose_chain(A.chains[inv_b[j]], B.chains[j]) for j in range(m)]
    return Symmetry(A.config, sigma, chains)


def invert_symmetry(A: Symmetry) -> Symmetry:
    m = A.config.m
    inv = [0] * m
    for i, j in enumerate(A.sigma):
        inv[j] = i
    chains = [invert_chain(A.chains[A.sigma[j]]) for j in range(m)]
    return Symmetry(A.config, tuple(inv), chains)


def make_translation(w: BlockVector) -> Symmetry:
    """The symmetry v -> v + w as a chain-only triangular map."""
    cfg = w.config
    f = cfg.field
    chains = []
    for k in range(cfg.m):
        tables = []
        for j in range(cfg.n):
            kj = cfg.pi[k][j]
            wb = w.blocks[k][j]
            perm = tuple(
                block_rank(cfg.q, tuple(f.add(x, y) for x, y in zip(block_unrank(cfg.q, r, kj), wb)))
                for r in range(cfg.q ** kj)
            )
            tails = 1
            for l in range(j + 1, cfg.n):
                tails *= cfg.q ** cfg.pi[k][l]
            tables.append([perm] * tails)
        chains.append(ChainSymmetry(cfg.q, cfg.pi[k], tables))
    return Symmetry(cfg, tuple(range(cfg.m)), chains)


def random_symmetry(config: SpaceConfig, seed) -> Symmetry:
    """Uniformly random symmetry, reproducible from the seed."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    classes = {}
    for i, row in enumerate(config.pi):
        classes.setdefault(row, []).append(i)
    sigma = [0] * config.m
    for idxs in classes.values():
        for pos, img in zip(idxs, rng.sample(idxs, len(idxs))):
            sigma[pos] = img
    chains = [random_chain(config.q, row, rng) for row in config.pi]
    return Symmetry(config, tuple(sigma), chains)


def all_symmetries(config: SpaceConfig, limit=ENUM_CAP):
    """Yield the whole symmetry group in canonical form."""
    count = full_order(config)
    if count > limit:
        raise CapExceeded(f"symmetry group has {count} elements, over the limit {limit}")
    chain_groups = [list(all_chain_symmetries(config.q, row, limit)) for row in config.pi]
    for sigma in admissible_permutations(config):
        for chains in product(*chain_groups):
            yield Symmetry(config, sigma, chains)


def as_rank_table(T: Symmetry, override: bool = False) -> np.ndarray:
    """Dense action of T on every vector rank."""
    cfg = T.config
    cfg.check_materialize(override)
    ranks = np.arange(cfg.size, dtype=np.int64)
    out = np.zeros(cfg.size, dtype=np.int64)
    for i in range(cfg.m):
        k = T.sigma[i]
        ct = np.asarray(T.chains[k].rank_table(), dtype=np.int64)
        sub = (ranks // cfg.chain_place[k]) % cfg.chain_size[k]
        out += ct[sub] * cfg.chain_place[i]
    return out


# decomposition of a raw bijection table into canonical form


def _isometry_witness(config: SpaceConfig, table):
    """A rank pair whose distance the table breaks, if one is found."""
    S = config.size
    f = np.asarray(table, dtype=np.int64)
    if S <= 4096:
        D = distance_matrix_array(config)
        bad = np.argwhere(D[np.ix_(table, table)] != D)
        if len(bad):
            u, v = bad[0]
            return int(u), int(v)
        return None
    ranks = np.arange(S, dtype=np.int64)
    for anchor in range(min(S, 16)):
        du = dist_ranks(config, np.int64(anchor), ranks)
        dfu = dist_ranks(config, f[anchor], f)
        bad = np.nonzero(du != dfu)[0]
        if len(bad):
            return anchor, int(bad[0])
    return None


def decompose_full(config: SpaceConfig, table) -> Symmetry:
    """Recover the canonical (sigma, chains) form of an isometry given
    as a dense table over vector ranks.

    The translation part is read off at 0, the chain permutation from
    the images of weight-1 vectors, and each chain map by restriction;
    the result is verified pointwise against the table.  A map that
    preserves no decomposition is rejected with a distance witness when
    one can be found, otherwise with the chain index that failed.
    """
    S = config.size
    table = [int(x) for x in table]
    if len(table) != S:
        raise UsageError(f"table has {len(table)} entries, space has {S}")
    if any(not 0 <= x < S for x in table):
        raise UsageError("table entry out of range")
    seen = [-1] * S
    for r, fr in enumerate(table):
        if seen[fr] >= 0:
            raise NotIsometryError(
                f"not a bijection: ranks {seen[fr]} and {r} share the image {fr}",
                witness=(seen[fr], r),
            )
        seen[fr] = r

    def reject(chain_index, context):
        w = _isometry_witness(config, table)
        if w is not None:
            raise NotIsometryError(
                f"distance not preserved for ranks {w[0]} and {w[1]}", witness=w
            )
        raise StructureError(context, chain_index=chain_index)

    w_rank = table[0]
    if w_rank:
        f0 = sub_ranks(config, np.asarray(table, dtype=np.int64), w_rank).tolist()
    else:
        f0 = table

    q = config.q
    m = config.m
    # each chain's weight-1 sphere at level 1 must land inside a single
    # chain with the same widths
    tau = [None] * m
    for k in range(m):
        target = None
        for x in range(1, q ** config.pi[k][0]):
            img = f0[x * config.chain_place[k]]
            hit = [i for i in range(m) if config.chain_subrank(img, i) != 0]
            if len(hit) != 1:
                reject(k + 1, f"image of a weight-1 point of chain {k + 1} has weight != 1")
            j = hit[0]
            if config.chain_subrank(img, j) >= q ** config.pi[j][0]:
                reject(k + 1, f"image of a weight-1 point of chain {k + 1} has weight > 1")
            if target is None:
                target = j
            elif target != j:
                reject(k + 1, f"chain {k + 1} maps into two different chains")
        tau[k] = target
    if sorted(tau) != list(range(m)):
        dup = next(j for j in range(m) if tau.count(j) > 1)
        reject(dup + 1, f"two chains map into chain {dup + 1}")
    for k in range(m):
        if config.pi[k] != config.pi[tau[k]]:
            reject(k + 1, f"chain {k + 1} maps onto a chain with different widths")

    chains = [None] * m
    for k in range(m):
        sub_table = []
        for rk in range(config.chain_size[k]):
            img = f0[rk * config.chain_place[k]]
            if img != config.chain_subrank(img, tau[k]) * config.chain_place[tau[k]]:
                reject(k + 1, f"image of chain {k + 1} leaves chain {tau[k] + 1}")
            sub_table.append(config.chain_subrank(img, tau[k]))
        try:
            chains[k] = decompose_chain(q, config.pi[k], sub_table)
        except NotIsometryError as exc:
            u, v = exc.witness
            raise NotIsometryError(
                "distance not preserved for ranks "
                f"{u * config.chain_place[k]} and {v * config.chain_place[k]}",
                witness=(u * config.chain_place[k], v * config.chain_place[k]),
            ) from exc
        except StructureError as exc:
            raise StructureError(str(exc), chain_index=k + 1) from exc

    sigma = [0] * m
    for k in range(m):
        sigma[tau[k]] = k
    cand = Symmetry(config, tuple(sigma), chains)
    if w_rank:
        cand = compose_symmetry(make_translation(config.unrank(w_rank)), cand)

    ct = as_rank_table(cand, override=True)
    bad = np.nonzero(ct != np.asarray(table, dtype=np.int64))[0]
    if len(bad):
        reject(None, f"map disagrees with its chain decomposition at rank {int(bad[0])}")
    return cand
