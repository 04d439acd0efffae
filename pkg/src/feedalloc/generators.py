"""Seeded instance generators.

Weighting schemes over a complete bipartite graph (symmetric, heavy-top,
heavy-bottom, finely targeted), the adversarial chain instance that defeats
myopic strategies, and two session-model generators that rebuild realistic
feed instances from summary statistics (per-category reward moments, resp. a
category x time-bucket reward table).  Real data files are never read; the
statistics default to documented synthetic values.

All generators are pure functions of their arguments; the PRNG is NumPy's
default_rng with an explicit seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import ProblemInstance

SCHEMES = ("symmetric", "heavy_top", "heavy_bottom", "finely_targeted",
           "adversarial", "session_youtube", "session_blocks")


@dataclass
class GeneratorConfig:
    scheme: str
    n: int = 100
    m: int = 1000
    q: float = 0.1
    seed: int = 1
    params: dict = field(default_factory=dict)


def generate(config):
    """Dispatch a GeneratorConfig to the matching generator."""
    p = config.params
    if config.scheme == "symmetric":
        return gen_symmetric(config.n, config.m, config.q, config.seed,
                             integer=p.get("integer", False))
    if config.scheme == "heavy_top":
        return gen_asymmetric(config.n, config.m, config.q, config.seed, "top")
    if config.scheme == "heavy_bottom":
        return gen_asymmetric(config.n, config.m, config.q, config.seed, "bottom")
    if config.scheme == "finely_targeted":
        return gen_finely_targeted(config.n, config.m, config.q, config.seed)
    if config.scheme == "adversarial":
        return gen_adversarial(config.m, p.get("C", 2.0 ** (2 * config.m - 1)),
                               config.q)
    if config.scheme == "session_youtube":
        return gen_session_youtube(m=config.m, q=config.q, seed=config.seed, **p)
    if config.scheme == "session_blocks":
        return gen_session_blocks(m=config.m, q=config.q, seed=config.seed, **p)
    raise ValueError("unknown scheme %r (choose from %s)" % (config.scheme,
                                                             ", ".join(SCHEMES)))


def _complete(n, m, q, rewards):
    edges = tuple((i + 1, j + 1, float(rewards[i, j]))
                  for i in range(n) for j in range(m))
    return ProblemInstance(num_ads=n, num_slots=m, quit_prob=q, edges=edges)


def gen_symmetric(n, m, q=0.1, seed=1, integer=False):
    """Complete bipartite graph, rewards uniform from 1 to 10 (continuous by
    default; ``integer`` switches to the integer-uniform reading)."""
    rng = np.random.default_rng(seed)
    if integer:
        rewards = rng.integers(1, 11, size=(n, m)).astype(float)
    else:
        rewards = rng.uniform(1.0, 10.0, size=(n, m))
    return _complete(n, m, q, rewards)


def gen_asymmetric(n, m, q=0.1, seed=1, direction="top"):
    """Position-dependent rewards: w * (m-j)/m for heavy tops or w * j/m for
    heavy bottoms, with w uniform in [1, 10] per edge."""
    if direction not in ("top", "bottom"):
        raise ValueError("direction must be 'top' or 'bottom'")
    rng = np.random.default_rng(seed)
    w = rng.uniform(1.0, 10.0, size=(n, m))
    j = np.arange(1, m + 1, dtype=float)
    factor = (m - j) / m if direction == "top" else j / m
    return _complete(n, m, q, w * factor[None, :])


def gen_finely_targeted(n, m, q=0.1, seed=1):
    """Each ad rewards 10 at one uniformly chosen target slot, 1 elsewhere."""
    rng = np.random.default_rng(seed)
    rewards = np.ones((n, m))
    targets = rng.integers(0, m, size=n)
    rewards[np.arange(n), targets] = 10.0
    return _complete(n, m, q, rewards)


def gen_adversarial(m, C, q=0.5):
    """Chain instance defeating myopic strategies: ad j targets only slot j
    with reward 1, except the final ad, whose reward is the large C."""
    if m < 2 or C <= 0:
        raise ValueError("need m >= 2 and C > 0")
    edges = tuple((j, j, 1.0 if j < m else float(C)) for j in range(1, m + 1))
    return ProblemInstance(num_ads=m, num_slots=m, quit_prob=q, edges=edges)


def _browse_permutation(categories, p_same, rng):
    """Session order over items: start anywhere; with probability p_same the
    next item is an unseen one of the current category, otherwise an unseen
    item of a different category, falling back to any unseen item."""
    m = len(categories)
    unseen = set(range(m))
    order = []
    cur = int(rng.integers(m))
    order.append(cur)
    unseen.remove(cur)
    while unseen:
        same = [v for v in unseen if categories[v] == categories[cur]]
        other = [v for v in unseen if categories[v] != categories[cur]]
        if rng.random() < p_same:
            pool = same or other
        else:
            pool = other or same
        cur = pool[int(rng.integers(len(pool)))]
        order.append(cur)
        unseen.remove(cur)
    return order


def gen_session_youtube(m=200, q=0.1, seed=1, num_categories=8, advertisers=15,
                        p_same=0.5, alpha_match=0.8, alpha_mismatch=0.01,
                        category_stats=None, item_categories=None):
    """Category-labelled video session with one ad per advertiser and
    category.

    ``category_stats`` is a list of (mu, sigma) per category; rewards are
    alpha * |Normal(mu_k, sigma_k)| with k the category of the item before
    the slot, and alpha depending on whether ad and item categories match.
    If no stats are supplied, synthetic defaults are drawn from the seed
    (mu in [50, 500], sigma in [10, 100])."""
    rng = np.random.default_rng(seed)
    if category_stats is None:
        mus = rng.uniform(50.0, 500.0, size=num_categories)
        sigmas = rng.uniform(10.0, 100.0, size=num_categories)
        category_stats = list(zip(mus, sigmas))
    if len(category_stats) != num_categories:
        raise ValueError("need one (mu, sigma) pair per category")
    if item_categories is None:
        item_categories = rng.integers(0, num_categories, size=m)
    item_categories = np.asarray(item_categories)
    order = _browse_permutation(list(item_categories), p_same, rng)
    slot_cat = item_categories[order]          # category of the item before slot j
    n = advertisers * num_categories
    ad_cat = np.repeat(np.arange(num_categories), advertisers)
    mu = np.array([category_stats[k][0] for k in slot_cat])
    sigma = np.array([category_stats[k][1] for k in slot_cat])
    base = np.abs(rng.normal(mu[None, :], sigma[None, :], size=(n, m)))
    alpha = np.where(ad_cat[:, None] == slot_cat[None, :],
                     alpha_match, alpha_mismatch)
    return _complete(n, m, q, alpha * base)


def gen_session_blocks(m=1440, q=0.1, seed=1, blocks=144, categories=100,
                       slots_per_block=10, reward_table=None):
    """Block-structured day-long session: ``blocks`` advertiser blocks, one
    ad per category in each block, every block attached to
    ``slots_per_block`` distinct random slots.

    Rewards come from a (categories x m) table indexed by (ad category,
    slot time bucket); with no table supplied a synthetic one is drawn
    uniformly from [8.4, 1500] (the reward range this scenario targets).
    Defaults give n = 14400, m = 1440, |E| = 144000."""
    rng = np.random.default_rng(seed)
    if reward_table is None:
        reward_table = rng.uniform(8.4, 1500.0, size=(categories, m))
    reward_table = np.asarray(reward_table, dtype=float)
    if reward_table.shape != (categories, m):
        raise ValueError("reward_table must have shape (categories, m)")
    edges = []
    for h in range(blocks):
        slots = rng.choice(m, size=slots_per_block, replace=False) + 1
        for c in range(categories):
            ad = h * categories + c + 1
            for j in sorted(int(x) for x in slots):
                edges.append((ad, j, float(reward_table[c, j - 1])))
    return ProblemInstance(num_ads=blocks * categories, num_slots=m,
                           quit_prob=q, edges=tuple(edges))
