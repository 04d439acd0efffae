"""Data model and objective evaluation for ad placement in content feeds.

An instance consists of n ads, m slots (slot j sits right after the j-th
organic item), a quit probability q and a sparse set of (ad, slot, reward)
edges.  An allocation places at most one ad per slot; in matching mode an
ad may be used at most once, in mapping mode it may be reused.

The expected reward of an allocation M is

    f(M) = sum over (i, j) in M of  r_ij * (1 - q)^(j + B(j))

where B(j) is the number of occupied slots strictly before j: the user must
survive j item-views plus B(j) ad-views to reach the ad at slot j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum


class Mode(Enum):
    MAPPING = "mapping"
    MATCHING = "matching"


@dataclass
class ProblemInstance:
    """Immutable problem input. Do not mutate after construction.

    Ads are indexed 1..num_ads, slots 1..num_slots.  ``edges`` holds
    (ad, slot, reward) triples; the slot set of ad i is the set of slots
    it has an edge to.
    """

    num_ads: int
    num_slots: int
    quit_prob: float
    edges: tuple = ()

    def __post_init__(self):
        self.edges = tuple((int(i), int(j), float(r)) for i, j, r in self.edges)
        self._reward = {(i, j): r for i, j, r in self.edges}
        self._by_slot = {}
        self._by_ad = {}
        for i, j, r in self.edges:
            self._by_slot.setdefault(j, []).append(i)
            self._by_ad.setdefault(i, []).append(j)
        for ads in self._by_slot.values():
            ads.sort()
        for slots in self._by_ad.values():
            slots.sort()

    def reward(self, ad, slot):
        return self._reward[(ad, slot)]

    def has_edge(self, ad, slot):
        return (ad, slot) in self._reward

    def candidates(self, slot):
        """Ads with an edge to ``slot``, in increasing ad index."""
        return self._by_slot.get(slot, [])

    def slots_of(self, ad):
        return self._by_ad.get(ad, [])


@dataclass
class Allocation:
    """A slot -> ad assignment, stored as slot-sorted (slot, ad) pairs."""

    entries: tuple
    mode: Mode = Mode.MATCHING

    def __post_init__(self):
        self.entries = tuple(sorted((int(j), int(i)) for j, i in self.entries))

    def __len__(self):
        return len(self.entries)

    def slots(self):
        return [j for j, _ in self.entries]

    def ads(self):
        return [i for _, i in self.entries]


@dataclass
class DecompositionTerm:
    """One slot's term in the backward decomposition of a suffix reward."""

    slot: int
    occupied: bool
    tau: float       # r_{e_j} - q * R_j, 0 for an empty slot
    discount: float  # (1 - q)^(slot - base)


@dataclass
class SolveReport:
    """Outcome of one solver run; reward is always recomputed by direct
    objective evaluation of the allocation, never read from solver
    internals."""

    algorithm: str
    allocation: Allocation
    expected_reward: float
    wall_time: float
    counters: dict = field(default_factory=dict)


def validate_instance(inst):
    """Return a list of invariant violations (empty list means ok)."""
    problems = []
    if inst.num_ads < 0 or int(inst.num_ads) != inst.num_ads:
        problems.append("num_ads must be a non-negative integer")
    if inst.num_slots < 0 or int(inst.num_slots) != inst.num_slots:
        problems.append("num_slots must be a non-negative integer")
    if not (0.0 <= inst.quit_prob < 1.0):
        problems.append("quit_prob out of range [0, 1): %r" % (inst.quit_prob,))
    seen = set()
    for i, j, r in inst.edges:
        if (i, j) in seen:
            problems.append("duplicate edge (%d, %d)" % (i, j))
        seen.add((i, j))
        if not (1 <= i <= inst.num_ads):
            problems.append("edge (%d, %d): ad index out of range" % (i, j))
        if not (1 <= j <= inst.num_slots):
            problems.append("edge (%d, %d): slot index out of range" % (i, j))
        if not (r >= 0.0 and math.isfinite(r)):
            problems.append("edge (%d, %d): reward %r invalid" % (i, j, r))
    return problems


def validate_allocation(inst, alloc):
    """Return a list of violations of ``alloc`` against ``inst``."""
    problems = []
    slots_used = set()
    ads_used = set()
    for j, i in alloc.entries:
        if j in slots_used:
            problems.append("slot %d assigned more than once" % j)
        slots_used.add(j)
        if alloc.mode is Mode.MATCHING:
            if i in ads_used:
                problems.append("ad %d used more than once in matching mode" % i)
            ads_used.add(i)
        if not inst.has_edge(i, j):
            problems.append("entry (slot %d, ad %d) is not an instance edge" % (j, i))
    return problems


class InvalidAllocationError(ValueError):
    pass


def _check(inst, alloc):
    problems = validate_allocation(inst, alloc)
    if problems:
        raise InvalidAllocationError("; ".join(problems))


def suffix_value(pairs, q, base=0):
    """Evaluate the suffix objective directly from slot-sorted (slot, reward)
    pairs: sum of r * (1-q)^(slot - base + #occupied-in-between) over pairs
    with slot > base."""
    s = 1.0 - q
    total = 0.0
    count = 0
    for slot, r in pairs:
        if slot <= base:
            continue
        total += r * s ** (slot - base + count)
        count += 1
    return total


def _reward_pairs(inst, alloc):
    return [(j, inst.reward(i, j)) for j, i in alloc.entries]


def expected_reward(inst, alloc):
    """f(M), the expected session reward of a valid allocation."""
    _check(inst, alloc)
    return suffix_value(_reward_pairs(inst, alloc), inst.quit_prob, base=0)


def suffix_reward(inst, alloc, j):
    """f_j(M): expected reward counting only slots after j, with attention
    restarted at slot j.  f_0 equals the full objective; f_m is 0."""
    _check(inst, alloc)
    if not (0 <= j <= inst.num_slots):
        raise ValueError("suffix index %d outside 0..%d" % (j, inst.num_slots))
    return suffix_value(_reward_pairs(inst, alloc), inst.quit_prob, base=j)


def suffix_vector(pairs, q, m):
    """All suffix values [R_0, ..., R_m] in one backward recursion:
    R_j = (1-q) * (R_{j+1} + [slot j+1 occupied] * (r_{j+1} - q * R_{j+1})).
    """
    by_slot = dict(pairs)
    out = [0.0] * (m + 1)
    s = 1.0 - q
    for j in range(m - 1, -1, -1):
        nxt = out[j + 1]
        r = by_slot.get(j + 1)
        if r is None:
            out[j] = s * nxt
        else:
            out[j] = s * (nxt + (r - q * nxt))
    return out


def decompose(inst, alloc, j):
    """Per-slot terms of the backward decomposition of R_j = f_j(M):

        R_j = sum_{j' > j} (1-q)^(j'-j) * [slot j' occupied] * (r_{e_j'} - q R_{j'})

    The R_{j'} values are produced by the backward recursion, so summing the
    returned terms gives an independent reconstruction of suffix_reward.
    """
    _check(inst, alloc)
    if not (0 <= j <= inst.num_slots):
        raise ValueError("suffix index %d outside 0..%d" % (j, inst.num_slots))
    q = inst.quit_prob
    s = 1.0 - q
    pairs = _reward_pairs(inst, alloc)
    rewards = dict(pairs)
    rvec = suffix_vector(pairs, q, inst.num_slots)
    terms = []
    for jp in range(j + 1, inst.num_slots + 1):
        r = rewards.get(jp)
        occupied = r is not None
        tau = (r - q * rvec[jp]) if occupied else 0.0
        terms.append(DecompositionTerm(slot=jp, occupied=occupied, tau=tau,
                                       discount=s ** (jp - j)))
    return terms


# ---------------------------------------------------------------------------
# Text formats.  Instance: header "n m q", then "i j r" per edge.
# Allocation: "j i" per entry.  Reals use 17 significant digits, which
# round-trips float64 exactly.

def _fmt(x):
    return "%.17g" % x


def write_instance(inst, path):
    with open(path, "w") as fh:
        fh.write("%d %d %s\n" % (inst.num_ads, inst.num_slots, _fmt(inst.quit_prob)))
        for i, j, r in inst.edges:
            fh.write("%d %d %s\n" % (i, j, _fmt(r)))


def read_instance(path):
    with open(path) as fh:
        lines = [ln for ln in (l.strip() for l in fh) if ln]
    if not lines:
        raise ValueError("empty instance file: %s" % path)
    n, m, q = lines[0].split()
    edges = []
    for ln in lines[1:]:
        i, j, r = ln.split()
        edges.append((int(i), int(j), float(r)))
    return ProblemInstance(num_ads=int(n), num_slots=int(m),
                           quit_prob=float(q), edges=tuple(edges))


def write_allocation(alloc, path):
    with open(path, "w") as fh:
        for j, i in alloc.entries:
            fh.write("%d %d\n" % (j, i))


def read_allocation(path, mode=Mode.MATCHING):
    entries = []
    with open(path) as fh:
        for ln in fh:
            ln = ln.strip()
            if not ln:
                continue
            j, i = ln.split()
            entries.append((int(j), int(i)))
    return Allocation(entries=tuple(entries), mode=mode)
