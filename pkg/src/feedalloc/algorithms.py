"""Backwards-greedy solvers.

Both algorithms process slots in reverse order, j = m..1, so a decision at
slot j can never hurt the still-unprocessed slots before it.

``backwards_greedy`` scores each candidate by its exact marginal gain on the
suffix objective and is optimal in mapping mode (ads reusable); in matching
mode it is a 2-approximation.

``nonoblivious_backwards_greedy`` (matching only) replaces the exact gain
with a cheap lower bound built from per-ad estimates tau_i, giving the same
2-approximation at O(|E| + m*|M|) cost instead of O(|E|*|M|).
"""

from __future__ import annotations

import bisect
import time
from dataclasses import dataclass

from .core import (Allocation, Mode, ProblemInstance, SolveReport,
                   expected_reward, suffix_value, suffix_vector)


@dataclass
class IterationLog:
    """One record per processed slot, emitted in order j = m..1."""

    slot: int
    candidates: tuple
    chosen: int | None
    gain: float          # exact gain for backwards_greedy, g_LB for the proxy
    committed: bool
    reassigned: bool
    suffix_before: tuple  # (f_0(M), ..., f_m(M)) before this slot's decision
    suffix_after: tuple   # same, after


def _suffix_eval(entries, q, base, skip_ad=None, extra=None):
    """suffix_value over ``entries`` (slot-sorted (slot, ad, reward)), with
    all edges of ``skip_ad`` dropped and an optional (slot, reward) ``extra``
    entry merged in at its slot position."""
    s = 1.0 - q
    total = 0.0
    count = 0
    pending = extra if extra is not None and extra[0] > base else None
    for slot, ad, r in entries:
        if slot <= base or ad == skip_ad:
            continue
        if pending is not None and pending[0] < slot:
            total += pending[1] * s ** (pending[0] - base + count)
            count += 1
            pending = None
        total += r * s ** (slot - base + count)
        count += 1
    if pending is not None:
        total += pending[1] * s ** (pending[0] - base + count)
    return total


def _snapshot(entries, q, m):
    return tuple(suffix_vector([(j, r) for j, _, r in entries], q, m))


def backwards_greedy(inst, mode=Mode.MATCHING, log=None, initial=None,
                     frozen_slots=None):
    """Exact-gain backwards greedy.

    At slot j every candidate ad i is tried as M_i = M + (i, j); in matching
    mode an ad already placed at a later slot is moved (its old edge removed,
    the vacated slot stays empty).  The gain is

        g_i = f_{j-1}(M_i) / (1-q) - f_j(M)

    and the best candidate is committed iff g > 0.  Ties break to the lowest
    ad index.  Suffix values are evaluated by a fresh backward pass per
    candidate, so the cost is O(|E| * |M|).

    ``initial`` seeds the matching with pre-assigned (slot, ad) pairs whose
    slots (listed in ``frozen_slots``) are excluded from processing; the
    seeded ads are locked and never touched.  This lets the sweep run on top
    of another algorithm's partial solution (the flow baseline uses this):
    re-assigning a locked ad would vacate a slot that is never revisited,
    so the gain rule would overstate its value.
    """
    t0 = time.perf_counter()
    q = inst.quit_prob
    s = 1.0 - q
    m = inst.num_slots
    entries = []          # slot-ascending (slot, ad, reward)
    matched_slot = {}     # ad -> slot, matching mode only
    locked = set()
    if initial:
        entries = sorted((j, i, inst.reward(i, j)) for j, i in initial)
        matched_slot = {i: j for j, i, _ in entries}
        locked = set(matched_slot)
    frozen = frozen_slots or ()
    evals = commits = reassigns = 0
    for j in range(m, 0, -1):
        if j in frozen:
            continue
        cands = inst.candidates(j)
        if log is not None:
            before = _snapshot(entries, q, m)
        if not cands:
            if log is not None:
                log.append(IterationLog(j, (), None, float("nan"), False, False,
                                        before, before))
            continue
        fj = suffix_value([(slot, r) for slot, _, r in entries], q, base=j)
        best_i = None
        best_g = 0.0
        best_reassign = False
        for i in cands:
            if i in locked:
                continue
            r = inst.reward(i, j)
            reassign = mode is Mode.MATCHING and i in matched_slot
            skip = i if reassign else None
            fjm1 = _suffix_eval(entries, q, j - 1, skip_ad=skip, extra=(j, r))
            g = fjm1 / s - fj
            evals += 1
            if best_i is None or g > best_g:
                best_i, best_g, best_reassign = i, g, reassign
        committed = best_g > 0.0
        if committed:
            commits += 1
            if best_reassign:
                reassigns += 1
                entries = [e for e in entries if e[1] != best_i]
            bisect.insort(entries, (j, best_i, inst.reward(best_i, j)))
            if mode is Mode.MATCHING:
                matched_slot[best_i] = j
        if log is not None:
            log.append(IterationLog(j, tuple(cands), best_i if committed else None,
                                    best_g, committed,
                                    committed and best_reassign,
                                    before, _snapshot(entries, q, m)))
    alloc = Allocation(entries=tuple((j, i) for j, i, _ in entries), mode=mode)
    reward = expected_reward(inst, alloc)
    name = "gb" if mode is Mode.MATCHING else "gb-mapping"
    return SolveReport(algorithm=name, allocation=alloc, expected_reward=reward,
                       wall_time=time.perf_counter() - t0,
                       counters={"gain_evals": evals, "commits": commits,
                                 "reassignments": reassigns})


def nonoblivious_backwards_greedy(inst, log=None):
    """Alg: non-oblivious backwards greedy (matching mode only).

    Each matched ad carries an estimate tau_i = r_{i sigma(i)} - q * f_{sigma(i)}(M)
    of its contributed gain.  At slot j the candidate maximizing

        r_ij - tau_i * (1-q)^(sigma(i) - j)

    is selected (tau_i = 0, sigma(i) = j for unmatched ads) and committed iff
    the gain lower bound  g_LB = r_ij - q f_j(M) - tau_i (1-q)^(sigma(i)-j)
    is positive.  After a re-assignment every matched ad's tau is refreshed.
    f_j(M) is carried incrementally across slots, so the cost is
    O(|E| + m * |M|).
    """
    t0 = time.perf_counter()
    q = inst.quit_prob
    s = 1.0 - q
    m = inst.num_slots
    entries = []          # slot-ascending (slot, ad, reward)
    tau = {}
    sigma = {}            # ad -> matched slot
    commits = reassigns = scored = 0
    cur = 0.0             # f_j(M) for the slot being processed
    for j in range(m, 0, -1):
        if j < m:
            # roll f_{j+1} -> f_j over slot j+1 (one backward-recursion step)
            if entries and entries[0][0] == j + 1:
                r_next = entries[0][2]
                cur = s * (cur + (r_next - q * cur))
            else:
                cur = s * cur
        cands = inst.candidates(j)
        if log is not None:
            before = _snapshot(entries, q, m)
        if not cands:
            if log is not None:
                log.append(IterationLog(j, (), None, float("nan"), False, False,
                                        before, before))
            continue
        best_i = None
        best_score = 0.0
        for i in cands:
            t = tau.get(i)
            if t is None:
                score = inst.reward(i, j)
            else:
                score = inst.reward(i, j) - t * s ** (sigma[i] - j)
            scored += 1
            if best_i is None or score > best_score:
                best_i, best_score = i, score
        g_lb = best_score - q * cur
        committed = g_lb > 0.0
        reassigned = False
        if committed:
            commits += 1
            r = inst.reward(best_i, j)
            reassigned = best_i in sigma
            if reassigned:
                reassigns += 1
                entries = [e for e in entries if e[1] != best_i]
                # removal of the old edge changes the suffix value
                cur = suffix_value([(slot, rr) for slot, _, rr in entries], q,
                                   base=j)
            entries.insert(0, (j, best_i, r))
            tau[best_i] = r - q * cur
            sigma[best_i] = j
            if reassigned:
                _refresh_taus(entries, q, tau)
        if log is not None:
            log.append(IterationLog(j, tuple(cands), best_i if committed else None,
                                    g_lb, committed, reassigned,
                                    before, _snapshot(entries, q, m)))
    alloc = Allocation(entries=tuple((j, i) for j, i, _ in entries),
                       mode=Mode.MATCHING)
    reward = expected_reward(inst, alloc)
    return SolveReport(algorithm="gbp", allocation=alloc, expected_reward=reward,
                       wall_time=time.perf_counter() - t0,
                       counters={"scores": scored, "commits": commits,
                                 "reassignments": reassigns})


def _refresh_taus(entries, q, tau):
    """Recompute tau_i = r_{ij'} - q * f_{j'}(M) for every matched (i, j')."""
    s = 1.0 - q
    suffix = 0.0
    prev_slot = None
    # walk entries from the last slot backwards; crossing an occupied slot
    # multiplies the suffix by an extra (1-q)
    for slot, ad, r in reversed(entries):
        if prev_slot is not None:
            suffix = s ** (prev_slot - slot) * (prev_r + s * suffix)
        tau[ad] = r - q * suffix
        prev_slot, prev_r = slot, r


def instrumented_run(algorithm, inst, **kwargs):
    """Run ``algorithm(inst, ..., log=...)`` and return (report, logs)."""
    logs = []
    report = algorithm(inst, log=logs, **kwargs)
    return report, logs
