"""Naive reference implementations used to validate the fast matchers.

Nothing here shares code with the matchers: trees are compared through
the recursive min-split definition, swaps are decided either by
enumerating every permutation of a tree class or by checking that the
order constraints of the two trees admit a common linear extension.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from graphlib import CycleError, TopologicalSorter
from typing import Any, Optional, Sequence

from ctmatch.matchers import MatchMode, window_length


class GuardError(ValueError):
    """Input too large for an exhaustive oracle."""


@dataclass(frozen=True)
class OracleVerdict:
    matched: bool
    witness: Optional[Any] = None


def rank(x: Sequence) -> tuple[int, ...]:
    """Replace values by ranks 0..m-1; ties go to the earlier position."""
    order = sorted(range(len(x)), key=lambda h: (x[h], h))
    r = [0] * len(x)
    for k, h in enumerate(order):
        r[h] = k
    return tuple(r)


def shape(x: Sequence) -> Optional[tuple]:
    """Tree shape by the recursive definition: split at the minimum.

    ``min`` returns the earliest of equal minima, which is the tie rule.
    """

    def rec(lo: int, hi: int):
        if lo >= hi:
            return None
        g = min(range(lo, hi), key=x.__getitem__)
        return (rec(lo, g), rec(g + 1, hi))

    return rec(0, len(x))


def _nearest_left(x: Sequence) -> list[int]:
    """Distance back to the nearest smaller element, quadratic scan."""
    out = []
    for h in range(len(x)):
        d = 0
        for j in range(h - 1, -1, -1):
            if x[j] <= x[h]:
                d = h - j
                break
        out.append(d)
    return out


def _nearest_right(x: Sequence) -> list[int]:
    out = []
    m = len(x)
    for h in range(m):
        d = 0
        for j in range(h + 1, m):
            if x[j] < x[h]:
                d = j - h
                break
        out.append(d)
    return out


def _agreement(x: Sequence, y: Sequence) -> tuple[int, int]:
    """Longest prefix and suffix lengths on which x and y share trees.

    Suffixes are aligned at the right end, so lengths may differ.
    """
    fx, fy = _nearest_left(x), _nearest_left(y)
    pre = 0
    while pre < min(len(fx), len(fy)) and fx[pre] == fy[pre]:
        pre += 1
    bx, by = _nearest_right(x), _nearest_right(y)
    suf = 0
    while suf < min(len(bx), len(by)) and bx[-1 - suf] == by[-1 - suf]:
        suf += 1
    return pre, suf


def naive_ct_equal(x: Sequence, y: Sequence) -> bool:
    return len(x) == len(y) and shape(x) == shape(y)


def _swapped(z: Sequence, i: int) -> tuple:
    z = list(z)
    z[i], z[i + 1] = z[i + 1], z[i]
    return tuple(z)


@lru_cache(maxsize=None)
def _classes(m: int) -> dict:
    out: dict = {}
    for z in itertools.permutations(range(m)):
        out.setdefault(shape(z), []).append(z)
    return out


@lru_cache(maxsize=None)
def swap_neighbours(tree: Optional[tuple], m: int) -> dict:
    """Map neighbour shape -> (i, z) with shape(z) == tree, 0-based swap i."""
    found: dict = {}
    for z in _classes(m)[tree]:
        for i in range(m - 1):
            s = shape(_swapped(z, i))
            if s not in found:
                found[s] = (i, z)
    return found


def brute_force_ct_tau(x: Sequence, y: Sequence, guard: int = 8) -> OracleVerdict:
    """Decide one-swap CT matching by enumerating the permutations of C(x).

    The witness is (swap position, realisation of C(x)), 1-based position.
    """
    if len(x) != len(y):
        raise ValueError("sequences must have equal length")
    m = len(x)
    if m > guard:
        raise GuardError(f"length {m} exceeds guard {guard}")
    sx, sy = shape(x), shape(y)
    if sx == sy:
        return OracleVerdict(True, None)
    hit = swap_neighbours(sx, m).get(sy)
    if hit is None:
        return OracleVerdict(False)
    i, z = hit
    return OracleVerdict(True, (i + 1, z))


def _heap_edges(x: Sequence) -> list[tuple[int, int]]:
    """(parent, child) position pairs of C(x), from the recursive definition."""
    r = rank(x)
    edges = []

    def rec(lo: int, hi: int, parent: Optional[int]):
        if lo >= hi:
            return
        g = min(range(lo, hi), key=r.__getitem__)
        if parent is not None:
            edges.append((parent, g))
        rec(lo, g, g)
        rec(g + 1, hi, g)

    rec(0, len(r), None)
    return edges


def ct_tau_by_constraints(x: Sequence, y: Sequence) -> OracleVerdict:
    """One-swap CT matching via order constraints, polynomial in m.

    A realisation z of C(x) with C(swap(z, i)) == C(y) exists iff the heap
    orders of C(x) and of C(y) (positions i, i+1 exchanged) together are
    acyclic. A topological order gives z.
    """
    if len(x) != len(y):
        raise ValueError("sequences must have equal length")
    m = len(x)
    if shape(x) == shape(y):
        return OracleVerdict(True, None)
    # positions outside {i, i+1} keep their values, so the untouched
    # prefix and suffix must already agree
    pre, suf = _agreement(x, y)
    lo, hi = max(0, m - 2 - suf), min(pre, m - 2)
    if lo > hi:
        return OracleVerdict(False)
    ex = _heap_edges(x)
    ey = _heap_edges(y)
    for i in range(lo, hi + 1):
        relabel = {i: i + 1, i + 1: i}
        graph: dict[int, set[int]] = {h: set() for h in range(m)}
        for a, b in ex:
            graph[b].add(a)
        for a, b in ey:
            graph[relabel.get(b, b)].add(relabel.get(a, a))
        try:
            order = list(TopologicalSorter(graph).static_order())
        except CycleError:
            continue
        z = [0] * m
        for k, h in enumerate(order):
            z[h] = k + 1
        return OracleVerdict(True, (i + 1, tuple(z)))
    return OracleVerdict(False)


def check_swap_witness(x: Sequence, y: Sequence, verdict: OracleVerdict) -> bool:
    if not verdict.matched:
        return False
    if verdict.witness is None:
        return naive_ct_equal(x, y)
    i, z = verdict.witness
    return naive_ct_equal(z, x) and naive_ct_equal(_swapped(z, i - 1), y)


def _split_ok(x: Sequence, y: Sequence, mode: MatchMode, h: int) -> bool:
    m = len(x)
    if mode is MatchMode.MISMATCH:
        return naive_ct_equal(x[: h - 1], y[: h - 1]) and naive_ct_equal(x[h:], y[h:])
    if mode is MatchMode.INSERTION:
        return naive_ct_equal(x[:h], y[:h]) and naive_ct_equal(x[h:], y[h + 1 :])
    if mode is MatchMode.DELETION:
        return h <= len(y) and naive_ct_equal(x[:h], y[:h]) and naive_ct_equal(x[h + 1 :], y[h:])
    raise ValueError(f"not a difference mode: {mode}")


def brute_force_diff(x: Sequence, y: Sequence, mode: MatchMode, guard: int = 10) -> OracleVerdict:
    """Try every split h of x (the pattern) against y; witness is h (1-based)."""
    mode = MatchMode(mode)
    m = len(x)
    if m > guard:
        raise GuardError(f"length {m} exceeds guard {guard}")
    if mode not in (MatchMode.MISMATCH, MatchMode.INSERTION, MatchMode.DELETION):
        raise ValueError(f"not a difference mode: {mode}")
    if mode is MatchMode.DELETION and m < 2:
        raise ValueError("deletion needs a pattern of length at least 2")
    if len(y) != window_length(mode, m):
        raise ValueError(f"length {len(y)} inconsistent with {mode.value} for pattern length {m}")
    for h in range(1, m + 1):
        if _split_ok(x, y, mode, h):
            return OracleVerdict(True, h)
    return OracleVerdict(False)


def check_diff_witness(x: Sequence, y: Sequence, mode: MatchMode, verdict: OracleVerdict) -> bool:
    return verdict.matched and _split_ok(x, y, MatchMode(mode), verdict.witness)


def _window_match(p: Sequence, x: Sequence, mode: MatchMode) -> bool:
    if mode is MatchMode.EXACT:
        return naive_ct_equal(p, x)
    if mode in (MatchMode.SWAP_PD, MatchMode.SWAP_SN):
        return ct_tau_by_constraints(p, x).matched
    m, w = len(p), len(x)
    pre, suf = _agreement(p, x)
    # the split h needs the pieces before and after it to agree
    for h in range(1, m + 1):
        if mode is MatchMode.MISMATCH:
            ok = h - 1 <= pre and m - h <= suf
        elif mode is MatchMode.INSERTION:
            ok = h <= pre and m - h <= suf
        else:
            ok = h <= min(pre, w) and m - h - 1 <= suf
        if ok:
            return True
    return False


def brute_force_search(p: Sequence, t: Sequence, mode: MatchMode, guard: int = 64) -> list[int]:
    """1-based start of every window of t that matches p under ``mode``."""
    mode = MatchMode(mode)
    m = len(p)
    if m == 0:
        raise ValueError("empty pattern")
    if m > guard:
        raise GuardError(f"pattern length {m} exceeds guard {guard}")
    w = window_length(mode, m)
    if w <= 0 or w > len(t):
        raise ValueError(f"window length {w} invalid for text of length {len(t)}")
    return [j + 1 for j in range(len(t) - w + 1) if _window_match(p, t[j : j + w], mode)]


def _realise(s: Optional[tuple]) -> list[int]:
    """Values realising a shape: parents get smaller values than children."""
    if s is None:
        return []
    left, right = _realise(s[0]), _realise(s[1])
    nl = len(left)
    # root 0, left subtree next, right subtree last keeps the heap order
    return [v + 1 for v in left] + [0] + [v + 1 + nl for v in right]


def _naive_pd(x: Sequence) -> tuple[int, ...]:
    return tuple(_nearest_left(x))


def _shapes(m: int):
    if m == 0:
        yield None
        return
    for k in range(m):
        for left in _shapes(k):
            for right in _shapes(m - 1 - k):
                yield (left, right)


def enumerate_trees(m: int, guard: int = 12) -> list[tuple[int, ...]]:
    """One parent-distance table per binary tree of size m, sorted."""
    if m < 0 or m > guard:
        raise GuardError(f"size {m} outside 0..{guard}")
    return sorted({_naive_pd(_realise(s)) for s in _shapes(m)})
