"""Sliding-window Cartesian tree matching with at most one difference.

Every equivalence test comes in two layers: a kernel that reads the
window's tables straight out of the circular buffers of a WindowState
(``o`` is the buffer offset of the window's first entry) and returns
``(verdict, comparisons)``, and a public wrapper taking plain
representations. Internally all indices are 0-based.

A comparison is one table-cell or value comparison; the count is the
quantity the benchmark reports per window.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

from ctmatch.representations import (
    Mode,
    PDRepresentation,
    SNRepresentation,
    WindowError,
    WindowState,
    pd_representation,
    skipped_number,
)
from ctmatch.tree import Number, as_sequence


class MatchMode(Enum):
    EXACT = "exact"
    SWAP_PD = "swap-pd"
    SWAP_SN = "swap-sn"
    MISMATCH = "mismatch"
    INSERTION = "insert"
    DELETION = "delete"

    @classmethod
    def _missing_(cls, value):
        aliases = {"swap": cls.SWAP_PD, "ins": cls.INSERTION, "del": cls.DELETION,
                   "insertion": cls.INSERTION, "deletion": cls.DELETION, "mis": cls.MISMATCH}
        if isinstance(value, str):
            return aliases.get(value.lower().replace("_", "-"))
        return None


DIFF_MODES = (MatchMode.MISMATCH, MatchMode.INSERTION, MatchMode.DELETION)


def window_length(mode: MatchMode, m: int) -> int:
    if mode is MatchMode.INSERTION:
        return m + 1
    if mode is MatchMode.DELETION:
        return m - 1
    return m


@dataclass
class MatchReport:
    occurrences: list[int]
    comparisons: int
    windows: int
    window_length: int
    per_window: Optional[list[int]] = field(default=None, repr=False)

    @property
    def mean_comparisons(self) -> float:
        return self.comparisons / self.windows if self.windows else 0.0


def compute_candidates(j: int, k: int) -> set[int]:
    """Swap positions compatible with first forward mismatch j and last
    backward mismatch k."""
    d = k - j
    if d == 1:
        return {j}
    if d == -1:
        return {k}
    if d == 0:
        return {j - 1, j}
    return set()


def _exact_kernel(fp, fx, o, m):
    c = 0
    for h in range(1, m):
        c += 1
        if fp[h] != fx[o + h]:
            return False, c
    return True, c


def _diff_kernel(fp, bp, fx, bx, o, m, w, need):
    # need: ℓ + r threshold; entries 0 (forward) and last (backward) are 0 in every table
    c = 0
    lim = m if m < w else w
    ell = 1
    while ell < lim:
        c += 1
        if fp[ell] != fx[o + ell]:
            break
        ell += 1
    if ell >= need:
        return True, c
    r = 1
    ep, ex = m - 1, o + w - 1
    while ell + r < need and r < lim:
        c += 1
        if bp[ep - r] != bx[ex - r]:
            break
        r += 1
    return ell + r >= need, c


def _verify_swap_pd(fp, fx, bx, o, m, i):
    """Does forward table fp belong to ng(C(x), i)? Returns (ok, comparisons)."""
    c = 2
    if fx[o + i + 1] == 1:
        # x[i] < x[i+1]: i+1 moves into the right branch of i's left subtree
        a = fx[o + i]
        got = fp[i]
        if got != a:
            pos = i - got
            c += 1
            if got <= 0 or pos < 0 or bx[o + pos] != got:
                return False, c
        c += 1
        if fp[i + 1] != (a + 1 if a else 0):
            return False, c
        for h in range(i + 2, m):
            f = fx[o + h]
            c += 1
            if fp[h] != (f - 1 if f == h - i else f):
                return False, c
        return True, c
    b = fx[o + i + 1]
    if fp[i] != (b - 1 if b else 0):
        return False, c
    c += 1
    if fp[i + 1] != 1:
        return False, c
    bumped = False
    for h in range(i + 2, m):
        f = fx[o + h]
        g = fp[h]
        c += 1
        if f == h - i - 1:
            # left branch of the right subtree of i+1: a suffix of it gains one
            if g == f + 1:
                bumped = True
            elif g != f or bumped:
                return False, c
        elif g != f:
            return False, c
    return True, c


def _swap_pd_scan(fp, bp, fx, bx, o, m):
    """Forward/backward scans; returns (j, k, comparisons), j = m on exact match."""
    c = 0
    j = 1
    while j < m:
        c += 1
        if fp[j] != fx[o + j]:
            break
        j += 1
    if j == m:
        return j, j, c
    k = m - 2
    while k >= j:
        c += 1
        if bp[k] != bx[o + k]:
            break
        k -= 1
    return j, k, c


def _swap_pd_kernel(fp, bp, fx, bx, o, m):
    j, k, c = _swap_pd_scan(fp, bp, fx, bx, o, m)
    if j == m:
        return True, c
    d = k - j
    if d == 1 or d == -1:
        cands = (min(j, k),)
    elif d == 0:
        cands = (j - 1, j)
    else:
        return False, c
    for i in cands:
        if 0 <= i <= m - 2:
            ok, ci = _verify_swap_pd(fp, fx, bx, o, m, i)
            c += ci
            if ok:
                return True, c
    return False, c


def _verify_swap_sn(snp, snx, rdx, o, xv, s, m, i):
    c = 1
    if xv[s + i] <= xv[s + i + 1]:
        # x[i] < x[i+1]
        top = snx[o + i]
        yi = snp[i]
        c += 2
        if yi < 0 or yi > top or snp[i + 1] != top - yi + 1:
            return False, c
        d = rdx[o + i + 1]
        r = i + 1 + d if d else -1
        for h in range(i + 2, m):
            c += 1
            if snp[h] != (snx[o + h] - 1 if h == r else snx[o + h]):
                return False, c
        return True, c
    c += 2
    if snp[i] != snx[o + i] + snx[o + i + 1] - 1 or snp[i + 1] != 0:
        return False, c
    d = rdx[o + i + 1]
    r = i + 1 + d if d else -1
    pivot = xv[s + i + 1]
    low = None  # minimum of x[i+2 .. h-1]
    bumped = False
    for h in range(i + 2, m):
        v = xv[s + h]
        diff = snp[h] - snx[o + h]
        c += 1
        if diff:
            if diff != 1 or bumped:
                return False, c
            if h != r:
                # must lie on the left branch of the right subtree of i+1
                c += 2
                if not (pivot <= v and (low is None or low > v)):
                    return False, c
            bumped = True
        if low is None or v < low:
            low = v
    if r >= 0 and not bumped:
        return False, c
    return True, c


def _swap_sn_kernel(snp, snx, rdx, o, xv, s, m):
    c = 0
    j = 1
    while j < m:
        c += 1
        if snp[j] != snx[o + j]:
            break
        j += 1
    if j == m:
        return True, c
    for i in (j - 1, j):
        if 0 <= i <= m - 2:
            ok, ci = _verify_swap_sn(snp, snx, rdx, o, xv, s, m, i)
            c += ci
            if ok:
                return True, c
    return False, c


def _check_pair(rep_p, rep_x):
    if len(rep_p) != len(rep_x):
        raise ValueError("representations must have equal length")


def equivalence_test_exact(rep_p: PDRepresentation, rep_x: PDRepresentation) -> bool:
    _check_pair(rep_p, rep_x)
    return _exact_kernel(rep_p.forward, rep_x.forward, 0, len(rep_p))[0]


def equivalence_test_swap_pd(rep_p: PDRepresentation, rep_x: PDRepresentation,
                             x: Optional[Sequence[Number]] = None) -> bool:
    """True iff C(p) equals C(x) or is reachable from it by one swap.

    The order of x[i] and x[i+1] is read off the tables (forward[i+1] is 1
    exactly when x[i] < x[i+1]), so the window values are optional and
    only checked for length.
    """
    _check_pair(rep_p, rep_x)
    if x is not None and len(x) != len(rep_x):
        raise ValueError("window values and table lengths differ")
    return _swap_pd_kernel(rep_p.forward, rep_p.backward, rep_x.forward, rep_x.backward, 0, len(rep_p))[0]


def verifying_candidates(rep_p: PDRepresentation, rep_x: PDRepresentation) -> list[int]:
    """All 1-based swap positions that pass verification (at most one)."""
    _check_pair(rep_p, rep_x)
    fp, bp, fx, bx = rep_p.forward, rep_p.backward, rep_x.forward, rep_x.backward
    m = len(fp)
    j, k, _ = _swap_pd_scan(fp, bp, fx, bx, 0, m)
    if j == m:
        return []
    return sorted(
        i + 1
        for i in (i1 - 1 for i1 in compute_candidates(j + 1, k + 1))
        if 0 <= i <= m - 2 and _verify_swap_pd(fp, fx, bx, 0, m, i)[0]
    )


def equivalence_test_swap_sn(sn_p: SNRepresentation, sn_x: SNRepresentation, x: Sequence[Number]) -> bool:
    """Skipped-number variant of the one-swap test; x holds the window values."""
    _check_pair(sn_p, sn_x)
    if len(x) != len(sn_x):
        raise ValueError("window values and table lengths differ")
    rd = [r - h - 1 if r is not None else 0 for h, r in enumerate(sn_x.ref)]
    return _swap_sn_kernel(sn_p.sn, sn_x.sn, rd, 0, x, 0, len(sn_p))[0]


def _diff_need(mode: MatchMode, m: int) -> int:
    return m if mode is MatchMode.INSERTION else m - 1


def equivalence_test_diff(rep_p: PDRepresentation, rep_x: PDRepresentation, mode: MatchMode) -> bool:
    """lcp/lcs test for one mismatch, insertion or deletion."""
    mode = MatchMode(mode)
    if mode not in DIFF_MODES:
        raise ValueError(f"not a difference mode: {mode}")
    m = len(rep_p)
    if m == 0 or (mode is MatchMode.DELETION and m < 2):
        raise WindowError(f"pattern length {m} too short for {mode.value}")
    if len(rep_x) != window_length(mode, m):
        raise WindowError(f"window length {len(rep_x)} inconsistent with {mode.value}")
    return _diff_kernel(rep_p.forward, rep_p.backward, rep_x.forward, rep_x.backward,
                        0, m, len(rep_x), _diff_need(mode, m))[0]


def meta_search(p: Sequence[Number], t: Sequence[Number], mode: MatchMode | str,
                record: bool = False) -> MatchReport:
    """Report every window of t equivalent to p under ``mode``.

    With ``record`` the per-window comparison counts are kept as well.
    """
    mode = MatchMode(mode)
    p = as_sequence(p)
    t = as_sequence(t)
    return _meta_search(p, t, mode, 0, len(t), record)


def _meta_search(p, t, mode, lo, hi, record):
    m = len(p)
    if m == 0:
        raise WindowError("empty pattern")
    w = window_length(mode, m)
    n = hi - lo
    if w <= 0 or w > n:
        raise WindowError(f"window length {w} invalid for text of length {n}")
    occ: list[int] = []
    per: Optional[list[int]] = [] if record else None
    total = 0

    if mode is MatchMode.SWAP_SN:
        snp = skipped_number(p).sn
        state = _fresh_window(t, lo, w, Mode.SN)
        sn, rd, push = state.sn, state.rd, state.push_sn
        for j in range(lo + w - 1, hi):
            if j >= lo + w:
                push(t, j)
            s = j - w + 1
            ok, c = _swap_sn_kernel(snp, sn, rd, s % w, t, s, m)
            total += c
            if record:
                per.append(c)
            if ok:
                occ.append(s + 1)
        return MatchReport(occ, total, n - w + 1, w, per)

    rp = pd_representation(p)
    fp, bp = rp.forward, rp.backward
    state = _fresh_window(t, lo, w, Mode.PD)
    fx, bx, push = state.fwd, state.bwd, state.push_pd
    need = _diff_need(mode, m)
    for j in range(lo + w - 1, hi):
        if j >= lo + w:
            push(t, j)
        s = j - w + 1
        o = s % w
        if mode is MatchMode.SWAP_PD:
            ok, c = _swap_pd_kernel(fp, bp, fx, bx, o, m)
        elif mode is MatchMode.EXACT:
            ok, c = _exact_kernel(fp, fx, o, m)
        else:
            ok, c = _diff_kernel(fp, bp, fx, bx, o, m, w, need)
        total += c
        if record:
            per.append(c)
        if ok:
            occ.append(s + 1)
    return MatchReport(occ, total, n - w + 1, w, per)


def _fresh_window(t, lo, w, mode):
    """State holding t[lo .. lo+w-1], indexed by absolute text position."""
    state = WindowState(w, mode)
    push = state.push_pd if mode is Mode.PD else state.push_sn
    for j in range(lo, lo + w):
        push(t, j)
    return state


def _chunk_job(args):
    p, t, mode, lo, hi = args
    return _meta_search(p, t, MatchMode(mode), lo, hi, False)


def parallel_meta_search(p: Sequence[Number], t: Sequence[Number], mode: MatchMode | str,
                         chunks: int = 4, workers: Optional[int] = None) -> MatchReport:
    """meta_search over ``chunks`` text ranges overlapping by w-1, merged."""
    mode = MatchMode(mode)
    p = as_sequence(p)
    t = as_sequence(t)
    m, n = len(p), len(t)
    w = window_length(mode, m)
    if m == 0 or w <= 0 or w > n:
        raise WindowError(f"window length {w} invalid for text of length {n}")
    starts = n - w + 1
    chunks = max(1, min(chunks, starts))
    step = -(-starts // chunks)
    jobs = [(p, t, mode.value, a, min(a + step, starts) + w - 1) for a in range(0, starts, step)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_chunk_job, jobs))
    occ = sorted(o for part in parts for o in part.occurrences)
    return MatchReport(occ, sum(q.comparisons for q in parts), sum(q.windows for q in parts), w)
