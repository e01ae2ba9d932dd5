"""Linear representations of Cartesian trees and their sliding-window upkeep.

Two encodings are maintained:

* the parent-distance pair: forward[h] is the distance back to the
  nearest smaller element (0 if none), backward[h] the distance forward
  to the nearest smaller element (0 if none);
* the skipped-number table: sn[h] counts the right-branch nodes popped
  when h is inserted online, and ref[h] is the position that pops h.

Tables are tuples indexed from 0 (entry 0 describes position 1).
Referents are reported as 1-based positions, with None for "never popped".
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from ctmatch.tree import Number, as_sequence


class WindowError(ValueError):
    """Window length is zero or exceeds the text."""


@dataclass(frozen=True)
class PDRepresentation:
    forward: tuple[int, ...]
    backward: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.forward)


@dataclass(frozen=True)
class SNRepresentation:
    sn: tuple[int, ...]
    ref: tuple[Optional[int], ...]

    def __len__(self) -> int:
        return len(self.sn)


def parent_distance(x: Sequence[Number]) -> tuple[int, ...]:
    out = []
    stack: list[int] = []
    for h, v in enumerate(x):
        while stack and x[stack[-1]] > v:
            stack.pop()
        out.append(h - stack[-1] if stack else 0)
        stack.append(h)
    return tuple(out)


def reverse_parent_distance(x: Sequence[Number]) -> tuple[int, ...]:
    out = [0] * len(x)
    stack: list[int] = []
    for h, v in enumerate(x):
        while stack and x[stack[-1]] > v:
            q = stack.pop()
            out[q] = h - q
        stack.append(h)
    return tuple(out)


def pd_representation(x: Sequence[Number]) -> PDRepresentation:
    x = as_sequence(x)
    return PDRepresentation(parent_distance(x), reverse_parent_distance(x))


def skipped_number(x: Sequence[Number]) -> SNRepresentation:
    x = as_sequence(x)
    sn = [0] * len(x)
    ref: list[Optional[int]] = [None] * len(x)
    stack: list[int] = []
    for h, v in enumerate(x):
        while stack and x[stack[-1]] > v:
            ref[stack.pop()] = h + 1
            sn[h] += 1
        stack.append(h)
    return SNRepresentation(tuple(sn), tuple(ref))


class Mode(Enum):
    PD = "pd"
    SN = "sn"


class WindowState:
    """Representation tables of a window t[end-m+1 .. end] kept up to date.

    Tables live in circular buffers of doubled length 2m: slot s and
    s + m always hold the same value, so the window is the contiguous
    slice starting at ``offset``. Positions stored in the deque and in
    ``deps`` are absolute 0-based text indices.
    """

    __slots__ = ("m", "mode", "end", "dq", "fwd", "bwd", "deps", "sn", "rd")

    def __init__(self, m: int, mode: Mode) -> None:
        self.m = m
        self.mode = mode
        self.end = -1
        # (value, position); right end is the last inserted node, left end the root
        self.dq: deque[tuple[Number, int]] = deque()
        if mode is Mode.PD:
            self.fwd = [0] * (2 * m)
            self.bwd = [0] * (2 * m)
            self.deps: list[list[int]] = [[] for _ in range(m)]
            self.sn = self.rd = None
        else:
            self.sn = [0] * (2 * m)
            self.rd = [0] * (2 * m)
            self.fwd = self.bwd = self.deps = None

    @property
    def start(self) -> int:
        """Absolute 0-based index of the first window element."""
        return self.end - self.m + 1

    @property
    def offset(self) -> int:
        return self.start % self.m

    def _slot(self, h: int) -> int:
        if not 1 <= h <= self.m:
            raise IndexError(f"window position {h} outside 1..{self.m}")
        return self.offset + h - 1

    def forward_at(self, h: int) -> int:
        return self.fwd[self._slot(h)]

    def backward_at(self, h: int) -> int:
        return self.bwd[self._slot(h)]

    def sn_at(self, h: int) -> int:
        return self.sn[self._slot(h)]

    def ref_at(self, h: int) -> Optional[int]:
        d = self.rd[self._slot(h)]
        return h + d if d else None

    def pd_tables(self) -> PDRepresentation:
        o, m = self.offset, self.m
        return PDRepresentation(tuple(self.fwd[o : o + m]), tuple(self.bwd[o : o + m]))

    def sn_tables(self) -> SNRepresentation:
        o, m = self.offset, self.m
        rd = self.rd[o : o + m]
        ref = tuple(h + 1 + d if d else None for h, d in enumerate(rd))
        return SNRepresentation(tuple(self.sn[o : o + m]), ref)

    def push_pd(self, t: Sequence[Number], j: int) -> None:
        """Append t[j] (0-based) to the window, expelling t[j-m] if present."""
        m = self.m
        fwd, bwd, dq = self.fwd, self.bwd, self.dq
        slot = j % m
        old = j - m
        if old >= 0:
            # dependents of the expelled node have no smaller element left
            for d in self.deps[slot]:
                s = d % m
                fwd[s] = fwd[s + m] = 0
            self.deps[slot] = []
            if dq and dq[0][1] == old:
                dq.popleft()
            s = (old + 1) % m
            fwd[s] = fwd[s + m] = 0
        v = t[j]
        popped = []
        while dq and dq[-1][0] > v:
            popped.append(dq.pop()[1])
        if dq:
            par = dq[-1][1]
            fwd[slot] = fwd[slot + m] = j - par
            self.deps[par % m].append(j)
        else:
            fwd[slot] = fwd[slot + m] = 0
        bwd[slot] = bwd[slot + m] = 0
        for q in popped:
            s = q % m
            bwd[s] = bwd[s + m] = j - q
        dq.append((v, j))
        self.end = j

    def push_sn(self, t: Sequence[Number], j: int) -> None:
        m = self.m
        sn, rd, dq = self.sn, self.rd, self.dq
        slot = j % m
        if j >= m:
            old = j - m
            if dq and dq[0][1] == old:
                dq.popleft()
            d = rd[slot]
            if d:
                r = (old + d) % m
                sn[r] -= 1
                sn[r + m] -= 1
        v = t[j]
        count = 0
        while dq and dq[-1][0] > v:
            q = dq.pop()[1]
            s = q % m
            rd[s] = rd[s + m] = j - q
            count += 1
        sn[slot] = sn[slot + m] = count
        rd[slot] = rd[slot + m] = 0
        dq.append((v, j))
        self.end = j


def init_window(t: Sequence[Number], m: int, mode: Mode | str) -> WindowState:
    """State for the first window t[1..m]."""
    mode = Mode(mode) if not isinstance(mode, Mode) else mode
    if m <= 0 or m > len(t):
        raise WindowError(f"window length {m} invalid for text of length {len(t)}")
    state = WindowState(m, mode)
    push = state.push_pd if mode is Mode.PD else state.push_sn
    for j in range(m):
        push(t, j)
    return state


def update_pd(state: WindowState, t: Sequence[Number], j: int) -> WindowState:
    """Slide a PD-mode window so that it ends at 1-based position j."""
    state.push_pd(t, j - 1)
    return state


def update_sn(state: WindowState, t: Sequence[Number], j: int) -> WindowState:
    """Slide an SN-mode window so that it ends at 1-based position j."""
    state.push_sn(t, j - 1)
    return state
