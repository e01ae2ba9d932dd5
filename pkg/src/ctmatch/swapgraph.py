"""Swap neighbourhoods of Cartesian trees, the swap graph, and the
Aho-Corasick automaton that finds every window one swap away from a pattern.

Trees are identified by their forward parent-distance tables (tuples).
Swap positions are 1-based: swapping at i exchanges x[i] and x[i+1].
"""

from __future__ import annotations

import csv
import io
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from ctmatch.matchers import MatchReport
from ctmatch.representations import (
    WindowError,
    parent_distance,
    reverse_parent_distance,
)
from ctmatch.tree import CartesianTree, Number, as_sequence, sequence_from_pd

PDTable = tuple[int, ...]

MAX_GRAPH_SIZE = 12


class GraphTooLarge(ValueError):
    """Swap graph requested outside the supported sizes."""


def all_pd_tables(m: int) -> Iterator[PDTable]:
    """Every forward PD table of length m, in lexicographic order.

    A table is valid iff each nonzero entry points at a node of the right
    branch built so far; choosing the distance 0 empties that branch.
    """
    if m < 0:
        raise ValueError("negative size")
    if m == 0:
        yield ()
        return
    table = [0] * m

    def rec(h: int, branch: list[int]):
        if h == m:
            yield tuple(table)
            return
        table[h] = 0
        yield from rec(h + 1, [h])
        # closest branch node first keeps the distances increasing
        for k in range(len(branch) - 1, -1, -1):
            table[h] = h - branch[k]
            yield from rec(h + 1, branch[: k + 1] + [h])

    yield from rec(0, [])


def _swap_family(fx: PDTable, bx: PDTable, i: int) -> list[PDTable]:
    """Forward tables reachable by one swap at 0-based i (distinct, nonempty)."""
    m = len(fx)
    out = []
    if fx[i + 1] == 1:
        # x[i] < x[i+1]: the new parent of i is its old parent or one of
        # the nodes it popped
        a = fx[i]
        tail = [fx[h] - 1 if fx[h] == h - i else fx[h] for h in range(i + 2, m)]
        nxt = a + 1 if a else 0
        choices = [a] + [g for g in range(1, i + 1) if bx[i - g] == g]
        for g in choices:
            out.append(fx[:i] + (g, nxt) + tuple(tail))
        return out
    b = fx[i + 1]
    head = fx[:i] + (b - 1 if b else 0, 1)
    chain = [h for h in range(i + 2, m) if fx[h] == h - i - 1]
    # any suffix of the chain (by position) moves one step further away
    for cut in range(len(chain) + 1):
        bumped = set(chain[cut:])
        out.append(head + tuple(fx[h] + 1 if h in bumped else fx[h] for h in range(i + 2, m)))
    return out


def neighborhood_at(x: Sequence[Number], i: int) -> set[PDTable]:
    """PD tables of the trees reachable from C(x) by a swap at 1-based i."""
    x = as_sequence(x)
    m = len(x)
    if not 1 <= i <= m - 1:
        raise ValueError(f"swap position {i} outside 1..{m - 1}")
    return set(_swap_family(parent_distance(x), reverse_parent_distance(x), i - 1))


@dataclass(frozen=True)
class Neighborhood:
    by_position: tuple[frozenset, ...]  # entry k holds swaps at position k+1

    @property
    def union(self) -> frozenset:
        return frozenset().union(*self.by_position)

    def __len__(self) -> int:
        return sum(len(s) for s in self.by_position)


def neighborhood(x: Sequence[Number]) -> Neighborhood:
    x = as_sequence(x)
    m = len(x)
    if m < 2:
        raise ValueError("neighbourhood needs a sequence of length at least 2")
    fx, bx = parent_distance(x), reverse_parent_distance(x)
    return Neighborhood(tuple(frozenset(_swap_family(fx, bx, i)) for i in range(m - 1)))


def count_sequences(t: CartesianTree) -> int:
    """Permutations of 1..n whose Cartesian tree is t (hook-length formula)."""
    prod = 1
    for s in t.subtree_sizes():
        prod *= s
    return math.factorial(len(t)) // prod


def count_sequences_recursive(t: CartesianTree) -> int:
    """Same count via p(T) = C(n-1, |left|) p(left) p(right)."""
    if t.root is None:
        return 1
    sizes = t.subtree_sizes()

    def rec(node: Optional[int]) -> int:
        if node is None:
            return 1
        left = t.left[node]
        nl = sizes[left] if left is not None else 0
        return math.comb(sizes[node] - 1, nl) * rec(left) * rec(t.right[node])

    return rec(t.root)


def _vertex_id(table: PDTable) -> str:
    return ",".join(map(str, table))


@dataclass(frozen=True)
class SwapGraph:
    m: int
    vertices: tuple[PDTable, ...]
    adjacency: dict  # table -> frozenset of neighbour tables

    @property
    def edges(self) -> list[tuple[PDTable, PDTable]]:
        seen = set()
        for u, nbrs in self.adjacency.items():
            for v in nbrs:
                seen.add((u, v) if u < v else (v, u))
        return sorted(seen)

    def degree(self, table: PDTable) -> int:
        return len(self.adjacency[table])

    def is_symmetric(self) -> bool:
        return all(u in self.adjacency[v] for u, nbrs in self.adjacency.items() for v in nbrs)

    def diameter(self) -> int:
        """Largest shortest-path distance; BFS from every vertex."""
        best = 0
        for src in self.vertices:
            dist = {src: 0}
            queue = deque([src])
            while queue:
                u = queue.popleft()
                for v in self.adjacency[u]:
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        queue.append(v)
            best = max(best, max(dist.values()))
        return best

    def to_dot(self) -> str:
        lines = [f"graph swap_m{self.m} {{"]
        lines += [f'  "{_vertex_id(v)}";' for v in self.vertices]
        lines += [f'  "{_vertex_id(u)}" -- "{_vertex_id(v)}";' for u, v in self.edges]
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["source", "target"])
        for u, v in self.edges:
            w.writerow([_vertex_id(u), _vertex_id(v)])
        return buf.getvalue()


def build_swap_graph(m: int) -> SwapGraph:
    if not 2 <= m <= MAX_GRAPH_SIZE:
        raise GraphTooLarge(f"swap graph size {m} outside 2..{MAX_GRAPH_SIZE}")
    vertices = tuple(all_pd_tables(m))
    adjacency = {}
    for v in vertices:
        bv = reverse_parent_distance(sequence_from_pd(v))
        nbrs = set()
        for i in range(m - 1):
            nbrs.update(_swap_family(v, bv, i))
        adjacency[v] = frozenset(nbrs)
    return SwapGraph(m, vertices, adjacency)


@dataclass(frozen=True)
class SwapAutomaton:
    """Trie over PD symbols with failure links.

    State 0 is the root. ``terminal`` maps a state to the index of the
    pattern table it spells.
    """

    m: int
    patterns: tuple[PDTable, ...]
    goto: tuple[dict, ...]
    fail: tuple[int, ...]
    depth: tuple[int, ...]
    terminal: dict

    @property
    def state_count(self) -> int:
        return len(self.goto)

    @property
    def pattern_count(self) -> int:
        return len(self.patterns)

    def accepts(self, table: Sequence[int]) -> bool:
        s = 0
        for a in table:
            s = self.goto[s].get(a, -1)
            if s < 0:
                return False
        return s in self.terminal


def build_swap_automaton(p: Sequence[Number]) -> SwapAutomaton:
    """Automaton for PD(p) together with its whole swap neighbourhood."""
    p = as_sequence(p)
    m = len(p)
    if m < 2:
        raise ValueError("swap automaton needs a pattern of length at least 2")
    own = parent_distance(p)
    patterns = [own] + sorted(neighborhood(p).union - {own})
    goto: list[dict] = [{}]
    depth = [0]
    terminal = {}
    for k, table in enumerate(patterns):
        s = 0
        for a in table:
            nxt = goto[s].get(a)
            if nxt is None:
                nxt = len(goto)
                goto[s][a] = nxt
                goto.append({})
                depth.append(depth[s] + 1)
            s = nxt
        terminal[s] = k
    fail = [0] * len(goto)
    queue = deque(goto[0].values())
    while queue:
        s = queue.popleft()
        for a, child in goto[s].items():
            queue.append(child)
            f = fail[s] if s else 0
            while True:
                if s == 0:
                    target = 0
                    break
                # a symbol pointing past the shorter span means "no smaller element"
                b = a if a <= depth[f] else 0
                nxt = goto[f].get(b)
                if nxt is not None:
                    target = nxt
                    break
                if f == 0:
                    target = 0
                    break
                f = fail[f]
            fail[child] = target
    return SwapAutomaton(m, tuple(patterns), tuple(goto), tuple(fail), tuple(depth), terminal)


def automaton_search(a: SwapAutomaton, t: Sequence[Number]) -> MatchReport:
    """Windows of t one swap (or zero) away from the automaton's pattern.

    Each transition lookup counts as one comparison.
    """
    t = as_sequence(t)
    n, m = len(t), a.m
    if m > n:
        raise WindowError(f"window length {m} invalid for text of length {n}")
    goto, fail, depth, terminal = a.goto, a.fail, a.depth, a.terminal
    occ = []
    c = 0
    s = 0
    for j, g in enumerate(parent_distance(t)):
        while True:
            d = depth[s]
            sym = g if 0 < g <= d else 0
            c += 1
            nxt = goto[s].get(sym)
            if nxt is not None:
                s = nxt
                break
            if s == 0:
                break
            s = fail[s]
        if s in terminal:
            occ.append(j - m + 2)
    return MatchReport(occ, c, n - m + 1, m)
