"""Cartesian trees of numeric sequences.

Positions handed out by this module are 1-based. Duplicate values are
linearized by position: of two equal values, the earlier one counts as
the smaller, so every comparison is strict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

Number = float | int

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


def as_sequence(values: Iterable[Number]) -> tuple[Number, ...]:
    """Validate and freeze a sequence of numbers.

    Raises ValueError on NaN, infinities, integers outside int64, or
    non-numeric entries.
    """
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ValueError(f"not a number: {v!r}")
        if isinstance(v, float) and not math.isfinite(v):
            raise ValueError(f"non-finite value: {v!r}")
        if isinstance(v, int) and not INT64_MIN <= v <= INT64_MAX:
            raise ValueError(f"integer out of 64-bit range: {v!r}")
        out.append(v)
    return tuple(out)


def smaller(x: Sequence[Number], a: int, b: int) -> bool:
    """True if x[a] precedes x[b] in the linearized order (0-based)."""
    return x[a] < x[b] or (x[a] == x[b] and a < b)


@dataclass(frozen=True)
class CartesianTree:
    """Min-rooted binary tree; node h stands for position h + 1.

    ``parent``, ``left`` and ``right`` are indexed by 0-based node and
    hold 0-based nodes or None.
    """

    root: Optional[int]
    parent: tuple[Optional[int], ...]
    left: tuple[Optional[int], ...]
    right: tuple[Optional[int], ...]
    stack_ops: int = field(default=0, compare=False)

    def __len__(self) -> int:
        return len(self.parent)

    def shape(self) -> tuple:
        """Nested (left, right) tuples; equal iff the trees are equal."""

        def rec(node):
            if node is None:
                return None
            return (rec(self.left[node]), rec(self.right[node]))

        return rec(self.root)

    def inorder(self) -> list[int]:
        out: list[int] = []
        stack: list[int] = []
        node = self.root
        while stack or node is not None:
            while node is not None:
                stack.append(node)
                node = self.left[node]
            node = stack.pop()
            out.append(node + 1)
            node = self.right[node]
        return out

    def subtree_sizes(self) -> list[int]:
        """Number of nodes under each node (itself included), 0-based."""
        sizes = [1] * len(self)
        # children always appear after parents in a preorder walk
        for node in reversed(self.preorder()):
            p = self.parent[node - 1]
            if p is not None:
                sizes[p] += sizes[node - 1]
        return sizes

    def preorder(self) -> list[int]:
        out: list[int] = []
        stack = [] if self.root is None else [self.root]
        while stack:
            node = stack.pop()
            out.append(node + 1)
            if self.right[node] is not None:
                stack.append(self.right[node])
            if self.left[node] is not None:
                stack.append(self.left[node])
        return out

    def subtree(self, node: Optional[int]) -> "CartesianTree":
        """Copy of the subtree rooted at 0-based ``node``, relabelled from 0."""
        if node is None:
            return CartesianTree(None, (), (), ())
        lo = node
        while self.left[lo] is not None:
            lo = self.left[lo]
        hi = node
        while self.right[hi] is not None:
            hi = self.right[hi]

        def shift(v):
            return None if v is None else v - lo

        parent = [shift(self.parent[h]) for h in range(lo, hi + 1)]
        parent[node - lo] = None
        return CartesianTree(
            node - lo,
            tuple(parent),
            tuple(shift(self.left[h]) for h in range(lo, hi + 1)),
            tuple(shift(self.right[h]) for h in range(lo, hi + 1)),
        )

    def left_subtree(self) -> "CartesianTree":
        return self.subtree(None if self.root is None else self.left[self.root])

    def right_subtree(self) -> "CartesianTree":
        return self.subtree(None if self.root is None else self.right[self.root])


def build_cartesian_tree(x: Iterable[Number]) -> CartesianTree:
    """Build C(x) online with a right-branch stack, in O(m)."""
    x = as_sequence(x)
    m = len(x)
    parent: list[Optional[int]] = [None] * m
    left: list[Optional[int]] = [None] * m
    right: list[Optional[int]] = [None] * m
    stack: list[int] = []
    ops = 0
    for h in range(m):
        last = None
        while stack and x[stack[-1]] > x[h]:
            last = stack.pop()
            ops += 1
        if last is not None:
            left[h] = last
            parent[last] = h
        if stack:
            right[stack[-1]] = h
            parent[h] = stack[-1]
        stack.append(h)
        ops += 1
    root = stack[0] if stack else None
    return CartesianTree(root, tuple(parent), tuple(left), tuple(right), ops)


def right_branch(t: CartesianTree) -> list[int]:
    out = []
    node = t.root
    while node is not None:
        out.append(node + 1)
        node = t.right[node]
    return out


def left_branch(t: CartesianTree) -> list[int]:
    out = []
    node = t.root
    while node is not None:
        out.append(node + 1)
        node = t.left[node]
    return out


def rmp(t: CartesianTree) -> int:
    return len(right_branch(t))


def lmp(t: CartesianTree) -> int:
    return len(left_branch(t))


def ct_equal(x: Iterable[Number], y: Iterable[Number]) -> bool:
    """True iff x and y share the same Cartesian tree."""
    from ctmatch.representations import parent_distance

    x = as_sequence(x)
    y = as_sequence(y)
    return len(x) == len(y) and parent_distance(x) == parent_distance(y)


def tree_from_pd(pd: Sequence[int]) -> CartesianTree:
    """Rebuild the tree encoded by a parent-distance table.

    Raises ValueError if ``pd`` does not encode any tree.
    """
    m = len(pd)
    parent: list[Optional[int]] = [None] * m
    left: list[Optional[int]] = [None] * m
    right: list[Optional[int]] = [None] * m
    stack: list[int] = []
    for h, d in enumerate(pd):
        if d < 0 or d > h:
            raise ValueError(f"invalid parent distance {d} at position {h + 1}")
        target = h - d if d else None
        last = None
        while stack and stack[-1] != target:
            last = stack.pop()
        if target is not None and not stack:
            raise ValueError(f"position {target + 1} is not on the right branch at {h + 1}")
        if last is not None:
            left[h] = last
            parent[last] = h
        if stack:
            right[stack[-1]] = h
            parent[h] = stack[-1]
        stack.append(h)
    root = stack[0] if stack else None
    return CartesianTree(root, tuple(parent), tuple(left), tuple(right))


def sequence_from_tree(t: CartesianTree) -> tuple[int, ...]:
    """A permutation of 1..m whose Cartesian tree is ``t`` (preorder ranks)."""
    values = [0] * len(t)
    for rank, node in enumerate(t.preorder(), start=1):
        values[node - 1] = rank
    return tuple(values)


def sequence_from_pd(pd: Sequence[int]) -> tuple[int, ...]:
    return sequence_from_tree(tree_from_pd(pd))
