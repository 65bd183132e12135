"""Clique-like density measure driving the one-forest-class case.

The strength of a cograph is the larger of its clique number and one plus
the largest s for which 2s vertices induce a complete graph minus a
perfect matching (the cocktail party graph on s pairs). Both quantities
fold over the cotree, so the profile comes out of one bottom-up pass:

* a clique lives inside one side of every union and splits over a join,
* an induced cocktail on s >= 2 pairs is connected, hence inside one union
  part, while a union of two or more vertices always holds a single
  non-adjacent pair (s = 1); joins add the pair counts.
"""
from __future__ import annotations

from typing import NamedTuple

from .cotree import Join, Leaf, Union
from .solver import _coerce_tree

__all__ = ["StrengthProfile", "strength_profile", "q_from_strength"]


class StrengthProfile(NamedTuple):
    """omega is the clique number; tau the most pairs in an induced
    complete-minus-perfect-matching subgraph; strength = max(omega, tau+1)."""

    omega: int
    tau: int
    strength: int


def strength_profile(graph_or_tree) -> StrengthProfile:
    """Clique number, maximum induced cocktail pairs, and strength."""
    tree = _coerce_tree(graph_or_tree)
    if tree is None:
        return StrengthProfile(0, 0, 0)
    stack: list[list] = [[tree, 0, None]]
    ret: tuple[int, int] | None = None
    has_ret = False
    while stack:
        frame = stack[-1]
        node = frame[0]
        if isinstance(node, Leaf):
            ret = (1, 0)
            has_ret = True
            stack.pop()
            continue
        if has_ret:
            acc = frame[2]
            if acc is None:
                frame[2] = ret
            elif isinstance(node, Union):
                frame[2] = (max(acc[0], ret[0]), max(acc[1], ret[1], 1))
            else:
                frame[2] = (acc[0] + ret[0], acc[1] + ret[1])
            has_ret = False
        if frame[1] < len(node.children):
            child = node.children[frame[1]]
            frame[1] += 1
            stack.append([child, 0, None])
        else:
            ret = frame[2]
            has_ret = True
            stack.pop()
    assert ret is not None
    omega, pairs = ret
    return StrengthProfile(omega, pairs, max(omega, pairs + 1))


def q_from_strength(strength: int) -> int:
    """Independent classes forced next to a single forest class.

    A cograph of strength s needs exactly max(0, s - 2) independent classes
    when one forest class and no deletions are allowed.
    """
    if strength < 0:
        raise ValueError("strength must be nonnegative")
    return max(0, strength - 2)
