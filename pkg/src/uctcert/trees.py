"""Decidable binary trees and bounded-depth path search.

A tree is a prefix-closed set of binary words given by a total membership
test.  Bounded-depth search realizes the infinite-path existential as a
deterministic leftmost depth-first search; the longest-path variant routes
through a reduction tree that extends every maximal word, so that the
returned branch obeys: whenever its length-n prefix leaves the tree, the
whole tree lies below depth n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

from .binseq import check_word, is_prefix_closed
from .errors import EmptyTreeError, PrefixClosureError

# Sentinel returned by tree_height when the deepest explored level is
# nonempty (the bounded exploration cannot see an end).
UNBOUNDED = float("inf")

DEFAULT_MAX_DEPTH = 16


class ExplicitTree:
    """A tree given by an explicit, validated word set."""

    def __init__(self, words):
        word_set = frozenset(check_word(w) for w in words)
        offender = is_prefix_closed(set(word_set))
        if offender is not None:
            raise PrefixClosureError(offender)
        self.words = word_set
        self.explored_depth = max((len(w) for w in word_set), default=0)

    def member(self, word: str) -> bool:
        return word in self.words

    def level(self, n: int) -> tuple[str, ...]:
        return tuple(sorted(w for w in self.words if len(w) == n))


class FullTree:
    """The complete binary tree down to a fixed depth."""

    def __init__(self, depth: int):
        if depth < 0:
            raise ValueError("depth must be >= 0")
        self.depth = depth
        self.explored_depth = depth

    def member(self, word: str) -> bool:
        return len(word) <= self.depth

    def level(self, n: int) -> tuple[str, ...]:
        if n > self.depth:
            return ()
        return tuple(format(k, f"0{n}b") if n else "" for k in range(1 << n))


class ReductionTree:
    """Base tree plus all strict extensions of its height-level members.

    The height is evaluated against the explored portion of the base tree
    at construction; for the tree families produced in this package it is
    stable under deeper exploration.
    """

    def __init__(self, base, max_depth: int):
        self.base = base
        self.max_depth = max_depth
        height = tree_height(base, max_depth)
        self.height = max_depth if height is UNBOUNDED else height
        self.explored_depth = max_depth

    def member(self, word: str) -> bool:
        if self.base.member(word):
            return True
        return len(word) > self.height and self.base.member(word[: self.height])


Tree = Union[ExplicitTree, FullTree, ReductionTree]


@dataclass(frozen=True)
class PathResult:
    """A branch found by bounded-depth search.

    ``longest_len`` is the greatest n such that every prefix of ``word`` up
    to length n is a member of the queried tree; ``full_depth`` holds when
    that n equals the search depth.
    """

    word: str
    full_depth: bool
    longest_len: int

    def prefix(self, n: int) -> str:
        return self.word[:n]

    def to_json_dict(self) -> dict:
        status = "full_depth" if self.full_depth else {"longest": self.longest_len}
        return {"word": self.word, "status": status}


def tree_height(tree, max_depth: int):
    """Greatest member length <= max_depth; UNBOUNDED if level max_depth is hit.

    Returns 0 for an empty tree (no root member).
    """
    if not tree.member(""):
        return 0
    best = 0
    stack = [""]
    while stack:
        word = stack.pop()
        if len(word) > best:
            best = len(word)
            if best == max_depth:
                return UNBOUNDED
        if len(word) < max_depth:
            # Push right child first so the left is explored first.
            for bit in ("1", "0"):
                child = word + bit
                if tree.member(child):
                    stack.append(child)
    return best


def wkl_path(tree, depth: int) -> PathResult:
    """Leftmost deepest branch within the given depth.

    Returns the lexicographically least word of maximal viable length d
    (every prefix a member); full depth is reported when d == depth.
    """
    if not tree.member(""):
        raise EmptyTreeError("root is not a member")
    best = ""
    stack = [""]
    while stack:
        word = stack.pop()
        if len(word) == depth:
            return PathResult(word, True, depth)
        if len(word) > len(best):
            best = word
        for bit in ("1", "0"):
            child = word + bit
            if tree.member(child):
                stack.append(child)
    return PathResult(best, False, len(best))


def lpp_reduction(tree, max_depth: int) -> ReductionTree:
    """The tree whose infinite paths are the longest paths of the input."""
    return ReductionTree(tree, max_depth)


def longest_path(tree, max_depth: int) -> PathResult:
    """Longest-path search: leftmost branch through the reduction tree.

    Within the explored depth the result satisfies: if prefix(n) is not a
    member, then no member has length >= n.
    """
    raw = wkl_path(lpp_reduction(tree, max_depth), max_depth)
    in_tree = 0
    while in_tree < len(raw.word) and tree.member(raw.word[: in_tree + 1]):
        in_tree += 1
    return PathResult(raw.word, in_tree == max_depth, in_tree)


# -- tree files ---------------------------------------------------------------


def tree_from_obj(obj) -> Tree:
    if not isinstance(obj, dict) or "type" not in obj:
        raise ValueError("tree object must be a dict with a 'type' field")
    kind = obj["type"]
    if kind == "explicit":
        words = obj.get("words")
        if not isinstance(words, list) or not all(isinstance(w, str) for w in words):
            raise ValueError("explicit tree needs a 'words' list of strings")
        return ExplicitTree(words)
    if kind == "full":
        depth = obj.get("depth")
        if not isinstance(depth, int) or isinstance(depth, bool):
            raise ValueError("full tree needs an integer 'depth'")
        return FullTree(depth)
    raise ValueError(f"unknown tree type {kind!r}")


def load_tree(path: str) -> Tree:
    with open(path, "r", encoding="utf-8") as handle:
        return tree_from_obj(json.load(handle))


def tree_to_obj(tree, max_depth: int) -> dict:
    """Explicit JSON form of any tree, enumerated to max_depth."""
    words = []
    if tree.member(""):
        stack = [""]
        while stack:
            word = stack.pop()
            words.append(word)
            if len(word) < max_depth:
                for bit in ("1", "0"):
                    child = word + bit
                    if tree.member(child):
                        stack.append(child)
    words.sort(key=lambda w: (len(w), w))
    return {"type": "explicit", "words": words}
