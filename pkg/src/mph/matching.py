"""Maximum bipartite matching (Hopcroft-Karp).

Breadth-first layering from the free left vertices followed by depth-first
augmentation along layered paths.  The depth-first search is iterative so
matchings on long augmenting chains do not hit the recursion limit.
"""
from __future__ import annotations

from collections import deque
from typing import Sequence

_UNREACHED = -1


def maximum_matching(adjacency: Sequence[Sequence[int]], right_count: int) -> int:
    """Size of a maximum matching.

    ``adjacency[u]`` lists the right vertices reachable from left vertex
    ``u``; right vertices are 0..right_count-1.
    """
    left_count = len(adjacency)
    match_left = [-1] * left_count
    match_right = [-1] * right_count
    size = 0
    while True:
        dist = _layer(adjacency, match_left, match_right)
        if dist is None:
            return size
        for u in range(left_count):
            if match_left[u] == -1 and _augment(u, adjacency, match_left, match_right, dist):
                size += 1


def _layer(adjacency, match_left, match_right):
    dist = [_UNREACHED] * len(adjacency)
    queue = deque()
    for u in range(len(adjacency)):
        if match_left[u] == -1:
            dist[u] = 0
            queue.append(u)
    reachable_free_right = False
    while queue:
        u = queue.popleft()
        for v in adjacency[u]:
            w = match_right[v]
            if w == -1:
                reachable_free_right = True
            elif dist[w] == _UNREACHED:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist if reachable_free_right else None


def _augment(start, adjacency, match_left, match_right, dist):
    stack = [(start, iter(adjacency[start]))]
    chosen: list[int] = []
    while stack:
        u, edges = stack[-1]
        advanced = False
        for v in edges:
            w = match_right[v]
            if w == -1:
                chosen.append(v)
                for (lu, _), rv in zip(stack, chosen):
                    match_left[lu] = rv
                    match_right[rv] = lu
                return True
            if dist[w] == dist[u] + 1:
                chosen.append(v)
                stack.append((w, iter(adjacency[w])))
                advanced = True
                break
        if not advanced:
            dist[u] = _UNREACHED  # dead end for this phase
            stack.pop()
            if chosen:
                chosen.pop()
    return False
