"""Bipartite matching and vertex covers for the separation oracles.

Hopcroft-Karp computes a maximum matching; the Koenig construction turns it
into a minimum vertex cover, which is what the binary separation value
actually needs.  A greedy maximal matching (edges scanned in lexicographic
order) backs the multiclass 2-approximation.  Everything here is
deterministic: adjacency lists are kept in sorted order and all scans are
in index order, so identical inputs give identical covers.
"""

from __future__ import annotations

from collections import deque

import numpy as np

_INF = -1  # BFS "unreached" marker


def hopcroft_karp(adj: list[list[int]], n_right: int) -> tuple[int, np.ndarray, np.ndarray]:
    """Maximum matching of a bipartite graph given as left adjacency lists.

    Returns (size, match_left, match_right) with -1 for unmatched vertices.
    """
    n_left = len(adj)
    match_l = np.full(n_left, -1, dtype=np.int64)
    match_r = np.full(n_right, -1, dtype=np.int64)
    dist = np.zeros(n_left, dtype=np.int64)

    def bfs() -> bool:
        q: deque[int] = deque()
        found = False
        for u in range(n_left):
            if match_l[u] == -1:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = _INF
        while q:
            u = q.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w == -1:
                    found = True
                elif dist[w] == _INF:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in adj[u]:
            w = match_r[v]
            if w == -1 or (dist[w] == dist[u] + 1 and dfs(w)):
                match_l[u] = v
                match_r[v] = u
                return True
        dist[u] = _INF
        return False

    size = 0
    while bfs():
        for u in range(n_left):
            if match_l[u] == -1 and dfs(u):
                size += 1
    return size, match_l, match_r


def minimum_vertex_cover(adj: list[list[int]], n_right: int
                         ) -> tuple[np.ndarray, np.ndarray]:
    """Koenig cover from a maximum matching.

    Returns (left_cover, right_cover) index arrays; their total size equals
    the maximum matching size.
    """
    _, match_l, match_r = hopcroft_karp(adj, n_right)
    visited_l = np.zeros(len(adj), dtype=bool)
    visited_r = np.zeros(n_right, dtype=bool)
    q: deque[int] = deque(u for u in range(len(adj)) if match_l[u] == -1)
    for u in q:
        visited_l[u] = True
    # alternate: unmatched edges left->right, matched edges right->left
    while q:
        u = q.popleft()
        for v in adj[u]:
            if not visited_r[v]:
                visited_r[v] = True
                w = match_r[v]
                if w != -1 and not visited_l[w]:
                    visited_l[w] = True
                    q.append(int(w))
    left_cover = np.flatnonzero(~visited_l & (match_l != -1))
    right_cover = np.flatnonzero(visited_r)
    return left_cover, right_cover


def greedy_maximal_matching(edges: np.ndarray) -> int:
    """Size of the maximal matching built by scanning edges in the given
    (lexicographic) order and keeping every edge whose endpoints are free.

    ``edges`` is an (E, 2) array of (u, v) pairs over one shared vertex
    index space (the graph need not be bipartite here).
    """
    used: set[int] = set()
    size = 0
    for u, v in edges:
        if int(u) not in used and int(v) not in used:
            used.add(int(u))
            used.add(int(v))
            size += 1
    return size
