"""Exact cops-and-robber solver by backward induction, plus the dismantlability oracle."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from math import comb

import numpy as np
from scipy import sparse

from .graphcore import Graph

# one byte of label storage per (cops, robber, side) state
DEFAULT_MEM_CAP = 10**8
MEM_CAP_ENV = "COPBOUND_MEM_CAP"


class ResourceRefusal(RuntimeError):
    """The game would not fit in the configured memory cap."""


@dataclass
class GameSolution:
    cops: int
    win: bool
    states: int
    rounds: int
    placement: tuple[int, ...] | None  # a winning cop placement, when win

    def to_json(self):
        return {"cops": self.cops, "win": self.win, "states": self.states,
                "rounds": self.rounds,
                "placement": list(self.placement) if self.placement is not None else None}


def mem_cap(override: int | None = None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get(MEM_CAP_ENV)
    return int(env) if env else DEFAULT_MEM_CAP


def state_count(n: int, k: int) -> int:
    return comb(n + k - 1, k) * n * 2


def _closed_adjacency(g: Graph) -> sparse.csr_matrix:
    rows, cols = [], []
    for v in range(g.n):
        for w in g.closed_neighborhood(v):
            rows.append(v)
            cols.append(w)
    return sparse.csr_matrix((np.ones(len(rows), dtype=np.int32), (rows, cols)), shape=(g.n, g.n))


def _cop_moves(g: Graph, configs, index) -> sparse.csr_matrix:
    rows, cols = [], []
    closed = [sorted(g.closed_neighborhood(v)) for v in range(g.n)]
    for i, c in enumerate(configs):
        succ = {tuple(sorted(p)) for p in itertools.product(*(closed[x] for x in c))}
        for s in succ:
            rows.append(i)
            cols.append(index[s])
    m = len(configs)
    return sparse.csr_matrix((np.ones(len(rows), dtype=np.int32), (rows, cols)), shape=(m, m))


def solve(g: Graph, k: int, cap: int | None = None) -> GameSolution:
    """Decide whether ``k`` cops catch the robber on ``g``.

    Cops are placed first (as a multiset), the robber then picks a vertex, and
    the cops move first.  Pieces may stay put.  Capture when a cop shares the
    robber's vertex, which includes the robber being placed onto a cop.
    """
    if k < 1:
        raise ValueError("need at least one cop")
    if g.n == 0 or not g.is_connected():
        raise ValueError("the game is played on a connected nonempty graph")
    n = g.n
    states = state_count(n, k)
    limit = mem_cap(cap)
    if states > limit:
        raise ResourceRefusal(f"{states} states exceed the memory cap of {limit}")
    if k >= n:
        return GameSolution(k, True, states, 0, tuple(range(n)) + (0,) * (k - n))

    configs = list(itertools.combinations_with_replacement(range(n), k))
    index = {c: i for i, c in enumerate(configs)}
    capture = np.zeros((len(configs), n), dtype=bool)
    for i, c in enumerate(configs):
        capture[i, list(c)] = True
    closed = _closed_adjacency(g)
    closed_deg = np.asarray(closed.sum(axis=1)).ravel()
    moves = _cop_moves(g, configs, index)

    # cops_win[c, r]: cops to move at c, robber on r; robber_lost: robber to move
    cops_win = capture.copy()
    rounds = 0
    while True:
        rounds += 1
        safe_moves = (closed @ cops_win.T.astype(np.int32)).T  # robber targets already lost
        robber_lost = capture | (safe_moves == closed_deg[None, :])
        nxt = capture | ((moves @ robber_lost.astype(np.int32)) > 0)
        if np.array_equal(nxt, cops_win):
            break
        cops_win = nxt
    good = np.flatnonzero(cops_win.all(axis=1))
    placement = configs[good[0]] if len(good) else None
    return GameSolution(k, placement is not None, states, rounds, placement)


def cops_win(g: Graph, k: int, cap: int | None = None) -> bool:
    return solve(g, k, cap).win


def cop_number(g: Graph, max_k: int | None = None, cap: int | None = None) -> int | None:
    """Least k with a cop win, or None when it exceeds ``max_k``."""
    if max_k is None:
        max_k = g.n
    for k in range(1, max_k + 1):
        if cops_win(g, k, cap):
            return k
    return None


def is_dismantlable(g: Graph) -> bool:
    alive = set(range(g.n))
    closed = {v: set(g.closed_neighborhood(v)) for v in alive}
    if not alive:
        return False
    while len(alive) > 1:
        for u in sorted(alive):
            nu = closed[u] & alive
            if any(w != u and nu <= (closed[w] & alive) for w in nu):
                alive.discard(u)
                break
        else:
            return False
    return True
