"""One cop guarding a geodesic u-v path through a robber territory R.

The cop keeps to the robber's shadow on the path: the path vertex whose index
is the robber's distance from u, capped at the path length.  Distances are
taken in G' = G[R + {u, v}] - uv, where the path is a geodesic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graphcore import INF, Graph, PathOrCycle, distances, is_connected_set

ADVERSARIES = ("exhaustive", "random", "scripted")


class GuardPreconditionError(ValueError):
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


def _guard_graph(g: Graph, R, u, v) -> tuple[Graph, dict[int, int]]:
    keep = sorted(set(R) | {u, v})
    sub, fwd = g.induced(keep)
    back = {new: old for old, new in fwd.items()}
    edges = [e for e in sub.edges if e != tuple(sorted((fwd[u], fwd[v])))]
    return Graph(sub.n, edges), back


def check_guard_preconditions(g: Graph, R, u: int, v: int) -> list[str]:
    R = set(R)
    problems = []
    if not R:
        return ["R is empty"]
    outside = sorted(x for x in R | {u, v} if not 0 <= x < g.n)
    if outside:
        return [f"vertices {outside} are not in the graph"]
    if not is_connected_set(g, R):
        problems.append("G[R] is not connected")
    if u == v:
        problems.append("u and v coincide")
    if u not in R and not (g.neighbor_set(u) & R):
        problems.append(f"u={u} is not in N[R]")
    if v in R:
        problems.append(f"v={v} lies in R")
    elif not (g.neighbor_set(v) & R):
        problems.append(f"v={v} is not in N(R)")
    if not (g.neighbor_set(v) & (R - {u})):
        problems.append(f"v={v} has no neighbour in R - {{u}}")
    return problems


def plan_guard(g: Graph, R, u: int, v: int) -> PathOrCycle:
    """Shortest u-v path in G' = G[R + {u, v}] - uv; its interior lies in R."""
    problems = check_guard_preconditions(g, R, u, v)
    if problems:
        raise GuardPreconditionError(problems)
    sub, back = _guard_graph(g, R, u, v)
    fwd = {old: new for new, old in back.items()}
    s, t = fwd[u], fwd[v]
    parent = {s: None}
    queue = [s]
    for x in queue:
        if x == t:
            break
        for y in sub.neighbors(x):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    seq = []
    x = t
    while x is not None:
        seq.append(back[x])
        x = parent[x]
    return PathOrCycle(tuple(reversed(seq)))


@dataclass
class GuardedPath:
    path: PathOrCycle
    cop_at: int
    stabilized: bool = False
    dist_from_u: dict[int, int] = field(default_factory=dict, repr=False)

    @classmethod
    def start(cls, g: Graph, R, u: int, v: int, path: PathOrCycle | None = None) -> "GuardedPath":
        path = path or plan_guard(g, R, u, v)
        sub, back = _guard_graph(g, R, u, v)
        fwd = {old: new for new, old in back.items()}
        d = {back[x]: k for x, k in distances(sub, fwd[u]).items()}
        return cls(path, path.vertices[0], False, d)

    @property
    def index(self) -> dict[int, int]:
        return {x: i for i, x in enumerate(self.path.vertices)}

    def shadow(self, robber_at: int) -> int:
        return min(self.dist_from_u.get(robber_at, INF), self.path.length)

    def on_shadow(self, robber_at: int) -> bool:
        i = self.index.get(self.cop_at)
        return i is not None and i == self.shadow(robber_at)


def _step_towards(g: Graph, src: int, dst: int) -> int:
    if src == dst:
        return src
    d = distances(g, dst)
    best = min((y for y in g.neighbors(src) if y in d), key=lambda y: (d[y], y), default=src)
    return best


def guard_move(state: GuardedPath, robber_at: int, g: Graph) -> int:
    """Next cop vertex: capture when adjacent, else one step toward the shadow."""
    if robber_at in g.closed_neighborhood(state.cop_at):
        return robber_at
    target = state.shadow(robber_at)
    verts = state.path.vertices
    i = state.index.get(state.cop_at)
    if i is None:
        return _step_towards(g, state.cop_at, verts[target])
    if i < target:
        return verts[i + 1]
    if i > target:
        return verts[i - 1]
    return state.cop_at


def guard_step(state: GuardedPath, robber_at: int, g: Graph) -> GuardedPath:
    nxt = guard_move(state, robber_at, g)
    new = GuardedPath(state.path, nxt, state.stabilized, state.dist_from_u)
    if nxt != robber_at and new.on_shadow(robber_at):
        new.stabilized = True
    return new


# ----------------------------------------------------------------------
# simulation


@dataclass
class GuardReport:
    adversary: str
    path: PathOrCycle
    runs: int = 0
    captures: int = 0
    max_stabilization_turn: int = 0
    unstabilized_runs: int = 0
    violations: list[dict] = field(default_factory=list)
    invalid: bool = False
    invalid_reason: str = ""
    trace: list[tuple[int, int | None]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "adversary": self.adversary,
            "path": list(self.path.vertices),
            "runs": self.runs,
            "captures": self.captures,
            "max_stabilization_turn": self.max_stabilization_turn,
            "unstabilized_runs": self.unstabilized_runs,
            "violations": self.violations,
            "invalid": self.invalid,
            "invalid_reason": self.invalid_reason,
            "trace": [list(t) for t in self.trace],
        }


class _Arena:
    """Rules shared by all adversaries."""

    def __init__(self, g, R, u, v):
        self.g = g
        self.R = frozenset(R)
        self.u, self.v = u, v
        self.base = GuardedPath.start(g, R, u, v)
        self.path_set = self.base.path.vertex_set
        nbhd = set()
        for x in self.R:
            nbhd |= g.neighbor_set(x)
        self.forbidden = frozenset(nbhd - self.R - {u, v})

    def robber_options(self, r, stabilized):
        out = []
        for y in sorted(self.g.closed_neighborhood(r)):
            if y in self.forbidden:
                continue
            if y == self.v and not stabilized:
                continue
            out.append(y)
        return out

    def legal(self, r, y, stabilized) -> str:
        if y not in self.g.closed_neighborhood(r):
            return f"robber jumps from {r} to non-adjacent {y}"
        if y in self.forbidden:
            return f"robber enters {y} in N(R) outside u, v"
        if y == self.v and not stabilized:
            return f"robber enters v={y} before stabilization"
        return ""

    def cop_turn(self, state: GuardedPath, robber: int, turn: int, report: GuardReport, was_stab: bool):
        """Cop reacts to a robber on ``robber``; returns (new state, captured)."""
        new = guard_step(state, robber, self.g)
        captured = new.cop_at == robber
        if not captured:
            if robber == self.u:
                report.violations.append({"kind": "u-visit", "turn": turn, "robber": robber, "cop": new.cop_at})
            if was_stab and robber in self.path_set:
                report.violations.append({"kind": "path-entry", "turn": turn, "robber": robber, "cop": new.cop_at})
            if was_stab and not new.on_shadow(robber):
                report.violations.append({"kind": "shadow-lost", "turn": turn, "robber": robber, "cop": new.cop_at})
        return new, captured


def _run_walk(arena: _Arena, start: int, choose, max_turns: int, report: GuardReport, record: bool):
    state = arena.base
    r = start
    stab_turn = None
    if record:
        report.trace.append((state.cop_at, r))
    if r == state.cop_at:
        return True, 0
    for turn in range(1, max_turns + 1):
        state, captured = arena.cop_turn(state, r, turn, report, state.stabilized)
        if record:
            report.trace.append((state.cop_at, None if captured else r))
        if captured:
            return True, stab_turn
        if state.stabilized and stab_turn is None:
            stab_turn = turn
        y = choose(r, state.stabilized)
        if y is None:
            return False, stab_turn
        problem = arena.legal(r, y, state.stabilized)
        if problem:
            report.invalid = True
            report.invalid_reason = problem
            return False, stab_turn
        r = y
        if record:
            report.trace.append((state.cop_at, r))
        if r == state.cop_at:
            return True, stab_turn
    return False, stab_turn


def _exhaustive(arena: _Arena, max_turns: int, report: GuardReport):
    """All robber strategies at once: the cop is deterministic, so track reachable states per turn."""
    g = arena.g
    layer = set()
    for r in sorted(arena.R - {arena.u}):
        report.runs += 1
        layer.add((arena.base.cop_at, r, False))
    seen_violation = set()
    for turn in range(1, max_turns + 1):
        nxt = set()
        for cop, r, stab in sorted(layer):
            state = GuardedPath(arena.base.path, cop, stab, arena.base.dist_from_u)
            before = len(report.violations)
            new, captured = arena.cop_turn(state, r, turn, report, stab)
            # keep the first witness of each kind only
            for viol in report.violations[before:]:
                key = viol["kind"]
                if key in seen_violation:
                    viol["dup"] = True
                seen_violation.add(key)
            report.violations[before:] = [x for x in report.violations[before:] if not x.pop("dup", False)]
            if captured:
                report.captures += 1
                continue
            if new.stabilized and not stab:
                report.max_stabilization_turn = max(report.max_stabilization_turn, turn)
            for y in arena.robber_options(r, new.stabilized):
                if y == new.cop_at:
                    continue
                nxt.add((new.cop_at, y, new.stabilized))
        layer = nxt
        if not layer:
            break
    report.unstabilized_runs = sum(1 for _, _, s in layer if not s)


def simulate_guard(g: Graph, R, u: int, v: int, robber="exhaustive", max_turns: int | None = None,
                   trials: int = 1000, seed: int = 0, script=None) -> GuardReport:
    """Run the guarding strategy against an adversary and certify its contract.

    ``robber`` is "exhaustive", "random" (``trials`` seeded walks) or
    "scripted" (``script`` lists the robber's start and then its moves).
    """
    arena = _Arena(g, R, u, v)
    if max_turns is None:
        max_turns = 3 * g.n
    report = GuardReport(robber, arena.base.path)
    if robber == "exhaustive":
        _exhaustive(arena, max_turns, report)
        return report
    if robber == "random":
        rng = random.Random(seed)
        starts = sorted(arena.R - {u})

        def choose(r, stab):
            return rng.choice(arena.robber_options(r, stab))

        for t in range(trials):
            report.runs += 1
            captured, stab_turn = _run_walk(arena, rng.choice(starts), choose, max_turns, report, t == 0)
            report.captures += captured
            if stab_turn is not None:
                report.max_stabilization_turn = max(report.max_stabilization_turn, stab_turn)
            elif not captured:
                report.unstabilized_runs += 1
        return report
    if robber == "scripted":
        script = list(script or ())
        if not script:
            raise ValueError("scripted adversary needs a script")
        if script[0] not in arena.R or script[0] == u:
            report.invalid = True
            report.invalid_reason = f"robber must start in R - {{u}}, not {script[0]}"
            return report
        moves = iter(script[1:])

        def choose(r, stab):
            return next(moves, None)

        report.runs = 1
        captured, stab_turn = _run_walk(arena, script[0], choose, max_turns, report, True)
        report.captures = int(captured)
        report.max_stabilization_turn = stab_turn or 0
        return report
    raise ValueError(f"unknown adversary {robber!r}; expected one of {ADVERSARIES}")
