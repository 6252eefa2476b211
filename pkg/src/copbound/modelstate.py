"""Snapshots of the model-building cop strategy: bags, model paths, robber
territory and guard assignments.

A state is plain data.  ``validate_state`` checks the structural conditions
(numbered 1-11 as in the strategy's definition; 6 only as a codomain check
because it quantifies over strategies), ``state_less_than`` is the strict
order used to show progress, and ``extract_minor`` turns a complete state
into an explicit H-minor model of the host.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .decomp import Decomposition, evaluate_bound, is_non_intertwined, validate_decomposition
from .graphcore import Graph, PathOrCycle, components_within, is_connected_set, parse_graph6, write_graph6
from .minor import MinorModel, verify_model

EXTRA = "extra"


@dataclass(frozen=True)
class StateViolation:
    condition: int | str
    message: str
    witnesses: tuple = ()

    def to_json(self):
        return {"condition": self.condition, "message": self.message, "witnesses": list(self.witnesses)}

    def __str__(self):
        return f"({self.condition}) {self.message}"


class ExtractionError(ValueError):
    def __init__(self, claim: str, message: str):
        self.claim = claim
        super().__init__(f"{claim}: {message}")


@dataclass
class GameState:
    host: Graph
    forbidden: Graph
    decomposition: Decomposition
    bags: dict[int, frozenset[int]]
    model_paths: dict[int, PathOrCycle | None]
    territory: frozenset[int]
    guards: dict[str, frozenset[int]]
    cop_groups: dict[str, int | str]
    robber: int | None = None  # where the robber stands; None means "any component"

    def __post_init__(self):
        W = self.decomposition.W
        self.bags = {w: frozenset(self.bags.get(w, ())) for w in sorted(W)} | {
            w: frozenset(b) for w, b in self.bags.items() if w not in W}
        self.model_paths = {i: self.model_paths.get(i) for i in range(len(self.decomposition.paths))} | {
            i: q for i, q in self.model_paths.items() if not 0 <= i < len(self.decomposition.paths)}
        self.territory = frozenset(self.territory)
        self.guards = {c: frozenset(self.guards.get(c, ())) for c in self.cop_groups} | {
            c: frozenset(s) for c, s in self.guards.items() if c not in self.cop_groups}

    # bookkeeping ----------------------------------------------------------

    def model_vertices(self) -> set[int]:
        out = set()
        for b in self.bags.values():
            out |= b
        for q in self.model_paths.values():
            if q is not None:
                out |= q.vertex_set
        return out

    def group(self, target) -> list[str]:
        return sorted(c for c, p in self.cop_groups.items() if p == target)

    def initialized_bags(self) -> int:
        return sum(1 for b in self.bags.values() if b)

    def initialized_paths(self) -> int:
        return sum(1 for q in self.model_paths.values() if q is not None)

    def guarded_total(self) -> int:
        return sum(len(s) for s in self.guards.values())

    def bag_total(self) -> int:
        return sum(len(b) for b in self.bags.values())

    def rank(self) -> tuple[int, int, int, int]:
        """Lexicographic progress measure; every strict decrease of the order lowers it."""
        return (len(self.territory), self.guarded_total(),
                self.initialized_bags() + self.initialized_paths(), -self.bag_total())

    def coboundary(self) -> frozenset[int]:
        return self.host.boundary(self.territory)

    # json -----------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "host": write_graph6(self.host),
            "forbidden": write_graph6(self.forbidden),
            "decomposition": self.decomposition.to_json(),
            "bags": {str(w): sorted(b) for w, b in sorted(self.bags.items())},
            "model_paths": {str(i): (q.to_json() if q is not None else None)
                            for i, q in sorted(self.model_paths.items())},
            "territory": sorted(self.territory),
            "robber": self.robber,
            "guards": {c: sorted(s) for c, s in sorted(self.guards.items())},
            "cop_groups": {c: p for c, p in sorted(self.cop_groups.items())},
        }

    @classmethod
    def from_json(cls, d: dict) -> "GameState":
        return cls(
            parse_graph6(d["host"]),
            parse_graph6(d["forbidden"]),
            Decomposition.from_json(d["decomposition"]),
            {int(w): frozenset(b) for w, b in d.get("bags", {}).items()},
            {int(i): (PathOrCycle.from_json(q) if q else None) for i, q in d.get("model_paths", {}).items()},
            frozenset(d["territory"]),
            {str(c): frozenset(s) for c, s in d.get("guards", {}).items()},
            {str(c): p for c, p in d.get("cop_groups", {}).items()},
            d.get("robber"),
        )


# ----------------------------------------------------------------------
# validation


def _path_ends_for(p: PathOrCycle) -> tuple[int, int]:
    return (p.root, p.root) if p.is_cycle else (p.vertices[0], p.vertices[-1])


def validate_state(st: GameState) -> list[StateViolation]:
    """Every violated condition with witnesses; empty means the snapshot is a valid state."""
    G, d = st.host, st.decomposition
    out: list[StateViolation] = []

    def bad(cond, msg, *wit):
        out.append(StateViolation(cond, msg, tuple(wit)))

    dec_errors = validate_decomposition(st.forbidden, d)
    if dec_errors:
        bad("decomposition", "decomposition of H is invalid: " + "; ".join(map(str, dec_errors)))
        return out
    ell = evaluate_bound(st.forbidden, d)

    extra_keys = sorted(set(st.bags) - set(d.W))
    if extra_keys:
        bad(1, "bags indexed by vertices outside W", *extra_keys)
    extra_paths = sorted(set(st.model_paths) - set(range(len(d.paths))))
    if extra_paths:
        bad(2, "model paths indexed outside the path system", *extra_paths)

    # (1) bags
    owner: dict[int, int] = {}
    for w, b in sorted(st.bags.items()):
        off = sorted(x for x in b if not 0 <= x < G.n)
        if off:
            bad(1, f"bag {w} has vertices outside G", *off)
            continue
        for x in sorted(b):
            if x in owner:
                bad(1, f"bags {owner[x]} and {w} share vertex {x}", owner[x], w, x)
            owner[x] = w
        if b and not is_connected_set(G, b):
            bad(1, f"bag {w} does not induce a connected subgraph", w)

    # (2) model paths
    interiors: dict[int, int] = {}
    for i, q in sorted(st.model_paths.items()):
        if q is None or i not in range(len(d.paths)):
            continue
        errs = q.check(G)
        if errs:
            bad(2, f"Q_{i} is not a path of G: {', '.join(errs)}", i)
            continue
        P = d.paths[i]
        a, b = _path_ends_for(P)
        if q.is_cycle and not P.is_cycle:
            bad(2, f"Q_{i} is a cycle but path {i} is not", i)
        if q.length < 1:
            bad(2, f"Q_{i} has no edges", i)
        x, y = _path_ends_for(q)
        A, B = st.bags.get(a, frozenset()), st.bags.get(b, frozenset())
        if not ((x in A and y in B) or (x in B and y in A)):
            bad(2, f"ends {x},{y} of Q_{i} are not in the bags of {a} and {b}", i, x, y)
        for z in q.interior:
            if z in owner:
                bad(2, f"interior vertex {z} of Q_{i} lies in bag {owner[z]}", i, z)
            if z in interiors:
                bad(2, f"Q_{interiors[z]} and Q_{i} share interior vertex {z}", interiors[z], i, z)
            interiors[z] = i

    # (3) matching edges between initialized vertices
    for i in sorted(d.M):
        a, b = d.paths[i].end_pair
        if st.bags.get(a) and st.bags.get(b) and st.model_paths.get(i) is None:
            bad(3, f"{a} and {b} are initialized but the matching edge {i} is not", i)

    # (4) territory is the robber's component
    R = st.territory
    model = st.model_vertices()
    rest = [v for v in range(G.n) if v not in model]
    comps = [frozenset(c) for c in components_within(G, rest)]
    if st.robber is not None:
        if st.robber in model:
            bad(4, f"robber vertex {st.robber} lies in the model", st.robber)
        else:
            mine = next(c for c in comps if st.robber in c)
            if mine != R:
                bad(4, "territory is not the robber's component of G minus the model", st.robber)
    elif R not in comps:
        bad(4, "territory is not a component of G minus the model")

    nR = G.boundary(R)

    # (5) at most one territory-adjacent vertex per bag
    for w, b in sorted(st.bags.items()):
        adj = sorted(b & nR)
        if len(adj) > 1:
            bad(5, f"bag {w} has {len(adj)} vertices adjacent to the territory", w, *adj)

    # guard bookkeeping
    for c in sorted(set(st.guards) - set(st.cop_groups)):
        bad("sizes", f"cop {c} guards vertices but belongs to no group", c)
    for c, p in sorted(st.cop_groups.items()):
        if p != EXTRA and p not in range(len(d.paths)):
            bad("sizes", f"cop {c} is assigned to unknown group {p!r}", c)
    for i in range(len(d.paths)):
        want = -(-ell.ell[i] // 3)
        have = len(st.group(i))
        if have != want:
            bad("sizes", f"path {i} has {have} cops, needs {want}", i)
    extras = st.group(EXTRA)
    if len(extras) != ell.indicator:
        bad("sizes", f"{len(extras)} extra cops, indicator is {ell.indicator}", *extras)

    # (6) codomain of s
    for c, s in sorted(st.guards.items()):
        inside = sorted(s & R)
        if inside:
            bad(6, f"cop {c} guards territory vertices", c, *inside)
        off = sorted(x for x in s if not 0 <= x < G.n)
        if off:
            bad(6, f"cop {c} guards vertices outside G", c, *off)

    # (7) coboundary covered
    covered = set()
    for s in st.guards.values():
        covered |= s
    loose = sorted(nR - covered)
    if loose:
        bad(7, "coboundary vertices are unguarded", *loose)

    # (8) / (9) per-path guard structure
    for i, P in enumerate(d.paths):
        cops = st.group(i)
        q = st.model_paths.get(i)
        if q is not None:
            sets = [st.guards.get(c, frozenset()) for c in cops]
            on = q.vertex_set
            off = sorted({x for s in sets for x in s} - on)
            if off:
                bad(8, f"cops of path {i} guard vertices off Q_{i}", i, *off)
            elif not is_non_intertwined(q, sets):
                bad(8, f"guard sets of path {i} are intertwined along Q_{i}", i)
        else:
            a, b = _path_ends_for(P)
            ends = st.bags.get(a, frozenset()) | st.bags.get(b, frozenset())
            for c in cops:
                s = st.guards.get(c, frozenset())
                if s and (len(s) != 1 or not s <= ends):
                    bad(9, f"cop {c} of uninitialized path {i} guards {sorted(s)}", c, i)

    # (10) bag vertices next to the territory are guarded by the f-group
    for w, b in sorted(st.bags.items()):
        if w not in d.f:
            continue
        for x in sorted(b & nR):
            if not any(x in st.guards.get(c, ()) for c in st.group(d.f[w])):
                bad(10, f"vertex {x} of bag {w} is not guarded by the cops of path {d.f[w]}", w, x)

    # (11) extra cop inactive
    for c in extras:
        if st.guards.get(c):
            bad(11, f"extra cop {c} is active", c)
    return out


def is_valid_state(st: GameState) -> bool:
    return not validate_state(st)


# ----------------------------------------------------------------------
# order


def _same_context(a: GameState, b: GameState):
    if a.host != b.host or a.forbidden != b.forbidden:
        raise ValueError("states live on different graphs")
    da, db = a.decomposition, b.decomposition
    if (da.h, da.W, da.paths, da.M, da.f) != (db.h, db.W, db.paths, db.M, db.f):
        raise ValueError("states use different decompositions")


def state_less_than(a: GameState, b: GameState) -> bool:
    """Strict progress order: smaller territory, then fewer guarded vertices,
    then fewer model pieces, then larger bags."""
    _same_context(a, b)
    if a.territory != b.territory:
        return a.territory < b.territory
    ra, rb = a.rank(), b.rank()
    return ra[1:] < rb[1:]


# ----------------------------------------------------------------------
# minor extraction


def _check_complete(st: GameState):
    d = st.decomposition
    viol = validate_state(st)
    if viol:
        raise ExtractionError("state", "; ".join(map(str, viol)))
    if not st.territory:
        raise ExtractionError("state", "territory is empty")
    missing = [w for w in sorted(d.W) if not st.bags[w]]
    if missing:
        raise ExtractionError("winitialized", f"uninitialized core vertices {missing}")
    missing = [i for i in range(len(d.paths)) if st.model_paths[i] is None]
    if missing:
        raise ExtractionError("Pinitialized", f"uninitialized paths {missing}")
    nR = st.coboundary()
    lonely = [w for w in sorted(d.W) if not st.bags[w] & nR]
    if lonely:
        raise ExtractionError("initializedvertex", f"bags {lonely} have no vertex adjacent to the territory")
    seen: dict[int, str] = {}
    for c, s in sorted(st.guards.items()):
        for x in sorted(s):
            if x in seen:
                raise ExtractionError("sdisjoint", f"cops {seen[x]} and {c} both guard {x}")
            seen[x] = c
        far = sorted(s - nR)
        if far:
            raise ExtractionError("sadjacent", f"cop {c} guards {far}, not adjacent to the territory")
    ell = evaluate_bound(st.forbidden, d).ell
    for i in range(len(d.paths)):
        total = sum(len(st.guards.get(c, ())) for c in st.group(i))
        if total < ell[i]:
            raise ExtractionError("ellPneighbours", f"cops of path {i} guard {total} < {ell[i]} vertices")


def extract_minor(st: GameState) -> MinorModel:
    """Branch sets of H in G read off a complete state.

    The territory becomes the branch set of h and each bag that of its core
    vertex.  Along each model path, the first territory-adjacent interior
    vertices start the branch sets of the path's interior vertices; the
    stretch before the first of them is absorbed into the starting bag.
    """
    _check_complete(st)
    G, H, d = st.host, st.forbidden, st.decomposition
    nR = st.coboundary()
    branch: dict[int, set[int]] = {d.h: set(st.territory)}
    for w in d.W:
        branch[w] = set(st.bags[w])
    for i, P in enumerate(d.paths):
        q = st.model_paths[i]
        a, _ = _path_ends_for(P)
        seq = list(q.vertices)
        if seq[0] not in st.bags[a]:
            seq.reverse()
        inner = list(P.vertices[1:-1])
        hits = [j for j in range(1, len(seq) - 1) if seq[j] in nR]
        if len(hits) < len(inner):
            raise ExtractionError("ellPneighbours",
                                  f"Q_{i} has {len(hits)} territory-adjacent interior vertices, needs {len(inner)}")
        if not inner:
            branch[a] |= set(seq[1:-1])
            continue
        cuts = hits[: len(inner)] + [len(seq) - 1]
        branch[a] |= set(seq[1:cuts[0]])
        for k, p in enumerate(inner):
            branch[p] = set(seq[cuts[k]:cuts[k + 1]])
    model = MinorModel({v: frozenset(branch[v]) for v in range(H.n)})
    if not verify_model(H, G, model):
        raise ExtractionError("Hminor", "assembled branch sets do not form a model")
    return model


# ----------------------------------------------------------------------
# fixtures


def cop_groups_for(H: Graph, d: Decomposition) -> dict[str, int | str]:
    rep = evaluate_bound(H, d)
    groups: dict[str, int | str] = {}
    for i in range(len(d.paths)):
        for k in range(-(-rep.ell[i] // 3)):
            groups[f"P{i}.{k}"] = i
    if rep.indicator:
        groups["extra"] = EXTRA
    return groups


def initial_state(G: Graph, H: Graph, d: Decomposition, robber: int | None = 0) -> GameState:
    """Empty model, whole graph as territory, nobody guarding anything."""
    return GameState(G, H, d, {}, {}, frozenset(range(G.n)), {}, cop_groups_for(H, d), robber)


@dataclass
class Blueprint:
    """A host built around a decomposition so that a complete state exists."""
    state: GameState
    subdivisions: dict[int, list[int]] = field(default_factory=dict)


def complete_fixture(H: Graph, d: Decomposition, blob: int = 2, padding: int = 1) -> Blueprint:
    """Host = one vertex per core vertex, a subdivided copy of every path, and a
    connected blob (the territory) joined to the bag vertices and to enough
    interior path vertices.  ``padding`` extra non-adjacent subdivision
    vertices on each path exercise the absorption step.

    The returned state is valid and satisfies every extraction precondition.
    """
    rep = evaluate_bound(H, d)
    counts = d.preimage_counts()
    edges = []
    nxt = 0

    def new():
        nonlocal nxt
        nxt += 1
        return nxt - 1

    bag_vertex = {w: new() for w in sorted(d.W)}
    territory = [new() for _ in range(max(blob, 1))]
    edges += [(territory[k], territory[k + 1]) for k in range(len(territory) - 1)]
    for w, x in bag_vertex.items():
        edges.append((x, territory[0]))

    model_paths = {}
    groups = {}
    guards = {}
    subdiv = {}
    for i, P in enumerate(d.paths):
        a, b = _path_ends_for(P)
        in_m = i in d.M
        need = 0 if in_m else max(P.length - 1, rep.ell[i] - counts[i])
        seq = [bag_vertex[a]]
        adjacent = []
        for k in range(padding):
            seq.append(new())
        for k in range(need):
            z = new()
            seq.append(z)
            adjacent.append(z)
            edges.append((z, territory[(k + 1) % len(territory)]))
            for _ in range(padding if k == 0 else 0):
                seq.append(new())
        seq.append(bag_vertex[b])
        edges += [(seq[k], seq[k + 1]) for k in range(len(seq) - 1)]
        if P.is_cycle:
            q = PathOrCycle(tuple(seq), "cycle", bag_vertex[a])
        else:
            q = PathOrCycle(tuple(seq))
        model_paths[i] = q
        subdiv[i] = adjacent
        # guard targets in order along Q_P, split into consecutive blocks of three
        targets = []
        if d.f.get(a) == i:
            targets.append(bag_vertex[a])
        targets += adjacent
        if not P.is_cycle and d.f.get(b) == i:
            targets.append(bag_vertex[b])
        ncops = -(-rep.ell[i] // 3)
        for k in range(ncops):
            c = f"P{i}.{k}"
            groups[c] = i
            guards[c] = frozenset(targets[3 * k: 3 * k + 3])
        leftover = targets[3 * ncops:]
        if leftover:
            raise AssertionError("more guard targets than cop capacity")
    if rep.indicator:
        groups["extra"] = EXTRA
        guards["extra"] = frozenset()
    G = Graph(nxt, edges)
    st = GameState(G, H, d, {w: {x} for w, x in bag_vertex.items()}, model_paths,
                   frozenset(territory), guards, groups, territory[0])
    return Blueprint(st, subdiv)
