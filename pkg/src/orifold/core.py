"""The abstract origami structure: a face set with an adjacency relation
(creases) and a superposition relation (layer order), a cut register for
temporarily severed creases, and the construction trace.

Face numbering: the initial sheet is face 1; folding face n replaces it by
children 2n (stationary part) and 2n+1 (moving part).
"""
from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field

from .geometry import (EPS, Point, Polygon, Segment,
                       convex_intersection_area, GeometryError)

VALLEY = "valley"
MOUNTAIN = "mountain"

DEFAULT_CORNERS = (Point(0.0, 0.0), Point(1.0, 0.0), Point(1.0, 1.0), Point(0.0, 1.0))


class OrigamiError(Exception):
    """Base error for invalid fold-engine operations."""


class CutError(OrigamiError):
    pass


class GlueError(OrigamiError):
    pass


class FoldError(OrigamiError):
    pass


class PosedError(OrigamiError):
    """Operation attempted on a posed (partially folded) origami."""


@dataclass
class Face:
    id: int
    polygon: Polygon
    vertex_names: dict | None = None


@dataclass
class AdjacencyEdge:
    a: int
    b: int
    crease: Segment
    kind: str  # VALLEY or MOUNTAIN

    def pair(self):
        return (self.a, self.b) if self.a < self.b else (self.b, self.a)


@dataclass
class RegisterPiece:
    """One side of a severed crease: the owning face, the crease segment in
    current coordinates, and in the coordinates it had when cut (used to
    match up the two sides again after splits)."""
    face: int
    current: Segment
    original: Segment


@dataclass
class RegisterEntry:
    pair: tuple
    kind: str
    side_a: list  # RegisterPieces descending from pair[0]
    side_b: list


@dataclass
class FoldRecord:
    """Everything needed to geometrically invert the last fold."""
    line: object
    kind: str
    angle: float
    moved: set
    splits: dict          # parent id -> (stationary child, moving child)
    prior_order: list     # face ids bottom-to-top before the fold


@dataclass
class AbstractOrigami:
    faces: dict = field(default_factory=dict)           # id -> Face
    adjacency: list = field(default_factory=list)       # AdjacencyEdge
    cut_register: list = field(default_factory=list)    # RegisterEntry
    order: list = field(default_factory=list)           # ids bottom-to-top
    posed: bool = False
    crease_angles: dict = field(default_factory=dict)   # (a,b) -> radians
    last_fold: FoldRecord | None = None

    def clone(self) -> "AbstractOrigami":
        return copy.deepcopy(self)

    def face_ids(self):
        return set(self.faces.keys())

    def edges_of(self, fid: int):
        return [e for e in self.adjacency if fid in (e.a, e.b)]

    def find_edges(self, a: int, b: int):
        key = (a, b) if a < b else (b, a)
        return [e for e in self.adjacency if e.pair() == key]

    def depth(self, fid: int) -> int:
        return self.order.index(fid)

    def superposition_pairs(self):
        """Immediate-cover pairs (upper, lower): overlapping interiors with
        no third face stacked between them over the shared region."""
        pos = {fid: i for i, fid in enumerate(self.order)}
        ids = sorted(self.faces, key=lambda f: pos[f])
        pairs = []
        for i, lo in enumerate(ids):
            for hi in ids[i + 1:]:
                inter = convex_intersection_area(self.faces[lo].polygon,
                                                 self.faces[hi].polygon)
                if inter <= EPS:
                    continue
                covered = False
                for mid in ids[i + 1:]:
                    if mid == hi:
                        break
                    if (convex_intersection_area(self.faces[lo].polygon,
                                                 self.faces[mid].polygon) > EPS and
                            convex_intersection_area(self.faces[hi].polygon,
                                                     self.faces[mid].polygon) > EPS):
                        covered = True
                        break
                if not covered:
                    pairs.append((hi, lo))
        return sorted(pairs)

    def total_area(self) -> float:
        return sum(f.polygon.area() for f in self.faces.values())


@dataclass(frozen=True)
class Graph:
    nodes: tuple
    edges: tuple
    directed: bool


def init_square(corner_names=("A", "B", "C", "D"), coords=None) -> AbstractOrigami:
    """The initial abstract origami: a single face, both relations empty."""
    if coords is None:
        coords = DEFAULT_CORNERS
    if len(corner_names) != 4 or len(coords) != 4:
        raise OrigamiError("init_square expects 4 corner names and 4 points")
    try:
        poly = Polygon(list(coords))
    except GeometryError as exc:
        raise OrigamiError(f"degenerate paper: {exc}") from exc
    if len(poly.vertices) != 4:
        raise OrigamiError("degenerate paper: corners are not a quadrilateral")
    names = {}
    for i, v in enumerate(poly.vertices):
        for name, c in zip(corner_names, coords):
            if v.close(c):
                names[i] = name
    ao = AbstractOrigami()
    ao.faces[1] = Face(1, poly, names)
    ao.order = [1]
    return ao


def adjacency_graph(ao: AbstractOrigami) -> Graph:
    nodes = tuple(sorted(ao.faces.keys()))
    edges = tuple(sorted({e.pair() for e in ao.adjacency}))
    return Graph(nodes, edges, directed=False)


def superposition_graph(ao: AbstractOrigami) -> Graph:
    nodes = tuple(sorted(ao.faces.keys()))
    edges = tuple(sorted(ao.superposition_pairs()))
    return Graph(nodes, edges, directed=True)


def graph_equal(g1: Graph, g2: Graph) -> bool:
    """Labeled equality: same node set and same edge set."""
    return (g1.directed == g2.directed and set(g1.nodes) == set(g2.nodes)
            and set(g1.edges) == set(g2.edges))


def check_superposition_acyclic(ao: AbstractOrigami) -> bool:
    pairs = ao.superposition_pairs()
    return _pairs_acyclic(pairs)


def _pairs_acyclic(pairs) -> bool:
    succ = {}
    for up, lo in pairs:
        succ.setdefault(up, []).append(lo)
    state = {}

    def dfs(n):
        state[n] = 1
        for m in succ.get(n, ()):
            s = state.get(m, 0)
            if s == 1:
                return False
            if s == 0 and not dfs(m):
                return False
        state[n] = 2
        return True

    return all(state.get(n, 0) == 2 or dfs(n) for n in list(succ))


def cut_edge(ao: AbstractOrigami, pair) -> AbstractOrigami:
    """Remove the crease between two faces from the adjacency relation and
    save it in the cut register for a later glue."""
    below, above = pair
    if ao.posed:
        raise PosedError("cannot cut a posed origami")
    for entry in ao.cut_register:
        if set(entry.pair) == {below, above}:
            raise CutError(f"edge {below}-{above} is already cut")
    matches = ao.find_edges(below, above)
    if not matches:
        raise CutError(f"no adjacency edge between faces {below} and {above}")
    if len(matches) > 1:
        raise CutError(f"ambiguous: multiple creases between {below} and {above}")
    edge = matches[0]
    new = ao.clone()
    new.adjacency = [e for e in new.adjacency if e is not _find_same(new, edge)]
    new.adjacency = [e for e in new.adjacency
                     if not (e.pair() == edge.pair() and e.crease.close(edge.crease))]
    seg = edge.crease
    new.cut_register.append(RegisterEntry(
        pair=(below, above), kind=edge.kind,
        side_a=[RegisterPiece(below, seg, seg)],
        side_b=[RegisterPiece(above, seg, seg)]))
    new.last_fold = None
    return new


def _find_same(ao, edge):
    for e in ao.adjacency:
        if e.pair() == edge.pair() and e.crease.close(edge.crease):
            return e
    return None


def glue_edges(ao: AbstractOrigami) -> AbstractOrigami:
    """Re-insert every registered crease.  The two sides of each severed
    crease must coincide in current coordinates within EPS; the register is
    emptied on success."""
    if ao.posed:
        raise PosedError("cannot glue a posed origami")
    if not ao.cut_register:
        return ao.clone()
    new = ao.clone()
    for entry in new.cut_register:
        for pa in entry.side_a:
            mate = None
            for pb in entry.side_b:
                if _same_original(pa.original, pb.original):
                    mate = pb
                    break
            if mate is None:
                raise GlueError(
                    f"glue: no matching piece for face {pa.face} of cut "
                    f"edge {entry.pair}")
            if not pa.current.close(mate.current, 1e-7):
                raise GlueError(
                    f"glue: separated boundaries of faces {pa.face} and "
                    f"{mate.face} do not coincide")
            new.adjacency.append(AdjacencyEdge(pa.face, mate.face,
                                               pa.current, entry.kind))
    new.cut_register = []
    new.last_fold = None
    return new


def _same_original(s1: Segment, s2: Segment) -> bool:
    return s1.close(s2, 1e-7)


def _fmt(v: float) -> str:
    if abs(v) <= EPS:
        v = 0.0
    s = f"{v:.12g}"
    return "0" if s == "-0" else s


def to_json(ao: AbstractOrigami) -> str:
    """Stable JSON dump of the structure (12 significant digits)."""
    faces = []
    for fid in sorted(ao.faces):
        poly = ao.faces[fid].polygon
        faces.append({"id": fid,
                      "polygon": [[_fmt(v.x), _fmt(v.y)] for v in poly.vertices]})
    adj = sorted([[e.a, e.b, e.kind] if e.a < e.b else [e.b, e.a, e.kind]
                  for e in ao.adjacency])
    sup = [list(p) for p in ao.superposition_pairs()]
    reg = [[entry.pair[0], entry.pair[1], entry.kind] for entry in ao.cut_register]
    doc = {"faces": faces, "adjacency": adj, "superposition": sup,
           "cut_register": reg, "posed": ao.posed}
    text = json.dumps(doc, separators=(",", ":"))
    return text


@dataclass
class TraceStep:
    label: str
    snapshot: AbstractOrigami


class ConstructionTrace:
    """The sequence of abstract origami snapshots O_1, O_2, ... produced by
    a construction; steps are immutable deep copies."""

    def __init__(self, initial: AbstractOrigami, label: str = "paper"):
        self.steps = [TraceStep(label, initial.clone())]

    def append(self, label: str, ao: AbstractOrigami):
        self.steps.append(TraceStep(label, ao.clone()))

    def snapshot(self, k: int) -> AbstractOrigami:
        """1-based: snapshot(1) is the initial AO."""
        return self.steps[k - 1].snapshot

    @property
    def current(self) -> AbstractOrigami:
        return self.steps[-1].snapshot

    def __len__(self):
        return len(self.steps)
