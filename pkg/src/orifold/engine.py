"""Mountain/valley folds on a layered abstract origami.

A fold along a directed ray moves the material on the right of the ray:
crossed candidate faces split into a stationary child 2n and a moving
child 2n+1, whole faces on the right move, and faces connected to moving
material through a crease that is not on the fold line are dragged along
(splitting them too when the line crosses them).  Creases lying on the
fold line act as hinges.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .geometry import (EPS, Point, Line, Ray, Segment, Polygon,
                       perpendicular_bisector, reflect, split_polygon)
from .core import (AbstractOrigami, AdjacencyEdge, Face, FoldError, FoldRecord,
                   PosedError, VALLEY, MOUNTAIN, RegisterPiece)

CREASE_TOL = 1e-7

CROSSED = "crossed"
RIGHT_SIDE = "right"
LEFT_SIDE = "left"
ON_LINE = "on"


@dataclass
class FoldSpec:
    kind: str                       # VALLEY or MOUNTAIN
    ray: Ray
    targets: set | None = None
    angle: float = math.pi
    insert_face: int | None = None

    def validate(self, ao: AbstractOrigami):
        if self.kind not in (VALLEY, MOUNTAIN):
            raise FoldError(f"unknown fold kind {self.kind!r}")
        if not (0.0 < self.angle <= math.pi + EPS):
            raise FoldError("fold angle must lie in (0, pi]")
        if self.targets is not None:
            missing = set(self.targets) - ao.face_ids()
            if missing:
                raise FoldError(f"unknown target faces {sorted(missing)}")
        if self.insert_face is not None and self.insert_face not in ao.faces:
            raise FoldError(f"insert face {self.insert_face} does not exist")

    @property
    def flat(self) -> bool:
        return abs(self.angle - math.pi) <= 1e-12


def _ray_value(ray: Ray, p: Point) -> float:
    d = ray.through - ray.origin
    v = p - ray.origin
    return d.x * v.y - d.y * v.x


def _classify(poly: Polygon, ray: Ray) -> str:
    vals = [_ray_value(ray, v) for v in poly.vertices]
    has_left = any(v > EPS for v in vals)
    has_right = any(v < -EPS for v in vals)
    if has_left and has_right:
        return CROSSED
    if has_right:
        return RIGHT_SIDE
    if has_left:
        return LEFT_SIDE
    return ON_LINE


def _crease_on_line(seg: Segment, line: Line) -> bool:
    return line.contains(seg.p, CREASE_TOL) and line.contains(seg.q, CREASE_TOL)


def _segment_pieces(seg: Segment, ray: Ray):
    """Cut a segment at the fold line.  Yields (sub-segment, t0, t1, side)
    with side 'left'/'right'/'on' and t parameters along the input."""
    v0, v1 = _ray_value(ray, seg.p), _ray_value(ray, seg.q)
    if abs(v0) <= EPS and abs(v1) <= EPS:
        return [(seg, 0.0, 1.0, ON_LINE)]
    if (v0 > EPS and v1 < -EPS) or (v0 < -EPS and v1 > EPS):
        t = v0 / (v0 - v1)
        mid = seg.point_at(t)
        first_side = LEFT_SIDE if v0 > EPS else RIGHT_SIDE
        second_side = RIGHT_SIDE if first_side == LEFT_SIDE else LEFT_SIDE
        return [(Segment(seg.p, mid), 0.0, t, first_side),
                (Segment(mid, seg.q), t, 1.0, second_side)]
    side = RIGHT_SIDE if min(v0, v1) < -EPS else LEFT_SIDE
    return [(seg, 0.0, 1.0, side)]


def _sub_segment(seg: Segment, t0: float, t1: float) -> Segment:
    return Segment(seg.point_at(t0), seg.point_at(t1))


def _match_names(old_names, old_vertices, new_polygon, transform=None):
    if not old_names:
        return None
    coords = {}
    for idx, name in old_names.items():
        v = old_vertices[idx]
        coords[name] = transform(v) if transform else v
    names = {}
    for i, v in enumerate(new_polygon.vertices):
        for name, c in coords.items():
            if v.close(c):
                names[i] = name
    return names or None


def _split_face(ao: AbstractOrigami, fid: int, ray: Ray, kind: str):
    """Split face fid at the fold line: stationary child 2n keeps the
    left/on part, moving child 2n+1 the right part.  Adjacency edges and
    cut-register pieces are redistributed; returns (stat_id, mov_id)."""
    face = ao.faces[fid]
    line = ray.line()
    probe = ray.origin + Point((ray.through - ray.origin).y,
                               -(ray.through - ray.origin).x)
    positive_is_right = line.signed_distance(probe) > 0
    pos_part, neg_part, seam = split_polygon(face.polygon, line)
    if positive_is_right:
        left_poly, right_poly = neg_part, pos_part
    else:
        left_poly, right_poly = pos_part, neg_part
    if left_poly is None or right_poly is None or seam is None:
        raise FoldError(f"face {fid} is not crossed by the fold line")
    stat_id, mov_id = 2 * fid, 2 * fid + 1
    old_vertices = face.polygon.vertices
    ao.faces[stat_id] = Face(stat_id, left_poly,
                             _match_names(face.vertex_names, old_vertices, left_poly))
    ao.faces[mov_id] = Face(mov_id, right_poly,
                            _match_names(face.vertex_names, old_vertices, right_poly))
    del ao.faces[fid]
    i = ao.order.index(fid)
    ao.order[i:i + 1] = [stat_id, mov_id]

    new_edges = []
    for e in ao.adjacency:
        if fid not in (e.a, e.b):
            new_edges.append(e)
            continue
        other = e.b if e.a == fid else e.a
        for piece, _t0, _t1, pside in _segment_pieces(e.crease, ray):
            owner = mov_id if pside == RIGHT_SIDE else stat_id
            new_edges.append(AdjacencyEdge(owner, other, piece, e.kind))
    ao.adjacency = new_edges

    for entry in ao.cut_register:
        for side in (entry.side_a, entry.side_b):
            out = []
            for piece in side:
                if piece.face != fid:
                    out.append(piece)
                    continue
                for sub, t0, t1, pside in _segment_pieces(piece.current, ray):
                    owner = mov_id if pside == RIGHT_SIDE else stat_id
                    out.append(RegisterPiece(owner, sub,
                                             _sub_segment(piece.original, t0, t1)))
            side[:] = out

    ao.adjacency.append(AdjacencyEdge(stat_id, mov_id, seam, kind))
    return stat_id, mov_id


def _closure(ao: AbstractOrigami, ray: Ray, moving: set, splits: dict,
             kind: str, allow_split: bool):
    """Pull connected faces into the moving set; split dragged faces that
    the fold line crosses; reject folds that would tear a crease."""
    line = ray.line()
    queue = list(moving)
    while queue:
        f = queue.pop()
        for e in list(ao.edges_of(f)):
            g = e.b if e.a == f else e.a
            if g in moving:
                continue
            if _crease_on_line(e.crease, line):
                continue  # hinge
            cls = _classify(ao.faces[g].polygon, ray)
            if cls == RIGHT_SIDE:
                moving.add(g)
                queue.append(g)
            elif cls == CROSSED:
                if not allow_split:
                    raise FoldError(
                        f"fold would split dragged face {g} (not allowed here)")
                stat, mov = _split_face(ao, g, ray, kind)
                splits[g] = (stat, mov)
                moving.add(mov)
                queue.append(mov)
                if f in (stat, mov):
                    pass
            else:
                raise FoldError(
                    f"fold tears the crease between faces {f} and {g}")


def moving_set(ao: AbstractOrigami, spec: FoldSpec) -> set:
    """Face ids that would move (entirely or in part) under the fold."""
    if ao.posed:
        raise PosedError("origami is posed; no further folds")
    spec.validate(ao)
    work = ao.clone()
    moving, splits = _prepare(work, spec)
    result = set()
    inverse_split = {}
    for parent, (stat, mov) in splits.items():
        inverse_split[stat] = parent
        inverse_split[mov] = parent
    for fid in moving:
        result.add(inverse_split.get(fid, fid))
    if not result:
        raise FoldError("empty moving set: fold line misses all candidates")
    return result


def _prepare(ao: AbstractOrigami, spec: FoldSpec):
    """Split crossed candidates and compute the transitive moving set on a
    working copy; returns (moving ids, splits)."""
    candidates = sorted(spec.targets) if spec.targets else sorted(ao.faces)
    moving, splits = set(), {}
    for fid in candidates:
        cls = _classify(ao.faces[fid].polygon, spec.ray)
        if cls == CROSSED:
            if not spec.flat:
                raise FoldError("partial-angle fold may not split faces")
            stat, mov = _split_face(ao, fid, spec.ray, spec.kind)
            splits[fid] = (stat, mov)
            moving.add(mov)
        elif cls == RIGHT_SIDE:
            moving.add(fid)
    _closure(ao, spec.ray, moving, splits, spec.kind, allow_split=spec.flat)
    return moving, splits


def fold(ao: AbstractOrigami, spec: FoldSpec) -> AbstractOrigami:
    if ao.posed:
        raise PosedError("origami is posed; no further folds")
    spec.validate(ao)
    new = ao.clone()
    prior_order = list(ao.order)
    moving, splits = _prepare(new, spec)
    if not moving:
        raise FoldError("empty moving set: fold line misses all candidates")
    line = spec.ray.line()

    if spec.flat:
        for fid in moving:
            face = new.faces[fid]
            old_vertices = face.polygon.vertices
            face.polygon = face.polygon.reflected(line)
            face.vertex_names = _match_names(face.vertex_names, old_vertices,
                                             face.polygon,
                                             transform=lambda v: reflect(v, line))
        for e in new.adjacency:
            if e.a in moving and e.b in moving:
                e.crease = Segment(reflect(e.crease.p, line),
                                   reflect(e.crease.q, line))
        for entry in new.cut_register:
            for side in (entry.side_a, entry.side_b):
                for piece in side:
                    if piece.face in moving:
                        piece.current = Segment(reflect(piece.current.p, line),
                                                reflect(piece.current.q, line))
        _relayer(new, moving, spec)
        _check_creases(new)
    else:
        new.posed = True
        for e in new.adjacency:
            one_moved = (e.a in moving) != (e.b in moving)
            if one_moved and _crease_on_line(e.crease, line):
                new.crease_angles[e.pair()] = spec.angle

    new.last_fold = FoldRecord(line=line, kind=spec.kind, angle=spec.angle,
                               moved=set(moving), splits=dict(splits),
                               prior_order=prior_order)
    return new


def _relayer(ao: AbstractOrigami, moving: set, spec: FoldSpec):
    """Re-stack the moved block: it flips upside down, then lands above
    (valley) or below (mountain) the stationary faces it overlaps, or
    directly against an explicit insert face."""
    from .geometry import convex_intersection_area

    block = [f for f in ao.order if f in moving]
    block.reverse()
    rest = [f for f in ao.order if f not in moving]
    if spec.insert_face is not None:
        if spec.insert_face not in rest:
            raise FoldError(f"insert face {spec.insert_face} is moving")
        i = rest.index(spec.insert_face)
        pos = i + 1 if spec.kind == VALLEY else i
    else:
        anchors = []
        for i, fid in enumerate(rest):
            for m in moving:
                if convex_intersection_area(ao.faces[fid].polygon,
                                            ao.faces[m].polygon) > EPS:
                    anchors.append(i)
                    break
        if anchors:
            pos = max(anchors) + 1 if spec.kind == VALLEY else min(anchors)
        else:
            pos = len(rest) if spec.kind == VALLEY else 0
    ao.order = rest[:pos] + block + rest[pos:]


def _check_creases(ao: AbstractOrigami):
    for e in ao.adjacency:
        pa = ao.faces[e.a].polygon
        pb = ao.faces[e.b].polygon
        if not (pa.has_boundary_segment(e.crease) and
                pb.has_boundary_segment(e.crease)):
            raise FoldError(
                f"internal: crease between {e.a} and {e.b} left a boundary")


def unfold(ao: AbstractOrigami) -> AbstractOrigami:
    """Invert the most recent flat fold: moved faces reflect back and the
    previous layer order returns; the subdivision and its creases remain."""
    if ao.posed:
        raise PosedError("origami is posed; cannot unfold")
    rec = ao.last_fold
    if rec is None or abs(rec.angle - math.pi) > 1e-12:
        raise FoldError("last step was not an invertible flat fold")
    new = ao.clone()
    line = rec.line
    for fid in rec.moved:
        face = new.faces[fid]
        old_vertices = face.polygon.vertices
        face.polygon = face.polygon.reflected(line)
        face.vertex_names = _match_names(face.vertex_names, old_vertices,
                                         face.polygon,
                                         transform=lambda v: reflect(v, line))
    for e in new.adjacency:
        if e.a in rec.moved and e.b in rec.moved:
            e.crease = Segment(reflect(e.crease.p, line),
                               reflect(e.crease.q, line))
    for entry in new.cut_register:
        for side in (entry.side_a, entry.side_b):
            for piece in side:
                if piece.face in rec.moved:
                    piece.current = Segment(reflect(piece.current.p, line),
                                            reflect(piece.current.q, line))
    order = []
    for fid in rec.prior_order:
        if fid in rec.splits:
            order.extend(rec.splits[fid])
        else:
            order.append(fid)
    new.order = order
    _check_creases(new)
    new.last_fold = None
    return new


def fold_bring(ao: AbstractOrigami, p: Point, q: Point, kind: str = VALLEY,
               targets: set | None = None) -> AbstractOrigami:
    """Fold along the perpendicular bisector of p and q, oriented so that
    p's side moves; p's image lands on q."""
    if p.close(q):
        raise FoldError("fold_bring: the two points coincide")
    line = perpendicular_bisector(p, q)
    m = Point((p.x + q.x) / 2.0, (p.y + q.y) / 2.0)
    d = q - p
    ray = Ray(m, m + Point(d.y, -d.x))
    if _ray_value(ray, p) > -EPS:
        ray = ray.reversed()
    new = fold(ao, FoldSpec(kind=kind, ray=ray, targets=targets))
    if not reflect(p, line).close(q, 1e-7):
        raise FoldError("fold_bring: image does not reach the target point")
    return new
