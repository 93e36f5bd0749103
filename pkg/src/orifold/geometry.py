"""Planar geometric primitives for the fold engine.

Points, normalized lines, directed rays, segments and convex polygons,
plus reflection, side tests and polygon splitting.  Everything compares
within the single global tolerance EPS (paper units).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

EPS = 1e-9

LEFT = "Left"
RIGHT = "Right"
ON = "On"


class GeometryError(ValueError):
    """Degenerate geometric input (coincident points, zero-length ray...)."""


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise GeometryError("point coordinates must be finite")

    def close(self, other: "Point", tol: float = EPS) -> bool:
        return abs(self.x - other.x) <= tol and abs(self.y - other.y) <= tol

    def __add__(self, other):
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return Point(self.x - other.x, self.y - other.y)

    def scaled(self, k: float) -> "Point":
        return Point(self.x * k, self.y * k)

    def dist(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


def midpoint(p: Point, q: Point) -> Point:
    return Point((p.x + q.x) / 2.0, (p.y + q.y) / 2.0)


@dataclass(frozen=True)
class Line:
    """a*x + b*y = c, normalized so a^2+b^2 = 1 and the first nonzero of
    (a, b) is positive.  Equal lines compare equal within EPS."""

    a: float
    b: float
    c: float

    @staticmethod
    def make(a: float, b: float, c: float) -> "Line":
        n = math.hypot(a, b)
        if n <= EPS:
            raise GeometryError("line normal must be nonzero")
        a, b, c = a / n, b / n, c / n
        if a < -EPS or (abs(a) <= EPS and b < 0.0):
            a, b, c = -a, -b, -c
        if abs(a) <= EPS:
            a = 0.0
        if abs(b) <= EPS:
            b = 0.0
        if abs(c) <= EPS:
            c = 0.0
        return Line(a, b, c)

    def signed_distance(self, p: Point) -> float:
        return self.a * p.x + self.b * p.y - self.c

    def contains(self, p: Point, tol: float = EPS) -> bool:
        return abs(self.signed_distance(p)) <= tol

    def direction(self) -> Point:
        return Point(-self.b, self.a)

    def foot(self, p: Point) -> Point:
        d = self.signed_distance(p)
        return Point(p.x - d * self.a, p.y - d * self.b)

    def close(self, other: "Line", tol: float = 1e-7) -> bool:
        return (abs(self.a - other.a) <= tol and abs(self.b - other.b) <= tol
                and abs(self.c - other.c) <= tol)

    def key(self):
        return (round(self.a, 9), round(self.b, 9), round(self.c, 9))


def line_through(p: Point, q: Point) -> Line:
    if p.close(q):
        raise GeometryError("cannot build a line through coincident points")
    # (q-p) is the direction; normal is its perpendicular
    return Line.make(q.y - p.y, p.x - q.x, (q.y - p.y) * p.x + (p.x - q.x) * p.y)


def perpendicular_bisector(p: Point, q: Point) -> Line:
    if p.close(q):
        raise GeometryError("perpendicular bisector of coincident points")
    m = midpoint(p, q)
    d = q - p
    return Line.make(d.x, d.y, d.x * m.x + d.y * m.y)


def intersect(l1: Line, l2: Line) -> Point | None:
    det = l1.a * l2.b - l2.a * l1.b
    if abs(det) <= EPS:
        return None
    x = (l1.c * l2.b - l2.c * l1.b) / det
    y = (l1.a * l2.c - l2.a * l1.c) / det
    return Point(x, y)


def reflect(p: Point, l: Line) -> Point:
    d = l.signed_distance(p)
    return Point(p.x - 2.0 * d * l.a, p.y - 2.0 * d * l.b)


@dataclass(frozen=True)
class Ray:
    """Directed ray from origin through a second point; right of the ray is
    the side faces move to when folding along it."""

    origin: Point
    through: Point

    def __post_init__(self):
        if self.origin.dist(self.through) <= EPS:
            raise GeometryError("ray endpoints coincide")

    def line(self) -> Line:
        return line_through(self.origin, self.through)

    def reversed(self) -> "Ray":
        return Ray(self.through, self.origin)


def side(r: Ray, p: Point) -> str:
    d = r.through - r.origin
    v = p - r.origin
    cross = d.x * v.y - d.y * v.x
    if cross < -EPS:
        return RIGHT
    if cross > EPS:
        return LEFT
    return ON


@dataclass(frozen=True)
class Segment:
    p: Point
    q: Point

    def length(self) -> float:
        return self.p.dist(self.q)

    def midpoint(self) -> Point:
        return midpoint(self.p, self.q)

    def close(self, other: "Segment", tol: float = EPS) -> bool:
        """Same segment as an unordered point pair."""
        return ((self.p.close(other.p, tol) and self.q.close(other.q, tol)) or
                (self.p.close(other.q, tol) and self.q.close(other.p, tol)))

    def point_at(self, t: float) -> Point:
        return Point(self.p.x + t * (self.q.x - self.p.x),
                     self.p.y + t * (self.q.y - self.p.y))

    def contains_point(self, x: Point, tol: float = 1e-7) -> bool:
        if x.dist(self.p) <= tol or x.dist(self.q) <= tol:
            return True
        d = self.q - self.p
        v = x - self.p
        cross = d.x * v.y - d.y * v.x
        if abs(cross) > tol * max(1.0, self.length()):
            return False
        dot = d.x * v.x + d.y * v.y
        return -tol <= dot <= d.x * d.x + d.y * d.y + tol

    def covers(self, other: "Segment", tol: float = 1e-7) -> bool:
        return self.contains_point(other.p, tol) and self.contains_point(other.q, tol)


def _signed_area(vertices) -> float:
    s = 0.0
    n = len(vertices)
    for i in range(n):
        p, q = vertices[i], vertices[(i + 1) % n]
        s += p.x * q.y - q.x * p.y
    return s / 2.0


def _cleanup(vertices):
    """Merge consecutive near-duplicates and drop collinear vertices."""
    vs = list(vertices)
    changed = True
    while changed and len(vs) >= 3:
        changed = False
        out = []
        n = len(vs)
        for i in range(n):
            a, b, c = vs[i - 1], vs[i], vs[(i + 1) % n]
            if b.close(a):
                changed = True
                continue
            cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
            if abs(cross) <= EPS:
                changed = True
                continue
            out.append(b)
        vs = out
    return vs


class Polygon:
    """Simple CCW polygon.  Faces stay convex throughout the engine (square
    paper cut by straight fold lines), but validity checks are general."""

    __slots__ = ("vertices",)

    def __init__(self, vertices, validate: bool = True):
        vs = _cleanup(vertices)
        if len(vs) < 3:
            raise GeometryError("polygon needs at least 3 distinct vertices")
        if _signed_area(vs) < 0:
            vs.reverse()
        self.vertices = tuple(vs)
        if validate:
            self._validate()

    def _validate(self):
        if self.area() <= EPS:
            raise GeometryError("polygon area must be strictly positive")
        if not self._is_simple():
            raise GeometryError("polygon must be simple (no self-intersection)")

    def _is_simple(self) -> bool:
        n = len(self.vertices)
        edges = [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if j == i or (j + 1) % n == i or (i + 1) % n == j:
                    continue
                if _segments_cross(edges[i], edges[j]):
                    return False
        return True

    def area(self) -> float:
        return _signed_area(self.vertices)

    def centroid(self) -> Point:
        sx = sy = 0.0
        a = 0.0
        n = len(self.vertices)
        for i in range(n):
            p, q = self.vertices[i], self.vertices[(i + 1) % n]
            w = p.x * q.y - q.x * p.y
            a += w
            sx += (p.x + q.x) * w
            sy += (p.y + q.y) * w
        a /= 2.0
        return Point(sx / (6.0 * a), sy / (6.0 * a))

    def reflected(self, l: Line) -> "Polygon":
        return Polygon([reflect(v, l) for v in self.vertices], validate=False)

    def same_as(self, other: "Polygon", tol: float = EPS) -> bool:
        a, b = self.vertices, other.vertices
        if len(a) != len(b):
            return False
        n = len(a)
        for shift in range(n):
            if all(a[i].close(b[(i + shift) % n], tol) for i in range(n)):
                return True
        return False

    def has_boundary_segment(self, seg: Segment, tol: float = 1e-7) -> bool:
        n = len(self.vertices)
        for i in range(n):
            edge = Segment(self.vertices[i], self.vertices[(i + 1) % n])
            if edge.covers(seg, tol):
                return True
        return False

    def contains_point(self, p: Point, tol: float = EPS) -> bool:
        n = len(self.vertices)
        for i in range(n):
            a, b = self.vertices[i], self.vertices[(i + 1) % n]
            cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)
            if cross < -tol:
                return False
        return True

    def __repr__(self):
        pts = ", ".join(f"({v.x:.4g},{v.y:.4g})" for v in self.vertices)
        return f"Polygon[{pts}]"


def _segments_cross(e1, e2) -> bool:
    (p1, p2), (p3, p4) = e1, e2

    def orient(a, b, c):
        v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
        if v > EPS:
            return 1
        if v < -EPS:
            return -1
        return 0

    o1, o2 = orient(p1, p2, p3), orient(p1, p2, p4)
    o3, o4 = orient(p3, p4, p1), orient(p3, p4, p2)
    return o1 != o2 and o3 != o4 and o1 != 0 and o2 != 0 and o3 != 0 and o4 != 0


def area(poly: Polygon) -> float:
    return poly.area()


def split_polygon(poly: Polygon, l: Line):
    """Split a polygon by a line.

    Returns (left_part, right_part, seam) where "left" is the positive side
    of the normalized line.  Vertices on the line (within EPS) go to both
    parts.  A non-crossing line yields the whole polygon on its side and
    None for the other part and the seam.
    """
    vs = poly.vertices
    d = [l.signed_distance(v) for v in vs]
    if all(x >= -EPS for x in d):
        return poly, None, None
    if all(x <= EPS for x in d):
        return None, poly, None
    out_l, out_r, shared = [], [], []
    n = len(vs)
    for i in range(n):
        p, q = vs[i], vs[(i + 1) % n]
        dp, dq = d[i], d[(i + 1) % n]
        if dp >= -EPS:
            out_l.append(p)
        if dp <= EPS:
            out_r.append(p)
        if abs(dp) <= EPS:
            shared.append(p)
        if (dp > EPS and dq < -EPS) or (dp < -EPS and dq > EPS):
            t = dp / (dp - dq)
            x = Point(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y))
            out_l.append(x)
            out_r.append(x)
            shared.append(x)

    def build(pts):
        try:
            pg = Polygon(pts, validate=False)
        except GeometryError:
            return None
        return pg if pg.area() > EPS else None

    left = build(out_l)
    right = build(out_r)
    seam = None
    if left is not None and right is not None and len(shared) >= 2:
        direction = l.direction()
        shared.sort(key=lambda p: direction.x * p.x + direction.y * p.y)
        seam = Segment(shared[0], shared[-1])
    if left is None:
        return None, poly, None
    if right is None:
        return poly, None, None
    return left, right, seam


def convex_intersection_area(p1: Polygon, p2: Polygon) -> float:
    """Area of the intersection of two convex polygons (Sutherland-Hodgman)."""
    subject = list(p1.vertices)
    n2 = len(p2.vertices)
    for i in range(n2):
        if not subject:
            return 0.0
        a, b = p2.vertices[i], p2.vertices[(i + 1) % n2]
        # keep points left of edge a->b (CCW interior)
        out = []
        m = len(subject)
        for j in range(m):
            p, q = subject[j], subject[(j + 1) % m]
            dp = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)
            dq = (b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x)
            if dp >= -EPS:
                out.append(p)
            if (dp > EPS and dq < -EPS) or (dp < -EPS and dq > EPS):
                t = dp / (dp - dq)
                out.append(Point(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)))
        subject = out
    if len(subject) < 3:
        return 0.0
    return abs(_signed_area(subject))
