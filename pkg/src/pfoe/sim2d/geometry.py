"""2D primitives: ray casting against wall segments and swept-disc contact.

Segments are ((x1, y1), (x2, y2)) tuples. The robot body is a disc; motion
is blocked at the first point of contact (distance to any segment equals the
disc radius), which lets the robot press against a wall, rotate in place,
and back away without ever penetrating.
"""

from __future__ import annotations

import math

Segment = tuple[tuple[float, float], tuple[float, float]]

_EPS = 1e-12


def ray_segment_distance(ox, oy, dx, dy, seg: Segment):
    """Distance along the unit ray (ox,oy)+(dx,dy)t to segment, or None."""
    (ax, ay), (bx, by) = seg
    ex, ey = bx - ax, by - ay
    denom = dx * ey - dy * ex
    if abs(denom) < _EPS:
        return None
    qx, qy = ax - ox, ay - oy
    t = (qx * ey - qy * ex) / denom
    u = (qx * dy - qy * dx) / denom
    if t >= 0.0 and 0.0 <= u <= 1.0:
        return t
    return None


def raycast(ox, oy, angle, segments, max_range):
    """Nearest wall distance along a ray, or None if nothing within max_range."""
    dx, dy = math.cos(angle), math.sin(angle)
    best = None
    for seg in segments:
        t = ray_segment_distance(ox, oy, dx, dy, seg)
        if t is not None and t <= max_range and (best is None or t < best):
            best = t
    return best


def point_segment_distance(px, py, seg: Segment) -> float:
    (ax, ay), (bx, by) = seg
    ex, ey = bx - ax, by - ay
    len2 = ex * ex + ey * ey
    if len2 < _EPS:
        return math.hypot(px - ax, py - ay)
    u = ((px - ax) * ex + (py - ay) * ey) / len2
    u = min(1.0, max(0.0, u))
    return math.hypot(px - (ax + u * ex), py - (ay + u * ey))


def _endpoint_contact(px, py, dx, dy, r, cx, cy):
    """Earliest s >= 0 where |p + s*d - c| = r while approaching, or None."""
    a = dx * dx + dy * dy
    fx, fy = px - cx, py - cy
    b = 2.0 * (fx * dx + fy * dy)
    c = fx * fx + fy * fy - r * r
    if c <= 0.0:
        # Already touching or inside the cap: block only if moving closer.
        return 0.0 if b < 0.0 else None
    disc = b * b - 4.0 * a * c
    if disc < 0.0 or a < _EPS:
        return None
    s = (-b - math.sqrt(disc)) / (2.0 * a)
    return s if s >= 0.0 else None


def _face_contact(px, py, dx, dy, r, seg: Segment):
    """Earliest s >= 0 where the disc touches the segment's face, or None."""
    (ax, ay), (bx, by) = seg
    ex, ey = bx - ax, by - ay
    length = math.hypot(ex, ey)
    if length < _EPS:
        return None
    nx, ny = -ey / length, ex / length
    g0 = nx * (px - ax) + ny * (py - ay)
    gd = nx * dx + ny * dy
    if abs(g0) < r:
        # Center already within the face slab: block only when approaching
        # the line and the foot point lies on the segment.
        if g0 * gd < 0.0:
            u = ((px - ax) * ex + (py - ay) * ey) / (length * length)
            if 0.0 <= u <= 1.0:
                return 0.0
        return None
    if abs(gd) < _EPS or g0 * gd > 0.0:
        return None  # parallel motion or receding
    s = (math.copysign(r, g0) - g0) / gd
    if s < 0.0:
        return None
    cx, cy = px + s * dx, py + s * dy
    u = ((cx - ax) * ex + (cy - ay) * ey) / (length * length)
    if 0.0 <= u <= 1.0:
        return s
    return None


def sweep_disc(px, py, dx, dy, radius, segments) -> float:
    """Fraction s in [0, 1] of the displacement (dx, dy) a disc at (px, py)
    may travel before touching any segment (1.0 when unobstructed)."""
    if dx == 0.0 and dy == 0.0:
        return 1.0
    s_min = 1.0
    for seg in segments:
        s = _face_contact(px, py, dx, dy, radius, seg)
        if s is not None and s < s_min:
            s_min = s
        for endpoint in seg:
            s = _endpoint_contact(px, py, dx, dy, radius, *endpoint)
            if s is not None and s < s_min:
                s_min = s
    return max(0.0, s_min)
