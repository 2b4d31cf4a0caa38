"""Wall-segment worlds, named regions, and the built-in task environments."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType

from .dynamics import Pose
from .geometry import Segment

ENVIRONMENT_NAMES = ("counting_wall", "choice_maze", "rect_corridor")


class UnknownEnvironmentError(ValueError):
    pass


class WorldParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Region:
    """Axis-aligned rectangle used for task evaluation (pockets, intervals)."""

    name: str
    x_min: float
    y_min: float
    x_max: float
    y_max: float

    def contains(self, x: float, y: float) -> bool:
        return self.x_min <= x <= self.x_max and self.y_min <= y <= self.y_max


@dataclass(frozen=True)
class WorldMap:
    name: str
    segments: tuple[Segment, ...]
    regions: dict = field(default_factory=dict)
    start_pose: Pose = Pose(0.0, 0.0, 0.0)

    def __post_init__(self):
        for (a, b) in self.segments:
            if math.hypot(b[0] - a[0], b[1] - a[1]) <= 0.0:
                raise ValueError(f"degenerate wall segment at {a}")
        object.__setattr__(self, "regions", MappingProxyType(dict(self.regions)))

    def region(self, name: str) -> Region:
        try:
            return self.regions[name]
        except KeyError:
            raise KeyError(f"world {self.name!r} has no region {name!r}") from None


def _rect_segments(x0, y0, x1, y1) -> list[Segment]:
    return [
        ((x0, y0), (x1, y0)),
        ((x1, y0), (x1, y1)),
        ((x1, y1), (x0, y1)),
        ((x0, y1), (x0, y0)),
    ]


def _counting_wall() -> WorldMap:
    # A single wall 0.5 m in front of the start pose; the taught motion bumps
    # it, swings the nose, and backs off.
    return WorldMap(
        name="counting_wall",
        segments=(((0.5, -1.5), (0.5, 1.5)),),
        regions={
            "start": Region("start", -0.15, -0.15, 0.15, 0.15),
            "wall_zone": Region("wall_zone", 0.36, -1.5, 0.5, 1.5),
        },
        start_pose=Pose(0.0, 0.0, 0.0),
    )


def _choice_maze() -> WorldMap:
    # Plus-shaped micromouse-style maze: start arm to the south, pockets
    # A (west), B (north), C (east). Corridor width 0.2 m, robot disc 0.12 m.
    h, e = 0.10, 0.55
    points = [
        (-h, -e), (h, -e), (h, -h), (e, -h), (e, h), (h, h),
        (h, e), (-h, e), (-h, h), (-e, h), (-e, -h), (-h, -h),
    ]
    segments = tuple(
        (points[i], points[(i + 1) % len(points)]) for i in range(len(points))
    )
    pocket_depth = 0.15
    return WorldMap(
        name="choice_maze",
        segments=segments,
        regions={
            "A": Region("A", -e, -h, -e + pocket_depth, h),
            "B": Region("B", -h, e - pocket_depth, h, e),
            "C": Region("C", e - pocket_depth, -h, e, h),
            "start": Region("start", -h, -e, h, -e + 0.2),
        },
        start_pose=Pose(0.0, -0.45, math.pi / 2),
    )


def _rect_corridor() -> WorldMap:
    # Ring corridor between two rectangles; intervals A-D are the four sides,
    # walked counter-clockwise starting from the south side.
    outer = _rect_segments(-0.8, -0.6, 0.8, 0.6)
    inner = _rect_segments(-0.5, -0.3, 0.5, 0.3)
    return WorldMap(
        name="rect_corridor",
        segments=tuple(outer + inner),
        regions={
            "A": Region("A", -0.5, -0.6, 0.5, -0.3),
            "B": Region("B", 0.5, -0.6, 0.8, 0.6),
            "C": Region("C", -0.5, 0.3, 0.5, 0.6),
            "D": Region("D", -0.8, -0.6, -0.5, 0.6),
            "start": Region("start", -0.8, -0.6, -0.5, -0.3),
        },
        start_pose=Pose(-0.65, -0.45, 0.0),
    )


_BUILDERS = {
    "counting_wall": _counting_wall,
    "choice_maze": _choice_maze,
    "rect_corridor": _rect_corridor,
}


def load_environment(name: str) -> WorldMap:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownEnvironmentError(
            f"unknown environment {name!r}; available: {', '.join(ENVIRONMENT_NAMES)}"
        ) from None
    return builder()


def parse_world_text(text: str, name: str = "custom") -> WorldMap:
    """Parse the segment-list map format: ``wall x1 y1 x2 y2``,
    ``region name x1 y1 x2 y2``, ``start x y theta``; # starts a comment."""
    segments: list[Segment] = []
    regions: dict[str, Region] = {}
    start = Pose(0.0, 0.0, 0.0)
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        kind = fields[0]
        try:
            if kind == "wall" and len(fields) == 5:
                x1, y1, x2, y2 = map(float, fields[1:])
                segments.append(((x1, y1), (x2, y2)))
            elif kind == "region" and len(fields) == 6:
                rname = fields[1]
                x1, y1, x2, y2 = map(float, fields[2:])
                regions[rname] = Region(
                    rname, min(x1, x2), min(y1, y2), max(x1, x2), max(y1, y2)
                )
            elif kind == "start" and len(fields) == 4:
                start = Pose(*map(float, fields[1:]))
            else:
                raise WorldParseError(line_no, f"unrecognized line {raw!r}")
        except (ValueError, TypeError) as exc:
            if isinstance(exc, WorldParseError):
                raise
            raise WorldParseError(line_no, str(exc)) from None
    try:
        return WorldMap(name, tuple(segments), regions, start)
    except ValueError as exc:
        raise WorldParseError(1, str(exc)) from None
