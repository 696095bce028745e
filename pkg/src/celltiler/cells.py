"""The standard-cell library: vertex-role/stick templates and their placement."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Hashable, Iterable

from celltiler.circuit import Gate, GateKind, Schedule
from celltiler.lattice import Lattice, Site

ROLE_CONTROL = "control"
ROLE_TARGET = "target"
ROLE_ANCILLA = "ancilla"
ROLE_AND_RESULT = "and_result"

DATA_ROLES = {ROLE_CONTROL, ROLE_TARGET, ROLE_AND_RESULT}


class PlacementError(Exception):
    """A tile cannot be placed where requested."""


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _rotations_3d() -> list[tuple[tuple[int, int, int], ...]]:
    """The 24 proper rotation matrices of the cube, in a fixed canonical order.

    A matrix is stored as rows; columns are the images of the x and y axes
    with the z image forced by det = +1.
    """
    units = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    out = []
    for cx in units:
        for cy in units:
            if sum(a * b for a, b in zip(cx, cy)) != 0:
                continue
            cz = _cross(cx, cy)
            rows = tuple((cx[i], cy[i], cz[i]) for i in range(3))
            out.append(rows)
    assert len(out) == 24
    return out


ROTATIONS_3D = _rotations_3d()


def _apply_rotation(mat, site: Site) -> tuple[int, int, int]:
    v = (site.x, site.y, site.z)
    return tuple(sum(mat[i][j] * v[j] for j in range(3)) for i in range(3))


@dataclass(frozen=True)
class Tile:
    """A standard cell: local vertices with roles, plus allowed-interaction sticks."""

    name: str
    vertices: tuple[tuple[Site, str], ...]
    sticks: frozenset[frozenset[Site]]

    def __post_init__(self):
        coords = {v for v, _ in self.vertices}
        if len(coords) != len(self.vertices):
            raise ValueError("duplicate tile vertex")
        for stick in self.sticks:
            a, b = tuple(stick)
            if a not in coords or b not in coords:
                raise ValueError(f"stick {stick} joins unknown vertices")
            if a.manhattan(b) != 1:
                raise ValueError(f"stick {stick} is not nearest-neighbour")

    @property
    def role_map(self) -> dict[Site, str]:
        return dict(self.vertices)

    def role_count(self, role: str) -> int:
        return sum(1 for _, r in self.vertices if r == role)

    def is_planar(self) -> bool:
        return all(v.z == 0 for v, _ in self.vertices)


def toffoli_cube() -> Tile:
    """The 7-vertex cube cell hosting a T-depth-1 Toffoli decomposition.

    Two controls and the target sit on one parity class of the cube, the four
    parity ancillae on the other; the eighth corner is absent. The sticks are
    the nine cube edges between present vertices, which is exactly the CNOT
    set the decomposition needs.
    """
    a, b, c = Site(1, 0, 0), Site(0, 1, 0), Site(0, 0, 1)
    z1, z2, z3, z4 = Site(1, 1, 0), Site(1, 0, 1), Site(0, 1, 1), Site(0, 0, 0)
    vertices = (
        (a, ROLE_CONTROL), (b, ROLE_CONTROL), (c, ROLE_TARGET),
        (z1, ROLE_ANCILLA), (z2, ROLE_ANCILLA), (z3, ROLE_ANCILLA), (z4, ROLE_ANCILLA),
    )
    sticks = frozenset(
        frozenset(p) for p in [
            (a, z1), (b, z1), (a, z2), (c, z2), (b, z3), (c, z3),
            (a, z4), (b, z4), (c, z4),
        ]
    )
    return Tile("toffoli_cube", vertices, sticks)


def tdepth2_tile() -> Tile:
    """2D cell for the T-depth-2 Toffoli: 2 controls, target, 3 ancillae.

    The thrice-targeted parity ancilla sits at the crossing between the
    control and target sticks.
    """
    a, b, t = Site(0, 0, 0), Site(2, 0, 0), Site(1, 1, 0)
    x, y, w = Site(0, 1, 0), Site(2, 1, 0), Site(1, 0, 0)
    vertices = (
        (a, ROLE_CONTROL), (b, ROLE_CONTROL), (t, ROLE_TARGET),
        (x, ROLE_ANCILLA), (y, ROLE_ANCILLA), (w, ROLE_ANCILLA),
    )
    sticks = frozenset(
        frozenset(p) for p in [
            (a, x), (t, x), (b, y), (t, y), (a, w), (b, w), (t, w),
        ]
    )
    return Tile("tdepth2", vertices, sticks)


def and_tile() -> Tile:
    """2D cell for the measurement-based Toffoli built around a logical AND.

    The AND result (red vertex) feeds the true target by a CNOT; the parity
    ancilla between the controls doubles as the mediator of the classically
    controlled CZ correction.
    """
    a, b = Site(2, 0, 0), Site(2, 2, 0)
    w = Site(1, 1, 0)
    z2, z3, z4 = Site(1, 0, 0), Site(1, 2, 0), Site(2, 1, 0)
    t = Site(0, 1, 0)
    vertices = (
        (a, ROLE_CONTROL), (b, ROLE_CONTROL), (t, ROLE_TARGET),
        (w, ROLE_AND_RESULT),
        (z2, ROLE_ANCILLA), (z3, ROLE_ANCILLA), (z4, ROLE_ANCILLA),
    )
    sticks = frozenset(
        frozenset(p) for p in [
            (a, z2), (w, z2), (b, z3), (w, z3),
            (a, z4), (b, z4), (w, z4), (w, t),
        ]
    )
    return Tile("and_mb", vertices, sticks)


def tile_supports(tile: Tile, schedule: Schedule, role_assignment: dict[Hashable, Site]) -> bool:
    """Whether every multi-qubit interaction of the schedule lies on a stick.

    ``role_assignment`` maps each schedule wire to a tile vertex. Two-qubit
    gates need their pair on a stick; three-qubit gates need all three pairs
    on sticks. Measurements and single-qubit gates are unconstrained.
    """
    coords = {v for v, _ in tile.vertices}
    for wire in schedule.wires():
        if wire not in role_assignment:
            raise ValueError(f"wire {wire!r} has no tile vertex assigned")
        if role_assignment[wire] not in coords:
            raise ValueError(f"wire {wire!r} assigned to non-vertex {role_assignment[wire]}")
    for g in schedule.gates():
        spots = [role_assignment[q] for q in g.operands]
        if len(spots) == 2:
            if frozenset(spots) not in tile.sticks:
                return False
        elif len(spots) == 3:
            for i in range(3):
                for j in range(i + 1, 3):
                    if frozenset((spots[i], spots[j])) not in tile.sticks:
                        return False
    return True


@dataclass(frozen=True)
class Placement:
    """A tile instantiated at a lattice offset under one of 24 axis rotations."""

    tile: Tile
    offset: Site
    orientation: int = 0

    def vertex_roles(self) -> dict[Site, str]:
        mat = ROTATIONS_3D[self.orientation % len(ROTATIONS_3D)]
        rotated = {}
        raw = {v: _apply_rotation(mat, v) for v, _ in self.tile.vertices}
        minx = min(p[0] for p in raw.values())
        miny = min(p[1] for p in raw.values())
        minz = min(p[2] for p in raw.values())
        for (v, role) in self.tile.vertices:
            p = raw[v]
            rotated[Site(p[0] - minx + self.offset.x,
                         p[1] - miny + self.offset.y,
                         p[2] - minz + self.offset.z)] = role
        return rotated

    def sites(self) -> set[Site]:
        return set(self.vertex_roles())


class Layout:
    """A lattice with placed cells and named storage queues."""

    def __init__(self, lattice: Lattice):
        self.lattice = lattice
        self.placements: list[Placement] = []
        self.queues: dict[str, list[Site]] = {}

    def add_queue(self, name: str, chain: list[Site]) -> None:
        for s in chain:
            self.lattice.check(s)
        for a, b in zip(chain, chain[1:]):
            if a.manhattan(b) != 1:
                raise ValueError(f"queue {name!r} is not a chain at {a}->{b}")
        self.queues[name] = list(chain)

    def queue_sites(self) -> set[Site]:
        return {s for chain in self.queues.values() for s in chain}

    def used_sites(self) -> set[Site]:
        used = set(self.queue_sites())
        for p in self.placements:
            used |= p.sites()
        return used

    def computational_sites(self) -> set[Site]:
        out = set()
        for p in self.placements:
            for s, role in p.vertex_roles().items():
                if role in (ROLE_CONTROL, ROLE_TARGET):
                    out.add(s)
        return out

    def to_json(self) -> str:
        payload = {
            "lattice": list(self.lattice.dims),
            "placements": [
                {
                    "tile": p.tile.name,
                    "offset": [p.offset.x, p.offset.y, p.offset.z],
                    "orientation": p.orientation,
                }
                for p in self.placements
            ],
            "queues": {
                name: [[s.x, s.y, s.z] for s in chain]
                for name, chain in self.queues.items()
            },
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def place(layout: Layout, tile: Tile, offset: Site, orientation: int = 0) -> Layout:
    """Add a placement; overlap is legal only where no two data roles collide."""
    cand = Placement(tile, offset, orientation)
    roles = cand.vertex_roles()
    for s in roles:
        if s not in layout.lattice:
            raise PlacementError(f"tile {tile.name} at {tuple(offset)} leaves the lattice at {tuple(s)}")
    for prev in layout.placements:
        prev_roles = prev.vertex_roles()
        for s, role in roles.items():
            other = prev_roles.get(s)
            if other is None:
                continue
            if role in DATA_ROLES and other in DATA_ROLES:
                raise PlacementError(
                    f"role conflict at {tuple(s)}: {other} vs {role}"
                )
    layout.placements.append(cand)
    return layout
