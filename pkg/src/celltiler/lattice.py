"""Finite grid models of physical qubit layouts with nearest-neighbour adjacency."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple


class Site(NamedTuple):
    """A grid coordinate. ``z`` stays 0 on 2D lattices."""

    x: int
    y: int
    z: int = 0

    def manhattan(self, other: "Site") -> int:
        return abs(self.x - other.x) + abs(self.y - other.y) + abs(self.z - other.z)


@dataclass(frozen=True)
class Lattice:
    """An open-boundary square/cubic grid of qubit sites."""

    dx: int
    dy: int
    dz: int = 1

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.dx, self.dy, self.dz)

    @property
    def dimensionality(self) -> int:
        return 2 if self.dz == 1 else 3

    @property
    def size(self) -> int:
        return self.dx * self.dy * self.dz

    def __contains__(self, site: Site) -> bool:
        return 0 <= site.x < self.dx and 0 <= site.y < self.dy and 0 <= site.z < self.dz

    def sites(self) -> Iterator[Site]:
        for x in range(self.dx):
            for y in range(self.dy):
                for z in range(self.dz):
                    yield Site(x, y, z)

    def check(self, site: Site) -> Site:
        if site not in self:
            raise ValueError(f"site {tuple(site)} outside lattice {self.dims}")
        return site

    def neighbours(self, site: Site) -> list[Site]:
        self.check(site)
        out = []
        for dx, dy, dz in ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)):
            cand = Site(site.x + dx, site.y + dy, site.z + dz)
            if cand in self:
                out.append(cand)
        return out

    def edge_count(self) -> int:
        def links(n: int) -> int:
            return max(n - 1, 0)

        return (
            links(self.dx) * self.dy * self.dz
            + self.dx * links(self.dy) * self.dz
            + self.dx * self.dy * links(self.dz)
        )


def grid(dx: int, dy: int, dz: int = 1) -> Lattice:
    """Build a ``dx * dy * dz`` lattice. ``dz == 1`` yields a 2D lattice."""
    if dx < 1 or dy < 1 or dz < 1:
        raise ValueError(f"lattice dimensions must be positive, got ({dx}, {dy}, {dz})")
    return Lattice(dx, dy, dz)


def adjacent(lattice: Lattice, a: Site, b: Site) -> bool:
    """True iff the two sites are distinct nearest neighbours."""
    lattice.check(a)
    lattice.check(b)
    return a.manhattan(b) == 1


def shortest_path(lattice: Lattice, a: Site, b: Site) -> list[Site]:
    """Axis-ordered shortest path from ``a`` to ``b`` (moves x, then y, then z).

    The tie-break is fixed so downstream routing output is reproducible.
    """
    lattice.check(a)
    lattice.check(b)
    path = [a]
    cur = a
    for axis in ("x", "y", "z"):
        target = getattr(b, axis)
        while getattr(cur, axis) != target:
            step = 1 if target > getattr(cur, axis) else -1
            cur = cur._replace(**{axis: getattr(cur, axis) + step})
            path.append(cur)
    return path
