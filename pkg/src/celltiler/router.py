"""Greedy SWAP-insertion baseline router and the tiled-vs-routed comparison."""

from __future__ import annotations

from collections import deque
from typing import Hashable

from celltiler.circuit import Gate, GateKind, Schedule, swap_metrics
from celltiler.lattice import Lattice, Site
from celltiler.scheduler import full_multiplier_schedule
from celltiler.tiler import RegisterSpec, build_multiplier_layout, initial_mapping

K = GateKind


class RoutingError(Exception):
    """The router ran out of sites or could not find a path."""


def _bfs_path(lattice: Lattice, src: Site, goals: set[Site], forbidden: set[Site]) -> list[Site]:
    """Deterministic BFS path from src to the nearest goal, detouring around
    forbidden sites."""
    if src in goals:
        return [src]
    seen = {src}
    queue = deque([(src, [src])])
    while queue:
        cur, path = queue.popleft()
        for nb in sorted(lattice.neighbours(cur)):
            if nb in seen or nb in forbidden:
                continue
            new_path = path + [nb]
            if nb in goals:
                return new_path
            seen.add(nb)
            queue.append((nb, new_path))
    raise RoutingError(f"no route from {tuple(src)} to any goal")


class _Router:
    def __init__(self, lattice: Lattice, mapping0: dict[Hashable, Site]):
        self.lattice = lattice
        self.pos: dict[Hashable, Site] = dict(mapping0)
        self.occ: dict[Site, Hashable] = {}
        for label, site in mapping0.items():
            lattice.check(site)
            if site in self.occ:
                raise RoutingError(f"two labels start at {tuple(site)}")
            self.occ[site] = label
        self.out = Schedule()

    def _emit(self, gate: Gate) -> None:
        self.out.append(gate, mode="earliest-fit")

    def _swap(self, a: Site, b: Site) -> None:
        self._emit(Gate(K.SWAP, (a, b)))
        la, lb = self.occ.get(a), self.occ.get(b)
        if la is not None:
            self.pos[la] = b
        if lb is not None:
            self.pos[lb] = a
        self.occ[a], self.occ[b] = lb, la
        if self.occ.get(a) is None:
            self.occ.pop(a, None)
        if self.occ.get(b) is None:
            self.occ.pop(b, None)

    def _walk(self, label: Hashable, goals: set[Site], locked: set[Site]) -> None:
        path = _bfs_path(self.lattice, self.pos[label], goals, locked)
        for a, b in zip(path, path[1:]):
            self._swap(a, b)

    def _route_pair(self, a: Hashable, b: Hashable) -> None:
        if self.pos[a].manhattan(self.pos[b]) == 1:
            return
        goals = {s for s in self.lattice.neighbours(self.pos[b])}
        goals.discard(self.pos[a])
        self._walk(a, goals, {self.pos[b]})

    def _route_triple(self, c1: Hashable, c2: Hashable, t: Hashable) -> None:
        # bring both controls next to the target, cheaper mover first
        for _ in range(2):
            pending = [
                c for c in (c1, c2) if self.pos[c].manhattan(self.pos[t]) != 1
            ]
            if not pending:
                return
            pending.sort(key=lambda c: (self.pos[c].manhattan(self.pos[t]), (c1, c2).index(c)))
            mover = pending[0]
            other = c2 if mover == c1 else c1
            locked = {self.pos[t], self.pos[other]}
            goals = {
                s for s in self.lattice.neighbours(self.pos[t])
                if s not in locked
            }
            self._walk(mover, goals, locked)
        if any(self.pos[c].manhattan(self.pos[t]) != 1 for c in (c1, c2)):
            raise RoutingError("could not assemble a Toffoli triple")

    def run(self, circuit: Schedule) -> None:
        for g in circuit.gates():
            ops = g.operands
            for q in ops:
                if q not in self.pos:
                    raise RoutingError(f"label {q!r} has no initial site")
            if len(ops) == 2:
                self._route_pair(*ops)
            elif len(ops) == 3:
                self._route_triple(*ops)
            self._emit(Gate(g.kind, tuple(self.pos[q] for q in ops), g.condition, g.tags))


def greedy_route(
    circuit: Schedule,
    lattice: Lattice,
    mapping0: dict[Hashable, Site],
) -> tuple[Schedule, dict[Hashable, Site]]:
    """Route a logical circuit onto the lattice, gate by gate, no lookahead.

    Operands are pulled together along detour-aware shortest paths; the gate
    fires on sites and the mapping drifts with the inserted SWAPs. Output
    moments are packed earliest-fit and the result is deterministic.
    """
    if len(mapping0) > lattice.size:
        raise RoutingError("more logical qubits than lattice sites")
    router = _Router(lattice, mapping0)
    router.run(circuit)
    return router.out, dict(router.pos)


def logical_multiplier_circuit(n: int, spec: RegisterSpec | None = None) -> Schedule:
    """The multiplier's Toffoli-level gate list on logical labels (no SWAPs).

    Shares the tiled pipeline's gate structure: one Toffoli per partial
    product, then per addition a carry-compute wave, controlled carry-out,
    and the uncompute/sum wave.
    """
    spec = spec or RegisterSpec.for_width(n)
    carries = [f"C{i}" for i in range(n + 1)]
    sched = Schedule()

    def tof(a, b, t):
        sched.append(Gate(K.TOFFOLI, (a, b, t)), mode="new-moment")

    for i in range(n):
        tof(spec.b[0], spec.a[i], spec.p[i])
    for j in range(1, n):
        for i in range(n):
            tof(spec.a[i], spec.p[j + i], carries[i + 1])
            if i >= 1:
                tof(carries[i], spec.p[j + i], carries[i + 1])
                tof(carries[i], spec.a[i], carries[i + 1])
        tof(spec.b[j], carries[n], spec.p[j + n])
        for i in range(n - 1, -1, -1):
            tof(spec.a[i], spec.p[j + i], carries[i + 1])
            if i >= 1:
                tof(carries[i], spec.p[j + i], carries[i + 1])
                tof(carries[i], spec.a[i], carries[i + 1])
            tof(spec.b[j], spec.a[i], spec.p[j + i])
            if i >= 1:
                tof(spec.b[j], carries[i], spec.p[j + i])
    return sched


def routing_mapping(n: int) -> dict[Hashable, Site]:
    """Initial placement handed to the baseline: the tiled layout's register
    seats plus deterministic seats for the carry ancillae."""
    layout = build_multiplier_layout(n)
    spec = RegisterSpec.for_width(n)
    full = initial_mapping(layout, spec)
    mapping = {label: site for label, site in full.items()
               if not str(label).startswith("anc")}
    free = sorted(set(layout.used_sites()) - set(mapping.values()))
    for i in range(n + 1):
        mapping[f"C{i}"] = free[i]
    return mapping


def compare(n_range) -> list[dict]:
    """Tiled vs greedy-routed SWAP metrics, one row per operand width."""
    rows = []
    for n in n_range:
        if n < 2:
            raise ValueError("comparison needs n >= 2")
        tiled, _ = full_multiplier_schedule(n)
        t_c, t_d = swap_metrics(tiled)
        layout = build_multiplier_layout(n)
        routed, _ = greedy_route(
            logical_multiplier_circuit(n), layout.lattice, routing_mapping(n)
        )
        r_c, r_d = swap_metrics(routed)
        rows.append(
            {
                "n": n,
                "tiled_swapC": t_c,
                "tiled_swapD": t_d,
                "routed_swapC": r_c,
                "routed_swapD": r_d,
                "ratio_swapC": r_c / t_c if t_c else float("inf"),
                "ratio_swapD": r_d / t_d if t_d else float("inf"),
            }
        )
    return rows


CSV_HEADER = "n,tiled_swapC,tiled_swapD,routed_swapC,routed_swapD"


def compare_csv(rows: list[dict]) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            f"{r['n']},{r['tiled_swapC']},{r['tiled_swapD']},{r['routed_swapC']},{r['routed_swapD']}"
        )
    return "\n".join(lines) + "\n"
