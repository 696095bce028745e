"""Gate-level IR with moments, depth/count metrics and the Toffoli parallelism predicate."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Hashable, Iterable, Iterator

from celltiler.lattice import Site


class GateKind(Enum):
    H = "h"
    T = "t"
    TDAG = "tdag"
    S = "s"
    SDAG = "sdag"
    X = "x"
    CNOT = "cnot"
    CZ = "cz"
    SWAP = "swap"
    TOFFOLI = "toffoli"
    CCZ = "ccz"
    MEASURE_X = "mx"
    MEASURE_Z = "mz"
    CC_CZ = "cc_cz"  # CZ conditioned on an earlier measurement record


ARITY = {
    GateKind.H: 1, GateKind.T: 1, GateKind.TDAG: 1, GateKind.S: 1, GateKind.SDAG: 1,
    GateKind.X: 1, GateKind.MEASURE_X: 1, GateKind.MEASURE_Z: 1,
    GateKind.CNOT: 2, GateKind.CZ: 2, GateKind.SWAP: 2, GateKind.CC_CZ: 2,
    GateKind.TOFFOLI: 3, GateKind.CCZ: 3,
}

SINGLE_QUBIT_CLIFFORD = {GateKind.H, GateKind.S, GateKind.SDAG}
T_KINDS = {GateKind.T, GateKind.TDAG}


@dataclass(frozen=True)
class Gate:
    """One gate. ``operands`` are hashable wire labels (strings or Sites).

    Toffoli/CCZ operands are ordered ``(control, control, target)``; for CCZ the
    split is conventional only. ``condition`` holds the measurement-record index
    a ``CC_CZ`` is conditioned on. ``tags`` mark bookkeeping such as storage SWAPs.
    """

    kind: GateKind
    operands: tuple[Hashable, ...]
    condition: int | None = None
    tags: frozenset[str] = frozenset()

    def __post_init__(self):
        if len(self.operands) != ARITY[self.kind]:
            raise ValueError(f"{self.kind.value} expects {ARITY[self.kind]} operands, got {len(self.operands)}")
        if len(set(self.operands)) != len(self.operands):
            raise ValueError(f"duplicate operand in {self.kind.value} gate: {self.operands}")

    @property
    def support(self) -> frozenset:
        return frozenset(self.operands)

    def is_storage(self) -> bool:
        return "storage" in self.tags


def gate(kind: GateKind | str, *operands, condition: int | None = None, tags: Iterable[str] = ()) -> Gate:
    if isinstance(kind, str):
        kind = GateKind(kind)
    return Gate(kind, tuple(operands), condition, frozenset(tags))


class Schedule:
    """Ordered moments of gates; supports within a moment are pairwise disjoint."""

    def __init__(self, moments: Iterable[Iterable[Gate]] = ()):
        self.moments: list[list[Gate]] = []
        for m in moments:
            self.moments.append([])
            for g in m:
                self._add_to_moment(len(self.moments) - 1, g)

    def _add_to_moment(self, idx: int, g: Gate) -> None:
        used = set()
        for other in self.moments[idx]:
            used |= other.support
        if used & g.support:
            raise ValueError(f"overlapping support in moment {idx}: {g}")
        self.moments[idx].append(g)

    def append(self, g: Gate, mode: str = "earliest-fit") -> "Schedule":
        """Add a gate. ``new-moment`` opens a fresh moment; ``earliest-fit``
        lands in the first moment after the last one touching its operands."""
        if mode not in ("new-moment", "earliest-fit"):
            raise ValueError(f"unknown append mode {mode!r}")
        if mode == "new-moment" or not self.moments:
            self.moments.append([g])
            return self
        last = -1
        for i, m in enumerate(self.moments):
            if any(other.support & g.support for other in m):
                last = i
        target = last + 1
        if target >= len(self.moments):
            self.moments.append([g])
        else:
            self._add_to_moment(target, g)
        return self

    def extend_moment(self, gates: Iterable[Gate]) -> None:
        """Append one new moment holding all the given gates."""
        self.moments.append([])
        for g in gates:
            self._add_to_moment(len(self.moments) - 1, g)

    def gates(self) -> Iterator[Gate]:
        for m in self.moments:
            yield from m

    def wires(self) -> list:
        seen: dict = {}
        for g in self.gates():
            for q in g.operands:
                seen.setdefault(q, None)
        return list(seen)

    def count(self, kind: GateKind) -> int:
        return sum(1 for g in self.gates() if g.kind is kind)

    def __len__(self) -> int:
        return len(self.moments)

    def __iter__(self) -> Iterator[list[Gate]]:
        return iter(self.moments)

    # --- JSON wire format -------------------------------------------------

    @staticmethod
    def _encode_operand(q) -> Any:
        if isinstance(q, Site):
            return [q.x, q.y, q.z]
        return q

    @staticmethod
    def _decode_operand(v) -> Hashable:
        if isinstance(v, list):
            return Site(*v)
        return v

    def to_json(self) -> str:
        payload = {
            "moments": [
                [
                    {
                        "kind": g.kind.value,
                        "operands": [self._encode_operand(q) for q in g.operands],
                        "condition": g.condition,
                        "tags": sorted(g.tags),
                    }
                    for g in m
                ]
                for m in self.moments
            ]
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Schedule":
        payload = json.loads(text)
        sched = cls()
        for m in payload["moments"]:
            sched.moments.append([])
            for item in m:
                g = Gate(
                    GateKind(item["kind"]),
                    tuple(cls._decode_operand(v) for v in item["operands"]),
                    item.get("condition"),
                    frozenset(item.get("tags", ())),
                )
                sched._add_to_moment(len(sched.moments) - 1, g)
        return sched


@dataclass(frozen=True)
class DepthPolicy:
    """How gate layers are costed.

    ``swap_weight`` may be 1 (native SWAP), 3 (CNOT expansion) or 2 (CNOT pair
    against a known-|0> target). ``merge_free_singles`` makes H/S/Sdag depth
    free; ``merge_shared_control`` lets CNOTs sharing only their control wire
    overlap in time.
    """

    name: str
    swap_weight: int = 1
    merge_free_singles: bool = False
    merge_shared_control: bool = False

    def weight(self, g: Gate) -> int:
        if g.kind is GateKind.SWAP:
            return self.swap_weight
        if self.merge_free_singles and g.kind in SINGLE_QUBIT_CLIFFORD:
            return 0
        return 1


POLICIES: dict[str, DepthPolicy] = {
    "parallel": DepthPolicy("parallel", swap_weight=1, merge_free_singles=True, merge_shared_control=True),
    "strict": DepthPolicy("strict", swap_weight=1),
    "swap3": DepthPolicy("swap3", swap_weight=3),
    "swap2": DepthPolicy("swap2", swap_weight=2),
}


def depth(schedule: Schedule, policy: DepthPolicy = POLICIES["strict"]) -> int:
    """Weighted critical-path length of the schedule under the given policy.

    Gates are re-packed as早 as the per-wire order from the moment sequence
    allows. Under ``merge_shared_control`` a wire acting as CNOT control is
    read-only: controls of different CNOTs may overlap in time.
    """
    floor: dict = {}  # earliest start for a control-only use
    high: dict = {}  # earliest start for a serializing use
    total = 0
    for m in schedule.moments:
        for g in m:
            w = policy.weight(g)
            fanout = policy.merge_shared_control and g.kind is GateKind.CNOT
            start = 0
            for i, q in enumerate(g.operands):
                if fanout and i == 0:
                    start = max(start, floor.get(q, 0))
                else:
                    start = max(start, high.get(q, 0))
            finish = start + w
            for i, q in enumerate(g.operands):
                if fanout and i == 0:
                    high[q] = max(high.get(q, 0), finish)
                else:
                    floor[q] = finish
                    high[q] = max(high.get(q, 0), finish)
            total = max(total, finish)
    return total


def t_metrics(schedule: Schedule) -> tuple[int, int]:
    """(t_count, t_depth): T/Tdag gate count and moments holding any of them."""
    count = 0
    moments = 0
    for m in schedule.moments:
        here = sum(1 for g in m if g.kind in T_KINDS)
        count += here
        if here:
            moments += 1
    return count, moments


def swap_metrics(schedule: Schedule, exclude: frozenset = frozenset()) -> tuple[int, int]:
    """(swap_count, swap_depth) over SWAPs outside storage.

    A SWAP is excluded when tagged ``storage`` or when both operands fall in
    ``exclude`` (declared storage-site labels).
    """

    def counted(g: Gate) -> bool:
        if g.kind is not GateKind.SWAP or g.is_storage():
            return False
        return not all(q in exclude for q in g.operands)

    count = 0
    depth_ = 0
    for m in schedule.moments:
        here = sum(1 for g in m if counted(g))
        count += here
        if here:
            depth_ += 1
    return count, depth_


def can_parallelize_toffoli(g1: Gate, g2: Gate) -> bool:
    """Whether two Toffoli/CCZ gates admit parallel Clifford+T execution.

    Fails exactly when a shared qubit is the target of one Toffoli and a
    control (or any CCZ operand) of the other; CCZ pairs always parallelise.
    """
    for g in (g1, g2):
        if g.kind not in (GateKind.TOFFOLI, GateKind.CCZ):
            raise ValueError(f"can_parallelize_toffoli expects Toffoli/CCZ, got {g.kind.value}")

    def target(g: Gate):
        return g.operands[2] if g.kind is GateKind.TOFFOLI else None

    def nontarget(g: Gate) -> set:
        if g.kind is GateKind.TOFFOLI:
            return set(g.operands[:2])
        return set(g.operands)

    t1, t2 = target(g1), target(g2)
    if t1 is not None and t1 in nontarget(g2):
        return False
    if t2 is not None and t2 in nontarget(g1):
        return False
    return True
