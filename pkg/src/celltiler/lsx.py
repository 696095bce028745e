"""Lattice-surgery extraction: schedules become merge/split instruction streams."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Hashable

from celltiler.cells import Layout
from celltiler.circuit import Gate, GateKind, Schedule
from celltiler.lattice import Site

K = GateKind


class ModeError(Exception):
    """The requested extraction mode does not fit the layout."""


# instruction kinds
INIT_PLUS = "init_plus"
INIT_ZERO = "init_zero"
MERGE_ZZ = "merge_split_zz"
MERGE_XX = "merge_split_xx"
MEASURE_Z = "measure_z"
MEASURE_X = "measure_x"
TRANSVERSAL = "transversal_cnot"
ROTATE = "patch_rotate"
OP = "op"  # opaque single-patch operation (T, H, S, X, ...)

# two-qubit groupings validated against the per-patch parallel bounds
LS_KINDS = (INIT_PLUS, MERGE_ZZ, MERGE_XX, MEASURE_X)
RIDING_OPS = ("h", "s", "sdag", "x", "mx", "mz")  # merge into a neighbour step
STEPPING_OPS = ("t", "tdag")  # occupy a step of their own


@dataclass(frozen=True)
class LSInstruction:
    kind: str
    patches: tuple[str, ...]
    instance: int  # groups the instructions of one logical CNOT / CZ
    label: str = ""  # op name for OP instructions
    condition: int | None = None


@dataclass
class LSProgram:
    steps: list[list[LSInstruction]] = field(default_factory=list)
    transversal_count: int = 0
    pattern_count: int = 0

    def cnot_count(self) -> int:
        return self.transversal_count + self.pattern_count

    def to_json(self) -> str:
        return json.dumps(
            {
                "steps": [
                    [
                        {
                            "kind": ins.kind,
                            "patches": list(ins.patches),
                            "instance": ins.instance,
                            "label": ins.label,
                            "condition": ins.condition,
                        }
                        for ins in step
                    ]
                    for step in self.steps
                ],
                "transversal_count": self.transversal_count,
                "pattern_count": self.pattern_count,
            },
            indent=2,
            sort_keys=True,
        )

    def render(self) -> str:
        lines = []
        for i, step in enumerate(self.steps):
            parts = []
            for ins in step:
                what = ins.label or ins.kind
                parts.append(f"{what}({','.join(ins.patches)})")
            lines.append(f"step {i:03d}: " + " ".join(parts))
        return "\n".join(lines)


def _patch_name(label: Hashable) -> str:
    if isinstance(label, Site):
        return f"q{label.x}_{label.y}_{label.z}"
    return str(label)


class _Extractor:
    def __init__(self, mode: str, bound_ls: int):
        self.mode = mode
        self.bound_ls = bound_ls
        self.program = LSProgram()
        self.hard_avail: dict[str, int] = {}  # first step a new instance may use
        self.last_step: dict[str, int] = {}
        self.ls_use: list[dict[str, int]] = []
        self.tv_use: list[dict[str, int]] = []
        self.anc_avail: list[int] = []  # per ancilla patch: first free step
        self.orientation: dict[str, str] = {}
        self.instance = 0

    def _ensure(self, s: int) -> None:
        while len(self.program.steps) <= s:
            self.program.steps.append([])
            self.ls_use.append({})
            self.tv_use.append({})

    def _place_two(self, patches: tuple[str, str], transversal: bool) -> int:
        s = max(self.hard_avail.get(p, 0) for p in patches)
        while True:
            self._ensure(s)
            use = self.tv_use[s] if transversal else self.ls_use[s]
            limit = 2 if transversal else self.bound_ls
            if all(use.get(p, 0) < limit for p in patches):
                break
            s += 1
        for p in patches:
            use = self.tv_use[s] if transversal else self.ls_use[s]
            use[p] = use.get(p, 0) + 1
            self.last_step[p] = max(self.last_step.get(p, 0), s)
        return s

    def _alloc_anc(self, step: int) -> tuple[str, int]:
        for i, free_at in enumerate(self.anc_avail):
            if free_at <= step:
                self.anc_avail[i] = step + 1
                return f"ls_anc{i}", i
        self.anc_avail.append(step + 1)
        return f"ls_anc{len(self.anc_avail) - 1}", len(self.anc_avail) - 1

    def _rotate_if_needed(self, step: int, patch: str, boundary: str) -> None:
        cur = self.orientation.get(patch)
        if cur is not None and cur != boundary:
            self.program.steps[step].append(
                LSInstruction(ROTATE, (patch,), self.instance)
            )
        self.orientation[patch] = boundary

    def ls_cnot(self, ctrl: str, tgt: str, kinds=(MERGE_ZZ, MERGE_XX), condition=None) -> None:
        self.instance += 1
        s = self._place_two((ctrl, tgt), transversal=False)
        anc, _ = self._alloc_anc(s)
        step = self.program.steps[s]
        step.append(LSInstruction(INIT_PLUS, (anc,), self.instance))
        self._rotate_if_needed(s, ctrl, "z")
        step.append(LSInstruction(kinds[0], (ctrl, anc), self.instance, condition=condition))
        self._rotate_if_needed(s, tgt, "x" if kinds[1] is MERGE_XX else "z")
        step.append(LSInstruction(kinds[1], (anc, tgt), self.instance, condition=condition))
        step.append(LSInstruction(MEASURE_X, (anc,), self.instance))
        self.program.pattern_count += 1

    def transversal(self, ctrl: str, tgt: str) -> None:
        self.instance += 1
        s = self._place_two((ctrl, tgt), transversal=True)
        self.program.steps[s].append(LSInstruction(TRANSVERSAL, (ctrl, tgt), self.instance))
        self.program.transversal_count += 1

    def single(self, patch: str, name: str, rides: bool) -> None:
        if rides:
            s = self.last_step.get(patch, 0)
            self._ensure(s)
            if name == "h" and patch in self.orientation:
                cur = self.orientation[patch]
                self.orientation[patch] = "x" if cur == "z" else "z"
        else:
            s = max(self.hard_avail.get(patch, 0), self.last_step.get(patch, -1) + 1)
            self._ensure(s)
            self.last_step[patch] = s
            self.hard_avail[patch] = s + 1
        self.program.steps[s].append(LSInstruction(OP, (patch,), 0, label=name))


def extract_ls(
    schedule: Schedule,
    layout: Layout | None,
    mode: str,
    site_map: dict[Hashable, Site] | None = None,
) -> LSProgram:
    """Translate a Clifford+T schedule into lattice-surgery steps.

    Every CNOT becomes the init/merge-split/measure pattern on a mediating
    ancilla patch; in 3d mode CNOTs whose endpoints sit on vertically stacked
    sites become transversal CNOTs instead. T gates occupy a step of their
    own; other single-patch gates ride along. Patch rotations are inserted
    when a reused patch must present its other boundary type.
    """
    if mode not in ("2d", "3d"):
        raise ModeError(f"unknown mode {mode!r}")
    if mode == "2d" and layout is not None and layout.lattice.dimensionality != 2:
        raise ModeError("2d extraction requires a planar layout")
    ex = _Extractor(mode, bound_ls=2)

    def site_of(label: Hashable) -> Site | None:
        if isinstance(label, Site):
            return label
        if site_map and label in site_map:
            return site_map[label]
        return None

    for g in schedule.gates():
        if g.kind in (K.TOFFOLI, K.CCZ):
            raise ValueError("lower Toffoli/CCZ to Clifford+T before LS extraction")
        if g.kind is K.SWAP:
            raise ValueError("expand SWAPs to CNOTs before LS extraction")
        names = tuple(_patch_name(q) for q in g.operands)
        if g.kind is K.CNOT:
            sa, sb = site_of(g.operands[0]), site_of(g.operands[1])
            stacked = (
                mode == "3d"
                and sa is not None
                and sb is not None
                and sa.x == sb.x and sa.y == sb.y and abs(sa.z - sb.z) == 1
            )
            if stacked:
                ex.transversal(*names)
            else:
                ex.ls_cnot(*names)
        elif g.kind in (K.CZ, K.CC_CZ):
            ex.ls_cnot(*names, kinds=(MERGE_ZZ, MERGE_ZZ), condition=g.condition)
        else:
            name = g.kind.value
            ex.single(names[0], name, rides=name in RIDING_OPS)
    return ex.program


@dataclass
class LSReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_ls(program: LSProgram, mode: str) -> LSReport:
    """Check the per-step parallelism bounds: at most two merge/split uses per
    patch (plus two transversal uses in 3d), one job per ancilla patch."""
    if mode not in ("2d", "3d"):
        raise ModeError(f"unknown mode {mode!r}")
    report = LSReport()
    for si, step in enumerate(program.steps):
        ls_count: dict[str, set[int]] = {}
        tv_count: dict[str, set[int]] = {}
        anc_jobs: dict[str, set[int]] = {}
        for ins in step:
            if ins.kind in (MERGE_ZZ, MERGE_XX):
                for p in ins.patches:
                    if p.startswith("ls_anc"):
                        anc_jobs.setdefault(p, set()).add(ins.instance)
                    else:
                        ls_count.setdefault(p, set()).add(ins.instance)
            elif ins.kind == TRANSVERSAL:
                if mode == "2d":
                    report.violations.append(f"step {si}: transversal CNOT in 2d mode")
                for p in ins.patches:
                    tv_count.setdefault(p, set()).add(ins.instance)
        for p, instances in ls_count.items():
            if len(instances) > 2:
                report.violations.append(
                    f"step {si}: patch {p} joins {len(instances)} merge/split operations"
                )
        for p, instances in tv_count.items():
            if len(instances) > 2:
                report.violations.append(
                    f"step {si}: patch {p} joins {len(instances)} transversal CNOTs"
                )
        for p, instances in anc_jobs.items():
            if len(instances) > 1:
                report.violations.append(
                    f"step {si}: ancilla patch {p} mediates {len(instances)} CNOTs"
                )
    return report
