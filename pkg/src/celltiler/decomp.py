"""Clifford+T decompositions: CCZ, logical ANDs, controlled-S, two Toffoli forms.

All circuits are exact (ancillae restored to |0> on every computational basis
input); the ANDs include the final S that cancels the relative phase, so the
composed measurement-based Toffoli closes without extra corrections. T/Tdag
signs follow the phase-polynomial solution checked by the statevector oracle
in the test-suite.
"""

from __future__ import annotations

from typing import Hashable

from celltiler.circuit import Gate, GateKind, Schedule, gate

K = GateKind


def _moments(*groups) -> Schedule:
    sched = Schedule()
    for group in groups:
        sched.extend_moment(group)
    return sched


def ccz_tdepth1() -> Schedule:
    """T-depth-1 CCZ on wires a, b, c with four parity ancillae z1..z4.

    Parities a^b, a^c, b^c and a^b^c are fanned out by CNOTs, all seven
    T-kind gates fire in one moment, and the parities are uncomputed.
    """
    a, b, c, z1, z2, z3, z4 = "a", "b", "c", "z1", "z2", "z3", "z4"
    compute = [
        [gate(K.CNOT, a, z1), gate(K.CNOT, c, z2), gate(K.CNOT, b, z3)],
        [gate(K.CNOT, b, z1), gate(K.CNOT, a, z2), gate(K.CNOT, c, z3)],
        [gate(K.CNOT, a, z4)],
        [gate(K.CNOT, b, z4)],
        [gate(K.CNOT, c, z4)],
    ]
    t_moment = [
        gate(K.T, a), gate(K.T, b), gate(K.T, c),
        gate(K.TDAG, z1), gate(K.TDAG, z2), gate(K.TDAG, z3),
        gate(K.T, z4),
    ]
    uncompute = [
        [gate(K.CNOT, c, z4)],
        [gate(K.CNOT, b, z4)],
        [gate(K.CNOT, a, z4)],
        [gate(K.CNOT, b, z1), gate(K.CNOT, a, z2), gate(K.CNOT, c, z3)],
        [gate(K.CNOT, a, z1), gate(K.CNOT, c, z2), gate(K.CNOT, b, z3)],
    ]
    return _moments(*compute, t_moment, *uncompute)


def and_4anc() -> Schedule:
    """Logical AND of a, b into the fresh wire t, T-count 4 and T-depth 1.

    Same skeleton as :func:`ccz_tdepth1` with the a^b ancilla and the three
    data T gates dropped and the target wire dressed with H...H,S. The final
    S cancels the (-i)^(ab) relative phase, so the AND is exact.
    """
    a, b, t, z2, z3, z4 = "a", "b", "t", "z2", "z3", "z4"
    return _moments(
        [gate(K.H, t)],
        [gate(K.CNOT, a, z2), gate(K.CNOT, b, z3)],
        [gate(K.CNOT, t, z2), gate(K.CNOT, a, z4)],
        [gate(K.CNOT, t, z3), gate(K.CNOT, b, z4)],
        [gate(K.CNOT, t, z4)],
        [gate(K.T, t), gate(K.TDAG, z2), gate(K.TDAG, z3), gate(K.T, z4)],
        [gate(K.CNOT, t, z4)],
        [gate(K.CNOT, t, z3), gate(K.CNOT, b, z4)],
        [gate(K.CNOT, t, z2), gate(K.CNOT, a, z4)],
        [gate(K.CNOT, a, z2), gate(K.CNOT, b, z3)],
        [gate(K.H, t)],
        [gate(K.S, t)],
    )


def and_3anc() -> Schedule:
    """Logical AND with three parity ancillae: the a^b^t parity is chained
    off the b^t ancilla, saving two CNOTs over :func:`and_4anc`.

    Under the shared-control depth policy the whole circuit packs into seven
    layers; H and S ride along with neighbouring CNOTs.
    """
    a, b, t, z2, z3, z4 = "a", "b", "t", "z2", "z3", "z4"
    return _moments(
        [gate(K.H, t), gate(K.CNOT, a, z2)],
        [gate(K.CNOT, b, z3), gate(K.CNOT, a, z4)],
        [gate(K.CNOT, t, z2)],
        [gate(K.CNOT, t, z3)],
        [gate(K.CNOT, z3, z4)],
        [gate(K.T, t), gate(K.TDAG, z2), gate(K.TDAG, z3), gate(K.T, z4)],
        [gate(K.CNOT, z3, z4), gate(K.CNOT, t, z2)],
        [gate(K.CNOT, a, z2), gate(K.CNOT, t, z3)],
        [gate(K.CNOT, a, z4), gate(K.CNOT, b, z3)],
        [gate(K.H, t)],
        [gate(K.S, t)],
    )


def controlled_s(variant: str = "a") -> Schedule:
    """Controlled-S on q1, q2 with one parity ancilla, T-depth 1.

    Variant "a" is the depth-five form; variant "b" is the equivalent deeper
    circuit with the ancilla interactions rewritten through H-conjugated CZs.
    """
    q1, q2, x = "q1", "q2", "x"
    if variant == "a":
        return _moments(
            [gate(K.CNOT, q1, x)],
            [gate(K.CNOT, q2, x)],
            [gate(K.T, q1), gate(K.T, q2), gate(K.TDAG, x)],
            [gate(K.CNOT, q2, x)],
            [gate(K.CNOT, q1, x)],
        )
    if variant == "b":
        return _moments(
            [gate(K.H, x)],
            [gate(K.CZ, q1, x)],
            [gate(K.CZ, q2, x)],
            [gate(K.H, x)],
            [gate(K.T, q1), gate(K.T, q2), gate(K.TDAG, x)],
            [gate(K.H, x)],
            [gate(K.CZ, q2, x)],
            [gate(K.CZ, q1, x)],
            [gate(K.H, x)],
        )
    raise ValueError(f"unknown controlled_s variant {variant!r}")


def toffoli_tdepth2() -> Schedule:
    """Exact Toffoli on a, b -> t from an AND core plus a fused controlled-S.

    The parity ancilla w is reused for the a^b parity after a single CNOT, so
    the controlled-S contributes no extra compute CNOTs; the total is 14
    CNOTs and two T moments.
    """
    a, b, t, x, y, w = "a", "b", "t", "x", "y", "w"
    return _moments(
        [gate(K.H, t), gate(K.CNOT, a, x), gate(K.CNOT, b, y)],
        [gate(K.CNOT, t, x), gate(K.CNOT, a, w)],
        [gate(K.CNOT, t, y), gate(K.CNOT, b, w)],
        [gate(K.CNOT, t, w)],
        [gate(K.T, t), gate(K.TDAG, x), gate(K.TDAG, y), gate(K.T, w)],
        [gate(K.CNOT, t, w)],
        [gate(K.CNOT, t, x), gate(K.T, a), gate(K.T, b), gate(K.TDAG, w)],
        [gate(K.CNOT, t, y), gate(K.CNOT, a, x), gate(K.CNOT, b, w)],
        [gate(K.H, t), gate(K.CNOT, b, y), gate(K.CNOT, a, w)],
    )


def toffoli_mb() -> Schedule:
    """Toffoli via a logical AND and measurement-based uncomputation.

    The AND result w is fanned into the true target, measured in the X basis,
    and the corrective CZ between the controls is applied (conditioned on the
    record) through the parity ancilla z4 sitting between them.
    """
    a, b, t, w, z2, z3, z4 = "a", "b", "t", "w", "z2", "z3", "z4"
    return _moments(
        [gate(K.H, w)],
        [gate(K.CNOT, a, z2), gate(K.CNOT, b, z3)],
        [gate(K.CNOT, w, z2), gate(K.CNOT, a, z4)],
        [gate(K.CNOT, w, z3), gate(K.CNOT, b, z4)],
        [gate(K.CNOT, w, z4)],
        [gate(K.T, w), gate(K.TDAG, z2), gate(K.TDAG, z3), gate(K.T, z4)],
        [gate(K.CNOT, w, z4)],
        [gate(K.CNOT, w, z3), gate(K.CNOT, b, z4)],
        [gate(K.CNOT, w, z2), gate(K.CNOT, a, z4)],
        [gate(K.CNOT, a, z2), gate(K.CNOT, b, z3)],
        [gate(K.H, w)],
        [gate(K.S, w)],
        [gate(K.CNOT, w, t)],
        [gate(K.MEASURE_X, w)],
        [gate(K.CNOT, a, z4)],
        [gate(K.CC_CZ, z4, b, condition=0)],
        [gate(K.CNOT, a, z4)],
    )


# --- role assignments used by the tile contracts ---------------------------

from celltiler.lattice import Site  # noqa: E402  (local import keeps header lean)


def ccz_cube_assignment() -> dict[Hashable, Site]:
    """Map the CCZ decomposition wires onto the cube cell's vertices."""
    return {
        "a": Site(1, 0, 0), "b": Site(0, 1, 0), "c": Site(0, 0, 1),
        "z1": Site(1, 1, 0), "z2": Site(1, 0, 1), "z3": Site(0, 1, 1), "z4": Site(0, 0, 0),
    }


def toffoli_cube_circuit() -> Schedule:
    """The cube cell's native gate sequence: CCZ conjugated by H on the target."""
    inner = ccz_tdepth1()
    sched = Schedule()
    sched.extend_moment([gate(K.H, "c")])
    for m in inner.moments:
        sched.extend_moment(m)
    sched.extend_moment([gate(K.H, "c")])
    return sched


def tdepth2_assignment() -> dict[Hashable, Site]:
    return {
        "a": Site(0, 0, 0), "b": Site(2, 0, 0), "t": Site(1, 1, 0),
        "x": Site(0, 1, 0), "y": Site(2, 1, 0), "w": Site(1, 0, 0),
    }


def and_tile_assignment() -> dict[Hashable, Site]:
    return {
        "a": Site(2, 0, 0), "b": Site(2, 2, 0), "t": Site(0, 1, 0),
        "w": Site(1, 1, 0),
        "z2": Site(1, 0, 0), "z3": Site(1, 2, 0), "z4": Site(2, 1, 0),
    }


# --- lowering passes --------------------------------------------------------

_LOWER_STYLES = ("tdepth2", "tdepth1")


def lower_schedule(schedule: Schedule, style: str = "tdepth2") -> Schedule:
    """Expand Toffoli/CCZ gates to Clifford+T and SWAPs to three CNOTs.

    Toffoli operands keep their labels; each expansion draws fresh ancilla
    wires from a shared pool so supports in one moment never collide.
    """
    if style not in _LOWER_STYLES:
        raise ValueError(f"unknown lowering style {style!r}")
    out = Schedule()
    pool = 0
    for moment in schedule.moments:
        pending: list[list[Gate]] = []
        simple: list[Gate] = []
        for g in moment:
            if g.kind in (GateKind.TOFFOLI, GateKind.CCZ):
                template = toffoli_tdepth2() if style == "tdepth2" else toffoli_cube_circuit()
                if g.kind is GateKind.CCZ and style == "tdepth1":
                    template = ccz_tdepth1()
                names = {}
                if style == "tdepth2":
                    names = {"a": g.operands[0], "b": g.operands[1], "t": g.operands[2]}
                    anc = ("x", "y", "w")
                else:
                    names = {"a": g.operands[0], "b": g.operands[1], "c": g.operands[2]}
                    anc = ("z1", "z2", "z3", "z4")
                for wire in anc:
                    names[wire] = f"_anc{pool}"
                    pool += 1
                expanded = [
                    [Gate(h.kind, tuple(names[q] for q in h.operands), h.condition, h.tags) for h in m]
                    for m in template.moments
                ]
                pending.append(expanded)
            elif g.kind is GateKind.SWAP:
                a, b = g.operands
                pending.append([
                    [Gate(GateKind.CNOT, (a, b), tags=g.tags)],
                    [Gate(GateKind.CNOT, (b, a), tags=g.tags)],
                    [Gate(GateKind.CNOT, (a, b), tags=g.tags)],
                ])
            else:
                simple.append(g)
        if simple:
            out.extend_moment(simple)
        if pending:
            length = max(len(p) for p in pending)
            for i in range(length):
                merged = []
                for p in pending:
                    if i < len(p):
                        merged.extend(p[i])
                out.extend_moment(merged)
    return out
