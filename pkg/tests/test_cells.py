import pytest

from celltiler import decomp
from celltiler.cells import (
    Layout,
    PlacementError,
    Placement,
    ROTATIONS_3D,
    and_tile,
    place,
    tdepth2_tile,
    tile_supports,
    toffoli_cube,
)
from celltiler.circuit import Schedule, gate
from celltiler.lattice import Site, grid


def test_rotation_table():
    assert len(ROTATIONS_3D) == 24
    assert len(set(ROTATIONS_3D)) == 24


def test_toffoli_cube_shape():
    tile = toffoli_cube()
    assert len(tile.vertices) == 7
    assert tile.role_count("control") == 2
    assert tile.role_count("target") == 1
    assert tile.role_count("ancilla") == 4
    assert len(tile.sticks) == 9


def test_toffoli_cube_supports_its_circuit():
    assert tile_supports(
        toffoli_cube(), decomp.toffoli_cube_circuit(), decomp.ccz_cube_assignment()
    )


def test_tdepth2_tile_shape():
    tile = tdepth2_tile()
    assert len(tile.vertices) == 6
    assert tile.role_count("control") == 2
    assert tile.role_count("target") == 1
    assert tile.is_planar()


def test_tdepth2_tile_supports_toffoli():
    assert tile_supports(tdepth2_tile(), decomp.toffoli_tdepth2(), decomp.tdepth2_assignment())


def test_tdepth2_tile_rejects_control_control_cnot():
    sched = Schedule([[gate("cnot", "a", "b")]])
    assert not tile_supports(tdepth2_tile(), sched, decomp.tdepth2_assignment())


def test_and_tile_shape():
    tile = and_tile()
    assert tile.role_count("and_result") == 1
    assert tile.is_planar()


def test_and_tile_supports_measurement_based_toffoli():
    assert tile_supports(and_tile(), decomp.toffoli_mb(), decomp.and_tile_assignment())


def test_tile_supports_vacuous():
    assert tile_supports(toffoli_cube(), Schedule(), {})


def test_tile_supports_unassigned_wire():
    with pytest.raises(ValueError):
        tile_supports(toffoli_cube(), Schedule([[gate("h", "mystery")]]), {})


def test_place_fits():
    layout = Layout(grid(2, 3, 8))
    place(layout, toffoli_cube(), Site(0, 0, 0))
    assert len(layout.placements) == 1


def test_place_out_of_bounds():
    layout = Layout(grid(2, 3, 8))
    with pytest.raises(PlacementError):
        place(layout, toffoli_cube(), Site(0, 0, 7))


def test_place_tower_of_four():
    layout = Layout(grid(2, 3, 8))
    for k in range(4):
        place(layout, toffoli_cube(), Site(0, 0, k), orientation=k % 2)
    assert len(layout.placements) == 4


def test_place_role_conflict():
    layout = Layout(grid(2, 3, 8))
    place(layout, toffoli_cube(), Site(0, 0, 0))
    with pytest.raises(PlacementError):
        place(layout, toffoli_cube(), Site(0, 0, 0))


def test_placement_rotation_preserves_sticks():
    tile = toffoli_cube()
    for orientation in range(24):
        p = Placement(tile, Site(0, 0, 0), orientation)
        roles = p.vertex_roles()
        assert len(roles) == 7
        coords = set(roles)
        assert all(0 <= s.x <= 1 and 0 <= s.y <= 1 and 0 <= s.z <= 1 for s in coords)


def test_queue_chain_validation():
    layout = Layout(grid(2, 3, 8))
    layout.add_queue("q", [Site(0, 2, 0), Site(0, 2, 1)])
    with pytest.raises(ValueError):
        layout.add_queue("bad", [Site(0, 2, 0), Site(0, 2, 2)])


def test_layout_json():
    layout = Layout(grid(2, 3, 8))
    place(layout, toffoli_cube(), Site(0, 0, 0))
    layout.add_queue("q", [Site(0, 2, 0)])
    payload = layout.to_json()
    assert '"lattice"' in payload and '"queues"' in payload
