import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from neutral_modes.domain import DomainSpec
from neutral_modes.errors import InvalidParams, IoFailure
from neutral_modes.holomorphic import parse
from neutral_modes.meshgen import export, fmt, grid_points, read_obj, read_ply, read_sidecar, sample
from neutral_modes.weierstrass import WeierstrassSurface, position_at

from pairs import ANNULUS, pair


@pytest.fixture(scope="module")
def small(bour1):
    return sample(bour1, grid=(3, 4))


@pytest.fixture(scope="module")
def goursat_mesh():
    return sample(pair("goursat-2"), grid=(9, 12))


def test_counts(small):
    assert len(small.vertices) == 12
    assert len(small.faces) == 2 * 3
    assert small.grid_shape == (3, 4)


def test_enneper_origin():
    s = WeierstrassSurface(parse("const(1)"), DomainSpec.disk(1), 0)
    mesh = sample(s, grid=(5, 5))
    v0 = next(v for v in mesh.vertices if v.w == 0)
    assert v0.position == pytest.approx([0, 0, 0], abs=1e-12)
    assert v0.normal == pytest.approx([0, 0, -1])
    # corners of the bounding box lie outside the disk
    assert len(mesh.vertices) == 25 - len(mesh.excluded) and mesh.excluded


def test_goursat_ring(goursat_mesh):
    ring = [v for v in goursat_mesh.vertices if abs(abs(v.w) - 1) < 1e-12]
    assert len(ring) == 12
    assert all(abs(v.W_d - 36 / 25) <= 1e-9 for v in ring)


def test_positions_match_direct_integration(bour1):
    mesh = sample(bour1, grid=(4, 5), theta_range=math.pi)
    for v in mesh.vertices:
        assert v.position == pytest.approx(position_at(bour1, v.w), abs=1e-9)


def test_theta_beyond_two_pi_walks_to_next_sheet(bour1):
    mesh = sample(bour1, grid=(2, 3), theta_range=4 * math.pi)
    first, twice = mesh.vertices[0], mesh.vertices[2]
    assert first.w == pytest.approx(twice.w)
    assert twice.position - first.position == pytest.approx([0, -2 * math.pi, 0], abs=1e-9)


def test_excluded_vertices_not_in_faces():
    s = WeierstrassSurface(parse("const(1)"), DomainSpec.annulus(0.5, 2).with_exclusions([1.25], 0.3), -1)
    mesh = sample(s, grid=(5, 9))
    assert mesh.excluded
    n = len(mesh.vertices)
    assert all(0 <= k < n for f in mesh.faces for k in f)
    assert len(mesh.faces) < 4 * 8


def test_normals_unit(goursat_mesh):
    for v in goursat_mesh.vertices:
        assert np.linalg.norm(v.normal) == pytest.approx(1, abs=1e-8)


def test_grid_validation():
    with pytest.raises(InvalidParams):
        grid_points(ANNULUS, (1, 4))


def test_obj_export(tmp_path, small):
    files = export(small, "obj", tmp_path / "m.obj")
    text = files[0].read_text().splitlines()
    assert sum(ln.startswith("v ") for ln in text) == 12
    assert sum(ln.startswith("vn ") for ln in text) == 12
    v, vn, f = read_obj(files[0])
    assert v == pytest.approx(small.positions(), abs=1e-6)
    assert f == small.faces
    side = read_sidecar(files[1])
    assert side["K"] == pytest.approx(small.field_array("K"), rel=1e-8)
    assert files[1].read_text().splitlines()[0] == "index,K,Ws,Wd,Wb"


def test_ply_export_round_trip(tmp_path, goursat_mesh):
    path = export(goursat_mesh, "ply", tmp_path / "m.ply")[0]
    head = path.read_text().split("end_header")[0]
    props = [ln.split()[-1] for ln in head.splitlines() if ln.startswith("property float")]
    assert props == ["x", "y", "z", "nx", "ny", "nz", "K", "Ws", "Wd", "Wb"]
    data, faces = read_ply(path)
    assert data["K"] == pytest.approx(goursat_mesh.field_array("K"), rel=1e-6)
    assert np.stack([data["x"], data["y"], data["z"]], 1) == pytest.approx(goursat_mesh.positions(), abs=1e-6)
    assert faces == goursat_mesh.faces


def test_export_deterministic(tmp_path, goursat_mesh):
    a = export(goursat_mesh, "ply", tmp_path / "a.ply")[0].read_bytes()
    b = export(sample(pair("goursat-2"), grid=(9, 12)), "ply", tmp_path / "b.ply")[0].read_bytes()
    assert a == b


def test_export_errors(tmp_path, small):
    with pytest.raises(InvalidParams):
        export(small, "stl", tmp_path / "m.stl")
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(IoFailure):
        export(small, "ply", blocker / "m.ply")


@given(st.floats(allow_nan=False, allow_infinity=False, width=64))
def test_fmt_round_trip(x):
    assert float(fmt(x)) == pytest.approx(x, rel=1e-8, abs=0)
    assert len(fmt(x).replace("-", "").replace(".", "").split("e")[0]) <= 9
