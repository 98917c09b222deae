"""Smoke tests: figures render from real face data and are valid SVG."""

from fordcr.boundary import hexagon_tiling
from fordcr.plots import arc_polyline, boundary_figure, face_figure


def test_arc_polylines_cover_triangle(complexes0):
    face = complexes0[1].classifications[3].face
    for arc in face.arcs:
        runs = arc_polyline(face, arc)
        assert runs, arc.carrier
        for run in runs:
            assert len(run) > 1
            for u, v in run:
                assert -0.51 <= u <= 0.51 and -0.51 <= v <= 0.51


def test_face_figure_writes_svg(tmp_path, complexes0):
    out = face_figure(complexes0[1], tmp_path / "side1.svg")
    text = open(out).read()
    assert text.lstrip().startswith("<?xml")
    assert "</svg>" in text


def test_boundary_figure_writes_svg(tmp_path, rep0, complexes0):
    tiling = hexagon_tiling(rep0, complexes=complexes0)
    out = boundary_figure(tiling, tmp_path / "hex.svg")
    text = open(out).read()
    assert "</svg>" in text
