"""Boundary tiling, gluing pattern and cylinder containment at s = 0."""

import pytest

from fordcr.boundary import (cylinder_check, gluing_pattern, hexagon_tiling,
                             manifold_check, pattern_serialization)

HEX1 = [(1, 3, 5), (1, 3, 11), (1, 9, 11), (1, 9, 28), (1, 20, 28),
        (1, 5, 20)]


@pytest.fixture(scope="session")
def pattern0(rep0, complexes0):
    return gluing_pattern(rep0, complexes=complexes0)


def _cyclic_eq(cycle, want):
    n = len(want)
    if len(cycle) != n:
        return False
    for direction in (1, -1):
        for off in range(n):
            if all(cycle[(off + direction * i) % n] == want[i]
                   for i in range(n)):
                return True
    return False


def test_tiling_shape(rep0, complexes0):
    tiling = hexagon_tiling(rep0, complexes=complexes0)
    assert sorted(tiling.hexagons) == [1, 2, 3, 4]
    for cyc in tiling.hexagons.values():
        assert len(cyc) == 6
        for i, a in enumerate(cyc):
            b = cyc[(i + 1) % 6]
            assert len(set(a) & set(b)) == 2
    assert len(tiling.edges) == 24


def test_hexagon_1_cycle(pattern0):
    assert _cyclic_eq(pattern0.tiling.hexagons[1], HEX1)


def test_vertex_map_examples(pattern0):
    rows = {a: b for (_, a, b) in pattern0.vertex_maps["G2^-1"]}
    assert rows[(1, 3, 5)] == (2, 3, 11)
    assert rows[(1, 3, 11)] == (2, 10, 11)
    for name, rows in pattern0.vertex_maps.items():
        assert len(rows) == 6
        assert len({b for (_, _, b) in rows}) == 6


def test_orientation_flags(pattern0):
    assert pattern0.orientation == {"G2^-1": -1, "G3^-1": -1}


def test_edge_classes(pattern0):
    assert len(pattern0.edge_classes) == 12
    for cls in pattern0.edge_classes:
        assert len(cls) == 2


def test_manifold_verdict(pattern0):
    out = manifold_check(pattern0)
    assert (out["V"], out["E"], out["F"]) == (8, 12, 4)
    assert out["euler characteristic zero"]
    assert out["orientable"]
    assert out["connected"]
    assert out["torus"]
    assert out["matches spine fixture"], out.get("diff")


def test_serialization_deterministic(pattern0, rep0, complexes0):
    again = gluing_pattern(rep0, complexes=complexes0)
    assert pattern_serialization(pattern0) == pattern_serialization(again)


def test_cylinder_certificate(rep0, model0):
    out = cylinder_check(rep0, model=model0)
    assert out["inside at samples"]
    assert out["certified segment"]
    assert all(s == -1 for s in out["signs"].values())
    assert out["boxes"] >= 1
