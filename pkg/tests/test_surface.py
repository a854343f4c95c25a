import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tsurf import tsf
from tsurf.construct import build_family_q, build_kn, build_wedge_max, build_wedge_min, load_table
from tsurf.errors import InconsistentSurface, ParseError, ValidationFailed
from tsurf.geom import Polygon
from tsurf.surface import SideRef, TranslationSurface, gauss_bonnet_defect
from tsurf.triangulation import triangulate

from .conftest import parallelogram_torus

SQ = Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])


def kinds(s):
    return {v.kind for v in s.validate().violations}


def test_square_torus_valid(square_torus):
    assert square_torus.validate().ok


def test_not_antiparallel():
    s = TranslationSurface.from_pairs([SQ], [((0, 0), (0, 1)), ((0, 2), (0, 3))])
    assert "not-antiparallel" in kinds(s)


def test_unmatched_side():
    s = TranslationSurface.from_pairs([SQ, SQ], [((0, 0), (1, 2)), ((0, 2), (1, 0)), ((0, 1), (0, 3))])
    assert kinds(s) == {"unmatched"}
    assert len(s.validate().violations) == 2


def test_length_mismatch():
    R = Polygon([(0, 0), (2, 0), (2, 1), (0, 1)])
    s = TranslationSurface.from_pairs([SQ, R], [((0, 0), (1, 2)), ((0, 2), (1, 0)), ((0, 1), (0, 3)), ((1, 1), (1, 3))])
    assert "length-mismatch" in kinds(s)


def test_non_involution_and_self_pair():
    s = TranslationSurface([SQ], {(0, 0): (0, 2), (0, 2): (0, 0), (0, 1): (0, 3), (0, 3): (0, 3)})
    assert {"non-involution"} <= kinds(s)
    s2 = TranslationSurface([SQ], {(0, 0): (0, 0), (0, 1): (0, 3), (0, 3): (0, 1), (0, 2): (0, 2)})
    assert "self-paired" in kinds(s2)


def test_disconnected():
    pairs = [((0, 0), (0, 2)), ((0, 1), (0, 3)), ((1, 0), (1, 2)), ((1, 1), (1, 3))]
    s = TranslationSurface.from_pairs([SQ, SQ.translated(SQ.vertices[2] * 3)], pairs)
    assert kinds(s) == {"disconnected"}


def test_clockwise_polygon_rejected():
    cw = Polygon([(0, 0), (0, 1), (1, 1), (1, 0)])
    s = TranslationSurface.from_pairs([cw], [((0, 0), (0, 2)), ((0, 1), (0, 3))])
    assert "non-ccw" in kinds(s)


def test_invalid_surface_has_no_topology():
    s = TranslationSurface.from_pairs([SQ], [((0, 0), (0, 1)), ((0, 2), (0, 3))])
    with pytest.raises(ValidationFailed):
        s.genus()


def test_square_torus_topology(square_torus):
    (cp,) = square_torus.cone_points
    assert cp.kind == "marked" and math.isclose(cp.total_angle, 2 * math.pi)
    assert square_torus.euler_characteristic() == 0
    assert square_torus.genus() == 1
    assert square_torus.area() == 1


def test_l_shape_single_six_pi_point():
    s = load_table("l3").surface()
    (cp,) = s.cone_points
    assert cp.kind == "singular" and math.isclose(cp.total_angle, 6 * math.pi)
    assert s.genus() == 2


def test_octagon_genus(octagon):
    assert octagon.genus() == 2


def test_kn5_classes_and_area():
    s, _ = build_kn(5)
    spectrum = sorted(cp.total_angle for cp in s.cone_points)
    assert len(spectrum) == 15
    assert all(math.isclose(a, 2 * math.pi) for a in spectrum[:10])
    assert all(math.isclose(a, 6 * math.pi) for a in spectrum[10:])
    assert s.genus() == 6
    assert math.isclose(s.area(), 10.0)


def test_equilateral_torus_area():
    s = load_table("sigma3").surface()
    assert math.isclose(s.area(), math.sqrt(3) / 2)


def test_triangle_counts(square_torus, octagon):
    assert len(triangulate(square_torus)) == 2
    assert len(triangulate(octagon)) == 6
    assert len(triangulate(build_kn(5)[0])) == 50


def test_triangulation_gluing_consistent():
    s, _ = build_kn(5)
    tri = s.triangulation
    for t in range(len(tri)):
        for e in range(3):
            t2, e2 = tri.nbr[t][e]
            assert tri.nbr[t2][e2] == (t, e)
            # shared edge coincides after translation
            a = tri.pts[t][e]
            b = tri.pts[t2][(e2 + 1) % 3] + tri.delta[t][e]
            assert a.approx(b)
            assert (tri.delta[t][e] + tri.delta[t2][e2]).norm() < 1e-12


def test_triangulation_handles_straight_vertex():
    R = Polygon([(0, 0), (1, 0), (2, 0), (2, 1), (0, 1)])
    top = Polygon([(0, 1), (2, 1), (2, 2), (1, 2), (0, 2)])
    # bottom halves glue to the top's two upper halves, long top side to the long bottom of the other
    pairs = [((0, 0), (1, 3)), ((0, 1), (1, 2)), ((0, 2), (0, 4)), ((0, 3), (1, 0)), ((1, 1), (1, 4))]
    s = TranslationSurface.from_pairs([R, top], pairs)
    assert s.validate().ok
    tri = triangulate(s)
    assert len(tri) == 6
    assert abs(gauss_bonnet_defect(s)) < 1e-9


def test_odd_euler_characteristic_rejected():
    # a valid-looking pairing is impossible to make non-orientable with translations,
    # so exercise the guard directly
    s = parallelogram_torus((1, 0), (0, 1))
    s.__dict__["cone_points"] = s.cone_points + s.cone_points[:1]
    with pytest.raises(InconsistentSurface):
        s.genus()


def test_tsf_round_trip(tmp_path):
    s, _ = build_wedge_min(10)
    p = tmp_path / "s.tsf"
    tsf.write(s, p)
    back = tsf.read(p)
    assert back.pairing == s.pairing
    assert back.polygons == s.polygons
    assert tsf.dumps(back) == tsf.dumps(s)


@pytest.mark.parametrize(
    "text",
    ["", "tsf 2\n", "tsf 1\nv 0 0\n", "tsf 1\npolygon 0\nv 0\n", "tsf 1\npolygon 1\nv 0 0\nv 1 0\nv 0 1\n",
     "tsf 1\npolygon 0\nv 0 0\nv 1 0\nv 0 1\npair 0:0 0:x\n", "tsf 1\nbogus\n"],
)
def test_tsf_parse_errors(text):
    with pytest.raises(ParseError):
        tsf.loads(text)


def test_tsf_comments_and_blank_lines():
    text = "# hello\ntsf 1\n\npolygon 0  # sq\nv 0 0\nv 1 0\nv 1 1\nv 0 1\npair 0:0 0:2\npair 0:1 0:3\n"
    assert tsf.loads(text).genus() == 1


SURFACES = [
    lambda: parallelogram_torus((1, 0), (0.3, 1.1)),
    lambda: build_wedge_max(5)[0],
    lambda: build_wedge_max(6)[0],
    lambda: build_wedge_min(11)[0],
    lambda: build_family_q(3, 2)[0],
    lambda: build_kn(5)[0],
    lambda: load_table("l3").surface(),
]


@pytest.mark.parametrize("make", SURFACES)
def test_gauss_bonnet(make):
    assert abs(gauss_bonnet_defect(make())) < 1e-7


@pytest.mark.parametrize("make", SURFACES)
def test_classes_partition_corners(make):
    s = make()
    seen = [c for cp in s.cone_points for c in cp.corners]
    assert len(seen) == len(set(seen)) == sum(len(p) for p in s.polygons)


@given(st.integers(0, len(SURFACES) - 1), st.randoms(use_true_random=False))
def test_genus_invariant_under_relabeling(i, rnd):
    s = SURFACES[i]()
    perm = list(range(len(s.polygons)))
    rnd.shuffle(perm)
    shifts = [rnd.randrange(len(p)) for p in s.polygons]
    t = s.reindexed(perm).rotated_vertices([shifts[perm.index(j)] for j in range(len(perm))])
    assert t.validate().ok
    assert t.genus() == s.genus()
    assert t.cone_spectrum() == s.cone_spectrum()


@given(
    st.floats(0.5, 2), st.floats(0.5, 2), st.floats(math.pi / 6, 5 * math.pi / 6),
)
def test_parallelogram_tori_are_tori(a, b, ang):
    s = parallelogram_torus((a, 0), (b * math.cos(ang), b * math.sin(ang)))
    assert s.validate().ok
    assert s.genus() == 1
    assert abs(gauss_bonnet_defect(s)) < 1e-9


def test_sides_listing(square_torus):
    assert list(square_torus.sides()) == [SideRef(0, i) for i in range(4)]
    assert square_torus.pairs() == [(SideRef(0, 0), SideRef(0, 2)), (SideRef(0, 1), SideRef(0, 3))]
