import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tsurf import saddle
from tsurf.construct import build_family_p, build_kn, build_kn_minus, build_wedge_max, build_wedge_min, load_table
from tsurf.errors import BudgetExceeded, InvalidParameter
from tsurf.graph import complete, isomorphic, wedge

from .conftest import canon, lattice_oracle, parallelogram_torus


def hol(conns):
    return sorted(canon(c.holonomy) for c in conns)


def test_square_torus_length_one(square_torus):
    assert hol(saddle.enumerate_connections(square_torus, 1)) == [(0.0, 1.0), (1.0, 0.0)]


def test_square_torus_diagonals(square_torus):
    got = hol(saddle.enumerate_connections(square_torus, 1.5))
    assert got == sorted([(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, -1.0)])


def test_square_torus_systole(square_torus):
    m, conns = saddle.systole(square_torus)
    assert m == 1 and len(conns) == 2


def test_equilateral_torus_systole():
    m, conns = saddle.systole(load_table("sigma3").surface())
    assert math.isclose(m, 1) and len(conns) == 3


def test_kn5_systole():
    s, _ = build_kn(5)
    m, conns = saddle.systole(s)
    assert abs(m - 0.5) < 1e-9
    # one seam per glued pair of flaps: as many connections as K_5 has edges
    assert len(conns) == 10
    assert len(saddle.enumerate_connections(s, 0.5)) == 10


def test_kn5_graph():
    sg = saddle.systolic_graph(build_kn(5)[0])
    assert sg.graph.n_vertices == 5
    assert sg.graph.degrees() == [4] * 5
    assert isomorphic(sg.graph, complete(5)) is not None


def test_square_torus_graph(square_torus, octagon):
    assert saddle.systolic_graph(square_torus).graph == wedge(2)
    assert saddle.systolic_graph(octagon).graph == wedge(4)


def test_output_sorted_and_canonical():
    s, _ = build_wedge_min(8)
    conns = saddle.enumerate_connections(s, 2.0)
    assert conns == sorted(conns, key=saddle.SaddleConnection.sort_key)
    for c in conns:
        h = c.holonomy
        assert h.x > 1e-9 or (abs(h.x) <= 1e-9 and h.y >= 0)
        assert math.isclose(c.length, h.norm())


def test_interior_clear_everywhere():
    for s in (build_kn(5)[0], build_kn_minus(5, [(0, 1)])[0], build_wedge_min(12)[0]):
        for c in saddle.enumerate_connections(s, 1.3):
            assert saddle.interior_clear(s, c)


def test_marked_points_transparent_when_singular_exists():
    s, _ = build_kn(5)
    elig = set(s.eligible)
    assert all(s.cone_points[i].is_singular for i in elig)
    for c in saddle.enumerate_connections(s, 1.0):
        assert c.start in elig and c.end in elig


def test_glued_sides_realised():
    s, _ = build_family_p(3, 2)
    hs = set(hol(saddle.enumerate_connections(s, 1.0)))
    for a, _b in s.pairs():
        assert canon(s.side_vector(a)) in hs


def test_budget_exceeded_carries_partial(square_torus):
    with pytest.raises(BudgetExceeded) as exc:
        saddle.enumerate_connections(square_torus, 20, budget=50)
    assert exc.value.partial_result
    assert all(isinstance(c, saddle.SaddleConnection) for c in exc.value.partial)


def test_budget_env(monkeypatch, square_torus):
    monkeypatch.setenv("TSF_BUDGET", "5")
    with pytest.raises(BudgetExceeded):
        saddle.enumerate_connections(square_torus, 10)
    monkeypatch.setenv("TSF_BUDGET", "nope")
    with pytest.raises(InvalidParameter):
        saddle.enumerate_connections(square_torus, 1)


@pytest.mark.parametrize("L", [0, -1, math.inf, math.nan])
def test_bad_length(square_torus, L):
    with pytest.raises(InvalidParameter):
        saddle.enumerate_connections(square_torus, L)


def test_deterministic(octagon):
    a = saddle.enumerate_connections(octagon, 3.0)
    b = saddle.enumerate_connections(octagon, 3.0)
    assert [(c.start, c.end, c.holonomy) for c in a] == [(c.start, c.end, c.holonomy) for c in b]


@given(
    st.floats(0.5, 2), st.floats(0.5, 2), st.floats(math.pi / 6, 5 * math.pi / 6), st.floats(1.0, 5.0),
)
def test_torus_matches_lattice(a, b, ang, factor):
    u, v = (a, 0.0), (b * math.cos(ang), b * math.sin(ang))
    s = parallelogram_torus(u, v)
    L = factor * min(a, b)
    got = hol(saddle.enumerate_connections(s, L))
    want = sorted(lattice_oracle(u, v, L))
    # vectors within rounding of the cutoff may fall either way
    edge = [w for w in want if abs(math.hypot(*w) - L) < 1e-6]
    assert [w for w in got if w not in edge] == [w for w in want if w not in edge]


@given(st.floats(0.2, 5.0), st.sampled_from(["kn5", "wmax5", "wmin10", "p31"]))
def test_scaling_equivariance(lam, which):
    s = {
        "kn5": lambda: build_kn(5)[0],
        "wmax5": lambda: build_wedge_max(5)[0],
        "wmin10": lambda: build_wedge_min(10)[0],
        "p31": lambda: build_family_p(3, 1)[0],
    }[which]()
    g0 = saddle.systolic_graph(s)
    g1 = saddle.systolic_graph(s.scaled(lam))
    assert math.isclose(g1.systole, lam * g0.systole, rel_tol=1e-9)
    assert isomorphic(g0.graph, g1.graph) is not None


def test_skewed_torus_random_seeded():
    rnd = random.Random(7)
    for _ in range(5):
        u = (rnd.uniform(0.5, 2), 0.0)
        ang = rnd.uniform(math.pi / 6, 5 * math.pi / 6)
        r = rnd.uniform(0.5, 2)
        v = (r * math.cos(ang), r * math.sin(ang))
        s = parallelogram_torus(u, v)
        L = 5 * min(u[0], r)
        assert len(saddle.enumerate_connections(s, L)) == len(lattice_oracle(u, v, L))
