import json

import numpy as np
import pytest

from quandle_cocycles import KnotDiagram, QuandleRing, SpecError, build, parse_knot_spec, parse_upoly, twist_ring, xi_ring
from quandle_cocycles.invariants import state_sum
from quandle_cocycles.knots import (brute_force_colorings, build_torus, build_twist, colored_chain2, colored_chain3,
                                    enumerate_colorings, extend_shadow)
from quandle_cocycles.chains import is_cycle

DIHEDRAL3 = QuandleRing(3, (1, 1))  # t = -1
DIHEDRAL5 = QuandleRing(5, (1, 1))
TREFOIL_PD = [[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]]


def test_unknot():
    D = KnotDiagram.unknot()
    assert len(D.crossings) == 0 and D.n_faces == 2
    assert len(enumerate_colorings(D, xi_ring(2, 3))) == 4


@pytest.mark.parametrize("m", [3, 5, -3, 4])
def test_torus_shape(m):
    D = build_torus(m)
    assert len(D.crossings) == abs(m)
    assert D.n_faces == abs(m) + 2
    assert set(D.signs) == {1 if m > 0 else -1}


def test_twist_shape():
    D = build_twist(2)
    assert len(D.crossings) == 6
    assert D.n_arcs == 6
    assert D.n_faces == 8


@pytest.mark.parametrize("spec,ring,count", [
    ("torus:2,3", DIHEDRAL3, 9),
    ("torus:2,5", DIHEDRAL5, 25),
    ("torus:2,5", DIHEDRAL3, 3),
    ("twist:1", DIHEDRAL5, 25),   # figure eight, determinant 5
    ("twist:1", DIHEDRAL3, 3),
    ("twist:2", DIHEDRAL3, 9),    # 6_1, determinant 9
])
def test_fox_coloring_counts(spec, ring, count):
    assert len(enumerate_colorings(parse_knot_spec(spec), ring)) == count


@pytest.mark.parametrize("spec", ["torus:2,3", "twist:1", "braid:1,-2,1,-2"])
def test_linear_solver_matches_brute_force(spec):
    D = parse_knot_spec(spec)
    ring = xi_ring(2, 3)
    fast = {c.colors for c in enumerate_colorings(D, ring)}
    slow = {c.colors for c in brute_force_colorings(D, ring)}
    assert fast == slow
    assert all(c.is_valid() for c in enumerate_colorings(D, ring))


def test_from_pd_trefoil():
    D = KnotDiagram.from_pd(TREFOIL_PD, "3_1")
    assert len(D.crossings) == 3 and D.n_faces == 5
    assert abs(sum(D.signs)) == 3
    assert len(enumerate_colorings(D, DIHEDRAL3)) == 9


def test_pd_euler_check():
    with pytest.raises(ValueError):
        KnotDiagram.from_oriented_pd([[1, 2, 2, 1], [3, 4, 4, 3]], [1, 1])


def test_file_spec(tmp_path):
    path = tmp_path / "k.json"
    path.write_text(json.dumps({"pd": TREFOIL_PD}))
    D = parse_knot_spec(f"file:{path}")
    assert len(enumerate_colorings(D, DIHEDRAL3)) == 9


def test_bad_specs():
    for s in ["torus:3,4", "twist:0", "knot:1", "file:/nonexistent.json"]:
        with pytest.raises(SpecError):
            parse_knot_spec(s)


def test_colored_chains_are_cycles():
    ring = xi_ring(2, 5)
    D = build_torus(5)
    rng = np.random.default_rng(0)
    cols = enumerate_colorings(D, ring)
    for k in rng.choice(len(cols), 10, replace=False):
        col = cols[k]
        assert is_cycle(colored_chain2(col))
        sc = extend_shadow(D, col, (0, ring.random(rng)))
        assert is_cycle(colored_chain3(sc))


def test_shadow_extension_is_consistent_everywhere():
    ring = twist_ring(5, 2)
    D = build_twist(2)
    for col in list(enumerate_colorings(D, ring))[:20]:
        for base in (ring.zero, ring.t):
            sc = extend_shadow(D, col, (3, base))
            assert sc.face_colors[3] == base


def test_color_vector_levels():
    ring = xi_ring(2, 3)
    D = build_torus(3)
    col = enumerate_colorings(D, ring)[5]
    a, b = col.color_vector(0)
    # one full twist of a 2-braid with 3 crossings swaps the vector 3 times
    assert col.color_vector(3) == (a, b)
    assert len(D.levels) == 3


def test_twist_mirror_pinned():
    # the opposite crossing convention fails to reproduce a stored row
    ring = twist_ring(7, 5)
    f = build(ring, (1, 7, 0))
    printed = parse_upoly(ring, r"16807+33614\ ( U^{(3t+3)}+U^{(5t+5)}+U^{(6t+6)})")
    assert state_sum(build_twist(5), f) == printed
    assert state_sum(build_twist(5, twist_kind=1, clasp_kind=-1), f) != printed
