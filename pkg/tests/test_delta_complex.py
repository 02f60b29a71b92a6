"""Quotient Delta-complexes, boundary maps, homology, pseudomanifolds."""

import pytest

from fanhodge.delta_complex import (
    ChainComplexQ,
    DeltaComplex,
    Simplex,
    boundary_matrices,
    collapse_map,
    from_top_simplices,
    fundamental_class_vector,
    homology_dims,
    integral_homology,
    pseudomanifold_report,
    quotient_delta_complex,
)
from fanhodge.errors import NotAComplex, NotEquidimensional, SncConditionViolated
from fanhodge.fans import hilbert_cusp_window, smooth_subdivide, two_division_subdivide
from fanhodge.fixtures import hilbert_window, hilbert_window_cubed
from fanhodge.linalg import Matrix


def two_vertex_circle() -> DeltaComplex:
    """Two vertices a < b, two edges both running a -> b."""
    verts = (Simplex(0, (0,), ()), Simplex(1, (1,), ()))
    edges = (Simplex(0, (0, 1), (1, 0)), Simplex(1, (0, 1), (1, 0)))
    return DeltaComplex((verts, edges))


def test_two_vertex_circle_boundary():
    dc = two_vertex_circle()
    cc = boundary_matrices(dc)
    # both edges: boundary = [b] - [a]
    assert cc.boundary[1].to_lists() == [[-1, -1], [1, 1]]
    assert homology_dims(cc) == [1, 1]
    assert dc.euler_characteristic() == 0


def test_quotient_complex_of_subdivided_window():
    fs = smooth_subdivide(two_division_subdivide(hilbert_window()))
    dc = quotient_delta_complex(fs, "F")
    assert [dc.count(d) for d in (0, 1)] == [2, 2]
    assert homology_dims(boundary_matrices(dc)) == [1, 1]


def test_quotient_complex_rejects_violating_window():
    with pytest.raises(SncConditionViolated):
        quotient_delta_complex(hilbert_window(), "F")


def test_three_vertex_circle_from_coarse_identification():
    dc = quotient_delta_complex(hilbert_window_cubed(), "F")
    assert [dc.count(d) for d in (0, 1)] == [3, 3]
    cc = boundary_matrices(dc)
    assert homology_dims(cc) == [1, 1]
    assert integral_homology(cc) == [(1, []), (1, [])]


def test_pseudomanifold_circles():
    for dc in (
        two_vertex_circle(),
        quotient_delta_complex(
            smooth_subdivide(two_division_subdivide(hilbert_window())), "F"
        ),
        quotient_delta_complex(hilbert_window_cubed(), "F"),
    ):
        rep = pseudomanifold_report(dc)
        assert rep.closed and rep.oriented
        assert rep.fundamental_class is not None
        signs = dict(rep.fundamental_class)
        assert set(signs) == set(range(dc.count(dc.dim)))
        assert all(s in (-1, 1) for s in signs.values())
        v = fundamental_class_vector(dc)
        cc = boundary_matrices(dc)
        assert (cc.boundary[dc.dim] * v).is_zero()


def test_open_interval_is_not_closed():
    dc = from_top_simplices([(0, 1), (1, 2)])
    rep = pseudomanifold_report(dc)
    assert not rep.closed and rep.fundamental_class is None


def test_nonorientable_edge_pair():
    # one edge glued to itself head-to-head cannot happen with distinct
    # ordered vertices, but two edges with the same orientation pattern on a
    # single shared face list produce an unorientable incidence
    verts = (Simplex(0, (0,), ()),)
    with pytest.raises(ValueError):
        # an edge needs two distinct vertices: the complex forbids loops
        DeltaComplex((verts, (Simplex(0, (0, 0), (0, 0)),)))


def test_not_equidimensional_detected():
    verts = tuple(Simplex(i, (i,), ()) for i in range(3))
    edges = (Simplex(0, (0, 1), (1, 0)),)  # vertex 2 has no coface
    with pytest.raises(NotEquidimensional):
        pseudomanifold_report(DeltaComplex((verts, edges)))


def test_chain_complex_validation():
    with pytest.raises(NotAComplex):
        ChainComplexQ(
            (1, 1, 1),
            (Matrix.zeros(0, 1), Matrix([[1]]), Matrix([[1]])),
        )


def test_integral_torsion_diagnostic():
    cc = ChainComplexQ((1, 1), (Matrix.zeros(0, 1), Matrix([[2]])))
    assert integral_homology(cc) == [(0, [2]), (0, [])]


def test_euler_equals_alternating_betti_on_fixtures():
    for dc in (
        two_vertex_circle(),
        from_top_simplices([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]),
        quotient_delta_complex(hilbert_window_cubed(), "F"),
    ):
        betti = homology_dims(boundary_matrices(dc))
        assert dc.euler_characteristic() == sum(
            (-1) ** d * b for d, b in enumerate(betti)
        )


def test_sphere_boundary_of_tetrahedron():
    dc = from_top_simplices([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
    assert homology_dims(boundary_matrices(dc)) == [1, 0, 1]
    rep = pseudomanifold_report(dc)
    assert rep.closed and rep.oriented


def test_collapse_map_merges_equal_vertex_sets():
    dc = two_vertex_circle()
    cm = collapse_map(dc)
    assert cm[0] == {0: 0, 1: 1}
    assert cm[1] == {0: 0, 1: 0}  # the two edges collapse together
    assert set(cm[0].values()) == {0, 1}  # surjective (here bijective) on vertices


def test_subdivision_invariance_of_betti():
    fine = smooth_subdivide(two_division_subdivide(hilbert_window()))
    dc_fine = quotient_delta_complex(fine, "F")
    dc_coarse = quotient_delta_complex(hilbert_window_cubed(), "F")
    assert homology_dims(boundary_matrices(dc_fine)) == homology_dims(
        boundary_matrices(dc_coarse)
    )
