"""Quotient Delta-complexes of fan windows, chain complexes, homology.

A Delta-complex here is a family of simplices with ordered, pairwise
distinct vertices and order-preserving face maps; two simplices may share
the same vertex set.  Built from a fan window, the d-simplices are the
orbit classes of (d+1)-dimensional cones and the vertices are ray classes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotAComplex, NotEquidimensional, SncConditionViolated
from .fans import FanSystem, check_snc_condition, cone_orbit_classes, ray_class_index
from .linalg import Matrix, invariant_factors, rank, rational_kernel_basis


@dataclass(frozen=True)
class Simplex:
    id: int
    vertices: tuple[int, ...]  # ascending vertex ids
    faces: tuple[int, ...]  # id of the face omitting each vertex position


@dataclass(frozen=True)
class DeltaComplex:
    """Per-dimension simplex lists; index d of `simplices` is the dimension."""

    simplices: tuple[tuple[Simplex, ...], ...]

    def __post_init__(self):
        for d, level in enumerate(self.simplices):
            for i, s in enumerate(level):
                if s.id != i:
                    raise ValueError("simplex ids must be positional")
                if len(s.vertices) != d + 1:
                    raise ValueError("vertex count != dimension + 1")
                if list(s.vertices) != sorted(set(s.vertices)):
                    raise ValueError("vertices must be distinct and ascending")
                if d == 0:
                    if s.faces != ():
                        raise ValueError("0-simplices have no faces")
                    continue
                if len(s.faces) != d + 1:
                    raise ValueError("need one face per omitted vertex")
                for t, fid in enumerate(s.faces):
                    face = self.simplices[d - 1][fid]
                    expected = s.vertices[:t] + s.vertices[t + 1:]
                    if face.vertices != expected:
                        raise ValueError(
                            f"face {fid} of simplex {s.id} (dim {d}) has wrong vertices"
                        )

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def count(self, d: int) -> int:
        if 0 <= d <= self.dim:
            return len(self.simplices[d])
        return 0

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * self.count(d) for d in range(self.dim + 1))


def from_top_simplices(tops: Sequence[Sequence[int]]) -> DeltaComplex:
    """Build a Delta-complex from top vertex tuples, gluing faces by vertex set.

    Lower simplices are unique per vertex set, so this cannot express two
    glued edges with equal endpoints below the top dimension; it is a test
    and fixture convenience, not a general constructor.
    """
    if not tops:
        raise ValueError("need at least one top simplex")
    dims = {len(t) - 1 for t in tops}
    if len(dims) != 1:
        raise ValueError("top simplices must be equidimensional")
    top_dim = dims.pop()
    by_dim: list[dict[tuple[int, ...], int]] = [dict() for _ in range(top_dim)]
    for t in tops:
        vs = tuple(t)
        if list(vs) != sorted(set(vs)):
            raise ValueError("vertices must be distinct and ascending")
        for d in range(top_dim):
            for sub in itertools.combinations(vs, d + 1):
                by_dim[d].setdefault(sub, None)
    for d in range(top_dim):
        for i, key in enumerate(sorted(by_dim[d])):
            by_dim[d][key] = i
    levels: list[tuple[Simplex, ...]] = []
    for d in range(top_dim):
        level = []
        for key in sorted(by_dim[d]):
            faces = ()
            if d > 0:
                faces = tuple(
                    by_dim[d - 1][key[:t] + key[t + 1:]] for t in range(d + 1)
                )
            level.append(Simplex(by_dim[d][key], key, faces))
        levels.append(tuple(level))
    top_level = []
    for i, t in enumerate(tops):
        vs = tuple(t)
        faces = tuple(
            by_dim[top_dim - 1][vs[:j] + vs[j + 1:]] for j in range(top_dim + 1)
        )
        top_level.append(Simplex(i, vs, faces))
    levels.append(tuple(top_level))
    return DeltaComplex(tuple(levels))


def quotient_delta_complex(fs: FanSystem, cusp: str) -> DeltaComplex:
    """Quotient complex of the fan at one cusp: simplices = cone orbit classes.

    d-simplices are orbit classes of (d+1)-dimensional cones reachable from
    the given cusp; vertices are ray classes in their global order.
    """
    report = check_snc_condition(fs)
    if not report.ok:
        raise SncConditionViolated(f"{len(report.violations)} violating cone(s)")
    rci = ray_class_index(fs)
    max_dim = max((c.dim() for c in fs.cones if c.cusp == cusp), default=0)
    if max_dim == 0:
        raise ValueError(f"no cones on cusp {cusp!r}")

    # orbit classes per cone dimension, restricted to classes touching cusp
    classes: dict[int, list[list]] = {}
    class_of_key: dict[int, dict] = {}
    for d in range(1, max_dim + 1):
        kept = [
            cls
            for cls in cone_orbit_classes(fs, d)
            if any(key[0] == cusp for key in cls)
        ]
        classes[d] = kept
        class_of_key[d] = {key: i for i, cls in enumerate(kept) for key in cls}

    # vertex order: ascending global ray class index
    vertex_class = []
    for cls in classes[1]:
        key = cls[0]
        vertex_class.append(rci[(key[0], key[1][0])])
    order = sorted(range(len(vertex_class)), key=lambda i: vertex_class[i])
    vid_of_rayclass = {
        vertex_class[i]: rank_ for rank_, i in enumerate(order)
    }

    levels: list[list[Simplex]] = [[] for _ in range(max_dim)]
    simplex_id: dict[tuple[int, int], int] = {}  # (cone dim, class idx) -> id
    for d in range(1, max_dim + 1):
        for ci, cls in enumerate(classes[d]):
            key = cls[0]
            kcusp, rays = key
            ray_cls = [rci[(kcusp, r)] for r in rays]
            if len(set(ray_cls)) != len(ray_cls):
                raise SncConditionViolated(f"cone {key} has repeated ray classes")
            ordered = sorted(zip(ray_cls, rays))
            vertices = tuple(vid_of_rayclass[rc] for rc, _ in ordered)
            faces = ()
            if d > 1:
                face_ids = []
                for t in range(d):
                    sub = tuple(
                        sorted(r for s, (_, r) in enumerate(ordered) if s != t)
                    )
                    face_ids.append(
                        simplex_id[(d - 1, class_of_key[d - 1][(kcusp, sub)])]
                    )
                faces = tuple(face_ids)
            sid = len(levels[d - 1])
            simplex_id[(d, ci)] = sid
            levels[d - 1].append(Simplex(sid, vertices, faces))
    return DeltaComplex(tuple(tuple(level) for level in levels))


@dataclass(frozen=True)
class ChainComplexQ:
    """Rational chain complex: boundary[d] maps degree d to degree d-1."""

    dims: tuple[int, ...]  # number of simplices per degree
    boundary: tuple[Matrix, ...]  # boundary[d], d >= 1; boundary[0] is zero map

    def __post_init__(self):
        for d in range(1, len(self.dims)):
            m = self.boundary[d]
            if m.shape != (self.dims[d - 1], self.dims[d]):
                raise ValueError(f"boundary {d} has shape {m.shape}")
        for d in range(2, len(self.dims)):
            if not (self.boundary[d - 1] * self.boundary[d]).is_zero():
                raise NotAComplex(f"boundary {d-1} o boundary {d} != 0")

    @property
    def top(self) -> int:
        return len(self.dims) - 1


def boundary_matrices(dc: DeltaComplex) -> ChainComplexQ:
    """Boundary of a d-simplex: sum over omitted positions j=1..d+1 of
    (-1)^(j-1) times the corresponding face."""
    dims = tuple(dc.count(d) for d in range(dc.dim + 1))
    boundaries: list[Matrix] = [Matrix.zeros(0, dims[0])]
    for d in range(1, dc.dim + 1):
        rows = [[0] * dims[d] for _ in range(dims[d - 1])]
        for s in dc.simplices[d]:
            for j, fid in enumerate(s.faces):
                rows[fid][s.id] += (-1) ** j
        boundaries.append(Matrix(rows, cols=dims[d]))
    return ChainComplexQ(dims, tuple(boundaries))


def homology_dims(cc: ChainComplexQ) -> list[int]:
    """Rational Betti numbers beta_0 .. beta_top."""
    betti = []
    for d in range(len(cc.dims)):
        if d == 0:
            ker = cc.dims[0]
        else:
            ker = cc.dims[d] - rank(cc.boundary[d])
        img = rank(cc.boundary[d + 1]) if d + 1 < len(cc.dims) else 0
        betti.append(ker - img)
    return betti


def integral_homology(cc: ChainComplexQ) -> list[tuple[int, list[int]]]:
    """Diagnostic: (free rank, torsion coefficients) per degree, via SNF."""
    out = []
    for d in range(len(cc.dims)):
        if d == 0:
            ker = cc.dims[0]
        else:
            ker = cc.dims[d] - rank(cc.boundary[d])
        if d + 1 < len(cc.dims):
            factors = invariant_factors(cc.boundary[d + 1])
        else:
            factors = []
        out.append((ker - len(factors), [f for f in factors if f > 1]))
    return out


@dataclass(frozen=True)
class PseudomanifoldReport:
    closed: bool
    oriented: bool
    fundamental_class: tuple[tuple[int, int], ...] | None  # (top id, sign)


def pseudomanifold_report(dc: DeltaComplex) -> PseudomanifoldReport:
    """Closedness, orientability and the fundamental class of the top level.

    Requires equidimensionality: every simplex must be an iterated face of
    a top-dimensional simplex.
    """
    top = dc.dim
    reachable: set[tuple[int, int]] = set()
    frontier = [(top, s.id) for s in dc.simplices[top]]
    reachable.update(frontier)
    while frontier:
        d, sid = frontier.pop()
        if d == 0:
            continue
        for fid in dc.simplices[d][sid].faces:
            if (d - 1, fid) not in reachable:
                reachable.add((d - 1, fid))
                frontier.append((d - 1, fid))
    for d in range(top + 1):
        for s in dc.simplices[d]:
            if (d, s.id) not in reachable:
                raise NotEquidimensional(f"simplex {s.id} of dim {d} has no coface")

    if top == 0:
        # a discrete set: closed, oriented, fundamental class exists iff single point
        chain = tuple((s.id, 1) for s in dc.simplices[0])
        return PseudomanifoldReport(True, True, chain)

    incidences: dict[int, list[tuple[int, int]]] = {}
    for s in dc.simplices[top]:
        for j, fid in enumerate(s.faces):
            incidences.setdefault(fid, []).append((s.id, (-1) ** j))
    closed = all(
        len(incidences.get(f.id, [])) == 2 for f in dc.simplices[top - 1]
    )
    if not closed:
        return PseudomanifoldReport(False, False, None)

    # propagate compatible orientations across shared codimension-1 faces
    signs: dict[int, int] = {}
    oriented = True
    for start in range(dc.count(top)):
        if start in signs:
            continue
        signs[start] = 1
        queue = [start]
        while queue and oriented:
            cur = queue.pop()
            for fid, inc in incidences.items():
                (a, sa), (b, sb) = inc
                if a == b:
                    if sa + sb != 0:
                        oriented = False
                        break
                    continue
                if cur not in (a, b):
                    continue
                other, so, sc = (b, sb, sa) if cur == a else (a, sa, sb)
                want = -signs[cur] * sc * so
                if other in signs:
                    if signs[other] != want:
                        oriented = False
                        break
                else:
                    signs[other] = want
                    queue.append(other)
    if not oriented:
        return PseudomanifoldReport(True, False, None)

    chain = [Fraction(signs[i]) for i in range(dc.count(top))]
    cc = boundary_matrices(dc)
    image = cc.boundary[top] * Matrix([[c] for c in chain], cols=1)
    if not image.is_zero():
        return PseudomanifoldReport(True, False, None)
    if signs[0] < 0:
        signs = {i: -s for i, s in signs.items()}
    fclass = tuple((i, signs[i]) for i in range(dc.count(top)))
    return PseudomanifoldReport(True, True, fclass)


def fundamental_class_vector(dc: DeltaComplex) -> Matrix:
    """Fundamental class as a column vector; raises if the complex lacks one."""
    rep = pseudomanifold_report(dc)
    if rep.fundamental_class is None:
        raise ValueError("complex is not a closed oriented pseudomanifold")
    return Matrix([[s] for _, s in rep.fundamental_class], cols=1)


def collapse_map(dc: DeltaComplex) -> dict[int, dict[int, int]]:
    """Map to the simplicial collapse: simplices with equal vertex sets merge.

    Returns per dimension a map from simplex id to collapsed index (indices
    are positions in the sorted list of distinct vertex tuples).  Bijective
    on vertices by construction.
    """
    out: dict[int, dict[int, int]] = {}
    for d in range(dc.dim + 1):
        keys = sorted({s.vertices for s in dc.simplices[d]})
        index = {k: i for i, k in enumerate(keys)}
        out[d] = {s.id: index[s.vertices] for s in dc.simplices[d]}
    return out


# -- JSON ---------------------------------------------------------------------


def delta_complex_to_dict(dc: DeltaComplex) -> dict:
    return {
        "simplices": [
            [
                {"id": s.id, "vertices": list(s.vertices), "faces": list(s.faces)}
                for s in level
            ]
            for level in dc.simplices
        ]
    }


def homology_report(dc: DeltaComplex) -> dict:
    cc = boundary_matrices(dc)
    rep = pseudomanifold_report(dc)
    return {
        "betti": homology_dims(cc),
        "closed": rep.closed,
        "oriented": rep.oriented,
        "fundamental_class": (
            None
            if rep.fundamental_class is None
            else [{"id": i, "sign": s} for i, s in rep.fundamental_class]
        ),
    }


def kernel_dim(m: Matrix) -> int:
    return m.cols - rank(m)


__all__ = [
    "Simplex",
    "DeltaComplex",
    "from_top_simplices",
    "quotient_delta_complex",
    "ChainComplexQ",
    "boundary_matrices",
    "homology_dims",
    "integral_homology",
    "PseudomanifoldReport",
    "pseudomanifold_report",
    "fundamental_class_vector",
    "collapse_map",
    "delta_complex_to_dict",
    "homology_report",
]
