"""Weight spectral sequence of an SNC compactification over formal strata data.

The input is combinatorial: a list of boundary strata with declared pure
Hodge tables per cohomology degree, plus Gysin matrices between adjacent
strata.  The engine owns the E1 assembly, the alternating signs of the
differential, the E2 (= weight graded) dimensions, and the residue-kernel
description of the weight filtration on the top Hodge piece.

A stratum with index set I of size m lives in codimension m; the ambient
space itself is the unique stratum with empty index set.  Several strata
may share one index set (disconnected intersections).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import NotAComplex, SncConditionViolated
from .fans import (
    FanSystem,
    check_snc_condition,
    cone_orbit_classes,
    ray_class_index,
)
from .linalg import Matrix, rank, rational_kernel_basis
from .mhs import MixedHSTable, PureHS, tate_twist

GysinKey = tuple[str, str, int, int, int]  # (src id, dst id, degree, p, q)


@dataclass(frozen=True)
class Stratum:
    """One connected boundary stratum (or the ambient space, index_set=())."""

    id: str
    index_set: tuple[str, ...]
    cohomology: tuple[tuple[int, PureHS], ...] = ()

    def __init__(
        self,
        id: str,
        index_set: Sequence[str],
        cohomology: Mapping[int, PureHS] = (),
    ):
        object.__setattr__(self, "id", id)
        object.__setattr__(self, "index_set", tuple(index_set))
        object.__setattr__(
            self, "cohomology", tuple(sorted(dict(cohomology).items()))
        )

    @property
    def codim(self) -> int:
        return len(self.index_set)

    def h(self, degree: int, p: int, q: int) -> int:
        for deg, hs in self.cohomology:
            if deg == degree:
                return hs.h(p, q)
        return 0


@dataclass(frozen=True)
class StrataComplex:
    n: int
    components: tuple[str, ...]
    strata: tuple[Stratum, ...]
    gysin: tuple[tuple[GysinKey, Matrix], ...] = ()

    def __init__(
        self,
        n: int,
        components: Sequence[str],
        strata: Sequence[Stratum],
        gysin: Mapping[GysinKey, Matrix] = (),
    ):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "components", tuple(components))
        object.__setattr__(self, "strata", tuple(strata))
        object.__setattr__(self, "gysin", tuple(sorted(dict(gysin).items())))
        self._validate()

    def _validate(self):
        comp = set(self.components)
        if len(comp) != len(self.components):
            raise ValueError("duplicate component labels")
        ids = {}
        for s in self.strata:
            if s.id in ids:
                raise ValueError(f"duplicate stratum id {s.id!r}")
            ids[s.id] = s
            if list(s.index_set) != sorted(set(s.index_set)):
                raise ValueError(f"index set of {s.id!r} not sorted/distinct")
            if not set(s.index_set) <= comp:
                raise ValueError(f"unknown component in {s.id!r}")
            m = s.codim
            for deg, hs in s.cohomology:
                if not 0 <= deg <= 2 * (self.n - m):
                    raise ValueError(
                        f"degree {deg} out of range for codim {m} stratum {s.id!r}"
                    )
                if hs.weight != deg:
                    raise ValueError(
                        f"stratum {s.id!r} degree {deg} carries weight {hs.weight}"
                    )
        for (src, dst, deg, p, q), m in dict(self.gysin).items():
            if src not in ids or dst not in ids:
                raise ValueError(f"gysin references unknown stratum {src!r}/{dst!r}")
            s, t = ids[src], ids[dst]
            if p + q != deg:
                raise ValueError("gysin bidegree does not match degree")
            omitted = set(s.index_set) - set(t.index_set)
            if len(t.index_set) != s.codim - 1 or len(omitted) != 1:
                raise ValueError(
                    f"gysin {src!r}->{dst!r} is not a codimension-1 inclusion"
                )
            want = (t.h(deg + 2, p + 1, q + 1), s.h(deg, p, q))
            if m.shape != want:
                raise ValueError(
                    f"gysin {src!r}->{dst!r} deg {deg} ({p},{q}): "
                    f"shape {m.shape}, declared dims {want}"
                )

    def stratum(self, sid: str) -> Stratum:
        for s in self.strata:
            if s.id == sid:
                return s
        raise KeyError(sid)

    def strata_of_codim(self, m: int) -> list[Stratum]:
        return [s for s in self.strata if s.codim == m]

    def gysin_block(self, src: str, dst: str, degree: int, p: int, q: int) -> Matrix | None:
        for key, m in self.gysin:
            if key == (src, dst, degree, p, q):
                return m
        return None


def _omitted_position(src: Stratum, dst: Stratum) -> int:
    """1-based position in src.index_set of the component missing from dst."""
    omitted = (set(src.index_set) - set(dst.index_set)).pop()
    return src.index_set.index(omitted) + 1


@dataclass(frozen=True)
class BidegreeComplex:
    """The (P,Q)-graded piece of the E1 page, as a chain of columns over m.

    Column m collects the h^{P-m,Q-m} parts of degree (P+Q-2m) cohomology of
    the codimension-m strata (normalized bidegree after the Tate twist by m).
    `maps[m]` is the signed Gysin sum column m -> column m-1 (this is -d1).
    """

    P: int
    Q: int
    basis: tuple[tuple[tuple[str, int], ...], ...]  # per m: (stratum id, index)
    maps: tuple[Matrix, ...]  # maps[m]: column m -> column m-1; maps[0] unused

    def dim(self, m: int) -> int:
        if 0 <= m < len(self.basis):
            return len(self.basis[m])
        return 0

    def map_out(self, m: int) -> Matrix:
        if 1 <= m < len(self.maps):
            return self.maps[m]
        return Matrix.zeros(self.dim(m - 1), self.dim(m))


def bidegree_complex(sc: StrataComplex, P: int, Q: int) -> BidegreeComplex:
    """Assemble the signed Gysin complex in one normalized bidegree."""
    top = min(P, Q, sc.n)
    basis: list[tuple[tuple[str, int], ...]] = []
    for m in range(top + 1):
        deg = P + Q - 2 * m
        col: list[tuple[str, int]] = []
        if 0 <= deg:
            for s in sorted(sc.strata_of_codim(m), key=lambda s: s.id):
                d = s.h(deg, P - m, Q - m)
                col.extend((s.id, i) for i in range(d))
        basis.append(tuple(col))
    offsets: list[dict[str, int]] = []
    for col in basis:
        off: dict[str, int] = {}
        for pos, (sid, i) in enumerate(col):
            off.setdefault(sid, pos)
        offsets.append(off)
    maps: list[Matrix] = [Matrix.zeros(0, 0)]
    for m in range(1, top + 1):
        deg = P + Q - 2 * m
        rows = [[Fraction(0)] * len(basis[m]) for _ in range(len(basis[m - 1]))]
        for src in sc.strata_of_codim(m):
            sdim = src.h(deg, P - m, Q - m)
            if sdim == 0:
                continue
            for dst in sc.strata_of_codim(m - 1):
                if not set(dst.index_set) <= set(src.index_set):
                    continue
                if len(set(src.index_set) - set(dst.index_set)) != 1:
                    continue
                block = sc.gysin_block(src.id, dst.id, deg, P - m, Q - m)
                if block is None:
                    if dst.h(deg + 2, P - m + 1, Q - m + 1) != 0:
                        raise ValueError(
                            f"missing gysin block {src.id!r}->{dst.id!r} "
                            f"degree {deg} bidegree ({P-m},{Q-m})"
                        )
                    continue
                sign = (-1) ** (_omitted_position(src, dst) - 1)
                roff = offsets[m - 1][dst.id]
                coff = offsets[m][src.id]
                for i in range(block.rows):
                    for j in range(block.cols):
                        rows[roff + i][coff + j] += sign * Fraction(block[i, j])
        maps.append(Matrix(rows, cols=len(basis[m])))
    for m in range(2, top + 1):
        if not (maps[m - 1] * maps[m]).is_zero():
            raise NotAComplex(
                f"signed Gysin maps do not compose to zero at bidegree ({P},{Q})"
            )
    return BidegreeComplex(P, Q, tuple(basis), tuple(maps))


def _bidegrees_for_antidiagonal(sc: StrataComplex, w: int) -> list[tuple[int, int]]:
    """Normalized bidegrees (P,Q) with P+Q=w that carry any dimension."""
    seen = set()
    for s in sc.strata:
        m = s.codim
        deg = w - 2 * m
        for d, hs in s.cohomology:
            if d != deg:
                continue
            for (p, q), dim in hs.hodge_numbers:
                if dim:
                    seen.add((p + m, q + m))
    return sorted(seen)


@dataclass(frozen=True)
class SpectralPage:
    """E1 page data for one cohomology degree k, with per-bidegree differentials.

    `entries` maps (p,q)=(-m,k+m) to the Tate-normalized Hodge table of
    H^{k-m}(D(m))(-m).  `complexes` holds the signed-Gysin chain complex of
    every normalized bidegree on the antidiagonals k..min(2k,2n); the d1
    differential out of entry (-m,k+m) in bidegree (P,Q) is
    -complexes[(P,Q)].map_out(m).
    """

    k: int
    n: int
    entries: tuple[tuple[tuple[int, int], PureHS], ...]
    complexes: tuple[tuple[tuple[int, int], BidegreeComplex], ...] = ()

    def entry(self, p: int, q: int) -> PureHS:
        for pq, hs in self.entries:
            if pq == (p, q):
                return hs
        return PureHS(q - p)

    def complex_at(self, P: int, Q: int) -> BidegreeComplex | None:
        for pq, bc in self.complexes:
            if pq == (P, Q):
                return bc
        return None


def e1_page(sc: StrataComplex, k: int) -> SpectralPage:
    """Entry (-m, k+m) = Tate twist by m of degree (k-m) cohomology of D(m)."""
    entries = []
    for m in range(0, min(k, sc.n) + 1):
        deg = k - m
        total = PureHS(k + m)
        for s in sorted(sc.strata_of_codim(m), key=lambda s: s.id):
            for d, hs in s.cohomology:
                if d == deg:
                    total = total + tate_twist(hs, m)
        entries.append(((-m, k + m), total))
    return SpectralPage(k=k, n=sc.n, entries=tuple(entries))


def d1(sc: StrataComplex, page: SpectralPage) -> SpectralPage:
    """Attach the signed Gysin differentials; verifies d1 o d1 = 0."""
    complexes = []
    for w in range(page.k, page.k + min(page.k, sc.n) + 1):
        for P, Q in _bidegrees_for_antidiagonal(sc, w):
            complexes.append(((P, Q), bidegree_complex(sc, P, Q)))
    return SpectralPage(
        k=page.k, n=page.n, entries=page.entries, complexes=tuple(complexes)
    )


def e2_page(page: SpectralPage) -> MixedHSTable:
    """E2 = E-infinity dimensions: the weight graded Hodge table of H^k."""
    if not page.complexes:
        raise ValueError("attach differentials with d1() first")
    graded = []
    for (p, q), _ in page.entries:
        m = -p
        w = q  # = k + m
        table: dict[tuple[int, int], int] = {}
        for (P, Q), bc in page.complexes:
            if P + Q != w:
                continue
            out = bc.map_out(m)
            into = bc.map_out(m + 1)
            dim = (bc.dim(m) - rank(out)) - rank(into)
            if dim:
                table[(P, Q)] = dim
        graded.append(PureHS(w, table))
    return MixedHSTable(page.k, [h for h in graded if not h.is_zero()])


def weight_graded(sc: StrataComplex, k: int) -> MixedHSTable:
    """E1 -> d1 -> E2 in one call."""
    return e2_page(d1(sc, e1_page(sc, k)))


# -- weight filtration on the top Hodge piece -------------------------------


@dataclass(frozen=True)
class FnFiltrationReport:
    """Per-weight data for W on F^n H^n: graded dims, cumulative dims, kernels."""

    n: int
    graded: tuple[tuple[int, int], ...]  # (m, dim Gr^W_{n+m} F^n), m >= 1
    cumulative: tuple[tuple[int, int], ...]  # (m, dim W_{n+m}F^n / W_n F^n)
    kernels: tuple[tuple[int, Matrix, tuple[tuple[str, int], ...]], ...]
    # per m with nonzero source: kernel basis (columns) and its row basis

    def graded_dim(self, m: int) -> int:
        return dict(self.graded).get(m, 0)

    def kernel_basis(self, m: int):
        for mm, basis, rows in self.kernels:
            if mm == m:
                return basis, rows
        return None

    def residue_projection(self, m: int, stratum_id: str) -> Matrix:
        """Rows of the kernel basis belonging to one codim-m stratum."""
        found = self.kernel_basis(m)
        if found is None:
            raise KeyError(f"no kernel data at weight offset {m}")
        basis, rows = found
        idx = [i for i, (sid, _) in enumerate(rows) if sid == stratum_id]
        return basis.submatrix(idx, range(basis.cols))


def weight_filtration_on_FnHn(sc: StrataComplex) -> FnFiltrationReport:
    """Gr^W_{n+m} F^n = kernel of the signed residue/Gysin map out of the
    canonical-form layer of the codimension-m strata."""
    n = sc.n
    graded = []
    kernels = []
    for m in range(1, n + 1):
        bc = bidegree_complex(sc, n, m)
        src_dim = bc.dim(m)
        if src_dim == 0:
            graded.append((m, 0))
            continue
        basis = rational_kernel_basis(bc.map_out(m))
        graded.append((m, basis.cols))
        kernels.append((m, basis, bc.basis[m]))
    cumulative = []
    running = 0
    for m, d in graded:
        running += d
        cumulative.append((m, running))
    return FnFiltrationReport(
        n=n,
        graded=tuple(graded),
        cumulative=tuple(cumulative),
        kernels=tuple(kernels),
    )


# -- synthetic strata complexes from fan windows -----------------------------


@dataclass(frozen=True)
class CuspStrataAnnotation:
    """Formal dimension of the canonical-form space per annotated cusp."""

    dims: tuple[tuple[str, int], ...]  # (cusp name, dim H^0(K) of Y-bar)
    ambient_dim: int | None = None

    def __init__(self, dims: Mapping[str, int], ambient_dim: int | None = None):
        object.__setattr__(self, "dims", tuple(sorted(dict(dims).items())))
        object.__setattr__(self, "ambient_dim", ambient_dim)


def annotate_from_fans(fs: FanSystem, ann: CuspStrataAnnotation) -> StrataComplex:
    """Synthetic strata complex whose signed Gysin complex is the boundary map
    of the quotient complex tensored with the annotated dimension.

    Strata are orbit classes of top-dimensional and codimension-1 cones; the
    top layer carries the canonical-form dimension d per stratum, the
    codimension-1 layer the matching (n-t+1,1) layer, and every incidence is
    an identity block (the chain-complex signs are supplied by assembly).
    """
    report = check_snc_condition(fs)
    if not report.ok:
        raise SncConditionViolated(f"{len(report.violations)} violating cone(s)")
    rci = ray_class_index(fs)
    dims = dict(ann.dims)
    tops = {
        cusp: max((c.dim() for c in fs.cones if c.cusp == cusp), default=0)
        for cusp in dims
    }
    t_values = set(tops.values())
    if len(t_values) != 1:
        raise ValueError("annotated cusps must share one top cone dimension")
    t = t_values.pop()
    if t < 1:
        raise ValueError("annotated cusps carry no cones")
    n = ann.ambient_dim if ann.ambient_dim is not None else t
    if n < t:
        raise ValueError("ambient dimension below top cone dimension")

    n_classes = max(rci.values()) + 1
    components = [f"C{j}" for j in range(n_classes)]
    strata: list[Stratum] = []
    gysin: dict[GysinKey, Matrix] = {}
    top_hs = PureHS(n - t, {(n - t, 0): 1})
    wall_hs = PureHS(n - t + 2, {(n - t + 1, 1): 1})

    for cusp in sorted(dims):
        d = dims[cusp]
        top_classes = [
            cls
            for cls in cone_orbit_classes(fs, t)
            if any(key[0] == cusp for key in cls)
        ]
        wall_classes = [
            cls
            for cls in cone_orbit_classes(fs, t - 1)
            if any(key[0] == cusp for key in cls)
        ] if t > 1 else []
        wall_index = {key: i for i, cls in enumerate(wall_classes) for key in cls}

        def index_set_of(key):
            kcusp, rays = key
            return tuple(sorted(f"C{rci[(kcusp, r)]}" for r in rays))

        wall_ids = []
        for j, cls in enumerate(wall_classes):
            sid = f"{cusp}/w{j:03d}"
            wall_ids.append(sid)
            strata.append(
                Stratum(
                    sid,
                    index_set_of(cls[0]),
                    {n - t + 2: PureHS(n - t + 2, {(n - t + 1, 1): d})} if d else {},
                )
            )
        for j, cls in enumerate(top_classes):
            sid = f"{cusp}/s{j:03d}"
            key = cls[0]
            kcusp, rays = key
            strata.append(
                Stratum(
                    sid,
                    index_set_of(key),
                    {n - t: PureHS(n - t, {(n - t, 0): d})} if d else {},
                )
            )
            if d == 0 or t == 1:
                continue
            for omit in rays:
                sub = tuple(sorted(r for r in rays if r != omit))
                wj = wall_index[(kcusp, sub)]
                gysin[(sid, wall_ids[wj], n - t, n - t, 0)] = Matrix.identity(d)
    return StrataComplex(n=n, components=components, strata=strata, gysin=gysin)


def signed_gysin_matrix(sc: StrataComplex) -> Matrix:
    """The assembled signed Gysin map out of the top canonical-form layer
    (column m = deepest populated codimension at bidegree (n, m))."""
    populated = [s.codim for s in sc.strata if s.cohomology]
    if not populated:
        return Matrix.zeros(0, 0)
    t = max(populated)
    bc = bidegree_complex(sc, sc.n, t)
    return bc.map_out(t)


# -- JSON ---------------------------------------------------------------------


def _frac_to_json(x) -> int | str:
    f = Fraction(x)
    return int(f) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _frac_from_json(x) -> Fraction:
    return Fraction(x) if not isinstance(x, str) else Fraction(*map(int, x.split("/")))


def strata_complex_to_dict(sc: StrataComplex) -> dict:
    return {
        "n": sc.n,
        "components": list(sc.components),
        "strata": [
            {
                "id": s.id,
                "index_set": list(s.index_set),
                "cohomology": {
                    str(deg): hs.to_dict() for deg, hs in s.cohomology
                },
            }
            for s in sc.strata
        ],
        "gysin": [
            {
                "src": src,
                "dst": dst,
                "degree": deg,
                "p": p,
                "q": q,
                "matrix": [[_frac_to_json(x) for x in row] for row in m.to_lists()],
            }
            for (src, dst, deg, p, q), m in sc.gysin
        ],
    }


def strata_complex_from_dict(data: dict) -> StrataComplex:
    strata = [
        Stratum(
            s["id"],
            s["index_set"],
            {int(deg): PureHS.from_dict(hs) for deg, hs in s.get("cohomology", {}).items()},
        )
        for s in data["strata"]
    ]
    gysin = {}
    for g in data.get("gysin", []):
        rows = [[_frac_from_json(x) for x in row] for row in g["matrix"]]
        ncols = len(rows[0]) if rows else 0
        gysin[(g["src"], g["dst"], g["degree"], g["p"], g["q"])] = Matrix(
            rows, cols=ncols
        )
    return StrataComplex(
        n=data["n"],
        components=data["components"],
        strata=strata,
        gysin=gysin,
    )
