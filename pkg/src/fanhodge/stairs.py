"""Admissible (p,q) regions for the Hodge numbers of open arithmetic quotients.

The region records where a Hodge number is *not excluded* by the vanishing
rules; it never asserts nonvanishing.  Steps of the staircase sit at the
corank dimensions n(1) < ... < n(r).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParams


@dataclass(frozen=True)
class CorankData:
    """Dimension data of the cusp structure: n, corank dims, boundary codim."""

    n: int
    n_seq: tuple[int, ...]
    c: int
    q_simple: bool = False

    def __post_init__(self):
        object.__setattr__(self, "n_seq", tuple(self.n_seq))
        seq = self.n_seq
        if not seq:
            raise InvalidParams("empty corank sequence")
        if seq[0] <= 0 or any(a >= b for a, b in zip(seq, seq[1:])):
            raise InvalidParams("need 0 < n(1) < ... < n(r)")
        if seq[-1] > self.n:
            raise InvalidParams("n(r) exceeds the dimension")
        if self.c < 1:
            raise InvalidParams("boundary codimension must be positive")

    @property
    def r(self) -> int:
        return len(self.n_seq)

    @property
    def tube_domain(self) -> bool:
        return self.n_seq[-1] == self.n

    def n_of(self, i: int) -> int:
        """n(i), with n(0) = 0."""
        if i == 0:
            return 0
        return self.n_seq[i - 1]

    def covering_corank(self, m: int) -> int | None:
        """The index i with n(i-1) < m <= n(i), or None when m > n(r)."""
        for i in range(1, self.r + 1):
            if self.n_of(i - 1) < m <= self.n_of(i):
                return i
        return None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "n_seq": list(self.n_seq),
            "c": self.c,
            "q_simple": self.q_simple,
            "tube_domain": self.tube_domain,
        }


@dataclass(frozen=True)
class Region:
    k: int
    admissible: frozenset[tuple[int, int]]
    rule_trace: tuple[tuple[tuple[int, int], tuple[tuple[str, bool], ...]], ...]

    def trace(self, p: int, q: int) -> dict[str, bool]:
        for pq, rules in self.rule_trace:
            if pq == (p, q):
                return dict(rules)
        raise KeyError((p, q))

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "admissible": sorted([p, q] for p, q in self.admissible),
            "trace": {
                f"{p},{q}": {rule: ok for rule, ok in rules}
                for (p, q), rules in self.rule_trace
            },
        }


def admissible_region(cd: CorankData, k: int) -> Region:
    """All (p,q) not excluded by the triangle, purity, stairs and roof rules."""
    bound = min(k, cd.n)
    admissible = set()
    trace = []
    for p in range(0, bound + 1):
        for q in range(0, bound + 1):
            rules: list[tuple[str, bool]] = []
            m = p + q - k
            rules.append(("triangle", p + q >= k))
            rules.append(("pure-bb", not (k < cd.c) or p + q == k))
            if m > 0:
                rules.append(("top-corank", m <= cd.n_of(cd.r)))
                i = cd.covering_corank(m)
                if i is not None:
                    rules.append((f"stairs-n({i})", abs(p - q) <= cd.n - cd.n_of(i)))
                rules.append(
                    ("roof", not (k < cd.n) or (p != k and q != k))
                )
            ok = all(passed for _, passed in rules)
            if ok:
                admissible.add((p, q))
            trace.append(((p, q), tuple(rules)))
    return Region(k=k, admissible=frozenset(admissible), rule_trace=tuple(trace))


# -- classical group presets --------------------------------------------------


def preset_sp(g: int) -> CorankData:
    """Sp(2g): dimension g(g+1)/2, n(i) = i(i+1)/2, boundary codimension g."""
    if g <= 1:
        raise InvalidParams("need g > 1")
    return CorankData(
        n=g * (g + 1) // 2,
        n_seq=tuple(i * (i + 1) // 2 for i in range(1, g + 1)),
        c=g,
        q_simple=True,
    )


def preset_o2n(n: int) -> CorankData:
    """O(2,n), Witt index 2: dimension n, n_seq = (1, n), codimension n-1."""
    if n < 3:
        raise InvalidParams("need n >= 3")
    return CorankData(n=n, n_seq=(1, n), c=n - 1, q_simple=True)


def preset_u(p: int, q: int) -> CorankData:
    """U(p,q), p <= q, Witt index p: dimension pq, n(i) = i^2, codim p+q-1."""
    if p < 1 or p > q:
        raise InvalidParams("need 1 <= p <= q")
    return CorankData(
        n=p * q,
        n_seq=tuple(i * i for i in range(1, p + 1)),
        c=p + q - 1,
        q_simple=True,
    )


def parse_preset(spec: str) -> CorankData:
    """Preset strings: sp:G, o2n:N, u:P,Q, custom:N;N1,..,NR;C."""
    name, _, rest = spec.partition(":")
    try:
        if name == "sp":
            return preset_sp(int(rest))
        if name == "o2n":
            return preset_o2n(int(rest))
        if name == "u":
            p, q = (int(x) for x in rest.split(","))
            return preset_u(p, q)
        if name == "custom":
            n_str, seq_str, c_str = rest.split(";")
            return CorankData(
                n=int(n_str),
                n_seq=tuple(int(x) for x in seq_str.split(",")),
                c=int(c_str),
            )
    except InvalidParams:
        raise
    except ValueError as exc:
        raise InvalidParams(f"malformed preset {spec!r}") from exc
    raise InvalidParams(f"unknown preset {name!r}")


# -- rendering ----------------------------------------------------------------


def render_region(rg: Region, fmt: str = "ascii") -> str:
    if fmt == "ascii":
        return _render_ascii(rg)
    if fmt == "svg":
        return _render_svg(rg)
    raise ValueError(f"unknown format {fmt!r}")


def _rows(rg: Region) -> list[tuple[int, list[tuple[int, int]]]]:
    """Pairs grouped by weight offset m = p+q-k, descending."""
    by_m: dict[int, list[tuple[int, int]]] = {}
    for (p, q), rules in rg.rule_trace:
        if p + q >= rg.k:
            by_m.setdefault(p + q - rg.k, []).append((p, q))
    return sorted(((m, sorted(pairs)) for m, pairs in by_m.items()), reverse=True)


def _render_ascii(rg: Region) -> str:
    rows = _rows(rg)
    if not rows:
        return "(empty grid)\n"
    xs = [p - q for _, pairs in rows for p, q in pairs]
    xmin, xmax = min(xs), max(xs)
    lines = []
    for m, pairs in rows:
        cells = {p - q: ((p, q) in rg.admissible) for p, q in pairs}
        line = "".join(
            ("*" if cells[x] else ".") if x in cells else " "
            for x in range(xmin, xmax + 1)
        )
        lines.append(f"m={m:>2} |{line}|")
    lines.append(f"      (columns: p-q from {xmin} to {xmax}; bottom row p+q={rg.k})")
    return "\n".join(lines) + "\n"


def _render_svg(rg: Region) -> str:
    rows = _rows(rg)
    cell = 20
    xs = [p - q for _, pairs in rows for p, q in pairs] or [0]
    xmin, xmax = min(xs), max(xs)
    mmax = rows[0][0] if rows else 0
    width = (xmax - xmin + 2) * cell
    height = (mmax + 2) * cell
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">'
    ]
    parts.append(
        f'<line x1="{cell//2}" y1="{(mmax+1)*cell}" x2="{width-cell//2}" '
        f'y2="{(mmax+1)*cell}" stroke="black"/>'
    )
    for m, pairs in rows:
        y = (mmax - m) * cell + cell // 2
        for p, q in sorted(pairs):
            x = (p - q - xmin) * cell + cell // 2
            if (p, q) in rg.admissible:
                parts.append(
                    f'<rect x="{x}" y="{y}" width="{cell-4}" height="{cell-4}" '
                    f'fill="steelblue"><title>p={p} q={q}</title></rect>'
                )
            else:
                parts.append(
                    f'<circle cx="{x + cell//2 - 2}" cy="{y + cell//2 - 2}" r="1.5" '
                    f'fill="gray"><title>p={p} q={q}</title></circle>'
                )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
