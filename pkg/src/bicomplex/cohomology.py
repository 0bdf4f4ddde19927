"""The cohomologies of a bounded double complex, all computed exactly.

For a complex A with differentials d1 (right) and d2 (up):

  * dolbeault (column):            H^q of each column under d2
  * conjugate_dolbeault (row):     H^p of each row under d1
  * de_rham (total):               H^k of the totalization under d1 + d2
  * bott_chern:                    (ker d1 & ker d2) / im(d1 d2)
  * aeppli:                        ker(d1 d2) / (im d1 + im d2)

plus the spectral sequence of the column filtration on the total complex
(page 1 is the column cohomology, the limit is the associated graded of de
Rham cohomology) and its row analogue.

Tables store only nonzero dimensions.  The column and row page-1 entries are
recomputed by an independent route (rank arithmetic on columns and rows), so
the spectral-sequence machinery and the direct formulas check each other in
the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Mapping

from .complexes import BiDegree, DoubleComplex, Morphism, transpose_complex
from .scalars import ONE as _O, ZERO as _Z
from .linalg import (
    Basis,
    Matrix,
    canonical_span,
    image_basis,
    induced_subquotient_map,
    kernel_basis,
    rank,
    subquotient_dim,
    subspace_intersection,
    subspace_sum,
)

TableKind = Literal["dolbeault", "conjugate_dolbeault", "de_rham", "bott_chern", "aeppli"]

BIDEGREE_KINDS = ("dolbeault", "conjugate_dolbeault", "bott_chern", "aeppli")


@dataclass(frozen=True)
class CohomologyTable:
    """Dimensions of one cohomology; keyed by (p, q), or by k for de_rham."""

    kind: str
    entries: Mapping

    def __post_init__(self):
        object.__setattr__(
            self, "entries", {k: int(v) for k, v in self.entries.items() if v}
        )

    def at(self, key) -> int:
        return self.entries.get(key, 0)

    def total(self) -> int:
        return sum(self.entries.values())

    def by_degree(self) -> dict[int, tuple[int, ...]]:
        """Per total degree, the multiset of entries (sorted), zeros dropped.

        Only meaningful for bidegree-indexed kinds.
        """
        if self.kind == "de_rham":
            raise ValueError("by_degree needs a bidegree-indexed table")
        out: dict[int, list[int]] = {}
        for (p, q), v in self.entries.items():
            out.setdefault(p + q, []).append(v)
        return {k: tuple(sorted(vs)) for k, vs in sorted(out.items())}


@dataclass(frozen=True)
class SpectralSequenceResult:
    """Pages of a (bounded, hence degenerating) spectral sequence.

    pages holds (r, table) from r = 1 up to the page where no further
    differential can be nonzero; degeneration_page is the first r whose
    dimensions already equal those of e_infinity.
    """

    direction: str
    pages: tuple[tuple[int, dict[BiDegree, int]], ...]
    degeneration_page: int
    e_infinity: dict[BiDegree, int]

    def page(self, r: int) -> dict[BiDegree, int]:
        if r < 1:
            raise ValueError("pages start at r = 1")
        for rr, table in self.pages:
            if rr == r:
                return dict(table)
        return dict(self.e_infinity)

    @property
    def last_computed_page(self) -> int:
        return self.pages[-1][0]

    def page_table(self, r: int) -> CohomologyTable:
        return CohomologyTable(f"e{r}", self.page(r))


# -- direct rank formulas -------------------------------------------------------


def dolbeault(a: DoubleComplex) -> CohomologyTable:
    """Column cohomology by rank arithmetic: dim - rank(out) - rank(in)."""
    entries = {}
    for (p, q), n in a.dims.items():
        entries[(p, q)] = n - rank(a.d2_at(p, q)) - rank(a.d2_at(p, q - 1))
    return CohomologyTable("dolbeault", entries)


def conjugate_dolbeault(a: DoubleComplex) -> CohomologyTable:
    """Row cohomology, same formula along d1."""
    entries = {}
    for (p, q), n in a.dims.items():
        entries[(p, q)] = n - rank(a.d1_at(p, q)) - rank(a.d1_at(p - 1, q))
    return CohomologyTable("conjugate_dolbeault", entries)


class Totalization:
    """The total complex: T^k = sum of A^{p,q} with p + q = k, d = d1 + d2.

    Components are ordered by increasing p, which makes the column filtration
    F^p (components with first index >= p) a span of trailing coordinates.
    """

    def __init__(self, a: DoubleComplex):
        self.complex = a
        comps: dict[int, list[BiDegree]] = {}
        for p, q in a.bidegrees():
            comps.setdefault(p + q, []).append((p, q))
        self.components = {k: sorted(v) for k, v in comps.items()}
        self.offsets: dict[int, dict[BiDegree, int]] = {}
        self.dims: dict[int, int] = {}
        for k, parts in self.components.items():
            off = {}
            pos = 0
            for pq in parts:
                off[pq] = pos
                pos += a.dim(*pq)
            self.offsets[k] = off
            self.dims[k] = pos
        self._d: dict[int, Matrix] = {}

    def degrees(self) -> list[int]:
        return sorted(self.components)

    def dim(self, k: int) -> int:
        return self.dims.get(k, 0)

    def differential(self, k: int) -> Matrix:
        if k in self._d:
            return self._d[k]
        a = self.complex
        entries = {}
        src_off = self.offsets.get(k, {})
        tgt_off = self.offsets.get(k + 1, {})
        for (p, q), co in src_off.items():
            for block, tgt in ((a.d1_at(p, q), (p + 1, q)), (a.d2_at(p, q), (p, q + 1))):
                if tgt in tgt_off and not block.is_zero():
                    ro = tgt_off[tgt]
                    for (i, j), v in block.entries.items():
                        entries[(i + ro, j + co)] = v
        m = Matrix(self.dim(k + 1), self.dim(k), entries)
        self._d[k] = m
        return m

    def filtration_columns(self, k: int, p: int) -> list[int]:
        """Coordinate indices of F^p inside T^k."""
        out = []
        for pq, off in self.offsets.get(k, {}).items():
            if pq[0] >= p:
                out.extend(range(off, off + self.complex.dim(*pq)))
        return sorted(out)

    def filtration_basis(self, k: int, p: int) -> Basis:
        n = self.dim(k)
        vectors = []
        for j in self.filtration_columns(k, p):
            v = [_Z] * n
            v[j] = _O
            vectors.append(tuple(v))
        return Basis(n, tuple(vectors))

    def embed_block(self, f: Morphism, k: int, other: "Totalization") -> Matrix:
        """The degree-k block of the totalized morphism."""
        entries = {}
        src_off = self.offsets.get(k, {})
        tgt_off = other.offsets.get(k, {})
        for pq, co in src_off.items():
            if pq not in tgt_off:
                block = f.block_at(*pq)
                if not block.is_zero():
                    raise ValueError("morphism leaves the target support")
                continue
            ro = tgt_off[pq]
            for (i, j), v in f.block_at(*pq).entries.items():
                entries[(i + ro, j + co)] = v
        return Matrix(other.dim(k), self.dim(k), entries)


def de_rham(a: DoubleComplex) -> CohomologyTable:
    tot = Totalization(a)
    entries = {}
    for k in tot.degrees():
        entries[k] = tot.dim(k) - rank(tot.differential(k)) - rank(tot.differential(k - 1))
    return CohomologyTable("de_rham", entries)


def betti_vector(a: DoubleComplex) -> tuple[int, ...]:
    """(b_0, ..., b_max); degrees below 0 are reported only if present."""
    table = de_rham(a)
    if not table.entries:
        return ()
    lo = min(0, min(table.entries))
    hi = max(table.entries)
    return tuple(table.at(k) for k in range(lo, hi + 1))


def euler_characteristic(a: DoubleComplex) -> int:
    return sum((-1) ** ((p + q) % 2) * n for (p, q), n in a.dims.items())


# -- Bott-Chern and Aeppli ------------------------------------------------------


def bott_chern_spaces(a: DoubleComplex, p: int, q: int) -> tuple[Basis, Basis]:
    """(cycles, boundaries) whose quotient is Bott-Chern cohomology at (p, q)."""
    z = subspace_intersection(kernel_basis(a.d1_at(p, q)), kernel_basis(a.d2_at(p, q)))
    b = image_basis(a.d1_at(p - 1, q) @ a.d2_at(p - 1, q - 1))
    return z, b


def aeppli_spaces(a: DoubleComplex, p: int, q: int) -> tuple[Basis, Basis]:
    """(cycles, boundaries) whose quotient is Aeppli cohomology at (p, q)."""
    z = kernel_basis(a.d1_at(p, q + 1) @ a.d2_at(p, q))
    b = subspace_sum(image_basis(a.d1_at(p - 1, q)), image_basis(a.d2_at(p, q - 1)))
    return z, b


def bott_chern(a: DoubleComplex) -> CohomologyTable:
    entries = {}
    for p, q in a.bidegrees():
        z, b = bott_chern_spaces(a, p, q)
        entries[(p, q)] = subquotient_dim(z, b)
    return CohomologyTable("bott_chern", entries)


def aeppli(a: DoubleComplex) -> CohomologyTable:
    entries = {}
    for p, q in a.bidegrees():
        z, b = aeppli_spaces(a, p, q)
        entries[(p, q)] = subquotient_dim(z, b)
    return CohomologyTable("aeppli", entries)


# -- the spectral sequence -------------------------------------------------------


class _ColumnSpectralSequence:
    """Pages of the column-filtration spectral sequence via subquotients.

    With F the column filtration on the total complex and n = p + q,

        Z_r^{p,q} = F^p T^n  intersect  d^{-1}(F^{p+r} T^{n+1})
        E_r^{p,q} = Z_r^{p,q} / (Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2})

    with Z_0^{p,q} = F^p T^n.  All spaces are realized as coordinate-vector
    bases inside T^n, so everything reduces to kernels and ranks.  Bounded
    support means no differential d_r can be nonzero once r exceeds
    min(width, height + 1), which caps the page list.
    """

    def __init__(self, a: DoubleComplex):
        self.a = a
        self.tot = Totalization(a)
        self._z: dict[tuple[int, int, int], Basis] = {}

    def z_basis(self, r: int, p: int, q: int) -> Basis:
        key = (r, p, q)
        if key in self._z:
            return self._z[key]
        k = p + q
        n = self.tot.dim(k)
        cols = self.tot.filtration_columns(k, p)
        if r == 0 or not cols:
            basis = self.tot.filtration_basis(k, p)
        else:
            d = self.tot.differential(k)
            outside = [
                j
                for pq, off in self.tot.offsets.get(k + 1, {}).items()
                if pq[0] < p + r
                for j in range(off, off + self.a.dim(*pq))
            ]
            restricted = Matrix(
                len(outside),
                len(cols),
                {
                    (oi, ci): d.entries[(i, j)]
                    for oi, i in enumerate(sorted(outside))
                    for ci, j in enumerate(cols)
                    if (i, j) in d.entries
                },
            )
            coords = kernel_basis(restricted)
            vectors = []
            for w in coords.vectors:
                v = [_Z] * n
                for ci, j in enumerate(cols):
                    if w[ci]:
                        v[j] = w[ci]
                vectors.append(tuple(v))
            basis = Basis(n, tuple(vectors))
        self._z[key] = basis
        return basis

    def page_dimension(self, r: int, p: int, q: int) -> int:
        z = self.z_basis(r, p, q)
        if z.dim == 0:
            return 0
        stay = self.z_basis(r - 1, p + 1, q - 1)
        arriving = self.z_basis(r - 1, p - r + 1, q + r - 2)
        d_prev = self.tot.differential(p + q - 1)
        boundary_vectors = list(stay.vectors) + [
            d_prev.apply(v) for v in arriving.vectors
        ]
        b = canonical_span(boundary_vectors, z.ambient_dim)
        # b is contained in z by d^2 = 0 and the filtration being d-stable.
        return z.dim - b.dim


def frolicher(a: DoubleComplex, direction: str = "column") -> SpectralSequenceResult:
    """All pages from E_1 until no further differential can act.

    direction="column" starts from column (Dolbeault-style) cohomology,
    direction="row" from row cohomology; the row case is computed on the
    transposed complex and transposed back.
    """
    if direction not in ("column", "row"):
        raise ValueError("direction must be 'column' or 'row'")
    if direction == "row":
        res = frolicher(transpose_complex(a), "column")
        flip = lambda table: {(q, p): v for (p, q), v in table.items()}
        return SpectralSequenceResult(
            "row",
            tuple((r, flip(t)) for r, t in res.pages),
            res.degeneration_page,
            flip(res.e_infinity),
        )
    if not a.dims:
        return SpectralSequenceResult("column", ((1, {}),), 1, {})
    p_min, p_max, q_min, q_max = a.window
    last = max(1, min(p_max - p_min, q_max - q_min + 1) + 1)
    ss = _ColumnSpectralSequence(a)
    pages = []
    for r in range(1, last + 1):
        table = {}
        for p, q in a.bidegrees():
            d = ss.page_dimension(r, p, q)
            if d:
                table[(p, q)] = d
        pages.append((r, table))
    e_inf = pages[-1][1]
    degeneration = next(r for r, t in pages if t == e_inf)
    return SpectralSequenceResult("column", tuple(pages), degeneration, dict(e_inf))


# -- induced maps -----------------------------------------------------------------


def induced_cohomology_map(f: Morphism, kind: str) -> dict:
    """Matrices of the map induced by f on the chosen cohomology.

    Keys are bidegrees, or plain degrees for kind="de_rham".  Coset bases are
    chosen deterministically, so induced matrices compose functorially.
    """
    if kind == "de_rham":
        tot_s = Totalization(f.source)
        tot_t = Totalization(f.target)
        out = {}
        for k in sorted(set(tot_s.degrees()) | set(tot_t.degrees())):
            z_s = kernel_basis(tot_s.differential(k))
            b_s = image_basis(tot_s.differential(k - 1))
            z_t = kernel_basis(tot_t.differential(k))
            b_t = image_basis(tot_t.differential(k - 1))
            block = tot_s.embed_block(f, k, tot_t)
            out[k] = induced_subquotient_map(block, z_s, b_s, z_t, b_t)
        return out
    spaces = {
        "dolbeault": lambda c, p, q: (kernel_basis(c.d2_at(p, q)), image_basis(c.d2_at(p, q - 1))),
        "conjugate_dolbeault": lambda c, p, q: (kernel_basis(c.d1_at(p, q)), image_basis(c.d1_at(p - 1, q))),
        "bott_chern": bott_chern_spaces,
        "aeppli": aeppli_spaces,
    }
    if kind not in spaces:
        raise ValueError(f"unknown cohomology kind {kind!r}")
    build = spaces[kind]
    out = {}
    for pq in sorted(set(f.source.dims) | set(f.target.dims)):
        z_s, b_s = build(f.source, *pq)
        z_t, b_t = build(f.target, *pq)
        out[pq] = induced_subquotient_map(f.block_at(*pq), z_s, b_s, z_t, b_t)
    return out


def table(a: DoubleComplex, kind: str) -> CohomologyTable:
    """Dispatch by kind name; spectral pages are not table kinds (use frolicher)."""
    funcs = {
        "dolbeault": dolbeault,
        "conjugate_dolbeault": conjugate_dolbeault,
        "de_rham": de_rham,
        "bott_chern": bott_chern,
        "aeppli": aeppli,
    }
    if kind not in funcs:
        raise ValueError(f"unknown cohomology kind {kind!r}")
    return funcs[kind](a)
