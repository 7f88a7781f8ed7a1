"""Arithmetic of representations of a bound quiver over a prime field.

A representation assigns to each vertex a column space F_p^d and to each
arrow a matrix (rows indexed by the target, columns by the source).  All
values are immutable; operations are pure functions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

from .errors import (DecompositionBudgetExceeded, NegativeMultiplicity,
                     NonUnitriangularHomMatrix, NotClosed, ResourceBound)
from .linalg import FMatrix, PrimeField, row_space, rref, solve_nullspace

if TYPE_CHECKING:
    from .algebra import AlgebraSpec
    from .knit import ARQuiver


class Representation:
    """A module over the instantiated algebra: one matrix per arrow plus a
    dimension vector (indexed by the quiver's vertex order)."""

    __slots__ = ("spec", "field", "dims", "maps")

    def __init__(self, spec: "AlgebraSpec", field: PrimeField,
                 dims: Sequence[int], maps: Mapping[str, FMatrix]):
        self.spec = spec
        self.field = field
        self.dims = tuple(dims)
        if len(self.dims) != len(spec.vertices) or any(d < 0 for d in self.dims):
            raise ValueError(f"bad dimension vector {dims!r}")
        index = {v: i for i, v in enumerate(spec.vertices)}
        checked = {}
        for a in spec.quiver.arrows:
            m = maps[a.id]
            want = (self.dims[index[a.target]], self.dims[index[a.source]])
            if m.shape != want:
                raise ValueError(f"arrow {a.id!r}: matrix {m.shape} != {want}")
            checked[a.id] = m
        self.maps = checked

    def dim_at(self, vertex: str) -> int:
        return self.dims[self.spec.vertices.index(vertex)]

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def dim_id(self) -> str:
        return self.spec.render_dim_id(self.dims)

    def key(self) -> tuple:
        return (self.field.p, self.dims,
                tuple(sorted((a, m.rows) for a, m in self.maps.items())))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Representation) and other.key() == self.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Representation(p={self.field.p}, dim={self.dims})"


def zero_rep(spec: "AlgebraSpec", field: PrimeField) -> Representation:
    maps = {a.id: FMatrix.zeros(field, 0, 0) for a in spec.quiver.arrows}
    return Representation(spec, field, (0,) * len(spec.vertices), maps)


def simple_rep(spec: "AlgebraSpec", x: str, p: int) -> Representation:
    field = PrimeField(p)
    dims = tuple(1 if v == x else 0 for v in spec.vertices)
    index = {v: i for i, v in enumerate(spec.vertices)}
    maps = {a.id: FMatrix.zeros(field, dims[index[a.target]], dims[index[a.source]])
            for a in spec.quiver.arrows}
    return Representation(spec, field, dims, maps)


def path_matrix(m: Representation, arrows: Sequence[str]) -> FMatrix:
    """Composite of the arrow maps along a path (composition order: the last
    listed arrow acts first)."""
    spec = m.spec
    if not arrows:
        raise ValueError("empty path")
    out = m.maps[arrows[-1]]
    for aid in reversed(arrows[:-1]):
        out = m.maps[aid].mul(out)
    return out


def check_relations(m: Representation) -> bool:
    """True iff every relation holds as a matrix identity."""
    for rel in m.spec.relations:
        lhs = path_matrix(m, rel.lhs.arrows)
        if rel.kind == "zero":
            if not lhs.is_zero():
                return False
        else:
            if lhs != path_matrix(m, rel.rhs.arrows):
                return False
    return True


def direct_sum(spec: "AlgebraSpec", field: PrimeField,
               parts: Sequence[Representation]) -> Representation:
    """Block-diagonal sum; the empty sum is the zero representation."""
    for part in parts:
        if part.spec is not spec or part.field != field:
            raise ValueError("direct_sum over mixed spec or field")
    n = len(spec.vertices)
    index = {v: i for i, v in enumerate(spec.vertices)}
    dims = tuple(sum(part.dims[i] for part in parts) for i in range(n))
    maps = {}
    for a in spec.quiver.arrows:
        ti, si = index[a.target], index[a.source]
        rows = [[0] * dims[si] for _ in range(dims[ti])]
        roff = coff = 0
        for part in parts:
            block = part.maps[a.id]
            for i, row in enumerate(block.rows):
                for j, val in enumerate(row):
                    if val:
                        rows[roff + i][coff + j] = val
            roff += part.dims[ti]
            coff += part.dims[si]
        maps[a.id] = FMatrix.from_rows(field, rows, ncols=dims[si])
    return Representation(spec, field, dims, maps)


def summand_inclusions(spec: "AlgebraSpec", field: PrimeField,
                       parts: Sequence[Representation]) -> list[dict[str, FMatrix]]:
    """Vertex-indexed block inclusion maps of each part into the direct sum."""
    n = len(spec.vertices)
    totals = [sum(part.dims[i] for part in parts) for i in range(n)]
    out = []
    offset = [0] * n
    for part in parts:
        incl = {}
        for i, v in enumerate(spec.vertices):
            rows = [[0] * part.dims[i] for _ in range(totals[i])]
            for j in range(part.dims[i]):
                rows[offset[i] + j][j] = 1
            incl[v] = FMatrix.from_rows(field, rows, ncols=part.dims[i])
        out.append(incl)
        for i in range(n):
            offset[i] += part.dims[i]
    return out


# ---------------------------------------------------------------------------
# Hom spaces


def hom_space(m: Representation, n: Representation) -> list[dict[str, FMatrix]]:
    """A basis of the intertwiner space Hom(m, n).

    Each element is a vertex-indexed tuple of matrices (f_x) satisfying
    f_t . M_a = N_a . f_s for every arrow a: s -> t.
    """
    A = _hom_constraints(m, n)
    if A is None:
        return []
    kernel = solve_nullspace(A)
    return [_unflatten_hom(m, n, vec) for vec in kernel]


def hom_dim(m: Representation, n: Representation) -> int:
    A = _hom_constraints(m, n)
    if A is None:
        return 0
    return A.ncols - rref(A).rank


def _hom_constraints(m: Representation, n: Representation) -> FMatrix | None:
    """Constraint matrix whose kernel is Hom(m, n); None when the variable
    space itself is zero."""
    if m.spec is not n.spec or m.field != n.field:
        raise ValueError("hom_space over mixed spec or field")
    spec, field, p = m.spec, m.field, m.field.p
    verts = spec.vertices
    index = {v: i for i, v in enumerate(verts)}
    offsets = {}
    total = 0
    for i, v in enumerate(verts):
        offsets[v] = total
        total += n.dims[i] * m.dims[i]
    if total == 0:
        return None
    rows: list[tuple[int, ...]] = []
    for a in spec.quiver.arrows:
        s, t = a.source, a.target
        Ms, Na = m.maps[a.id], n.maps[a.id]
        nt, ms = n.dims[index[t]], m.dims[index[s]]
        mt, ns = m.dims[index[t]], n.dims[index[s]]
        if nt == 0 or ms == 0:
            continue
        for i in range(nt):
            for j in range(ms):
                row = [0] * total
                for k in range(mt):  # f_t[i, k] * Ms[k, j]
                    c = Ms.rows[k][j]
                    if c:
                        row[offsets[t] + i * mt + k] = c
                for k in range(ns):  # - Na[i, k] * f_s[k, j]
                    c = Na.rows[i][k]
                    if c:
                        pos = offsets[s] + k * ms + j
                        row[pos] = (row[pos] - c) % p
                rows.append(tuple(row))
    return FMatrix(field, len(rows), total, tuple(rows))


def _unflatten_hom(m: Representation, n: Representation,
                   vec: tuple[int, ...]) -> dict[str, FMatrix]:
    field = m.field
    out = {}
    pos = 0
    for i, v in enumerate(m.spec.vertices):
        nrows, ncols = n.dims[i], m.dims[i]
        rows = tuple(tuple(vec[pos + r * ncols + c] for c in range(ncols))
                     for r in range(nrows))
        out[v] = FMatrix(field, nrows, ncols, rows)
        pos += nrows * ncols
    return out


def hom_is_invertible(f: Mapping[str, FMatrix]) -> bool:
    return all(mat.nrows == mat.ncols and mat.rank() == mat.nrows
               for mat in f.values())


def compose_homs(outer: Mapping[str, FMatrix],
                 inner: Mapping[str, FMatrix]) -> dict[str, FMatrix]:
    return {v: outer[v].mul(inner[v]) for v in outer}


def find_isomorphism(m: Representation, n: Representation,
                     search_bound: int = 100_000) -> dict[str, FMatrix] | None:
    """An invertible intertwiner m -> n, or None.

    Basis elements are tried first (covers the brick-to-brick case); then all
    coefficient combinations up to ``search_bound`` many.
    """
    if m.dims != n.dims:
        return None
    if m.total_dim == 0:
        return {v: FMatrix.zeros(m.field, 0, 0) for v in m.spec.vertices}
    basis = hom_space(m, n)
    if not basis:
        return None
    for f in basis:
        if hom_is_invertible(f):
            return f
    p = m.field.p
    if p ** len(basis) > search_bound:
        raise ResourceBound(
            f"isomorphism search over {p}^{len(basis)} combinations exceeds bound")
    for coeffs in _nonzero_vectors(p, len(basis)):
        f = _combine(basis, coeffs, m.spec.vertices)
        if hom_is_invertible(f):
            return f
    return None


def _nonzero_vectors(p: int, h: int) -> Iterable[tuple[int, ...]]:
    import itertools
    for vec in itertools.product(range(p), repeat=h):
        if any(vec):
            yield vec


def _combine(basis: list[dict[str, FMatrix]], coeffs: Sequence[int],
             vertices: Sequence[str]) -> dict[str, FMatrix]:
    out = None
    for c, f in zip(coeffs, basis):
        if c == 0:
            continue
        scaled = {v: f[v].scale(c) for v in vertices}
        out = scaled if out is None else {v: out[v].add(scaled[v]) for v in vertices}
    assert out is not None
    return out


# ---------------------------------------------------------------------------
# Subspace tuples, submodules and quotients


def _rref_pivots(basis: FMatrix) -> list[int]:
    """Pivot columns of a reduced-echelon basis; rejects anything that is
    not fully reduced (leading 1s on strictly increasing columns, pivot
    columns zero in every other row)."""
    pivots = []
    for row in basis.rows:
        lead = None
        for j, val in enumerate(row):
            if val:
                lead = j
                break
        if lead is None or row[lead] != 1 or (pivots and lead <= pivots[-1]):
            raise ValueError("subspace basis is not in reduced echelon form")
        pivots.append(lead)
    for i, row in enumerate(basis.rows):
        for j, c in enumerate(pivots):
            if i != j and row[c]:
                raise ValueError("subspace basis is not in reduced echelon form")
    return pivots


@dataclass(frozen=True)
class SubspaceTuple:
    """Per-vertex subspace bases inside a target representation.

    Bases must be canonical reduced-echelon matrices (use
    ``make_subspace_tuple`` to canonicalize arbitrary spanning rows).
    """

    target: Representation
    bases: tuple[FMatrix, ...]  # indexed like spec.vertices; e_x rows, d_x cols

    def __post_init__(self):
        for i, b in enumerate(self.bases):
            if b.ncols != self.target.dims[i] or b.nrows > self.target.dims[i]:
                raise ValueError("subspace basis shape mismatch")
            _rref_pivots(b)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(b.nrows for b in self.bases)

    def key(self) -> tuple:
        return tuple(b.rows for b in self.bases)


def make_subspace_tuple(m: Representation, bases: Sequence[FMatrix]) -> SubspaceTuple:
    """Build a subspace tuple from arbitrary spanning rows per vertex."""
    return SubspaceTuple(m, tuple(row_space(b) for b in bases))


def full_tuple(m: Representation) -> SubspaceTuple:
    return SubspaceTuple(m, tuple(FMatrix.identity(m.field, d) for d in m.dims))


def zero_tuple(m: Representation) -> SubspaceTuple:
    return SubspaceTuple(m, tuple(FMatrix.zeros(m.field, 0, d) for d in m.dims))


@dataclass(frozen=True)
class SubQuot:
    sub: Representation
    quot: Representation
    inclusion: dict[str, FMatrix]   # sub coords -> ambient coords (d x e)
    projection: dict[str, FMatrix]  # ambient coords -> quotient coords ((d-e) x d)


def _coords_in_rowspace(basis: FMatrix, pivots: Sequence[int],
                        vector: Sequence[int]) -> tuple[int, ...] | None:
    """Coordinates of a vector against RREF basis rows, or None if outside."""
    p = basis.field.p
    coords = tuple(vector[c] % p for c in pivots)
    recon = [0] * basis.ncols
    for coeff, row in zip(coords, basis.rows):
        if coeff:
            for j, val in enumerate(row):
                recon[j] = (recon[j] + coeff * val) % p
    if tuple(recon) != tuple(v % p for v in vector):
        return None
    return coords


def restrict_to_subtuple(m: Representation, u: SubspaceTuple):
    """The subrepresentation carried by an arrow-stable subspace tuple.

    Returns (sub, inclusion); raises NotClosed when some arrow map leaves
    the tuple.
    """
    spec, field = m.spec, m.field
    verts = spec.vertices
    index = {v: i for i, v in enumerate(verts)}
    sub_dims = u.dims
    pivots = [_rref_pivots(b) for b in u.bases]
    maps = {}
    for a in spec.quiver.arrows:
        Bs, Bt = u.bases[index[a.source]], u.bases[index[a.target]]
        cols = []
        for row in Bs.rows:
            image = m.maps[a.id].apply(row)
            coords = _coords_in_rowspace(Bt, pivots[index[a.target]], image)
            if coords is None:
                raise NotClosed(f"arrow {a.id!r} leaves the subspace tuple")
            cols.append(coords)
        rows = tuple(tuple(col[i] for col in cols) for i in range(Bt.nrows))
        maps[a.id] = FMatrix(field, Bt.nrows, Bs.nrows, rows)
    sub = Representation(spec, field, sub_dims, maps)
    inclusion = {v: u.bases[index[v]].transpose() for v in verts}
    return sub, inclusion


def quotient_by_subtuple(m: Representation, u: SubspaceTuple):
    """The quotient representation in the fixed complement basis (ambient
    coordinates at the non-pivot columns of each subspace basis).

    Returns (quot, projection).  Assumes the tuple is arrow-stable.
    """
    spec, field, p = m.spec, m.field, m.field.p
    verts = spec.vertices
    index = {v: i for i, v in enumerate(verts)}
    pivots = {}
    complements = {}
    for v in verts:
        pv = _rref_pivots(u.bases[index[v]])
        pivots[v] = pv
        complements[v] = [j for j in range(m.dims[index[v]]) if j not in set(pv)]

    def reduce_vec(v: str, vec: Sequence[int]) -> list[int]:
        out = list(vec)
        basis = u.bases[index[v]]
        for i, c in enumerate(pivots[v]):
            coeff = out[c] % p
            if coeff:
                row = basis.rows[i]
                for j, val in enumerate(row):
                    out[j] = (out[j] - coeff * val) % p
        return [x % p for x in out]

    quot_dims = tuple(len(complements[v]) for v in verts)
    maps = {}
    for a in spec.quiver.arrows:
        s, t = a.source, a.target
        cols = []
        for j in complements[s]:
            vec = [0] * m.dims[index[s]]
            vec[j] = 1
            image = reduce_vec(t, m.maps[a.id].apply(vec))
            cols.append([image[k] for k in complements[t]])
        rows = tuple(tuple(col[i] for col in cols) for i in range(len(complements[t])))
        maps[a.id] = FMatrix(field, len(complements[t]), len(complements[s]), rows)
    quot = Representation(spec, field, quot_dims, maps)

    projection = {}
    for v in verts:
        d = m.dims[index[v]]
        cols = []
        for k in range(d):
            vec = [0] * d
            vec[k] = 1
            red = reduce_vec(v, vec)
            cols.append([red[j] for j in complements[v]])
        rows = tuple(tuple(col[i] for col in cols) for i in range(len(complements[v])))
        projection[v] = FMatrix(field, len(complements[v]), d, rows)
    return quot, projection


def sub_quotient(m: Representation, u: SubspaceTuple) -> SubQuot:
    """Split m along an arrow-stable subspace tuple; raises NotClosed when
    the tuple is not a subrepresentation."""
    sub, inclusion = restrict_to_subtuple(m, u)
    quot, projection = quotient_by_subtuple(m, u)
    return SubQuot(sub, quot, inclusion, projection)


def image_tuple(m: Representation, f: Mapping[str, FMatrix],
                source: Representation) -> SubspaceTuple:
    """Canonical subspace tuple spanned by the image of a homomorphism
    source -> m (f given in vertex-indexed matrices)."""
    bases = []
    for i, v in enumerate(m.spec.vertices):
        bases.append(row_space(f[v].transpose()))
    return SubspaceTuple(m, tuple(bases))


# ---------------------------------------------------------------------------
# Direct-sum decomposition (Fitting splitting)


def _fitting_split(m: Representation, f: Mapping[str, FMatrix]):
    """Stable image/kernel tuples of f^N with N = total dimension, or None
    when f^N is zero or invertible (no splitting information)."""
    N = max(m.total_dim, 1)
    powered = {v: f[v].power(N) for v in f}
    img_rows = []
    ker_rows = []
    for i, v in enumerate(m.spec.vertices):
        img_rows.append(row_space(powered[v].transpose()))
        kernel = solve_nullspace(powered[v])
        ker_rows.append(row_space(FMatrix.from_rows(m.field, kernel, ncols=m.dims[i])))
    img_dim = sum(b.nrows for b in img_rows)
    if img_dim == 0 or img_dim == m.total_dim:
        return None
    return SubspaceTuple(m, tuple(img_rows)), SubspaceTuple(m, tuple(ker_rows))


def _is_indecomposable_certified(m: Representation, endos: list[dict[str, FMatrix]],
                                 bound: int) -> bool:
    """Certificate that End(m)/rad is one-dimensional over F_p.

    End is local with residue field F_p iff exactly p^(h-1) of its p^h
    elements are non-invertible; this is checked by exact enumeration.
    """
    h = len(endos)
    p = m.field.p
    if h == 1:
        return True  # End = F_p . id
    if p ** h > bound:
        raise DecompositionBudgetExceeded(
            f"endomorphism certificate needs {p}^{h} enumerations")
    non_invertible = 0
    for f in _all_endomorphisms(m, endos):
        if not hom_is_invertible(f):
            non_invertible += 1
    return non_invertible == p ** (h - 1)


def _all_endomorphisms(m: Representation, basis: list[dict[str, FMatrix]]):
    """All F_p-combinations of the basis, via an incremental odometer."""
    p = m.field.p
    verts = m.spec.vertices
    current = {v: [list(row) for row in FMatrix.zeros(m.field, d, d).rows]
               for v, d in zip(verts, m.dims)}
    counters = [0] * len(basis)

    def snapshot():
        return {v: FMatrix(m.field, m.dims[i], m.dims[i],
                           tuple(tuple(x % p for x in row) for row in current[v]))
                for i, v in enumerate(verts)}

    yield snapshot()
    total = p ** len(basis)
    for _ in range(total - 1):
        idx = 0
        while True:
            counters[idx] += 1
            for i, v in enumerate(verts):
                b = basis[idx][v]
                cur = current[v]
                for r in range(b.nrows):
                    brow = b.rows[r]
                    crow = cur[r]
                    for c in range(b.ncols):
                        crow[c] = (crow[c] + brow[c]) % p
            if counters[idx] < p:
                break
            counters[idx] = 0
            idx += 1
        yield snapshot()


def decompose_with_embeddings(m: Representation, seed: int = 0,
                              draws: int = 64,
                              certificate_bound: int = 1_000_000):
    """Split m into indecomposable summands with explicit embeddings.

    Returns a list of (summand, embedding) pairs where the embedding is a
    vertex-indexed matrix tuple into m.  Splitting draws seeded-random
    endomorphisms and applies the stable image/kernel decomposition of f^N;
    indecomposability is certified through the endomorphism ring.
    """
    if m.is_zero():
        return []
    rng = random.Random(seed)
    identity_embed = {v: FMatrix.identity(m.field, d)
                      for v, d in zip(m.spec.vertices, m.dims)}
    work = [(m, identity_embed)]
    out = []
    budget = draws
    while work:
        rep, embed = work.pop(0)
        endos = hom_space(rep, rep)
        if len(endos) == 1:
            out.append((rep, embed))
            continue
        split = None
        candidates = list(endos)
        while True:
            if candidates:
                f = candidates.pop(0)
            else:
                if budget <= 0:
                    break
                budget -= 1
                coeffs = [rng.randrange(rep.field.p) for _ in endos]
                if not any(coeffs):
                    continue
                f = _combine(endos, coeffs, rep.spec.vertices)
            split = _fitting_split(rep, f)
            if split is not None:
                break
        if split is None:
            if _is_indecomposable_certified(rep, endos, certificate_bound):
                out.append((rep, embed))
                continue
            raise DecompositionBudgetExceeded(
                "no splitting endomorphism found within the draw budget")
        for tup in split:
            part, incl = restrict_to_subtuple(rep, tup)
            work.append((part, compose_homs(embed, incl)))
    return out


def decompose(m: Representation, seed: int = 0,
              draws: int = 64) -> list[tuple[Representation, int]]:
    """Indecomposable summands with multiplicities.

    Summands are grouped by explicit isomorphism and ordered by descending
    total dimension, then dimension vector, so the output is stable for a
    fixed seed.
    """
    pieces = decompose_with_embeddings(m, seed=seed, draws=draws)
    groups: list[tuple[Representation, int]] = []
    for rep, _ in pieces:
        for i, (other, count) in enumerate(groups):
            if rep.dims == other.dims and find_isomorphism(other, rep) is not None:
                groups[i] = (other, count + 1)
                break
        else:
            groups.append((rep, 1))
    groups.sort(key=lambda pair: (-pair[0].total_dim, pair[0].dims))
    return groups


# ---------------------------------------------------------------------------
# Multiplicity vectors and identification against a knitted AR quiver


class MultiplicityVector:
    """A finite-support multiset of AR-quiver vertex ids."""

    __slots__ = ("_items",)

    def __init__(self, counts: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        if isinstance(counts, Mapping):
            items = counts.items()
        else:
            items = counts
        cleaned = {}
        for key, val in items:
            if val < 0:
                raise ValueError("negative multiplicity")
            if val:
                cleaned[key] = cleaned.get(key, 0) + val
        self._items = tuple(sorted(cleaned.items()))

    @classmethod
    def unit(cls, vertex_id: str) -> "MultiplicityVector":
        return cls({vertex_id: 1})

    @classmethod
    def zero(cls) -> "MultiplicityVector":
        return cls({})

    def items(self) -> tuple[tuple[str, int], ...]:
        return self._items

    def get(self, key: str) -> int:
        for k, v in self._items:
            if k == key:
                return v
        return 0

    def is_zero(self) -> bool:
        return not self._items

    def unit_id(self) -> str | None:
        """The vertex id when this is a unit vector, else None."""
        if len(self._items) == 1 and self._items[0][1] == 1:
            return self._items[0][0]
        return None

    def __add__(self, other: "MultiplicityVector") -> "MultiplicityVector":
        counts = dict(self._items)
        for k, v in other._items:
            counts[k] = counts.get(k, 0) + v
        return MultiplicityVector(counts)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MultiplicityVector) and other._items == self._items

    def __hash__(self) -> int:
        return hash(self._items)

    def render(self) -> str:
        if not self._items:
            return "0"
        return ",".join(f"{k}:{v}" for k, v in self._items)

    def __repr__(self) -> str:
        return f"MultiplicityVector({self.render()})"


def identify(m: Representation, ar: "ARQuiver") -> MultiplicityVector:
    """Multiplicities of each knitted indecomposable inside m.

    Solves the unitriangular system H . mult = h where h_i = dim Hom(X_i, m)
    and H is the Hom matrix of the AR quiver in its directed order.
    """
    if m.spec is not ar.spec or m.field != ar.field:
        raise ValueError("representation and AR quiver disagree on spec or field")
    H = ar.hom_matrix()
    n = len(ar.vertices)
    for i in range(n):
        if H[i][i] != 1:
            raise NonUnitriangularHomMatrix(
                f"dim End({ar.vertices[i].id}) = {H[i][i]} != 1")
    h = [hom_dim(v.rep, m) for v in ar.vertices]
    mult = [0] * n
    for i in range(n - 1, -1, -1):
        val = h[i] - sum(H[i][j] * mult[j] for j in range(i + 1, n))
        if val < 0:
            raise NegativeMultiplicity(
                f"negative multiplicity at {ar.vertices[i].id}: {val}")
        mult[i] = val
    total = [0] * len(m.dims)
    for v, count in zip(ar.vertices, mult):
        for k in range(len(total)):
            total[k] += count * v.rep.dims[k]
    if tuple(total) != m.dims:
        raise NegativeMultiplicity(
            f"identification mismatch: {tuple(total)} != {m.dims} "
            "(input not a module over the algebra, or AR quiver incomplete)")
    return MultiplicityVector({v.id: c for v, c in zip(ar.vertices, mult) if c})


def matches_class(m: Representation, ar: "ARQuiver",
                  expected_h: Sequence[int]) -> bool:
    """Whether m has exactly the given Hom-dimension vector against the
    knitted basis.  Aborts at the first mismatch; since the Hom matrix is
    unitriangular, a full match pins down the isomorphism class."""
    for v, want in zip(ar.vertices, expected_h):
        if hom_dim(v.rep, m) != want:
            return False
    return True


_AUT_CACHE: dict[tuple, int] = {}


def aut_order(m: Representation, bound: int = 1_000_000) -> int:
    """Order of the automorphism group, by exact enumeration of End(m)."""
    cache_key = m.key()
    cached = _AUT_CACHE.get(cache_key)
    if cached is not None:
        return cached
    endos = hom_space(m, m)
    h = len(endos)
    p = m.field.p
    if p ** h > bound:
        raise ResourceBound(
            f"automorphism enumeration needs {p}^{h} endomorphisms > bound {bound}")
    if h == 0:
        count = 1  # zero representation: only the empty automorphism
    else:
        count = _count_invertible_combinations(m, endos)
    if len(_AUT_CACHE) > 10_000:
        _AUT_CACHE.clear()
    _AUT_CACHE[cache_key] = count
    return count


def _count_invertible_combinations(m: Representation,
                                   basis: list[dict[str, FMatrix]]) -> int:
    """Walk all F_p-combinations of an endomorphism basis incrementally and
    count those invertible at every vertex."""
    p = m.field.p
    verts = m.spec.vertices
    field = m.field
    live = [i for i in range(len(verts)) if m.dims[i]]
    current = [[[0] * m.dims[i] for _ in range(m.dims[i])] for i in range(len(verts))]
    counters = [0] * len(basis)
    count = 0
    total = p ** len(basis)
    step = 0
    while True:
        ok = True
        for i in live:
            if _echelon_rank(field, [row[:] for row in current[i]]) != m.dims[i]:
                ok = False
                break
        if ok:
            count += 1
        step += 1
        if step == total:
            break
        idx = 0
        while True:
            counters[idx] += 1
            for i in live:
                b = basis[idx][verts[i]]
                cur = current[i]
                for r in range(b.nrows):
                    brow = b.rows[r]
                    crow = cur[r]
                    for c in range(b.ncols):
                        if brow[c]:
                            crow[c] = (crow[c] + brow[c]) % p
            if counters[idx] < p:
                break
            counters[idx] = 0
            idx += 1
    return count


def _echelon_rank(field: PrimeField, rows: list[list[int]]) -> int:
    """Rank by in-place forward elimination on mutable rows."""
    if not rows:
        return 0
    p = field.p
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c] % p:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.inv(rows[r][c])
        if inv != 1:
            rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r
