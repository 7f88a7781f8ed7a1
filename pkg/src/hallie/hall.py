"""Hall numbers over prime fields and their interpolating polynomials.

The Hall number of a triple (n1, n2, m) is the number of submodules
U of m with U isomorphic to n1 and m/U isomorphic to n2.  Two independent
counting strategies are provided:

* ``hall_number_grass`` enumerates arrow-stable subspace tuples directly
  (in quiver-topological vertex order, so closure constraints prune the
  enumeration) and identifies the resulting sub/quotient pair.
* ``hall_number_hom`` enumerates homomorphisms n1 -> m, keeps the injective
  ones with the right cokernel class, and divides by |Aut(n1)|.

Interpolation: counts are taken at the first D+2 primes not on the excluded
list, where D is the dimension of the ambient product of Grassmannians;
Lagrange interpolation over exact rationals on the first D+1 of them must
give integer coefficients, and the held-out last prime must reproduce the
interpolated value exactly.  On a validation failure the smallest prime used
is excluded once and the whole protocol retried.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .algebra import AlgebraSpec
from .errors import (InconsistentCounts, NonIntegralCoefficients,
                     NonIntegralOrbitCount, ResourceBound)
from .knit import ARQuiver, KnitConfig, ar_from_doc, ar_to_doc, knit
from .linalg import (FMatrix, gaussian_binomial, intersect_subspaces,
                     preimage_subspace, row_space, subspaces_between)
from .reps import (MultiplicityVector, Representation, SubspaceTuple, aut_order,
                   hom_dim, hom_space, identify, matches_class,
                   quotient_by_subtuple, restrict_to_subtuple)


@dataclass(frozen=True)
class HallConfig:
    strategy: str = "grass"          # "grass" | "hom" | "auto"
    grass_cap: int = 10_000_000      # enumerated subspace tuples per count
    hom_bound: int = 1_000_000       # max p**dim Hom(n1, m) enumerated
    aut_bound: int = 1_000_000       # max p**dim End(n1) enumerated
    excluded_primes: tuple[int, ...] = ()
    seed: int = 0
    max_vertices: int = 512
    jobs: int = 1


def primes_from(start_after: int = 1) -> Iterator[int]:
    n = max(start_after, 1)
    while True:
        n += 1
        d = 2
        while d * d <= n:
            if n % d == 0:
                break
            d += 1
        else:
            yield n


def first_primes(count: int, excluded: Sequence[int] = ()) -> list[int]:
    out = []
    for p in primes_from():
        if p in excluded:
            continue
        out.append(p)
        if len(out) == count:
            return out
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# Counting


def closed_subspace_tuples(m: Representation, e: Sequence[int],
                           cap: int = 10_000_000) -> Iterator[SubspaceTuple]:
    """All arrow-stable subspace tuples of shape e inside m, exactly once.

    Vertices are filled one at a time; the subspace at a vertex is pinched
    between the span of the images along arrows from already-chosen sources
    (a lower bound) and the intersection of preimages along arrows into
    already-chosen targets (an upper bound), so every emitted tuple is
    stable by construction and dead branches are pruned early.  The fill
    order is the quiver-topological order or its reverse, whichever leaves
    fewer unconstrained choices.
    """
    spec, field = m.spec, m.field
    verts = spec.vertices
    index = {v: i for i, v in enumerate(verts)}
    if len(e) != len(verts) or any(x < 0 for x in e):
        raise ValueError("bad shape vector")
    if any(e[i] > m.dims[i] for i in range(len(verts))):
        return
    order = _fill_order(m, e)
    produced = 0
    chosen: dict[str, FMatrix] = {}

    def bounds(v: str) -> tuple[FMatrix, FMatrix] | None:
        d = m.dims[index[v]]
        lower_rows = []
        for a in spec.arrows_into(v):
            if a.source in chosen:
                mat = m.maps[a.id]
                lower_rows.extend(mat.apply(row) for row in chosen[a.source].rows)
        lower = (row_space(FMatrix.from_rows(field, lower_rows, ncols=d))
                 if lower_rows else FMatrix.zeros(field, 0, d))
        if lower.nrows > e[index[v]]:
            return None
        upper = FMatrix.identity(field, d)
        for a in spec.arrows_from(v):
            if a.target in chosen:
                upper = intersect_subspaces(
                    upper, preimage_subspace(m.maps[a.id], chosen[a.target]))
                if upper.nrows < e[index[v]]:
                    return None
        return lower, upper

    def recurse(pos: int) -> Iterator[SubspaceTuple]:
        nonlocal produced
        if pos == len(order):
            produced += 1
            if produced > cap:
                raise ResourceBound(
                    f"subspace tuple enumeration exceeded cap {cap}")
            yield SubspaceTuple(m, tuple(chosen[v] for v in verts))
            return
        v = order[pos]
        pinch = bounds(v)
        if pinch is None:
            return
        lower, upper = pinch
        for candidate in subspaces_between(lower, upper, e[index[v]], cap=cap):
            chosen[v] = candidate
            yield from recurse(pos + 1)
        chosen.pop(v, None)

    yield from recurse(0)


def _fill_order(m: Representation, e: Sequence[int]) -> tuple[str, ...]:
    """Topological or reverse-topological fill order, whichever has the
    smaller product of unconstrained per-vertex subspace counts."""
    spec = m.spec
    index = {v: i for i, v in enumerate(spec.vertices)}
    p = m.field.p

    def cost(order: Sequence[str]) -> int:
        seen: set[str] = set()
        total = 1
        for v in order:
            constrained = (any(a.source in seen for a in spec.arrows_into(v))
                           or any(a.target in seen for a in spec.arrows_from(v)))
            if not constrained:
                total *= gaussian_binomial(m.dims[index[v]], e[index[v]], p)
            seen.add(v)
        return total

    forward = spec.topo_order
    backward = tuple(reversed(forward))
    return forward if cost(forward) <= cost(backward) else backward


def _dim_law_holds(n1: Representation, n2: Representation,
                   m: Representation) -> bool:
    if n1.spec is not m.spec or n2.spec is not m.spec:
        raise ValueError("Hall counting over mixed algebra specs")
    if n1.field != m.field or n2.field != m.field:
        raise ValueError("Hall counting over mixed fields")
    return tuple(a + b for a, b in zip(n1.dims, n2.dims)) == m.dims


def hall_number_grass(ar: ARQuiver, n1: Representation, n2: Representation,
                      m: Representation, cap: int = 10_000_000) -> int:
    """Count submodules of m isomorphic to n1 with quotient isomorphic to n2
    by direct enumeration of stable subspace tuples."""
    if not _dim_law_holds(n1, n2, m):
        return 0
    if n1.total_dim and hom_dim(n1, m) == 0:
        return 0
    if n2.total_dim and hom_dim(m, n2) == 0:
        return 0
    H = ar.hom_matrix()
    a_mult = identify(n1, ar)
    c_mult = identify(n2, ar)
    expected_sub = _expected_hom_vector(ar, H, a_mult)
    expected_quot = _expected_hom_vector(ar, H, c_mult)
    count = 0
    for tup in closed_subspace_tuples(m, n1.dims, cap=cap):
        sub, _ = restrict_to_subtuple(m, tup)
        if not matches_class(sub, ar, expected_sub):
            continue
        quot, _ = quotient_by_subtuple(m, tup)
        if matches_class(quot, ar, expected_quot):
            count += 1
    return count


def _expected_hom_vector(ar: ARQuiver, H: list[list[int]],
                         mv: MultiplicityVector) -> list[int]:
    """dim Hom(X_i, class) for each basis vertex, from the Hom matrix."""
    idx = {v.id: k for k, v in enumerate(ar.vertices)}
    out = [0] * len(ar.vertices)
    for vid, count in mv.items():
        j = idx[vid]
        for i in range(len(out)):
            out[i] += count * H[i][j]
    return out


def hall_number_hom(ar: ARQuiver, n1: Representation, n2: Representation,
                    m: Representation, hom_bound: int = 1_000_000,
                    aut_bound: int = 1_000_000) -> int:
    """Count the same set through injective homomorphisms n1 -> m with
    cokernel isomorphic to n2, divided by |Aut(n1)|.

    The hom space is walked incrementally (one basis-element addition per
    step); the cokernel verdict is cached per image subspace, so the work
    per injective map is one echelon reduction per vertex.
    """
    if not _dim_law_holds(n1, n2, m):
        return 0
    p = m.field.p
    basis = hom_space(n1, m)
    h = len(basis)
    if p ** h > hom_bound:
        raise ResourceBound(
            f"hom enumeration needs {p}^{h} maps > bound {hom_bound}")
    aut = aut_order(n1, bound=aut_bound)
    H = ar.hom_matrix()
    expected_quot = _expected_hom_vector(ar, H, identify(n2, ar))
    verdict_by_image: dict[tuple, bool] = {}
    verts = m.spec.vertices
    field = m.field
    field.inv(1)  # force the inverse table
    inv_table = field._inverses
    sub_dims = n1.dims

    # current[i] holds f transposed: rows indexed by n1 coordinates, so one
    # echelon pass per vertex is both the injectivity test and the canonical
    # image basis.  live vertices are the ones with sub coordinates.
    live = [i for i in range(len(verts)) if sub_dims[i]]
    current = [[[0] * m.dims[i] for _ in range(sub_dims[i])]
               for i in range(len(verts))]
    # per basis element: flat list of (vertex, sub coord, ambient coord, value)
    deltas = []
    for f in basis:
        flat = []
        for i in live:
            b = f[verts[i]]
            for r in range(b.nrows):
                for c in range(b.ncols):
                    if b.rows[r][c]:
                        flat.append((i, c, r, b.rows[r][c]))
        deltas.append(flat)
    counters = [0] * h
    empty_key = tuple(() for _ in live)

    count = 0
    total = p ** h
    step = 0
    while True:
        key_parts = []
        for i in live:
            reduced = _echelon_canonical(inv_table, p,
                                         [row[:] for row in current[i]])
            if reduced is None:
                key_parts = None
                break
            key_parts.append(reduced)
        if key_parts is not None:
            key = tuple(key_parts) if key_parts else empty_key
            verdict = verdict_by_image.get(key)
            if verdict is None:
                bases = []
                pos = 0
                for i in range(len(verts)):
                    rows = key[live.index(i)] if i in live else ()
                    bases.append(FMatrix(field, len(rows), m.dims[i], rows))
                tup = SubspaceTuple(m, tuple(bases))
                quot, _ = quotient_by_subtuple(m, tup)
                verdict = matches_class(quot, ar, expected_quot)
                verdict_by_image[key] = verdict
            if verdict:
                count += 1
        step += 1
        if step == total:
            break
        idx = 0
        while True:
            counters[idx] += 1
            for i, c, r, val in deltas[idx]:
                crow = current[i][c]
                crow[r] = (crow[r] + val) % p
            if counters[idx] < p:
                break
            counters[idx] = 0
            idx += 1
    if count % aut:
        raise NonIntegralOrbitCount(
            f"{count} injective maps not divisible by |Aut| = {aut}")
    return count // aut


def _echelon_canonical(inv_table, p: int,
                       rows: list[list[int]]) -> tuple[tuple[int, ...], ...] | None:
    """RREF of mutable full-rank-candidate rows as a hashable tuple; None as
    soon as the rank is deficient."""
    nrows = len(rows)
    if nrows == 0:
        return ()
    ncols = len(rows[0])
    if nrows > ncols:
        return None
    r = 0
    for c in range(ncols):
        pivot = -1
        i = r
        while i < nrows:
            if rows[i][c]:
                pivot = i
                break
            i += 1
        if pivot < 0:
            if ncols - c - 1 < nrows - r:
                return None  # not enough columns left for full rank
            continue
        if pivot != r:
            rows[r], rows[pivot] = rows[pivot], rows[r]
        row_r = rows[r]
        inv = inv_table[row_r[c]]
        if inv != 1:
            rows[r] = row_r = [(x * inv) % p for x in row_r]
        i = 0
        while i < nrows:
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [(a - f * b) % p for a, b in zip(rows[i], row_r)]
            i += 1
        r += 1
        if r == nrows:
            return tuple(tuple(row) for row in rows)
    return None


# ---------------------------------------------------------------------------
# Hall polynomials


@dataclass(frozen=True)
class HallPolynomial:
    """Integer polynomial reproducing the counts F at every prime, with the
    evidence that produced it."""

    coefficients: tuple[int, ...]  # constant term first
    sub_class: MultiplicityVector
    quot_class: MultiplicityVector
    total_class: MultiplicityVector
    degree_bound: int
    primes: tuple[int, ...]
    counts: tuple[int, ...]
    validation_prime: int | None
    validation_count: int | None
    excluded_primes: tuple[int, ...] = ()

    def evaluate(self, t: int) -> int:
        acc = 0
        power = 1
        for c in self.coefficients:
            acc += c * power
            power *= t
        return acc

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    def to_doc(self) -> dict:
        return {
            "phi": list(self.coefficients),
            "phi_at_1": self.evaluate(1),
            "triple": {"sub": self.sub_class.render(),
                       "quotient": self.quot_class.render(),
                       "total": self.total_class.render()},
            "degree_bound": self.degree_bound,
            "primes": list(self.primes),
            "counts": list(self.counts),
            "validation_prime": self.validation_prime,
            "validation_count": self.validation_count,
            "excluded_primes": list(self.excluded_primes),
        }


def lagrange_interpolate(nodes: Sequence[int], values: Sequence[int]) -> list[Fraction]:
    """Exact interpolation; coefficients constant-term first."""
    n = len(nodes)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(zip(nodes, values)):
        num = [Fraction(1)]  # product of (t - xj) for j != i
        den = Fraction(1)
        for j, xj in enumerate(nodes):
            if j == i:
                continue
            num = _poly_mul_linear(num, -Fraction(xj))
            den *= Fraction(xi - xj)
        scale = Fraction(yi) / den
        for k, c in enumerate(num):
            coeffs[k] += scale * c
    return coeffs


def _poly_mul_linear(poly: list[Fraction], constant: Fraction) -> list[Fraction]:
    """poly(t) * (t + constant)."""
    out = [Fraction(0)] * (len(poly) + 1)
    for k, c in enumerate(poly):
        out[k] += c * constant
        out[k + 1] += c
    return out


class ARFamily:
    """Knitted AR quivers of one algebra over many primes, with memoized
    module classes, Hall counts and Hall polynomials.

    Classes are named by multiplicity vectors over the (field-independent)
    vertex ids, so the same class can be instantiated over every prime.
    """

    def __init__(self, spec: AlgebraSpec, config: HallConfig | None = None,
                 cache_dir: str | None = None):
        self.spec = spec
        self.config = config or HallConfig()
        self.cache_dir = cache_dir
        self._quivers: dict[int, ARQuiver] = {}
        self._modules: dict[tuple[int, MultiplicityVector], Representation] = {}
        self._counts: dict[tuple, int] = {}
        self._polynomials: dict[tuple, HallPolynomial] = {}
        self._lock = threading.Lock()
        self._reference_ids: frozenset[str] | None = None

    # -- knitting ----------------------------------------------------------

    def quiver(self, p: int) -> ARQuiver:
        with self._lock:
            ar = self._quivers.get(p)
        if ar is not None:
            return ar
        ar = self._load_cached(p)
        if ar is None:
            ar = knit(self.spec, p, KnitConfig(max_vertices=self.config.max_vertices,
                                               seed=self.config.seed))
            self._store_cached(p, ar)
        with self._lock:
            self._quivers.setdefault(p, ar)
            ids = frozenset(v.id for v in ar.vertices)
            if self._reference_ids is None:
                self._reference_ids = ids
            elif ids != self._reference_ids:
                from .errors import FieldDependenceDetected
                raise FieldDependenceDetected(
                    f"vertex ids over F_{p} differ from the reference knit")
        return self._quivers[p]

    def reference_quiver(self) -> ARQuiver:
        return self.quiver(first_primes(1, self.config.excluded_primes)[0])

    def _cache_path(self, p: int) -> str | None:
        if not self.cache_dir:
            return None
        digest = hashlib.sha256(self.spec.source_text.encode("utf-8")).hexdigest()
        return os.path.join(self.cache_dir, f"{digest}_{p}.json")

    def _load_cached(self, p: int) -> ARQuiver | None:
        path = self._cache_path(p)
        if not path or not os.path.exists(path):
            return None
        try:
            with open(path, "r", encoding="utf-8") as fh:
                return ar_from_doc(self.spec, json.load(fh))
        except Exception:
            return None  # unreadable cache entries are recomputed

    def _store_cached(self, p: int, ar: ARQuiver) -> None:
        path = self._cache_path(p)
        if not path:
            return
        os.makedirs(self.cache_dir, exist_ok=True)
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(ar_to_doc(ar, with_maps=True), fh, sort_keys=True)
        os.replace(tmp, path)

    # -- classes -----------------------------------------------------------

    def module(self, p: int, mv: MultiplicityVector) -> Representation:
        key = (p, mv)
        if key not in self._modules:
            self._modules[key] = self.quiver(p).class_module(mv)
        return self._modules[key]

    def class_dims(self, mv: MultiplicityVector) -> tuple[int, ...]:
        return self.reference_quiver().class_dim_vector(mv)

    def _hom_vectors(self, mv: MultiplicityVector) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(dim Hom(X_k, class))_k and (dim Hom(class, X_k))_k from the
        cached Hom matrix; both are field-independent."""
        ar = self.reference_quiver()
        H = ar.hom_matrix()
        idx = {v.id: k for k, v in enumerate(ar.vertices)}
        n = len(ar.vertices)
        into = [0] * n
        outof = [0] * n
        for vid, count in mv.items():
            j = idx[vid]
            for k in range(n):
                into[k] += count * H[k][j]
                outof[k] += count * H[j][k]
        return tuple(into), tuple(outof)

    def _possibly_nonzero(self, a: MultiplicityVector, c: MultiplicityVector,
                          b: MultiplicityVector) -> bool:
        """Exact necessary conditions for a nonzero Hall number, from
        left-exactness of Hom applied to 0 -> M(a) -> M(b) -> M(c) -> 0:

            dim Hom(X, a) <= dim Hom(X, b) <= dim Hom(X, a) + dim Hom(X, c)
            dim Hom(c, X) <= dim Hom(b, X) <= dim Hom(a, X) + dim Hom(c, X)

        for every indecomposable X, all read off the cached Hom matrix."""
        into_a, outof_a = self._hom_vectors(a)
        into_c, outof_c = self._hom_vectors(c)
        into_b, outof_b = self._hom_vectors(b)
        for k in range(len(into_b)):
            if not into_a[k] <= into_b[k] <= into_a[k] + into_c[k]:
                return False
            if not outof_c[k] <= outof_b[k] <= outof_a[k] + outof_c[k]:
                return False
        return True

    # -- counting ----------------------------------------------------------

    def count(self, a: MultiplicityVector, c: MultiplicityVector,
              b: MultiplicityVector, p: int) -> int:
        """Hall number at one prime: submodule class a, quotient class c,
        ambient class b."""
        key = (a, c, b, p)
        if key in self._counts:
            return self._counts[key]
        if not self._possibly_nonzero(a, c, b):
            self._counts[key] = 0
            return 0
        ar = self.quiver(p)
        n1 = self.module(p, a)
        n2 = self.module(p, c)
        m = self.module(p, b)
        strategy = self.config.strategy
        if strategy == "auto":
            strategy = ("hom" if p ** hom_dim(n1, m) <= self.config.hom_bound
                        else "grass")
        if strategy == "hom":
            value = hall_number_hom(ar, n1, n2, m, hom_bound=self.config.hom_bound,
                                    aut_bound=self.config.aut_bound)
        else:
            value = hall_number_grass(ar, n1, n2, m, cap=self.config.grass_cap)
        self._counts[key] = value
        return value

    # -- polynomials -------------------------------------------------------

    def polynomial(self, a: MultiplicityVector, c: MultiplicityVector,
                   b: MultiplicityVector) -> HallPolynomial:
        key = (a, c, b)
        if key in self._polynomials:
            return self._polynomials[key]
        poly = self._interpolate(a, c, b, tuple(self.config.excluded_primes))
        self._polynomials[key] = poly
        return poly

    def _interpolate(self, a, c, b, excluded: tuple[int, ...],
                     retried: bool = False) -> HallPolynomial:
        e = self.class_dims(a)
        ce = self.class_dims(c)
        d = self.class_dims(b)
        if tuple(x + y for x, y in zip(e, ce)) != d:
            return HallPolynomial((0,), a, c, b, 0, (), (), None, None, excluded)
        if not self._possibly_nonzero(a, c, b):
            # count provably zero over every field: no embedding/projection
            # can shrink the Hom vectors
            return HallPolynomial((0,), a, c, b, 0, (), (), None, None, excluded)
        degree_bound = sum(ex * (dx - ex) for ex, dx in zip(e, d))
        primes = first_primes(degree_bound + 2, excluded)
        counts = self._counts_at(a, c, b, primes)
        nodes, held_out = primes[:-1], primes[-1]
        values, check = counts[:-1], counts[-1]
        raw = lagrange_interpolate(nodes, values)
        coeffs = []
        for frac in raw:
            if frac.denominator != 1:
                raise NonIntegralCoefficients(
                    f"coefficient {frac} for triple ({a.render()}, {c.render()}, "
                    f"{b.render()})")
            coeffs.append(int(frac))
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        poly = HallPolynomial(tuple(coeffs), a, c, b, degree_bound,
                              tuple(nodes), tuple(values), held_out, check,
                              excluded)
        if poly.evaluate(held_out) != check:
            if retried:
                raise InconsistentCounts(
                    f"held-out prime {held_out} gives {check}, interpolation "
                    f"gives {poly.evaluate(held_out)} (after retry)")
            return self._interpolate(a, c, b, excluded + (min(primes),),
                                     retried=True)
        return poly

    def _counts_at(self, a, c, b, primes: Sequence[int]) -> list[int]:
        if self.config.jobs > 1:
            with ThreadPoolExecutor(max_workers=self.config.jobs) as pool:
                return list(pool.map(lambda p: self.count(a, c, b, p), primes))
        return [self.count(a, c, b, p) for p in primes]

    def euler(self, a: MultiplicityVector, c: MultiplicityVector,
              b: MultiplicityVector) -> int:
        return self.polynomial(a, c, b).evaluate(1)

    def known_polynomials(self) -> list[HallPolynomial]:
        return list(self._polynomials.values())


@dataclass
class OracleEquivalenceReport:
    compared: int
    nonzero: int
    skipped: int          # triples outside the hom-oracle resource bounds
    mismatches: list[tuple]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def check_oracle_equivalence(spec: AlgebraSpec, primes: Sequence[int],
                             max_total_dim: int, hom_bound: int = 1_000_000,
                             aut_bound: int = 1_000_000,
                             jobs: int = 1) -> OracleEquivalenceReport:
    """Compare the two counting strategies on every triple of module classes
    whose members each have total dimension at most ``max_total_dim``.

    Triples whose hom-side enumeration exceeds the configured resource
    bounds are recorded as skipped (the hom oracle's precondition fails
    there), everything else must agree exactly.  With ``jobs > 1`` the
    ambient dimension vectors are sharded across worker processes.
    """
    import itertools

    dim_vectors = [d for d in itertools.product(
        *(range(max_total_dim + 1) for _ in spec.vertices))
        if 0 < sum(d) <= max_total_dim]
    work = [(spec.source_text, p, chunk, hom_bound, aut_bound)
            for p in primes
            for chunk in _shard(dim_vectors, max(1, jobs))]
    if jobs > 1 and len(work) > 1:
        import multiprocessing as mp
        with mp.get_context("fork").Pool(processes=jobs) as pool:
            results = pool.map(_oracle_equivalence_slice, work)
    else:
        results = [_oracle_equivalence_slice(item) for item in work]
    compared = sum(r[0] for r in results)
    nonzero = sum(r[1] for r in results)
    skipped = sum(r[2] for r in results)
    mismatches = sorted(m for r in results for m in r[3])
    return OracleEquivalenceReport(compared, nonzero, skipped, mismatches)


def _shard(items: list, parts: int) -> list[list]:
    if parts <= 1:
        return [items]
    return [items[i::parts] for i in range(parts) if items[i::parts]]


def _oracle_equivalence_slice(args) -> tuple[int, int, int, list]:
    import itertools

    from .algebra import parse_algebra
    from .liealg import enumerate_module_classes

    source_text, p, dim_vectors, hom_bound, aut_bound = args
    spec = parse_algebra(source_text)
    ar = knit(spec, p)
    modules: dict[MultiplicityVector, Representation] = {}

    def module(mv):
        if mv not in modules:
            modules[mv] = ar.class_module(mv)
        return modules[mv]

    compared = nonzero = skipped = 0
    mismatches = []
    max_total = max(sum(d) for d in dim_vectors)
    for d in dim_vectors:
        for b in enumerate_module_classes(ar, d):
            m = module(b)
            for e in itertools.product(*(range(x + 1) for x in d)):
                rest = tuple(x - y for x, y in zip(d, e))
                if sum(e) > max_total or sum(rest) > max_total:
                    continue
                for a_mv in enumerate_module_classes(ar, e):
                    n1 = module(a_mv)
                    for c_mv in enumerate_module_classes(ar, rest):
                        n2 = module(c_mv)
                        grass = hall_number_grass(ar, n1, n2, m)
                        try:
                            hom = hall_number_hom(ar, n1, n2, m,
                                                  hom_bound=hom_bound,
                                                  aut_bound=aut_bound)
                        except ResourceBound:
                            skipped += 1
                            continue
                        compared += 1
                        if grass:
                            nonzero += 1
                        if grass != hom:
                            mismatches.append(
                                (p, a_mv.render(), c_mv.render(), b.render(),
                                 grass, hom))
    return compared, nonzero, skipped, mismatches


def hall_polynomial(family: ARFamily, a: MultiplicityVector,
                    c: MultiplicityVector, b: MultiplicityVector) -> HallPolynomial:
    """The integer polynomial whose value at p is the Hall number over F_p
    (submodule class a, quotient class c, ambient class b)."""
    return family.polynomial(a, c, b)


def euler_characteristic(family: ARFamily, a: MultiplicityVector,
                         c: MultiplicityVector, b: MultiplicityVector) -> int:
    """Euler characteristic of the complex submodule variety of the triple,
    computed as the Hall polynomial evaluated at 1."""
    return family.euler(a, c, b)
