"""Lie structure constants on the indecomposable basis.

Two associative products are formed degree by degree on module classes
(multiplicity vectors over the knitted vertex ids):

* the degenerate Hall product:  u_c . u_a = sum_b phi(a, c, b)(1) u_b,
  where phi counts submodules of class a in b with quotient of class c;
* the Euler product:  v_m . v_n = sum_x chi(m, n, x) v_x, where chi is the
  Euler characteristic of the variety of submodules of class m in x with
  quotient of class n, computed as phi(m, n, x) evaluated at 1.

Note the opposite roles: the *right* factor of the Hall product is the
submodule class, the *left* factor of the Euler product is.  Commutators of
unit classes close on unit classes; both bracket tables are compared through
the sign twist eps(x) = (-1)^(total dim x - 1), and against the positive
roots of the underlying graph when the algebra is hereditary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotClosedOnIndecomposables, NotFiniteType
from .hall import ARFamily
from .knit import ARQuiver
from .reps import MultiplicityVector
from .report import CheckResult, Report


class GradedVector:
    """Finite integer combination of module classes."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple[MultiplicityVector, int]] = ()):
        acc: dict[MultiplicityVector, int] = {}
        for mv, c in terms:
            if c:
                acc[mv] = acc.get(mv, 0) + c
        self.terms = {mv: c for mv, c in acc.items() if c}

    def __add__(self, other: "GradedVector") -> "GradedVector":
        return GradedVector(list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "GradedVector") -> "GradedVector":
        return GradedVector(list(self.terms.items())
                            + [(mv, -c) for mv, c in other.terms.items()])

    def scale(self, k: int) -> "GradedVector":
        return GradedVector([(mv, k * c) for mv, c in self.terms.items()])

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GradedVector) and other.terms == self.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "GradedVector(0)"
        body = " + ".join(f"{c}*[{mv.render()}]"
                          for mv, c in sorted(self.terms.items(),
                                              key=lambda kv: kv[0].render()))
        return f"GradedVector({body})"


def enumerate_module_classes(ar: ARQuiver, d: Sequence[int]) -> list[MultiplicityVector]:
    """All multiplicity vectors whose weighted dimension vector equals d,
    enumerated deterministically (bounded knapsack in the knitted order)."""
    verts = ar.vertices
    target = tuple(d)
    out: list[MultiplicityVector] = []

    def recurse(pos: int, remaining: tuple[int, ...],
                acc: list[tuple[str, int]]) -> None:
        if pos == len(verts):
            if all(x == 0 for x in remaining):
                out.append(MultiplicityVector(acc))
            return
        v = verts[pos]
        dims = v.rep.dims
        top = min((remaining[i] // dims[i] for i in range(len(dims)) if dims[i]),
                  default=0)
        for count in range(top + 1):
            nxt = tuple(remaining[i] - count * dims[i] for i in range(len(dims)))
            if any(x < 0 for x in nxt):
                continue
            acc.append((v.id, count))
            recurse(pos + 1, nxt, acc)
            acc.pop()

    recurse(0, target, [])
    return out


def hall_product(family: ARFamily, c: MultiplicityVector,
                 a: MultiplicityVector) -> GradedVector:
    """u_c . u_a: coefficients are Hall polynomial values at 1 summed over
    classes at the total dimension vector; a is the submodule class."""
    ar = family.reference_quiver()
    d = tuple(x + y for x, y in zip(ar.class_dim_vector(a), ar.class_dim_vector(c)))
    terms = []
    for b in enumerate_module_classes(ar, d):
        value = family.euler(a, c, b)
        if value:
            terms.append((b, value))
    return GradedVector(terms)


def euler_product(family: ARFamily, m: MultiplicityVector,
                  n: MultiplicityVector) -> GradedVector:
    """v_m . v_n: coefficients are Euler characteristics of submodule
    varieties; m is the submodule class."""
    ar = family.reference_quiver()
    d = tuple(x + y for x, y in zip(ar.class_dim_vector(m), ar.class_dim_vector(n)))
    terms = []
    for x in enumerate_module_classes(ar, d):
        value = family.euler(m, n, x)
        if value:
            terms.append((x, value))
    return GradedVector(terms)


def graded_multiply(family: ARFamily, left: GradedVector, right: GradedVector,
                    product=hall_product) -> GradedVector:
    out = GradedVector()
    for lm, lc in left.terms.items():
        for rm, rc in right.terms.items():
            out = out + product(family, lm, rm).scale(lc * rc)
    return out


@dataclass(frozen=True)
class LieTable:
    """Structure constants on the indecomposable basis.

    Only pairs i < j in the knitted order are stored; each entry is either
    None (vanishing bracket) or (target id, coefficient)."""

    basis: tuple[str, ...]
    dims: dict[str, tuple[int, ...]]
    totals: dict[str, int]
    entries: dict[tuple[str, str], tuple[str, int] | None]

    def bracket(self, x: str, y: str) -> tuple[str, int] | None:
        if x == y:
            return None
        if (x, y) in self.entries:
            return self.entries[(x, y)]
        flipped = self.entries[(y, x)]
        if flipped is None:
            return None
        target, coeff = flipped
        return (target, -coeff)

    def nonzero_pairs(self) -> list[tuple[str, str]]:
        return [pair for pair, value in self.entries.items() if value is not None]

    def to_doc(self) -> dict:
        return {
            "basis": list(self.basis),
            "dims": {k: list(v) for k, v in self.dims.items()},
            "brackets": {
                f"{i}|{j}": (None if entry is None
                             else {"target": entry[0], "coefficient": entry[1]})
                for (i, j), entry in sorted(self.entries.items())
            },
        }


def _lie_table(family: ARFamily, product) -> LieTable:
    ar = family.reference_quiver()
    ids = [v.id for v in ar.vertices]
    units = {vid: MultiplicityVector.unit(vid) for vid in ids}
    entries: dict[tuple[str, str], tuple[str, int] | None] = {}
    for i, xi in enumerate(ids):
        for xj in ids[i + 1:]:
            commutator = (product(family, units[xi], units[xj])
                          - product(family, units[xj], units[xi]))
            entry = None
            for mv, coeff in commutator.terms.items():
                unit = mv.unit_id()
                if unit is None:
                    raise NotClosedOnIndecomposables(
                        f"[{xi}, {xj}] has coefficient {coeff} on the "
                        f"decomposable class {mv.render()}")
                if entry is not None:
                    raise NotClosedOnIndecomposables(
                        f"[{xi}, {xj}] is supported on more than one class")
                entry = (unit, coeff)
            entries[(xi, xj)] = entry
    return LieTable(tuple(ids),
                    {v.id: v.rep.dims for v in ar.vertices},
                    {v.id: v.rep.total_dim for v in ar.vertices},
                    entries)


def hall_lie_table(family: ARFamily) -> LieTable:
    """Brackets of unit classes as commutators of the Hall product."""
    return _lie_table(family, hall_product)


def euler_lie_table(family: ARFamily) -> LieTable:
    """Brackets of unit classes as commutators of the Euler product."""
    return _lie_table(family, euler_product)


def verify_isomorphism(kt: LieTable, lt: LieTable) -> Report:
    """Check that u_x -> eps(x) v_x with eps(x) = (-1)^(total dim - 1)
    intertwines the two bracket tables, pair by pair."""
    checks = []
    if kt.basis != lt.basis:
        return Report([CheckResult("same basis", False,
                                   "tables have different bases")])

    def eps(vid: str) -> int:
        return -1 if kt.totals[vid] % 2 == 0 else 1

    for (i, j), k_entry in sorted(kt.entries.items()):
        l_entry = lt.entries[(i, j)]
        mapped = (None if k_entry is None
                  else (k_entry[0], eps(k_entry[0]) * k_entry[1]))
        twisted = (None if l_entry is None
                   else (l_entry[0], eps(i) * eps(j) * l_entry[1]))
        ok = mapped == twisted
        checks.append(CheckResult(
            f"pair ({i}, {j})", ok,
            "" if ok else f"sign-twisted brackets differ: {mapped} vs {twisted}"))
    return Report(checks)


def jacobi_check(t: LieTable) -> Report:
    """[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0 over every basis triple."""

    def outer(x: str, inner: tuple[str, int] | None) -> dict[str, int]:
        if inner is None:
            return {}
        target, coeff = inner
        nxt = t.bracket(x, target)
        if nxt is None:
            return {}
        return {nxt[0]: coeff * nxt[1]}

    checks = []
    n = len(t.basis)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                x, y, z = t.basis[i], t.basis[j], t.basis[k]
                acc: dict[str, int] = {}
                for part in (outer(x, t.bracket(y, z)),
                             outer(y, t.bracket(z, x)),
                             outer(z, t.bracket(x, y))):
                    for key, val in part.items():
                        acc[key] = acc.get(key, 0) + val
                residue = {key: val for key, val in acc.items() if val}
                ok = not residue
                checks.append(CheckResult(
                    f"triple ({x}, {y}, {z})", ok,
                    "" if ok else f"Jacobi residue {residue}"))
    return Report(checks)


# ---------------------------------------------------------------------------
# Root systems


@dataclass(frozen=True)
class RootSystem:
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]


def positive_roots(cartan: Sequence[Sequence[int]], cap: int = 10_000) -> RootSystem:
    """All positive roots of a simply-laced Cartan matrix by reflection
    closure from the simple roots, keeping positive vectors only."""
    n = len(cartan)
    for i, row in enumerate(cartan):
        if len(row) != n or row[i] != 2:
            raise ValueError("not a Cartan matrix")
        for j, val in enumerate(row):
            if i != j and val not in (0, -1):
                raise ValueError("not simply laced")
            if cartan[i][j] != cartan[j][i]:
                raise ValueError("Cartan matrix must be symmetric")

    def reflect(v: tuple[int, ...], i: int) -> tuple[int, ...]:
        pairing = sum(cartan[i][j] * v[j] for j in range(n))
        out = list(v)
        out[i] -= pairing
        return tuple(out)

    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(n):
                w = reflect(v, i)
                if all(x >= 0 for x in w) and w not in roots:
                    roots.add(w)
                    nxt.append(w)
        if len(roots) > cap:
            raise NotFiniteType(
                f"reflection closure exceeded {cap} positive roots")
        frontier = nxt
    ordered = sorted(roots, key=lambda v: (sum(v), v))
    return RootSystem(tuple(tuple(r) for r in cartan), tuple(ordered))


def compare_with_root_system(t: LieTable, rs: RootSystem) -> Report:
    """For a hereditary algebra of Dynkin type: dimension vectors must
    biject with the positive roots, brackets must be nonzero exactly when
    the dimension sum is a root, and every constant must be +1 or -1."""
    checks = []
    dim_set = {tuple(t.dims[b]) for b in t.basis}
    root_set = set(rs.positive_roots)
    checks.append(CheckResult(
        "dimension vectors biject with positive roots",
        dim_set == root_set and len(dim_set) == len(t.basis),
        f"{len(t.basis)} basis elements vs {len(root_set)} roots"))
    for (i, j), entry in sorted(t.entries.items()):
        total = tuple(a + b for a, b in zip(t.dims[i], t.dims[j]))
        is_root = total in root_set
        checks.append(CheckResult(
            f"bracket ({i}, {j}) nonzero iff root sum", (entry is not None) == is_root,
            f"dim sum {total}, entry {entry}"))
        if entry is not None:
            checks.append(CheckResult(
                f"constant ({i}, {j}) is +1/-1", entry[1] in (1, -1),
                f"constant {entry[1]}"))
    return Report(checks)
