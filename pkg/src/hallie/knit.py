"""Auslander-Reiten quiver construction by knitting.

The procedure builds every indecomposable with explicit matrices:

1. A projective P_x is inserted as soon as every indecomposable summand of
   rad P_x is already present; the inclusions of the summands become arrows.
2. A constructed vertex X is processed once all arrows out of it are known
   (every projective whose radical contains X is inserted and every
   predecessor of X has been processed).  If X is injective, nothing more
   happens.  Otherwise the maps on the arrows out of X assemble into a left
   minimal almost split monomorphism eta: X -> E; its cokernel Z is a new
   vertex with translate tau(Z) = X, and the cokernel projection restricted
   to each summand of E is a new arrow E_i -> Z.

Injectivity of a vertex is decided by its dimension vector against the
dimension vectors of the indecomposable injectives, which are read off the
path basis.  Vertex ids are the dimension vectors rendered as
"d1-d2-...-dn"; over a representation-directed algebra these are unique.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .algebra import AlgebraSpec, projective_rep
from .errors import (EtaNotInjective, FieldDependenceDetected, IsProjective,
                     NotDirected, NotRepresentationFinite)
from .linalg import FMatrix, PrimeField, hstack, row_space, vstack
from .reps import (Representation, SubspaceTuple, check_relations, compose_homs,
                   decompose_with_embeddings, direct_sum, find_isomorphism,
                   hom_dim, restrict_to_subtuple, sub_quotient,
                   summand_inclusions)


@dataclass(frozen=True)
class KnitConfig:
    max_vertices: int = 512
    seed: int = 0
    decompose_draws: int = 64


@dataclass
class ARVertex:
    id: str
    index: int
    rep: Representation
    projective: bool


@dataclass
class ARArrow:
    source: str
    target: str
    maps: dict[str, FMatrix]  # vertex id -> block of the irreducible map


@dataclass
class Mesh:
    target: str
    translate: str
    middles: tuple[str, ...]
    eta: tuple[dict[str, FMatrix], ...]
    nu: tuple[dict[str, FMatrix], ...]


@dataclass
class ARSequence:
    translate: ARVertex
    middles: tuple[ARVertex, ...]
    eta: tuple[dict[str, FMatrix], ...]
    nu: tuple[dict[str, FMatrix], ...]


class ARQuiver:
    """The knitted Auslander-Reiten quiver with explicit irreducible maps."""

    def __init__(self, spec: AlgebraSpec, field: PrimeField,
                 vertices: list[ARVertex], arrows: list[ARArrow],
                 tau: dict[str, str], meshes: dict[str, Mesh]):
        self.spec = spec
        self.field = field
        self.vertices = vertices
        self.arrows = arrows
        self.tau = tau
        self.meshes = meshes
        self.by_id = {v.id: v for v in vertices}
        self.order = [v.id for v in vertices]
        self._hom_matrix: list[list[int]] | None = None

    def vertex(self, vertex_id: str) -> ARVertex:
        return self.by_id[vertex_id]

    def arrows_out_of(self, vertex_id: str) -> list[ARArrow]:
        return [a for a in self.arrows if a.source == vertex_id]

    def arrows_into(self, vertex_id: str) -> list[ARArrow]:
        return [a for a in self.arrows if a.target == vertex_id]

    def hom_matrix(self) -> list[list[int]]:
        """H[i][j] = dim Hom(X_i, X_j) in the knitted order (cached)."""
        if self._hom_matrix is None:
            reps = [v.rep for v in self.vertices]
            self._hom_matrix = [[hom_dim(a, b) for b in reps] for a in reps]
        return self._hom_matrix

    def class_dim_vector(self, mv) -> tuple[int, ...]:
        """Dimension vector of the module class given by a multiplicity vector."""
        total = [0] * len(self.spec.vertices)
        for vid, count in mv.items():
            rep = self.by_id[vid].rep
            for k in range(len(total)):
                total[k] += count * rep.dims[k]
        return tuple(total)

    def class_module(self, mv) -> Representation:
        parts = []
        for v in self.vertices:
            count = mv.get(v.id)
            parts.extend([v.rep] * count)
        return direct_sum(self.spec, self.field, parts)


def _hom_check(source: Representation, target: Representation,
               maps: Mapping[str, FMatrix]) -> bool:
    """Whether a vertex-indexed matrix tuple is a homomorphism source -> target."""
    spec = source.spec
    for a in spec.quiver.arrows:
        left = maps[a.target].mul(source.maps[a.id])
        right = target.maps[a.id].mul(maps[a.source])
        if left != right:
            return False
    return True


def _is_nonzero(maps: Mapping[str, FMatrix]) -> bool:
    return any(not m.is_zero() for m in maps.values())


def radical_tuple(p_rep: Representation, x: str) -> SubspaceTuple:
    """rad P_x inside P_x: the full space away from x, zero at x."""
    field = p_rep.field
    bases = []
    for v, d in zip(p_rep.spec.vertices, p_rep.dims):
        if v == x:
            bases.append(FMatrix.zeros(field, 0, d))
        else:
            bases.append(FMatrix.identity(field, d))
    return SubspaceTuple(p_rep, tuple(bases))


def knit(spec: AlgebraSpec, p: int, config: KnitConfig | None = None) -> ARQuiver:
    """Construct the Auslander-Reiten quiver of the algebra over F_p."""
    config = config or KnitConfig()
    field = PrimeField(p)
    verts = spec.vertices

    projectives = {x: projective_rep(spec, x, p) for x in verts}
    for x, pr in projectives.items():
        assert check_relations(pr), f"projective at {x} violates relations"

    # radical summands with embeddings into P_x, computed up front
    rad_summands: dict[str, list[tuple[Representation, dict[str, FMatrix]]]] = {}
    rad_ids: dict[str, list[str]] = {}
    for x in verts:
        pr = projectives[x]
        tup = radical_tuple(pr, x)
        rad, incl = restrict_to_subtuple(pr, tup)
        if rad.is_zero():
            rad_summands[x] = []
            rad_ids[x] = []
            continue
        pieces = decompose_with_embeddings(rad, seed=config.seed,
                                           draws=config.decompose_draws)
        with_embed = [(rep, compose_homs(incl, emb)) for rep, emb in pieces]
        ids = [rep.dim_id() for rep, _ in with_embed]
        if len(set(ids)) != len(ids):
            raise NotDirected(
                f"rad P_{x} has repeated summand dimension vectors {ids}; "
                "arrows would have non-trivial valuation")
        rad_summands[x] = with_embed
        rad_ids[x] = ids

    injective_ids = {spec.render_dim_id(d)
                     for d in spec.injective_dim_vectors().values()}
    # which projectives wait on a given summand id
    needed_by: dict[str, set[str]] = {}
    for x, ids in rad_ids.items():
        for vid in ids:
            needed_by.setdefault(vid, set()).add(x)

    vertices: list[ARVertex] = []
    arrows: list[ARArrow] = []
    tau: dict[str, str] = {}
    meshes: dict[str, Mesh] = {}
    by_id: dict[str, ARVertex] = {}
    arrows_out: dict[str, list[ARArrow]] = {}
    arrows_in: dict[str, list[ARArrow]] = {}
    processed: set[str] = set()
    inserted: set[str] = set()

    def add_vertex(rep: Representation, projective: bool) -> ARVertex:
        vid = rep.dim_id()
        if vid in by_id:
            raise NotDirected(
                f"duplicate dimension vector {vid}; the input is outside the "
                "representation-directed class")
        if len(vertices) >= config.max_vertices:
            raise NotRepresentationFinite(
                f"knitting exceeded {config.max_vertices} vertices without closing up")
        assert check_relations(rep)
        v = ARVertex(vid, len(vertices), rep, projective)
        vertices.append(v)
        by_id[vid] = v
        arrows_out.setdefault(vid, [])
        arrows_in.setdefault(vid, [])
        return v

    def add_arrow(source: str, target: str, maps: dict[str, FMatrix]) -> None:
        src, dst = by_id[source], by_id[target]
        if not _is_nonzero(maps) or not _hom_check(src.rep, dst.rep, maps):
            raise NotDirected(f"arrow {source} -> {target} is not a nonzero map")
        if any(a.target == target for a in arrows_out[source]):
            raise NotDirected(
                f"second arrow {source} -> {target}; non-trivial valuation")
        arrow = ARArrow(source, target, maps)
        arrows.append(arrow)
        arrows_out[source].append(arrow)
        arrows_in[target].append(arrow)

    def insert_projective(x: str) -> None:
        v = add_vertex(projectives[x], projective=True)
        for rep, emb in rad_summands[x]:
            source = by_id[rep.dim_id()]
            iso = find_isomorphism(source.rep, rep)
            if iso is None:
                raise NotDirected(
                    f"radical summand of P_{x} with dimension vector "
                    f"{rep.dim_id()} is not isomorphic to the knitted vertex")
            add_arrow(source.id, v.id, compose_homs(emb, iso))
        inserted.add(x)

    def ready(v: ARVertex) -> bool:
        waiting = needed_by.get(v.id, ())
        if any(x not in inserted for x in waiting):
            return False
        return all(a.source in processed for a in arrows_in[v.id])

    def process(v: ARVertex) -> None:
        processed.add(v.id)
        if v.id in injective_ids:
            return
        outs = sorted(arrows_out[v.id], key=lambda a: a.target)
        if not outs:
            # no successors: nothing to extend, the vertex is injective
            return
        targets = [by_id[a.target] for a in outs]
        e_rep = direct_sum(spec, field, [t.rep for t in targets])
        inclusions = summand_inclusions(spec, field, [t.rep for t in targets])
        eta = {}
        for i, vx in enumerate(verts):
            blocks = [a.maps[vx] for a in outs]
            eta[vx] = vstack(field, blocks, ncols=v.rep.dims[i])
        for i, vx in enumerate(verts):
            if eta[vx].rank() != v.rep.dims[i]:
                raise EtaNotInjective(
                    f"left almost split map out of {v.id} is not injective at "
                    f"vertex {vx}")
        image = SubspaceTuple(e_rep, tuple(row_space(eta[vx].transpose())
                                           for vx in verts))
        sq = sub_quotient(e_rep, image)
        z_rep = sq.quot
        expected = tuple(e_rep.dims[i] - v.rep.dims[i] for i in range(len(verts)))
        assert z_rep.dims == expected, "mesh dimension relation failed"
        z = add_vertex(z_rep, projective=False)
        tau[z.id] = v.id
        nu_list = []
        for t, incl in zip(targets, inclusions):
            nu = compose_homs(sq.projection, incl)
            add_arrow(t.id, z.id, nu)
            nu_list.append(nu)
        meshes[z.id] = Mesh(target=z.id, translate=v.id,
                            middles=tuple(t.id for t in targets),
                            eta=tuple(a.maps for a in outs), nu=tuple(nu_list))

    while True:
        progress = False
        for x in verts:
            if x not in inserted and all(i in by_id for i in rad_ids[x]):
                insert_projective(x)
                progress = True
        candidates = sorted((v for v in vertices if v.id not in processed and ready(v)),
                            key=lambda v: v.id)
        if candidates:
            process(candidates[0])
            progress = True
        done = len(inserted) == len(verts) and all(v.id in processed for v in vertices)
        if done:
            break
        if not progress:
            raise NotDirected("knitting stalled; no ready vertex and no "
                              "insertable projective")

    ar = ARQuiver(spec, field, vertices, arrows, tau, meshes)
    H = ar.hom_matrix()
    for i in range(len(vertices)):
        for j in range(i):
            if H[i][j] != 0:
                raise NotDirected(
                    f"Hom({vertices[i].id}, {vertices[j].id}) != 0 against the "
                    "knitting order")
    return ar


def ar_sequence(ar: ARQuiver, z: str) -> ARSequence:
    """The stored almost split sequence ending at a non-projective vertex,
    re-verified: eta mono, nu epi, nu . eta = 0, exactness by ranks."""
    vert = ar.vertex(z)
    if vert.projective:
        raise IsProjective(f"{z} is projective; no almost split sequence ends there")
    mesh = ar.meshes[z]
    x = ar.vertex(mesh.translate)
    middles = tuple(ar.vertex(mid) for mid in mesh.middles)
    spec, field = ar.spec, ar.field
    for i, vx in enumerate(spec.vertices):
        eta_blocks = [m[vx] for m in mesh.eta]
        eta = vstack(field, eta_blocks, ncols=x.rep.dims[i])
        if eta.rank() != x.rep.dims[i]:
            raise EtaNotInjective(f"stored eta not injective at vertex {vx}")
        nu = hstack(field, [m[vx] for m in mesh.nu], nrows=vert.rep.dims[i])
        composite = nu.mul(eta)
        if not composite.is_zero():
            raise NotDirected(f"nu . eta != 0 at vertex {vx}")
        if nu.rank() != vert.rep.dims[i]:
            raise NotDirected(f"stored nu not surjective at vertex {vx}")
        mid_total = sum(mid.rep.dims[i] for mid in middles)
        if x.rep.dims[i] + vert.rep.dims[i] != mid_total:
            raise NotDirected(f"mesh dimensions inconsistent at vertex {vx}")
    return ARSequence(x, middles, mesh.eta, mesh.nu)


def quiver_shape(ar: ARQuiver) -> dict:
    """Field-independent summary used for cross-prime comparison."""
    return {
        "vertices": sorted((v.id, v.projective) for v in ar.vertices),
        "arrows": sorted((a.source, a.target) for a in ar.arrows),
        "tau": sorted(ar.tau.items()),
    }


@dataclass
class FieldIndependenceReport:
    primes: tuple[int, ...]
    vertex_count: int
    shape: dict = field(repr=False)

    def to_doc(self) -> dict:
        return {"primes": list(self.primes), "vertex_count": self.vertex_count,
                "identical": True, "shape": self.shape}


def check_field_independence(spec: AlgebraSpec, primes: Sequence[int],
                             config: KnitConfig | None = None) -> FieldIndependenceReport:
    """Knit over each prime and insist the combinatorial data agree.

    Vertices are matched through their dimension vectors, which determine
    indecomposables uniquely here, so equality of the id-level shapes is the
    right notion of isomorphism of translation quivers.
    """
    if len(primes) < 2:
        raise ValueError("need at least two primes")
    shapes = {}
    for p in primes:
        shapes[p] = quiver_shape(knit(spec, p, config))
    reference = shapes[primes[0]]
    for p in primes[1:]:
        if shapes[p] != reference:
            raise FieldDependenceDetected(
                f"AR quiver over F_{p} differs from F_{primes[0]}")
    return FieldIndependenceReport(tuple(primes), len(reference["vertices"]),
                                   reference)


# ---------------------------------------------------------------------------
# serialization (CLI output and the knit cache)


def ar_to_doc(ar: ARQuiver, with_maps: bool = False) -> dict:
    doc = {
        "prime": ar.field.p,
        "vertices": [
            {"id": v.id, "dim": list(v.rep.dims), "total_dim": v.rep.total_dim,
             "projective": v.projective, "tau": ar.tau.get(v.id)}
            for v in ar.vertices
        ],
        "arrows": [{"source": a.source, "target": a.target} for a in ar.arrows],
        "order": list(ar.order),
    }
    if with_maps:
        doc["representations"] = {
            v.id: {aid: [list(r) for r in mat.rows]
                   for aid, mat in v.rep.maps.items()}
            for v in ar.vertices
        }
        doc["arrow_maps"] = [
            {vx: [list(r) for r in a.maps[vx].rows] for vx in ar.spec.vertices}
            for a in ar.arrows
        ]
        doc["meshes"] = {
            z: {"translate": m.translate, "middles": list(m.middles),
                "eta": [{vx: [list(r) for r in h[vx].rows] for vx in ar.spec.vertices}
                        for h in m.eta],
                "nu": [{vx: [list(r) for r in h[vx].rows] for vx in ar.spec.vertices}
                       for h in m.nu]}
            for z, m in ar.meshes.items()
        }
    return doc


def _maps_from_doc(spec: AlgebraSpec, field: PrimeField, doc: Mapping[str, list],
                   source_dims: Sequence[int], target_dims: Sequence[int]):
    out = {}
    for i, vx in enumerate(spec.vertices):
        out[vx] = FMatrix.from_rows(field, doc[vx], ncols=source_dims[i])
        if out[vx].nrows != target_dims[i]:
            raise ValueError("stored map has wrong shape")
    return out


def ar_from_doc(spec: AlgebraSpec, doc: dict) -> ARQuiver:
    """Rebuild a knitted quiver from ``ar_to_doc(..., with_maps=True)``."""
    field = PrimeField(doc["prime"])
    index = {v: i for i, v in enumerate(spec.vertices)}
    vertices = []
    tau = {}
    for entry in doc["vertices"]:
        dims = tuple(entry["dim"])
        maps = {}
        stored = doc["representations"][entry["id"]]
        for a in spec.quiver.arrows:
            maps[a.id] = FMatrix.from_rows(field, stored[a.id],
                                           ncols=dims[index[a.source]])
        rep = Representation(spec, field, dims, maps)
        vertices.append(ARVertex(entry["id"], len(vertices), rep,
                                 entry["projective"]))
        if entry["tau"]:
            tau[entry["id"]] = entry["tau"]
    by_id = {v.id: v for v in vertices}
    arrows = []
    for entry, stored in zip(doc["arrows"], doc["arrow_maps"]):
        src, dst = by_id[entry["source"]], by_id[entry["target"]]
        arrows.append(ARArrow(entry["source"], entry["target"],
                              _maps_from_doc(spec, field, stored,
                                             src.rep.dims, dst.rep.dims)))
    meshes = {}
    for z, m in doc.get("meshes", {}).items():
        mids = [by_id[i] for i in m["middles"]]
        x = by_id[m["translate"]]
        eta = tuple(_maps_from_doc(spec, field, h, x.rep.dims, mid.rep.dims)
                    for h, mid in zip(m["eta"], mids))
        nu = tuple(_maps_from_doc(spec, field, h, mid.rep.dims, by_id[z].rep.dims)
                   for h, mid in zip(m["nu"], mids))
        meshes[z] = Mesh(z, m["translate"], tuple(m["middles"]), eta, nu)
    return ARQuiver(spec, field, vertices, arrows, tau, meshes)
