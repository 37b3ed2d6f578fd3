"""Development of a verified array into a face 2-coloured embedding.

Row and column lines become base faces via their partial sums; translating
the base faces by every residue develops the full face set on the vertex set
Z_M.  The certificate checks that the result is a genuine orientable surface
(not a pseudosurface) and reports its Euler data.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass

from .core import HeffterError, ParameterError, SparseSquareArray
from .verify import OrderingScheme

# Edge count grows like M^2/2; refuse silly sizes unless forced.
LARGE_MODULUS_GUARDRAIL = 20000


class GuardrailError(HeffterError):
    """Modulus beyond the desk-scale guardrail without the force flag."""


@dataclass(frozen=True)
class Face:
    """A face of one colour: a cyclic vertex list of residues mod M."""

    colour: str  # "B" (from rows) or "W" (from columns)
    vertices: tuple[int, ...]


@dataclass
class Embedding:
    modulus: int
    black_faces: list[Face]
    white_faces: list[Face]
    provenance: dict | None = None

    @property
    def faces(self) -> list[Face]:
        return self.black_faces + self.white_faces


@dataclass
class SurfaceCertificate:
    edge_cover_ok: bool
    vertex_links_single_cycle: bool
    orientable: bool
    V: int
    E: int
    F: int
    genus: int
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.edge_cover_ok and self.vertex_links_single_cycle and self.orientable


def base_faces(
    array: SparseSquareArray, scheme: OrderingScheme, modulus: int
) -> list[Face]:
    """One face per line: the partial-sum walk starting at vertex 0.

    Rows give black faces, columns give white faces.  Column walks run
    against their ordering so that the two faces on every edge traverse it in
    opposite directions; this is what turns compatibility of the orderings
    into a single umbrella of faces around each vertex.  A line whose partial
    sums repeat cannot yield a face with distinct vertices and is rejected.
    """
    faces: list[Face] = []
    for colour, orders in (("B", scheme.row_orders), ("W", scheme.col_orders)):
        for a, order in enumerate(orders):
            if not order:
                continue
            walk = order if colour == "B" else list(reversed(order))
            verts = []
            acc = 0
            for cell in walk:
                verts.append(acc)
                acc = (acc + array.entries[cell]) % modulus
            if acc != 0:
                raise ParameterError(
                    f"line {colour}/{a} does not sum to zero mod {modulus}"
                )
            if len(set(verts)) != len(verts):
                raise ParameterError(
                    f"line {colour}/{a} is not simple: face would repeat a vertex"
                )
            faces.append(Face(colour=colour, vertices=tuple(verts)))
    return faces


def develop(base: list[Face], modulus: int) -> Embedding:
    """All translates x + C of the base faces under the action x -> x + 1."""
    black: list[Face] = []
    white: list[Face] = []
    for face in base:
        target = black if face.colour == "B" else white
        for x in range(modulus):
            target.append(
                Face(colour=face.colour, vertices=tuple((v + x) % modulus for v in face.vertices))
            )
    return Embedding(modulus=modulus, black_faces=black, white_faces=white)


def _face_edges(face: Face):
    verts = face.vertices
    k = len(verts)
    for i in range(k):
        yield verts[i], verts[(i + 1) % k]


def verify_surface(emb: Embedding, force_large: bool = False) -> SurfaceCertificate:
    """Certify that the developed faces form an orientable surface embedding.

    Checks, in order: every vertex pair is covered by exactly one face of
    each colour; the faces around every vertex close into a single umbrella
    (a pseudosurface shows up here as a split link); and a consistent
    orientation propagates across all faces without conflict.  V, E, F and
    the genus from the Euler relation are always reported.
    """
    M = emb.modulus
    if M > LARGE_MODULUS_GUARDRAIL and not force_large:
        raise GuardrailError(
            f"modulus {M} exceeds guardrail {LARGE_MODULUS_GUARDRAIL}; pass force_large"
        )
    faces = emb.faces
    V = M
    E = M * (M - 1) // 2
    F = len(faces)
    genus = (2 - (V - E + F)) // 2
    detail = ""

    # (a) edge cover, per colour
    cover_ok = True
    counts: dict[tuple[int, int], list[int]] = defaultdict(lambda: [0, 0])
    for fi, face in enumerate(faces):
        ci = 0 if face.colour == "B" else 1
        for u, v in _face_edges(face):
            if u == v:
                cover_ok = False
                detail = f"degenerate edge at vertex {u} in face {fi}"
                break
            key = (u, v) if u < v else (v, u)
            counts[key][ci] += 1
    if cover_ok:
        if len(counts) != E:
            cover_ok = False
            detail = f"only {len(counts)} of {E} vertex pairs covered"
        else:
            for key, (b, w) in counts.items():
                if b != 1 or w != 1:
                    cover_ok = False
                    detail = f"edge {key} covered {b} black / {w} white times"
                    break

    # (b) vertex links: each corner (u, v, w) adds link edge u-w at v
    links_ok = cover_ok
    if cover_ok:
        link: list[dict[int, list[int]]] = [defaultdict(list) for _ in range(M)]
        for face in faces:
            verts = face.vertices
            k = len(verts)
            for i in range(k):
                u, v, w = verts[i - 1], verts[i], verts[(i + 1) % k]
                link[v][u].append(w)
                link[v][w].append(u)
        for v in range(M):
            adj = link[v]
            if any(len(nbrs) != 2 for nbrs in adj.values()):
                links_ok = False
                detail = f"vertex {v} link is not 2-regular"
                break
            start = next(iter(adj))
            prev, cur = None, start
            seen = 1
            while True:
                a, b = adj[cur]
                nxt = b if a == prev else a
                if nxt == start:
                    break
                prev, cur = cur, nxt
                seen += 1
            if seen != len(adj):
                links_ok = False
                detail = f"vertex {v} link splits into more than one cycle"
                break

    # (c) orientability: propagate face flips across shared edges
    orientable = cover_ok
    if cover_ok:
        incidence: dict[tuple[int, int], list[tuple[int, bool]]] = defaultdict(list)
        for fi, face in enumerate(faces):
            for u, v in _face_edges(face):
                key = (u, v) if u < v else (v, u)
                incidence[key].append((fi, u < v))
        flip = [-1] * F
        for root in range(F):
            if flip[root] != -1:
                continue
            flip[root] = 0
            queue = deque([root])
            while queue and orientable:
                fi = queue.popleft()
                for u, v in _face_edges(faces[fi]):
                    key = (u, v) if u < v else (v, u)
                    for fj, fwd in incidence[key]:
                        if fj == fi:
                            continue
                        # same traversal direction forces opposite flips
                        my_fwd = u < v
                        want = flip[fi] ^ (1 if fwd == my_fwd else 0)
                        if flip[fj] == -1:
                            flip[fj] = want
                            queue.append(fj)
                        elif flip[fj] != want:
                            orientable = False
                            detail = f"orientation conflict on edge {key}"
                            break
                    if not orientable:
                        break

    return SurfaceCertificate(
        edge_cover_ok=cover_ok,
        vertex_links_single_cycle=links_ok,
        orientable=orientable,
        V=V,
        E=E,
        F=F,
        genus=genus,
        detail=detail,
    )


def write_faces(emb: Embedding, path) -> None:
    """One face per line: colour, space, comma-separated vertices."""
    with open(path, "w", encoding="utf-8") as fh:
        for face in emb.faces:
            fh.write(f"{face.colour} {','.join(str(v) for v in face.vertices)}\n")
