"""Catalog of standard triangulations plus product and subdivision builders.

These are the test links the rest of the package leans on: minimal or
near-minimal triangulations with well-known rational cohomology, kept
small enough that exact elimination stays fast.
"""

from __future__ import annotations

from itertools import permutations

from .simplicial import SimplicialComplex


def circle(n: int = 3) -> SimplicialComplex:
    """Cyclic triangulation of S^1 with n >= 3 vertices."""
    if n < 3:
        raise ValueError("a triangulated circle needs at least 3 vertices")
    verts = [f"{i:02d}" if n > 10 else str(i) for i in range(n)]
    edges = [[verts[i], verts[(i + 1) % n]] for i in range(n)]
    return SimplicialComplex(verts, edges)


def sphere2() -> SimplicialComplex:
    """Octahedral S^2: antipodal pairs (0,1), (2,3), (4,5)."""
    verts = [str(i) for i in range(6)]
    faces = [[a, b, c] for a in "01" for b in "23" for c in "45"]
    return SimplicialComplex(verts, faces)


def simplex_boundary_sphere(n: int) -> SimplicialComplex:
    """S^n as the boundary of the standard (n+1)-simplex."""
    verts = [f"{i:02d}" if n + 2 > 10 else str(i) for i in range(n + 2)]
    faces = [[v for v in verts if v != w] for w in verts]
    return SimplicialComplex(verts, faces)


def torus7() -> SimplicialComplex:
    """Moebius-Kantor 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7."""
    verts = [str(i) for i in range(7)]
    faces = []
    for i in range(7):
        faces.append([verts[i], verts[(i + 1) % 7], verts[(i + 3) % 7]])
        faces.append([verts[i], verts[(i + 2) % 7], verts[(i + 3) % 7]])
    return SimplicialComplex(verts, faces)


def projective_plane6() -> SimplicialComplex:
    """Minimal 6-vertex RP^2 (antipodal quotient of the icosahedron)."""
    faces = [
        "123", "124", "135", "146", "156",
        "236", "245", "256", "345", "346",
    ]
    return SimplicialComplex([str(i) for i in range(1, 7)], [list(f) for f in faces])


_CP2_FACETS = """
1 2 4 5 6   2 3 5 6 4   3 1 6 4 5
1 2 4 5 9   2 3 5 6 7   3 1 6 4 8
2 3 6 4 9   3 1 4 5 7   1 2 5 6 8
3 1 5 6 9   1 2 6 4 7   2 3 4 5 8
4 5 7 8 9   5 6 8 9 7   6 4 9 7 8
4 5 7 8 3   5 6 8 9 1   6 4 9 7 2
5 6 9 7 3   6 4 7 8 1   4 5 8 9 2
6 4 8 9 3   4 5 9 7 1   5 6 7 8 2
7 8 1 2 3   8 9 2 3 1   9 7 3 1 2
7 8 1 2 6   8 9 2 3 4   9 7 3 1 5
8 9 3 1 6   9 7 1 2 4   7 8 2 3 5
9 7 2 3 6   7 8 3 1 4   8 9 1 2 5
"""


def projective_plane_complex9() -> SimplicialComplex:
    """The 9-vertex complex projective plane (36 facets, 3-neighborly)."""
    tokens = _CP2_FACETS.split()
    facets = [tokens[i : i + 5] for i in range(0, len(tokens), 5)]
    return SimplicialComplex([str(i) for i in range(1, 10)], facets)


def product(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Staircase (ordered simplicial) product K x L.

    For facets s of K and t of L, the product facets are the monotone
    lattice paths through the grid s x t advancing one factor per step;
    their faces are exactly the monotone chains with simplex projections.
    """
    def paths(p: int, q: int):
        if p == 0 and q == 0:
            yield [(0, 0)]
            return
        if p > 0:
            for path in paths(p - 1, q):
                yield path + [(p, q)]
        if q > 0:
            for path in paths(p, q - 1):
                yield path + [(p, q)]

    kverts = K.vertex_names
    lverts = L.vertex_names
    verts = [f"({u},{v})" for u in kverts for v in lverts]
    facets = []
    for s in K.simplices(K.dimension):
        for t in L.simplices(L.dimension):
            for path in paths(len(s) - 1, len(t) - 1):
                facets.append([f"({kverts[s[i]]},{lverts[t[j]]})" for i, j in path])
    return SimplicialComplex(verts, facets)


def barycentric(K: SimplicialComplex) -> SimplicialComplex:
    """Barycentric subdivision; vertices are named after the faces they subdivide."""
    def name(simplex: tuple[int, ...]) -> str:
        return "+".join(K.vertex_names[i] for i in simplex)

    verts = [name(s) for k in range(K.dimension + 1) for s in K.simplices(k)]
    facets = []
    for top in K.simplices(K.dimension):
        for perm in permutations(top):
            chain = [name(tuple(sorted(perm[: i + 1]))) for i in range(len(perm))]
            facets.append(chain)
    return SimplicialComplex(verts, facets)
