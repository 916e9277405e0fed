"""Shared test fixtures and independent oracles.

The oracles here deliberately avoid the package's own linear algebra and
search code so that the main engines are checked against a second route.
"""
from __future__ import annotations

import random
from itertools import combinations

import pytest

from tnt import (
    SimplicialComplex,
    apply_move,
    boundary_simplex,
    cross_polytope_boundary,
    stacked_sphere,
    valid_moves,
)


# -- dense rational-rank oracle ------------------------------------------------


def dense_gf2_rank(rows: list[list[int]]) -> int:
    """Row-reduce a dense 0/1 matrix over GF(2), no packing, no numpy."""
    mat = [row[:] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                mat[i] = [a ^ b for a, b in zip(mat[i], mat[r])]
        r += 1
        rank += 1
    return rank


def oracle_betti(K: SimplicialComplex) -> tuple[int, ...]:
    """GF(2) Betti numbers from scratch: dense boundary matrices, dense rank."""
    if not K.facets:
        return ()
    d = K.dim
    faces = [sorted({f for fac in K.facets for f in combinations(fac, j + 1)}) for j in range(d + 1)]
    ranks = [0] * (d + 2)
    for j in range(1, d + 1):
        index = {f: i for i, f in enumerate(faces[j - 1])}
        rows = []
        for f in faces[j]:
            row = [0] * len(faces[j - 1])
            for k in range(len(f)):
                row[index[f[:k] + f[k + 1 :]]] = 1
            rows.append(row)
        ranks[j] = dense_gf2_rank(rows)
    out = []
    for j in range(d + 1):
        out.append(len(faces[j]) - ranks[j] - ranks[j + 1])
    return tuple(out)


# -- small-complex isomorphism (brute force over signatures) -------------------


def are_isomorphic(K1: SimplicialComplex, K2: SimplicialComplex) -> bool:
    """Exact isomorphism test for small vertex counts, by backtracking."""
    v1, v2 = K1.vertices, K2.vertices
    if len(v1) != len(v2) or K1.f_vector() != K2.f_vector():
        return False

    def sig(K, v):
        return (len(K.link((v,)).facets), K.link((v,)).f_vector())

    s1 = {v: sig(K1, v) for v in v1}
    s2 = {v: sig(K2, v) for v in v2}
    if sorted(s1.values()) != sorted(s2.values()):
        return False
    fs2 = set(K2.facets)

    def extend(mapping, remaining):
        if not remaining:
            img = {tuple(sorted(mapping[x] for x in f)) for f in K1.facets}
            return img == fs2
        v = remaining[0]
        used = set(mapping.values())
        for w in v2:
            if w in used or s2[w] != s1[v]:
                continue
            mapping[v] = w
            ok = True
            # partial consistency: edges must map to edges
            for u in mapping:
                if u == v:
                    continue
                e1 = tuple(sorted((u, v)))
                e2 = tuple(sorted((mapping[u], w)))
                if K1.has_face(e1) != K2.has_face(e2):
                    ok = False
                    break
            if ok and extend(mapping, remaining[1:]):
                return True
            del mapping[v]
        return False

    order = sorted(v1, key=lambda v: (sorted(s1.values()).count(s1[v]), v))
    return extend({}, order)


# -- random sphere generator ---------------------------------------------------


def random_sphere(rng: random.Random, d: int | None = None, walk: int = 6) -> SimplicialComplex:
    """A small sphere: random stacked start plus a short bistellar walk."""
    if d is None:
        d = rng.choice([2, 3, 4])
    n = rng.randint(d + 2, d + 6)
    M = stacked_sphere(d, n, seed=rng.randrange(10**6))
    for _ in range(walk):
        mvs = valid_moves(M)
        if not mvs:
            break
        M = apply_move(M, mvs[rng.randrange(len(mvs))])
    return M


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


@pytest.fixture(scope="session")
def octahedron():
    return cross_polytope_boundary(3)


@pytest.fixture(scope="session")
def sphere2():
    return boundary_simplex(3)
