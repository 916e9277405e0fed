"""GF(2) simplicial homology and induced-kernel computations.

Betti numbers come from boundary-matrix ranks: beta_j = f_j - rank d_j -
rank d_{j+1}.  A per-complex :class:`ChainEngine` caches face indices,
bit-packed boundary rows, and boundary-space bases so that full
subcomplexes (vertex spans) can be processed without rebuilding chain
complexes: faces of a span keep their positions in the ambient index, so
span boundary ranks are ranks of selected row subsets.
"""
from __future__ import annotations

import numpy as np

from . import gf2
from .complexes import SimplicialComplex, Simplex, simplex

__all__ = [
    "HomologyReport",
    "boundary_matrix",
    "betti_numbers",
    "reduced_betti",
    "induced_kernel_dim",
    "relative_mu_contribution",
    "ChainEngine",
]


class HomologyReport:
    """Betti numbers of a complex over GF(2).

    ``betti[j]`` is the rank of H_j.  ``reduced`` is shifted by one:
    ``reduced[k]`` is the rank of reduced H_{k-1}, so ``reduced[0]`` is the
    degree -1 entry (1 for the empty complex, else 0).
    """

    __slots__ = ("betti", "reduced", "field")

    def __init__(self, betti: tuple[int, ...], reduced: tuple[int, ...], field: str = "GF2"):
        self.betti = betti
        self.reduced = reduced
        self.field = field

    def to_json(self) -> dict:
        return {"betti": list(self.betti), "reduced": list(self.reduced), "field": self.field}

    def __eq__(self, other):
        if not isinstance(other, HomologyReport):
            return NotImplemented
        return self.betti == other.betti and self.reduced == other.reduced

    def __repr__(self) -> str:
        return f"HomologyReport(betti={self.betti}, reduced={self.reduced}, field={self.field!r})"


class ChainEngine:
    """Chain-level view of a complex: face indices and packed boundary rows.

    ``brows[j]`` has one packed row per j-face holding the incidence with
    the (j-1)-faces; ranks and boundary-space bases are cached.  Use
    :func:`engine` to get the per-complex cached instance.
    """

    def __init__(self, K: SimplicialComplex):
        self.K = K
        d = K.dim
        self.dim = d
        self.faces = [K.faces(j) for j in range(d + 1)]
        self.index = [{f: i for i, f in enumerate(fs)} for fs in self.faces]
        self.f = tuple(len(fs) for fs in self.faces)
        self.brows: list[np.ndarray | None] = [None] * (d + 1)
        self._vmask: list[np.ndarray] | None = None
        self._vpos: dict[int, int] | None = None
        self._ranks: dict[int, int] = {}
        self._bbasis: dict[int, np.ndarray] = {}

    def boundary_rows(self, j: int) -> np.ndarray:
        """Packed rows of d_j, one row per j-face over (j-1)-face columns."""
        if j < 1 or j > self.dim:
            return np.zeros((0, 1), dtype=np.uint64)
        if self.brows[j] is None:
            lower = self.index[j - 1]
            fj = self.faces[j]
            rows = np.zeros((len(fj), max(1, (self.f[j - 1] + 63) >> 6)), dtype=np.uint64)
            one = np.uint64(1)
            for i, face in enumerate(fj):
                for k in range(len(face)):
                    sub = face[:k] + face[k + 1 :]
                    c = lower[sub]
                    rows[i, c >> 6] |= one << np.uint64(c & 63)
            self.brows[j] = rows
        return self.brows[j]

    def rank(self, j: int) -> int:
        """Rank of d_j."""
        if j < 1 or j > self.dim:
            return 0
        if j not in self._ranks:
            self._ranks[j] = gf2.rank_of_words(self.boundary_rows(j), self.f[j - 1])
        return self._ranks[j]

    def boundary_basis(self, i: int) -> np.ndarray:
        """RREF basis rows of the boundary space B_i over the i-face columns."""
        if i not in self._bbasis:
            if i + 1 > self.dim:
                self._bbasis[i] = np.zeros((0, 1), dtype=np.uint64)
            else:
                rref, piv = gf2.rref_of_words(self.boundary_rows(i + 1), self.f[i])
                self._bbasis[i] = rref
                self._ranks[i + 1] = len(piv)
        return self._bbasis[i]

    def betti(self) -> tuple[int, ...]:
        d = self.dim
        if d < 0:
            return ()
        return tuple(self.f[j] - self.rank(j) - self.rank(j + 1) for j in range(d + 1))

    # -- vertex-span machinery (needs at most 64 vertices) ----------------

    def _vertex_masks(self):
        if self._vmask is None:
            verts = self.K.vertices
            if len(verts) > 64:
                raise ValueError("span engine supports at most 64 vertices")
            vpos = {v: i for i, v in enumerate(verts)}
            masks = []
            for fs in self.faces:
                arr = np.zeros(len(fs), dtype=np.uint64)
                for i, face in enumerate(fs):
                    m = 0
                    for v in face:
                        m |= 1 << vpos[v]
                    arr[i] = m
                masks.append(arr)
            self._vmask = masks
            self._vpos = vpos
        return self._vmask, self._vpos

    def word_of(self, w) -> int:
        """Bitmask over vertex positions for a vertex set ``w``."""
        _, vpos = self._vertex_masks()
        m = 0
        for v in w:
            m |= 1 << vpos[v]
        return m

    def span_selection(self, wmask: int, jmax: int) -> list[np.ndarray]:
        """Index arrays of the faces lying inside the vertex-mask, per dim."""
        vmask, _ = self._vertex_masks()
        notw = np.uint64(~wmask & 0xFFFFFFFFFFFFFFFF)
        out = []
        for j in range(min(jmax, self.dim) + 1):
            out.append(np.nonzero((vmask[j] & notw) == 0)[0])
        return out

    def span_rank(self, sel_j: np.ndarray, j: int) -> int:
        """Rank of d_j restricted to a span.

        Faces of span faces stay in the span, so the selected rows of the
        ambient d_j already have support inside the span's columns and the
        restricted rank equals the rank of the row subset.
        """
        if j < 1 or j > self.dim or sel_j.size == 0:
            return 0
        return gf2.rank_of_words(self.boundary_rows(j)[sel_j], self.f[j - 1])

    def span_betti(self, wmask: int, imax: int | None = None) -> tuple[int, ...]:
        """Betti numbers of the span of a vertex mask (empty span gives ())."""
        jcap = self.dim if imax is None else min(imax + 1, self.dim)
        sel = self.span_selection(wmask, jcap)
        top = max((j for j in range(len(sel)) if sel[j].size), default=-1)
        ranks = [self.span_rank(sel[j], j) if j <= top else 0 for j in range(len(sel) + 1)]
        out = []
        for j in range(top + 1):
            nxt = ranks[j + 1] if j + 1 < len(ranks) else 0
            out.append(int(sel[j].size) - ranks[j] - nxt)
        return tuple(out)

    def span_kernel_dim(self, wmask: int, i: int, sel: list[np.ndarray] | None = None) -> int:
        """dim ker(H_i(span) -> H_i(K)) via the masked boundary basis.

        A cycle of the span bounds in K exactly when it lies in B_i(K) with
        support inside the span's i-faces; those form the subspace of the
        boundary space vanishing on the complementary columns.
        """
        if i < 0 or i > self.dim:
            return 0
        if sel is None:
            sel = self.span_selection(wmask, min(i + 1, self.dim))
        if i >= len(sel) or sel[i].size == 0:
            return 0
        basis = self.boundary_basis(i)
        r_amb = basis.shape[0]
        if r_amb == 0:
            return 0
        keep = np.ones(self.f[i], dtype=bool)
        keep[sel[i]] = False  # columns outside the span
        outside = gf2.pack_bool(keep)
        masked = basis & outside[np.newaxis, :]
        z_cap_b = r_amb - gf2.rank_of_words(masked, self.f[i])
        b_span = self.span_rank(sel[i + 1], i + 1) if i + 1 < len(sel) else 0
        return z_cap_b - b_span


def engine(K: SimplicialComplex) -> ChainEngine:
    """The cached chain engine of a complex."""
    if "chain_engine" not in K._cache:
        K._cache["chain_engine"] = ChainEngine(K)
    return K._cache["chain_engine"]


def boundary_matrix(K: SimplicialComplex, j: int) -> gf2.GF2Matrix:
    """Matrix of d_j: rows are (j-1)-faces, columns j-faces, lex order both.

    d_0 has no rows.  Raises ValueError for j outside [0, dim].
    """
    if j < 0 or j > K.dim:
        raise ValueError(f"j must be in [0, {K.dim}], got {j}")
    eng = engine(K)
    if j == 0:
        return gf2.GF2Matrix(0, eng.f[0])
    rows = eng.boundary_rows(j)
    words = gf2._transpose(rows, eng.f[j - 1])
    return gf2.GF2Matrix(eng.f[j - 1], eng.f[j], words)


def betti_numbers(K: SimplicialComplex) -> HomologyReport:
    """GF(2) Betti numbers, plain and reduced."""
    if K.dim < 0:
        return HomologyReport((), (1,))
    betti = engine(K).betti()
    reduced = (0, betti[0] - 1) + betti[1:]
    return HomologyReport(betti, reduced)


def reduced_betti(K: SimplicialComplex) -> tuple[int, ...]:
    """Reduced Betti vector, index k holding reduced H_{k-1}."""
    return betti_numbers(K).reduced


def induced_kernel_dim(K: SimplicialComplex, A: SimplicialComplex, i: int) -> int:
    """Dimension of ker(H_i(A) -> H_i(K)) for a subcomplex A of K.

    Computed as dim(Z_i(A) cap B_i(K)) - dim B_i(A), with the intersection
    obtained from dim U + dim W - dim(U + W).  Raises ValueError if A is
    not a subcomplex of K or i is negative.
    """
    if i < 0:
        raise ValueError("i must be nonnegative")
    for f in A.facets:
        if not K.has_face(f):
            raise ValueError(f"not a subcomplex: {f} is not a face of the ambient complex")
    if i > A.dim:
        return 0
    eng_k = engine(K)
    eng_a = engine(A)
    fi_k = eng_k.f[i] if i <= K.dim else 0
    # Z_i(A) embedded in the ambient i-chain coordinates
    emb = [eng_k.index[i][f] for f in eng_a.faces[i]]
    if i == 0:
        z_rows = gf2.GF2Matrix.from_rows([[c] for c in emb], fi_k).words
    else:
        ker = gf2.left_nullspace_of_words(eng_a.boundary_rows(i), eng_a.f[i - 1])
        z_rows = np.zeros((ker.shape[0], max(1, (fi_k + 63) >> 6)), dtype=np.uint64)
        one = np.uint64(1)
        for r in range(ker.shape[0]):
            for local in _support(ker[r], eng_a.f[i]):
                c = emb[local]
                z_rows[r, c >> 6] |= one << np.uint64(c & 63)
    dim_u = z_rows.shape[0]
    basis = eng_k.boundary_basis(i)
    dim_w = basis.shape[0]
    if dim_u and dim_w:
        stacked = np.vstack([z_rows, basis])
        dim_sum = gf2.rank_of_words(stacked, fi_k)
    else:
        dim_sum = dim_u + dim_w
    z_cap_b = dim_u + dim_w - dim_sum
    b_a = eng_a.rank(i + 1)
    return z_cap_b - b_a


def _support(word_row: np.ndarray, ncols: int) -> list[int]:
    out = []
    for w in range(word_row.shape[0]):
        x = int(word_row[w])
        base = w << 6
        while x:
            b = x & -x
            j = base + b.bit_length() - 1
            if j < ncols:
                out.append(j)
            x ^= b
    return out


def relative_mu_contribution(K: SimplicialComplex, v: int, lower) -> tuple[int, ...]:
    """Reduced Betti contribution of one vertex against a lower set.

    Returns a tuple c of length dim(K) + 1 where c[k] is the rank of
    reduced H_{k-1} of the span, inside the link of v, of the link
    vertices lying in ``lower``.  An empty span contributes 1 at index 0.
    """
    vs = simplex((v,))
    lower_set = frozenset(lower)
    key = ("mu_contrib", v, lower_set)
    if key in K._cache:
        return K._cache[key]
    d = K.dim
    link = K.link(vs)
    w = lower_set.intersection(link.vertices)
    out = [0] * (d + 1)
    if not w:
        out[0] = 1
    else:
        eng = engine(link)
        bet = eng.span_betti(eng.word_of(w))
        if bet:
            out[1] = bet[0] - 1
            for j in range(1, len(bet)):
                out[j + 1] = bet[j]
    result = tuple(out)
    K._cache[key] = result
    return result
