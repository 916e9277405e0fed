"""Bistellar moves, move certificates, and stackedness search.

A move is a pair (A, B): A is a face whose link is the boundary of the
simplex B, and B is not a face.  Applying the move replaces star(A) =
A * dB with dA * B.  The index of the move is dim B; the inverse move is
(B, A) with index dim A.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .complexes import SimplicialComplex, Simplex, simplex
from .errors import InvalidMoveError

__all__ = [
    "BistellarMove",
    "MoveCertificate",
    "AnnealSchedule",
    "ExactStackedness",
    "valid_moves",
    "apply_move",
    "move_fvector_delta",
    "is_boundary_simplex",
    "stackedness_certificate",
    "k_stacked_exact",
    "vertex_reduce",
]


@dataclass(frozen=True)
class BistellarMove:
    """One bistellar flip: remove the star of A, glue in dA * B."""

    A: Simplex
    B: Simplex

    def __post_init__(self):
        object.__setattr__(self, "A", simplex(self.A))
        object.__setattr__(self, "B", simplex(self.B))

    @property
    def index(self) -> int:
        return len(self.B) - 1

    @property
    def dim(self) -> int:
        return len(self.A) + len(self.B) - 2

    def inverse(self) -> "BistellarMove":
        return BistellarMove(self.B, self.A)

    def to_json(self) -> dict:
        return {"A": list(self.A), "B": list(self.B)}


def move_fvector_delta(d: int, i: int) -> tuple[int, ...]:
    """Change of the f-vector under an index-i move on a d-complex."""
    if not 0 <= i <= d:
        raise ValueError(f"index must be in [0, {d}], got {i}")
    out = []
    for j in range(d + 1):
        add = comb(d - i + 1, j - i) if 0 <= j - i <= d - i else 0
        rem = comb(i + 1, j - (d - i)) if 0 <= j - (d - i) <= i else 0
        out.append(add - rem)
    return tuple(out)


def _cofacets(M: SimplicialComplex, a: Simplex) -> list[Simplex]:
    sa = set(a)
    return [f for f in M.facets if sa <= set(f)]


def _check_move(M: SimplicialComplex, move: BistellarMove) -> bool:
    """True when the move is applicable; False for an index-0 fresh-vertex move."""
    a, b = move.A, move.B
    if not M.has_face(a):
        raise InvalidMoveError("A not a face", f"A={a}")
    fresh = len(b) == 1 and b[0] not in M.vertices
    if fresh:
        if a not in M.facets:
            raise InvalidMoveError("link mismatch", f"A={a} is not a facet, cannot subdivide")
        return True
    if M.has_face(b):
        raise InvalidMoveError("B already a face", f"B={b}")
    if not set(b) <= set(M.vertices):
        raise InvalidMoveError("label not fresh", f"B={b} mixes new and existing labels")
    cof = _cofacets(M, a)
    sa = set(a)
    link_facets = {tuple(v for v in f if v not in sa) for f in cof}
    db = {b[:k] + b[k + 1 :] for k in range(len(b))}
    if link_facets != db:
        raise InvalidMoveError("link mismatch", f"link({a}) facets != boundary of {b}")
    return False


def apply_move(M: SimplicialComplex, move: BistellarMove, check: bool = True) -> SimplicialComplex:
    """Apply one bistellar move, returning the new complex.

    With ``check`` (the default) the move is validated first and an
    InvalidMoveError names the failing clause.  ``check=False`` is for
    callers that enumerate moves themselves.
    """
    a, b = move.A, move.B
    if check:
        _check_move(M, move)
    sa, sb = set(a), set(b)
    union = tuple(sorted(sa | sb))
    removed = {tuple(x for x in union if x != w) for w in b}
    added = [tuple(x for x in union if x != v) for v in a]
    facets = [f for f in M.facets if f not in removed]
    facets.extend(added)
    if M.is_pure:
        # a valid move swaps same-dimension facets, none containing another,
        # so the facet list stays maximal and only needs sorting
        facets.sort()
        return SimplicialComplex(tuple(facets), _canonical=True)
    return SimplicialComplex(facets, _canonical=False)


def valid_moves(M: SimplicialComplex, index_filter: Iterable[int] | None = None) -> list[BistellarMove]:
    """All applicable moves of index 1..d in canonical (index, A, B) order.

    Index-0 moves need a fresh label and are applied directly through
    :func:`apply_move`; they are not enumerated here.
    """
    d = M.dim
    if d < 1:
        return []
    indices = sorted(set(range(1, d + 1)) if index_filter is None else
                     {i for i in index_filter if 1 <= i <= d})
    # cofacet table per candidate face size
    out: list[BistellarMove] = []
    for i in indices:
        asize = d - i + 1
        cof: dict[Simplex, list[Simplex]] = {}
        for f in M.facets:
            if len(f) != d + 1:
                continue
            for a in combinations(f, asize):
                cof.setdefault(a, []).append(f)
        for a in sorted(cof):
            fs = cof[a]
            if len(fs) != i + 1:
                continue
            union: set[int] = set()
            for f in fs:
                union.update(f)
            bset = union - set(a)
            if len(bset) != i + 1:
                continue
            b = tuple(sorted(bset))
            if M.has_face(b):
                continue
            sa = set(a)
            link_facets = {tuple(v for v in f if v not in sa) for f in fs}
            db = {b[:k] + b[k + 1 :] for k in range(len(b))}
            if link_facets == db:
                out.append(BistellarMove(a, b))
    out.sort(key=lambda m: (m.index, m.A, m.B))
    return out


def is_boundary_simplex(M: SimplicialComplex) -> bool:
    """True for the boundary of a simplex: n = d + 2 vertices, n facets."""
    d = M.dim
    return d >= 0 and len(M.vertices) == d + 2 and len(M.facets) == d + 2


class MoveCertificate:
    """A replayable move sequence between two hashed complexes."""

    __slots__ = ("start", "moves", "end")

    def __init__(self, start: str, moves: Sequence[BistellarMove], end: str):
        self.start = start
        self.moves = tuple(moves)
        self.end = end

    @property
    def max_index_used(self) -> int | None:
        if not self.moves:
            return None
        return max(m.index for m in self.moves)

    def replay(self, M: SimplicialComplex) -> SimplicialComplex:
        """Apply the moves to M, verifying both endpoint hashes."""
        if M.canonical_hash() != self.start:
            raise ValueError("certificate start hash does not match the complex")
        cur = M
        for mv in self.moves:
            cur = apply_move(cur, mv)
        if cur.canonical_hash() != self.end:
            raise ValueError("certificate end hash does not match the replayed complex")
        return cur

    def to_json(self) -> dict:
        return {"start": self.start, "moves": [m.to_json() for m in self.moves], "end": self.end}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, obj: dict | str) -> "MoveCertificate":
        if isinstance(obj, str):
            obj = json.loads(obj)
        moves = [BistellarMove(tuple(m["A"]), tuple(m["B"])) for m in obj["moves"]]
        return cls(obj["start"], moves, obj["end"])

    def __eq__(self, other):
        if not isinstance(other, MoveCertificate):
            return NotImplemented
        return self.start == other.start and self.moves == other.moves and self.end == other.end

    def __repr__(self) -> str:
        return f"MoveCertificate(moves={len(self.moves)}, max_index={self.max_index_used})"


def stackedness_certificate(
    S: SimplicialComplex,
    k: int,
    budget: int = 100_000,
    seed: int = 0,
) -> MoveCertificate | None:
    """Search for a move sequence taking S to a boundary simplex using only
    indices d-k+1 .. d (the reverses of 0 .. k-1 moves).

    Returns a replay-verified certificate, or None when the budget runs out.
    None is never a refutation.  The budget counts move applications,
    lookahead probes included.  Greedy policy: always take an index-d move
    when one exists (it deletes a vertex); otherwise probe the lower
    allowed indices and pick a move maximizing the number of index-d moves
    available afterwards, breaking ties with the seeded generator.
    """
    d = S.dim
    if d < 1:
        raise ValueError("complex must have dimension at least 1")
    if not 1 <= k <= (d + 1) // 2:
        raise ValueError(f"k must be in [1, {(d + 1) // 2}] for dimension {d}, got {k}")
    rng = random.Random(seed)
    lower = list(range(d - k + 1, d))
    spent = 0

    def finish(moves: list[BistellarMove], end: SimplicialComplex) -> MoveCertificate:
        cert = MoveCertificate(S.canonical_hash(), moves, end.canonical_hash())
        cert.replay(S)
        return cert

    while spent < budget:
        cur = S
        moves: list[BistellarMove] = []
        seen = {cur.canonical_hash()}
        spent_at_restart = spent
        while spent < budget:
            if is_boundary_simplex(cur):
                return finish(moves, cur)
            tops = valid_moves(cur, [d])
            picked = None
            if tops:
                picked = rng.choice(tops)
            else:
                cands = valid_moves(cur, lower) if lower else []
                fresh = []
                best_score = -1
                if len(cands) > 16:
                    cands = rng.sample(cands, 16)
                for mv in cands:
                    if spent >= budget:
                        break
                    probe = apply_move(cur, mv, check=False)
                    spent += 1
                    if probe.canonical_hash() in seen:
                        continue
                    score = len(valid_moves(probe, [d]))
                    if score > best_score:
                        best_score = score
                        fresh = [mv]
                    elif score == best_score:
                        fresh.append(mv)
                if not fresh:
                    break
                picked = rng.choice(fresh)
            nxt = apply_move(cur, picked, check=False)
            spent += 1
            h = nxt.canonical_hash()
            if h in seen:
                break
            seen.add(h)
            cur = nxt
            moves.append(picked)
        if spent == spent_at_restart:
            # the restart made no applications at all: the position is a
            # deterministic dead end and retrying cannot help
            return None
    return None


class ExactStackedness:
    """Outcome of the exhaustive ball search."""

    __slots__ = ("status", "ball")

    def __init__(self, status: str, ball: SimplicialComplex | None = None):
        self.status = status  # "yes" | "no" | "aborted"
        self.ball = ball

    def __repr__(self) -> str:
        return f"ExactStackedness({self.status!r})"


def k_stacked_exact(S: SimplicialComplex, k: int, ceiling: int = 10) -> ExactStackedness:
    """Decide by exhaustive search whether S bounds a ball with no interior
    faces of dimension <= dim(S) - k.

    A returned "yes" ball is verified: its boundary equals S exactly, it is
    a pseudomanifold with boundary, has trivial reduced homology over GF(2),
    and admits a shelling.  "no" means the search space was exhausted.
    "aborted" is returned when f_0 exceeds ``ceiling``.
    """
    d = S.dim
    if d < 1:
        raise ValueError("complex must have dimension at least 1")
    if not 0 <= k <= d:
        raise ValueError(f"k must be in [0, {d}], got {k}")
    verts = S.vertices
    if len(verts) > ceiling:
        return ExactStackedness("aborted")
    cell_size = d + 2
    low_cap = d - k + 1  # max card of faces that must already lie in S
    candidates: list[Simplex] = []
    for c in combinations(verts, cell_size):
        ok = True
        for size in range(2, min(low_cap, cell_size) + 1):
            if not all(sub in S.face_set(size - 1) for sub in combinations(c, size)):
                ok = False
                break
        if ok:
            candidates.append(c)
    if not candidates:
        return ExactStackedness("no")
    sfacets = set(S.facets)
    cell_faces = {c: list(combinations(c, d + 1)) for c in candidates}
    by_face: dict[Simplex, list[Simplex]] = {}
    for c in candidates:
        for f in cell_faces[c]:
            by_face.setdefault(f, []).append(c)

    usage: dict[Simplex, int] = {}
    chosen: list[Simplex] = []
    chosen_set: set[Simplex] = set()

    def can_place(c: Simplex) -> bool:
        for f in cell_faces[c]:
            cap = 1 if f in sfacets else 2
            if usage.get(f, 0) + 1 > cap:
                return False
        return True

    def place(c: Simplex) -> None:
        chosen.append(c)
        chosen_set.add(c)
        for f in cell_faces[c]:
            usage[f] = usage.get(f, 0) + 1

    def unplace(c: Simplex) -> None:
        chosen.pop()
        chosen_set.discard(c)
        for f in cell_faces[c]:
            usage[f] -= 1

    def deficient() -> Simplex | None:
        for f in S.facets:
            if usage.get(f, 0) == 0:
                return f
        for f, cnt in sorted(usage.items()):
            if cnt == 1 and f not in sfacets:
                return f
        return None

    def verify_ball() -> SimplicialComplex | None:
        from . import homology

        B = SimplicialComplex(list(chosen), _canonical=False)
        if len(B.facets) != len(chosen):
            return None
        pm = B.pseudomanifold_check()
        if not pm.facet_graph_connected:
            return None
        if any(homology.reduced_betti(B)):
            return None
        if not _shellable(chosen):
            return None
        return B

    result: list[SimplicialComplex] = []

    def search() -> bool:
        f = deficient()
        if f is None:
            ball = verify_ball()
            if ball is not None:
                result.append(ball)
                return True
            return False
        for c in by_face.get(f, []):
            if c in chosen_set or not can_place(c):
                continue
            place(c)
            if search():
                return True
            unplace(c)
        return False

    if search():
        return ExactStackedness("yes", result[0])
    return ExactStackedness("no")


def _shellable(cells: list[Simplex]) -> bool:
    """Backtracking shelling-order search with dead-state memoization."""
    m = len(cells)
    if m <= 1:
        return True
    sets = [frozenset(c) for c in cells]
    ridge_size = len(cells[0]) - 1
    dead: set[frozenset[int]] = set()

    def attaches_ok(i: int, used: list[int]) -> bool:
        # every intersection with an earlier cell must sit inside an
        # earlier intersection of ridge size
        inters = [sets[i] & sets[j] for j in used]
        ridges = [x for x in inters if len(x) == ridge_size]
        if not ridges:
            return False
        return all(any(x <= r for r in ridges) for x in inters)

    def extend(used: list[int], used_set: frozenset[int]) -> bool:
        if len(used) == m:
            return True
        if used_set in dead:
            return False
        for i in range(m):
            if i in used_set:
                continue
            if attaches_ok(i, used):
                used.append(i)
                if extend(used, used_set | {i}):
                    return True
                used.pop()
        dead.add(used_set)
        return False

    for first in range(m):
        if extend([first], frozenset([first])):
            return True
    return False


@dataclass(frozen=True)
class AnnealSchedule:
    """Cooling plan for :func:`vertex_reduce`.

    ``steps`` is the total number of move attempts across all restarts;
    temperature cools geometrically from ``t_start`` toward ``t_min`` and
    resets to ``t_start`` at each restart from the best state so far.
    ``t_start=None`` scales the start temperature to the largest uphill
    face-count delta of any vertex-preserving move, which grows with the
    dimension.
    """

    steps: int = 20000
    t_start: float | None = None
    t_min: float = 0.05
    cooling: float = 0.999
    restarts: int = 4


_F0_WEIGHT = 1 << 20


def _energy(fv: tuple[int, ...]) -> int:
    return fv[0] * _F0_WEIGHT + sum(fv)


def _sample_move(M: SimplicialComplex, rng: random.Random, tries: int) -> BistellarMove | None:
    d = M.dim
    facets = M.facets
    for _ in range(tries):
        f = facets[rng.randrange(len(facets))]
        # max of two draws biases toward high indices, which shrink the
        # complex; low indices stay reachable for mixing
        i = max(rng.randint(1, d), rng.randint(1, d))
        a = tuple(sorted(rng.sample(f, d - i + 1)))
        cof = _cofacets(M, a)
        if len(cof) != i + 1:
            continue
        union: set[int] = set()
        for g in cof:
            union.update(g)
        bset = union - set(a)
        if len(bset) != i + 1:
            continue
        b = tuple(sorted(bset))
        if M.has_face(b):
            continue
        sa = set(a)
        link_facets = {tuple(v for v in g if v not in sa) for g in cof}
        db = {b[:j] + b[j + 1 :] for j in range(len(b))}
        if link_facets == db:
            return BistellarMove(a, b)
    return None


def vertex_reduce(
    M: SimplicialComplex,
    target_f0: int | None = None,
    schedule: AnnealSchedule | None = None,
    seed: int = 0,
    check_homology: bool = False,
) -> tuple[SimplicialComplex, MoveCertificate]:
    """Best-effort vertex-count reduction by simulated annealing over
    bistellar moves.

    Energy is f_0 weighted far above the remaining face counts, so any
    vertex removal is always accepted.  Returns the best complex reached
    and a replay-verified certificate from the input to it.  The input is
    returned unchanged when no move is ever available.  With
    ``check_homology`` every accepted move is checked to preserve the
    Betti vector (debugging aid, slow).
    """
    import math

    from . import homology

    if schedule is None:
        schedule = AnnealSchedule()
    rng = random.Random(seed)
    d = M.dim
    deltas = [move_fvector_delta(d, i) for i in range(d + 1)]
    ref_betti = homology.betti_numbers(M).betti if check_homology else None
    t_start = schedule.t_start
    if t_start is None:
        # index-1 moves add the most faces of any vertex-preserving move
        t_start = max(4.0, float(sum(deltas[1]))) if d >= 1 else 4.0

    cur = M
    cur_f = M.f_vector()
    cur_path: list[BistellarMove] = []
    best = cur
    best_f = cur_f
    best_path: list[BistellarMove] = []
    t = t_start
    chunk = max(1, schedule.steps // max(1, schedule.restarts))

    if not valid_moves(M):
        cert = MoveCertificate(M.canonical_hash(), [], M.canonical_hash())
        return M, cert

    pool: list[BistellarMove] | None = None
    for step in range(schedule.steps):
        if target_f0 is not None and best_f[0] <= target_f0:
            break
        if step and step % chunk == 0:
            cur, cur_f, cur_path = best, best_f, list(best_path)
            pool = None
            t = t_start
        mv = _sample_move(cur, rng, tries=48)
        if mv is None:
            # the pool stays valid while cur is unchanged
            if pool is None:
                pool = valid_moves(cur)
            if not pool:
                break
            mv = rng.choice(pool)
        delta = deltas[mv.index]
        de = delta[0] * _F0_WEIGHT + sum(delta)
        if de <= 0 or rng.random() < math.exp(max(-de / t, -60.0)):
            cur = apply_move(cur, mv, check=False)
            pool = None
            cur_f = tuple(a + b for a, b in zip(cur_f, deltas[mv.index]))
            cur_path.append(mv)
            if check_homology:
                got = homology.betti_numbers(cur).betti
                if got != ref_betti:
                    raise AssertionError(f"move {mv} changed Betti numbers: {ref_betti} -> {got}")
            if _energy(cur_f) < _energy(best_f):
                best, best_f, best_path = cur, cur_f, list(cur_path)
        t = max(t * schedule.cooling, schedule.t_min)

    cert = MoveCertificate(M.canonical_hash(), best_path, best.canonical_hash())
    cert.replay(M)
    return best, cert
