"""Stencils, bipartite matchings, vertex covers and nondegeneracy certificates.

The stencil of a polytope M inside the quadratic simplex is the symmetric
0/1 matrix marking which pair points e_i + e_j lie in M; it is exactly the
zero pattern forced on quadratic forms supported in M.  A permutation
hitting only 1-entries certifies that the determinant is not identically
zero on that space; a row/column cover of size < n yields a half-space
separating the barycenter and certifies that every such form is
degenerate.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

from .gaussian import GaussianRational
from .poly import QuadraticForm
from .polytope import (
    ConvexCombination,
    LatticePolytope,
    Separation,
    _require_in_two_delta,
    barycenter,
    contains_point,
    decode_pair,
    is_special_vertex,
    lattice_points,
    minimal_subpolytope,
    pair_point,
    reduce_special,
)

MAX_SIGN_ENUMERATION = 8


@dataclass(frozen=True)
class Stencil:
    """Symmetric n x n 0/1 matrix of admitted quadratic monomials."""

    n: int
    bits: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        bits = tuple(tuple(int(v) for v in row) for row in self.bits)
        if len(bits) != self.n or any(len(r) != self.n for r in bits):
            raise ValueError("bits must be n x n")
        if any(v not in (0, 1) for row in bits for v in row):
            raise ValueError("bits must be 0/1")
        for i in range(self.n):
            for j in range(i):
                if bits[i][j] != bits[j][i]:
                    raise ValueError("stencil must be symmetric")
        object.__setattr__(self, "bits", bits)

    def to_json_dict(self) -> dict:
        return {"n": self.n, "bits": [list(r) for r in self.bits]}


@dataclass(frozen=True)
class HalfSpace:
    """The constraint <coeffs, x> >= rhs."""

    coeffs: Tuple[int, ...]
    rhs: int

    def contains(self, point: Sequence) -> bool:
        return sum(c * x for c, x in zip(self.coeffs, point)) >= self.rhs

    def to_json_dict(self) -> dict:
        return {"coeffs": list(self.coeffs), "rhs": self.rhs}


@dataclass(frozen=True)
class MatchingCertificate:
    """Permutation sigma (0-indexed) with every (i, sigma(i)) a stencil one."""

    sigma: Tuple[int, ...]

    kind = "matching"

    def to_json_dict(self) -> dict:
        return {"kind": "matching", "sigma": [s + 1 for s in self.sigma]}


@dataclass(frozen=True)
class CoverCertificate:
    """Row set I and column set J covering all ones, |I|+|J| < n."""

    I: Tuple[int, ...]
    J: Tuple[int, ...]
    halfspace: HalfSpace

    kind = "cover"

    def to_json_dict(self) -> dict:
        return {
            "kind": "cover",
            "I": [i + 1 for i in self.I],
            "J": [j + 1 for j in self.J],
            "halfspace": self.halfspace.to_json_dict(),
        }


Certificate = Union[MatchingCertificate, CoverCertificate]


def stencil_of(M: LatticePolytope) -> Stencil:
    """bits[i][j] = 1 exactly when e_i + e_j lies in M (exact membership)."""
    _require_in_two_delta(M)
    present = set(lattice_points(M))
    bits = [[0] * M.n for _ in range(M.n)]
    for i in range(M.n):
        for j in range(i, M.n):
            if pair_point(M.n, i, j) in present:
                bits[i][j] = bits[j][i] = 1
    return Stencil(M.n, tuple(tuple(r) for r in bits))


def _max_matching(S: Stencil):
    """Deterministic augmenting-path maximum matching (rows scanned in order)."""
    n = S.n
    match_row = [-1] * n
    match_col = [-1] * n

    def augment(r: int, seen: Set[int]) -> bool:
        for c in range(n):
            if S.bits[r][c] and match_col[c] < 0 and c not in seen:
                seen.add(c)
                match_row[r] = c
                match_col[c] = r
                return True
        for c in range(n):
            if S.bits[r][c] and c not in seen:
                seen.add(c)
                if augment(match_col[c], seen):
                    match_row[r] = c
                    match_col[c] = r
                    return True
        return False

    size = 0
    for r in range(n):
        if augment(r, set()):
            size += 1
    return match_row, match_col, size


def find_matching(S: Stencil) -> Optional[Tuple[int, ...]]:
    """A permutation through 1-entries, or None when no perfect matching exists."""
    match_row, _, size = _max_matching(S)
    if size < S.n:
        return None
    sigma = tuple(match_row)
    _check_matching(S, sigma)
    return sigma


def _check_matching(S: Stencil, sigma: Sequence[int]):
    if sorted(sigma) != list(range(S.n)):
        raise RuntimeError("matching is not a permutation")
    for i, j in enumerate(sigma):
        if not S.bits[i][j]:
            raise RuntimeError(f"matching uses zero stencil entry ({i}, {j})")


def min_vertex_cover(S: Stencil) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Deficient row/column cover from the alternating-reachability sets.

    Only defined when no perfect matching exists; the returned sets cover
    every 1-entry and satisfy |I| + |J| = max matching size < n.
    """
    match_row, match_col, size = _max_matching(S)
    if size == S.n:
        raise ValueError("stencil has a perfect matching; no deficient cover exists")
    n = S.n
    reach_row = [False] * n
    reach_col = [False] * n
    queue = [r for r in range(n) if match_row[r] < 0]
    for r in queue:
        reach_row[r] = True
    head = 0
    while head < len(queue):
        r = queue[head]
        head += 1
        for c in range(n):
            if S.bits[r][c] and not reach_col[c]:
                reach_col[c] = True
                r2 = match_col[c]
                if r2 >= 0 and not reach_row[r2]:
                    reach_row[r2] = True
                    queue.append(r2)
    I = tuple(r for r in range(n) if not reach_row[r])
    J = tuple(c for c in range(n) if reach_col[c])
    _check_cover(S, I, J)
    if len(I) + len(J) != size:
        raise RuntimeError("cover size does not match the matching size")
    return I, J


def _check_cover(S: Stencil, I: Sequence[int], J: Sequence[int]):
    iset, jset = set(I), set(J)
    for i in range(S.n):
        for j in range(S.n):
            if S.bits[i][j] and i not in iset and j not in jset:
                raise RuntimeError(f"cover misses stencil entry ({i}, {j})")


def separating_halfspace(I: Sequence[int], J: Sequence[int], n: int) -> HalfSpace:
    """The half-space sum_{I} x_l + sum_{J} x_l >= 2 induced by a cover.

    Contains every pair point both of whose index slots are covered and
    excludes the barycenter; both facts are re-verified by substitution.
    """
    iset, jset = set(I), set(J)
    if len(iset) + len(jset) >= n:
        raise ValueError("cover too large: half-space would not exclude the barycenter")
    coeffs = tuple((1 if l in iset else 0) + (1 if l in jset else 0) for l in range(n))
    hs = HalfSpace(coeffs, 2)
    center = barycenter(n)
    if sum(c * x for c, x in zip(coeffs, center)) >= 2:
        raise RuntimeError("half-space fails to exclude the barycenter")
    for i in range(n):
        for j in range(i, n):
            covered = (i in iset or j in jset) and (j in iset or i in jset)
            if covered and not hs.contains(pair_point(n, i, j)):
                raise RuntimeError(f"half-space misses covered pair point ({i}, {j})")
    return hs


def certify(M: LatticePolytope) -> Certificate:
    """Matching certificate iff the barycenter lies in M, else a cover.

    The matching/membership dichotomy is cross-checked with the exact LP
    on every call; a mismatch would falsify the underlying equivalence,
    so it raises immediately.
    """
    _require_in_two_delta(M)
    S = stencil_of(M)
    sigma = find_matching(S)
    membership = contains_point(M, barycenter(M.n))
    if (sigma is not None) != isinstance(membership, ConvexCombination):
        raise RuntimeError("matching/membership dichotomy violated")
    if sigma is not None:
        return MatchingCertificate(sigma)
    I, J = min_vertex_cover(S)
    hs = separating_halfspace(I, J, M.n)
    for g in M.generators:
        if not hs.contains(g):
            raise RuntimeError("cover half-space misses a generator")
    return CoverCertificate(I, J, hs)


def _zigzag_matching(S: Stencil) -> Dict[int, int]:
    """Matching for stencils whose every row holds exactly two ones.

    Cells (i, j) with bit 1 form disjoint cycles alternating row and
    column moves; picking every other cell around each cycle yields a
    system of pairwise row/column-disjoint cells, hence a permutation.
    """
    n = S.n
    cells = [(i, j) for i in range(n) for j in range(n) if S.bits[i][j]]
    by_row: Dict[int, List[Tuple[int, int]]] = {}
    by_col: Dict[int, List[Tuple[int, int]]] = {}
    for c in cells:
        by_row.setdefault(c[0], []).append(c)
        by_col.setdefault(c[1], []).append(c)
    if any(len(v) != 2 for v in by_row.values()) or len(by_row) != n:
        raise ValueError("zigzag base case requires exactly two ones per row")
    picked: List[Tuple[int, int]] = []
    visited: Set[Tuple[int, int]] = set()
    for start in cells:
        if start in visited:
            continue
        cycle = [start]
        visited.add(start)
        cur, move_row = start, True
        while True:
            group = by_row[cur[0]] if move_row else by_col[cur[1]]
            nxt = group[0] if group[1] == cur else group[1]
            if nxt == start:
                break
            cycle.append(nxt)
            visited.add(nxt)
            cur, move_row = nxt, not move_row
        if len(cycle) % 2:
            raise RuntimeError("alternating cycle of odd length; cannot happen")
        picked.extend(cycle[::2])
    sigma = {i: j for i, j in picked}
    if sorted(sigma) != list(range(n)) or sorted(sigma.values()) != list(range(n)):
        raise RuntimeError("cycle selection did not produce a permutation")
    return sigma


def _matching_from_minimal(M: LatticePolytope) -> Dict[int, int]:
    """Permutation through the pair points of a minimal polytope.

    Recursion on special vertices: a special pair {i, j} contributes the
    transposition i <-> j (fixed point when diagonal) and the polytope
    reduces to the simplex on the remaining coordinates; when no special
    vertex exists every stencil row has exactly two ones and the
    alternating-cycle selection applies.
    """
    if M.n == 0:
        return {}
    for v in lattice_points(M):
        if is_special_vertex(M, v):
            i, j = decode_pair(v)
            reduced, dropped = reduce_special(M, v)
            sub = _matching_from_minimal(reduced)
            active = [c for c in range(M.n) if c not in dropped]
            sigma = {active[a]: active[b] for a, b in sub.items()}
            sigma[i] = j
            if i != j:
                sigma[j] = i
            return sigma
    return _zigzag_matching(stencil_of(M))


def certify_via_minimal(M: LatticePolytope) -> Certificate:
    """Certificate by minimal-polytope reduction instead of matching search.

    The matching side extracts a minimal sub-polytope and assembles the
    permutation from its special-vertex recursion; the cover side is
    shared with certify.  Used to cross-validate the two constructions.
    """
    _require_in_two_delta(M)
    membership = contains_point(M, barycenter(M.n))
    if isinstance(membership, Separation):
        S = stencil_of(M)
        if find_matching(S) is not None:
            raise RuntimeError("matching/membership dichotomy violated")
        I, J = min_vertex_cover(S)
        hs = separating_halfspace(I, J, M.n)
        return CoverCertificate(I, J, hs)
    reduced = minimal_subpolytope(M)
    sigma_map = _matching_from_minimal(reduced)
    sigma = tuple(sigma_map[i] for i in range(M.n))
    pairs = set(lattice_points(reduced))
    for i, j in enumerate(sigma):
        if pair_point(M.n, i, j) not in pairs:
            raise RuntimeError("assembled permutation leaves the minimal polytope")
    return MatchingCertificate(sigma)


def witness_O_from_matching(sigma: Sequence[int], n: int) -> ConvexCombination:
    """The combination (1/n) * sum of pair points e_i + e_sigma(i)."""
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(n)):
        raise ValueError("sigma is not a permutation of 0..n-1")
    points = tuple(pair_point(n, i, sigma[i]) for i in range(n))
    weights = tuple(Fraction(1, n) for _ in range(n))
    comb = ConvexCombination(points, weights)
    if comb.value() != barycenter(n):
        raise RuntimeError("matching witness does not average to the barycenter")
    return comb


def permutation_sign(sigma: Sequence[int]) -> int:
    """Sign via cycle decomposition."""
    seen = [False] * len(sigma)
    sign = 1
    for start in range(len(sigma)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = sigma[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _pair_multiset(sigma: Sequence[int]):
    return tuple(sorted(tuple(sorted((i, j))) for i, j in enumerate(sigma)))


def sign_consistency(sigma0: Sequence[int], n: int) -> bool:
    """All permutations with the same unordered-pair multiset share the sign.

    Enumerates the symmetric group, so n is capped at 8.
    """
    sigma0 = tuple(sigma0)
    if sorted(sigma0) != list(range(n)):
        raise ValueError("sigma0 is not a permutation of 0..n-1")
    if n > MAX_SIGN_ENUMERATION:
        raise ValueError(f"enumeration limited to n <= {MAX_SIGN_ENUMERATION}")
    target = _pair_multiset(sigma0)
    s0 = permutation_sign(sigma0)
    return all(
        permutation_sign(sigma) == s0
        for sigma in itertools.permutations(range(n))
        if _pair_multiset(sigma) == target
    )


def sample_entries(S: Stencil, seed: int) -> Tuple[Tuple[int, ...], ...]:
    """Symmetric integer matrix with the stencil's zero pattern.

    Nonzero entries are drawn deterministically from the seed, uniform on
    the nonzero integers in [-10^6, 10^6].
    """
    rng = random.Random(seed)
    n = S.n
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            if S.bits[i][j]:
                value = rng.randint(1, 10**6)
                if rng.randint(0, 1):
                    value = -value
                rows[i][j] = rows[j][i] = value
    return tuple(tuple(r) for r in rows)


def sample_generic_form(M: LatticePolytope, seed: int) -> QuadraticForm:
    """Seeded generic quadratic form supported on M's stencil."""
    S = stencil_of(M)
    rows = sample_entries(S, seed)
    return QuadraticForm(
        S.n, tuple(tuple(GaussianRational(Fraction(v)) for v in row) for row in rows)
    )
