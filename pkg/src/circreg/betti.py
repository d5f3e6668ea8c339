"""Multigraded Betti numbers of monomial ideals and regularity.

Betti numbers are read off as ranks of reduced simplicial homology, over a
prime field, of the upper-Koszul complexes attached to the multidegrees in
the lcm lattice of the generators.  The complex at a multidegree ``a`` has
one facet per generator dividing x^a: the support positions where that
generator is not tight (lowering the exponent keeps divisibility), so the
whole complex is described by a short list of facet bitmasks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityExceeded
from .monomials import Monomial, MonomialIdeal

DEFAULT_PRIME = 2
CHECK_PRIME = 32003
DEFAULT_LATTICE_LIMIT = 2_000_000

_POPCOUNT16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.int8)


def _popcount(masks: np.ndarray) -> np.ndarray:
    masks = masks.astype(np.int64)
    return (_POPCOUNT16[masks & 0xFFFF]
            + _POPCOUNT16[(masks >> 16) & 0xFFFF]
            + _POPCOUNT16[(masks >> 32) & 0xFFFF]).astype(np.int64)


@dataclass(frozen=True)
class SimplicialComplex:
    """Simplicial complex on a tuple of vertex labels.

    Faces are bitmasks over positions in ``vertices``.  The void complex has
    no faces at all; the irrelevant complex has the empty face only.  The
    distinction matters for reduced homology and is preserved explicitly.
    """

    vertices: tuple[int, ...]
    faces: frozenset[int]

    @classmethod
    def from_facets(cls, vertices: tuple[int, ...], facets: list[int]) -> SimplicialComplex:
        return cls(vertices, frozenset(_close_downward(facets)))

    @property
    def is_void(self) -> bool:
        return not self.faces

    @property
    def is_irrelevant(self) -> bool:
        return self.faces == frozenset([0])

    def faces_by_cardinality(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for f in self.faces:
            out.setdefault(f.bit_count(), []).append(f)
        for v in out.values():
            v.sort()
        return out

    def reduced_euler_characteristic(self) -> int:
        """Sum of (-1)^dim over all faces, the empty face included."""
        return sum((-1) ** (f.bit_count() - 1) for f in self.faces)


def _close_downward(facets: list[int]) -> set[int]:
    """All submasks of the given facets (BFS down one bit at a time)."""
    seen = set(facets)
    frontier = list(seen)
    while frontier:
        nxt = []
        for f in frontier:
            m = f
            while m:
                low = m & -m
                m ^= low
                sub = f ^ low
                if sub not in seen:
                    seen.add(sub)
                    nxt.append(sub)
        frontier = nxt
    return seen


def _close_downward_np(facets: np.ndarray, n_bits: int) -> np.ndarray:
    """Vectorized submask closure; returns all faces as a sorted array."""
    faces = np.unique(facets)
    frontier = faces
    while frontier.size:
        level = []
        for b in range(n_bits):
            bit = 1 << b
            has = frontier[(frontier & bit) != 0]
            if has.size:
                level.append(has ^ bit)
        if not level:
            break
        cand = np.unique(np.concatenate(level))
        new = cand[~np.isin(cand, faces)]
        if not new.size:
            break
        faces = np.union1d(faces, new)
        frontier = new
    return faces


def _rank_gf2_ints(rows: list[int]) -> int:
    """Rank over GF(2) of bit-vector rows (python ints)."""
    pivots: dict[int, int] = {}
    rank = 0
    for r in rows:
        while r:
            low = r & -r
            piv = pivots.get(low)
            if piv is None:
                pivots[low] = r
                rank += 1
                break
            r ^= piv
    return rank


def rank_gf2(dense: np.ndarray) -> int:
    """Rank over GF(2) of a 0/1 matrix, by elimination on packed bit rows."""
    m, n = dense.shape
    if m == 0 or n == 0:
        return 0
    M = np.packbits(dense.astype(np.uint8), axis=1)
    rank = 0
    row = 0
    for c in range(n):
        byte, bit = c >> 3, np.uint8(0x80 >> (c & 7))
        col = M[row:, byte] & bit
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        piv = row + nz[0]
        if piv != row:
            M[[row, piv]] = M[[piv, row]]
        targets = np.nonzero(M[:, byte] & bit)[0]
        targets = targets[targets != row]
        if targets.size:
            M[targets] ^= M[row]
        rank += 1
        row += 1
        if row == m:
            break
    return rank


def rank_mod_p(A: np.ndarray, p: int) -> int:
    """Rank over GF(p) by float64 elimination (entries stay below 2^53)."""
    if p == 2:
        return rank_gf2(np.asarray(A) % 2)
    m, n = A.shape
    if m == 0 or n == 0:
        return 0
    M = np.asarray(A, dtype=np.float64) % p
    rank = 0
    row = 0
    for c in range(n):
        col = M[row:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        piv = row + nz[0]
        if piv != row:
            M[[row, piv]] = M[[piv, row]]
        inv = pow(int(M[row, c]), p - 2, p)
        M[row] = (M[row] * inv) % p
        coeff = M[:, c].copy()
        coeff[row] = 0.0
        nzr = np.nonzero(coeff)[0]
        if nzr.size:
            M[nzr] -= np.outer(coeff[nzr], M[row])
            M[nzr] %= p
        rank += 1
        row += 1
        if row == m:
            break
    return rank


def _boundary_ranks(faces_by_card: dict[int, list[int]], p: int) -> dict[int, int]:
    """rank of the boundary map from card-k faces to card-(k-1) faces."""
    ranks: dict[int, int] = {}
    n_bits = max(int(f).bit_length() for fs in faces_by_card.values() for f in fs) \
        if faces_by_card else 0
    for k in sorted(faces_by_card):
        if k == 0 or k - 1 not in faces_by_card:
            continue
        L = np.array(faces_by_card[k - 1], dtype=np.int64)
        U = np.array(faces_by_card[k], dtype=np.int64)
        rows, cols, signs = [], [], []
        for b in range(n_bits):
            bit = 1 << b
            sel = np.nonzero((U & bit) != 0)[0]
            if sel.size == 0:
                continue
            sub = U[sel] ^ bit
            rows.append(np.searchsorted(L, sub))
            cols.append(sel)
            signs.append(1 - 2 * (_popcount(U[sel] & (bit - 1)) % 2))
        r = np.concatenate(rows)
        c = np.concatenate(cols)
        if p == 2:
            # column bit-vectors (over the lower basis) as python ints
            colvecs = [0] * U.size
            for ri, ci in zip(r.tolist(), c.tolist()):
                colvecs[ci] |= 1 << ri
            ranks[k] = _rank_gf2_ints(colvecs) if L.size * U.size <= 1 << 22 \
                else _rank_gf2_packed(r, c, L.size, U.size)
        else:
            B = np.zeros((L.size, U.size), dtype=np.int64)
            B[r, c] = np.concatenate(signs)
            ranks[k] = rank_mod_p(B, p)
    return ranks


def _rank_gf2_packed(r: np.ndarray, c: np.ndarray, m: int, n: int) -> int:
    B = np.zeros((m, n), dtype=np.uint8)
    B[r, c] = 1
    return rank_gf2(B)


def reduced_homology_ranks(K: SimplicialComplex, p: int) -> dict[int, int]:
    """Ranks of reduced homology over GF(p), as a map dimension -> rank.

    The void complex has no homology at all; the irrelevant complex has rank
    one in dimension -1.
    """
    if K.is_void:
        return {}
    fbc = K.faces_by_cardinality()
    ranks = _boundary_ranks(fbc, p)
    out: dict[int, int] = {}
    for k, faces in fbc.items():
        h = len(faces) - ranks.get(k, 0) - ranks.get(k + 1, 0)
        if h:
            out[k - 1] = h
    return out


def lcm_lattice(I: MonomialIdeal, limit: int = DEFAULT_LATTICE_LIMIT) -> np.ndarray:
    """Closure of the generator multidegrees under pairwise lcm.

    Returns one multidegree per row; the constant monomial never appears
    because generators of a proper nonzero ideal are non-constant.
    """
    if I.is_zero or I.is_unit:
        raise ValueError("lcm lattice needs a nonzero, non-unit ideal")
    G = I.exponent_array()
    known = {row.tobytes(): None for row in G}
    elements = [G]
    frontier = G
    while frontier.size:
        joins = np.maximum(frontier[:, None, :], G[None, :, :]).reshape(-1, I.n_vars)
        joins = np.unique(joins, axis=0)
        fresh_rows = [r for r in joins if r.tobytes() not in known]
        if not fresh_rows:
            break
        frontier = np.array(fresh_rows, dtype=np.int64)
        for r in frontier:
            known[r.tobytes()] = None
        elements.append(frontier)
        if len(known) > limit:
            raise CapacityExceeded(
                f"lcm lattice exceeded {limit} elements")
    return np.unique(np.vstack(elements), axis=0)


def upper_koszul(I: MonomialIdeal, a: Monomial) -> SimplicialComplex:
    """Upper-Koszul complex of I at multidegree a.

    Faces are the subsets S of supp(a) with x^a / x_S in I.  When x^a is not
    in I the complex is void; when a is a minimal generator it is the
    irrelevant complex.
    """
    if a.n_vars != I.n_vars:
        raise ValueError("multidegree in wrong ambient dimension")
    supp = a.support
    facets = _koszul_facet_masks(I.exponent_array(),
                                 np.array(a.exponents, dtype=np.int64), supp)
    return SimplicialComplex.from_facets(supp, list(facets)) if facets is not None \
        else SimplicialComplex(supp, frozenset())


def _koszul_facet_masks(G: np.ndarray, a: np.ndarray, supp: tuple[int, ...]):
    """Maximal facet bitmasks (over positions in supp) of the upper-Koszul
    complex at a, or None when x^a is not in the ideal."""
    div = np.all(G <= a[None, :], axis=1)
    if not div.any():
        return None
    D = G[div][:, list(supp)]
    loose = D < a[list(supp)][None, :]
    pow2 = 1 << np.arange(len(supp), dtype=np.int64)
    facets = np.unique(loose @ pow2)
    return _maximal_masks(facets)


def _maximal_masks(masks: np.ndarray) -> np.ndarray:
    """Drop masks contained in another mask (masks assumed unique)."""
    if masks.size <= 1:
        return masks
    keep = np.ones(masks.size, dtype=bool)
    sub = (masks[:, None] & ~masks[None, :]) == 0
    np.fill_diagonal(sub, False)
    keep = ~sub.any(axis=1)
    return masks[keep]


def _strong_collapse(facets: list[int]) -> list[int]:
    """Repeatedly delete dominated vertices.

    A vertex v is dominated by w when every facet containing v contains w;
    deleting it is a strong homotopy equivalence, so homology is unchanged.
    """
    facets = list(facets)
    changed = True
    while changed and len(facets) > 1:
        changed = False
        verts = 0
        for f in facets:
            verts |= f
        v = verts
        while v:
            low = v & -v
            v ^= low
            common = ~0
            for f in facets:
                if f & low:
                    common &= f
            common &= ~low
            if common:
                stripped = {f & ~low for f in facets}
                facets = [int(f) for f in
                          _maximal_masks(np.array(sorted(stripped), dtype=np.int64))]
                changed = True
                break
    return facets


def _homology_from_facets(facets: list[int], p: int) -> dict[int, int]:
    """Reduced homology ranks (by dimension) of the complex generated by
    ``facets``, after strong collapse."""
    facets = _strong_collapse(facets)
    if len(facets) == 1:
        # a single simplex: contractible, unless it is the empty face only
        return {-1: 1} if facets[0] == 0 else {}
    acc = ~0
    for f in facets:
        acc &= f
    if acc:
        return {}
    n_bits = max(f.bit_length() for f in facets)
    faces = _close_downward_np(np.array(facets, dtype=np.int64), n_bits)
    cards = _popcount(faces)
    fbc = {int(k): [int(f) for f in faces[cards == k]] for k in np.unique(cards)}
    ranks = _boundary_ranks(fbc, p)
    out: dict[int, int] = {}
    for k, fs in fbc.items():
        h = len(fs) - ranks.get(k, 0) - ranks.get(k + 1, 0)
        if h:
            out[k - 1] = h
    return out


@dataclass
class BettiTable:
    """Nonzero multigraded Betti numbers beta_{i,a} over a prime field."""

    characteristic: int
    n_vars: int
    entries: dict[tuple[int, tuple[int, ...]], int] = field(default_factory=dict)

    def regularity(self) -> int:
        return max(sum(a) - i for (i, a) in self.entries)

    def max_index(self) -> int:
        return max(i for (i, _) in self.entries)

    def total_betti(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (i, _), r in self.entries.items():
            out[i] = out.get(i, 0) + r
        return out

    def generator_degrees(self) -> set[tuple[int, ...]]:
        return {a for (i, a) in self.entries if i == 0}

    def to_text(self) -> str:
        lines = [f"characteristic={self.characteristic}"]
        for (i, a), r in sorted(self.entries.items(),
                                key=lambda e: (e[0][0], sum(e[0][1]), e[0][1])):
            lines.append(f"{i} {sum(a)} {' '.join(str(e) for e in a)} {r}")
        return "\n".join(lines) + "\n"


def betti_table(I: MonomialIdeal, p: int = DEFAULT_PRIME, *,
                lattice_limit: int = DEFAULT_LATTICE_LIMIT,
                skip_cones: bool = True,
                validate_euler: bool = False) -> BettiTable:
    """Multigraded Betti numbers of I via upper-Koszul homology over GF(p).

    ``skip_cones`` short-circuits multidegrees whose complex is a cone (a
    vertex common to every facet): cones are contractible, so every Betti
    number there vanishes.  ``validate_euler`` additionally enumerates the
    faces of every complex and checks the alternating-sum identity between
    Betti numbers and the reduced Euler characteristic.
    """
    table = BettiTable(p, I.n_vars)
    G = I.exponent_array()
    for a in lcm_lattice(I, limit=lattice_limit):
        supp = tuple(int(j) for j in np.nonzero(a)[0])
        facets = _koszul_facet_masks(G, a, supp)
        key_a = tuple(int(e) for e in a)
        if facets is None:
            raise AssertionError("lattice element outside the ideal")
        is_cone = bool(np.bitwise_and.reduce(facets) != 0)
        hom: dict[int, int] = {}
        if not (is_cone and skip_cones):
            hom = _homology_from_facets([int(f) for f in facets], p)
        for d, r in hom.items():
            table.entries[(d + 1, key_a)] = r
        if validate_euler:
            # face counts of the uncollapsed complex; an independent route
            faces = _close_downward_np(facets, len(supp))
            cards = _popcount(faces)
            counts = {int(k): int((cards == k).sum()) for k in np.unique(cards)}
            chi = sum((-1) ** (k - 1) * c for k, c in counts.items())
            alt = sum((-1) ** i * r for (i, aa), r in table.entries.items()
                      if aa == key_a)
            if alt != -chi:
                raise AssertionError(
                    f"Euler check failed at {key_a}: sum={alt}, -chi={-chi}")
    return table


def regularity(I: MonomialIdeal, p: int = DEFAULT_PRIME, *,
               lattice_limit: int = DEFAULT_LATTICE_LIMIT) -> int:
    """Castelnuovo-Mumford regularity of I (so reg of a single quadric is 2)."""
    return betti_table(I, p, lattice_limit=lattice_limit).regularity()


def _compress_bits(mask: int, positions: dict[int, int]) -> int:
    out = 0
    while mask:
        low = mask & -mask
        mask ^= low
        out |= 1 << positions[low]
    return out


def _bounded_homology(facets: list[int], top_dim: int, p: int) -> dict[int, int]:
    """Reduced homology ranks in dimensions 0..top_dim only.

    Homology through dimension top_dim is determined by the skeleton of
    faces with at most top_dim + 2 vertices, so only that part of the
    complex is ever enumerated.
    """
    max_card = top_dim + 2
    faces: set[int] = set()
    for f in facets:
        members = [b for b in range(f.bit_length()) if f >> b & 1]
        if len(members) <= max_card:
            faces.add(f)
        else:
            for combo in itertools.combinations(members, max_card):
                m = 0
                for b in combo:
                    m |= 1 << b
                faces.add(m)
    frontier = list(faces)
    while frontier:
        nxt = []
        for f in frontier:
            m = f
            while m:
                low = m & -m
                m ^= low
                sub = f ^ low
                if sub not in faces:
                    faces.add(sub)
                    nxt.append(sub)
        frontier = nxt
    fbc: dict[int, list[int]] = {}
    for f in faces:
        fbc.setdefault(f.bit_count(), []).append(f)
    for fs in fbc.values():
        fs.sort()
    ranks = _boundary_ranks(fbc, p)
    out: dict[int, int] = {}
    for d in range(top_dim + 1):
        h = len(fbc.get(d + 1, ())) - ranks.get(d + 1, 0) - ranks.get(d + 2, 0)
        if h:
            out[d] = h
    return out


def regularity_at_most(I: MonomialIdeal, bound: int, p: int = DEFAULT_PRIME, *,
                       lattice_limit: int = DEFAULT_LATTICE_LIMIT,
                       cache: dict | None = None) -> bool:
    """Exact test of reg(I) <= bound, cheaper than a full Betti table.

    A violation at multidegree a needs nonzero homology in some dimension
    d <= deg(a) - bound - 2, so only a shallow skeleton is examined at most
    lattice elements.  Pass a dict as ``cache`` to share homology results
    keyed by collapsed facet configuration across calls; many multidegrees
    (and many related ideals) produce the same configuration.
    """
    if cache is None:
        cache = {}
    lat = lcm_lattice(I, limit=lattice_limit)
    G = I.exponent_array()
    degs = lat.sum(axis=1)
    deep = degs > bound
    if not deep.any():
        return True
    lat = lat[deep]
    degs = degs[deep]
    # batched facet masks: bit j is loose for gen g at multidegree a
    # when g divides a and g_j < a_j
    div = np.all(G[None, :, :] <= lat[:, None, :], axis=2)
    pow2 = 1 << np.arange(I.n_vars, dtype=np.int64)
    masks = (G[None, :, :] < lat[:, None, :]) @ pow2
    cone = np.bitwise_and.reduce(np.where(div, masks, -1), axis=1) != 0
    for row in np.nonzero(~cone)[0]:
        top_dim = int(degs[row]) - bound - 2
        raw = sorted(set(masks[row, div[row]].tolist()))
        facets = _strong_collapse(
            [int(f) for f in _maximal_masks(np.array(raw, dtype=np.int64))])
        if len(facets) == 1:
            if facets[0] == 0:
                return False  # a minimal generator of degree above the bound
            continue
        if top_dim < 0:
            continue
        used = 0
        for f in facets:
            used |= f
        positions: dict[int, int] = {}
        m = used
        while m:
            low = m & -m
            m ^= low
            positions[low] = len(positions)
        key = tuple(sorted(_compress_bits(f, positions) for f in facets))
        entry = cache.get((p, key))
        if entry is None or entry[0] < top_dim:
            entry = (top_dim, _bounded_homology(list(key), top_dim, p))
            cache[(p, key)] = entry
        if any(d <= top_dim and r for d, r in entry[1].items()):
            return False
    return True
