"""Exact arithmetic on monomials and monomial ideals.

Monomials are exponent vectors in a fixed number of variables; ideals are
kept in canonical form (a divisibility antichain, sorted by degree then
lexicographically on exponents) so that structural equality coincides with
ideal equality.  Everything is immutable and pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DimensionMismatch


@dataclass(frozen=True, order=True)
class Monomial:
    """A monomial x^a, stored as its exponent vector."""

    sort_key: tuple[int, tuple[int, ...]] = field(init=False, repr=False)
    exponents: tuple[int, ...] = ()
    degree: int = field(init=False, compare=False)

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "degree", sum(exps))
        object.__setattr__(self, "sort_key", (self.degree, exps))

    @property
    def n_vars(self) -> int:
        return len(self.exponents)

    @classmethod
    def one(cls, n_vars: int) -> Monomial:
        return cls((0,) * n_vars)

    @classmethod
    def variable(cls, n_vars: int, i: int) -> Monomial:
        e = [0] * n_vars
        e[i] = 1
        return cls(tuple(e))

    @classmethod
    def from_support(cls, n_vars: int, support: Iterable[int]) -> Monomial:
        """Squarefree monomial x_F for a set F of variable indices."""
        e = [0] * n_vars
        for i in support:
            e[i] = 1
        return cls(tuple(e))

    def _check(self, other: Monomial) -> None:
        if self.n_vars != other.n_vars:
            raise DimensionMismatch(
                f"monomials in {self.n_vars} and {other.n_vars} variables")

    def divides(self, other: Monomial) -> bool:
        self._check(other)
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def lcm(self, other: Monomial) -> Monomial:
        self._check(other)
        return Monomial(tuple(max(a, b) for a, b in zip(self.exponents, other.exponents)))

    def gcd(self, other: Monomial) -> Monomial:
        self._check(other)
        return Monomial(tuple(min(a, b) for a, b in zip(self.exponents, other.exponents)))

    def __mul__(self, other: Monomial) -> Monomial:
        self._check(other)
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def colon(self, d: Monomial) -> Monomial:
        """m / gcd(m, d): exponents max(m_i - d_i, 0)."""
        self._check(d)
        return Monomial(tuple(max(a - b, 0) for a, b in zip(self.exponents, d.exponents)))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.exponents) if e > 0)

    @property
    def is_one(self) -> bool:
        return self.degree == 0

    @property
    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exponents)

    def radical(self) -> Monomial:
        return Monomial(tuple(min(e, 1) for e in self.exponents))

    def __str__(self) -> str:
        if self.is_one:
            return "1"
        parts = []
        for i, e in enumerate(self.exponents):
            if e == 1:
                parts.append(f"x{i + 1}")
            elif e > 1:
                parts.append(f"x{i + 1}^{e}")
        return "*".join(parts)


def divides(a: Monomial, b: Monomial) -> bool:
    return a.divides(b)


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return a.lcm(b)


def colon_mono(m: Monomial, d: Monomial) -> Monomial:
    return m.colon(d)


def _minimalize_array(arr: np.ndarray) -> np.ndarray:
    """Rows of arr that no other row divides (componentwise <=), deduped,
    sorted by (degree, lex)."""
    if arr.shape[0] == 0:
        return arr
    arr = np.unique(arr, axis=0)
    deg = arr.sum(axis=1)
    order = np.lexsort(tuple(arr[:, i] for i in range(arr.shape[1] - 1, -1, -1)) + (deg,))
    arr = arr[order]
    deg = deg[order]
    kept: list[np.ndarray] = []
    # Process by increasing degree: a proper divisor has strictly smaller
    # degree, so within a group nothing divides anything else (dups removed).
    for d in np.unique(deg):
        group = arr[deg == d]
        if kept:
            K = np.vstack(kept)
            keep_mask = np.ones(group.shape[0], dtype=bool)
            chunk = max(1, 4_000_000 // max(1, K.shape[0] * K.shape[1]))
            for lo in range(0, group.shape[0], chunk):
                blk = group[lo:lo + chunk]
                dominated = (K[None, :, :] <= blk[:, None, :]).all(axis=2).any(axis=1)
                keep_mask[lo:lo + chunk] = ~dominated
            group = group[keep_mask]
        for row in group:
            kept.append(row)
    if not kept:
        return arr[:0]
    return np.vstack(kept)


def _sorted_gens(monos: Iterable[Monomial]) -> tuple[Monomial, ...]:
    return tuple(sorted(monos))


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal, held by its canonical minimal generating set.

    The unit ideal is (1); the zero ideal has no generators.  Construct via
    :func:`minimalize` (or the arithmetic below) so the canonical-form
    invariants hold.
    """

    n_vars: int
    gens: tuple[Monomial, ...]

    def _check(self, other) -> None:
        if self.n_vars != other.n_vars:
            raise DimensionMismatch(
                f"ideals in {self.n_vars} and {other.n_vars} variables")

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return len(self.gens) == 1 and self.gens[0].is_one

    @property
    def is_squarefree(self) -> bool:
        return all(g.is_squarefree for g in self.gens)

    def exponent_array(self) -> np.ndarray:
        """Generators as an integer matrix, one row per generator."""
        if not self.gens:
            return np.zeros((0, self.n_vars), dtype=np.int64)
        return np.array([g.exponents for g in self.gens], dtype=np.int64)

    def contains(self, m: Monomial) -> bool:
        if m.n_vars != self.n_vars:
            raise DimensionMismatch(
                f"monomial in {m.n_vars} variables, ideal in {self.n_vars}")
        return any(g.divides(m) for g in self.gens)

    def contains_ideal(self, other: MonomialIdeal) -> bool:
        self._check(other)
        return all(self.contains(g) for g in other.gens)

    def __add__(self, other: MonomialIdeal) -> MonomialIdeal:
        self._check(other)
        return minimalize(self.n_vars, self.gens + other.gens)

    def product(self, other: MonomialIdeal) -> MonomialIdeal:
        self._check(other)
        if self.is_zero or other.is_zero:
            return MonomialIdeal(self.n_vars, ())
        A, B = self.exponent_array(), other.exponent_array()
        prods = (A[:, None, :] + B[None, :, :]).reshape(-1, self.n_vars)
        return _from_array(self.n_vars, prods)

    def power(self, t: int) -> MonomialIdeal:
        if t < 0:
            raise ValueError("negative power")
        if t == 0:
            return unit_ideal(self.n_vars)
        result = self
        for _ in range(t - 1):
            result = result.product(self)
        return result

    def colon(self, m: Monomial) -> MonomialIdeal:
        if m.n_vars != self.n_vars:
            raise DimensionMismatch(
                f"monomial in {m.n_vars} variables, ideal in {self.n_vars}")
        return minimalize(self.n_vars, [g.colon(m) for g in self.gens])

    def intersect(self, other: MonomialIdeal) -> MonomialIdeal:
        self._check(other)
        if self.is_zero or other.is_zero:
            return MonomialIdeal(self.n_vars, ())
        A, B = self.exponent_array(), other.exponent_array()
        lcms = np.maximum(A[:, None, :], B[None, :, :]).reshape(-1, self.n_vars)
        return _from_array(self.n_vars, lcms)

    def radical(self) -> MonomialIdeal:
        return minimalize(self.n_vars, [g.radical() for g in self.gens])

    def to_text(self) -> str:
        """Plain-text serialization: header then one generator per line."""
        lines = [f"n_vars={self.n_vars} gens={len(self.gens)}"]
        for g in self.gens:
            lines.append(" ".join(str(e) for e in g.exponents))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> MonomialIdeal:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        header = dict(kv.split("=") for kv in lines[0].split())
        n_vars, n_gens = int(header["n_vars"]), int(header["gens"])
        gens = [Monomial(tuple(int(e) for e in ln.split())) for ln in lines[1:]]
        if len(gens) != n_gens:
            raise ValueError(f"header says {n_gens} generators, found {len(gens)}")
        return minimalize(n_vars, gens)

    def __str__(self) -> str:
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.gens)


def _from_array(n_vars: int, arr: np.ndarray) -> MonomialIdeal:
    arr = _minimalize_array(np.asarray(arr, dtype=np.int64))
    gens = tuple(Monomial(tuple(int(e) for e in row)) for row in arr)
    return MonomialIdeal(n_vars, gens)


def minimalize(n_vars: int, gens: Sequence[Monomial]) -> MonomialIdeal:
    """Canonical ideal generated by ``gens``: drop duplicates and any
    generator divisible by another, sort by (degree, lex)."""
    gens = list(gens)
    for g in gens:
        if g.n_vars != n_vars:
            raise DimensionMismatch(
                f"generator in {g.n_vars} variables, ideal in {n_vars}")
    if not gens:
        return MonomialIdeal(n_vars, ())
    if any(g.is_one for g in gens):
        return unit_ideal(n_vars)
    arr = np.array([g.exponents for g in gens], dtype=np.int64)
    return _from_array(n_vars, arr)


def unit_ideal(n_vars: int) -> MonomialIdeal:
    return MonomialIdeal(n_vars, (Monomial.one(n_vars),))


def zero_ideal(n_vars: int) -> MonomialIdeal:
    return MonomialIdeal(n_vars, ())
