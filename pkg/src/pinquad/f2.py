"""Exact linear algebra over the two-element field.

Vectors are immutable bit vectors (stored as integer bitmasks, coordinate i
is bit i), matrices are tuples of row bitmasks, and subspaces are kept in
reduced row-echelon form so that structural equality coincides with equality
of subspaces.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DimensionMismatchError, LimitError

MAX_VECTOR_DIM = 32
MAX_ENUMERATION_DIM = 12


def parity(mask: int) -> int:
    """Parity of the number of set bits."""
    return mask.bit_count() & 1


@dataclass(frozen=True)
class F2Vector:
    """A vector in F2^dim, coordinates indexed 0..dim-1 (bit i of ``bits``)."""

    dim: int
    bits: int

    def __post_init__(self):
        if not 0 <= self.dim <= MAX_VECTOR_DIM:
            raise LimitError(f"vector dimension {self.dim} outside [0, {MAX_VECTOR_DIM}]")
        if not 0 <= self.bits < (1 << self.dim):
            raise ValueError(f"bit mask {self.bits:#x} does not fit in dimension {self.dim}")

    @classmethod
    def from_coords(cls, coords: Sequence[int]) -> "F2Vector":
        bits = 0
        for i, c in enumerate(coords):
            if c not in (0, 1):
                raise ValueError(f"coordinate {i} is {c}, expected 0 or 1")
            bits |= c << i
        return cls(len(coords), bits)

    @classmethod
    def zero(cls, dim: int) -> "F2Vector":
        return cls(dim, 0)

    @classmethod
    def basis(cls, dim: int, i: int) -> "F2Vector":
        if not 0 <= i < dim:
            raise ValueError(f"basis index {i} outside [0, {dim})")
        return cls(dim, 1 << i)

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.dim))

    def is_zero(self) -> bool:
        return self.bits == 0

    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.dim) if (self.bits >> i) & 1)

    def __add__(self, other: "F2Vector") -> "F2Vector":
        if self.dim != other.dim:
            raise DimensionMismatchError(f"cannot add vectors of dims {self.dim} and {other.dim}")
        return F2Vector(self.dim, self.bits ^ other.bits)

    __xor__ = __add__

    def __str__(self) -> str:
        return "".join(str(b) for b in self.coords)


@dataclass(frozen=True)
class F2Matrix:
    """A rows x cols matrix over F2; row i is the bitmask ``row_masks[i]``."""

    rows: int
    cols: int
    row_masks: tuple[int, ...]

    def __post_init__(self):
        if len(self.row_masks) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.row_masks)}")
        top = 1 << self.cols
        for i, r in enumerate(self.row_masks):
            if not 0 <= r < top:
                raise ValueError(f"row {i} mask {r:#x} does not fit in {self.cols} columns")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "F2Matrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        masks = tuple(F2Vector.from_coords(r).bits for r in rows)
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, masks)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "F2Matrix":
        return cls(rows, cols, (0,) * rows)

    def entry(self, i: int, j: int) -> int:
        return (self.row_masks[i] >> j) & 1

    def apply(self, x: F2Vector) -> F2Vector:
        """Matrix-vector product m.x (x has dim = cols, result dim = rows)."""
        if x.dim != self.cols:
            raise DimensionMismatchError(f"matrix has {self.cols} columns, vector has dim {x.dim}")
        bits = 0
        for i, r in enumerate(self.row_masks):
            bits |= parity(r & x.bits) << i
        return F2Vector(self.rows, bits)


def _rref(masks: Iterable[int], cols: int) -> list[int]:
    """Reduced row echelon form of a list of row bitmasks.

    Returns nonzero rows with strictly increasing pivots (lowest set bit),
    each pivot column cleared in every other row.
    """
    rows = [m for m in masks if m]
    out: list[int] = []
    for col in range(cols):
        bit = 1 << col
        piv = None
        for i, r in enumerate(rows):
            if r & bit:
                piv = rows.pop(i)
                break
        if piv is None:
            continue
        out = [r ^ piv if r & bit else r for r in out]
        rows = [r ^ piv if r & bit else r for r in rows]
        out.append(piv)
        if not rows:
            break
    return out


def rank(m: F2Matrix) -> int:
    """Dimension of the row space."""
    return len(_rref(m.row_masks, m.cols))


def solve(m: F2Matrix, b: F2Vector) -> F2Vector | None:
    """One solution x of m.x = b, or None if the system is inconsistent.

    Free variables are set to zero under leftmost-pivot elimination, so the
    returned solution is reproducible.
    """
    if b.dim != m.rows:
        raise DimensionMismatchError(f"matrix has {m.rows} rows, rhs has dim {b.dim}")
    aug = [(r, (b.bits >> i) & 1) for i, r in enumerate(m.row_masks)]
    pivots: list[tuple[int, int, int]] = []  # (col, row_mask, rhs_bit) after full reduction
    for col in range(m.cols):
        bit = 1 << col
        piv = None
        for i, (r, rb) in enumerate(aug):
            if r & bit:
                piv = aug.pop(i)
                break
        if piv is None:
            continue
        aug = [(r ^ piv[0], rb ^ piv[1]) if r & bit else (r, rb) for r, rb in aug]
        pivots = [((c, r ^ piv[0], rb ^ piv[1]) if r & bit else (c, r, rb)) for c, r, rb in pivots]
        pivots.append((col, piv[0], piv[1]))
    if any(rb for r, rb in aug if r == 0):
        return None
    x = 0
    for col, _r, rb in pivots:
        # rows are fully reduced, so each pivot variable equals its rhs bit
        x |= rb << col
    return F2Vector(m.cols, x)


@dataclass(frozen=True)
class Subspace:
    """A subspace of F2^ambient_dim, basis held in reduced row-echelon form."""

    ambient_dim: int
    basis: tuple[F2Vector, ...]

    def __post_init__(self):
        seen_pivot = -1
        pivot_bits = 0
        for v in self.basis:
            if v.dim != self.ambient_dim:
                raise DimensionMismatchError(
                    f"basis vector of dim {v.dim} in ambient dim {self.ambient_dim}"
                )
            if v.bits == 0:
                raise ValueError("zero vector in basis")
            p = (v.bits & -v.bits).bit_length() - 1
            if p <= seen_pivot:
                raise ValueError("basis not in echelon order")
            seen_pivot = p
            pivot_bits |= 1 << p
        for v in self.basis:
            p = (v.bits & -v.bits).bit_length() - 1
            if v.bits & pivot_bits & ~(1 << p):
                raise ValueError("basis not fully reduced")

    @classmethod
    def span(cls, vectors: Iterable[F2Vector], ambient_dim: int | None = None) -> "Subspace":
        vecs = list(vectors)
        if ambient_dim is None:
            if not vecs:
                raise ValueError("ambient_dim required for an empty spanning set")
            ambient_dim = vecs[0].dim
        for v in vecs:
            if v.dim != ambient_dim:
                raise DimensionMismatchError(
                    f"vector of dim {v.dim} in ambient dim {ambient_dim}"
                )
        masks = _rref((v.bits for v in vecs), ambient_dim)
        return cls(ambient_dim, tuple(F2Vector(ambient_dim, m) for m in masks))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(F2Vector.basis(ambient_dim, i) for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, x: F2Vector) -> bool:
        if x.dim != self.ambient_dim:
            return False
        r = x.bits
        for v in self.basis:
            p = v.bits & -v.bits
            if r & p:
                r ^= v.bits
        return r == 0

    def elements(self) -> Iterator[F2Vector]:
        """All 2^dim vectors of the subspace, in subset order of the basis."""
        masks = [v.bits for v in self.basis]
        for sel in range(1 << len(masks)):
            bits = 0
            s = sel
            while s:
                i = (s & -s).bit_length() - 1
                s &= s - 1
                bits ^= masks[i]
            yield F2Vector(self.ambient_dim, bits)

    def sort_key(self) -> tuple[int, ...]:
        return tuple(v.bits for v in self.basis)


def kernel_basis(m: F2Matrix) -> Subspace:
    """The solution space of m.x = 0 as a canonical Subspace."""
    rref_rows = _rref(m.row_masks, m.cols)
    pivot_cols = [(r & -r).bit_length() - 1 for r in rref_rows]
    pivot_set = set(pivot_cols)
    gens = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        bits = 1 << free
        for r, p in zip(rref_rows, pivot_cols):
            if (r >> free) & 1:
                bits |= 1 << p
        gens.append(F2Vector(m.cols, bits))
    return Subspace.span(gens, m.cols)


def gaussian_binomial(n: int, k: int) -> int:
    """Number of k-dimensional subspaces of F2^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= (1 << (n - i)) - 1
        den *= (1 << (i + 1)) - 1
    assert num % den == 0
    return num // den


def enumerate_subspaces(ambient_dim: int, dim: int) -> Iterator[Subspace]:
    """All dim-dimensional subspaces of F2^ambient_dim, each exactly once.

    Subspaces are produced as reduced-echelon bases: pivot column sets in
    lexicographic order, free entries counted in binary within each set.
    """
    if ambient_dim > MAX_ENUMERATION_DIM:
        raise LimitError(
            f"ambient dimension {ambient_dim} exceeds enumeration guard {MAX_ENUMERATION_DIM}"
        )
    if dim < 0 or dim > ambient_dim:
        raise ValueError(f"subspace dim {dim} outside [0, {ambient_dim}]")
    for pivots in itertools.combinations(range(ambient_dim), dim):
        pivot_set = set(pivots)
        # free slots, row-major: column j of row i may be nonzero for j > pivots[i], j not a pivot
        slots = [
            (i, j)
            for i in range(dim)
            for j in range(pivots[i] + 1, ambient_dim)
            if j not in pivot_set
        ]
        for pattern in range(1 << len(slots)):
            rows = [1 << p for p in pivots]
            for s, (i, j) in enumerate(slots):
                if (pattern >> s) & 1:
                    rows[i] |= 1 << j
            yield Subspace(ambient_dim, tuple(F2Vector(ambient_dim, r) for r in rows))
