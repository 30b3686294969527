"""Search for subspaces on which an enhancement vanishes identically.

A subspace is q-null exactly when some (equivalently, every) basis of it
consists of pairwise-orthogonal classes with q = 0, so the search walks
reduced-echelon bases directly, pruning any branch whose partial span is
not q-null.  Candidate sets are kept as bitsets over all 2^n classes, one
bit per class, so each step of the walk is a handful of word operations.
"""
from __future__ import annotations

from .errors import DegenerateFormError, DimensionMismatchError, LimitError
from .f2 import F2Vector, Subspace
from .forms import Enhancement, _eval_bits, value_table

MAX_SEARCH_DIM = 10


def kernel_vanishing_check(q: Enhancement, k: Subspace) -> bool:
    """Whether q is zero on every vector of the subspace (all 2^dim checked)."""
    if k.ambient_dim != q.form.dim:
        raise DimensionMismatchError(
            f"enhancement dim {q.form.dim}, subspace ambient dim {k.ambient_dim}"
        )
    return all(_eval_bits(q, x.bits) == 0 for x in k.elements())


def _class_set_with_zero_pairing(func_mask: int, n: int) -> int:
    """Bitset of classes x in [0, 2^n) with parity(x & func_mask) = 0.

    Doubling construction: appending coordinate j mirrors the lower block,
    complemented when bit j of the functional is set.
    """
    acc = 1  # x = 0 always pairs to 0
    for j in range(n):
        width = 1 << j
        block = (1 << width) - 1
        if (func_mask >> j) & 1:
            acc |= (block ^ acc) << width
        else:
            acc |= acc << width
    return acc


class _NullSearch:
    """Shared state for one enhancement's q-null subspace walks."""

    def __init__(self, q: Enhancement):
        self.q = q
        self.n = q.form.dim
        table = value_table(q)
        zero = 0
        for x, v in enumerate(table):
            if v == 0:
                zero |= 1 << x
        self.zero_set = zero & ~1  # nonzero classes with q = 0
        self._orth_cache: dict[int, int] = {}
        # has_low_bit[p]: classes with some set coordinate below p
        self.has_low_bit = [0] * (self.n + 1)
        acc = 0
        for p in range(self.n):
            self.has_low_bit[p] = acc
            acc |= self._col_set(p)
        self.has_low_bit[self.n] = acc

    def _orth(self, func_mask: int) -> int:
        m = self._orth_cache.get(func_mask)
        if m is None:
            m = _class_set_with_zero_pairing(func_mask, self.n)
            self._orth_cache[func_mask] = m
        return m

    def _col_set(self, p: int) -> int:
        """Bitset of classes with coordinate p set."""
        full = (1 << (1 << self.n)) - 1
        return full ^ self._orth(1 << p)

    def collect(self, d: int) -> list[tuple[int, ...]]:
        """All echelon bases (increasing pivot) of d-dimensional q-null subspaces."""
        if d == 0:
            return [()]
        if d > self.n:
            return []
        functional = self.q.form.functional_mask
        orth = self._orth
        has_low_bit = self.has_low_bit
        out: list[tuple[int, ...]] = []

        def walk(rows: list[int], cand: int, min_pivot: int) -> None:
            want = d - len(rows)
            pool = cand & has_low_bit[min_pivot]
            if pool.bit_count() < want:
                return
            last = want == 1
            while pool:
                low = pool & -pool
                pool &= pool - 1
                x = low.bit_length() - 1  # class bitmask, as an integer
                rows.append(x)
                if last:
                    out.append(tuple(rows[::-1]))
                else:
                    p = (x & -x).bit_length() - 1
                    walk(rows, cand & orth(functional(x)) & orth(1 << p), p)
                rows.pop()

        walk([], self.zero_set, self.n)
        return out

    def exists(self, d: int) -> bool:
        """Whether any d-dimensional q-null subspace exists (early exit)."""
        if d == 0:
            return True
        if d > self.n:
            return False
        functional = self.q.form.functional_mask
        orth = self._orth
        has_low_bit = self.has_low_bit

        def walk(depth: int, cand: int, min_pivot: int) -> bool:
            want = d - depth
            pool = cand & has_low_bit[min_pivot]
            if pool.bit_count() < want:
                return False
            if want == 1:
                return True
            while pool:
                low = pool & -pool
                pool &= pool - 1
                x = low.bit_length() - 1
                p = (x & -x).bit_length() - 1
                if walk(depth + 1, cand & orth(functional(x)) & orth(1 << p), p):
                    return True
            return False

        return walk(0, self.zero_set, self.n)


def _null_bases(q: Enhancement, d: int) -> list[tuple[int, ...]]:
    return sorted(_NullSearch(q).collect(d))


def vanishing_subspaces(q: Enhancement, dim: int) -> list[Subspace]:
    """All dim-dimensional subspaces with q identically zero, in canonical order.

    Every returned subspace is automatically isotropic: q zero on a span
    forces 2*(x.y) = 0 for all pairs in it.
    """
    n = q.form.dim
    if n > MAX_SEARCH_DIM:
        raise LimitError(f"dim {n} exceeds vanishing-search guard {MAX_SEARCH_DIM}")
    if dim < 0 or dim > n:
        return []
    out = []
    for rows in _null_bases(q, dim):
        out.append(Subspace(n, tuple(F2Vector(n, r) for r in rows)))
    return out


def max_vanishing_dim(q: Enhancement) -> int:
    """Largest dimension of a q-null subspace.

    For nondegenerate forms this is at most dim/2, so the scan starts there;
    degenerate forms can carry larger q-null subspaces and are scanned from
    the full dimension.
    """
    n = q.form.dim
    if n > MAX_SEARCH_DIM:
        raise LimitError(f"dim {n} exceeds vanishing-search guard {MAX_SEARCH_DIM}")
    start = n // 2 if q.form.nondegenerate else n
    search = _NullSearch(q)
    for d in range(start, 0, -1):
        if search.exists(d):
            return d
    return 0


def has_null_lagrangian(q: Enhancement) -> bool:
    """Whether a q-null subspace of half the dimension exists.

    Odd-rank forms never carry one (a half-dimensional subspace would need
    dim/2 to be an integer), so they answer False.
    """
    n = q.form.dim
    if n > MAX_SEARCH_DIM:
        raise LimitError(f"dim {n} exceeds vanishing-search guard {MAX_SEARCH_DIM}")
    if not q.form.nondegenerate:
        raise DegenerateFormError("Lagrangian test needs a nondegenerate form")
    if n % 2 == 1:
        return False
    return _NullSearch(q).exists(n // 2)
