"""Surface intersection forms and their Z/4-valued quadratic enhancements.

An enhancement q refines a symmetric mod-2 bilinear form via

    q(x + y) = q(x) + q(y) + 2*(x.y)   in Z/4,

and is determined by its values on a basis, which must match the diagonal
of the form mod 2 (set y = x in the law).  Enhancements of closed-surface
forms correspond bijectively to Pin^- structures, so this module stores a
Pin^- structure as nothing but its enhancement.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .errors import (
    DegenerateFormError,
    DimensionMismatchError,
    LimitError,
    SurgeryObstructionError,
)
from .f2 import F2Matrix, F2Vector, Subspace, kernel_basis, parity, rank, solve

MAX_ENHANCEMENT_ENUMERATION_DIM = 12


@dataclass(frozen=True)
class BilinearForm:
    """Symmetric bilinear form on F2^dim given by its Gram matrix."""

    dim: int
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.gram) != self.dim or any(len(r) != self.dim for r in self.gram):
            raise ValueError(f"Gram matrix is not {self.dim}x{self.dim}")
        for i in range(self.dim):
            for j in range(self.dim):
                if self.gram[i][j] not in (0, 1):
                    raise ValueError(f"Gram entry ({i},{j}) is {self.gram[i][j]}, expected a bit")
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError(f"Gram matrix not symmetric at ({i},{j})")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "BilinearForm":
        return cls(len(rows), tuple(tuple(r) for r in rows))

    @cached_property
    def row_masks(self) -> tuple[int, ...]:
        return tuple(
            sum(bit << j for j, bit in enumerate(row)) for row in self.gram
        )

    @cached_property
    def nondegenerate(self) -> bool:
        return rank(self.matrix) == self.dim

    @property
    def matrix(self) -> F2Matrix:
        return F2Matrix(self.dim, self.dim, self.row_masks)

    def product_bits(self, x_bits: int, y_bits: int) -> int:
        """x.y for raw bitmasks."""
        acc = 0
        m = x_bits
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            acc ^= self.row_masks[i] & y_bits
        return acc.bit_count() & 1

    def product(self, x: F2Vector, y: F2Vector) -> int:
        if x.dim != self.dim or y.dim != self.dim:
            raise DimensionMismatchError(
                f"form has dim {self.dim}, vectors have dims {x.dim}, {y.dim}"
            )
        return self.product_bits(x.bits, y.bits)

    def functional_mask(self, x_bits: int) -> int:
        """Bitmask of the linear functional y -> x.y (the row gram.x)."""
        acc = 0
        m = x_bits
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            acc ^= self.row_masks[i]
        return acc

    def to_json(self) -> dict:
        return {"dim": self.dim, "gram": [list(row) for row in self.gram]}

    @classmethod
    def from_json(cls, data: dict) -> "BilinearForm":
        return cls(int(data["dim"]), tuple(tuple(int(b) for b in row) for row in data["gram"]))


def hyperbolic_form(genus: int) -> BilinearForm:
    """Orthogonal sum of ``genus`` hyperbolic planes [[0,1],[1,0]]."""
    if genus < 0:
        raise ValueError("genus must be nonnegative")
    n = 2 * genus
    gram = [[0] * n for _ in range(n)]
    for g in range(genus):
        gram[2 * g][2 * g + 1] = gram[2 * g + 1][2 * g] = 1
    return BilinearForm.from_rows(gram)


def crosscap_form(crosscaps: int) -> BilinearForm:
    """Identity form of rank ``crosscaps`` (one crosscap class per generator)."""
    if crosscaps < 1:
        raise ValueError("need at least one crosscap")
    return BilinearForm.from_rows(
        [[1 if i == j else 0 for j in range(crosscaps)] for i in range(crosscaps)]
    )


@dataclass(frozen=True)
class SurfaceModel:
    """A closed surface presented by its standard mod-2 intersection form."""

    kind: str  # "orientable" | "nonorientable"
    parameter: int  # genus, or number of crosscaps
    form: BilinearForm

    @classmethod
    def orientable(cls, genus: int) -> "SurfaceModel":
        return cls("orientable", genus, hyperbolic_form(genus))

    @classmethod
    def nonorientable(cls, crosscaps: int) -> "SurfaceModel":
        return cls("nonorientable", crosscaps, crosscap_form(crosscaps))


@dataclass(frozen=True)
class Covector:
    """A linear functional on F2^dim; pairs with vectors by dot product."""

    dim: int
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits < (1 << self.dim):
            raise ValueError(f"bit mask {self.bits:#x} does not fit in dimension {self.dim}")

    @classmethod
    def from_coords(cls, coords: Sequence[int]) -> "Covector":
        v = F2Vector.from_coords(coords)
        return cls(v.dim, v.bits)

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.dim))

    def pair(self, x: F2Vector) -> int:
        if x.dim != self.dim:
            raise DimensionMismatchError(f"covector dim {self.dim}, vector dim {x.dim}")
        return parity(self.bits & x.bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.coords)


@dataclass(frozen=True)
class Enhancement:
    """A quadratic enhancement, stored by its Z/4 values on the basis."""

    form: BilinearForm
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.form.dim:
            raise DimensionMismatchError(
                f"form has dim {self.form.dim}, got {len(self.values)} basis values"
            )
        for i, v in enumerate(self.values):
            if not 0 <= v <= 3:
                raise ValueError(f"basis value {v} at index {i} is not in Z/4")
            if (v & 1) != self.form.gram[i][i]:
                raise ValueError(
                    f"parity constraint violated at index {i}: "
                    f"q(e{i}) = {v} but e{i}.e{i} = {self.form.gram[i][i]}"
                )

    @property
    def dim(self) -> int:
        return self.form.dim

    def to_json(self) -> dict:
        return {"form": self.form.to_json(), "values": list(self.values)}

    @classmethod
    def from_json(cls, data: dict) -> "Enhancement":
        return cls(BilinearForm.from_json(data["form"]), tuple(int(v) % 4 for v in data["values"]))


def eval_q(q: Enhancement, x: F2Vector) -> int:
    """Value of the enhancement on a class, by the closed formula.

    For x with support S this is sum(values[i], i in S) plus twice the number
    of Gram pairs i < j in S, reduced mod 4; it is the unique extension of the
    basis values satisfying the enhancement law.
    """
    if x.dim != q.form.dim:
        raise DimensionMismatchError(f"enhancement dim {q.form.dim}, class dim {x.dim}")
    return _eval_bits(q, x.bits)


def _eval_bits(q: Enhancement, bits: int) -> int:
    total = 0
    pairs = 0
    rows = q.form.row_masks
    m = bits
    while m:
        i = (m & -m).bit_length() - 1
        m &= m - 1
        total += q.values[i]
        pairs += (rows[i] & m).bit_count()  # partners j > i within the support
    return (total + 2 * pairs) & 3


def value_table(q: Enhancement) -> list[int]:
    """All 2^dim values of the enhancement, indexed by class bitmask.

    Built by doubling: adding basis vector i to every class x supported on
    earlier indices changes q by values[i] + 2*(x.e_i).
    """
    rows = q.form.row_masks
    table = [0]
    for i in range(q.form.dim):
        vi = q.values[i]
        mask = rows[i] & ((1 << i) - 1)
        table += [(t + vi + 2 * ((x & mask).bit_count() & 1)) & 3 for x, t in enumerate(table)]
    return table


def enumerate_enhancements(form: BilinearForm) -> Iterator[Enhancement]:
    """All 2^dim enhancements of the form, in binary-counter order.

    Choice bit i toggles values[i] between gram[i][i] and gram[i][i] + 2.
    """
    if form.dim > MAX_ENHANCEMENT_ENUMERATION_DIM:
        raise LimitError(
            f"dim {form.dim} exceeds enhancement enumeration guard "
            f"{MAX_ENHANCEMENT_ENUMERATION_DIM}"
        )
    diag = tuple(form.gram[i][i] for i in range(form.dim))
    for choice in range(1 << form.dim):
        values = tuple((diag[i] + 2 * ((choice >> i) & 1)) % 4 for i in range(form.dim))
        yield Enhancement(form, values)


def torsor_act(q: Enhancement, y: Covector) -> Enhancement:
    """Act on the enhancement by a cohomology class: q'(x) = q(x) + 2*<y, x>."""
    if y.dim != q.form.dim:
        raise DimensionMismatchError(f"enhancement dim {q.form.dim}, covector dim {y.dim}")
    values = tuple((v + 2 * ((y.bits >> i) & 1)) % 4 for i, v in enumerate(q.values))
    return Enhancement(q.form, values)


def poincare_dual(form: BilinearForm, y: Covector) -> F2Vector:
    """The unique class y_hat with <y, x> = y_hat.x for all x."""
    if y.dim != form.dim:
        raise DimensionMismatchError(f"form dim {form.dim}, covector dim {y.dim}")
    if not form.nondegenerate:
        raise DegenerateFormError("Poincare dual undefined: degenerate form")
    sol = solve(form.matrix, F2Vector(form.dim, y.bits))
    assert sol is not None  # nondegenerate Gram matrix is invertible
    return sol


def restrict(q: Enhancement, s: Subspace) -> Enhancement:
    """The enhancement induced on a subspace, in terms of its echelon basis.

    The restricted Gram matrix records pairwise intersections of the basis
    vectors and may be degenerate.
    """
    if s.ambient_dim != q.form.dim:
        raise DimensionMismatchError(
            f"enhancement dim {q.form.dim}, subspace ambient dim {s.ambient_dim}"
        )
    basis = s.basis
    k = len(basis)
    gram = tuple(
        tuple(q.form.product_bits(basis[i].bits, basis[j].bits) for j in range(k))
        for i in range(k)
    )
    values = tuple(_eval_bits(q, b.bits) for b in basis)
    return Enhancement(BilinearForm(k, gram), values)


def direct_sum(q1: Enhancement, q2: Enhancement) -> Enhancement:
    """Orthogonal sum: block-diagonal form, concatenated basis values."""
    n1, n2 = q1.form.dim, q2.form.dim
    gram = tuple(
        tuple(q1.form.gram[i][j] if j < n1 else 0 for j in range(n1 + n2)) for i in range(n1)
    ) + tuple(
        tuple(0 if j < n1 else q2.form.gram[i][j - n1] for j in range(n1 + n2))
        for i in range(n2)
    )
    return Enhancement(BilinearForm(n1 + n2, gram), q1.values + q2.values)


def isotropic_reduction(q: Enhancement, c: F2Vector) -> Enhancement:
    """Algebraic surgery on a class with q(c) = 0: the enhancement on c-perp/c.

    Preconditions, checked in order: c nonzero, c.c = 0, q(c) = 0.  Each
    failure raises SurgeryObstructionError naming the obstruction.  Because
    q(x + c) = q(x) for x in c-perp, the enhancement descends to cosets; the
    coset representatives are fixed by zeroing the pivot coordinate of c.
    """
    if c.dim != q.form.dim:
        raise DimensionMismatchError(f"enhancement dim {q.form.dim}, class dim {c.dim}")
    if not q.form.nondegenerate:
        raise DegenerateFormError("surgery reduction needs a nondegenerate form")
    if c.bits == 0:
        raise SurgeryObstructionError("zero class")
    if q.form.product_bits(c.bits, c.bits):
        raise SurgeryObstructionError("c.c != 0")
    if _eval_bits(q, c.bits):
        raise SurgeryObstructionError("q(c) != 0")
    n = q.form.dim
    pivot = (c.bits & -c.bits).bit_length() - 1
    # c-perp cut by {x : x_pivot = 0} picks one representative per coset of c
    conditions = F2Matrix(2, n, (q.form.functional_mask(c.bits), 1 << pivot))
    reps = kernel_basis(conditions)
    assert reps.dim == n - 2
    return restrict(q, reps)
