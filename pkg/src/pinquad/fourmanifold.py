"""Unimodular intersection forms of closed oriented 4-manifolds.

A 4-manifold enters only through its integer intersection form and a
characteristic vector (the class dual to w2).  Signatures are computed by
congruence diagonalization over exact rationals, and the Guillou-Marin
congruence 2*beta = F.F - sign (mod 16) pins the Brown invariant any
characteristic surface must carry.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .brown import brown_invariant
from .errors import DimensionMismatchError, LimitError, NotCharacteristicError
from .f2 import F2Matrix, F2Vector, solve
from .forms import BilinearForm, Enhancement

MAX_FORM_DIM = 12


def _det(gram: Sequence[Sequence[int]]) -> Fraction:
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                a[i] = [a[i][j] - f * a[k][j] for j in range(n)]
    return det


@dataclass(frozen=True)
class UnimodularForm:
    """Symmetric integer Gram matrix with determinant +-1."""

    dim: int
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.dim > MAX_FORM_DIM:
            raise LimitError(f"form dimension {self.dim} exceeds cap {MAX_FORM_DIM}")
        if len(self.gram) != self.dim or any(len(r) != self.dim for r in self.gram):
            raise ValueError(f"Gram matrix is not {self.dim}x{self.dim}")
        for i in range(self.dim):
            for j in range(i, self.dim):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError(f"Gram matrix not symmetric at ({i},{j})")
        d = _det(self.gram)
        if d not in (1, -1):
            raise ValueError(f"form is not unimodular: det = {d}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "UnimodularForm":
        return cls(len(rows), tuple(tuple(int(x) for x in r) for r in rows))

    def pair(self, u: Sequence[int], v: Sequence[int]) -> int:
        if len(u) != self.dim or len(v) != self.dim:
            raise DimensionMismatchError(
                f"form has dim {self.dim}, vectors have lengths {len(u)}, {len(v)}"
            )
        return sum(u[i] * self.gram[i][j] * v[j] for i in range(self.dim) for j in range(self.dim))

    def mod2(self) -> BilinearForm:
        """Reduction mod 2; nondegenerate because the form is unimodular."""
        return BilinearForm.from_rows([[x & 1 for x in row] for row in self.gram])

    def to_json(self) -> dict:
        return {"dim": self.dim, "gram": [list(row) for row in self.gram]}

    @classmethod
    def from_json(cls, data: dict) -> "UnimodularForm":
        return cls(int(data["dim"]), tuple(tuple(int(x) for x in row) for row in data["gram"]))


@dataclass(frozen=True)
class CharacteristicVector:
    """An integer class c with c.x = x.x (mod 2) for all x, validated on basis vectors."""

    form: UnimodularForm
    coords: tuple[int, ...]

    def __post_init__(self):
        _require_characteristic(self.form, self.coords)

    def self_intersection(self) -> int:
        return self.form.pair(self.coords, self.coords)


def _coords(c: "CharacteristicVector | Sequence[int]") -> tuple[int, ...]:
    if isinstance(c, CharacteristicVector):
        return c.coords
    return tuple(int(x) for x in c)


def _require_characteristic(m: UnimodularForm, coords: Sequence[int]) -> None:
    if len(coords) != m.dim:
        raise DimensionMismatchError(f"form has dim {m.dim}, vector has length {len(coords)}")
    for i in range(m.dim):
        pairing = sum(coords[j] * m.gram[j][i] for j in range(m.dim))
        if (pairing - m.gram[i][i]) % 2:
            raise NotCharacteristicError(i, pairing % 2, m.gram[i][i] % 2)


def is_characteristic(m: UnimodularForm, c: "CharacteristicVector | Sequence[int]") -> bool:
    """Whether c.e_i = e_i.e_i (mod 2) for every basis vector."""
    try:
        _require_characteristic(m, _coords(c))
    except NotCharacteristicError:
        return False
    return True


def signature(m: UnimodularForm) -> int:
    """Positive minus negative diagonal count after exact congruence diagonalization.

    Symmetric pivoting over rationals; when the active block has an all-zero
    diagonal, a hyperbolic off-diagonal entry is folded onto the diagonal by
    a symmetric row-and-column addition (contributing one +1 and one -1).
    """
    n = m.dim
    a = [[Fraction(x) for x in row] for row in m.gram]
    pos = neg = 0
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][i] != 0), None)
        if piv is None:
            i, j = next(
                (i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0
            )
            # e_i <- e_i + e_j puts 2*a[i][j] on the diagonal
            for t in range(n):
                a[i][t] += a[j][t]
            for t in range(n):
                a[t][i] += a[t][j]
            piv = i
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            for row in a:
                row[k], row[piv] = row[piv], row[k]
        d = a[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for r in range(k + 1, n):
            f = a[r][k] / d
            if f:
                for t in range(n):
                    a[r][t] -= f * a[k][t]
                for t in range(n):
                    a[t][r] -= f * a[t][k]
    assert pos + neg == n
    return pos - neg


def characteristic_classes_mod2(m: UnimodularForm) -> list[F2Vector]:
    """The unique mod-2 solution of the Wu condition gram.c = diag (mod 2)."""
    mod2 = m.mod2()
    diag = F2Vector.from_coords([m.gram[i][i] % 2 for i in range(m.dim)])
    sol = solve(F2Matrix(m.dim, m.dim, mod2.row_masks), diag)
    assert sol is not None  # unimodular forms are mod-2 nondegenerate
    return [sol]


def gm_required_beta(m: UnimodularForm, c: "CharacteristicVector | Sequence[int]") -> int:
    """The Brown invariant forced on a characteristic surface: (c.c - sign)/2 mod 8.

    The difference c.c - sign(m) is a multiple of 8 for characteristic c
    (van der Blij), so in particular it is even; an odd difference signals a
    bug, not bad input.
    """
    coords = _coords(c)
    _require_characteristic(m, coords)
    cc = m.pair(coords, coords)
    sig = signature(m)
    if (cc - sig) % 2:
        raise RuntimeError(
            f"van der Blij violated: c.c = {cc}, sign = {sig}; difference is odd"
        )
    return ((cc - sig) // 2) % 8


def gm_check(
    m: UnimodularForm,
    c: "CharacteristicVector | Sequence[int]",
    q: Enhancement,
) -> bool:
    """Whether the enhancement's Brown invariant matches the required value."""
    return brown_invariant(q) == gm_required_beta(m, c)


def _e8_gram() -> tuple[tuple[int, ...], ...]:
    # Cartan matrix of the E8 root system: 2s on the diagonal, -1 per edge
    # of the chain 0-1-2-3-4-5-6 with node 7 hanging off node 4.
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)]
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = 2
    for i, j in edges:
        g[i][j] = g[j][i] = -1
    return tuple(tuple(row) for row in g)


FORM_LIBRARY: dict[str, UnimodularForm] = {
    "1": UnimodularForm.from_rows([[1]]),
    "-1": UnimodularForm.from_rows([[-1]]),
    "H": UnimodularForm.from_rows([[0, 1], [1, 0]]),
    "E8": UnimodularForm(8, _e8_gram()),
}


def unimodular_direct_sum(*forms: UnimodularForm) -> UnimodularForm:
    """Block-diagonal sum of unimodular forms."""
    n = sum(f.dim for f in forms)
    gram = [[0] * n for _ in range(n)]
    off = 0
    for f in forms:
        for i in range(f.dim):
            for j in range(f.dim):
                gram[off + i][off + j] = f.gram[i][j]
        off += f.dim
    return UnimodularForm.from_rows(gram)


def parse_form_name(expr: str) -> UnimodularForm:
    """Resolve a library form expression such as "1", "E8", or "1+1+-1"."""
    parts = expr.split("+")
    try:
        summands = [FORM_LIBRARY[p] for p in parts]
    except KeyError as e:
        raise ValueError(
            f"unknown form name {e.args[0]!r}; known names: {', '.join(FORM_LIBRARY)}"
        ) from None
    return unimodular_direct_sum(*summands)
