"""Exact rational scalars and dense row reduction over Q.

Scalars are :class:`fractions.Fraction`; every other module goes through
:func:`scalar` so the coefficient field can be swapped in one place.
"""

from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def scalar(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Scalar."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {x!r} to an exact scalar")


def format_scalar(x: Fraction) -> str:
    # Fraction.__str__ already gives "p/q" with the sign on p, and "p" when q == 1
    return str(scalar(x))


class ExactMatrix:
    """Dense immutable matrix of Fractions."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Sequence], ncols: int | None = None):
        rows = tuple(tuple(scalar(e) for e in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self):
        return hash((self.ncols, self.rows))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_scalar(e) for e in r) + "]" for r in self.rows)
        return f"ExactMatrix([{body}])"

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def nonzero_rows(self) -> "ExactMatrix":
        return ExactMatrix([r for r in self.rows if any(r)], ncols=self.ncols)

    def tolist(self):
        return [list(r) for r in self.rows]


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    rows = [list(r) for r in rows]
    pivots = []
    pr = 0
    for c in range(ncols):
        if pr == len(rows):
            break
        for i in range(pr, len(rows)):
            if rows[i][c]:
                break
        else:
            continue
        rows[pr], rows[i] = rows[i], rows[pr]
        inv = 1 / rows[pr][c]
        prow = [e * inv for e in rows[pr]]
        rows[pr] = prow
        for i in range(len(rows)):
            if i != pr and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivots.append(c)
        pr += 1
    return rows, pivots


def rref(m: ExactMatrix) -> ExactMatrix:
    """Reduced row echelon form; zero rows are kept at the bottom."""
    rows, _ = _rref_rows(list(m.rows), m.ncols)
    return ExactMatrix(rows, ncols=m.ncols)


def pivot_columns(m: ExactMatrix) -> list[int]:
    return _rref_rows(list(m.rows), m.ncols)[1]


def rank(m: ExactMatrix) -> int:
    return len(pivot_columns(m))


def row_basis(m: ExactMatrix) -> ExactMatrix:
    """The nonzero rows of rref(m): a canonical basis of the row space."""
    return rref(m).nonzero_rows()


def in_span(v: Sequence, basis: ExactMatrix) -> bool:
    """True iff v is a Q-linear combination of the rows of ``basis``."""
    v = [scalar(e) for e in v]
    if basis.nrows and len(v) != basis.ncols:
        raise ValueError(f"vector of length {len(v)} against {basis.ncols} columns")
    if not any(v):
        return True
    if basis.nrows == 0:
        return False
    red, pivots = _rref_rows(list(basis.rows), basis.ncols)
    for r, c in zip(red, pivots):
        if v[c]:
            f = v[c]
            v = [a - f * b for a, b in zip(v, r)]
    return not any(v)


def nullspace(m: ExactMatrix) -> ExactMatrix:
    """Basis (as rows) of {x : m x = 0}."""
    red, pivots = _rref_rows(list(m.rows), m.ncols)
    free = [c for c in range(m.ncols) if c not in pivots]
    out = []
    for f in free:
        x = [ZERO] * m.ncols
        x[f] = ONE
        for r, c in zip(red, pivots):
            x[c] = -r[f]
        out.append(x)
    return ExactMatrix(out, ncols=m.ncols)


def solve(m: ExactMatrix, b: Sequence) -> list[Fraction] | None:
    """One solution x of m x = b, or None when inconsistent."""
    aug = [list(r) + [scalar(e)] for r, e in zip(m.rows, b)]
    red, pivots = _rref_rows(aug, m.ncols + 1)
    if m.ncols in pivots:
        return None
    x = [ZERO] * m.ncols
    for r, c in zip(red, pivots):
        x[c] = r[-1]
    return x
