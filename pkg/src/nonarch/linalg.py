"""Exact Gaussian elimination used by the certificate generators.

Dense elimination runs over a pluggable field (Fractions, F_p residues or
GF tuples).  For large integer matrices a sparse elimination modulo a big
prime provides a sound full-rank certificate: a nonzero r x r minor mod P
is nonzero over Q, so full column rank mod P implies full column rank over
Q (the converse reduction never claims anything).
"""

from __future__ import annotations

from fractions import Fraction

CERT_PRIME = (1 << 61) - 1  # Mersenne prime, comfortably above any entry


class FractionField:
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def is_zero(a):
        return a == 0

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def inv(a):
        return 1 / a


class PrimeField:
    def __init__(self, p):
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def is_zero(self, a):
        return a % self.p == 0

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        return pow(a, -1, self.p)


class DomainField:
    """Adapter around the coefficient-domain protocol of fields.py."""

    def __init__(self, dom):
        self.dom = dom
        self.zero = dom.zero
        self.one = dom.one

    def is_zero(self, a):
        return self.dom.is_zero(a)

    def add(self, a, b):
        return self.dom.add(a, b)

    def neg(self, a):
        return self.dom.neg(a)

    def mul(self, a, b):
        return self.dom.mul(a, b)

    def inv(self, a):
        return self.dom.inv(a)


def rref(rows, ncols, field):
    """Reduced row echelon form.  rows: list of lists over `field`.

    Returns (rref_rows, pivot_columns)."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if not field.is_zero(mat[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = field.inv(mat[r][c])
        mat[r] = [field.mul(inv, x) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not field.is_zero(mat[i][c]):
                factor = mat[i][c]
                mat[i] = [field.add(x, field.neg(field.mul(factor, y)))
                          for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def nullspace(rows, ncols, field):
    """Basis of the solution space of rows . x = 0; list of coordinate
    vectors (one per free column)."""
    mat, pivots = rref(rows, ncols, field)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [field.zero] * ncols
        vec[fc] = field.one
        for r, pc in enumerate(pivots):
            coeff = mat[r][fc]
            if not field.is_zero(coeff):
                vec[pc] = field.neg(coeff)
        basis.append(vec)
    return basis


def rank(rows, ncols, field) -> int:
    _, pivots = rref(rows, ncols, field)
    return len(pivots)


def sparse_rank_mod_p(rows, ncols, p=CERT_PRIME) -> int:
    """Rank mod p of a sparse integer matrix given as dicts {col: int}."""
    mat = [{c: v % p for c, v in row.items() if v % p} for row in rows]
    mat = [row for row in mat if row]
    rank_count = 0
    pivot_of_col = {}
    for row in mat:
        row = dict(row)
        while row:
            c = min(row)
            piv = pivot_of_col.get(c)
            if piv is None:
                inv = pow(row[c], -1, p)
                row = {cc: (vv * inv) % p for cc, vv in row.items()}
                row = {cc: vv for cc, vv in row.items() if vv}
                pivot_of_col[c] = row
                rank_count += 1
                break
            factor = row[c]
            for cc, vv in piv.items():
                nv = (row.get(cc, 0) - factor * vv) % p
                if nv:
                    row[cc] = nv
                else:
                    row.pop(cc, None)
    return rank_count
