# Copyright (C) 2024 The maskmat developers
#
# This file is part of maskmat.
#
# It is subject to the license terms in the LICENSE file found in the top-level
# directory of this distribution.
#
# No part of maskmat, including this file, may be copied,
# modified, propagated, or distributed except according to the terms contained
# in the LICENSE file.

import json

from .errors import DimensionError, ParseError
from .field import ctx_new


class Mat(object):
    """Dense matrix over a FieldCtx, stored row-major and never mutated"""

    def __init__(self, ctx, rows, cols, data):
        if len(data) != rows * cols:
            raise DimensionError("%d entries for a %dx%d matrix"
                                 % (len(data), rows, cols))
        assert all(ctx.contains(x) for x in data)
        self.ctx = ctx
        self.rows = rows
        self.cols = cols
        self.data = tuple(data)

    def __repr__(self):
        return "Mat(%dx%d over F_2^%d)" % (self.rows, self.cols, self.ctx.k)

    def __eq__(self, other):
        return isinstance(other, Mat) and self.ctx == other.ctx and \
            self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.ctx, self.shape, self.data))

    def __getitem__(self, key):
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise DimensionError("index (%d, %d) outside %dx%d"
                                 % (i, j, self.rows, self.cols))
        return self.data[i * self.cols + j]

    @classmethod
    def from_rows(cls, ctx, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        return cls(ctx, len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def from_columns(cls, ctx, columns, rows=None):
        columns = [list(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        if any(len(c) != rows for c in columns):
            raise DimensionError("ragged columns")
        return cls(ctx, rows, len(columns),
                   [columns[j][i] for i in range(rows)
                    for j in range(len(columns))])

    @classmethod
    def zeros(cls, ctx, rows, cols):
        return cls(ctx, rows, cols, [0] * (rows * cols))

    @classmethod
    def ones(cls, ctx, rows, cols):
        return cls(ctx, rows, cols, [1] * (rows * cols))

    @classmethod
    def identity(cls, ctx, n):
        return cls(ctx, n, n, [1 if i == j else 0
                               for i in range(n) for j in range(n)])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def row(self, i):
        return list(self.data[i * self.cols:(i + 1) * self.cols])

    def col(self, j):
        return [self.data[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

    def transpose(self):
        return Mat.from_columns(self.ctx, self.to_rows(), rows=self.cols)

    def submatrix(self, row_indices, col_indices):
        return Mat.from_rows(self.ctx, [[self[i, j] for j in col_indices]
                                        for i in row_indices])

    def vstack(self, other):
        if self.cols != other.cols:
            raise DimensionError("cannot stack %dx%d on %dx%d"
                                 % (self.rows, self.cols,
                                    other.rows, other.cols))
        return Mat(self.ctx, self.rows + other.rows, self.cols,
                   self.data + other.data)

    def is_zero(self):
        return not any(self.data)

    def to_text(self):
        """One row per line, space separated lowercase hex"""
        return "\n".join(" ".join(self.ctx.format(x) for x in r)
                         for r in self.to_rows())

    @classmethod
    def from_text(cls, ctx, text):
        rows = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            rows.append([ctx.parse(tok) for tok in line.split()])
        if not rows:
            raise ParseError("no matrix rows found")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ParseError("rows of different lengths")
        return cls.from_rows(ctx, rows)

    def to_dict(self):
        return {"k": self.ctx.k, "rows": self.rows, "cols": self.cols,
                "data": [[self.ctx.format(x) for x in r]
                         for r in self.to_rows()]}

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, obj, ctx=None):
        """Accepts a JSON string or an already decoded dict. The document's
        k selects the field unless ctx is given, in which case they must
        agree."""
        if isinstance(obj, str):
            try:
                obj = json.loads(obj)
            except ValueError as e:
                raise ParseError("invalid JSON: %s" % e)
        try:
            k = int(obj["k"])
            data = obj["data"]
        except (KeyError, TypeError, ValueError):
            raise ParseError("matrix JSON needs 'k' and 'data'")
        if ctx is None:
            ctx = ctx_new(k)
        elif ctx.k != k:
            raise ParseError("matrix is over F_2^%d, expected F_2^%d"
                             % (k, ctx.k))
        rows = [[ctx.parse(str(tok)) for tok in r] for r in data]
        m = cls.from_rows(ctx, rows)
        if (obj.get("rows", m.rows), obj.get("cols", m.cols)) != m.shape:
            raise ParseError("declared shape does not match data")
        return m


class Selection(object):
    """Strictly increasing column indices, at most `bound` of them"""

    def __init__(self, indices, bound=None, ncols=None):
        indices = tuple(indices)
        if any(b <= a for a, b in zip(indices, indices[1:])):
            raise DimensionError("selection %r is not strictly increasing"
                                 % (indices,))
        if bound is not None and len(indices) > bound:
            raise DimensionError("selection of %d columns exceeds bound %d"
                                 % (len(indices), bound))
        if indices and (indices[0] < 0 or
                        (ncols is not None and indices[-1] >= ncols)):
            raise DimensionError("selection %r out of range" % (indices,))
        self.indices = indices

    def __repr__(self):
        return "Selection(%r)" % (self.indices,)

    def __iter__(self):
        return iter(self.indices)

    def __len__(self):
        return len(self.indices)

    def __eq__(self, other):
        return isinstance(other, Selection) and self.indices == other.indices

    def __hash__(self):
        return hash(self.indices)

    def one_based(self):
        return [i + 1 for i in self.indices]


def select_cols(m, sel):
    indices = list(sel)
    for j in indices:
        if not 0 <= j < m.cols:
            raise DimensionError("column %d outside a %d-column matrix"
                                 % (j, m.cols))
    return Mat.from_rows(m.ctx, [[r[j] for j in indices]
                                 for r in m.to_rows()])


def rref_rows(ctx, rows, ncols):
    """Reduced row echelon form of a list of rows (lists of ints).

    Columns are scanned left to right; the first row at or below the
    current one with a nonzero entry becomes the pivot row and is swapped
    up. Returns (rows, pivot_columns). The input is not modified.
    """
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and rows[p][c] == 0:
            p += 1
        if p == nrows:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pivot_row = rows[r]
        if pivot_row[c] != 1:
            inv = ctx.inv(pivot_row[c])
            pivot_row = [ctx.mul(inv, x) for x in pivot_row]
            rows[r] = pivot_row
        for i in range(nrows):
            f = rows[i][c]
            if i != r and f:
                rows[i] = [x ^ ctx.mul(f, y)
                           for x, y in zip(rows[i], pivot_row)]
        pivots.append(c)
        r += 1
    return rows, pivots


def kernel_vectors(ctx, rows, ncols):
    """Reduced right-kernel basis of the matrix given by rows.

    One vector per free column, in increasing order of that column: it
    holds 1 at its own free position, 0 at the other free positions and
    minus the RREF entries at the pivot positions (negation is the
    identity in characteristic 2).
    """
    reduced, pivots = rref_rows(ctx, rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [0] * ncols
        v[f] = 1
        for i, p in enumerate(pivots):
            v[p] = ctx.neg(reduced[i][f])
        basis.append(v)
    return basis


def kernel_basis(m):
    """Right kernel basis as the columns of a cols x nullity matrix"""
    basis = kernel_vectors(m.ctx, m.to_rows(), m.cols)
    return Mat.from_columns(m.ctx, basis, rows=m.cols)


def left_kernel_basis(m):
    """Left kernel basis as the rows of a nullity x rows matrix"""
    basis = kernel_vectors(m.ctx, m.transpose().to_rows(), m.rows)
    return Mat.from_rows(m.ctx, basis) if basis \
        else Mat.zeros(m.ctx, 0, m.rows)


def rank(m):
    return len(rref_rows(m.ctx, m.to_rows(), m.cols)[1])


def is_invertible(m):
    if m.rows != m.cols:
        raise DimensionError("a %dx%d matrix is not square"
                             % (m.rows, m.cols))
    return rank(m) == m.rows


def mat_vec(m, v):
    if len(v) != m.cols:
        raise DimensionError("vector of length %d for %d columns"
                             % (len(v), m.cols))
    ctx = m.ctx
    return [ctx.sum(ctx.mul(a, x) for a, x in zip(m.row(i), v) if x)
            for i in range(m.rows)]


def mat_mul(a, b):
    if a.cols != b.rows:
        raise DimensionError("cannot multiply %dx%d by %dx%d"
                             % (a.rows, a.cols, b.rows, b.cols))
    ctx = a.ctx
    b_cols = [b.col(j) for j in range(b.cols)]
    return Mat.from_rows(ctx, [[ctx.sum(ctx.mul(x, y)
                                        for x, y in zip(a.row(i), bc))
                                for bc in b_cols]
                               for i in range(a.rows)])


def mat_sub_from_ones(a):
    """J - A, which in characteristic 2 is J + A"""
    return Mat(a.ctx, a.rows, a.cols, [a.ctx.sub(1, x) for x in a.data])
