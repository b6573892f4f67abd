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

import numpy as np

from .errors import CandidateError
from .linalg import Mat, mat_sub_from_ones

ALG4 = "alg4"
ALG5 = "alg5"
SCHEMES = (ALG4, ALG5)

# column kinds, in layout order
UNIT = "unit"
L_IDENTITY = "lid"
M_IDENTITY = "mid"
DIAG = "diag"
TRIG = "trig"


def normalize_scheme(scheme):
    s = str(scheme).strip().lower()
    if s in ("4", "alg4"):
        return ALG4
    if s in ("5", "alg5"):
        return ALG5
    raise CandidateError("unknown scheme %r (expected alg4 or alg5)" % scheme)


class GammaCandidate(object):
    """An instantiation matrix in unified form.

    gamma has d+1 rows indexed from 0 and n <= d columns. For alg4, row 0
    is all ones and rows 1..d hold the scheme's d x d matrix; for alg5 the
    rows sum to the zero vector.
    """

    def __init__(self, scheme, gamma, d=None):
        self.scheme = normalize_scheme(scheme)
        if d is None:
            d = gamma.rows - 1
        if gamma.rows != d + 1:
            raise CandidateError("gamma needs %d rows for d=%d, got %d"
                                 % (d + 1, d, gamma.rows))
        if d < 1 or not 1 <= gamma.cols <= d:
            raise CandidateError("gamma of shape %dx%d is not a valid "
                                 "order-%d instantiation"
                                 % (gamma.rows, gamma.cols, d))
        self.gamma = gamma
        self.ctx = gamma.ctx
        self.d = d
        self.n = gamma.cols
        self.validate()

    def __repr__(self):
        return "GammaCandidate(%s, d=%d, n=%d, k=%d)" % (
            self.scheme, self.d, self.n, self.ctx.k)

    def __eq__(self, other):
        return isinstance(other, GammaCandidate) and \
            self.scheme == other.scheme and self.gamma == other.gamma

    def __hash__(self):
        return hash((self.scheme, self.gamma))

    def validate(self):
        g = self.gamma
        if self.scheme == ALG4:
            if any(x != 1 for x in g.row(0)):
                raise CandidateError("alg4 gamma must have an all-ones row 0")
        else:
            for j in range(g.cols):
                if self.ctx.sum(g.col(j)) != 0:
                    raise CandidateError("alg5 gamma column %d does not sum "
                                         "to zero" % j)

    @classmethod
    def from_a_part(cls, a):
        """alg4 candidate from its d x n matrix, below a ones row"""
        return cls(ALG4, Mat.ones(a.ctx, 1, a.cols).vstack(a))

    def a_part(self):
        """Rows 1..d of gamma"""
        return self.gamma.submatrix(range(1, self.d + 1), range(self.n))

    def complement(self):
        """The alg4 companion delta = J - gamma, in unified form"""
        if self.scheme != ALG4:
            raise CandidateError("only alg4 candidates have a complement")
        return GammaCandidate.from_a_part(mat_sub_from_ones(self.a_part()))

    def restrict(self, columns):
        """Sub-candidate keeping only the given gamma columns"""
        columns = list(columns)
        return GammaCandidate(self.scheme,
                              self.gamma.submatrix(range(self.d + 1),
                                                   columns),
                              d=self.d)

    def to_text(self):
        return self.gamma.to_text()

    @classmethod
    def parse(cls, scheme, ctx, text, d=None):
        """Reads gamma from matrix text. For alg4 a square d x d matrix is
        taken as the part below the ones row."""
        return cls.from_matrix(scheme, Mat.from_text(ctx, text), d)

    @classmethod
    def from_matrix(cls, scheme, m, d=None):
        scheme = normalize_scheme(scheme)
        if scheme == ALG4 and (m.rows == d or (d is None
                                               and m.rows == m.cols)):
            return cls.from_a_part(m)
        return cls(scheme, m, d)


class LEntry(object):
    """One entry of L or L': zero, one, or a single indeterminate w_j"""

    __slots__ = ("tag", "j")

    def __init__(self, tag, j=None):
        self.tag = tag
        self.j = j

    def __repr__(self):
        if self.tag == "omega":
            return "w%d" % self.j
        return "1" if self.tag == "one" else "0"

    def __eq__(self, other):
        return isinstance(other, LEntry) and \
            (self.tag, self.j) == (other.tag, other.j)

    def __hash__(self):
        return hash((self.tag, self.j))

    @property
    def slot(self):
        """Coefficient slot: None for zero, 0 for the constant 1 and
        1 + j for w_j"""
        if self.tag == "zero":
            return None
        return 0 if self.tag == "one" else 1 + self.j


ZERO = LEntry("zero")
ONE = LEntry("one")


def omega(j):
    return LEntry("omega", j)


def slot_entry(slot):
    return ONE if slot == 0 else omega(slot - 1)


class ColumnSystem(object):
    """A pair (M, L) read column by column, as the checkers consume it.

    Column c has the field column m_array[:, c], a bitmask of the L rows
    it touches, and a single coefficient slot shared by all its nonzero
    L entries. A vector v of weight <= bound violates safety when
    M v = 0 and every one of the l_rows rows of L v is nonzero.
    """

    def __init__(self, ctx, m_array, supports, slots, nslots, l_rows,
                 bound, labels=None):
        self.ctx = ctx
        self.m_array = np.asarray(m_array, dtype=np.int64)
        self.supports = list(supports)
        self.slots = list(slots)
        self.nslots = nslots
        self.l_rows = l_rows
        self.bound = bound
        self.ell = self.m_array.shape[1]
        self.m_rows = self.m_array.shape[0]
        self.full_mask = (1 << l_rows) - 1
        self.labels = labels
        assert len(self.supports) == self.ell == len(self.slots)

    def __repr__(self):
        return "ColumnSystem(%dx%d, l_rows=%d, bound=%d)" % (
            self.m_rows, self.ell, self.l_rows, self.bound)

    def union_support(self, cols):
        mask = 0
        for c in cols:
            mask |= self.supports[c]
        return mask

    def product(self, cols, values):
        """L v for v supported on cols, one slot vector per L row"""
        rows = [[0] * self.nslots for _ in range(self.l_rows)]
        for c, x in zip(cols, values):
            if not x:
                continue
            s = self.slots[c]
            sup = self.supports[c]
            for r in range(self.l_rows):
                if sup >> r & 1:
                    rows[r][s] ^= x
        return rows

    def nonzero_rows(self, cols, values):
        mask = 0
        for r, slots in enumerate(self.product(cols, values)):
            if any(slots):
                mask |= 1 << r
        return mask

    def m_times(self, cols, values):
        """M v for v supported on cols"""
        ctx = self.ctx
        out = [0] * self.m_rows
        for c, x in zip(cols, values):
            if not x:
                continue
            for i in range(self.m_rows):
                a = int(self.m_array[i, c])
                if a:
                    out[i] ^= ctx.mul(a, x)
        return out

    def column_rows(self, cols):
        """M restricted to cols, as a list of python rows"""
        return [[int(self.m_array[i, c]) for c in cols]
                for i in range(self.m_rows)]


class ProbeSystem(ColumnSystem):
    """M'_gamma together with the tagged L (alg4) or L' (alg5).

    Columns are laid out as
      unit | L-identity | M-identity | diag_0 .. diag_d | T_0 .. T_d
    with n columns per block after the first, so ell = 2dn + 4n + 1.
    """

    def __init__(self, candidate):
        g = candidate.gamma
        d, n = candidate.d, candidate.n
        tagged = candidate.scheme == ALG5
        columns = []

        columns.append(([0] * n, 1, 0, (UNIT, 0, 0)))
        for i in range(n):
            columns.append(([0] * n, 1 << (1 + i), 0, (L_IDENTITY, 0, i)))
        for i in range(n):
            m = [0] * n
            m[i] = 1
            columns.append((m, 0, 0, (M_IDENTITY, 0, i)))
        for j in range(d + 1):
            for i in range(n):
                m = [0] * n
                m[i] = g[j, i]
                columns.append((m, 1 << (1 + i), 1 + j if tagged else 0,
                                (DIAG, j, i)))
        for j in range(d + 1):
            for i in range(n):
                m = [g[j, r] if r <= i else 0 for r in range(n)]
                columns.append((m, (1 << (i + 2)) - 1,
                                1 + j if tagged else 0, (TRIG, j, i)))

        m_array = np.array([c[0] for c in columns],
                           dtype=np.int64).T.reshape(n, len(columns))
        super(ProbeSystem, self).__init__(
            candidate.ctx, m_array,
            supports=[c[1] for c in columns],
            slots=[c[2] for c in columns],
            nslots=d + 2, l_rows=n + 1, bound=n,
            labels=[c[3] for c in columns])
        self.candidate = candidate
        self.scheme = candidate.scheme
        self.d = d
        self.n = n
        self.M = Mat(self.ctx, n, self.ell,
                     [int(x) for x in self.m_array.flatten()])
        self._index = dict((label, c) for c, label in enumerate(self.labels))
        assert self.ell == 2 * d * n + 4 * n + 1

    def __repr__(self):
        return "ProbeSystem(%s, d=%d, n=%d, ell=%d)" % (
            self.scheme, self.d, self.n, self.ell)

    def column_index(self, kind, j=0, pos=0):
        try:
            return self._index[(kind, j, pos)]
        except KeyError:
            raise CandidateError("no %s column (%d, %d)" % (kind, j, pos))

    @property
    def tpart_start(self):
        return self.ell - (self.d + 1) * self.n

    def lsym(self, r, c):
        if self.supports[c] >> r & 1:
            return slot_entry(self.slots[c])
        return ZERO

    def lsym_grid(self):
        return [[self.lsym(r, c) for c in range(self.ell)]
                for r in range(self.l_rows)]

    def evaluate_l(self, omegas=None):
        """L with every tag replaced by a field value (w_j -> omegas[j],
        all ones by default); for alg4 this is the literal 0/1 matrix"""
        if omegas is None:
            omegas = [1] * (self.d + 1)
        values = [1] + list(omegas)
        return Mat(self.ctx, self.l_rows, self.ell,
                   [values[self.slots[c]] if self.supports[c] >> r & 1
                    else 0
                    for r in range(self.l_rows) for c in range(self.ell)])

    def dump(self):
        """Block-structured listing of L and M, one line per row"""
        blocks = [("0", 1), ("I", self.n), ("I_M", self.n)]
        blocks += [("diag_%d" % j, self.n) for j in range(self.d + 1)]
        blocks += [("T_%d" % j, self.n) for j in range(self.d + 1)]
        grid = self.lsym_grid()
        width = max(3, len(self.ctx.format(self.ctx.order - 1)) + 1)

        def render(row):
            out, c = [], 0
            for _, size in blocks:
                out.append("".join(str(x).rjust(width)
                                   for x in row[c:c + size]))
                c += size
            return " |".join(out)

        header = " |".join(name.rjust(width * size)
                           for name, size in blocks)
        lines = ["%s d=%d n=%d ell=%d over %r"
                 % (self.scheme, self.d, self.n, self.ell, self.ctx),
                 "     " + header]
        for r in range(self.l_rows):
            lines.append("L%-3d " % r + render(grid[r]))
        for i in range(self.n):
            lines.append("M%-3d " % i +
                         render([self.ctx.format(int(x))
                                 for x in self.m_array[i]]))
        return "\n".join(lines)


def build_probe_system(candidate):
    return ProbeSystem(candidate)


def tpart_views(ps):
    """Bottom-right n x (d+1)n parts of M and of the tagged L"""
    cols = range(ps.tpart_start, ps.ell)
    m = ps.M.submatrix(range(ps.n), cols)
    grid = [[ps.lsym(r, c) for c in cols] for r in range(1, ps.n + 1)]
    return m, grid


def tpart_system(ps):
    """The triangular part as a ColumnSystem with n L rows and bound n"""
    start = ps.tpart_start
    return ColumnSystem(ps.ctx, ps.m_array[:, start:],
                        supports=[ps.supports[c] >> 1
                                  for c in range(start, ps.ell)],
                        slots=ps.slots[start:], nslots=ps.nslots,
                        l_rows=ps.n, bound=ps.n,
                        labels=ps.labels[start:])


def symbolic_product_entry(row, sel, kvec, d):
    """Sum over the selected columns of row[c] * kvec, as d + 2
    coefficients (constant, w_0 .. w_d)"""
    sel = list(sel)
    if len(sel) != len(kvec):
        raise CandidateError("kernel vector of length %d for %d columns"
                             % (len(kvec), len(sel)))
    slots = [0] * (d + 2)
    for c, x in zip(sel, kvec):
        s = row[c].slot
        if s is not None:
            slots[s] ^= x
    return slots
