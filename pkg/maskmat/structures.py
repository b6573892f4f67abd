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

import logging
from itertools import combinations

from .errors import DimensionError, ParameterError
from .linalg import Mat, is_invertible, left_kernel_basis, \
    mat_sub_from_ones
from .probes import ALG4, ALG5, GammaCandidate

logger = logging.getLogger(__name__)


class CauchySpec(object):
    """Parameters of a generalized Cauchy matrix
    c_i d_j / (x_i - y_j)"""

    def __init__(self, xs, ys, row_scale=None, col_scale=None):
        self.xs = list(xs)
        self.ys = list(ys)
        self.row_scale = None if row_scale is None else list(row_scale)
        self.col_scale = None if col_scale is None else list(col_scale)

    def __repr__(self):
        return "CauchySpec(xs=%r, ys=%r)" % (self.xs, self.ys)

    def validate(self, ctx, nonzero=False):
        values = self.xs + self.ys
        if not self.xs or not self.ys:
            raise ParameterError("need at least one x and one y")
        if any(not ctx.contains(v) for v in values):
            raise ParameterError("parameters outside F_2^%d" % ctx.k)
        if len(set(values)) != len(values):
            raise ParameterError("xs and ys must be pairwise distinct")
        if nonzero and 0 in values:
            raise ParameterError("xs and ys must be nonzero")
        for name, scale, size in (("row", self.row_scale, len(self.xs)),
                                  ("column", self.col_scale, len(self.ys))):
            if scale is None:
                continue
            if len(scale) != size:
                raise ParameterError("%s scaling needs %d entries, got %d"
                                     % (name, size, len(scale)))
            if 0 in scale or any(not ctx.contains(v) for v in scale):
                raise ParameterError("%s scaling must be nonzero" % name)


def cauchy_matrix(ctx, spec):
    spec.validate(ctx)
    rs = spec.row_scale or [1] * len(spec.xs)
    cs = spec.col_scale or [1] * len(spec.ys)
    return Mat.from_rows(ctx, [[ctx.mul(ctx.mul(rs[i], cs[j]),
                                        ctx.inv(ctx.sub(x, y)))
                                for j, y in enumerate(spec.ys)]
                               for i, x in enumerate(spec.xs)])


def is_mds_all_submatrices(m):
    """True when every square submatrix of m is invertible"""
    if any(x == 0 for x in m.data):
        return False
    for size in range(2, min(m.rows, m.cols) + 1):
        for rows in combinations(range(m.rows), size):
            for cols in combinations(range(m.cols), size):
                if not is_invertible(m.submatrix(rows, cols)):
                    return False
    return True


def _row_extended_mds(m):
    return is_mds_all_submatrices(Mat.ones(m.ctx, 1, m.cols).vstack(m))


def is_row_xmds(m):
    if m.rows != m.cols:
        raise DimensionError("row XMDS is defined for square matrices, "
                             "got %dx%d" % m.shape)
    return _row_extended_mds(m)


def construct_precond41(ctx, spec):
    """alg4 candidate with A_ij = x_i / (x_i - y_j); A and J - A are then
    both row XMDS. len(ys) may be smaller than len(xs) to get a
    candidate restricted to its first columns."""
    spec.validate(ctx, nonzero=True)
    if len(spec.ys) > len(spec.xs):
        raise ParameterError("at most %d ys for %d xs"
                             % (len(spec.xs), len(spec.xs)))
    a = Mat.from_rows(ctx, [[ctx.div(x, ctx.sub(x, y)) for y in spec.ys]
                            for x in spec.xs])
    return GammaCandidate.from_a_part(a)


def construct_precond51(ctx, spec):
    """alg5 candidate gamma_ij = c_i / (x_i - y_j) with c spanning the
    left kernel of the (d+1) x d Cauchy matrix.

    c is normalized to c_0 = 1 unless spec.row_scale supplies it, in which
    case it has to lie in that kernel.
    """
    if len(spec.xs) != len(spec.ys) + 1:
        raise ParameterError("need d+1 xs for d ys, got %d and %d"
                             % (len(spec.xs), len(spec.ys)))
    plain = CauchySpec(spec.xs, spec.ys)
    a = cauchy_matrix(ctx, plain)
    kernel = left_kernel_basis(a)
    assert kernel.rows == 1, "Cauchy matrix lost rank"
    c = kernel.row(0)
    c = [ctx.div(x, c[0]) for x in c]
    assert all(c), "left kernel vector is not of full weight"

    if spec.row_scale is not None:
        spec.validate(ctx)
        rs = spec.row_scale
        for j in range(a.cols):
            if ctx.sum(ctx.mul(rs[i], a[i, j]) for i in range(a.rows)):
                raise ParameterError("row scaling is not in the left kernel "
                                     "of the Cauchy matrix")
        c = rs
    gamma = cauchy_matrix(ctx, CauchySpec(spec.xs, spec.ys, row_scale=c,
                                          col_scale=spec.col_scale))
    logger.debug("precond51 left kernel vector %r", c)
    return GammaCandidate(ALG5, gamma)


def check_precondition(g):
    """alg4: A and J - A row XMDS. alg5: columns sum to zero and gamma
    is MDS."""
    if g.scheme == ALG4:
        if any(x != 1 for x in g.gamma.row(0)):
            return False
        a = g.a_part()
        return _row_extended_mds(a) and \
            _row_extended_mds(mat_sub_from_ones(a))
    if any(g.ctx.sum(g.gamma.col(j)) for j in range(g.n)):
        return False
    return is_mds_all_submatrices(g.gamma)
