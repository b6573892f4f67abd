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

import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from maskmat.errors import DimensionError, ParameterError
from maskmat.field import ctx_new
from maskmat.linalg import Mat, left_kernel_basis, mat_sub_from_ones
from maskmat.probes import ALG4, GammaCandidate
from maskmat.structures import CauchySpec, cauchy_matrix, \
    check_precondition, construct_precond41, construct_precond51, \
    is_mds_all_submatrices, is_row_xmds

from .utils import load_gamma


class TestMDS(unittest.TestCase):
    def test_identity_is_not_mds(self):
        self.assertFalse(is_mds_all_submatrices(Mat.identity(ctx_new(4), 2)))

    def test_cauchy_is_mds(self):
        ctx = ctx_new(4)
        c = cauchy_matrix(ctx, CauchySpec([1, 2], [3, 4]))
        self.assertTrue(is_mds_all_submatrices(c))
        c = cauchy_matrix(ctx, CauchySpec([1, 2, 5], [3, 4, 6, 7]))
        self.assertTrue(is_mds_all_submatrices(c))

    def test_singular_leading_block(self):
        m = Mat.from_rows(ctx_new(3), [[4, 2, 6], [4, 2, 3], [4, 2, 3]])
        self.assertFalse(is_mds_all_submatrices(m))

    def test_row_xmds(self):
        ctx = ctx_new(4)
        self.assertFalse(is_row_xmds(Mat.from_rows(ctx, [[1]])))
        self.assertFalse(is_row_xmds(Mat.from_rows(ctx, [[0, 2], [3, 4]])))
        g = construct_precond41(ctx, CauchySpec([1, 3, 5], [6, 4, 0xa]))
        self.assertTrue(is_row_xmds(g.a_part()))
        self.assertTrue(is_row_xmds(mat_sub_from_ones(g.a_part())))
        with self.assertRaises(DimensionError):
            is_row_xmds(Mat.ones(ctx, 2, 3))


class TestCauchySpec(unittest.TestCase):
    def test_validation(self):
        ctx = ctx_new(4)
        with self.assertRaises(ParameterError):
            CauchySpec([1, 2], [2]).validate(ctx)
        with self.assertRaises(ParameterError):
            CauchySpec([0, 2], [3]).validate(ctx, nonzero=True)
        with self.assertRaises(ParameterError):
            CauchySpec([1, 16], [3]).validate(ctx)
        with self.assertRaises(ParameterError):
            CauchySpec([1, 2], [3], row_scale=[1]).validate(ctx)
        with self.assertRaises(ParameterError):
            CauchySpec([1, 2], [3], col_scale=[0]).validate(ctx)
        with self.assertRaises(ParameterError):
            CauchySpec([], [3]).validate(ctx)


class TestConstructions(unittest.TestCase):
    def test_precond41_single_column(self):
        g = construct_precond41(ctx_new(2), CauchySpec([1], [2]))
        self.assertEqual([[1], [2]], g.gamma.to_rows())
        self.assertEqual(ALG4, g.scheme)

    def test_precond41_rejects_zero(self):
        with self.assertRaises(ParameterError):
            construct_precond41(ctx_new(4), CauchySpec([0, 1, 2], [3, 4, 5]))
        with self.assertRaises(ParameterError):
            construct_precond41(ctx_new(4), CauchySpec([1, 2], [3, 4, 5]))

    def test_precond41_fewer_columns(self):
        g = construct_precond41(ctx_new(4), CauchySpec([1, 3, 5], [6, 4]))
        self.assertEqual((3, 3, 2), (g.d, g.gamma.rows, g.n))
        self.assertTrue(check_precondition(g))

    def test_precond51(self):
        g = construct_precond51(ctx_new(2), CauchySpec([0, 1], [2]))
        self.assertEqual(0, g.ctx.sum(g.gamma.col(0)))
        self.assertTrue(all(g.gamma.data))
        g = construct_precond51(ctx_new(4), CauchySpec([1, 2, 5, 6],
                                                       [4, 7, 0xf]))
        for j in range(3):
            self.assertEqual(0, g.ctx.sum(g.gamma.col(j)))
        self.assertEqual(0xb, g.gamma[0, 0])
        self.assertTrue(check_precondition(g))

    def test_precond51_row_scale(self):
        ctx = ctx_new(4)
        spec = CauchySpec([1, 2, 5], [4, 7])
        g = construct_precond51(ctx, spec)
        a = cauchy_matrix(ctx, CauchySpec([1, 2, 5], [4, 7]))
        c = [ctx.div(g.gamma[i, 0], a[i, 0]) for i in range(3)]
        scaled = [ctx.mul(3, x) for x in c]
        g2 = construct_precond51(ctx, CauchySpec([1, 2, 5], [4, 7],
                                                 row_scale=scaled))
        self.assertEqual([[ctx.mul(3, x) for x in r]
                          for r in g.gamma.to_rows()], g2.gamma.to_rows())
        with self.assertRaises(ParameterError):
            construct_precond51(ctx, CauchySpec([1, 2, 5], [4, 7],
                                                row_scale=[1, 1, 1]))

    def test_precond51_shape(self):
        with self.assertRaises(ParameterError):
            construct_precond51(ctx_new(4), CauchySpec([1, 2], [4, 7]))


class TestPrecondition(unittest.TestCase):
    def test_constructions_pass(self):
        ctx = ctx_new(5)
        self.assertTrue(check_precondition(construct_precond41(
            ctx, CauchySpec([1, 3, 5, 7], [2, 4, 6, 8]))))
        self.assertTrue(check_precondition(construct_precond51(
            ctx, CauchySpec([1, 3, 5, 7, 9], [2, 4, 6, 8]))))

    def test_singular_example_fails(self):
        g = load_gamma(ALG4, 3, "alg4_singular_k3.txt")
        self.assertFalse(check_precondition(g))

    def test_all_ones_fails(self):
        g = GammaCandidate(ALG4, Mat.ones(ctx_new(4), 3, 2))
        self.assertFalse(check_precondition(g))


def distinct_values(k, size, low=0):
    return st.lists(st.integers(low, (1 << k) - 1), min_size=size,
                    max_size=size, unique=True)


def cauchy_specs(k):
    nonzero = st.integers(1, (1 << k) - 1)
    return st.tuples(st.integers(1, 3), st.integers(1, 3)).flatmap(
        lambda rc: st.tuples(
            distinct_values(k, rc[0] + rc[1]),
            st.lists(nonzero, min_size=rc[0], max_size=rc[0]),
            st.lists(nonzero, min_size=rc[1], max_size=rc[1])).map(
                lambda t: CauchySpec(t[0][:rc[0]], t[0][rc[0]:],
                                     row_scale=t[1], col_scale=t[2])))


class TestStructureProperties(unittest.TestCase):
    @given(cauchy_specs(4))
    @settings(max_examples=150, deadline=None)
    def test_generalized_cauchy_is_mds(self, spec):
        self.assertTrue(is_mds_all_submatrices(cauchy_matrix(ctx_new(4),
                                                             spec)))

    @given(st.integers(1, 3).flatmap(
        lambda n: st.lists(st.integers(1, 3), min_size=n * n,
                           max_size=n * n).map(lambda xs: (n, xs))))
    @settings(max_examples=300, deadline=None)
    def test_row_xmds_implies_mds(self, args):
        n, data = args
        ctx = ctx_new(2)
        m = Mat.from_rows(ctx, [data[i * n:(i + 1) * n] for i in range(n)])
        if is_row_xmds(m):
            self.assertTrue(is_mds_all_submatrices(m))

    @given(st.integers(1, 4).flatmap(
        lambda d: distinct_values(4, 2 * d, low=1).map(
            lambda vs: (vs[:d], vs[d:]))))
    @settings(max_examples=60, deadline=None)
    def test_precond41_constructions(self, params):
        xs, ys = params
        g = construct_precond41(ctx_new(4), CauchySpec(xs, ys))
        self.assertTrue(check_precondition(g))
        self.assertTrue(is_row_xmds(g.a_part()))
        self.assertTrue(is_mds_all_submatrices(g.a_part()))

    @given(st.integers(1, 4).flatmap(
        lambda d: distinct_values(4, 2 * d + 1).map(
            lambda vs: (vs[:d + 1], vs[d + 1:]))))
    @settings(max_examples=60, deadline=None)
    def test_precond51_constructions(self, params):
        xs, ys = params
        ctx = ctx_new(4)
        g = construct_precond51(ctx, CauchySpec(xs, ys))
        self.assertTrue(check_precondition(g))
        kernel = left_kernel_basis(cauchy_matrix(ctx, CauchySpec(xs, ys)))
        self.assertEqual(1, kernel.rows)
        self.assertTrue(all(kernel.row(0)))
        self.assertTrue(all(g.gamma.data))
