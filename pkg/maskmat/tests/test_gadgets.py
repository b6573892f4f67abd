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

import numpy as np

from maskmat.catalog import find_entry
from maskmat.errors import CandidateError, DimensionError
from maskmat.field import ctx_new
from maskmat.gadgets import SharedInput, count_identity_failures, \
    eval_alg4_shares, eval_alg5_shares, exhaustive_inputs, \
    identity_holds, random_input, share
from maskmat.linalg import Mat
from maskmat.probes import ALG4, ALG5
from maskmat.search import SearchConfig, sample_candidate
from maskmat.utils import derive_rng

from .utils import slow_tests_enabled

RANDOM_TRIALS = 10000 if slow_tests_enabled() else 1000


class TestSharedInput(unittest.TestCase):
    def test_lengths(self):
        with self.assertRaises(DimensionError):
            SharedInput([1, 2, 3], [1, 2], [0, 0])
        with self.assertRaises(DimensionError):
            SharedInput([1, 2, 3], [1, 2, 3], [0, 0], s=[1])
        inp = SharedInput([1, 2, 3], [4, 5, 6], [0, 0])
        self.assertEqual(2, inp.d)
        self.assertEqual(0, inp.a_value())
        self.assertEqual(7, inp.b_value())

    def test_share(self):
        ctx = ctx_new(8)
        shares = share(ctx, 0x57, 4, derive_rng(1, 0))
        self.assertEqual(5, len(shares))
        self.assertEqual(0x57, ctx.sum(shares))


class TestAlg4Gadget(unittest.TestCase):
    def setUp(self):
        self.g = find_entry(ALG4, 3, 8).candidate()
        self.ctx = self.g.ctx

    def test_degenerate_sharing(self):
        inp = SharedInput([0x12, 0x34, 0x56, 0x78], [0x9a, 0, 0, 0],
                          [0, 0, 0], [0, 0, 0])
        out = eval_alg4_shares(self.g, inp)
        self.assertEqual(7, len(out))
        self.assertEqual(self.ctx.mul(inp.a_value(), 0x9a),
                         self.ctx.sum(out))

    def test_zero_sharing(self):
        rng = derive_rng(2, 0)
        a = share(self.ctx, 0, 3, rng)
        inp = SharedInput(a, share(self.ctx, 0xc3, 3, rng), [1, 2, 3],
                          [4, 5, 6])
        self.assertEqual(0, self.ctx.sum(eval_alg4_shares(self.g, inp)))

    def test_random_inputs(self):
        for d in (3, 4):
            g = find_entry(ALG4, d, 8).candidate()
            rng = derive_rng(3, d)
            failures = sum(count_identity_failures(
                g, random_input(g.ctx, d, rng, ALG4))
                for _ in range(RANDOM_TRIALS))
            self.assertEqual(0, failures)

    def test_needs_s_randoms(self):
        inp = SharedInput([1, 2, 3, 4], [1, 2, 3, 4], [1, 2, 3])
        with self.assertRaises(DimensionError):
            eval_alg4_shares(self.g, inp)

    def test_wrong_scheme(self):
        g5 = find_entry(ALG5, 3, 8).candidate()
        inp = random_input(self.ctx, 3, derive_rng(0, 0), ALG4)
        with self.assertRaises(CandidateError):
            eval_alg4_shares(g5, inp)
        with self.assertRaises(DimensionError):
            eval_alg4_shares(self.g, random_input(self.ctx, 2,
                                                  derive_rng(0, 0), ALG4))


class TestAlg5Gadget(unittest.TestCase):
    def setUp(self):
        self.g = find_entry(ALG5, 4, 8).candidate()
        self.ctx = self.g.ctx

    def test_zero_randoms(self):
        a = [0x11, 0x22, 0x33, 0x44, 0x55]
        b = [0x66, 0x77, 0x88, 0x99, 0xaa]
        out = eval_alg5_shares(self.g, SharedInput(a, b, [0] * 4))
        total_a = self.ctx.sum(a)
        self.assertEqual([self.ctx.mul(x, total_a) for x in b], out)

    def test_random_inputs(self):
        for d in (3, 4):
            g = find_entry(ALG5, d, 8).candidate()
            rng = derive_rng(4, d)
            failures = sum(count_identity_failures(
                g, random_input(g.ctx, d, rng, ALG5))
                for _ in range(RANDOM_TRIALS))
            self.assertEqual(0, failures)

    def test_perturbed_gamma_fails(self):
        g = find_entry(ALG5, 4, 8).candidate()
        rows = g.gamma.to_rows()
        rows[2][1] ^= 1
        g.gamma = Mat.from_rows(g.ctx, rows)
        rng = derive_rng(5, 0)
        self.assertTrue(any(not identity_holds(
            g, random_input(g.ctx, 4, rng, ALG5)) for _ in range(50)))


class TestExhaustive(unittest.TestCase):
    def test_order_two_over_f4(self):
        ctx = ctx_new(2)
        for scheme in (ALG4, ALG5):
            cfg = SearchConfig(scheme, ctx, 2, sampler="uniform", samples=3)
            for index in range(3):
                g = sample_candidate(cfg, index)
                inputs = exhaustive_inputs(ctx, 2, scheme)
                self.assertEqual(0, count_identity_failures(g, inputs))

    def test_input_count(self):
        inputs = exhaustive_inputs(ctx_new(2), 2, ALG5)
        self.assertEqual(4 ** 8, len(inputs.a[0]))
        self.assertIsInstance(inputs.r[0], np.ndarray)
        with self.assertRaises(DimensionError):
            exhaustive_inputs(ctx_new(8), 3, ALG4)
