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

import pickle
import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from maskmat.errors import FieldError
from maskmat.field import DEFAULT_POLYNOMIALS, FieldCtx, ctx_new, \
    is_irreducible, schoolbook_mul


def elements(k):
    return st.integers(min_value=0, max_value=(1 << k) - 1)


class TestFieldCtx(unittest.TestCase):
    def test_default_polynomials(self):
        self.assertEqual(0x11b, ctx_new(8).ipoly)
        self.assertEqual(0x13, ctx_new(4).ipoly)
        for k, poly in DEFAULT_POLYNOMIALS.items():
            self.assertEqual(k, poly.bit_length() - 1)
            self.assertTrue(is_irreducible(poly), "k=%d" % k)

    def test_prime_field(self):
        ctx = ctx_new(1)
        self.assertEqual(0x2, ctx.ipoly)
        self.assertEqual(2, ctx.order)
        self.assertEqual(2, len(ctx.log_table))
        self.assertEqual(1, ctx.mul(1, 1))
        self.assertEqual(1, ctx.inv(1))
        self.assertEqual(0, ctx.add(1, 1))

    def test_custom_polynomial(self):
        ctx = FieldCtx(4, 0x13)
        self.assertEqual(ctx_new(4), ctx)
        with self.assertLogs("maskmat.field", level="WARNING"):
            other = FieldCtx(4, 0x19)
        self.assertEqual(0x19, other.ipoly)

    def test_bad_polynomials(self):
        with self.assertRaises(FieldError):
            FieldCtx(4, 0x15)       # (X^2 + X + 1)^2
        with self.assertRaises(FieldError):
            FieldCtx(4, 0x7)
        with self.assertRaises(FieldError):
            FieldCtx(0)
        with self.assertRaises(FieldError):
            FieldCtx(17)

    def test_arithmetic_examples(self):
        f16 = ctx_new(4)
        self.assertEqual(0x5, f16.add(0x6, 0x3))
        self.assertEqual(0x1, f16.mul(0x2, 0x9))
        self.assertEqual(0x9, f16.inv(0x2))
        self.assertEqual(2, ctx_new(2).inv(3))
        for k in range(1, 17):
            self.assertEqual(1, ctx_new(k).inv(1))

    def test_inverse_of_zero(self):
        with self.assertRaises(FieldError):
            ctx_new(8).inv(0)
        with self.assertRaises(FieldError):
            ctx_new(8).div(5, 0)

    def test_generator_spans_group(self):
        for k in (2, 3, 5, 8):
            ctx = ctx_new(k)
            self.assertEqual(sorted(ctx.nonzero_elements()),
                             sorted(set(ctx.exp_table[:ctx.order - 1])))

    def test_parse_and_format(self):
        ctx = ctx_new(8)
        self.assertEqual(0xe3, ctx.parse("E3"))
        self.assertEqual(0xe3, ctx.parse(" 0xe3 "))
        self.assertEqual("e3", ctx.format(0xe3))
        with self.assertRaises(FieldError):
            ctx_new(3).parse("8")

    def test_shared_and_picklable(self):
        self.assertIs(ctx_new(8), ctx_new(8))
        self.assertEqual(ctx_new(8), pickle.loads(pickle.dumps(ctx_new(8))))

    def test_vmul_matches_mul(self):
        ctx = ctx_new(5)
        a = np.repeat(np.arange(ctx.order), ctx.order)
        b = np.tile(np.arange(ctx.order), ctx.order)
        expected = [ctx.mul(int(x), int(y)) for x, y in zip(a, b)]
        self.assertEqual(expected, list(ctx.vmul(a, b)))


class TestFieldProperties(unittest.TestCase):
    @given(st.integers(min_value=1, max_value=16).flatmap(
        lambda k: st.tuples(st.just(k), elements(k), elements(k),
                            elements(k))))
    @settings(max_examples=300, deadline=None)
    def test_field_axioms(self, args):
        k, a, b, c = args
        ctx = ctx_new(k)
        self.assertEqual(ctx.mul(a, b), ctx.mul(b, a))
        self.assertEqual(ctx.mul(a, ctx.add(b, c)),
                         ctx.add(ctx.mul(a, b), ctx.mul(a, c)))
        self.assertEqual(ctx.mul(ctx.mul(a, b), c),
                         ctx.mul(a, ctx.mul(b, c)))
        self.assertEqual(schoolbook_mul(a, b, ctx.ipoly), ctx.mul(a, b))
        if a:
            self.assertEqual(1, ctx.mul(a, ctx.inv(a)))
