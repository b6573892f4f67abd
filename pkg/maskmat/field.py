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
from functools import lru_cache

import numpy as np

from .errors import FieldError
from .utils import parse_hex, format_hex

logger = logging.getLogger(__name__)

MIN_DEGREE = 1
MAX_DEGREE = 16

# Irreducible polynomials, bit i = coefficient of X^i
DEFAULT_POLYNOMIALS = {
    1: 0x2,         # X
    2: 0x7,         # X^2 + X + 1
    3: 0xb,         # X^3 + X + 1
    4: 0x13,        # X^4 + X + 1
    5: 0x25,        # X^5 + X^2 + 1
    6: 0x43,        # X^6 + X + 1
    7: 0x83,        # X^7 + X + 1
    8: 0x11b,       # X^8 + X^4 + X^3 + X + 1
    9: 0x203,       # X^9 + X + 1
    10: 0x409,      # X^10 + X^3 + 1
    11: 0x805,      # X^11 + X^2 + 1
    12: 0x1009,     # X^12 + X^3 + 1
    13: 0x201b,     # X^13 + X^4 + X^3 + X + 1
    14: 0x4021,     # X^14 + X^5 + 1
    15: 0x8003,     # X^15 + X + 1
    16: 0x1002b,    # X^16 + X^5 + X^3 + X + 1
}


def poly_degree(poly):
    return poly.bit_length() - 1


def poly_mod(a, b):
    """Remainder of a by b as polynomials over F_2"""
    db = poly_degree(b)
    while a and poly_degree(a) >= db:
        a ^= b << (poly_degree(a) - db)
    return a


def carryless_mul(a, b):
    result = 0
    while b:
        if b & 1:
            result ^= a
        a <<= 1
        b >>= 1
    return result


def schoolbook_mul(a, b, ipoly):
    """Carry-less product of a and b reduced modulo ipoly"""
    return poly_mod(carryless_mul(a, b), ipoly)


def is_irreducible(poly):
    """Trial division by every polynomial of degree 1 .. deg/2"""
    degree = poly_degree(poly)
    if degree < 1:
        return False
    for divisor in range(2, 1 << (degree // 2 + 1)):
        if poly_mod(poly, divisor) == 0:
            return False
    return True


class FieldCtx(object):
    """The binary field F_{2^k} = F_2[X]/<ipoly>, with log/exp tables.

    Elements are plain integers in [0, 2^k), bit i being the coefficient
    of X^i. A context is immutable once built and can be shared freely
    between workers.
    """

    def __init__(self, k, ipoly=None):
        if not MIN_DEGREE <= k <= MAX_DEGREE:
            raise FieldError("extension degree must be in [%d, %d], got %r"
                             % (MIN_DEGREE, MAX_DEGREE, k))
        if ipoly is None:
            ipoly = DEFAULT_POLYNOMIALS[k]
        if poly_degree(ipoly) != k:
            raise FieldError("polynomial %#x does not have degree %d"
                             % (ipoly, k))
        if not is_irreducible(ipoly):
            raise FieldError("polynomial %#x is reducible" % ipoly)
        if ipoly != DEFAULT_POLYNOMIALS[k]:
            logger.warning("using non-default polynomial %#x for k=%d",
                           ipoly, k)

        self.k = k
        self.ipoly = ipoly
        self.order = 1 << k
        self._build_tables()
        logger.debug("built %r with generator %#x", self, self.generator)

    def __repr__(self):
        return "FieldCtx(k=%d, ipoly=%#x)" % (self.k, self.ipoly)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and \
            (self.k, self.ipoly) == (other.k, other.ipoly)

    def __hash__(self):
        return hash((self.k, self.ipoly))

    def __reduce__(self):
        return (ctx_new, (self.k, self.ipoly))

    def _build_tables(self):
        q1 = self.order - 1
        for g in range(1 if q1 == 1 else 2, self.order):
            powers = [1]
            x = 1
            for _ in range(q1 - 1):
                x = schoolbook_mul(x, g, self.ipoly)
                if x == 1:
                    break
                powers.append(x)
            if len(powers) == q1:
                break
        else:
            raise FieldError("no generator found for %#x" % self.ipoly)

        self.generator = g
        log = [0] * self.order
        for i, x in enumerate(powers):
            log[x] = i
        # doubled so that log[a] + log[b] never needs a reduction
        self._exp = powers + powers
        self._log = log
        self.exp_table = np.array(self._exp, dtype=np.int64)
        self.log_table = np.array(self._log, dtype=np.int64)

    @property
    def q(self):
        return self.order

    def contains(self, a):
        return isinstance(a, (int, np.integer)) and 0 <= a < self.order

    def elements(self):
        return range(self.order)

    def nonzero_elements(self):
        return range(1, self.order)

    def add(self, a, b):
        assert self.contains(a) and self.contains(b)
        return a ^ b

    sub = add

    def neg(self, a):
        return a

    def mul(self, a, b):
        assert self.contains(a) and self.contains(b)
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise FieldError("zero has no inverse")
        assert self.contains(a)
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def vmul(self, a, b):
        """Elementwise product of numpy arrays (or an array and a
        scalar)"""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        prod = self.exp_table[self.log_table[a] + self.log_table[b]]
        return np.where((a != 0) & (b != 0), prod, 0)

    def sum(self, values):
        total = 0
        for v in values:
            total ^= v
        return total

    def parse(self, token):
        value = parse_hex(token)
        if value >= self.order:
            raise FieldError("%s is not an element of F_2^%d"
                             % (token.strip(), self.k))
        return value

    def format(self, a):
        assert self.contains(a)
        return format_hex(a)


@lru_cache(maxsize=None)
def ctx_new(k, ipoly=None):
    """Returns the (shared) context for F_{2^k}; ipoly defaults to the
    standard polynomial for k"""
    return FieldCtx(k, ipoly)
