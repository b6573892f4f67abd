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

"""Reference evaluation of the two multiplication gadgets.

Share values may be plain field elements or numpy arrays of them, in
which case every input combination is evaluated in one pass.
"""

import numpy as np

from .errors import CandidateError, DimensionError
from .probes import ALG4, ALG5


class SharedInput(object):
    """Input shares a_0..a_d, b_0..b_d and the randoms r_1..r_d
    (plus s_1..s_d for alg4), stored 0-based"""

    def __init__(self, a_shares, b_shares, r, s=None):
        self.a = list(a_shares)
        self.b = list(b_shares)
        self.r = list(r)
        self.s = None if s is None else list(s)
        self.d = len(self.a) - 1
        if len(self.b) != self.d + 1 or len(self.r) != self.d or \
                (self.s is not None and len(self.s) != self.d):
            raise DimensionError("share vectors do not match order %d"
                                 % self.d)

    def __repr__(self):
        return "SharedInput(d=%d)" % self.d

    def a_value(self):
        return _xor_all(self.a)

    def b_value(self):
        return _xor_all(self.b)


def _xor_all(values):
    total = 0
    for v in values:
        total = total ^ v
    return total


def _mul(ctx, a, b):
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return ctx.vmul(a, b)
    return ctx.mul(int(a), int(b))


def share(ctx, value, d, rng):
    """Random d+1 sharing of value"""
    shares = [int(x) for x in rng.integers(0, ctx.order, size=d)]
    return [value ^ _xor_all(shares)] + shares


def random_input(ctx, d, rng, scheme=ALG4):
    """Uniformly random shares and randoms for one gadget call"""
    def draw(size):
        return [int(x) for x in rng.integers(0, ctx.order, size=size)]
    return SharedInput(draw(d + 1), draw(d + 1), draw(d),
                       draw(d) if scheme == ALG4 else None)


def _check(g, inp, scheme):
    if g.scheme != scheme:
        raise CandidateError("%s gadget needs a %s candidate, got %s"
                             % (scheme, scheme, g.scheme))
    if g.n != g.d:
        raise CandidateError("gadget needs all %d gamma columns" % g.d)
    if inp.d != g.d:
        raise DimensionError("input of order %d for a gamma of order %d"
                             % (inp.d, g.d))


def eval_alg4_shares(g, inp):
    """Output shares c_0..c_2d of the alg4 gadget.

    With delta = J - A (A being gamma without its ones row):
      c_0     = (a_0 + sum(r_i + a_i)) (b_0 + sum(s_i + b_i))
      c_i     = r_i (b_0 + sum_j (delta_{j,i} s_j + b_j))
      c_{i+d} = s_i (a_0 + sum_j (gamma_{i,j} r_j + a_j))
    """
    _check(g, inp, ALG4)
    if inp.s is None:
        raise DimensionError("alg4 needs the s randoms")
    ctx, d = g.ctx, g.d
    a, b, r, s = inp.a, inp.b, inp.r, inp.s
    gamma = g.gamma

    left = a[0]
    right = b[0]
    for i in range(d):
        left = left ^ r[i] ^ a[i + 1]
        right = right ^ s[i] ^ b[i + 1]
    out = [_mul(ctx, left, right)]

    for i in range(d):
        acc = b[0]
        for j in range(d):
            delta_ji = 1 ^ gamma[j + 1, i]
            acc = acc ^ _mul(ctx, delta_ji, s[j]) ^ b[j + 1]
        out.append(_mul(ctx, r[i], acc))
    for i in range(d):
        acc = a[0]
        for j in range(d):
            acc = acc ^ _mul(ctx, gamma[i + 1, j], r[j]) ^ a[j + 1]
        out.append(_mul(ctx, s[i], acc))
    return out


def eval_alg5_shares(g, inp):
    """Output shares c_i = a_0 b_i + sum_j (gamma_{i,j} r_j + a_j b_i)"""
    _check(g, inp, ALG5)
    ctx, d = g.ctx, g.d
    a, b, r = inp.a, inp.b, inp.r
    out = []
    for i in range(d + 1):
        acc = _mul(ctx, a[0], b[i])
        for j in range(d):
            acc = acc ^ _mul(ctx, g.gamma[i, j], r[j]) \
                ^ _mul(ctx, a[j + 1], b[i])
        out.append(acc)
    return out


def eval_shares(g, inp):
    if g.scheme == ALG4:
        return eval_alg4_shares(g, inp)
    return eval_alg5_shares(g, inp)


def identity_holds(g, inp):
    """True (or a boolean array) where sum(c) == a * b"""
    ctx = g.ctx
    lhs = _xor_all(eval_shares(g, inp))
    rhs = _mul(ctx, inp.a_value(), inp.b_value())
    return lhs == rhs


def exhaustive_inputs(ctx, d, scheme):
    """Every possible gadget input over ctx at once, as numpy arrays"""
    nvars = 2 * (d + 1) + (2 * d if scheme == ALG4 else d)
    total = ctx.order ** nvars
    if total > 1 << 24:
        raise DimensionError("%d inputs are too many to enumerate" % total)
    idx = np.arange(total, dtype=np.int64)
    digits = [(idx >> (ctx.k * t)) & (ctx.order - 1) for t in range(nvars)]
    a = digits[:d + 1]
    b = digits[d + 1:2 * d + 2]
    r = digits[2 * d + 2:3 * d + 2]
    s = digits[3 * d + 2:] if scheme == ALG4 else None
    return SharedInput(a, b, r, s)


def count_identity_failures(g, inp):
    ok = identity_holds(g, inp)
    if isinstance(ok, np.ndarray):
        return int(np.count_nonzero(~ok))
    return 0 if ok else 1
