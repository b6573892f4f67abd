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
import os
import re
from collections import Counter
from functools import lru_cache

from .errors import FieldSizeError, ParameterError, ParseError
from .probes import ALG4, ALG5, normalize_scheme
from .structures import CauchySpec, construct_precond41, \
    construct_precond51

logger = logging.getLogger(__name__)

DATA_DIR = os.path.join(os.path.dirname(os.path.realpath(__file__)), "data")

POLY_FILES = {ALG4: "polys41.txt", ALG5: "polys51.txt"}

# (degree, number of terms) -> number of polynomials
POLY_PROFILES = {
    ALG4: {(2, 6): 9, (3, 6): 9, (3, 12): 3},
    ALG5: {(3, 12): 12},
}

EXPLICIT_POINTS = {
    ALG4: ((0x1, 0x3, 0x5), (0x6, 0x4, 0xa)),
    ALG5: ((0x1, 0x2, 0x5, 0x6), (0x4, 0x7, 0xf)),
}
EXPLICIT_MIN_DEGREE = 4

_TERM = re.compile(r"\s*([+-]?)\s*([^+-]+)")
_VARIABLE = re.compile(r"^[xy][1-9]$")


def parse_polynomial(text):
    """Parses 'x1*x2 - y1*y3 + ...' into [(coefficient, variables)]"""
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial")
    terms = []
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError("cannot parse polynomial near %r" % text[pos:])
        sign = -1 if m.group(1) == "-" else 1
        coeff = sign
        variables = []
        for factor in m.group(2).strip().split("*"):
            factor = factor.strip()
            if factor.isdigit():
                coeff *= int(factor)
            elif _VARIABLE.match(factor):
                variables.append(factor)
            else:
                raise ParseError("bad factor %r" % factor)
        terms.append((coeff, tuple(sorted(variables))))
        pos = m.end()
    return terms


class PolySystem(object):
    """A fixed list of integer polynomials in x_i, y_j that must all be
    nonzero over F_2^k for the matching construction to be safe"""

    def __init__(self, scheme, polynomials):
        self.scheme = normalize_scheme(scheme)
        self.polynomials = polynomials
        self.nx = 3 if self.scheme == ALG4 else 4
        self.ny = 3

    def __repr__(self):
        return "PolySystem(%s, %d polynomials)" % (self.scheme,
                                                   len(self.polynomials))

    def __len__(self):
        return len(self.polynomials)

    def profile(self):
        """{(degree, term count): number of polynomials}"""
        return dict(Counter((max(len(v) for _, v in p), len(p))
                            for p in self.polynomials))

    def check_profile(self):
        expected = POLY_PROFILES[self.scheme]
        if self.profile() != expected:
            raise ParseError("%s polynomial list has profile %r, expected %r"
                             % (self.scheme, self.profile(), expected))

    @classmethod
    def from_text(cls, scheme, text):
        polys = [parse_polynomial(line) for line in text.splitlines()
                 if line.strip() and not line.lstrip().startswith("#")]
        return cls(scheme, polys)


@lru_cache(maxsize=None)
def load_poly_system(scheme):
    scheme = normalize_scheme(scheme)
    with open(os.path.join(DATA_DIR, POLY_FILES[scheme])) as f:
        system = PolySystem.from_text(scheme, f.read())
    system.check_profile()
    return system


def _assignment(system, ctx, xs, ys):
    xs, ys = list(xs), list(ys)
    if len(xs) != system.nx or len(ys) != system.ny:
        raise ParameterError("%s needs %d xs and %d ys"
                             % (system.scheme, system.nx, system.ny))
    values = xs + ys
    if any(not ctx.contains(v) for v in values):
        raise ParameterError("assignment outside F_2^%d" % ctx.k)
    if len(set(values)) != len(values):
        raise ParameterError("xs and ys must be pairwise distinct")
    if 0 in values:
        raise ParameterError("%s parameters must be nonzero" % system.scheme)
    env = dict(("x%d" % (i + 1), x) for i, x in enumerate(xs))
    env.update(("y%d" % (i + 1), y) for i, y in enumerate(ys))
    return env


def poly_values(system, ctx, xs, ys):
    """Value of every polynomial, coefficients reduced mod 2"""
    env = _assignment(system, ctx, xs, ys)
    values = []
    for poly in system.polynomials:
        total = 0
        for coeff, variables in poly:
            if coeff % 2 == 0:
                continue
            term = 1
            for v in variables:
                term = ctx.mul(term, env[v])
            total ^= term
        values.append(total)
    return values


def eval_poly_system(system, ctx, xs, ys):
    return all(poly_values(system, ctx, xs, ys))


def construct_from_point(scheme, ctx, xs, ys):
    if normalize_scheme(scheme) == ALG4:
        return construct_precond41(ctx, CauchySpec(xs, ys))
    return construct_precond51(ctx, CauchySpec(xs, ys))


def explicit_construct(scheme, ctx):
    """Order-3 candidate from the fixed point that works for every
    F_2^k with k >= 4"""
    scheme = normalize_scheme(scheme)
    if ctx.k < EXPLICIT_MIN_DEGREE:
        raise FieldSizeError("the explicit %s point needs k >= %d, got %d"
                             % (scheme, EXPLICIT_MIN_DEGREE, ctx.k))
    xs, ys = EXPLICIT_POINTS[scheme]
    logger.debug("explicit %s point over %r", scheme, ctx)
    return construct_from_point(scheme, ctx, xs, ys)
