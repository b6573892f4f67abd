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

import re
from math import comb

import numpy as np

from .errors import ParseError

_HEX_TOKEN = re.compile(r"^[0-9a-fA-F]+$")


def parse_hex(token):
    """Parses one field element written in hexadecimal notation.
    Surrounding whitespace is ignored, as is an optional 0x prefix."""
    token = token.strip()
    if token[:2].lower() == "0x":
        token = token[2:]
    if not _HEX_TOKEN.match(token):
        raise ParseError("not a hexadecimal element: %r" % token)
    return int(token, 16)


def format_hex(value):
    """Lowercase hexadecimal, no prefix"""
    return "%x" % value


def parse_hex_list(text):
    """Parses '1,3,5' or '1 3 5' into a list of integers"""
    tokens = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    if not tokens:
        raise ParseError("empty element list")
    return [parse_hex(t) for t in tokens]


def binomial(n, k):
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def derive_rng(seed, index):
    """Independent generator for candidate `index` of a run seeded with
    `seed`; the stream does not depend on which worker asks for it."""
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def quantiles(values, points=(0.5, 0.9, 0.99)):
    """Returns {point: value} for a non-empty sequence"""
    assert len(values) > 0
    arr = np.asarray(values, dtype=float)
    return dict((p, float(np.quantile(arr, p))) for p in points)
