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

import hashlib
import logging
import os
import re

from joblib import Parallel, delayed
from tqdm import tqdm

from .checker import check
from .errors import ParseError
from .field import ctx_new
from .linalg import Mat
from .probes import ALG4, ALG5, GammaCandidate, normalize_scheme

logger = logging.getLogger(__name__)

DATA_DIR = os.path.join(os.path.dirname(os.path.realpath(__file__)), "data")
CATALOG_FILES = {ALG4: "alg4.txt", ALG5: "alg5.txt"}
SCHEMES_ORDER = [ALG4, ALG5]
CHECKSUMS = "SHA256SUMS"

DEFAULT_MAX_D = 4

# smallest field degree with a known safe instantiation, by order
PUBLISHED_MINIMA = {
    ALG4: {2: 3, 3: 3, 4: 5, 5: 10, 6: 15},
    ALG5: {2: 3, 3: 3, 4: 5, 5: 9, 6: 15},
}

_HEADER = re.compile(r"^\[d=(\d+)\s+k=(\d+)\]$")


class CatalogEntry(object):
    """One published instantiation. For alg4 the rows are the d x d
    matrix below the ones row."""

    def __init__(self, scheme, d, k, rows):
        self.scheme = normalize_scheme(scheme)
        self.d = d
        self.k = k
        self.rows = [list(r) for r in rows]

    def __repr__(self):
        return "CatalogEntry(%s)" % self.source

    @property
    def source(self):
        return "%s d=%d F_2^%d" % (self.scheme, self.d, self.k)

    def matrix(self):
        ctx = ctx_new(self.k)
        return Mat.from_rows(ctx, [[ctx.parse(t) for t in r]
                                   for r in self.rows])

    def candidate(self):
        return GammaCandidate.from_matrix(self.scheme, self.matrix(), self.d)

    def to_text(self):
        return "[d=%d k=%d]\n%s\n" % (self.d, self.k, self.matrix().to_text())


def parse_catalog(scheme, text):
    entries = []
    header = None
    rows = []

    def close():
        if header is not None:
            if not rows:
                raise ParseError("catalog block d=%d k=%d is empty" % header)
            entries.append(CatalogEntry(scheme, header[0], header[1], rows))

    for number, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        m = _HEADER.match(line)
        if m:
            close()
            header = (int(m.group(1)), int(m.group(2)))
            rows = []
        elif header is None:
            raise ParseError("line %d: matrix row before any header" % number)
        else:
            rows.append(line.split())
    close()
    return entries


def verify_data_checksums(data_dir=DATA_DIR):
    """Compares every data file with the SHA-256 manifest"""
    names = []
    with open(os.path.join(data_dir, CHECKSUMS)) as f:
        for line in f:
            if not line.strip():
                continue
            digest, name = line.split()
            with open(os.path.join(data_dir, name), "rb") as data:
                actual = hashlib.sha256(data.read()).hexdigest()
            if actual != digest:
                raise ParseError("%s does not match its checksum" % name)
            names.append(name)
    return names


def load_catalog(scheme=None):
    verify_data_checksums()
    schemes = SCHEMES_ORDER if scheme is None else [normalize_scheme(scheme)]
    entries = []
    for s in schemes:
        with open(os.path.join(DATA_DIR, CATALOG_FILES[s])) as f:
            entries.extend(parse_catalog(s, f.read()))
    return entries


def select_entries(entries, scheme=None, d=None, k=None, max_d=None):
    if scheme is not None:
        scheme = normalize_scheme(scheme)
    return [e for e in entries
            if (scheme is None or e.scheme == scheme)
            and (d is None or e.d == d)
            and (k is None or e.k == k)
            and (max_d is None or e.d <= max_d)]


def find_entry(scheme, d, k):
    found = select_entries(load_catalog(scheme), d=d, k=k)
    return found[0] if found else None


def _verify_entry(entry, method):
    return check(entry.candidate(), method=method)


def catalog_verify(scheme=None, d=None, k=None, method="auto",
                   max_d=DEFAULT_MAX_D, workers=1, progress=False):
    """Checks every selected entry; returns [(entry, CheckReport)]"""
    entries = select_entries(load_catalog(), scheme, d, k, max_d)
    reports = Parallel(n_jobs=workers)(
        delayed(_verify_entry)(e, method)
        for e in tqdm(entries, desc="catalog", disable=not progress))
    results = list(zip(entries, reports))
    for entry, report in results:
        if report.safe:
            logger.info("%s: safe (%s)", entry.source, report.method)
        else:
            logger.warning("%s: %s", entry.source, report.verdict)
    return results


def catalog_minima(entries=None):
    """{scheme: {d: smallest k}} over the catalog"""
    if entries is None:
        entries = load_catalog()
    minima = {}
    for e in entries:
        per_scheme = minima.setdefault(e.scheme, {})
        per_scheme[e.d] = min(e.k, per_scheme.get(e.d, e.k))
    return minima


def compare_minima(entries=None):
    """Rows (scheme, d, catalog minimum or None, published minimum)"""
    minima = catalog_minima(entries)
    rows = []
    for scheme in SCHEMES_ORDER:
        for d, published in sorted(PUBLISHED_MINIMA[scheme].items()):
            rows.append((scheme, d, minima.get(scheme, {}).get(d),
                         published))
    return rows
