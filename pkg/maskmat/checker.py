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

import json
import logging
import time
from collections import Counter
from itertools import combinations

import numpy as np

from .config import DEFAULT_ORACLE_BOUND
from .errors import DimensionError, FieldSizeError, WorkBoundError
from .linalg import Mat, is_invertible, kernel_vectors
from .probes import ALG4, DIAG, L_IDENTITY, M_IDENTITY, TRIG, \
    build_probe_system, tpart_system
from .structures import is_mds_all_submatrices
from .utils import binomial

logger = logging.getLogger(__name__)

SAFE = "safe"
UNSAFE = "unsafe"

METHODS = ("auto", "oracle", "subsets", "batch", "safepp", "analytic")

# witness search over combinations of a kernel basis
EXHAUSTIVE_LIMIT = 1 << 18
RANDOM_TRIALS = 512

ORACLE_CHUNK = 1 << 16


class Witness(object):
    """A vector v of low weight with M v = 0 and L v of full weight"""

    def __init__(self, v, product):
        self.v = list(v)
        self.product = product
        self.columns = tuple(c for c, x in enumerate(self.v) if x)

    def __repr__(self):
        return "Witness(columns=%r)" % (self.columns,)

    def to_dict(self, ctx):
        return {
            "columns": [c + 1 for c in self.columns],
            "v": [ctx.format(x) for x in self.v],
            "product": [[ctx.format(x) for x in row]
                        for row in self.product],
        }


class CheckReport(object):
    """Outcome of one safety check. For alg4 both gamma and delta are
    checked and the counters add up over the two."""

    def __init__(self, method, candidate):
        self.method = method
        self.scheme = candidate.scheme
        self.d = candidate.d
        self.n = candidate.n
        self.ctx = candidate.ctx
        self.verdict = SAFE
        self.witness = None
        self.target = None
        self.subsets_total = 0
        self.subsets_skipped = 0
        self.subsets_checked = 0
        self.elapsed = 0.0

    def __repr__(self):
        return "CheckReport(%s, %s, checked=%d)" % (
            self.verdict, self.method, self.subsets_checked)

    @property
    def safe(self):
        return self.verdict == SAFE

    def add_counts(self, total, skipped, checked):
        self.subsets_total += total
        self.subsets_skipped += skipped
        self.subsets_checked += checked

    def fail(self, target, witness):
        self.verdict = UNSAFE
        self.target = target
        self.witness = witness

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "method": self.method,
            "scheme": self.scheme,
            "d": self.d,
            "n": self.n,
            "k": self.ctx.k,
            "subsets_total": self.subsets_total,
            "subsets_skipped": self.subsets_skipped,
            "subsets_checked": self.subsets_checked,
            "elapsed_ms": round(self.elapsed * 1000.0, 3),
            "matrix": self.target,
            "witness": (None if self.witness is None
                        else self.witness.to_dict(self.ctx)),
        }

    def to_json(self):
        return json.dumps(self.to_dict())


class PriorityCache(object):
    """Failure counts of column subsets, per system shape"""

    def __init__(self):
        self.failures = {}

    def record(self, key, cols):
        self.failures.setdefault(key, Counter())[tuple(cols)] += 1

    def ordered(self, key):
        counts = self.failures.get(key)
        if not counts:
            return []
        return sorted(counts, key=lambda cols: (-counts[cols], cols))


class CheckSession(object):
    """State carried across the candidates of one search worker"""

    def __init__(self):
        self.cache = PriorityCache()
        self.candidates = 0

    def __repr__(self):
        return "CheckSession(candidates=%d)" % self.candidates


def _system_key(system):
    return (system.ell, system.bound, system.l_rows)


def priority_order(session, system):
    """Every bound-sized column subset once: previously failing ones
    first, most failures first, then the rest in lexicographic order"""
    first = session.cache.ordered(_system_key(system)) if session else []
    for cols in first:
        yield cols
    seen = set(first)
    for cols in combinations(range(system.ell), system.bound):
        if cols not in seen:
            yield cols


def _targets(g):
    yield "gamma", g
    if g.scheme == ALG4:
        yield "delta", g.complement()


def verify_witness(system, v):
    """Independent re-check: weight, kernel membership and full weight of
    the tagged product"""
    if len(v) != system.ell:
        return False
    cols = [c for c, x in enumerate(v) if x]
    if not cols or len(cols) > system.bound:
        return False
    values = [v[c] for c in cols]
    if any(system.m_times(cols, values)):
        return False
    return system.nonzero_rows(cols, values) == system.full_mask


def _make_witness(system, cols, values):
    v = [0] * system.ell
    for c, x in zip(cols, values):
        v[c] = int(x)
    witness = Witness(v, system.product(cols, values))
    assert verify_witness(system, v), "witness does not re-verify"
    return witness


def _enumerate_weights(q, dim):
    idx = np.arange(1, q ** dim, dtype=np.int64)
    return np.stack([(idx // q ** b) % q for b in range(dim)], axis=1)


def find_witness(system, cols, basis):
    """Searches the span of a kernel basis (vectors over cols) for one
    vector whose tagged product has no zero row. Returns the values on
    cols, or None."""
    ctx = system.ctx
    dim = len(basis)
    coeff = np.zeros((system.l_rows, system.nslots, dim), dtype=np.int64)
    for b, vec in enumerate(basis):
        for idx, c in enumerate(cols):
            x = vec[idx]
            if not x:
                continue
            for r in range(system.l_rows):
                if system.supports[c] >> r & 1:
                    coeff[r, system.slots[c], b] ^= x
    if not coeff.reshape(system.l_rows, -1).any(axis=1).all():
        return None

    q = ctx.order
    exhaustive = q ** dim <= EXHAUSTIVE_LIMIT
    if exhaustive:
        weights = _enumerate_weights(q, dim)
    else:
        rng = np.random.default_rng(np.random.SeedSequence(list(cols)))
        weights = rng.integers(0, q, size=(RANDOM_TRIALS, dim))

    ok = np.ones(len(weights), dtype=bool)
    for r in range(system.l_rows):
        row_nonzero = np.zeros(len(weights), dtype=bool)
        for s in range(system.nslots):
            acc = np.zeros(len(weights), dtype=np.int64)
            for b in range(dim):
                if coeff[r, s, b]:
                    acc ^= ctx.vmul(coeff[r, s, b], weights[:, b])
            row_nonzero |= acc != 0
        ok &= row_nonzero
    hits = np.flatnonzero(ok)
    if len(hits) == 0:
        if not exhaustive:
            logger.warning("no witness among %d random combinations of a "
                           "%d-dimensional kernel over %r", RANDOM_TRIALS,
                           dim, ctx)
        else:
            logger.debug("kernel of %r covers no full-weight product", cols)
        return None
    w = weights[hits[0]]
    values = []
    for idx in range(len(cols)):
        x = 0
        for b in range(dim):
            if w[b] and basis[b][idx]:
                x ^= ctx.mul(int(w[b]), basis[b][idx])
        values.append(x)
    return values


def check_column_subset(system, cols):
    """Kernel-basis test of one column subset, then the exact witness
    search. Returns a Witness or None."""
    cols = list(cols)
    basis = kernel_vectors(system.ctx, system.column_rows(cols), len(cols))
    if not basis:
        return None
    mask = 0
    for vec in basis:
        mask |= system.nonzero_rows(cols, vec)
    if mask != system.full_mask:
        return None
    values = find_witness(system, cols, basis)
    if values is None:
        return None
    return _make_witness(system, cols, values)


def scan_subsets(system, session=None):
    """All bound-sized column subsets whose L support covers every row.
    Returns (witness, failing cols, total, skipped, checked)."""
    total = binomial(system.ell, system.bound)
    skipped = checked = 0
    for cols in priority_order(session, system):
        if system.union_support(cols) != system.full_mask:
            skipped += 1
            continue
        checked += 1
        witness = check_column_subset(system, cols)
        if witness is not None:
            if session is not None:
                session.cache.record(_system_key(system), cols)
            return witness, cols, total, skipped, checked
    return None, None, total, skipped, checked


class _BatchScan(object):
    """Depth-first enumeration of column subsets in increasing order,
    with the row reduction of M updated one column at a time.

    A node holds the reduced matrix E M for its columns S, the pivot
    column of each reduced row, and the mask of L rows that the kernel
    vectors inside S already reach. At depth bound-1 all extensions by a
    column c > max(S) are handled at once with numpy.
    """

    def __init__(self, system):
        self.system = system
        self.ctx = system.ctx
        self.n = system.bound
        self.ell = system.ell
        self.supports = np.array(system.supports, dtype=np.int64)
        self.slots = np.array(system.slots, dtype=np.int64)
        self.total = binomial(system.ell, system.bound)
        self.skipped = 0
        self.checked = 0
        self.failing = None

        rows = np.arange(system.l_rows)
        # own[r, s, c]: column c reaches L row r through slot s
        own = np.zeros((system.l_rows, system.nslots, self.ell), dtype=bool)
        touches = (self.supports[None, :] >> rows[:, None]) & 1
        for s in range(system.nslots):
            own[:, s, :] = touches.astype(bool) & (self.slots == s)[None, :]
        self.own = own

    def run(self):
        mred = self.system.m_array.copy()
        return self._node(0, 0, mred, [], [], 0, 0)

    def _add_column(self, mred, pivots, a):
        rank = len(pivots)
        col = mred[rank:, a]
        nz = np.flatnonzero(col)
        if len(nz):
            p = rank + nz[0]
            mred = mred.copy()
            if p != rank:
                mred[[rank, p]] = mred[[p, rank]]
            lead = int(mred[rank, a])
            if lead != 1:
                mred[rank] = self.ctx.vmul(self.ctx.inv(lead), mred[rank])
            for i in range(mred.shape[0]):
                f = int(mred[i, a])
                if i != rank and f:
                    mred[i] ^= self.ctx.vmul(f, mred[rank])
            return mred, pivots + [a], 0
        coeffs = [int(mred[i, a]) for i in range(rank)]
        mask = self.system.nonzero_rows(pivots + [a], coeffs + [1])
        return mred, pivots, mask

    def _node(self, depth, start, mred, pivots, cols, status, union):
        if depth == self.n - 1:
            return self._leaf(mred, pivots, cols, status, union)
        last = self.ell - 1 - (self.n - 1 - depth)
        for a in range(start, last + 1):
            new_mred, new_pivots, mask = self._add_column(mred, pivots, a)
            found = self._node(depth + 1, a + 1, new_mred, new_pivots,
                               cols + [a], status | mask,
                               union | self.system.supports[a])
            if found is not None:
                return found
        return None

    def _leaf(self, mred, pivots, cols, status, union):
        system = self.system
        start = cols[-1] + 1 if cols else 0
        cands = np.arange(start, self.ell)
        if len(cands) == 0:
            return None
        kept = cands[(union | self.supports[cands]) == system.full_mask]
        self.checked += len(kept)
        self.skipped += len(cands) - len(kept)
        if len(kept) == 0:
            return None

        rank = len(pivots)
        if rank < mred.shape[0]:
            dependent = ~mred[rank:, kept].any(axis=0)
        else:
            dependent = np.ones(len(kept), dtype=bool)

        masks = np.full(len(kept), status, dtype=np.int64)
        dep = kept[dependent]
        if len(dep):
            y = mred[:rank, dep]
            g = self.own[:, :, pivots]
            prod = np.bitwise_xor.reduce(
                np.where(g[:, :, :, None], y[None, None, :, :], 0), axis=2)
            prod ^= self.own[:, :, dep].astype(np.int64)
            nonzero = (prod != 0).any(axis=1)
            weights = (1 << np.arange(system.l_rows, dtype=np.int64))
            dep_masks = (nonzero * weights[:, None]).sum(axis=0)
            masks[dependent] |= dep_masks

        violating = kept[masks == system.full_mask]
        # an independent column leaves the kernel of S unchanged
        inner_failed = False
        for c in violating:
            c = int(c)
            is_dep = bool(dependent[np.searchsorted(kept, c)])
            if not is_dep and inner_failed:
                continue
            witness = check_column_subset(system, cols + [c])
            if witness is None and not is_dep:
                inner_failed = True
            if witness is not None:
                self.failing = tuple(cols + [c])
                return witness
        return None


def scan_batch(system, session=None):
    """Same contract as scan_subsets, enumerated incrementally"""
    pre_checked = 0
    if session is not None:
        key = _system_key(system)
        for cols in session.cache.ordered(key):
            if system.union_support(cols) != system.full_mask:
                continue
            pre_checked += 1
            witness = check_column_subset(system, cols)
            if witness is not None:
                session.cache.record(key, cols)
                return witness, cols, binomial(system.ell, system.bound), \
                    0, pre_checked
    scan = _BatchScan(system)
    witness = scan.run()
    if witness is not None and session is not None:
        session.cache.record(_system_key(system), scan.failing)
    return witness, scan.failing, scan.total, scan.skipped, \
        scan.checked + pre_checked


def _oracle_scan(system, max_weight):
    ctx = system.ctx
    q1 = ctx.order - 1
    m = system.m_array
    visited = 0
    for size in range(1, max_weight + 1):
        for cols in combinations(range(system.ell), size):
            visited += 1
            total = q1 ** size
            for begin in range(0, total, ORACLE_CHUNK):
                idx = np.arange(begin, min(total, begin + ORACLE_CHUNK),
                                dtype=np.int64)
                vals = [(idx // q1 ** t) % q1 + 1 for t in range(size)]
                good = np.ones(len(idx), dtype=bool)
                for i in range(system.m_rows):
                    acc = np.zeros(len(idx), dtype=np.int64)
                    for t, c in enumerate(cols):
                        if m[i, c]:
                            acc ^= ctx.vmul(int(m[i, c]), vals[t])
                    good &= acc == 0
                if not good.any():
                    continue
                for r in range(system.l_rows):
                    row_nonzero = np.zeros(len(idx), dtype=bool)
                    for s in range(system.nslots):
                        acc = np.zeros(len(idx), dtype=np.int64)
                        for t, c in enumerate(cols):
                            if system.supports[c] >> r & 1 and \
                                    system.slots[c] == s:
                                acc ^= vals[t]
                        row_nonzero |= acc != 0
                    good &= row_nonzero
                hits = np.flatnonzero(good)
                if len(hits):
                    values = [int(v[hits[0]]) for v in vals]
                    return _make_witness(system, cols, values), visited
    return None, visited


def oracle_work(g, max_weight=None):
    """Number of vectors check_oracle would enumerate"""
    ps_ell = 2 * g.d * g.n + 4 * g.n + 1
    w = g.n if max_weight is None else max_weight
    per_matrix = sum(binomial(ps_ell, i) * (g.ctx.order - 1) ** i
                     for i in range(1, w + 1))
    return per_matrix * (2 if g.scheme == ALG4 else 1)


def check_oracle(g, max_weight=None, bound=DEFAULT_ORACLE_BOUND):
    """Exhaustive search over every vector of weight <= max_weight
    (default n), without any filtering"""
    w = g.n if max_weight is None else max_weight
    if w < 1 or w > g.n:
        raise DimensionError("weight bound must be in [1, %d]" % g.n)
    work = oracle_work(g, w)
    if work > bound:
        raise WorkBoundError("oracle would enumerate %d vectors, bound is %d"
                             % (work, bound))
    start = time.perf_counter()
    report = CheckReport("oracle", g)
    for name, target in _targets(g):
        ps = build_probe_system(target)
        witness, visited = _oracle_scan(ps, w)
        report.add_counts(visited, 0, visited)
        if witness is not None:
            report.fail(name, witness)
            break
    return _finish(report, start)


def _finish(report, start):
    report.elapsed = time.perf_counter() - start
    logger.info("%s %s d=%d n=%d k=%d: %s after %d subsets (%.1f ms)",
                report.method, report.scheme, report.d, report.n,
                report.ctx.k, report.verdict, report.subsets_checked,
                report.elapsed * 1000.0)
    return report


def _run_scan(g, method, scan, session):
    start = time.perf_counter()
    report = CheckReport(method, g)
    for name, target in _targets(g):
        ps = build_probe_system(target)
        witness, _, total, skipped, checked = scan(ps, session)
        report.add_counts(total, skipped, checked)
        if witness is not None:
            report.fail(name, witness)
            break
    if session is not None:
        session.candidates += 1
    return _finish(report, start)


def check_subsets(g, session=None):
    return _run_scan(g, "subsets", scan_subsets, session)


def check_batch(g, session=None):
    return _run_scan(g, "batch", scan_batch, session)


def lift_tpart_witness(ps, sub_ps, positions, tpart_witness):
    """Turns a witness on the triangular part of the system of the gamma
    columns `positions` into a witness for the full system ps.

    Each missing gamma column i is then repaired with at most one extra
    column so that M row i vanishes and L row i+1 is nonzero.
    """
    offset = sub_ps.tpart_start
    v = [0] * ps.ell
    for t, x in enumerate(tpart_witness.v):
        if not x:
            continue
        kind, j, pos = sub_ps.labels[offset + t]
        assert kind == TRIG
        v[ps.column_index(TRIG, j, positions[pos])] ^= x

    everything = range(ps.ell)
    m = ps.m_times(everything, v)
    product = ps.product(everything, v)
    ctx = ps.ctx
    gamma = ps.candidate.gamma
    for i in range(ps.n):
        if i in positions:
            continue
        a = m[i]
        b_nonzero = any(product[i + 1])
        if a == 0 and b_nonzero:
            continue
        if a == 0:
            v[ps.column_index(L_IDENTITY, 0, i)] = 1
        elif b_nonzero:
            v[ps.column_index(M_IDENTITY, 0, i)] = a
        else:
            j = next(j for j in range(ps.d + 1) if gamma[j, i])
            v[ps.column_index(DIAG, j, i)] = ctx.div(a, gamma[j, i])
    cols = [c for c, x in enumerate(v) if x]
    return _make_witness(ps, cols, [v[c] for c in cols])


def check_safepp(g):
    """Triangular-part check over every subset of gamma columns"""
    if g.ctx.order <= g.n + 1:
        raise FieldSizeError("the triangular-part check needs more than %d "
                             "field elements, F_2^%d has %d"
                             % (g.n + 1, g.ctx.k, g.ctx.order))
    start = time.perf_counter()
    report = CheckReport("safepp", g)
    for name, target in _targets(g):
        ps = build_probe_system(target)
        witness = None
        for size in range(1, g.n + 1):
            for positions in combinations(range(g.n), size):
                sub_ps = build_probe_system(target.restrict(positions))
                tw, _, total, skipped, checked = \
                    scan_subsets(tpart_system(sub_ps))
                report.add_counts(total, skipped, checked)
                if tw is not None:
                    logger.debug("triangular witness on gamma columns %r",
                                 positions)
                    witness = lift_tpart_witness(ps, sub_ps, positions, tw)
                    break
            if witness is not None:
                break
        if witness is not None:
            report.fail(name, witness)
            break
    return _finish(report, start)


def dim3_matrices(gamma):
    """The 3 x 3 matrices, one per pair {i, j} of rows and third row k,
    whose non-singularity completes the order-3 sufficient condition"""
    ctx = gamma.ctx
    rows = range(gamma.rows)
    for i, j in combinations(rows, 2):
        for k in rows:
            if k in (i, j):
                continue
            yield Mat.from_rows(ctx, [
                [gamma[i, 0], gamma[j, 0], gamma[k, 0]],
                [gamma[i, 1], gamma[j, 1], gamma[k, 1]],
                [gamma[i, 2], gamma[j, 2], 0],
            ])


def _small_condition(gamma):
    n = gamma.cols
    if n == 1:
        return all(gamma.data)
    if not is_mds_all_submatrices(gamma):
        return False
    if n == 2:
        return True
    return all(is_invertible(m) for m in dim3_matrices(gamma))


def check_fast_small(g):
    """Sufficient conditions for n <= 3; None when they do not apply"""
    if g.n > 3:
        raise DimensionError("fast paths exist for n <= 3, got n=%d" % g.n)
    start = time.perf_counter()
    for _, target in _targets(g):
        if not _small_condition(target.gamma):
            logger.debug("small-order condition inconclusive for %r", g)
            return None
    return _finish(CheckReport("analytic", g), start)


def check(g, method="auto", session=None, oracle_bound=DEFAULT_ORACLE_BOUND):
    """Dispatches to one checking method. "auto" tries the small-order
    conditions when n <= 3 and runs the batch checker otherwise."""
    if method == "auto":
        if g.n <= 3:
            report = check_fast_small(g)
            if report is not None:
                return report
        return check_batch(g, session=session)
    if method == "oracle":
        return check_oracle(g, bound=oracle_bound)
    if method == "subsets":
        return check_subsets(g, session=session)
    if method == "batch":
        return check_batch(g, session=session)
    if method == "safepp":
        return check_safepp(g)
    if method == "analytic":
        report = check_fast_small(g)
        if report is None:
            raise DimensionError("small-order conditions are inconclusive "
                                 "for this candidate")
        return report
    raise ValueError("unknown method %r" % method)


def count_filtered_subsets(system):
    """(kept, total) bound-sized subsets whose L support covers every
    row, by grouping columns with equal support"""
    groups = sorted(Counter(system.supports).items())
    n = system.bound
    full = system.full_mask

    def walk(i, remaining, union):
        if remaining == 0:
            return 1 if union == full else 0
        if i == len(groups):
            return 0
        mask, size = groups[i]
        count = 0
        for take in range(0, min(size, remaining) + 1):
            count += binomial(size, take) * walk(
                i + 1, remaining - take, union | mask if take else union)
        return count

    return walk(0, n, 0), binomial(system.ell, n)
