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
import math
import time

import numpy as np
from joblib import Parallel, delayed
from tqdm import tqdm

from .checker import CheckSession, check
from .config import DEFAULT_SEED
from .errors import FieldSizeError, ParameterError
from .linalg import Mat, mat_sub_from_ones
from .probes import ALG4, ALG5, GammaCandidate, normalize_scheme
from .structures import CauchySpec, construct_precond41, \
    construct_precond51, is_mds_all_submatrices, is_row_xmds
from .utils import derive_rng, quantiles

logger = logging.getLogger(__name__)

CAUCHY = "cauchy"
UNIFORM = "uniform"
SAMPLERS = (CAUCHY, UNIFORM)


class SearchConfig(object):
    """What to sample, how many, and how to spread the work"""

    def __init__(self, scheme, ctx, d, sampler=CAUCHY, samples=1000,
                 seed=DEFAULT_SEED, workers=1, early_stop=None,
                 method="auto", columns=None, chunk_size=32):
        self.scheme = normalize_scheme(scheme)
        self.ctx = ctx
        self.d = d
        self.sampler = sampler
        self.samples = samples
        self.seed = seed
        self.workers = workers
        self.early_stop = early_stop
        self.method = method
        self.columns = d if columns is None else columns
        self.chunk_size = chunk_size
        self.validate()

    def __repr__(self):
        return "SearchConfig(%s, d=%d, k=%d, %s x%d)" % (
            self.scheme, self.d, self.ctx.k, self.sampler, self.samples)

    def validate(self):
        if self.sampler not in SAMPLERS:
            raise ParameterError("unknown sampler %r" % self.sampler)
        if self.samples < 1:
            raise ParameterError("need at least one sample")
        if self.d < 1:
            raise ParameterError("order must be at least 1")
        if not 1 <= self.columns <= self.d:
            raise ParameterError("columns must be in [1, %d]" % self.d)
        if self.scheme == ALG5 and self.columns != self.d:
            raise ParameterError("alg5 sampling draws all %d columns"
                                 % self.d)
        if self.early_stop is not None and self.early_stop < 1:
            raise ParameterError("early stop target must be positive")
        if self.sampler == CAUCHY:
            needed, pool = self.cauchy_pool()
            if needed > len(pool):
                raise FieldSizeError("%s Cauchy sampling needs %d distinct "
                                     "elements, F_2^%d offers %d"
                                     % (self.scheme, needed, self.ctx.k,
                                        len(pool)))

    def cauchy_pool(self):
        if self.scheme == ALG4:
            return self.d + self.columns, np.arange(1, self.ctx.order)
        return 2 * self.d + 1, np.arange(0, self.ctx.order)

    def to_dict(self):
        return {"scheme": self.scheme, "k": self.ctx.k, "d": self.d,
                "columns": self.columns, "sampler": self.sampler,
                "samples": self.samples, "seed": self.seed,
                "workers": self.workers, "early_stop": self.early_stop,
                "method": self.method}


class SearchStats(object):

    def __init__(self, config):
        self.config = config
        self.tried = 0
        self.safe_count = 0
        self.timings = []
        self.found = []

    def __repr__(self):
        return "SearchStats(%d/%d safe)" % (self.safe_count, self.tried)

    @property
    def fraction(self):
        return self.safe_count / self.tried if self.tried else 0.0

    @property
    def log2_fraction(self):
        if self.safe_count == 0:
            return None
        return math.log2(self.fraction)

    def timing_quantiles(self):
        if not self.timings:
            return {}
        return quantiles(self.timings)

    def to_dict(self):
        return {
            "config": self.config.to_dict(),
            "tried": self.tried,
            "safe": self.safe_count,
            "fraction": self.fraction,
            "log2_fraction": self.log2_fraction,
            "timing_ms": dict(("q%g" % (p * 100), t * 1000.0)
                              for p, t in self.timing_quantiles().items()),
            "found": [_found_record(self.config, index, gamma)
                      for index, gamma in self.found],
        }


def _found_record(cfg, index, gamma):
    return {"index": index, "scheme": cfg.scheme, "k": cfg.ctx.k,
            "d": cfg.d, "gamma": [[cfg.ctx.format(x) for x in row]
                                  for row in gamma.to_rows()]}


def sample_candidate(cfg, index):
    """Candidate number `index` of the run; it depends only on the seed
    and the index"""
    rng = derive_rng(cfg.seed, index)
    ctx, d = cfg.ctx, cfg.d
    if cfg.sampler == CAUCHY:
        needed, pool = cfg.cauchy_pool()
        values = [int(x) for x in rng.choice(pool, needed, replace=False)]
        if cfg.scheme == ALG4:
            spec = CauchySpec(values[:d], values[d:])
            return construct_precond41(ctx, spec)
        return construct_precond51(ctx, CauchySpec(values[:d + 1],
                                                   values[d + 1:]))

    if cfg.scheme == ALG4:
        a = rng.integers(0, ctx.order, size=(d, cfg.columns))
        return GammaCandidate.from_a_part(
            Mat.from_rows(ctx, [[int(x) for x in row] for row in a]))
    top = rng.integers(0, ctx.order, size=(d, d))
    last = np.bitwise_xor.reduce(top, axis=0)
    rows = [[int(x) for x in row] for row in top] + \
        [[int(x) for x in last]]
    return GammaCandidate(ALG5, Mat.from_rows(ctx, rows))


def _run_chunk(cfg, indices):
    session = CheckSession()
    out = []
    for index in indices:
        g = sample_candidate(cfg, index)
        start = time.perf_counter()
        report = check(g, method=cfg.method, session=session)
        out.append((index, report.safe, time.perf_counter() - start,
                    g.gamma))
    return out


def _chunks(begin, end, size):
    return [list(range(i, min(end, i + size)))
            for i in range(begin, end, size)]


def run_search(cfg, progress=False, stream=None):
    """Samples and checks cfg.samples candidates. Safe matrices are
    written to `stream` as JSON lines when it is given. Results do not
    depend on the number of workers."""
    stats = SearchStats(cfg)
    n_jobs = cfg.workers
    wave = max(1, abs(n_jobs)) * cfg.chunk_size * 4
    bar = tqdm(total=cfg.samples, desc="search", disable=not progress)
    begin = 0
    with Parallel(n_jobs=n_jobs) as parallel:
        while begin < cfg.samples:
            end = min(cfg.samples, begin + wave)
            parts = parallel(delayed(_run_chunk)(cfg, chunk)
                             for chunk in _chunks(begin, end, cfg.chunk_size))
            results = sorted((r for part in parts for r in part),
                             key=lambda r: r[0])
            done = _absorb(cfg, stats, results, stream)
            bar.update(len(results))
            begin = end
            if done:
                break
    bar.close()
    logger.info("search %r: %d of %d safe", cfg, stats.safe_count,
                stats.tried)
    return stats


def _absorb(cfg, stats, results, stream):
    for index, safe, elapsed, gamma in results:
        stats.tried += 1
        stats.timings.append(elapsed)
        if safe:
            stats.safe_count += 1
            stats.found.append((index, gamma))
            if stream is not None:
                stream.write(json.dumps(_found_record(cfg, index, gamma))
                             + "\n")
                stream.flush()
            if cfg.early_stop is not None and \
                    stats.safe_count >= cfg.early_stop:
                return True
    return False


CENSUS_ROWS = ("total", "one+ MDS", "both MDS", "one+ XMDS", "both XMDS")


class Census(object):
    """Counts of the MDS and row-XMDS properties of (A, J - A) among all
    sampled alg4 matrices and among the safe ones"""

    def __init__(self):
        self.all = dict((row, 0) for row in CENSUS_ROWS)
        self.safe = dict((row, 0) for row in CENSUS_ROWS)

    def add(self, flags, safe):
        for row, hit in flags.items():
            if hit:
                self.all[row] += 1
                if safe:
                    self.safe[row] += 1

    def ratio(self, row):
        return self.safe[row] / self.all[row] if self.all[row] else None

    def to_dict(self):
        return dict((row, {"all": self.all[row], "safe": self.safe[row],
                           "ratio": self.ratio(row)})
                    for row in CENSUS_ROWS)


def census_flags(g):
    a = g.a_part()
    b = mat_sub_from_ones(a)
    mds = [is_mds_all_submatrices(a), is_mds_all_submatrices(b)]
    xmds = [is_row_xmds(a), is_row_xmds(b)]
    return {"total": True, "one+ MDS": any(mds), "both MDS": all(mds),
            "one+ XMDS": any(xmds), "both XMDS": all(xmds)}


def _census_chunk(cfg, indices):
    session = CheckSession()
    out = []
    for index in indices:
        g = sample_candidate(cfg, index)
        out.append((index, census_flags(g),
                    check(g, method=cfg.method, session=session).safe))
    return out


def precondition_census(cfg, progress=False):
    if cfg.scheme != ALG4 or cfg.sampler != UNIFORM or \
            cfg.columns != cfg.d:
        raise ParameterError("the census samples full alg4 matrices "
                             "uniformly")
    census = Census()
    chunks = _chunks(0, cfg.samples, cfg.chunk_size)
    parts = Parallel(n_jobs=cfg.workers)(
        delayed(_census_chunk)(cfg, chunk)
        for chunk in tqdm(chunks, desc="census", disable=not progress))
    for part in parts:
        for _, flags, safe in part:
            census.add(flags, safe)
    logger.info("census %r: %d safe", cfg, census.safe["total"])
    return census
