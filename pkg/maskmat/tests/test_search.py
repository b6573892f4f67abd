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

import io
import json
import unittest

from maskmat.errors import FieldSizeError, ParameterError
from maskmat.field import ctx_new
from maskmat.probes import ALG4, ALG5
from maskmat.search import CAUCHY, CENSUS_ROWS, UNIFORM, SearchConfig, \
    census_flags, precondition_census, run_search, sample_candidate
from maskmat.structures import check_precondition

from .utils import slow_tests_enabled

SLOW = slow_tests_enabled()


class TestSearchConfig(unittest.TestCase):
    def test_validation(self):
        ctx = ctx_new(4)
        with self.assertRaises(ParameterError):
            SearchConfig(ALG4, ctx, 3, sampler="lucky")
        with self.assertRaises(ParameterError):
            SearchConfig(ALG4, ctx, 3, samples=0)
        with self.assertRaises(ParameterError):
            SearchConfig(ALG4, ctx, 3, columns=4)
        with self.assertRaises(ParameterError):
            SearchConfig(ALG5, ctx, 3, columns=2)
        with self.assertRaises(ParameterError):
            SearchConfig(ALG4, ctx, 3, early_stop=0)

    def test_pigeonhole(self):
        with self.assertRaises(FieldSizeError):
            SearchConfig(ALG4, ctx_new(2), 2, sampler=CAUCHY)
        with self.assertRaises(FieldSizeError):
            SearchConfig(ALG5, ctx_new(2), 2, sampler=CAUCHY)
        SearchConfig(ALG5, ctx_new(3), 3, sampler=CAUCHY)
        SearchConfig(ALG4, ctx_new(2), 2, sampler=UNIFORM)


class TestSampling(unittest.TestCase):
    def test_deterministic(self):
        for scheme in (ALG4, ALG5):
            for sampler in (CAUCHY, UNIFORM):
                cfg = SearchConfig(scheme, ctx_new(6), 4, sampler=sampler)
                self.assertEqual(sample_candidate(cfg, 17),
                                 sample_candidate(cfg, 17))
                self.assertNotEqual(sample_candidate(cfg, 17),
                                    sample_candidate(cfg, 18))

    def test_cauchy_candidates_meet_precondition(self):
        for scheme in (ALG4, ALG5):
            cfg = SearchConfig(scheme, ctx_new(5), 3, sampler=CAUCHY)
            for index in range(10):
                self.assertTrue(check_precondition(
                    sample_candidate(cfg, index)))

    def test_column_restricted_alg4(self):
        cfg = SearchConfig(ALG4, ctx_new(4), 3, sampler=CAUCHY, columns=2)
        g = sample_candidate(cfg, 0)
        self.assertEqual((3, 2), (g.d, g.n))


class TestRunSearch(unittest.TestCase):
    def test_two_column_runs_are_all_safe(self):
        cfg = SearchConfig(ALG4, ctx_new(4), 3, sampler=CAUCHY, samples=40,
                           columns=2)
        stats = run_search(cfg)
        self.assertEqual(40, stats.tried)
        self.assertEqual(1.0, stats.fraction)
        self.assertEqual(0.0, stats.log2_fraction)

    def test_worker_count_does_not_matter(self):
        base = dict(scheme=ALG5, ctx=ctx_new(3), d=2, sampler=UNIFORM,
                    samples=70, seed=5, chunk_size=8)
        one = run_search(SearchConfig(workers=1, **base))
        two = run_search(SearchConfig(workers=2, **base))
        self.assertEqual(one.safe_count, two.safe_count)
        self.assertEqual([i for i, _ in one.found],
                         [i for i, _ in two.found])

    def test_early_stop_and_stream(self):
        cfg = SearchConfig(ALG5, ctx_new(4), 2, sampler=CAUCHY, samples=500,
                           early_stop=3, chunk_size=4)
        stream = io.StringIO()
        stats = run_search(cfg, stream=stream)
        self.assertEqual(3, stats.safe_count)
        lines = stream.getvalue().splitlines()
        self.assertEqual(3, len(lines))
        record = json.loads(lines[0])
        self.assertEqual(ALG5, record["scheme"])
        self.assertEqual(3, len(record["gamma"]))

    def test_report(self):
        cfg = SearchConfig(ALG4, ctx_new(1), 2, sampler=UNIFORM, samples=20)
        doc = run_search(cfg).to_dict()
        self.assertEqual(20, doc["tried"])
        self.assertEqual(ALG4, doc["config"]["scheme"])
        self.assertIn("q50", doc["timing_ms"])
        self.assertEqual(doc["safe"], len(doc["found"]))
        if doc["safe"] == 0:
            self.assertIsNone(doc["log2_fraction"])

    @unittest.skipUnless(SLOW, "set MASKMAT_SLOW_TESTS=1")
    def test_published_fractions(self):
        cases = ((ALG4, 8, 0.11, 0.03), (ALG5, 8, 0.27, 0.04),
                 (ALG4, 10, 0.59, 0.04), (ALG5, 10, 0.73, 0.04))
        for scheme, k, expected, tolerance in cases:
            cfg = SearchConfig(scheme, ctx_new(k), 4, sampler=CAUCHY,
                               samples=2000, workers=-1)
            stats = run_search(cfg)
            self.assertAlmostEqual(expected, stats.fraction,
                                   delta=tolerance)


class TestCensus(unittest.TestCase):
    def test_requires_uniform_alg4(self):
        with self.assertRaises(ParameterError):
            precondition_census(SearchConfig(ALG5, ctx_new(4), 3,
                                             sampler=UNIFORM))
        with self.assertRaises(ParameterError):
            precondition_census(SearchConfig(ALG4, ctx_new(4), 3,
                                             sampler=CAUCHY))

    def test_counts(self):
        cfg = SearchConfig(ALG4, ctx_new(4), 2, sampler=UNIFORM, samples=60)
        census = precondition_census(cfg)
        self.assertEqual(60, census.all["total"])
        for row in CENSUS_ROWS:
            self.assertLessEqual(census.safe[row], census.all[row])
        self.assertLessEqual(census.all["both MDS"], census.all["one+ MDS"])
        self.assertLessEqual(census.all["both XMDS"],
                             census.all["one+ XMDS"])
        doc = census.to_dict()
        self.assertEqual(set(CENSUS_ROWS), set(doc))

    def test_flags_of_cauchy_candidate(self):
        cfg = SearchConfig(ALG4, ctx_new(5), 3, sampler=CAUCHY)
        flags = census_flags(sample_candidate(cfg, 0))
        self.assertTrue(flags["both XMDS"])
        self.assertTrue(flags["both MDS"])
