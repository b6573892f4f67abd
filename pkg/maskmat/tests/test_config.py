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
import unittest

from maskmat.config import DEFAULT_ORACLE_BOUND, DEFAULT_SEED, Settings, \
    configure_logging


class TestSettings(unittest.TestCase):
    def test_defaults(self):
        s = Settings.from_env({})
        self.assertEqual(DEFAULT_SEED, s.seed)
        self.assertEqual(1, s.workers)
        self.assertEqual(DEFAULT_ORACLE_BOUND, s.oracle_bound)
        self.assertEqual("WARNING", s.log_level)

    def test_environment(self):
        s = Settings.from_env({"MASKMAT_SEED": "0x2a", "MASKMAT_WORKERS": "-1",
                               "MASKMAT_ORACLE_BOUND": "1000",
                               "MASKMAT_LOG_LEVEL": "debug"})
        self.assertEqual((42, -1, 1000, "DEBUG"),
                         (s.seed, s.workers, s.oracle_bound, s.log_level))
        self.assertEqual(DEFAULT_SEED,
                         Settings.from_env({"MASKMAT_SEED": " "}).seed)

    def test_bad_value(self):
        with self.assertRaises(ValueError):
            Settings.from_env({"MASKMAT_SEED": "seed"})

    def test_override(self):
        s = Settings.from_env({"MASKMAT_WORKERS": "4"})
        t = s.override(seed=7)
        self.assertEqual((7, 4), (t.seed, t.workers))
        self.assertEqual(DEFAULT_SEED, s.seed)
        self.assertEqual(2, s.override(workers=2).workers)

    def test_configure_logging(self):
        configure_logging("info")
        self.assertEqual(logging.INFO, logging.getLogger("maskmat").level)
        configure_logging("nonsense")
        self.assertEqual(logging.WARNING, logging.getLogger("maskmat").level)
