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

DEFAULT_SEED = 0x5eed
DEFAULT_WORKERS = 1
DEFAULT_ORACLE_BOUND = 10 ** 9
DEFAULT_LOG_LEVEL = "WARNING"

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _int_from_env(environ, name, default):
    raw = environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw.strip(), 0)
    except ValueError:
        raise ValueError("%s must be an integer, got %r" % (name, raw))


class Settings(object):
    """Run-time knobs shared by the CLI and the library entry points.

    Values are read from the environment (MASKMAT_SEED, MASKMAT_WORKERS,
    MASKMAT_ORACLE_BOUND, MASKMAT_LOG_LEVEL); command-line flags are
    applied on top with `override`.
    """

    def __init__(self, seed=DEFAULT_SEED, workers=DEFAULT_WORKERS,
                 oracle_bound=DEFAULT_ORACLE_BOUND,
                 log_level=DEFAULT_LOG_LEVEL):
        self.seed = seed
        self.workers = workers
        self.oracle_bound = oracle_bound
        self.log_level = log_level

    def __repr__(self):
        return "Settings(seed=%#x, workers=%d, oracle_bound=%d, " \
               "log_level=%s)" % (self.seed, self.workers,
                                  self.oracle_bound, self.log_level)

    @classmethod
    def from_env(cls, environ=None):
        if environ is None:
            environ = os.environ
        return cls(
            seed=_int_from_env(environ, "MASKMAT_SEED", DEFAULT_SEED),
            workers=_int_from_env(environ, "MASKMAT_WORKERS",
                                  DEFAULT_WORKERS),
            oracle_bound=_int_from_env(environ, "MASKMAT_ORACLE_BOUND",
                                       DEFAULT_ORACLE_BOUND),
            log_level=environ.get("MASKMAT_LOG_LEVEL",
                                  DEFAULT_LOG_LEVEL).upper(),
        )

    def override(self, seed=None, workers=None, oracle_bound=None,
                 log_level=None):
        """Returns a copy where every non-None argument replaces the
        current value"""
        return Settings(
            seed=self.seed if seed is None else seed,
            workers=self.workers if workers is None else workers,
            oracle_bound=(self.oracle_bound if oracle_bound is None
                          else oracle_bound),
            log_level=self.log_level if log_level is None else log_level,
        )


def configure_logging(level):
    """Sends maskmat logs to stderr. Only the command line calls this."""
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT)
    logging.getLogger("maskmat").setLevel(level)
