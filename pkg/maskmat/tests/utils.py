import os

from maskmat.field import ctx_new
from maskmat.probes import GammaCandidate

dir_path = os.path.dirname(os.path.realpath(__file__))


def read_test_data(filename):
    with open(os.path.join(dir_path, "data/", filename)) as f:
        return f.read()


def data_path(filename):
    return os.path.join(dir_path, "data", filename)


def slow_tests_enabled():
    return os.environ.get("MASKMAT_SLOW_TESTS", "") not in ("", "0")


def load_gamma(scheme, k, filename, d=None):
    return GammaCandidate.parse(scheme, ctx_new(k), read_test_data(filename),
                                d)
