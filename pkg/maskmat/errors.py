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


class MaskmatError(Exception):
    """Base class of every error raised by maskmat"""


class FieldError(MaskmatError):
    """Bad extension degree, bad polynomial or invalid field element"""


class DimensionError(MaskmatError):
    """Operands of the wrong shape, or indices out of range"""


class ParseError(MaskmatError):
    """Malformed matrix text, hex token or JSON document"""


class CandidateError(MaskmatError):
    """A gamma matrix that does not fit its scheme"""


class ParameterError(MaskmatError):
    """Construction parameters that are not distinct, nonzero or complete"""


class FieldSizeError(MaskmatError):
    """The field is too small for the requested operation"""


class WorkBoundError(MaskmatError):
    """Exhaustive enumeration would exceed the configured work bound"""
