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

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
