# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""Entry point for ``python -m shallow_bench``."""

import sys

from shallow_bench.cli import main

sys.exit(main())
