# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""Top level imports."""

from structlog import get_logger

logger = get_logger(__name__)
