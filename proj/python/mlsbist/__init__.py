# Copyright 2026 mlsbist contributors
# SPDX-License-Identifier: Apache-2.0
"""Online sensor self-test simulation: MLS-encoded stimulus superposition.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from mlsbist._core import *  # noqa: F401,F403
from mlsbist._core import __version__  # noqa: F401
