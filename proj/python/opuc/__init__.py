"""CMV matrices, Schur functions, right limits, and reflectionless measures."""

from opuc._core import *  # noqa: F401,F403
