"""Shared Hypothesis settings profiles for the property tests.

Use these instead of inline ``@settings(max_examples=...)``:

    @given(a=shapes, b=shapes)
    @STANDARD_SETTINGS
    def test_something(self, a, b):
        ...
"""

from hypothesis import HealthCheck, settings

# Identities that must hold everywhere (symmetry, complements)
THOROUGH_SETTINGS = settings(max_examples=300, deadline=None)

# Regular property tests
STANDARD_SETTINGS = settings(max_examples=100, deadline=None)

# Properties that enumerate a whole sample space per example
SLOW_SETTINGS = settings(
    max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)

# Cross-checks between two routes to the same number, sampled densely
EXHAUSTIVE_SETTINGS = settings(max_examples=1000, deadline=None)
