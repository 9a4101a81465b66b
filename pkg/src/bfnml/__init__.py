"""bfnml: Bayes factor versus (luckiness) NML evidence for an order-constrained binomial model.
Exact sample-space enumeration for M0: θ ≤ z against the full model M1: θ ∈ [0, 1].
"""

__version__ = "0.1.0"
