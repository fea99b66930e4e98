"""Exact construction, contraction and verification of triangular
quantum-group structures.

The pipeline: build the deformed R-matrices, transport them along a
singular-limit schedule, derive the exchange table of the resulting
inhomogeneous algebra, and verify its Hopf structure mechanically.
Everything computes over exact multivariate rational functions; no
numerics, no external computer-algebra dependency.
"""

__version__ = "0.1.0"
