"""Code smell detection and baseline-relative scoring for Java corpora."""

__version__ = "0.1.0"
