"""Graded-fermion realizations of gl(m|n) and osp(m|n) and two-column branching rules."""

__version__ = "0.1.0"
