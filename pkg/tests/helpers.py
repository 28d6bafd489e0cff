"""Small shared helpers for the test modules."""
from calsched.core import Job


def jobs_of(*pairs, start_id=0):
    return [Job(start_id + i, r, d) for i, (r, d) in enumerate(pairs)]


def brute_capacity(starts, lam, T, t):
    # direct interval membership, no shared code with the library
    return sum(1 for s in starts if s + lam <= t and t < s + lam + T)
