"""Exact integer complexity: the least number of ones that write n with + and x."""
