"""Exact s-consistency analysis of finite difference approximations."""

__version__ = "0.1.0"
