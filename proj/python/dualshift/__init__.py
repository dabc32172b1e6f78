"""Invertible data-oriented <-> function-oriented restructuring for MiniObj."""

try:
    from ._core import detect, fmt, plan, roundtrip, run, transform, typecheck
except ImportError:  # in-tree test runs: _core sits on PYTHONPATH, not in the package
    from _core import detect, fmt, plan, roundtrip, run, transform, typecheck

__all__ = ["detect", "fmt", "plan", "roundtrip", "run", "transform", "typecheck"]
