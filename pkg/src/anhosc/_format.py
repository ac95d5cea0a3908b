"""Deterministic number formatting shared by tables and reports.

Shortest round-trip representation: byte-stable across runs and lossless
(the printed value parses back to the exact float64).
"""

from __future__ import annotations


def fmt_float(value: float) -> str:
    return repr(float(value))


def fmt_complex(value: complex) -> str:
    z = complex(value)
    sign = "+" if z.imag >= 0 else "-"
    return f"{fmt_float(z.real)}{sign}{fmt_float(abs(z.imag))}i"
