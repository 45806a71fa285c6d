"""Display formatting shared by reports and the command line.

Values are rounded to two decimals with trailing zeros dropped (integers
print bare), ratio statistics print with a fixed two decimals, densities
with four.
"""

from __future__ import annotations


def fmt_number(x: float, ndigits: int = 2) -> str:
    """Round and drop trailing zeros: 2.2833 -> '2.28', 574.0 -> '574'."""
    r = round(x, ndigits)
    if r == int(r):
        return str(int(r))
    return repr(r)


def fmt_fixed(x: float, ndigits: int = 2) -> str:
    return f"{x:.{ndigits}f}"
