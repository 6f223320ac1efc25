"""
germcalc - asymptotic calculus for germs of exp-log functions at +infinity.

Terms are parsed and simplified by ``germcalc.terms``; limits, levels,
exponential heights and leading monomials come from ``germcalc.asymptotics``;
domain arithmetic lives in ``germcalc.domains`` and the numeric continuation
checks in ``germcalc.lchart``.
"""

__version__ = "1.0.0"
