"""Exact-arithmetic toolkit for shifts of finite type presented by
nonnegative integer matrices.

Everything here is computed over arbitrary-precision integers; no floating
point enters any invariant.  The public surface is spread over a handful of
focused modules:

- :mod:`ssekit.intmat`   exact dense integer matrices, text/JSON formats
- :mod:`ssekit.graphs`   edge graphs, splitting matrices, edge factorizations
- :mod:`ssekit.factor`   elementary equivalences and the bounded search
- :mod:`ssekit.ktheory`  Smith normal form, cokernel groups, induced maps
- :mod:`ssekit.ksse`     the reachable-unit-class invariant and comparisons
- :mod:`ssekit.cli`      the ``ssekit`` command line tool
"""

__version__ = "0.1.0"
