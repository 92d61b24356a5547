"""Exact topological recursion for spectral curves with regular and irregular branch points.

Scalars live in Q(zeta_8).  Subpackages and modules:

* ``algebra``: field, series, polynomials in times, matrix series.
* ``curve``, ``fixtures``: spectral curves and built-in examples.
* ``recursion``, ``tables``, ``partition``: correlators, coefficient tables, free energies, KdV.
* ``deformation``, ``graphs``: closed formulas and the graph expansion.
* ``givental``: R-matrix and the operator decomposition of partition functions.
* ``legendre``: the two-hard-edge curve in global times.
* ``asymptotics``, ``acceptance``, ``cli``: checks and the command line.
"""

__version__ = "0.1.0"
