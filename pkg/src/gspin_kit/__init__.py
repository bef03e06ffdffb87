"""gspin-kit: exact-arithmetic computations around general spin groups.

Submodules:

* scalars       exact rationals and real quadratic extensions
* algebra_core  polynomials, Newton identities, companion matrices, twists
* clifford      the split Clifford algebra, spin representation, oracles
* rootdata      root data, Weyl groups and characters, adjoint traces
* conjugacy     semisimple classes via the torus chart, conjugacy criteria
* satake        unramified parameters, Euler factors, partial L-values
* weights       Hodge-Tate predicates, slope bounds, admissible cones
* g2            the exceptional torus inside the rank-3 spin group
* cli           batch command-line interface (entry point gspin-kit)
"""

from . import algebra_core, clifford, conjugacy, g2, rootdata, satake, scalars, weights

__version__ = "0.1.0"

__all__ = [
    "algebra_core",
    "clifford",
    "conjugacy",
    "g2",
    "rootdata",
    "satake",
    "scalars",
    "weights",
    "__version__",
]
