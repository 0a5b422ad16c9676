"""orbitlab: exact arithmetic on polynomial orbits.

Composition algebra over Q and quotient rings Q[t]/(m(t)), Chebyshev and
Dickson families, functional decomposition, power/Chebyshev normal
forms, standard pairs with Laurent witnesses, canonical heights, exact
orbit-intersection solvers, and line invariance in several variables.
"""

from .chebdickson import chebyshev_t, classical_chebyshev, dickson
from .decomp import (ChainCapExceeded, DecompChain, DecompPair,
                     bidecompositions, complete_decompositions,
                     compositional_root, decompose_at, is_indecomposable,
                     left_divide, right_divide)
from .heights import (BitBudgetExceeded, GapConstants, HeightValue,
                      canonical_height, gap_constants, is_preperiodic,
                      weil_height)
from .intersect import (CommonIterateFound, CommonIterateNever,
                        CommonIterateUnknown, FinitePoint, InfiniteFamily,
                        IntersectionReport, OrbitBudget, OrbitTrace,
                        Preperiodic, RittCertificate, Wandering,
                        commensurability_witness, common_iterate, orbit,
                        orbit_intersection, power_map_intersection_exact,
                        verify_ritt_certificate)
from .lattice import ExponentLattice, multiplicative_lattice, solve_exponent_system
from .lines import (Constant, CosetEntry, LineHit, LineIntersection, LineSpec,
                    Linked, find_invariant_exponents, intersection_cosets,
                    line_invariant_check)
from .normal_forms import (ChebSquareExceptional, ChebyshevLike, General,
                           LinearEquivalence, MonicCentered, PowerLike,
                           cheb_equivalences, conjugacy_normal_form,
                           iterate_root_form, linear_equivalence,
                           monic_centered)
from .parser import PolyParseError, format_poly, parse_poly
from .poly import (LaurentPoly, LinearMap, RatPoly, compose, conjugate,
                   iterate, laurent_compose, lift_poly)
from .scalars import (QuotientElement, QuotientRing, RingMismatchError)
from .siegel import (BTWitness, ClassifyCapExceeded, ClassifyCaps,
                     StandardPairParams, classify_pair, poly_nth_root,
                     siegel_witness, standard_pair,
                     verify_composition_identity)

__version__ = "0.1.0"
