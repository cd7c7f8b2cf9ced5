"""Exact computation in Culler-Vogtmann Outer space.

Points are marked metric graphs with exact rational edge lengths; the
asymmetric Lipschitz metric, automorphism displacement and its
minimisation over simplices, Min-set censuses and the finite-order
fixed-point checks all run in exact arithmetic.
"""

from .words import (AutoPair, CyclicWord, Word, compose, cyclic_reduce,
                    cyclic_word, identity_auto, inner_auto, inversion_auto,
                    is_inner, outer_equal, parse_word, permutation_auto,
                    reduce, spell, transvection_auto)
from .graphs import (BlowUp, CandidateLoop, CollapseResult, EdgePath, Forest,
                     Graph, GraphIso, banana_graph, collapse_forest,
                     dumbbell_graph, embedded_circles, enumerate_blow_ups,
                     enumerate_candidates, isomorphisms, rose_graph,
                     spanning_tree, theta_graph, tighten)
from .marked import (CVPoint, MarkedGraph, SimplexRef, canonical_key, centre,
                     induced_autopair, marked_from_tree, marked_graph_equal,
                     simplex_equal, verify_marking)
from .metric import (StretchResult, ball_membership, candidates_of,
                     quasi_symmetry_sample, stretch, stretch_bruteforce)
from .displace import (FixedPolytope, MinimizationResult, RatioSystem,
                       build_ratio_system, displacement_at,
                       fixed_point_polytope, min_displacement_on_simplex,
                       segment_profile)
from .explore import (Census, OrbitClass, SimplexCensusEntry,
                      census_is_connected, explore_min_set, neighbors,
                      quotient_by_power)
from .models import (FiniteOrderModel, FixedPointReport, build_Xp, build_Xpq,
                     graph_map_order, sigma, unique_isometry_representative,
                     verify_unique_fixed_point)

__version__ = "0.1.0"
