"""Exact census and verification engine for surfaces in P^3 over F_p.

Counts rational points and rational lines on projective surfaces by
exhaustive enumeration, builds the Frobenius-twist companions whose
common intersection captures the surface's rational points, evaluates
exact point-count bounds, and reproduces closed-form counts for a
catalog of named families at desk scale.
"""

from .bounds import (BOUND_NAMES, BoundReport, bauer_rams_cap,
                     correction_term, crude_line_cap, evaluate_bounds,
                     improvement_threshold)
from .cyclotomic import (CycInt, cyc_norm, cyclotomic_polynomial, euler_phi,
                         exceptional_primes, has_only_trivial_vanishing_sums,
                         norm_witnesses, zero_sums_mod_p)
from .divisor import (DegreeTriple, deg_gamma, intersection_sandwich_holds,
                      line_self_intersection)
from .evalgrid import MAX_GRID_PRIME, ExtGrid, common_zeros, count_zeros
from .families import (FAMILY_NAMES, ClosedFormCount, CrossPowerLineEvidence,
                       FamilySpec, build_family, classify_half_fermat_line,
                       closed_form_count, cross_power_line_check,
                       half_fermat_affine_count, half_fermat_line_stats,
                       measured_line_type_sums, septic_plane_hit,
                       septic_plane_scan)
from .ffield import ExtField2, PrimeField, is_prime, primes_below
from .polyform import (FormHomogeneityError, FormSyntaxError, HomogeneousForm,
                       Monomial, form_from_pairs, parse_form, twist_s1,
                       twist_s2)
from .projgeom import (ProjLine, canonical_point, enumerate_lines,
                       enumerate_points, lines_meet, singular_points)
from .surfacecount import (CountReport, census, count_points,
                           count_points_diagonal, count_points_generic,
                           count_points_x, points_off_lines, rational_points)
from .surfacelines import (LineConfiguration, TransversalityEvidence,
                           fermat_expected_lines, lines_on_surface,
                           lines_on_surface_slow, pairwise_intersection_sum,
                           transversality_along_line)

__version__ = "0.1.0"
