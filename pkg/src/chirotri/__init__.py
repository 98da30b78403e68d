"""Exact combinatorics of planar chirotopes.

Core objects: exact orientation tables (chirotopes) with a distinguished
extreme root, merge operations (join, meet, twist) on them, brute-force
triangulation enumeration as a ground-truth oracle, the recursive
weak-triangulation polynomial calculus that counts triangulations of merged
configurations, the double-circle counting pipeline with its asymptotic law,
and a CLI workbench with a composition expression language.
"""

from .chirotope import (AxiomReport, Chirotope, RootedChirotope,
                        chirotope_from_points, flip, read_chi, segments_cross,
                        write_chi)
from .compose import (LabelMap, chi1, chi_k, convex, double_circle,
                      double_circle_points, join, koch, meet, triangle, twist)
from .doublecircle import (AsymptoticConstants, KernelPoint, QkTable,
                           asymptotic_report, constants, dc_count, df_series,
                           f_closed, f_series, functional_equation_residual,
                           kernel, qk_sequence, qk_step, qk_step_closedform,
                           qk_step_reference, small_roots)
from .errors import (ChirotriError, ConstructionFailed, EmptyInput,
                     ExprSyntaxError, GeneralPositionViolation,
                     InternalInvariantViolation, InvalidTriple, MalformedFile,
                     NotARootedChirotope, NumericalInstability, OracleTooLarge,
                     OutOfRange, SharedEndpoint, TooLarge, TooSmall)
from .expr import EvalMode, eval_expr, load_rooted, parse_expr, print_expr
from .geometry import PointSet, convex_hull_labels, orient
from .oracle import (DEFAULT_ORACLE_CAP, WeakGround, brute_P, brute_Q,
                     count_triangulations, enumerate_triangulations,
                     enumerate_weak)
from .orderdb import (OrderTypeRecord, iter_order_types, read_order_types,
                      serialize_order_types)
from .polynomials import (BivarPoly, UnivarPoly, count_weak_join, join_P,
                          join_Q, meet_P, n_poly, q_from_p, swap_vars,
                          try_split)
from .search import SearchRow, koch_variant_search, rank_candidates, seed_score

__version__ = "0.1.0"
