"""Exact localization engine for genus-zero curve counts on Gr(2,n) and
twisted counts on products of projective spaces."""

from .ratfunc import (PoleAtZero, Rational, TFunction, ZeroFunction, tf_add,
                      tf_div, tf_eval_at_zero, tf_mul, tf_sum,
                      tf_valuation_at_zero)
from .schubert import (CohomologyVector, InvalidDimension, MartinReport,
                       Partition2, classical_product, dual_partition,
                       gr_integral, martin_check, partition, partitions_in_box,
                       pp_integral, quantum_pieri_oracle, schur_eval,
                       three_point_invariant)
from .targets import (GenericityFailure, GrPoint, InvariantEdge, PPPoint,
                      WeightAssignment, WrongTarget, fixed_points, gr_point,
                      invariant_edges, is_diagonal, sample_weights, specialize,
                      tangent_weights, weight_assignment)
from .graphs import (CacheCorruption, FixedGraph, GraphWithSymmetry,
                     InvalidDegree, automorphism_order, canonical_form,
                     enumerate_graphs, enumerate_graphs_cached,
                     graph_from_canonical)
from .localization import (CorrespondenceReport, DegenerateWeights,
                           DimensionReport, OracleMismatch, PPInvariant,
                           correspondence_check, dimension_check,
                           edge_bundle_oracle, gr_invariant, gr_vdim,
                           graph_total, insertion_value, inv_euler_class,
                           pp_vdim, twist_value, twisted_pp_invariant,
                           vertex_factor)

__version__ = "0.1.0"
