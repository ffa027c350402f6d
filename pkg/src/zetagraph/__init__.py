"""Exact zeta functions of graphs, digraphs and group coverings, with a
numeric engine for spectral formulas, torus limits and Mahler measures."""

from .exactpoly import (ComplexPoly, RationalFn, RationalPoly,
                        RationalizationError, TruncatedSeries,
                        DEFAULT_SERIES_ORDER, squarefree_factors)
from .graphs import (Digraph, Graph, GraphError, build_graph, complete_graph,
                     cycle_graph, digraph_matrices, graph_matrices,
                     struct_matrices, symmetric_digraph, torus_graph)
from .lfunctions import (CoverDecomposition, LReciprocal, alt_L_reciprocal,
                         cover_zeta_decomposition, digraph_cover_alt_zeta,
                         ihara_L_reciprocal)
from .linalg import block2x2, cpoly_det, kron, poly_det
from .oracle import (BudgetExceededError, CorrespondenceReport, CycleClass,
                     WalkCountMatrices, correspondence_check,
                     count_reduced_alt_cycles, count_reduced_cycles,
                     cycle_counts_from_reciprocal, euler_truncation,
                     nbtaw_matrices, prime_classes, resolvent_identity_check)
from .spectral import (DomainError, QuadratureGrid, Spectrum,
                       laplacian_spectrum, mahler_identity_check,
                       mahler_measure, torus_finite_reciprocal, torus_limit,
                       transition_spectrum, zeta_a_spectral)
from .voltage import (Group, Representation, VoltageError, VoltageGraph,
                      cyclic_characters, cyclic_voltage_graph, derived_digraph,
                      derived_graph, voltage_matrices)
from .zeta import (ZetaReciprocal, alt_reciprocal_digraph, alt_reciprocal_graph,
                   generalized_alt_zeta_series, ihara_reciprocal,
                   regular_spectral_reciprocal)

__version__ = "0.1.0"
