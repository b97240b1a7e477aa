"""Odd clique minors at desk scale: model search, certified reductions,
tree-decomposition dynamic programs, odd cycle transversals and plane-graph
coloring extension."""

from .errors import (Disconnected, EmptyCut, InstanceTooLarge, LiftingFailure, OddMinorError, PreconditionViolation,
                     StateBudgetExceeded, TimeLimitExceeded, UnknownEdge)
from .graph import (BipartiteCertificate, Coloring, Graph, ListAssignment, ParityDSU, Separation, connected_components,
                    enumerate_separations, find_parity_path, is_bipartite)
from .oddmodel import (OddModel, Violation, find_clique_minor, find_odd_clique_model, odd_model_exists_bipartite_apex,
                       validate_odd_model)
from .pipeline import Config, SolveReport, conjecture_sweep, solve, verify_report
from .reductions import (ReductionStep, ReductionTrace, lift_coloring, op_contract_cut, op_delete_edges,
                         reduce_bipartite_side, reduce_independent_fan, reduce_low_degree, reduce_to_fixpoint)
from .structure import (BagClassification, Thresholds, chromatic_number, classify_bag, min_odd_cycle_transversal,
                        nearly_bipartite_coloring)

__version__ = "0.1.0"
