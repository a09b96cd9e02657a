"""Haar state computation on O(SL_q(3))."""

from .algorithm import StageError, full_algorithm
from .closed import cdh_bfg_ceg, rec_cdh_bfg_ceg, rec_cdh_ceg, source_matrix_solution, symmetry_orbit
from .relations import (LinearRelation, derive_linear_relation, dq_lift_relation,
                        dq_power_decomposition, haar_order1)
from .solver import (HaarTable, InconsistentSystemError, RankDeficiencyError, relation_pairs,
                     solve_order)
from .state import (CacheError, OrderLimitError, TableStore, default_store, haar, haar_poly, star,
                    weingarten_limit)

__all__ = [
    "CacheError",
    "HaarTable",
    "InconsistentSystemError",
    "LinearRelation",
    "OrderLimitError",
    "RankDeficiencyError",
    "StageError",
    "TableStore",
    "cdh_bfg_ceg",
    "default_store",
    "derive_linear_relation",
    "dq_lift_relation",
    "dq_power_decomposition",
    "full_algorithm",
    "haar",
    "haar_order1",
    "haar_poly",
    "rec_cdh_bfg_ceg",
    "rec_cdh_ceg",
    "relation_pairs",
    "solve_order",
    "source_matrix_solution",
    "star",
    "symmetry_orbit",
    "weingarten_limit",
]
