from .reference import ReferenceComparison, compare_with_reference
from .schedule import Schedule, StagePlan, absolute_volume, plan_15to1_chain, plan_block_pipeline
from .search import grid_candidates, optimize
from .tables import TableRecord, emit_tables, mark_winners, pout_decades, records_to_json, write_csv

__all__ = [
    "ReferenceComparison",
    "Schedule",
    "StagePlan",
    "TableRecord",
    "absolute_volume",
    "compare_with_reference",
    "emit_tables",
    "grid_candidates",
    "mark_winners",
    "optimize",
    "plan_15to1_chain",
    "plan_block_pipeline",
    "pout_decades",
    "records_to_json",
    "write_csv",
]
