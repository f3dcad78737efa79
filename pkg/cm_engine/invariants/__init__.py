from cm_engine.invariants.lambdas import (
    LambdaReport,
    LambdaRow,
    lambda_from_links,
    lambda_from_relators,
    lambda_report,
)
from cm_engine.invariants.invariance import CheckResult, check_invariance
from cm_engine.invariants.milnor import MuBarReport, index_key, mu_bar, selection_reports
from cm_engine.invariants.reports import build_report, invariant_digest
from cm_engine.invariants.split import Obstruction, SplitReport, i_split_obstruction, is_completely_split

__all__ = [
    "CheckResult",
    "LambdaReport",
    "LambdaRow",
    "MuBarReport",
    "Obstruction",
    "SplitReport",
    "build_report",
    "check_invariance",
    "i_split_obstruction",
    "index_key",
    "invariant_digest",
    "is_completely_split",
    "lambda_from_links",
    "lambda_from_relators",
    "lambda_report",
    "mu_bar",
    "selection_reports",
]
