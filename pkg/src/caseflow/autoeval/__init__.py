"""Auto-evaluation: ground-truth metrics and argument-conditioned ratings."""

from caseflow.autoeval.judges import (
    Argument,
    AutoJudge,
    Importance,
    LikertRating,
    PlanCoverage,
    Stance,
    count_advice_turns,
    normalize,
)
from caseflow.autoeval.report import (
    EvalReport,
    likert_favorable,
    batch_means,
    evaluate_case,
    summary_csv,
    summary_rows,
)
from caseflow.autoeval.rubrics import (
    RUBRIC_CATALOG,
    RubricAnswer,
    RubricQuestion,
    aggregate_numeric_answers,
    get_question,
    read_answer_file,
)

__all__ = [
    "Argument",
    "AutoJudge",
    "EvalReport",
    "Importance",
    "LikertRating",
    "PlanCoverage",
    "RUBRIC_CATALOG",
    "RubricAnswer",
    "RubricQuestion",
    "Stance",
    "aggregate_numeric_answers",
    "batch_means",
    "count_advice_turns",
    "evaluate_case",
    "likert_favorable",
    "get_question",
    "normalize",
    "read_answer_file",
    "summary_csv",
    "summary_rows",
]
