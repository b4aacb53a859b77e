# %%
"""Report rendering for the command line: JSON documents and CSV tables on stdout."""
import json
from typing import Dict, List, Optional

import pandas as pd

from src.games.core import Coalition, members
from src.games.weights import ProbabilityProfile
from src.models.indexes import InteractionTable
from src.models.verification import VerificationReport
from src.utils.utils import clean, format_float

JSON = "json"
CSV = "csv"
FLOAT_FORMAT = "%.17g"


def dumps(obj: Dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def to_csv(df: pd.DataFrame) -> str:
    return df.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def profile_json(p: Optional[ProbabilityProfile]) -> Optional[List[float]]:
    if p is None:
        return None
    return [clean(v) for v in p.p]


def braces(s: Coalition) -> str:
    """{1,3} style label of a coalition"""
    return "{" + ",".join(str(i) for i in members(s)) + "}"


# %%
def index_report(table: InteractionTable, rows: List[Coalition], fmt: str) -> str:
    """one row per coalition: members, cardinality, value"""
    if fmt == CSV:
        df = pd.DataFrame(
            {
                "coalition": [braces(s) for s in rows],
                "cardinality": [len(members(s)) for s in rows],
                "value": [clean(table.values[s]) for s in rows],
            }
        )
        return to_csv(df)
    return dumps(
        {
            "family": table.family,
            "n": table.n,
            "profile": profile_json(table.profile),
            "rows": [
                {"coalition": members(s), "cardinality": len(members(s)), "value": clean(table.values[s])}
                for s in rows
            ],
        }
    )


def approx_report(
    n: int, k: int, p: ProbabilityProfile, residual: float, r2: Optional[float], fmt: str
) -> str:
    summary = {
        "n": n,
        "k": k,
        "profile": profile_json(p),
        "residual_norm": clean(residual),
        "r_squared": None if r2 is None else clean(r2),
    }
    if fmt == CSV:
        row = dict(summary, profile=",".join(format_float(v) for v in p.p))
        return to_csv(pd.DataFrame([row]))
    return dumps(summary)


def verify_report(report: VerificationReport, fmt: str, errors: bool = False) -> str:
    if fmt == CSV:
        return to_csv(pd.DataFrame([c.to_json(errors) for c in report.checks]))
    return dumps(report.to_json(errors))
