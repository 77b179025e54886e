"""
coxnorm/kernels/report.py
CheckReport: the lhs/rhs/margin/verdict record every check produces.
"""

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional


@dataclass
class CheckReport:
    """
    Outcome of one inequality or certificate check, lhs <= rhs.

    The verdict passes when margin = rhs - lhs >= -tol and every secondary
    margin (other inequalities checked alongside) is >= -tol as well.
    """
    name: str
    lhs: float
    rhs: float
    tol: float
    margin: float = field(init=False)
    verdict: bool = field(init=False)
    secondary: Dict[str, float] = field(default_factory=dict)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.lhs = float(self.lhs)
        self.rhs = float(self.rhs)
        self.margin = self.rhs - self.lhs
        self.secondary = {key: float(value) for key, value in self.secondary.items()}
        finite = math.isfinite(self.margin) and all(math.isfinite(m) for m in self.secondary.values())
        self.verdict = finite and self.margin >= -self.tol and \
            all(m >= -self.tol for m in self.secondary.values())

    @property
    def passed(self) -> bool:
        return self.verdict

    def to_dict(self) -> dict:
        data = asdict(self)
        data['verdict'] = 'pass' if self.verdict else 'fail'
        return data

    def to_json_line(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, default=_jsonable)


def _jsonable(value):
    if hasattr(value, 'tolist'):
        return value.tolist()
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    raise TypeError(f"Cannot serialise {type(value).__name__}")


def report(name: str, lhs: float, rhs: float, tol: float,
           secondary: Optional[Dict[str, float]] = None, **metadata) -> CheckReport:
    return CheckReport(name=name, lhs=lhs, rhs=rhs, tol=tol,
                       secondary=dict(secondary or {}), metadata=metadata)
