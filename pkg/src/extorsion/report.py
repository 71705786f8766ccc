"""Check results and the line-oriented report formats."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

FIELDS = ("case", "ref", "status", "millis", "seed")


@dataclass
class Report:
    ok: bool
    facts: Dict = field(default_factory=dict)


@dataclass(frozen=True)
class Record:
    case: str
    ref: str
    status: str
    millis: Optional[int]
    seed: Optional[int]

    def as_dict(self) -> Dict:
        return {k: getattr(self, k) for k in FIELDS}


def format_records(records: Iterable[Record]) -> str:
    return "".join(json.dumps(r.as_dict(), separators=(",", ":")) + "\n" for r in records)


def parse_records(text: str) -> List[Record]:
    out = []
    for line in text.splitlines():
        if line.strip():
            d = json.loads(line)
            out.append(Record(**{k: d[k] for k in FIELDS}))
    return out


def format_text(records: Iterable[Record]) -> str:
    records = list(records)
    width = max((len(r.case) for r in records), default=4)
    rwidth = max((len(r.ref) for r in records), default=3)
    lines = []
    for r in records:
        ms = "-" if r.millis is None else f"{r.millis}ms"
        seed = "-" if r.seed is None else str(r.seed)
        lines.append(f"{r.case:<{width}}  {r.ref:<{rwidth}}  {r.status:<4}  {ms:>8}  seed={seed}")
    failed = sum(r.status != "PASS" for r in records)
    lines.append(f"{len(records) - failed} passed, {failed} failed")
    return "\n".join(lines) + "\n"
