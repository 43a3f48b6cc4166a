"""Machine-readable reports shared by every CLI command.

A report is plain data: method results with error estimates, string tables,
an agreement matrix and, for reproductions, computed-versus-printed entries.
JSON output is versioned through ``schema_version``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Optional

from .series_core import format_rational

SCHEMA_VERSION = "1.0"


@dataclass
class MethodResult:
    method: str
    value: float
    error: float
    exact: Optional[str] = None  # "num/den" when the method produced an exact rational
    metadata: dict = field(default_factory=dict)


@dataclass
class ReproEntry:
    label: str
    computed: str
    printed: str
    delta: float  # |computed - printed|, 0 for exact string matches
    tolerance: float
    match: bool
    note: str = ""


@dataclass
class Report:
    command: str
    provenance: list = field(default_factory=list)
    results: list = field(default_factory=list)
    tables: dict = field(default_factory=dict)  # name -> {"columns": [...], "rows": [[str, ...], ...]}
    agreement: dict = field(default_factory=dict)  # method -> method -> |difference|
    repro: list = field(default_factory=list)
    schema_version: str = SCHEMA_VERSION

    @property
    def mismatch(self) -> bool:
        return any(not e.match for e in self.repro)

    # -- building -------------------------------------------------------

    def add_table(self, name: str, columns: list, rows: list) -> None:
        self.tables[name] = {"columns": list(columns), "rows": [[str(c) for c in r] for r in rows]}

    def compute_agreement(self) -> None:
        self.agreement = {
            a.method: {b.method: abs(a.value - b.value) for b in self.results} for a in self.results
        }

    def exact_entry(self, label: str, computed, printed, note: str = "") -> ReproEntry:
        c = render(computed)
        p = render(printed)
        try:
            delta = float(abs(Fraction(c) - Fraction(p)))
        except ValueError:
            delta = 0.0 if c == p else 1.0
        entry = ReproEntry(label, c, p, delta, 0.0, c == p or delta == 0.0, note)
        self.repro.append(entry)
        return entry

    def decimal_entry(self, label: str, computed, printed: str, tolerance: Optional[float] = None,
                      places: Optional[int] = None, note: str = "") -> ReproEntry:
        """Compare a computed number with a printed decimal.

        Without an explicit tolerance the comparison is at the printed
        precision: the value rounded to that many places must equal it.
        """
        printed_dec = Decimal(printed)
        if places is None:
            places = max(0, -printed_dec.as_tuple().exponent)
        computed_dec = Decimal(str(computed)) if not isinstance(computed, Decimal) else computed
        delta = float(abs(computed_dec - printed_dec))
        if tolerance is None:
            quantum = Decimal(1).scaleb(-places)
            match = computed_dec.quantize(quantum, rounding="ROUND_HALF_UP") == printed_dec.quantize(quantum)
            tolerance = float(quantum) / 2
        else:
            match = delta <= tolerance
        shown = f"{computed_dec:f}" if isinstance(computed, (Decimal, str)) else f"{float(computed_dec):.{places + 3}f}"
        entry = ReproEntry(label, shown, printed, delta, tolerance, match, note)
        self.repro.append(entry)
        return entry

    # -- serialisation --------------------------------------------------

    def to_dict(self) -> dict:
        data = asdict(self)
        data["mismatch"] = self.mismatch
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        return cls(
            command=data["command"],
            provenance=list(data.get("provenance", [])),
            results=[MethodResult(**r) for r in data.get("results", [])],
            tables=dict(data.get("tables", {})),
            agreement=dict(data.get("agreement", {})),
            repro=[ReproEntry(**e) for e in data.get("repro", [])],
            schema_version=data.get("schema_version", SCHEMA_VERSION),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, allow_nan=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if self.results:
            writer.writerow(["section", "method", "value", "error", "exact"])
            for r in self.results:
                writer.writerow(["result", r.method, repr(r.value), repr(r.error), r.exact or ""])
        for name, table in self.tables.items():
            writer.writerow(["table", name] + table["columns"])
            for row in table["rows"]:
                writer.writerow(["row", name] + row)
        if self.repro:
            writer.writerow(["section", "label", "computed", "printed", "delta", "tolerance", "match", "note"])
            for e in self.repro:
                writer.writerow(["repro", e.label, e.computed, e.printed, repr(e.delta), repr(e.tolerance),
                                 "match" if e.match else "MISMATCH", e.note])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"divsum {self.command}"]
        if self.provenance:
            lines.append("sections: " + ", ".join(self.provenance))
        for r in self.results:
            exact = f"  (= {r.exact})" if r.exact else ""
            lines.append(f"  {r.method:<18} {fmt10(r.value)} ± {r.error:.2e}{exact}")
        if len(self.agreement) > 1:
            names = list(self.agreement)
            w = max(len(n) for n in names) + 2
            lines.append("  agreement |Δ|:")
            lines.append("    " + " " * w + "".join(f"{n:>{w}}" for n in names))
            for a in names:
                lines.append(f"    {a:<{w}}" + "".join(f"{self.agreement[a][b]:>{w}.2e}" for b in names))
        for name, table in self.tables.items():
            lines.append(f"  [{name}]")
            cols = table["columns"]
            rows = table["rows"]
            widths = [max([len(c)] + [len(r[i]) for r in rows if i < len(r)]) for i, c in enumerate(cols)]
            lines.append("    " + "  ".join(c.rjust(w) for c, w in zip(cols, widths)))
            for row in rows:
                lines.append("    " + "  ".join(v.rjust(w) for v, w in zip(row, widths)))
        for e in self.repro:
            flag = "match" if e.match else "MISMATCH"
            note = f"  # {e.note}" if e.note else ""
            lines.append(f"  {flag:<8} {e.label}: computed {e.computed}  printed {e.printed}  |Δ|={e.delta:.3g}{note}")
        if self.repro:
            lines.append(f"  mismatch: {str(self.mismatch).lower()}")
        return "\n".join(lines) + "\n"


def render(value) -> str:
    if isinstance(value, (Fraction, int)):
        return format_rational(Fraction(value))
    return str(value)


def fmt10(value: float) -> str:
    """10 significant digits."""
    return f"{value:.10g}"
