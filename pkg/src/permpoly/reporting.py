"""Report rendering: JSON (canonical), CSV (flattened) and rich tables."""

import csv
import io
from typing import Any

from rich.table import Table

from permpoly.schemas import Report, ReportCase

_TIMING_EXCLUDE: dict[str, Any] = {"summary": {"elapsed_ms"}}


def render_json(report: Report, timing: bool = False) -> str:
    """Report as indented JSON; elapsed time is left out unless timing is set."""
    return report.model_dump_json(indent=2, exclude=None if timing else _TIMING_EXCLUDE) + "\n"


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list | tuple):
        return " ".join(str(v) for v in value)
    return str(value)


def csv_columns(report: Report) -> list[str]:
    """input.<key>, classifier, oracle.<name>, agree and note, keys in first-seen order."""
    inputs: dict[str, None] = {}
    oracles: dict[str, None] = {}
    for case in report.cases:
        inputs.update(dict.fromkeys(case.input))
        oracles.update(dict.fromkeys(case.oracle_verdicts))
    return [
        *(f"input.{key}" for key in inputs),
        "classifier",
        *(f"oracle.{name}" for name in oracles),
        "agree",
        "note",
    ]


def _row(case: ReportCase) -> dict[str, str]:
    row = {f"input.{key}": _cell(value) for key, value in case.input.items()}
    row.update({f"oracle.{name}": _cell(value) for name, value in case.oracle_verdicts.items()})
    row["classifier"] = _cell(case.classifier_verdict)
    row["agree"] = _cell(case.agree)
    row["note"] = _cell(case.note)
    return row


def render_csv(report: Report) -> str:
    """One row per case."""
    columns = csv_columns(report)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for case in report.cases:
        writer.writerow(_row(case))
    return buffer.getvalue()


def build_table(report: Report, limit: int = 50) -> Table:
    """Human view: disagreements first, then the leading cases up to limit rows."""
    summary = report.summary
    status = "[green]passed[/green]" if report.passed else "[red]failed[/red]"
    caption = f"{summary.total} cases, {summary.disagreements} disagreements, {summary.pp_count} PPs"
    if summary.expected_pp_count is not None:
        caption += f" (predicted {summary.expected_pp_count})"
    table = Table(title=f"{report.suite} {status}", caption=caption)

    columns = [c for c in csv_columns(report) if c != "note"]
    for column in columns:
        table.add_column(column.removeprefix("input.").removeprefix("oracle."))
    table.add_column("note", style="dim")

    ordered = sorted(report.cases, key=lambda case: case.agree)
    for case in ordered[:limit]:
        values = _row(case)
        values["agree"] = "[green]yes[/green]" if case.agree else "[red]no[/red]"
        table.add_row(*(values.get(column, "") for column in columns), case.note or "")
    return table
