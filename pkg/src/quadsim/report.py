"""Deterministic report emission: JSON, CSV, text tables, SVG plots."""

import json
import os

from .svgplot import line_plot

__all__ = ["emit_report"]


def _format_cell(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def _text_table(headers, rows):
    cells = [[_format_cell(v) for v in row] for row in rows]
    widths = [len(h) for h in headers]
    for row in cells:
        for i, c in enumerate(row):
            widths[i] = max(widths[i], len(c))
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip(),
        "  ".join("-" * widths[i] for i in range(len(headers))),
    ]
    for row in cells:
        lines.append("  ".join(row[i].rjust(widths[i]) for i in range(len(row))).rstrip())
    return "\n".join(lines) + "\n"


def emit_report(report, outdir, formats=("csv", "json", "svg", "table")):
    """Write a TrialReport's artifacts; returns {artifact name: path}.

    Outputs are deterministic byte-for-byte: no timestamps, canonical JSON,
    repr-based floats.  Refuses to emit a report with no metrics.
    """
    if not report.metrics:
        raise ValueError(f"report '{report.name}' has no metrics to emit")
    os.makedirs(outdir, exist_ok=True)
    paths = {}

    def _write(name, text):
        path = os.path.join(outdir, name)
        with open(path, "w") as fh:
            fh.write(text)
        paths[name] = path

    if "json" in formats:
        doc = {
            "name": report.name,
            "metrics": report.metrics,
            "provenance": report.provenance,
            "failures": report.failures,
        }
        _write(f"{report.name}.json", json.dumps(doc, indent=2, sort_keys=True) + "\n")
    if "csv" in formats:
        lines = ["metric,value"]
        for k, v in report.metrics.items():
            lines.append(f"{k},{repr(float(v)) if isinstance(v, float) else v}")
        _write(f"{report.name}_metrics.csv", "\n".join(lines) + "\n")
    if "table" in formats:
        for tname, table in report.tables.items():
            _write(f"{report.name}_{tname}.txt", _text_table(table["headers"], table["rows"]))
    if "svg" in formats:
        for cname, curve in report.curves.items():
            text = line_plot(
                curve["series"],
                title=curve.get("title", cname),
                xlabel=curve.get("xlabel", ""),
                ylabel=curve.get("ylabel", ""),
                equal_axes=curve.get("equal_axes", False),
            )
            _write(f"{report.name}_{cname}.svg", text)
    report.artifacts = dict(paths)
    return paths
