"""Minimal deterministic SVG line plots (no plotting dependency)."""

import math

__all__ = ["line_plot"]

_PALETTE = ("#4363d8", "#e6194b", "#3cb44b", "#f58231", "#911eb4", "#46f0f0", "#808000")
_W, _H = 640, 420
_ML, _MR, _MT, _MB = 64, 16, 34, 48


def _f(x):
    return f"{x:.3f}"


def _nice_ticks(lo, hi, n=5):
    if hi <= lo:
        hi = lo + 1.0
    span = hi - lo
    raw = span / max(n - 1, 1)
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    start = math.ceil(lo / step) * step
    ticks = []
    v = start
    while v <= hi + 1e-12 * span:
        ticks.append(0.0 if abs(v) < 1e-12 * span else v)
        v += step
    return ticks


def line_plot(series, title="", xlabel="", ylabel="", path=None, equal_axes=False):
    """Render labelled (x, y) series to an SVG string (and optionally a file).

    ``series`` is a mapping label -> (x array-like, y array-like); insertion
    order fixes colors and legend order, keeping output deterministic.
    """
    xs, ys = [], []
    for x, y in series.values():
        xs.extend(float(v) for v in x)
        ys.extend(float(v) for v in y)
    if not xs:
        raise ValueError("no data to plot")
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 - x0 < 1e-12:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 - y0 < 1e-12:
        y0, y1 = y0 - 0.5, y1 + 0.5
    padx = 0.05 * (x1 - x0)
    pady = 0.05 * (y1 - y0)
    x0, x1 = x0 - padx, x1 + padx
    y0, y1 = y0 - pady, y1 + pady
    if equal_axes:
        spanx, spany = x1 - x0, y1 - y0
        cw = (_W - _ML - _MR) / spanx
        ch = (_H - _MT - _MB) / spany
        scale = min(cw, ch)
        dx = (_W - _ML - _MR) / scale - spanx
        dy = (_H - _MT - _MB) / scale - spany
        x0, x1 = x0 - dx / 2, x1 + dx / 2
        y0, y1 = y0 - dy / 2, y1 + dy / 2

    def sx(v):
        return _ML + (v - x0) / (x1 - x0) * (_W - _ML - _MR)

    def sy(v):
        return _H - _MB - (v - y0) / (y1 - y0) * (_H - _MT - _MB)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
    ]
    # axes frame
    out.append(
        f'<rect x="{_ML}" y="{_MT}" width="{_W - _ML - _MR}" height="{_H - _MT - _MB}" '
        'fill="none" stroke="#444444" stroke-width="1"/>'
    )
    for v in _nice_ticks(x0, x1):
        px = sx(v)
        out.append(
            f'<line x1="{_f(px)}" y1="{_H - _MB}" x2="{_f(px)}" y2="{_H - _MB + 5}" '
            'stroke="#444444" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{_f(px)}" y="{_H - _MB + 18}" font-size="11" text-anchor="middle" '
            f'fill="#222222">{v:g}</text>'
        )
    for v in _nice_ticks(y0, y1):
        py = sy(v)
        out.append(
            f'<line x1="{_ML - 5}" y1="{_f(py)}" x2="{_ML}" y2="{_f(py)}" '
            'stroke="#444444" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{_ML - 8}" y="{_f(py + 4)}" font-size="11" text-anchor="end" '
            f'fill="#222222">{v:g}</text>'
        )
    if title:
        out.append(
            f'<text x="{_W / 2:.1f}" y="20" font-size="14" text-anchor="middle" '
            f'fill="#000000">{title}</text>'
        )
    if xlabel:
        out.append(
            f'<text x="{_W / 2:.1f}" y="{_H - 10}" font-size="12" text-anchor="middle" '
            f'fill="#000000">{xlabel}</text>'
        )
    if ylabel:
        out.append(
            f'<text x="16" y="{_H / 2:.1f}" font-size="12" text-anchor="middle" '
            f'fill="#000000" transform="rotate(-90 16 {_H / 2:.1f})">{ylabel}</text>'
        )
    for i, (label, (x, y)) in enumerate(series.items()):
        color = _PALETTE[i % len(_PALETTE)]
        pts = " ".join(f"{_f(sx(float(a)))},{_f(sy(float(b)))}" for a, b in zip(x, y))
        out.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        ly = _MT + 16 + 16 * i
        out.append(
            f'<line x1="{_W - _MR - 120}" y1="{ly - 4}" x2="{_W - _MR - 96}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        out.append(
            f'<text x="{_W - _MR - 90}" y="{ly}" font-size="11" fill="#222222">{label}</text>'
        )
    out.append("</svg>")
    text = "\n".join(out) + "\n"
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text
