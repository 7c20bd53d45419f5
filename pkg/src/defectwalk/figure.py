"""Spectral picture: unit circle, essential-spectrum arcs, eigenvalue loci.

Produces a deterministic row table (series, omega, index, re, im) and a
static SVG 1.1 rendering of it. Loci are sampled over a user range of the
defect strength, split at the punctures omega = 0 and omega = 1; the curves
for positive omega are drawn dashed, for negative omega dotted, the arcs
solid black, the unit circle gray, and the four unitary-case (omega = -1)
eigenvalues as markers on the circle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .spectrum import eigenvalues, essential_spectrum_arcs

__all__ = ["FigureConfig", "FigureRow", "figure_rows", "render_svg", "rows_to_csv"]

# refinement offsets so both loci branches visibly approach the arc endpoints
_APPROACH_TO_ONE = (0.32, 0.16, 0.08, 0.04, 0.02, 0.01)
_EDGE_GAP = 0.02  # keep away from the omega = 0 puncture
_ONE_GAP = 0.0099  # keep away from the omega = 1 puncture


@dataclass(frozen=True)
class FigureRow:
    series: str  # unit_circle | sigma_arc | locus | marker
    omega: float | None
    index: int  # eigenvalue index 1..4, 0 for background curves
    re: float
    im: float


@dataclass(frozen=True)
class FigureConfig:
    omega_min: float = -3.0
    omega_max: float = 3.0
    samples: int = 121
    arc_samples: int = 181
    circle_samples: int = 257
    size: int = 640

    def __post_init__(self) -> None:
        if not (
            math.isfinite(self.omega_min)
            and math.isfinite(self.omega_max)
            and self.omega_min < self.omega_max
        ):
            raise ValueError(
                f"degenerate omega range [{self.omega_min!r}, {self.omega_max!r}]"
            )
        if self.samples < 8:
            raise ValueError(f"samples must be >= 8, got {self.samples!r}")


def _branch_grid(lo: float, hi: float, samples: int, positive: bool) -> list[float]:
    """Sample grid for one sign of omega, avoiding the punctures and adding a
    geometric approach to omega = 1 on the positive branch."""
    if positive:
        lo = max(lo, _EDGE_GAP)
    else:
        hi = min(hi, -_EDGE_GAP)
    if not lo < hi:
        return []
    n = max(2, samples)
    values = {lo + (hi - lo) * k / (n - 1) for k in range(n)}
    if positive:
        values = {v for v in values if abs(v - 1.0) > _ONE_GAP}
        for d in _APPROACH_TO_ONE:
            for v in (1.0 - d, 1.0 + d):
                if lo <= v <= hi:
                    values.add(v)
    return sorted(values)


def figure_rows(cfg: FigureConfig | None = None) -> list[FigureRow]:
    cfg = cfg or FigureConfig()
    rows: list[FigureRow] = []
    for k in range(cfg.circle_samples):
        t = 2.0 * math.pi * k / (cfg.circle_samples - 1)
        rows.append(FigureRow("unit_circle", None, 0, math.cos(t), math.sin(t)))
    for z in essential_spectrum_arcs(cfg.arc_samples):
        rows.append(FigureRow("sigma_arc", None, 0, float(z.real), float(z.imag)))
    for positive in (True, False):
        for om in _branch_grid(cfg.omega_min, cfg.omega_max, cfg.samples, positive):
            quad = eigenvalues(om)
            for j, lam in enumerate(quad, start=1):
                rows.append(FigureRow("locus", om, j, lam.real, lam.imag))
    if cfg.omega_min <= -1.0 <= cfg.omega_max:
        for j, lam in enumerate(eigenvalues(-1.0), start=1):
            rows.append(FigureRow("marker", -1.0, j, lam.real, lam.imag))
    return rows


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def rows_to_csv(rows: list[FigureRow], cfg: FigureConfig, version: str) -> str:
    lines = [
        f"# defectwalk {version} figure",
        f"# omega_min = {_fmt(cfg.omega_min)}, omega_max = {_fmt(cfg.omega_max)}, "
        f"samples = {cfg.samples}",
        "series,omega,index,re,im",
    ]
    for r in rows:
        om = "" if r.omega is None else _fmt(r.omega)
        lines.append(f"{r.series},{om},{r.index},{_fmt(r.re)},{_fmt(r.im)}")
    return "\n".join(lines) + "\n"


def _polyline(points: list[tuple[float, float]], style: str) -> str:
    coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
    return f'<polyline fill="none" {style} points="{coords}"/>'


@dataclass
class _Canvas:
    size: int
    half_extent: float
    margin: int = 24
    lines: list[str] = field(default_factory=list)

    def to_px(self, re: float, im: float) -> tuple[float, float]:
        scale = (self.size / 2.0 - self.margin) / self.half_extent
        return self.size / 2.0 + re * scale, self.size / 2.0 - im * scale


def render_svg(rows: list[FigureRow], cfg: FigureConfig | None = None) -> str:
    """Static SVG 1.1; every plotted point also appears in the CSV rows."""
    cfg = cfg or FigureConfig()
    half = 1.15
    for r in rows:
        half = max(half, abs(r.re), abs(r.im))
    cv = _Canvas(cfg.size, half * 1.06)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{cfg.size}" height="{cfg.size}" '
        f'viewBox="0 0 {cfg.size} {cfg.size}">',
        f'<rect width="{cfg.size}" height="{cfg.size}" fill="white"/>',
    ]
    # axes
    x0, y0 = cv.to_px(-cv.half_extent, 0.0)
    x1, y1 = cv.to_px(cv.half_extent, 0.0)
    out.append(
        f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y1:.2f}" '
        'stroke="#dddddd" stroke-width="1"/>'
    )
    x0, y0 = cv.to_px(0.0, -cv.half_extent)
    x1, y1 = cv.to_px(0.0, cv.half_extent)
    out.append(
        f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y1:.2f}" '
        'stroke="#dddddd" stroke-width="1"/>'
    )

    circle = [cv.to_px(r.re, r.im) for r in rows if r.series == "unit_circle"]
    if circle:
        out.append(_polyline(circle, 'stroke="#aaaaaa" stroke-width="1.2"'))

    arcs = [r for r in rows if r.series == "sigma_arc"]
    if arcs:
        split = len(arcs) // 2  # two arcs, equal sample counts
        for part in (arcs[:split], arcs[split:]):
            pts = [cv.to_px(r.re, r.im) for r in part]
            out.append(_polyline(pts, 'stroke="black" stroke-width="3"'))

    loci = [r for r in rows if r.series == "locus"]
    for j in (1, 2, 3, 4):
        # positive omega, split at the puncture omega = 1: dashed
        for segment in (
            [r for r in loci if r.index == j and r.omega is not None and 0 < r.omega < 1],
            [r for r in loci if r.index == j and r.omega is not None and r.omega > 1],
        ):
            if len(segment) >= 2:
                pts = [cv.to_px(r.re, r.im) for r in sorted(segment, key=lambda r: r.omega)]
                out.append(
                    _polyline(pts, 'stroke="#202020" stroke-width="1.4" stroke-dasharray="7 5"')
                )
        negative = [r for r in loci if r.index == j and r.omega is not None and r.omega < 0]
        if len(negative) >= 2:
            pts = [cv.to_px(r.re, r.im) for r in sorted(negative, key=lambda r: r.omega)]
            out.append(
                _polyline(pts, 'stroke="#202020" stroke-width="1.4" stroke-dasharray="2 4"')
            )

    for r in rows:
        if r.series == "marker":
            x, y = cv.to_px(r.re, r.im)
            out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="black"/>')

    out.append("</svg>")
    return "\n".join(out) + "\n"
