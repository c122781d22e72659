"""Figure presets: spectrum sweeps with the exceptional points overlaid, as CSV and SVG."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .constraints import exceptional_couplings
from .model import Branch, ModelParams, exceptional_energy
from .spectrum import DEFAULT_NMAX, SpectrumTable, sweep_levels

G_MIN, G_MAX, STEPS, LEVELS = 0.0, 1.2, 241, 14
MAX_N = 5


@dataclass(frozen=True)
class Preset:
    name: str
    delta: Fraction
    epsilon: Fraction
    omega: Fraction = Fraction(1)
    crossing: bool = True

    @property
    def params(self) -> ModelParams:
        return ModelParams(self.omega, Fraction(0), self.delta, self.epsilon)

    @property
    def branches(self) -> tuple:
        # at epsilon = omega/2 the MINUS points sit on top of the PLUS ones
        return (Branch.PLUS,) if self.crossing else (Branch.PLUS, Branch.MINUS)


PRESETS = {
    "fig1": Preset("fig1", Fraction(6, 5), Fraction(1, 2)),
    "fig2": Preset("fig2", Fraction(3, 2), Fraction(1, 2)),
    "fig3": Preset("fig3", Fraction(6, 5), Fraction(3, 10), crossing=False),
}


@dataclass(frozen=True)
class ExceptionalPoint:
    n: int
    branch: Branch
    g: float
    energy: float


def exceptional_points(p: ModelParams, branches=(Branch.PLUS,), max_n: int = MAX_N, g_max: float = G_MAX):
    out = []
    for branch in branches:
        for n in range(1, max_n + 1):
            for g in exceptional_couplings(p, n, branch).couplings_g:
                if g <= g_max:
                    e = exceptional_energy(p.as_float().with_g(g), n, branch)
                    out.append(ExceptionalPoint(n, branch, g, e))
    return out


def run_preset(name: str, n_max: int = DEFAULT_NMAX, steps: int = STEPS, k: int = LEVELS):
    preset = PRESETS[name]
    points = exceptional_points(preset.params, preset.branches)
    table = sweep_levels(preset.params, G_MIN, G_MAX, steps, k, n_max, extra_g=[pt.g for pt in points])
    return preset, table, points


def table_to_csv(table: SpectrumTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    k = table.levels.shape[1]
    writer.writerow(["g"] + [f"E_{i}" for i in range(1, k + 1)])
    for g, row in table.rows():
        writer.writerow([f"{g:.12g}"] + [f"{v:.12g}" for v in row])
    return buf.getvalue()


def read_csv(text: str) -> tuple[np.ndarray, np.ndarray]:
    rows = list(csv.reader(io.StringIO(text)))
    data = np.array([[float(v) for v in r] for r in rows[1:]])
    return data[:, 0], data[:, 1:]


def points_to_csv(points) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "branch", "g", "E"])
    for pt in points:
        writer.writerow([pt.n, pt.branch.value, f"{pt.g:.12g}", f"{pt.energy:.12g}"])
    return buf.getvalue()


def check_figure(g, levels, points, crossing: bool, tol: float = 1e-5) -> list[dict]:
    """For every exceptional point: does some level pass through it, and how many coincide."""
    out = []
    for pt in points:
        i = int(np.argmin(np.abs(g - pt.g)))
        dist = np.abs(levels[i] - pt.energy)
        hits = int(np.count_nonzero(dist <= tol))
        out.append(
            {
                "n": pt.n,
                "branch": pt.branch.value,
                "g": pt.g,
                "E": pt.energy,
                "min_distance": float(dist.min()),
                "multiplicity": hits,
                "ok": bool(dist.min() <= tol and hits == (2 if crossing else 1)),
            }
        )
    return out


# --------------------------------------------------------------------------
# SVG

_COLORS = {Branch.PLUS: "#1f4fd1", Branch.MINUS: "#d12b1f"}
_POINT_COLORS = ["#d12b1f", "#1f4fd1", "#1d9a3c", "#8b3fb8", "#d18a1f"]


def table_to_svg(preset: Preset, table: SpectrumTable, points, width=640, height=480) -> str:
    pad = 50
    g = table.g_grid
    lv = table.levels
    e_lo = float(np.floor(lv.min()))
    e_hi = float(np.ceil(lv.max()))

    def sx(v):
        return pad + (v - g[0]) / (g[-1] - g[0]) * (width - 2 * pad)

    def sy(v):
        return height - pad - (v - e_lo) / (e_hi - e_lo) * (height - 2 * pad)

    def polyline(xs, ys, color, w):
        pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(xs, ys) if e_lo <= b <= e_hi)
        return f'<polyline fill="none" stroke="{color}" stroke-width="{w}" points="{pts}"/>'

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>',
        f'<text x="{width / 2}" y="{height - 12}" text-anchor="middle" font-size="14">g</text>',
        f'<text x="14" y="{height / 2}" font-size="14">E</text>',
    ]
    for t in np.linspace(g[0], g[-1], 7):
        parts.append(f'<text x="{sx(t):.1f}" y="{height - pad + 16}" text-anchor="middle" font-size="11">{t:.1f}</text>')
    for t in np.arange(e_lo, e_hi + 1):
        parts.append(f'<text x="{pad - 6}" y="{sy(t) + 4:.1f}" text-anchor="end" font-size="11">{t:.0f}</text>')
    for j in range(lv.shape[1]):
        parts.append(polyline(g, lv[:, j], "#999999", 1))
    fine = np.linspace(g[0], g[-1], 121)
    p = preset.params.as_float()
    for branch in preset.branches:
        for n in range(1, MAX_N + 1):
            parts.append(polyline(fine, [exceptional_energy(p.with_g(x), n, branch) for x in fine], _COLORS[branch], 2.5))
    for pt in points:
        color = _POINT_COLORS[(pt.n - 1) % len(_POINT_COLORS)]
        parts.append(f'<circle cx="{sx(pt.g):.2f}" cy="{sy(pt.energy):.2f}" r="4" fill="none" stroke="{color}" stroke-width="1.5"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
