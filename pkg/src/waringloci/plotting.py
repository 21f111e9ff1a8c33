"""SVG rendering of plane loci in an affine chart.

Each irreducible factor becomes its own SVG group (``id="locus-factor-k"``)
so the components stay separable in the output file.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure

from .frontend import print_poly
from .polycore import symbridge
from .polycore.scalars import is_exact
from .polycore.mpoly import MPoly
from .results import LocusDescription

STYLES = [("tab:blue", "-"), ("tab:orange", "-"), ("tab:green", "-"), ("tab:red", "-"),
          ("tab:purple", "-"), ("tab:brown", "-"), ("tab:pink", "-"), ("tab:olive", "-")]


@dataclass
class PlotSpec:
    polys: list  # forms in 3 variables whose real zero sets are drawn
    chart: int = 2  # index of the coordinate set to 1
    window: tuple = (-5.0, 5.0, -5.0, 5.0)
    grid: int = 400
    out: str = "locus.svg"
    points: list = field(default_factory=list)  # ProjPoints drawn as markers
    title: str = ""
    axis_names: tuple = ("X", "Y", "Z")


@dataclass
class Component:
    gid: str
    factor: str
    kind: str  # "curve", "line-at-infinity", "no-real-points" or "point"


def parse_chart(text: str, names) -> int:
    """``z=1``, ``Z=1``, ``z`` or an index."""
    key = text.split("=")[0].strip()
    if key.isdigit():
        return int(key)
    low = [n.lower() for n in names]
    if key.lower() not in low:
        raise ValueError(f"chart variable {key!r} is not one of {list(names)}")
    return low.index(key.lower())


def evaluate_on_chart(P: MPoly, chart: int, U: np.ndarray, V: np.ndarray) -> np.ndarray:
    """P at the points whose chart coordinate is 1 and the other two are (U, V)."""
    free = [i for i in range(3) if i != chart]
    out = np.zeros(U.shape, dtype=complex)
    for e, c in P.terms.items():
        out += complex(c) * U ** e[free[0]] * V ** e[free[1]]
    return out


def _is_real(P: MPoly) -> bool:
    return all(complex(c).imag == 0 for c in P.terms.values())


def locus_factors(L: LocusDescription) -> list[MPoly]:
    if L.factors:
        return list(L.factors)
    out = []
    for eq in L.equations:
        if all(is_exact(c) for c in eq.terms.values()):
            out.extend(f for f, _ in symbridge.factor_gaussian(eq)[1])
        else:
            out.append(eq)
    return out


def spec_from_locus(L: LocusDescription, **kw) -> PlotSpec:
    polys, points = [], []
    if L.kind == "hypersurface":
        polys = locus_factors(L)
    elif L.kind == "points":
        points = list(L.points)
    elif L.kind == "union":
        for idx, part in L.parts:
            if tuple(idx) != (0, 1, 2):
                raise ValueError("only unions of full plane loci can be plotted")
            sub = spec_from_locus(part)
            polys += sub.polys
            points += sub.points
    else:
        raise ValueError(f"cannot plot a locus of kind {L.kind!r}")
    if polys and "axis_names" not in kw:
        kw["axis_names"] = tuple(polys[0].names)
    return PlotSpec(polys, points=points, **kw)


def render(spec: PlotSpec) -> list[Component]:
    """Write the SVG and return the drawn components."""
    x0, x1, y0, y1 = spec.window
    free = [i for i in range(3) if i != spec.chart]
    u = np.linspace(x0, x1, spec.grid)
    v = np.linspace(y0, y1, spec.grid)
    U, V = np.meshgrid(u, v)
    fig = Figure(figsize=(6, 6))
    FigureCanvasSVG(fig)
    ax = fig.add_subplot()
    comps = []
    for k, P in enumerate(spec.polys):
        gid = f"locus-factor-{k}"
        color, ls = STYLES[k % len(STYLES)]
        label = print_poly(P)
        if all(e[spec.chart] == P.degree for e in P.terms):
            # a power of the chart variable: its zero set is the line at infinity
            line = ax.plot([x0, x1, x1, x0, x0], [y0, y0, y1, y1, y0], color=color, ls="--", lw=2.5,
                           label=f"{label} = 0 (line at infinity)")[0]
            line.set_gid(gid)
            comps.append(Component(gid, label, "line-at-infinity"))
            continue
        if not _is_real(P):
            comps.append(Component(gid, label, "no-real-points"))
            continue
        vals = evaluate_on_chart(P, spec.chart, U, V).real
        cs = ax.contour(U, V, vals, levels=[0.0], colors=[color], linestyles=[ls], linewidths=1.6)
        cs.set_gid(gid)
        ax.plot([], [], color=color, ls=ls, label=f"{label} = 0")
        comps.append(Component(gid, label, "curve"))
    for k, P in enumerate(spec.points):
        c = [complex(x) for x in P.coords]
        if abs(c[spec.chart]) < 1e-12 or any(abs(z.imag) > 1e-12 for z in c):
            continue
        pu, pv = (c[free[0]] / c[spec.chart]).real, (c[free[1]] / c[spec.chart]).real
        m = ax.plot([pu], [pv], "ko", ms=5, label=str(P))[0]
        gid = f"locus-point-{k}"
        m.set_gid(gid)
        comps.append(Component(gid, str(P), "point"))
    ax.set_xlim(x0, x1)
    ax.set_ylim(y0, y1)
    ax.set_aspect("equal")
    names = spec.axis_names
    ax.set_xlabel(f"{names[free[0]]} / {names[spec.chart]}")
    ax.set_ylabel(f"{names[free[1]]} / {names[spec.chart]}")
    if spec.title:
        ax.set_title(spec.title)
    if comps:
        ax.legend(loc="upper right", fontsize=8)
    Path(spec.out).parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(spec.out, format="svg")
    return comps
