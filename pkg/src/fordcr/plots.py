"""Matplotlib renderings of computed faces and the boundary tiling.

Everything here is plain floating point drawn on top of certified
exact data; nothing in the verification pipeline reads these pictures
back.  Faces are drawn in log coordinates (arg z1, arg z2) / 2 pi of
their own Giraud chart, one panel per 2-face, with the ideal boundary
(the arcs on the ball carrier 0) in red and vertices labelled by the
word of their stabilizer.
"""

import math

import matplotlib

matplotlib.use("Agg")

from matplotlib import pyplot as plt

from .giraud import branch_parametrize
from .group import bisector_word, word_name

TWO_PI = 2.0 * math.pi


def _angle(x, y):
    return math.atan2(y, x)


def _log_coords(z1, z2):
    return (_angle(z1.real, z1.imag) / TWO_PI,
            _angle(z2.real, z2.imag) / TWO_PI)


def _param_angle(rec, axis):
    x1, y1, x2, y2 = rec.floats()
    return _angle(x1, y1) if axis == 0 else _angle(x2, y2)


def _sweep(arc, n):
    """The list of parameter angles from start to end through sample."""
    if arc.is_loop():
        a0 = _param_angle(arc.sample, arc.axis)
        return [a0 + TWO_PI * i / n for i in range(n + 1)]
    a0 = _param_angle(arc.start, arc.axis)
    a1 = _param_angle(arc.end, arc.axis)
    am = _param_angle(arc.sample, arc.axis)
    fwd = (a1 - a0) % TWO_PI
    mid = (am - a0) % TWO_PI
    span = fwd if mid <= fwd else fwd - TWO_PI
    return [a0 + span * i / n for i in range(n + 1)]


def arc_polyline(face, arc, n=120):
    """Floating point (u, v) log-coordinate samples along one arc."""
    fn = face.fn(arc.carrier)
    if arc.axis == 1:
        fn = fn.swap()
    try:
        _, top, bottom = branch_parametrize(fn)
    except ValueError:
        # the carrier does not constrain the second coordinate; draw
        # the straight parameter segment at the sample's other angle
        other = _param_angle(arc.sample, 1 - arc.axis)
        pts = []
        for t in _sweep(arc, n):
            u, v = t / TWO_PI, other / TWO_PI
            pts.append((u, v) if arc.axis == 0 else (v, u))
        return _split_wraps(pts)
    branch = top if arc.branch > 0 else bottom
    pts = []
    for t in _sweep(arc, n):
        z1 = complex(math.cos(t), math.sin(t))
        z2 = branch(z1)
        u, v = _log_coords(z1, z2)
        pts.append((u, v) if arc.axis == 0 else (v, u))
    return _split_wraps(pts)


def _split_wraps(pts):
    """Break a polyline where a coordinate jumps across the cut."""
    runs = [[pts[0]]]
    for prev, cur in zip(pts, pts[1:]):
        if max(abs(cur[0] - prev[0]), abs(cur[1] - prev[1])) > 0.5:
            runs.append([])
        runs[-1].append(cur)
    return [r for r in runs if len(r) > 1]


def _vertex_label(side_complex, rec):
    for v in side_complex.finite_vertices:
        if any(rec is cp for cp in v.chart_points):
            return "p_%s" % (v.word if v.word else "?"), "finite"
    for v in side_complex.ideal_vertices:
        if any(rec is cp for cp in v.chart_points):
            return None, "ideal"
    return None, None


def _draw_face(ax, side_complex, index, cls):
    face = cls.face
    for arc in face.arcs:
        ideal = arc.carrier == 0
        for run in arc_polyline(face, arc):
            ax.plot([p[0] for p in run], [p[1] for p in run],
                    color="red" if ideal else "black",
                    linewidth=1.4 if ideal else 1.0)
        if not ideal:
            x1, y1, x2, y2 = arc.sample.floats()
            u, v = _log_coords(complex(x1, y1), complex(x2, y2))
            ax.annotate(str(arc.carrier), (u, v), fontsize=7,
                        color="gray", ha="center")
    seen = set()
    for arc in face.arcs:
        for rec in arc.endpoints():
            if id(rec) in seen:
                continue
            seen.add(id(rec))
            x1, y1, x2, y2 = rec.floats()
            u, v = _log_coords(complex(x1, y1), complex(x2, y2))
            label, kind = _vertex_label(side_complex, rec)
            if kind == "ideal":
                ax.plot([u], [v], "o", mfc="white", mec="red", ms=5)
            else:
                ax.plot([u], [v], "ko", ms=4)
            if label:
                ax.annotate(label, (u, v), fontsize=7,
                            xytext=(3, 3), textcoords="offset points")
    ax.set_title("F_{%d,%d}  (%s)" % (side_complex.side, index,
                                      word_name(bisector_word(index))),
                 fontsize=8)
    ax.tick_params(labelsize=6)
    ax.set_aspect("equal", adjustable="datalim")


def face_figure(side_complex, path):
    """Render every 2-face of a side complex into one SVG file."""
    ridges = sorted(side_complex.ridges().items())
    ncols = 3
    nrows = max(1, (len(ridges) + ncols - 1) // ncols)
    fig, axes = plt.subplots(nrows, ncols,
                             figsize=(3.2 * ncols, 3.0 * nrows))
    flat = axes.ravel() if hasattr(axes, "ravel") else [axes]
    for ax in flat:
        ax.set_axis_off()
    for ax, (index, cls) in zip(flat, ridges):
        ax.set_axis_on()
        _draw_face(ax, side_complex, index, cls)
    fig.suptitle("Side %s: 2-faces in chart log coordinates"
                 % word_name(bisector_word(side_complex.side)), fontsize=10)
    fig.tight_layout(rect=(0, 0, 1, 0.96))
    fig.savefig(path, format="svg")
    plt.close(fig)
    return path


def curve_trace(fn, branch=+1, n=240):
    """Log-coordinate samples of one branch of a torus function's zero set.

    Plain floats for plotting; points where the discriminant is
    negative are skipped.
    """
    delta, top, bottom = branch_parametrize(fn)
    pick = top if branch > 0 else bottom
    out = []
    for i in range(n + 1):
        t = -math.pi + TWO_PI * i / n
        z1 = complex(math.cos(t), math.sin(t))
        if delta(z1) < 0:
            continue
        out.append(_log_coords(z1, pick(z1)))
    return out


def _hex_corner(center, k):
    ang = math.pi / 2 + k * math.pi / 3
    return (center[0] + math.cos(ang), center[1] + math.sin(ang))


def boundary_figure(tiling, path):
    """Schematic of the four core hexagons with labelled adjacencies."""
    fig, ax = plt.subplots(figsize=(11, 4))
    centers = {}
    for i, core in enumerate(sorted(tiling.hexagons)):
        centers[core] = (2.6 * i, 0.0)
    for core, cycle in sorted(tiling.hexagons.items()):
        c = centers[core]
        corners = [_hex_corner(c, k) for k in range(6)]
        ax.plot([p[0] for p in corners + corners[:1]],
                [p[1] for p in corners + corners[:1]], "k-", lw=1.0)
        ax.annotate(str(core), c, fontsize=12, ha="center", va="center")
        for k, triple in enumerate(cycle):
            p = corners[k]
            pos = (c[0] + 1.22 * (p[0] - c[0]), c[1] + 1.22 * (p[1] - c[1]))
            ax.annotate(",".join(map(str, triple)), pos, fontsize=6,
                        ha="center", va="center")
    for (core, a, b, nc, np_) in tiling.edges:
        cycle = tiling.hexagons[core]
        i = cycle.index(a)
        c = centers[core]
        pa, pb = _hex_corner(c, i), _hex_corner(c, (i + 1) % 6)
        mid = ((pa[0] + pb[0]) / 2, (pa[1] + pb[1]) / 2)
        ax.annotate("%d^%d" % (nc, np_), mid, fontsize=6, color="blue",
                    ha="center", va="center")
    ax.set_aspect("equal")
    ax.set_axis_off()
    ax.set_title("hexagon tiling of the boundary cylinder "
                 "(edge labels: neighbor core ^ G1 power)", fontsize=9)
    fig.savefig(path, format="svg")
    plt.close(fig)
    return path
