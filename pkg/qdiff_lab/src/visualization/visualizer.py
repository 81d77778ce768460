"""
SVG drawings for qdiff-lab reports.

Newton-Ramis polygons are drawn as point sets with their two boundary chains
and slope labels; size reports as partial-sum curves split by place class.
Output is byte-stable: fixed SVG hash salt and no date metadata.
"""

from pathlib import Path
from typing import List, Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from core import console  # noqa: E402
from places.size import SizeReport  # noqa: E402
from polygons.newton_polygon import NewtonPolygon, edge_slope, slope_label  # noqa: E402

SVG_SALT = "qdiff-lab"
SVG_METADATA = {"Date": None, "Creator": "qdiff-lab"}

plt.rcParams["svg.hashsalt"] = SVG_SALT


class QDiffVisualizer:
    """
    Writes polygon and size-growth drawings as SVG.

    Args:
        output_dir: Directory for the drawings (created if missing)
    """

    def __init__(self, output_dir: str = "output"):
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)

    def _save(self, fig, output_filename: str) -> str:
        output_path = self.output_dir / output_filename
        fig.savefig(output_path, format="svg", metadata=SVG_METADATA)
        plt.close(fig)
        console.info(f"  drawing saved to: {output_path}")
        return str(output_path)

    def draw_polygon(
        self,
        poly: NewtonPolygon,
        output_filename: str = "polygon.svg",
        title: Optional[str] = None,
        figsize: tuple = (6, 5)
    ) -> str:
        """
        Draw a polygon with its lowest point at v = 0.

        Args:
            poly: The polygon
            output_filename: Name of the SVG file
            title: Figure title (defaults to the polygon form)
            figsize: Figure size (width, height) in inches

        Returns:
            Path to the saved drawing
        """
        poly = poly.normalized()
        fig, ax = plt.subplots(figsize=figsize)

        us = [u for u, _ in poly.points]
        vs = [v for _, v in poly.points]
        ax.scatter(us, vs, color="steelblue", zorder=3)

        left = min(us) - 1
        for chain, color in ((poly.lower, "black"), (poly.upper, "gray")):
            if poly.leftward and chain:
                # horizontal ray to the left of the first vertex
                u0, v0 = chain[0]
                ax.plot([left, u0], [v0, v0], color=color, linestyle="--", linewidth=1)
            ax.plot([p[0] for p in chain], [p[1] for p in chain], color=color, linewidth=1.5)
            for a, b in zip(chain, chain[1:]):
                ax.annotate(
                    slope_label(edge_slope(a, b)),
                    ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2),
                    textcoords="offset points", xytext=(4, 4),
                    fontsize=9, color=color
                )

        ax.set_xlabel("u (order)")
        ax.set_ylabel("v (x-degree)")
        ax.set_title(title or f"Newton-Ramis polygon ({poly.form})", fontsize=12, fontweight="bold")
        ax.grid(True, alpha=0.3, linestyle="--")
        ax.set_xlim(left - 0.5, max(us) + 0.5)
        ax.set_ylim(min(vs) - 0.5, max(vs) + 0.5)
        return self._save(fig, output_filename)

    def draw_size_growth(
        self,
        report,
        output_filename: str = "size_growth.svg",
        title: str = "Size partial sums",
        figsize: tuple = (8, 5)
    ) -> str:
        """
        Plot the partial sums of the size functional against n.

        Args:
            report: SizeReport or its DataFrame
            output_filename: Name of the SVG file
            title: Figure title
            figsize: Figure size (width, height) in inches

        Returns:
            Path to the saved drawing
        """
        df = report.to_dataframe() if isinstance(report, SizeReport) else report
        fig, ax = plt.subplots(figsize=figsize)
        for column, color in (("cyclotomic", "coral"), ("noncyclotomic", "seagreen"),
                              ("infinite", "slateblue"), ("total", "black")):
            ax.plot(df["n"], df[column], label=column, color=color,
                    linewidth=2 if column == "total" else 1)
        ax.set_xlabel("n")
        ax.set_ylabel("partial sum (units of log(1/d))")
        ax.set_title(title, fontsize=12, fontweight="bold")
        ax.legend(loc="upper left")
        ax.grid(True, alpha=0.3, linestyle="--")
        return self._save(fig, output_filename)

    def draw_polygons(self, polygons: Sequence[NewtonPolygon], stem: str) -> List[str]:
        """One drawing per polygon, named stem_0.svg, stem_1.svg, ..."""
        return [self.draw_polygon(p, f"{stem}_{i}.svg") for i, p in enumerate(polygons)]

