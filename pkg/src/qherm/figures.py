"""Figure rendering for the report path.

Every renderer writes PNG files next to the delimited output and returns
the list of paths it created.  All figures are plain matplotlib on the Agg
backend; nothing here opens a window.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

plt.rcParams.update({
    "figure.dpi": 110,
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
})

_FLOOR = 1e-17


def render_suite_figure(suite: dict, outdir: Path) -> list[Path]:
    """Horizontal bars of measured check values against their tolerances."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = []
    checks = suite["checks"]
    names = [c["name"] for c in checks]
    values = np.array([max(c["value"], _FLOOR) for c in checks])
    tols = np.array([max(c["tolerance"], _FLOOR) for c in checks])
    colors = ["#2a7e43" if c["passed"] else "#b03030" for c in checks]

    fig, ax = plt.subplots(figsize=(7.0, 0.45 * len(checks) + 1.2))
    y = np.arange(len(checks))
    ax.barh(y, values, color=colors, height=0.55, label="measured")
    ax.plot(tols, y, "k|", markersize=12, label="tolerance")
    ax.set_yticks(y, names)
    ax.set_xscale("log")
    ax.set_xlabel("deviation (log scale)")
    ax.set_title(f"suite: {suite['suite']}"
                 f" [{'pass' if suite['passed'] else 'FAIL'}]")
    ax.invert_yaxis()
    ax.legend(loc="lower right")
    fig.tight_layout()
    path = outdir / f"verify_{suite['suite']}.png"
    fig.savefig(path)
    plt.close(fig)
    paths.append(path)

    paths.extend(_render_details(suite, outdir))
    return paths


def _render_details(suite: dict, outdir: Path) -> list[Path]:
    paths = []
    for check in suite["checks"]:
        detail = check.get("detail") or {}
        if "residuals" in detail and "h" in detail:
            fig, ax = plt.subplots(figsize=(4.2, 3.2))
            h = np.asarray(detail["h"])
            res = np.asarray(detail["residuals"])
            ax.loglog(h, res, "o-", label="residual")
            scale = res[0] / h[0] ** 2
            ax.loglog(h, scale * h ** 2, "--", label="slope-2 reference")
            ax.set_xlabel("step h")
            ax.set_ylabel("residual")
            ax.set_title(f"{check['name']} (slope "
                         f"{detail.get('slope', float('nan')):.3f})")
            ax.legend()
            fig.tight_layout()
            path = outdir / f"verify_{suite['suite']}_{check['name']}.png"
            fig.savefig(path)
            plt.close(fig)
            paths.append(path)
        for key in ("gram_abs", "entries"):
            if key in detail:
                matrix = np.asarray(detail[key])
                fig, ax = plt.subplots(figsize=(4.0, 3.4))
                img = ax.imshow(np.log10(np.maximum(matrix, _FLOOR)),
                                cmap="viridis")
                fig.colorbar(img, ax=ax, label="log10 |entry|")
                ax.set_title(check["name"])
                ax.set_xlabel("j")
                ax.set_ylabel("i")
                fig.tight_layout()
                path = outdir / (f"verify_{suite['suite']}_"
                                 f"{check['name']}.png")
                fig.savefig(path)
                plt.close(fig)
                paths.append(path)
    return paths


def render_report_figures(report: dict, outdir: Path) -> list[Path]:
    paths = []
    for suite in report["suites"]:
        paths.extend(render_suite_figure(suite, outdir))
    return paths


def render_kernel_grid_figure(components: np.ndarray, values: np.ndarray,
                              kernel: str, outdir: Path,
                              reference=None) -> list[Path]:
    """Diagonal kernel values against |q|^2, with an optional closed-form
    reference curve."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    norm_sq = np.sum(components ** 2, axis=1)
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    ax.semilogy(norm_sq, np.maximum(values, _FLOOR), ".", markersize=2,
                alpha=0.4, label="grid values")
    if reference is not None:
        order = np.argsort(norm_sq)
        ax.semilogy(norm_sq[order], np.maximum(reference[order], _FLOOR),
                    "r-", linewidth=0.8, label="closed form")
    ax.set_xlabel("|q|^2")
    ax.set_ylabel("diagonal kernel value")
    ax.set_title(f"kernel {kernel}: diagonal over the component grid")
    ax.legend()
    fig.tight_layout()
    path = outdir / f"kernel_grid_{kernel}.png"
    fig.savefig(path)
    plt.close(fig)
    return [path]


def render_planar_kernel_figure(x: np.ndarray, y: np.ndarray,
                                values: np.ndarray, kernel: str,
                                outdir: Path) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(4.6, 3.6))
    grid = values.reshape(len(np.unique(x)), -1)
    img = ax.imshow(np.log10(np.maximum(np.abs(grid), _FLOOR)).T,
                    origin="lower",
                    extent=[x.min(), x.max(), y.min(), y.max()],
                    aspect="auto", cmap="magma")
    fig.colorbar(img, ax=ax, label="log10 |value|")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(f"kernel {kernel}: diagonal over the plane")
    fig.tight_layout()
    path = outdir / f"kernel_grid_{kernel}.png"
    fig.savefig(path)
    plt.close(fig)
    return [path]
