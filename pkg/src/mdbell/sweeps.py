"""Parameter sweeps serialized as CSV for figure reproduction.

Each figure id maps to one or two rectangular grids; every grid cell
produces exactly one row, with the marker ``NA`` in cells where the
swept function is not defined.  Output formatting is fixed (floats with
10 significant digits) so files are byte-stable across runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

from ._parallel import parallel_map
from .bounds import TSIRELSON_VIOLATION, v_g
from .info import i_banik, i_four, i_g, i_g_min, i_hall, i_interp, i_interp_min, i_interp_slice

NA = "NA"

Cell = Union[float, str, None]

FIGURE_IDS = ("fig1", "fig2", "fig3", "fig4", "fig7", "fig8")


@dataclass(frozen=True)
class AxisSpec:
    name: str
    start: float
    stop: float
    step: float
    count: int  # number of grid points

    def value(self, i: int) -> float:
        return self.start + i * self.step


@dataclass(frozen=True)
class SweepGrid:
    """One rectangular grid of computed values.

    ``rows`` has exactly prod(axis.count) entries: the axis coordinates
    followed by one value per field (``None`` marks an infeasible cell).
    """

    name: str
    axes: tuple[AxisSpec, ...]
    fields: tuple[str, ...]
    rows: tuple[tuple[Cell, ...], ...]

    def __post_init__(self):
        expected = 1
        for axis in self.axes:
            expected *= axis.count
        if len(self.rows) != expected:
            raise ValueError(
                f"grid {self.name}: {len(self.rows)} rows, expected {expected}"
            )


def _axis(name: str, start: float, stop: float, step: float) -> AxisSpec:
    count = int((stop - start) / step + 1e-9) + 1
    return AxisSpec(name, start, stop, step, count)


def _square_axis(name: str) -> AxisSpec:
    return AxisSpec(name, 0.0, 2.0, 0.01, 201)


def _fig1_slice(i: int) -> list[tuple[Cell, ...]]:
    m1 = i / 100
    return [(m1, j / 100, v_g(m1, j / 100)) for j in range(201)]


def _fig2_slice(i: int) -> list[tuple[Cell, ...]]:
    # Valid region (integer-exact test): m2 <= m1 and m1 + 2 m2 <= 2.
    rows: list[tuple[Cell, ...]] = []
    m1 = i / 100
    for j in range(201):
        m2 = j / 100
        rows.append((m1, m2, i_g(m1, m2) if j <= i and i + 2 * j <= 200 else None))
    return rows


def _fig7_slice(i: int) -> list[tuple[Cell, ...]]:
    rows: list[tuple[Cell, ...]] = []
    m1 = i / 100
    for j in range(201):
        m2 = j / 100
        rows.append((m1, m2, i_interp(m1, m2) if j <= i and i + 2 * j <= 200 else None))
    return rows


def _fig3_row(i: int) -> tuple[Cell, ...]:
    v = i * 0.005
    return (v, i_g_min(v).bits, i_hall(v), i_banik(v))


def _fig4_row(i: int) -> tuple[Cell, ...]:
    z = i * 0.002
    return (z, i_four(z))


def _fig8_slice_row(i: int) -> tuple[Cell, ...]:
    m2 = i * 0.002
    return (m2, i_interp_slice(TSIRELSON_VIOLATION, m2))


def _fig8_min_row(i: int) -> tuple[Cell, ...]:
    v = i * 0.005
    point = i_interp_min(v)
    return (v, point.bits, point.argmin_m2)


def sweep_figure(figure: str, jobs: Optional[int] = None) -> tuple[SweepGrid, ...]:
    """Compute the grid(s) behind one figure id."""
    if figure == "fig1":
        axes = (_square_axis("m1"), _square_axis("m2"))
        rows = [r for chunk in parallel_map(_fig1_slice, range(201), jobs) for r in chunk]
        return (SweepGrid("fig1", axes, ("v_g",), tuple(rows)),)
    if figure == "fig2":
        axes = (_square_axis("m1"), _square_axis("m2"))
        rows = [r for chunk in parallel_map(_fig2_slice, range(201), jobs) for r in chunk]
        return (SweepGrid("fig2", axes, ("i_g",), tuple(rows)),)
    if figure == "fig3":
        axis = _axis("v", 0.0, 2.0, 0.005)
        rows = parallel_map(_fig3_row, range(axis.count), jobs)
        return (SweepGrid("fig3", (axis,), ("i_g_min", "i_hall", "i_banik"), tuple(rows)),)
    if figure == "fig4":
        z_max = TSIRELSON_VIOLATION / 3
        count = int(z_max / 0.002) + 1
        axis = AxisSpec("z", 0.0, (count - 1) * 0.002, 0.002, count)
        rows = parallel_map(_fig4_row, range(count), jobs)
        return (SweepGrid("fig4", (axis,), ("i_four",), tuple(rows)),)
    if figure == "fig7":
        axes = (_square_axis("m1"), _square_axis("m2"))
        rows = [r for chunk in parallel_map(_fig7_slice, range(201), jobs) for r in chunk]
        return (SweepGrid("fig7", axes, ("i_interp",), tuple(rows)),)
    if figure == "fig8":
        m2_max = TSIRELSON_VIOLATION / 3
        count = int(m2_max / 0.002) + 1
        slice_axis = AxisSpec("x", 0.0, (count - 1) * 0.002, 0.002, count)
        slice_rows = parallel_map(_fig8_slice_row, range(count), jobs)
        slice_grid = SweepGrid(
            "tsirelson_slice", (slice_axis,), ("bits",), tuple(slice_rows)
        )
        min_axis = _axis("x", 0.0, 2.0, 0.005)
        min_rows = parallel_map(_fig8_min_row, range(min_axis.count), jobs)
        min_grid = SweepGrid(
            "min_curve", (min_axis,), ("bits", "argmin_m2"), tuple(min_rows)
        )
        return (slice_grid, min_grid)
    raise ValueError(f"unknown figure id {figure!r}; choose from {', '.join(FIGURE_IDS)}")


def _format_cell(value: Cell) -> str:
    if value is None:
        return NA
    if isinstance(value, str):
        return value
    return format(float(value), ".10g")


def _figure_columns(figure: str, grids: Sequence[SweepGrid]) -> list[str]:
    if figure == "fig8":
        return ["curve", "x", "bits", "argmin_m2"]
    grid = grids[0]
    return [axis.name for axis in grid.axes] + list(grid.fields)


def render_csv(figure: str, grids: Sequence[SweepGrid]) -> str:
    """Fixed-header CSV, one row per grid cell, byte-stable formatting."""
    columns = _figure_columns(figure, grids)
    lines = [",".join(columns)]
    multi = len(grids) > 1
    width = len(columns) - (1 if multi else 0)
    for grid in grids:
        for row in grid.rows:
            cells = [grid.name] if multi else []
            padded = tuple(row) + (None,) * (width - len(row))
            cells.extend(_format_cell(v) for v in padded)
            lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def render_json(figure: str, grids: Sequence[SweepGrid]) -> str:
    columns = _figure_columns(figure, grids)
    multi = len(grids) > 1
    width = len(columns) - (1 if multi else 0)
    rows = []
    for grid in grids:
        for row in grid.rows:
            out_row: list = [grid.name] if multi else []
            out_row.extend(tuple(row) + (None,) * (width - len(row)))
            rows.append(out_row)
    return json.dumps({"figure": figure, "columns": columns, "rows": rows}) + "\n"
