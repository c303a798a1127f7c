"""Discrete magnetic translations and their commutator phases.

A magnetic translation by displacement d acts on a sampled field as

    (V psi)(p) = exp(i * theta(p)) * psi(p - d)

where theta(p) is the gauge line integral along the straight segment from
p - d to p.  Displacements are exact grid multiples, so the shift is a pure
sample move and each per-sample phase is evaluated in closed form; the
operator is exactly unitary up to mass shifted off the grid edge.

The commutator of an x- and a y-translation applied to a probe localized at
(x, y) drags the probe once around the rectangle

    (x, y) -> (x+a, y) -> (x+a, y-b) -> (x, y-b) -> (x, y)

and multiplies it by exp(2*pi*i*alpha*w), w being the rectangle's winding
about the flux.  The closed form

    exp(i*(pi*alpha/2) * [eps(x) - eps(x+a)] * [eps(y) - eps(y-b)])

is the same number written through sign functions; the exponent product can
only be 0 or +-4.  ``commutator_phase_empirical`` composes the four
translations in the traversal order above, which fixes the operator-ordering
convention left open by the formula itself.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    NotGridMultiple,
    OnAxis,
    ProbeStraddlesAxis,
    SegmentThroughFlux,
)
from .fields import ComplexField, Grid2D, gaussian_field
from .gauge import FluxConfig, FluxLine, Polyline, segment_subtended_angles

__all__ = [
    "Axis",
    "MagneticTranslation",
    "CommutatorCase",
    "CommutatorRecord",
    "GRID_OFFSET_CELLS",
    "apply_magnetic_translation",
    "rectangle_path",
    "commutator_phase_closed_form",
    "commutator_phase_empirical",
    "commutator_grid",
    "default_probe_width",
    "commutator_sweep",
    "write_sweep_csv",
]

# Fractional cell offset that keeps a flux center off every grid line, applied
# by the grid builders (irrational ratios so no integer translation can hit it).
GRID_OFFSET_CELLS = (0.5 + 1.0 / math.sqrt(2931.0), 0.5 + 1.0 / math.sqrt(4099.0))


class Axis(enum.Enum):
    X = "x"
    Y = "y"


@dataclass(frozen=True)
class MagneticTranslation:
    axis: Axis
    displacement: float
    cfg: FluxConfig


@dataclass(frozen=True)
class CommutatorCase:
    """Probe center (x, y) and displacements (a, b) for one commutator check.

    The flux line sits at the origin.  None of x, x+a, y, y-b may vanish:
    the sign-function formula is undefined on the axes.
    """

    x: float
    y: float
    a: float
    b: float
    alpha: float

    def __post_init__(self) -> None:
        for name, value in (
            ("x", self.x),
            ("x+a", self.x + self.a),
            ("y", self.y),
            ("y-b", self.y - self.b),
        ):
            if abs(value) < 1e-12:
                raise OnAxis(f"{name} = {value} lies on a coordinate axis")

    def corners(self) -> np.ndarray:
        x, y, a, b = self.x, self.y, self.a, self.b
        return np.array([[x, y], [x + a, y], [x + a, y - b], [x, y - b]])


def _steps_of(displacement: float, spacing: float) -> int:
    steps = displacement / spacing
    nearest = round(steps)
    if abs(steps - nearest) > 1e-9 * max(1.0, abs(steps)):
        raise NotGridMultiple(
            f"displacement {displacement} is not an integer multiple of spacing {spacing}"
        )
    return int(nearest)


def _translation_phase(grid: Grid2D, axis: Axis, displacement: float, cfg: FluxConfig) -> np.ndarray:
    """theta(p) = line integral from p - d to p, for every grid sample p."""
    X, Y = grid.mesh()
    theta = np.zeros(grid.shape)
    if axis is Axis.X:
        x0, y0 = X - displacement, Y
    else:
        x0, y0 = X, Y - displacement
    for k, line in enumerate(cfg.lines):
        cx, cy = line.center
        ux, uy = x0 - cx, y0 - cy
        vx, vy = X - cx, Y - cy
        # segment/exclusion-disk overlap: constant-coordinate segments only
        if axis is Axis.X:
            perp = np.abs(uy)
            lo, hi = np.minimum(x0, X), np.maximum(x0, X)
            within = (cx > lo - cfg.singular_radius) & (cx < hi + cfg.singular_radius)
        else:
            perp = np.abs(ux)
            lo, hi = np.minimum(y0, Y), np.maximum(y0, Y)
            within = (cy > lo - cfg.singular_radius) & (cy < hi + cfg.singular_radius)
        end_hit = np.minimum(np.hypot(ux, uy), np.hypot(vx, vy)) < cfg.singular_radius
        if np.any((within & (perp < cfg.singular_radius)) | end_hit):
            raise SegmentThroughFlux(
                f"a translation segment enters the exclusion disk of flux {k}"
            )
        theta = theta + line.alpha * np.arctan2(ux * vy - uy * vx, ux * vx + uy * vy)
    return theta


def apply_magnetic_translation(field: ComplexField, t: MagneticTranslation) -> ComplexField:
    """Apply one magnetic translation; content beyond the grid edge is dropped."""
    grid = field.grid
    spacing = grid.dx if t.axis is Axis.X else grid.dy
    steps = _steps_of(t.displacement, spacing)
    theta = _translation_phase(grid, t.axis, t.displacement, t.cfg)
    shifted = np.zeros_like(field.values)
    if steps == 0:
        shifted[...] = field.values
    elif t.axis is Axis.X:
        if steps > 0:
            shifted[steps:, :] = field.values[:-steps, :]
        else:
            shifted[:steps, :] = field.values[-steps:, :]
    else:
        if steps > 0:
            shifted[:, steps:] = field.values[:, :-steps]
        else:
            shifted[:, :steps] = field.values[:, -steps:]
    return ComplexField(grid, np.exp(1j * theta) * shifted)


def rectangle_path(case: CommutatorCase) -> Polyline:
    """The closed rectangle a probe traverses under the commutator."""
    return Polyline(case.corners(), closed=True)


def _eps(t: float, tol: float) -> int:
    if abs(t) < tol:
        raise OnAxis(f"sign function argument {t} within {tol} of zero")
    return 1 if t > 0 else -1


def commutator_phase_closed_form(case: CommutatorCase, axis_tol: float = 1e-9) -> complex:
    """Sign-function form of the commutator phase.

    eps is the sign function about zero.  (A displayed threshold of 1 instead
    of 0 would contradict the requirement that the phase changes exactly when
    the swept rectangle crosses the flux, so it is treated as a typo.)
    """
    prod = (_eps(case.x, axis_tol) - _eps(case.x + case.a, axis_tol)) * (
        _eps(case.y, axis_tol) - _eps(case.y - case.b, axis_tol)
    )
    return complex(np.exp(1j * (math.pi * case.alpha / 2.0) * prod))


def default_probe_width(case: CommutatorCase) -> float:
    """1/8 of the least distance from any rectangle corner to a flux axis."""
    corners = case.corners()
    return float(np.min(np.abs(corners))) / 8.0


def commutator_grid(
    case: CommutatorCase,
    probe_width: float | None = None,
    spacing: float | None = None,
    margin_sigmas: float = 10.0,
) -> Grid2D:
    """A grid that holds the probe and all its translated images.

    The flux (origin) lands mid-cell plus the irrational offset so that no
    translation segment can pass through it, and the displacements a, b are
    exact multiples of the spacing.
    """
    width = default_probe_width(case) if probe_width is None else probe_width
    if spacing is None:
        spacing = 1.0 / 16.0
        while spacing > max(width, 1e-3):
            spacing /= 2.0
    for d in (case.a, case.b):
        _steps_of(d, spacing)
    corners = case.corners()
    pad = margin_sigmas * width + 2 * spacing
    lo = corners.min(axis=0) - pad
    hi = corners.max(axis=0) + pad
    offx, offy = GRID_OFFSET_CELLS
    # place sample i0 so that 0 = origin + (i0 + off) * spacing for each axis
    i0 = math.ceil((0.0 - lo[0]) / spacing - offx)
    j0 = math.ceil((0.0 - lo[1]) / spacing - offy)
    origin = (-(i0 + offx) * spacing, -(j0 + offy) * spacing)
    nx = max(16, i0 + 1 + math.ceil((hi[0] - 0.0) / spacing + offx))
    ny = max(16, j0 + 1 + math.ceil((hi[1] - 0.0) / spacing + offy))
    return Grid2D(nx, ny, spacing, spacing, origin)


def _probe(grid: Grid2D, case: CommutatorCase, width: float) -> ComplexField:
    return gaussian_field(grid, (case.x, case.y), width)


def _check_support(grid: Grid2D, case: CommutatorCase, probe: ComplexField) -> None:
    """>= 1 - 1e-6 of the probe mass must sit in the open quadrant cell of (x, y).

    The cell is bounded by the four lines through the flux on which the sign
    factors of the closed form change: x = 0, x = -a, y = 0, y = b.
    """
    X, Y = grid.mesh()
    bounds_x = sorted([0.0, -case.a])
    bounds_y = sorted([0.0, case.b])
    in_x = np.ones(grid.shape, dtype=bool)
    in_y = np.ones(grid.shape, dtype=bool)
    for bx in bounds_x:
        if case.x > bx:
            in_x &= X > bx
        else:
            in_x &= X < bx
    for by in bounds_y:
        if case.y > by:
            in_y &= Y > by
        else:
            in_y &= Y < by
    mass = float(np.sum(np.abs(probe.values[in_x & in_y]) ** 2)) * grid.cell_area
    total = probe.norm_sq()
    if mass < (1.0 - 1e-6) * total:
        raise ProbeStraddlesAxis(
            f"only {mass / total:.9f} of the probe mass lies in its quadrant cell"
        )


def commutator_phase_empirical(
    case: CommutatorCase,
    probe_width: float | None = None,
    grid: Grid2D | None = None,
    diagnostics: dict | None = None,
) -> complex:
    """<psi, Vx(a) Vy(b) Vx(a)^-1 Vy(b)^-1 psi> normalized to unit modulus.

    The four translations are composed so the probe traverses the closed-form
    rectangle: +a in x, then -b in y, then back.  The overlap modulus before
    normalization is written to ``diagnostics['overlap_modulus']`` when a dict
    is supplied; it must exceed 0.999 for a supported probe.
    """
    width = default_probe_width(case) if probe_width is None else probe_width
    if grid is None:
        grid = commutator_grid(case, width)
    cfg = FluxConfig((FluxLine((0.0, 0.0), case.alpha),))
    probe = _probe(grid, case, width)
    _check_support(grid, case, probe)
    moved = probe
    for axis, d in (
        (Axis.X, case.a),
        (Axis.Y, -case.b),
        (Axis.X, -case.a),
        (Axis.Y, case.b),
    ):
        moved = apply_magnetic_translation(moved, MagneticTranslation(axis, d, cfg))
    overlap = probe.inner(moved)
    modulus = abs(overlap)
    if diagnostics is not None:
        diagnostics["overlap_modulus"] = modulus
    if modulus == 0.0:
        raise ProbeStraddlesAxis("probe returned with zero overlap")
    return overlap / modulus


@dataclass
class CommutatorRecord:
    alpha: float
    x: float
    y: float
    a: float
    b: float
    phase_empirical: complex | None
    phase_closed_form: complex | None
    discrepancy: float | None
    winding: int | None
    overlap_modulus: float | None
    error: str | None = None


def commutator_sweep(
    alpha_list,
    case_list,
    grid: Grid2D | None = None,
    probe_width: float | None = None,
) -> list[CommutatorRecord]:
    """Empirical vs closed-form phases over the Cartesian product.

    Per-case failures become error entries; the sweep never aborts.  Cases are
    (x, y, a, b) tuples or CommutatorCase instances (whose alpha is replaced).
    """
    from .gauge import winding_number

    records: list[CommutatorRecord] = []
    for alpha in alpha_list:
        for item in case_list:
            if isinstance(item, CommutatorCase):
                x, y, a, b = item.x, item.y, item.a, item.b
            else:
                x, y, a, b = item
            try:
                case = CommutatorCase(x, y, a, b, float(alpha))
                w = winding_number(rectangle_path(case), (0.0, 0.0))
                cf = commutator_phase_closed_form(case)
                diag: dict = {}
                emp = commutator_phase_empirical(case, probe_width, grid, diag)
                records.append(
                    CommutatorRecord(
                        float(alpha), x, y, a, b,
                        emp, cf, abs(emp - cf), w, diag["overlap_modulus"],
                    )
                )
            except Exception as exc:  # noqa: BLE001 - sweep aggregates errors
                records.append(
                    CommutatorRecord(
                        float(alpha), x, y, a, b,
                        None, None, None, None, None,
                        error=f"{type(exc).__name__}: {exc}",
                    )
                )
    return records


SWEEP_CSV_COLUMNS = [
    "alpha (dimensionless)",
    "x (length)",
    "y (length)",
    "a (length)",
    "b (length)",
    "phase_emp_re (dimensionless)",
    "phase_emp_im (dimensionless)",
    "phase_cf_re (dimensionless)",
    "phase_cf_im (dimensionless)",
    "discrepancy (dimensionless)",
    "winding (turns)",
    "error",
]


def write_sweep_csv(records: list[CommutatorRecord], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SWEEP_CSV_COLUMNS)
        for r in records:
            if r.error is None:
                writer.writerow(
                    [
                        repr(r.alpha), repr(r.x), repr(r.y), repr(r.a), repr(r.b),
                        repr(r.phase_empirical.real), repr(r.phase_empirical.imag),
                        repr(r.phase_closed_form.real), repr(r.phase_closed_form.imag),
                        repr(r.discrepancy), r.winding, "",
                    ]
                )
            else:
                writer.writerow(
                    [repr(r.alpha), repr(r.x), repr(r.y), repr(r.a), repr(r.b),
                     "", "", "", "", "", "", r.error]
                )
