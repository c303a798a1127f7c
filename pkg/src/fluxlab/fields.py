"""Uniform 2D grids and complex-valued sampled wavefunctions.

Arrays are indexed ``values[i, j]`` with ``i`` along x and ``j`` along y;
sample (i, j) sits at ``origin + (i*dx, j*dy)``.  Norms and inner products
carry the cell area, so a normalized field has ``sum(|psi|^2) * dx * dy = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PacketOffGrid, PacketTooNarrow

__all__ = ["Grid2D", "ComplexField", "gaussian_field"]


@dataclass(frozen=True)
class Grid2D:
    nx: int
    ny: int
    dx: float
    dy: float
    origin: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self) -> None:
        if self.nx < 16 or self.ny < 16:
            raise ValueError("grid must be at least 16x16")
        if self.dx <= 0 or self.dy <= 0:
            raise ValueError("grid spacings must be positive")
        ox, oy = self.origin
        object.__setattr__(self, "origin", (float(ox), float(oy)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nx, self.ny)

    @property
    def cell_area(self) -> float:
        return self.dx * self.dy

    def x(self) -> np.ndarray:
        return self.origin[0] + self.dx * np.arange(self.nx)

    def y(self) -> np.ndarray:
        return self.origin[1] + self.dy * np.arange(self.ny)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """Broadcastable coordinate arrays X (nx, 1) and Y (1, ny)."""
        return self.x()[:, None], self.y()[None, :]


@dataclass(frozen=True)
class ComplexField:
    grid: Grid2D
    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.values)
        if v.shape != self.grid.shape:
            raise ValueError(f"values shape {v.shape} != grid shape {self.grid.shape}")
        if v.dtype != np.complex128:
            v = v.astype(np.complex128)
        if not np.isfinite(v).all():
            raise ValueError("field contains non-finite samples")
        object.__setattr__(self, "values", v)

    def norm_sq(self) -> float:
        return float(np.vdot(self.values, self.values).real) * self.grid.cell_area

    def norm(self) -> float:
        return float(np.sqrt(self.norm_sq()))

    def inner(self, other: "ComplexField") -> complex:
        """<self, other> with the physics convention (conjugate-linear in self)."""
        if other.grid != self.grid:
            raise ValueError("fields live on different grids")
        return complex(np.vdot(self.values, other.values)) * self.grid.cell_area

    def normalized(self) -> "ComplexField":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize a zero field")
        return ComplexField(self.grid, self.values / n)


def gaussian_field(
    grid: Grid2D,
    center: tuple[float, float],
    width: float | tuple[float, float],
    momentum: tuple[float, float] = (0.0, 0.0),
    phase: np.ndarray | None = None,
    min_width_cells: float = 0.0,
    containment: float | None = None,
) -> ComplexField:
    """Normalized Gaussian ``exp(-(r-c)^2/(4 w^2) + i k.r)``, optionally dressed.

    ``width`` is the standard deviation of |psi|^2 per axis.  ``phase`` adds a
    position-dependent phase (radians, full-grid array).  ``min_width_cells``
    and ``containment`` enforce the resolvability and on-grid-mass
    preconditions used by the propagation module.
    """
    wx, wy = (width, width) if np.isscalar(width) else width
    if wx <= 0 or wy <= 0:
        raise ValueError("width must be positive")
    if min_width_cells and min(wx / grid.dx, wy / grid.dy) < min_width_cells:
        raise PacketTooNarrow(
            f"width ({wx}, {wy}) below {min_width_cells} cells of ({grid.dx}, {grid.dy})"
        )
    cx, cy = center
    if containment is not None:
        from scipy.special import erf

        lo_x, hi_x = grid.origin[0], grid.origin[0] + (grid.nx - 1) * grid.dx
        lo_y, hi_y = grid.origin[1], grid.origin[1] + (grid.ny - 1) * grid.dy
        frac = 1.0
        for lo, hi, c, w in ((lo_x, hi_x, cx, wx), (lo_y, hi_y, cy, wy)):
            s = w * np.sqrt(2.0)
            frac *= 0.5 * (erf((hi - c) / s) - erf((lo - c) / s))
        if frac < containment:
            raise PacketOffGrid(
                f"only {frac:.12f} of the packet mass lies on the grid"
                f" (required {containment})"
            )
    X, Y = grid.mesh()
    kx, ky = momentum
    envelope = np.exp(-((X - cx) ** 2) / (4 * wx**2) - ((Y - cy) ** 2) / (4 * wy**2))
    arg = kx * X + ky * Y
    values = envelope * np.exp(1j * arg)
    if phase is not None:
        values = values * np.exp(1j * phase)
    field = ComplexField(grid, values)
    return field.normalized()
