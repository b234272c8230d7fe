use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A uniform node grid on `[x0, x0 + (nx-1) dx] x [0, y_max]`.
///
/// Row `j = 0` lies on the production line `y = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid2D {
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
    pub dy: f64,
    pub x0: f64,
    pub y_max: f64,
}

impl Grid2D {
    pub fn new(nx: usize, ny: usize, dx: f64, dy: f64, x0: f64) -> Result<Self> {
        let grid = Self {
            nx,
            ny,
            dx,
            dy,
            x0,
            y_max: (ny.saturating_sub(1)) as f64 * dy,
        };
        grid.validate()?;
        Ok(grid)
    }

    /// Smallest grid with spacing `h` covering `[x_min, x_max] x [0, y_max]`.
    pub fn covering(x_min: f64, x_max: f64, y_max: f64, h: f64) -> Result<Self> {
        if !(h > 0.0 && x_max > x_min && y_max > 0.0) || !(x_min.is_finite() && x_max.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "cannot cover [{x_min}, {x_max}] x [0, {y_max}] with spacing {h}"
            )));
        }
        let nx = ((x_max - x_min) / h).ceil() as usize + 1;
        let ny = (y_max / h).ceil() as usize + 1;
        Self::new(nx, ny, h, h, x_min)
    }

    pub fn validate(&self) -> Result<()> {
        if self.nx < 8 || self.ny < 8 {
            return Err(Error::InvalidParams(format!(
                "grid needs at least 8 x 8 nodes, got {} x {}",
                self.nx, self.ny
            )));
        }
        let ok = |v: f64| v > 0.0 && v.is_finite();
        if !ok(self.dx) || !ok(self.dy) || !self.x0.is_finite() {
            return Err(Error::InvalidParams(format!(
                "grid spacings must be positive: dx = {}, dy = {}, x0 = {}",
                self.dx, self.dy, self.x0
            )));
        }
        let expected = (self.ny - 1) as f64 * self.dy;
        if (self.y_max - expected).abs() > 1e-9 * expected {
            return Err(Error::InvalidParams(format!(
                "y_max = {} does not match (ny - 1) dy = {expected}",
                self.y_max
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    pub fn y(&self, j: usize) -> f64 {
        j as f64 * self.dy
    }

    pub fn x_max(&self) -> f64 {
        self.x(self.nx - 1)
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.nx).map(|i| self.x(i)).collect()
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    /// Largest stable step of the explicit scheme, with a 10% margin:
    /// `0.9 / (2D (1/dx^2 + 1/dy^2) + k)`.
    pub fn cfl_bound(&self, diffusion: f64, degradation: f64) -> f64 {
        0.9 / (2.0 * diffusion * (self.dx.powi(-2) + self.dy.powi(-2)) + degradation)
    }

    /// Trapezoid weights, under which the discrete Laplacian with reflecting
    /// edges conserves mass exactly.
    pub(crate) fn weight(&self, i: usize, j: usize) -> f64 {
        let wx = if i == 0 || i == self.nx - 1 { 0.5 } else { 1.0 };
        let wy = if j == 0 || j == self.ny - 1 { 0.5 } else { 1.0 };
        wx * wy * self.dx * self.dy
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covering_grid() {
        let g = Grid2D::covering(-2.0, 3.0, 1.0, 0.1).unwrap();
        assert_eq!((g.nx, g.ny), (51, 11));
        assert!((g.x_max() - 3.0).abs() < 1e-12);
        assert!((g.y_max - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_small_or_degenerate_grids() {
        assert!(Grid2D::new(4, 10, 0.1, 0.1, 0.0).is_err());
        assert!(Grid2D::new(10, 10, 0.0, 0.1, 0.0).is_err());
        assert!(Grid2D::covering(1.0, 0.0, 1.0, 0.1).is_err());
    }

    #[test]
    fn weights_integrate_constants_exactly() {
        let g = Grid2D::covering(0.0, 2.0, 3.0, 0.25).unwrap();
        let area: f64 = (0..g.ny)
            .flat_map(|j| (0..g.nx).map(move |i| (i, j)))
            .map(|(i, j)| g.weight(i, j))
            .sum();
        assert!((area - 6.0).abs() < 1e-12);
    }
}
