//! Polylines through the domain interior, used for line integrals and
//! winding counts.

use super::GridDomain;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone)]
pub struct PathSpec {
    pub vertices: Vec<Complex64>,
}

impl PathSpec {
    pub fn new(vertices: Vec<Complex64>) -> Self {
        PathSpec { vertices }
    }

    pub fn is_closed(&self) -> bool {
        self.vertices.len() >= 2
            && (self.vertices[0] - *self.vertices.last().unwrap()).norm() < 1e-14
    }

    /// Consecutive vertices must stay within one cell diagonal of the grid.
    pub fn validate_stride(&self, h: f64) -> Result<()> {
        for w in self.vertices.windows(2) {
            if (w[1] - w[0]).norm() > h * std::f64::consts::SQRT_2 * (1.0 + 1e-9) {
                return Err(Error::PathStride {
                    x0: w[0].re,
                    y0: w[0].im,
                    x1: w[1].re,
                    y1: w[1].im,
                });
            }
        }
        Ok(())
    }

    /// Every vertex at Euclidean distance >= clearance_cells * h from the boundary.
    pub fn validate_clearance(&self, domain: &GridDomain, clearance_cells: f64) -> Result<()> {
        let need = clearance_cells * domain.spacing();
        for &v in &self.vertices {
            if domain.clearance_to_boundary(v) < need {
                return Err(Error::PathClearance {
                    need_cells: clearance_cells,
                });
            }
        }
        Ok(())
    }
}

/// A closed path (first vertex = last vertex).
#[derive(Debug, Clone)]
pub struct LoopSpec(pub PathSpec);

impl LoopSpec {
    pub fn new(path: PathSpec) -> Result<Self> {
        if !path.is_closed() {
            return Err(Error::Config("loop is not closed".into()));
        }
        Ok(LoopSpec(path))
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.0.vertices
    }
}

/// Counterclockwise circle as a closed polyline with vertex spacing <= h/2.
pub fn circle_loop(center: Complex64, radius: f64, h: f64) -> LoopSpec {
    let n = ((2.0 * PI * radius / (0.5 * h)).ceil() as usize).max(16);
    let mut vertices: Vec<Complex64> = (0..n)
        .map(|k| center + Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64))
        .collect();
    vertices.push(vertices[0]);
    LoopSpec(PathSpec::new(vertices))
}
