//! Mask topology: component labeling, Euler characteristic, hole filling.
//!
//! Convention: 4-connectivity for the interior, 8-connectivity for the
//! complement, which keeps discrete Jordan-curve bookkeeping consistent.

use super::{GridDomain, NodeClass};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::collections::VecDeque;

/// Raw binary mask on a node grid.
#[derive(Debug, Clone)]
pub struct MaskGrid {
    pub nx: usize,
    pub ny: usize,
    pub interior: Vec<bool>,
}

/// Deterministic labeling: labels are assigned in row-major first-seen order,
/// starting from 1; 0 means "other side".
#[derive(Debug, Clone)]
pub struct Labeling {
    pub interior_labels: Vec<u32>,
    pub interior_count: usize,
    pub exterior_labels: Vec<u32>,
    pub exterior_count: usize,
}

const N4: [(isize, isize); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
const N8: [(isize, isize); 8] = [
    (1, 0),
    (-1, 0),
    (0, 1),
    (0, -1),
    (1, 1),
    (1, -1),
    (-1, 1),
    (-1, -1),
];

fn flood(
    mask: &MaskGrid,
    want: bool,
    neighbors: &[(isize, isize)],
    labels: &mut [u32],
    start: usize,
    label: u32,
) {
    let (nx, ny) = (mask.nx as isize, mask.ny as isize);
    let mut queue = VecDeque::new();
    labels[start] = label;
    queue.push_back(start);
    while let Some(f) = queue.pop_front() {
        let (i, j) = ((f % mask.nx) as isize, (f / mask.nx) as isize);
        for &(dx, dy) in neighbors {
            let (ni, nj) = (i + dx, j + dy);
            if ni < 0 || nj < 0 || ni >= nx || nj >= ny {
                continue;
            }
            let nf = nj as usize * mask.nx + ni as usize;
            if mask.interior[nf] == want && labels[nf] == 0 {
                labels[nf] = label;
                queue.push_back(nf);
            }
        }
    }
}

/// Label interior components (4-connected) and complement components
/// (8-connected) in row-major first-seen order.
pub fn connected_components(mask: &MaskGrid) -> Labeling {
    let n = mask.nx * mask.ny;
    let mut interior_labels = vec![0u32; n];
    let mut exterior_labels = vec![0u32; n];
    let mut ic = 0u32;
    let mut ec = 0u32;
    for f in 0..n {
        if mask.interior[f] && interior_labels[f] == 0 {
            ic += 1;
            flood(mask, true, &N4, &mut interior_labels, f, ic);
        }
        if !mask.interior[f] && exterior_labels[f] == 0 {
            ec += 1;
            flood(mask, false, &N8, &mut exterior_labels, f, ec);
        }
    }
    Labeling {
        interior_labels,
        interior_count: ic as usize,
        exterior_labels,
        exterior_count: ec as usize,
    }
}

/// V - E + F of the cell complex spanned by interior nodes: a connected planar
/// region has chi = 1 - (number of holes), so chi = 1 is the numeric proxy for
/// simple connectivity.
pub fn euler_characteristic(domain: &GridDomain) -> i64 {
    let mask = domain.interior_mask();
    let (nx, ny) = (mask.nx, mask.ny);
    let at = |i: usize, j: usize| mask.interior[j * nx + i];
    let mut v = 0i64;
    let mut e = 0i64;
    let mut f = 0i64;
    for j in 0..ny {
        for i in 0..nx {
            if !at(i, j) {
                continue;
            }
            v += 1;
            if i + 1 < nx && at(i + 1, j) {
                e += 1;
            }
            if j + 1 < ny && at(i, j + 1) {
                e += 1;
            }
            if i + 1 < nx && j + 1 < ny && at(i + 1, j) && at(i, j + 1) && at(i + 1, j + 1) {
                f += 1;
            }
        }
    }
    v - e + f
}

pub fn boundary_component_count(domain: &GridDomain) -> usize {
    domain.loops().len()
}

/// Relabel every complement component without compact closure -- i.e. not
/// 8-connected to the grid frame -- as interior. Crossing data of surviving
/// boundary edges is carried over; edges swallowed by the fill disappear.
pub fn fill_holes(domain: &GridDomain, x0: Complex64) -> Result<GridDomain> {
    if domain.nearest_interior(x0).is_none() {
        return Err(Error::BasepointOutside { x: x0.re, y: x0.im });
    }
    let mask = domain.interior_mask();
    let labels = connected_components(&mask);
    let (nx, ny) = (mask.nx, mask.ny);

    // frame label: the component of node (0,0); margin invariant makes it exterior
    let frame = labels.exterior_labels[0];
    debug_assert!(frame != 0);

    let mut interior = mask.interior;
    for f in 0..nx * ny {
        let l = labels.exterior_labels[f];
        if l != 0 && l != frame {
            interior[f] = true;
        }
    }

    // keep measured thetas on edges that are still boundary edges
    let mut theta = std::collections::HashMap::new();
    for c in domain.crossings() {
        let (i, j) = domain.node_ij(c.node);
        theta.insert(((j * nx + i) as u32, c.dir as u8), c.theta);
    }
    GridDomain::build(
        domain.origin(),
        domain.spacing(),
        nx,
        ny,
        interior,
        |flat, dir| *theta.get(&(flat as u32, dir as u8)).unwrap_or(&1.0),
        domain.applied_level().cloned(),
    )
}

impl GridDomain {
    /// Frame-connectivity test used by the hole filler and by tests: true when
    /// the given exterior label touches the outermost node ring.
    pub fn is_interior_everywhere(&self, pts: &[Complex64]) -> bool {
        pts.iter().all(|&p| self.nearest_interior(p).is_some())
    }

    pub fn class_counts(&self) -> (usize, usize, usize) {
        let mut c = (0, 0, 0);
        for cl in &self.class {
            match cl {
                NodeClass::Exterior => c.0 += 1,
                NodeClass::Boundary => c.1 += 1,
                NodeClass::Interior => c.2 += 1,
            }
        }
        c
    }
}
