//! Planar domains as masked uniform grids with exact boundary-crossing data.
//!
//! A `GridDomain` is the discrete stand-in for a compact sub-surface with
//! smooth boundary: interior nodes carry unknowns, and every grid edge that
//! leaves the interior records the fractional arm length to the true boundary
//! (Shortley-Weller data), so curved boundaries keep second-order accuracy.

mod level_set;
mod loops;
mod path;
mod topology;

pub use level_set::{build_exhaustion, from_level_set, AppliedLevel, LevelFn, LevelSpec};
pub use loops::BoundaryLoop;
pub use path::{circle_loop, LoopSpec, PathSpec};
pub use topology::{
    boundary_component_count, connected_components, euler_characteristic, fill_holes, Labeling,
    MaskGrid,
};

use crate::error::{Error, Result};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeClass {
    Exterior,
    /// Exterior node 4-adjacent to the interior; carries the far end of crossing edges.
    Boundary,
    Interior,
}

/// Axis direction from an interior node, in stencil order E, W, N, S.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    East = 0,
    West = 1,
    North = 2,
    South = 3,
}

pub const DIRS: [Dir; 4] = [Dir::East, Dir::West, Dir::North, Dir::South];

impl Dir {
    pub fn step(self) -> (isize, isize) {
        match self {
            Dir::East => (1, 0),
            Dir::West => (-1, 0),
            Dir::North => (0, 1),
            Dir::South => (0, -1),
        }
    }

    pub fn unit(self) -> Complex64 {
        let (dx, dy) = self.step();
        Complex64::new(dx as f64, dy as f64)
    }
}

/// One boundary crossing on a grid edge: the interior endpoint, the direction
/// of the edge, and the fractional arm length theta in (0, 1].
#[derive(Debug, Clone)]
pub struct Crossing {
    pub node: u32,
    pub dir: Dir,
    pub theta: f64,
    pub point: Complex64,
}

/// What an interior node sees along one stencil arm.
#[derive(Debug, Clone, Copy)]
pub enum Arm {
    Interior(u32),
    Crossing(u32),
}

#[derive(Debug, Clone)]
pub struct GridDomain {
    origin: Complex64,
    h: f64,
    nx: usize,
    ny: usize,
    class: Vec<NodeClass>,
    /// flat node index -> interior id, u32::MAX when not interior
    interior_id: Vec<u32>,
    /// interior id -> flat node index (row-major construction order)
    nodes: Vec<u32>,
    crossings: Vec<Crossing>,
    arms: Vec<[Arm; 4]>,
    loops: Vec<BoundaryLoop>,
    /// per interior id: 4-connected graph distance (in cells) to the nearest
    /// boundary-adjacent interior node; 0 means the node itself has a crossing arm
    depth: Vec<u16>,
    applied_level: Option<AppliedLevel>,
}

pub(crate) const NO_ID: u32 = u32::MAX;

impl GridDomain {
    /// Build a domain from a raw interior mask. Crossings get theta = 1, i.e.
    /// the boundary passes exactly through the first exterior node of each edge.
    pub fn from_interior_mask(
        origin: Complex64,
        h: f64,
        nx: usize,
        ny: usize,
        interior: &[bool],
    ) -> Result<Self> {
        assert_eq!(interior.len(), nx * ny);
        Self::build(origin, h, nx, ny, interior.to_vec(), |_, _| 1.0, None)
    }

    /// Shared finisher: classify nodes, record crossings with the supplied
    /// theta resolver, build stencil arms and boundary loops, validate invariants.
    pub(crate) fn build<F>(
        origin: Complex64,
        h: f64,
        nx: usize,
        ny: usize,
        interior: Vec<bool>,
        theta_of: F,
        applied_level: Option<AppliedLevel>,
    ) -> Result<Self>
    where
        F: Fn(usize, Dir) -> f64,
    {
        assert!(h > 0.0 && nx >= 3 && ny >= 3);
        let flat = |i: usize, j: usize| j * nx + i;

        // one-node frame margin so the exterior frame component is well-defined
        for i in 0..nx {
            if interior[flat(i, 0)] || interior[flat(i, ny - 1)] {
                return Err(Error::FrameMargin);
            }
        }
        for j in 0..ny {
            if interior[flat(0, j)] || interior[flat(nx - 1, j)] {
                return Err(Error::FrameMargin);
            }
        }

        let mask = MaskGrid {
            nx,
            ny,
            interior: interior.clone(),
        };
        let labels = connected_components(&mask);
        if labels.interior_count == 0 {
            return Err(Error::DisconnectedInterior);
        }
        if labels.interior_count > 1 {
            return Err(Error::DisconnectedInterior);
        }

        let mut class = vec![NodeClass::Exterior; nx * ny];
        let mut interior_id = vec![NO_ID; nx * ny];
        let mut nodes = Vec::new();
        for j in 0..ny {
            for i in 0..nx {
                if interior[flat(i, j)] {
                    class[flat(i, j)] = NodeClass::Interior;
                    interior_id[flat(i, j)] = nodes.len() as u32;
                    nodes.push(flat(i, j) as u32);
                }
            }
        }

        let mut crossings = Vec::new();
        let mut arms = Vec::with_capacity(nodes.len());
        for (id, &nflat) in nodes.iter().enumerate() {
            let (i, j) = (nflat as usize % nx, nflat as usize / nx);
            let pos = origin + Complex64::new(i as f64 * h, j as f64 * h);
            let mut node_arms = [Arm::Interior(0); 4];
            for d in DIRS {
                let (dx, dy) = d.step();
                let (ni, nj) = ((i as isize + dx) as usize, (j as isize + dy) as usize);
                let nf = flat(ni, nj);
                if interior[nf] {
                    node_arms[d as usize] = Arm::Interior(interior_id[nf]);
                } else {
                    let theta = theta_of(nflat as usize, d);
                    debug_assert!(theta > 0.0 && theta <= 1.0);
                    if class[nf] == NodeClass::Exterior {
                        class[nf] = NodeClass::Boundary;
                    }
                    node_arms[d as usize] = Arm::Crossing(crossings.len() as u32);
                    crossings.push(Crossing {
                        node: id as u32,
                        dir: d,
                        theta,
                        point: pos + d.unit() * (theta * h),
                    });
                }
            }
            arms.push(node_arms);
        }

        let loops = loops::extract_loops(nx, ny, &interior, &crossings, &interior_id)?;

        let depth = Self::depth_field(nx, ny, &interior, &nodes, &arms);

        Ok(GridDomain {
            origin,
            h,
            nx,
            ny,
            class,
            interior_id,
            nodes,
            crossings,
            arms,
            loops,
            depth,
            applied_level,
        })
    }

    fn depth_field(
        nx: usize,
        _ny: usize,
        interior: &[bool],
        nodes: &[u32],
        arms: &[[Arm; 4]],
    ) -> Vec<u16> {
        let mut depth = vec![u16::MAX; nodes.len()];
        let mut queue = std::collections::VecDeque::new();
        for (id, node_arms) in arms.iter().enumerate() {
            if node_arms.iter().any(|a| matches!(a, Arm::Crossing(_))) {
                depth[id] = 0;
                queue.push_back(id);
            }
        }
        let id_of = |f: usize| -> Option<usize> {
            if interior[f] {
                Some(nodes.binary_search(&(f as u32)).unwrap())
            } else {
                None
            }
        };
        while let Some(id) = queue.pop_front() {
            let f = nodes[id] as usize;
            let (i, j) = (f % nx, f / nx);
            for d in DIRS {
                let (dx, dy) = d.step();
                let nf = (j as isize + dy) as usize * nx + (i as isize + dx) as usize;
                if let Some(nid) = id_of(nf) {
                    if depth[nid] == u16::MAX {
                        depth[nid] = depth[id].saturating_add(1);
                        queue.push_back(nid);
                    }
                }
            }
        }
        depth
    }

    pub fn origin(&self) -> Complex64 {
        self.origin
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn node_counts(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn interior_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn loops(&self) -> &[BoundaryLoop] {
        &self.loops
    }

    pub fn arms(&self, id: u32) -> &[Arm; 4] {
        &self.arms[id as usize]
    }

    pub fn applied_level(&self) -> Option<&AppliedLevel> {
        self.applied_level.as_ref()
    }

    pub fn class_at(&self, i: usize, j: usize) -> NodeClass {
        self.class[j * self.nx + i]
    }

    /// Grid coordinates (i, j) of an interior id.
    pub fn node_ij(&self, id: u32) -> (usize, usize) {
        let f = self.nodes[id as usize] as usize;
        (f % self.nx, f / self.nx)
    }

    pub fn node_pos(&self, id: u32) -> Complex64 {
        let (i, j) = self.node_ij(id);
        self.origin + Complex64::new(i as f64 * self.h, j as f64 * self.h)
    }

    pub fn interior_id_at(&self, i: usize, j: usize) -> Option<u32> {
        if i >= self.nx || j >= self.ny {
            return None;
        }
        let id = self.interior_id[j * self.nx + i];
        (id != NO_ID).then_some(id)
    }

    /// Interior id of the node nearest to p, if that node is interior.
    pub fn nearest_interior(&self, p: Complex64) -> Option<u32> {
        let i = ((p.re - self.origin.re) / self.h).round() as isize;
        let j = ((p.im - self.origin.im) / self.h).round() as isize;
        if i < 0 || j < 0 {
            return None;
        }
        self.interior_id_at(i as usize, j as usize)
    }

    /// Coarse clearance in cells: 4-connected distance to the nearest
    /// boundary-adjacent node. True Euclidean clearance is at least
    /// (depth / sqrt(2)) * h; use `clearance_to_boundary` where it matters.
    pub fn depth_cells(&self, id: u32) -> u16 {
        self.depth[id as usize]
    }

    /// Exact Euclidean distance from p to the nearest boundary crossing point.
    pub fn clearance_to_boundary(&self, p: Complex64) -> f64 {
        self.crossings
            .iter()
            .map(|c| (c.point - p).norm())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn interior_mask(&self) -> MaskGrid {
        MaskGrid {
            nx: self.nx,
            ny: self.ny,
            interior: self
                .class
                .iter()
                .map(|c| *c == NodeClass::Interior)
                .collect(),
        }
    }

    /// Reject domains whose solver geometry is degenerate: eroding the interior
    /// by one ring must neither empty it nor split it, otherwise some feature
    /// is narrower than 3h.
    pub fn check_min_feature(&self) -> Result<()> {
        let mask = self.interior_mask();
        let mut eroded = vec![false; self.nx * self.ny];
        let mut any = false;
        for &nflat in &self.nodes {
            let f = nflat as usize;
            let (i, j) = (f % self.nx, f / self.nx);
            let keep = DIRS.iter().all(|d| {
                let (dx, dy) = d.step();
                mask.interior[(j as isize + dy) as usize * self.nx + (i as isize + dx) as usize]
            });
            if keep {
                eroded[f] = true;
                any = true;
            }
        }
        if !any {
            return Err(Error::NarrowNeck);
        }
        let labels = connected_components(&MaskGrid {
            nx: self.nx,
            ny: self.ny,
            interior: eroded,
        });
        if labels.interior_count != 1 {
            return Err(Error::NarrowNeck);
        }
        Ok(())
    }

    /// PGM bytes: 0 exterior, 128 boundary-adjacent, 255 interior.
    /// Rows run top-down in image convention.
    pub fn mask_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.nx, self.ny).into_bytes();
        for j in (0..self.ny).rev() {
            for i in 0..self.nx {
                out.push(match self.class[j * self.nx + i] {
                    NodeClass::Exterior => 0,
                    NodeClass::Boundary => 128,
                    NodeClass::Interior => 255,
                });
            }
        }
        out
    }

    /// Boundary loops as CSV `loop_id,x,y` in traversal order.
    pub fn loops_csv(&self) -> String {
        let mut s = String::from("loop_id,x,y\n");
        for (k, lp) in self.loops.iter().enumerate() {
            for &cid in &lp.crossing_ids {
                let p = self.crossings[cid as usize].point;
                s.push_str(&format!("{},{},{}\n", k, p.re, p.im));
            }
        }
        s
    }
}
