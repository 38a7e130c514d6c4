//! Domains from sublevel sets {g <= a}: regular-value surrogate by level
//! perturbation, component selection, and nested exhaustions.

use super::topology::{connected_components, fill_holes, MaskGrid};
use super::{euler_characteristic, GridDomain};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::sync::Arc;

pub type LevelFn = Arc<dyn Fn(Complex64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct LevelSpec {
    pub g: LevelFn,
    pub a: f64,
    pub x0: Complex64,
    /// perturbation budget per step, in units of h
    pub eps_reg: f64,
    /// covering box [xmin, ymin, xmax, ymax]
    pub bbox: [f64; 4],
}

impl std::fmt::Debug for LevelSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LevelSpec")
            .field("a", &self.a)
            .field("x0", &self.x0)
            .field("eps_reg", &self.eps_reg)
            .field("bbox", &self.bbox)
            .finish()
    }
}

impl LevelSpec {
    pub fn new(g: LevelFn, a: f64, x0: Complex64, bbox: [f64; 4]) -> Self {
        LevelSpec {
            g,
            a,
            x0,
            eps_reg: 1e-3,
            bbox,
        }
    }
}

/// Record of the regular-value surrogate actually applied.
#[derive(Debug, Clone)]
pub struct AppliedLevel {
    pub requested: f64,
    pub applied: f64,
    pub perturb_steps: u32,
    pub excluded_saddles: u32,
}

const MAX_PERTURB: u32 = 100;

/// Build the connected component of {g <= a} containing x0 on an h-lattice
/// snapped to multiples of h. The level is perturbed upward by multiples of
/// eps_reg*h until no node value collides with it and no cell carries an
/// ambiguous diagonal sign pattern; interior nodes whose four neighbors
/// alternate in/out (sampled saddles) are excluded afterwards.
pub fn from_level_set(spec: &LevelSpec, h: f64) -> Result<GridDomain> {
    let [xmin, ymin, xmax, ymax] = spec.bbox;
    assert!(xmax > xmin && ymax > ymin && h > 0.0);
    let ox = (xmin / h).floor() * h;
    let oy = (ymin / h).floor() * h;
    let nx = ((xmax - ox) / h).ceil() as usize + 1;
    let ny = ((ymax - oy) / h).ceil() as usize + 1;
    let origin = Complex64::new(ox, oy);

    if (spec.g)(spec.x0) >= spec.a {
        return Err(Error::BasepointOutside {
            x: spec.x0.re,
            y: spec.x0.im,
        });
    }

    let pos = |i: usize, j: usize| origin + Complex64::new(i as f64 * h, j as f64 * h);
    let gvals: Vec<f64> = (0..nx * ny)
        .map(|f| (spec.g)(pos(f % nx, f / nx)))
        .collect();

    let eps = spec.eps_reg * h;
    let mut chosen = None;
    'levels: for k in 0..=MAX_PERTURB {
        let a = spec.a + k as f64 * eps;
        if gvals.iter().any(|&g| (g - a).abs() < eps) {
            continue;
        }
        // ambiguous diagonal cells force another perturbation step
        for cj in 0..ny - 1 {
            for ci in 0..nx - 1 {
                let f = cj * nx + ci;
                let (v00, v10, v01, v11) = (gvals[f], gvals[f + 1], gvals[f + nx], gvals[f + nx + 1]);
                let d00 = v00 <= a;
                if d00 == (v11 <= a) && (v10 <= a) == (v01 <= a) && d00 != (v10 <= a) {
                    continue 'levels;
                }
            }
        }
        chosen = Some((a, k));
        break;
    }
    let Some((a, steps)) = chosen else {
        return Err(Error::DegenerateLevel { steps: MAX_PERTURB });
    };

    let mut inside: Vec<bool> = gvals.iter().map(|&g| g <= a).collect();

    // frame margin of 2 nodes around the sublevel set
    for j in 0..ny {
        for i in 0..nx {
            if inside[j * nx + i] && (i < 2 || j < 2 || i >= nx - 2 || j >= ny - 2) {
                return Err(Error::BoxTooSmall);
            }
        }
    }

    // sampled-saddle surrogate: drop interior nodes whose axis neighbors
    // alternate in/out; repeat until stable
    let mut excluded = 0u32;
    loop {
        let mut changed = false;
        for j in 1..ny - 1 {
            for i in 1..nx - 1 {
                let f = j * nx + i;
                if !inside[f] {
                    continue;
                }
                let (e, w, n, s) = (
                    inside[f + 1],
                    inside[f - 1],
                    inside[f + nx],
                    inside[f - nx],
                );
                if (e == w) && (n == s) && (e != n) {
                    inside[f] = false;
                    excluded += 1;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    // component of the basepoint
    let bi = ((spec.x0.re - ox) / h).round() as isize;
    let bj = ((spec.x0.im - oy) / h).round() as isize;
    if bi < 0 || bj < 0 || bi as usize >= nx || bj as usize >= ny {
        return Err(Error::BasepointOutside {
            x: spec.x0.re,
            y: spec.x0.im,
        });
    }
    let bflat = bj as usize * nx + bi as usize;
    if !inside[bflat] {
        return Err(Error::BasepointOutside {
            x: spec.x0.re,
            y: spec.x0.im,
        });
    }
    let labels = connected_components(&MaskGrid {
        nx,
        ny,
        interior: inside.clone(),
    });
    let keep = labels.interior_labels[bflat];
    for f in 0..nx * ny {
        if labels.interior_labels[f] != keep {
            inside[f] = false;
        }
    }

    let domain = GridDomain::build(
        origin,
        h,
        nx,
        ny,
        inside.clone(),
        |f, dir| {
            let (i, j) = (f % nx, f / nx);
            let (dx, dy) = dir.step();
            let nf = (j as isize + dy) as usize * nx + (i as isize + dx) as usize;
            let (gp, gn) = (gvals[f], gvals[nf]);
            if gn <= a {
                // neighbor is sublevel but excluded (saddle or other component):
                // the boundary sits at the node itself
                1.0
            } else {
                ((a - gp) / (gn - gp)).clamp(f64::MIN_POSITIVE, 1.0)
            }
        },
        Some(AppliedLevel {
            requested: spec.a,
            applied: a,
            perturb_steps: steps,
            excluded_saddles: excluded,
        }),
    )?;
    domain.check_min_feature()?;
    Ok(domain)
}

/// Nested exhaustion K_0 c K_1 c ... : each sublevel component is hole-filled,
/// verified simply connected (chi = 1, one boundary loop), and checked for
/// node-set nesting against its predecessor.
pub fn build_exhaustion(spec: &LevelSpec, levels: &[f64], h: f64) -> Result<Vec<GridDomain>> {
    if levels.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::LevelsNotIncreasing);
    }
    if levels.is_empty() || levels[0] <= (spec.g)(spec.x0) {
        return Err(Error::BasepointOutside {
            x: spec.x0.re,
            y: spec.x0.im,
        });
    }
    let mut out: Vec<GridDomain> = Vec::with_capacity(levels.len());
    for (idx, &a) in levels.iter().enumerate() {
        let mut level_spec = spec.clone();
        level_spec.a = a;
        let raw = from_level_set(&level_spec, h)?;
        let filled = fill_holes(&raw, spec.x0)?;
        filled.check_min_feature()?;
        let refilled = fill_holes(&filled, spec.x0)?;
        if refilled.interior_count() != filled.interior_count() {
            return Err(Error::NestingViolated { index: idx });
        }
        if euler_characteristic(&filled) != 1 || filled.loops().len() != 1 {
            return Err(Error::NestingViolated { index: idx });
        }
        if let Some(prev) = out.last() {
            check_nested(prev, &filled, idx)?;
        }
        out.push(filled);
    }
    Ok(out)
}

/// Node-set inclusion: every interior node of `inner` is interior in `outer`.
/// Both domains must live on the same h-lattice.
pub fn check_nested(inner: &GridDomain, outer: &GridDomain, index: usize) -> Result<()> {
    let h = inner.spacing();
    if (outer.spacing() - h).abs() > 1e-15 {
        return Err(Error::NestingViolated { index });
    }
    for id in 0..inner.interior_count() as u32 {
        let p = inner.node_pos(id);
        if outer.nearest_interior(p).is_none() {
            return Err(Error::NestingViolated { index });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{boundary_component_count, euler_characteristic};

    fn disk_spec(a: f64, x0: Complex64) -> LevelSpec {
        LevelSpec::new(
            Arc::new(|z: Complex64| z.norm()),
            a,
            x0,
            [-1.3, -1.3, 1.3, 1.3],
        )
    }

    #[test]
    fn disk_level_set_crossings_sit_on_the_circle() {
        let h = 1.0 / 64.0;
        let dom = from_level_set(&disk_spec(1.0, Complex64::new(0.0, 0.0)), h).unwrap();
        assert_eq!(boundary_component_count(&dom), 1);
        assert_eq!(euler_characteristic(&dom), 1);
        for c in dom.crossings() {
            assert!(
                (c.point.norm() - 1.0).abs() <= h,
                "crossing {} off the circle",
                c.point
            );
        }
    }

    #[test]
    fn basepoint_outside_sublevel_is_an_error() {
        let err = from_level_set(&disk_spec(1.0, Complex64::new(2.0, 0.0)), 1.0 / 32.0);
        assert!(matches!(err, Err(Error::BasepointOutside { .. })));
    }

    #[test]
    fn box_too_small_is_detected() {
        let spec = LevelSpec::new(
            Arc::new(|z: Complex64| z.norm()),
            1.0,
            Complex64::new(0.0, 0.0),
            [-1.02, -1.02, 1.02, 1.02],
        );
        assert!(matches!(
            from_level_set(&spec, 1.0 / 32.0),
            Err(Error::BoxTooSmall)
        ));
    }

    #[test]
    fn saddle_level_is_perturbed_and_saddle_node_excluded() {
        let h = 1.0 / 32.0;
        let spec = LevelSpec::new(
            Arc::new(|z: Complex64| z.re * z.re - z.im * z.im),
            0.0,
            Complex64::new(0.0, -1.0),
            [-2.0, -2.0, 2.0, 2.0],
        );
        let dom = from_level_set(&spec, h).unwrap();
        let applied = dom.applied_level().unwrap();
        assert!(applied.perturb_steps >= 1, "level must be perturbed");
        assert!(applied.excluded_saddles >= 1, "saddle node must be dropped");
        // the origin (the sampled saddle) is not part of the returned domain
        assert!(dom.nearest_interior(Complex64::new(0.0, 0.0)).is_none());
        // and the domain is the lower lobe only
        assert!(dom.nearest_interior(Complex64::new(0.0, -1.0)).is_some());
        assert!(dom.nearest_interior(Complex64::new(0.0, 1.0)).is_none());
    }

    #[test]
    fn exhaustion_of_concentric_disks_nests() {
        let h = 1.0 / 16.0;
        let spec = LevelSpec::new(
            Arc::new(|z: Complex64| z.norm()),
            1.0,
            Complex64::new(0.0, 0.0),
            [-3.5, -3.5, 3.5, 3.5],
        );
        let doms = build_exhaustion(&spec, &[1.0, 2.0, 3.0], h).unwrap();
        assert_eq!(doms.len(), 3);
        for d in &doms {
            assert_eq!(euler_characteristic(d), 1);
            assert_eq!(boundary_component_count(d), 1);
        }
        assert!(doms[0].interior_count() < doms[1].interior_count());
        assert!(doms[1].interior_count() < doms[2].interior_count());
    }

    #[test]
    fn bump_annulus_is_hole_filled_to_a_disk() {
        // central bump pushes g above the level near the origin, so the raw
        // sublevel component of x0 is an annulus; the exhaustion fills it
        let h = 1.0 / 32.0;
        let g = Arc::new(|z: Complex64| z.norm() + 3.0 * (-(z.norm() / 0.3).powi(2)).exp());
        let spec = LevelSpec::new(g.clone(), 1.2, Complex64::new(0.8, 0.0), [-2.6, -2.6, 2.6, 2.6]);

        let raw = from_level_set(&spec, h).unwrap();
        assert_eq!(boundary_component_count(&raw), 2, "raw component is an annulus");
        assert_eq!(euler_characteristic(&raw), 0);

        let doms = build_exhaustion(&spec, &[1.2, 2.0], h).unwrap();
        assert_eq!(boundary_component_count(&doms[0]), 1);
        assert_eq!(euler_characteristic(&doms[0]), 1);
        assert!(doms[0]
            .nearest_interior(Complex64::new(0.0, 0.0))
            .is_some());
    }

    #[test]
    fn nesting_checker_rejects_non_nested_masks() {
        // hand-built: "inner" pokes outside "outer"
        let mut big = vec![false; 20 * 20];
        let mut small = vec![false; 20 * 20];
        for j in 3..17 {
            for i in 3..10 {
                big[j * 20 + i] = true;
            }
        }
        for j in 5..9 {
            for i in 5..14 {
                small[j * 20 + i] = true;
            }
        }
        let o = Complex64::new(0.0, 0.0);
        let outer = GridDomain::from_interior_mask(o, 1.0, 20, 20, &big).unwrap();
        let inner = GridDomain::from_interior_mask(o, 1.0, 20, 20, &small).unwrap();
        assert!(matches!(
            check_nested(&inner, &outer, 1),
            Err(Error::NestingViolated { index: 1 })
        ));
        // a genuinely nested pair passes
        let mut sub = vec![false; 20 * 20];
        for j in 5..15 {
            for i in 5..9 {
                sub[j * 20 + i] = true;
            }
        }
        let sub = GridDomain::from_interior_mask(o, 1.0, 20, 20, &sub).unwrap();
        assert!(check_nested(&sub, &outer, 0).is_ok());
    }

    #[test]
    fn sublevel_sets_are_monotone_in_the_level() {
        let h = 1.0 / 32.0;
        let d1 = from_level_set(&disk_spec(0.7, Complex64::new(0.0, 0.0)), h).unwrap();
        let d2 = from_level_set(&disk_spec(1.0, Complex64::new(0.0, 0.0)), h).unwrap();
        assert!(check_nested(&d1, &d2, 0).is_ok());
    }
}
