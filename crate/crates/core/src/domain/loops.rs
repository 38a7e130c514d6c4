//! Boundary loop extraction: chain crossing points into closed polylines by
//! walking grid cells, marching-squares style.

use super::{Crossing, Dir};
use crate::error::Result;
use std::collections::HashMap;

#[derive(Debug, Clone)]
pub struct BoundaryLoop {
    /// crossing indices in traversal order; the loop closes back to the first
    pub crossing_ids: Vec<u32>,
    pub ccw: bool,
    pub signed_area: f64,
}

/// Each crossed grid edge borders exactly two cells and each cell links its
/// crossed edges pairwise, so every crossing has degree 2 and the segments
/// close up into loops. Diagonal corner patterns are resolved with the
/// 4-interior / 8-exterior convention: the exterior corners stay connected.
pub(crate) fn extract_loops(
    nx: usize,
    interior: &[bool],
    crossings: &[Crossing],
) -> Result<Vec<BoundaryLoop>> {
    // canonical edge key: (flat index of the lower endpoint, axis)
    let mut edge_to_crossing: HashMap<(u32, u8), u32> = HashMap::new();
    let node_flat: Vec<u32> = {
        // interior id -> flat, rebuilt locally from the crossing owners
        let mut v = Vec::new();
        for (f, &inside) in interior.iter().enumerate() {
            if inside {
                v.push(f as u32);
            }
        }
        v
    };
    for (cid, c) in crossings.iter().enumerate() {
        let f = node_flat[c.node as usize] as usize;
        let (i, j) = (f % nx, f / nx);
        let key = match c.dir {
            Dir::East => ((j * nx + i) as u32, 0),
            Dir::West => ((j * nx + i - 1) as u32, 0),
            Dir::North => ((j * nx + i) as u32, 1),
            Dir::South => (((j - 1) * nx + i) as u32, 1),
        };
        edge_to_crossing.insert(key, cid as u32);
    }

    let ny = interior.len() / nx;
    let mut links: Vec<Vec<u32>> = vec![Vec::new(); crossings.len()];
    let mut link = |a: u32, b: u32, links: &mut Vec<Vec<u32>>| {
        links[a as usize].push(b);
        links[b as usize].push(a);
    };
    for cj in 0..ny - 1 {
        for ci in 0..nx - 1 {
            let f00 = cj * nx + ci;
            let f10 = f00 + 1;
            let f01 = f00 + nx;
            let in00 = interior[f00];
            let in10 = interior[f10];
            let in01 = interior[f01];
            let in11 = interior[f01 + 1];
            let bottom = (in00 != in10).then(|| edge_to_crossing[&(f00 as u32, 0)]);
            let top = (in01 != in11).then(|| edge_to_crossing[&(f01 as u32, 0)]);
            let left = (in00 != in01).then(|| edge_to_crossing[&(f00 as u32, 1)]);
            let right = (in10 != in11).then(|| edge_to_crossing[&(f10 as u32, 1)]);
            let crossed: Vec<u32> = [bottom, right, top, left].into_iter().flatten().collect();
            match crossed.len() {
                0 => {}
                2 => link(crossed[0], crossed[1], &mut links),
                4 => {
                    // diagonal pattern; pair segments around the interior corners
                    if in00 {
                        link(bottom.unwrap(), left.unwrap(), &mut links);
                        link(top.unwrap(), right.unwrap(), &mut links);
                    } else {
                        link(bottom.unwrap(), right.unwrap(), &mut links);
                        link(top.unwrap(), left.unwrap(), &mut links);
                    }
                }
                n => unreachable!("cell with {n} crossed edges"),
            }
        }
    }

    for (cid, l) in links.iter().enumerate() {
        assert_eq!(l.len(), 2, "crossing {cid} has degree {}", l.len());
    }

    let mut visited = vec![false; crossings.len()];
    let mut loops = Vec::new();
    for start in 0..crossings.len() as u32 {
        if visited[start as usize] {
            continue;
        }
        let mut ids = vec![start];
        visited[start as usize] = true;
        let mut prev = start;
        let mut cur = links[start as usize][0];
        while cur != start {
            visited[cur as usize] = true;
            ids.push(cur);
            let l = &links[cur as usize];
            let next = if l[0] == prev { l[1] } else { l[0] };
            prev = cur;
            cur = next;
        }
        let mut area = 0.0;
        for k in 0..ids.len() {
            let p = crossings[ids[k] as usize].point;
            let q = crossings[ids[(k + 1) % ids.len()] as usize].point;
            area += p.re * q.im - q.re * p.im;
        }
        area *= 0.5;
        loops.push(BoundaryLoop {
            crossing_ids: ids,
            ccw: area > 0.0,
            signed_area: area,
        });
    }
    Ok(loops)
}
