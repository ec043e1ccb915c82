use std::collections::HashMap;
use std::hash::Hash;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Orbits of a finitely generated group acting on an indexed point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    /// Orbit id of every point; ids are numbered by first occurrence.
    pub orbit_of: Vec<u32>,
    pub sizes: Vec<usize>,
}

impl OrbitPartition {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let p = parent[x as usize];
        parent[x as usize] = parent[p as usize];
        x = p;
    }
    x
}

/// Orbits from precomputed generator images: `images[g][i]` is the index of
/// generator `g` applied to point `i`.
pub fn orbits_from_images(n_points: usize, images: &[Vec<u32>]) -> OrbitPartition {
    let mut parent: Vec<u32> = (0..n_points as u32).collect();
    for img in images {
        for (i, &j) in img.iter().enumerate() {
            let (a, b) = (find(&mut parent, i as u32), find(&mut parent, j));
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
    let mut ids: HashMap<u32, u32> = HashMap::new();
    let mut orbit_of = Vec::with_capacity(n_points);
    let mut sizes = Vec::new();
    for i in 0..n_points as u32 {
        let r = find(&mut parent, i);
        let next = ids.len() as u32;
        let id = *ids.entry(r).or_insert(next);
        if id as usize == sizes.len() {
            sizes.push(0);
        }
        sizes[id as usize] += 1;
        orbit_of.push(id);
    }
    OrbitPartition { orbit_of, sizes }
}

/// Orbits of the group generated by `gens` on `points`, by union-find over
/// generator images. Fails if an image leaves the point set.
pub fn orbit_partition<P, G>(points: &[P], gens: &[G]) -> Result<OrbitPartition>
where
    P: Hash + Eq + Sync,
    G: Fn(&P) -> P + Sync,
{
    let index: HashMap<&P, u32> = points.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
    if index.len() != points.len() {
        return Err(Error::BadParameters("point set has duplicates".into()));
    }
    let images = gens
        .iter()
        .map(|g| {
            points
                .par_iter()
                .map(|p| index.get(&g(p)).copied())
                .collect::<Option<Vec<u32>>>()
                .ok_or_else(|| Error::ActionNotClosed("a generator maps a point outside the set".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(orbits_from_images(points.len(), &images))
}

pub fn orbit_count<P, G>(points: &[P], gens: &[G]) -> Result<usize>
where
    P: Hash + Eq + Sync,
    G: Fn(&P) -> P + Sync,
{
    Ok(orbit_partition(points, gens)?.count())
}

/// `(1/|H|) Σ_h |Fix(h)|` over an explicitly listed group.
pub fn burnside_count<P, H, A>(points: &[P], group: &[H], act: A) -> Result<usize>
where
    P: Eq + Sync,
    H: Sync,
    A: Fn(&H, &P) -> P + Sync,
{
    let fixed: usize = group
        .par_iter()
        .map(|h| points.iter().filter(|p| act(h, p) == **p).count())
        .sum();
    if group.is_empty() || !fixed.is_multiple_of(group.len()) {
        return Err(Error::InexactDivision(format!(
            "{fixed} fixed points over a group of order {}",
            group.len()
        )));
    }
    Ok(fixed / group.len())
}
