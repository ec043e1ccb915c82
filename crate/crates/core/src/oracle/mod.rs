//! Brute-force ground truth over explicit finite fields: VIC morphism spaces,
//! block-subgroup orbits (double cosets), conjugacy classes and the
//! stabilization map of double cosets under `g ↦ diag(g, 1)`.
//!
//! `L_{b,n−b} = diag(I_b, GL_{n−b})` is the stabilizer of the standard
//! morphism `F^b → F^n`, so `L_{a}\G_n/L_{b}` is the set of `L_a`-orbits on
//! the VIC morphisms `F^b → F^n`.

pub mod field;
pub mod matrix;
pub mod orbit;
pub mod vic;

use rayon::prelude::*;

pub use field::FieldTable;
pub use matrix::{closure_elements, closure_size, enumerate_group, group_generators, Matrix};
pub use orbit::{burnside_count, orbit_count, orbit_partition, orbits_from_images, OrbitPartition};
pub use vic::{compose_vic, vic_morphisms, VicMorphism, VicSpace, SPACE_GUARD};

use crate::degrees::{gl_order, to_u64, vic_hom_count};
use crate::error::{Error, Result};

/// Largest group listed element by element for conjugacy classes.
pub const GROUP_GUARD: usize = 1 << 21;
/// Largest group summed over in a Burnside count.
pub const BURNSIDE_GUARD: u64 = 10_000;

/// Generators of `diag(I_b, GL_{n−b})`.
pub fn block_generators(b: usize, n: usize, fld: &FieldTable) -> Vec<Matrix> {
    let id = Matrix::identity(b);
    group_generators(n - b, fld)
        .into_iter()
        .map(|g| id.block_diag(&g))
        .collect()
}

/// Orbits of `diag(I_b, GL_{n−b})` on a VIC morphism space.
pub fn block_orbits(space: &VicSpace, b: usize, fld: &FieldTable) -> Result<OrbitPartition> {
    if b > space.n {
        return Err(Error::BadParameters(format!("block {b} exceeds n = {}", space.n)));
    }
    let images = block_generators(b, space.n, fld)
        .iter()
        .map(|h| {
            space
                .keys
                .par_iter()
                .map(|&k| {
                    let v = VicMorphism::decode(space.m, space.n, space.q, k).act(h, fld);
                    space.index.get(&v.encode(space.q)).copied()
                })
                .collect::<Option<Vec<u32>>>()
                .ok_or_else(|| Error::ActionNotClosed("block action leaves the morphism space".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(orbits_from_images(space.len(), &images))
}

fn count_u64(m: usize, n: usize, q: u64) -> u64 {
    vic_hom_count(m as u32, n as u32, q)
        .ok()
        .and_then(|c| to_u64(&c))
        .unwrap_or(u64::MAX)
}

/// `|L_a\G_n/L_b|`, computed on whichever side has fewer morphisms.
fn two_sided(a: usize, b: usize, n: usize, fld: &FieldTable) -> Result<usize> {
    let q = fld.q() as u64;
    let (points, block) = if count_u64(a, n, q) < count_u64(b, n, q) {
        (a, b)
    } else {
        (b, a)
    };
    let space = VicSpace::new(points, n, fld)?;
    Ok(block_orbits(&space, block, fld)?.count())
}

/// `|G_{n−m}\G_n/G_{n−m}|` as `L_{m,n−m}`-orbits on VIC morphisms `F^m → F^n`.
pub fn double_cosets_gl(n: u32, m: u32, q: u64) -> Result<u64> {
    if m > n {
        return Err(Error::BadParameters(format!("m = {m} > n = {n}")));
    }
    let fld = FieldTable::new(q)?;
    let space = VicSpace::new(m as usize, n as usize, &fld)?;
    Ok(block_orbits(&space, m as usize, &fld)?.count() as u64)
}

/// Same count by Burnside's lemma over an explicit listing of
/// `diag(I_m, GL_{n−m})`.
pub fn double_cosets_burnside(n: u32, m: u32, q: u64) -> Result<u64> {
    if m > n {
        return Err(Error::BadParameters(format!("m = {m} > n = {n}")));
    }
    let order = to_u64(&gl_order(n - m, q)).unwrap_or(u64::MAX);
    if order > BURNSIDE_GUARD {
        return Err(Error::GuardExceeded(format!(
            "|GL_{}(F_{q})| = {order} exceeds {BURNSIDE_GUARD}",
            n - m
        )));
    }
    let fld = FieldTable::new(q)?;
    let (n, m) = (n as usize, m as usize);
    let group: Vec<Matrix> = closure_elements(&group_generators(n - m, &fld), n - m, &fld, BURNSIDE_GUARD as usize)?
        .into_iter()
        .map(|g| Matrix::identity(m).block_diag(&g))
        .collect();
    let points = vic_morphisms(m, n, &fld)?;
    Ok(burnside_count(&points, &group, |h, v| v.act(h, &fld))? as u64)
}

fn check_weakstab(l: u32, m: u32, r: u32) -> Result<()> {
    if l + r < m {
        return Err(Error::BadParameters(format!("ℓ + r = {} < m = {m}", l + r)));
    }
    Ok(())
}

/// `|L_{ℓ,r}\G_{ℓ+r}/L_{m,ℓ+r−m}|`.
pub fn weakstab_cosets(l: u32, m: u32, r: u32, q: u64) -> Result<u64> {
    check_weakstab(l, m, r)?;
    let fld = FieldTable::new(q)?;
    Ok(two_sided(l as usize, m as usize, (l + r) as usize, &fld)? as u64)
}

/// One step `n = ℓ+r → n+1` of the double-coset stabilization map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakStabStep {
    pub l: u32,
    pub m: u32,
    pub r: u32,
    pub q: u64,
    pub classes: u64,
    pub classes_next: u64,
    pub surjective: bool,
    /// `r ≥ m + min(m, ℓ)`, where surjectivity is guaranteed.
    pub threshold_met: bool,
}

/// Whether every class of `L_{ℓ,r+1}\G_{n+1}/L_{m,n+1−m}` contains the image
/// of a class at size `n` under `g ↦ diag(g, 1)`.
pub fn weakstab_map_surjective(l: u32, m: u32, r: u32, q: u64) -> Result<WeakStabStep> {
    check_weakstab(l, m, r)?;
    let fld = FieldTable::new(q)?;
    let n = (l + r) as usize;
    let (l_, m_) = (l as usize, m as usize);
    // inversion swaps the two sides and commutes with diag(·, 1)
    let (points, block) = if count_u64(l_, n + 1, q) < count_u64(m_, n + 1, q) {
        (l_, m_)
    } else {
        (m_, l_)
    };
    let here = VicSpace::new(points, n, &fld)?;
    let next = VicSpace::new(points, n + 1, &fld)?;
    let orbits_here = block_orbits(&here, block, &fld)?;
    let orbits_next = block_orbits(&next, block, &fld)?;
    let mut hit = vec![false; orbits_next.count()];
    for i in 0..here.len() {
        let j = next
            .position(&here.get(i).include())
            .ok_or_else(|| Error::ActionNotClosed("inclusion leaves the morphism space".into()))?;
        hit[orbits_next.orbit_of[j] as usize] = true;
    }
    Ok(WeakStabStep {
        l,
        m,
        r,
        q,
        classes: orbits_here.count() as u64,
        classes_next: orbits_next.count() as u64,
        surjective: hit.iter().all(|&h| h),
        threshold_met: r >= m + m.min(l),
    })
}

/// Conjugacy classes of `GL_n(F_q)` as conjugation orbits.
pub fn conjugacy_class_count(n: u32, q: u64) -> Result<u64> {
    let fld = FieldTable::new(q)?;
    let order = to_u64(&gl_order(n, q)).unwrap_or(u64::MAX);
    if order > GROUP_GUARD as u64 {
        return Err(Error::GuardExceeded(format!(
            "|GL_{n}(F_{q})| = {order} exceeds {GROUP_GUARD}"
        )));
    }
    let n = n as usize;
    let gens = group_generators(n, &fld);
    let elements = closure_elements(&gens, n, &fld, GROUP_GUARD)?;
    let conj: Vec<_> = gens
        .iter()
        .map(|g| {
            let gi = g.inverse(&fld).expect("generators are invertible");
            let fld = &fld;
            move |x: &Matrix| g.mul(x, fld).and_then(|y| y.mul(&gi, fld)).expect("square")
        })
        .collect();
    Ok(orbit_count(&elements, &conj)? as u64)
}

/// `|vic_morphisms(m, n, q)|` by enumeration.
pub fn vic_count(m: u32, n: u32, q: u64) -> Result<u64> {
    let fld = FieldTable::new(q)?;
    Ok(VicSpace::new(m as usize, n as usize, &fld)?.len() as u64)
}

/// `|GL_n(F_q)|` by closing the standard generators.
pub fn group_order(n: u32, q: u64) -> Result<u64> {
    let fld = FieldTable::new(q)?;
    Ok(closure_size(&group_generators(n as usize, &fld), n as usize, &fld, GROUP_GUARD)? as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_coset_examples() {
        assert_eq!(double_cosets_gl(3, 0, 2).unwrap(), 1);
        assert_eq!(double_cosets_gl(2, 1, 2).unwrap(), 6);
        assert_eq!(double_cosets_gl(3, 1, 2).unwrap(), 7);
        assert_eq!(double_cosets_gl(3, 1, 3).unwrap(), 15);
        assert_eq!(double_cosets_gl(2, 2, 3).unwrap(), 48);
    }

    #[test]
    fn bfs_matches_burnside() {
        for (n, m, q) in [(2, 1, 2), (3, 1, 2), (3, 1, 3), (3, 2, 2), (4, 2, 2), (3, 1, 4), (4, 1, 2)] {
            assert_eq!(
                double_cosets_gl(n, m, q).unwrap(),
                double_cosets_burnside(n, m, q).unwrap(),
                "({n},{m},{q})"
            );
        }
        assert!(double_cosets_burnside(4, 1, 3).is_err());
    }

    #[test]
    fn transitive_on_nonzero_vectors() {
        let fld = FieldTable::new(2).unwrap();
        let pts: Vec<Vec<u8>> = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        let gens: Vec<_> = group_generators(2, &fld)
            .into_iter()
            .map(|g| {
                let fld = &fld;
                move |v: &Vec<u8>| g.apply(v, fld)
            })
            .collect();
        assert_eq!(orbit_count(&pts, &gens).unwrap(), 1);
    }

    #[test]
    fn generator_choice_does_not_matter() {
        // transvections E_{12}, E_{21} and diag(ζ, 1), diag(1, ζ) also generate GL_2
        let fld = FieldTable::new(3).unwrap();
        let space = VicSpace::new(1, 3, &fld).unwrap();
        let standard = block_orbits(&space, 1, &fld).unwrap();
        let mut alt = Vec::new();
        for (i, j) in [(0, 1), (1, 0)] {
            let mut t = Matrix::identity(2);
            t.set(i, j, 1);
            alt.push(t);
            let mut d = Matrix::identity(2);
            d.set(i, i, fld.generator());
            alt.push(d);
        }
        assert_eq!(closure_size(&alt, 2, &fld, 1000).unwrap(), 48);
        let images: Vec<Vec<u32>> = alt
            .iter()
            .map(|g| {
                let h = Matrix::identity(1).block_diag(g);
                (0..space.len())
                    .map(|i| space.position(&space.get(i).act(&h, &fld)).unwrap() as u32)
                    .collect()
            })
            .collect();
        let other = orbits_from_images(space.len(), &images);
        assert_eq!(other, standard);
    }

    #[test]
    fn class_counts() {
        assert_eq!(conjugacy_class_count(2, 2).unwrap(), 3);
        assert_eq!(conjugacy_class_count(2, 3).unwrap(), 8);
        assert_eq!(conjugacy_class_count(3, 2).unwrap(), 6);
        assert_eq!(conjugacy_class_count(1, 5).unwrap(), 4);
    }

    #[test]
    fn weakstab_examples() {
        assert_eq!(weakstab_cosets(0, 0, 3, 2).unwrap(), 1);
        assert_eq!(weakstab_cosets(1, 1, 2, 2).unwrap(), weakstab_cosets(1, 1, 3, 2).unwrap());
        assert_eq!(weakstab_cosets(2, 1, 2, 2).unwrap(), weakstab_cosets(2, 1, 3, 2).unwrap());
        // symmetric in ℓ and m
        assert_eq!(weakstab_cosets(2, 1, 2, 2).unwrap(), weakstab_cosets(1, 2, 3, 2).unwrap());
        assert_eq!(weakstab_cosets(1, 1, 2, 2).unwrap(), double_cosets_gl(3, 1, 2).unwrap());
        for (l, m, r) in [(1, 1, 2), (1, 1, 3), (2, 1, 2), (1, 2, 3)] {
            let s = weakstab_map_surjective(l, m, r, 2).unwrap();
            assert!(s.surjective && s.threshold_met, "{s:?}");
        }
        let below = weakstab_map_surjective(2, 2, 3, 2).unwrap();
        assert!(!below.threshold_met);
    }

    #[test]
    fn group_orders_by_closure() {
        assert_eq!(group_order(3, 2).unwrap(), 168);
        assert_eq!(group_order(1, 7).unwrap(), 6);
    }
}
