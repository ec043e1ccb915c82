//! Morphisms `F_q^m → F_q^n` of VIC: an injection together with a complement
//! of its image.

use std::collections::HashMap;

use super::field::FieldTable;
use super::matrix::Matrix;
use crate::degrees::{to_u64, vic_hom_count};
use crate::error::{Error, Result};

/// Largest morphism set materialized by [`VicSpace::new`].
pub const SPACE_GUARD: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VicMorphism {
    /// `n × m`, full column rank.
    f: Matrix,
    /// `(n−m) × n`, rows span the complement, reduced row-echelon form.
    k: Matrix,
}

fn canonical_rows(rows: &Matrix, fld: &FieldTable) -> Matrix {
    rows.rref(fld).0
}

impl VicMorphism {
    /// Validates `f` and a spanning set of the complement (as rows) and
    /// stores the complement canonically.
    pub fn new(f: Matrix, complement: Matrix, fld: &FieldTable) -> Result<Self> {
        let (n, m) = (f.rows(), f.cols());
        if complement.cols() != n || complement.rows() != n - m.min(n) || m > n {
            return Err(Error::DimensionMismatch(format!(
                "map {n}×{m} with complement {}×{}",
                complement.rows(),
                complement.cols()
            )));
        }
        let both = f.transpose().vstack(&complement)?;
        if f.rank(fld) != m || both.rank(fld) != n {
            return Err(Error::BadParameters(
                "not an injection with a complementary subspace".into(),
            ));
        }
        Ok(VicMorphism {
            f,
            k: canonical_rows(&complement, fld),
        })
    }

    pub fn identity(n: usize) -> Self {
        VicMorphism {
            f: Matrix::identity(n),
            k: Matrix::zeros(0, n),
        }
    }

    /// `e_i ↦ e_i` with complement spanned by `e_{m+1}, …, e_n`.
    pub fn standard(m: usize, n: usize) -> Self {
        let mut f = Matrix::zeros(n, m);
        for i in 0..m {
            f.set(i, i, 1);
        }
        let mut k = Matrix::zeros(n - m, n);
        for i in 0..n - m {
            k.set(i, m + i, 1);
        }
        VicMorphism { f, k }
    }

    pub fn source_dim(&self) -> usize {
        self.f.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.f.rows()
    }

    pub fn map(&self) -> &Matrix {
        &self.f
    }

    pub fn complement(&self) -> &Matrix {
        &self.k
    }

    /// `h · (f, K) = (h f, h K)` for `h ∈ GL_n`.
    pub fn act(&self, h: &Matrix, fld: &FieldTable) -> VicMorphism {
        let f = h.mul(&self.f, fld).expect("dimensions agree");
        let moved = h.mul(&self.k.transpose(), fld).expect("dimensions agree").transpose();
        VicMorphism {
            f,
            k: canonical_rows(&moved, fld),
        }
    }

    /// Composition with the standard morphism `F^n → F^{n+1}`.
    pub fn include(&self) -> VicMorphism {
        let (n, m) = (self.target_dim(), self.source_dim());
        let mut f = Matrix::zeros(n + 1, m);
        for i in 0..n {
            for j in 0..m {
                f.set(i, j, self.f.get(i, j));
            }
        }
        // e_{n+1} sorts last, so the echelon form stays reduced
        let mut k = Matrix::zeros(n + 1 - m, n + 1);
        for i in 0..n - m {
            for j in 0..n {
                k.set(i, j, self.k.get(i, j));
            }
        }
        k.set(n - m, n, 1);
        VicMorphism { f, k }
    }

    pub fn encode(&self, q: usize) -> u128 {
        let kf = self.f.encode(q);
        let digits = self.k.rows() * self.k.cols();
        kf * (q as u128).pow(digits as u32) + self.k.encode(q)
    }

    pub fn decode(m: usize, n: usize, q: usize, key: u128) -> VicMorphism {
        let digits = (n - m) * n;
        let base = (q as u128).pow(digits as u32);
        VicMorphism {
            f: Matrix::decode(n, m, q, key / base),
            k: Matrix::decode(n - m, n, q, key % base),
        }
    }
}

/// `g ∘ f = (g_map · f_map, g_map(K_f) + K_g)`.
pub fn compose_vic(g: &VicMorphism, f: &VicMorphism, fld: &FieldTable) -> Result<VicMorphism> {
    if g.source_dim() != f.target_dim() {
        return Err(Error::DimensionMismatch(format!(
            "cannot compose F^{} ← F^{} after F^{} ← F^{}",
            g.target_dim(),
            g.source_dim(),
            f.target_dim(),
            f.source_dim()
        )));
    }
    let map = g.f.mul(&f.f, fld)?;
    let pushed = g.f.mul(&f.k.transpose(), fld)?.transpose();
    let k = pushed.vstack(&g.k)?;
    VicMorphism::new(map, k, fld)
}

/// Whether `q^{digits}` fits the `u128` encoding.
fn encodable(m: usize, n: usize, q: usize) -> bool {
    let digits = (n * m + (n - m) * n) as u32;
    (q as u128).checked_pow(digits).is_some_and(|t| t < u128::MAX / q as u128)
}

/// All injections `F^m → F^n`, column by column.
fn injections(m: usize, n: usize, fld: &FieldTable) -> Vec<Matrix> {
    let q = fld.q();
    let vectors: Vec<Vec<u8>> = (0..(q as u128).pow(n as u32))
        .map(|k| Matrix::decode(1, n, q, k).data().to_vec())
        .collect();
    let mut out = Vec::new();
    let mut cols: Vec<Vec<u8>> = Vec::new();
    fn rec(
        m: usize,
        n: usize,
        vectors: &[Vec<u8>],
        cols: &mut Vec<Vec<u8>>,
        fld: &FieldTable,
        out: &mut Vec<Matrix>,
    ) {
        if cols.len() == m {
            let mut f = Matrix::zeros(n, m);
            for (j, c) in cols.iter().enumerate() {
                for (i, &x) in c.iter().enumerate() {
                    f.set(i, j, x);
                }
            }
            out.push(f);
            return;
        }
        for v in vectors {
            cols.push(v.clone());
            let rows = Matrix::from_raw(cols.len(), n, cols.concat());
            if rows.rank(fld) == cols.len() {
                rec(m, n, vectors, cols, fld, out);
            }
            cols.pop();
        }
    }
    rec(m, n, &vectors, &mut cols, fld, &mut out);
    out
}

/// Every complement of the column space of `f`: graphs of linear maps from
/// the span of the non-pivot coordinate vectors into the image.
fn complements(f: &Matrix, fld: &FieldTable) -> Vec<Matrix> {
    let (n, m) = (f.rows(), f.cols());
    let q = fld.q();
    let (_, pivots) = f.transpose().rref(fld);
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    let choices = (q as u128).pow((m * free.len()) as u32);
    (0..choices)
        .map(|key| {
            let coeffs = Matrix::decode(free.len(), m, q, key);
            let mut rows = Matrix::zeros(free.len(), n);
            for (r, &j) in free.iter().enumerate() {
                let image = f.apply(coeffs.row(r), fld);
                for (i, x) in image.into_iter().enumerate() {
                    rows.set(r, i, x);
                }
                rows.set(r, j, fld.add(rows.get(r, j), 1));
            }
            canonical_rows(&rows, fld)
        })
        .collect()
}

/// All VIC morphisms `F^m → F^n`, indexed by their encoding.
pub struct VicSpace {
    pub m: usize,
    pub n: usize,
    pub q: usize,
    pub keys: Vec<u128>,
    pub index: HashMap<u128, u32>,
}

impl VicSpace {
    pub fn new(m: usize, n: usize, fld: &FieldTable) -> Result<Self> {
        if m > n {
            return Err(Error::BadParameters(format!("no injection F^{m} → F^{n}")));
        }
        let q = fld.q();
        let expected = vic_hom_count(m as u32, n as u32, q as u64)?;
        let count = to_u64(&expected).filter(|&c| c <= SPACE_GUARD).ok_or_else(|| {
            Error::GuardExceeded(format!(
                "vic_morphisms({m},{n},{q}) has {expected} elements, over {SPACE_GUARD}"
            ))
        })?;
        if !encodable(m, n, q) {
            return Err(Error::GuardExceeded(format!(
                "vic_morphisms({m},{n},{q}) does not fit the point encoding"
            )));
        }
        let mut keys = Vec::with_capacity(count as usize);
        for f in injections(m, n, fld) {
            for k in complements(&f, fld) {
                keys.push(VicMorphism { f: f.clone(), k }.encode(q));
            }
        }
        keys.sort_unstable();
        let index: HashMap<u128, u32> =
            keys.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect();
        if index.len() != keys.len() || keys.len() as u64 != count {
            return Err(Error::ActionNotClosed(format!(
                "enumerated {} distinct morphisms, expected {count}",
                index.len()
            )));
        }
        Ok(VicSpace { m, n, q, keys, index })
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn get(&self, i: usize) -> VicMorphism {
        VicMorphism::decode(self.m, self.n, self.q, self.keys[i])
    }

    pub fn position(&self, v: &VicMorphism) -> Option<usize> {
        self.index.get(&v.encode(self.q)).map(|&i| i as usize)
    }
}

/// `vic_morphisms(m, n, q)` as a list.
pub fn vic_morphisms(m: usize, n: usize, fld: &FieldTable) -> Result<Vec<VicMorphism>> {
    let space = VicSpace::new(m, n, fld)?;
    Ok((0..space.len()).map(|i| space.get(i)).collect())
}
