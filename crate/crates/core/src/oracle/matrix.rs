use std::collections::{HashSet, VecDeque};

use super::field::FieldTable;
use crate::error::{Error, Result};

/// Row-major matrix over a [`FieldTable`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

/// Largest `q^{n²}` scanned by [`enumerate_group`].
pub const GROUP_SCAN_GUARD: u128 = 1 << 24;

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<u8>, field: &FieldTable) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}×{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|&x| x as usize >= field.q()) {
            return Err(Error::BadParameters(format!("entry out of range for F_{}", field.q())));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<u8>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix, f: &FieldTable) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} times {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form and pivot columns.
    pub fn rref(&self, f: &FieldTable) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in 0..m.cols {
                m.set(r, j, f.mul(inv, m.get(r, j)));
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, f: &FieldTable) -> usize {
        self.rref(f).1.len()
    }

    pub fn is_invertible(&self, f: &FieldTable) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }

    pub fn inverse(&self, f: &FieldTable) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n)).ok()?;
        let (r, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack needs equal row counts".into()));
        }
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            out.data[i * out.cols..i * out.cols + self.cols].copy_from_slice(self.row(i));
            out.data[i * out.cols + self.cols..(i + 1) * out.cols].copy_from_slice(other.row(i));
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack needs equal column counts".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    /// Applies `self` to the column vector `v`.
    pub fn apply(&self, v: &[u8], f: &FieldTable) -> Vec<u8> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// Base-`q` digits of the entries, row-major, first entry most significant.
    pub fn encode(&self, q: usize) -> u128 {
        self.data.iter().fold(0u128, |acc, &x| acc * q as u128 + x as u128)
    }

    pub fn decode(rows: usize, cols: usize, q: usize, mut key: u128) -> Matrix {
        let mut data = vec![0u8; rows * cols];
        for x in data.iter_mut().rev() {
            *x = (key % q as u128) as u8;
            key /= q as u128;
        }
        Matrix { rows, cols, data }
    }
}

/// `diag(ζ, 1, …, 1)`, `I + E_{12}` and the cyclic permutation `e_i ↦ e_{i+1}`.
pub fn group_generators(n: usize, f: &FieldTable) -> Vec<Matrix> {
    if n == 0 {
        return Vec::new();
    }
    let mut d = Matrix::identity(n);
    d.set(0, 0, f.generator());
    let mut gens = vec![d];
    if n >= 2 {
        let mut t = Matrix::identity(n);
        t.set(0, 1, 1);
        let mut c = Matrix::zeros(n, n);
        for i in 0..n {
            c.set((i + 1) % n, i, 1);
        }
        gens.push(t);
        gens.push(c);
    }
    gens.retain(|g| *g != Matrix::identity(n));
    gens
}

/// Every invertible `n × n` matrix, by a full scan of `F_q^{n×n}`.
pub fn enumerate_group(n: usize, f: &FieldTable) -> Result<Vec<Matrix>> {
    let total = (f.q() as u128).checked_pow((n * n) as u32);
    if total.is_none_or(|t| t > GROUP_SCAN_GUARD) {
        return Err(Error::GuardExceeded(format!(
            "scanning F_{}^({n}×{n}) exceeds {GROUP_SCAN_GUARD} matrices",
            f.q()
        )));
    }
    let total = total.unwrap();
    Ok((0..total)
        .map(|k| Matrix::decode(n, n, f.q(), k))
        .filter(|m| m.is_invertible(f))
        .collect())
}

/// Elements of the group generated by `gens`, by breadth-first closure.
pub fn closure_elements(gens: &[Matrix], n: usize, f: &FieldTable, limit: usize) -> Result<Vec<Matrix>> {
    let id = Matrix::identity(n);
    let mut seen: HashSet<Matrix> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.mul(&x, f)?;
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return Err(Error::GuardExceeded(format!("closure exceeds {limit} elements")));
                }
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(order)
}

pub fn closure_size(gens: &[Matrix], n: usize, f: &FieldTable, limit: usize) -> Result<usize> {
    closure_elements(gens, n, f, limit).map(|v| v.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degrees::gl_order;

    #[test]
    fn group_orders() {
        for (n, q) in [(1, 2), (1, 3), (1, 4), (1, 5), (2, 2), (2, 3), (3, 2)] {
            let f = FieldTable::new(q).unwrap();
            let g = enumerate_group(n, &f).unwrap();
            assert_eq!(g.len() as u64, crate::degrees::to_u64(&gl_order(n as u32, q)).unwrap());
        }
        assert!(enumerate_group(4, &FieldTable::new(3).unwrap()).is_err());
    }

    #[test]
    fn generators_generate() {
        for (n, q, order) in [(2, 2, 6), (2, 3, 48), (3, 2, 168), (2, 4, 180), (2, 5, 480), (3, 3, 11232)] {
            let f = FieldTable::new(q).unwrap();
            let gens = group_generators(n, &f);
            assert_eq!(closure_size(&gens, n, &f, 1 << 20).unwrap(), order, "({n},{q})");
        }
    }

    #[test]
    fn inverse_and_rank() {
        let f = FieldTable::new(9).unwrap();
        for g in group_generators(3, &f) {
            let inv = g.inverse(&f).unwrap();
            assert_eq!(g.mul(&inv, &f).unwrap(), Matrix::identity(3));
        }
        let singular = Matrix::from_vec(2, 2, vec![1, 2, 1, 2], &f).unwrap();
        assert_eq!(singular.rank(&f), 1);
        assert!(singular.inverse(&f).is_none());
        assert!(Matrix::from_vec(1, 1, vec![9], &f).is_err());
    }

    #[test]
    fn encode_round_trip() {
        let f = FieldTable::new(7).unwrap();
        let m = Matrix::from_vec(2, 3, vec![1, 6, 0, 3, 2, 5], &f).unwrap();
        assert_eq!(Matrix::decode(2, 3, 7, m.encode(7)), m);
    }
}
