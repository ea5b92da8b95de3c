use serde::{Deserialize, Serialize};

use super::ring::{Elem, Ring};
use crate::error::{Error, Result};

/// A dense matrix over a [`Ring`], stored row-major.
///
/// Like [`Elem`], a matrix does not carry its ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Elem>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from rows; `cols` is needed to shape matrices with
    /// no rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let n = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "row {bad} has {} entries, expected {cols}",
                rows[bad].len()
            )));
        }
        Ok(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Elem>]) -> Result<Matrix> {
        let cols = columns.len();
        if let Some(bad) = columns.iter().position(|c| c.len() != rows) {
            return Err(Error::Dimension(format!(
                "column {bad} has {} entries, expected {rows}",
                columns[bad].len()
            )));
        }
        let data = (0..rows)
            .flat_map(|i| columns.iter().map(move |c| c[i].clone()))
            .collect();
        Ok(Matrix { rows, cols, data })
    }

    /// Integer matrix from literal rows; for tests and examples.
    pub fn int(rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| Elem::from(x)).collect()).collect();
        Matrix::from_rows(cols, rows).expect("ragged literal")
    }

    pub fn diagonal(ring: &Ring, diag: &[Elem]) -> Matrix {
        let mut m = Matrix::zeros(ring, diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self, ring: &Ring) -> bool {
        self.data.iter().all(|x| ring.is_zero(x))
    }

    pub fn transpose(&self) -> Matrix {
        let data = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, ring: &Ring, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if ring.is_zero(b) {
                        continue;
                    }
                    let v = ring.add(out.get(i, j), &ring.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, ring: &Ring, v: &[Elem]) -> Result<Vec<Elem>> {
        if self.cols != v.len() {
            return Err(Error::Dimension(format!(
                "cannot apply {}x{} to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(ring.zero(), |acc, (a, b)| ring.add(&acc, &ring.mul(a, b)))
            })
            .collect())
    }

    pub fn add(&self, ring: &Ring, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| ring.add(a, b))
    }

    pub fn sub(&self, ring: &Ring, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| ring.sub(a, b))
    }

    pub fn scale(&self, ring: &Ring, c: &Elem) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| ring.mul(c, x)).collect(),
        }
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Elem, &Elem) -> Elem) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "shape {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::Dimension(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let data = (0..self.rows)
            .flat_map(|i| self.row(i).iter().chain(other.row(i)).cloned())
            .collect();
        Ok(Matrix { rows: self.rows, cols, data })
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn select_rows(&self, idx: impl IntoIterator<Item = usize>) -> Matrix {
        let rows: Vec<Vec<Elem>> = idx.into_iter().map(|i| self.row(i).to_vec()).collect();
        Matrix::from_rows(self.cols, rows).expect("rows share a width")
    }

    pub fn select_cols(&self, idx: impl IntoIterator<Item = usize>) -> Matrix {
        let cols: Vec<Vec<Elem>> = idx.into_iter().map(|j| self.column(j)).collect();
        Matrix::from_columns(self.rows, &cols).expect("columns share a height")
    }

    pub fn block_diag(ring: &Ring, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, ring: &Ring, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(ring, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if ring.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, ring.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    // Elementary operations, used by the normal form routines.

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += c * row[src]`.
    pub(crate) fn add_row_multiple(&mut self, ring: &Ring, dst: usize, src: usize, c: &Elem) {
        if ring.is_zero(c) {
            return;
        }
        for j in 0..self.cols {
            let v = ring.add(self.get(dst, j), &ring.mul(c, self.get(src, j)));
            self.set(dst, j, v);
        }
    }

    /// `col[dst] += c * col[src]`.
    pub(crate) fn add_col_multiple(&mut self, ring: &Ring, dst: usize, src: usize, c: &Elem) {
        if ring.is_zero(c) {
            return;
        }
        for i in 0..self.rows {
            let v = ring.add(self.get(i, dst), &ring.mul(c, self.get(i, src)));
            self.set(i, dst, v);
        }
    }

    pub(crate) fn scale_row(&mut self, ring: &Ring, i: usize, c: &Elem) {
        for j in 0..self.cols {
            let v = ring.mul(c, self.get(i, j));
            self.set(i, j, v);
        }
    }

    pub(crate) fn scale_col(&mut self, ring: &Ring, j: usize, c: &Elem) {
        for i in 0..self.rows {
            let v = ring.mul(c, self.get(i, j));
            self.set(i, j, v);
        }
    }
}

/// Wire form: `{"rows": r, "cols": c, "entries": [[...], ...]}`.
#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Elem>>,
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr { rows: self.rows, cols: self.cols, entries: self.to_rows() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(d)?;
        if repr.entries.len() != repr.rows {
            return Err(serde::de::Error::custom(format!(
                "{} rows listed, {} declared",
                repr.entries.len(),
                repr.rows
            )));
        }
        Matrix::from_rows(repr.cols, repr.entries).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_kron_shapes() {
        let r = Ring::Integers;
        let a = Matrix::int(&[&[1, 2], &[3, 4]]);
        let b = Matrix::int(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&r, &b).unwrap(), Matrix::int(&[&[2, 1], &[4, 3]]));
        let k = a.kron(&r, &Matrix::identity(&r, 2));
        assert_eq!((k.rows(), k.cols()), (4, 4));
        assert_eq!(k.get(2, 0), &Elem::from(3));
        assert!(a.mul(&r, &Matrix::zeros(&r, 3, 1)).is_err());
    }

    #[test]
    fn empty_shapes_survive_stacking() {
        let r = Ring::Integers;
        let e = Matrix::zeros(&r, 2, 0);
        let a = Matrix::int(&[&[1], &[2]]);
        assert_eq!(e.hstack(&a).unwrap(), a);
        assert_eq!(Matrix::from_rows(3, vec![]).unwrap().cols(), 3);
    }
}
