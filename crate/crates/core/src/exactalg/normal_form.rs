//! Hermite and Smith normal forms and the linear algebra built on them.

use super::matrix::Matrix;
use super::ring::{Elem, Ring};
use crate::error::{Error, Result};

/// Row-style Hermite normal form: `transform * A = form`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hermite {
    pub form: Matrix,
    pub transform: Matrix,
    /// Column index of each pivot, top to bottom.
    pub pivots: Vec<usize>,
}

/// Smith normal form `P * A * Q = D`, with the inverses of both
/// transforms tracked alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub d: Matrix,
    pub p: Matrix,
    pub p_inv: Matrix,
    pub q: Matrix,
    pub q_inv: Matrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl Smith {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`.
    pub fn diagonal(&self) -> Vec<Elem> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Computes `(H, T)` with `T` unimodular, `T * A = H`, `H` in row echelon
/// form with normalized pivots and entries above each pivot reduced
/// modulo it.
pub fn hnf(ring: &Ring, a: &Matrix) -> Hermite {
    let (rows, cols) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut t = Matrix::identity(ring, rows);
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..cols {
        if pr == rows {
            break;
        }
        while let Some(best) = (pr..rows)
            .filter(|&i| !ring.is_zero(h.get(i, col)))
            .min_by(|&i, &j| ring.norm_cmp(h.get(i, col), h.get(j, col)))
        {
            h.swap_rows(pr, best);
            t.swap_rows(pr, best);
            let mut clean = true;
            for i in pr + 1..rows {
                if ring.is_zero(h.get(i, col)) {
                    continue;
                }
                let q = ring.neg(&ring.div_rem(h.get(i, col), h.get(pr, col)).0);
                h.add_row_multiple(ring, i, pr, &q);
                t.add_row_multiple(ring, i, pr, &q);
                clean &= ring.is_zero(h.get(i, col));
            }
            if clean {
                break;
            }
        }
        if ring.is_zero(h.get(pr, col)) {
            continue;
        }
        let (_, u) = ring.normalize(h.get(pr, col));
        h.scale_row(ring, pr, &u);
        t.scale_row(ring, pr, &u);
        for i in 0..pr {
            let q = ring.neg(&ring.div_rem(h.get(i, col), h.get(pr, col)).0);
            h.add_row_multiple(ring, i, pr, &q);
            t.add_row_multiple(ring, i, pr, &q);
        }
        pivots.push(col);
        pr += 1;
    }
    Hermite { form: h, transform: t, pivots }
}

struct SmithState<'r> {
    ring: &'r Ring,
    a: Matrix,
    p: Matrix,
    p_inv: Matrix,
    q: Matrix,
    q_inv: Matrix,
}

impl SmithState<'_> {
    fn add_row(&mut self, dst: usize, src: usize, c: &Elem) {
        let r = self.ring;
        self.a.add_row_multiple(r, dst, src, c);
        self.p.add_row_multiple(r, dst, src, c);
        self.p_inv.add_col_multiple(r, src, dst, &r.neg(c));
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &Elem) {
        let r = self.ring;
        self.a.add_col_multiple(r, dst, src, c);
        self.q.add_col_multiple(r, dst, src, c);
        self.q_inv.add_row_multiple(r, src, dst, &r.neg(c));
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.p.swap_rows(i, j);
        self.p_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.q.swap_cols(i, j);
        self.q_inv.swap_rows(i, j);
    }

    fn scale_row(&mut self, i: usize, u: &Elem) {
        let r = self.ring;
        let inv = r.unit_inverse(u).expect("scaling by a unit");
        self.a.scale_row(r, i, u);
        self.p.scale_row(r, i, u);
        self.p_inv.scale_col(r, i, &inv);
    }

    fn move_to_pivot(&mut self, t: usize, (i, j): (usize, usize)) {
        self.swap_rows(t, i);
        self.swap_cols(t, j);
    }

    /// Position of the smallest-norm nonzero entry among `cells`.
    fn smallest(&self, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
        cells
            .filter(|&(i, j)| !self.ring.is_zero(self.a.get(i, j)))
            .min_by(|&(a, b), &(c, d)| self.ring.norm_cmp(self.a.get(a, b), self.a.get(c, d)))
    }
}

/// Smith normal form with smallest-norm pivoting.
pub fn snf(ring: &Ring, a: &Matrix) -> Smith {
    let (rows, cols) = (a.rows(), a.cols());
    let mut s = SmithState {
        ring,
        a: a.clone(),
        p: Matrix::identity(ring, rows),
        p_inv: Matrix::identity(ring, rows),
        q: Matrix::identity(ring, cols),
        q_inv: Matrix::identity(ring, cols),
    };
    let mut rank = 0;
    for t in 0..rows.min(cols) {
        let all = (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)));
        let Some(pos) = s.smallest(all) else { break };
        s.move_to_pivot(t, pos);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !ring.is_zero(s.a.get(i, t)) {
                    let q = ring.neg(&ring.div_rem(s.a.get(i, t), s.a.get(t, t)).0);
                    s.add_row(i, t, &q);
                    clean &= ring.is_zero(s.a.get(i, t));
                }
            }
            for j in t + 1..cols {
                if !ring.is_zero(s.a.get(t, j)) {
                    let q = ring.neg(&ring.div_rem(s.a.get(t, j), s.a.get(t, t)).0);
                    s.add_col(j, t, &q);
                    clean &= ring.is_zero(s.a.get(t, j));
                }
            }
            if !clean {
                let cross = (t..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
                let pos = s.smallest(cross).expect("pivot is nonzero");
                s.move_to_pivot(t, pos);
                continue;
            }
            // The pivot must divide the whole trailing block.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !ring.divides(s.a.get(t, t), s.a.get(i, j)));
            match bad {
                Some((i, _)) => s.add_row(t, i, &ring.one()),
                None => break,
            }
        }
        let (_, u) = ring.normalize(s.a.get(t, t));
        s.scale_row(t, &u);
        rank += 1;
    }
    Smith { d: s.a, p: s.p, p_inv: s.p_inv, q: s.q, q_inv: s.q_inv, rank }
}

/// Solves `A x = b`; `Ok(None)` when no solution exists over the ring.
pub fn solve_linear(ring: &Ring, a: &Matrix, b: &[Elem]) -> Result<Option<Vec<Elem>>> {
    let smith = snf(ring, a);
    solve_with(ring, a, &smith, b)
}

/// Solves `A X = B` column by column, sharing one Smith decomposition.
pub fn solve_matrix(ring: &Ring, a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    if a.rows() != b.rows() {
        return Err(Error::Dimension(format!(
            "system has {} equations, right-hand side {}",
            a.rows(),
            b.rows()
        )));
    }
    let smith = snf(ring, a);
    let mut cols = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        match solve_with(ring, a, &smith, &b.column(j))? {
            Some(x) => cols.push(x),
            None => return Ok(None),
        }
    }
    Matrix::from_columns(a.cols(), &cols).map(Some)
}

fn solve_with(ring: &Ring, a: &Matrix, smith: &Smith, b: &[Elem]) -> Result<Option<Vec<Elem>>> {
    if b.len() != a.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side has length {}, system has {} equations",
            b.len(),
            a.rows()
        )));
    }
    let c = smith.p.mul_vec(ring, b)?;
    let mut y = vec![ring.zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < smith.rank {
            match ring.exact_div(ci, smith.d.get(i, i)) {
                Some(v) => y[i] = v,
                None => return Ok(None),
            }
        } else if !ring.is_zero(ci) {
            return Ok(None);
        }
    }
    smith.q.mul_vec(ring, &y).map(Some)
}

/// A basis of `{x : A x = 0}`, as the columns of the returned matrix.
pub fn kernel_basis(ring: &Ring, a: &Matrix) -> Matrix {
    let smith = snf(ring, a);
    smith.q.select_cols(smith.rank..a.cols())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> Elem {
        Elem::from(n)
    }

    #[test]
    fn hnf_examples() {
        let r = Ring::Integers;
        let a = Matrix::int(&[&[2, 4], &[6, 8]]);
        let h = hnf(&r, &a);
        assert_eq!(h.form, Matrix::int(&[&[2, 0], &[0, 4]]));
        assert_eq!(h.transform.mul(&r, &a).unwrap(), h.form);

        let id = Matrix::identity(&r, 3);
        let h = hnf(&r, &id);
        assert_eq!(h.form, id);
        assert_eq!(h.transform, id);

        let zero = Matrix::zeros(&r, 2, 3);
        assert_eq!(hnf(&r, &zero).form, zero);
    }

    #[test]
    fn snf_examples() {
        let r = Ring::Integers;
        let a = Matrix::int(&[&[2, 4], &[6, 8]]);
        let s = snf(&r, &a);
        assert_eq!(s.d, Matrix::int(&[&[2, 0], &[0, 4]]));
        let pq = s.p.mul(&r, &a).unwrap().mul(&r, &s.q).unwrap();
        assert_eq!(pq, s.d);
        assert_eq!(s.p.mul(&r, &s.p_inv).unwrap(), Matrix::identity(&r, 2));
        assert_eq!(s.q_inv.mul(&r, &s.q).unwrap(), Matrix::identity(&r, 2));

        assert_eq!(snf(&r, &Matrix::identity(&r, 3)).d, Matrix::identity(&r, 3));
        let s0 = snf(&r, &Matrix::int(&[&[0]]));
        assert_eq!(s0.d, Matrix::int(&[&[0]]));
        assert_eq!(s0.rank, 0);
    }

    #[test]
    fn snf_over_polynomials() {
        let r = Ring::polynomials(2).unwrap();
        let x = r.x().unwrap();
        let x2 = r.mul(&x, &x);
        let a = Matrix::from_rows(2, vec![vec![x2.clone(), x.clone()], vec![r.zero(), x2.clone()]]).unwrap();
        let s = snf(&r, &a);
        assert_eq!(s.diagonal(), vec![x.clone(), r.pow(&x, 3)]);
    }

    #[test]
    fn solve_examples() {
        let r = Ring::Integers;
        assert_eq!(solve_linear(&r, &Matrix::int(&[&[2]]), &[z(4)]).unwrap(), Some(vec![z(2)]));
        assert_eq!(solve_linear(&r, &Matrix::int(&[&[2]]), &[z(3)]).unwrap(), None);
        let b = vec![z(5), z(-3), z(7)];
        assert_eq!(solve_linear(&r, &Matrix::identity(&r, 3), &b).unwrap(), Some(b.clone()));
        assert!(solve_linear(&r, &Matrix::identity(&r, 2), &b).is_err());
    }

    #[test]
    fn kernel_examples() {
        let r = Ring::Integers;
        let k = kernel_basis(&r, &Matrix::int(&[&[1, 2]]));
        assert_eq!(k.cols(), 1);
        let v = k.column(0);
        assert!(v == vec![z(2), z(-1)] || v == vec![z(-2), z(1)]);

        assert_eq!(kernel_basis(&r, &Matrix::int(&[&[2, 4], &[6, 8]])).cols(), 0);
        assert_eq!(kernel_basis(&r, &Matrix::int(&[&[0]])), Matrix::int(&[&[1]]));
    }
}
