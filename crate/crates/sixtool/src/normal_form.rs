//! Smith and Hermite normal forms with tracked unimodular transforms,
//! plus the lattice primitives built on them: kernel bases, integer
//! linear solving, and column-lattice membership.

use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// U * M * V = D with U, V unimodular and D diagonal, nonnegative,
/// with a divisibility chain down the diagonal.
#[derive(Clone)]
pub struct SmithForm<T> {
    pub u: Matrix<T>,
    pub u_inv: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
    pub v_inv: Matrix<T>,
}

impl<T: Scalar> SmithForm<T> {
    /// Diagonal entries, padded with zeros up to `len`.
    pub fn diagonal(&self, len: usize) -> Vec<T> {
        (0..len)
            .map(|i| {
                if i < self.d.nrows() && i < self.d.ncols() {
                    self.d[(i, i)].clone()
                } else {
                    T::zero()
                }
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let n = self.d.nrows().min(self.d.ncols());
        (0..n).filter(|&i| !self.d[(i, i)].is_zero()).count()
    }
}

struct SmithWork<T> {
    d: Matrix<T>,
    u: Matrix<T>,
    u_inv: Matrix<T>,
    v: Matrix<T>,
    v_inv: Matrix<T>,
}

impl<T: Scalar> SmithWork<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row_i += c * row_j
    fn row_add(&mut self, i: usize, j: usize, c: &T) {
        self.d.row_add(i, j, c);
        self.u.row_add(i, j, c);
        let neg = -c.clone();
        self.u_inv.col_add(j, i, &neg);
    }

    /// col_i += c * col_j
    fn col_add(&mut self, i: usize, j: usize, c: &T) {
        self.d.col_add(i, j, c);
        self.v.col_add(i, j, c);
        let neg = -c.clone();
        self.v_inv.row_add(j, i, &neg);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

/// Smallest-magnitude nonzero entry of the trailing submatrix, to keep
/// coefficient growth down.
fn pivot_position<T: Scalar>(d: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.nrows() {
        for j in t..d.ncols() {
            if d[(i, j)].is_zero() {
                continue;
            }
            match best {
                Some(b) if d[b].abs() <= d[(i, j)].abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form<T: Scalar>(m: &Matrix<T>) -> SmithForm<T> {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut w = SmithWork {
        d: m.clone(),
        u: Matrix::identity(rows),
        u_inv: Matrix::identity(rows),
        v: Matrix::identity(cols),
        v_inv: Matrix::identity(cols),
    };

    let steps = rows.min(cols);
    for t in 0..steps {
        while let Some((pi, pj)) = pivot_position(&w.d, t) {
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                if !w.d[(i, t)].is_zero() {
                    let q = w.d[(i, t)].clone() / w.d[(t, t)].clone();
                    let neg_q = -q;
                    w.row_add(i, t, &neg_q);
                    if !w.d[(i, t)].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !w.d[(t, j)].is_zero() {
                    let q = w.d[(t, j)].clone() / w.d[(t, t)].clone();
                    let neg_q = -q;
                    w.col_add(j, t, &neg_q);
                    if !w.d[(t, j)].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }

            // pivot row/col are clear; enforce that the pivot divides the
            // rest of the submatrix before moving on
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| {
                    !w.d[(i, j)].is_zero() && !w.d[(i, j)].is_multiple_of(&w.d[(t, t)])
                });
            match offender {
                Some((i, _)) => {
                    let one = T::one();
                    w.row_add(t, i, &one);
                }
                None => break,
            }
        }
        if w.d[(t, t)].is_negative() {
            w.negate_row(t);
        }
    }

    SmithForm {
        u: w.u,
        u_inv: w.u_inv,
        d: w.d,
        v: w.v,
        v_inv: w.v_inv,
    }
}

/// H = M * U with U unimodular; H in column echelon form (pivot rows
/// strictly increasing, pivots positive, entries left of a pivot reduced
/// mod the pivot). Columns of H span the same lattice as columns of M.
#[derive(Clone)]
pub struct HermiteForm<T> {
    pub h: Matrix<T>,
    pub u: Matrix<T>,
    /// (pivot row, pivot column) pairs in column order.
    pub pivots: Vec<(usize, usize)>,
}

impl<T: Scalar> HermiteForm<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the column lattice: the nonzero columns of H.
    pub fn lattice_basis(&self) -> Matrix<T> {
        let cols: Vec<usize> = self.pivots.iter().map(|&(_, c)| c).collect();
        let rows: Vec<usize> = (0..self.h.nrows()).collect();
        self.h.submatrix(&rows, &cols)
    }

    /// Coefficients expressing `v` over the nonzero columns of H, if `v`
    /// lies in the column lattice.
    pub fn express(&self, v: &[T]) -> Option<Vec<T>> {
        assert_eq!(v.len(), self.h.nrows());
        let mut w = v.to_vec();
        let mut coeffs = vec![T::zero(); self.pivots.len()];
        let mut next_pivot = 0;
        for r in 0..w.len() {
            if next_pivot < self.pivots.len() && self.pivots[next_pivot].0 == r {
                let (_, c) = self.pivots[next_pivot];
                let (q, rem) = w[r].div_rem(&self.h[(r, c)]);
                if !rem.is_zero() {
                    return None;
                }
                for (i, entry) in w.iter_mut().enumerate().skip(r) {
                    *entry = entry.clone() - q.clone() * self.h[(i, c)].clone();
                }
                coeffs[next_pivot] = q;
                next_pivot += 1;
            } else if !w[r].is_zero() {
                return None;
            }
        }
        Some(coeffs)
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.express(v).is_some()
    }
}

pub fn hermite_normal_form<T: Scalar>(m: &Matrix<T>) -> HermiteForm<T> {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut h = m.clone();
    let mut u = Matrix::identity(cols);
    let mut pivots = Vec::new();
    let mut c = 0;

    for r in 0..rows {
        if c == cols {
            break;
        }
        // Euclid across columns >= c until at most one nonzero remains in row r
        loop {
            let nz: Vec<usize> = (c..cols).filter(|&j| !h[(r, j)].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&j) = nz.first() {
                    h.swap_cols(c, j);
                    u.swap_cols(c, j);
                }
                break;
            }
            let &jmin = nz
                .iter()
                .min_by(|&&a, &&b| h[(r, a)].abs().cmp(&h[(r, b)].abs()))
                .unwrap();
            for &j in &nz {
                if j == jmin {
                    continue;
                }
                let q = h[(r, j)].clone() / h[(r, jmin)].clone();
                let neg_q = -q;
                h.col_add(j, jmin, &neg_q);
                u.col_add(j, jmin, &neg_q);
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_col(c);
            u.negate_col(c);
        }
        // reduce earlier columns at the pivot row
        for j in 0..c {
            if !h[(r, j)].is_zero() {
                let q = h[(r, j)].div_floor(&h[(r, c)]);
                let neg_q = -q;
                h.col_add(j, c, &neg_q);
                u.col_add(j, c, &neg_q);
            }
        }
        pivots.push((r, c));
        c += 1;
    }

    HermiteForm { h, u, pivots }
}

/// Columns form a basis of { x : M x = 0 }.
pub fn kernel_basis<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    let hf = hermite_normal_form(m);
    let rank = hf.rank();
    let cols: Vec<usize> = (rank..m.ncols()).collect();
    let rows: Vec<usize> = (0..m.ncols()).collect();
    hf.u.submatrix(&rows, &cols)
}

/// One integer solution x of M x = b, if any.
pub fn solve<T: Scalar>(m: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    assert_eq!(b.len(), m.nrows());
    let sf = smith_normal_form(m);
    let ub = sf.u.mul_vec(b);
    let mut y = vec![T::zero(); m.ncols()];
    let steps = m.nrows().min(m.ncols());
    for i in 0..m.nrows() {
        if i < steps && !sf.d[(i, i)].is_zero() {
            let (q, r) = ub[i].div_rem(&sf.d[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ub[i].is_zero() {
            return None;
        }
    }
    Some(sf.v.mul_vec(&y))
}

/// Columnwise solve of M X = B.
pub fn solve_matrix<T: Scalar>(m: &Matrix<T>, b: &Matrix<T>) -> Option<Matrix<T>> {
    assert_eq!(b.nrows(), m.nrows());
    let sf = smith_normal_form(m);
    let steps = m.nrows().min(m.ncols());
    let mut out = Matrix::zeros(m.ncols(), b.ncols());
    for col in 0..b.ncols() {
        let ub = sf.u.mul_vec(&b.column(col));
        let mut y = vec![T::zero(); m.ncols()];
        for i in 0..m.nrows() {
            if i < steps && !sf.d[(i, i)].is_zero() {
                let (q, r) = ub[i].div_rem(&sf.d[(i, i)]);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !ub[i].is_zero() {
                return None;
            }
        }
        out.set_column(col, &sf.v.mul_vec(&y));
    }
    Some(out)
}

pub fn is_unimodular<T: Scalar>(m: &Matrix<T>) -> bool {
    m.is_square() && m.determinant().abs().is_one()
}
