//! Dense matrices over a Euclidean domain and the Smith normal form.

use std::fmt;

use crate::ring::EuclideanDomain;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<E>>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_rows(cols: usize, data: Vec<Vec<E>>) -> Self {
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows: data.len(), cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![vec![value; cols]; rows] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[Vec<E>] {
        &self.data
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.cols, other.cols, "stacking matrices of different widths");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: data.len(), cols: self.cols, data }
    }

    /// Keeps the first `n` columns.
    pub fn left_columns(&self, n: usize) -> Matrix<E> {
        Matrix::from_rows(n, self.data.iter().map(|r| r[..n].to_vec()).collect())
    }

    pub fn select_rows(&self, range: std::ops::Range<usize>) -> Matrix<E> {
        Matrix::from_rows(self.cols, self.data[range].to_vec())
    }
}

impl<E: Clone> Matrix<E> {
    pub fn identity<D: EuclideanDomain<Elem = E>>(d: &D, n: usize) -> Self {
        let mut m = Matrix::filled(n, n, d.zero());
        for i in 0..n {
            m.data[i][i] = d.one();
        }
        m
    }

    pub fn zeros<D: EuclideanDomain<Elem = E>>(d: &D, rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, d.zero())
    }

    pub fn mul<D: EuclideanDomain<Elem = E>>(&self, d: &D, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(d, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if d.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = d.mul(a, &other.data[k][j]);
                    out.data[i][j] = d.add(&out.data[i][j], &prod);
                }
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron<D: EuclideanDomain<Elem = E>>(&self, d: &D, other: &Matrix<E>) -> Matrix<E> {
        let mut out = Matrix::zeros(d, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self.data[i][j];
                if d.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.data[i * other.rows + k][j * other.cols + l] = d.mul(a, &other.data[k][l]);
                    }
                }
            }
        }
        out
    }

    pub fn is_identity<D: EuclideanDomain<Elem = E>>(&self, d: &D) -> bool
    where
        E: PartialEq,
    {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let want = if i == j { d.one() } else { d.zero() };
                    self.data[i][j] == want
                })
            })
    }
}

impl<E: fmt::Display> fmt::Display for Matrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.data {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// `U * A * V = D` with `D` diagonal, `d_1 | d_2 | ...`, and `U`, `V` invertible.
#[derive(Clone, Debug)]
pub struct Smith<E> {
    pub diagonal: Matrix<E>,
    pub u: Matrix<E>,
    pub u_inv: Matrix<E>,
    pub v: Matrix<E>,
    pub v_inv: Matrix<E>,
    pub rank: usize,
}

impl<E: Clone> Smith<E> {
    /// Diagonal entries `d_1, ..., d_min(rows, cols)` (zeros included).
    pub fn invariant_factors(&self) -> Vec<E> {
        let n = self.diagonal.rows().min(self.diagonal.cols());
        (0..n).map(|i| self.diagonal.get(i, i).clone()).collect()
    }
}

struct SmithCalc<'a, D: EuclideanDomain> {
    d: &'a D,
    a: Matrix<D::Elem>,
    u: Matrix<D::Elem>,
    u_inv: Matrix<D::Elem>,
    v: Matrix<D::Elem>,
    v_inv: Matrix<D::Elem>,
}

impl<D: EuclideanDomain> SmithCalc<'_, D> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.data.swap(i, j);
        self.u.data.swap(i, j);
        for row in self.u_inv.data.iter_mut() {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.data.iter_mut() {
            row.swap(i, j);
        }
        for row in self.v.data.iter_mut() {
            row.swap(i, j);
        }
        self.v_inv.data.swap(i, j);
    }

    /// row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: &D::Elem) {
        let d = self.d;
        for m in [&mut self.a, &mut self.u] {
            let src = m.data[j].clone();
            for (x, s) in m.data[i].iter_mut().zip(src.iter()) {
                *x = d.add(x, &d.mul(c, s));
            }
        }
        // U_inv <- U_inv * (I - c e_ij): col_j -= c * col_i
        for row in self.u_inv.data.iter_mut() {
            let t = d.mul(c, &row[i]);
            row[j] = d.sub(&row[j], &t);
        }
    }

    /// col_j += c * col_i
    fn add_col(&mut self, j: usize, i: usize, c: &D::Elem) {
        let d = self.d;
        for m in [&mut self.a, &mut self.v] {
            for row in m.data.iter_mut() {
                let t = d.mul(c, &row[i]);
                row[j] = d.add(&row[j], &t);
            }
        }
        // V_inv <- (I - c e_ij) * V_inv: row_i -= c * row_j
        let src = self.v_inv.data[j].clone();
        for (x, s) in self.v_inv.data[i].iter_mut().zip(src.iter()) {
            *x = d.sub(x, &d.mul(c, s));
        }
    }

    fn scale_row(&mut self, i: usize, unit: &D::Elem) {
        let d = self.d;
        let inv = d.unit_inverse(unit);
        for m in [&mut self.a, &mut self.u] {
            for x in m.data[i].iter_mut() {
                *x = d.mul(x, unit);
            }
        }
        for row in self.u_inv.data.iter_mut() {
            row[i] = d.mul(&row[i], &inv);
        }
    }

    fn pivot_search(&self, t: usize) -> Option<(usize, usize)> {
        let d = self.d;
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let x = &self.a.data[i][j];
                if d.is_zero(x) {
                    continue;
                }
                match best {
                    Some((bi, bj)) if d.size_cmp(x, &self.a.data[bi][bj]).is_ge() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(&mut self) -> usize {
        let d = self.d;
        let n = self.a.rows.min(self.a.cols);
        let mut rank = 0;
        for t in 0..n {
            let Some((pi, pj)) = self.pivot_search(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..self.a.rows {
                    if d.is_zero(&self.a.data[i][t]) {
                        continue;
                    }
                    let (q, r) = d.div_rem(&self.a.data[i][t], &self.a.data[t][t]);
                    self.add_row(i, t, &d.neg(&q));
                    if !d.is_zero(&r) {
                        self.swap_rows(t, i);
                        dirty = true;
                    }
                }
                for j in t + 1..self.a.cols {
                    if d.is_zero(&self.a.data[t][j]) {
                        continue;
                    }
                    let (q, r) = d.div_rem(&self.a.data[t][j], &self.a.data[t][t]);
                    self.add_col(j, t, &d.neg(&q));
                    if !d.is_zero(&r) {
                        self.swap_cols(t, j);
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // divisibility condition on the remaining block
                let pivot = self.a.data[t][t].clone();
                let offender = (t + 1..self.a.rows).find(|&i| {
                    (t + 1..self.a.cols).any(|j| !d.divides(&pivot, &self.a.data[i][j]))
                });
                match offender {
                    Some(i) => self.add_row(t, i, &d.one()),
                    None => break,
                }
            }
            let (_, unit) = d.normalize(&self.a.data[t][t]);
            let inv = d.unit_inverse(&unit);
            self.scale_row(t, &inv);
            rank += 1;
        }
        rank
    }
}

pub fn smith_normal_form<D: EuclideanDomain>(d: &D, a: &Matrix<D::Elem>) -> Smith<D::Elem> {
    let mut calc = SmithCalc {
        d,
        a: a.clone(),
        u: Matrix::identity(d, a.rows),
        u_inv: Matrix::identity(d, a.rows),
        v: Matrix::identity(d, a.cols),
        v_inv: Matrix::identity(d, a.cols),
    };
    let rank = calc.run();
    let smith = Smith {
        diagonal: calc.a,
        u: calc.u,
        u_inv: calc.u_inv,
        v: calc.v,
        v_inv: calc.v_inv,
        rank,
    };
    #[cfg(test)]
    verify_smith(d, a, &smith).expect("Smith normal form self-check");
    smith
}

/// Re-checks `U A V = D`, divisibility of the diagonal, and invertibility of `U`, `V`.
pub fn verify_smith<D: EuclideanDomain>(
    d: &D,
    a: &Matrix<D::Elem>,
    s: &Smith<D::Elem>,
) -> Result<(), String> {
    if s.u.mul(d, a).mul(d, &s.v) != s.diagonal {
        return Err("U*A*V differs from D".into());
    }
    for i in 0..s.diagonal.rows() {
        for j in 0..s.diagonal.cols() {
            if i != j && !d.is_zero(s.diagonal.get(i, j)) {
                return Err(format!("off-diagonal entry at ({i},{j})"));
            }
        }
    }
    let diag = s.invariant_factors();
    for w in diag.windows(2) {
        if !d.divides(&w[0], &w[1]) {
            return Err(format!("{} does not divide {}", w[0], w[1]));
        }
    }
    if !s.u.mul(d, &s.u_inv).is_identity(d) || !s.v.mul(d, &s.v_inv).is_identity(d) {
        return Err("transform is not invertible".into());
    }
    Ok(())
}

/// Basis of `{x : x A = 0}` as the rows of the returned matrix.
pub fn left_kernel<D: EuclideanDomain>(d: &D, a: &Matrix<D::Elem>) -> Matrix<D::Elem> {
    let s = smith_normal_form(d, a);
    s.u.select_rows(s.rank..a.rows())
}
