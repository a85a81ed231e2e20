use thiserror::Error;

use super::number::LabNumber;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LuError {
    #[error("matrix is singular at column {column}")]
    Singular { column: usize },
    #[error("dimension mismatch: matrix is {rows}x{rows}, right-hand side has {rhs} entries")]
    Dimension { rows: usize, rhs: usize },
}

/// Dense square matrix, row-major.
#[derive(Debug, Clone)]
pub struct Matrix<K> {
    n: usize,
    data: Vec<K>,
}

impl<K: LabNumber> Matrix<K> {
    pub fn filled(n: usize, x: K) -> Self {
        Self {
            n,
            data: vec![x; n * n],
        }
    }

    pub fn zeros(n: usize) -> Self {
        Self::filled(n, K::from_f64(0.0))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> K {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: K) {
        self.data[i * self.n + j] = x;
    }

    pub fn map(&self, mut f: impl FnMut(K) -> K) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.n {
            self.data.swap(a * self.n + j, b * self.n + j);
        }
    }
}

/// Solve `a x = f` by LU decomposition with partial pivoting.
///
/// Pivots are chosen with the kind's own `abs` and `<`; ties keep the
/// topmost row. A pivot the kind considers zero is reported as singular.
pub fn lu_solve<K: LabNumber>(a: &Matrix<K>, f: &[K]) -> Result<Vec<K>, LuError> {
    let n = a.order();
    if f.len() != n {
        return Err(LuError::Dimension { rows: n, rhs: f.len() });
    }
    let mut lu = a.clone();
    let mut rhs = f.to_vec();

    for k in 0..n {
        let mut p = k;
        for i in k + 1..n {
            if lu.get(p, k).abs().lt(lu.get(i, k).abs()) {
                p = i;
            }
        }
        if lu.get(p, k).is_zero() {
            return Err(LuError::Singular { column: k });
        }
        lu.swap_rows(k, p);
        rhs.swap(k, p);

        let pivot = lu.get(k, k);
        for i in k + 1..n {
            let l = lu.get(i, k).div(pivot);
            lu.set(i, k, l);
            for j in k + 1..n {
                lu.set(i, j, lu.get(i, j).sub(l.mul(lu.get(k, j))));
            }
        }
    }

    // forward: L y = P f, unit diagonal
    for i in 0..n {
        let mut y = rhs[i];
        for (j, &r) in rhs.iter().enumerate().take(i) {
            y = y.sub(lu.get(i, j).mul(r));
        }
        rhs[i] = y;
    }
    // backward: U x = y
    for i in (0..n).rev() {
        let mut x = rhs[i];
        for (j, &r) in rhs.iter().enumerate().skip(i + 1) {
            x = x.sub(lu.get(i, j).mul(r));
        }
        rhs[i] = x.div(lu.get(i, i));
    }
    Ok(rhs)
}
