use num_complex::Complex64;

/// A square matrix stored by columns, each column a row-sorted list of
/// nonzero entries, with a per-column validity mask. A column is valid when
/// every entry in it was computed from data fully present in the truncation.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    dim: usize,
    cols: Vec<Vec<(usize, Complex64)>>,
    valid: Vec<bool>,
}

fn normalize(mut col: Vec<(usize, Complex64)>) -> Vec<(usize, Complex64)> {
    col.sort_by_key(|&(r, _)| r);
    let mut out: Vec<(usize, Complex64)> = Vec::with_capacity(col.len());
    for (r, v) in col {
        match out.last_mut() {
            Some((last, acc)) if *last == r => *acc += v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|&(_, v)| v != Complex64::new(0.0, 0.0));
    out
}

impl Operator {
    /// Builds from raw columns; duplicate rows are summed and zeros dropped.
    pub fn from_columns(dim: usize, cols: Vec<Vec<(usize, Complex64)>>, valid: Vec<bool>) -> Self {
        assert_eq!(cols.len(), dim);
        assert_eq!(valid.len(), dim);
        debug_assert!(cols.iter().flatten().all(|&(r, _)| r < dim));
        Operator {
            dim,
            cols: cols.into_iter().map(normalize).collect(),
            valid,
        }
    }

    pub fn zero(dim: usize) -> Self {
        Operator {
            dim,
            cols: vec![Vec::new(); dim],
            valid: vec![true; dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(vec![Complex64::new(1.0, 0.0); dim])
    }

    pub fn diagonal(entries: Vec<Complex64>) -> Self {
        let dim = entries.len();
        let cols = entries.into_iter().enumerate().map(|(i, v)| vec![(i, v)]).collect();
        Self::from_columns(dim, cols, vec![true; dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn column(&self, j: usize) -> &[(usize, Complex64)] {
        &self.cols[j]
    }

    pub fn is_valid(&self, j: usize) -> bool {
        self.valid[j]
    }

    pub fn valid_mask(&self) -> &[bool] {
        &self.valid
    }

    pub fn valid_count(&self) -> usize {
        self.valid.iter().filter(|&&v| v).count()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    /// `⟨A e_col, e_row⟩`.
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.cols[col]
            .binary_search_by_key(&row, |&(r, _)| r)
            .map(|i| self.cols[col][i].1)
            .unwrap_or_default()
    }

    /// Restricts the valid domain further.
    pub fn with_mask(mut self, mask: &[bool]) -> Self {
        for (v, &m) in self.valid.iter_mut().zip(mask) {
            *v &= m;
        }
        self
    }

    /// `self · rhs`. Column `j` of the product is valid when column `j` of
    /// `rhs` is valid and every column of `self` it reaches is valid.
    pub fn mul(&self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim);
        let mut scratch = vec![Complex64::new(0.0, 0.0); self.dim];
        let mut touched = Vec::new();
        let mut cols = Vec::with_capacity(self.dim);
        let mut valid = Vec::with_capacity(self.dim);
        for (j, col) in rhs.cols.iter().enumerate() {
            let mut ok = rhs.valid[j];
            for &(k, b) in col {
                ok &= self.valid[k];
                for &(r, a) in &self.cols[k] {
                    if scratch[r] == Complex64::new(0.0, 0.0) {
                        touched.push(r);
                    }
                    scratch[r] += a * b;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let out: Vec<(usize, Complex64)> = touched
                .drain(..)
                .map(|r| (r, std::mem::take(&mut scratch[r])))
                .filter(|&(_, v)| v != Complex64::new(0.0, 0.0))
                .collect();
            cols.push(out);
            valid.push(ok);
        }
        Operator { dim: self.dim, cols, valid }
    }

    fn combine(&self, rhs: &Operator, sign: f64) -> Operator {
        assert_eq!(self.dim, rhs.dim);
        let cols = self
            .cols
            .iter()
            .zip(&rhs.cols)
            .map(|(a, b)| {
                let mut c = a.clone();
                c.extend(b.iter().map(|&(r, v)| (r, v * sign)));
                normalize(c)
            })
            .collect();
        let valid = self.valid.iter().zip(&rhs.valid).map(|(&a, &b)| a && b).collect();
        Operator { dim: self.dim, cols, valid }
    }

    pub fn add(&self, rhs: &Operator) -> Operator {
        self.combine(rhs, 1.0)
    }

    pub fn sub(&self, rhs: &Operator) -> Operator {
        self.combine(rhs, -1.0)
    }

    pub fn scale(&self, c: Complex64) -> Operator {
        Operator {
            dim: self.dim,
            cols: self
                .cols
                .iter()
                .map(|col| normalize(col.iter().map(|&(r, v)| (r, v * c)).collect()))
                .collect(),
            valid: self.valid.clone(),
        }
    }

    /// Frobenius norm over the valid columns.
    pub fn frobenius_norm_valid(&self) -> f64 {
        self.cols
            .iter()
            .zip(&self.valid)
            .filter(|(_, &v)| v)
            .flat_map(|(c, _)| c.iter())
            .map(|(_, v)| v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entry modulus over the valid columns.
    pub fn max_abs_valid(&self) -> f64 {
        self.cols
            .iter()
            .zip(&self.valid)
            .filter(|(_, &v)| v)
            .flat_map(|(c, _)| c.iter())
            .map(|(_, v)| v.norm())
            .fold(0.0, f64::max)
    }

    /// Dense row-major copy, for inspection and small tests.
    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let mut m = vec![vec![Complex64::new(0.0, 0.0); self.dim]; self.dim];
        for (j, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                m[r][j] = v;
            }
        }
        m
    }
}
