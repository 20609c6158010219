//! Exact linear algebra over the rationals.
//!
//! Everything here works on dense matrices of [`Rational`] and reduces to a
//! single routine, [`QMatrix::rref`], so that rank, kernel and affine solves
//! agree on pivots and produce canonical, deterministic output.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn qf(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Formats a rational as `num/den`, always with an explicit denominator.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `num/den` or a bare integer. Whitespace around the parts is ignored.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// A dense rows x cols matrix of rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// Reduced row-echelon form together with the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: QMatrix,
    pub pivots: Vec<usize>,
}

/// Solution set `particular + span(kernel)` of an affine system.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub kernel: Vec<Vec<Rational>>,
}

/// Marker for an inconsistent affine system.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct NoSolution;

impl fmt::Display for NoSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("inconsistent linear system")
    }
}

impl std::error::Error for NoSolution {}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row in QMatrix::from_rows");
            entries.extend(row);
        }
        QMatrix {
            rows: n,
            cols,
            entries,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Gauss-Jordan elimination to reduced row-echelon form. The pivot in each
    /// column is the first nonzero entry at or below the current row, so the
    /// result depends only on the input matrix.
    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &factor * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
    }
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Null-space basis read off the reduced form: one vector per free column,
    /// with a 1 in that column and zeros in the other free columns.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        self.free_kernel(self.matrix.cols)
    }

    /// Kernel of the leading `cols` columns; pivots must all lie among them.
    fn free_kernel(&self, cols: usize) -> Vec<Vec<Rational>> {
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Rational::zero(); cols];
                v[free] = Rational::one();
                for (row, &p) in self.pivots.iter().enumerate() {
                    v[p] = -self.matrix.get(row, free).clone();
                }
                v
            })
            .collect()
    }
}

pub fn rank(m: &QMatrix) -> usize {
    m.rref().rank()
}

pub fn kernel_basis(m: &QMatrix) -> Vec<Vec<Rational>> {
    m.rref().kernel_basis()
}

/// Solves `a x = b` exactly. The particular solution sets every free variable
/// to zero.
pub fn solve_affine(a: &QMatrix, b: &[Rational]) -> Result<AffineSolution, NoSolution> {
    assert_eq!(b.len(), a.rows(), "right-hand side length must match rows");
    let cols = a.cols();
    let mut augmented = QMatrix::zeros(a.rows(), cols + 1);
    for (i, bi) in b.iter().enumerate() {
        for j in 0..cols {
            augmented.set(i, j, a.get(i, j).clone());
        }
        augmented.set(i, cols, bi.clone());
    }
    let ech = augmented.rref();
    if ech.pivots.last() == Some(&cols) {
        return Err(NoSolution);
    }
    let mut particular = vec![Rational::zero(); cols];
    for (row, &p) in ech.pivots.iter().enumerate() {
        particular[p] = ech.matrix.get(row, cols).clone();
    }
    let kernel = ech.free_kernel(cols);
    Ok(AffineSolution { particular, kernel })
}

/// Whether `v` lies in the row span of `rows` (all of the same length).
pub fn in_span(rows: &[Vec<Rational>], v: &[Rational]) -> bool {
    let cols = v.len();
    let base = QMatrix::from_rows(cols, rows.to_vec());
    let mut extended = rows.to_vec();
    extended.push(v.to_vec());
    rank(&base) == rank(&QMatrix::from_rows(cols, extended))
}
