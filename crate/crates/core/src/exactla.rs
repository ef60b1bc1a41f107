//! Exact rational scalars and a sparse linear-algebra kernel.
//!
//! Elimination is fraction-free: every row is cleared to integers, combined by
//! cross-multiplication and divided by its content afterwards, so intermediate
//! growth stays bounded by the size of the minors.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Exact rational number in lowest terms with positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// `(-1)^e` as a scalar.
pub fn sign_pow(e: i64) -> Scalar {
    if e.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// Parse `"p/q"` or `"p"`.
pub fn parse_scalar(s: &str) -> Result<Scalar, Error> {
    let s = s.trim();
    let bad = || Error::Scalar(format!("cannot parse scalar {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(Error::Scalar(format!("zero denominator in {s:?}")));
    }
    Ok(Scalar::new(p, q))
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Sparse matrix over the rationals. Absent entries are zero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for ((r, c), v) in &self.entries {
            write!(f, " ({r},{c})={}", format_scalar(v))?;
        }
        write!(f, " ]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Matrix::from_rows(&rows)
    }

    /// Build from columns given as sparse maps row -> value.
    pub fn from_columns(rows: usize, columns: &[BTreeMap<usize, Scalar>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (&r, v) in col {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.cols);
        let mut out = vec![Scalar::zero(); self.rows];
        for ((r, c), v) in &self.entries {
            if !x[*c].is_zero() {
                out[*r] += v * &x[*c];
            }
        }
        out
    }

    /// Append `other` as extra columns.
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = self.clone();
        m.cols += other.cols;
        for ((r, c), v) in &other.entries {
            m.entries.insert((*r, c + self.cols), v.clone());
        }
        m
    }

    fn integer_rows(&self) -> Vec<BTreeMap<usize, BigInt>> {
        let mut rows: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); self.rows];
        for ((r, c), v) in &self.entries {
            rows[*r].insert(*c, v.clone());
        }
        rows.into_iter().map(clear_denominators).collect()
    }
}

fn clear_denominators(row: BTreeMap<usize, Scalar>) -> BTreeMap<usize, BigInt> {
    let l = row.values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut out: BTreeMap<usize, BigInt> =
        row.into_iter().map(|(c, v)| (c, (v * Scalar::from_integer(l.clone())).to_integer())).collect();
    primitive(&mut out);
    out
}

fn primitive(row: &mut BTreeMap<usize, BigInt>) {
    let g = row.values().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g > BigInt::one() {
        for v in row.values_mut() {
            *v = &*v / &g;
        }
    }
}

/// Row echelon form by fraction-free elimination. Returns pivot rows with their
/// pivot columns, sorted by pivot column.
fn echelon(m: &Matrix) -> Vec<(usize, BTreeMap<usize, BigInt>)> {
    let mut pending: Vec<BTreeMap<usize, BigInt>> = m.integer_rows().into_iter().filter(|r| !r.is_empty()).collect();
    let mut pivots: Vec<(usize, BTreeMap<usize, BigInt>)> = Vec::new();
    while !pending.is_empty() {
        // choose the row with smallest leading column, preferring short rows
        let (best, _) = pending
            .iter()
            .enumerate()
            .min_by_key(|(_, r)| (*r.keys().next().unwrap(), r.len()))
            .unwrap();
        let prow = pending.swap_remove(best);
        let (&pc, pv) = prow.iter().next().unwrap();
        let pv = pv.clone();
        let mut rest = Vec::with_capacity(pending.len());
        for row in pending.drain(..) {
            let Some(b) = row.get(&pc).cloned() else {
                rest.push(row);
                continue;
            };
            let mut out: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (c, v) in &row {
                out.insert(*c, v * &pv);
            }
            for (c, v) in &prow {
                let e = out.entry(*c).or_insert_with(BigInt::zero);
                *e -= v * &b;
            }
            out.retain(|_, v| !v.is_zero());
            if !out.is_empty() {
                primitive(&mut out);
                rest.push(out);
            }
        }
        pending = rest;
        pivots.push((pc, prow));
    }
    pivots.sort_by_key(|(c, _)| *c);
    pivots
}

/// Reduced row echelon form over the rationals: pivot column -> row with
/// pivot entry 1 and zeros in every other pivot column.
fn rref(m: &Matrix) -> Vec<(usize, BTreeMap<usize, Scalar>)> {
    let ech = echelon(m);
    let mut rows: Vec<(usize, BTreeMap<usize, Scalar>)> = ech
        .into_iter()
        .map(|(pc, r)| {
            let p = Scalar::from_integer(r[&pc].clone());
            (pc, r.into_iter().map(|(c, v)| (c, Scalar::from_integer(v) / &p)).collect())
        })
        .collect();
    for i in (0..rows.len()).rev() {
        let (pc, prow) = rows[i].clone();
        for (_, row) in rows.iter_mut().take(i) {
            if let Some(f) = row.get(&pc).cloned() {
                for (c, v) in &prow {
                    let e = row.entry(*c).or_insert_with(Scalar::zero);
                    *e -= &f * v;
                }
                row.retain(|_, v| !v.is_zero());
            }
        }
    }
    rows
}

/// Rank over the rationals.
pub fn rank(m: &Matrix) -> usize {
    echelon(m).len()
}

/// Basis of the null space; one vector per free column.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let r = rref(m);
    let pivot_cols: Vec<usize> = r.iter().map(|(c, _)| *c).collect();
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Scalar::zero(); m.cols];
        v[free] = Scalar::one();
        for (pc, row) in &r {
            if let Some(x) = row.get(&free) {
                v[*pc] = -x.clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Some `x` with `m x = b`, or `None` when `b` is outside the column space.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(b.len(), m.rows, "right-hand side length");
    let mut bm = Matrix::zeros(m.rows, 1);
    for (i, v) in b.iter().enumerate() {
        bm.set(i, 0, v.clone());
    }
    let aug = m.hcat(&bm);
    let r = rref(&aug);
    let mut x = vec![Scalar::zero(); m.cols];
    for (pc, row) in &r {
        if *pc == m.cols {
            return None;
        }
        if let Some(v) = row.get(&m.cols) {
            x[*pc] = v.clone();
        }
    }
    Some(x)
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn abs_max(v: &[Scalar]) -> Scalar {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Scalar::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::zeros(0, 0)), 0);
        assert_eq!(rank(&Matrix::identity(2)), 2);
        assert_eq!(rank(&Matrix::from_i64(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Matrix::identity(3)).is_empty());
        assert_eq!(kernel_basis(&Matrix::zeros(2, 3)).len(), 3);
        let k = kernel_basis(&Matrix::from_i64(&[&[1, 1]]));
        assert_eq!(k.len(), 1);
        assert_eq!(&k[0][0] + &k[0][1], Scalar::zero());
        assert!(!k[0][0].is_zero());
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve(&Matrix::identity(2), &[int(3), int(5)]), Some(vec![int(3), int(5)]));
        assert_eq!(solve(&Matrix::zeros(1, 1), &[int(1)]), None);
        assert_eq!(solve(&Matrix::from_i64(&[&[2]]), &[int(1)]), Some(vec![frac(1, 2)]));
    }

    #[test]
    fn scalar_strings() {
        assert_eq!(format_scalar(&parse_scalar("6/4").unwrap()), "3/2");
        assert_eq!(format_scalar(&parse_scalar("-2").unwrap()), "-2");
        assert_eq!(format_scalar(&parse_scalar("3/-6").unwrap()), "-1/2");
        assert!(parse_scalar("1/0").unwrap_err().to_string().contains("zero denominator"));
        assert!(parse_scalar("x").is_err());
    }
}
