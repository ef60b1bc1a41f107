//! Dense multilinear maps between ungraded spaces of possibly different
//! dimensions, e.g. actions `g ⊗ V → V` or the slots of a 2-term structure.

use std::fmt;

use num_traits::{One, Zero};

use crate::exactla::{format_scalar, Scalar};

/// Dense coordinate vector.
pub type Dense = Vec<Scalar>;

pub fn zeros(n: usize) -> Dense {
    vec![Scalar::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Dense {
    let mut v = zeros(n);
    v[i] = Scalar::one();
    v
}

pub fn vadd(a: &[Scalar], b: &[Scalar]) -> Dense {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[Scalar], b: &[Scalar]) -> Dense {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vscale(a: &[Scalar], c: &Scalar) -> Dense {
    a.iter().map(|x| x * c).collect()
}

pub fn vadd_assign(a: &mut [Scalar], b: &[Scalar]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

/// `T : V_1 × .. × V_k → W`. Data is row-major over the inputs with the
/// output coordinate fastest.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor {
    in_dims: Vec<usize>,
    out_dim: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor{:?}->{} [", self.in_dims, self.out_dim)?;
        for x in &self.data {
            write!(f, " {}", format_scalar(x))?;
        }
        write!(f, " ]")
    }
}

fn multi_indices(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &d in dims {
        out = out.into_iter().flat_map(|p| (0..d).map(move |i| [p.clone(), vec![i]].concat())).collect();
    }
    out
}

impl Tensor {
    pub fn zeros(in_dims: &[usize], out_dim: usize) -> Self {
        let n = in_dims.iter().product::<usize>() * out_dim;
        Tensor { in_dims: in_dims.to_vec(), out_dim, data: vec![Scalar::zero(); n] }
    }

    /// Linear map given as a matrix with `out` rows and `in` columns.
    pub fn linear(rows: &[Vec<Scalar>], in_dim: usize) -> Self {
        let mut t = Tensor::zeros(&[in_dim], rows.len());
        for (o, row) in rows.iter().enumerate() {
            for (i, x) in row.iter().enumerate() {
                t.set(&[i], o, x.clone());
            }
        }
        t
    }

    pub fn identity(n: usize) -> Self {
        Tensor::from_fn(&[n], n, |idx| unit(n, idx[0]))
    }

    pub fn from_fn<F: Fn(&[usize]) -> Dense>(in_dims: &[usize], out_dim: usize, f: F) -> Self {
        let mut t = Tensor::zeros(in_dims, out_dim);
        for idx in multi_indices(in_dims) {
            let v = f(&idx);
            assert_eq!(v.len(), out_dim);
            let off = t.offset(&idx);
            t.data[off..off + out_dim].clone_from_slice(&v);
        }
        t
    }

    pub fn in_dims(&self) -> &[usize] {
        &self.in_dims
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn arity(&self) -> usize {
        self.in_dims.len()
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Scalar] {
        &mut self.data
    }

    pub fn indices(&self) -> Vec<Vec<usize>> {
        multi_indices(&self.in_dims)
    }

    fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.in_dims.len());
        let mut o = 0;
        for (i, d) in idx.iter().zip(&self.in_dims) {
            assert!(i < d, "index out of range");
            o = o * d + i;
        }
        o * self.out_dim
    }

    /// Output vector on basis inputs.
    pub fn at(&self, idx: &[usize]) -> &[Scalar] {
        let o = self.offset(idx);
        &self.data[o..o + self.out_dim]
    }

    pub fn set(&mut self, idx: &[usize], out: usize, v: Scalar) {
        let o = self.offset(idx);
        self.data[o + out] = v;
    }

    pub fn set_vec(&mut self, idx: &[usize], v: &[Scalar]) {
        let o = self.offset(idx);
        self.data[o..o + self.out_dim].clone_from_slice(v);
    }

    /// Multilinear application to dense vectors.
    pub fn apply(&self, args: &[&[Scalar]]) -> Dense {
        assert_eq!(args.len(), self.in_dims.len());
        let mut out = zeros(self.out_dim);
        let support: Vec<Vec<usize>> =
            args.iter().map(|a| a.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()).collect();
        if support.iter().any(Vec::is_empty) {
            return out;
        }
        let k = args.len();
        let mut pos = vec![0usize; k];
        loop {
            let mut c = Scalar::one();
            let mut off = 0;
            for p in 0..k {
                let i = support[p][pos[p]];
                c *= &args[p][i];
                off = off * self.in_dims[p] + i;
            }
            let off = off * self.out_dim;
            for (x, t) in out.iter_mut().zip(&self.data[off..off + self.out_dim]) {
                if !t.is_zero() {
                    *x += &c * t;
                }
            }
            // odometer over the supports
            let mut p = k;
            loop {
                if p == 0 {
                    return out;
                }
                p -= 1;
                pos[p] += 1;
                if pos[p] < support[p].len() {
                    break;
                }
                pos[p] = 0;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        assert_eq!((&self.in_dims, self.out_dim), (&other.in_dims, other.out_dim));
        Tensor { in_dims: self.in_dims.clone(), out_dim: self.out_dim, data: vadd(&self.data, &other.data) }
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        assert_eq!((&self.in_dims, self.out_dim), (&other.in_dims, other.out_dim));
        Tensor { in_dims: self.in_dims.clone(), out_dim: self.out_dim, data: vsub(&self.data, &other.data) }
    }

    pub fn scaled(&self, c: &Scalar) -> Tensor {
        Tensor { in_dims: self.in_dims.clone(), out_dim: self.out_dim, data: vscale(&self.data, c) }
    }

    /// Matrix rows (out × in) of a linear tensor.
    pub fn matrix_rows(&self) -> Vec<Dense> {
        assert_eq!(self.arity(), 1);
        (0..self.out_dim).map(|o| (0..self.in_dims[0]).map(|i| self.at(&[i])[o].clone()).collect()).collect()
    }

    /// Whether the tensor is skew in all inputs (all input dims must agree).
    pub fn is_skew(&self) -> bool {
        let k = self.arity();
        self.indices().iter().all(|idx| {
            (0..k.saturating_sub(1)).all(|p| {
                let mut sw = idx.clone();
                sw.swap(p, p + 1);
                let a = self.at(idx);
                let b = self.at(&sw);
                a.iter().zip(b).all(|(x, y)| (x + y).is_zero())
            })
        })
    }
}
