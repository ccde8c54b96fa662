//! Dense rank-R arrays of para-complex values with a common dimension per
//! axis. Index order follows the tensor's component label order, e.g.
//! `gamma[[c, a, b]]` holds the coefficient with upper index `c` and lower
//! pair `(a, b)`.

use std::ops::{Index, IndexMut};

use crate::paracomplex::ParaComplex;

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<const R: usize> {
    dim: usize,
    data: Vec<ParaComplex>,
}

impl<const R: usize> Tensor<R> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ParaComplex::ZERO; dim.pow(R as u32)],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    fn offset(&self, idx: [usize; R]) -> usize {
        let mut off = 0;
        for i in idx {
            debug_assert!(i < self.dim);
            off = off * self.dim + i;
        }
        off
    }

    /// Largest entry magnitude.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest magnitude of `self - other`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).norm())
            .fold(0.0, f64::max)
    }
}

impl<const R: usize> Index<[usize; R]> for Tensor<R> {
    type Output = ParaComplex;
    #[inline]
    fn index(&self, idx: [usize; R]) -> &ParaComplex {
        &self.data[self.offset(idx)]
    }
}

impl<const R: usize> IndexMut<[usize; R]> for Tensor<R> {
    #[inline]
    fn index_mut(&mut self, idx: [usize; R]) -> &mut ParaComplex {
        let off = self.offset(idx);
        &mut self.data[off]
    }
}
