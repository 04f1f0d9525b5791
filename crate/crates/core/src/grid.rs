use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Dense complex resource grid of `n_f` subcarriers by `n_t` time symbols.
///
/// Storage is time-symbol major: element `(k, t)` lives at `t * n_f + k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexGrid {
    n_f: usize,
    n_t: usize,
    data: Vec<Complex64>,
}

impl ComplexGrid {
    pub fn zeros(n_f: usize, n_t: usize) -> Self {
        Self::filled(n_f, n_t, Complex64::new(0.0, 0.0))
    }

    pub fn filled(n_f: usize, n_t: usize, value: Complex64) -> Self {
        Self {
            n_f,
            n_t,
            data: vec![value; n_f * n_t],
        }
    }

    pub fn from_fn(n_f: usize, n_t: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n_f * n_t);
        for t in 0..n_t {
            for k in 0..n_f {
                data.push(f(k, t));
            }
        }
        Self { n_f, n_t, data }
    }

    pub fn n_f(&self) -> usize {
        self.n_f
    }

    pub fn n_t(&self) -> usize {
        self.n_t
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n_f, self.n_t)
    }

    #[inline]
    pub fn get(&self, k: usize, t: usize) -> Complex64 {
        self.data[t * self.n_f + k]
    }

    #[inline]
    pub fn set(&mut self, k: usize, t: usize, v: Complex64) {
        self.data[t * self.n_f + k] = v;
    }

    pub fn column(&self, t: usize) -> &[Complex64] {
        &self.data[t * self.n_f..(t + 1) * self.n_f]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    /// Element-wise product. Panics on shape mismatch; callers check shapes.
    pub fn hadamard(&self, other: &ComplexGrid) -> ComplexGrid {
        assert_eq!(self.shape(), other.shape());
        ComplexGrid {
            n_f: self.n_f,
            n_t: self.n_t,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a * b).collect(),
        }
    }

    pub fn mean_power(&self) -> f64 {
        if self.data.is_empty() {
            return 0.0;
        }
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>() / self.data.len() as f64
    }
}
