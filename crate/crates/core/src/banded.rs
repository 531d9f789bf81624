//! Symmetric positive definite band matrices and their Cholesky factor.

use crate::error::{Error, Result};

/// Lower band of a symmetric matrix: `band[i][k]` holds entry `(i, i − k)`.
#[derive(Debug, Clone)]
pub struct BandedSpd {
    n: usize,
    bw: usize,
    band: Vec<f64>,
}

impl BandedSpd {
    pub fn zeros(n: usize, bandwidth: usize) -> Self {
        BandedSpd {
            n,
            bw: bandwidth,
            band: vec![0.0; n * (bandwidth + 1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn idx(&self, i: usize, k: usize) -> usize {
        i * (self.bw + 1) + k
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        if i - j > self.bw {
            0.0
        } else {
            self.band[self.idx(i, i - j)]
        }
    }

    /// Adds `v` to entry `(i, j)` (and its mirror).
    ///
    /// # Panics
    /// If `(i, j)` lies outside the band.
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        assert!(i - j <= self.bw, "entry ({i}, {j}) outside bandwidth {}", self.bw);
        let at = self.idx(i, i - j);
        self.band[at] += v;
    }

    /// Adds `w · a aᵀ` for a vector `a` supported on `start..start + a.len()`.
    pub fn add_outer(&mut self, start: usize, a: &[f64], w: f64) {
        for (p, &ap) in a.iter().enumerate() {
            for (q, &aq) in a.iter().enumerate().take(p + 1) {
                self.add(start + p, start + q, w * ap * aq);
            }
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        for i in 0..self.n {
            for k in 0..=self.bw.min(i) {
                let v = self.band[self.idx(i, k)];
                y[i] += v * x[i - k];
                if k > 0 {
                    y[i - k] += v * x[i];
                }
            }
        }
        y
    }

    /// In-place band Cholesky `A = L Lᵀ`.
    pub fn cholesky(mut self) -> Result<BandedCholesky> {
        for i in 0..self.n {
            let lo = i.saturating_sub(self.bw);
            for j in lo..=i {
                let mut s = self.band[self.idx(i, i - j)];
                let kl = lo.max(j.saturating_sub(self.bw));
                for k in kl..j {
                    s -= self.band[self.idx(i, i - k)] * self.band[self.idx(j, j - k)];
                }
                let at = self.idx(i, i - j);
                if i == j {
                    if !(s > 0.0) || !s.is_finite() {
                        return Err(Error::SingularSystem { pivot: i });
                    }
                    self.band[at] = s.sqrt();
                } else {
                    self.band[at] = s / self.band[self.idx(j, 0)];
                }
            }
        }
        Ok(BandedCholesky { factor: self })
    }
}

#[derive(Debug, Clone)]
pub struct BandedCholesky {
    factor: BandedSpd,
}

impl BandedCholesky {
    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let l = &self.factor;
        let n = l.n;
        assert_eq!(rhs.len(), n);
        let mut y = rhs.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for k in 1..=l.bw.min(i) {
                s -= l.band[l.idx(i, k)] * y[i - k];
            }
            y[i] = s / l.band[l.idx(i, 0)];
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in 1..=l.bw.min(n - 1 - i) {
                s -= l.band[l.idx(i + k, k)] * y[i + k];
            }
            y[i] = s / l.band[l.idx(i, 0)];
        }
        y
    }
}
