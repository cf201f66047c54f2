//! Truncated univariate power series with exact rational coefficients.
//!
//! These are the scalar series substituted into each Chern root when a
//! characteristic class is expanded: `e^x` for the Chern character,
//! `x/(1 - e^{-x})` for the Todd class, `1 - e^x` for the alternating
//! wedge character. A series is stored as its coefficients up to an
//! inclusive truncation degree; all arithmetic is exact.

use num_traits::{One, Zero};

use crate::rational::{inv_factorial, sign_pow, Rat};

/// Power series truncated at a fixed degree (inclusive).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    // coeffs[d] is the coefficient of x^d; len() == cutoff + 1.
    coeffs: Vec<Rat>,
}

impl PowerSeries {
    /// The zero series truncated at `cutoff`.
    pub fn zero(cutoff: u32) -> Self {
        PowerSeries {
            coeffs: vec![Rat::zero(); cutoff as usize + 1],
        }
    }

    /// Builds a series from coefficients in degree order, truncating or
    /// zero-padding to `cutoff`.
    pub fn from_coeffs(cutoff: u32, coeffs: Vec<Rat>) -> Self {
        let mut c = coeffs;
        c.resize(cutoff as usize + 1, Rat::zero());
        c.truncate(cutoff as usize + 1);
        PowerSeries { coeffs: c }
    }

    pub fn cutoff(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    /// Coefficient of `x^d` (zero beyond the truncation degree).
    pub fn coeff(&self, d: u32) -> Rat {
        self.coeffs
            .get(d as usize)
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// Order of vanishing at 0, or `None` for the (truncated) zero series.
    pub fn order(&self) -> Option<u32> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|p| p as u32)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.cutoff(), other.cutoff(), "cutoff mismatch");
        PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cutoff(), other.cutoff(), "cutoff mismatch");
        let n = self.coeffs.len();
        let mut out = vec![Rat::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs: out }
    }

    /// Multiplicative inverse; `None` unless the constant term is nonzero.
    pub fn inverse(&self) -> Option<Self> {
        if self.coeffs[0].is_zero() {
            return None;
        }
        let n = self.coeffs.len();
        let inv0 = Rat::one() / self.coeffs[0].clone();
        let mut out = vec![Rat::zero(); n];
        out[0] = inv0.clone();
        for d in 1..n {
            let mut acc = Rat::zero();
            for i in 1..=d {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &out[d - i];
                }
            }
            out[d] = -acc * &inv0;
        }
        Some(PowerSeries { coeffs: out })
    }

    /// Divides by `x^m`, i.e. shifts coefficients down; requires the first
    /// `m` coefficients to vanish.
    pub fn shift_down(&self, m: u32) -> Self {
        assert!(
            self.coeffs.iter().take(m as usize).all(Rat::is_zero),
            "series is not divisible by x^{m}"
        );
        let mut coeffs: Vec<Rat> = self.coeffs[m as usize..].to_vec();
        coeffs.resize(self.coeffs.len(), Rat::zero());
        PowerSeries { coeffs }
    }

    /// Replaces the coefficient of `x^d`.
    pub fn with_coeff(&self, d: u32, value: Rat) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs[d as usize] = value;
        PowerSeries { coeffs }
    }

    /// `e^x` truncated at `cutoff`.
    pub fn exp(cutoff: u32) -> Self {
        PowerSeries {
            coeffs: (0..=cutoff).map(inv_factorial).collect(),
        }
    }

    /// `1 + x`, the per-root factor of the total Chern class.
    pub fn one_plus_x(cutoff: u32) -> Self {
        let mut s = Self::zero(cutoff);
        s.coeffs[0] = Rat::one();
        if cutoff >= 1 {
            s.coeffs[1] = Rat::one();
        }
        s
    }

    /// `x`, the per-root factor of the Euler class.
    pub fn x(cutoff: u32) -> Self {
        let mut s = Self::zero(cutoff);
        if cutoff >= 1 {
            s.coeffs[1] = Rat::one();
        }
        s
    }

    /// `1 - e^x`, the per-root factor of the alternating wedge character.
    pub fn one_minus_exp(cutoff: u32) -> Self {
        let mut s = Self::exp(cutoff).scale(&-Rat::one());
        s.coeffs[0] += Rat::one();
        s
    }

    /// `x/(1 - e^{-x})`, the per-root Todd series, computed by inverting
    /// `(1 - e^{-x})/x = sum_{j>=0} (-1)^j x^j / (j+1)!`.
    pub fn todd(cutoff: u32) -> Self {
        let denom = PowerSeries {
            coeffs: (0..=cutoff)
                .map(|j| sign_pow(j) * inv_factorial(j + 1))
                .collect(),
        };
        denom
            .inverse()
            .expect("series with constant term 1 is invertible")
    }
}
