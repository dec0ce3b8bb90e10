//! Truncated integer power series in `q`, with constructors for the theta
//! series and eta-type products whose coefficients are representation counts:
//!
//! ```text
//! phi(q) = sum_{n in Z} q^(n^2) = 1 + 2q + 2q^4 + 2q^9 + ...
//! psi(q) = sum_{n >= 0} q^(n(n+1)/2) = 1 + q + q^3 + q^6 + ...
//! E_k    = prod_{n >= 1} (1 - q^(kn))
//! ```
//!
//! `phi(q^a)phi(q^b)phi(q^c)phi(q^d)` generates `N(a,b,c,d; n)` and
//! `psi(q^a)psi(q^b)psi(q^c)psi(q^d)` generates `t'(a,b,c,d; n)`, so series
//! products give a convolution route to the same counts the enumeration
//! oracle produces.
//!
//! A [`Series`] knows its coefficients up to a truncation order `T`; terms of
//! higher degree are unknown, not zero. Two series are therefore only ever
//! compared up to the smaller truncation ([`Series::first_mismatch`]).
//! Coefficients are exact `i64` values and all arithmetic is overflow-checked.

use crate::error::{Error, Result};
use crate::oracle::Form;

/// Integer power series known up to degree `truncation()`.
#[derive(Debug, Clone)]
pub struct Series {
    coeffs: Vec<i64>,
}

impl Series {
    /// Wrap a coefficient vector; `coeffs[i]` is the coefficient of `q^i`.
    pub fn new(coeffs: Vec<i64>) -> Series {
        assert!(!coeffs.is_empty(), "a series knows at least its constant term");
        Series { coeffs }
    }

    pub fn zero(truncation: usize) -> Series {
        Series { coeffs: vec![0; truncation + 1] }
    }

    pub fn one(truncation: usize) -> Series {
        let mut s = Series::zero(truncation);
        s.coeffs[0] = 1;
        s
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^i`; panics beyond the truncation, where the value is
    /// unknown rather than zero.
    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Series) -> Series {
        self.zip_with(rhs, |a, b| a.checked_add(b).expect("series coefficient overflow"))
    }

    pub fn sub(&self, rhs: &Series) -> Series {
        self.zip_with(rhs, |a, b| a.checked_sub(b).expect("series coefficient overflow"))
    }

    fn zip_with(&self, rhs: &Series, f: impl Fn(i64, i64) -> i64) -> Series {
        let t = self.truncation().min(rhs.truncation());
        Series::new((0..=t).map(|i| f(self.coeffs[i], rhs.coeffs[i])).collect())
    }

    /// Cauchy product truncated at the smaller of the two truncations.
    pub fn mul(&self, rhs: &Series) -> Series {
        let t = self.truncation().min(rhs.truncation());
        let mut out = vec![0i64; t + 1];
        for (i, &a) in self.coeffs.iter().take(t + 1).enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().take(t + 1 - i).enumerate() {
                if b == 0 {
                    continue;
                }
                let term = a.checked_mul(b).expect("series coefficient overflow");
                out[i + j] = out[i + j].checked_add(term).expect("series coefficient overflow");
            }
        }
        Series::new(out)
    }

    /// Multiply by `q^k`, keeping the truncation.
    pub fn shift(&self, k: usize) -> Series {
        let t = self.truncation();
        let mut out = vec![0i64; t + 1];
        if k <= t {
            out[k..].copy_from_slice(&self.coeffs[..=t - k]);
        }
        Series::new(out)
    }

    pub fn scale(&self, factor: i64) -> Series {
        Series::new(
            self.coeffs
                .iter()
                .map(|&c| c.checked_mul(factor).expect("series coefficient overflow"))
                .collect(),
        )
    }

    /// The series of coefficients along an arithmetic progression:
    /// coefficient `j` of the result is the coefficient of
    /// `q^(stride*j + offset)` here.
    pub fn extract(&self, stride: usize, offset: usize) -> Result<Series> {
        assert!(stride >= 1);
        if offset > self.truncation() {
            return Err(Error::Domain(format!(
                "extract offset {offset} exceeds truncation {}",
                self.truncation()
            )));
        }
        let t = (self.truncation() - offset) / stride;
        Ok(Series::new((0..=t).map(|j| self.coeffs[stride * j + offset]).collect()))
    }

    /// First index up to the smaller truncation where the two series differ.
    pub fn first_mismatch(&self, rhs: &Series) -> Option<usize> {
        let t = self.truncation().min(rhs.truncation());
        (0..=t).find(|&i| self.coeffs[i] != rhs.coeffs[i])
    }

    /// Equality up to the smaller truncation.
    pub fn agrees_with(&self, rhs: &Series) -> bool {
        self.first_mismatch(rhs).is_none()
    }
}

/// `phi(q^k)` to order `truncation`: 1 at degree 0 and 2 at each `k*j^2`.
pub fn phi(k: u64, truncation: usize) -> Series {
    let mut s = Series::one(truncation);
    let mut j = 1u64;
    while let Some(idx) = degree(k * j * j, truncation) {
        s.coeffs[idx] = 2;
        j += 1;
    }
    s
}

/// `psi(q^k)` to order `truncation`: 1 at each `k*j(j+1)/2`.
pub fn psi(k: u64, truncation: usize) -> Series {
    let mut s = Series::zero(truncation);
    let mut j = 0u64;
    while let Some(idx) = degree(k * j * (j + 1) / 2, truncation) {
        s.coeffs[idx] = 1;
        j += 1;
    }
    s
}

fn degree(d: u64, truncation: usize) -> Option<usize> {
    (d <= truncation as u64).then_some(d as usize)
}

/// `E_k^e = prod_{n >= 1} (1 - q^(kn))^e` to order `truncation`. Factors with
/// `kn` beyond the truncation are 1 and are skipped.
pub fn eta_pow(k: u64, e: u32, truncation: usize) -> Series {
    assert!(k >= 1 && e >= 1);
    let mut coeffs = vec![0i64; truncation + 1];
    coeffs[0] = 1;
    let mut kn = k as usize;
    while kn <= truncation {
        for _ in 0..e {
            // multiply in place by (1 - q^kn)
            for i in (kn..=truncation).rev() {
                coeffs[i] =
                    coeffs[i].checked_sub(coeffs[i - kn]).expect("series coefficient overflow");
            }
        }
        kn += k as usize;
    }
    Series::new(coeffs)
}

/// Generating series of `N(a,b,c,d; n)`: the product of the four `phi(q^k)`.
pub fn gen_n(form: Form, truncation: usize) -> Series {
    let [a, b, c, d] = form.coefficients();
    phi(a, truncation).mul(&phi(b, truncation)).mul(&phi(c, truncation)).mul(&phi(d, truncation))
}

/// Generating series of `t'(a,b,c,d; n)`: the product of the four `psi(q^k)`.
pub fn gen_t_prime(form: Form, truncation: usize) -> Series {
    let [a, b, c, d] = form.coefficients();
    psi(a, truncation).mul(&psi(b, truncation)).mul(&psi(c, truncation)).mul(&psi(d, truncation))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn phi_small() {
        assert_eq!(phi(1, 5).coeffs(), &[1, 2, 0, 0, 2, 0]);
        assert_eq!(phi(2, 4).coeffs(), &[1, 0, 2, 0, 0]);
        assert_eq!(phi(1, 0).coeffs(), &[1]);
    }

    #[test]
    fn psi_small() {
        assert_eq!(psi(1, 7).coeffs(), &[1, 1, 0, 1, 0, 0, 1, 0]);
        assert_eq!(psi(3, 9).coeffs(), &[1, 0, 0, 1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(psi(1, 0).coeffs(), &[1]);
    }

    #[test]
    fn eta_small() {
        assert_eq!(eta_pow(1, 1, 5).coeffs(), &[1, -1, -1, 0, 0, 1]);
        assert_eq!(eta_pow(6, 4, 12).coeff(12), 2);
        assert_eq!(eta_pow(6, 4, 0).coeffs(), &[1]);
    }

    #[test]
    fn mul_truncates_to_min() {
        let p = phi(1, 4);
        assert_eq!(p.mul(&Series::one(4)).coeffs(), p.coeffs());
        assert_eq!(psi(1, 6).mul(&psi(1, 6)).coeff(2), 1);
        // by direct convolution of the two triangular-support series
        assert_eq!(psi(1, 10).mul(&psi(3, 10)).coeff(4), 1);
        assert_eq!(phi(1, 9).mul(&psi(1, 4)).truncation(), 4);
    }

    #[test]
    fn extract_progressions() {
        assert_eq!(phi(1, 16).extract(8, 0).unwrap().coeffs(), &[1, 0, 2]);
        let s = psi(1, 10);
        assert_eq!(s.extract(1, 0).unwrap().coeffs(), s.coeffs());
        assert_eq!(s.extract(8, 6).unwrap().coeffs(), &[1]);
        assert!(s.extract(8, 11).is_err());
    }

    #[test]
    fn gen_n_small() {
        let s = gen_n(Form::of(1, 1, 1, 1), 4);
        assert_eq!(s.coeff(0), 1);
        assert_eq!(s.coeff(1), 8);
        assert_eq!(s.coeff(4), 24);
        assert_eq!(gen_n(Form::of(1, 1, 3, 3), 0).coeff(0), 1);
    }

    #[test]
    fn gen_t_prime_small() {
        let s = gen_t_prime(Form::of(1, 1, 1, 1), 2);
        assert_eq!(s.coeff(0), 1);
        assert_eq!(s.coeff(1), 4);
        assert_eq!(gen_t_prime(Form::of(1, 3, 9, 9), 3).coeff(3), 2);
        assert_eq!(gen_t_prime(Form::of(1, 1, 3, 3), 4).coeff(4), 6);
    }

    /// phi(q) = phi(q^4) + 2q*psi(q^8) at small order.
    #[test]
    fn theta_dissection() {
        let lhs = phi(1, 128);
        let rhs = phi(4, 128).add(&psi(8, 128).shift(1).scale(2));
        assert_eq!(lhs.first_mismatch(&rhs), None);
    }

    /// psi(q)psi(q^3) = phi(q^6)psi(q^4) + q*psi(q^12)phi(q^2) at small order.
    #[test]
    fn psi_product_dissection() {
        let t = 128;
        let lhs = psi(1, t).mul(&psi(3, t));
        let rhs = phi(6, t).mul(&psi(4, t)).add(&psi(12, t).mul(&phi(2, t)).shift(1));
        assert_eq!(lhs.first_mismatch(&rhs), None);
    }

    #[test]
    fn mismatch_reports_first_index() {
        let a = psi(1, 10);
        let mut coeffs = a.coeffs().to_vec();
        coeffs[6] += 1;
        let b = Series::new(coeffs);
        assert_eq!(a.first_mismatch(&b), Some(6));
        assert!(!a.agrees_with(&b));
    }

    fn small_series() -> impl Strategy<Value = Series> {
        proptest::collection::vec(-50i64..=50, 1..=24).prop_map(Series::new)
    }

    proptest! {
        #[test]
        fn mul_commutes(a in small_series(), b in small_series()) {
            let ab = a.mul(&b);
            let ba = b.mul(&a);
            prop_assert_eq!(ab.coeffs(), ba.coeffs());
        }

        #[test]
        fn mul_associates(a in small_series(), b in small_series(), c in small_series()) {
            let lhs = a.mul(&b).mul(&c);
            let rhs = a.mul(&b.mul(&c));
            prop_assert_eq!(lhs.coeffs(), rhs.coeffs());
        }
    }
}
