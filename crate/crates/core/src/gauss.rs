//! Gauss sums of finite quadratic forms in 256-bit floating point.
//!
//! For a nondegenerate form, `sum_x exp(pi i q(x)) = sqrt|A| * exp(pi i s / 4)`
//! where `s` is the signature mod 8 of any even lattice with that form.

use std::collections::BTreeMap;

use astro_float::{BigFloat, Consts, RoundingMode};

use crate::error::{Error, Result};
use crate::finite_form::{FiniteQuadraticForm, Q64};

const PRECISION: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

/// Relative tolerance for the modulus and phase checks.
pub const GAUSS_TOLERANCE: f64 = 1e-20;

/// Gauss sum as `(re, im)` at 256-bit precision.
pub fn gauss_sum(form: &FiniteQuadraticForm, bound: u64) -> Result<(BigFloat, BigFloat)> {
    let mut counts: BTreeMap<Q64, i64> = BTreeMap::new();
    for x in form.elements(bound)? {
        *counts.entry(form.q(&x)).or_insert(0) += 1;
    }
    let mut cc = Consts::new().map_err(|e| Error::Internal(format!("{e:?}")))?;
    let pi = cc.pi(PRECISION, RM);
    let mut re = BigFloat::from_i64(0, PRECISION);
    let mut im = BigFloat::from_i64(0, PRECISION);
    for (v, c) in counts {
        let num = BigFloat::from_i64(*v.numer(), PRECISION);
        let den = BigFloat::from_i64(*v.denom(), PRECISION);
        let angle = pi.mul(&num, PRECISION, RM).div(&den, PRECISION, RM);
        let w = BigFloat::from_i64(c, PRECISION);
        re = re.add(&angle.cos(PRECISION, RM, &mut cc).mul(&w, PRECISION, RM), PRECISION, RM);
        im = im.add(&angle.sin(PRECISION, RM, &mut cc).mul(&w, PRECISION, RM), PRECISION, RM);
    }
    Ok((re, im))
}

fn to_f64(x: &BigFloat) -> f64 {
    // the values compared here are tiny or moderate; the decimal round trip is exact enough
    format!("{x}").parse::<f64>().unwrap_or(f64::NAN)
}

/// Signature mod 8 determined by the form (Milgram's formula).
///
/// Fails with [`Error::DegenerateForm`] if the Gauss sum does not have modulus
/// `sqrt|A|` or its phase is not a multiple of `pi/4`.
pub fn milgram_signature(form: &FiniteQuadraticForm, bound: u64) -> Result<u8> {
    let (re, im) = gauss_sum(form, bound)?;
    let order = BigFloat::from_u64(form.order(), PRECISION);
    let norm2 = re.mul(&re, PRECISION, RM).add(&im.mul(&im, PRECISION, RM), PRECISION, RM);
    let rel = norm2.sub(&order, PRECISION, RM).div(&order, PRECISION, RM).abs();
    if to_f64(&rel).partial_cmp(&GAUSS_TOLERANCE) != Some(std::cmp::Ordering::Less) {
        return Err(Error::DegenerateForm);
    }
    let root = order.sqrt(PRECISION, RM);
    let (c, s) = (re.div(&root, PRECISION, RM), im.div(&root, PRECISION, RM));
    let half = BigFloat::from_i64(1, PRECISION)
        .div(&BigFloat::from_i64(2, PRECISION), PRECISION, RM)
        .sqrt(PRECISION, RM);
    let zero = BigFloat::from_i64(0, PRECISION);
    let one = BigFloat::from_i64(1, PRECISION);
    let neg = |x: &BigFloat| zero.sub(x, PRECISION, RM);
    let roots: [(BigFloat, BigFloat); 8] = [
        (one.clone(), zero.clone()),
        (half.clone(), half.clone()),
        (zero.clone(), one.clone()),
        (neg(&half), half.clone()),
        (neg(&one), zero.clone()),
        (neg(&half), neg(&half)),
        (zero.clone(), neg(&one)),
        (half.clone(), neg(&half)),
    ];
    for (k, (rc, rs)) in roots.iter().enumerate() {
        let dc = c.sub(rc, PRECISION, RM).abs();
        let ds = s.sub(rs, PRECISION, RM).abs();
        if to_f64(&dc) < GAUSS_TOLERANCE && to_f64(&ds) < GAUSS_TOLERANCE {
            return Ok(k as u8);
        }
    }
    Err(Error::DegenerateForm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclic_forms() {
        // <2>: Z/2(1/2), signature 1
        let f = FiniteQuadraticForm::cyclic(2, Q64::new(1, 2)).unwrap();
        assert_eq!(milgram_signature(&f, 100).unwrap(), 1);
        let g = FiniteQuadraticForm::cyclic(2, Q64::new(3, 2)).unwrap();
        assert_eq!(milgram_signature(&g, 100).unwrap(), 7);
        assert_eq!(milgram_signature(&FiniteQuadraticForm::trivial(), 1).unwrap(), 0);
    }

    #[test]
    fn degenerate_form_rejected() {
        // Z/2 with q = 0 has a nontrivial radical
        let f = FiniteQuadraticForm::cyclic(2, Q64::new(0, 1)).unwrap();
        assert_eq!(milgram_signature(&f, 100), Err(Error::DegenerateForm));
    }
}
