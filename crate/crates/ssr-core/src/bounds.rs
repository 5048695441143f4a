//! Length and compression formulas, and the gap ratios they imply.

use num_rational::Ratio;
use thiserror::Error;

use crate::gadgets::GadgetVariant;
use crate::hybrid::Counts;

pub type Q = Ratio<i64>;

/// 5·m2 + C·m3 + 7·n, C = 16 (B4) or 22 (A6).
pub fn length_base(c: Counts, variant: GadgetVariant) -> usize {
    5 * c.m2 + variant.three_var_constant() * c.m3 + 7 * c.n
}

/// 3·m2 + C·m3 + 5·n, C = 12 (B4) or 14 (A6).
pub fn compression_base(c: Counts, variant: GadgetVariant) -> usize {
    3 * c.m2 + variant.compression_constant() * c.m3 + 5 * c.n
}

/// Length reached by the assembled superstring of an assignment satisfying
/// every equation: one more letter per circle than [`length_base`], since the
/// border gadget of a circle keeps 13 of its 20 letters.
pub fn attained_length_base(c: Counts, variant: GadgetVariant) -> usize {
    length_base(c, variant) + c.n
}

/// Compression counterpart of [`attained_length_base`].
pub fn attained_compression_base(c: Counts, variant: GadgetVariant) -> usize {
    compression_base(c, variant) - c.n
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("k must be at least 1")]
    BadK,
    #[error("delta must satisfy 0 < delta < 1")]
    BadDelta,
}

/// Per-ν equation counts of the hard E3-LIN instances: 60ν two-variable and
/// 2ν three-variable equations on 6ν circles.
pub const TWO_VAR_PER_NU: i64 = 60;
pub const THREE_VAR_PER_NU: i64 = 2;
pub const CIRCLES_PER_NU: i64 = 6;

/// Length coefficient per ν: 5·60 + C·2.
pub fn length_per_nu(variant: GadgetVariant) -> i64 {
    5 * TWO_VAR_PER_NU + variant.three_var_constant() as i64 * THREE_VAR_PER_NU
}

/// Compression coefficient per ν: 3·60 + C·2.
pub fn compression_per_nu(variant: GadgetVariant) -> i64 {
    3 * TWO_VAR_PER_NU + variant.compression_constant() as i64 * THREE_VAR_PER_NU
}

/// (L + 1 − δ) / (L + δ + 7·6/k) with L the B4 length coefficient, for k copies.
pub fn superstring_ratio(k: i64, delta: Q) -> Result<Q, BoundsError> {
    if k < 1 {
        return Err(BoundsError::BadK);
    }
    if delta <= Q::from_integer(0) || delta >= Q::from_integer(1) {
        return Err(BoundsError::BadDelta);
    }
    let l = Q::from_integer(length_per_nu(GadgetVariant::B4));
    let circle_term = Q::new(7 * CIRCLES_PER_NU, k);
    Ok((l + 1 - delta) / (l + delta + circle_term))
}

/// Limit of the length ratio as k → ∞ and δ → 0: (L + 1) / L.
pub fn length_ratio_limit(variant: GadgetVariant) -> Q {
    let l = length_per_nu(variant);
    Q::new(l + 1, l)
}

/// Compression / MAX-ATSP ratio: K / (K − 1) with K the compression coefficient.
pub fn compression_ratio_limit(variant: GadgetVariant) -> Q {
    let k = compression_per_nu(variant);
    Q::new(k, k - 1)
}

pub fn to_f64(q: Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        assert_eq!(length_per_nu(GadgetVariant::B4), 332);
        assert_eq!(length_per_nu(GadgetVariant::A6), 344);
        assert_eq!(compression_per_nu(GadgetVariant::B4), 204);
        assert_eq!(length_ratio_limit(GadgetVariant::B4), Q::new(333, 332));
        assert_eq!(length_ratio_limit(GadgetVariant::A6), Q::new(345, 344));
        assert_eq!(compression_ratio_limit(GadgetVariant::B4), Q::new(204, 203));
    }

    #[test]
    fn ratio_formula() {
        let r = superstring_ratio(1, Q::new(1, 2)).unwrap();
        assert_eq!(r, Q::new(665, 2) / (Q::new(665, 2) + 42));
        assert!(superstring_ratio(0, Q::new(1, 2)).is_err());
        assert!(superstring_ratio(1, Q::from_integer(1)).is_err());
        // the ratio increases towards the limit as k grows and δ shrinks
        let a = superstring_ratio(10, Q::new(1, 100)).unwrap();
        let b = superstring_ratio(1000, Q::new(1, 10000)).unwrap();
        assert!(a < b && b < length_ratio_limit(GadgetVariant::B4));
    }
}
