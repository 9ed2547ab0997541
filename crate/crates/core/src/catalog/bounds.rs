use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::plane::split_b;
use crate::Rational;

/// `N(3, b)` for `b = 3..=12`.
pub const N3_TABLE: [(u32, u32); 10] = [
    (3, 3),
    (4, 5),
    (5, 7),
    (6, 8),
    (7, 10),
    (8, 12),
    (9, 13),
    (10, 15),
    (11, 17),
    (12, 18),
];

pub fn known_n3(b: u32) -> Option<u32> {
    N3_TABLE.iter().find(|(bb, _)| *bb == b).map(|(_, k)| *k)
}

pub(crate) fn ser_rational<S: Serializer>(
    q: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub b: u32,
    pub m: u32,
    pub r: u32,
    /// Largest `k` allowed by the genus of an irreducible curve.
    pub genus_bound: u32,
    /// Largest `k` on a reducible curve.
    pub reducible_bound: u32,
    /// Largest `k` allowed by the cobordism criterion; absent when `3 | b`.
    pub knot_bound: Option<u32>,
    pub combined_upper: u32,
    pub known_value: Option<u32>,
    /// `2(N + 1)/(3b)` for the known value.
    #[serde(serialize_with = "ser_opt_rational")]
    pub alpha_ratio: Option<Rational>,
}

fn ser_opt_rational<S: Serializer>(
    q: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => ser_rational(q, s),
        None => s.serialize_none(),
    }
}

pub fn genus_bound(m: u32, r: u32) -> u32 {
    if r == 2 {
        6 * m - 6
    } else {
        6 * m - 4
    }
}

pub fn reducible_bound(m: u32, r: u32) -> u32 {
    4 * m - 1 - r
}

/// Largest `k` with `k + 1 ≤ (5b − 1)/3`; `None` when `3 | b`.
pub fn knot_bound(b: u32) -> Option<u32> {
    if b.is_multiple_of(3) || b < 2 {
        return None;
    }
    Some((5 * b - 1) / 3 - 1)
}

/// Upper bounds for `N(3, b)`, `b ≥ 3`.
pub fn bounds(b: u32) -> Result<BoundsReport> {
    if b < 3 {
        return Err(Error::Precondition(format!(
            "bounds need b >= 3, got {}",
            b
        )));
    }
    let (m, r) = split_b(b);
    let genus = genus_bound(m, r);
    let reducible = reducible_bound(m, r);
    let knot = knot_bound(b);
    let structural = genus.max(reducible);
    let combined_upper = knot.map_or(structural, |k| k.min(structural));
    let known_value = known_n3(b);
    Ok(BoundsReport {
        b,
        m,
        r,
        genus_bound: genus,
        reducible_bound: reducible,
        knot_bound: knot,
        combined_upper,
        known_value,
        alpha_ratio: known_value.map(|k| alpha_ratio(k + 1, 3, b)),
    })
}

/// `2k/(ab)`.
pub fn alpha_ratio(k: u32, a: u32, b: u32) -> Rational {
    Rational::new(BigInt::from(2 * k), BigInt::from(a * b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaCheck {
    pub b: u32,
    /// The value of `N(3, b)` or the upper bound used for it.
    pub value: u32,
    pub source: &'static str,
    #[serde(serialize_with = "ser_rational")]
    pub ratio: Rational,
    pub holds: bool,
}

/// `2(N(3,b) + 1)/(3b) < 7/6`, with `N(3,b)` from the table for `b ≤ 12`
/// (and `N(3,1) = 0`, `N(3,2) = 2`), from the knot bound when `3 ∤ b`, and
/// from `N(3,b) ≤ N(3,b+1)` otherwise.
pub fn alpha_check(b: u32) -> Result<AlphaCheck> {
    let (value, source) = match b {
        0 => return Err(Error::Precondition("b must be positive".into())),
        1 => (0, "smooth"),
        2 => (2, "cusp"),
        _ => match known_n3(b) {
            Some(k) => (k, "table"),
            None if !b.is_multiple_of(3) => (knot_bound(b).unwrap(), "knot bound"),
            None => (knot_bound(b + 1).unwrap(), "knot bound at b+1"),
        },
    };
    let ratio = alpha_ratio(value + 1, 3, b);
    let holds = ratio < Rational::new(BigInt::from(7), BigInt::from(6));
    Ok(AlphaCheck {
        b,
        value,
        source,
        ratio,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows() {
        let genus: Vec<u32> = (3..=12).map(|b| bounds(b).unwrap().genus_bound).collect();
        assert_eq!(genus, [2, 6, 8, 8, 12, 14, 14, 18, 20, 20]);
        let red: Vec<u32> = (3..=12)
            .map(|b| bounds(b).unwrap().reducible_bound)
            .collect();
        assert_eq!(red, [3, 5, 6, 7, 9, 10, 11, 13, 14, 15]);
        let knot: Vec<Option<u32>> = (3..=12).map(|b| bounds(b).unwrap().knot_bound).collect();
        assert_eq!(
            knot,
            [
                None,
                Some(5),
                Some(7),
                None,
                Some(10),
                Some(12),
                None,
                Some(15),
                Some(17),
                None
            ]
        );
    }

    #[test]
    fn known_values_respect_bounds() {
        for b in 3..=12 {
            let r = bounds(b).unwrap();
            assert!(r.known_value.unwrap() <= r.combined_upper, "b = {}", b);
        }
        let r = bounds(9).unwrap();
        assert_eq!((r.m, r.r, r.genus_bound, r.reducible_bound), (3, 0, 14, 11));
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha_ratio(18, 3, 11).to_string(), "12/11");
        assert_eq!(alpha_ratio(14, 4, 6).to_string(), "7/6");
        assert_eq!(alpha_ratio(0, 3, 5).to_string(), "0");
        for b in 1..=100 {
            assert!(alpha_check(b).unwrap().holds, "b = {}", b);
        }
    }
}
