use std::fmt;

use serde::{Serialize, Serializer};

use super::{affine_chart, AffinePoint, ProjPoint};
use crate::arith::{gcd, Field, MultiPoly};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntersectionNumber {
    Finite(u64),
    /// The curves share a component through the point.
    Infinite,
}

impl IntersectionNumber {
    pub fn finite(&self) -> Option<u64> {
        match self {
            IntersectionNumber::Finite(n) => Some(*n),
            IntersectionNumber::Infinite => None,
        }
    }
}

impl fmt::Display for IntersectionNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntersectionNumber::Finite(n) => write!(f, "{}", n),
            IntersectionNumber::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for IntersectionNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            IntersectionNumber::Finite(n) => s.serialize_u64(*n),
            IntersectionNumber::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Local intersection number `I_p(F, G)` of two affine curves, by Fulton's
/// reduction on the restrictions to `y = 0`.
pub fn intersection_multiplicity<K: Field>(
    f: &MultiPoly<K>,
    g: &MultiPoly<K>,
    p: &AffinePoint<K>,
) -> Result<IntersectionNumber> {
    for h in [f, g] {
        if h.arity() != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: h.arity(),
            });
        }
    }
    if f.is_zero() || g.is_zero() {
        return Ok(IntersectionNumber::Infinite);
    }
    let mut f = f.translate(p);
    let mut g = g.translate(p);
    if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
        return Ok(IntersectionNumber::Finite(0));
    }
    let h = gcd(&f, &g);
    if !h.is_constant() && h.constant_term().is_zero() {
        return Ok(IntersectionNumber::Infinite);
    }

    let mut total = 0u64;
    loop {
        if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
            return Ok(IntersectionNumber::Finite(total));
        }
        let fr = f.filter(|m| m.0[1] == 0);
        let gr = g.filter(|m| m.0[1] == 0);
        match (fr.is_zero(), gr.is_zero()) {
            (true, true) => {
                return Err(Error::Consistency(
                    "common component y = 0 survived the gcd check".into(),
                ))
            }
            (true, false) | (false, true) => {
                // y divides one side: I(F, y·H) = I(F, y) + I(F, H)
                if fr.is_zero() {
                    std::mem::swap(&mut f, &mut g);
                }
                let fr = f.filter(|m| m.0[1] == 0);
                total += fr.min_degree_in(0).unwrap() as u64;
                g = g.exact_div(&MultiPoly::var(2, 1)).expect("y divides");
            }
            (false, false) => {
                let r = fr.degree_in(0).unwrap();
                let s = gr.degree_in(0).unwrap();
                if r > s {
                    std::mem::swap(&mut f, &mut g);
                }
                let (fr, gr) = (f.filter(|m| m.0[1] == 0), g.filter(|m| m.0[1] == 0));
                let (r, s) = (fr.degree_in(0).unwrap(), gr.degree_in(0).unwrap());
                let lf = fr.coeff_of(&[r, 0]);
                let lg = gr.coeff_of(&[s, 0]);
                let shift = f
                    .mul_monomial(&crate::arith::Monomial([s - r, 0, 0, 0]))
                    .scale(&lg);
                g = &g.scale(&lf) - &shift;
            }
        }
    }
}

/// `I_p(F, G)` for projective curves, computed in the affine chart of `p`.
pub fn intersection_multiplicity_projective<K: Field>(
    f: &MultiPoly<K>,
    g: &MultiPoly<K>,
    p: &ProjPoint<K>,
) -> Result<IntersectionNumber> {
    let (fa, pa) = affine_chart(f, p)?;
    let (ga, _) = affine_chart(g, p)?;
    intersection_multiplicity(&fa, &ga, &pa)
}
