use serde::Serialize;

use super::{quadratic_discriminant, AffinePoint};
use crate::arith::{squarefree_test, Field, MultiPoly};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularityKind {
    OffCurve,
    Smooth,
    A,
    MultGe3,
    NonReduced,
}

/// Outcome of [`classify_singularity`]. `k` is set for `A` points (and is
/// zero for smooth points); `blowups` counts the blow-ups used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityReport {
    pub kind: SingularityKind,
    pub k: Option<u32>,
    pub blowups: u32,
    pub multiplicity: u32,
}

impl SingularityReport {
    fn simple(kind: SingularityKind, multiplicity: u32) -> Self {
        SingularityReport {
            kind,
            k: if kind == SingularityKind::Smooth {
                Some(0)
            } else {
                None
            },
            blowups: 0,
            multiplicity,
        }
    }

    fn a(k: u32, blowups: u32) -> Self {
        SingularityReport {
            kind: SingularityKind::A,
            k: Some(k),
            blowups,
            multiplicity: 2,
        }
    }

    /// `k` for an `A_k` point, 0 for a smooth point, `None` otherwise.
    pub fn a_index(&self) -> Option<u32> {
        match self.kind {
            SingularityKind::A | SingularityKind::Smooth => self.k,
            _ => None,
        }
    }
}

impl std::fmt::Display for SingularityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            SingularityKind::OffCurve => write!(f, "off curve"),
            SingularityKind::Smooth => write!(f, "smooth"),
            SingularityKind::A => write!(f, "A_{}", self.k.unwrap_or(0)),
            SingularityKind::MultGe3 => write!(f, "multiplicity {}", self.multiplicity),
            SingularityKind::NonReduced => write!(f, "non-reduced"),
        }
    }
}

/// Classifies the point `p` of the affine curve `f = 0`.
///
/// Double points are resolved by repeated blow-ups in the chart
/// `(x, y) ↦ (x, x·y)` after moving the tangent line to `y = 0`; each round
/// with a double tangent adds two to `k`, and a round that ends in two
/// distinct tangents adds one.
pub fn classify_singularity<K: Field>(
    f: &MultiPoly<K>,
    p: &AffinePoint<K>,
) -> Result<SingularityReport> {
    if f.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: f.arity(),
        });
    }
    if f.is_zero() {
        return Err(Error::Precondition("zero polynomial".into()));
    }
    let mut g = f.translate(p);
    let m = g.order().unwrap();
    match m {
        0 => return Ok(SingularityReport::simple(SingularityKind::OffCurve, 0)),
        1 => return Ok(SingularityReport::simple(SingularityKind::Smooth, 1)),
        _ => {}
    }
    // an A_k answer already certifies an isolated point, so the gcd test
    // only runs when the resolution cannot settle the question
    let nonreduced_here = || {
        !squarefree_test(f) && {
            // the repeated components are the common zeros of F and its partials
            let h = crate::arith::gcd_all(&[f.clone(), f.derivative(0), f.derivative(1)]).unwrap();
            h.eval(p).is_zero()
        }
    };
    if m >= 3 {
        let kind = if nonreduced_here() {
            SingularityKind::NonReduced
        } else {
            SingularityKind::MultGe3
        };
        return Ok(SingularityReport::simple(kind, m));
    }

    let d = f.degree().unwrap() as usize;
    let cap = (d.saturating_sub(1)) * (d.saturating_sub(2)) + 2;
    let x = MultiPoly::var(2, 0);
    let y = MultiPoly::var(2, 1);
    let mut rounds = 0u32;
    loop {
        let q = g.homogeneous_part(2);
        if !quadratic_discriminant(&q).is_zero() {
            return Ok(SingularityReport::a(2 * rounds + 1, rounds + 1));
        }
        // q = c·L² with L = αx + βy; make L the new y.
        let a = q.coeff_of(&[2, 0]);
        let b = q.coeff_of(&[1, 1]);
        g = if a.is_zero() {
            g
        } else {
            let c = q.coeff_of(&[0, 2]);
            if c.is_zero() {
                // q = a·x²
                g.substitute(&[y.clone(), x.clone()])?
            } else {
                // L = x + β y with β = b/(2a); y ↦ (y − x)/β
                let beta = b * &(K::from_int(2) * &a).inv().unwrap();
                let binv = beta.inv().unwrap();
                g.substitute(&[x.clone(), (&y - &x).scale(&binv)])?
            }
        };
        let blown = g.substitute(&[x.clone(), &x * &y])?;
        g = blown
            .exact_div(&MultiPoly::monomial(2, &[2, 0], K::one()))
            .ok_or_else(|| Error::Consistency("strict transform not divisible by x^2".into()))?;
        rounds += 1;
        match g.order() {
            Some(1) => return Ok(SingularityReport::a(2 * rounds, rounds)),
            Some(2) => {}
            other => {
                return Err(Error::Consistency(format!(
                    "strict transform has order {:?} after {} blow-ups",
                    other, rounds
                )))
            }
        }
        if rounds as usize > cap {
            if nonreduced_here() {
                return Ok(SingularityReport::simple(SingularityKind::NonReduced, m));
            }
            return Err(Error::IterationCap(cap));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, FieldDescriptor, QuadFieldElement};

    type Q = QuadFieldElement;

    fn classify(s: &str) -> SingularityReport {
        let f = parse_poly(s, 2, FieldDescriptor::RATIONAL).unwrap();
        classify_singularity(&f, &[Q::int(0), Q::int(0)]).unwrap()
    }

    #[test]
    fn normal_forms() {
        for k in 1..=12u32 {
            let r = classify(&format!("y^2 - x^{}", k + 1));
            assert_eq!(r.kind, SingularityKind::A);
            assert_eq!(r.k, Some(k));
            assert_eq!(r.blowups, k.div_ceil(2));
        }
    }

    #[test]
    fn tangent_not_along_axis() {
        // (y - x)^2 - x^5 is an A_4 with tangent y = x
        assert_eq!(classify("(y - x)^2 - x^5").k, Some(4));
        // x^2 - y^3: tangent x = 0
        assert_eq!(classify("x^2 - y^3").k, Some(2));
        assert_eq!(classify("y*(y - x^2)").k, Some(3));
    }

    #[test]
    fn other_kinds() {
        assert_eq!(classify("1 + x").kind, SingularityKind::OffCurve);
        assert_eq!(classify("y - x^2").kind, SingularityKind::Smooth);
        assert_eq!(classify("x^3 - y^3").kind, SingularityKind::MultGe3);
        assert_eq!(classify("(y - x^2)^2").kind, SingularityKind::NonReduced);
    }

    #[test]
    fn nonreduced_component_elsewhere_is_ignored() {
        // (x - 1)^2 is a double line away from the origin
        assert_eq!(classify("(y^2 - x^3)*(x - 1)^2").k, Some(2));
    }
}
