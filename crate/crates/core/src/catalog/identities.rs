use serde::Serialize;

use super::ingredients::{binomial_configuration, plane_ingredient};
use crate::arith::{parse_poly, FieldDescriptor};
use crate::error::Result;
use crate::Poly;

/// A substitution identity `F(images) = rhs`, either exactly or up to a
/// nonzero scalar.
#[derive(Clone, Debug)]
pub struct Identity {
    pub name: String,
    pub poly: Poly,
    pub images: Vec<Poly>,
    pub rhs: Poly,
    pub up_to_scalar: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub up_to_scalar: bool,
    pub holds: bool,
    /// `F(images)` as computed.
    pub lhs: String,
    pub rhs: String,
}

impl Identity {
    pub fn check(&self) -> Result<IdentityCheck> {
        let lhs = self.poly.substitute(&self.images)?;
        let holds = if self.up_to_scalar {
            lhs.eq_up_to_scalar(&self.rhs)
        } else {
            lhs == self.rhs
        };
        Ok(IdentityCheck {
            name: self.name.clone(),
            up_to_scalar: self.up_to_scalar,
            holds,
            lhs: lhs.to_string(),
            rhs: self.rhs.to_string(),
        })
    }
}

fn p(s: &str, arity: usize, d: i64) -> Result<Poly> {
    parse_poly(s, arity, FieldDescriptor { d })
}

fn ps(v: &[&str], arity: usize, d: i64) -> Result<Vec<Poly>> {
    v.iter().map(|s| p(s, arity, d)).collect()
}

fn plane(b: u32) -> Result<Poly> {
    plane_ingredient(b).expect("ingredient").plane_curve()
}

/// `F(y0^a, y1^a, y0, y1) = (y0 + y1)^{4a−1}` for the family on F_0.
pub fn binomial_identity(a: u32) -> Result<Identity> {
    let cfg = binomial_configuration(a)?;
    Ok(Identity {
        name: format!("F(y0^{a}, y1^{a}, y0, y1) = (y0 + y1)^{}", 4 * a - 1),
        poly: cfg.curve.poly().clone(),
        images: ps(&[&format!("y0^{a}"), &format!("y1^{a}"), "y0", "y1"], 4, 0)?,
        rhs: p(&format!("(y0 + y1)^{}", 4 * a - 1), 4, 0)?,
        up_to_scalar: false,
    })
}

/// The six substitution identities used by the constructions, in order:
/// the F_0 parametrization, the family for `a = 2, 3, 4`, and the ones
/// for bidegrees (3,10), (3,11), (3,12) and the cubic `x³ + (xz − y²)(z − 2x)`.
pub fn identity_suite() -> Result<Vec<Identity>> {
    let mut out = Vec::new();
    let mut f0 = binomial_identity(2)?;
    f0.name = format!("(3,9): {}", f0.name);
    out.push(f0);
    for a in 2..=4 {
        let mut id = binomial_identity(a)?;
        id.name = format!("family a={}: {}", a, id.name);
        out.push(id);
    }
    out.push(Identity {
        name: "(3,10): F along S = (1+i)·y·(i·z − y)^7".into(),
        poly: plane(10)?,
        images: ps(
            &[
                "(-1 + i)*y^2 + (1 + 3*i)*y*z + z^2",
                "y*(z + i*y)",
                "z*(z + i*y)",
            ],
            3,
            -1,
        )?,
        rhs: p("(1 + i)*y*(i*z - y)^7", 3, -1)?,
        up_to_scalar: false,
    });
    out.push(Identity {
        name: "(3,11): F(−y, y, z) = −(w/72)·(−3y + (w − 3)z)^3".into(),
        poly: plane(11)?,
        images: ps(&["-y", "y", "z"], 3, -3)?,
        rhs: p("-(w/72)*(-3*y + (w - 3)*z)^3", 3, -3)?,
        up_to_scalar: false,
    });
    out.push(Identity {
        name: "(3,12): F(0, 1, z) = z(z − 3)^2".into(),
        poly: plane(12)?,
        images: ps(&["0", "1", "z"], 3, -3)?,
        rhs: p("z*(z - 3)^2", 3, -3)?,
        up_to_scalar: false,
    });
    out.push(Identity {
        name: "cubic: F(x + z, y, z) = z(x^2 + y^2) + x^3 + 2xy^2".into(),
        poly: p("x^3 + (x*z - y^2)*(-2*x + z)", 3, 0)?,
        images: ps(&["x + z", "y", "z"], 3, 0)?,
        rhs: p("z*(x^2 + y^2) + x^3 + 2*x*y^2", 3, 0)?,
        up_to_scalar: false,
    });
    Ok(out)
}

/// Further identities checked alongside the suite: the fiber of `p` on F_0
/// and the two restrictions of the (3,8) curve.
pub fn auxiliary_identities() -> Result<Vec<Identity>> {
    let f0 = binomial_configuration(2)?.curve.poly().clone();
    Ok(vec![
        Identity {
            name: "(3,9): F(x0, x1, y0, −y0) ∝ y0·(3x0 + x1)(x0 + 3x1)(x0 − x1)".into(),
            poly: f0,
            images: ps(&["x0", "x1", "y0", "-y0"], 4, 0)?,
            rhs: p("y0*(3*x0 + x1)*(x0 + 3*x1)*(x0 - x1)", 4, 0)?,
            up_to_scalar: true,
        },
        Identity {
            name: "(3,8): F along x + d·y = 0 ∝ (z − y)^3".into(),
            poly: plane(8)?,
            images: ps(&["((3 + w)/2)*y", "y", "z"], 3, -3)?,
            rhs: p("(z - y)^3", 3, -3)?,
            up_to_scalar: true,
        },
        Identity {
            name: "(3,8): F(x, 0, z) = ((1 − w)/24)·z·(z(w + 3) − 3x)^2".into(),
            poly: plane(8)?,
            images: ps(&["x", "0", "z"], 3, -3)?,
            rhs: p("((1 - w)/24)*z*(z*(w + 3) - 3*x)^2", 3, -3)?,
            up_to_scalar: false,
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;

    #[test]
    fn suite_holds() {
        let suite = identity_suite().unwrap();
        assert_eq!(suite.len(), 8);
        for id in suite.iter().chain(auxiliary_identities().unwrap().iter()) {
            let c = id.check().unwrap();
            assert!(c.holds, "{}: {} vs {}", c.name, c.lhs, c.rhs);
        }
    }

    #[test]
    fn quoted_sign_fails() {
        let mut id = identity_suite().unwrap().pop().unwrap();
        id.rhs = p("z*(x^2 + y^2) + x^3 - 2*x*y^2", 3, 0).unwrap();
        assert!(!id.check().unwrap().holds);
    }

    #[test]
    fn perturbation_is_detected() {
        for mut id in identity_suite().unwrap() {
            // a term whose image under the substitution is nonzero
            let e = id
                .poly
                .terms()
                .map(|(e, _)| *e)
                .find(|e| {
                    let mut t = Poly::zero(id.poly.arity());
                    t.add_term(*e, Scalar::int(1));
                    !t.substitute(&id.images).unwrap().is_zero()
                })
                .unwrap();
            id.poly.add_term(e, Scalar::int(1));
            assert!(!id.check().unwrap().holds, "{}", id.name);
        }
    }
}
