//! Elementary links `F_m ⇢ F_{m±1}`, configurations on a fiber, and chains
//! of links with per-step verification.

mod chain;
mod config;

pub use chain::{
    predicted_singular_landing, singular_chain, singular_step, transversal_chain,
    transversal_landing, transversal_step, verify_trace, ChainKind, ChainTrace, LandingCheck,
    Mismatch, Prediction, StepRecord, TraceReport,
};
pub use config::{configuration_type, Configuration, Info};

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{Field, MultiPoly};
use crate::error::{Error, Result};
use crate::hirzebruch::{FmAutomorphism, FmCurve, FmPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `F_m ⇢ F_{m+1}`, center on `S_−`.
    Up,
    /// `F_m ⇢ F_{m−1}`, center off `S_−`.
    Down,
}

impl Direction {
    fn opposite(self) -> Self {
        match self {
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
        }
    }

    fn target(self, m: u32) -> u32 {
        match self {
            Direction::Up => m + 1,
            Direction::Down => m - 1,
        }
    }

    /// Center of the standard link.
    fn std_center<K: Field>(self, m: u32) -> FmPoint<K> {
        match self {
            Direction::Up => FmPoint::from_ints(m, [1, 0, 1, 0]),
            Direction::Down => FmPoint::from_ints(m, [0, 1, 1, 0]),
        }
    }

    fn std_map_point<K: Field>(self, m: u32, p: &FmPoint<K>) -> Result<FmPoint<K>> {
        let [x0, x1] = p.x.clone();
        let [y0, y1] = p.y.clone();
        let (nx0, nx1) = match self {
            Direction::Up => (x0 * &y1, x1),
            Direction::Down => {
                let t = x1 * &y1;
                (x0, t)
            }
        };
        if nx0.is_zero() && nx1.is_zero() {
            return Err(Error::InvalidPoint(format!(
                "{} is the center of the link",
                p
            )));
        }
        FmPoint::new(self.target(m), [nx0, nx1], [y0, y1])
    }

    /// `strip_y1(G(X0·Y1, X1, Y)) ` for down links, `strip_y1(G(X0, X1·Y1, Y))`
    /// for up links.
    fn std_pushforward<K: Field>(self, c: &FmCurve<K>) -> Result<(FmCurve<K>, u32)> {
        let [x0, x1, y0, y1] = [0, 1, 2, 3].map(|i| MultiPoly::<K>::var(4, i));
        let images = match self {
            Direction::Up => [x0, &x1 * &y1, y0, y1],
            Direction::Down => [&x0 * &y1, x1, y0, y1],
        };
        let (g, e) = c.poly().substitute(&images)?.strip_var(3);
        Ok((FmCurve::new(self.target(c.m()), g)?, e))
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Up => write!(f, "up"),
            Direction::Down => write!(f, "down"),
        }
    }
}

/// A link realized as `post ∘ std ∘ pre`, where `std` is the standard up or
/// down link and `pre`, `post` are automorphisms of the source and target.
#[derive(Clone, Debug, PartialEq)]
pub struct LinkDescriptor<K> {
    pub source_m: u32,
    pub target_m: u32,
    pub direction: Direction,
    pub center: FmPoint<K>,
    pub inverse_point: FmPoint<K>,
    pub pre: FmAutomorphism<K>,
    pub post: FmAutomorphism<K>,
}

/// The link of `F_m` centered at `center`. Centers off `S_−` give a down
/// link, centers on `S_−` an up link. On F_0 every center is first moved
/// onto `S_−` by an automorphism and the link goes up.
pub fn make_link<K: Field>(m: u32, center: &FmPoint<K>) -> Result<LinkDescriptor<K>> {
    if center.m != m {
        return Err(Error::Precondition(format!(
            "center {} lives on F_{}, not F_{}",
            center, center.m, m
        )));
    }
    let ych = FmAutomorphism::y_change(m, crate::hirzebruch::y_matrix_to(&center.y, 0)?)?;
    let c1 = ych.map_point(center)?;
    let (pre, direction) = if c1.on_s_minus() {
        (ych, Direction::Up)
    } else if m == 0 {
        let xch = FmAutomorphism::x_change(crate::hirzebruch::y_matrix_to(&c1.x, 0)?)?;
        (xch.after(&ych)?, Direction::Up)
    } else {
        // c1 = [a:1;1:0]; x0 ↦ x0 − a·x1·y0^m moves it to [0:1;1:0]
        let q = MultiPoly::monomial(4, &[0, 0, m, 0], -c1.x[0].clone());
        (FmAutomorphism::shear(m, q)?.after(&ych)?, Direction::Down)
    };
    debug_assert_eq!(pre.map_point(center)?, direction.std_center(m));
    let target_m = direction.target(m);
    let inverse_point = direction.opposite().std_center(target_m);
    Ok(LinkDescriptor {
        source_m: m,
        target_m,
        direction,
        center: center.clone(),
        inverse_point,
        pre,
        post: FmAutomorphism::identity(target_m),
    })
}

impl<K: Field> LinkDescriptor<K> {
    pub fn inverse(&self) -> Result<Self> {
        Ok(LinkDescriptor {
            source_m: self.target_m,
            target_m: self.source_m,
            direction: self.direction.opposite(),
            center: self.inverse_point.clone(),
            inverse_point: self.center.clone(),
            pre: self.post.inverse()?,
            post: self.pre.inverse()?,
        })
    }

    /// Pushforward of a curve and the power of the exceptional fiber removed.
    pub fn apply_with_exponent(&self, c: &FmCurve<K>) -> Result<(FmCurve<K>, u32)> {
        if c.m() != self.source_m {
            return Err(Error::Precondition(format!(
                "curve on F_{} given to a link from F_{}",
                c.m(),
                self.source_m
            )));
        }
        let c = self.pre.pushforward(c)?;
        let (c, e) = self.direction.std_pushforward(&c)?;
        Ok((self.post.pushforward(&c)?, e))
    }

    pub fn apply(&self, c: &FmCurve<K>) -> Result<FmCurve<K>> {
        Ok(self.apply_with_exponent(c)?.0)
    }

    /// Image of a point off the fiber of the center, or of a point on that
    /// fiber other than the center (which goes to the inverse point).
    pub fn map_point(&self, p: &FmPoint<K>) -> Result<FmPoint<K>> {
        let q = self.pre.map_point(p)?;
        let q = self.direction.std_map_point(self.source_m, &q)?;
        self.post.map_point(&q)
    }
}

impl<K: Field> fmt::Display for LinkDescriptor<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{} -> F_{} ({}) centered at {}, inverse point {}",
            self.source_m, self.target_m, self.direction, self.center, self.inverse_point
        )
    }
}

impl<K: Field> Serialize for LinkDescriptor<K> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LinkDescriptor", 5)?;
        st.serialize_field("source_m", &self.source_m)?;
        st.serialize_field("target_m", &self.target_m)?;
        st.serialize_field("direction", &self.direction)?;
        st.serialize_field("center", &self.center)?;
        st.serialize_field("inverse_point", &self.inverse_point)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, FieldDescriptor, QuadFieldElement};
    use crate::hirzebruch::DivisorClass;

    type Q = QuadFieldElement;

    fn curve(m: u32, s: &str) -> FmCurve<Q> {
        FmCurve::new(m, parse_poly(s, 4, FieldDescriptor::RATIONAL).unwrap()).unwrap()
    }

    fn pt(m: u32, c: [i64; 4]) -> FmPoint<Q> {
        FmPoint::from_ints(m, c)
    }

    #[test]
    fn standard_links_are_inverse() {
        for m in 1..5u32 {
            let up = make_link(m - 1, &pt(m - 1, [1, 0, 1, 0])).unwrap();
            let down = make_link(m, &pt(m, [0, 1, 1, 0])).unwrap();
            assert_eq!(up.direction, Direction::Up);
            assert_eq!(down.direction, Direction::Down);
            let p = pt(m - 1, [3, 2, 5, 1]);
            assert_eq!(down.map_point(&up.map_point(&p).unwrap()).unwrap(), p);
        }
    }

    #[test]
    fn fiber_through_center_contracts() {
        let l = make_link(2, &pt(2, [3, 1, 2, 1])).unwrap();
        let other = pt(2, [1, 0, 2, 1]);
        assert_eq!(l.map_point(&other).unwrap(), l.inverse_point);
        assert!(l.map_point(&l.center).is_err());
        // the fiber itself is contracted: its strict transform is empty
        let (img, e) = l
            .apply_with_exponent(&FmCurve::fiber(2, &[Q::int(2), Q::int(1)]))
            .unwrap();
        assert_eq!((img.class(), e), (DivisorClass::new(1, 0, 0), 1));
    }

    #[test]
    fn s_minus_under_down_link() {
        let l = make_link(3, &pt(3, [1, 1, 0, 1])).unwrap();
        let img = l.apply(&FmCurve::s_minus(3)).unwrap();
        assert_eq!(img.class().self_intersection(), -2);
        assert!(img.same_curve(&FmCurve::s_minus(2)));
    }

    #[test]
    fn link_then_inverse_is_identity() {
        let c = curve(
            1,
            "x0^3*y0 + x0^2*x1*y1^2 - 2*x0*x1^2*y0^3 + x1^3*(y0^4 + y1^4)",
        );
        for center in [
            pt(1, [1, 1, 1, 1]),
            pt(1, [1, 0, 2, 1]),
            pt(1, [2, 1, 1, 0]),
        ] {
            let l = make_link(1, &center).unwrap();
            let back = l.inverse().unwrap().apply(&l.apply(&c).unwrap()).unwrap();
            assert!(back.same_curve(&c), "center {}", center);
            let p = pt(1, [5, 1, 3, 1]);
            assert_eq!(
                l.inverse()
                    .unwrap()
                    .map_point(&l.map_point(&p).unwrap())
                    .unwrap(),
                p
            );
        }
        let c0 = curve(0, "x0^3*(y0 + 7*y1) + x1^3*(7*y0 + y1) - x0*x1^2*y0");
        let l = make_link(0, &pt(0, [1, 1, 1, -1])).unwrap();
        assert_eq!(l.target_m, 1);
        let back = l.inverse().unwrap().apply(&l.apply(&c0).unwrap()).unwrap();
        assert!(back.same_curve(&c0));
    }
}
