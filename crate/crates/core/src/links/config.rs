use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{gcd_all, linear_factor, Field, MultiPoly};
use crate::error::{Error, Result};
use crate::hirzebruch::{intersection_at, FmCurve, FmPoint};
use crate::plane::{quadratic_discriminant, IntersectionNumber, SingularityKind};

/// `[C², S², type, I_p(C,S); m]`; absent entries print as `•`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Info {
    pub c2: i64,
    pub s2: Option<i64>,
    pub k: Option<i64>,
    pub i_ps: Option<i64>,
    pub m: u32,
}

fn opt(v: &Option<i64>) -> String {
    v.map_or_else(|| "•".to_string(), |x| x.to_string())
}

impl fmt::Display for Info {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{},{},{};{}]",
            self.c2,
            opt(&self.s2),
            opt(&self.k),
            opt(&self.i_ps),
            self.m
        )
    }
}

/// `(C, S, s, p)_m`: an `a`-section `C` with a transversal point `p`, an
/// optional section `S`, and an optional point `s ∈ C` on the fiber of `p`.
/// `markers` are extra named points carried along by links.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration<K> {
    pub curve: FmCurve<K>,
    pub section: Option<FmCurve<K>>,
    pub s: Option<FmPoint<K>>,
    pub p: FmPoint<K>,
    pub markers: Vec<(String, FmPoint<K>)>,
}

fn has_fiber_component<K: Field>(c: &FmCurve<K>) -> bool {
    let forms: Vec<MultiPoly<K>> = c.forms().into_iter().filter(|g| !g.is_zero()).collect();
    match gcd_all(&forms) {
        Some(g) => !g.is_constant(),
        None => false,
    }
}

/// The residual binary form after removing `p`'s root once from the fiber
/// restriction; fails unless `p` is a simple root.
fn residual_at_transversal<K: Field>(c: &FmCurve<K>, p: &FmPoint<K>) -> Result<MultiPoly<K>> {
    let r = c.restrict_to_fiber(&p.y);
    if r.is_zero() {
        return Err(Error::FiberComponent);
    }
    let lin = linear_factor(&p.x);
    let q = r
        .exact_div(&lin)
        .ok_or_else(|| Error::NotTransversal(format!("{} is not on the curve", p)))?;
    if q.exact_div(&lin).is_some() {
        return Err(Error::NotTransversal(format!(
            "the fiber is tangent to the curve at {}",
            p
        )));
    }
    Ok(q)
}

/// Type of the 3-configuration `(C, •, •, p)`: `−1` when the fiber of `p`
/// meets `C` in three points, `0` when the remaining point `s` is a smooth
/// tangency, `k` when `s` is an `A_k` point. Returns `s` when it exists.
pub fn configuration_type<K: Field>(
    c: &FmCurve<K>,
    p: &FmPoint<K>,
) -> Result<(i64, Option<FmPoint<K>>)> {
    if c.a() != 3 {
        return Err(Error::Precondition(format!(
            "types are defined for 3-sections, got a = {}",
            c.a()
        )));
    }
    let q = residual_at_transversal(c, p)?;
    if !quadratic_discriminant(&q).is_zero() {
        return Ok((-1, None));
    }
    let a = q.coeff_of(&[2, 0]);
    let b = q.coeff_of(&[1, 1]);
    let root = if a.is_zero() {
        [K::one(), K::zero()]
    } else {
        [-b, K::from_int(2) * &a]
    };
    let s = FmPoint::new(c.m(), root, p.y.clone())?;
    let rep = c.classify_at(&s)?;
    let k = match rep.kind {
        SingularityKind::Smooth => 0,
        SingularityKind::A => rep.k.unwrap() as i64,
        _ => {
            return Err(Error::Consistency(format!(
                "double point {} of a 3-section classified as {}",
                s, rep
            )))
        }
    };
    Ok((k, Some(s)))
}

impl<K: Field> Configuration<K> {
    pub fn new(
        curve: FmCurve<K>,
        section: Option<FmCurve<K>>,
        s: Option<FmPoint<K>>,
        p: FmPoint<K>,
    ) -> Result<Self> {
        let cfg = Configuration {
            curve,
            section,
            s,
            p,
            markers: Vec::new(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_marker(mut self, name: &str, point: FmPoint<K>) -> Result<Self> {
        if point.m != self.m() {
            return Err(Error::Precondition(format!(
                "marker {} is not on F_{}",
                name,
                self.m()
            )));
        }
        self.markers.push((name.to_string(), point));
        Ok(self)
    }

    pub fn marker(&self, name: &str) -> Option<&FmPoint<K>> {
        self.markers.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn m(&self) -> u32 {
        self.curve.m()
    }

    pub fn a(&self) -> u32 {
        self.curve.a()
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.m();
        if self.curve.a() == 0 || has_fiber_component(&self.curve) {
            return Err(Error::Precondition(
                "C must be an a-section with a >= 1".into(),
            ));
        }
        if self.p.m != m {
            return Err(Error::Precondition("p is on a different surface".into()));
        }
        residual_at_transversal(&self.curve, &self.p)?;
        if let Some(sec) = &self.section {
            if sec.m() != m || sec.a() != 1 || has_fiber_component(sec) {
                return Err(Error::Precondition(format!(
                    "{} is not a section of F_{}",
                    sec, m
                )));
            }
        }
        if let Some(s) = &self.s {
            if !self.curve.contains(s) || !s.same_fiber(&self.p) || s == &self.p {
                return Err(Error::Precondition(format!(
                    "s = {} must lie on C and on the fiber of p, distinct from p",
                    s
                )));
            }
        }
        Ok(())
    }

    /// `I_p(C, S)` when `S` is present.
    pub fn tangency(&self) -> Result<Option<i64>> {
        match &self.section {
            None => Ok(None),
            Some(sec) => match intersection_at(&self.curve, sec, &self.p)? {
                IntersectionNumber::Finite(n) => Ok(Some(n as i64)),
                IntersectionNumber::Infinite => {
                    Err(Error::Precondition("S is a component of C".into()))
                }
            },
        }
    }

    /// `C ∩ S = {p}`.
    pub fn is_tangent(&self) -> Result<bool> {
        match (&self.section, self.tangency()?) {
            (Some(sec), Some(i)) => Ok(i == self.curve.class().dot(&sec.class())),
            _ => Ok(false),
        }
    }

    /// The info vector recomputed from the curves.
    pub fn info(&self) -> Result<Info> {
        let k = if self.a() == 3 {
            Some(configuration_type(&self.curve, &self.p)?.0)
        } else {
            None
        };
        Ok(Info {
            c2: self.curve.class().self_intersection(),
            s2: self.section.as_ref().map(|s| s.class().self_intersection()),
            k,
            i_ps: self.tangency()?,
            m: self.m(),
        })
    }
}

impl<K: Field> Serialize for Configuration<K> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Configuration", 6)?;
        st.serialize_field("m", &self.m())?;
        st.serialize_field("curve", &self.curve)?;
        st.serialize_field("section", &self.section)?;
        st.serialize_field("s", &self.s)?;
        st.serialize_field("p", &self.p)?;
        let markers: Vec<(String, String)> = self
            .markers
            .iter()
            .map(|(n, p)| (n.clone(), p.to_string()))
            .collect();
        st.serialize_field("markers", &markers)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, FieldDescriptor, QuadFieldElement};

    type Q = QuadFieldElement;

    fn curve(m: u32, s: &str) -> FmCurve<Q> {
        FmCurve::new(m, parse_poly(s, 4, FieldDescriptor::RATIONAL).unwrap()).unwrap()
    }

    fn f0_config() -> Configuration<Q> {
        let c = curve(
            0,
            "x0^3*(y0 + 7*y1) + x0^2*x1*(21*y0 + 35*y1) + x0*x1^2*(35*y0 + 21*y1) + x1^3*(7*y0 + y1)",
        );
        let s = curve(0, "x0*y1^2 - x1*y0^2");
        Configuration::new(c, Some(s), None, FmPoint::from_ints(0, [1, 1, 1, -1])).unwrap()
    }

    #[test]
    fn f0_configuration_info() {
        let cfg = f0_config();
        let info = cfg.info().unwrap();
        assert_eq!(info.to_string(), "[6,4,-1,7;0]");
        assert!(cfg.is_tangent().unwrap());
    }

    #[test]
    fn type_zero_and_singular() {
        // fiber y1 = 0 restricts to x0·x1², a tangency at [1:0;1:0]
        let c = curve(1, "x0^3*y1 + x0*x1^2*y0^3 + x1^3*y1*y0^3");
        let (k, s) = configuration_type(&c, &FmPoint::from_ints(1, [0, 1, 1, 0])).unwrap();
        assert_eq!(
            (k, s.map(|p| p.to_string())),
            (0, Some("[1:0;1:0]".to_string()))
        );
        let bad = FmPoint::<Q>::from_ints(1, [1, 0, 1, 0]);
        assert!(matches!(
            configuration_type(&c, &bad),
            Err(Error::NotTransversal(_))
        ));
    }
}
