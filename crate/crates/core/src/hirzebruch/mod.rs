//! Curves, points and divisor classes on the Hirzebruch surface F_m.
//!
//! F_m is the quotient of `(A²∖0)²` by `(x0, x1, y0, y1) ~ (μx0, λ^{−m}μx1,
//! λy0, λy1)`. The section `S_− = {x1 = 0}` has self-intersection `−m`,
//! `S_+ = {x0 = 0}` has `+m`, and `{y0 = c·y1}` are the fibers.

mod auto;
mod correspondence;

pub(crate) use auto::y_matrix_to;
pub use auto::FmAutomorphism;
pub use correspondence::{
    bidegree_reduction_check, blowdown_to_p2, divisor_to_poly, poly_to_divisor, P2Blowup,
    ReductionCheck,
};

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{binary_form_roots, Field, MultiPoly};
use crate::error::{Error, Result};
use crate::plane::{
    classify_singularity, intersection_multiplicity, IntersectionNumber, SingularityReport,
};

/// `s·S_− + f·F` in `Pic(F_m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorClass {
    pub m: i64,
    pub s: i64,
    pub f: i64,
}

impl DivisorClass {
    pub fn new(m: u32, s: i64, f: i64) -> Self {
        DivisorClass { m: m as i64, s, f }
    }

    pub fn s_minus(m: u32) -> Self {
        Self::new(m, 1, 0)
    }

    pub fn s_plus(m: u32) -> Self {
        Self::new(m, 1, m as i64)
    }

    pub fn fiber(m: u32) -> Self {
        Self::new(m, 0, 1)
    }

    /// `K = −2S_− − (m+2)f`.
    pub fn canonical(m: u32) -> Self {
        Self::new(m, -2, -(m as i64) - 2)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m);
        DivisorClass {
            m: self.m,
            s: self.s + other.s,
            f: self.f + other.f,
        }
    }

    pub fn times(&self, k: i64) -> Self {
        DivisorClass {
            m: self.m,
            s: self.s * k,
            f: self.f * k,
        }
    }

    /// `S_−² = −m`, `S_−·f = 1`, `f² = 0`.
    pub fn dot(&self, other: &Self) -> i64 {
        assert_eq!(self.m, other.m);
        -self.m * self.s * other.s + self.s * other.f + self.f * other.s
    }

    pub fn self_intersection(&self) -> i64 {
        self.dot(self)
    }

    /// Arithmetic genus `1 + D·(D + K)/2`.
    pub fn genus(&self) -> i64 {
        let k = Self::canonical(self.m as u32);
        let t = self.dot(&self.add(&k));
        debug_assert!(t % 2 == 0);
        t / 2 + 1
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}S- + {}f on F_{}", self.s, self.f, self.m)
    }
}

/// An affine chart `{x_i ≠ 0, y_j ≠ 0}` with coordinates
/// `(u, v) = (x_{1−i}, y_{1−j})` after scaling `x_i = y_j = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chart {
    pub xi: usize,
    pub yj: usize,
}

impl Chart {
    pub const ALL: [Chart; 4] = [
        Chart { xi: 0, yj: 0 },
        Chart { xi: 0, yj: 1 },
        Chart { xi: 1, yj: 0 },
        Chart { xi: 1, yj: 1 },
    ];

    /// The chart `(x, y) ↦ [x:1;y:1]` used for affine polynomials.
    pub const STANDARD: Chart = Chart { xi: 1, yj: 1 };

    fn images<K: Field>(&self) -> Vec<MultiPoly<K>> {
        let mut im = vec![MultiPoly::one(2); 4];
        im[1 - self.xi] = MultiPoly::var(2, 0);
        im[2 + 1 - self.yj] = MultiPoly::var(2, 1);
        im
    }
}

/// A point `[x0:x1;y0:y1]` of F_m, stored normalized: the last nonzero
/// `y` coordinate is one, then the last nonzero `x` coordinate is one.
#[derive(Clone, Debug, PartialEq)]
pub struct FmPoint<K> {
    pub m: u32,
    pub x: [K; 2],
    pub y: [K; 2],
}

impl<K: Field> FmPoint<K> {
    pub fn new(m: u32, x: [K; 2], y: [K; 2]) -> Result<Self> {
        if (x[0].is_zero() && x[1].is_zero()) || (y[0].is_zero() && y[1].is_zero()) {
            return Err(Error::InvalidPoint(format!(
                "[{}:{};{}:{}]",
                x[0], x[1], y[0], y[1]
            )));
        }
        let c = if y[1].is_zero() {
            y[0].clone()
        } else {
            y[1].clone()
        };
        let cinv = c.inv().unwrap();
        let y = [y[0].clone() * &cinv, y[1].clone() * &cinv];
        let x = [x[0].clone(), x[1].clone() * &c.pow(m)];
        let d = if x[1].is_zero() {
            x[0].clone()
        } else {
            x[1].clone()
        };
        let dinv = d.inv().unwrap();
        let x = [x[0].clone() * &dinv, x[1].clone() * &dinv];
        Ok(FmPoint { m, x, y })
    }

    /// Parses `[x0:x1;y0:y1]` with scalar entries in the grammar of
    /// [`crate::arith::parse_scalar`].
    pub fn parse(m: u32, text: &str, field: crate::arith::FieldDescriptor) -> Result<Self>
    where
        K: From<crate::arith::QuadFieldElement>,
    {
        let bad = || Error::Parse {
            line: 1,
            column: 1,
            message: format!("expected a point [x0:x1;y0:y1], found '{}'", text),
        };
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (xs, ys) = inner.split_once(';').ok_or_else(bad)?;
        let pair = |t: &str| -> Result<[K; 2]> {
            let (a, b) = t.split_once(':').ok_or_else(bad)?;
            Ok([
                crate::arith::parse_scalar(a, field)?.into(),
                crate::arith::parse_scalar(b, field)?.into(),
            ])
        };
        Self::new(m, pair(xs)?, pair(ys)?)
    }

    pub fn from_ints(m: u32, c: [i64; 4]) -> Self {
        Self::new(
            m,
            [K::from_int(c[0]), K::from_int(c[1])],
            [K::from_int(c[2]), K::from_int(c[3])],
        )
        .expect("valid point")
    }

    pub fn on_s_minus(&self) -> bool {
        self.x[1].is_zero()
    }

    pub fn same_fiber(&self, other: &Self) -> bool {
        self.y == other.y
    }

    pub fn chart(&self) -> Chart {
        *Chart::ALL
            .iter()
            .find(|c| self.in_chart(c))
            .expect("every point lies in some chart")
    }

    pub fn in_chart(&self, c: &Chart) -> bool {
        !self.x[c.xi].is_zero() && !self.y[c.yj].is_zero()
    }

    /// Affine coordinates `(u, v)` in `chart`.
    pub fn chart_coords(&self, c: &Chart) -> Result<[K; 2]> {
        if !self.in_chart(c) {
            return Err(Error::InvalidPoint(format!(
                "{} is not in chart {:?}",
                self, c
            )));
        }
        let yj = self.y[c.yj].clone();
        let yinv = yj.inv().unwrap();
        let x = [self.x[0].clone(), self.x[1].clone() * &yj.pow(self.m)];
        let xinv = x[c.xi].inv().unwrap();
        Ok([
            x[1 - c.xi].clone() * &xinv,
            self.y[1 - c.yj].clone() * &yinv,
        ])
    }

    /// The fiber through this point as a curve.
    pub fn fiber(&self) -> FmCurve<K> {
        FmCurve::fiber(self.m, &self.y)
    }
}

impl<K: Field> fmt::Display for FmPoint<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}:{};{}:{}]",
            self.x[0], self.x[1], self.y[0], self.y[1]
        )
    }
}

impl<K: Field> Serialize for FmPoint<K> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A curve `G = Σ_i x0^i x1^{a−i} G_i(y0, y1) = 0` with `deg G_i = b − m·i`,
/// of class `a·S_− + b·f`.
#[derive(Clone, Debug, PartialEq)]
pub struct FmCurve<K> {
    m: u32,
    a: u32,
    b: i64,
    poly: MultiPoly<K>,
}

impl<K: Field> FmCurve<K> {
    /// Wraps a polynomial in `x0 x1 y0 y1`, checking the weights.
    pub fn new(m: u32, poly: MultiPoly<K>) -> Result<Self> {
        if poly.arity() != 4 {
            return Err(Error::ArityMismatch {
                expected: 4,
                found: poly.arity(),
            });
        }
        let (lead, _) = poly
            .leading()
            .ok_or_else(|| Error::Weights("zero polynomial".into()))?;
        let a = lead.0[0] + lead.0[1];
        let b = (lead.0[2] + lead.0[3]) as i64 + m as i64 * lead.0[0] as i64;
        for (e, _) in poly.terms() {
            let ai = e.0[0] + e.0[1];
            let bi = (e.0[2] + e.0[3]) as i64 + m as i64 * e.0[0] as i64;
            if ai != a || bi != b {
                return Err(Error::Weights(format!(
                    "term x0^{} x1^{} y0^{} y1^{} does not have class {}S- + {}f on F_{}",
                    e.0[0], e.0[1], e.0[2], e.0[3], a, b, m
                )));
            }
        }
        Ok(FmCurve { m, a, b, poly })
    }

    /// Assembles `Σ_i x0^i x1^{a−i} G_i` from forms in `y0, y1` (arity 4).
    pub fn from_forms(m: u32, forms: &[MultiPoly<K>]) -> Result<Self> {
        let a = forms.len() as u32 - 1;
        let mut poly = MultiPoly::zero(4);
        for (i, g) in forms.iter().enumerate() {
            let mono = MultiPoly::monomial(4, &[i as u32, a - i as u32, 0, 0], K::one());
            poly = &poly + &(&mono * g);
        }
        Self::new(m, poly)
    }

    /// The fiber through `[y0:y1] = y`.
    pub fn fiber(m: u32, y: &[K; 2]) -> Self {
        let p = &MultiPoly::var(4, 2).scale(&y[1]) - &MultiPoly::var(4, 3).scale(&y[0]);
        FmCurve {
            m,
            a: 0,
            b: 1,
            poly: p,
        }
    }

    pub fn s_minus(m: u32) -> Self {
        FmCurve {
            m,
            a: 1,
            b: 0,
            poly: MultiPoly::var(4, 1),
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn poly(&self) -> &MultiPoly<K> {
        &self.poly
    }

    pub fn class(&self) -> DivisorClass {
        DivisorClass::new(self.m, self.a as i64, self.b)
    }

    /// `G_i`, the coefficient of `x0^i x1^{a−i}`, as a form in `y0, y1`.
    pub fn form(&self, i: u32) -> MultiPoly<K> {
        let mut out = MultiPoly::zero(4);
        for (e, c) in self.poly.terms() {
            if e.0[0] == i {
                let mut n = *e;
                n.0[0] = 0;
                n.0[1] = 0;
                out.add_term(n, c.clone());
            }
        }
        out
    }

    pub fn forms(&self) -> Vec<MultiPoly<K>> {
        (0..=self.a).map(|i| self.form(i)).collect()
    }

    /// Same curve with leading coefficient one.
    pub fn normalized(&self) -> Self {
        FmCurve {
            poly: self.poly.monic(),
            ..self.clone()
        }
    }

    pub fn same_curve(&self, other: &Self) -> bool {
        self.m == other.m && self.poly.eq_up_to_scalar(&other.poly)
    }

    pub fn contains(&self, p: &FmPoint<K>) -> bool {
        self.poly
            .eval(&[
                p.x[0].clone(),
                p.x[1].clone(),
                p.y[0].clone(),
                p.y[1].clone(),
            ])
            .is_zero()
    }

    /// Whether the fiber `y1 = 0`, `y0 = 0`, … divides the equation.
    pub fn contains_fiber(&self, y: &[K; 2]) -> bool {
        self.restrict_to_fiber(y).is_zero()
    }

    /// The local equation in `chart`.
    pub fn chart_poly(&self, chart: &Chart) -> MultiPoly<K> {
        self.poly.substitute(&chart.images()).expect("arity four")
    }

    /// The local equation around `p` and the coordinates of `p`.
    pub fn local_at(&self, p: &FmPoint<K>) -> Result<(MultiPoly<K>, [K; 2])> {
        let c = p.chart();
        Ok((self.chart_poly(&c), p.chart_coords(&c)?))
    }

    pub fn classify_at(&self, p: &FmPoint<K>) -> Result<SingularityReport> {
        let (g, pt) = self.local_at(p)?;
        classify_singularity(&g, &pt)
    }

    pub fn multiplicity_at(&self, p: &FmPoint<K>) -> Result<u32> {
        let (g, pt) = self.local_at(p)?;
        Ok(crate::plane::multiplicity_at(&g, &pt))
    }

    /// `G(x0, x1, y)` for the fixed fiber coordinates `y`, a binary form in
    /// `(x0, x1)` of degree `a` (arity 2).
    pub fn restrict_to_fiber(&self, y: &[K; 2]) -> MultiPoly<K> {
        let images = [
            MultiPoly::var(2, 0),
            MultiPoly::var(2, 1),
            MultiPoly::constant(2, y[0].clone()),
            MultiPoly::constant(2, y[1].clone()),
        ];
        self.poly.substitute(&images).expect("arity four")
    }

    /// Points of the curve on the fiber `y` with their intersection
    /// multiplicities with the fiber.
    pub fn fiber_points(&self, y: &[K; 2]) -> Result<Vec<(FmPoint<K>, u32)>> {
        let r = self.restrict_to_fiber(y);
        if r.is_zero() {
            return Err(Error::FiberComponent);
        }
        let roots = binary_form_roots(&r)?;
        roots
            .roots
            .into_iter()
            .map(|(x, mult)| Ok((FmPoint::new(self.m, x, y.clone())?, mult)))
            .collect()
    }
}

/// Local intersection number of two curves at `p`.
pub fn intersection_at<K: Field>(
    c: &FmCurve<K>,
    d: &FmCurve<K>,
    p: &FmPoint<K>,
) -> Result<IntersectionNumber> {
    let chart = p.chart();
    let pt = p.chart_coords(&chart)?;
    intersection_multiplicity(&c.chart_poly(&chart), &d.chart_poly(&chart), &pt)
}

impl<K: Field> fmt::Display for FmCurve<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

impl<K: Field> Serialize for FmCurve<K> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FmCurve", 4)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("a", &self.a)?;
        st.serialize_field("b", &self.b)?;
        let forms: Vec<String> = self.forms().iter().map(|g| g.to_string()).collect();
        st.serialize_field("forms", &forms)?;
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

    #[test]
    fn intersection_form() {
        for m in 0..6u32 {
            let sm = DivisorClass::s_minus(m);
            let sp = DivisorClass::s_plus(m);
            let f = DivisorClass::fiber(m);
            assert_eq!(sm.self_intersection(), -(m as i64));
            assert_eq!(sp.self_intersection(), m as i64);
            assert_eq!(sm.dot(&sp), 0);
            assert_eq!(f.self_intersection(), 0);
            assert_eq!(sm.genus(), 0);
            assert_eq!(f.genus(), 0);
        }
        // 3S_+ on F_3: self-intersection 27, genus 7
        let c = DivisorClass::s_plus(3).times(3);
        assert_eq!(c.self_intersection(), 27);
        assert_eq!(c.genus(), 7);
    }

    #[test]
    fn weights_are_checked() {
        let c = curve(2, "x0*y1^2 + x1*y0^4");
        assert_eq!(c.class(), DivisorClass::new(2, 1, 4));
        assert!(FmCurve::new(
            2,
            parse_poly("x0*y1 + x1*y0^4", 4, FieldDescriptor::RATIONAL).unwrap()
        )
        .is_err());
    }

    #[test]
    fn points_normalize_with_weights() {
        // [1:1;2:2] on F_1 equals [1:2;1:1]
        let p = FmPoint::<Q>::from_ints(1, [1, 1, 2, 2]);
        assert_eq!(p, FmPoint::from_ints(1, [1, 2, 1, 1]));
        assert_eq!(p.to_string(), "[1/2:1;1:1]");
        let q = FmPoint::<Q>::from_ints(3, [0, 5, 1, 0]);
        assert_eq!(q.to_string(), "[0:1;1:0]");
        assert_eq!(q.chart(), Chart { xi: 1, yj: 0 });
        let r =
            FmPoint::<Q>::parse(1, "[1:2; 1:1]", crate::arith::FieldDescriptor::RATIONAL).unwrap();
        assert_eq!(r, p);
        assert!(
            FmPoint::<Q>::parse(1, "[1:2,1:1]", crate::arith::FieldDescriptor::RATIONAL).is_err()
        );
    }

    #[test]
    fn fiber_restriction_roots() {
        let c = curve(0, "x0^3*(y0 + 7*y1) + x0^2*x1*(21*y0 + 35*y1) + x0*x1^2*(35*y0 + 21*y1) + x1^3*(7*y0 + y1)");
        let pts = c.fiber_points(&[Q::int(1), Q::int(-1)]).unwrap();
        assert_eq!(pts.len(), 3);
        assert!(pts.iter().all(|(_, m)| *m == 1));
    }
}
