use std::fmt;

use super::{FmCurve, FmPoint};
use crate::arith::{Field, MultiPoly};
use crate::error::{Error, Result};

/// An automorphism of F_m of the form
///
/// ```text
/// x0 ↦ α·x0 + x1·Q(y),   x1 ↦ γ·x0 + β·x1,   y ↦ M·y
/// ```
///
/// with `Q` a binary form of degree `m` in `y0, y1` (stored with arity 4).
/// `γ` is nonzero only for `m = 0`, where `Q` is a constant.
#[derive(Clone, Debug, PartialEq)]
pub struct FmAutomorphism<K> {
    pub m: u32,
    pub alpha: K,
    pub beta: K,
    pub gamma: K,
    pub q: MultiPoly<K>,
    pub y: [[K; 2]; 2],
}

fn det2<K: Field>(a: &[[K; 2]; 2]) -> K {
    a[0][0].clone() * &a[1][1] - &(a[0][1].clone() * &a[1][0])
}

pub(crate) fn inv2<K: Field>(a: &[[K; 2]; 2]) -> Result<[[K; 2]; 2]> {
    let d = det2(a).inv().ok_or(Error::SingularMatrix)?;
    Ok([
        [a[1][1].clone() * &d, -(a[0][1].clone() * &d)],
        [-(a[1][0].clone() * &d), a[0][0].clone() * &d],
    ])
}

pub(crate) fn mul2<K: Field>(a: &[[K; 2]; 2], b: &[[K; 2]; 2]) -> [[K; 2]; 2] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| a[i][0].clone() * &b[0][j] + &(a[i][1].clone() * &b[1][j]))
    })
}

fn identity2<K: Field>() -> [[K; 2]; 2] {
    [[K::one(), K::zero()], [K::zero(), K::one()]]
}

/// `Q(M·y)` for a form in the `y` variables of arity 4.
fn subst_y<K: Field>(q: &MultiPoly<K>, m: &[[K; 2]; 2]) -> MultiPoly<K> {
    let y0 = MultiPoly::var(4, 2);
    let y1 = MultiPoly::var(4, 3);
    let images = [
        MultiPoly::var(4, 0),
        MultiPoly::var(4, 1),
        &y0.scale(&m[0][0]) + &y1.scale(&m[0][1]),
        &y0.scale(&m[1][0]) + &y1.scale(&m[1][1]),
    ];
    q.substitute(&images).expect("arity four")
}

impl<K: Field> FmAutomorphism<K> {
    pub fn new(
        m: u32,
        alpha: K,
        beta: K,
        gamma: K,
        q: MultiPoly<K>,
        y: [[K; 2]; 2],
    ) -> Result<Self> {
        if q.arity() != 4 {
            return Err(Error::ArityMismatch {
                expected: 4,
                found: q.arity(),
            });
        }
        if q.terms()
            .any(|(e, _)| e.0[0] != 0 || e.0[1] != 0 || e.0[2] + e.0[3] != m)
        {
            return Err(Error::Weights(format!(
                "shear {} is not a form of degree {} in y0, y1",
                q, m
            )));
        }
        if det2(&y).is_zero() {
            return Err(Error::SingularMatrix);
        }
        if m > 0 {
            if !gamma.is_zero() {
                return Err(Error::Weights("x1 ↦ γ·x0 + β·x1 needs m = 0".into()));
            }
            if alpha.is_zero() || beta.is_zero() {
                return Err(Error::SingularMatrix);
            }
        } else {
            let qc = q.constant_term();
            if (alpha.clone() * &beta - &(qc * &gamma)).is_zero() {
                return Err(Error::SingularMatrix);
            }
        }
        Ok(FmAutomorphism {
            m,
            alpha,
            beta,
            gamma,
            q,
            y,
        })
    }

    pub fn identity(m: u32) -> Self {
        FmAutomorphism {
            m,
            alpha: K::one(),
            beta: K::one(),
            gamma: K::zero(),
            q: MultiPoly::zero(4),
            y: identity2(),
        }
    }

    /// `y ↦ M·y`.
    pub fn y_change(m: u32, y: [[K; 2]; 2]) -> Result<Self> {
        Self::new(m, K::one(), K::one(), K::zero(), MultiPoly::zero(4), y)
    }

    /// `x0 ↦ x0 + x1·Q(y)`.
    pub fn shear(m: u32, q: MultiPoly<K>) -> Result<Self> {
        Self::new(m, K::one(), K::one(), K::zero(), q, identity2())
    }

    /// On F_0, `[x0:x1] ↦ A·[x0:x1]`.
    pub fn x_change(a: [[K; 2]; 2]) -> Result<Self> {
        let [[alpha, delta], [gamma, beta]] = a;
        Self::new(
            0,
            alpha,
            beta,
            gamma,
            MultiPoly::constant(4, delta),
            identity2(),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.alpha == self.beta
            && self.gamma.is_zero()
            && self.q.is_zero()
            && self.y[0][1].is_zero()
            && self.y[1][0].is_zero()
            && self.y[0][0] == self.y[1][1]
    }

    /// Images of `x0, x1, y0, y1` as polynomials.
    pub fn coordinate_images(&self) -> [MultiPoly<K>; 4] {
        let [x0, x1, y0, y1] = [0, 1, 2, 3].map(|i| MultiPoly::var(4, i));
        [
            &x0.scale(&self.alpha) + &(&x1 * &self.q),
            &x0.scale(&self.gamma) + &x1.scale(&self.beta),
            &y0.scale(&self.y[0][0]) + &y1.scale(&self.y[0][1]),
            &y0.scale(&self.y[1][0]) + &y1.scale(&self.y[1][1]),
        ]
    }

    pub fn map_point(&self, p: &FmPoint<K>) -> Result<FmPoint<K>> {
        if p.m != self.m {
            return Err(Error::Precondition(format!(
                "point on F_{} mapped by an automorphism of F_{}",
                p.m, self.m
            )));
        }
        let v = [
            p.x[0].clone(),
            p.x[1].clone(),
            p.y[0].clone(),
            p.y[1].clone(),
        ];
        let q = self.q.eval(&v);
        let x0 = self.alpha.clone() * &p.x[0] + &(p.x[1].clone() * &q);
        let x1 = self.gamma.clone() * &p.x[0] + &(self.beta.clone() * &p.x[1]);
        let y0 = self.y[0][0].clone() * &p.y[0] + &(self.y[0][1].clone() * &p.y[1]);
        let y1 = self.y[1][0].clone() * &p.y[0] + &(self.y[1][1].clone() * &p.y[1]);
        FmPoint::new(self.m, [x0, x1], [y0, y1])
    }

    /// The image curve `G ∘ φ⁻¹`.
    pub fn pushforward(&self, c: &FmCurve<K>) -> Result<FmCurve<K>> {
        if c.m() != self.m {
            return Err(Error::Precondition(format!(
                "curve on F_{} pushed by an automorphism of F_{}",
                c.m(),
                self.m
            )));
        }
        let inv = self.inverse()?;
        FmCurve::new(self.m, c.poly().substitute(&inv.coordinate_images())?)
    }

    /// The preimage curve `G ∘ φ`.
    pub fn pullback(&self, c: &FmCurve<K>) -> Result<FmCurve<K>> {
        FmCurve::new(self.m, c.poly().substitute(&self.coordinate_images())?)
    }

    pub fn inverse(&self) -> Result<Self> {
        let minv = inv2(&self.y)?;
        let qm = subst_y(&self.q, &minv);
        let det = if self.m == 0 {
            self.alpha.clone() * &self.beta - &(self.q.constant_term() * &self.gamma)
        } else {
            self.alpha.clone() * &self.beta
        };
        let dinv = det.inv().ok_or(Error::SingularMatrix)?;
        Ok(FmAutomorphism {
            m: self.m,
            alpha: self.beta.clone() * &dinv,
            beta: self.alpha.clone() * &dinv,
            gamma: -(self.gamma.clone() * &dinv),
            q: qm.scale(&(-dinv)),
            y: minv,
        })
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Self) -> Result<Self> {
        if self.m != first.m {
            return Err(Error::Precondition(
                "composing automorphisms of different surfaces".into(),
            ));
        }
        let (a1, b1, g1) = (&first.alpha, &first.beta, &first.gamma);
        let (a2, b2, g2) = (&self.alpha, &self.beta, &self.gamma);
        let q1c = first.q.constant_term();
        let q2c = self.q.constant_term();
        let alpha = a2.clone() * a1 + &(q2c * g1);
        let beta = b2.clone() * b1 + &(g2.clone() * &q1c);
        let gamma = g2.clone() * a1 + &(b2.clone() * g1);
        let q = &first.q.scale(a2) + &subst_y(&self.q, &first.y).scale(b1);
        Ok(FmAutomorphism {
            m: self.m,
            alpha,
            beta,
            gamma,
            q,
            y: mul2(&self.y, &first.y),
        })
    }

    /// For `m ≥ 1`: sends `s` to `[0:1;0:1]` and `t` to `[0:1;1:0]`. Both
    /// must lie off `S_−` on distinct fibers.
    pub fn normalize_points(s: &FmPoint<K>, t: &FmPoint<K>) -> Result<Self> {
        let m = s.m;
        if m == 0 || t.m != m {
            return Err(Error::Precondition(
                "normalizing two points needs m >= 1".into(),
            ));
        }
        if s.on_s_minus() || t.on_s_minus() {
            return Err(Error::Precondition(
                "points on S- cannot be moved off it".into(),
            ));
        }
        if s.same_fiber(t) {
            return Err(Error::Precondition("points lie on the same fiber".into()));
        }
        // y-change sending t.y to [1:0] and s.y to [0:1]
        let cols = [
            [t.y[0].clone(), s.y[0].clone()],
            [t.y[1].clone(), s.y[1].clone()],
        ];
        let ych = Self::y_change(m, inv2(&cols)?)?;
        let s1 = ych.map_point(s)?;
        let t1 = ych.map_point(t)?;
        // s1 = [a:1;0:1], t1 = [b:1;1:0]
        let a = s1.x[0].clone();
        let b = t1.x[0].clone();
        let q =
            &MultiPoly::monomial(4, &[0, 0, 0, m], a) + &MultiPoly::monomial(4, &[0, 0, m, 0], b);
        Self::shear(m, -q)?.after(&ych)
    }

    /// For `m ≥ 1`: sends `s` (off `S_−`) to `[0:1;0:1]`.
    pub fn normalize_point(s: &FmPoint<K>) -> Result<Self> {
        let m = s.m;
        if m == 0 {
            return Err(Error::Precondition(
                "normalizing a point needs m >= 1".into(),
            ));
        }
        if s.on_s_minus() {
            return Err(Error::Precondition(
                "points on S- cannot be moved off it".into(),
            ));
        }
        let ych = Self::y_change(m, y_matrix_to(&s.y, 1)?)?;
        let s1 = ych.map_point(s)?;
        let q = MultiPoly::monomial(4, &[0, 0, 0, m], s1.x[0].clone());
        Self::shear(m, -q)?.after(&ych)
    }
}

/// A matrix sending `[c0:c1]` to `[1:0]` (`slot = 0`) or `[0:1]` (`slot = 1`).
pub(crate) fn y_matrix_to<K: Field>(c: &[K; 2], slot: usize) -> Result<[[K; 2]; 2]> {
    // M·c = e0 with M = [[1/c0, 0], [−c1/c0, 1]] or a swap when c0 = 0
    let to_e0 = if !c[0].is_zero() {
        let i = c[0].inv().unwrap();
        [[i.clone(), K::zero()], [-(c[1].clone() * &i), K::one()]]
    } else if !c[1].is_zero() {
        let i = c[1].inv().unwrap();
        [[K::zero(), i], [K::one(), K::zero()]]
    } else {
        return Err(Error::InvalidPoint("[0:0]".into()));
    };
    if slot == 0 {
        Ok(to_e0)
    } else {
        let swap = [[K::zero(), K::one()], [K::one(), K::zero()]];
        Ok(mul2(&swap, &to_e0))
    }
}

impl<K: Field> fmt::Display for FmAutomorphism<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let img = self.coordinate_images();
        write!(
            f,
            "x0 -> {}, x1 -> {}, y0 -> {}, y1 -> {}",
            img[0], img[1], img[2], img[3]
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, FieldDescriptor, QuadFieldElement};

    type Q = QuadFieldElement;

    fn pt(m: u32, c: [i64; 4]) -> FmPoint<Q> {
        FmPoint::from_ints(m, c)
    }

    fn q4(s: &str) -> MultiPoly<Q> {
        parse_poly(s, 4, FieldDescriptor::RATIONAL).unwrap()
    }

    #[test]
    fn inverse_and_composition() {
        let phi = FmAutomorphism::new(
            2,
            Q::int(3),
            Q::int(-2),
            Q::int(0),
            q4("y0^2 - 5*y0*y1 + 7*y1^2"),
            [[Q::int(2), Q::int(1)], [Q::int(1), Q::int(1)]],
        )
        .unwrap();
        let inv = phi.inverse().unwrap();
        assert!(inv.after(&phi).unwrap().is_identity());
        assert!(phi.after(&inv).unwrap().is_identity());
        let p = pt(2, [4, 1, 3, 1]);
        assert_eq!(inv.map_point(&phi.map_point(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn pushforward_moves_points_with_curves() {
        let c = FmCurve::new(1, q4("x0^2*y0^2 + x0*x1*y0^2*y1 + 3*x1^2*y1^4 - x1^2*y0^4")).unwrap();
        let phi = FmAutomorphism::new(
            1,
            Q::int(1),
            Q::int(2),
            Q::int(0),
            q4("y0 - y1"),
            [[Q::int(1), Q::int(2)], [Q::int(0), Q::int(1)]],
        )
        .unwrap();
        let img = phi.pushforward(&c).unwrap();
        for (_, p) in [(0, pt(1, [0, 1, 1, 0])), (1, pt(1, [1, 0, 1, 1]))] {
            assert_eq!(c.contains(&p), img.contains(&phi.map_point(&p).unwrap()));
        }
        assert_eq!(img.class(), c.class());
        assert_eq!(phi.pullback(&img).unwrap().poly(), c.poly());
    }

    #[test]
    fn f0_x_change() {
        let phi =
            FmAutomorphism::x_change([[Q::int(0), Q::int(1)], [Q::int(1), Q::int(0)]]).unwrap();
        assert_eq!(
            phi.map_point(&pt(0, [2, 1, 0, 1])).unwrap(),
            pt(0, [1, 2, 0, 1])
        );
        let inv = phi.inverse().unwrap();
        assert!(inv.after(&phi).unwrap().is_identity());
    }

    #[test]
    fn normalize_two_points() {
        let s = pt(3, [5, 1, 2, 1]);
        let t = pt(3, [-1, 1, 1, 4]);
        let phi = FmAutomorphism::normalize_points(&s, &t).unwrap();
        assert_eq!(phi.map_point(&s).unwrap(), pt(3, [0, 1, 0, 1]));
        assert_eq!(phi.map_point(&t).unwrap(), pt(3, [0, 1, 1, 0]));
        let one = FmAutomorphism::normalize_point(&s).unwrap();
        assert_eq!(one.map_point(&s).unwrap(), pt(3, [0, 1, 0, 1]));
    }
}
