use serde::Serialize;

use super::{FmCurve, FmPoint};
use crate::arith::{Field, MultiPoly};
use crate::error::{Error, Result};
use crate::plane::{
    apply3, has_bidegree, inverse3, matrix_moving_origin_to, projective_change, Matrix3, ProjPoint,
};

/// `Σ a_ij x^i y^j ↦ Σ a_ij x0^i x1^{a−i} y0^j y1^{m(a−i)−j}`, a curve of class
/// `a·S_+` on F_m.
pub fn poly_to_divisor<K: Field>(f: &MultiPoly<K>, a: u32, m: u32) -> Result<FmCurve<K>> {
    if f.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: f.arity(),
        });
    }
    if f.is_zero() || !has_bidegree(f, a, a * m) {
        return Err(Error::Bidegree(format!(
            "{} does not have bidegree ({}, {})",
            f,
            a,
            a * m
        )));
    }
    let mut g = MultiPoly::zero(4);
    for (e, c) in f.terms() {
        let (i, j) = (e.0[0], e.0[1]);
        g.add_term(
            crate::arith::Monomial([i, a - i, j, m * (a - i) - j]),
            c.clone(),
        );
    }
    FmCurve::new(m, g)
}

/// `F(x, y) = G(x, 1, y, 1)` for a curve of class `a·S_+`.
pub fn divisor_to_poly<K: Field>(c: &FmCurve<K>) -> Result<MultiPoly<K>> {
    if c.b() != c.a() as i64 * c.m() as i64 {
        return Err(Error::Bidegree(format!(
            "class {} is not a multiple of S+",
            c.class()
        )));
    }
    let images = [
        MultiPoly::var(2, 0),
        MultiPoly::one(2),
        MultiPoly::var(2, 1),
        MultiPoly::one(2),
    ];
    c.poly().substitute(&images)
}

/// The three equivalent readings of "the affine model of `C` has bidegree
/// `(a, am − r)`".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionCheck {
    /// Local criterion at `[0:1;1:0]`.
    pub geometric: bool,
    /// `y1^⌈r(a−i)/a⌉` divides every `G_i`.
    pub divisibility: bool,
    /// Newton polygon of `G(x, 1, y, 1)`.
    pub bidegree: bool,
}

/// Tests whether the affine model of `C ~ a·S_+` drops to bidegree
/// `(a, am − r)`. For `r = 1` the criterion at `p = [0:1;1:0]` is that the
/// fiber `y1 = 0` meets `C` only at `p` (or is a component); for `r = 2`
/// (and `a = 3`) that `C` has multiplicity three at `p`, or multiplicity
/// two with tangent cone the doubled fiber.
pub fn bidegree_reduction_check<K: Field>(c: &FmCurve<K>, r: u32) -> Result<ReductionCheck> {
    let (a, m) = (c.a(), c.m());
    if c.b() != a as i64 * m as i64 {
        return Err(Error::Bidegree(format!(
            "class {} is not a multiple of S+",
            c.class()
        )));
    }
    match (a, r) {
        (_, 1) | (3, 2) => {}
        _ => {
            return Err(Error::Unsupported(format!(
                "reduction check for a = {}, r = {}",
                a, r
            )))
        }
    }
    if r > a * m {
        return Err(Error::Unsupported(format!(
            "r = {} exceeds am = {}",
            r,
            a * m
        )));
    }
    let p = FmPoint::<K>::from_ints(m, [0, 1, 1, 0]);
    // chart (x1 = 1, y0 = 1): u = x0, v = y1; the fiber is v = 0
    let (local, pt) = c.local_at(&p)?;
    debug_assert!(pt.iter().all(|t| t.is_zero()));
    let on_fiber = local.filter(|e| e.0[1] == 0);
    let geometric = if r == 1 {
        on_fiber.is_zero() || on_fiber.order() == Some(a)
    } else {
        match local.order() {
            Some(k) if k >= 3 => true,
            Some(2) => {
                let cone = local.homogeneous_part(2);
                let only_v2 = cone.terms().all(|(e, _)| e.0[1] == 2);
                only_v2
            }
            _ => false,
        }
    };
    let divisibility = (0..=a).all(|i| {
        let need = (r * (a - i)).div_ceil(a);
        let g = c.form(i);
        g.is_zero() || g.min_degree_in(3).unwrap() >= need
    });
    let bidegree = has_bidegree(&divisor_to_poly(c)?, a, a * m - r);
    if geometric != divisibility || divisibility != bidegree {
        return Err(Error::Consistency(format!(
            "reduction criteria disagree: geometric {}, divisibility {}, bidegree {}",
            geometric, divisibility, bidegree
        )));
    }
    Ok(ReductionCheck {
        geometric,
        divisibility,
        bidegree,
    })
}

/// The blow-up `F_1 → P²` of a point `q`, realized as a projective change
/// moving `q` to `[0:0:1]` followed by `[x0:x1;y0:y1] ↦ [x1y0 : x1y1 : x0]`.
#[derive(Clone, Debug)]
pub struct P2Blowup<K> {
    /// `old = M·new`, with `M·[0:0:1] = q`.
    pub matrix: Matrix3<K>,
    inverse: Matrix3<K>,
}

impl<K: Field> P2Blowup<K> {
    pub fn new(q: &ProjPoint<K>) -> Result<Self> {
        let matrix = matrix_moving_origin_to(q)?;
        let inverse = inverse3(&matrix)?;
        Ok(P2Blowup { matrix, inverse })
    }

    /// Strict transform of `F = 0` and the multiplicity of `F` at `q`.
    pub fn curve(&self, f: &MultiPoly<K>) -> Result<(FmCurve<K>, u32)> {
        blowup_from_p2(&projective_change(f, &self.matrix)?)
    }

    /// Image of a point `p ≠ q`.
    pub fn point(&self, p: &ProjPoint<K>) -> Result<FmPoint<K>> {
        let [x, y, z] = apply3(&self.inverse, p);
        if x.is_zero() && y.is_zero() {
            return Err(Error::InvalidPoint("the center has no single image".into()));
        }
        FmPoint::new(1, [z, K::one()], [x, y])
    }

    /// The plane curve whose strict transform is `C`.
    pub fn blowdown(&self, c: &FmCurve<K>) -> Result<MultiPoly<K>> {
        projective_change(&blowdown_to_p2(c)?, &self.inverse)
    }
}

/// Strict transform under `[x0:x1;y0:y1] ↦ [x1y0 : x1y1 : x0]` of a plane
/// curve; the blown-up point is `[0:0:1]`.
pub fn blowup_from_p2<K: Field>(f: &MultiPoly<K>) -> Result<(FmCurve<K>, u32)> {
    if f.arity() != 3 {
        return Err(Error::ArityMismatch {
            expected: 3,
            found: f.arity(),
        });
    }
    if f.is_zero() || !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let [x0, x1, y0, y1] = [0, 1, 2, 3].map(|i| MultiPoly::<K>::var(4, i));
    let pulled = f.substitute(&[&x1 * &y0, &x1 * &y1, x0])?;
    let (strict, mq) = pulled.strip_var(1);
    Ok((FmCurve::new(1, strict)?, mq))
}

/// `G(z, 1, x, y)`, the image in P² of a curve on F_1.
pub fn blowdown_to_p2<K: Field>(c: &FmCurve<K>) -> Result<MultiPoly<K>> {
    if c.m() != 1 {
        return Err(Error::Precondition(format!(
            "blow-down needs F_1, got F_{}",
            c.m()
        )));
    }
    let [x, y, z] = [0, 1, 2].map(|i| MultiPoly::<K>::var(3, i));
    c.poly().substitute(&[z, MultiPoly::one(3), x, y])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, FieldDescriptor, QuadFieldElement};
    use crate::hirzebruch::DivisorClass;

    type Q = QuadFieldElement;

    fn p(s: &str, n: usize) -> MultiPoly<Q> {
        parse_poly(s, n, FieldDescriptor::RATIONAL).unwrap()
    }

    #[test]
    fn homogenization_formula() {
        let c = poly_to_divisor(&p("x^3 + y^6", 2), 3, 2).unwrap();
        assert_eq!(c.poly(), &p("x0^3 + x1^3*y0^6", 4));
        let d = poly_to_divisor(&p("y*(y - x^2)", 2), 3, 1).unwrap();
        assert_eq!(d.poly(), &p("x1^3*y0^2*y1 - x0^2*x1*y0", 4));
        assert_eq!(divisor_to_poly(&d).unwrap(), p("y*(y - x^2)", 2));
        assert!(poly_to_divisor(&p("x^3 + y^7", 2), 3, 2).is_err());
    }

    #[test]
    fn reduction_criteria() {
        for m in 2..6u32 {
            let c = poly_to_divisor(&p(&format!("x^3 + y^{}", 3 * m - 1), 2), 3, m).unwrap();
            assert!(bidegree_reduction_check(&c, 1).unwrap().geometric);
            assert!(!bidegree_reduction_check(&c, 2).unwrap().geometric);
            let c = poly_to_divisor(&p(&format!("x^3 + y^{}", 3 * m - 2), 2), 3, m).unwrap();
            assert!(bidegree_reduction_check(&c, 2).unwrap().geometric);
            let c = poly_to_divisor(&p(&format!("1 + x^3 + y^{}", 3 * m), 2), 3, m).unwrap();
            assert!(!bidegree_reduction_check(&c, 1).unwrap().geometric);
        }
        let c = poly_to_divisor(&p("x^2 + y^3", 2), 2, 2).unwrap();
        assert!(matches!(
            bidegree_reduction_check(&c, 2),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn blowup_classes() {
        // line through the center becomes a fiber
        let (line, mq) = blowup_from_p2(&p("x - 2*y", 3)).unwrap();
        assert_eq!((line.class(), mq), (DivisorClass::new(1, 0, 1), 1));
        // cubic avoiding the center
        let (cubic, mq) = blowup_from_p2(&p("x^3 + y^3 + z^3", 3)).unwrap();
        assert_eq!((cubic.class(), mq), (DivisorClass::new(1, 3, 3), 0));
        assert_eq!(cubic.class().self_intersection(), 9);
        // conic through the center
        let (conic, mq) = blowup_from_p2(&p("x*z - y^2", 3)).unwrap();
        assert_eq!((conic.class(), mq), (DivisorClass::new(1, 1, 2), 1));
        assert_eq!(conic.class().self_intersection(), 3);
        assert!(blowdown_to_p2(&conic)
            .unwrap()
            .eq_up_to_scalar(&p("x*z - y^2", 3)));
    }

    #[test]
    fn blowup_at_general_point() {
        let q = [Q::int(1), Q::int(2), Q::int(1)];
        let bl = P2Blowup::new(&q).unwrap();
        let f = p("x^2 + y^2 - 5*z^2", 3);
        let (c, mq) = bl.curve(&f).unwrap();
        assert_eq!(mq, 1);
        let pt = [Q::int(2), Q::int(1), Q::int(1)];
        assert!(c.contains(&bl.point(&pt).unwrap()));
        assert!(bl.blowdown(&c).unwrap().eq_up_to_scalar(&f));
        assert!(bl.point(&q).is_err());
    }
}
