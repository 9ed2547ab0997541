//! Affine and projective plane curves: supports, multiplicities, tangent
//! cones, singularity types and intersection numbers.

mod classify;
mod intersect;

pub use classify::{classify_singularity, SingularityKind, SingularityReport};
pub use intersect::{
    intersection_multiplicity, intersection_multiplicity_projective, IntersectionNumber,
};

use crate::arith::{Field, MultiPoly};
use crate::error::{Error, Result};

/// A point of the affine plane.
pub type AffinePoint<K> = [K; 2];
/// Homogeneous coordinates `[x:y:z]` of a point of P².
pub type ProjPoint<K> = [K; 3];
/// A 3×3 matrix, row major.
pub type Matrix3<K> = [[K; 3]; 3];

/// Newton polygon inside the triangle `(0,0), (a,0), (0,b)`.
pub fn has_bidegree<K: Field>(f: &MultiPoly<K>, a: u32, b: u32) -> bool {
    assert_eq!(f.arity(), 2);
    f.terms().all(|(m, _)| {
        let (i, j) = (m.0[0] as u64, m.0[1] as u64);
        let (a, b) = (a as u64, b as u64);
        i <= a && j <= b && b * i + a * j <= a * b
    })
}

/// Homogenizes with `z` to the total degree of `f`.
pub fn homogenize<K: Field>(f: &MultiPoly<K>) -> MultiPoly<K> {
    assert_eq!(f.arity(), 2);
    let d = f.degree().unwrap_or(0);
    let mut out = MultiPoly::zero(3);
    for (m, c) in f.terms() {
        let mut e = *m;
        e.0[2] = d - m.0[0] - m.0[1];
        out.add_term(e, c.clone());
    }
    out
}

/// Sets `z = 1`.
pub fn dehomogenize<K: Field>(f: &MultiPoly<K>) -> Result<MultiPoly<K>> {
    if f.arity() != 3 {
        return Err(Error::ArityMismatch {
            expected: 3,
            found: f.arity(),
        });
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    f.substitute(&[
        MultiPoly::var(2, 0),
        MultiPoly::var(2, 1),
        MultiPoly::one(2),
    ])
}

/// The standard affine chart around a projective point: the last nonzero
/// coordinate is set to one. Returns the chart polynomial and the point's
/// affine coordinates in that chart.
pub fn affine_chart<K: Field>(
    f: &MultiPoly<K>,
    p: &ProjPoint<K>,
) -> Result<(MultiPoly<K>, AffinePoint<K>)> {
    if f.arity() != 3 {
        return Err(Error::ArityMismatch {
            expected: 3,
            found: f.arity(),
        });
    }
    let k = (0..3)
        .rev()
        .find(|&i| !p[i].is_zero())
        .ok_or_else(|| Error::InvalidPoint("[0:0:0]".into()))?;
    let inv = p[k].inv().unwrap();
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let mut images = vec![MultiPoly::zero(2); 3];
    images[k] = MultiPoly::one(2);
    images[others[0]] = MultiPoly::var(2, 0);
    images[others[1]] = MultiPoly::var(2, 1);
    let g = f.substitute(&images)?;
    let pt = [p[others[0]].clone() * &inv, p[others[1]].clone() * &inv];
    Ok((g, pt))
}

/// Multiplicity of `f` at `p`; zero when `p` is off the curve.
pub fn multiplicity_at<K: Field>(f: &MultiPoly<K>, p: &AffinePoint<K>) -> u32 {
    f.translate(p).order().unwrap_or(u32::MAX)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TangentCone<K> {
    pub multiplicity: u32,
    /// Lowest-degree form of the curve translated to the origin.
    pub form: MultiPoly<K>,
    /// For multiplicity two, whether the cone is a double line.
    pub double_line: Option<bool>,
}

pub fn tangent_cone<K: Field>(f: &MultiPoly<K>, p: &AffinePoint<K>) -> TangentCone<K> {
    let g = f.translate(p);
    let m = g.order().unwrap_or(0);
    let form = g.homogeneous_part(m);
    let double_line = if m == 2 {
        Some(quadratic_discriminant(&form).is_zero())
    } else {
        None
    };
    TangentCone {
        multiplicity: m,
        form,
        double_line,
    }
}

/// `b² − 4ac` for `a x² + b xy + c y²`.
pub fn quadratic_discriminant<K: Field>(q: &MultiPoly<K>) -> K {
    let a = q.coeff_of(&[2, 0]);
    let b = q.coeff_of(&[1, 1]);
    let c = q.coeff_of(&[0, 2]);
    b.clone() * &b - &(K::from_int(4) * &a * &c)
}

pub fn det3<K: Field>(m: &Matrix3<K>) -> K {
    let t = |i: usize, j: usize, k: usize| m[0][i].clone() * &m[1][j] * &m[2][k];
    t(0, 1, 2) + &t(1, 2, 0) + &t(2, 0, 1) - &t(2, 1, 0) - &t(0, 2, 1) - &t(1, 0, 2)
}

pub fn inverse3<K: Field>(m: &Matrix3<K>) -> Result<Matrix3<K>> {
    let det = det3(m);
    let inv = det.inv().ok_or(Error::SingularMatrix)?;
    let c = |r0: usize, r1: usize, c0: usize, c1: usize| {
        m[r0][c0].clone() * &m[r1][c1] - &(m[r0][c1].clone() * &m[r1][c0])
    };
    let cof = [
        [c(1, 2, 1, 2), -c(1, 2, 0, 2), c(1, 2, 0, 1)],
        [-c(0, 2, 1, 2), c(0, 2, 0, 2), -c(0, 2, 0, 1)],
        [c(0, 1, 1, 2), -c(0, 1, 0, 2), c(0, 1, 0, 1)],
    ];
    // inverse = adjugate / det, adjugate = cofactor transpose
    let mut out: Matrix3<K> = std::array::from_fn(|_| std::array::from_fn(|_| K::zero()));
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = cof[j][i].clone() * &inv;
        }
    }
    Ok(out)
}

pub fn apply3<K: Field>(m: &Matrix3<K>, v: &ProjPoint<K>) -> ProjPoint<K> {
    std::array::from_fn(|i| (0..3).fold(K::zero(), |acc, j| acc + &(m[i][j].clone() * &v[j])))
}

/// The curve `F(M·v) = 0`: a point `v` lies on the result iff `M·v` lies
/// on `F`.
pub fn projective_change<K: Field>(f: &MultiPoly<K>, m: &Matrix3<K>) -> Result<MultiPoly<K>> {
    if f.arity() != 3 {
        return Err(Error::ArityMismatch {
            expected: 3,
            found: f.arity(),
        });
    }
    if det3(m).is_zero() {
        return Err(Error::SingularMatrix);
    }
    let images: Vec<MultiPoly<K>> = (0..3)
        .map(|i| {
            m[i].iter()
                .enumerate()
                .fold(MultiPoly::zero(3), |row, (j, c)| {
                    &row + &MultiPoly::var(3, j).scale(c)
                })
        })
        .collect();
    f.substitute(&images)
}

/// A matrix `M` with `M·[0:0:1] = q`, completed by standard basis vectors.
pub fn matrix_moving_origin_to<K: Field>(q: &ProjPoint<K>) -> Result<Matrix3<K>> {
    let k = (0..3)
        .rev()
        .find(|&i| !q[i].is_zero())
        .ok_or_else(|| Error::InvalidPoint("[0:0:0]".into()))?;
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let mut m: Matrix3<K> = std::array::from_fn(|_| std::array::from_fn(|_| K::zero()));
    m[others[0]][0] = K::one();
    m[others[1]][1] = K::one();
    for i in 0..3 {
        m[i][2] = q[i].clone();
    }
    Ok(m)
}

/// Irreducibility certificate for a curve of bidegree `(3, 3m − r)` with an
/// `A_k` point: reducible curves carry at most `A_{4m−1−r}`.
pub fn certify_irreducible_via_bound(k: u32, m: u32, r: u32) -> Result<bool> {
    if m < 2 {
        return Err(Error::Precondition(format!(
            "bound needs m >= 2, got {}",
            m
        )));
    }
    if r > 2 {
        return Err(Error::Precondition(format!(
            "r must be 0, 1 or 2, got {}",
            r
        )));
    }
    Ok(k > 4 * m - 1 - r)
}

/// Splits `b` as `3m − r` with `r ∈ {0,1,2}`.
pub fn split_b(b: u32) -> (u32, u32) {
    let m = b.div_ceil(3);
    (m, 3 * m - b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, FieldDescriptor, QuadFieldElement};

    type Q = QuadFieldElement;

    fn p2(s: &str) -> MultiPoly<Q> {
        parse_poly(s, 2, FieldDescriptor::RATIONAL).unwrap()
    }
    fn p3(s: &str) -> MultiPoly<Q> {
        parse_poly(s, 3, FieldDescriptor::RATIONAL).unwrap()
    }

    #[test]
    fn bidegree_triangle() {
        assert!(has_bidegree(&p2("x^3 - (y^2 - x)^2"), 3, 4));
        assert!(!has_bidegree(&p2("y^3 - (x^2 - y)^2"), 3, 4));
        assert!(!has_bidegree(&p2("x^2*y^3"), 3, 4));
        assert!(has_bidegree(&p2("x^3 + y"), 3, 1));
        assert!(has_bidegree(&p2("x*y^2 + y^3"), 3, 3));
    }

    #[test]
    fn homogenize_round_trip() {
        let f = p2("y^2 - x^5 + 3*x*y");
        let h = homogenize(&f);
        assert_eq!(h, p3("y^2*z^3 - x^5 + 3*x*y*z^3"));
        assert_eq!(dehomogenize(&h).unwrap(), f);
    }

    #[test]
    fn tangent_cones() {
        let z = [Q::int(0), Q::int(0)];
        assert_eq!(tangent_cone(&p2("y^2 - x^3"), &z).double_line, Some(true));
        assert_eq!(
            tangent_cone(&p2("y^2 - x^2 - x^3"), &z).double_line,
            Some(false)
        );
        assert_eq!(multiplicity_at(&p2("x*y*(x - y)"), &z), 3);
        assert_eq!(multiplicity_at(&p2("x - 1"), &z), 0);
    }

    #[test]
    fn projective_change_and_inverse() {
        let m: Matrix3<Q> = [
            [Q::int(1), Q::int(0), Q::int(1)],
            [Q::int(0), Q::int(1), Q::int(0)],
            [Q::int(0), Q::int(0), Q::int(1)],
        ];
        let f = p3("x^3 + (x*z - y^2)*(-2*x + z)");
        let g = projective_change(&f, &m).unwrap();
        assert_eq!(g, p3("z*(x^2 + y^2) + x^3 + 2*x*y^2"));
        let inv = inverse3(&m).unwrap();
        assert_eq!(projective_change(&g, &inv).unwrap(), f);
        let sing = [
            [Q::int(1), Q::int(1), Q::int(0)],
            [Q::int(1), Q::int(1), Q::int(0)],
            [Q::int(0), Q::int(0), Q::int(1)],
        ];
        assert!(matches!(
            projective_change(&f, &sing),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn irreducibility_bound() {
        assert!(certify_irreducible_via_bound(13, 3, 0).unwrap());
        assert!(!certify_irreducible_via_bound(11, 3, 0).unwrap());
        assert!(certify_irreducible_via_bound(5, 1, 0).is_err());
        assert_eq!(split_b(10), (4, 2));
        assert_eq!(split_b(12), (4, 0));
    }
}
