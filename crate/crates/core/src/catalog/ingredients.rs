use num_integer::binomial;

use crate::arith::{parse_poly, parse_scalar, FieldDescriptor, MultiPoly};
use crate::error::{Error, Result};
use crate::hirzebruch::{
    bidegree_reduction_check, divisor_to_poly, FmAutomorphism, FmCurve, FmPoint, P2Blowup,
    ReductionCheck,
};
use crate::links::{transversal_chain, ChainTrace, Configuration};
use crate::plane::has_bidegree;
use crate::{Poly, Scalar};

/// A tangent 3-configuration obtained by blowing up `q ∈ P²`, together with
/// the chain length `n` and the reduction `r` with `b = 3m' − r`.
#[derive(Clone, Copy, Debug)]
pub struct PlaneIngredient {
    pub b: u32,
    pub field: i64,
    pub curve: &'static str,
    pub section: &'static str,
    pub q: [&'static str; 3],
    pub p: [&'static str; 3],
    pub s: Option<[&'static str; 3]>,
    /// Point whose fiber realizes the reduction by `r`.
    pub t: Option<[&'static str; 3]>,
    pub n: u32,
    pub r: u32,
    pub info: &'static str,
    pub k: u32,
}

pub const PLANE_INGREDIENTS: [PlaneIngredient; 6] = [
    PlaneIngredient {
        b: 5,
        field: 0,
        curve: "z*(x^2 + x*y + y^2) + x*y*(x + y)",
        section: "x + z",
        q: ["0", "1", "-1"],
        p: ["0", "1", "0"],
        s: Some(["0", "0", "1"]),
        t: Some(["1", "0", "0"]),
        n: 3,
        r: 1,
        info: "[9,1,1,3;1]",
        k: 7,
    },
    PlaneIngredient {
        b: 7,
        field: 0,
        curve: "y^2*x^2 + y*(x^3 + 3*x^2*z + x*z^2 + z^3) + z^4",
        section: "y",
        q: ["0", "1", "-1"],
        p: ["1", "0", "0"],
        s: Some(["1", "1", "-1"]),
        t: Some(["0", "1", "0"]),
        n: 4,
        r: 2,
        info: "[15,1,2,4;1]",
        k: 10,
    },
    PlaneIngredient {
        b: 8,
        field: -3,
        curve: "z^3 + (x*z - y^2)*((-3/8)*(w - 1)*x + (1/8)*(3*w - 1)*y + (1/2)*(-3 + w)*z)",
        section: "x*z - y^2",
        q: ["0", "0", "1"],
        p: ["1", "0", "0"],
        s: None,
        t: Some(["(3 + w)/2", "1", "1"]),
        n: 6,
        r: 1,
        info: "[9,3,0,6;1]",
        k: 12,
    },
    PlaneIngredient {
        b: 10,
        field: -1,
        curve: "(i - 1)*x^2*y*z + (1/2)*x^3*(y - i*z) + x*y^2*(-x + 2*z) - y^2*z^2 \
                + (1/2)*x*z^2*((1 - 3*i)*y + i*x)",
        section: "x*(i*y + z) + (1 - i)*y^2 - (1 + 3*i)*y*z - z^2",
        q: ["1", "0", "1"],
        p: ["1", "0", "0"],
        s: Some(["0", "0", "1"]),
        t: Some(["0", "1", "0"]),
        n: 7,
        r: 2,
        info: "[15,3,1,7;1]",
        k: 15,
    },
    PlaneIngredient {
        b: 11,
        field: -3,
        curve: "z^3 + (3/8)*(w + 3)*(y - x)*z^2 + (9/8)*(w/2 + 1)*x^2*z \
                + (3/64)*(-7*w - 3)*x*y*z + (3/64)*(5*w - 3)*y^2*z \
                + (3/32)*(-5*w/2 - 3)*x^3 + (9/32)*(w/2 - 1)*x^2*y",
        section: "(-2*x + y)*y*z + (1/4)*(w + 3)*x^2*y - x^3",
        q: ["0", "0", "1"],
        p: ["0", "1", "0"],
        s: None,
        t: Some(["3 - w", "w - 3", "3"]),
        n: 9,
        r: 1,
        info: "[9,5,-1,9;1]",
        k: 17,
    },
    PlaneIngredient {
        b: 12,
        field: -3,
        curve: "z^3 + (9/2)*(-1 + w)*x^3 - 9*y*x^2 + 9*z*y^2 + 3*(-w + 3)*x*y*z - 6*y*z^2 \
                - 3*x*z^2 + (3/2)*(-w + 5)*x^2*z",
        section: "y*z*(x + y) + (1/2)*(-1 + w/3)*x^3 - x^2*y",
        q: ["0", "0", "1"],
        p: ["0", "1", "0"],
        s: Some(["0", "1", "3"]),
        t: None,
        n: 9,
        r: 0,
        info: "[9,5,0,9;1]",
        k: 18,
    },
];

pub fn plane_ingredient(b: u32) -> Option<&'static PlaneIngredient> {
    PLANE_INGREDIENTS.iter().find(|g| g.b == b)
}

fn proj_point(c: &[&str; 3], field: FieldDescriptor) -> Result<[Scalar; 3]> {
    Ok([
        parse_scalar(c[0], field)?,
        parse_scalar(c[1], field)?,
        parse_scalar(c[2], field)?,
    ])
}

impl PlaneIngredient {
    pub fn field_descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { d: self.field }
    }

    pub fn plane_curve(&self) -> Result<Poly> {
        parse_poly(self.curve, 3, self.field_descriptor())
    }

    pub fn plane_section(&self) -> Result<Poly> {
        parse_poly(self.section, 3, self.field_descriptor())
    }

    /// The configuration on F_1 after blowing up `q`, with `t` as a marker.
    pub fn configuration(&self) -> Result<Configuration<Scalar>> {
        let field = self.field_descriptor();
        let bl = P2Blowup::new(&proj_point(&self.q, field)?)?;
        let (c, _) = bl.curve(&self.plane_curve()?)?;
        let (sec, _) = bl.curve(&self.plane_section()?)?;
        let p = bl.point(&proj_point(&self.p, field)?)?;
        let s = self
            .s
            .as_ref()
            .map(|s| proj_point(s, field).and_then(|s| bl.point(&s)))
            .transpose()?;
        let mut cfg = Configuration::new(c, Some(sec), s, p)?;
        if let Some(t) = &self.t {
            cfg = cfg.with_marker("t", bl.point(&proj_point(t, field)?)?)?;
        }
        Ok(cfg)
    }
}

/// The configuration `(C, S, •, p)_0` on F_0 with `C·S = I_p(C,S) = 7`.
pub fn f0_configuration() -> Result<Configuration<Scalar>> {
    binomial_configuration(2)
}

/// The family `S: x0·y1^a = x1·y0^a` and the 3-section whose parametrization
/// along `S` is `(y0 + y1)^{4a−1}`, meeting at `p = [1:(−1)^a;1:−1]` on F_0.
pub fn binomial_configuration(a: u32) -> Result<Configuration<Scalar>> {
    if a < 2 {
        return Err(Error::Precondition(format!(
            "the family needs a >= 2, got {}",
            a
        )));
    }
    let mut g = MultiPoly::zero(4);
    for i in 0..4 * a {
        let j = i / a;
        let coeff = binomial(4 * a as u64 - 1, i as u64) as i64;
        g.add_term(
            crate::arith::Monomial([3 - j, j, (j + 1) * a - 1 - i, i - j * a]),
            Scalar::int(coeff),
        );
    }
    let sec = parse_poly(
        &format!("x0*y1^{} - x1*y0^{}", a, a),
        4,
        FieldDescriptor::RATIONAL,
    )?;
    let sign = if a.is_multiple_of(2) { 1 } else { -1 };
    Configuration::new(
        FmCurve::new(0, g)?,
        Some(FmCurve::new(0, sec)?),
        None,
        FmPoint::from_ints(0, [1, sign, 1, -1]),
    )
}

/// Output of the transversal-chain pipeline.
#[derive(Clone, Debug)]
pub struct ChainWitness {
    pub trace: ChainTrace<Scalar>,
    /// The landed curve with the double point at `[0:1;0:1]`.
    pub curve: FmCurve<Scalar>,
    pub reduction: Option<ReductionCheck>,
    /// `G(x, 1, y, 1)`, with the singular point at the origin.
    pub poly: Poly,
}

/// Runs `n` transversal links from `cfg`, moves the final double point to
/// `[0:1;0:1]` (and the marker `t`, when `r > 0`, to `[0:1;1:0]`), checks the
/// reduction by `r`, and returns the affine model of bidegree `(3, 3m' − r)`.
pub fn run_pipeline(
    cfg: &Configuration<Scalar>,
    expected_info: &str,
    n: u32,
    r: u32,
) -> Result<ChainWitness> {
    let info = cfg.info()?;
    if info.to_string() != expected_info {
        return Err(Error::Consistency(format!(
            "initial configuration has info {}, expected {}",
            info, expected_info
        )));
    }
    let trace = transversal_chain(cfg, n as usize)?;
    let fin = trace.final_config();
    let s = fin
        .s
        .as_ref()
        .ok_or_else(|| Error::Consistency("the chain ends without a double point".into()))?;
    let auto = if r == 0 {
        FmAutomorphism::normalize_point(s)?
    } else {
        let t = fin
            .marker("t")
            .ok_or_else(|| Error::Precondition("reduction needs the marker t".into()))?;
        FmAutomorphism::normalize_points(s, t)?
    };
    let curve = auto.pushforward(&fin.curve)?;
    let reduction = if r == 0 {
        None
    } else {
        let rc = bidegree_reduction_check(&curve, r)?;
        if !rc.geometric {
            return Err(Error::Consistency(format!(
                "the fiber of t does not reduce the bidegree by {}",
                r
            )));
        }
        Some(rc)
    };
    let poly = divisor_to_poly(&curve)?;
    let b = 3 * curve.m() - r;
    if !has_bidegree(&poly, 3, b) {
        return Err(Error::Bidegree(format!(
            "the affine model is not of bidegree (3, {})",
            b
        )));
    }
    Ok(ChainWitness {
        trace,
        curve,
        reduction,
        poly,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::links::{singular_chain, transversal_chain, verify_trace, ChainKind};

    #[test]
    fn bidegree_3_12_chain_round_trip() {
        let ing = plane_ingredient(12).unwrap();
        let cfg = ing.configuration().unwrap();
        assert_eq!(cfg.info().unwrap().to_string(), ing.info);
        let t = transversal_chain(&cfg, ing.n as usize).unwrap();
        assert!(verify_trace(&t).ok());
        assert_eq!(t.final_config().curve.m(), 4);

        let back = t.inverse().unwrap();
        assert_eq!(back.kind, ChainKind::Singular);
        assert!(verify_trace(&back).ok());
        let fin = back.final_config();
        assert!(fin.curve.same_curve(&cfg.curve));
        assert_eq!(fin.p, cfg.p);
        assert_eq!(back.final_info(), t.initial_info);

        let sing = singular_chain(t.final_config(), ing.n as usize).unwrap();
        assert!(verify_trace(&sing).ok());
        assert!(sing.landing.as_ref().unwrap().holds);
        assert_eq!(sing.final_info(), t.initial_info);
    }
}
