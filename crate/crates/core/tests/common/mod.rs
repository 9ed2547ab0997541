//! Independent oracles used by the integration tests.
#![allow(dead_code)]

use akcurves::arith::{parse_poly, FieldDescriptor};
use akcurves::plane::IntersectionNumber;
use akcurves::{Poly, Scalar};

pub fn p2(s: &str) -> Poly {
    parse_poly(s, 2, FieldDescriptor::RATIONAL).unwrap()
}

/// Determinant of a square matrix of polynomials by fraction-free
/// (Bareiss) elimination.
fn det(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(2);
    }
    let mut sign = Scalar::int(1);
    let mut prev = Poly::one(2);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Poly::zero(2),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].scale(&sign)
}

/// Coefficients of `f` as a polynomial in `y`, highest first, each a
/// polynomial in `x`.
fn y_coeffs(f: &Poly) -> Vec<Poly> {
    let d = f.terms().map(|(e, _)| e.0[1]).max().unwrap_or(0);
    let mut out = vec![Poly::zero(2); d as usize + 1];
    for (e, c) in f.terms() {
        let mut t = Poly::zero(2);
        let mut mono = *e;
        mono.0[1] = 0;
        t.add_term(mono, c.clone());
        out[(d - e.0[1]) as usize] = &out[(d - e.0[1]) as usize] + &t;
    }
    out
}

/// `Res_y(f, g)` through the Sylvester matrix.
pub fn resultant_y(f: &Poly, g: &Poly) -> Poly {
    let a = y_coeffs(f);
    let b = y_coeffs(g);
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    if size == 0 {
        return Poly::one(2);
    }
    let mut rows = vec![vec![Poly::zero(2); size]; size];
    for i in 0..n {
        for (j, c) in a.iter().enumerate() {
            rows[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.iter().enumerate() {
            rows[n + i][i + j] = c.clone();
        }
    }
    det(rows)
}

fn x_order(r: &Poly) -> Option<u32> {
    r.terms().map(|(e, _)| e.0[0]).min()
}

/// `I_0(f, g)` as the least vanishing order at `x = 0` of `Res_y` over several
/// shears `x ↦ x + c·y` that make both leading `y`-coefficients constant.
/// Each order bounds the sum of the intersection numbers on the line
/// `x = 0`, so the minimum over enough shears is the local number.
pub fn resultant_oracle(f: &Poly, g: &Poly) -> IntersectionNumber {
    let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
    let mut best: Option<u32> = None;
    let mut used = 0;
    for c in [1i64, -1, 2, -2, 3, -3, 5, 7] {
        let shear = [&x + &y.scale(&Scalar::int(c)), y.clone()];
        let fs = f.substitute(&shear).unwrap();
        let gs = g.substitute(&shear).unwrap();
        let ok = [&fs, &gs].iter().all(|h| {
            let lead = &y_coeffs(h)[0];
            lead.degree() == Some(0)
        });
        if !ok {
            continue;
        }
        used += 1;
        let r = resultant_y(&fs, &gs);
        if r.is_zero() {
            return IntersectionNumber::Infinite;
        }
        let o = x_order(&r).unwrap();
        best = Some(best.map_or(o, |b: u32| b.min(o)));
        if used >= 4 {
            break;
        }
    }
    IntersectionNumber::Finite(best.expect("a usable shear") as u64)
}

/// Thirty fixed pairs of curves through the origin.
pub fn oracle_pairs() -> Vec<(Poly, Poly)> {
    let pairs = [
        ("y", "y - x^2"),
        ("y", "y - x^5"),
        ("y^2 - x^3", "y"),
        ("y^2 - x^3", "x"),
        ("y^2 - x^3", "y^2 - x^5"),
        ("y^2 - x^3", "y^3 - x^2"),
        ("y - x^2", "y + x^2"),
        ("x^2 + y^2 - 2*y", "y"),
        ("x*y", "x + y"),
        ("x*y", "x^2 - y^3"),
        ("y^2 - x^2 - x^3", "y - x"),
        ("y^2 - x^2 - x^3", "y^2 - x^3"),
        ("(y - x^2)*(y + x^3)", "y - 2*x^2"),
        ("x^3 + y^3 - 3*x*y", "y - x^2"),
        ("x^3 + y^3 - 3*x*y", "x"),
        ("y^3 - x^4", "y^2 - x^3"),
        ("y - x^3 + x*y^2", "y + x^3"),
        ("x^2 + y^2 + x^3", "x^2 - y^2"),
        ("y^2 - x^5", "y^2 - x^5 + x^7"),
        ("y^2 - x^5", "y - x^2"),
        ("x^2 - y^5", "x - y^2 - y^3"),
        ("y^4 - x^3", "y^2 - x^2"),
        ("(x + y)^2 - x^3", "x + y"),
        ("(x + y)^2 - x^3", "x + y - x^2"),
        ("y^2 + x^2 - x^4", "y^2 - 3*x^2"),
        ("y - x", "y - x + x^4"),
        ("x*y*(x - y)", "x + 2*y"),
        ("x*y*(x - y)", "y - x^2 - x^3"),
        ("y^3 - x^7", "y^2 - x^5"),
        ("(y - x^2)^2 - x^5", "y - x^2"),
        ("y*(y - x)", "y*(y + x)"),
    ];
    pairs.iter().map(|(a, b)| (p2(a), p2(b))).collect()
}
