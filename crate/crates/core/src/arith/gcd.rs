//! Multivariate gcd by recursion on the last variable with a primitive
//! pseudo-remainder sequence.

use super::field::Field;
use super::poly::{Monomial, MultiPoly, MAX_ARITY};

/// Greatest common divisor, normalized to leading coefficient one.
/// `gcd(0, 0) = 0`.
pub fn gcd<K: Field>(a: &MultiPoly<K>, b: &MultiPoly<K>) -> MultiPoly<K> {
    assert_eq!(a.arity(), b.arity());
    let vars: Vec<usize> = (0..a.arity()).collect();
    gcd_vars(a, b, &vars).monic()
}

/// gcd of a list; zero for an empty list.
pub fn gcd_all<K: Field>(polys: &[MultiPoly<K>]) -> Option<MultiPoly<K>> {
    let mut it = polys.iter();
    let first = it.next()?.clone();
    Some(it.fold(first.monic(), |g, p| gcd(&g, p)))
}

/// True iff `F` has no repeated factor, i.e. `gcd(F, ∂F/∂x_i …)` is constant.
pub fn squarefree_test<K: Field>(f: &MultiPoly<K>) -> bool {
    if f.is_zero() {
        return false;
    }
    let mut polys = vec![f.clone()];
    for v in 0..f.arity() {
        polys.push(f.derivative(v));
    }
    gcd_all(&polys).map(|g| g.is_constant()).unwrap_or(false)
}

fn gcd_vars<K: Field>(a: &MultiPoly<K>, b: &MultiPoly<K>, vars: &[usize]) -> MultiPoly<K> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let (v, rest) = match vars.split_last() {
        None => return MultiPoly::one(a.arity()),
        Some((v, rest)) => (*v, rest),
    };
    if !a.involves(v) && !b.involves(v) {
        return gcd_vars(a, b, rest);
    }
    let ca = content(a, v, rest);
    let cb = content(b, v, rest);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let c = gcd_vars(&ca, &cb, rest);
    let g = primitive_prs(pa, pb, v, rest);
    (&c * &g).monic()
}

fn content<K: Field>(a: &MultiPoly<K>, v: usize, rest: &[usize]) -> MultiPoly<K> {
    let mut g = MultiPoly::zero(a.arity());
    for c in a.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd_vars(&g, &c, rest);
        if g.is_constant() {
            return MultiPoly::one(a.arity());
        }
    }
    g
}

fn lead_in<K: Field>(a: &MultiPoly<K>, v: usize) -> (u32, MultiPoly<K>) {
    let d = a.degree_in(v).unwrap_or(0);
    let mut e = [0; MAX_ARITY];
    e[v] = d;
    let c = a
        .filter(|m| m.0[v] == d)
        .exact_div(&MultiPoly::monomial_raw(a.arity(), Monomial(e)))
        .expect("monomial divides");
    (d, c)
}

/// A pseudo-remainder of `a` by `b` with respect to `v`.
fn prem<K: Field>(a: &MultiPoly<K>, b: &MultiPoly<K>, v: usize) -> MultiPoly<K> {
    let (db, lb) = lead_in(b, v);
    let mut r = a.clone();
    while !r.is_zero() {
        let (dr, lr) = lead_in(&r, v);
        if dr < db {
            break;
        }
        let mut e = [0; MAX_ARITY];
        e[v] = dr - db;
        let shift = (&lr * b).mul_monomial(&Monomial(e));
        r = &(&lb * &r) - &shift;
    }
    r
}

fn primitive_prs<K: Field>(
    a: MultiPoly<K>,
    b: MultiPoly<K>,
    v: usize,
    rest: &[usize],
) -> MultiPoly<K> {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        if b.is_zero() {
            return a.monic();
        }
        if !b.involves(v) {
            return MultiPoly::one(a.arity());
        }
        let r = prem(&a, &b, v);
        if r.is_zero() {
            return b.monic();
        }
        let c = content(&r, v, rest);
        let r = r.exact_div(&c).expect("content divides").monic();
        a = b;
        b = r;
    }
}

impl<K: Field> MultiPoly<K> {
    pub(crate) fn monomial_raw(arity: usize, m: Monomial) -> Self {
        let mut p = MultiPoly::zero(arity);
        p.add_term(m, K::one());
        p
    }
}

/// Dense univariate helpers used by root extraction. Coefficient `i`
/// multiplies `t^i`; no trailing zeros.
pub(crate) mod uni {
    use super::*;

    pub fn trim<K: Field>(mut p: Vec<K>) -> Vec<K> {
        while p.last().map(|c| c.is_zero()).unwrap_or(false) {
            p.pop();
        }
        p
    }

    pub fn monic<K: Field>(p: &[K]) -> Vec<K> {
        match p.last() {
            None => vec![],
            Some(l) => {
                let inv = l.inv().unwrap();
                p.iter().map(|c| c.clone() * &inv).collect()
            }
        }
    }

    pub fn derivative<K: Field>(p: &[K]) -> Vec<K> {
        trim(
            p.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * &K::from_int(i as i64))
                .collect(),
        )
    }

    /// Quotient and remainder.
    pub fn divrem<K: Field>(a: &[K], b: &[K]) -> (Vec<K>, Vec<K>) {
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (vec![], r);
        }
        let lb_inv = b.last().unwrap().inv().unwrap();
        let mut q = vec![K::zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap().clone() * &lb_inv;
            for (i, bc) in b.iter().enumerate() {
                r[shift + i] = r[shift + i].clone() - &(c.clone() * bc);
            }
            q[shift] = c;
            r.pop();
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn gcd<K: Field>(a: &[K], b: &[K]) -> Vec<K> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let (_, r) = divrem(&a, &b);
            a = b;
            b = r;
        }
        monic(&a)
    }

    pub fn mul<K: Field>(a: &[K], b: &[K]) -> Vec<K> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![K::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].clone() + &(x.clone() * y);
            }
        }
        trim(out)
    }

    pub fn eval<K: Field>(p: &[K], t: &K) -> K {
        p.iter().rev().fold(K::zero(), |acc, c| acc * t + c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = MultiPoly<BigRational>;

    fn v(a: usize, i: usize) -> P {
        P::var(a, i)
    }
    fn c(a: usize, n: i64) -> P {
        P::constant(a, BigRational::from_integer(n.into()))
    }

    #[test]
    fn bivariate_common_factor() {
        let (x, y) = (v(2, 0), v(2, 1));
        let h = &(&y.pow(2) - &x.pow(3)) + &c(2, 1);
        let f = &h * &(&x + &y);
        let g = &h * &(&x - &(&y * &y));
        assert!(gcd(&f, &g).eq_up_to_scalar(&h));
    }

    #[test]
    fn coprime_gives_one() {
        let (x, y) = (v(2, 0), v(2, 1));
        let g = gcd(&(&y - &x.pow(2)), &(&y + &x));
        assert!(g.is_constant());
    }

    #[test]
    fn four_variable_gcd() {
        let (x0, x1, y0, y1) = (v(4, 0), v(4, 1), v(4, 2), v(4, 3));
        let h = &(&x0 * &y1.pow(2)) - &(&x1 * &y0.pow(2));
        let f = &h * &(&x0 + &y0);
        let g = &h * &h;
        assert!(gcd(&f, &g).eq_up_to_scalar(&h));
    }

    #[test]
    fn squarefree_detection() {
        let (x, y) = (v(2, 0), v(2, 1));
        let l = &y - &x.pow(2);
        assert!(squarefree_test(&l));
        assert!(!squarefree_test(&(&l * &l)));
        assert!(squarefree_test(&(&y.pow(2) - &x.pow(5))));
    }
}
