//! Linear factors of binary forms over the coefficient field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Field;
use super::gcd::uni;
use super::poly::MultiPoly;
use crate::error::{Error, Result};

/// A point `[u:v]` of P¹, scaled so the last nonzero entry is one.
pub type ProjRoot<K> = [K; 2];

#[derive(Clone, Debug, PartialEq)]
pub struct BinaryRoots<K> {
    /// Roots with multiplicity.
    pub roots: Vec<(ProjRoot<K>, u32)>,
    /// Whatever did not split, including the overall scalar. The product of
    /// `(v·X − u·Y)^mult` over all roots times `residual` is the input.
    pub residual: MultiPoly<K>,
}

pub fn normalize_root<K: Field>(r: ProjRoot<K>) -> ProjRoot<K> {
    let [u, v] = r;
    if !v.is_zero() {
        let inv = v.inv().unwrap();
        [u * &inv, K::one()]
    } else {
        [K::one(), K::zero()]
    }
}

/// The linear form `v·X − u·Y` vanishing at `[u:v]`.
pub fn linear_factor<K: Field>(r: &ProjRoot<K>) -> MultiPoly<K> {
    let x = MultiPoly::var(2, 0);
    let y = MultiPoly::var(2, 1);
    &x.scale(&r[1]) - &y.scale(&r[0])
}

/// Splits a binary form `B(X, Y)` into linear factors over its coefficient
/// field. Irreducible quadratics stay in the residual, as do higher-degree
/// squarefree parts without rational roots.
pub fn binary_form_roots<K: Field>(b: &MultiPoly<K>) -> Result<BinaryRoots<K>> {
    if b.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: b.arity(),
        });
    }
    if b.is_zero() {
        return Err(Error::Precondition("zero binary form".into()));
    }
    if !b.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let total = b.degree().unwrap();
    let mut roots = Vec::new();
    let (rest, k) = b.strip_var(1);
    if k > 0 {
        roots.push(([K::one(), K::zero()], k));
    }
    let d = total - k;
    let f: Vec<K> = (0..=d).map(|i| rest.coeff_of(&[i, d - i])).collect();
    let lead = f[d as usize].clone();
    let hint = field_hint(b);
    let f = uni::monic(&f);

    let mut leftover: Vec<K> = vec![K::one()];
    for (part, mult) in squarefree_decomposition(&f) {
        let (found, rem) = split_squarefree(&part, &hint);
        for r in found {
            roots.push(([r, K::one()], mult));
        }
        for _ in 0..mult {
            leftover = uni::mul(&leftover, &rem);
        }
    }
    let rd = (leftover.len() - 1) as u32;
    // the root [1:0] contributes (−Y)^k, not Y^k
    let lead = if k % 2 == 1 { K::zero() - &lead } else { lead };
    let mut residual = MultiPoly::zero(2);
    for (i, c) in leftover.iter().enumerate() {
        residual.add_term_exps(&[i as u32, rd - i as u32], c.clone() * &lead);
    }
    Ok(BinaryRoots { roots, residual })
}

impl<K: Field> MultiPoly<K> {
    pub(crate) fn add_term_exps(&mut self, exps: &[u32], c: K) {
        let mut e = [0; super::poly::MAX_ARITY];
        e[..exps.len()].copy_from_slice(exps);
        self.add_term(super::poly::Monomial(e), c);
    }
}

/// A zero carrying the field tag of the coefficients, if any.
pub(crate) fn field_hint<K: Field>(p: &MultiPoly<K>) -> K {
    p.terms()
        .fold(K::zero(), |acc, (_, c)| acc + &(c.clone() * &K::zero()))
}

/// Yun's algorithm on a monic polynomial: `f = Π a_i^i`.
fn squarefree_decomposition<K: Field>(f: &[K]) -> Vec<(Vec<K>, u32)> {
    let mut out = Vec::new();
    if f.len() <= 1 {
        return out;
    }
    let df = uni::derivative(f);
    let a0 = uni::gcd(f, &df);
    let mut b = uni::divrem(f, &a0).0;
    let mut c = uni::divrem(&df, &a0).0;
    let mut d = sub(&c, &uni::derivative(&b));
    let mut i = 1;
    while b.len() > 1 {
        let a = uni::gcd(&b, &d);
        if a.len() > 1 {
            out.push((a.clone(), i));
        }
        b = uni::divrem(&b, &a).0;
        c = uni::divrem(&d, &a).0;
        d = sub(&c, &uni::derivative(&b));
        i += 1;
    }
    out
}

fn sub<K: Field>(a: &[K], b: &[K]) -> Vec<K> {
    let n = a.len().max(b.len());
    uni::trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(K::zero);
                let y = b.get(i).cloned().unwrap_or_else(K::zero);
                x - &y
            })
            .collect(),
    )
}

/// Roots of a monic squarefree polynomial that are easy to find exactly;
/// returns them with the unsplit monic cofactor.
fn split_squarefree<K: Field>(p: &[K], hint: &K) -> (Vec<K>, Vec<K>) {
    let mut roots = Vec::new();
    let mut p = uni::monic(p);
    if p.len() > 3 {
        for r in rational_roots(&p) {
            roots.push(r.clone());
            p = uni::divrem(&p, &[-r, K::one()]).0;
        }
    }
    match p.len() {
        2 => {
            roots.push(-p[0].clone());
            p = vec![K::one()];
        }
        3 => {
            // t² + b t + c
            let two = K::from_int(2);
            let disc = p[1].clone() * &p[1] - &(K::from_int(4) * &p[0]);
            if let Some(s) = disc.sqrt_hint(hint) {
                let half = two.inv().unwrap();
                roots.push((-p[1].clone() + &s) * &half);
                roots.push((-p[1].clone() - &s) * &half);
                p = vec![K::one()];
            }
        }
        _ => {}
    }
    (roots, p)
}

const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

fn rational_roots<K: Field>(p: &[K]) -> Vec<K> {
    let q: Option<Vec<BigRational>> = p.iter().map(|c| c.to_rational()).collect();
    let q = match q {
        Some(q) => q,
        None => return vec![],
    };
    let lcm = q.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = q
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut out = Vec::new();
    let mut low = 0;
    while ints[low].is_zero() {
        out.push(K::zero());
        low += 1;
    }
    let a0 = ints[low].abs().to_u64();
    let an = ints.last().unwrap().abs().to_u64();
    let (a0, an) = match (a0, an) {
        (Some(a), Some(b)) if a < DIVISOR_LIMIT && b < DIVISOR_LIMIT => (a, b),
        _ => return out,
    };
    let mut seen: Vec<BigRational> = Vec::new();
    for num in divisors(a0) {
        for den in divisors(an) {
            for sign in [1i64, -1] {
                let r = BigRational::new(BigInt::from(num) * sign, BigInt::from(den));
                if seen.contains(&r) {
                    continue;
                }
                seen.push(r.clone());
                if uni::eval(&q, &r).is_zero() {
                    out.push(K::from_rational(r));
                }
            }
        }
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::quad::QuadFieldElement;

    type Q = QuadFieldElement;
    type P = MultiPoly<Q>;

    fn x() -> P {
        P::var(2, 0)
    }
    fn y() -> P {
        P::var(2, 1)
    }
    fn k(n: i64) -> P {
        P::constant(2, Q::int(n))
    }

    fn reassemble(r: &BinaryRoots<Q>) -> P {
        let mut acc = r.residual.clone();
        for (root, m) in &r.roots {
            acc = &acc * &linear_factor(root).pow(*m);
        }
        acc
    }

    #[test]
    fn three_rational_lines() {
        let b = &(&(&x().scale(&Q::int(3)) + &y()) * &(&x() + &(&y() * &k(3)))) * &(&x() - &y());
        let r = binary_form_roots(&b).unwrap();
        assert_eq!(r.roots.len(), 3);
        assert!(r
            .roots
            .contains(&([Q::from_parts((-1, 3), (0, 1), 0), Q::int(1)], 1)));
        assert!(r.residual.is_constant());
        assert_eq!(reassemble(&r), b);
    }

    #[test]
    fn root_at_infinity_with_multiplicity() {
        let b = &y().pow(2) * &(&x() - &(&y() * &k(5)));
        let r = binary_form_roots(&b).unwrap();
        assert!(r.roots.contains(&([Q::int(1), Q::int(0)], 2)));
        assert!(r.roots.contains(&([Q::int(5), Q::int(1)], 1)));
    }

    #[test]
    fn quadratic_splits_only_over_the_right_field() {
        // X² + 3Y² splits in Q(√-3) but not over Q(i)
        let b = &x().pow(2) + &(&y().pow(2) * &k(3));
        let r = binary_form_roots(&b).unwrap();
        assert!(r.roots.is_empty());
        assert_eq!(r.residual, b);
        let w = P::constant(2, Q::from_parts((0, 1), (1, 1), -3));
        let split = &(&x() - &(&w * &y())) * &(&x() + &(&w * &y()));
        assert_eq!(split, b);
        // the same polynomial with a √-3 coefficient somewhere pins the field
        let b3 = &b * &(&x() - &(&w * &y()));
        let r3 = binary_form_roots(&b3).unwrap();
        assert_eq!(r3.roots.len(), 2);
        assert!(r3.roots.iter().any(|(_, m)| *m == 2));
        assert!(r3.residual.is_constant());
        assert_eq!(reassemble(&r3), b3);
    }

    #[test]
    fn repeated_quadratic_factor() {
        let q = &x().pow(2) - &(&y().pow(2) * &k(2));
        let b = &q.pow(2) * &x();
        let r = binary_form_roots(&b).unwrap();
        assert_eq!(r.roots, vec![([Q::int(0), Q::int(1)], 1)]);
        assert_eq!(reassemble(&r), b);
    }
}
