//! Sparse multivariate polynomials in two to four variables.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;
use crate::error::{Error, Result};

pub const MAX_ARITY: usize = 4;

/// An exponent vector. Slots beyond the polynomial's arity are zero.
///
/// Ordered by total degree, then lexicographically with the first variable
/// largest; iteration over a polynomial visits terms in printing order
/// (ascending degree, `x` before `y` within a degree).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; MAX_ARITY]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(e)
    }

    pub fn over(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a -= b;
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Variable names by arity.
pub fn variable_names(arity: usize) -> &'static [&'static str] {
    match arity {
        1 => &["t"],
        2 => &["x", "y"],
        3 => &["x", "y", "z"],
        _ => &["x0", "x1", "y0", "y1"],
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly<K> {
    arity: usize,
    terms: BTreeMap<Monomial, K>,
}

impl<K: Field> MultiPoly<K> {
    pub fn zero(arity: usize) -> Self {
        assert!((1..=MAX_ARITY).contains(&arity), "arity {}", arity);
        MultiPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: K) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(Monomial::default(), c);
        p
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, K::one())
    }

    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = [0; MAX_ARITY];
        e[i] = 1;
        Self::monomial(arity, &e[..arity], K::one())
    }

    pub fn monomial(arity: usize, exps: &[u32], c: K) -> Self {
        assert_eq!(exps.len(), arity);
        let mut e = [0; MAX_ARITY];
        e[..arity].copy_from_slice(exps);
        let mut p = Self::zero(arity);
        p.add_term(Monomial(e), c);
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, summing duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, K)>>(arity: usize, terms: I) -> Self {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            assert_eq!(e.len(), arity);
            let mut m = [0; MAX_ARITY];
            m[..arity].copy_from_slice(&e);
            p.add_term(Monomial(m), c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn add_term(&mut self, m: Monomial, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.clone() + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    pub fn coeff_of(&self, exps: &[u32]) -> K {
        let mut e = [0; MAX_ARITY];
        e[..exps.len()].copy_from_slice(exps);
        self.coeff(&Monomial(e))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> K {
        self.coeff(&Monomial::default())
    }

    /// Largest term in the monomial order.
    pub fn leading(&self) -> Option<(&Monomial, &K)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Lowest total degree of a term (the order at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn min_degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).min()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        self.filter(|m| m.degree() == d)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn filter<F: Fn(&Monomial) -> bool>(&self, f: F) -> Self {
        MultiPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| f(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<F: Fn(&K) -> K>(&self, f: F) -> Self {
        let mut p = Self::zero(self.arity);
        for (m, c) in &self.terms {
            p.add_term(*m, f(c));
        }
        p
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        self.map_coeffs(|x| x.clone() * c)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        MultiPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.times(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.arity);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Whether `self = c·other` for some nonzero scalar `c`.
    pub fn eq_up_to_scalar(&self, other: &Self) -> bool {
        self.scalar_ratio(other).is_some()
    }

    /// The scalar `c` with `self = c·other`, if any.
    pub fn scalar_ratio(&self, other: &Self) -> Option<K> {
        if self.arity != other.arity || self.terms.len() != other.terms.len() {
            return None;
        }
        let (m, c) = self.leading()?;
        let d = other.terms.get(m)?;
        let r = c.clone() * &d.inv()?;
        if *self == other.scale(&r) {
            Some(r)
        } else {
            None
        }
    }

    pub fn eval(&self, point: &[K]) -> K {
        assert_eq!(point.len(), self.arity);
        let mut powers: Vec<Vec<K>> = vec![vec![K::one()]; self.arity];
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0[..self.arity].iter().enumerate() {
                let pv = &mut powers[v];
                while pv.len() <= e as usize {
                    let next = pv.last().unwrap().clone() * &point[v];
                    pv.push(next);
                }
                t = t * &pv[e as usize];
            }
            acc = acc + &t;
        }
        acc
    }

    /// Ring homomorphism sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[MultiPoly<K>]) -> Result<MultiPoly<K>> {
        if images.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: images.len(),
            });
        }
        let out_arity = images.first().map(|p| p.arity).unwrap_or(self.arity);
        if let Some(bad) = images.iter().find(|p| p.arity != out_arity) {
            return Err(Error::ArityMismatch {
                expected: out_arity,
                found: bad.arity,
            });
        }
        let mut powers: Vec<Vec<MultiPoly<K>>> = images
            .iter()
            .map(|_| vec![MultiPoly::one(out_arity)])
            .collect();
        let mut acc = MultiPoly::zero(out_arity);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(out_arity, c.clone());
            for (v, &e) in m.0[..self.arity].iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pv = &mut powers[v];
                while pv.len() <= e as usize {
                    let next = pv.last().unwrap() * &images[v];
                    pv.push(next);
                }
                t = &t * &pv[e as usize];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitutes `x_i ↦ x_i + shift_i`, moving `shift` to the origin.
    pub fn translate(&self, shift: &[K]) -> MultiPoly<K> {
        let images: Vec<_> = (0..self.arity)
            .map(|i| {
                MultiPoly::var(self.arity, i) + MultiPoly::constant(self.arity, shift[i].clone())
            })
            .collect();
        self.substitute(&images).expect("arity matches")
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut p = Self::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut n = *m;
            n.0[var] -= 1;
            p.add_term(n, c.clone() * &K::from_int(e as i64));
        }
        p
    }

    /// Coefficients with respect to `var`: entry `j` multiplies `var^j`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly<K>> {
        let deg = match self.degree_in(var) {
            None => return vec![],
            Some(d) => d as usize,
        };
        let mut out = vec![MultiPoly::zero(self.arity); deg + 1];
        for (m, c) in &self.terms {
            let mut n = *m;
            let j = n.0[var] as usize;
            n.0[var] = 0;
            out[j].add_term(n, c.clone());
        }
        out
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients(arity: usize, var: usize, coeffs: &[MultiPoly<K>]) -> Self {
        let mut out = Self::zero(arity);
        for (j, c) in coeffs.iter().enumerate() {
            let mut e = [0; MAX_ARITY];
            e[var] = j as u32;
            for (m, k) in &c.terms {
                out.add_term(m.times(&Monomial(e)), k.clone());
            }
        }
        out
    }

    /// Divides out the largest power of `var` and returns it.
    pub fn strip_var(&self, var: usize) -> (Self, u32) {
        let e = match self.min_degree_in(var) {
            None | Some(0) => return (self.clone(), 0),
            Some(e) => e,
        };
        let mut d = [0; MAX_ARITY];
        d[var] = e;
        let dm = Monomial(d);
        let p = MultiPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.over(&dm), c.clone()))
                .collect(),
        };
        (p, e)
    }

    /// Exact quotient `self / other`, or `None` if `other` does not divide.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        let (lm, lc) = other.leading()?;
        let (lm, lc_inv) = (*lm, lc.inv()?);
        let mut rem = self.clone();
        let mut quot = Self::zero(self.arity);
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let qm = m.over(&lm);
            let qc = c.clone() * &lc_inv;
            let mut sub = other.mul_monomial(&qm).scale(&qc);
            sub = -sub;
            rem = &rem + &sub;
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Re-embeds into a different arity by sending variable `i` to variable
    /// `map[i]` of the target ring.
    pub fn rename(&self, arity: usize, map: &[usize]) -> Self {
        let mut p = Self::zero(arity);
        for (m, c) in &self.terms {
            let mut e = [0; MAX_ARITY];
            for (i, &t) in map.iter().enumerate() {
                e[t] += m.0[i];
            }
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        assert_eq!(
            self.arity, other.arity,
            "arity mismatch in polynomial arithmetic"
        );
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(*m, if negate { -c.clone() } else { c.clone() });
        }
        p
    }

    fn product(&self, other: &Self) -> Self {
        assert_eq!(
            self.arity, other.arity,
            "arity mismatch in polynomial arithmetic"
        );
        let mut p = Self::zero(self.arity);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                p.add_term(m1.times(m2), c1.clone() * c2);
            }
        }
        p
    }

    pub fn to_string_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_display();
            let c_abs = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, &e) in m.0[..self.arity].iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[v].to_string()),
                    _ => factors.push(format!("{}^{}", names[v], e)),
                }
            }
            let coeff_is_one = c_abs.is_one();
            if factors.is_empty() {
                out.push_str(&c_abs.to_string());
            } else if coeff_is_one {
                out.push_str(&factors.join("*"));
            } else if c_abs.is_compound() {
                out.push_str(&format!("({})*{}", c_abs, factors.join("*")));
            } else {
                out.push_str(&format!("{}*{}", c_abs, factors.join("*")));
            }
        }
        out
    }
}

impl<K: Field> fmt::Display for MultiPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(variable_names(self.arity)))
    }
}

impl<'b, K: Field> Add<&'b MultiPoly<K>> for &MultiPoly<K> {
    type Output = MultiPoly<K>;
    fn add(self, rhs: &'b MultiPoly<K>) -> MultiPoly<K> {
        self.combine(rhs, false)
    }
}

impl<'b, K: Field> Sub<&'b MultiPoly<K>> for &MultiPoly<K> {
    type Output = MultiPoly<K>;
    fn sub(self, rhs: &'b MultiPoly<K>) -> MultiPoly<K> {
        self.combine(rhs, true)
    }
}

impl<'b, K: Field> Mul<&'b MultiPoly<K>> for &MultiPoly<K> {
    type Output = MultiPoly<K>;
    fn mul(self, rhs: &'b MultiPoly<K>) -> MultiPoly<K> {
        self.product(rhs)
    }
}

impl<K: Field> Add for MultiPoly<K> {
    type Output = MultiPoly<K>;
    fn add(self, rhs: MultiPoly<K>) -> MultiPoly<K> {
        self.combine(&rhs, false)
    }
}

impl<K: Field> Sub for MultiPoly<K> {
    type Output = MultiPoly<K>;
    fn sub(self, rhs: MultiPoly<K>) -> MultiPoly<K> {
        self.combine(&rhs, true)
    }
}

impl<K: Field> Mul for MultiPoly<K> {
    type Output = MultiPoly<K>;
    fn mul(self, rhs: MultiPoly<K>) -> MultiPoly<K> {
        self.product(&rhs)
    }
}

impl<K: Field> Neg for MultiPoly<K> {
    type Output = MultiPoly<K>;
    fn neg(self) -> MultiPoly<K> {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<K: Field> Neg for &MultiPoly<K> {
    type Output = MultiPoly<K>;
    fn neg(self) -> MultiPoly<K> {
        self.map_coeffs(|c| -c.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = MultiPoly<BigRational>;

    fn x() -> P {
        P::var(2, 0)
    }
    fn y() -> P {
        P::var(2, 1)
    }

    #[test]
    fn prints_ascending_degree() {
        let f = &y().pow(2) - &x().pow(5);
        assert_eq!(f.to_string(), "y^2 - x^5");
        let g = &(&x() * &y()) + &P::constant(2, BigRational::from_integer(3.into()));
        assert_eq!(g.to_string(), "3 + x*y");
    }

    #[test]
    fn exact_division() {
        let a = &x() + &y();
        let b = &x() - &y();
        let p = &a * &b;
        assert_eq!(p.exact_div(&a), Some(b.clone()));
        assert_eq!(p.exact_div(&x()), None);
    }

    #[test]
    fn substitution_and_strip() {
        // x^2 y^3 + x y^4 under x ↦ x·y, then strip y
        let f = &(&x().pow(2) * &y().pow(3)) + &(&x() * &y().pow(4));
        let g = f.substitute(&[&x() * &y(), y()]).unwrap();
        let (h, e) = g.strip_var(1);
        assert_eq!(e, 5);
        assert_eq!(h, &x().pow(2) + &x());
    }

    #[test]
    fn coefficient_round_trip() {
        let f = &(&x().pow(3) * &y()) - &(&y().pow(2) + &x());
        let cs = f.coefficients_in(1);
        assert_eq!(cs.len(), 3);
        assert_eq!(P::from_coefficients(2, 1, &cs), f);
    }

    #[test]
    fn scalar_ratio_detects_multiples() {
        let f = &x() + &y();
        let two = BigRational::from_integer(2.into());
        assert_eq!(f.scale(&two).scalar_ratio(&f), Some(two));
        assert!(!f.eq_up_to_scalar(&(&x() - &y())));
    }
}
