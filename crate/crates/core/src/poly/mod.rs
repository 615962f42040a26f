//! Exact sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vector, so two
//! polynomials over the same variable list are equal iff their maps are.

mod groebner;
mod jet;
mod parse;
mod subst;
mod weights;

pub use groebner::{
    groebner_basis, hilbert_function, leading_monomials, quotient_dimension, GroebnerCaps,
    GroebnerError, MonomialOrder, OrderKind, QuotientDim,
};
pub use jet::{jet_quotient_dimension, truncated_dimension, truncated_dimensions, truncated_dimensions_in_power, JetDim};
pub use parse::{parse_poly, ParseError};
pub use subst::Substitution;
pub use weights::{weighted_order, WeightSystem};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

pub type Rat = BigRational;
pub type Exponent = Vec<u32>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Shared, ordered variable names.
pub type Vars = Arc<[String]>;

pub fn vars(names: &[&str]) -> Vars {
    names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    vars: Vars,
    terms: BTreeMap<Exponent, Rat>,
}

impl Poly {
    pub fn zero(vars: Vars) -> Self {
        Poly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vars, c: Rat) -> Self {
        let mut p = Poly::zero(vars);
        let e = vec![0; p.nvars()];
        p.add_term(e, c);
        p
    }

    pub fn one(vars: Vars) -> Self {
        Poly::constant(vars, Rat::one())
    }

    /// The `i`-th variable as a polynomial.
    pub fn var(vars: Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Poly::monomial(vars, e, Rat::one())
    }

    pub fn var_named(vars: Vars, name: &str) -> Option<Self> {
        let i = vars.iter().position(|v| v == name)?;
        Some(Poly::var(vars, i))
    }

    pub fn monomial(vars: Vars, exp: Exponent, c: Rat) -> Self {
        assert_eq!(exp.len(), vars.len(), "exponent length mismatch");
        let mut p = Poly::zero(vars);
        p.add_term(exp, c);
        p
    }

    pub fn from_terms(vars: Vars, terms: impl IntoIterator<Item = (Exponent, Rat)>) -> Self {
        let mut p = Poly::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.nvars(), "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rat)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Exponent, Rat> {
        self.terms
    }

    pub fn coeff(&self, exp: &[u32]) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&vec![0; self.nvars()])
    }

    pub(crate) fn add_term(&mut self, exp: Exponent, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_same(&self, other: &Poly) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "variable lists differ: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    /// Minimum total degree of a term; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Homogeneous part of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        self.filter(|e| e.iter().sum::<u32>() == d)
    }

    /// Drops all terms of total degree greater than `d`.
    pub fn truncate(&self, d: u32) -> Poly {
        self.filter(|e| e.iter().sum::<u32>() <= d)
    }

    pub fn filter(&self, mut keep: impl FnMut(&Exponent) -> bool) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.vars.clone());
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, exp: &[u32], c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.vars.clone());
        }
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.iter().zip(exp).map(|(a, b)| a + b).collect(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(self.vars.clone());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Product truncated at total degree `d`; avoids building high-degree terms.
    pub fn mul_truncated(&self, other: &Poly, d: u32) -> Poly {
        self.check_same(other);
        let mut out = Poly::zero(self.vars.clone());
        for (e1, c1) in &self.terms {
            let d1: u32 = e1.iter().sum();
            if d1 > d {
                continue;
            }
            for (e2, c2) in &other.terms {
                let d2: u32 = e2.iter().sum();
                if d1 + d2 > d {
                    continue;
                }
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        out
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * rat(e[i] as i64));
        }
        out
    }

    pub fn jacobian(&self) -> Vec<Poly> {
        (0..self.nvars()).map(|i| self.derivative(i)).collect()
    }

    /// Substitutes a constant for variable `i` (the variable stays in the list).
    pub fn eval_var(&self, i: usize, value: &Rat) -> Poly {
        let mut out = Poly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i];
            e2[i] = 0;
            let v = if k == 0 { Rat::one() } else { num_traits::pow(value.clone(), k as usize) };
            out.add_term(e2, c * v);
        }
        out
    }

    /// Replaces variable `i` by the polynomial `q` (same variable list).
    pub fn substitute_var(&self, i: usize, q: &Poly) -> Poly {
        self.check_same(q);
        let maxk = self.degree_in(i);
        let mut powers = vec![Poly::one(self.vars.clone())];
        for k in 1..=maxk {
            let next = &powers[k as usize - 1] * q;
            powers.push(next);
        }
        let mut out = Poly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i];
            e2[i] = 0;
            let part = powers[k as usize].mul_monomial(&e2, c);
            out = &out + &part;
        }
        out
    }

    /// `substitute_var` with every term of total degree above `d` discarded.
    pub fn substitute_var_truncated(&self, i: usize, q: &Poly, d: u32) -> Poly {
        self.check_same(q);
        let maxk = self.degree_in(i);
        let mut powers = vec![Poly::one(self.vars.clone())];
        for k in 1..=maxk {
            let next = powers[k as usize - 1].mul_truncated(q, d);
            powers.push(next);
        }
        let mut out = Poly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i];
            e2[i] = 0;
            let shift: u32 = e2.iter().sum();
            if shift > d {
                continue;
            }
            let part = powers[k as usize].truncate(d - shift).mul_monomial(&e2, c);
            out = &out + &part;
        }
        out
    }

    /// Re-expresses the polynomial over another variable list. Variables
    /// that are missing from `target` must not occur.
    pub fn embed(&self, target: &Vars) -> Option<Poly> {
        let map: Vec<Option<usize>> =
            self.vars.iter().map(|v| target.iter().position(|t| t == v)).collect();
        let mut out = Poly::zero(target.clone());
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                e2[map[i]?] += k;
            }
            out.add_term(e2, c.clone());
        }
        Some(out)
    }

    /// Indices of variables that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.terms.keys().any(|e| e[i] > 0)).collect()
    }

    pub fn contains_var(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    /// Leading exponent under `order`.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Exponent, &Rat)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn make_monic(&self, order: &MonomialOrder) -> Poly {
        match self.leading(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Scales by a rational so that coefficients are coprime integers with a
    /// positive leading coefficient in graded-lex order.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        use num_integer::Integer;
        let mut lcm = BigInt::one();
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        for c in self.terms.values() {
            let n = (c * Rat::from_integer(lcm.clone())).to_integer();
            g = g.gcd(&n);
        }
        let lead = self.leading(&MonomialOrder::grlex(self.nvars())).map(|(_, c)| c.clone());
        let mut s = Rat::new(lcm, g);
        if lead.map(|c| c.is_negative()).unwrap_or(false) {
            s = -s;
        }
        self.scale(&s)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_same(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check_same(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_same(rhs);
        let mut out = Poly::zero(self.vars.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Is `a` divisible by `b` (componentwise `a >= b`)?
pub fn divides(b: &[u32], a: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

pub fn exp_lcm(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn exp_sub(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn exp_add(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// All exponent vectors in `n` variables of total degree exactly `d`.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for k in (0..=left).rev() {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v3() -> Vars {
        vars(&["x", "y", "z"])
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..6, 1i64..4), 0..5).prop_map(
            |ts| {
                Poly::from_terms(
                    v3(),
                    ts.into_iter().map(|((a, b, c), n, d)| (vec![a, b, c], ratio(n, d))),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn no_zero_coefficients(a in arb_poly(), b in arb_poly()) {
            let p = &a * &b - &a;
            prop_assert!(p.terms().all(|(_, c)| !c.is_zero()));
        }
    }

    #[test]
    fn substitute_and_derive() {
        let x = Poly::var(v3(), 0);
        let y = Poly::var(v3(), 1);
        let p = &x.pow(2) + &y;
        let q = p.substitute_var(0, &(&y + &x));
        assert_eq!(q, &(&(&x * &x) + &(&(&x * &y).scale(&rat(2)) + &(&y * &y))) + &y);
        assert_eq!(p.derivative(0), x.scale(&rat(2)));
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
        assert_eq!(monomials_of_degree(2, 5).len(), 6);
    }
}
