//! Buchberger's algorithm with the product and chain criteria, plus
//! staircase counting on the resulting leading-term ideal.

use super::{divides, exp_lcm, exp_sub, monomials_of_degree, Exponent, Poly, Rat};
use num_traits::One;
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    GradedLex,
    Lex,
}

/// A monomial order: `perm[k]` is the variable compared at position `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub perm: Vec<usize>,
}

impl MonomialOrder {
    pub fn grlex(n: usize) -> Self {
        MonomialOrder { kind: OrderKind::GradedLex, perm: (0..n).collect() }
    }

    pub fn lex(n: usize) -> Self {
        MonomialOrder { kind: OrderKind::Lex, perm: (0..n).collect() }
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        if self.kind == OrderKind::GradedLex {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            match da.cmp(&db) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        for &i in &self.perm {
            match a[i].cmp(&b[i]) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroebnerCaps {
    pub max_pairs: usize,
    pub max_degree: u32,
}

impl Default for GroebnerCaps {
    fn default() -> Self {
        GroebnerCaps { max_pairs: 5000, max_degree: 60 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("Groebner cap exceeded: {0}")]
    CapExceeded(String),
    #[error("empty generator list")]
    NoGenerators,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuotientDim {
    Finite(u64),
    Infinite,
}

struct Entry {
    poly: Poly,
    lead: Exponent,
}

fn lead_of(p: &Poly, order: &MonomialOrder) -> Exponent {
    p.leading(order).map(|(e, _)| e.clone()).expect("nonzero polynomial")
}

/// Normal form of `p` modulo `basis` (full reduction).
fn reduce(p: &Poly, basis: &[Entry], order: &MonomialOrder) -> Poly {
    let vars = p.vars().clone();
    let mut rem = p.clone();
    let mut out = Poly::zero(vars);
    while let Some((e, c)) = rem.leading(order).map(|(e, c)| (e.clone(), c.clone())) {
        let hit = basis.iter().find(|b| divides(&b.lead, &e));
        match hit {
            Some(b) => {
                let lc = b.poly.coeff(&b.lead);
                let q = exp_sub(&e, &b.lead);
                let f = &c / &lc;
                rem = &rem - &b.poly.mul_monomial(&q, &f);
            }
            None => {
                let term = Poly::monomial(rem.vars().clone(), e.clone(), c.clone());
                rem = &rem - &term;
                out = &out + &term;
            }
        }
    }
    out
}

fn s_poly(a: &Entry, b: &Entry) -> Poly {
    let l = exp_lcm(&a.lead, &b.lead);
    let ca = a.poly.coeff(&a.lead);
    let cb = b.poly.coeff(&b.lead);
    let pa = a.poly.mul_monomial(&exp_sub(&l, &a.lead), &cb);
    let pb = b.poly.mul_monomial(&exp_sub(&l, &b.lead), &ca);
    &pa - &pb
}

/// Reduced Groebner basis of the ideal generated by `gens`.
pub fn groebner_basis(
    gens: &[Poly],
    order: &MonomialOrder,
    caps: GroebnerCaps,
) -> Result<Vec<Poly>, GroebnerError> {
    let first = gens.first().ok_or(GroebnerError::NoGenerators)?;
    let vars = first.vars().clone();
    let mut basis: Vec<Entry> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();

    let push = |basis: &mut Vec<Entry>, pairs: &mut Vec<(usize, usize)>, p: Poly| {
        let p = p.make_monic(order);
        let lead = lead_of(&p, order);
        let k = basis.len();
        for i in 0..k {
            pairs.push((i, k));
        }
        basis.push(Entry { poly: p, lead });
    };

    for g in gens {
        let r = reduce(g, &basis, order);
        if !r.is_zero() {
            push(&mut basis, &mut pairs, r);
        }
    }

    let mut processed = 0usize;
    while let Some(idx) = select_pair(&pairs, &basis, order) {
        let (i, j) = pairs.swap_remove(idx);
        processed += 1;
        if processed > caps.max_pairs {
            return Err(GroebnerError::CapExceeded(format!("more than {} pairs", caps.max_pairs)));
        }
        let (li, lj) = (&basis[i].lead, &basis[j].lead);
        // product criterion
        if li.iter().zip(lj.iter()).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        // chain criterion
        let l = exp_lcm(li, lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(&basis[k].lead, &l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        if l.iter().sum::<u32>() > caps.max_degree {
            return Err(GroebnerError::CapExceeded(format!(
                "S-polynomial degree above {}",
                caps.max_degree
            )));
        }
        let s = s_poly(&basis[i], &basis[j]);
        let r = reduce(&s, &basis, order);
        if !r.is_zero() {
            if r.total_degree().unwrap_or(0) > caps.max_degree {
                return Err(GroebnerError::CapExceeded(format!(
                    "basis element degree above {}",
                    caps.max_degree
                )));
            }
            push(&mut basis, &mut pairs, r);
        }
    }

    // minimalise then interreduce
    let mut keep: Vec<Entry> = Vec::new();
    for (idx, b) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(k, o)| {
            k != idx && divides(&o.lead, &b.lead) && (o.lead != b.lead || k < idx)
        });
        if !redundant {
            keep.push(Entry { poly: b.poly.clone(), lead: b.lead.clone() });
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Entry> = keep
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, e)| Entry { poly: e.poly.clone(), lead: e.lead.clone() })
            .collect();
        let lead_term = Poly::monomial(vars.clone(), keep[i].lead.clone(), Rat::one());
        let tail = &keep[i].poly - &lead_term;
        let red = &lead_term + &reduce(&tail, &others, order);
        out.push(red);
    }
    out.sort_by(|a, b| order.cmp(&lead_of(a, order), &lead_of(b, order)));
    Ok(out)
}

/// Normal selection strategy: smallest lcm first.
fn select_pair(pairs: &[(usize, usize)], basis: &[Entry], order: &MonomialOrder) -> Option<usize> {
    pairs
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| {
            let la = exp_lcm(&basis[a.0].lead, &basis[a.1].lead);
            let lb = exp_lcm(&basis[b.0].lead, &basis[b.1].lead);
            order.cmp(&la, &lb)
        })
        .map(|(i, _)| i)
}

pub fn leading_monomials(basis: &[Poly], order: &MonomialOrder) -> Vec<Exponent> {
    basis.iter().map(|p| lead_of(p, order)).collect()
}

/// Number of standard monomials of `R/(gens)`, or `Infinite` when the
/// staircase is unbounded.
pub fn quotient_dimension(
    gens: &[Poly],
    order: &MonomialOrder,
    caps: GroebnerCaps,
) -> Result<QuotientDim, GroebnerError> {
    let gb = groebner_basis(gens, order, caps)?;
    let Some(first) = gb.first() else {
        // zero ideal
        return Ok(QuotientDim::Infinite);
    };
    let n = first.nvars();
    let leads = leading_monomials(&gb, order);
    if leads.iter().any(|e| e.iter().all(|&k| k == 0)) {
        return Ok(QuotientDim::Finite(0));
    }
    let mut bounds = vec![0u32; n];
    for (i, b) in bounds.iter_mut().enumerate() {
        let pure = leads
            .iter()
            .filter(|e| e.iter().enumerate().all(|(j, &k)| j == i || k == 0))
            .map(|e| e[i])
            .min();
        match pure {
            Some(k) => *b = k,
            None => return Ok(QuotientDim::Infinite),
        }
    }
    let mut count = 0u64;
    let mut cur = vec![0u32; n];
    loop {
        if !leads.iter().any(|l| divides(l, &cur)) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(QuotientDim::Finite(count));
            }
            cur[i] += 1;
            if cur[i] < bounds[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Monomials of degree `d` outside the monomial ideal generated by `leads`.
pub fn hilbert_function(leads: &[Exponent], nvars: usize, d: u32) -> u64 {
    if leads.iter().any(|e| e.iter().all(|&k| k == 0)) {
        return 0;
    }
    monomials_of_degree(nvars, d).into_iter().filter(|m| !leads.iter().any(|l| divides(l, m))).count()
        as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, vars};

    fn qd(src: &[&str], names: &[&str]) -> QuotientDim {
        let v = vars(names);
        let gens: Vec<Poly> = src.iter().map(|s| parse_poly(s, &v).unwrap()).collect();
        quotient_dimension(&gens, &MonomialOrder::grlex(v.len()), GroebnerCaps::default()).unwrap()
    }

    #[test]
    fn staircases() {
        assert_eq!(qd(&["x^2", "y^2"], &["x", "y"]), QuotientDim::Finite(4));
        assert_eq!(qd(&["2*x", "2*y", "2*z", "2*t"], &["x", "y", "z", "t"]), QuotientDim::Finite(1));
        assert_eq!(qd(&["y", "x", "3*z^2", "3*t^2"], &["x", "y", "z", "t"]), QuotientDim::Finite(4));
        assert_eq!(qd(&["x*y"], &["x", "y"]), QuotientDim::Infinite);
        assert_eq!(qd(&["x - 1", "x"], &["x"]), QuotientDim::Finite(0));
    }

    #[test]
    fn quasihomogeneous_jacobian() {
        // z^3 + z*t^5
        assert_eq!(qd(&["3*z^2 + t^5", "5*z*t^4"], &["z", "t"]), QuotientDim::Finite(13));
    }

    #[test]
    fn cap_fails_loudly() {
        let v = vars(&["x", "y", "z"]);
        let gens: Vec<Poly> = ["x^3 - y*z^2 + x", "y^3 - x*z + 1", "z^3 - x*y^2 + y"]
            .iter()
            .map(|s| parse_poly(s, &v).unwrap())
            .collect();
        let r = quotient_dimension(
            &gens,
            &MonomialOrder::grlex(3),
            GroebnerCaps { max_pairs: 2, max_degree: 60 },
        );
        assert!(matches!(r, Err(GroebnerError::CapExceeded(_))));
    }

    #[test]
    fn generator_order_does_not_matter() {
        let v = vars(&["x", "y", "z"]);
        let mut gens: Vec<Poly> = ["x^2 + y*z", "y^2 - x*z", "z^3 + x*y"]
            .iter()
            .map(|s| parse_poly(s, &v).unwrap())
            .collect();
        let o = MonomialOrder::grlex(3);
        let a = groebner_basis(&gens, &o, GroebnerCaps::default()).unwrap();
        gens.reverse();
        let b = groebner_basis(&gens, &o, GroebnerCaps::default()).unwrap();
        assert_eq!(a, b);
    }
}
