//! Random quasihomogeneous germs and coordinate changes, shared by the
//! property suite and the acceptance report.
#![allow(dead_code)]

use num_integer::Integer;
use rand::rngs::StdRng;
use rand::Rng;
use sarkisov::poly::{monomials_of_degree, rat, vars, Poly, Substitution};
use sarkisov::singularity::{Germ, GermKind};

pub const NAMES: [&str; 4] = ["x", "y", "z", "t"];

pub struct QhGerm {
    pub germ: Germ,
    /// `a_i` with `x_i^{a_i}` in the germ; the weights are `1/a_i`.
    pub exponents: Vec<u32>,
}

impl QhGerm {
    /// Milnor-Orlik: `mu = prod (1/w_i - 1)`.
    pub fn expected_mu(&self) -> u64 {
        self.exponents.iter().map(|&a| u64::from(a - 1)).product()
    }
}

fn nonzero(rng: &mut StdRng, k: i64) -> i64 {
    let c = rng.gen_range(1..=k);
    if rng.gen_bool(0.5) {
        c
    } else {
        -c
    }
}

/// Exponents at most 8 with `prod (a_i - 1) <= 40`.
fn exponents(rng: &mut StdRng, n: usize) -> Vec<u32> {
    loop {
        let a: Vec<u32> = (0..n).map(|_| rng.gen_range(2..=8)).collect();
        let mu: u32 = a.iter().map(|&k| k - 1).product();
        if mu <= 40 && a.iter().any(|&k| k > 2) {
            return a;
        }
    }
}

/// A Brieskorn-Pham sum with random coefficients plus a few random
/// monomials of the same weighted degree.
pub fn random_qh_germ(rng: &mut StdRng) -> QhGerm {
    let n = rng.gen_range(2..=4);
    let a = exponents(rng, n);
    let l = a.iter().fold(1u32, |acc, &k| acc.lcm(&k));
    let v = vars(&NAMES[..n]);
    let mut terms = Vec::new();
    for (i, &k) in a.iter().enumerate() {
        let mut e = vec![0; n];
        e[i] = k;
        terms.push((e, rat(nonzero(rng, 5))));
    }
    let top = *a.iter().max().unwrap();
    let mixed: Vec<Vec<u32>> = (2..=top)
        .flat_map(|d| monomials_of_degree(n, d))
        .filter(|e| e.iter().zip(&a).map(|(&k, &ai)| k * (l / ai)).sum::<u32>() == l)
        .filter(|e| e.iter().filter(|&&k| k > 0).count() > 1)
        .collect();
    for e in mixed {
        if rng.gen_bool(0.5) {
            terms.push((e, rat(nonzero(rng, 3))));
        }
    }
    let germ = Germ::new(Poly::from_terms(v, terms)).expect("no constant term");
    QhGerm { germ, exponents: a }
}

/// `f + sum of squares` in four variables.
pub fn stabilize(g: &Germ) -> Germ {
    let n = g.nvars();
    let v = vars(&NAMES);
    let mut terms: Vec<(Vec<u32>, _)> = g
        .poly()
        .terms()
        .map(|(e, c)| {
            let mut e4 = e.clone();
            e4.resize(4, 0);
            (e4, c.clone())
        })
        .collect();
    for i in n..4 {
        let mut e = vec![0; 4];
        e[i] = 2;
        terms.push((e, rat(1)));
    }
    Germ::new(Poly::from_terms(v, terms)).unwrap()
}

fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, &x)| x).collect()).collect();
            let s = if c % 2 == 0 { 1 } else { -1 };
            s * m[0][c] * det(&minor)
        })
        .sum()
}

/// `g(M x)` for a random invertible integer matrix `M`.
pub fn random_linear_change(rng: &mut StdRng, g: &Germ) -> Germ {
    let n = g.nvars();
    let v = g.poly().vars().clone();
    let m = loop {
        let m: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-1..=1)).collect()).collect();
        if det(&m) != 0 {
            break m;
        }
    };
    let image = m
        .iter()
        .map(|row| {
            Poly::from_terms(
                v.clone(),
                row.iter().enumerate().map(|(j, &c)| {
                    let mut e = vec![0; n];
                    e[j] = 1;
                    (e, rat(c))
                }),
            )
        })
        .collect();
    let s = Substitution::new(image, None).unwrap();
    let d = g.poly().total_degree().unwrap_or(0);
    Germ::new(s.apply(g.poly(), d)).unwrap()
}

/// Verdicts compared up to the wording of an undetermined reason.
pub fn kind_key(k: &GermKind) -> String {
    match k {
        GermKind::Undetermined { .. } => "undetermined".into(),
        k => k.to_string(),
    }
}
