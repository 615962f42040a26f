//! Local algebra dimensions computed on finite jets.
//!
//! `dim R/(I + m^{k+1})` is computed by exact row echelon over the
//! monomials of degree at most `k`. Once two consecutive jets agree the
//! sequence is constant from then on, so the stabilized value is the
//! dimension of the local algebra itself.

use super::{monomials_of_degree, Exponent, Poly, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct JetDim {
    pub dim: u64,
    /// Jet order at which the value was read off.
    pub jet: u32,
    pub stabilized: bool,
}

type Key = (u32, Exponent);

fn key(e: &[u32]) -> Key {
    (e.iter().sum(), e.to_vec())
}

/// `dim R/(I + m^{k+1})`.
pub fn truncated_dimension(gens: &[Poly], nvars: usize, k: u32) -> u64 {
    truncated_dimensions(gens, nvars, k)[k as usize]
}

/// `dim R/(I + m^{d+1})` for every `d <= k`, from a single elimination.
///
/// Columns are ordered by degree first, so the echelon rows whose pivot has
/// degree at most `d` span the image of the ideal modulo `m^{d+1}`.
pub fn truncated_dimensions(gens: &[Poly], nvars: usize, k: u32) -> Vec<u64> {
    truncated_dimensions_in_power(gens, nvars, k, 0)
}

/// As [`truncated_dimensions`] for the ideal `m^s * (gens)`.
pub fn truncated_dimensions_in_power(gens: &[Poly], nvars: usize, k: u32, s: u32) -> Vec<u64> {
    let mut pivots: BTreeMap<Key, Row> = BTreeMap::new();
    for g in gens {
        let Some(ord) = g.order() else { continue };
        if ord + s > k {
            continue;
        }
        let g = integral(g);
        for d in s..=(k - ord) {
            for m in monomials_of_degree(nvars, d) {
                let mut row = Row::new();
                for (e, c) in &g {
                    let prod: Exponent = e.iter().zip(&m).map(|(a, b)| a + b).collect();
                    if prod.iter().sum::<u32>() <= k {
                        row.insert(key(&prod), c.clone());
                    }
                }
                insert_row(&mut pivots, row);
            }
        }
    }
    let mut dims = Vec::with_capacity(k as usize + 1);
    let mut total = 0u64;
    let mut rank = 0u64;
    for d in 0..=k {
        total += monomials_of_degree(nvars, d).len() as u64;
        rank += pivots.keys().filter(|key| key.0 == d).count() as u64;
        dims.push(total - rank);
    }
    dims
}

type Row = BTreeMap<Key, BigInt>;

/// The terms of `g` scaled to coprime integers.
fn integral(g: &Poly) -> Vec<(Exponent, BigInt)> {
    let den = g.terms().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
    g.terms().map(|(e, c)| (e.clone(), (c * Rat::from_integer(den.clone())).to_integer())).collect()
}

fn make_primitive(row: &mut Row) {
    let g = row.values().fold(BigInt::zero(), |g, v| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.values_mut() {
            *v /= &g;
        }
    }
}

/// Fraction-free reduction against the pivots; new pivots are kept primitive.
fn insert_row(pivots: &mut BTreeMap<Key, Row>, mut row: Row) {
    loop {
        let Some((lead, c)) = row.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return;
        };
        match pivots.get(&lead) {
            None => {
                make_primitive(&mut row);
                pivots.insert(lead, row);
                return;
            }
            Some(p) => {
                let pc = &p[&lead];
                let g = c.gcd(pc);
                let (a, b) = (pc / &g, &c / &g);
                for v in row.values_mut() {
                    *v *= &a;
                }
                for (k, v) in p {
                    let e = row.entry(k.clone()).or_insert_with(BigInt::zero);
                    *e -= &b * v;
                    if e.is_zero() {
                        row.remove(k);
                    }
                }
                make_primitive(&mut row);
            }
        }
    }
}

/// Smallest `k <= max_jet` with `dim(k) == dim(k+1)`; if none is found the
/// value at `max_jet` is returned with `stabilized == false`.
pub fn jet_quotient_dimension(gens: &[Poly], max_jet: u32) -> JetDim {
    let nvars = gens.first().map(|g| g.nvars()).unwrap_or(0);
    // larger truncations cost more, so try short ones first
    let mut dims = Vec::new();
    for top in [8, 16].into_iter().filter(|&t| t < max_jet).chain(std::iter::once(max_jet)) {
        dims = truncated_dimensions(gens, nvars, top);
        if let Some(k) = (1..dims.len()).find(|&k| dims[k] == dims[k - 1]) {
            return JetDim { dim: dims[k], jet: k as u32 - 1, stabilized: true };
        }
    }
    JetDim { dim: dims[max_jet as usize], jet: max_jet, stabilized: false }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, vars};

    fn jd(src: &[&str], names: &[&str], max: u32) -> JetDim {
        let v = vars(names);
        let gens: Vec<Poly> = src.iter().map(|s| parse_poly(s, &v).unwrap()).collect();
        jet_quotient_dimension(&gens, max)
    }

    #[test]
    fn local_algebra_dimensions() {
        assert_eq!(jd(&["x^2", "y^2"], &["x", "y"], 10).dim, 4);
        let j = jd(&["3*z^2 + t^5", "5*z*t^4"], &["z", "t"], 24);
        assert!(j.stabilized);
        assert_eq!(j.dim, 13);
    }

    #[test]
    fn only_the_origin_counts() {
        // (x - 1)*x has two roots; only the one at 0 is local.
        let j = jd(&["x^2 - x"], &["x"], 10);
        assert_eq!(j.dim, 1);
        assert!(j.stabilized);
    }

    #[test]
    fn non_isolated_never_stabilizes() {
        let j = jd(&["2*x*y^2", "2*x^2*y"], &["x", "y"], 8);
        assert!(!j.stabilized);
    }

    #[test]
    fn truncation_counts() {
        let v = vars(&["x", "y"]);
        let g = vec![parse_poly("x", &v).unwrap()];
        // 1, y, y^2, y^3
        assert_eq!(truncated_dimension(&g, 2, 3), 4);
        assert_eq!(truncated_dimensions(&g, 2, 3), [1, 2, 3, 4]);
        // (x^3, x^2 y, x y^2) leaves 1, x, y, x^2, xy, y^2, y^3
        assert_eq!(truncated_dimensions_in_power(&g, 2, 3, 2), [1, 3, 6, 7]);
    }
}
