//! Milnor numbers by three independent routes.

use super::classify::{is_determined, jet_schedule};
use super::split::split_quadratic;
use super::{Germ, MilnorNumber, SingularityError};
use crate::poly::{
    jet_quotient_dimension, quotient_dimension, rat, GroebnerCaps, MonomialOrder, Poly, QuotientDim,
    Rat, WeightSystem,
};
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MilnorRoute {
    /// Product formula for a semi-quasihomogeneous germ.
    Formula,
    /// Global Groebner count, cross-checked against the jet route.
    Groebner,
    /// Stabilized local jet dimension.
    Jet,
}

impl FromStr for MilnorRoute {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "formula" => Ok(MilnorRoute::Formula),
            "groebner" => Ok(MilnorRoute::Groebner),
            "jet" => Ok(MilnorRoute::Jet),
            _ => Err(format!("unknown route `{}`", s)),
        }
    }
}

pub fn milnor_number(g: &Germ, route: MilnorRoute, max_jet: u32) -> Result<MilnorNumber, SingularityError> {
    if !g.is_singular() {
        return Err(SingularityError::Smooth);
    }
    match route {
        MilnorRoute::Jet => Ok(jet_route(g.poly(), max_jet)),
        MilnorRoute::Groebner => groebner_route(g.poly(), max_jet),
        MilnorRoute::Formula => formula_route(g.poly(), max_jet),
    }
}

fn jet_route(f: &Poly, max_jet: u32) -> MilnorNumber {
    let j = jet_quotient_dimension(&f.jacobian(), max_jet);
    if j.stabilized {
        QuotientDim::Finite(j.dim)
    } else {
        QuotientDim::Infinite
    }
}

fn groebner_route(f: &Poly, max_jet: u32) -> Result<MilnorNumber, SingularityError> {
    let global = quotient_dimension(&f.jacobian(), &MonomialOrder::grlex(f.nvars()), GroebnerCaps::default())?;
    let local = jet_quotient_dimension(&f.jacobian(), max_jet);
    match (global, local.stabilized) {
        (QuotientDim::Infinite, false) => Ok(QuotientDim::Infinite),
        (QuotientDim::Finite(a), true) if a == local.dim => Ok(global),
        (QuotientDim::Finite(a), true) if a > local.dim => Err(SingularityError::NotApplicable(format!(
            "global count {} exceeds the local one {}: critical points away from the origin",
            a, local.dim
        ))),
        (QuotientDim::Infinite, true) => Err(SingularityError::NotApplicable(
            "non-isolated critical locus away from the origin".into(),
        )),
        (g, _) => Err(SingularityError::Inconsistent(format!(
            "global {:?} against local {} (stabilized: {})",
            g, local.dim, local.stabilized
        ))),
    }
}

/// Weights making `f` semi-quasihomogeneous of degree 1 with isolated
/// initial part, searched over vertex choices `x_i^a` or `x_i^a x_j`.
fn find_weights(f: &Poly) -> Option<WeightSystem> {
    let n = f.nvars();
    let candidates: Vec<Vec<Vec<u32>>> = (0..n)
        .map(|i| {
            f.terms()
                .map(|(e, _)| e.clone())
                .filter(|e| e[i] >= 2 && e.iter().enumerate().all(|(j, &k)| j == i || k <= 1))
                .filter(|e| e.iter().enumerate().filter(|&(j, &k)| j != i && k == 1).count() <= 1)
                .collect()
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return None;
    }
    let mut idx = vec![0usize; n];
    loop {
        let rows: Vec<&Vec<u32>> = (0..n).map(|i| &candidates[i][idx[i]]).collect();
        if let Some(w) = solve_unit(&rows) {
            if let Ok(ws) = WeightSystem::unit_degree(w) {
                if accept(f, &ws) {
                    return Some(ws);
                }
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return None;
            }
            idx[i] += 1;
            if idx[i] < candidates[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

fn accept(f: &Poly, ws: &WeightSystem) -> bool {
    let one = Rat::one();
    if f.terms().any(|(e, _)| ws.weight_of(e) < one) {
        return false;
    }
    let f0 = f.filter(|e| ws.weight_of(e) == one);
    let order = MonomialOrder::grlex(f.nvars());
    matches!(quotient_dimension(&f0.jacobian(), &order, GroebnerCaps::default()), Ok(QuotientDim::Finite(_)))
}

/// Solves `E w = (1,...,1)` exactly; `None` when singular or a weight is
/// not in `(0, 1/2]`.
fn solve_unit(rows: &[&Vec<u32>]) -> Option<Vec<Rat>> {
    let n = rows.len();
    let mut m: Vec<Vec<Rat>> =
        rows.iter().map(|r| r.iter().map(|&k| rat(k as i64)).chain([Rat::one()]).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(piv, col);
        let p = m[col][col].clone();
        for c in col..=n {
            m[col][c] = &m[col][c] / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let d = &f * &m[col][c];
                    m[r][c] -= d;
                }
            }
        }
    }
    let w: Vec<Rat> = m.into_iter().map(|row| row[n].clone()).collect();
    let half = Rat::new(1.into(), 2.into());
    if w.iter().all(|x| x.is_positive() && *x <= half) {
        Some(w)
    } else {
        None
    }
}

fn product_formula(ws: &WeightSystem) -> u64 {
    let one = Rat::one();
    let mu = ws.weights().iter().fold(Rat::one(), |acc, w| acc * (&one / w - &one));
    assert!(mu.is_integer(), "product formula must be integral");
    mu.to_integer().try_into().expect("Milnor number fits in u64")
}

fn formula_route(f: &Poly, max_jet: u32) -> Result<MilnorNumber, SingularityError> {
    if let Some(ws) = find_weights(f) {
        return Ok(QuotientDim::Finite(product_formula(&ws)));
    }
    // mu(sum of squares + r) = mu(r) once r is finitely determined
    let mut last_err = SingularityError::NotApplicable("no semi-quasihomogeneous weights found".into());
    for k in jet_schedule(max_jet) {
        let split = split_quadratic(f, k)?;
        if split.residual.nvars() == 0 {
            return Ok(QuotientDim::Finite(1));
        }
        if split.rank == 0 {
            return Err(last_err);
        }
        if split.residual.is_zero() || !is_determined(&split.residual, k) {
            last_err = SingularityError::NotApplicable(format!("residual not determined at jet {}", k));
            continue;
        }
        return match find_weights(&split.residual) {
            Some(ws) => Ok(QuotientDim::Finite(product_formula(&ws))),
            None => Err(SingularityError::NotApplicable(
                "no semi-quasihomogeneous weights found after splitting".into(),
            )),
        };
    }
    Err(last_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, vars};

    fn mu(src: &str, route: MilnorRoute) -> Result<MilnorNumber, SingularityError> {
        let v = vars(&["x", "y", "z", "t"]);
        milnor_number(&Germ::new(parse_poly(src, &v).unwrap()).unwrap(), route, 24)
    }

    #[test]
    fn morse_and_ca() {
        for r in [MilnorRoute::Formula, MilnorRoute::Groebner, MilnorRoute::Jet] {
            assert_eq!(mu("x^2+y^2+z^2+t^2", r), Ok(QuotientDim::Finite(1)));
            assert_eq!(mu("x*y+z^3+z*t^5", r), Ok(QuotientDim::Finite(13)));
        }
    }

    #[test]
    fn xy_plus_powers() {
        for n in 2..=7i64 {
            let src = format!("x*y+z^{}+t^{}", n + 1, n + 1);
            for r in [MilnorRoute::Formula, MilnorRoute::Groebner, MilnorRoute::Jet] {
                assert_eq!(mu(&src, r), Ok(QuotientDim::Finite((n * n) as u64)));
            }
        }
    }

    #[test]
    fn groebner_route_sees_far_critical_points() {
        // z^3 + z^4 has a second critical point at z = -3/4
        let r = mu("x^2+y^2+t^2+z^3+z^4", MilnorRoute::Groebner);
        assert!(matches!(r, Err(SingularityError::NotApplicable(_))));
        assert_eq!(mu("x^2+y^2+t^2+z^3+z^4", MilnorRoute::Jet), Ok(QuotientDim::Finite(2)));
        assert_eq!(mu("x^2+y^2+t^2+z^3+z^4", MilnorRoute::Formula), Ok(QuotientDim::Finite(2)));
    }

    #[test]
    fn non_isolated() {
        assert_eq!(mu("x*y+z^2*t^2", MilnorRoute::Jet), Ok(QuotientDim::Infinite));
        assert_eq!(mu("x*y+z^2*t^2", MilnorRoute::Groebner), Ok(QuotientDim::Infinite));
        assert!(mu("x*y+z^2*t^2", MilnorRoute::Formula).is_err());
    }
}
