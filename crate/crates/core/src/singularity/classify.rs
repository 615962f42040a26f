//! cDV classification from the splitting residual.
//!
//! Verdicts are only issued at a jet order `k` where the residual is
//! provably `k`-determined (`m^{k+1} ⊆ m^2 J`), so the truncated residual
//! is right-equivalent to the true one.

use super::split::{split_quadratic, Split};
use super::{Germ, SingularityError};
use crate::poly::{
    groebner_basis, hilbert_function, jet_quotient_dimension, leading_monomials,
    ratio, truncated_dimensions_in_power, vars, GroebnerCaps, MonomialOrder, Poly, Rat,
    Substitution, WeightSystem,
};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GermKind {
    CA { n: u32 },
    CD { m: u32 },
    CE { k: u32 },
    Smooth,
    NonIsolated { up_to_jet: u32 },
    Undetermined { jet: u32, reason: String },
}

impl fmt::Display for GermKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GermKind::CA { n } => write!(f, "cA({})", n),
            GermKind::CD { m } => write!(f, "cD({})", m),
            GermKind::CE { k } => write!(f, "cE({})", k),
            GermKind::Smooth => f.write_str("smooth"),
            GermKind::NonIsolated { up_to_jet } => write!(f, "non-isolated up to jet {}", up_to_jet),
            GermKind::Undetermined { jet, reason } => write!(f, "undetermined at jet {}: {}", jet, reason),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// `g(substitution) = sum of unit * x_i^2 + residual` modulo degree `jet + 1`.
    pub substitution: Substitution,
    pub rank: usize,
    pub residual: Poly,
    /// Weights of the normal form in the substituted coordinates, when known.
    pub weights: Option<WeightSystem>,
    pub jet: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermClass {
    pub kind: GermKind,
    pub certificate: Option<Certificate>,
}

impl GermClass {
    pub fn to_json(&self) -> serde_json::Value {
        let cert = self.certificate.as_ref().map(|c| {
            serde_json::json!({
                "substitution": c.substitution.image().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "rank": c.rank,
                "residual_vars": c.residual.vars().to_vec(),
                "residual": c.residual.to_string(),
                "weights": c.weights.as_ref().map(|w| w.weights().iter().map(|r| r.to_string()).collect::<Vec<_>>()),
                "jet": c.jet,
            })
        });
        serde_json::json!({ "kind": self.kind, "verdict": self.kind.to_string(), "certificate": cert })
    }
}

pub(crate) fn jet_schedule(max_jet: u32) -> Vec<u32> {
    let mut ks: Vec<u32> = [6, 8, 10, 12, 14, 16, 20].into_iter().filter(|&k| k < max_jet).collect();
    ks.push(max_jet);
    ks
}

/// `m^{k+1} ⊆ m^2 J(f)`: then `f` is `k`-determined.
pub(crate) fn is_determined(f: &Poly, k: u32) -> bool {
    let n = f.nvars();
    if n == 0 {
        return true;
    }
    // m^{k+1} ⊆ m^2 J + m^{k+2}, then Nakayama
    let dims = truncated_dimensions_in_power(&f.jacobian(), n, k + 1, 2);
    dims[k as usize + 1] == dims[k as usize]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CubicShape {
    Zero,
    NoSquareFactor,
    SquareTimesLinear,
    Cube,
}

/// Does a ternary cubic form have a repeated linear factor, and is it a cube?
fn cubic_shape(f3: &Poly) -> CubicShape {
    if f3.is_zero() {
        return CubicShape::Zero;
    }
    let parts: Vec<Poly> = f3.jacobian().into_iter().filter(|p| !p.is_zero()).collect();
    if span_dimension(&parts) == 1 {
        return CubicShape::Cube;
    }
    let order = MonomialOrder::grlex(f3.nvars());
    let gb = groebner_basis(&parts, &order, GroebnerCaps::default()).expect("quadrics in 3 variables");
    let leads = leading_monomials(&gb, &order);
    let n = f3.nvars();
    // a curve of singular points makes the Hilbert function grow
    if hilbert_function(&leads, n, 13) > hilbert_function(&leads, n, 12) {
        CubicShape::SquareTimesLinear
    } else {
        CubicShape::NoSquareFactor
    }
}

fn span_dimension(ps: &[Poly]) -> usize {
    let mut rows: Vec<Poly> = Vec::new();
    let order = MonomialOrder::grlex(ps.first().map(|p| p.nvars()).unwrap_or(0));
    for p in ps {
        let mut r = p.clone();
        loop {
            let Some((e, c)) = r.leading(&order).map(|(e, c)| (e.clone(), c.clone())) else { break };
            match rows.iter().find(|q| q.leading(&order).map(|(l, _)| l == &e).unwrap_or(false)) {
                Some(q) => {
                    let qc = q.coeff(&e);
                    r = &r - &q.scale(&(&c / &qc));
                }
                None => break,
            }
        }
        if !r.is_zero() {
            rows.push(r);
        }
    }
    rows.len()
}

/// Milnor number of a generic plane section `t = a*y + b*z` of a ternary
/// residual, minimised over a few fixed rational choices.
fn generic_section_mu(r: &Poly, jet: u32) -> Option<u64> {
    let names = r.vars().clone();
    let plane = vars(&[names[0].as_str(), names[1].as_str()]);
    let choices = [(ratio(2, 3), ratio(5, 7)), (ratio(-3, 4), ratio(11, 5)), (ratio(7, 2), ratio(-1, 9))];
    let mut best: Option<u64> = None;
    for (a, b) in choices {
        let y = Poly::var(names.clone(), 0).scale(&a);
        let z = Poly::var(names.clone(), 1).scale(&b);
        let sec = r.substitute_var_truncated(2, &(&y + &z), jet);
        let sec = sec.embed(&plane)?;
        let j = jet_quotient_dimension(&sec.jacobian(), jet);
        if j.stabilized {
            best = Some(best.map_or(j.dim, |b| b.min(j.dim)));
        }
    }
    best
}

fn normal_weights(rank: usize, split: &Split, residual_weight: Rat) -> Option<WeightSystem> {
    let n = split.residual_full.nvars();
    let mut w = vec![ratio(1, 2); n];
    for &i in &split.residual_vars {
        w[i] = residual_weight.clone();
    }
    let _ = rank;
    WeightSystem::unit_degree(w).ok()
}

fn certificate(split: &Split, weights: Option<WeightSystem>) -> Option<Certificate> {
    Some(Certificate {
        substitution: split.substitution.clone(),
        rank: split.rank,
        residual: split.residual.clone(),
        weights,
        jet: split.jet,
    })
}

fn verdict_at(split: &Split, k: u32) -> Option<GermClass> {
    let r = &split.residual;
    match split.rank {
        4 => Some(GermClass { kind: GermKind::CA { n: 1 }, certificate: certificate(split, normal_weights(4, split, ratio(1, 2))) }),
        3 => {
            let m = r.order()?;
            let w = normal_weights(3, split, ratio(1, m as i64));
            Some(GermClass { kind: GermKind::CA { n: 1 }, certificate: certificate(split, w) })
        }
        2 => {
            if r.is_zero() || !is_determined(r, k) {
                return None;
            }
            let ord = r.order()?;
            let w = normal_weights(2, split, ratio(1, ord as i64));
            Some(GermClass { kind: GermKind::CA { n: ord - 1 }, certificate: certificate(split, w) })
        }
        1 => {
            // the cubic part is fixed by the 3-jet; without it no section is Du Val
            let shape = cubic_shape(&r.homogeneous_part(3));
            if shape == CubicShape::Zero {
                let reason = "corank 3 with vanishing cubic part: not compound Du Val".into();
                return Some(GermClass { kind: GermKind::Undetermined { jet: k, reason }, certificate: certificate(split, None) });
            }
            if r.is_zero() || !is_determined(r, k) {
                return None;
            }
            let kind = match shape {
                CubicShape::Zero => unreachable!("handled above"),
                CubicShape::NoSquareFactor => GermKind::CD { m: 4 },
                CubicShape::SquareTimesLinear => match generic_section_mu(r, k) {
                    Some(m) => GermKind::CD { m: m as u32 },
                    None => GermKind::Undetermined { jet: k, reason: "generic section not determined".into() },
                },
                CubicShape::Cube => match generic_section_mu(r, k) {
                    Some(m) if (6..=8).contains(&m) => GermKind::CE { k: m as u32 },
                    Some(m) => GermKind::Undetermined {
                        jet: k,
                        reason: format!("cube cubic part with section Milnor number {}: not compound Du Val", m),
                    },
                    None => GermKind::Undetermined { jet: k, reason: "generic section not determined".into() },
                },
            };
            let w = if kind == (GermKind::CD { m: 4 }) { normal_weights(1, split, ratio(1, 3)) } else { None };
            Some(GermClass { kind, certificate: certificate(split, w) })
        }
        _ => Some(GermClass {
            kind: GermKind::Undetermined { jet: k, reason: "multiplicity at least 3: not compound Du Val".into() },
            certificate: certificate(split, None),
        }),
    }
}

/// Classifies a 4-variable germ singular at the origin.
pub fn classify_cdv(g: &Germ, max_jet: u32) -> Result<GermClass, SingularityError> {
    if g.nvars() != 4 {
        return Err(SingularityError::Arity(g.nvars()));
    }
    if !g.is_singular() {
        return Ok(GermClass { kind: GermKind::Smooth, certificate: None });
    }
    let mut last: Option<Split> = None;
    for k in jet_schedule(max_jet.max(2)) {
        let split = split_quadratic(g.poly(), k)?;
        if let Some(verdict) = verdict_at(&split, k) {
            return Ok(verdict);
        }
        last = Some(split);
    }
    let split = last.expect("nonempty jet schedule");
    let mu = jet_quotient_dimension(&split.residual.jacobian(), max_jet);
    let kind = if split.residual.is_zero() || !mu.stabilized {
        GermKind::NonIsolated { up_to_jet: max_jet }
    } else {
        GermKind::Undetermined { jet: max_jet, reason: "residual not finitely determined within the jet bound".into() }
    };
    Ok(GermClass { kind, certificate: certificate(&split, None) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn kind(src: &str) -> GermKind {
        let v = vars(&["x", "y", "z", "t"]);
        let g = Germ::new(parse_poly(src, &v).unwrap()).unwrap();
        classify_cdv(&g, 24).unwrap().kind
    }

    #[test]
    fn ca_series() {
        assert_eq!(kind("x^2+y^2+z^2+t^2"), GermKind::CA { n: 1 });
        assert_eq!(kind("x^2+y^2+z^2+t^5"), GermKind::CA { n: 1 });
        assert_eq!(kind("x*y+z^3+t^3"), GermKind::CA { n: 2 });
        assert_eq!(kind("x*y+z^4+t^7"), GermKind::CA { n: 3 });
    }

    #[test]
    fn du_val_sections() {
        assert_eq!(kind("x^2+y^3+z^3+t^3"), GermKind::CD { m: 4 });
        assert_eq!(kind("x^2+y^2*z+z^4+t^4"), GermKind::CD { m: 5 });
        assert_eq!(kind("x^2+y^3+z^4+t^4"), GermKind::CE { k: 6 });
        assert_eq!(kind("x^2+y^3+y*z^3+t^5"), GermKind::CE { k: 7 });
        assert_eq!(kind("x^2+y^3+z^5+t^5"), GermKind::CE { k: 8 });
    }

    #[test]
    fn degenerate_germs() {
        assert_eq!(kind("x + y^2"), GermKind::Smooth);
        assert_eq!(kind("x*y"), GermKind::NonIsolated { up_to_jet: 24 });
        assert_eq!(kind("x*y + z^2*t^2"), GermKind::NonIsolated { up_to_jet: 24 });
        assert!(matches!(kind("x^3+y^3+z^3+t^3"), GermKind::Undetermined { .. }));
    }

    #[test]
    fn cubic_shapes() {
        let v = vars(&["y", "z", "t"]);
        let p = |s: &str| parse_poly(s, &v).unwrap();
        assert_eq!(cubic_shape(&p("y^3+z^3+t^3")), CubicShape::NoSquareFactor);
        assert_eq!(cubic_shape(&p("y^3+z^3")), CubicShape::NoSquareFactor);
        assert_eq!(cubic_shape(&p("y^2*z")), CubicShape::SquareTimesLinear);
        assert_eq!(cubic_shape(&p("(y+z-t)^2*(y-t)")), CubicShape::SquareTimesLinear);
        assert_eq!(cubic_shape(&p("(y+2*z)^3")), CubicShape::Cube);
    }

    #[test]
    fn determinacy() {
        let v = vars(&["z", "t"]);
        let f = parse_poly("z^3+t^3", &v).unwrap();
        assert!(is_determined(&f, 4));
        let g = parse_poly("z^2*t", &v).unwrap();
        assert!(!is_determined(&g, 10));
    }
}
