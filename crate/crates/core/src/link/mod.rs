//! Complete intersections inside rank-2 toric ambients, and the 2-ray game
//! of the ambient restricted to them.

pub(crate) mod locus;
mod render;
mod restrict;
mod run;

pub use locus::CurveCount;
pub use render::{render_diagram, render_dot, render_text};
pub use restrict::{restrict_wall, Descriptor, FiberKind, FiberProfile, RestrictedCrossing, RestrictedKind, WpsCi};
pub use run::{run_link, run_link_with, validate_link, Check, Checklist, Endpoint, LinkOptions, LinkReport};

use crate::poly::{parse_poly, GroebnerError, MonomialOrder, ParseError, Poly, Rat, Vars};
use crate::toric::{adjunction, DivClass, ToricAmbient, ToricError};
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("equation {0} is not bihomogeneous")]
    NotHomogeneous(usize),
    #[error("equation {0} is zero")]
    ZeroEquation(usize),
    #[error("equation {0} is divisible by `{1}`")]
    DivisibleByVariable(usize, String),
    #[error("equation {0} is a linear combination of the previous {1}")]
    Dependent(usize, usize),
    #[error("`{0}` is not the only variable beyond the near boundary of the movable cone")]
    BadExceptional(String),
    #[error("no equation lies in the ideal ({0}, {1})")]
    NotInIdeal(String, String),
    #[error("unprojection classes disagree: {0} vs {1}")]
    ClassMismatch(DivClass, DivClass),
    #[error("non-eliminable pivot `{0}`")]
    NonEliminable(String),
    #[error("{0}")]
    Internal(String),
}

/// A complete intersection `Z` in a rank-2 toric ambient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSystem {
    ambient: ToricAmbient,
    vars: Vars,
    equations: Vec<Poly>,
    exceptional: String,
    metadata: String,
}

/// A variable `v` that an equation `c*v + rest` solves for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pivot {
    pub equation: usize,
    pub variable: usize,
}

pub(crate) fn ambient_vars(a: &ToricAmbient) -> Vars {
    a.names().iter().cloned().collect::<Vec<_>>().into()
}

pub(crate) fn monomial_class(a: &ToricAmbient, e: &[u32]) -> DivClass {
    e.iter().enumerate().fold(DivClass::new(0, 0), |acc, (i, &k)| acc + a.class(i).scale(k as i64))
}

/// Divides out the largest monomial dividing every term.
pub(crate) fn strip_monomial(p: &Poly) -> Poly {
    let n = p.nvars();
    let mut g: Option<Vec<u32>> = None;
    for (e, _) in p.terms() {
        g = Some(match g {
            None => e.clone(),
            Some(g) => g.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
        });
    }
    let g = g.unwrap_or_else(|| vec![0; n]);
    if g.iter().all(|&k| k == 0) {
        return p.clone();
    }
    Poly::from_terms(
        p.vars().clone(),
        p.terms().map(|(e, c)| (e.iter().zip(&g).map(|(a, b)| a - b).collect(), c.clone())),
    )
}

/// First equation solving linearly for an allowed variable with a constant
/// coefficient. Later variables are preferred.
pub(crate) fn find_linear_pivot(eqs: &[Poly], allowed: impl Fn(usize) -> bool) -> Option<(usize, usize, Poly)> {
    for (k, eq) in eqs.iter().enumerate() {
        let n = eq.nvars();
        for v in (0..n).rev() {
            if !allowed(v) || eq.degree_in(v) != 1 {
                continue;
            }
            let mut unit = vec![0u32; n];
            unit[v] = 1;
            let with_v: Vec<_> = eq.terms().filter(|(e, _)| e[v] > 0).collect();
            if with_v.len() != 1 || *with_v[0].0 != unit {
                continue;
            }
            let c = with_v[0].1.clone();
            let rest = eq.filter(|e| e[v] == 0);
            // v = -rest / c
            let solved = rest.scale(&(-Rat::one() / c));
            return Some((k, v, solved));
        }
    }
    None
}

impl GradedSystem {
    pub fn new(
        ambient: ToricAmbient,
        equations: Vec<Poly>,
        exceptional: &str,
        metadata: impl Into<String>,
    ) -> Result<Self, LinkError> {
        let vars = ambient_vars(&ambient);
        let mut eqs = Vec::with_capacity(equations.len());
        for (k, p) in equations.into_iter().enumerate() {
            let q = p.embed(&vars).ok_or_else(|| LinkError::Internal(format!("equation {} uses unknown variables", k)))?;
            eqs.push(q);
        }
        let s = GradedSystem { ambient, vars, equations: eqs, exceptional: exceptional.to_string(), metadata: metadata.into() };
        s.validate()?;
        Ok(s)
    }

    pub fn parse(
        ambient: ToricAmbient,
        equations: &[&str],
        exceptional: &str,
        metadata: impl Into<String>,
    ) -> Result<Self, LinkError> {
        let vars = ambient_vars(&ambient);
        let eqs = equations.iter().map(|e| parse_poly(e, &vars)).collect::<Result<Vec<_>, _>>()?;
        Self::new(ambient, eqs, exceptional, metadata)
    }

    /// Proper transforms under the weighted blowup of the coordinate point
    /// `x_c = 1`, where `c` is the unique variable of weight 0.
    ///
    /// The new variable `exceptional` has class `(1, 0)`; a variable of
    /// weight `w` and degree `d` gets `(-w, d)`. Each equation is the sum of
    /// its monomials times `exceptional^(wt - min wt)`.
    pub fn weighted_blowup(
        names: &[&str],
        degrees: &[i64],
        weights: &[i64],
        equations: &[&str],
        exceptional: &str,
        metadata: impl Into<String>,
    ) -> Result<Self, LinkError> {
        let n = names.len();
        if degrees.len() != n || weights.len() != n {
            return Err(LinkError::Internal("weights and degrees need one entry per variable".into()));
        }
        let centre: Vec<usize> = (0..n).filter(|&i| weights[i] == 0).collect();
        if centre.len() != 1 || weights.iter().any(|&w| w < 0) {
            return Err(LinkError::Internal("exactly one variable must have weight 0".into()));
        }
        let c = centre[0];
        let base = crate::poly::vars(names);
        let mut all: Vec<&str> = vec![exceptional];
        all.extend_from_slice(names);
        let mut classes = vec![DivClass::new(1, 0)];
        classes.extend((0..n).map(|i| DivClass::new(-weights[i], degrees[i])));
        let second: Vec<&str> = (0..n).filter(|&i| i != c).map(|i| names[i]).collect();
        let ambient = ToricAmbient::new(all.iter().map(|s| s.to_string()).collect(), classes, &[exceptional, names[c]], &second)?;
        let vars = ambient_vars(&ambient);
        let mut eqs = Vec::new();
        for text in equations {
            let p = parse_poly(text, &base)?;
            let wt = |e: &[u32]| e.iter().zip(weights).map(|(&k, &w)| k as i64 * w).sum::<i64>();
            let min = p.terms().map(|(e, _)| wt(e)).min().unwrap_or(0);
            let terms = p.terms().map(|(e, coef)| {
                let mut e2 = vec![(wt(e) - min) as u32];
                e2.extend_from_slice(e);
                (e2, coef.clone())
            });
            eqs.push(Poly::from_terms(vars.clone(), terms));
        }
        Self::new(ambient, eqs, exceptional, metadata)
    }

    fn validate(&self) -> Result<(), LinkError> {
        let a = &self.ambient;
        let ex = a.index(&self.exceptional).ok_or_else(|| ToricError::UnknownVar(self.exceptional.clone()))?;
        let order = a.sweep_order();
        if order[0] != ex || order.len() < 2 || a.ray(order[1]) == a.ray(ex) {
            return Err(LinkError::BadExceptional(self.exceptional.clone()));
        }
        for (k, eq) in self.equations.iter().enumerate() {
            if eq.is_zero() {
                return Err(LinkError::ZeroEquation(k));
            }
            let mut classes = eq.terms().map(|(e, _)| monomial_class(a, e));
            let c0 = classes.next().unwrap();
            if classes.any(|c| c != c0) {
                return Err(LinkError::NotHomogeneous(k));
            }
            for v in 0..self.vars.len() {
                if eq.terms().all(|(e, _)| e[v] > 0) {
                    return Err(LinkError::DivisibleByVariable(k, self.vars[v].clone()));
                }
            }
        }
        // linear independence of the equations, by echelon reduction
        let order = MonomialOrder::grlex(self.vars.len());
        let mut echelon: Vec<Poly> = Vec::new();
        for (k, eq) in self.equations.iter().enumerate() {
            let mut p = eq.clone();
            loop {
                let Some((lead, c)) = p.leading(&order).map(|(e, c)| (e.clone(), c.clone())) else {
                    return Err(LinkError::Dependent(k, echelon.len()));
                };
                match echelon.iter().find(|q| q.leading(&order).unwrap().0 == &lead) {
                    Some(q) => {
                        let f = c / q.leading(&order).unwrap().1;
                        p = &p - &q.scale(&f);
                    }
                    None => break,
                }
            }
            echelon.push(p);
        }
        Ok(())
    }

    pub fn ambient(&self) -> &ToricAmbient {
        &self.ambient
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn equations(&self) -> &[Poly] {
        &self.equations
    }

    pub fn exceptional(&self) -> &str {
        &self.exceptional
    }

    pub fn exceptional_index(&self) -> usize {
        self.ambient.index(&self.exceptional).unwrap()
    }

    pub fn metadata(&self) -> &str {
        &self.metadata
    }

    pub fn with_metadata(mut self, m: impl Into<String>) -> Self {
        self.metadata = m.into();
        self
    }

    pub fn codimension(&self) -> usize {
        self.equations.len()
    }

    pub fn equation_class(&self, k: usize) -> DivClass {
        let (e, _) = self.equations[k].terms().next().unwrap();
        monomial_class(&self.ambient, e)
    }

    pub fn equation_classes(&self) -> Vec<DivClass> {
        (0..self.equations.len()).map(|k| self.equation_class(k)).collect()
    }

    /// `K_Z` by adjunction.
    pub fn canonical_class(&self) -> DivClass {
        adjunction(&self.ambient, &self.equation_classes())
    }

    pub fn anticanonical_class(&self) -> DivClass {
        -self.canonical_class()
    }

    pub fn variable(&self, name: &str) -> Option<Poly> {
        Poly::var_named(self.vars.clone(), name)
    }

    pub fn find_pivot(&self) -> Option<Pivot> {
        let first = self.ambient.first_set().to_vec();
        let ex = self.exceptional_index();
        find_linear_pivot(&self.equations, |v| v != ex && !first.contains(&v))
            .map(|(equation, variable, _)| Pivot { equation, variable })
    }

    /// Removes one pivot variable and its equation; unchanged when there is
    /// no pivot.
    pub fn eliminate_pivot(&self) -> Result<GradedSystem, LinkError> {
        let first = self.ambient.first_set().to_vec();
        let ex = self.exceptional_index();
        let Some((k, v, solved)) = find_linear_pivot(&self.equations, |v| v != ex && !first.contains(&v)) else {
            return Ok(self.clone());
        };
        let ambient = self.ambient.without_var(v)?;
        let vars = ambient_vars(&ambient);
        let mut eqs = Vec::new();
        for (j, eq) in self.equations.iter().enumerate() {
            if j == k {
                continue;
            }
            let p = strip_monomial(&eq.substitute_var(v, &solved));
            if p.is_zero() {
                return Err(LinkError::NonEliminable(self.vars[v].clone()));
            }
            eqs.push(p.embed(&vars).ok_or_else(|| LinkError::NonEliminable(self.vars[v].clone()))?);
        }
        GradedSystem::new(ambient, eqs, &self.exceptional, self.metadata.clone())
    }

    pub fn eliminate_all_pivots(&self) -> Result<GradedSystem, LinkError> {
        let mut s = self.clone();
        while s.find_pivot().is_some() {
            s = s.eliminate_pivot()?;
        }
        Ok(s)
    }

    /// Index of the first equation in which every monomial is divisible by
    /// `a` or `b`.
    pub fn in_ideal_of(&self, a: usize, b: usize) -> Option<usize> {
        self.equations.iter().position(|eq| eq.terms().all(|(e, _)| e[a] > 0 || e[b] > 0))
    }

    fn fresh_name(&self) -> String {
        let base = ["s", "t", "eta", "zeta", "xi"];
        for b in base {
            if self.ambient.index(b).is_none() {
                return b.to_string();
            }
        }
        (1..).map(|i| format!("s{}", i)).find(|n| self.ambient.index(n).is_none()).unwrap()
    }

    /// Unprojects an equation `b*f + a^k*g` (monomials divisible by `b` go to
    /// `f`) by a new variable `t = f / a^k = -g / b`, then removes pivots.
    pub fn unproject(&self, a: &str, b: &str) -> Result<GradedSystem, LinkError> {
        let ia = self.ambient.index(a).ok_or_else(|| ToricError::UnknownVar(a.into()))?;
        let ib = self.ambient.index(b).ok_or_else(|| ToricError::UnknownVar(b.into()))?;
        let k = self.in_ideal_of(ia, ib).ok_or_else(|| LinkError::NotInIdeal(a.into(), b.into()))?;
        let eq = &self.equations[k];
        let n = self.vars.len();
        let mut f = Poly::zero(self.vars.clone());
        let mut g = Poly::zero(self.vars.clone());
        let power = eq.terms().filter(|(e, _)| e[ib] == 0).map(|(e, _)| e[ia]).min().unwrap_or(0);
        for (e, c) in eq.terms() {
            let mut e2 = e.clone();
            if e[ib] > 0 {
                e2[ib] -= 1;
                f = &f + &Poly::monomial(self.vars.clone(), e2, c.clone());
            } else {
                e2[ia] -= power;
                g = &g + &Poly::monomial(self.vars.clone(), e2, c.clone());
            }
        }
        if f.is_zero() || g.is_zero() {
            return Err(LinkError::DivisibleByVariable(k, if f.is_zero() { a.into() } else { b.into() }));
        }
        let cf = monomial_class(&self.ambient, f.terms().next().unwrap().0) - self.ambient.class(ia).scale(power as i64);
        let cg = monomial_class(&self.ambient, g.terms().next().unwrap().0) - self.ambient.class(ib);
        if cf != cg {
            return Err(LinkError::ClassMismatch(cf, cg));
        }
        let name = self.fresh_name();
        let ambient = self.ambient.with_var(&name, cf)?;
        let vars = ambient_vars(&ambient);
        let lift = |p: &Poly| p.embed(&vars).unwrap();
        let t = Poly::var(vars.clone(), n);
        let mut apow = vec![0u32; n + 1];
        apow[ia] = power;
        let mut eqs: Vec<Poly> = Vec::new();
        for (j, e) in self.equations.iter().enumerate() {
            if j != k {
                eqs.push(lift(e));
            }
        }
        eqs.push(&t.mul_monomial(&apow, &Rat::one()) - &lift(&f));
        let mut bpow = vec![0u32; n + 1];
        bpow[ib] = 1;
        eqs.push(&t.mul_monomial(&bpow, &Rat::one()) + &lift(&g));
        let s = GradedSystem::new(ambient, eqs, &self.exceptional, self.metadata.clone())?;
        s.eliminate_all_pivots()
    }

    /// Alternates pivot elimination and unprojection in the ideal of the
    /// first irrelevant set until neither applies.
    pub fn normalize(&self) -> Result<GradedSystem, LinkError> {
        let mut s = self.eliminate_all_pivots()?;
        for _ in 0..8 {
            let first = s.ambient.first_set();
            if first.len() != 2 {
                return Ok(s);
            }
            let (a, b) = (first[0], first[1]);
            let (a, b) = if s.exceptional_index() == a { (a, b) } else { (b, a) };
            if s.in_ideal_of(a, b).is_none() {
                return Ok(s);
            }
            s = s.unproject(&s.vars[a].clone(), &s.vars[b].clone())?;
        }
        Err(LinkError::Internal("unprojection does not terminate".into()))
    }

    /// Serializable description: the system JSON format.
    /// Ambient JSON extended with `equations`, `exceptional` and `metadata`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.ambient.to_json();
        v["equations"] = serde_json::json!(self.equations.iter().map(|p| p.to_string()).collect::<Vec<_>>());
        v["exceptional"] = serde_json::json!(self.exceptional);
        v["metadata"] = serde_json::json!(self.metadata);
        v
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, LinkError> {
        let ambient = ToricAmbient::from_json(v)?;
        let bad = |what: &str| LinkError::Internal(format!("system JSON: missing or malformed `{}`", what));
        let eqs: Vec<&str> = v
            .get("equations")
            .and_then(|x| x.as_array())
            .ok_or_else(|| bad("equations"))?
            .iter()
            .map(|s| s.as_str().ok_or_else(|| bad("equations")))
            .collect::<Result<_, _>>()?;
        let exceptional = v.get("exceptional").and_then(|x| x.as_str()).ok_or_else(|| bad("exceptional"))?;
        let metadata = v.get("metadata").and_then(|x| x.as_str()).unwrap_or("");
        Self::parse(ambient, &eqs, exceptional, metadata)
    }
}

#[cfg(test)]
mod tests;
