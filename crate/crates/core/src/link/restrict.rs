//! Restriction of an ambient wall crossing to the complete intersection.

use super::locus::{
    binary_roots, cone_dimension, eliminate_linear, projective_points, rational_points_binary, restrict_to, CurveCount,
    Locus, PointSet,
};
use super::{GradedSystem, LinkError};
use crate::poly::{GroebnerCaps, MonomialOrder, OrderKind, Poly, Rat};
use crate::toric::{DivClass, Ray, WallCrossing, WallKind};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Local weights and equation degrees at a flipping point.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Descriptor {
    pub weights: Vec<i64>,
    pub degrees: Vec<i64>,
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.weights.iter().map(|x| x.to_string()).collect();
        let d: Vec<String> = self.degrees.iter().map(|x| x.to_string()).collect();
        if d.is_empty() {
            write!(f, "({})", w.join(","))
        } else {
            write!(f, "({};{})", w.join(","), d.join(","))
        }
    }
}

/// Complete intersection in a weighted projective space.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct WpsCi {
    pub names: Vec<String>,
    pub weights: Vec<i64>,
    pub degrees: Vec<i64>,
    pub equations: Vec<String>,
}

impl WpsCi {
    pub fn sorted_weights(&self) -> Vec<i64> {
        let mut w = self.weights.clone();
        w.sort_unstable();
        w
    }

    pub fn sorted_degrees(&self) -> Vec<i64> {
        let mut d = self.degrees.clone();
        d.sort_unstable();
        d
    }

    pub fn dimension(&self) -> i64 {
        self.weights.len() as i64 - 1 - self.degrees.len() as i64
    }

    /// `Y_{d1,d2} ⊂ P(w)`, or just the space when there are no equations.
    pub fn label(&self, letter: &str) -> String {
        let w = self.sorted_weights();
        let space = if w.iter().all(|&x| x == 1) {
            format!("P^{}", w.len() - 1)
        } else {
            format!("P({})", join(&w))
        };
        match self.degrees.len() {
            0 => space,
            1 => format!("{}_{} ⊂ {}", letter, self.degrees[0], space),
            _ => format!("{}_{{{}}} ⊂ {}", letter, join(&self.sorted_degrees()), space),
        }
    }
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Generic fibre of a fibration endpoint.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct FiberProfile {
    pub fiber: WpsCi,
    pub kind: FiberKind,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FiberKind {
    Conic,
    DelPezzo { degree: i64 },
    Other,
}

impl fmt::Display for FiberProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FiberKind::Conic => write!(f, "conic bundle"),
            FiberKind::DelPezzo { degree } => write!(f, "dP{} fibration", degree),
            FiberKind::Other => write!(f, "fibration with fibre {}", self.fiber.label("F")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum RestrictedKind {
    Isomorphism,
    Flop { curves: CurveCount },
    Flip { curves: CurveCount, descriptors: Vec<Descriptor> },
    Antiflip { curves: CurveCount, descriptors: Vec<Descriptor> },
    Divisorial { exceptional: String, discrepancy: String, target: WpsCi },
    Fibration { base: WpsCi, fiber: FiberProfile },
    Degenerate { reason: String },
}

impl RestrictedKind {
    pub fn is_small(&self) -> bool {
        matches!(
            self,
            RestrictedKind::Isomorphism
                | RestrictedKind::Flop { .. }
                | RestrictedKind::Flip { .. }
                | RestrictedKind::Antiflip { .. }
        )
    }
}

/// A wall crossing of the ambient together with what it does to `Z`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct RestrictedCrossing {
    pub wall: WallCrossing,
    pub kind: RestrictedKind,
    /// Sign of `det(ray, -K_Z)`: `1` before the anticanonical ray, `-1` after.
    pub k_sign: i64,
    pub evidence: Vec<String>,
    pub flags: Vec<String>,
}

/// `-mu` where `-K = lambda * r + mu * c`.
pub(crate) fn discrepancy(r: Ray, c: DivClass, anti: DivClass) -> Rat {
    let mu = Rat::new(BigInt::from(r.det_class(&anti)), BigInt::from(r.det_class(&c)));
    -mu
}

pub fn restrict_wall(s: &GradedSystem, wall: &WallCrossing) -> Result<RestrictedCrossing, LinkError> {
    let anti = s.anticanonical_class();
    let r = wall.ray;
    let k_sign = r.det_class(&anti).signum();
    let mut evidence = Vec::new();
    let mut flags = Vec::new();
    let kind = match &wall.kind {
        WallKind::Divisorial { exceptional } => {
            let v = *exceptional;
            let a = discrepancy(r, s.ambient().class(v), anti);
            evidence.push(format!("-K = {} with exceptional class {}", anti, s.ambient().class(v)));
            if !a.is_positive() {
                flags.push(format!("discrepancy {} is not positive", a));
            }
            let target = divisorial_endpoint(s, v)?;
            RestrictedKind::Divisorial { exceptional: s.vars()[v].clone(), discrepancy: a.to_string(), target }
        }
        WallKind::Fibration { base } => {
            if k_sign >= 0 {
                flags.push("-K is not relatively ample on the fibres".into());
            }
            let (base, fiber) = fibration_endpoint(s, r, base)?;
            RestrictedKind::Fibration { base, fiber }
        }
        WallKind::Small => small_wall(s, wall, k_sign, &mut evidence, &mut flags)?,
    };
    Ok(RestrictedCrossing { wall: wall.clone(), kind, k_sign, evidence, flags })
}

fn small_wall(
    s: &GradedSystem,
    wall: &WallCrossing,
    k_sign: i64,
    evidence: &mut Vec<String>,
    flags: &mut Vec<String>,
) -> Result<RestrictedKind, LinkError> {
    let near = side_locus(s, wall, &wall.near_side, &wall.far_side)?;
    let far = side_locus(s, wall, &wall.far_side, &wall.near_side)?;
    evidence.push(format!("near locus {:?}, far locus {:?}", near, far));
    for l in [&near, &far] {
        match l {
            Locus::PositiveDim(d) => {
                let dim_z = s.vars().len() as i64 - 2 - s.codimension() as i64;
                let what = if *d as i64 == dim_z - 1 { "a divisor" } else { "a subvariety" };
                let reason = if k_sign == 0 {
                    format!("K-trivial contraction of {}", what)
                } else {
                    format!("contracted locus of dimension {} ({})", d, what)
                };
                flags.push(reason.clone());
                return Ok(RestrictedKind::Degenerate { reason });
            }
            Locus::Unsupported(why) => {
                flags.push(why.clone());
                return Ok(RestrictedKind::Degenerate { reason: why.clone() });
            }
            _ => {}
        }
    }
    let count = |l: &Locus| match l {
        Locus::Curves(c) => Some(c.clone()),
        _ => None,
    };
    let (cn, cf) = (count(&near), count(&far));
    if cn.is_none() && cf.is_none() {
        return Ok(RestrictedKind::Isomorphism);
    }
    if cn.is_none() != cf.is_none() {
        flags.push("curves on one side only".into());
    }
    for c in [&cn, &cf].into_iter().flatten() {
        if !c.reduced {
            flags.push("non-reduced contracted locus".into());
        }
    }
    let kind = match k_sign {
        0 => RestrictedKind::Flop { curves: cn.or(cf).unwrap() },
        s_ if s_ < 0 => {
            let curves = cn.clone().or(cf).unwrap();
            let descriptors = descriptors(s, wall, false, flags)?;
            RestrictedKind::Flip { curves, descriptors }
        }
        _ => {
            let curves = cf.clone().or(cn).unwrap();
            let descriptors = descriptors(s, wall, true, flags)?;
            flags.push("antiflip".into());
            RestrictedKind::Antiflip { curves, descriptors }
        }
    };
    Ok(kind)
}

/// Equations with the `kill` variables set to zero.
fn killed(s: &GradedSystem, kill: &[usize]) -> Vec<Poly> {
    s.equations()
        .iter()
        .map(|p| kill.iter().fold(p.clone(), |q, &i| q.eval_var(i, &Rat::zero())))
        .filter(|p| !p.is_zero())
        .collect()
}

fn weights_on(s: &GradedSystem, r: Ray, vars: &[usize]) -> Vec<i64> {
    vars.iter().map(|&i| r.det_class(&s.ambient().class(i)).abs()).collect()
}

fn side_locus(s: &GradedSystem, wall: &WallCrossing, keep: &[usize], kill: &[usize]) -> Result<Locus, LinkError> {
    let eqs = killed(s, kill);
    let w = &wall.on_wall;
    let r = wall.ray;
    if w.len() == 1 {
        let mut point = vec![Rat::zero(); s.vars().len()];
        point[w[0]] = Rat::one();
        return fibre_locus(s, r, &eqs, w, &point, keep);
    }
    let mults: Vec<Option<i64>> = w.iter().map(|&i| s.ambient().class(i).multiple_of(r)).collect();
    if mults.iter().any(|m| *m != mults[0]) || mults[0].is_none() {
        return Ok(Locus::Unsupported("wall variables of different degrees".into()));
    }
    if keep.len() == 2 {
        // coefficients of the monomials in the two side variables
        let mut coeffs: BTreeMap<(usize, Vec<u32>), Poly> = BTreeMap::new();
        for (k, eq) in eqs.iter().enumerate() {
            for (e, c) in eq.terms() {
                let key: Vec<u32> = keep.iter().map(|&i| e[i]).collect();
                let mut rest = e.clone();
                for &i in keep {
                    rest[i] = 0;
                }
                let entry = coeffs.entry((k, key)).or_insert_with(|| Poly::zero(eq.vars().clone()));
                *entry = &*entry + &Poly::monomial(eq.vars().clone(), rest, c.clone());
            }
        }
        let j: Vec<Poly> = coeffs.values().map(|p| restrict_to(p, w)).collect();
        return Ok(match projective_points(&j, w.len())? {
            PointSet::Empty => Locus::Trivial,
            PointSet::Finite { count, reduced } => Locus::Curves(CurveCount { points: count, curves: count, reduced }),
            PointSet::Positive(d) => Locus::PositiveDim(d + 1),
        });
    }
    // image of the locus in the wall's projective space
    let mut vars: Vec<usize> = keep.to_vec();
    vars.extend(w.iter().copied());
    let local: Vec<Poly> = eqs.iter().map(|p| restrict_to(p, &vars)).collect();
    let cone = cone_dimension(&local, vars.len())?;
    if cone <= 2 {
        return Ok(Locus::Trivial);
    }
    if cone > 3 {
        return Ok(Locus::PositiveDim(cone - 2));
    }
    let order = MonomialOrder { kind: OrderKind::Lex, perm: (0..vars.len()).collect() };
    let gb = match crate::poly::groebner_basis(&local, &order, GroebnerCaps::default()) {
        Ok(gb) => gb,
        Err(e) => return Ok(Locus::Unsupported(format!("image of the locus: {}", e))),
    };
    let image: Vec<Poly> = gb
        .iter()
        .filter(|p| (0..keep.len()).all(|i| !p.contains_var(i)))
        .map(|p| restrict_to(p, &(keep.len()..vars.len()).collect::<Vec<_>>()))
        .collect();
    let (count, reduced) = match projective_points(&image, w.len())? {
        PointSet::Finite { count, reduced } => (count, reduced),
        PointSet::Empty => return Ok(Locus::Trivial),
        // a curve mapping finitely onto its image is not contracted
        PointSet::Positive(_) => return Ok(Locus::Trivial),
    };
    let mut curves = 0;
    let mut found = 0;
    for p in candidate_points(&image, w.len()) {
        let mut point = vec![Rat::zero(); s.vars().len()];
        for (k, &i) in w.iter().enumerate() {
            point[i] = p[k].clone();
        }
        if let Locus::Curves(c) = fibre_locus(s, r, &eqs, w, &point, keep)? {
            curves += c.curves;
            found += 1;
        }
    }
    // irrational points of the image: one curve each
    curves += count.saturating_sub(found);
    Ok(Locus::Curves(CurveCount { points: count, curves, reduced }))
}

/// Rational points of a finite subscheme of `P^(n-1)`: roots of a binary
/// form, or coordinate points.
fn candidate_points(image: &[Poly], n: usize) -> Vec<Vec<Rat>> {
    if n == 2 {
        if let Some(f) = image.iter().min_by_key(|p| p.total_degree()) {
            return rational_points_binary(f, 0, 1).into_iter().map(|(x, y)| vec![x, y]).collect();
        }
    }
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect::<Vec<Rat>>())
        .filter(|p| image.iter().all(|f| eval_all(f, p).is_zero()))
        .collect()
}

fn eval_all(f: &Poly, p: &[Rat]) -> Rat {
    (0..p.len()).fold(f.clone(), |q, i| q.eval_var(i, &p[i])).constant_term()
}

/// Curves in the fibre of the near or far locus over a point of the wall.
fn fibre_locus(
    s: &GradedSystem,
    r: Ray,
    eqs: &[Poly],
    w: &[usize],
    point: &[Rat],
    keep: &[usize],
) -> Result<Locus, LinkError> {
    let mut fibre: Vec<Poly> = eqs.iter().map(|p| w.iter().fold(p.clone(), |q, &i| q.eval_var(i, &point[i]))).collect();
    fibre.retain(|p| !p.is_zero());
    if fibre.iter().any(|p| p.total_degree() == Some(0)) {
        return Ok(Locus::Trivial);
    }
    let (rest, gone) = eliminate_linear(fibre, |v| keep.contains(&v));
    let remaining: Vec<usize> = keep.iter().copied().filter(|v| !gone.contains(v)).collect();
    if rest.iter().any(|p| p.total_degree() == Some(0)) {
        return Ok(Locus::Trivial);
    }
    let local: Vec<Poly> = rest.iter().map(|p| restrict_to(p, &remaining)).collect();
    let cone = cone_dimension(&local, remaining.len())?;
    if cone <= 1 {
        return Ok(Locus::Trivial);
    }
    if cone > 2 {
        return Ok(Locus::PositiveDim(cone - 1));
    }
    if local.is_empty() {
        return Ok(Locus::Curves(CurveCount { points: 1, curves: 1, reduced: true }));
    }
    let weights = weights_on(s, r, &remaining);
    if local.len() == 1 {
        let f = &local[0];
        let support = f.support_vars();
        if support.len() == 2 {
            let (total, distinct) = binary_roots(f, support[0], support[1], weights[support[0]], weights[support[1]]);
            return Ok(Locus::Curves(CurveCount { points: 1, curves: total, reduced: total == distinct }));
        }
        if support.len() == 1 {
            let k = f.degree_in(support[0]);
            return Ok(Locus::Curves(CurveCount { points: 1, curves: 1, reduced: k == 1 }));
        }
    }
    if weights.iter().all(|&x| x == weights[0]) {
        if let PointSet::Finite { count, reduced } = lines_through_vertex(&local)? {
            return Ok(Locus::Curves(CurveCount { points: 1, curves: count, reduced }));
        }
    }
    Ok(Locus::Unsupported("curve count for a fibre that is not a hypersurface".into()))
}

/// Treats a one-dimensional scheme in `P^m` cut out by equations in a subset
/// of the variables as a cone; counts the points of the base.
fn lines_through_vertex(local: &[Poly]) -> Result<PointSet, LinkError> {
    let n = local[0].nvars();
    let used: Vec<usize> = (0..n).filter(|&i| local.iter().any(|p| p.contains_var(i))).collect();
    if used.len() + 1 != n {
        return Ok(PointSet::Positive(0));
    }
    let gens: Vec<Poly> = local.iter().map(|p| restrict_to(p, &used)).collect();
    Ok(projective_points(&gens, used.len())?)
}

/// Local descriptors at the rational points of the wall image carrying
/// flipping curves.
fn descriptors(
    s: &GradedSystem,
    wall: &WallCrossing,
    far_positive: bool,
    flags: &mut Vec<String>,
) -> Result<Vec<Descriptor>, LinkError> {
    let r = wall.ray;
    let w = &wall.on_wall;
    let (keep, kill) = if far_positive { (&wall.far_side, &wall.near_side) } else { (&wall.near_side, &wall.far_side) };
    let eqs = killed(s, kill);
    let points: Vec<Vec<Rat>> = if w.len() == 1 {
        vec![vec![Rat::one()]]
    } else {
        let mut pts = Vec::new();
        let n = w.len();
        let mut cands: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        if n == 2 {
            for p in [(1, 1), (1, -1)] {
                cands.push(vec![Rat::from_integer(BigInt::from(p.0)), Rat::from_integer(BigInt::from(p.1))]);
            }
        }
        for p in cands {
            let mut point = vec![Rat::zero(); s.vars().len()];
            for (k, &i) in w.iter().enumerate() {
                point[i] = p[k].clone();
            }
            if matches!(fibre_locus(s, r, &eqs, w, &point, keep)?, Locus::Curves(_)) {
                pts.push(p);
            }
        }
        pts
    };
    let sign = if far_positive { 1 } else { -1 };
    let mut out = Vec::new();
    for p in points {
        match local_descriptor(s, r, w, &p, sign) {
            Some(d) => out.push(d),
            None => flags.push("no hypersurface descriptor at a flipping point".into()),
        }
    }
    Ok(out)
}

/// Weighted hypersurface model at a point of the wall: localize, then
/// eliminate variables solved by an equation with a unit coefficient.
fn local_descriptor(s: &GradedSystem, r: Ray, w: &[usize], p: &[Rat], sign: i64) -> Option<Descriptor> {
    let j = p.iter().position(|c| !c.is_zero())?;
    let n = s.vars().len();
    let vars = s.vars().clone();
    let scale = p[j].clone();
    let mut eqs: Vec<Poly> = s.equations().to_vec();
    for (k, &i) in w.iter().enumerate() {
        let value = &p[k] / &scale;
        eqs = eqs
            .iter()
            .map(|q| {
                if k == j {
                    q.eval_var(i, &Rat::one())
                } else {
                    q.substitute_var(i, &(&Poly::var(vars.clone(), i) + &Poly::constant(vars.clone(), value.clone())))
                }
            })
            .collect();
    }
    let lw: Vec<i64> = (0..n).map(|i| sign * r.det_class(&s.ambient().class(i))).collect();
    let zero_weight: Vec<usize> = (0..n).filter(|&i| lw[i] == 0 && i != w[j]).collect();
    let mut alive: Vec<usize> = (0..n).filter(|&i| i != w[j]).collect();
    eqs.retain(|q| !q.is_zero());
    loop {
        if eqs.iter().any(|q| q.total_degree() == Some(0)) {
            return None;
        }
        let Some((k, v, unit, rest)) = unit_pivot(&eqs, &alive, &zero_weight) else { break };
        eqs.remove(k);
        eqs = eqs.iter().map(|e| eliminate_with_unit(e, v, &unit, &rest)).filter(|q| !q.is_zero()).collect();
        alive.retain(|&x| x != v);
    }
    let mut weights: Vec<i64> = alive.iter().map(|&i| lw[i]).collect();
    let mut degrees: Vec<i64> = eqs
        .iter()
        .map(|q| {
            let (e, _) = q.terms().next().unwrap();
            e.iter().enumerate().map(|(i, &k)| k as i64 * lw[i]).sum()
        })
        .collect();
    weights.sort_by(|a, b| match (a.signum() >= 0, b.signum() >= 0) {
        (true, false) => std::cmp::Ordering::Less,
        (false, true) => std::cmp::Ordering::Greater,
        _ => b.abs().cmp(&a.abs()),
    });
    degrees.sort_unstable();
    Some(Descriptor { weights, degrees })
}

/// An equation `U*v + R` with `U` a unit in the weight-zero variables and
/// `v` absent from `R`.
fn unit_pivot(eqs: &[Poly], alive: &[usize], zero_weight: &[usize]) -> Option<(usize, usize, Poly, Poly)> {
    for (k, eq) in eqs.iter().enumerate() {
        for &v in alive.iter().rev() {
            if eq.degree_in(v) != 1 {
                continue;
            }
            let with_v = eq.filter(|e| e[v] > 0);
            let mut unit = Poly::zero(eq.vars().clone());
            let mut ok = true;
            for (e, c) in with_v.terms() {
                let mut e2 = e.clone();
                e2[v] -= 1;
                if e2.iter().enumerate().any(|(i, &x)| x > 0 && !zero_weight.contains(&i)) {
                    ok = false;
                    break;
                }
                unit = &unit + &Poly::monomial(eq.vars().clone(), e2, c.clone());
            }
            if ok && !unit.constant_term().is_zero() {
                return Some((k, v, unit, eq.filter(|e| e[v] == 0)));
            }
        }
    }
    None
}

/// `U^m * e(-R/U)` with `m` the degree of `e` in `v`.
fn eliminate_with_unit(e: &Poly, v: usize, unit: &Poly, rest: &Poly) -> Poly {
    let m = e.degree_in(v);
    let minus_rest = rest.scale(&-Rat::one());
    let mut out = Poly::zero(e.vars().clone());
    for k in 0..=m {
        let part = Poly::from_terms(
            e.vars().clone(),
            e.terms().filter(|(x, _)| x[v] == k).map(|(x, c)| {
                let mut x2 = x.clone();
                x2[v] = 0;
                (x2, c.clone())
            }),
        );
        if part.is_zero() {
            continue;
        }
        out = &out + &(&(&part * &minus_rest.pow(k)) * &unit.pow(m - k));
    }
    out
}

/// Weights `|det(c_w, c_v)| / g` of the target of a divisorial contraction
/// of `v`, and the equations with `v = 1`.
pub(crate) fn divisorial_endpoint(s: &GradedSystem, v: usize) -> Result<WpsCi, LinkError> {
    let a = s.ambient();
    let cv = a.class(v);
    let rv = cv.ray().ok_or_else(|| LinkError::Internal("exceptional class is zero".into()))?;
    let n = s.vars().len();
    let raw: Vec<i64> = (0..n).map(|i| if i == v { 0 } else { rv.det_class(&a.class(i)).abs() }).collect();
    let g = raw.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return Err(LinkError::Internal("degenerate divisorial target".into()));
    }
    let weights: Vec<i64> = raw.iter().map(|x| x / g).collect();
    let eqs: Vec<Poly> = s.equations().iter().map(|p| p.eval_var(v, &Rat::one())).collect();
    let keep: Vec<usize> = (0..n).filter(|&i| i != v).collect();
    Ok(endpoint_ci(s, eqs, &keep, &weights))
}

fn endpoint_ci(s: &GradedSystem, eqs: Vec<Poly>, keep: &[usize], weights: &[i64]) -> WpsCi {
    let (rest, gone) = eliminate_linear(eqs, |i| keep.contains(&i));
    let remaining: Vec<usize> = keep.iter().copied().filter(|i| !gone.contains(i)).collect();
    let degree = |p: &Poly| -> i64 {
        p.terms().next().map_or(0, |(e, _)| e.iter().enumerate().map(|(i, &k)| k as i64 * weights[i]).sum())
    };
    WpsCi {
        names: remaining.iter().map(|&i| s.vars()[i].clone()).collect(),
        weights: remaining.iter().map(|&i| weights[i]).collect(),
        degrees: rest.iter().map(degree).collect(),
        equations: rest.iter().map(|p| restrict_to(p, &remaining).to_string()).collect(),
    }
}

fn fibration_endpoint(s: &GradedSystem, r: Ray, base: &[usize]) -> Result<(WpsCi, FiberProfile), LinkError> {
    let a = s.ambient();
    let n = s.vars().len();
    let bw: Vec<i64> = (0..n).map(|i| if base.contains(&i) { a.class(i).multiple_of(r).unwrap_or(0) } else { 0 }).collect();
    let mut base_eqs = Vec::new();
    let mut fibre_eqs = Vec::new();
    for eq in s.equations() {
        if eq.support_vars().iter().all(|i| base.contains(i)) {
            base_eqs.push(eq.clone());
        } else {
            fibre_eqs.push(eq.clone());
        }
    }
    let base_ci = endpoint_ci(s, base_eqs, base, &bw);
    let fw: Vec<i64> = (0..n).map(|i| if base.contains(&i) { 0 } else { -r.det_class(&a.class(i)) }).collect();
    let mut fibre_vars: Vec<usize> = (0..n).filter(|i| !base.contains(i)).collect();
    // a fibre variable whose coefficient only involves the base is solved for
    // on the generic fibre
    loop {
        let mut hit = None;
        'search: for (k, eq) in fibre_eqs.iter().enumerate() {
            for &v in fibre_vars.iter().rev() {
                if eq.degree_in(v) != 1 {
                    continue;
                }
                let linear = eq.filter(|e| e[v] > 0);
                let coeff_in_base =
                    linear.terms().all(|(e, _)| e.iter().enumerate().all(|(i, &x)| x == 0 || i == v || base.contains(&i)));
                if coeff_in_base {
                    hit = Some((k, v));
                    break 'search;
                }
            }
        }
        let Some((k, v)) = hit else { break };
        fibre_eqs.remove(k);
        fibre_vars.retain(|&x| x != v);
    }
    let degrees: Vec<i64> = fibre_eqs.iter().map(|p| {
        let (e, _) = p.terms().next().unwrap();
        e.iter().enumerate().map(|(i, &k)| k as i64 * fw[i]).sum()
    }).collect();
    let fiber = WpsCi {
        names: fibre_vars.iter().map(|&i| s.vars()[i].clone()).collect(),
        weights: fibre_vars.iter().map(|&i| fw[i]).collect(),
        degrees,
        equations: Vec::new(),
    };
    let kind = fiber_kind(&fiber);
    Ok((base_ci, FiberProfile { fiber, kind }))
}

fn fiber_kind(f: &WpsCi) -> FiberKind {
    let dim = f.dimension();
    if dim == 1 && f.weights.len() == 3 && f.weights.iter().all(|&w| w == 1) && f.degrees == [2] {
        return FiberKind::Conic;
    }
    if dim == 2 {
        let index: i64 = f.weights.iter().sum::<i64>() - f.degrees.iter().sum::<i64>();
        if index > 0 {
            let num = Rat::from_integer(BigInt::from(index * index * f.degrees.iter().product::<i64>()));
            let k = num / Rat::from_integer(BigInt::from(f.weights.iter().product::<i64>()));
            if k.is_integer() {
                if let Ok(d) = i64::try_from(k.to_integer()) {
                    return FiberKind::DelPezzo { degree: d };
                }
            }
        }
    }
    FiberKind::Other
}
