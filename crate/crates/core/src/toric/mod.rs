//! Rank-2 toric ambients: classes, rays, cones and the chamber scan.

mod wall;

pub use wall::{apply, classify_wall, normalization, WallCrossing, WallKind, WpsTarget};

use num_integer::Integer;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("variable `{0}` has zero class")]
    ZeroColumn(String),
    #[error("all columns lie on one ray")]
    Degenerate,
    #[error("columns do not fit in an open half-plane")]
    NotHalfPlane,
    #[error("irrelevant split invalid: {0}")]
    Split(String),
    #[error("unknown variable `{0}`")]
    UnknownVar(String),
    #[error("non-simple wall at {0}: several variables beyond it")]
    NonSimpleWall(Ray),
    #[error("{0} is not a wall of the ambient")]
    NotAWall(Ray),
    #[error("matrix has {0} rows, expected 2")]
    Rows(usize),
    #[error("ambient JSON: missing or malformed `{0}`")]
    Json(String),
}

/// A divisor class `e*E + l*L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct DivClass {
    pub e: i64,
    pub l: i64,
}

impl DivClass {
    pub const fn new(e: i64, l: i64) -> Self {
        DivClass { e, l }
    }

    pub fn is_zero(&self) -> bool {
        self.e == 0 && self.l == 0
    }

    pub fn scale(&self, k: i64) -> Self {
        DivClass::new(self.e * k, self.l * k)
    }

    pub fn ray(&self) -> Option<Ray> {
        Ray::new(self.e, self.l)
    }

    /// `k` with `self = k * r`, if any.
    pub fn multiple_of(&self, r: Ray) -> Option<i64> {
        if det(self.e, self.l, r.p, r.q) != 0 {
            return None;
        }
        if r.p != 0 {
            (self.e % r.p == 0).then(|| self.e / r.p)
        } else {
            (self.l % r.q == 0).then(|| self.l / r.q)
        }
    }
}

impl Add for DivClass {
    type Output = DivClass;
    fn add(self, o: DivClass) -> DivClass {
        DivClass::new(self.e + o.e, self.l + o.l)
    }
}

impl Sub for DivClass {
    type Output = DivClass;
    fn sub(self, o: DivClass) -> DivClass {
        DivClass::new(self.e - o.e, self.l - o.l)
    }
}

impl Neg for DivClass {
    type Output = DivClass;
    fn neg(self) -> DivClass {
        DivClass::new(-self.e, -self.l)
    }
}

impl fmt::Display for DivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.e, self.l)
    }
}

pub(crate) fn det(a: i64, b: i64, c: i64, d: i64) -> i64 {
    a * d - b * c
}

/// Primitive nonzero integer vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Ray {
    pub p: i64,
    pub q: i64,
}

impl Ray {
    pub fn new(p: i64, q: i64) -> Option<Ray> {
        if p == 0 && q == 0 {
            return None;
        }
        let g = p.gcd(&q);
        Some(Ray { p: p / g, q: q / g })
    }

    pub fn det(&self, o: &Ray) -> i64 {
        det(self.p, self.q, o.p, o.q)
    }

    pub fn det_class(&self, c: &DivClass) -> i64 {
        det(self.p, self.q, c.e, c.l)
    }

    /// Counterclockwise order; meaningful for rays within a half-plane.
    pub fn sweep_cmp(&self, o: &Ray) -> Ordering {
        0.cmp(&self.det(o))
    }

    pub fn as_class(&self) -> DivClass {
        DivClass::new(self.p, self.q)
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Closed cone spanned by two rays, `a` before `b` in sweep order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Cone {
    pub a: Ray,
    pub b: Ray,
}

impl Cone {
    pub fn contains(&self, c: &DivClass) -> bool {
        self.a.det_class(c) >= 0 && -self.b.det_class(c) >= 0 && !c.is_zero()
    }

    pub fn contains_interior(&self, c: &DivClass) -> bool {
        self.a.det_class(c) > 0 && -self.b.det_class(c) > 0
    }

    pub fn contains_ray(&self, r: &Ray) -> bool {
        self.contains(&r.as_class())
    }

    pub fn contains_cone(&self, o: &Cone) -> bool {
        self.contains_ray(&o.a) && self.contains_ray(&o.b)
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.a, self.b)
    }
}

/// A rank-2 toric variety given by its grading matrix and irrelevant split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricAmbient {
    names: Vec<String>,
    classes: Vec<DivClass>,
    first: Vec<usize>,
    second: Vec<usize>,
    /// Variable indices in sweep order.
    order: Vec<usize>,
}

impl ToricAmbient {
    pub fn new(
        names: Vec<String>,
        classes: Vec<DivClass>,
        first: &[&str],
        second: &[&str],
    ) -> Result<Self, ToricError> {
        let idx = |s: &str| names.iter().position(|n| n == s).ok_or_else(|| ToricError::UnknownVar(s.to_string()));
        let first: Vec<usize> = first.iter().map(|s| idx(s)).collect::<Result<_, _>>()?;
        let second: Vec<usize> = second.iter().map(|s| idx(s)).collect::<Result<_, _>>()?;
        Self::from_indices(names, classes, first, second)
    }

    pub fn from_rows(
        names: &[&str],
        rows: &[Vec<i64>],
        first: &[&str],
        second: &[&str],
    ) -> Result<Self, ToricError> {
        if rows.len() != 2 {
            return Err(ToricError::Rows(rows.len()));
        }
        let classes = (0..names.len()).map(|i| DivClass::new(rows[0][i], rows[1][i])).collect();
        Self::new(names.iter().map(|s| s.to_string()).collect(), classes, first, second)
    }

    pub(crate) fn from_indices(
        names: Vec<String>,
        classes: Vec<DivClass>,
        first: Vec<usize>,
        second: Vec<usize>,
    ) -> Result<Self, ToricError> {
        for (n, c) in names.iter().zip(&classes) {
            if c.is_zero() {
                return Err(ToricError::ZeroColumn(n.clone()));
            }
        }
        let mut all: Vec<usize> = first.iter().chain(&second).copied().collect();
        all.sort_unstable();
        all.dedup();
        if first.is_empty() || second.is_empty() {
            return Err(ToricError::Split("both sets must be nonempty".into()));
        }
        if all.len() != first.len() + second.len() || all.len() != names.len() {
            return Err(ToricError::Split("sets must partition the variables".into()));
        }
        let rays: Vec<Ray> = classes.iter().map(|c| c.ray().unwrap()).collect();
        if rays.iter().all(|r| *r == rays[0]) {
            return Err(ToricError::Degenerate);
        }
        // start ray: every other ray is weakly counterclockwise from it
        let start = rays
            .iter()
            .find(|s| rays.iter().all(|r| s.det(r) > 0 || *r == **s))
            .copied()
            .ok_or(ToricError::NotHalfPlane)?;
        let mut order: Vec<usize> = (0..names.len()).collect();
        order.sort_by(|&i, &j| {
            let (a, b) = (rays[i], rays[j]);
            if a == b {
                return i.cmp(&j);
            }
            if a == start {
                return Ordering::Less;
            }
            if b == start {
                return Ordering::Greater;
            }
            a.sweep_cmp(&b)
        });
        let pos = |i: usize| order.iter().position(|&k| k == i).unwrap();
        let last_first = first.iter().map(|&i| pos(i)).max().unwrap();
        let first_second = second.iter().map(|&i| pos(i)).min().unwrap();
        if last_first > first_second || rays[order[last_first]] == rays[order[first_second]] {
            return Err(ToricError::Split("first set must precede the second in sweep order".into()));
        }
        Ok(ToricAmbient { names, classes, first, second, order })
    }

    /// `{"vars":[{"name":"u","class":[1,0]},...], "irrelevant":[[...],[...]]}`
    pub fn to_json(&self) -> serde_json::Value {
        let vars: Vec<serde_json::Value> = self
            .names
            .iter()
            .zip(&self.classes)
            .map(|(n, c)| serde_json::json!({"name": n, "class": [c.e, c.l]}))
            .collect();
        let set = |v: &[usize]| v.iter().map(|&i| self.names[i].clone()).collect::<Vec<_>>();
        serde_json::json!({"vars": vars, "irrelevant": [set(&self.first), set(&self.second)]})
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, ToricError> {
        let bad = |what: &str| ToricError::Json(what.to_string());
        let vars = v.get("vars").and_then(|x| x.as_array()).ok_or_else(|| bad("vars"))?;
        let mut names = Vec::new();
        let mut classes = Vec::new();
        for e in vars {
            let name = e.get("name").and_then(|x| x.as_str()).ok_or_else(|| bad("vars[].name"))?;
            let c = e.get("class").and_then(|x| x.as_array()).ok_or_else(|| bad("vars[].class"))?;
            let c: Vec<i64> = c.iter().map(|x| x.as_i64().ok_or_else(|| bad("vars[].class"))).collect::<Result<_, _>>()?;
            if c.len() != 2 {
                return Err(bad("vars[].class"));
            }
            names.push(name.to_string());
            classes.push(DivClass::new(c[0], c[1]));
        }
        let irr = v.get("irrelevant").and_then(|x| x.as_array()).ok_or_else(|| bad("irrelevant"))?;
        if irr.len() != 2 {
            return Err(bad("irrelevant"));
        }
        let mut sets: Vec<Vec<&str>> = Vec::new();
        for s in irr {
            let s = s.as_array().ok_or_else(|| bad("irrelevant"))?;
            sets.push(s.iter().map(|x| x.as_str().ok_or_else(|| bad("irrelevant"))).collect::<Result<_, _>>()?);
        }
        Self::new(names, classes, &sets[0], &sets[1])
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn classes(&self) -> &[DivClass] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> DivClass {
        self.classes[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn class_of(&self, name: &str) -> Option<DivClass> {
        self.index(name).map(|i| self.classes[i])
    }

    pub fn ray(&self, i: usize) -> Ray {
        self.classes[i].ray().unwrap()
    }

    pub fn first_set(&self) -> &[usize] {
        &self.first
    }

    pub fn second_set(&self) -> &[usize] {
        &self.second
    }

    /// Variable indices sorted by sweep position.
    pub fn sweep_order(&self) -> &[usize] {
        &self.order
    }

    /// `-1`, `0` or `1`: the class lies before, on, or after ray `r`.
    pub fn side(&self, c: &DivClass, r: &Ray) -> i64 {
        r.det_class(c).signum()
    }

    /// Same ambient with a variable appended to the second set.
    pub fn with_var(&self, name: &str, class: DivClass) -> Result<Self, ToricError> {
        let mut names = self.names.clone();
        let mut classes = self.classes.clone();
        names.push(name.to_string());
        classes.push(class);
        let mut second = self.second.clone();
        second.push(names.len() - 1);
        Self::from_indices(names, classes, self.first.clone(), second)
    }

    /// Same ambient with a variable removed.
    pub fn without_var(&self, i: usize) -> Result<Self, ToricError> {
        let mut names = self.names.clone();
        let mut classes = self.classes.clone();
        names.remove(i);
        classes.remove(i);
        let shift = |v: &Vec<usize>| v.iter().filter(|&&k| k != i).map(|&k| if k > i { k - 1 } else { k }).collect();
        Self::from_indices(names, classes, shift(&self.first), shift(&self.second))
    }

    /// Applies an integer change of basis to every class.
    pub fn transformed(&self, m: [[i64; 2]; 2]) -> Result<Self, ToricError> {
        let classes = self
            .classes
            .iter()
            .map(|c| DivClass::new(m[0][0] * c.e + m[0][1] * c.l, m[1][0] * c.e + m[1][1] * c.l))
            .collect();
        Self::from_indices(self.names.clone(), classes, self.first.clone(), self.second.clone())
    }
}

/// Chamber data of a rank-2 ambient.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Chambers {
    pub eff: Cone,
    /// `None` when the movable cone is just the origin.
    pub mov: Option<Cone>,
    /// Distinct column rays inside the closed movable cone, in sweep order.
    pub walls: Vec<Ray>,
    pub initial_nef: Cone,
}

pub fn chamber_scan(a: &ToricAmbient) -> Chambers {
    let rays: Vec<Ray> = a.order.iter().map(|&i| a.ray(i)).collect();
    let n = rays.len();
    let eff = Cone { a: rays[0], b: rays[n - 1] };
    // dropping any one column: the cone keeps the second ray from each end
    let mov = (n >= 3 && rays[1].det(&rays[n - 2]) >= 0).then(|| Cone { a: rays[1], b: rays[n - 2] });
    let mut walls: Vec<Ray> = Vec::new();
    for r in &rays {
        if mov.map_or(false, |m| m.contains_ray(r)) && !walls.contains(r) {
            walls.push(*r);
        }
    }
    let last_first = a.first.iter().map(|&i| a.ray(i)).max_by(|x, y| x.sweep_cmp(y)).unwrap();
    let next = rays.iter().copied().find(|r| last_first.det(r) > 0).unwrap_or(last_first);
    Chambers { eff, mov, walls, initial_nef: Cone { a: last_first, b: next } }
}

pub fn canonical_class(a: &ToricAmbient) -> DivClass {
    -a.classes.iter().fold(DivClass::new(0, 0), |acc, c| acc + *c)
}

/// Canonical class of a complete intersection of the given classes.
pub fn adjunction(a: &ToricAmbient, hypersurfaces: &[DivClass]) -> DivClass {
    hypersurfaces.iter().fold(canonical_class(a), |acc, c| acc + *c)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn ca6_case1() -> ToricAmbient {
        ToricAmbient::from_rows(
            &["u", "x0", "x3", "x4", "x1", "x2", "a"],
            &[vec![1, 0, -1, -1, -2, -2, -5], vec![0, 1, 1, 1, 1, 1, 2]],
            &["u", "x0"],
            &["x3", "x4", "x1", "x2", "a"],
        )
        .unwrap()
    }

    #[test]
    fn cones_of_ca6() {
        let a = ca6_case1();
        let ch = chamber_scan(&a);
        assert_eq!(ch.eff, Cone { a: Ray { p: 1, q: 0 }, b: Ray { p: -5, q: 2 } });
        let mov = ch.mov.unwrap();
        assert_eq!(mov, Cone { a: Ray { p: 0, q: 1 }, b: Ray { p: -2, q: 1 } });
        assert_eq!(ch.walls.len(), 3);
        assert_eq!(ch.initial_nef, Cone { a: Ray { p: 0, q: 1 }, b: Ray { p: -1, q: 1 } });
        assert!(mov.contains_cone(&ch.initial_nef) && ch.eff.contains_cone(&mov));
        assert_eq!(canonical_class(&a), DivClass::new(10, -7));
    }

    #[test]
    fn toy_quadrant() {
        let a = ToricAmbient::from_rows(&["u", "v", "x", "y"], &[vec![1, 1, 0, 0], vec![0, 0, 1, 1]], &["u", "v"], &["x", "y"])
            .unwrap();
        let ch = chamber_scan(&a);
        assert_eq!(Some(ch.eff), ch.mov);
        let b = ToricAmbient::from_rows(&["u", "x"], &[vec![1, 0], vec![0, 1]], &["u"], &["x"]).unwrap();
        assert_eq!(chamber_scan(&b).mov, None);
        assert_eq!(canonical_class(&b), DivClass::new(-1, -1));
    }

    #[test]
    fn rejects_bad_input() {
        let z = ToricAmbient::from_rows(&["u", "x", "y"], &[vec![1, 0, 0], vec![0, 1, 0]], &["u"], &["x", "y"]);
        assert_eq!(z, Err(ToricError::ZeroColumn("y".into())));
        let d = ToricAmbient::from_rows(&["u", "x", "y"], &[vec![1, 2, 3], vec![1, 2, 3]], &["u"], &["x", "y"]);
        assert_eq!(d, Err(ToricError::Degenerate));
    }

    #[test]
    fn adjunction_for_ca6() {
        let a = ToricAmbient::from_rows(
            &["u", "x0", "x3", "x4", "b", "x1", "x2", "a"],
            &[vec![1, 0, -1, -1, -2, -2, -2, -5], vec![0, 1, 1, 1, 2, 1, 1, 2]],
            &["u", "x0"],
            &["x3", "x4", "b", "x1", "x2", "a"],
        )
        .unwrap();
        let k = adjunction(&a, &[DivClass::new(-2, 2), DivClass::new(-2, 2), DivClass::new(-7, 4)]);
        assert_eq!(canonical_class(&a), DivClass::new(12, -9));
        assert_eq!(-k, DivClass::new(-1, 1));
        assert_eq!(adjunction(&a, &[]), canonical_class(&a));
    }
}
