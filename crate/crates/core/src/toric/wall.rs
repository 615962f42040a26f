//! Wall crossings of the ambient 2-ray game.

use super::{chamber_scan, DivClass, Ray, ToricAmbient, ToricError};
use num_integer::Integer;

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum WallKind {
    Divisorial { exceptional: usize },
    Small,
    Fibration { base: Vec<usize> },
}

/// Weighted projective space reached at a divisorial or fibration wall.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct WpsTarget {
    /// `(generator monomial as exponents over the ambient variables, degree)`.
    pub generators: Vec<(Vec<u32>, i64)>,
}

impl WpsTarget {
    pub fn weights(&self) -> Vec<i64> {
        let mut w: Vec<i64> = self.generators.iter().map(|g| g.1).collect();
        w.sort_unstable();
        w
    }

    pub fn generator_names(&self, names: &[String]) -> Vec<String> {
        self.generators
            .iter()
            .map(|(e, _)| {
                let parts: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{}", names[i], k) })
                    .collect();
                parts.join("*")
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct WallCrossing {
    pub ray: Ray,
    pub on_wall: Vec<usize>,
    pub near_side: Vec<usize>,
    pub far_side: Vec<usize>,
    pub kind: WallKind,
    /// The ray sent to `(±1, 0)` by `normalization`: the exceptional
    /// variable's ray at a divisorial wall, the wall itself otherwise.
    pub normalized_ray: Ray,
    pub normalization: [[i64; 2]; 2],
    pub target: Option<WpsTarget>,
}

/// Determinant-one matrix `M` with `M * r = (1, 0)`, via the extended
/// Euclidean algorithm with the smallest nonnegative first entry.
pub fn normalization(r: Ray) -> [[i64; 2]; 2] {
    let (p, q) = (r.p, r.q);
    if q == 0 {
        return [[p, 0], [0, p]];
    }
    let e = p.extended_gcd(&q);
    // s p + t q = 1
    let (mut s, mut t) = (e.x * e.gcd, e.y * e.gcd);
    let m = q.abs();
    let s0 = s.rem_euclid(m);
    let k = (s0 - s) / q;
    s = s0;
    t -= k * p;
    debug_assert_eq!(s * p + t * q, 1);
    [[s, t], [-q, p]]
}

pub fn apply(m: &[[i64; 2]; 2], c: DivClass) -> DivClass {
    DivClass::new(m[0][0] * c.e + m[0][1] * c.l, m[1][0] * c.e + m[1][1] * c.l)
}

/// Target of the contraction of `{v = 0}` at ray `r`: every other variable
/// `w` becomes a coordinate of weight `|det(c_w, c_v)| / g`, labelled
/// `w * v^k` when `c_w + k c_v` lies on `r` for an integer `k`.
fn divisorial_target(a: &ToricAmbient, v: usize, r: Ray) -> Option<WpsTarget> {
    let cv = a.class(v);
    let n = a.names().len();
    let rv = r.det_class(&cv);
    if rv == 0 {
        return None;
    }
    let mut raw = Vec::new();
    for w in 0..n {
        if w == v {
            continue;
        }
        let cw = a.class(w);
        let d = (cw.e * cv.l - cw.l * cv.e).abs();
        if d == 0 {
            return None;
        }
        // c_w + k c_v on r: k = -det(r, c_w) / det(r, c_v)
        let num = -r.det_class(&cw);
        let k = if num % rv == 0 && num / rv >= 0 { num / rv } else { 0 };
        let mut e = vec![0u32; n];
        e[w] = 1;
        e[v] += k as u32;
        raw.push((e, d));
    }
    let g = raw.iter().fold(0i64, |g, x| g.gcd(&x.1));
    let mut generators: Vec<(Vec<u32>, i64)> = raw.into_iter().map(|(e, d)| (e, d / g)).collect();
    generators.sort_by(|x, y| x.1.cmp(&y.1));
    Some(WpsTarget { generators })
}

fn fibration_target(a: &ToricAmbient, on_wall: &[usize], r: Ray) -> Option<WpsTarget> {
    let n = a.names().len();
    let mut generators = Vec::new();
    for &w in on_wall {
        let k = a.class(w).multiple_of(r)?;
        let mut e = vec![0u32; n];
        e[w] = 1;
        generators.push((e, k));
    }
    generators.sort_by(|x, y| x.1.cmp(&y.1));
    Some(WpsTarget { generators })
}

pub fn classify_wall(a: &ToricAmbient, r: Ray) -> Result<WallCrossing, ToricError> {
    let ch = chamber_scan(a);
    if !ch.walls.contains(&r) {
        return Err(ToricError::NotAWall(r));
    }
    let mut on_wall = Vec::new();
    let mut near_side = Vec::new();
    let mut far_side = Vec::new();
    for &i in a.sweep_order() {
        match a.side(&a.class(i), &r) {
            0 => on_wall.push(i),
            s if s < 0 => near_side.push(i),
            _ => far_side.push(i),
        }
    }
    let at_eff_boundary = r == ch.eff.a || r == ch.eff.b;
    let mov = ch.mov.expect("walls exist only inside a movable cone");
    let at_mov_boundary = r == mov.a || r == mov.b;
    let (kind, normalized_ray) = if at_eff_boundary {
        (WallKind::Fibration { base: on_wall.clone() }, r)
    } else if at_mov_boundary {
        let beyond = if r == mov.a { &near_side } else { &far_side };
        if beyond.len() != 1 {
            return Err(ToricError::NonSimpleWall(r));
        }
        let v = beyond[0];
        (WallKind::Divisorial { exceptional: v }, a.ray(v))
    } else {
        (WallKind::Small, r)
    };
    let normalization = normalization(normalized_ray);
    let target = match &kind {
        WallKind::Divisorial { exceptional } => divisorial_target(a, *exceptional, r),
        WallKind::Fibration { base } => fibration_target(a, base, r),
        WallKind::Small => None,
    };
    Ok(WallCrossing { ray: r, on_wall, near_side, far_side, kind, normalized_ray, normalization, target })
}

#[cfg(test)]
mod tests {
    use super::super::tests::ca6_case1;
    use super::*;

    #[test]
    fn euclid_representative() {
        assert_eq!(normalization(Ray { p: -5, q: 2 }), [[1, 3], [-2, -5]]);
        for (p, q) in [(-3, 2), (-2, 1), (0, 1), (1, 0), (-1, 0), (-7, 4), (5, -3)] {
            let m = normalization(Ray { p, q });
            assert_eq!(m[0][0] * m[1][1] - m[0][1] * m[1][0], 1);
            assert_eq!(apply(&m, DivClass::new(p, q)), DivClass::new(1, 0));
        }
    }

    #[test]
    fn ca6_walls() {
        let a = ca6_case1();
        let small = classify_wall(&a, Ray { p: -1, q: 1 }).unwrap();
        assert_eq!(small.kind, WallKind::Small);
        assert_eq!(small.on_wall, vec![2, 3]);
        let far = classify_wall(&a, Ray { p: -2, q: 1 }).unwrap();
        assert_eq!(far.kind, WallKind::Divisorial { exceptional: 6 });
        assert_eq!(far.normalization, [[1, 3], [-2, -5]]);
        let t = far.target.unwrap();
        assert_eq!(t.weights(), vec![1, 1, 2, 3, 3, 5]);
        let names = a.names().to_vec();
        assert_eq!(t.generator_names(&names), vec!["x1", "x2", "u*a", "x3*a", "x4*a", "x0*a^2"]);
        let near = classify_wall(&a, Ray { p: 0, q: 1 }).unwrap();
        assert_eq!(near.kind, WallKind::Divisorial { exceptional: 0 });
        assert_eq!(near.target.unwrap().weights(), vec![1, 1, 1, 1, 1, 2]);
    }

    #[test]
    fn fibration_wall() {
        let a = ToricAmbient::from_rows(
            &["u", "x0", "x3", "x4", "x1", "x2", "a", "b"],
            &[vec![1, 0, -1, -1, -2, -2, -4, -4], vec![0, 1, 1, 1, 1, 1, 2, 2]],
            &["u", "x0"],
            &["x3", "x4", "x1", "x2", "a", "b"],
        )
        .unwrap();
        let w = classify_wall(&a, Ray { p: -2, q: 1 }).unwrap();
        assert_eq!(w.kind, WallKind::Fibration { base: vec![4, 5, 6, 7] });
        assert_eq!(w.target.unwrap().weights(), vec![1, 1, 2, 2]);
    }
}
