//! Dimension and point counts for the loci contracted at a wall.

use crate::poly::{
    groebner_basis, hilbert_function, leading_monomials, Exponent, GroebnerCaps, GroebnerError, MonomialOrder, Poly,
    Rat, Vars,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Contracted curves over the points of the wall image.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CurveCount {
    /// Points of the wall image carrying contracted curves.
    pub points: u64,
    /// Curves, counted with multiplicity.
    pub curves: u64,
    /// Whether every point and curve is reduced.
    pub reduced: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Locus {
    /// No positive-dimensional piece.
    Trivial,
    Curves(CurveCount),
    /// Projective dimension of the contracted locus.
    PositiveDim(usize),
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum PointSet {
    Empty,
    Finite { count: u64, reduced: bool },
    /// Projective dimension.
    Positive(usize),
}

/// Largest set of variables containing the support of no generator.
pub(crate) fn monomial_dimension(leads: &[Exponent], n: usize) -> usize {
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let free = |i: usize| mask & (1 << i) != 0;
        if leads.iter().all(|m| m.iter().enumerate().any(|(i, &k)| k > 0 && !free(i))) {
            best = size;
        }
    }
    best
}

/// Krull dimension of `Q[x]/(gens)`.
pub(crate) fn cone_dimension(gens: &[Poly], n: usize) -> Result<usize, GroebnerError> {
    let gens: Vec<Poly> = gens.iter().filter(|p| !p.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Ok(n);
    }
    if gens.iter().any(|p| p.len() == 1 && p.terms().all(|(e, _)| e.iter().all(|&k| k == 0))) {
        return Ok(0);
    }
    let order = MonomialOrder::grlex(n);
    let gb = groebner_basis(&gens, &order, GroebnerCaps::default())?;
    Ok(monomial_dimension(&leading_monomials(&gb, &order), n))
}

/// Sub-polynomial over the listed variables; the others must be absent.
pub(crate) fn restrict_to(p: &Poly, keep: &[usize]) -> Poly {
    let names: Vec<String> = keep.iter().map(|&i| p.vars()[i].clone()).collect();
    let vars: Vars = names.into();
    p.embed(&vars).expect("polynomial uses a dropped variable")
}

fn det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut out = Poly::zero(m[0][0].vars().clone());
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect()).collect();
        let term = &m[0][c] * &det(&minor);
        out = if c % 2 == 0 { &out + &term } else { &out - &term };
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Points of the projective scheme cut out by homogeneous `gens` in the
/// standard grading, counted with multiplicity.
pub(crate) fn projective_points(gens: &[Poly], n: usize) -> Result<PointSet, GroebnerError> {
    let gens: Vec<Poly> = gens.iter().filter(|p| !p.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Ok(PointSet::Positive(n.saturating_sub(1)));
    }
    let order = MonomialOrder::grlex(n);
    let gb = groebner_basis(&gens, &order, GroebnerCaps::default())?;
    let leads = leading_monomials(&gb, &order);
    let dim = monomial_dimension(&leads, n);
    if dim == 0 {
        return Ok(PointSet::Empty);
    }
    if dim > 1 {
        return Ok(PointSet::Positive(dim - 1));
    }
    let top = leads.iter().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0);
    let mut d = top;
    let mut count = hilbert_function(&leads, n, d);
    loop {
        let next = hilbert_function(&leads, n, d + 1);
        if next == count && hilbert_function(&leads, n, d + 2) == count {
            break;
        }
        count = next;
        d += 1;
        if d > top + 200 {
            return Err(GroebnerError::CapExceeded("Hilbert function does not stabilize".into()));
        }
    }
    // reduced iff no point where the Jacobian drops rank
    let k = n - 1;
    let mut sing = gens.clone();
    if k == 0 {
        return Ok(PointSet::Finite { count, reduced: count <= 1 });
    }
    let jac: Vec<Vec<Poly>> = gens.iter().map(|g| (0..n).map(|i| g.derivative(i)).collect()).collect();
    for rows in subsets(gens.len(), k) {
        for cols in subsets(n, k) {
            let m: Vec<Vec<Poly>> = rows.iter().map(|&r| cols.iter().map(|&c| jac[r][c].clone()).collect()).collect();
            let d = det(&m);
            if !d.is_zero() {
                sing.push(d);
            }
        }
    }
    let reduced = cone_dimension(&sing, n)? == 0;
    Ok(PointSet::Finite { count, reduced })
}

/// Univariate polynomial, coefficients from degree 0 upwards.
type Uni = Vec<Rat>;

fn trim(mut a: Uni) -> Uni {
    while a.last().map_or(false, |c| c.is_zero()) {
        a.pop();
    }
    a
}

fn uni_rem(a: &Uni, b: &Uni) -> Uni {
    let mut r = trim(a.clone());
    let b = trim(b.clone());
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let f = r.last().unwrap() / &lb;
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        r = trim(r);
    }
    r
}

fn uni_gcd(a: &Uni, b: &Uni) -> Uni {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = uni_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn uni_derivative(a: &Uni) -> Uni {
    trim(a.iter().enumerate().skip(1).map(|(i, c)| c * Rat::from_integer(BigInt::from(i))).collect())
}

fn uni_degree(a: &Uni) -> usize {
    trim(a.clone()).len().saturating_sub(1)
}

fn uni_eval(a: &Uni, x: &Rat) -> Rat {
    a.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
}

/// Binary form `f` in variables `x, y` of weights `wx, wy`, as a polynomial
/// in `z = y^(wx/g) / x^(wy/g)` after removing `x^i0 y^j0`.
struct BinaryForm {
    h: Uni,
    i0: u32,
    j0: u32,
}

fn binary_form(f: &Poly, x: usize, y: usize, wx: i64, wy: i64) -> BinaryForm {
    let g = wx.gcd(&wy);
    let step = (wx / g) as u32;
    let i0 = f.terms().map(|(e, _)| e[x]).min().unwrap_or(0);
    let j0 = f.terms().map(|(e, _)| e[y]).min().unwrap_or(0);
    let mut h: Uni = Vec::new();
    for (e, c) in f.terms() {
        let k = ((e[y] - j0) / step) as usize;
        if h.len() <= k {
            h.resize(k + 1, Rat::zero());
        }
        h[k] += c;
    }
    BinaryForm { h: trim(h), i0, j0 }
}

/// Points of `{f = 0}` in `P(wx, wy)`: `(with multiplicity, distinct)`.
pub(crate) fn binary_roots(f: &Poly, x: usize, y: usize, wx: i64, wy: i64) -> (u64, u64) {
    let b = binary_form(f, x, y, wx, wy);
    let deg = uni_degree(&b.h) as u64;
    let sqfree = {
        let g = uni_gcd(&b.h, &uni_derivative(&b.h));
        deg - uni_degree(&g) as u64
    };
    let g = wx.gcd(&wy);
    let mult = |k: u32, w: i64| -> u64 {
        if k == 0 {
            0
        } else {
            ((k as i64 * g / w).max(1)) as u64
        }
    };
    let (mx, my) = (mult(b.i0, wy), mult(b.j0, wx));
    let total = deg + mx + my;
    let distinct = sqfree + (mx > 0) as u64 + (my > 0) as u64;
    (total, distinct)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let Some(small) = n.to_u64() else {
        return vec![BigInt::one()];
    };
    if small == 0 {
        return vec![BigInt::one()];
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= small {
        if small % d == 0 {
            out.push(BigInt::from(d));
            if d * d != small {
                out.push(BigInt::from(small / d));
            }
        }
        d += 1;
        if d > 1_000_000 {
            break;
        }
    }
    out
}

/// Rational points of `{f = 0}` in `P^1` for a form in two variables of
/// equal weight, as `(x, y)` pairs.
pub(crate) fn rational_points_binary(f: &Poly, x: usize, y: usize) -> Vec<(Rat, Rat)> {
    let b = binary_form(f, x, y, 1, 1);
    let mut pts = Vec::new();
    if b.i0 > 0 {
        pts.push((Rat::zero(), Rat::one()));
    }
    if b.j0 > 0 {
        pts.push((Rat::one(), Rat::zero()));
    }
    // clear denominators of h(z), z = y/x
    let h = &b.h;
    if h.len() < 2 {
        return pts;
    }
    let lcm = h.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = h.iter().map(|c| (c * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let c0 = ints.iter().find(|c| !c.is_zero()).unwrap().clone();
    let lead = ints.last().unwrap().clone();
    for p in divisors(&c0) {
        for q in divisors(&lead) {
            for sign in [1, -1] {
                let z = Rat::new(&p * sign, q.clone());
                if !z.is_zero() && uni_eval(h, &z).is_zero() && !pts.contains(&(Rat::one(), z.clone())) {
                    pts.push((Rat::one(), z));
                }
            }
        }
    }
    pts
}

/// Repeatedly solves an equation `c*v + rest` (`v` absent from `rest`, `c`
/// a nonzero constant) for an allowed variable and substitutes. Returns the
/// remaining equations and the eliminated variables.
pub(crate) fn eliminate_linear(mut eqs: Vec<Poly>, allowed: impl Fn(usize) -> bool) -> (Vec<Poly>, Vec<usize>) {
    let mut gone = Vec::new();
    loop {
        eqs.retain(|p| !p.is_zero());
        let Some((k, v, solved)) = super::find_linear_pivot(&eqs, |v| allowed(v) && !gone.contains(&v)) else {
            return (eqs, gone);
        };
        eqs.remove(k);
        eqs = eqs.iter().map(|p| p.substitute_var(v, &solved)).collect();
        gone.push(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, vars};

    #[test]
    fn twelve_points() {
        let v = vars(&["x", "y", "z"]);
        let f = parse_poly("x^4 + y^4 - z^4", &v).unwrap();
        let g = parse_poly("x^3 + y^3 + z^3 + x*y*z", &v).unwrap();
        assert_eq!(projective_points(&[f, g], 3).unwrap(), PointSet::Finite { count: 12, reduced: true });
    }

    #[test]
    fn non_reduced_and_curves() {
        let v = vars(&["x", "y", "z"]);
        let f = parse_poly("x^2", &v).unwrap();
        let g = parse_poly("y", &v).unwrap();
        assert_eq!(projective_points(&[f.clone(), g], 3).unwrap(), PointSet::Finite { count: 2, reduced: false });
        assert_eq!(projective_points(&[f], 3).unwrap(), PointSet::Positive(1));
    }

    #[test]
    fn binary_forms() {
        let v = vars(&["x", "y"]);
        let f = parse_poly("x^4 + y^4", &v).unwrap();
        assert_eq!(binary_roots(&f, 0, 1, 1, 1), (4, 4));
        let g = parse_poly("x^2*y^3 - x^3*y^2", &v).unwrap();
        assert_eq!(binary_roots(&g, 0, 1, 1, 1), (5, 3));
        let pts = rational_points_binary(&parse_poly("x*y", &v).unwrap(), 0, 1);
        assert_eq!(pts.len(), 2);
        let pts = rational_points_binary(&parse_poly("2*x^2 - 3*x*y + y^2", &v).unwrap(), 0, 1);
        assert_eq!(pts.len(), 2);
    }

    #[test]
    fn dimension_of_monomial_ideals() {
        assert_eq!(monomial_dimension(&[vec![1, 0, 0]], 3), 2);
        assert_eq!(monomial_dimension(&[vec![1, 1, 0]], 3), 2);
        assert_eq!(monomial_dimension(&[vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 3]], 3), 0);
    }
}
