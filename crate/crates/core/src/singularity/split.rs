//! Splitting lemma by iterated completion of the square.

use super::SingularityError;
use crate::poly::{vars, Poly, Rat, Substitution};
use num_traits::Zero;

/// Result of splitting off the nondegenerate quadratic part.
///
/// `substitution` satisfies `g(substitution) = sum over split variables of
/// x_i^2 * unit_i + residual` modulo terms of degree above `jet`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub rank: usize,
    /// Indices of the split-off variables, in elimination order.
    pub split_vars: Vec<usize>,
    /// Indices of the remaining variables.
    pub residual_vars: Vec<usize>,
    /// Residual over the full variable list (only residual variables occur).
    pub residual_full: Poly,
    /// Residual over its own variable list.
    pub residual: Poly,
    pub substitution: Substitution,
    pub jet: u32,
}

fn quadratic_pivot(f: &Poly, rest: &[usize]) -> Option<(usize, Option<usize>)> {
    let n = f.nvars();
    let q = f.homogeneous_part(2);
    for &v in rest {
        let mut e = vec![0; n];
        e[v] = 2;
        if !q.coeff(&e).is_zero() {
            return Some((v, None));
        }
    }
    for (a, &v) in rest.iter().enumerate() {
        for &w in &rest[a + 1..] {
            let mut e = vec![0; n];
            e[v] = 1;
            e[w] = 1;
            if !q.coeff(&e).is_zero() {
                return Some((v, Some(w)));
            }
        }
    }
    None
}

/// Splits `g` (singular at 0) as a sum of squares plus a residual of order
/// at least 3 in the corank variables, working modulo degree `jet + 1`.
pub fn split_quadratic(g: &Poly, jet: u32) -> Result<Split, SingularityError> {
    if !g.constant_term().is_zero() {
        return Err(SingularityError::NotThroughOrigin);
    }
    if !g.homogeneous_part(1).is_zero() {
        return Err(SingularityError::Smooth);
    }
    let n = g.nvars();
    let names = g.vars().clone();
    let mut f = g.truncate(jet);
    let mut phi = Substitution::identity(names.clone());
    let mut done: Vec<usize> = Vec::new();

    loop {
        let rest: Vec<usize> = (0..n).filter(|i| !done.contains(i)).collect();
        let Some((v, partner)) = quadratic_pivot(&f, &rest) else { break };
        if let Some(w) = partner {
            // x_w -> x_w + x_v creates a nonzero x_v^2 coefficient
            let mut image: Vec<Poly> = (0..n).map(|i| Poly::var(names.clone(), i)).collect();
            image[w] = &image[w] + &Poly::var(names.clone(), v);
            let lin = Substitution::new(image, None).expect("unimodular shear");
            f = lin.apply(&f, jet);
            phi = phi.then(&lin, jet);
        }
        let mut e = vec![0; n];
        e[v] = 2;
        let c = f.coeff(&e);
        let two_c = &c + &c;
        // d f / d x_v = 2c x_v + rest_part; solve for x_v as a series in the others
        let d = f.derivative(v);
        let lin_v = Poly::var(names.clone(), v).scale(&two_c);
        let nonlin = &d - &lin_v;
        let scale = -(Rat::from_integer(1.into()) / &two_c);
        // each pass fixes one more degree of h, so pass i only needs degree i
        let mut h = Poly::zero(names.clone());
        for i in 1..=jet {
            h = nonlin.substitute_var_truncated(v, &h, i).scale(&scale);
        }
        let mut image: Vec<Poly> = (0..n).map(|i| Poly::var(names.clone(), i)).collect();
        image[v] = &image[v] + &h;
        let shift = Substitution::new(image, None).expect("translation by higher order terms");
        f = shift.apply(&f, jet);
        phi = phi.then(&shift, jet);
        let residual = f.eval_var(v, &Rat::zero());
        debug_assert!((&f - &residual).terms().all(|(e, _)| e[v] >= 2));
        f = residual;
        done.push(v);
    }

    let residual_vars: Vec<usize> = (0..n).filter(|i| !done.contains(i)).collect();
    let names_rest: Vec<&str> = residual_vars.iter().map(|&i| names[i].as_str()).collect();
    let residual = f.embed(&vars(&names_rest)).expect("residual only in corank variables");
    Ok(Split {
        rank: done.len(),
        split_vars: done,
        residual_vars,
        residual_full: f,
        residual,
        substitution: phi,
        jet,
    })
}
