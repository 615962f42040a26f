use super::{Poly, Rat, Vars};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstitutionError {
    #[error("substitution needs one image per variable")]
    Arity,
    #[error("image of `{0}` has a nonzero constant term")]
    MovesOrigin(String),
    #[error("linear part of the substitution is singular")]
    Singular,
    #[error("unit has zero constant term")]
    NotAUnit,
}

/// A coordinate change `x_i -> image[i]` fixing the origin, optionally
/// multiplied by a unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    image: Vec<Poly>,
    unit: Option<Poly>,
}

impl Substitution {
    pub fn new(image: Vec<Poly>, unit: Option<Poly>) -> Result<Self, SubstitutionError> {
        let n = image.len();
        if n == 0 || image.iter().any(|p| p.nvars() != n) {
            return Err(SubstitutionError::Arity);
        }
        for (i, p) in image.iter().enumerate() {
            if !p.constant_term().is_zero() {
                return Err(SubstitutionError::MovesOrigin(p.vars()[i].clone()));
            }
        }
        if let Some(u) = &unit {
            if u.constant_term().is_zero() {
                return Err(SubstitutionError::NotAUnit);
            }
        }
        let s = Substitution { image, unit };
        if determinant(s.linear_part()).is_zero() {
            return Err(SubstitutionError::Singular);
        }
        Ok(s)
    }

    pub fn identity(vars: Vars) -> Self {
        let image = (0..vars.len()).map(|i| Poly::var(vars.clone(), i)).collect();
        Substitution { image, unit: None }
    }

    pub fn image(&self) -> &[Poly] {
        &self.image
    }

    pub fn unit(&self) -> Option<&Poly> {
        self.unit.as_ref()
    }

    /// Row `i` holds the linear coefficients of `image[i]`.
    pub fn linear_part(&self) -> Vec<Vec<Rat>> {
        let n = self.image.len();
        self.image
            .iter()
            .map(|p| {
                (0..n)
                    .map(|j| {
                        let mut e = vec![0; n];
                        e[j] = 1;
                        p.coeff(&e)
                    })
                    .collect()
            })
            .collect()
    }

    /// `unit * p(image)` with every term of total degree above
    /// `truncate_at` discarded.
    pub fn apply(&self, p: &Poly, truncate_at: u32) -> Poly {
        let vars = p.vars().clone();
        let n = p.nvars();
        let mut powers: Vec<Vec<Poly>> = Vec::with_capacity(n);
        for i in 0..n {
            let k = p.degree_in(i) as usize;
            let img = self.image[i].truncate(truncate_at);
            let mut v = vec![Poly::one(vars.clone())];
            for j in 1..=k {
                let next = v[j - 1].mul_truncated(&img, truncate_at);
                v.push(next);
            }
            powers.push(v);
        }
        let mut out = Poly::zero(vars.clone());
        for (e, c) in p.terms() {
            let mut term = Poly::constant(vars.clone(), c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul_truncated(&powers[i][k as usize], truncate_at);
                }
            }
            out = &out + &term;
        }
        match &self.unit {
            Some(u) => out.mul_truncated(u, truncate_at),
            None => out,
        }
    }

    /// `self` followed by `other`: `p -> other(self(p))`, image-wise truncated.
    pub fn then(&self, other: &Substitution, truncate_at: u32) -> Substitution {
        let image = self.image.iter().map(|q| other.apply(q, truncate_at)).collect();
        let unit = match (&self.unit, &other.unit) {
            (None, None) => None,
            (Some(u), None) => Some(Substitution { image: other.image.clone(), unit: None }.apply(u, truncate_at)),
            (None, Some(v)) => Some(v.clone()),
            (Some(u), Some(v)) => {
                let bare = Substitution { image: other.image.clone(), unit: None };
                Some(bare.apply(u, truncate_at).mul_truncated(v, truncate_at))
            }
        };
        Substitution { image, unit }
    }
}

/// Exact determinant by fraction Gaussian elimination.
pub(crate) fn determinant(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let d = &f * &m[col][c];
                m[r][c] -= d;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, vars};

    #[test]
    fn identity_is_neutral() {
        let v = vars(&["x", "y"]);
        let p = parse_poly("x^3 + x*y - 2*y^5", &v).unwrap();
        assert_eq!(Substitution::identity(v).apply(&p, 10), p);
    }

    #[test]
    fn rejects_singular_and_translations() {
        let v = vars(&["x", "y"]);
        let a = parse_poly("x + y", &v).unwrap();
        assert_eq!(Substitution::new(vec![a.clone(), a.clone()], None), Err(SubstitutionError::Singular));
        let b = parse_poly("y + 1", &v).unwrap();
        assert!(matches!(Substitution::new(vec![a, b], None), Err(SubstitutionError::MovesOrigin(_))));
    }

    #[test]
    fn xij_family_identity() {
        // F = G(phi) for the (i,j) = (2,2) member, with G written in the new coordinates.
        let v = vars(&["x", "y", "z", "t"]);
        let f = parse_poly("(x-z^2)^2-(y-t^2)^2+x^2*z^2+y^2*t^2+x^4+y^4", &v).unwrap();
        let phi = Substitution::new(
            vec![
                parse_poly("x+y-(z^2+t^2)", &v).unwrap(),
                parse_poly("x-y-(z^2-t^2)", &v).unwrap(),
                parse_poly("z", &v).unwrap(),
                parse_poly("t", &v).unwrap(),
            ],
            None,
        )
        .unwrap();
        // G in the new coordinates: x_old = (X+Y)/2 + z^2, y_old = (X-Y)/2 + t^2
        let half = crate::poly::ratio(1, 2);
        let xx = Poly::var(v.clone(), 0);
        let yy = Poly::var(v.clone(), 1);
        let z = Poly::var(v.clone(), 2);
        let t = Poly::var(v.clone(), 3);
        let xo = &(&xx + &yy).scale(&half) + &z.pow(2);
        let yo = &(&xx - &yy).scale(&half) + &t.pow(2);
        let g = &(&(&xx * &yy) + &(&xo.pow(2) * &z.pow(2))) + &(&(&yo.pow(2) * &t.pow(2)) + &(&xo.pow(4) + &yo.pow(4)));
        assert_eq!(phi.apply(&g, 64), f);
    }
}
