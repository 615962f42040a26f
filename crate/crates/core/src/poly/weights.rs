use super::{Poly, Rat};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("weights must lie in (0, 1]")]
    WeightOutOfRange,
    #[error("degree must be positive")]
    NonPositiveDegree,
    #[error("weight count {got} does not match variable count {want}")]
    Arity { got: usize, want: usize },
    #[error("weighted order of the zero polynomial is undefined")]
    ZeroPolynomial,
}

/// Positive rational weights, one per variable, with a target degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    weights: Vec<Rat>,
    degree: Rat,
}

impl WeightSystem {
    pub fn new(weights: Vec<Rat>, degree: Rat) -> Result<Self, WeightError> {
        if weights.iter().any(|w| !w.is_positive() || *w > Rat::one()) {
            return Err(WeightError::WeightOutOfRange);
        }
        if !degree.is_positive() {
            return Err(WeightError::NonPositiveDegree);
        }
        Ok(WeightSystem { weights, degree })
    }

    /// Weights normalised to degree one.
    pub fn unit_degree(weights: Vec<Rat>) -> Result<Self, WeightError> {
        Self::new(weights, Rat::one())
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn degree(&self) -> &Rat {
        &self.degree
    }

    pub fn weight_of(&self, exp: &[u32]) -> Rat {
        exp.iter()
            .zip(&self.weights)
            .filter(|(k, _)| **k > 0)
            .fold(Rat::zero(), |acc, (k, w)| acc + w * Rat::from_integer((*k).into()))
    }

    /// Is every term of `p` of weighted degree exactly `degree`?
    pub fn is_homogeneous(&self, p: &Poly) -> bool {
        p.terms().all(|(e, _)| self.weight_of(e) == self.degree)
    }
}

/// Minimum weighted degree over the terms of `p`, with the sum of the terms
/// attaining it.
pub fn weighted_order(p: &Poly, w: &WeightSystem) -> Result<(Rat, Poly), WeightError> {
    if w.weights.len() != p.nvars() {
        return Err(WeightError::Arity { got: w.weights.len(), want: p.nvars() });
    }
    let order = p.terms().map(|(e, _)| w.weight_of(e)).min().ok_or(WeightError::ZeroPolynomial)?;
    let initial = p.filter(|e| w.weight_of(e) == order);
    Ok((order, initial))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, ratio, vars};

    #[test]
    fn orders() {
        let v = vars(&["x", "y", "z", "t"]);
        let p = parse_poly("x*y + z^3 + t^6", &v).unwrap();
        let w = WeightSystem::unit_degree(vec![ratio(1, 2), ratio(1, 2), ratio(1, 3), ratio(1, 3)])
            .unwrap();
        let (o, init) = weighted_order(&p, &w).unwrap();
        assert_eq!(o, ratio(1, 1));
        assert_eq!(init, parse_poly("x*y + z^3", &v).unwrap());
        let rest = &p - &init;
        assert!(rest.terms().all(|(e, _)| w.weight_of(e) > o));

        let one = WeightSystem::unit_degree(vec![ratio(1, 1); 4]).unwrap();
        let x = parse_poly("x", &v).unwrap();
        assert_eq!(weighted_order(&x, &one).unwrap(), (ratio(1, 1), x.clone()));
        assert_eq!(weighted_order(&Poly::zero(v), &one), Err(WeightError::ZeroPolynomial));
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(WeightSystem::unit_degree(vec![ratio(3, 2)]).is_err());
        assert!(WeightSystem::unit_degree(vec![ratio(0, 1)]).is_err());
        assert!(WeightSystem::new(vec![ratio(1, 2)], ratio(0, 1)).is_err());
    }
}
