//! Milnor-number budget for singular quartic threefolds.

use super::{GermKind, MilnorNumber, SingularityError};
use super::kawakita::max_discrepancy;

/// Third Betti number of a smooth quartic threefold.
pub const SMOOTH_QUARTIC_B3: u64 = 60;
/// Budget for not necessarily factorial terminal quartics.
pub const NON_FACTORIAL_LIMIT: u64 = 75;

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct BoundReport {
    pub total_mu: u64,
    pub limit: u64,
    pub defect: u64,
    pub pass: bool,
    /// Largest n with n^2 <= limit.
    pub max_ca: u32,
    /// Largest m with m(m-2) <= limit.
    pub max_cd: u32,
    /// `(n, largest discrepancy)` for n = 2..=max_ca.
    pub discrepancy_ceiling: Vec<(u32, u32)>,
    pub violations: Vec<String>,
}

pub fn limits(limit: u64) -> (u32, u32) {
    let mut n = 1u32;
    while u64::from(n + 1).pow(2) <= limit {
        n += 1;
    }
    let mut m = 4u32;
    while u64::from(m + 1) * u64::from(m - 1) <= limit {
        m += 1;
    }
    (n, m)
}

/// `limit = 60 + defect`; a defect of 15 gives the non-factorial budget 75.
pub fn bound_check(classes: &[(GermKind, MilnorNumber)], defect: u64) -> Result<BoundReport, SingularityError> {
    let mut total = 0u64;
    for (_, mu) in classes {
        match mu {
            MilnorNumber::Finite(k) => total += k,
            MilnorNumber::Infinite => return Err(SingularityError::InfiniteMilnor),
        }
    }
    let limit = SMOOTH_QUARTIC_B3 + defect;
    let (max_ca, max_cd) = limits(limit);
    let mut violations = Vec::new();
    if total > limit {
        violations.push(format!("total Milnor number {} exceeds {}", total, limit));
    }
    for (kind, _) in classes {
        match kind {
            GermKind::CA { n } if *n > max_ca => violations.push(format!("cA({}) beyond cA({})", n, max_ca)),
            GermKind::CD { m } if *m > max_cd => violations.push(format!("cD({}) beyond cD({})", m, max_cd)),
            _ => {}
        }
    }
    let discrepancy_ceiling =
        (2..=max_ca).filter_map(|n| max_discrepancy(n, limit).map(|a| (n, a))).collect();
    Ok(BoundReport {
        total_mu: total,
        limit,
        defect,
        pass: violations.is_empty(),
        max_ca,
        max_cd,
        discrepancy_ceiling,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_and_non_factorial_budgets() {
        let ca7 = [(GermKind::CA { n: 7 }, MilnorNumber::Finite(49))];
        let r = bound_check(&ca7, 0).unwrap();
        assert!(r.pass);
        assert_eq!((r.max_ca, r.max_cd), (7, 8));
        let ca8 = [(GermKind::CA { n: 8 }, MilnorNumber::Finite(64))];
        assert!(!bound_check(&ca8, 0).unwrap().pass);
        let r = bound_check(&ca8, NON_FACTORIAL_LIMIT - SMOOTH_QUARTIC_B3).unwrap();
        assert!(r.pass);
        assert_eq!(r.max_ca, 8);
    }

    #[test]
    fn infinite_input_is_rejected() {
        let bad = [(GermKind::NonIsolated { up_to_jet: 24 }, MilnorNumber::Infinite)];
        assert_eq!(bound_check(&bad, 0), Err(SingularityError::InfiniteMilnor));
    }
}
