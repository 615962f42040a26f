//! Weighted blowups extracting a divisor from a cA_n point.

use crate::poly::Rat;
use num_integer::Integer;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlowupKind {
    General,
    ExceptionalN1,
    ExceptionalN2,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct BlowupSpec {
    pub kind: BlowupKind,
    pub n: u32,
    /// Discrepancy.
    pub a: u32,
    pub r1: Option<u32>,
    pub r2: Option<u32>,
    /// Blowup weights on `(x, y, z, t)` when known.
    pub weights: Option<[u32; 4]>,
    /// `E^3 = (1/r1 + 1/r2) / a`, general kind only.
    #[serde(with = "opt_rat")]
    pub e3: Option<Rat>,
}

mod opt_rat {
    use crate::poly::Rat;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(r) => s.serialize_some(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rat>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|t| t.parse::<Rat>().map_err(serde::de::Error::custom)).transpose()
    }
}

impl BlowupSpec {
    pub fn general(n: u32, a: u32, r1: u32) -> Self {
        let r2 = a * (n + 1) - r1;
        let e3 = (Rat::new(1.into(), r1.into()) + Rat::new(1.into(), r2.into())) / Rat::from_integer(a.into());
        BlowupSpec {
            kind: BlowupKind::General,
            n,
            a,
            r1: Some(r1),
            r2: Some(r2),
            weights: Some([r1, r2, a, 1]),
            e3: Some(e3),
        }
    }
}

/// Lower bound `n(a(n+1) - 1)` on the Milnor number of a cA_n point carrying
/// a general-type extraction of discrepancy `a`.
pub fn milnor_lower_bound(n: u32, a: u32) -> u64 {
    u64::from(n) * (u64::from(a) * u64::from(n + 1) - 1)
}

/// All general-type blowups compatible with `mu_budget`, followed by the
/// exceptional catalogue entries for `n = 1, 2`.
pub fn kawakita_weights(n: u32, mu_budget: u64) -> Vec<BlowupSpec> {
    let mut out = Vec::new();
    let mut a = 1u32;
    while n >= 1 && milnor_lower_bound(n, a) <= mu_budget {
        let total = a * (n + 1);
        for r1 in 1..=total / 2 {
            if a.gcd(&r1) == 1 {
                out.push(BlowupSpec::general(n, a, r1));
            }
        }
        a += 1;
    }
    match n {
        1 => out.push(BlowupSpec {
            kind: BlowupKind::ExceptionalN1,
            n,
            a: 4,
            r1: Some(1),
            r2: Some(5),
            weights: Some([1, 5, 3, 2]),
            e3: None,
        }),
        2 => out.push(BlowupSpec {
            kind: BlowupKind::ExceptionalN2,
            n,
            a: 3,
            r1: None,
            r2: None,
            weights: None,
            e3: None,
        }),
        _ => {}
    }
    out
}

/// Largest general-type discrepancy admitted for `n` under `mu_budget`.
pub fn max_discrepancy(n: u32, mu_budget: u64) -> Option<u32> {
    kawakita_weights(n, mu_budget).iter().filter(|b| b.kind == BlowupKind::General).map(|b| b.a).max()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn n6_has_only_discrepancy_one() {
        let ws = kawakita_weights(6, 60);
        let pairs: Vec<(u32, u32)> = ws.iter().map(|b| (b.r1.unwrap(), b.r2.unwrap())).collect();
        assert_eq!(pairs, vec![(1, 6), (2, 5), (3, 4)]);
        assert!(ws.iter().all(|b| b.a == 1));
    }

    #[test]
    fn invariants() {
        for n in 1..=7 {
            for b in kawakita_weights(n, 60).into_iter().filter(|b| b.kind == BlowupKind::General) {
                let (r1, r2) = (b.r1.unwrap(), b.r2.unwrap());
                assert_eq!(b.a.gcd(&r1), 1);
                assert_eq!(r1 + r2, b.a * (n + 1));
                let lhs = b.e3.unwrap() * Rat::from_integer((b.a * r1 * r2).into());
                assert_eq!(lhs, Rat::from_integer((r1 + r2).into()));
            }
        }
    }

    #[test]
    fn exceptional_entries() {
        let ws = kawakita_weights(1, 60);
        assert!(ws.iter().any(|b| b.kind == BlowupKind::ExceptionalN1 && b.weights == Some([1, 5, 3, 2])));
        assert!(kawakita_weights(2, 60).iter().any(|b| b.kind == BlowupKind::ExceptionalN2 && b.a == 3));
        assert!(kawakita_weights(3, 60).iter().all(|b| b.kind == BlowupKind::General));
        assert!(BlowupSpec::general(2, 1, 1).e3.unwrap() > Rat::one());
    }
}
