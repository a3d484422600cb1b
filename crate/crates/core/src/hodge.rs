//! Hodge types of characters relative to the cocharacter pair `(μ, μ̄)` of `h`.
//!
//! A weight `w` contributes the bidegree `(−⟨w, μ⟩, −⟨w, μ̄⟩)`. Covectors are rational: in the
//! signed-permutation coordinates used by [`crate::repcalc`] the cocharacter of `h` has
//! half-integral entries, and only the pairings with actual weights need to be integers.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::{is_integer, rat, Rat};
use crate::pelcheck::{GroupFactorization, RealFactor};
use crate::repcalc::{irr_char, LieType, RepError, RootDatum, Weight, WeightChar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HodgeError {
    #[error("rank mismatch: covector has length {expected}, weight has length {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("weight {0:?} pairs to a non-integer with the cocharacter")]
    NonIntegral(Weight),
    #[error("unsupported root datum: {0}")]
    UnsupportedType(String),
    #[error(transparent)]
    Rep(#[from] RepError),
}

mod rat_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::exactlin::{format_rat, parse_rat, Rat};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(format_rat).collect::<Vec<_>>().serialize(s)
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Entry {
        Str(String),
        Int(i64),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        Vec::<Entry>::deserialize(d)?
            .into_iter()
            .map(|e| match e {
                Entry::Str(s) => parse_rat(&s).map_err(serde::de::Error::custom),
                Entry::Int(i) => Ok(Rat::from_integer(i.into())),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeCochar {
    #[serde(with = "rat_vec")]
    pub mu: Vec<Rat>,
    #[serde(with = "rat_vec")]
    pub mu_bar: Vec<Rat>,
}

/// Set of bidegrees `(p, q)`.
pub type HodgeType = BTreeSet<(i64, i64)>;

/// The two bidegrees allowed for abelian-variety type.
pub const AV_BIDEGREES: [(i64, i64); 2] = [(-1, 0), (0, -1)];

impl HodgeCochar {
    pub fn rank(&self) -> usize {
        self.mu.len()
    }

    fn pair(&self, w: &[i64]) -> Result<(i64, i64), HodgeError> {
        if w.len() != self.mu.len() || self.mu_bar.len() != self.mu.len() {
            return Err(HodgeError::RankMismatch { expected: self.mu.len(), got: w.len() });
        }
        let dot = |c: &[Rat]| w.iter().zip(c).fold(Rat::zero(), |acc, (x, y)| acc + y * Rat::from_integer((*x).into()));
        let (a, b) = (dot(&self.mu), dot(&self.mu_bar));
        if !is_integer(&a) || !is_integer(&b) {
            return Err(HodgeError::NonIntegral(w.to_vec()));
        }
        let to_i64 = |x: Rat| -> i64 { x.to_integer().try_into().expect("small") };
        Ok((-to_i64(a), -to_i64(b)))
    }

    /// Cocharacter of the standard `h` for a root datum whose blocks are classified by
    /// `fact` (as produced by [`crate::repcalc::pel_standard`]).
    ///
    /// `C` and `D` blocks get `μ = ½(1,…,1)`, `μ̄ = −μ`; an `A` block of signature `(a,b)` gets
    /// `μ = ½(1^a, (−1)^b)`, `μ̄ = −μ`; each central coordinate gets `μ = μ̄ = ½`.
    pub fn for_factorization(rd: &RootDatum, fact: &GroupFactorization) -> Result<Self, HodgeError> {
        let signatures: Vec<Option<(usize, usize)>> = fact
            .factors
            .iter()
            .map(|f| match *f {
                RealFactor::Unitary { a, b, .. } => Some((a, b)),
                _ => None,
            })
            .collect();
        Self::build(rd, &signatures)
    }

    /// Cocharacter for a root datum without `A` blocks.
    pub fn standard(rd: &RootDatum) -> Result<Self, HodgeError> {
        Self::build(rd, &vec![None; rd.factors.len()])
    }

    fn build(rd: &RootDatum, signatures: &[Option<(usize, usize)>]) -> Result<Self, HodgeError> {
        if signatures.len() != rd.factors.len() {
            return Err(HodgeError::UnsupportedType("factor list does not match the root datum".into()));
        }
        let half = rat(1, 2);
        let mut mu = vec![];
        for ((f, range), sig) in rd.blocks().into_iter().zip(signatures) {
            match (f.ty, sig) {
                (LieType::A, Some((a, b))) if a + b == range.len() => {
                    mu.extend((0..range.len()).map(|k| if k < *a { half.clone() } else { -half.clone() }));
                }
                (LieType::A, _) => {
                    return Err(HodgeError::UnsupportedType(format!("{f} needs a unitary signature")));
                }
                _ => mu.extend(range.map(|_| half.clone())),
            }
        }
        let mut mu_bar: Vec<Rat> = mu.iter().map(|x| -x).collect();
        mu.extend((0..rd.central_rank).map(|_| half.clone()));
        mu_bar.extend((0..rd.central_rank).map(|_| half.clone()));
        Ok(HodgeCochar { mu, mu_bar })
    }

    /// Every weight of `std` must have `p + q = −1`.
    pub fn check_weight(&self, std: &WeightChar) -> Result<bool, HodgeError> {
        for w in std.support().keys() {
            let (p, q) = self.pair(w)?;
            if p + q != -1 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn hodge_type(x: &WeightChar, hc: &HodgeCochar) -> Result<HodgeType, HodgeError> {
    if x.rank() != hc.rank() {
        return Err(HodgeError::RankMismatch { expected: hc.rank(), got: x.rank() });
    }
    x.support().keys().map(|w| hc.pair(w)).collect()
}

/// Whether the Hodge type lies in `{(−1,0), (0,−1)}`. Weights with non-integral pairings
/// are never of this type.
pub fn is_av_type(x: &WeightChar, hc: &HodgeCochar) -> Result<bool, HodgeError> {
    match hodge_type(x, hc) {
        Ok(t) => Ok(t.iter().all(|pq| AV_BIDEGREES.contains(pq))),
        Err(HodgeError::NonIntegral(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Dominant weights of `C_{n_1} × … × C_{n_k} × G_m^c` with semisimple part of size at most
/// `bound`, central coordinates in `[−bound−1, bound+1]`, whose irreducible is of AV type.
pub fn enumerate_av_irreducibles(rd: &RootDatum, hc: &HodgeCochar, bound: usize) -> Result<Vec<Weight>, HodgeError> {
    if let Some(f) = rd.factors.iter().find(|f| f.ty != LieType::C) {
        return Err(HodgeError::UnsupportedType(format!("{f}: only C blocks are supported")));
    }
    if hc.rank() != rd.total_rank() {
        return Err(HodgeError::RankMismatch { expected: rd.total_rank(), got: hc.rank() });
    }
    let mut semisimple: Vec<Vec<i64>> = vec![vec![]];
    let mut budget: Vec<i64> = vec![bound as i64];
    for f in &rd.factors {
        let mut next = vec![];
        let mut next_budget = vec![];
        for (prefix, left) in semisimple.iter().zip(&budget) {
            for part in partitions(f.coords(), *left) {
                let used: i64 = part.iter().sum();
                let mut v = prefix.clone();
                v.extend(part);
                next.push(v);
                next_budget.push(left - used);
            }
        }
        semisimple = next;
        budget = next_budget;
    }
    let c = bound as i64 + 1;
    let mut centrals: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..rd.central_rank {
        centrals = centrals.iter().flat_map(|p| (-c..=c).map(move |z| [p.clone(), vec![z]].concat())).collect();
    }
    let mut out = vec![];
    for ss in &semisimple {
        for z in &centrals {
            let lam: Weight = [ss.clone(), z.clone()].concat();
            // the highest weight itself must already be of AV type
            match hc.pair(&lam) {
                Ok(pq) if AV_BIDEGREES.contains(&pq) => {}
                Ok(_) | Err(HodgeError::NonIntegral(_)) => continue,
                Err(e) => return Err(e),
            }
            if is_av_type(&irr_char(rd, &lam)?, hc)? {
                out.push(lam);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Weakly decreasing nonnegative vectors of length `len` with sum at most `max`.
fn partitions(len: usize, max: i64) -> Vec<Vec<i64>> {
    fn rec(len: usize, cap: i64, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in 0..=cap.min(left) {
            cur.push(x);
            rec(len, x, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    rec(len, max, max, &mut vec![], &mut out);
    out
}
