use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::RepError;

/// Integer weight vector.
pub type Weight = Vec<i64>;

/// Finitely supported virtual character; zero multiplicities are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightChar {
    rank: usize,
    #[serde(with = "support_serde")]
    support: BTreeMap<Weight, i64>,
}

mod support_serde {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Entry {
        weight: Vec<i64>,
        mult: i64,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<Vec<i64>, i64>, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Entry> = m.iter().map(|(w, &mult)| Entry { weight: w.clone(), mult }).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Vec<i64>, i64>, D::Error> {
        let v = Vec::<Entry>::deserialize(d)?;
        let mut m = BTreeMap::new();
        for e in v {
            *m.entry(e.weight).or_insert(0) += e.mult;
        }
        m.retain(|_, x| *x != 0);
        Ok(m)
    }
}

impl WeightChar {
    pub fn zero(rank: usize) -> Self {
        WeightChar { rank, support: BTreeMap::new() }
    }

    pub fn trivial(rank: usize) -> Self {
        Self::from_weights(rank, [(vec![0; rank], 1)]).expect("rank matches")
    }

    pub fn from_weights(rank: usize, items: impl IntoIterator<Item = (Weight, i64)>) -> Result<Self, RepError> {
        let mut c = Self::zero(rank);
        for (w, m) in items {
            c.add_weight(w, m)?;
        }
        Ok(c)
    }

    pub fn add_weight(&mut self, w: Weight, m: i64) -> Result<(), RepError> {
        if w.len() != self.rank {
            return Err(RepError::RankMismatch { expected: self.rank, got: w.len() });
        }
        match self.support.entry(w) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += m;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                if m != 0 {
                    v.insert(m);
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn support(&self) -> &BTreeMap<Weight, i64> {
        &self.support
    }

    pub fn mult(&self, w: &[i64]) -> i64 {
        self.support.get(w).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// Signed total mass.
    pub fn dim(&self) -> i64 {
        self.support.values().sum()
    }

    pub fn is_genuine(&self) -> bool {
        self.support.values().all(|&m| m > 0)
    }

    fn same_rank(&self, other: &Self) -> Result<(), RepError> {
        if self.rank != other.rank {
            return Err(RepError::RankMismatch { expected: self.rank, got: other.rank });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, RepError> {
        self.same_rank(other)?;
        let mut out = self.clone();
        for (w, &m) in &other.support {
            out.add_weight(w.clone(), m)?;
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero(self.rank);
        if k != 0 {
            out.support = self.support.iter().map(|(w, &m)| (w.clone(), m * k)).collect();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RepError> {
        self.add(&other.scale(-1))
    }

    /// Convolution of supports.
    pub fn tensor(&self, other: &Self) -> Result<Self, RepError> {
        self.same_rank(other)?;
        let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
        for (a, &ma) in &self.support {
            for (b, &mb) in &other.support {
                let w: Weight = a.iter().zip(b).map(|(x, y)| x + y).collect();
                *acc.entry(w).or_insert(0) += ma * mb;
            }
        }
        acc.retain(|_, m| *m != 0);
        Ok(WeightChar { rank: self.rank, support: acc })
    }

    pub fn dual(&self) -> Self {
        WeightChar {
            rank: self.rank,
            support: self.support.iter().map(|(w, &m)| (w.iter().map(|x| -x).collect(), m)).collect(),
        }
    }

    /// Pulls back along a torus map: each weight `w` goes to `Mᵀ w`.
    pub fn restrict(&self, f: &TorusMap) -> Result<Self, RepError> {
        if f.target_rank() != self.rank {
            return Err(RepError::RankMismatch { expected: f.target_rank(), got: self.rank });
        }
        let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
        for (w, &m) in &self.support {
            *acc.entry(f.pullback(w)).or_insert(0) += m;
        }
        acc.retain(|_, m| *m != 0);
        Ok(WeightChar { rank: f.source_rank(), support: acc })
    }
}

/// Integer matrix of a map of cocharacter lattices, `target_rank × source_rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct TorusMap {
    rows: Vec<Vec<i64>>,
    source_rank: usize,
}

impl TryFrom<Vec<Vec<i64>>> for TorusMap {
    type Error = RepError;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self, RepError> {
        let source_rank = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != source_rank) {
            return Err(RepError::Parse("torus map rows have different lengths".into()));
        }
        Ok(TorusMap { rows, source_rank })
    }
}

impl From<TorusMap> for Vec<Vec<i64>> {
    fn from(m: TorusMap) -> Self {
        m.rows
    }
}

impl TorusMap {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, RepError> {
        rows.try_into()
    }

    /// A map with an explicit source rank (needed when the target rank is zero).
    pub fn with_shape(target_rank: usize, source_rank: usize, rows: Vec<Vec<i64>>) -> Result<Self, RepError> {
        if rows.len() != target_rank || rows.iter().any(|r| r.len() != source_rank) {
            return Err(RepError::Parse(format!("torus map is not {target_rank}x{source_rank}")));
        }
        Ok(TorusMap { rows, source_rank })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        TorusMap { rows, source_rank: n }
    }

    pub fn zero(target_rank: usize, source_rank: usize) -> Self {
        TorusMap { rows: vec![vec![0; source_rank]; target_rank], source_rank }
    }

    pub fn target_rank(&self) -> usize {
        self.rows.len()
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn pullback(&self, w: &[i64]) -> Weight {
        (0..self.source_rank).map(|j| self.rows.iter().zip(w).map(|(r, x)| r[j] * x).sum()).collect()
    }

    /// `self ∘ other` on cocharacters (first `other`, then `self`).
    pub fn compose(&self, other: &TorusMap) -> Result<TorusMap, RepError> {
        if other.target_rank() != self.source_rank {
            return Err(RepError::RankMismatch { expected: self.source_rank, got: other.target_rank() });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| (0..other.source_rank).map(|j| r.iter().zip(&other.rows).map(|(a, o)| a * o[j]).sum()).collect())
            .collect();
        Ok(TorusMap { rows, source_rank: other.source_rank })
    }
}
