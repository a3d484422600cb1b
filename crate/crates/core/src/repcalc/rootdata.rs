use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::RepError;

/// Largest Lie rank of a simple block and largest size of a highest weight we accept.
pub const MAX_RANK: usize = 8;
pub const MAX_WEIGHT_SIZE: i64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LieType {
    A,
    C,
    D,
}

/// A simple block of a root datum. `A` blocks use `rank + 1` coordinates (the `GL_{rank+1}`
/// torus), `C` and `D` blocks use `rank` coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleFactor {
    pub ty: LieType,
    pub rank: usize,
}

impl SimpleFactor {
    pub fn new(ty: LieType, rank: usize) -> Result<Self, RepError> {
        let ok = match ty {
            LieType::A => rank < MAX_RANK,
            LieType::C | LieType::D => (1..=MAX_RANK).contains(&rank),
        };
        if !ok {
            return Err(RepError::Bound(format!("{ty:?}{rank}: rank must be in range (at most {MAX_RANK} coordinates)")));
        }
        Ok(SimpleFactor { ty, rank })
    }

    pub fn coords(&self) -> usize {
        match self.ty {
            LieType::A => self.rank + 1,
            LieType::C | LieType::D => self.rank,
        }
    }

    /// Positive roots, as integer vectors in this block's coordinates.
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        let n = self.coords();
        let e = |i: usize| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        };
        let comb = |a: &[i64], b: &[i64], s: i64| a.iter().zip(b).map(|(x, y)| x + s * y).collect::<Vec<i64>>();
        let mut out = vec![];
        for i in 0..n {
            for j in i + 1..n {
                out.push(comb(&e(i), &e(j), -1));
                if self.ty != LieType::A {
                    out.push(comb(&e(i), &e(j), 1));
                }
            }
            if self.ty == LieType::C {
                out.push(e(i).iter().map(|x| 2 * x).collect());
            }
        }
        out
    }

    /// `2ρ` in this block's coordinates.
    pub fn two_rho(&self) -> Vec<i64> {
        let n = self.coords() as i64;
        (0..n)
            .map(|i| match self.ty {
                LieType::A => n - 1 - 2 * i,
                LieType::C => 2 * (n - i),
                LieType::D => 2 * (n - 1 - i),
            })
            .collect()
    }

    pub fn is_dominant(&self, w: &[i64]) -> bool {
        let decreasing = w.windows(2).all(|p| p[0] >= p[1]);
        match self.ty {
            LieType::A => decreasing,
            LieType::C => decreasing && w.last().is_none_or(|&x| x >= 0),
            LieType::D => {
                let n = w.len();
                if n == 1 {
                    return true;
                }
                w[..n - 1].windows(2).all(|p| p[0] >= p[1]) && w[n - 2] >= w[n - 1].abs()
            }
        }
    }

    /// The dominant weight in the Weyl orbit of `w`.
    pub fn dominant_rep(&self, w: &[i64]) -> Vec<i64> {
        let mut v = w.to_vec();
        match self.ty {
            LieType::A => v.sort_unstable_by(|a, b| b.cmp(a)),
            LieType::C => {
                v.iter_mut().for_each(|x| *x = x.abs());
                v.sort_unstable_by(|a, b| b.cmp(a));
            }
            LieType::D => {
                if v.len() == 1 {
                    return v;
                }
                let negatives = v.iter().filter(|&&x| x < 0).count();
                let has_zero = v.contains(&0);
                v.iter_mut().for_each(|x| *x = x.abs());
                v.sort_unstable_by(|a, b| b.cmp(a));
                if negatives % 2 == 1 && !has_zero {
                    let last = v.len() - 1;
                    v[last] = -v[last];
                }
            }
        }
        v
    }

    /// All weights in the Weyl orbit of `w`, sorted.
    pub fn orbit(&self, w: &[i64]) -> Vec<Vec<i64>> {
        let dom = self.dominant_rep(w);
        let mut abs: Vec<i64> = dom.iter().map(|x| x.abs()).collect();
        let mut out = vec![];
        match self.ty {
            LieType::A => {
                let mut p = dom.clone();
                p.sort_unstable();
                loop {
                    out.push(p.clone());
                    if !next_permutation(&mut p) {
                        break;
                    }
                }
            }
            LieType::C | LieType::D => {
                if self.ty == LieType::D && dom.len() == 1 {
                    return vec![dom];
                }
                abs.sort_unstable();
                let want_parity = dom.iter().filter(|&&x| x < 0).count() % 2;
                let has_zero = abs.contains(&0);
                loop {
                    let nonzero: Vec<usize> = (0..abs.len()).filter(|&i| abs[i] != 0).collect();
                    for mask in 0u32..(1 << nonzero.len()) {
                        if self.ty == LieType::D && !has_zero && mask.count_ones() as usize % 2 != want_parity {
                            continue;
                        }
                        let mut v = abs.clone();
                        for (bit, &i) in nonzero.iter().enumerate() {
                            if mask >> bit & 1 == 1 {
                                v[i] = -v[i];
                            }
                        }
                        out.push(v);
                    }
                    if !next_permutation(&mut abs) {
                        break;
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// `|λ|`: the size bounded by [`MAX_WEIGHT_SIZE`]. For `A` blocks the central part is
    /// ignored, `Σ (λ_i − λ_n)`.
    pub fn size(&self, w: &[i64]) -> i64 {
        match self.ty {
            LieType::A => {
                let min = w.iter().copied().min().unwrap_or(0);
                w.iter().map(|x| x - min).sum()
            }
            LieType::C | LieType::D => w.iter().map(|x| x.abs()).sum(),
        }
    }
}

fn next_permutation(v: &mut [i64]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.ty, self.rank)
    }
}

impl FromStr for SimpleFactor {
    type Err = RepError;

    fn from_str(s: &str) -> Result<Self, RepError> {
        let s = s.trim();
        let ty = match s.chars().next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => LieType::A,
            Some('C') => LieType::C,
            Some('D') => LieType::D,
            _ => return Err(RepError::Parse(format!("unknown factor type {s:?} (expected A<n>, C<n> or D<n>)"))),
        };
        let rank = s[1..].parse().map_err(|_| RepError::Parse(format!("bad rank in {s:?}")))?;
        SimpleFactor::new(ty, rank)
    }
}

impl Serialize for SimpleFactor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SimpleFactor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Simple blocks followed by `central_rank` central coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootDatum {
    pub factors: Vec<SimpleFactor>,
    #[serde(default)]
    pub central_rank: usize,
}

impl RootDatum {
    pub fn new(factors: Vec<SimpleFactor>, central_rank: usize) -> Self {
        RootDatum { factors, central_rank }
    }

    /// Parses `"C2"`, `"C2xA1"`, `"C1*C1"` and so on.
    pub fn parse(spec: &str, central_rank: usize) -> Result<Self, RepError> {
        let factors = spec
            .split(['x', '*', '×'])
            .filter(|s| !s.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RootDatum { factors, central_rank })
    }

    pub fn total_rank(&self) -> usize {
        self.factors.iter().map(SimpleFactor::coords).sum::<usize>() + self.central_rank
    }

    /// Coordinate ranges of the simple blocks.
    pub fn blocks(&self) -> Vec<(SimpleFactor, std::ops::Range<usize>)> {
        let mut start = 0;
        self.factors
            .iter()
            .map(|f| {
                let r = start..start + f.coords();
                start = r.end;
                (*f, r)
            })
            .collect()
    }

    pub fn central_range(&self) -> std::ops::Range<usize> {
        let s = self.total_rank() - self.central_rank;
        s..self.total_rank()
    }

    pub fn check_rank(&self, w: &[i64]) -> Result<(), RepError> {
        if w.len() != self.total_rank() {
            return Err(RepError::RankMismatch { expected: self.total_rank(), got: w.len() });
        }
        Ok(())
    }

    pub fn is_dominant(&self, w: &[i64]) -> bool {
        w.len() == self.total_rank() && self.blocks().iter().all(|(f, r)| f.is_dominant(&w[r.clone()]))
    }

    pub fn dominant_rep(&self, w: &[i64]) -> Vec<i64> {
        let mut out = w.to_vec();
        for (f, r) in self.blocks() {
            out[r.clone()].copy_from_slice(&f.dominant_rep(&w[r]));
        }
        out
    }

    /// Positive roots of the whole datum, embedded in the full coordinates.
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        let n = self.total_rank();
        let mut out = vec![];
        for (f, r) in self.blocks() {
            for root in f.positive_roots() {
                let mut v = vec![0; n];
                v[r.clone()].copy_from_slice(&root);
                out.push(v);
            }
        }
        out
    }

    pub fn two_rho(&self) -> Vec<i64> {
        let mut v = vec![0; self.total_rank()];
        for (f, r) in self.blocks() {
            v[r].copy_from_slice(&f.two_rho());
        }
        v
    }

    /// Weyl dimension formula `Π ⟨λ+ρ, α⟩ / ⟨ρ, α⟩` over positive roots.
    pub fn weyl_dimension(&self, highest: &[i64]) -> num_bigint::BigInt {
        let two_rho = self.two_rho();
        let mut num = num_bigint::BigInt::from(1);
        let mut den = num_bigint::BigInt::from(1);
        for alpha in self.positive_roots() {
            let top: i64 = alpha.iter().zip(highest).zip(&two_rho).map(|((a, l), r)| a * (2 * l + r)).sum();
            let bottom: i64 = alpha.iter().zip(&two_rho).map(|(a, r)| a * r).sum();
            num *= top;
            den *= bottom;
        }
        num / den
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "{}", if parts.is_empty() { "T".to_string() } else { parts.join("x") })?;
        if self.central_rank > 0 {
            write!(f, "+Z{}", self.central_rank)?;
        }
        Ok(())
    }
}
