//! Weight-multiset character calculus for products of classical groups with a central torus.

mod character;
mod rootdata;

pub use character::{TorusMap, Weight, WeightChar};
pub use rootdata::{LieType, RootDatum, SimpleFactor, MAX_RANK, MAX_WEIGHT_SIZE};

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::pelcheck::{GroupFactorization, RealFactor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("weight {0:?} is not dominant")]
    NotDominant(Weight),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("character is not Weyl-symmetric at weight {0:?}")]
    NotWeylSymmetric(Weight),
    #[error("constituent {weight:?} has negative multiplicity {mult} in a character declared genuine")]
    NotACharacter { weight: Weight, mult: i64 },
    #[error("outside the supported range: {0}")]
    Bound(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("{0}")]
    Parse(String),
}

/// Multiplicities of the dominant weights of the irreducible of one simple block.
fn freudenthal(f: &SimpleFactor, highest: &[i64]) -> Result<BTreeMap<Weight, i64>, RepError> {
    let roots = f.positive_roots();
    let two_rho = f.two_rho();
    let dot = |a: &[i64], b: &[i64]| -> i64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };

    let mut dominant: BTreeSet<Weight> = BTreeSet::new();
    let mut queue = VecDeque::from([highest.to_vec()]);
    dominant.insert(highest.to_vec());
    while let Some(mu) = queue.pop_front() {
        for alpha in &roots {
            let nu: Weight = mu.iter().zip(alpha).map(|(m, a)| m - a).collect();
            if f.is_dominant(&nu) && dominant.insert(nu.clone()) {
                queue.push_back(nu);
            }
        }
    }
    let depth = |mu: &Weight| -> i64 {
        let diff: Vec<i64> = highest.iter().zip(mu).map(|(l, m)| l - m).collect();
        dot(&diff, &two_rho)
    };
    let mut order: Vec<Weight> = dominant.iter().cloned().collect();
    order.sort_by_key(|mu| (depth(mu), std::cmp::Reverse(mu.clone())));

    let mut mult: BTreeMap<Weight, i64> = BTreeMap::new();
    for mu in order {
        if mu == highest {
            mult.insert(mu, 1);
            continue;
        }
        let mut num = 0i64;
        for alpha in &roots {
            for k in 1.. {
                let nu: Weight = mu.iter().zip(alpha).map(|(m, a)| m + k * a).collect();
                let m = match mult.get(&f.dominant_rep(&nu)) {
                    Some(&m) => m,
                    None => break,
                };
                num += 2 * dot(&nu, alpha) * m;
            }
        }
        let diff: Vec<i64> = highest.iter().zip(&mu).map(|(l, m)| l - m).collect();
        let shifted: Vec<i64> = highest.iter().zip(&mu).zip(&two_rho).map(|((l, m), r)| l + m + r).collect();
        let den = dot(&diff, &shifted);
        if den <= 0 || num % den != 0 {
            return Err(RepError::Internal(format!("Freudenthal quotient {num}/{den} at {mu:?}")));
        }
        if num > 0 {
            mult.insert(mu, num / den);
        }
    }
    Ok(mult)
}

/// Full weight multiset of the irreducible with the given highest weight.
pub fn irr_char(rd: &RootDatum, highest: &[i64]) -> Result<WeightChar, RepError> {
    rd.check_rank(highest)?;
    if !rd.is_dominant(highest) {
        return Err(RepError::NotDominant(highest.to_vec()));
    }
    let mut partial: Vec<(Weight, i64)> = vec![(vec![], 1)];
    for (f, range) in rd.blocks() {
        let lam = &highest[range];
        if f.size(lam) > MAX_WEIGHT_SIZE {
            return Err(RepError::Bound(format!("highest weight {lam:?} of {f} exceeds size {MAX_WEIGHT_SIZE}")));
        }
        let dom = freudenthal(&f, lam)?;
        let mut block: Vec<(Weight, i64)> = vec![];
        for (mu, &m) in &dom {
            block.extend(f.orbit(mu).into_iter().map(|w| (w, m)));
        }
        let total: i64 = block.iter().map(|(_, m)| m).sum();
        let expected = RootDatum::new(vec![f], 0).weyl_dimension(lam);
        if num_bigint::BigInt::from(total) != expected {
            return Err(RepError::Internal(format!("{f} {lam:?}: weight count {total} but Weyl dimension {expected}")));
        }
        partial = partial
            .iter()
            .flat_map(|(p, pm)| {
                block.iter().map(move |(w, m)| {
                    let mut v = p.clone();
                    v.extend_from_slice(w);
                    (v, pm * m)
                })
            })
            .collect();
    }
    let central = &highest[rd.central_range()];
    WeightChar::from_weights(
        rd.total_rank(),
        partial.into_iter().map(|(mut w, m)| {
            w.extend_from_slice(central);
            (w, m)
        }),
    )
}

/// Checks that multiplicities are constant on Weyl orbits.
pub fn check_weyl_symmetric(rd: &RootDatum, x: &WeightChar) -> Result<(), RepError> {
    if x.rank() != rd.total_rank() {
        return Err(RepError::RankMismatch { expected: rd.total_rank(), got: x.rank() });
    }
    for (w, &m) in x.support() {
        if x.mult(&rd.dominant_rep(w)) != m {
            return Err(RepError::NotWeylSymmetric(w.clone()));
        }
    }
    Ok(())
}

/// A highest weight together with its (possibly negative) multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Constituent {
    pub highest: Weight,
    pub mult: i64,
}

/// Writes `x` as an integer combination of irreducibles by repeatedly removing the
/// lexicographically largest weight. With `genuine` set, a negative coefficient is an error.
pub fn decompose(rd: &RootDatum, x: &WeightChar, genuine: bool) -> Result<Vec<Constituent>, RepError> {
    check_weyl_symmetric(rd, x)?;
    let mut rest = x.clone();
    let mut out = vec![];
    while let Some((top, &m)) = rest.support().last_key_value() {
        let top = top.clone();
        if !rd.is_dominant(&top) {
            return Err(RepError::NotWeylSymmetric(top));
        }
        if genuine && m < 0 {
            return Err(RepError::NotACharacter { weight: top, mult: m });
        }
        rest = rest.sub(&irr_char(rd, &top)?.scale(m))?;
        out.push(Constituent { highest: top, mult: m });
    }
    Ok(out)
}

/// `Σ mult · irr_char(highest)`.
pub fn recompose(rd: &RootDatum, parts: &[Constituent]) -> Result<WeightChar, RepError> {
    parts.iter().try_fold(WeightChar::zero(rd.total_rank()), |acc, c| acc.add(&irr_char(rd, &c.highest)?.scale(c.mult)))
}

impl RootDatum {
    /// Standard weights of each block (`±e_k` for C and D, `e_k` for A), every central
    /// coordinate set to 1.
    pub fn standard_char(&self) -> WeightChar {
        let n = self.total_rank();
        let mut c = WeightChar::zero(n);
        let central = self.central_range();
        for (f, r) in self.blocks() {
            for k in r {
                for s in [1, -1] {
                    if s == -1 && f.ty == LieType::A {
                        continue;
                    }
                    let mut w = vec![0; n];
                    w[k] = s;
                    central.clone().for_each(|i| w[i] = 1);
                    c.add_weight(w, 1).expect("rank");
                }
            }
        }
        c
    }

    /// Fundamental-style highest weight `(1,0,…,0)` on block `i` and 1 on the central part.
    pub fn block_standard_highest(&self, i: usize) -> Weight {
        let mut w = vec![0; self.total_rank()];
        let (_, r) = &self.blocks()[i];
        w[r.start] = 1;
        self.central_range().for_each(|k| w[k] = 1);
        w
    }
}

/// Root datum and standard character of the similitude group of a classified datum.
///
/// `Sp_{2g}` gives a `C_g` block, `U(a,b)` an `A_{a+b-1}` block in `GL_{a+b}` coordinates,
/// `O*_{2r}` a `D_r` block; one central coordinate carries the scalars.
pub fn pel_standard(fact: &GroupFactorization) -> Result<(RootDatum, WeightChar), RepError> {
    let mut factors = vec![];
    let mut mults = vec![];
    for f in &fact.factors {
        let (sf, m) = match *f {
            RealFactor::Symplectic { g, n, .. } => (SimpleFactor::new(LieType::C, g)?, n),
            RealFactor::Unitary { a, b, n, .. } => (SimpleFactor::new(LieType::A, a + b - 1)?, n),
            RealFactor::Orthogonal { r, n, .. } => (SimpleFactor::new(LieType::D, r)?, 2 * n),
        };
        factors.push(sf);
        mults.push(m);
    }
    let rd = RootDatum::new(factors, 1);
    let n = rd.total_rank();
    let mut c = WeightChar::zero(n);
    for ((_, r), m) in rd.blocks().into_iter().zip(mults) {
        for k in r {
            for s in [1, -1] {
                let mut w = vec![0; n];
                w[k] = s;
                w[n - 1] = 1;
                c.add_weight(w, m as i64)?;
            }
        }
    }
    Ok((rd, c))
}

/// Parses a character token: `std`, `dual`, `triv`, or a highest weight such as `[1,0]`.
pub fn parse_char_token(rd: &RootDatum, token: &str) -> Result<WeightChar, RepError> {
    match token.trim() {
        "std" => Ok(rd.standard_char()),
        "dual" => Ok(rd.standard_char().dual()),
        "triv" => Ok(WeightChar::trivial(rd.total_rank())),
        t if t.starts_with('[') => {
            let w: Weight = serde_json::from_str(t).map_err(|e| RepError::Parse(format!("bad weight {t:?}: {e}")))?;
            irr_char(rd, &w)
        }
        t => Err(RepError::Parse(format!("unknown character token {t:?} (std, dual, triv or [..])"))),
    }
}

/// Tensor product of a comma-separated list of tokens; brackets may contain commas.
pub fn parse_tensor(rd: &RootDatum, spec: &str) -> Result<WeightChar, RepError> {
    let mut tokens = vec![];
    let mut depth = 0;
    let mut cur = String::new();
    for ch in spec.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                tokens.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    tokens.push(cur);
    tokens
        .iter()
        .try_fold(WeightChar::trivial(rd.total_rank()), |acc, t| acc.tensor(&parse_char_token(rd, t)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> RootDatum {
        RootDatum::parse("C2", 0).unwrap()
    }

    #[test]
    fn c2_standard() {
        let s = irr_char(&c2(), &[1, 0]).unwrap();
        assert_eq!(s.dim(), 4);
        for w in [[1, 0], [-1, 0], [0, 1], [0, -1]] {
            assert_eq!(s.mult(&w), 1);
        }
        assert_eq!(s, c2().standard_char());
        assert_eq!(irr_char(&c2(), &[1, 1]).unwrap().dim(), 5);
        assert_eq!(irr_char(&c2(), &[1, 1]).unwrap().mult(&[0, 0]), 1);
    }

    #[test]
    fn trivial_highest_weight() {
        for spec in ["C3", "A2", "D3", "C1xA1"] {
            let rd = RootDatum::parse(spec, 1).unwrap();
            let w = vec![0; rd.total_rank()];
            assert_eq!(irr_char(&rd, &w).unwrap(), WeightChar::trivial(rd.total_rank()));
        }
    }

    #[test]
    fn not_dominant() {
        assert_eq!(irr_char(&c2(), &[0, 1]), Err(RepError::NotDominant(vec![0, 1])));
        assert!(matches!(irr_char(&c2(), &[9, 0]), Err(RepError::Bound(_))));
    }

    #[test]
    fn std_tensor_std_c2() {
        let rd = c2();
        let s = rd.standard_char();
        let parts = decompose(&rd, &s.tensor(&s).unwrap(), true).unwrap();
        let got: Vec<(Weight, i64)> = parts.iter().map(|c| (c.highest.clone(), c.mult)).collect();
        assert_eq!(got, vec![(vec![2, 0], 1), (vec![1, 1], 1), (vec![0, 0], 1)]);
    }

    #[test]
    fn decompose_round_trips() {
        let rd = RootDatum::parse("D3", 1).unwrap();
        let parts = vec![
            Constituent { highest: vec![2, 1, -1, 3], mult: 2 },
            Constituent { highest: vec![1, 0, 0, -1], mult: -1 },
        ];
        let x = recompose(&rd, &parts).unwrap();
        let mut back = decompose(&rd, &x, false).unwrap();
        back.sort();
        let mut want = parts.clone();
        want.sort();
        assert_eq!(back, want);
        assert!(matches!(decompose(&rd, &x, true), Err(RepError::NotACharacter { .. })));
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let x = WeightChar::from_weights(2, [(vec![1, 0], 1)]).unwrap();
        assert!(matches!(decompose(&c2(), &x, true), Err(RepError::NotWeylSymmetric(_))));
    }

    #[test]
    fn a_type_uses_gl_coordinates() {
        let rd = RootDatum::parse("A1", 1).unwrap();
        let x = irr_char(&rd, &[3, 2, 1]).unwrap();
        assert_eq!(x.dim(), 2);
        assert_eq!(x.mult(&[2, 3, 1]), 1);
        assert_eq!(irr_char(&rd, &[2, 0, 0]).unwrap().dim(), 3);
    }

    #[test]
    fn morita_restriction_is_two_copies() {
        let target = RootDatum::parse("C2", 1).unwrap();
        let source = RootDatum::parse("C1", 1).unwrap();
        let f = TorusMap::new(vec![vec![1, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let pulled = target.standard_char().restrict(&f).unwrap();
        assert_eq!(pulled, source.standard_char().scale(2));
    }

    #[test]
    fn tensor_token_parsing() {
        let rd = c2();
        assert_eq!(parse_tensor(&rd, "std,std").unwrap().dim(), 16);
        assert_eq!(parse_tensor(&rd, "[1,1], triv").unwrap().dim(), 5);
        assert!(parse_tensor(&rd, "spin").is_err());
    }
}
