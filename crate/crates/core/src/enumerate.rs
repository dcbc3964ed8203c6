//! Restricted highest-weight modules below a dimension bound.

use std::collections::{BTreeMap, HashSet};
use std::io::BufRead;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::is_prime_u64;
use crate::root_datum::{Family, LieType, RootDatum};
use crate::weight::{dimension_within, fs_indicator, is_self_dual, weyl_dimension, DominantWeight};

/// Characteristic above which generic dimensions are trusted when no
/// exception data says otherwise.
pub const DEFAULT_MIN_CHAR: u64 = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrrepCandidate {
    pub type_id: LieType,
    pub weight: DominantWeight,
    pub dim: BigUint,
    pub self_dual: bool,
    /// `+1`, `-1`, or `0` when not self-dual.
    pub fs: i8,
    pub epsilon: u8,
    pub min_char: u64,
    /// False for modules injected from exception data at a specific prime.
    pub generic: bool,
}

impl IrrepCandidate {
    fn from_weight(datum: &RootDatum, weight: DominantWeight, dim: BigUint) -> Result<Self> {
        let self_dual = is_self_dual(datum.type_id(), &weight)?;
        let fs = if self_dual {
            fs_indicator(datum, &weight)?
        } else {
            0
        };
        Ok(IrrepCandidate {
            type_id: datum.type_id(),
            weight,
            dim,
            self_dual,
            fs,
            epsilon: datum.epsilon(),
            min_char: DEFAULT_MIN_CHAR,
            generic: true,
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.weight.is_zero()
    }

    pub fn to_row(&self) -> CandidateRow {
        CandidateRow {
            family: self.type_id.family().letter().to_string(),
            rank: self.type_id.rank(),
            weight: self.weight.coeffs().to_vec(),
            dim: self.dim.to_string(),
            self_dual: self.self_dual,
            fs: self.fs,
            epsilon: self.epsilon,
            min_char: self.min_char,
        }
    }
}

/// One line of the JSON-lines candidate table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateRow {
    pub family: String,
    pub rank: usize,
    pub weight: Vec<u32>,
    pub dim: String,
    pub self_dual: bool,
    pub fs: i8,
    pub epsilon: u8,
    pub min_char: u64,
}

fn sort_key(c: &IrrepCandidate) -> (BigUint, DominantWeight) {
    (c.dim.clone(), c.weight.clone())
}

pub fn enumerate_restricted(type_id: LieType, dim_bound: u64) -> Result<Vec<IrrepCandidate>> {
    enumerate_in(&RootDatum::build(type_id), dim_bound)
}

/// All dominant weights with Weyl dimension at most `dim_bound`, sorted by
/// dimension and then weight.
///
/// Depth-first search that only ever raises coefficients at or after the last
/// raised node, so each weight is generated once. A branch stops as soon as
/// the dimension exceeds the bound: the dimension is strictly increasing in
/// every coefficient.
pub fn enumerate_in(datum: &RootDatum, dim_bound: u64) -> Result<Vec<IrrepCandidate>> {
    if dim_bound == 0 {
        return Err(Error::ZeroBound);
    }
    let m = datum.rank();
    let zero = DominantWeight::zero(m);
    let mut found = vec![IrrepCandidate::from_weight(
        datum,
        zero.clone(),
        BigUint::from(1u32),
    )?];
    let mut stack = vec![(zero, 0usize)];
    while let Some((weight, from)) = stack.pop() {
        for i in from..m {
            let child = weight.raised(i);
            if let Some(dim) = dimension_within(datum, &child, dim_bound)? {
                found.push(IrrepCandidate::from_weight(datum, child.clone(), dim)?);
                stack.push((child, i));
            }
        }
    }
    found.sort_by_cached_key(sort_key);
    Ok(found)
}

/// Types whose natural module has dimension at most `n` (for classical
/// families), plus every exceptional type. `C2` is skipped because it is
/// the same group as `B2`.
pub fn types_for_dimension(n: u64) -> Vec<LieType> {
    let n = n as usize;
    let mut out = Vec::new();
    let mut push = |f, m| out.push(LieType::new(f, m).expect("rank in range"));
    for m in 1..n.max(1) {
        push(Family::A, m);
    }
    for m in 2..=n / 2 {
        push(Family::B, m);
    }
    for m in 3..=n / 2 {
        push(Family::C, m);
    }
    for m in 4..=n / 2 {
        push(Family::D, m);
    }
    for (f, m) in [
        (Family::E, 6),
        (Family::E, 7),
        (Family::E, 8),
        (Family::F, 4),
        (Family::G, 2),
    ] {
        push(f, m);
    }
    out
}

/// Candidates of dimension exactly `n` across `types`.
pub fn candidates_of_dimension(
    types: &[LieType],
    n: u64,
    self_dual_only: bool,
) -> Result<Vec<IrrepCandidate>> {
    if n == 0 {
        return Err(Error::ZeroBound);
    }
    let target = BigUint::from(n);
    let mut out = Vec::new();
    for &t in types {
        out.extend(
            enumerate_restricted(t, n)?
                .into_iter()
                .filter(|c| c.dim == target && (c.self_dual || !self_dual_only)),
        );
    }
    Ok(out)
}

/// A non-generic dimension for `M(weight)` in characteristic `ell`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionRecord {
    pub type_id: LieType,
    pub weight: DominantWeight,
    pub ell: u64,
    pub corrected_dim: u64,
}

fn parse_exception_row(line: &str, lineno: usize) -> Result<ExceptionRecord> {
    let bad = |reason: String| Error::ExceptionRow {
        line: lineno,
        reason,
    };
    let open = line
        .find('[')
        .ok_or_else(|| bad("missing '[' in weight".into()))?;
    let close = line
        .rfind(']')
        .ok_or_else(|| bad("missing ']' in weight".into()))?;
    if close < open {
        return Err(bad("brackets out of order".into()));
    }
    let head: Vec<&str> = line[..open]
        .trim_end_matches('"')
        .split(',')
        .map(str::trim)
        .collect();
    let tail: Vec<&str> = line[close + 1..]
        .trim_start_matches('"')
        .split(',')
        .map(str::trim)
        .collect();
    if head.len() != 3 || !head[2].is_empty() || tail.len() != 3 || !tail[0].is_empty() {
        return Err(bad("expected family,rank,[weight],ell,dim".into()));
    }
    let family: Family = head[0].parse().map_err(|e: Error| bad(e.to_string()))?;
    let rank: usize = head[1]
        .parse()
        .map_err(|_| bad(format!("bad rank {:?}", head[1])))?;
    let type_id = LieType::new(family, rank).map_err(|e| bad(e.to_string()))?;
    let coeffs = line[open + 1..close]
        .split(',')
        .map(|s| s.trim().parse::<u32>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| bad("weight coefficients must be non-negative integers".into()))?;
    if coeffs.len() != rank {
        return Err(bad(format!(
            "weight has {} coefficients, rank is {rank}",
            coeffs.len()
        )));
    }
    let ell: u64 = tail[1]
        .parse()
        .map_err(|_| bad(format!("bad characteristic {:?}", tail[1])))?;
    if !is_prime_u64(ell) {
        return Err(bad(format!("characteristic {ell} is not prime")));
    }
    let corrected_dim: u64 = tail[2]
        .parse()
        .map_err(|_| bad(format!("bad dimension {:?}", tail[2])))?;
    if corrected_dim == 0 {
        return Err(bad("dimension must be positive".into()));
    }
    Ok(ExceptionRecord {
        type_id,
        weight: DominantWeight::new(coeffs),
        ell,
        corrected_dim,
    })
}

/// Reads `family,rank,weight,ell,dim` rows; the header line and blank lines
/// are skipped.
pub fn load_exceptions<R: BufRead>(source: R) -> Result<Vec<ExceptionRecord>> {
    let mut records = Vec::new();
    let mut seen = HashSet::new();
    let mut data: BTreeMap<LieType, RootDatum> = BTreeMap::new();
    for (idx, line) in source.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::ExceptionRow {
            line: lineno,
            reason: e.to_string(),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with("family") {
            continue;
        }
        let rec = parse_exception_row(trimmed, lineno)?;
        let datum = data
            .entry(rec.type_id)
            .or_insert_with(|| RootDatum::build(rec.type_id));
        let generic = weyl_dimension(datum, &rec.weight)?;
        if BigUint::from(rec.corrected_dim) > generic {
            return Err(Error::ExceptionRow {
                line: lineno,
                reason: format!(
                    "dimension {} exceeds the generic dimension {generic} of {} for {}",
                    rec.corrected_dim, rec.weight, rec.type_id
                ),
            });
        }
        if !seen.insert((rec.type_id, rec.weight.clone(), rec.ell)) {
            return Err(Error::ExceptionRow {
                line: lineno,
                reason: format!(
                    "duplicate row for {} {} at ell = {}",
                    rec.type_id, rec.weight, rec.ell
                ),
            });
        }
        records.push(rec);
    }
    Ok(records)
}

/// Raises `min_char` past every characteristic at which a candidate's
/// dimension is recorded as non-generic.
pub fn apply_exceptions(candidates: &mut [IrrepCandidate], exceptions: &[ExceptionRecord]) {
    for c in candidates.iter_mut() {
        if let Some(worst) = exceptions
            .iter()
            .filter(|e| e.type_id == c.type_id && e.weight == c.weight)
            .map(|e| e.ell)
            .max()
        {
            c.min_char = worst + 1;
        }
    }
}

/// Modules that exception data makes available at characteristic `ell` or
/// above, with their corrected dimensions. Marked non-generic.
pub fn exceptional_candidates(
    datum: &RootDatum,
    exceptions: &[ExceptionRecord],
    min_char: u64,
) -> Result<Vec<IrrepCandidate>> {
    exceptions
        .iter()
        .filter(|e| e.type_id == datum.type_id() && e.ell >= min_char && !e.weight.is_zero())
        .filter(|e| (e.weight.max_coeff() as u64) < e.ell)
        .map(|e| {
            let mut c =
                IrrepCandidate::from_weight(datum, e.weight.clone(), e.corrected_dim.into())?;
            c.min_char = e.ell;
            c.generic = false;
            Ok(c)
        })
        .collect()
}
