//! Root data for the simple Lie types, Bourbaki numbering.
//!
//! Simple coroots are indexed `0..rank` internally; the Bourbaki node `k`
//! is index `k - 1`. Positive coroots are produced by root-string closure in
//! the dual root system rather than read from tables, so the counts in the
//! tests are checks and not transcriptions.

use std::collections::HashMap;
use std::fmt;
use std::hash::{BuildHasherDefault, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            "F" | "f" => Ok(Family::F),
            "G" | "g" => Ok(Family::G),
            other => Err(Error::Precondition(format!(
                "unknown Lie family {other:?}, expected one of A..G"
            ))),
        }
    }
}

/// A simple Lie type such as `D34` or `E8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LieType {
    family: Family,
    rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let invalid = |reason| {
            Err(Error::InvalidType {
                family: family.letter(),
                rank,
                reason,
            })
        };
        match family {
            Family::A if rank < 1 => invalid("type A needs rank >= 1"),
            Family::B if rank < 2 => invalid("type B needs rank >= 2"),
            Family::C if rank < 2 => invalid("type C needs rank >= 2"),
            Family::D if rank < 4 => invalid("type D needs rank >= 4"),
            Family::E if !(6..=8).contains(&rank) => invalid("type E exists only in ranks 6, 7, 8"),
            Family::F if rank != 4 => invalid("type F exists only in rank 4"),
            Family::G if rank != 2 => invalid("type G exists only in rank 2"),
            _ => Ok(LieType { family, rank }),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of positive roots, from the closed form for each family.
    pub fn positive_root_count(&self) -> usize {
        let m = self.rank;
        match (self.family, m) {
            (Family::A, _) => m * (m + 1) / 2,
            (Family::B, _) | (Family::C, _) => m * m,
            (Family::D, _) => m * (m - 1),
            (Family::E, 6) => 36,
            (Family::E, 7) => 63,
            (Family::E, _) => 120,
            (Family::F, _) => 24,
            (Family::G, _) => 6,
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    /// Parses `"D34"`, `"e8"` and similar.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family: Family = chars
            .next()
            .ok_or_else(|| Error::Precondition("empty Lie type".into()))?
            .to_string()
            .parse()?;
        let rank = chars
            .as_str()
            .parse::<usize>()
            .map_err(|_| Error::Precondition(format!("bad rank in Lie type {s:?}")))?;
        LieType::new(family, rank)
    }
}

/// Cartan matrix with `cartan[i][j] = <alpha_i^vee, alpha_j>`.
///
/// Column `j` is the simple root `alpha_j` written in the fundamental-weight
/// basis.
pub fn cartan_matrix(t: LieType) -> Vec<Vec<i32>> {
    let m = t.rank;
    let mut a = vec![vec![0i32; m]; m];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i - 1][j - 1] = -1;
        a[j - 1][i - 1] = -1;
    };
    match t.family {
        Family::A | Family::B | Family::C => {
            for k in 1..m {
                link(k, k + 1);
            }
        }
        Family::D => {
            for k in 1..m - 1 {
                link(k, k + 1);
            }
            link(m - 2, m);
        }
        Family::E => {
            link(1, 3);
            link(2, 4);
            for k in 3..m {
                link(k, k + 1);
            }
        }
        Family::F => {
            link(1, 2);
            link(2, 3);
            link(3, 4);
        }
        Family::G => link(1, 2),
    }
    // Multiple bonds. Row index is the coroot, so the long root's row sees -1
    // and the short root's row sees -2 (or -3).
    match t.family {
        Family::B => a[m - 1][m - 2] = -2,
        Family::C => a[m - 2][m - 1] = -2,
        Family::F => a[2][1] = -2,
        Family::G => a[0][1] = -3,
        _ => {}
    }
    a
}

/// The permutation of fundamental-weight indices (0-based) induced by `-w0`.
pub fn diagram_automorphism(t: LieType) -> Vec<usize> {
    let m = t.rank;
    let mut perm: Vec<usize> = (0..m).collect();
    match t.family {
        Family::A => perm.reverse(),
        Family::D if m % 2 == 1 => perm.swap(m - 2, m - 1),
        Family::E if m == 6 => {
            perm.swap(0, 5);
            perm.swap(2, 4);
        }
        _ => {}
    }
    perm
}

#[derive(Debug, Clone)]
pub struct RootDatum {
    type_id: LieType,
    cartan: Vec<Vec<i32>>,
    /// Positive coroots, row-major, `rank` coefficients each, in the
    /// simple-coroot basis.
    coroots: Vec<u8>,
    rho_pairings: Vec<u32>,
    two_rho_check: Vec<u64>,
    dynkin_symmetry: Vec<usize>,
    epsilon: u8,
    triality: bool,
}

impl RootDatum {
    pub fn build(type_id: LieType) -> Self {
        let cartan = cartan_matrix(type_id);
        let coroots = coroot_closure(&cartan);
        let m = type_id.rank;
        let mut rho_pairings = Vec::with_capacity(coroots.len() / m);
        let mut two_rho_check = vec![0u64; m];
        for root in coroots.chunks_exact(m) {
            rho_pairings.push(root.iter().map(|&c| c as u32).sum());
            for (acc, &c) in two_rho_check.iter_mut().zip(root) {
                *acc += c as u64;
            }
        }
        let epsilon = match (type_id.family, m) {
            (Family::A, 1) => 1,
            (Family::A, _) | (Family::D, _) | (Family::E, 6) => 2,
            _ => 1,
        };
        RootDatum {
            type_id,
            cartan,
            coroots,
            rho_pairings,
            two_rho_check,
            dynkin_symmetry: diagram_automorphism(type_id),
            epsilon,
            triality: type_id.family == Family::D && m == 4,
        }
    }

    pub fn type_id(&self) -> LieType {
        self.type_id
    }

    pub fn rank(&self) -> usize {
        self.type_id.rank
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn num_positive_coroots(&self) -> usize {
        self.rho_pairings.len()
    }

    /// Positive coroots in height-then-lexicographic order.
    pub fn positive_coroots(&self) -> impl ExactSizeIterator<Item = &[u8]> + '_ {
        self.coroots.chunks_exact(self.rank())
    }

    pub fn coroot(&self, idx: usize) -> &[u8] {
        let m = self.rank();
        &self.coroots[idx * m..(idx + 1) * m]
    }

    /// `<rho, alpha^vee>` for each positive coroot, i.e. its height.
    pub fn rho_pairings(&self) -> &[u32] {
        &self.rho_pairings
    }

    /// `<omega_i, 2 rho^vee>` for each node.
    pub fn two_rho_check(&self) -> &[u64] {
        &self.two_rho_check
    }

    pub fn dynkin_symmetry(&self) -> &[usize] {
        &self.dynkin_symmetry
    }

    /// Order of the diagram symmetry used for twisted forms (1 or 2).
    pub fn epsilon(&self) -> u8 {
        self.epsilon
    }

    /// D4 additionally carries the order-3 triality symmetry (unused here).
    pub fn has_triality(&self) -> bool {
        self.triality
    }
}

/// Deterministic per-node keys for the additive 128-bit hash of a
/// coefficient vector. The low half indexes the table and the high half
/// confirms a match.
fn node_keys(m: usize) -> Vec<u128> {
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    let mut next = move || {
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    };
    (0..m)
        .map(|_| {
            let lo = next() as u128;
            (next() as u128) << 64 | lo
        })
        .collect()
}

/// The table keys are already mixed 64-bit sums, so they are used as is.
#[derive(Default)]
struct PassThrough(u64);

impl Hasher for PassThrough {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0 << 8) | b as u64;
        }
    }

    fn write_u64(&mut self, v: u64) {
        self.0 = v;
    }
}

type HashIndex<V> = HashMap<u64, V, BuildHasherDefault<PassThrough>>;

/// Coefficient vectors addressed by their 128-bit hash.
struct RootTable {
    m: usize,
    coeffs: Vec<u8>,
    hashes: Vec<u128>,
    first: HashIndex<u32>,
    /// Further ids sharing the low half with the entry in `first`.
    collisions: HashIndex<Vec<u32>>,
}

impl RootTable {
    fn new(m: usize) -> Self {
        RootTable {
            m,
            coeffs: Vec::new(),
            hashes: Vec::new(),
            first: HashIndex::default(),
            collisions: HashIndex::default(),
        }
    }

    fn get(&self, idx: u32) -> &[u8] {
        let i = idx as usize * self.m;
        &self.coeffs[i..i + self.m]
    }

    fn hash(&self, idx: u32) -> u128 {
        self.hashes[idx as usize]
    }

    fn contains(&self, hash: u128) -> bool {
        let lo = hash as u64;
        match self.first.get(&lo) {
            None => false,
            Some(&id) if self.hashes[id as usize] == hash => true,
            Some(_) => self
                .collisions
                .get(&lo)
                .is_some_and(|ids| ids.iter().any(|&id| self.hashes[id as usize] == hash)),
        }
    }

    fn insert(&mut self, v: &[u8], hash: u128) -> u32 {
        let id = self.hashes.len() as u32;
        self.coeffs.extend_from_slice(v);
        self.hashes.push(hash);
        let lo = hash as u64;
        if let std::collections::hash_map::Entry::Vacant(e) = self.first.entry(lo) {
            e.insert(id);
        } else {
            self.collisions.entry(lo).or_default().push(id);
        }
        id
    }
}

/// Positive coroots by root-string closure in the dual system.
///
/// For a positive coroot `b` and simple index `i`, `b + e_i` is a coroot iff
/// `p - <b, alpha_i> > 0`, where `p` is the largest `k` with `b - k e_i` a
/// coroot. Layers are built in increasing height, so `p` only looks at
/// finished layers.
fn coroot_closure(cartan: &[Vec<i32>]) -> Vec<u8> {
    let m = cartan.len();
    let keys = node_keys(m);
    // Pairing of a dual-system root with alpha_i uses column i of the Cartan
    // matrix: <sum c_j alpha_j^vee, alpha_i> = sum_j c_j cartan[j][i].
    let columns: Vec<Vec<(usize, i32)>> = (0..m)
        .map(|i| {
            (0..m)
                .filter(|&j| cartan[j][i] != 0)
                .map(|j| (j, cartan[j][i]))
                .collect()
        })
        .collect();
    // Row view: nodes `i` whose pairing involves coordinate `j`, including `j`.
    let mut columns_t: Vec<Vec<(usize, i32)>> = vec![Vec::new(); m];
    for (i, col) in columns.iter().enumerate() {
        for &(j, a) in col {
            columns_t[j].push((i, a));
        }
    }

    let mut table = RootTable::new(m);
    let mut layer: Vec<u32> = Vec::new();
    let mut unit = vec![0u8; m];
    for i in 0..m {
        unit[i] = 1;
        layer.push(table.insert(&unit, keys[i]));
        unit[i] = 0;
    }

    let mut ordered: Vec<u8> = Vec::new();
    let mut scratch = vec![0u8; m];
    let mut mark = vec![usize::MAX; m];
    let mut touched: Vec<usize> = Vec::new();
    // First and last nonzero coordinate of each root, by id.
    let mut span: Vec<(usize, usize)> = (0..m).map(|i| (i, i)).collect();
    let mut height = 1u32;
    while !layer.is_empty() {
        let mut next: Vec<u32> = Vec::new();
        for &id in &layer {
            let h = table.hash(id);
            // Nodes outside the support and not adjacent to it pair to zero
            // and have an empty downward string, so they never extend.
            touched.clear();
            let root = table.get(id);
            let (lo, hi) = span[id as usize];
            for j in (lo..=hi).filter(|&j| root[j] > 0) {
                for &(i, _) in &columns_t[j] {
                    if mark[i] != id as usize {
                        mark[i] = id as usize;
                        touched.push(i);
                    }
                }
            }
            for &i in &touched {
                let root = table.get(id);
                let pairing: i32 = columns[i].iter().map(|&(j, a)| root[j] as i32 * a).sum();
                let mut p = 0i32;
                let ri = root[i];
                let mut sh = h;
                for k in 1..=ri as u32 {
                    sh = sh.wrapping_sub(keys[i]);
                    if k == height || !table.contains(sh) {
                        break;
                    }
                    p += 1;
                }
                if p - pairing <= 0 {
                    continue;
                }
                let nh = h.wrapping_add(keys[i]);
                if !table.contains(nh) {
                    scratch.copy_from_slice(root);
                    scratch[i] += 1;
                    next.push(table.insert(&scratch, nh));
                    span.push((lo.min(i), hi.max(i)));
                }
            }
        }
        let mut sorted: Vec<&[u8]> = layer.iter().map(|&id| table.get(id)).collect();
        sorted.sort_unstable();
        for r in sorted {
            ordered.extend_from_slice(r);
        }
        layer = next;
        height += 1;
    }
    ordered
}
