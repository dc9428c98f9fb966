//! Local inversion of black-box maps `F: {0,1}^n -> {0,1}^n`.
//!
//! Given a point `y`, the iterate sequence `y, F(y), F(F(y)), ...` is read
//! as a vector sequence (coordinate `i` is bit `i` across iterates, bit 0 =
//! leftmost in text form). A prefix element of that sequence is a candidate
//! for `F^{-1}(y)`; one extra forward application decides it. The
//! verification call is unconditional: candidates from short sequences are
//! only probabilistically correct.

use crate::complexity::{pci, PciReport};
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::golomb::{fsr_step, FsrSpec};
use crate::hankel::{BitSequence, VectorSequence};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A deterministic total map on `n`-bit states. Implementations must be safe
/// to call concurrently with distinct inputs.
pub trait BlackBoxMap {
    fn dimension(&self) -> usize;

    /// # Panics
    ///
    /// Panics if the state length differs from the dimension.
    fn apply(&self, state: &BitVec) -> BitVec;
}

/// Register map of a non-singular FSR.
pub struct FsrMap {
    spec: FsrSpec,
}

impl BlackBoxMap for FsrMap {
    fn dimension(&self) -> usize {
        self.spec.order()
    }

    fn apply(&self, state: &BitVec) -> BitVec {
        fsr_step(&self.spec, state)
    }
}

pub fn make_fsr_map(spec: FsrSpec) -> FsrMap {
    FsrMap { spec }
}

pub const TABLE_DIMENSION_CAP: usize = 24;

/// Lookup-table map over all `2^n` states. State bits pack little-endian:
/// bit `i` of the index is coordinate `i`.
pub struct TableMap {
    n: usize,
    table: Vec<u64>,
}

impl TableMap {
    pub fn state_to_index(state: &BitVec) -> u64 {
        state.to_u64()
    }

    pub fn index_to_state(index: u64, n: usize) -> BitVec {
        BitVec::from_u64(index, n)
    }
}

impl BlackBoxMap for TableMap {
    fn dimension(&self) -> usize {
        self.n
    }

    fn apply(&self, state: &BitVec) -> BitVec {
        assert_eq!(state.len(), self.n, "state length mismatch");
        BitVec::from_u64(self.table[state.to_u64() as usize], self.n)
    }
}

/// Builds a table map from `2^n` entries, each below `2^n`.
pub fn make_table_map(table: Vec<u64>) -> Result<TableMap> {
    let size = table.len();
    if size < 2 || !size.is_power_of_two() {
        return Err(Error::Parse(format!(
            "table must hold a power-of-two number of entries, got {size}"
        )));
    }
    let n = size.trailing_zeros() as usize;
    if n > TABLE_DIMENSION_CAP {
        return Err(Error::OrderTooLarge { m: n, cap: TABLE_DIMENSION_CAP });
    }
    if let Some(bad) = table.iter().find(|&&v| v >= size as u64) {
        return Err(Error::Parse(format!("table entry {bad} out of range")));
    }
    Ok(TableMap { n, table })
}

/// A uniformly shuffled permutation of `{0,1}^n`, reproducible from a seed.
pub fn make_permutation_map(seed: u64, n: usize) -> Result<TableMap> {
    if n == 0 || n > TABLE_DIMENSION_CAP {
        return Err(Error::OrderTooLarge { m: n, cap: TABLE_DIMENSION_CAP });
    }
    let mut table: Vec<u64> = (0..1u64 << n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    table.shuffle(&mut rng);
    Ok(TableMap { n, table })
}

/// Parses a map spec: `fsr:m=<k>;g=<ANF>`, `perm:seed=<u64>;n=<k>`, or
/// `table:<path>` (binary file of `2^n` 8-byte little-endian states).
pub fn parse_map_spec(spec: &str) -> Result<Box<dyn BlackBoxMap>> {
    if let Some(rest) = spec.strip_prefix("fsr:") {
        return Ok(Box::new(make_fsr_map(FsrSpec::parse(rest)?)));
    }
    if let Some(rest) = spec.strip_prefix("perm:") {
        let mut seed = None;
        let mut n = None;
        for part in rest.split(';') {
            let part = part.trim();
            if let Some(v) = part.strip_prefix("seed=") {
                seed = Some(v.parse::<u64>().map_err(|_| Error::Parse(format!("bad seed {v:?}")))?);
            } else if let Some(v) = part.strip_prefix("n=") {
                n = Some(v.parse::<usize>().map_err(|_| Error::Parse(format!("bad dimension {v:?}")))?);
            } else if !part.is_empty() {
                return Err(Error::Parse(format!("unexpected field {part:?} in perm spec")));
            }
        }
        let seed = seed.ok_or_else(|| Error::Parse("missing seed=<u64> in perm spec".into()))?;
        let n = n.ok_or_else(|| Error::Parse("missing n=<k> in perm spec".into()))?;
        return Ok(Box::new(make_permutation_map(seed, n)?));
    }
    if let Some(path) = spec.strip_prefix("table:") {
        let raw = std::fs::read(path)?;
        if raw.len() % 8 != 0 {
            return Err(Error::Parse("table file length must be a multiple of 8 bytes".into()));
        }
        let table: Vec<u64> = raw
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        return Ok(Box::new(make_table_map(table)?));
    }
    Err(Error::Parse(format!(
        "unknown map spec {spec:?} (expected fsr:..., perm:..., or table:<path>)"
    )))
}

/// The iterate sequence `y, F(y), ..., F^{steps-1}(y)` as a vector sequence.
///
/// # Panics
///
/// Panics if `steps < 2`.
pub fn iterate_map(map: &dyn BlackBoxMap, y: &BitVec, steps: usize) -> VectorSequence {
    assert!(steps >= 2, "need at least two iterates");
    let n = map.dimension();
    assert_eq!(y.len(), n, "point dimension mismatch");
    let mut coords: Vec<Vec<bool>> = vec![Vec::with_capacity(steps); n];
    let mut state = y.clone();
    for t in 0..steps {
        for (i, coord) in coords.iter_mut().enumerate() {
            coord.push(state.get(i));
        }
        if t + 1 < steps {
            state = map.apply(&state);
        }
    }
    VectorSequence::new(coords.into_iter().map(|c| BitSequence::from_bools(&c)).collect())
}

/// Number of steps until `y` recurs under `map`, if it does within `cap`
/// applications.
pub fn cycle_length(map: &dyn BlackBoxMap, y: &BitVec, cap: usize) -> Option<usize> {
    let mut state = map.apply(y);
    let mut steps = 1usize;
    while &state != y {
        if steps >= cap {
            return None;
        }
        state = map.apply(&state);
        steps += 1;
    }
    Some(steps)
}

/// Outcome of a local inversion attempt.
#[derive(Debug)]
pub struct LocalInverseResult {
    /// The prefix state recovered from the iterate sequence, if any.
    pub candidate: Option<BitVec>,
    /// Whether one forward application confirmed `F(candidate) = y`.
    pub verified: bool,
    pub pci_used: PciReport,
    pub sequence_length: usize,
}

/// Inverts `map` locally at `y`: builds `steps` iterates, inverts them as a
/// vector sequence at degree `d`, and verifies any candidate by one forward
/// application. `verified = false` with a present candidate means the check
/// failed (the sequence was too short to pin the true prefix).
pub fn local_invert(
    map: &dyn BlackBoxMap,
    y: &BitVec,
    steps: usize,
    d: usize,
    allow_constant: bool,
) -> LocalInverseResult {
    let seq = iterate_map(map, y, steps);
    let report = pci(&seq, d, allow_constant);
    let candidate = report.solution.as_ref().map(|sol| sol.inverse.clone());
    let verified = candidate
        .as_ref()
        .map(|c| &map.apply(c) == y)
        .unwrap_or(false);
    LocalInverseResult {
        candidate,
        verified,
        pci_used: report,
        sequence_length: steps,
    }
}
