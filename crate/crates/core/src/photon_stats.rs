//! Second-order photon correlation of Fock-state mixtures, and a
//! Hanbury Brown–Twiss simulator that estimates the same quantity from
//! per-pulse detector counts.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_unit_interval, Error, Result};
use crate::numeric::compensated_sum;

const NORMALIZATION_TOL: f64 = 1e-12;
const POISSON_TAIL: f64 = 1e-15;

/// Photon-number probabilities `P_n` with finite support.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FockDistribution {
    probs: BTreeMap<u32, f64>,
}

impl FockDistribution {
    pub fn new(probs: BTreeMap<u32, f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::invalid("probs", "distribution has no support"));
        }
        for (&n, &p) in &probs {
            if !(p.is_finite() && p >= 0.0) {
                return Err(Error::invalid("probs", format!("P_{n} = {p} is not a probability")));
            }
        }
        let total = compensated_sum(probs.values().copied());
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::invalid("probs", format!("probabilities sum to {total}, not 1")));
        }
        Ok(Self { probs })
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, f64)>) -> Result<Self> {
        let mut probs = BTreeMap::new();
        for (n, p) in pairs {
            *probs.entry(n).or_insert(0.0) += p;
        }
        Self::new(probs)
    }

    /// A pure number state, `P_n = 1`.
    pub fn fock(n: u32) -> Self {
        Self { probs: BTreeMap::from([(n, 1.0)]) }
    }

    pub fn vacuum() -> Self {
        Self::fock(0)
    }

    /// `n` photons with probability `epsilon`, otherwise nothing.
    pub fn sparse(n: u32, epsilon: f64) -> Result<Self> {
        ensure_unit_interval("epsilon", epsilon)?;
        if n == 0 {
            return Ok(Self::vacuum());
        }
        Self::new(BTreeMap::from([(0, 1.0 - epsilon), (n, epsilon)]))
    }

    /// Coherent-state statistics, truncated once the remaining tail mass
    /// drops below 1e-15 and renormalized.
    pub fn poisson(mean: f64) -> Result<Self> {
        if !(mean.is_finite() && mean >= 0.0) {
            return Err(Error::invalid("mean", format!("must be non-negative and finite, got {mean}")));
        }
        if mean == 0.0 {
            return Ok(Self::vacuum());
        }
        if mean > 500.0 {
            return Err(Error::invalid("mean", format!("{mean} exceeds the supported 500")));
        }
        let mut probs = BTreeMap::new();
        let ln_mean = mean.ln();
        let mut ln_fact = 0.0;
        let mut n: u32 = 0;
        loop {
            if n > 0 {
                ln_fact += (n as f64).ln();
            }
            let p = (-mean + n as f64 * ln_mean - ln_fact).exp();
            if p > 0.0 {
                probs.insert(n, p);
            }
            // geometric bound on the mass beyond n; it must also be
            // negligible against ⟨n(n−1)⟩ = mean²
            let next = n as f64 + 1.0;
            if next > mean + 1.0 {
                let tail = p * mean / (next - mean);
                if tail < POISSON_TAIL && tail * next * next < POISSON_TAIL * mean * mean {
                    break;
                }
            }
            n += 1;
        }
        // log-space rounding leaves the sum a few 1e-12 off for large means
        let total = compensated_sum(probs.values().copied());
        probs.values_mut().for_each(|p| *p /= total);
        Self::new(probs)
    }

    /// `(1 − w)·self + w·|0⟩⟨0|`.
    pub fn mix_with_vacuum(&self, weight: f64) -> Result<Self> {
        ensure_unit_interval("weight", weight)?;
        let mut probs: BTreeMap<u32, f64> = self.probs.iter().map(|(&n, &p)| (n, p * (1.0 - weight))).collect();
        *probs.entry(0).or_insert(0.0) += weight;
        Self::new(probs)
    }

    pub fn probability(&self, n: u32) -> f64 {
        self.probs.get(&n).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.probs.iter().map(|(&n, &p)| (n, p))
    }

    pub fn max_photon_number(&self) -> u32 {
        *self.probs.keys().next_back().expect("non-empty support")
    }

    pub fn mean(&self) -> f64 {
        compensated_sum(self.iter().map(|(n, p)| n as f64 * p))
    }
}

/// `g²(0) = Σ n(n−1)P_n / (Σ n P_n)²`; `None` when the mean photon
/// number is zero and the ratio is 0/0.
pub fn g2_zero(dist: &FockDistribution) -> Option<f64> {
    let mean = dist.mean();
    if mean == 0.0 {
        return None;
    }
    let pairs = compensated_sum(dist.iter().map(|(n, p)| n as f64 * (n as f64 - 1.0) * p));
    Some(pairs / mean / mean)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Statistics {
    SubPoissonian,
    Poissonian,
    SuperPoissonian,
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistics::SubPoissonian => "sub-poissonian",
            Statistics::Poissonian => "poissonian",
            Statistics::SuperPoissonian => "super-poissonian",
        })
    }
}

pub const CLASSIFY_TOL: f64 = 1e-9;

pub fn classify_statistics(g2: f64) -> Result<Statistics> {
    if !(g2.is_finite() && g2 >= 0.0) {
        return Err(Error::invalid("g2", format!("must be non-negative and finite, got {g2}")));
    }
    Ok(if g2 < 1.0 - CLASSIFY_TOL {
        Statistics::SubPoissonian
    } else if g2 > 1.0 + CLASSIFY_TOL {
        Statistics::SuperPoissonian
    } else {
        Statistics::Poissonian
    })
}

/// Detector counts behind the beamsplitter for one pulse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PulseRecord {
    pub pulse_index: u64,
    pub counts_a: u32,
    pub counts_b: u32,
}

impl PulseRecord {
    pub fn swapped(&self) -> Self {
        Self { counts_a: self.counts_b, counts_b: self.counts_a, ..*self }
    }
}

/// Number of `n` photons sent to detector A by an ideal 50/50 splitter.
fn split_binomial<R: Rng + ?Sized>(rng: &mut R, mut n: u32) -> u32 {
    let mut to_a = 0;
    while n >= 64 {
        to_a += rng.next_u64().count_ones();
        n -= 64;
    }
    if n > 0 {
        let mask = (1u64 << n) - 1;
        to_a += (rng.next_u64() & mask).count_ones();
    }
    to_a
}

/// Ideal number-resolving HBT run: one photon number drawn per pulse, each
/// photon routed to A or B with probability ½. Deterministic per seed.
pub fn hbt_simulate(dist: &FockDistribution, pulses: u64, seed: u64) -> Result<Vec<PulseRecord>> {
    if pulses < 1 {
        return Err(Error::invalid("pulses", "need at least one pulse"));
    }
    let (numbers, weights): (Vec<u32>, Vec<f64>) = dist.iter().filter(|&(_, p)| p > 0.0).unzip();
    let picker = WeightedIndex::new(&weights).map_err(|e| Error::Numerical(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let records = (0..pulses)
        .map(|pulse_index| {
            let n = numbers[picker.sample(&mut rng)];
            let a = split_binomial(&mut rng, n);
            PulseRecord { pulse_index, counts_a: a, counts_b: n - a }
        })
        .collect();
    Ok(records)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct G2Estimate {
    pub g2: f64,
    /// Delete-one jackknife standard error; infinite when some
    /// leave-one-out sample has no counts on a detector.
    pub std_err: f64,
    pub pulses: u64,
}

/// `⟨n_A n_B⟩ / (⟨n_A⟩⟨n_B⟩)` over the pulses, with a jackknife error.
/// `None` when either detector saw no counts at all.
pub fn g2_estimate(records: &[PulseRecord]) -> Result<Option<G2Estimate>> {
    if records.len() < 2 {
        return Err(Error::invalid("records", format!("need at least 2 pulses, got {}", records.len())));
    }
    let (mut sa, mut sb, mut sab) = (0u128, 0u128, 0u128);
    for r in records {
        sa += r.counts_a as u128;
        sb += r.counts_b as u128;
        sab += r.counts_a as u128 * r.counts_b as u128;
    }
    if sa == 0 || sb == 0 {
        return Ok(None);
    }
    let n = records.len() as f64;
    let g2 = n * sab as f64 / (sa as f64 * sb as f64);

    // Leave-one-out replicates in O(N) from the integer totals.
    let mut replicates = Vec::with_capacity(records.len());
    let mut degenerate = false;
    for r in records {
        let a = sa - r.counts_a as u128;
        let b = sb - r.counts_b as u128;
        let ab = sab - r.counts_a as u128 * r.counts_b as u128;
        if a == 0 || b == 0 {
            degenerate = true;
            break;
        }
        replicates.push((n - 1.0) * ab as f64 / (a as f64 * b as f64));
    }
    let std_err = if degenerate {
        f64::INFINITY
    } else {
        let mean = compensated_sum(replicates.iter().copied()) / n;
        let ss = compensated_sum(replicates.iter().map(|g| (g - mean) * (g - mean)));
        ((n - 1.0) / n * ss).sqrt()
    };
    Ok(Some(G2Estimate { g2, std_err, pulses: records.len() as u64 }))
}

/// Cross-pulse correlation `⟨n_A(i) n_B(i+lag)⟩ / (⟨n_A⟩⟨n_B⟩)`. For
/// independent pulses this is 1 for every `lag ≥ 1`.
pub fn g2_lagged(records: &[PulseRecord], lag: usize) -> Result<Option<f64>> {
    if records.len() <= lag + 1 {
        return Err(Error::invalid("lag", format!("lag {lag} leaves too few pulse pairs")));
    }
    let m = records.len() - lag;
    let head = &records[..m];
    let tail = &records[lag..];
    let sa: u128 = head.iter().map(|r| r.counts_a as u128).sum();
    let sb: u128 = tail.iter().map(|r| r.counts_b as u128).sum();
    if sa == 0 || sb == 0 {
        return Ok(None);
    }
    let sab: u128 = head.iter().zip(tail).map(|(x, y)| x.counts_a as u128 * y.counts_b as u128).sum();
    Ok(Some(m as f64 * sab as f64 / (sa as f64 * sb as f64)))
}

const CSV_HEADER: [&str; 3] = ["pulse_index", "counts_a", "counts_b"];

pub fn write_records_csv<W: Write>(writer: W, records: &[PulseRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for r in records {
        w.serialize(r)?;
    }
    if records.is_empty() {
        w.write_record(CSV_HEADER)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records_csv<R: Read>(reader: R) -> Result<Vec<PulseRecord>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    let header = rdr.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::invalid(
            "header",
            format!("expected `{}`, found `{}`", CSV_HEADER.join(","), header.iter().collect::<Vec<_>>().join(",")),
        ));
    }
    let mut out = Vec::new();
    for row in rdr.deserialize() {
        out.push(row?);
    }
    Ok(out)
}
