//! Sum-product decoding over BPSK/AWGN and a Monte-Carlo FER harness.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::Serialize;

use crate::block::BlockMatrix;
use crate::error::{Error, Result};
use crate::sparse::{gf2_rank, SparseBinaryMatrix};

const LLR_CLAMP: f64 = 40.0;
const TANH_CLAMP: f64 = 1.0 - 1e-15;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecoderConfig {
    pub max_iterations: usize,
    pub early_stop: bool,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        Self { max_iterations: 20, early_stop: true }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecodeResult {
    pub bits: Vec<u8>,
    pub converged: bool,
    pub iterations: usize,
}

/// Edge-indexed Tanner graph, built once and reused across frames.
#[derive(Clone, Debug)]
pub struct BpDecoder {
    n: usize,
    edge_var: Vec<usize>,
    check_edges: Vec<Vec<usize>>,
    var_edges: Vec<Vec<usize>>,
}

impl BpDecoder {
    pub fn new(h: &SparseBinaryMatrix) -> Self {
        let mut edge_var = Vec::with_capacity(h.ones());
        let mut check_edges = Vec::with_capacity(h.n_rows());
        let mut var_edges = vec![Vec::new(); h.n_cols()];
        for row in h.rows() {
            let mut es = Vec::with_capacity(row.len());
            for &v in row {
                let e = edge_var.len();
                edge_var.push(v);
                var_edges[v].push(e);
                es.push(e);
            }
            check_edges.push(es);
        }
        Self { n: h.n_cols(), edge_var, check_edges, var_edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn syndrome_zero(&self, bits: &[u8]) -> bool {
        self.check_edges.iter().all(|es| es.iter().fold(0u8, |acc, &e| acc ^ bits[self.edge_var[e]]) == 0)
    }

    pub fn decode(&self, llr: &[f64], cfg: &DecoderConfig) -> Result<DecodeResult> {
        if llr.len() != self.n {
            return Err(Error::Dimension(format!("llr length {} vs {} columns", llr.len(), self.n)));
        }
        if cfg.max_iterations == 0 {
            return Err(Error::InvalidParams("max_iterations must be at least 1".into()));
        }
        // bit-to-check messages are kept as tanh(L/2)
        let mut t: Vec<f64> = self.edge_var.iter().map(|&v| (0.5 * llr[v].clamp(-LLR_CLAMP, LLR_CLAMP)).tanh()).collect();
        let mut c2v = vec![0.0; t.len()];
        let mut bits = vec![0u8; self.n];
        let mut fwd = Vec::new();
        let mut iterations = 0;
        let mut converged = false;
        for it in 1..=cfg.max_iterations {
            iterations = it;
            for es in &self.check_edges {
                // leave-one-out products via prefix/suffix, no division by tiny values
                fwd.clear();
                let mut acc = 1.0;
                for &e in es {
                    fwd.push(acc);
                    acc *= t[e];
                }
                let mut suffix = 1.0;
                for (k, &e) in es.iter().enumerate().rev() {
                    c2v[e] = 2.0 * (fwd[k] * suffix).clamp(-TANH_CLAMP, TANH_CLAMP).atanh();
                    suffix *= t[e];
                }
            }
            for (v, es) in self.var_edges.iter().enumerate() {
                let total = llr[v] + es.iter().map(|&e| c2v[e]).sum::<f64>();
                bits[v] = u8::from(total < 0.0);
                for &e in es {
                    t[e] = (0.5 * (total - c2v[e]).clamp(-LLR_CLAMP, LLR_CLAMP)).tanh();
                }
            }
            if self.syndrome_zero(&bits) {
                converged = true;
                if cfg.early_stop {
                    break;
                }
            } else {
                converged = false;
            }
        }
        Ok(DecodeResult { bits, converged, iterations })
    }
}

pub fn bp_decode(h: &SparseBinaryMatrix, llr: &[f64], cfg: &DecoderConfig) -> Result<DecodeResult> {
    BpDecoder::new(h).decode(llr, cfg)
}

/// Noise standard deviation for Eb/N0 = `snr_db` at code rate `rate`.
pub fn noise_sigma(snr_db: f64, rate: f64) -> f64 {
    (1.0 / (2.0 * rate * 10f64.powf(snr_db / 10.0))).sqrt()
}

fn transmit<R: rand::Rng>(bits: &[u8], sigma: f64, rng: &mut R, out: &mut Vec<f64>) {
    let noise = Normal::new(0.0, sigma).expect("finite sigma");
    let scale = 2.0 / (sigma * sigma);
    out.clear();
    out.extend(bits.iter().map(|&b| {
        let x = if b == 0 { 1.0 } else { -1.0 };
        scale * (x + noise.sample(rng))
    }));
}

/// BPSK (0 -> +1) over AWGN, returning channel LLRs 2y/sigma^2.
pub fn awgn_channel(bits: &[u8], snr_db: f64, rate: f64, seed: u64) -> Result<Vec<f64>> {
    if !(rate > 0.0 && rate < 1.0) {
        return Err(Error::InvalidParams(format!("rate {rate} outside (0, 1)")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(bits.len());
    transmit(bits, noise_sigma(snr_db, rate), &mut rng, &mut out);
    Ok(out)
}

/// (FER+, FER-) = FER * exp(+-sqrt((N - Nerr) / (N * Nerr))).
pub fn fer_error_bars(trials: u64, errors: u64) -> Option<(f64, f64)> {
    if errors == 0 || trials == 0 || errors > trials {
        return None;
    }
    let (n, k) = (trials as f64, errors as f64);
    let fer = k / n;
    let w = ((n - k) / (n * k)).sqrt();
    Some((fer * w.exp(), fer * (-w).exp()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FerPoint {
    pub snr_db: f64,
    pub trials: u64,
    pub block_errors: u64,
    pub fer: f64,
    pub fer_plus: f64,
    pub fer_minus: f64,
    /// Trial cap hit before `min_block_errors`.
    pub censored: bool,
}

#[derive(Clone, Debug)]
pub struct SimConfig {
    pub min_block_errors: u64,
    pub max_trials: u64,
    pub workers: usize,
    /// Frames per worker between stopping-rule checks.
    pub batch: u64,
    pub decoder: DecoderConfig,
    /// Overrides the rate used for the SNR normalization.
    pub rate: Option<f64>,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            min_block_errors: 10,
            max_trials: 10_000_000,
            workers: rayon::current_num_threads().max(1),
            batch: 32,
            decoder: DecoderConfig::default(),
            rate: None,
        }
    }
}

/// Design rate if the layout declares one, else (n - rank) / n.
pub fn code_rate(bm: &BlockMatrix) -> f64 {
    bm.designed_rate().unwrap_or_else(|| {
        let h = bm.expand();
        (h.n_cols() - gf2_rank(&h)) as f64 / h.n_cols() as f64
    })
}

fn point(snr_db: f64, trials: u64, block_errors: u64, min_errors: u64) -> FerPoint {
    let fer = if trials == 0 { 0.0 } else { block_errors as f64 / trials as f64 };
    let (fer_plus, fer_minus) = fer_error_bars(trials, block_errors).unwrap_or((fer, fer));
    FerPoint { snr_db, trials, block_errors, fer, fer_plus, fer_minus, censored: block_errors < min_errors }
}

/// All-zero-codeword FER at each SNR. Each worker owns a ChaCha stream fixed by
/// (seed, point, worker), so results depend only on the seed and the worker count.
pub fn simulate_fer(bm: &BlockMatrix, snr_grid: &[f64], seed: u64, cfg: &SimConfig) -> Result<Vec<FerPoint>> {
    if cfg.workers == 0 || cfg.batch == 0 || cfg.min_block_errors == 0 {
        return Err(Error::InvalidParams("workers, batch and min_block_errors must be positive".into()));
    }
    let rate = cfg.rate.unwrap_or_else(|| code_rate(bm));
    if !(rate > 0.0 && rate < 1.0) {
        return Err(Error::InvalidParams(format!("rate {rate} outside (0, 1)")));
    }
    let dec = BpDecoder::new(&bm.expand());
    let zeros = vec![0u8; dec.n()];
    let mut out = Vec::with_capacity(snr_grid.len());
    for (pi, &snr) in snr_grid.iter().enumerate() {
        let sigma = noise_sigma(snr, rate);
        let mut rngs: Vec<ChaCha8Rng> = (0..cfg.workers)
            .map(|w| {
                let mut r = ChaCha8Rng::seed_from_u64(seed);
                r.set_stream(((pi as u64) << 32) | w as u64);
                r
            })
            .collect();
        let (mut trials, mut errors) = (0u64, 0u64);
        while errors < cfg.min_block_errors && trials < cfg.max_trials {
            let left = cfg.max_trials - trials;
            let per = cfg.batch.min(left.div_ceil(cfg.workers as u64));
            let res: Vec<Result<(u64, u64)>> = rngs
                .par_iter_mut()
                .enumerate()
                .map(|(w, rng)| {
                    // the last round may give some workers fewer frames
                    let quota = per.min(left.saturating_sub(per * w as u64));
                    let mut llr = Vec::with_capacity(zeros.len());
                    let mut errs = 0;
                    for _ in 0..quota {
                        transmit(&zeros, sigma, rng, &mut llr);
                        let r = dec.decode(&llr, &cfg.decoder)?;
                        errs += u64::from(r.bits.iter().any(|&b| b != 0));
                    }
                    Ok((quota, errs))
                })
                .collect();
            for r in res {
                let (t, e) = r?;
                trials += t;
                errors += e;
            }
        }
        out.push(point(snr, trials, errors, cfg.min_block_errors));
    }
    Ok(out)
}

/// Inclusive grid start, start + step, ... up to stop (with a small tolerance).
pub fn snr_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if step.is_nan() || step <= 0.0 || !start.is_finite() || !stop.is_finite() || stop < start {
        return Err(Error::InvalidParams(format!("bad SNR grid {start}:{stop}:{step}")));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|k| start + k as f64 * step).collect())
}

pub fn fer_csv(points: &[FerPoint]) -> String {
    let mut s = String::from("snr_db,trials,block_errors,fer,fer_plus,fer_minus\n");
    for p in points {
        s.push_str(&format!(
            "{},{},{},{:e},{:e},{:e}\n",
            p.snr_db, p.trials, p.block_errors, p.fer, p.fer_plus, p.fer_minus
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamming() -> SparseBinaryMatrix {
        SparseBinaryMatrix::from_rows(7, vec![vec![0, 1, 2, 4], vec![1, 2, 3, 5], vec![0, 1, 3, 6]]).unwrap()
    }

    #[test]
    fn clean_codeword_converges_at_once() {
        let llr: Vec<f64> = [1, 1, 0, 1, 0, 0, 1].iter().map(|&b: &u8| if b == 0 { 20.0 } else { -20.0 }).collect();
        let h = hamming();
        assert!(h.syndrome(&[1, 1, 0, 1, 0, 0, 1]).iter().all(|&x| x == 0));
        let r = bp_decode(&h, &llr, &DecoderConfig::default()).unwrap();
        assert_eq!((r.bits, r.converged, r.iterations), (vec![1, 1, 0, 1, 0, 0, 1], true, 1));
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(matches!(bp_decode(&hamming(), &[1.0; 6], &DecoderConfig::default()), Err(Error::Dimension(_))));
    }

    #[test]
    fn error_bar_multiplier() {
        let (p, m) = fer_error_bars(1000, 10).unwrap();
        assert!((p / 0.01 - (990f64 / 10000.0).sqrt().exp()).abs() < 1e-12);
        assert!((p / 0.01 - 1.3701).abs() < 1e-3);
        assert!((m * p - 1e-4).abs() < 1e-15);
        assert!(fer_error_bars(1000, 0).is_none());
    }

    #[test]
    fn grid_is_inclusive() {
        assert_eq!(snr_grid(0.0, 4.0, 0.5).unwrap().len(), 9);
        assert_eq!(snr_grid(1.0, 1.0, 1.0).unwrap(), vec![1.0]);
        assert!(snr_grid(0.0, 1.0, 0.0).is_err());
    }
}
