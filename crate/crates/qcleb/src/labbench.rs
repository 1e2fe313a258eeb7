//! Desk-scale measurements: weight enumerators, rate tables, channel simulation,
//! syndrome statistics, autocorrelation and timing.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use qcleb_core::decoder::{
    brute_force_decode, brute_force_sdp, build_syndrome_table, extract_solution, meggitt_decode, random_mask, random_mixing,
    random_sdp_instance, reduce_sdp, syndrome, SyndromeTable,
};
use qcleb_core::galois::FieldPoly;
use qcleb_core::lebcode::{for_each_span, pi_weight_of, LebWord, Partition, PiCyclicCode};
use qcleb_core::linalg::Matrix;
use qcleb_core::qcleb::{generate_g, QCLebCode};
use qcleb_core::sigscheme::{random_bits, sign, verify, Mode};
use qcleb_core::DEFAULT_BUDGET;
use rand::seq::index::sample;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};

/// Env var that caps exhaustive scans.
pub const BUDGET_ENV: &str = "QCLEB_BENCH_BUDGET";

/// Published timings and size for a 13-byte file, kept for comparison only.
pub const REFERENCE_SIGN_SECONDS: f64 = 0.000214;
pub const REFERENCE_VERIFY_SECONDS: f64 = 0.000033;
pub const REFERENCE_SIGNATURE_BYTES: usize = 200;

pub fn bench_budget() -> u64 {
    std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

/// The 12-bit worked example: m = 3, p = 2, l = 2, g = X^5 + X^9 + X^11.
pub fn example_code() -> Result<QCLebCode> {
    let partition = Partition::new(3, 4, 2)?;
    let g = FieldPoly::from_exponents(partition.ctx(2)?, &[5, 9, 11]);
    Ok(QCLebCode::new(&g, partition)?)
}

/// Shape (m, p, l) and seed of the default channel-simulation code.
pub const BENCH_CODE_SHAPE: (usize, usize, usize) = (1, 3, 8);
pub const BENCH_CODE_SEED: u64 = 0;

/// A random binary code with n = 24, k = 8 and pi-radius 3.
pub fn bench_code() -> Result<QCLebCode> {
    let (m, p, l) = BENCH_CODE_SHAPE;
    let partition = Partition::new(m, p * l, p)?;
    let g = generate_g(&mut ChaCha20Rng::seed_from_u64(BENCH_CODE_SEED), partition, 2)?;
    Ok(QCLebCode::new(&g, partition)?)
}

/// Eb/N0 from 0 to 8 dB in 1 dB steps.
pub fn default_snr_grid() -> Vec<Channel> {
    (0..=8).map(|d| Channel::AwgnBpsk { ebn0_db: d as f64 }).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Hamming,
    Pi,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightEnumerator {
    /// A_0, A_1, ...: number of codewords of each weight.
    pub coeffs: Vec<u64>,
    pub metric: Metric,
}

impl WeightEnumerator {
    pub fn total(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    /// Coefficient of variation of the nonzero-weight coefficients; 0 for a perfectly flat curve.
    pub fn spread(&self) -> f64 {
        let v: Vec<f64> = self.coeffs.iter().skip(1).filter(|&&a| a > 0).map(|&a| a as f64).collect();
        if v.len() < 2 {
            return 0.0;
        }
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / v.len() as f64).sqrt() / mean
    }
}

impl std::fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, &a)| a > 0) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, a) {
                (0, a) => write!(f, "{a}")?,
                (1, 1) => write!(f, "z")?,
                (1, a) => write!(f, "{a}z")?,
                (i, 1) => write!(f, "z^{i}")?,
                (i, a) => write!(f, "{a}z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Exhaustive count over the row space of `generator`; `m` is the block length for the pi metric.
pub fn weight_enumerator(generator: &Matrix, m: usize, metric: Metric, budget: u64) -> Result<WeightEnumerator> {
    let n = generator.cols();
    if m == 0 || !n.is_multiple_of(m) {
        return Err(Error::Domain(format!("block length {m} does not divide {n}")));
    }
    let len = match metric {
        Metric::Hamming => n + 1,
        Metric::Pi => n / m + 1,
    };
    let mut coeffs = vec![0u64; len];
    for_each_span(generator, budget, |_, w| {
        let weight = match metric {
            Metric::Hamming => w.iter().filter(|&&c| c != 0).count(),
            Metric::Pi => pi_weight_of(w, m),
        };
        coeffs[weight] += 1;
    })?;
    Ok(WeightEnumerator { coeffs, metric })
}

/// Hamming(7,4) as the cyclic code of 1 + X + X^3 with blocks of length 1.
pub fn hamming74() -> Result<PiCyclicCode> {
    let partition = Partition::cyclic(1, 7)?;
    let g = FieldPoly::from_exponents(partition.ctx(2)?, &[0, 1, 3]);
    Ok(PiCyclicCode::from_generator(&g, partition)?)
}

/// First-order Reed-Muller code of length 8.
pub fn rm13() -> Matrix {
    Matrix::from_bit_rows(&["11111111", "01010101", "00110011", "00001111"]).expect("valid rows")
}

/// Values quoted in the published description, kept verbatim next to the computed ones.
pub mod stated {
    /// RM(1,3) enumerator as quoted; the computed one is 1 + 14z^4 + z^8.
    pub const RM13_ENUMERATOR: [u64; 2] = [1, 7];
    pub const RM13_ENUMERATOR_TEXT: &str = "1 + 7z";
}

/// The ten block lengths and parity sizes at each of m/n = 0.05, 0.10, 0.20, 0.30, 0.40.
pub const RATE_TABLE_PAIRS: [(u32, u32); 50] = [
    (100, 5), (644, 32), (1188, 59), (1733, 86), (2277, 113), (2822, 141), (3366, 168), (3911, 195), (4455, 222), (5000, 250),
    (100, 10), (644, 64), (1188, 118), (1733, 173), (2277, 227), (2822, 282), (3366, 336), (3911, 391), (4455, 445), (5000, 500),
    (100, 20), (644, 128), (1188, 237), (1733, 346), (2277, 455), (2822, 564), (3366, 673), (3911, 782), (4455, 891), (5000, 1000),
    (100, 30), (644, 193), (1188, 356), (1733, 519), (2277, 683), (2822, 846), (3366, 1009), (3911, 1173), (4455, 1336), (5000, 1500),
    (100, 40), (644, 257), (1188, 475), (1733, 693), (2277, 910), (2822, 1128), (3366, 1346), (3911, 1564), (4455, 1782), (5000, 2000),
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateRow {
    pub n: u32,
    pub m: u32,
    pub rate: f64,
}

impl RateRow {
    pub fn rate_text(&self) -> String {
        format!("{:.4}", self.rate)
    }
}

/// R = 1 - m/n per pair.
pub fn rate_table(pairs: &[(u32, u32)]) -> Result<Vec<RateRow>> {
    pairs
        .iter()
        .map(|&(n, m)| {
            if n == 0 || m > n {
                return Err(Error::Domain(format!("need 0 <= m <= n, got n={n}, m={m}")));
            }
            Ok(RateRow { n, m, rate: 1.0 - m as f64 / n as f64 })
        })
        .collect()
}

/// P = exp(-n Eb/N0), with Eb/N0 linear.
pub fn decode_error_model(n: f64, ebn0: f64) -> Result<f64> {
    if ebn0 <= 0.0 || ebn0.is_nan() {
        return Err(Error::Domain(format!("Eb/N0 must be positive, got {ebn0}")));
    }
    Ok((-n * ebn0).exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Channel {
    Bsc { p_flip: f64 },
    /// BPSK 0 -> +1, 1 -> -1, Gaussian noise with variance 1 / (2 R Eb/N0), hard decision at 0.
    AwgnBpsk { ebn0_db: f64 },
}

impl Channel {
    pub fn x(&self) -> f64 {
        match *self {
            Channel::Bsc { p_flip } => p_flip,
            Channel::AwgnBpsk { ebn0_db } => ebn0_db,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Channel::Bsc { p_flip } if !(0.0..=1.0).contains(&p_flip) => {
                Err(Error::Domain(format!("flip probability {p_flip} outside [0, 1]")))
            }
            Channel::AwgnBpsk { ebn0_db } if !ebn0_db.is_finite() => Err(Error::Domain(String::from("SNR must be finite"))),
            _ => Ok(()),
        }
    }

    fn transmit(&self, bits: &[u8], rate: f64, rng: &mut ChaCha20Rng) -> Vec<u8> {
        match *self {
            Channel::Bsc { p_flip } => bits.iter().map(|&b| b ^ u8::from(rng.random_bool(p_flip))).collect(),
            Channel::AwgnBpsk { ebn0_db } => {
                let ebn0 = 10f64.powf(ebn0_db / 10.0);
                let sigma = (1.0 / (2.0 * rate * ebn0)).sqrt();
                let noise = Normal::new(0.0, sigma).expect("finite sigma");
                bits.iter()
                    .map(|&b| {
                        let x = if b == 0 { 1.0 } else { -1.0 };
                        u8::from(x + noise.sample(rng) < 0.0)
                    })
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderKind {
    Meggitt,
    BruteForce,
}

pub struct Decoder<'a> {
    code: &'a QCLebCode,
    kind: DecoderKind,
    table: Option<SyndromeTable>,
    budget: u64,
}

impl<'a> Decoder<'a> {
    /// Meggitt decoding with the radius configured on the code.
    pub fn meggitt(code: &'a QCLebCode, budget: u64) -> Result<Self> {
        let table = build_syndrome_table(code, code.t(), budget)?;
        Ok(Decoder { code, kind: DecoderKind::Meggitt, table: Some(table), budget })
    }

    pub fn brute_force(code: &'a QCLebCode, budget: u64) -> Self {
        Decoder { code, kind: DecoderKind::BruteForce, table: None, budget }
    }

    pub fn new(code: &'a QCLebCode, kind: DecoderKind, budget: u64) -> Result<Self> {
        match kind {
            DecoderKind::Meggitt => Decoder::meggitt(code, budget),
            DecoderKind::BruteForce => Ok(Decoder::brute_force(code, budget)),
        }
    }

    pub fn kind(&self) -> DecoderKind {
        self.kind
    }

    pub fn code(&self) -> &QCLebCode {
        self.code
    }

    /// None when the decoder gives up.
    pub fn decode(&self, y: &LebWord) -> Result<Option<LebWord>> {
        match &self.table {
            Some(table) => match meggitt_decode(y, table) {
                Ok((c, _)) => Ok(Some(c)),
                Err(qcleb_core::Error::DecodeFailure) => Ok(None),
                Err(e) => Err(e.into()),
            },
            None => Ok(Some(brute_force_decode(y, self.code.generator(), self.budget)?)),
        }
    }
}

/// Randomness for one trial: a key drawn from the seed, xor the trial index, on a stream per grid point.
/// Drawing the key first keeps runs under nearby seeds from sharing trials.
pub fn trial_rng(seed: u64, point: u64, trial: u64) -> ChaCha20Rng {
    let key = ChaCha20Rng::seed_from_u64(seed).next_u64();
    let mut rng = ChaCha20Rng::seed_from_u64(key ^ trial);
    rng.set_stream(point);
    rng
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trial {
    pub sent: LebWord,
    pub received: LebWord,
    pub decoded: Option<LebWord>,
}

pub fn run_trial(decoder: &Decoder<'_>, channel: Channel, seed: u64, point: u64, trial: u64) -> Result<Trial> {
    let code = decoder.code;
    if code.q() != 2 {
        return Err(qcleb_core::Error::NonBinaryField.into());
    }
    let mut rng = trial_rng(seed, point, trial);
    let u: Vec<u8> = (0..code.k()).map(|_| u8::from(rng.random_bool(0.5))).collect();
    let sent = code.encode(&u)?;
    let rate = code.k() as f64 / code.n() as f64;
    let received = LebWord::new(channel.transmit(sent.bits(), rate, &mut rng), code.partition(), 2)?;
    let decoded = decoder.decode(&received)?;
    Ok(Trial { sent, received, decoded })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BerRow {
    /// Eb/N0 in dB for AWGN, flip probability for the BSC.
    pub x: f64,
    pub raw_ber: f64,
    pub post_ber: f64,
    /// Fraction of blocks received in error, before decoding.
    pub csep: f64,
    pub failures: u64,
}

#[derive(Default, Clone, Copy)]
struct Counts {
    raw_bits: u64,
    post_bits: u64,
    raw_blocks: u64,
    failures: u64,
    successes: u64,
}

impl std::ops::Add for Counts {
    type Output = Counts;
    fn add(self, o: Counts) -> Counts {
        Counts {
            raw_bits: self.raw_bits + o.raw_bits,
            post_bits: self.post_bits + o.post_bits,
            raw_blocks: self.raw_blocks + o.raw_blocks,
            failures: self.failures + o.failures,
            successes: self.successes + o.successes,
        }
    }
}

fn diff_count(a: &[u8], b: &[u8]) -> u64 {
    a.iter().zip(b).filter(|(x, y)| x != y).count() as u64
}

fn count_point(decoder: &Decoder<'_>, channel: Channel, trials: u64, seed: u64, point: u64) -> Result<Counts> {
    channel.validate()?;
    if trials == 0 {
        return Err(Error::Domain(String::from("trials must be at least 1")));
    }
    let m = decoder.code.partition().m();
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let t = run_trial(decoder, channel, seed, point, i)?;
            let (sent, recv) = (t.sent.bits(), t.received.bits());
            let err: Vec<u8> = sent.iter().zip(recv).map(|(a, b)| a ^ b).collect();
            let out = t.decoded.as_ref().map_or(recv, LebWord::bits);
            Ok(Counts {
                raw_bits: diff_count(sent, recv),
                post_bits: diff_count(sent, out),
                raw_blocks: pi_weight_of(&err, m) as u64,
                failures: u64::from(t.decoded.is_none()),
                successes: u64::from(t.decoded.as_ref() == Some(&t.sent)),
            })
        })
        .try_reduce(Counts::default, |a, b| Ok(a + b))
}

/// Monte-Carlo bit and block error rates per grid point; a decoding failure leaves the word as received.
pub fn ber_curve(decoder: &Decoder<'_>, grid: &[Channel], trials: u64, seed: u64) -> Result<Vec<BerRow>> {
    let p = decoder.code.partition();
    let (n, s) = (p.n() as f64, p.s() as f64);
    grid.iter()
        .enumerate()
        .map(|(i, &ch)| {
            let c = count_point(decoder, ch, trials, seed, i as u64)?;
            let t = trials as f64;
            Ok(BerRow {
                x: ch.x(),
                raw_ber: c.raw_bits as f64 / (t * n),
                post_ber: c.post_bits as f64 / (t * n),
                csep: c.raw_blocks as f64 / (t * s),
                failures: c.failures,
            })
        })
        .collect()
}

/// Fraction of BSC trials decoded back to the sent word, per flip probability.
pub fn decoding_success_rate(decoder: &Decoder<'_>, error_rates: &[f64], trials: u64, seed: u64) -> Result<Vec<(f64, f64)>> {
    error_rates
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let c = count_point(decoder, Channel::Bsc { p_flip: p }, trials, seed, i as u64)?;
            Ok((p, c.successes as f64 / trials as f64))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ErrorModel {
    /// Uniformly random words.
    Uniform,
    /// Uniform over all patterns of pi-weight at most t.
    UpToWeight(usize),
    Fixed(Vec<u8>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyndromeStats {
    pub counts: BTreeMap<String, u64>,
    /// Number of possible syndromes, q^rank(H).
    pub space: u64,
    pub trials: u64,
    pub entropy_bits: f64,
    pub chi_square: f64,
    pub dof: u64,
    pub p_value: f64,
}

fn binomial(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn sample_error(model: &ErrorModel, partition: Partition, q: u8, rng: &mut ChaCha20Rng) -> Vec<u8> {
    let n = partition.n();
    match model {
        ErrorModel::Uniform => (0..n).map(|_| rng.random_range(0..q)).collect(),
        ErrorModel::Fixed(e) => e.clone(),
        ErrorModel::UpToWeight(t) => {
            let (m, s) = (partition.m(), partition.s());
            let nz = (q as f64).powi(m as i32) - 1.0;
            let t = (*t).min(s);
            let weights: Vec<f64> = (0..=t).map(|w| binomial(s as u64, w as u64) * nz.powi(w as i32)).collect();
            let total: f64 = weights.iter().sum();
            let mut x = rng.random::<f64>() * total;
            let mut w = t;
            for (i, &c) in weights.iter().enumerate() {
                if x < c {
                    w = i;
                    break;
                }
                x -= c;
            }
            let mut e = vec![0u8; n];
            for b in sample(rng, s, w) {
                let block = &mut e[b * m..(b + 1) * m];
                loop {
                    for c in block.iter_mut() {
                        *c = rng.random_range(0..q);
                    }
                    if block.iter().any(|&c| c != 0) {
                        break;
                    }
                }
            }
            e
        }
    }
}

/// Hex form of a syndrome: binary syndromes are packed four bits per digit,
/// lowest index in the lowest bit; other fields use the coefficient string.
pub fn syndrome_hex(s: &[u8], q: u8) -> String {
    if q != 2 {
        return qcleb_core::galois::coeff_string(s, q);
    }
    s.chunks(4)
        .map(|c| {
            let v = c.iter().enumerate().fold(0u32, |acc, (i, &b)| acc | (u32::from(b & 1) << i));
            char::from_digit(v, 16).expect("nibble")
        })
        .collect()
}

/// Histogram of H (X^(m p) e)^t under an error model, with entropy and a chi-square test against uniform.
pub fn syndrome_distribution(code: &QCLebCode, model: &ErrorModel, trials: u64, seed: u64, budget: u64) -> Result<SyndromeStats> {
    let h = code.parity();
    let q = code.q();
    let limit = budget.min(1 << 20);
    let space = (q as u64).checked_pow(h.rank() as u32).filter(|&v| v <= limit);
    let Some(space) = space else {
        return Err(qcleb_core::Error::BudgetExceeded { needed: u64::MAX, budget: limit }.into());
    };
    if trials == 0 {
        return Err(Error::Domain(String::from("trials must be at least 1")));
    }
    let partition = code.partition();
    if let ErrorModel::Fixed(e) = model {
        if e.len() != partition.n() {
            return Err(qcleb_core::Error::LengthMismatch { expected: partition.n(), got: e.len() }.into());
        }
    }
    let counts: HashMap<String, u64> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, 0, i);
            let e = LebWord::new(sample_error(model, partition, q, &mut rng), partition, q)?;
            Ok(syndrome_hex(&syndrome(h, &e)?, q))
        })
        .try_fold(HashMap::new, |mut acc, key: Result<String>| {
            *acc.entry(key?).or_insert(0u64) += 1;
            Ok::<_, Error>(acc)
        })
        .try_reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            Ok(a)
        })?;
    let counts: BTreeMap<String, u64> = counts.into_iter().collect();
    let t = trials as f64;
    let entropy_bits = -counts.values().map(|&c| c as f64 / t).map(|p| p * p.log2()).sum::<f64>();
    let expected = t / space as f64;
    let seen: f64 = counts.values().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let chi_square = seen + (space - counts.len() as u64) as f64 * expected;
    let dof = space - 1;
    let p_value = if dof == 0 { 1.0 } else { ChiSquared::new(dof as f64).map(|d| d.sf(chi_square)).unwrap_or(f64::NAN) };
    Ok(SyndromeStats { counts, space, trials, entropy_bits, chi_square, dof, p_value })
}

/// rho_k = sum_{i < N-k} (x_i - mu)(x_{i+k} - mu) / sum_i (x_i - mu)^2 for k = 0..=max_lag.
pub fn autocorrelation(seq: &[f64], max_lag: usize) -> Result<Vec<f64>> {
    if max_lag >= seq.len() {
        return Err(Error::Domain(format!("max lag {max_lag} needs more than {} samples", seq.len())));
    }
    let mu = seq.iter().sum::<f64>() / seq.len() as f64;
    let d: Vec<f64> = seq.iter().map(|x| x - mu).collect();
    let den: f64 = d.iter().map(|x| x * x).sum();
    if den == 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok((0..=max_lag).map(|k| d.iter().zip(&d[k..]).map(|(a, b)| a * b).sum::<f64>() / den).collect())
}

/// Concatenated response vectors z of `count` signatures under one random n-bit key.
pub fn signature_bits(n: usize, count: usize, mode: Mode, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let sk = random_bits(&mut rng, n);
    let mut out = Vec::with_capacity(n * count);
    for i in 0..count {
        let sig = sign(&sk, &(i as u64).to_le_bytes(), &mut rng, mode);
        out.extend(sig.z.iter().map(|&b| b as f64));
    }
    out
}

/// Instance shapes (r0, n0, m, t, l) cycled through by [`reduction_trials`].
pub const REDUCTION_SHAPES: [(usize, usize, usize, usize, usize); 4] = [(3, 4, 1, 1, 2), (3, 4, 2, 1, 2), (2, 4, 1, 1, 3), (4, 6, 2, 1, 2)];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionReport {
    pub trials: usize,
    /// Instances whose reduced form was solved and mapped back to a valid witness.
    pub solved: usize,
}

/// Plants a solution in random instances, reduces each one, solves the reduced
/// instance exhaustively and checks the extracted witness against the original.
pub fn reduction_trials(trials: usize, seed: u64, budget: u64) -> Result<ReductionReport> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut solved = 0;
    for i in 0..trials {
        let (r0, n0, m, t, l) = REDUCTION_SHAPES[i % REDUCTION_SHAPES.len()];
        let (inst, _) = random_sdp_instance(&mut rng, r0, n0, m, t, 2)?;
        let mixing = random_mixing(&mut rng, r0, l, 2);
        let mask = random_mask(&mut rng, &inst, l);
        let reduced = reduce_sdp(&inst, l, &mixing, &mask)?;
        let Some(e) = brute_force_sdp(&reduced.h, &reduced.s, reduced.t, m, reduced.n0, budget)? else { continue };
        if let Ok(w) = extract_solution(&inst, &reduced, &e) {
            solved += usize::from(inst.is_solution(&w));
        }
    }
    Ok(ReductionReport { trials, solved })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimingStats {
    pub reps: usize,
    pub median: f64,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

/// Wall time in seconds over `reps` runs after `warmup` unmeasured runs.
pub fn time_op<F: FnMut()>(reps: usize, warmup: usize, mut f: F) -> TimingStats {
    for _ in 0..warmup {
        f();
    }
    let reps = reps.max(1);
    let mut samples: Vec<f64> = (0..reps)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed().as_secs_f64()
        })
        .collect();
    samples.sort_by(f64::total_cmp);
    let median = if reps % 2 == 1 { samples[reps / 2] } else { (samples[reps / 2 - 1] + samples[reps / 2]) / 2.0 };
    TimingStats { reps, median, mean: samples.iter().sum::<f64>() / reps as f64, min: samples[0], max: samples[reps - 1] }
}

/// Peak resident set size in KiB (Linux only).
pub fn peak_rss_kib() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

/// Sign and verify timings for an n-bit key and a 13-byte message.
pub fn timing_harness(n: usize, reps: usize, mode: Mode, seed: u64) -> Vec<(&'static str, TimingStats)> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let sk = random_bits(&mut rng, n);
    let msg = b"13-byte file.";
    let pk = Matrix::zeros(0, 0, 2);
    let sig = sign(&sk, msg, &mut rng, mode);
    let sign_stats = time_op(reps, reps / 10 + 1, || {
        std::hint::black_box(sign(&sk, msg, &mut rng, mode));
    });
    let verify_stats = time_op(reps, reps / 10 + 1, || {
        std::hint::black_box(verify(&pk, msg, &sig));
    });
    vec![("sign", sign_stats), ("verify", verify_stats)]
}
