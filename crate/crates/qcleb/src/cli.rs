//! Command-line frontend.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use qcleb_core::decoder::build_syndrome_table;
use qcleb_core::galois::{coeff_string, parse_coeff_string};
use qcleb_core::linalg::Matrix;
use qcleb_core::lebcode::{LebWord, Partition};
use qcleb_core::qcleb::{generate_g, QCLebCode};
use qcleb_core::sigscheme::{
    from_bytes, keygen, parse_public_key, parse_secret_key, parse_signature, public_key_to_text, secret_key_to_text,
    serialize_signature, sign, to_bytes, verify, Mode, SIGNATURE_TAG,
};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::io::{ber_table, autocorr_table, rate_rows_table, syndrome_table, CliConfig, CodeDescription, Format, Table};
use crate::labbench::{
    self, autocorrelation, bench_code, ber_curve, example_code, peak_rss_kib, rate_table, reduction_trials,
    signature_bits, syndrome_distribution, timing_harness, weight_enumerator, Channel, Decoder, DecoderKind,
    ErrorModel, Metric, RATE_TABLE_PAIRS,
};

const FORMATS_HELP: &str = "\
Signature text (one line):
  QCLEBSIG1|mode=<F|X>|c=<bits>|e=<1 bit or 32 hex chars>|z=<bits>
  mode F carries a one-bit challenge over c alone; mode X (the default) a
  16-byte challenge over c, z and the message, in hex.
  c has the length of z, or length 1 for the inner-product commitment.
  `sign --binary` writes the packed form instead; `verify` accepts either.

Secret key file:
  QCLEB-SK1
  q,m,p,l
  <n bits>

Public key file:
  QCLEB-PK1
  q,m,p,l
  <n rows of k bits>

Code file (JSON): {\"q\":2,\"m\":3,\"s\":4,\"p\":2,\"g\":\"000001000101\"}
  g lists coefficients from X^0 upwards; l = s / p may be given instead of s;
  optional t overrides the decoding radius.

Exit codes: 0 success, 1 verification failed, 2 usage or input error,
3 budget exceeded, decoding failure or syndrome collision.";

#[derive(Debug, Parser)]
#[command(name = "qcleb", version, about = "QC-LEB codes, decoding, signatures and benches", after_long_help = FORMATS_HELP)]
pub struct Cli {
    /// TOML file with defaults for q, m, p, l, s, generator, seed, mode, budget, threads, output.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// RNG seed. Benches default to 0; keygen and sign default to OS entropy.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for parallel benches.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Cap on exhaustive enumeration work.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CodeArgs {
    /// JSON code description.
    #[arg(long)]
    pub code: Option<PathBuf>,
    #[arg(long)]
    pub q: Option<u32>,
    /// Block length.
    #[arg(long)]
    pub m: Option<usize>,
    /// Blocks per circulant.
    #[arg(long)]
    pub p: Option<usize>,
    /// Circulants per row.
    #[arg(long)]
    pub l: Option<usize>,
    /// Total number of blocks, used when l is absent.
    #[arg(long)]
    pub s: Option<usize>,
    /// Generator coefficients from X^0 upwards.
    #[arg(long)]
    pub g: Option<String>,
    /// Decoding radius override.
    #[arg(long)]
    pub t: Option<usize>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct OutArgs {
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Faithful,
    Extended,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Faithful => Mode::Faithful,
            ModeArg::Extended => Mode::Extended,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DecoderArg {
    Meggitt,
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChannelArg {
    Awgn,
    Bsc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Hamming(7,4), cyclic with g = 1 + X + X^3.
    Hamming74,
    /// First-order Reed-Muller code of length 8.
    Rm13,
    /// The whole space with block length m and s blocks.
    Full,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random code, or print the worked example.
    GenCode {
        #[command(flatten)]
        code: CodeArgs,
        /// Emit the 12-bit worked example instead of a random code.
        #[arg(long)]
        example: bool,
        /// Retry successive seeds until the radius reaches this value.
        #[arg(long, default_value_t = 0)]
        min_t: usize,
        #[arg(long, default_value_t = 1000)]
        tries: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encode a message of k symbols.
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        /// Message symbols, first symbol first.
        #[arg(long)]
        msg: String,
    },
    /// Decode a received word; prints the codeword and the error.
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        /// Received word, coefficient of X^0 first.
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = DecoderArg::Meggitt)]
        decoder: DecoderArg,
    },
    /// Print the syndrome table as phase,error_coeffs,syndrome_coeffs.
    Table {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Generate a key pair for a code (random from m, p, l when no generator is given).
    Keygen {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        sk: Option<PathBuf>,
        #[arg(long)]
        pk: Option<PathBuf>,
    },
    /// Sign a message.
    Sign {
        #[arg(long)]
        sk: PathBuf,
        #[command(flatten)]
        msg: MessageArgs,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Write the packed binary form.
        #[arg(long)]
        binary: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a signature; exits 1 when it does not verify.
    Verify {
        #[arg(long)]
        pk: PathBuf,
        #[command(flatten)]
        msg: MessageArgs,
        #[arg(long)]
        sig: PathBuf,
    },
    /// Bit error rates before and after decoding over a channel grid.
    BenchBer {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value_t = ChannelArg::Awgn)]
        channel: ChannelArg,
        /// Comma-separated Eb/N0 values in dB, or flip probabilities for bsc.
        #[arg(long, value_delimiter = ',')]
        grid: Vec<f64>,
        #[arg(long, default_value_t = 2000)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = DecoderArg::Meggitt)]
        decoder: DecoderArg,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Code rates 1 - m/n.
    BenchRate {
        /// Comma-separated n:m pairs; the built-in table of 50 when absent.
        #[arg(long)]
        pairs: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Weight enumerator by exhaustive scan.
    BenchEnum {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum)]
        preset: Option<Preset>,
        #[arg(long, value_enum, default_value_t = MetricArg::Pi)]
        metric: MetricArg,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Closed-form decoding error exp(-n Eb/N0) over an Eb/N0 grid.
    BenchModel {
        #[arg(long, default_value_t = 24)]
        n: u32,
        /// Comma-separated Eb/N0 values in dB; 0..8 when absent.
        #[arg(long, value_delimiter = ',')]
        grid: Vec<f64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Syndrome histogram with entropy and a chi-square test.
    BenchSyndromes {
        #[command(flatten)]
        code: CodeArgs,
        /// `uniform` or `weight:<t>`.
        #[arg(long, default_value = "uniform")]
        model: String,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Autocorrelation of concatenated signature responses.
    BenchAutocorr {
        #[arg(long, default_value_t = 800)]
        n: usize,
        /// Number of signatures.
        #[arg(long, default_value_t = 13)]
        count: usize,
        #[arg(long, default_value_t = 50)]
        max_lag: usize,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Sign and verify timings.
    BenchTime {
        #[arg(long, default_value_t = 800)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        reps: usize,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Reduce random syndrome decoding instances and check the recovered witnesses.
    ReduceSdp {
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Hamming,
    Pi,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct MessageArgs {
    /// File holding the message bytes.
    #[arg(long)]
    pub msg: Option<PathBuf>,
    /// Message given inline.
    #[arg(long)]
    pub message: Option<String>,
}

impl MessageArgs {
    fn bytes(&self) -> Result<Vec<u8>> {
        match (&self.msg, &self.message) {
            (Some(p), _) => Ok(std::fs::read(p)?),
            (None, Some(m)) => Ok(m.as_bytes().to_vec()),
            (None, None) => Err(Error::Usage(String::from("give --msg or --message"))),
        }
    }
}

struct Env {
    config: CliConfig,
    seed: Option<u64>,
    budget: u64,
}

impl Env {
    fn bench_seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    fn fresh_seed(&self) -> u64 {
        self.seed.unwrap_or_else(rand::random)
    }

    fn mode(&self, flag: Option<ModeArg>) -> Result<Mode> {
        if let Some(m) = flag {
            return Ok(m.into());
        }
        match &self.config.mode {
            Some(s) => ModeArg::from_str(s, true).map(Mode::from).map_err(|_| Error::Usage(format!("unknown mode {s:?}"))),
            None => Ok(Mode::Extended),
        }
    }

    fn emit(&self, out: Option<&Path>, text: &str) -> Result<()> {
        match out.or(self.config.output.as_deref()) {
            Some(path) => Ok(std::fs::write(path, text)?),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn emit_table(&self, out: &OutArgs, table: &Table) -> Result<()> {
        self.emit(out.out.as_deref(), &table.render(out.format)?)
    }

    fn shape(&self, a: &CodeArgs) -> Result<(u32, usize, usize, usize)> {
        let q = a.q.or(self.config.q).unwrap_or(2);
        let m = a.m.or(self.config.m).ok_or_else(|| Error::Usage(String::from("missing --m")))?;
        let p = a.p.or(self.config.p).unwrap_or(1);
        let l = match (a.l, a.s) {
            (Some(l), _) => l,
            (None, Some(s)) if s % p == 0 => s / p,
            (None, Some(s)) => return Err(Error::Usage(format!("s = {s} is not a multiple of p = {p}"))),
            (None, None) => self.config.l_for(p)?.ok_or_else(|| Error::Usage(String::from("missing --l or --s")))?,
        };
        Ok((q, m, p, l))
    }

    /// A code from `--code`, the config generator, or `--g` with the shape flags.
    fn code(&self, a: &CodeArgs) -> Result<Option<QCLebCode>> {
        let desc = if let Some(path) = a.code.as_ref().or(self.config.generator.as_ref()) {
            CodeDescription::load(path)?
        } else if let Some(g) = &a.g {
            let (q, m, p, l) = self.shape(a)?;
            CodeDescription { q, m, s: Some(p * l), p, l: None, g: g.clone(), t: None, n: None, k: None }
        } else {
            return Ok(None);
        };
        let desc = CodeDescription { t: a.t.or(desc.t), ..desc };
        desc.to_code().map(Some)
    }

    fn require_code(&self, a: &CodeArgs) -> Result<QCLebCode> {
        self.code(a)?.ok_or_else(|| Error::Usage(String::from("no code given: use --code, --g or a config generator")))
    }
}

fn random_code(q: u32, m: usize, p: usize, l: usize, seed: u64) -> Result<QCLebCode> {
    let partition = Partition::new(m, p * l, p)?;
    let g = generate_g(&mut ChaCha20Rng::seed_from_u64(seed), partition, q)?;
    Ok(QCLebCode::new(&g, partition)?)
}

fn decoder_kind(d: DecoderArg) -> DecoderKind {
    match d {
        DecoderArg::Meggitt => DecoderKind::Meggitt,
        DecoderArg::Brute => DecoderKind::BruteForce,
    }
}

fn parse_pairs(s: &str) -> Result<Vec<(u32, u32)>> {
    s.split(',')
        .map(|item| {
            let (n, m) = item.trim().split_once(':').ok_or_else(|| Error::Usage(format!("bad pair {item:?}, want n:m")))?;
            let parse = |v: &str| v.trim().parse::<u32>().map_err(|_| Error::Usage(format!("bad number {v:?}")));
            Ok((parse(n)?, parse(m)?))
        })
        .collect()
}

fn parse_model(s: &str) -> Result<ErrorModel> {
    if s == "uniform" {
        return Ok(ErrorModel::Uniform);
    }
    s.strip_prefix("weight:")
        .and_then(|t| t.parse().ok())
        .map(ErrorModel::UpToWeight)
        .ok_or_else(|| Error::Usage(format!("unknown error model {s:?}, want uniform or weight:<t>")))
}

fn enumerator_table(coeffs: &[u64]) -> Table {
    let mut t = Table::new(&["weight", "count"]);
    for (w, c) in coeffs.iter().enumerate() {
        t.push(vec![w.to_string(), c.to_string()]);
    }
    t
}

fn execute(cli: Cli) -> Result<()> {
    let config = match &cli.config {
        Some(p) => CliConfig::load(p)?,
        None => CliConfig::default(),
    };
    let env = Env {
        seed: cli.seed.or(config.seed),
        budget: cli.budget.or(config.budget).unwrap_or_else(labbench::bench_budget),
        config,
    };
    match cli.threads.or(env.config.threads) {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Usage(format!("thread pool: {e}")))?;
            pool.install(|| dispatch(&env, cli.command))
        }
        None => dispatch(&env, cli.command),
    }
}

fn dispatch(env: &Env, command: Command) -> Result<()> {
    match command {
        Command::GenCode { code, example, min_t, tries, out } => {
            let chosen = if example {
                example_code()?
            } else {
                let (q, m, p, l) = env.shape(&code)?;
                let seed = env.bench_seed();
                (0..tries.max(1))
                    .map(|i| random_code(q, m, p, l, seed.wrapping_add(i)))
                    .find(|c| c.as_ref().map_or(true, |c| c.t() >= min_t))
                    .ok_or_else(|| Error::Usage(format!("no code with t >= {min_t} in {tries} tries")))??
            };
            let chosen = match code.t {
                Some(t) => chosen.with_t(t),
                None => chosen,
            };
            eprintln!("n = {}, k = {}, t = {}", chosen.n(), chosen.k(), chosen.t());
            env.emit(out.as_deref(), &(CodeDescription::from_code(&chosen).to_json()? + "\n"))
        }
        Command::Encode { code, msg } => {
            let code = env.require_code(&code)?;
            let u = parse_coeff_string(&msg, code.q())?;
            let c = code.encode(&u)?;
            println!("{}", coeff_string(c.bits(), code.q()));
            Ok(())
        }
        Command::Decode { code, word, decoder } => {
            let code = env.require_code(&code)?;
            let y = LebWord::parse(&word, code.partition(), code.q())?;
            let dec = Decoder::new(&code, decoder_kind(decoder), env.budget)?;
            let c = dec.decode(&y)?.ok_or(qcleb_core::Error::DecodeFailure)?;
            let e = y.sub(&c)?;
            println!("{}", coeff_string(c.bits(), code.q()));
            println!("{}", coeff_string(e.bits(), code.q()));
            Ok(())
        }
        Command::Table { code, out } => {
            let code = env.require_code(&code)?;
            let table = build_syndrome_table(&code, code.t(), env.budget)?;
            let mut t = Table::new(&["phase", "error_coeffs", "syndrome_coeffs"]);
            for (phase, e, s) in table.entries() {
                t.push(vec![phase.to_string(), e, s]);
            }
            env.emit_table(&out, &t)
        }
        Command::Keygen { code, sk, pk } => {
            let seed = env.fresh_seed();
            let c = match env.code(&code)? {
                Some(c) => c,
                None => {
                    let (q, m, p, l) = env.shape(&code)?;
                    random_code(q, m, p, l, seed)?
                }
            };
            let kp = keygen(&c, &mut ChaCha20Rng::seed_from_u64(seed ^ 0x6b65_7967))?;
            let (skt, pkt) = (secret_key_to_text(&kp), public_key_to_text(&kp));
            match sk {
                Some(p) => std::fs::write(p, skt)?,
                None => print!("{skt}"),
            }
            match pk {
                Some(p) => std::fs::write(p, pkt)?,
                None => print!("{pkt}"),
            }
            Ok(())
        }
        Command::Sign { sk, msg, mode, binary, out } => {
            let (_, key) = parse_secret_key(&std::fs::read_to_string(sk)?)?;
            let mode = env.mode(mode)?;
            let sig = sign(&key, &msg.bytes()?, &mut ChaCha20Rng::seed_from_u64(env.fresh_seed()), mode);
            if binary {
                let bytes = to_bytes(&sig)?;
                match out {
                    Some(p) => std::fs::write(p, bytes)?,
                    None => std::io::Write::write_all(&mut std::io::stdout(), &bytes)?,
                }
                Ok(())
            } else {
                env.emit(out.as_deref(), &(serialize_signature(&sig) + "\n"))
            }
        }
        Command::Verify { pk, msg, sig } => {
            let (_, key) = parse_public_key(&std::fs::read_to_string(pk)?)?;
            let raw = std::fs::read(sig)?;
            let sig = if raw.starts_with(SIGNATURE_TAG.as_bytes()) {
                let text = std::str::from_utf8(&raw).map_err(|_| qcleb_core::Error::Parse(String::from("signature is not UTF-8")))?;
                parse_signature(text.trim())?
            } else {
                from_bytes(&raw)?
            };
            if sig.z.len() == key.rows() && verify(&key, &msg.bytes()?, &sig) {
                println!("valid");
                Ok(())
            } else {
                println!("invalid");
                Err(Error::VerificationFailed)
            }
        }
        Command::BenchBer { code, channel, grid, trials, decoder, out } => {
            let code = match env.code(&code)? {
                Some(c) => c,
                None => bench_code()?,
            };
            let channels: Vec<Channel> = match (channel, grid.is_empty()) {
                (ChannelArg::Awgn, true) => labbench::default_snr_grid(),
                (ChannelArg::Awgn, false) => grid.iter().map(|&d| Channel::AwgnBpsk { ebn0_db: d }).collect(),
                (ChannelArg::Bsc, true) => [0.01, 0.02, 0.05, 0.1, 0.15, 0.2].iter().map(|&p| Channel::Bsc { p_flip: p }).collect(),
                (ChannelArg::Bsc, false) => grid.iter().map(|&p| Channel::Bsc { p_flip: p }).collect(),
            };
            let dec = Decoder::new(&code, decoder_kind(decoder), env.budget)?;
            let rows = ber_curve(&dec, &channels, trials, env.bench_seed())?;
            let failures: u64 = rows.iter().map(|r| r.failures).sum();
            eprintln!("n = {}, k = {}, t = {}, decoding failures = {failures}", code.n(), code.k(), code.t());
            env.emit_table(&out, &ber_table(&rows, channel == ChannelArg::Bsc))
        }
        Command::BenchRate { pairs, out } => {
            let pairs = match pairs {
                Some(s) => parse_pairs(&s)?,
                None => RATE_TABLE_PAIRS.to_vec(),
            };
            env.emit_table(&out, &rate_rows_table(&rate_table(&pairs)?))
        }
        Command::BenchEnum { code, preset, metric, out } => {
            let metric = match metric {
                MetricArg::Hamming => Metric::Hamming,
                MetricArg::Pi => Metric::Pi,
            };
            let (generator, m) = match preset {
                Some(Preset::Hamming74) => (labbench::hamming74()?.generator().clone(), 1),
                Some(Preset::Rm13) => {
                    eprintln!("stated enumerator: {}", labbench::stated::RM13_ENUMERATOR_TEXT);
                    (labbench::rm13(), 1)
                }
                Some(Preset::Full) => {
                    let m = code.m.ok_or_else(|| Error::Usage(String::from("full preset needs --m")))?;
                    let s = code.s.ok_or_else(|| Error::Usage(String::from("full preset needs --s")))?;
                    let q = code.q.unwrap_or(2);
                    let ctx = Partition::cyclic(m, s)?.ctx(q)?;
                    (Matrix::identity(m * s, ctx.q()), m)
                }
                None => {
                    let c = env.require_code(&code)?;
                    (c.generator().clone(), c.partition().m())
                }
            };
            let w = weight_enumerator(&generator, m, metric, env.budget)?;
            eprintln!("spread (coefficient of variation) = {:.4}", w.spread());
            println!("{w}");
            if out.out.is_some() {
                env.emit_table(&out, &enumerator_table(&w.coeffs))?;
            }
            Ok(())
        }
        Command::BenchModel { n, grid, out } => {
            let grid = if grid.is_empty() { (0..=8).map(f64::from).collect() } else { grid };
            let mut t = Table::new(&["snr_db", "p_error"]);
            for db in grid {
                let p = labbench::decode_error_model(n as f64, 10f64.powf(db / 10.0))?;
                t.push(vec![db.to_string(), p.to_string()]);
            }
            env.emit_table(&out, &t)
        }
        Command::BenchSyndromes { code, model, trials, out } => {
            let code = match env.code(&code)? {
                Some(c) => c,
                None => example_code()?,
            };
            let stats = syndrome_distribution(&code, &parse_model(&model)?, trials, env.bench_seed(), env.budget)?;
            eprintln!(
                "space = {}, distinct = {}, entropy = {:.4} bits (max {:.4}), chi2 = {:.2} on {} dof, p = {:.4}",
                stats.space,
                stats.counts.len(),
                stats.entropy_bits,
                (stats.space as f64).log2(),
                stats.chi_square,
                stats.dof,
                stats.p_value
            );
            env.emit_table(&out, &syndrome_table(&stats))
        }
        Command::BenchAutocorr { n, count, max_lag, mode, out } => {
            let bits = signature_bits(n, count, env.mode(mode)?, env.bench_seed());
            let rho = autocorrelation(&bits, max_lag)?;
            let worst = rho.iter().skip(1).fold(0.0f64, |a, r| a.max(r.abs()));
            eprintln!("samples = {}, max |rho| over lags 1..={max_lag} = {worst:.4}", bits.len());
            env.emit_table(&out, &autocorr_table(&rho))
        }
        Command::BenchTime { n, reps, mode } => {
            let mode = env.mode(mode)?;
            for (name, s) in timing_harness(n, reps, mode, env.bench_seed()) {
                println!(
                    "{name}: median {:.3} us, mean {:.3} us, min {:.3} us, max {:.3} us over {} runs",
                    s.median * 1e6,
                    s.mean * 1e6,
                    s.min * 1e6,
                    s.max * 1e6,
                    s.reps
                );
            }
            let mut rng = ChaCha20Rng::seed_from_u64(env.bench_seed());
            let sk = qcleb_core::sigscheme::random_bits(&mut rng, n);
            let sig = sign(&sk, b"13-byte file.", &mut rng, mode);
            println!("signature: {} bytes packed", to_bytes(&sig)?.len());
            println!(
                "reference: sign {:.0} us, verify {:.0} us, {} bytes",
                labbench::REFERENCE_SIGN_SECONDS * 1e6,
                labbench::REFERENCE_VERIFY_SECONDS * 1e6,
                labbench::REFERENCE_SIGNATURE_BYTES
            );
            if let Some(kib) = peak_rss_kib() {
                println!("peak rss: {kib} KiB");
            }
            Ok(())
        }
        Command::ReduceSdp { trials } => {
            let r = reduction_trials(trials, env.bench_seed(), env.budget)?;
            println!("solved {}/{}", r.solved, r.trials);
            if r.solved == r.trials {
                Ok(())
            } else {
                Err(Error::VerificationFailed)
            }
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(Error::VerificationFailed) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
