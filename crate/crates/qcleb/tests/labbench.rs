use proptest::prelude::*;
use qcleb::labbench::*;
use qcleb::Error;
use qcleb_core::lebcode::{pi_weight_of, LebWord, Partition};
use qcleb_core::linalg::Matrix;
use qcleb_core::qcleb::{generate_g, QCLebCode};
use qcleb_core::sigscheme::Mode;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub const EXPECTED_RATES: [&str; 50] = [
    "0.9500", "0.9503", "0.9503", "0.9504", "0.9504", "0.9500", "0.9501", "0.9501", "0.9502", "0.9500", "0.9000", "0.9006",
    "0.9007", "0.9002", "0.9003", "0.9001", "0.9002", "0.9000", "0.9001", "0.9000", "0.8000", "0.8012", "0.8005", "0.8003",
    "0.8002", "0.8001", "0.8001", "0.8001", "0.8000", "0.8000", "0.7000", "0.7003", "0.7003", "0.7005", "0.7000", "0.7002",
    "0.7002", "0.7001", "0.7001", "0.7000", "0.6000", "0.6009", "0.6002", "0.6001", "0.6004", "0.6003", "0.6001", "0.6001",
    "0.6000", "0.6000",
];

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn random_code(seed: u64, m: usize, p: usize, l: usize) -> QCLebCode {
    let partition = Partition::new(m, p * l, p).unwrap();
    let g = generate_g(&mut ChaCha20Rng::seed_from_u64(seed), partition, 2).unwrap();
    QCLebCode::new(&g, partition).unwrap()
}

#[test]
fn hamming_enumerator() {
    let code = hamming74().unwrap();
    assert_eq!((code.n(), code.k()), (7, 4));
    let w = weight_enumerator(code.generator(), 1, Metric::Hamming, 1 << 20).unwrap();
    assert_eq!(w.coeffs, vec![1, 0, 0, 7, 7, 0, 0, 1]);
    assert_eq!(w.to_string(), "1 + 7z^3 + 7z^4 + z^7");
    // with m = 1 the pi metric is the Hamming metric
    assert_eq!(weight_enumerator(code.generator(), 1, Metric::Pi, 1 << 20).unwrap().coeffs, w.coeffs);
}

#[test]
fn full_space_pi_enumerator() {
    for q in [2u8, 3] {
        for m in 1..=3usize {
            for s in 1..=4usize {
                let w = weight_enumerator(&Matrix::identity(m * s, q), m, Metric::Pi, 1 << 20).unwrap();
                let nz = (q as u64).pow(m as u32) - 1;
                let oracle: Vec<u64> = (0..=s as u64).map(|i| binomial(s as u64, i) * nz.pow(i as u32)).collect();
                assert_eq!(w.coeffs, oracle, "q={q} m={m} s={s}");
                assert_eq!(w.total(), (q as u64).pow((m * s) as u32));
            }
        }
    }
}

#[test]
fn rm13_computed_differs_from_stated() {
    let w = weight_enumerator(&rm13(), 1, Metric::Hamming, 1 << 20).unwrap();
    assert_eq!(w.to_string(), "1 + 14z^4 + z^8");
    assert_ne!(w.coeffs[..2], stated::RM13_ENUMERATOR);
    let quoted = WeightEnumerator { coeffs: stated::RM13_ENUMERATOR.to_vec(), metric: Metric::Hamming };
    assert_eq!(quoted.to_string(), stated::RM13_ENUMERATOR_TEXT);
    assert_eq!(w.total(), 16);
}

#[test]
fn enumerator_totals_and_zero_code() {
    for seed in 0..12 {
        let code = random_code(seed, 2, 2, 3);
        for metric in [Metric::Hamming, Metric::Pi] {
            let w = weight_enumerator(code.generator(), 2, metric, 1 << 20).unwrap();
            assert_eq!(w.total(), 1 << code.k());
            assert_eq!(w.coeffs[0], 1);
        }
    }
    let zero = weight_enumerator(&Matrix::zeros(0, 6, 2), 2, Metric::Pi, 1 << 20).unwrap();
    assert_eq!(zero.coeffs, vec![1, 0, 0, 0]);
    assert_eq!(zero.spread(), 0.0);
    assert!(weight_enumerator(&Matrix::identity(6, 2), 4, Metric::Pi, 1 << 20).is_err());
    assert!(weight_enumerator(&Matrix::identity(24, 2), 1, Metric::Hamming, 1000).is_err());
}

#[test]
fn rate_table_matches_frozen_values() {
    let rows = rate_table(&RATE_TABLE_PAIRS).unwrap();
    let text: Vec<String> = rows.iter().map(|r| r.rate_text()).collect();
    assert_eq!(text, EXPECTED_RATES);
    for r in &rows {
        assert!((r.rate - (r.n - r.m) as f64 / r.n as f64).abs() < 1e-12);
    }
}

#[test]
fn bench_code_shape() {
    let code = bench_code().unwrap();
    assert_eq!((code.n(), code.k(), code.t()), (24, 8, 3));
    let ex = example_code().unwrap();
    assert_eq!((ex.n(), ex.k(), ex.parity().rank()), (12, 2, 10));
}

#[test]
fn bsc_extremes() {
    let code = bench_code().unwrap();
    let dec = Decoder::meggitt(&code, 1 << 22).unwrap();
    let rows = ber_curve(&dec, &[Channel::Bsc { p_flip: 0.0 }, Channel::Bsc { p_flip: 0.5 }], 2000, 9).unwrap();
    assert_eq!((rows[0].raw_ber, rows[0].post_ber, rows[0].csep), (0.0, 0.0, 0.0));
    assert!((rows[1].raw_ber - 0.5).abs() < 0.01, "{}", rows[1].raw_ber);
    assert!(ber_curve(&dec, &[Channel::Bsc { p_flip: 1.5 }], 10, 0).is_err());
    assert!(ber_curve(&dec, &[Channel::Bsc { p_flip: 0.1 }], 0, 0).is_err());
}

#[test]
fn brute_force_matches_meggitt_successes() {
    let code = bench_code().unwrap();
    let meggitt = Decoder::meggitt(&code, 1 << 22).unwrap();
    let brute = Decoder::brute_force(&code, 1 << 22);
    let m = code.partition().m();
    let mut checked = 0;
    for (point, ebn0) in [2.0, 5.0].into_iter().enumerate() {
        for trial in 0..400 {
            let ch = Channel::AwgnBpsk { ebn0_db: ebn0 };
            let a = run_trial(&meggitt, ch, 17, point as u64, trial).unwrap();
            let b = run_trial(&brute, ch, 17, point as u64, trial).unwrap();
            assert_eq!((&a.sent, &a.received), (&b.sent, &b.received));
            let e: Vec<u8> = a.sent.bits().iter().zip(a.received.bits()).map(|(x, y)| x ^ y).collect();
            if a.decoded.is_some() {
                assert_eq!(a.decoded, b.decoded, "trial {trial} at {ebn0} dB");
            }
            if pi_weight_of(&e, m) <= code.t() {
                assert_eq!(a.decoded.as_ref(), Some(&a.sent));
                assert_eq!(b.decoded.as_ref(), Some(&b.sent));
                checked += 1;
            }
        }
    }
    assert!(checked > 300);
}

#[test]
fn post_decoding_ber_improves_on_default_grid() {
    let code = bench_code().unwrap();
    let dec = Decoder::meggitt(&code, 1 << 22).unwrap();
    let rows = ber_curve(&dec, &default_snr_grid(), 2000, 0).unwrap();
    assert_eq!(rows.len(), 9);
    for r in &rows {
        assert!(r.post_ber <= r.raw_ber, "{r:?}");
    }
    assert!(rows.windows(2).all(|w| w[1].raw_ber < w[0].raw_ber));
}

#[test]
fn seeded_runs_are_reproducible_across_thread_counts() {
    let code = bench_code().unwrap();
    let dec = Decoder::meggitt(&code, 1 << 22).unwrap();
    let grid = [Channel::AwgnBpsk { ebn0_db: 3.0 }, Channel::Bsc { p_flip: 0.05 }];
    let run = |threads: usize, seed: u64| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| ber_curve(&dec, &grid, 1500, seed).unwrap())
    };
    let serial = run(1, 5);
    assert_eq!(serial, run(4, 5));
    assert_eq!(serial, run(4, 5));
    assert_ne!(serial, run(4, 6));
}

#[test]
fn success_rate_at_zero_noise() {
    let code = bench_code().unwrap();
    let dec = Decoder::meggitt(&code, 1 << 22).unwrap();
    let r = decoding_success_rate(&dec, &[0.0, 0.02, 0.3], 1000, 3).unwrap();
    assert_eq!(r[0], (0.0, 1.0));
    assert!(r[1].1 > r[2].1);
}

#[test]
fn syndrome_statistics() {
    let code = example_code().unwrap();
    let e = LebWord::parse("000000001000", code.partition(), 2).unwrap().into_bits();
    let fixed = syndrome_distribution(&code, &ErrorModel::Fixed(e), 500, 1, 1 << 20).unwrap();
    assert_eq!(fixed.counts.len(), 1);
    assert_eq!(fixed.entropy_bits, 0.0);
    assert!(fixed.p_value < 1e-6);

    let uniform = syndrome_distribution(&code, &ErrorModel::Uniform, 200_000, 2, 1 << 20).unwrap();
    assert_eq!((uniform.space, uniform.dof), (1024, 1023));
    assert!((uniform.entropy_bits - 10.0).abs() < 0.05, "{}", uniform.entropy_bits);
    assert!(uniform.p_value > 1e-4);
    assert_eq!(uniform.counts.values().sum::<u64>(), 200_000);

    // weight <= 1 over s = 4 blocks of 3 bits: at most 1 + 4 * 7 patterns
    let light = syndrome_distribution(&code, &ErrorModel::UpToWeight(1), 20_000, 3, 1 << 20).unwrap();
    assert!(light.counts.len() <= 29);
    assert!(light.entropy_bits < uniform.entropy_bits);

    assert!(syndrome_distribution(&code, &ErrorModel::Fixed(vec![0; 5]), 10, 0, 1 << 20).is_err());
    assert!(syndrome_distribution(&code, &ErrorModel::Uniform, 10, 0, 100).is_err());
}

#[test]
fn syndrome_hex_is_injective_on_short_vectors() {
    let mut seen = std::collections::HashSet::new();
    for v in 0u32..1024 {
        let bits: Vec<u8> = (0..10).map(|i| ((v >> i) & 1) as u8).collect();
        assert!(seen.insert(syndrome_hex(&bits, 2)));
    }
}

#[test]
fn signature_streams_are_uncorrelated() {
    for mode in [Mode::Faithful, Mode::Extended] {
        let bits = signature_bits(800, 13, mode, 4);
        assert_eq!(bits.len(), 10_400);
        let rho = autocorrelation(&bits, 50).unwrap();
        assert!((rho[0] - 1.0).abs() < 1e-12);
        assert!(rho[1..].iter().all(|r| r.abs() < 0.1), "{mode:?}");
    }
}

#[test]
fn autocorrelation_domain_errors() {
    assert!(matches!(autocorrelation(&[0.0, 1.0], 2), Err(Error::Domain(_))));
    assert!(matches!(autocorrelation(&[3.0; 20], 5), Err(Error::ZeroVariance)));
}

proptest! {
    #[test]
    fn autocorrelation_is_bounded(seq in prop::collection::vec(0u8..2, 8..200)) {
        let seq: Vec<f64> = seq.into_iter().map(f64::from).collect();
        match autocorrelation(&seq, 5) {
            Ok(rho) => {
                prop_assert!((rho[0] - 1.0).abs() < 1e-12);
                prop_assert!(rho.iter().all(|r| r.abs() <= 1.0 + 1e-12));
            }
            Err(e) => prop_assert!(matches!(e, Error::ZeroVariance)),
        }
    }
}

#[test]
fn reduction_bench_solves_every_instance() {
    let r = reduction_trials(24, 11, 1 << 20).unwrap();
    assert_eq!(r, ReductionReport { trials: 24, solved: 24 });
}

#[test]
fn timing_and_model() {
    let t = timing_harness(256, 50, Mode::Extended, 0);
    assert_eq!(t.iter().map(|(n, _)| *n).collect::<Vec<_>>(), ["sign", "verify"]);
    for (_, s) in &t {
        assert!(s.min <= s.median && s.median <= s.max && s.min > 0.0);
    }
    let a = decode_error_model(100.0, 0.01).unwrap();
    let b = decode_error_model(100.0, 0.02).unwrap();
    assert!(b < a && a < 1.0);
}
