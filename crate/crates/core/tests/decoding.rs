mod common;

use qcleb_core::decoder::{
    brute_force_decode, brute_force_sdp, build_syndrome_table, extract_solution, meggitt_decode, random_mask,
    random_mixing, random_sdp_instance, reduce_sdp, syndrome, table_size, SdpInstance, MEGGITT_SHIFT_BLOCKS,
};
use qcleb_core::lebcode::{for_each_span, pi_distance, LebWord, Partition};
use qcleb_core::linalg::Matrix;
use qcleb_core::qcleb::{generate_g, QCLebCode};
use qcleb_core::Error;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Every error of pi-weight 1..=t, built from block supports and nonzero block values.
fn errors_up_to(partition: Partition, q: u8, t: usize) -> Vec<LebWord> {
    let (m, s) = (partition.m(), partition.s());
    let block_values: Vec<Vec<u8>> = {
        let mut out = Vec::new();
        for_each_span(&Matrix::identity(m, q), 1 << 20, |_, v| {
            if v.iter().any(|&c| c != 0) {
                out.push(v.to_vec());
            }
        })
        .unwrap();
        out
    };
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<u8>, usize)> = vec![(0, vec![0u8; partition.n()], 0)];
    while let Some((start, word, w)) = stack.pop() {
        if w > 0 {
            out.push(LebWord::new(word.clone(), partition, q).unwrap());
        }
        if w == t {
            continue;
        }
        for b in start..s {
            for v in &block_values {
                let mut next = word.clone();
                next[b * m..(b + 1) * m].copy_from_slice(v);
                stack.push((b + 1, next, w + 1));
            }
        }
    }
    out
}

fn check_equivalence(code: &QCLebCode, rng: &mut ChaCha20Rng) -> usize {
    let t = code.t();
    let table = build_syndrome_table(code, t, 1 << 20).unwrap();
    // each phase stores at most one pattern per coset
    assert!(table.len() / table.phases() <= 1 << (code.n() - code.k()));
    let words = code.codewords().unwrap();
    let errors = errors_up_to(code.partition(), code.q(), t);
    let mut checked = 0;
    for e in &errors {
        let c = &words[rng.next_u32() as usize % words.len()];
        let y = c.add(e).unwrap();
        let (decoded, err) = meggitt_decode(&y, &table).unwrap();
        let oracle = brute_force_decode(&y, code.generator(), 1 << 20).unwrap();
        assert_eq!(decoded, oracle);
        assert_eq!(&decoded, c);
        assert_eq!(&err, e);
        checked += 1;
    }
    checked
}

#[test]
fn meggitt_matches_brute_force_on_random_codes() {
    let shapes = [(1, 3, 3), (1, 2, 6), (2, 2, 3), (1, 3, 5), (2, 2, 5), (3, 2, 3), (1, 2, 8), (2, 3, 4)];
    let mut rng = ChaCha20Rng::seed_from_u64(7);
    let mut codes = 0;
    let mut seed = 0u64;
    while codes < 24 {
        let (m, p, l) = shapes[codes % shapes.len()];
        seed += 1;
        let partition = Partition::new(m, p * l, p).unwrap();
        let mut grng = ChaCha20Rng::seed_from_u64(seed);
        let g = generate_g(&mut grng, partition, 2).unwrap();
        let Ok(code) = QCLebCode::new(&g, partition) else { continue };
        if code.t() == 0 || code.k() > 10 {
            continue;
        }
        assert!(check_equivalence(&code, &mut rng) > 0);
        codes += 1;
    }
}

#[test]
fn example_code_with_radius_one() {
    let code = common::example_code().with_t(1);
    let table = build_syndrome_table(&code, 1, 1 << 16).unwrap();
    assert_eq!(table.len(), 14);
    assert_eq!(table.phases(), 2);
    let words = code.codewords().unwrap();
    // d = 2, so the nearest codeword is not always unique; every Meggitt output is
    // within distance 1 and agrees with the brute-force decoder whenever the nearest word is unique
    let mut unique = 0;
    for c in &words {
        for e in errors_up_to(code.partition(), 2, 1) {
            let y = c.add(&e).unwrap();
            let (decoded, _) = meggitt_decode(&y, &table).unwrap();
            assert!(code.contains(decoded.bits()).unwrap());
            assert!(pi_distance(&decoded, &y).unwrap() <= 1);
            let near = words.iter().filter(|w| pi_distance(w, &y).unwrap() <= 1).count();
            if near == 1 {
                assert_eq!(decoded, brute_force_decode(&y, code.generator(), 1 << 16).unwrap());
                unique += 1;
            }
        }
    }
    assert!(unique > 0);
    // computed radius of the example is zero: only codewords decode
    let code0 = common::example_code();
    let table0 = build_syndrome_table(&code0, code0.t(), 1 << 16).unwrap();
    assert!(table0.is_empty());
    for c in &words {
        assert_eq!(&meggitt_decode(c, &table0).unwrap().0, c);
    }
}

#[test]
fn syndromes_are_linear_and_table_is_sound() {
    let code = common::example_code().with_t(1);
    let h = code.parity();
    let table = build_syndrome_table(&code, 1, 1 << 16).unwrap();
    for c in code.codewords().unwrap() {
        for e in errors_up_to(code.partition(), 2, 2) {
            assert_eq!(syndrome(h, &c.add(&e).unwrap()).unwrap(), syndrome(h, &e).unwrap());
        }
    }
    for (phase, e, key) in table.entries() {
        let w = LebWord::parse(&e, code.partition(), 2).unwrap();
        assert_eq!(table.key(phase, w.bits()).unwrap(), key);
        assert!(w.block(code.partition().s() - 1).iter().any(|&c| c != 0));
    }
    assert!(table.len() as u64 <= table_size(code.partition(), 2, 1) * 2);
    assert_eq!(MEGGITT_SHIFT_BLOCKS, 1);
}

#[test]
fn table_size_counts_last_block_patterns() {
    for (m, s, t, q) in [(1usize, 7usize, 1usize, 2u8), (2, 6, 2, 2), (3, 4, 1, 2), (2, 5, 3, 2), (1, 6, 2, 3)] {
        let partition = Partition::cyclic(m, s).unwrap();
        let direct = errors_up_to(partition, q, t).iter().filter(|e| e.block(s - 1).iter().any(|&c| c != 0)).count();
        assert_eq!(table_size(partition, q, t), direct as u64);
    }
}

#[test]
fn over_budget_and_collisions_are_reported() {
    let code = common::example_code().with_t(2);
    assert!(matches!(build_syndrome_table(&code, 2, 1 << 16), Err(Error::SyndromeCollision { .. })));
    let code = common::example_code();
    assert!(matches!(build_syndrome_table(&code, 1, 3), Err(Error::BudgetExceeded { .. })));
}

#[test]
fn reduction_is_sound_on_random_instances() {
    let mut rng = ChaCha20Rng::seed_from_u64(2024);
    let mut solved = 0;
    for i in 0..100 {
        let (r0, n0, m, t, l) = [(3, 4, 1, 1, 2), (3, 4, 2, 1, 2), (2, 4, 1, 1, 3), (4, 6, 2, 1, 2)][i % 4];
        let (inst, planted) = random_sdp_instance(&mut rng, r0, n0, m, t, 2).unwrap();
        assert!(inst.is_solution(&planted));
        let mixing = random_mixing(&mut rng, r0, l, 2);
        let mask = random_mask(&mut rng, &inst, l);
        let reduced = reduce_sdp(&inst, l, &mixing, &mask).unwrap();
        assert_eq!(reduced.t, inst.t + reduced.mask_weight);
        // the planted witness lifts to a reduced solution
        let mut lifted = mask.clone();
        lifted[(l - 1) * n0..].copy_from_slice(&planted);
        assert!(reduced.is_solution(&lifted));
        let e = brute_force_sdp(&reduced.h, &reduced.s, reduced.t, m, reduced.n0, 1 << 20).unwrap().unwrap();
        assert!(reduced.is_solution(&e));
        let el = extract_solution(&inst, &reduced, &e).unwrap();
        assert_eq!(inst.h.mul_vec(&el).unwrap(), inst.s_y);
        assert!(qcleb_core::lebcode::pi_weight_of(&el, m) <= inst.t);
        solved += 1;
    }
    assert_eq!(solved, 100);
}

#[test]
fn reduction_rejects_bad_inputs() {
    let mut rng = ChaCha20Rng::seed_from_u64(5);
    let (inst, _) = random_sdp_instance(&mut rng, 3, 4, 1, 1, 2).unwrap();
    let mixing = random_mixing(&mut rng, 3, 2, 2);
    let mut mask = vec![0u8; 8];
    mask[5] = 1;
    assert!(matches!(reduce_sdp(&inst, 2, &mixing, &mask), Err(Error::InvalidMask)));
    let singular = vec![Matrix::identity(3, 2)];
    assert!(matches!(reduce_sdp(&inst, 2, &singular, &[0u8; 8]), Err(Error::SingularMixing)));
    let wrong = SdpInstance::new(inst.h.clone(), 0, inst.s_y.clone(), 1).unwrap();
    let reduced = reduce_sdp(&wrong, 2, &mixing, &[0u8; 8]).unwrap();
    if inst.s_y.iter().any(|&c| c != 0) {
        assert!(matches!(extract_solution(&wrong, &reduced, &[0u8; 8]), Err(Error::InvalidWitness)));
    }
}
