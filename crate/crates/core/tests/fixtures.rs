mod common;

use common::*;
use qcleb_core::decoder::{build_syndrome_table, meggitt_decode, syndrome};
use qcleb_core::galois::FieldPoly;
use qcleb_core::lebcode::{is_pi_cyclic, LebWord, Partition};
use qcleb_core::linalg::{Matrix, RowSpace};
use qcleb_core::qcleb::{build_g, build_h_grid, segments, star_orthogonality_check};
use qcleb_core::starring::{parse_star_notation, star_mul, star_pow, syndrome_poly, to_star_notation};

#[test]
fn generator_polynomial_from_star_form() {
    let ctx = example_ctx();
    let g = parse_star_notation("(X^2)*X**1 + (1+X^2)*X**3", ctx).unwrap();
    assert_eq!(g, example_g());
    assert_eq!(g.to_text(), "q=2;n=12;coeffs=000001000101");
    // the same polynomial assembled through the nested g_i form
    let x1 = star_pow(1, ctx);
    let g0 = star_mul(&FieldPoly::monomial(2, ctx).unwrap(), &x1).unwrap();
    let g1 = star_mul(&FieldPoly::from_exponents(ctx, &[0, 2]), &x1).unwrap();
    let nested = star_mul(&g0, &star_pow(0, ctx))
        .unwrap()
        .add(&star_mul(&g1, &star_pow(2, ctx)).unwrap())
        .unwrap();
    assert_eq!(nested, g);
    assert_eq!(to_star_notation(&g), "(X^2)*X**1 + (1+X^2)*X**3");
}

#[test]
fn generator_matrix_rows() {
    let g = build_g(&example_g(), example_partition()).unwrap();
    let rows = g.to_rows();
    for (row, want) in rows.iter().zip(EXAMPLE_G_DISPLAY) {
        let w = LebWord::new(row.clone(), example_partition(), 2).unwrap();
        assert_eq!(w.to_display(), want);
    }
    assert_eq!(g, reversed_rows(&EXAMPLE_G_DISPLAY));
    // the shift by p blocks of g is the second row, and shifting twice returns g
    let ctx = example_ctx();
    let g2 = star_mul(&star_pow(2, ctx), &example_g()).unwrap();
    assert_eq!(g2.coeffs(), &rows[1][..]);
    assert_eq!(star_mul(&star_pow(4, ctx), &example_g()).unwrap(), example_g());
}

#[test]
fn parity_matrix_from_blocks() {
    let b = |rows: &[&str]| reversed_rows(rows);
    let h11 = b(&["010000", "000010"]);
    let zero = Matrix::zeros(2, 6, 2);
    let h31 = b(&["100000", "000100"]);
    let h41 = b(&["000001", "001000"]);
    let h42 = b(&["000101", "101000"]);
    // blocks are listed with the highest column first, so reversing swaps the block columns
    let grid = vec![
        vec![zero.clone(), h11.clone()],
        vec![h11, zero],
        vec![h31.clone(), h31],
        vec![h42, h41],
    ];
    assert_eq!(build_h_grid(&grid).unwrap(), example_h());
}

#[test]
fn example_pair_is_orthogonal() {
    let partition = example_partition();
    let g = build_g(&example_g(), partition).unwrap();
    let h = example_h();
    assert!(star_orthogonality_check(&g, &h, partition).unwrap());
    for row in g.to_rows() {
        let w = LebWord::new(row, partition, 2).unwrap();
        assert!(syndrome(&h, &w).unwrap().iter().all(|&c| c == 0));
    }
    // a flipped bit of H breaks the pairing exactly when its column meets the support of the shifted G
    let shifted = g.shift_columns(6);
    let touched = (0..12).filter(|&c| (0..2).any(|r| shifted.get(r, c) == 1)).count();
    assert_eq!(touched, 4);
    let mut broken = 0;
    for r in 0..h.rows() {
        for c in 0..h.cols() {
            let mut h2 = h.clone();
            h2.set(r, c, 1 - h2.get(r, c));
            if !star_orthogonality_check(&g, &h2, partition).unwrap() {
                broken += 1;
            }
        }
    }
    assert_eq!(broken, h.rows() * touched);
    assert!(star_orthogonality_check(&g, &Matrix::zeros(8, 12, 2), partition).unwrap());
}

#[test]
fn example_code_shape() {
    let code = example_code();
    assert_eq!(code.k(), 2);
    assert_eq!(code.n(), 12);
    assert_eq!(code.min_distance(1 << 10).unwrap(), Some(2));
    assert_eq!(code.t(), 0);
    assert!(code.parity_is_block_circulant());
    assert_eq!(code.parity().rank(), 10);
    let words = code.codewords().unwrap();
    for w in &words {
        let split: usize = segments(w.bits(), code.partition()).iter().map(|s| qcleb_core::lebcode::pi_weight_of(s, 3)).sum();
        assert_eq!(split, w.pi_weight());
    }
}

#[test]
fn received_word_syndrome() {
    let g = example_g();
    let ctx = g.ctx();
    // y = c + (X^2 * 1^*) * X^{*2}
    let e = star_mul(&star_mul(&FieldPoly::monomial(2, ctx).unwrap(), &star_pow(0, ctx)).unwrap(), &star_pow(2, ctx)).unwrap();
    assert_eq!(e, FieldPoly::monomial(8, ctx).unwrap());
    let y = g.add(&e).unwrap();
    assert_eq!(syndrome_poly(&y, &g).unwrap(), e);
}

#[test]
fn table_entry_and_shifted_decode() {
    let code = example_code().with_t(1);
    let table = build_syndrome_table(&code, 1, 1 << 16).unwrap();
    let ctx = example_ctx();
    // ((X^2) * X^{*1}) * X^{*2} = X^11, stored with itself as syndrome
    let e = star_mul(&star_mul(&FieldPoly::monomial(2, ctx).unwrap(), &star_pow(1, ctx)).unwrap(), &star_pow(2, ctx)).unwrap();
    assert_eq!(e, FieldPoly::monomial(11, ctx).unwrap());
    let e_word = LebWord::from_poly(&e, example_partition()).unwrap();
    for phase in 0..2 {
        let key = table.key(phase, e_word.bits()).unwrap();
        assert_eq!(key, qcleb_core::galois::coeff_string(e.coeffs(), 2));
        assert_eq!(table.lookup(phase, &key), Some(e.coeffs()));
    }

    let y = LebWord::from_poly(&example_g().add(&FieldPoly::monomial(8, ctx).unwrap()).unwrap(), example_partition()).unwrap();
    // unshifted syndrome X^8 is not in the table
    let key0 = table.key(0, y.bits()).unwrap();
    assert!(table.lookup(0, &key0).is_none());
    let (c, err) = meggitt_decode(&y, &table).unwrap();
    assert_eq!(c.to_poly(), example_g());
    assert_eq!(err.to_poly(), FieldPoly::monomial(8, ctx).unwrap());
}

#[test]
fn kernel_of_example_parity_contains_code() {
    let partition = example_partition();
    let h = example_h();
    let code = example_code();
    let kernel = RowSpace::new(&h.nullspace());
    for w in code.codewords().unwrap() {
        let shifted = rotate(w.bits(), 6);
        assert!(kernel.contains(&shifted).unwrap());
    }
    assert_eq!(partition.n0(), 6);
}

#[test]
fn small_cyclic_example() {
    let partition = Partition::cyclic(3, 2).unwrap();
    let words: Vec<LebWord> = ["000|000", "010|110", "110|010", "100|100"]
        .iter()
        .map(|s| LebWord::from_display(s, partition, 2).unwrap())
        .collect();
    assert!(is_pi_cyclic(&words).unwrap());
    let bad: Vec<LebWord> = ["000000", "100000"].iter().map(|s| LebWord::parse(s, partition, 2).unwrap()).collect();
    assert!(!is_pi_cyclic(&bad).unwrap());
    assert!(is_pi_cyclic(&words[..1]).unwrap());
    let d = words.iter().skip(1).map(LebWord::pi_weight).min().unwrap();
    assert_eq!(d, 2);
}
