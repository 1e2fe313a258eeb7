//! Quasi-cyclic LEB codes: block-circulants, generator/parity-check construction
//! and random generator polynomials.

use alloc::vec::Vec;
use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::galois::{Ctx, FieldPoly};
use crate::lebcode::{for_each_span, independent_rows, min_pi_weight, radius, LebWord, Partition};
use crate::linalg::{Matrix, RowSpace};
use crate::starring::{star_mul, star_pow};
use crate::{DEFAULT_BUDGET, RADIUS_SCAN_BUDGET};

/// Uniform symbol of F_q by rejection sampling.
pub fn random_symbol<R: RngCore + ?Sized>(rng: &mut R, q: u8) -> u8 {
    if q == 2 {
        return (rng.next_u32() & 1) as u8;
    }
    let zone = 256 - 256 % q as u32;
    loop {
        let v = rng.next_u32() & 0xff;
        if v < zone {
            return (v % q as u32) as u8;
        }
    }
}

/// p x (m p) matrix whose row r is the first row rotated right by r blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCirculant {
    blocks: Vec<Vec<u8>>,
    m: usize,
    q: u8,
}

impl BlockCirculant {
    pub fn new(blocks: Vec<Vec<u8>>, m: usize, q: u8) -> Result<Self> {
        if blocks.is_empty() || blocks.iter().any(|b| b.len() != m) {
            return Err(Error::DimensionMismatch);
        }
        Ok(BlockCirculant { blocks, m, q })
    }

    pub fn p(&self) -> usize {
        self.blocks.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn blocks(&self) -> &[Vec<u8>] {
        &self.blocks
    }

    pub fn first_row(&self) -> Vec<u8> {
        self.blocks.concat()
    }

    pub fn expand(&self) -> Matrix {
        let row0 = self.first_row();
        let rows: Vec<Vec<u8>> = (0..self.p()).map(|r| crate::lebcode::rotate(&row0, r * self.m)).collect();
        Matrix::from_rows(self.q as u32, self.m * self.p(), &rows).expect("rows have equal width")
    }

    pub fn ctx(&self) -> Ctx {
        Ctx::new(self.m * self.p(), self.q as u32, self.m).expect("valid circulant shape")
    }
}

/// a(X) = sum_i a_{i+1} * X^{*i}; the blocks become consecutive coefficient slices.
pub fn circulant_to_poly(c: &BlockCirculant) -> FieldPoly {
    let ctx = c.ctx();
    let mut acc = FieldPoly::zero(ctx);
    for (i, b) in c.blocks.iter().enumerate() {
        let coeffs: Vec<u32> = b.iter().map(|&x| x as u32).collect();
        let a = FieldPoly::from_coeffs(ctx, &coeffs);
        acc = acc.add(&star_mul(&a, &star_pow(i, ctx)).expect("same context")).expect("same context");
    }
    acc
}

pub fn poly_to_circulant(p: &FieldPoly) -> BlockCirculant {
    let m = p.ctx().m();
    BlockCirculant { blocks: p.coeffs().chunks(m).map(<[u8]>::to_vec).collect(), m, q: p.ctx().q() }
}

/// Block-row rotation layout: block (i, j) is `blocks[(j - i) mod l]`.
pub fn build_h(blocks: &[Matrix]) -> Result<Matrix> {
    let Some(first) = blocks.first() else { return Err(Error::DimensionMismatch) };
    let (r0, n0, q) = (first.rows(), first.cols(), first.q());
    if blocks.iter().any(|b| b.rows() != r0 || b.cols() != n0 || b.q() != q) {
        return Err(Error::DimensionMismatch);
    }
    let l = blocks.len();
    let grid: Vec<Vec<Matrix>> = (0..l).map(|i| (0..l).map(|j| blocks[(j + l - i) % l].clone()).collect()).collect();
    build_h_grid(&grid)
}

/// Assembles a grid of equally sized blocks row by row.
pub fn build_h_grid(grid: &[Vec<Matrix>]) -> Result<Matrix> {
    let Some(first) = grid.first().and_then(|r| r.first()) else { return Err(Error::DimensionMismatch) };
    let (r0, n0, q) = (first.rows(), first.cols(), first.q());
    let width = grid[0].len();
    let mut out = Matrix::zeros(0, width * n0, q);
    for brow in grid {
        if brow.len() != width || brow.iter().any(|b| b.rows() != r0 || b.cols() != n0 || b.q() != q) {
            return Err(Error::DimensionMismatch);
        }
        for r in 0..r0 {
            let row: Vec<u8> = brow.iter().flat_map(|b| b.row(r).iter().copied()).collect();
            out.push_row(&row)?;
        }
    }
    Ok(out)
}

/// l rows, row i = X^{*p i} * g.
pub fn build_g(g: &FieldPoly, partition: Partition) -> Result<Matrix> {
    let ctx = g.ctx();
    if ctx.n() != partition.n() || ctx.m() != partition.m() || g.is_zero() {
        return Err(Error::BadGeneratorShape);
    }
    let rows: Vec<Vec<u8>> = (0..partition.l())
        .map(|i| star_mul(&star_pow(partition.p() * i, ctx), g).map(FieldPoly::into_coeffs))
        .collect::<Result<_>>()?;
    Matrix::from_rows(ctx.q() as u32, ctx.n(), &rows)
}

/// g = sum_i g_i * X^{*p i}, g_i = sum_j g_ij * X^{*j}, with random blocks g_ij of degree < m.
pub fn generate_g<R: RngCore + ?Sized>(rng: &mut R, partition: Partition, q: u32) -> Result<FieldPoly> {
    let (m, p) = (partition.m(), partition.p());
    let outer = partition.ctx(q)?;
    let inner = Ctx::new(m * p, q, m)?;
    let mut g = FieldPoly::zero(outer);
    for i in 0..partition.l() {
        let mut gi = FieldPoly::zero(inner);
        for j in 0..p {
            let block: Vec<u32> = (0..m).map(|_| random_symbol(rng, inner.q()) as u32).collect();
            let gij = FieldPoly::from_coeffs(inner, &block);
            gi = gi.add(&star_mul(&gij, &star_pow(j, inner))?)?;
        }
        let coeffs: Vec<u32> = gi.coeffs().iter().map(|&c| c as u32).collect();
        let lifted = FieldPoly::from_coeffs(outer, &coeffs);
        g = g.add(&star_mul(&lifted, &star_pow(p * i, outer))?)?;
    }
    Ok(g)
}

/// All q^k vectors of the row space of `g` in message-index order.
pub fn enumerate_codewords(g: &Matrix) -> Result<Vec<Vec<u8>>> {
    let mut out = Vec::new();
    for_each_span(g, DEFAULT_BUDGET, |_, w| out.push(w.to_vec())).map_err(|_| Error::TooLarge { limit: DEFAULT_BUDGET })?;
    Ok(out)
}

/// Column shift used by the star pairing: m p (quasi-cyclic) or m (p = 1).
pub fn star_shift(partition: Partition) -> usize {
    partition.m() * partition.p()
}

/// G' H^t = 0, where G' is G with columns cyclically shifted by m p.
pub fn star_orthogonality_check(g: &Matrix, h: &Matrix, partition: Partition) -> Result<bool> {
    if g.cols() != partition.n() || h.cols() != partition.n() || g.q() != h.q() {
        return Err(Error::DimensionMismatch);
    }
    Ok(g.shift_columns(star_shift(partition)).mul(&h.transpose())?.is_zero())
}

/// Parity-check matrix for the code spanned by `generator`.
///
/// The kernel of the shifted generator is closed under X^(m p). Orbits of kernel
/// vectors are laid out as block rows; if those rows come out independent the
/// result has the block-circulant layout and the flag is true. Otherwise the plain
/// kernel basis is returned with the flag false.
pub fn derive_parity(generator: &Matrix, partition: Partition) -> (Matrix, bool) {
    let n0 = star_shift(partition);
    let l = partition.n() / n0;
    let kernel = generator.shift_columns(n0).nullspace();
    let q = generator.q();
    let mut reps = Matrix::zeros(0, partition.n(), q);
    let mut orbit = RowSpace::new(&Matrix::zeros(0, partition.n(), q));
    let mut independent = true;
    for r in 0..kernel.rows() {
        let v = kernel.row(r);
        if orbit.contains(v).expect("same width") {
            continue;
        }
        reps.push_row(v).expect("same width");
        for i in 0..l {
            independent &= orbit.insert(&crate::lebcode::rotate(v, i * n0)).expect("same width");
        }
    }
    if !independent || orbit.rank() != kernel.rows() {
        return (kernel, false);
    }
    let blocks: Vec<Matrix> = (0..l)
        .map(|j| {
            let rows: Vec<Vec<u8>> = (0..reps.rows()).map(|r| reps.row(r)[j * n0..(j + 1) * n0].to_vec()).collect();
            Matrix::from_rows(q as u32, n0, &rows).expect("equal widths")
        })
        .collect();
    match build_h(&blocks) {
        Ok(h) => (h, true),
        Err(_) => (kernel, false),
    }
}

/// A code closed under the p-block shift, generated by g.
#[derive(Clone, Debug)]
pub struct QCLebCode {
    partition: Partition,
    g: FieldPoly,
    g_rows: Matrix,
    generator: Matrix,
    space: RowSpace,
    parity: Matrix,
    parity_structured: bool,
    t: usize,
}

impl QCLebCode {
    pub fn new(g: &FieldPoly, partition: Partition) -> Result<Self> {
        let g_rows = build_g(g, partition)?;
        let generator = independent_rows(&g_rows);
        let space = RowSpace::new(&generator);
        let (parity, parity_structured) = derive_parity(&generator, partition);
        let t = match min_pi_weight(&generator, partition.m(), RADIUS_SCAN_BUDGET) {
            Ok(d) => radius(d),
            Err(_) => 0,
        };
        Ok(QCLebCode { partition, g: g.clone(), g_rows, generator, space, parity, parity_structured, t })
    }

    pub fn with_t(mut self, t: usize) -> Self {
        self.t = t;
        self
    }

    pub fn partition(&self) -> Partition {
        self.partition
    }

    pub fn g(&self) -> &FieldPoly {
        &self.g
    }

    /// The l rows X^{*p i} * g, possibly dependent.
    pub fn g_rows(&self) -> &Matrix {
        &self.g_rows
    }

    /// A basis of the code taken from `g_rows`, used for encoding.
    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn parity(&self) -> &Matrix {
        &self.parity
    }

    pub fn parity_is_block_circulant(&self) -> bool {
        self.parity_structured
    }

    pub fn space(&self) -> &RowSpace {
        &self.space
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn n(&self) -> usize {
        self.partition.n()
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn q(&self) -> u8 {
        self.g.ctx().q()
    }

    pub fn encode(&self, u: &[u8]) -> Result<LebWord> {
        if u.len() != self.k() {
            return Err(Error::LengthMismatch { expected: self.k(), got: u.len() });
        }
        LebWord::new(self.generator.vec_mul(u)?, self.partition, self.q())
    }

    pub fn contains(&self, w: &[u8]) -> Result<bool> {
        self.space.contains(w)
    }

    pub fn min_distance(&self, budget: u64) -> Result<Option<usize>> {
        min_pi_weight(&self.generator, self.partition.m(), budget)
    }

    pub fn codewords(&self) -> Result<Vec<LebWord>> {
        enumerate_codewords(&self.generator)?
            .into_iter()
            .map(|w| LebWord::new(w, self.partition, self.q()))
            .collect()
    }
}

/// The length-(m p) segments c_1..c_l of a word.
pub fn segments(bits: &[u8], partition: Partition) -> Vec<Vec<u8>> {
    bits.chunks(star_shift(partition)).map(<[u8]>::to_vec).collect()
}
