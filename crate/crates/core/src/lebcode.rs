//! Partitions, the pi-metric, the block shift and pi-cyclic codes.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::galois::{add_mod, coeff_string, mul_mod, parse_coeff_string, sub_mod, Ctx, FieldPoly};
use crate::linalg::{Matrix, RowSpace};
use crate::starring::{star_deg, star_mul, star_pow, StarDegree};
use crate::RADIUS_SCAN_BUDGET;

/// Code type pi = [m]^s with quasi-cyclic order p (s = p * l).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    m: usize,
    s: usize,
    p: usize,
}

impl Partition {
    pub fn new(m: usize, s: usize, p: usize) -> Result<Self> {
        if m == 0 || s == 0 || p == 0 {
            return Err(Error::InvalidPartition("m, s and p must be positive"));
        }
        if !s.is_multiple_of(p) {
            return Err(Error::InvalidPartition("p must divide s"));
        }
        if p > 1 && s / p < 2 {
            return Err(Error::InvalidPartition("quasi-cyclic codes need l = s / p > 1"));
        }
        Ok(Partition { m, s, p })
    }

    /// Plain pi-cyclic partition (p = 1).
    pub fn cyclic(m: usize, s: usize) -> Result<Self> {
        Self::new(m, s, 1)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn l(&self) -> usize {
        self.s / self.p
    }

    pub fn n(&self) -> usize {
        self.m * self.s
    }

    /// Segment length m * p used by the quasi-cyclic structure.
    pub fn n0(&self) -> usize {
        self.m * self.p
    }

    pub fn ctx(&self, q: u32) -> Result<Ctx> {
        Ctx::new(self.n(), q, self.m)
    }
}

/// Number of nonzero length-m blocks of an ascending symbol slice.
pub fn pi_weight_of(bits: &[u8], m: usize) -> usize {
    bits.chunks(m).filter(|b| b.iter().any(|&c| c != 0)).count()
}

/// Multiplies a symbol vector by X^k (cyclic rotation towards higher indices).
pub fn rotate(bits: &[u8], k: usize) -> Vec<u8> {
    let n = bits.len();
    let mut out = vec![0; n];
    if n == 0 {
        return out;
    }
    for (i, &c) in bits.iter().enumerate() {
        out[(i + k) % n] = c;
    }
    out
}

/// A word of F_q^n read as s blocks of length m.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LebWord {
    bits: Vec<u8>,
    partition: Partition,
    q: u8,
}

impl LebWord {
    pub fn new(bits: Vec<u8>, partition: Partition, q: u8) -> Result<Self> {
        if bits.len() != partition.n() {
            return Err(Error::LengthMismatch { expected: partition.n(), got: bits.len() });
        }
        if bits.iter().any(|&c| c >= q) {
            return Err(Error::Parse(String::from("symbol not below q")));
        }
        Ok(LebWord { bits, partition, q })
    }

    pub fn zero(partition: Partition, q: u8) -> Self {
        LebWord { bits: vec![0; partition.n()], partition, q }
    }

    pub fn from_poly(p: &FieldPoly, partition: Partition) -> Result<Self> {
        if p.ctx().n() != partition.n() || p.ctx().m() != partition.m() {
            return Err(Error::PartitionMismatch);
        }
        Ok(LebWord { bits: p.coeffs().to_vec(), partition, q: p.ctx().q() })
    }

    pub fn to_poly(&self) -> FieldPoly {
        let ctx = self.partition.ctx(self.q as u32).expect("partition and q were validated");
        FieldPoly::from_vec(ctx, self.bits.clone()).expect("length and symbols were validated")
    }

    /// Ascending symbol string (coefficient of X^0 first); `|` separators are ignored.
    pub fn parse(s: &str, partition: Partition, q: u8) -> Result<Self> {
        Self::new(parse_coeff_string(s, q)?, partition, q)
    }

    /// Display order as in printed matrices: coefficient of X^(n-1) first.
    pub fn from_display(s: &str, partition: Partition, q: u8) -> Result<Self> {
        let mut v = parse_coeff_string(s, q)?;
        v.reverse();
        Self::new(v, partition, q)
    }

    pub fn to_display(&self) -> String {
        let mut v = self.bits.clone();
        v.reverse();
        crate::linalg::blocked(&v, self.q, self.partition.m)
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn into_bits(self) -> Vec<u8> {
        self.bits
    }

    pub fn partition(&self) -> Partition {
        self.partition
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn block(&self, i: usize) -> &[u8] {
        let m = self.partition.m;
        &self.bits[i * m..(i + 1) * m]
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&c| c == 0)
    }

    pub fn pi_weight(&self) -> usize {
        pi_weight_of(&self.bits, self.partition.m)
    }

    pub fn hamming_weight(&self) -> usize {
        self.bits.iter().filter(|&&c| c != 0).count()
    }

    /// sigma^k: right block shift by k blocks.
    pub fn shift_blocks(&self, k: usize) -> Self {
        let k = k % self.partition.s;
        LebWord { bits: rotate(&self.bits, k * self.partition.m), partition: self.partition, q: self.q }
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.partition == o.partition && self.q == o.q {
            Ok(())
        } else {
            Err(Error::PartitionMismatch)
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let q = self.q;
        let bits = self.bits.iter().zip(&o.bits).map(|(&a, &b)| add_mod(a, b, q)).collect();
        Ok(LebWord { bits, partition: self.partition, q })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let q = self.q;
        let bits = self.bits.iter().zip(&o.bits).map(|(&a, &b)| sub_mod(a, b, q)).collect();
        Ok(LebWord { bits, partition: self.partition, q })
    }

    pub fn scale(&self, c: u8) -> Self {
        let q = self.q;
        LebWord { bits: self.bits.iter().map(|&a| mul_mod(a, c % q, q)).collect(), partition: self.partition, q }
    }
}

impl fmt::Display for LebWord {
    /// Ascending symbols with `|` between blocks.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::linalg::blocked(&self.bits, self.q, self.partition.m))
    }
}

impl fmt::Debug for LebWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LebWord({self})")
    }
}

pub fn pi_weight(w: &LebWord) -> usize {
    w.pi_weight()
}

pub fn pi_distance(a: &LebWord, b: &LebWord) -> Result<usize> {
    Ok(a.sub(b)?.pi_weight())
}

/// One right block shift (u_1, ..., u_s) -> (u_s, u_1, ..., u_{s-1}).
pub fn sigma_shift(w: &LebWord) -> LebWord {
    w.shift_blocks(1)
}

/// Visits every vector of the row space of `g` (q^rows of them, with repetitions
/// when rows are dependent) in message-index order: message i has base-q digits
/// d_0 d_1 ... (least significant first) and maps to sum d_j * row_j.
pub fn for_each_span<F: FnMut(&[u8], &[u8])>(g: &Matrix, budget: u64, mut f: F) -> Result<()> {
    let q = g.q();
    let k = g.rows();
    let total = (q as u64).checked_pow(k as u32).filter(|&t| t <= budget);
    if total.is_none() {
        return Err(Error::BudgetExceeded { needed: (q as u64).saturating_pow(k as u32), budget });
    }
    let mut digits = vec![0u8; k];
    let mut word = vec![0u8; g.cols()];
    f(&digits, &word);
    loop {
        let mut j = 0;
        loop {
            if j == k {
                return Ok(());
            }
            for (w, &b) in word.iter_mut().zip(g.row(j)) {
                *w = add_mod(*w, b, q);
            }
            digits[j] += 1;
            if digits[j] == q {
                digits[j] = 0;
                j += 1;
            } else {
                break;
            }
        }
        f(&digits, &word);
    }
}

/// Minimum pi-weight over nonzero vectors of the row space (`None` if it is {0}).
pub fn min_pi_weight(g: &Matrix, m: usize, budget: u64) -> Result<Option<usize>> {
    let mut best: Option<usize> = None;
    for_each_span(g, budget, |_, w| {
        let wt = pi_weight_of(w, m);
        if wt > 0 && best.is_none_or(|b| wt < b) {
            best = Some(wt);
        }
    })?;
    Ok(best)
}

/// floor((d - 1) / 2), or 0 for the zero code.
pub fn radius(d: Option<usize>) -> usize {
    d.map_or(0, |d| d.saturating_sub(1) / 2)
}

/// Keeps the rows of `g` that raise the rank, in order.
pub fn independent_rows(g: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(0, g.cols(), g.q());
    let mut rank = 0;
    for r in 0..g.rows() {
        let mut trial = out.clone();
        trial.push_row(g.row(r)).expect("same width");
        if trial.rank() > rank {
            rank += 1;
            out = trial;
        }
    }
    out
}

/// A pi-cyclic code generated by a monic polynomial g.
#[derive(Clone, Debug)]
pub struct PiCyclicCode {
    partition: Partition,
    g: FieldPoly,
    generator: Matrix,
    space: RowSpace,
    t: usize,
}

impl PiCyclicCode {
    /// Rows X^{*i} * g for i < k = s - r, where r is the block index of deg g.
    ///
    /// g is accepted when its s block shifts span exactly k dimensions, i.e. the
    /// k listed rows already give a code closed under the block shift.
    pub fn from_generator(g: &FieldPoly, partition: Partition) -> Result<Self> {
        let ctx = g.ctx();
        if ctx.n() != partition.n() || ctx.m() != partition.m() {
            return Err(Error::PartitionMismatch);
        }
        let StarDegree::Finite { block_index, .. } = star_deg(g) else {
            return Err(Error::NotMonic);
        };
        if g.leading_coeff() != 1 {
            return Err(Error::NotMonic);
        }
        let s = partition.s();
        let k = s - block_index;
        let rows: Vec<Vec<u8>> = (0..s)
            .map(|i| star_mul(&star_pow(i, ctx), g).map(FieldPoly::into_coeffs))
            .collect::<Result<_>>()?;
        let all = Matrix::from_rows(ctx.q() as u32, ctx.n(), &rows)?;
        if all.rank() != k {
            return Err(Error::NotDivisor);
        }
        let idx: Vec<usize> = (0..k).collect();
        let generator = all.select_rows(&idx);
        let space = RowSpace::new(&generator);
        let t = match min_pi_weight(&generator, partition.m(), RADIUS_SCAN_BUDGET) {
            Ok(d) => radius(d),
            Err(_) => 0,
        };
        Ok(PiCyclicCode { partition, g: g.clone(), generator, space, t })
    }

    /// Overrides the correction radius (used when exhaustive search is too large).
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

    pub fn generator(&self) -> &Matrix {
        &self.generator
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

    /// u * G.
    pub fn encode(&self, u: &[u8]) -> Result<LebWord> {
        if u.len() != self.k() {
            return Err(Error::LengthMismatch { expected: self.k(), got: u.len() });
        }
        LebWord::new(self.generator.vec_mul(u)?, self.partition, self.q())
    }

    /// u(X) * g(X) with u(X) = sum u_i X^{*i}.
    pub fn encode_poly(&self, u: &[u8]) -> Result<LebWord> {
        if u.len() != self.k() {
            return Err(Error::LengthMismatch { expected: self.k(), got: u.len() });
        }
        let ctx = self.g.ctx();
        let mut up = FieldPoly::zero(ctx);
        for (i, &c) in u.iter().enumerate() {
            up = up.add(&star_pow(i, ctx).scale(c))?;
        }
        LebWord::from_poly(&star_mul(&up, &self.g)?, self.partition)
    }

    pub fn contains(&self, w: &LebWord) -> Result<bool> {
        self.space.contains(w.bits())
    }

    pub fn min_distance(&self, budget: u64) -> Result<Option<usize>> {
        min_pi_weight(&self.generator, self.partition.m(), budget)
    }

    pub fn codewords(&self, budget: u64) -> Result<Vec<LebWord>> {
        let mut out = Vec::new();
        let (p, q) = (self.partition, self.q());
        for_each_span(&self.generator, budget, |_, w| out.push(LebWord { bits: w.to_vec(), partition: p, q }))?;
        Ok(out)
    }
}

/// Whether a set of words is closed under the block shift; the set must be a linear code.
pub fn is_pi_cyclic(words: &[LebWord]) -> Result<bool> {
    let Some(first) = words.first() else { return Err(Error::NotLinear) };
    let (partition, q) = (first.partition, first.q);
    let mut set: Vec<&LebWord> = words.iter().collect();
    set.sort();
    set.dedup();
    let has = |w: &LebWord| set.binary_search(&w).is_ok();
    if !has(&LebWord::zero(partition, q)) {
        return Err(Error::NotLinear);
    }
    for a in &set {
        a.check(first)?;
        for c in 1..q {
            if !has(&a.scale(c)) {
                return Err(Error::NotLinear);
            }
        }
        for b in &set {
            if !has(&a.add(b)?) {
                return Err(Error::NotLinear);
            }
        }
    }
    Ok(set.iter().all(|w| has(&sigma_shift(w))))
}

/// All monic g whose block shifts span s - r dimensions, by brute force over q^n candidates.
pub fn find_generators(partition: Partition, q: u32, budget: u64) -> Result<Vec<FieldPoly>> {
    let ctx = partition.ctx(q)?;
    let n = ctx.n();
    let qq = ctx.q() as u64;
    let needed = qq.saturating_pow(n as u32);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut out = Vec::new();
    for d in 0..n {
        let lower = qq.pow(d as u32);
        for idx in 0..lower {
            let mut coeffs = vec![0u32; d + 1];
            let mut x = idx;
            for c in coeffs.iter_mut().take(d) {
                *c = (x % qq) as u32;
                x /= qq;
            }
            coeffs[d] = 1;
            let g = FieldPoly::from_coeffs(ctx, &coeffs);
            if PiCyclicCode::from_generator(&g, partition).is_ok() {
                out.push(g);
            }
        }
    }
    Ok(out)
}

/// Canonical key of a word: ascending symbols, no separators.
pub fn word_key(bits: &[u8], q: u8) -> String {
    coeff_string(bits, q)
}
