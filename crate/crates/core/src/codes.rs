//! Binary and Z/4 codes of length at most 64.
//!
//! A binary word is a `u64` whose bit `n − 1 − i` holds coordinate `i`, so
//! integer order on words is lexicographic order on coordinate strings.

use std::fmt::Write as _;

use crate::error::{Error, Result};

pub const MAX_LENGTH: usize = 64;
pub const DEFAULT_SWEEP_BUDGET: u64 = 1 << 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCode {
    n: usize,
    words: Vec<u64>,
    /// Reduced row echelon generator, present for linear codes.
    generator: Option<Vec<u64>>,
}

/// Code over Z/4 stored as explicit words with symbols in `0..4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z4Code {
    n: usize,
    words: Vec<Vec<u8>>,
}

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_len(n: usize) -> Result<()> {
    if n == 0 || n > MAX_LENGTH {
        return Err(Error::Precondition(format!(
            "code length must be in 1..={MAX_LENGTH}, got {n}"
        )));
    }
    Ok(())
}

/// Bit holding coordinate `i` of a length-`n` word.
#[inline]
pub fn coord_bit(n: usize, i: usize) -> u64 {
    1u64 << (n - 1 - i)
}

/// Row echelon form over GF(2); returns the independent rows, each pivot
/// cleared from every other row.
fn rref(n: usize, rows: &[u64]) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for &r in rows {
        let mut v = r & mask(n);
        for &b in &basis {
            let lead = 63 - b.leading_zeros();
            if v >> lead & 1 == 1 {
                v ^= b;
            }
        }
        if v != 0 {
            let lead = 63 - v.leading_zeros();
            for b in basis.iter_mut() {
                if *b >> lead & 1 == 1 {
                    *b ^= v;
                }
            }
            basis.push(v);
        }
    }
    basis.sort_unstable_by(|a, b| b.cmp(a));
    basis
}

impl BinaryCode {
    /// Linear code spanned by the generator rows.
    pub fn from_generator(n: usize, rows: &[u64]) -> Result<Self> {
        check_len(n)?;
        if rows.iter().any(|&r| r & !mask(n) != 0) {
            return Err(Error::Precondition(
                "generator row longer than the code".into(),
            ));
        }
        let gen = rref(n, rows);
        if gen.len() > 30 {
            return Err(Error::Precondition(format!(
                "dimension {} too large to list codewords",
                gen.len()
            )));
        }
        let mut words = Vec::with_capacity(1 << gen.len());
        for m in 0u64..(1u64 << gen.len()) {
            let mut w = 0u64;
            for (k, &g) in gen.iter().enumerate() {
                if m >> k & 1 == 1 {
                    w ^= g;
                }
            }
            words.push(w);
        }
        words.sort_unstable();
        Ok(BinaryCode {
            n,
            words,
            generator: Some(gen),
        })
    }

    /// Code given by an explicit word list (duplicates removed).
    pub fn from_words(n: usize, words: &[u64]) -> Result<Self> {
        check_len(n)?;
        if words.is_empty() {
            return Err(Error::Precondition("code has no words".into()));
        }
        if words.iter().any(|&w| w & !mask(n) != 0) {
            return Err(Error::Precondition("word longer than the code".into()));
        }
        let mut words = words.to_vec();
        words.sort_unstable();
        words.dedup();
        Ok(BinaryCode {
            n,
            words,
            generator: None,
        })
    }

    /// Words as 0/1 coordinate vectors.
    pub fn from_bit_vectors(n: usize, words: &[Vec<u8>]) -> Result<Self> {
        let packed = words
            .iter()
            .map(|w| pack(n, w))
            .collect::<Result<Vec<_>>>()?;
        BinaryCode::from_words(n, &packed)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_linear(&self) -> bool {
        self.generator.is_some()
    }

    pub fn generator(&self) -> Option<&[u64]> {
        self.generator.as_deref()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.generator.as_ref().map(Vec::len)
    }

    pub fn contains(&self, w: u64) -> bool {
        self.words.binary_search(&w).is_ok()
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0)
    }

    /// Coordinate vector of a word.
    pub fn unpack(&self, w: u64) -> Vec<u8> {
        (0..self.n)
            .map(|i| (w >> (self.n - 1 - i) & 1) as u8)
            .collect()
    }

    /// Minimum distance. Linear codes use the minimum nonzero weight; other
    /// codes compare all pairs. `max_ops` bounds the number of comparisons.
    pub fn min_distance(&self, max_ops: u64) -> Result<u32> {
        if self.words.len() < 2 {
            return Err(Error::Precondition(
                "minimum distance needs two words".into(),
            ));
        }
        if self.is_linear() {
            return Ok(self
                .words
                .iter()
                .filter(|&&w| w != 0)
                .map(|w| w.count_ones())
                .min()
                .expect("at least two words"));
        }
        let m = self.words.len() as u64;
        let pairs = m * (m - 1) / 2;
        if pairs > max_ops {
            return Err(Error::Budget {
                what: "code sweep",
                limit: max_ops,
            });
        }
        let mut best = u32::MAX;
        for (i, &a) in self.words.iter().enumerate() {
            for &b in &self.words[i + 1..] {
                best = best.min((a ^ b).count_ones());
            }
        }
        Ok(best)
    }

    /// `A_w` = number of codewords of weight `w`, for `w = 0..=n`.
    pub fn weight_distribution(&self) -> Vec<u64> {
        let mut a = vec![0u64; self.n + 1];
        for w in &self.words {
            a[w.count_ones() as usize] += 1;
        }
        a
    }

    /// Distances from `word` to every codeword, tallied by distance.
    pub fn distance_distribution_from(&self, word: u64) -> Vec<u64> {
        let mut a = vec![0u64; self.n + 1];
        for w in &self.words {
            a[(w ^ word).count_ones() as usize] += 1;
        }
        a
    }

    /// The dual code `{y : x·y = 0 for all x ∈ C}` of a linear code.
    pub fn dual(&self) -> Result<BinaryCode> {
        let gen = self
            .generator
            .as_ref()
            .ok_or_else(|| Error::Precondition("dual of a nonlinear code".into()))?;
        let n = self.n;
        let pivots: Vec<u32> = gen.iter().map(|g| 63 - g.leading_zeros()).collect();
        let mut rows = Vec::new();
        // one dual row per free column f: e_f plus, for each pivot row containing f, its pivot
        for f in 0..n as u32 {
            if pivots.contains(&f) {
                continue;
            }
            let mut v = 1u64 << f;
            for (g, &p) in gen.iter().zip(&pivots) {
                if g >> f & 1 == 1 {
                    v |= 1u64 << p;
                }
            }
            rows.push(v);
        }
        BinaryCode::from_generator(n, &rows)
    }

    /// `x·y mod 2`.
    pub fn dot(a: u64, b: u64) -> u32 {
        (a & b).count_ones() & 1
    }

    /// Serialized form: header `"n k"` followed by generator rows for linear
    /// codes, `"n nonlinear"` followed by every word otherwise.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let fmt_word = |w: u64| -> String {
            (0..self.n)
                .map(|i| {
                    if w >> (self.n - 1 - i) & 1 == 1 {
                        '1'
                    } else {
                        '0'
                    }
                })
                .collect()
        };
        match &self.generator {
            Some(g) => {
                let _ = writeln!(s, "{} {}", self.n, g.len());
                for &r in g {
                    let _ = writeln!(s, "{}", fmt_word(r));
                }
            }
            None => {
                let _ = writeln!(s, "{} nonlinear", self.n);
                for &w in &self.words {
                    let _ = writeln!(s, "{}", fmt_word(w));
                }
            }
        }
        s
    }

    /// Parses the text format. A linear header may be followed by either
    /// `k` generator rows or the full list of `2^k` words.
    pub fn from_text(text: &str) -> Result<BinaryCode> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty code file".into()))?;
        let mut parts = header.split_whitespace();
        let n: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad header `{header}`")))?;
        let kind = parts
            .next()
            .ok_or_else(|| Error::Parse(format!("bad header `{header}`")))?;
        let words = lines
            .map(|l| parse_bits(n, l))
            .collect::<Result<Vec<u64>>>()?;
        if kind == "nonlinear" {
            return BinaryCode::from_words(n, &words);
        }
        if kind == "z4" {
            return Err(Error::Parse("file holds a Z/4 code".into()));
        }
        let k: usize = kind
            .parse()
            .map_err(|_| Error::Parse(format!("bad header `{header}`")))?;
        let code = BinaryCode::from_generator(n, &words)?;
        if code.dimension() != Some(k) {
            return Err(Error::Parse(format!(
                "header says dimension {k}, rows span dimension {}",
                code.dimension().unwrap_or(0)
            )));
        }
        if words.len() != k && words.len() != 1 << k {
            return Err(Error::Parse(format!(
                "expected {k} generator rows or {} words, found {}",
                1u64 << k,
                words.len()
            )));
        }
        Ok(code)
    }
}

fn pack(n: usize, bits: &[u8]) -> Result<u64> {
    if bits.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: bits.len(),
        });
    }
    let mut w = 0u64;
    for &b in bits {
        if b > 1 {
            return Err(Error::Precondition(format!("bit value {b}")));
        }
        w = w << 1 | b as u64;
    }
    Ok(w)
}

fn parse_bits(n: usize, s: &str) -> Result<u64> {
    let bits = s
        .chars()
        .map(|c| match c {
            '0' => Ok(0u8),
            '1' => Ok(1u8),
            _ => Err(Error::Parse(format!("bad symbol `{c}` in word `{s}`"))),
        })
        .collect::<Result<Vec<u8>>>()?;
    pack(n, &bits).map_err(|_| Error::Parse(format!("word `{s}` does not have length {n}")))
}

/// `0 → 00, 1 → 01, 2 → 11, 3 → 10`, applied symbol by symbol.
pub fn gray_map(word: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(2 * word.len());
    for &s in word {
        let pair = match s % 4 {
            0 => [0, 0],
            1 => [0, 1],
            2 => [1, 1],
            _ => [1, 0],
        };
        out.extend_from_slice(&pair);
    }
    out
}

/// Lee weight of a Z/4 symbol.
pub fn lee_weight(s: u8) -> u32 {
    match s % 4 {
        0 => 0,
        2 => 2,
        _ => 1,
    }
}

impl Z4Code {
    pub fn from_words(n: usize, words: Vec<Vec<u8>>) -> Result<Self> {
        check_len(2 * n)?;
        if words
            .iter()
            .any(|w| w.len() != n || w.iter().any(|&s| s > 3))
        {
            return Err(Error::Precondition(
                "Z/4 word of wrong length or symbol".into(),
            ));
        }
        let mut words = words;
        words.sort();
        words.dedup();
        Ok(Z4Code { n, words })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Vec<u8>] {
        &self.words
    }

    /// Closed under cyclic shift of coordinates.
    pub fn is_cyclic(&self) -> bool {
        self.words.iter().all(|w| {
            let mut s = w.clone();
            s.rotate_right(1);
            self.words.binary_search(&s).is_ok()
        })
    }

    /// Binary image under the Gray map.
    pub fn gray_image(&self) -> Result<BinaryCode> {
        let bits: Vec<Vec<u8>> = self.words.iter().map(|w| gray_map(w)).collect();
        BinaryCode::from_bit_vectors(2 * self.n, &bits)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} z4\n", self.n);
        for w in &self.words {
            for &c in w {
                s.push((b'0' + c) as char);
            }
            s.push('\n');
        }
        s
    }
}

/// The Z/4 words `abcde` with `b, c, d ∈ {1, 3}`, `a = c − d`, `e = b + c`,
/// together with all their cyclic shifts.
pub fn best_z4_code() -> Z4Code {
    let mut words = Vec::new();
    for b in [1u8, 3] {
        for c in [1u8, 3] {
            for d in [1u8, 3] {
                let a = (c + 4 - d) % 4;
                let e = (b + c) % 4;
                let seed = vec![a, b, c, d, e];
                for k in 0..5 {
                    let mut w = seed.clone();
                    w.rotate_right(k);
                    words.push(w);
                }
            }
        }
    }
    Z4Code::from_words(5, words).expect("valid Z/4 words")
}

/// Nonlinear binary code of length 10 with 40 words and minimum distance 4,
/// the Gray image of [`best_z4_code`].
pub fn best_code_10() -> BinaryCode {
    best_z4_code().gray_image().expect("length 10")
}

/// Extended binary Golay code: the cyclic [23,12] code with generator
/// polynomial `x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1`, plus a parity bit.
pub fn golay24() -> BinaryCode {
    // coefficient of x^k at coordinate k
    let g: u32 = (1 << 11) | (1 << 10) | (1 << 6) | (1 << 5) | (1 << 4) | (1 << 2) | 1;
    let rows: Vec<u64> = (0..12)
        .map(|shift| {
            let poly = (g as u64) << shift;
            let mut w = 0u64;
            for k in 0..23 {
                if poly >> k & 1 == 1 {
                    w |= coord_bit(24, k);
                }
            }
            if poly.count_ones() % 2 == 1 {
                w |= coord_bit(24, 23);
            }
            w
        })
        .collect();
    BinaryCode::from_generator(24, &rows).expect("Golay generator")
}

/// First-order Reed–Muller code RM(1, m), length `2^m`.
pub fn reed_muller_1(m: usize) -> Result<BinaryCode> {
    let n = 1usize << m;
    check_len(n)?;
    let mut rows = vec![mask(n)];
    for b in 0..m {
        let mut w = 0u64;
        for i in 0..n {
            if i >> b & 1 == 1 {
                w |= coord_bit(n, i);
            }
        }
        rows.push(w);
    }
    BinaryCode::from_generator(n, &rows)
}

/// GF(2^8) multiplication modulo `x^8 + x^4 + x^3 + x^2 + 1`.
fn gf256_mul(mut a: u8, mut b: u8) -> u8 {
    let mut p = 0u8;
    while b != 0 {
        if b & 1 == 1 {
            p ^= a;
        }
        let carry = a & 0x80 != 0;
        a <<= 1;
        if carry {
            a ^= 0x1d;
        }
        b >>= 1;
    }
    p
}

fn gf256_pow(a: u8, mut e: u32) -> u8 {
    let mut base = a;
    let mut acc = 1u8;
    while e > 0 {
        if e & 1 == 1 {
            acc = gf256_mul(acc, base);
        }
        base = gf256_mul(base, base);
        e >>= 1;
    }
    acc
}

/// Quadratic residues modulo 17.
pub const QR17_RESIDUES: [u32; 8] = [1, 2, 4, 8, 9, 13, 15, 16];

/// Extended quadratic residue code of length 18: the cyclic [17, 9] code
/// with generator `Π_{r ∈ QR17_RESIDUES} (x − β^r)`, where `β = 2^15` is a
/// primitive 17th root of unity in GF(2^8) (`2` generates the multiplicative
/// group), followed by an overall parity coordinate.
pub fn qr18() -> BinaryCode {
    let beta = gf256_pow(2, 15);
    // polynomial with GF(256) coefficients, index = degree
    let mut poly: Vec<u8> = vec![1];
    for &r in &QR17_RESIDUES {
        let root = gf256_pow(beta, r);
        let mut next = vec![0u8; poly.len() + 1];
        for (k, &c) in poly.iter().enumerate() {
            next[k + 1] ^= c;
            next[k] ^= gf256_mul(c, root);
        }
        poly = next;
    }
    debug_assert!(poly.iter().all(|&c| c <= 1), "generator lies over GF(2)");
    let g: u64 = poly
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == 1)
        .fold(0, |acc, (k, _)| acc | 1 << k);
    let rows: Vec<u64> = (0..9)
        .map(|shift| {
            let p = g << shift;
            let mut w = 0u64;
            for k in 0..17 {
                if p >> k & 1 == 1 {
                    w |= coord_bit(18, k);
                }
            }
            if p.count_ones() % 2 == 1 {
                w |= coord_bit(18, 17);
            }
            w
        })
        .collect();
    BinaryCode::from_generator(18, &rows).expect("QR generator")
}

/// First pair `(b, c)` with `c·(1 + b) ≠ 0 (mod 2)`, if any.
pub fn compatibility_violation(b: &BinaryCode, c: &BinaryCode) -> Option<(u64, u64)> {
    let ones = mask(b.len());
    for &x in b.words() {
        for &y in c.words() {
            if BinaryCode::dot(y, ones ^ x) != 0 {
                return Some((x, y));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn golay_weights() {
        let g = golay24();
        assert_eq!(g.size(), 4096);
        let a = g.weight_distribution();
        assert_eq!(a[0], 1);
        assert_eq!(a[8], 759);
        assert_eq!(a[12], 2576);
        assert_eq!(a[16], 759);
        assert_eq!(a[24], 1);
        assert_eq!(g.min_distance(DEFAULT_SWEEP_BUDGET).unwrap(), 8);
        assert_eq!(g.dual().unwrap(), g);
    }

    #[test]
    fn best_code() {
        let c = best_code_10();
        assert_eq!(c.size(), 40);
        assert!(!c.is_linear());
        assert_eq!(c.min_distance(DEFAULT_SWEEP_BUDGET).unwrap(), 4);
        assert!(best_z4_code().is_cyclic());
        for &w in c.words() {
            let d = c.distance_distribution_from(w);
            assert_eq!(d[0], 1);
            assert_eq!(d[1] + d[2] + d[3], 0);
        }
    }

    #[test]
    fn gray_examples() {
        assert_eq!(gray_map(&[0, 0, 0, 0, 0]), vec![0; 10]);
        assert_eq!(
            gray_map(&[0, 3, 3, 3, 2]),
            vec![0, 0, 1, 0, 1, 0, 1, 0, 1, 1]
        );
        for u in 0..4u8 {
            for v in 0..4u8 {
                let a = gray_map(&[u]);
                let b = gray_map(&[v]);
                let ham = a.iter().zip(&b).filter(|(x, y)| x != y).count() as u32;
                assert_eq!(ham, lee_weight((u + 4 - v) % 4));
            }
        }
    }

    #[test]
    fn qr_code_and_dual() {
        let q = qr18();
        assert_eq!(q.dimension(), Some(9));
        let d = q.dual().unwrap();
        assert_eq!(d.dimension(), Some(9));
        assert_eq!(q.min_distance(DEFAULT_SWEEP_BUDGET).unwrap(), 6);
        assert!(compatibility_violation(&q, &d).is_none());
        let zero = BinaryCode::from_words(18, &[0]).unwrap();
        assert!(compatibility_violation(&zero, &q).is_none());
        let odd = BinaryCode::from_words(18, &[0, 1]).unwrap();
        assert!(compatibility_violation(&zero, &odd).is_some());
    }

    #[test]
    fn repetition_code() {
        let c = BinaryCode::from_generator(2, &[0b11]).unwrap();
        assert_eq!(c.min_distance(10).unwrap(), 2);
        assert_eq!(c.weight_distribution(), vec![1, 0, 1]);
        let nl = BinaryCode::from_words(2, &[0, 3]).unwrap();
        assert_eq!(nl.min_distance(10).unwrap(), 2);
        assert!(nl.dual().is_err());
        assert!(BinaryCode::from_words(3, &[0, 1, 2, 4])
            .unwrap()
            .min_distance(2)
            .unwrap_err()
            .is_budget());
    }

    #[test]
    fn text_round_trip() {
        let g = golay24();
        assert_eq!(BinaryCode::from_text(&g.to_text()).unwrap(), g);
        let b = best_code_10();
        assert_eq!(BinaryCode::from_text(&b.to_text()).unwrap(), b);
        assert!(BinaryCode::from_text("3 1\n102\n").is_err());
        assert!(BinaryCode::from_text(&best_z4_code().to_text()).is_err());
    }

    #[test]
    fn reed_muller() {
        let rm = reed_muller_1(4).unwrap();
        assert_eq!(rm.size(), 32);
        let a = rm.weight_distribution();
        assert_eq!((a[0], a[8], a[16]), (1, 30, 1));
    }

    proptest! {
        #[test]
        fn dual_is_involutive(rows in proptest::collection::vec(0u64..(1 << 12), 1..6)) {
            let c = BinaryCode::from_generator(12, &rows).unwrap();
            let d = c.dual().unwrap();
            prop_assert_eq!(c.dimension().unwrap() + d.dimension().unwrap(), 12);
            for &x in c.words() {
                for &y in d.words() {
                    prop_assert_eq!(BinaryCode::dot(x, y), 0);
                }
            }
            prop_assert_eq!(d.dual().unwrap(), c);
        }

        #[test]
        fn gray_map_is_injective(a in proptest::collection::vec(0u8..4, 5), b in proptest::collection::vec(0u8..4, 5)) {
            prop_assert_eq!(gray_map(&a) == gray_map(&b), a == b);
        }
    }
}
