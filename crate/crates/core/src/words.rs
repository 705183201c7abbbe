//! Finite words over the base alphabet `{1,2,3}` and over the seven-letter
//! planar alphabet, plus the symbolwise pair coding between them.

use std::fmt;

use crate::{Error, Result};

/// Symbol of the three-map system.
pub type Sym3 = u8; // 1, 2, or 3

/// Word over `{1,2,3}`, serialized as a digit string like `"213"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word3(Vec<Sym3>);

impl Word3 {
    pub fn new(symbols: Vec<Sym3>) -> Self {
        assert!(symbols.iter().all(|&s| (1..=3).contains(&s)));
        Word3(symbols)
    }

    pub fn empty() -> Self {
        Word3(vec![])
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut v = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '1' => v.push(1),
                '2' => v.push(2),
                '3' => v.push(3),
                _ => return Err(Error::InvalidParam(format!("bad base symbol {c:?}"))),
            }
        }
        Ok(Word3(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Sym3] {
        &self.0
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word3(v)
    }

    pub fn prefix(&self, n: usize) -> Self {
        Word3(self.0[..n.min(self.0.len())].to_vec())
    }

    /// Drop the first `n` symbols.
    pub fn shift(&self, n: usize) -> Self {
        Word3(self.0[n.min(self.0.len())..].to_vec())
    }

    /// Length of the common prefix of two words.
    pub fn common_prefix_len(&self, other: &Self) -> usize {
        self.0
            .iter()
            .zip(other.0.iter())
            .take_while(|(a, b)| a == b)
            .count()
    }

    /// Append `k` copies of symbol 1 (the identity-at-zero padding).
    pub fn pad_ones(&self, k: usize) -> Self {
        let mut v = self.0.clone();
        v.extend(std::iter::repeat(1).take(k));
        Word3(v)
    }
}

impl fmt::Display for Word3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Symbol of the planar system: one of the seven admitted coordinate pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymJ {
    pub x: i8,
    pub y: i8,
}

impl SymJ {
    pub const ALPHABET: [SymJ; 7] = [
        SymJ { x: 0, y: 0 },
        SymJ { x: -1, y: 0 },
        SymJ { x: -1, y: -1 },
        SymJ { x: 1, y: 0 },
        SymJ { x: 1, y: 1 },
        SymJ { x: 0, y: -1 },
        SymJ { x: 0, y: 1 },
    ];

    /// Left-to-right order of the child slope intervals in the covering.
    pub const COVERING_ORDER: [SymJ; 7] = [
        SymJ { x: -1, y: 0 },
        SymJ { x: -1, y: -1 },
        SymJ { x: 0, y: 1 },
        SymJ { x: 0, y: 0 },
        SymJ { x: 0, y: -1 },
        SymJ { x: 1, y: 1 },
        SymJ { x: 1, y: 0 },
    ];

    pub fn new(x: i8, y: i8) -> Result<Self> {
        let s = SymJ { x, y };
        if Self::ALPHABET.contains(&s) {
            Ok(s)
        } else {
            Err(Error::InvalidParam(format!("({x},{y}) is not a planar symbol")))
        }
    }

    pub const fn zero() -> Self {
        SymJ { x: 0, y: 0 }
    }
}

/// Word over the planar alphabet, serialized as `"0 1,1 0,-1 -1"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WordJ(Vec<SymJ>);

impl WordJ {
    pub fn new(symbols: Vec<SymJ>) -> Self {
        WordJ(symbols)
    }

    pub fn empty() -> Self {
        WordJ(vec![])
    }

    pub fn from_pairs(pairs: &[(i8, i8)]) -> Result<Self> {
        pairs
            .iter()
            .map(|&(x, y)| SymJ::new(x, y))
            .collect::<Result<Vec<_>>>()
            .map(WordJ)
    }

    pub fn parse(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(WordJ::empty());
        }
        let mut v = vec![];
        for part in s.split(',') {
            let mut it = part.trim().split_whitespace();
            let x: i8 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::InvalidParam(format!("bad planar symbol {part:?}")))?;
            let y: i8 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::InvalidParam(format!("bad planar symbol {part:?}")))?;
            if it.next().is_some() {
                return Err(Error::InvalidParam(format!("bad planar symbol {part:?}")));
            }
            v.push(SymJ::new(x, y)?);
        }
        Ok(WordJ(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[SymJ] {
        &self.0
    }

    pub fn push(&mut self, s: SymJ) {
        self.0.push(s);
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        WordJ(v)
    }

    pub fn child(&self, s: SymJ) -> Self {
        let mut v = self.0.clone();
        v.push(s);
        WordJ(v)
    }

    pub fn prefix(&self, n: usize) -> Self {
        WordJ(self.0[..n.min(self.0.len())].to_vec())
    }

    /// Append `k` copies of the zero symbol; leaves the orbit point fixed.
    pub fn pad_zeros(&self, k: usize) -> Self {
        let mut v = self.0.clone();
        v.extend(std::iter::repeat(SymJ::zero()).take(k));
        WordJ(v)
    }

    /// Position (1-based) of the first symbol with nonzero x, and with
    /// nonzero y.
    pub fn first_nonzero_positions(&self) -> (Option<usize>, Option<usize>) {
        let px = self.0.iter().position(|s| s.x != 0).map(|i| i + 1);
        let py = self.0.iter().position(|s| s.y != 0).map(|i| i + 1);
        (px, py)
    }

    pub fn has_nonzero_y(&self) -> bool {
        self.0.iter().any(|s| s.y != 0)
    }
}

impl fmt::Display for WordJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in &self.0 {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{} {}", s.x, s.y)?;
            first = false;
        }
        Ok(())
    }
}

/// Symbolwise pair code: a pair of base symbols maps to the planar symbol
/// `(δ³(j)−δ³(i), δ²(i)−δ²(j))`. Injective off the diagonal.
pub fn pair_code_sym(i: Sym3, j: Sym3) -> SymJ {
    let d3 = |s: Sym3| i8::from(s == 3);
    let d2 = |s: Sym3| i8::from(s == 2);
    SymJ {
        x: d3(j) - d3(i),
        y: d2(i) - d2(j),
    }
}

/// Pair code of two equal-length words, applied symbolwise.
pub fn pair_code(i: &Word3, j: &Word3) -> Result<WordJ> {
    if i.len() != j.len() {
        return Err(Error::LengthMismatch(i.len(), j.len()));
    }
    Ok(WordJ(
        i.symbols()
            .iter()
            .zip(j.symbols())
            .map(|(&a, &b)| pair_code_sym(a, b))
            .collect(),
    ))
}

/// Symbolwise inverse of the pair code, with the zero symbol mapping to the
/// diagonal pair `(1,1)`.
pub fn pair_decode_sym(s: SymJ) -> (Sym3, Sym3) {
    match (s.x, s.y) {
        (0, 0) => (1, 1),
        (0, -1) => (1, 2),
        (1, 0) => (1, 3),
        (0, 1) => (2, 1),
        (1, 1) => (2, 3),
        (-1, 0) => (3, 1),
        (-1, -1) => (3, 2),
        _ => unreachable!("not a planar symbol"),
    }
}

pub fn pair_decode(w: &WordJ) -> (Word3, Word3) {
    let mut a = Vec::with_capacity(w.len());
    let mut b = Vec::with_capacity(w.len());
    for &s in w.symbols() {
        let (x, y) = pair_decode_sym(s);
        a.push(x);
        b.push(y);
    }
    (Word3(a), Word3(b))
}

/// First admissible planar prefix of the construction words.
pub fn admissible_prefix_a() -> WordJ {
    WordJ::from_pairs(&[(0, 1), (1, 1), (0, -1), (0, -1), (1, 0)]).unwrap()
}

/// Second admissible planar prefix of the construction words.
pub fn admissible_prefix_b() -> WordJ {
    WordJ::from_pairs(&[(0, 1), (1, 0), (0, 1), (0, 1), (-1, 0)]).unwrap()
}

pub fn has_admissible_prefix(w: &WordJ) -> bool {
    let pa = admissible_prefix_a();
    let pb = admissible_prefix_b();
    w.len() >= 5 && (w.prefix(5) == pa || w.prefix(5) == pb)
}
