use std::fmt;

use crate::error::{Error, Result};

pub type Symbol = u8;
pub type Word = Vec<Symbol>;

/// Symbols are rendered as `0-9` then `a-z`.
pub const MAX_ALPHABET: usize = 36;

const DIGITS: &[u8; MAX_ALPHABET] = b"0123456789abcdefghijklmnopqrstuvwxyz";

pub fn symbol_char(s: Symbol) -> char {
    DIGITS[s as usize] as char
}

pub fn word_to_string(w: &[Symbol]) -> String {
    w.iter().map(|&s| symbol_char(s)).collect()
}

/// Parses a word written with one character per symbol.
pub fn parse_word(s: &str, alphabet: usize) -> Result<Word> {
    s.chars()
        .map(|c| {
            let v = c
                .to_digit(36)
                .ok_or_else(|| Error::input(format!("'{c}' is not a symbol character")))?
                as usize;
            if v >= alphabet {
                return Err(Error::input(format!(
                    "symbol '{c}' out of range for alphabet of size {alphabet}"
                )));
            }
            Ok(v as Symbol)
        })
        .collect()
}

/// A one-sided subshift of finite type given by a 0/1 transition matrix.
///
/// `adjacency[a][b]` says that `b` may follow `a`. Every row and every column
/// must contain a one, so the shift is everywhere defined and surjective; the
/// number of preimages of `x` is then the column count of `x_0`, which makes
/// the shift a covering map.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ShiftSystem {
    adjacency: Vec<Vec<bool>>,
}

impl ShiftSystem {
    pub fn new(adjacency: Vec<Vec<bool>>) -> Result<Self> {
        let d = adjacency.len();
        if d == 0 {
            return Err(Error::InvalidSystem("alphabet must be nonempty".into()));
        }
        if d > MAX_ALPHABET {
            return Err(Error::InvalidSystem(format!(
                "alphabet size {d} exceeds the supported maximum {MAX_ALPHABET}"
            )));
        }
        if let Some((i, row)) = adjacency.iter().enumerate().find(|(_, r)| r.len() != d) {
            return Err(Error::InvalidSystem(format!(
                "adjacency row {i} has {} entries, expected {d}",
                row.len()
            )));
        }
        if let Some(a) = (0..d).find(|&a| !adjacency[a].iter().any(|&e| e)) {
            return Err(Error::InvalidSystem(format!(
                "shift not everywhere defined: symbol {} has no successor",
                symbol_char(a as Symbol)
            )));
        }
        if (0..d).any(|b| !(0..d).any(|a| adjacency[a][b])) {
            return Err(Error::InvalidSystem(
                "shift not surjective: not a covering map".into(),
            ));
        }
        Ok(ShiftSystem { adjacency })
    }

    pub fn from_rows(rows: &[&[u8]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&e| e != 0).collect())
                .collect(),
        )
    }

    pub fn full_shift(d: usize) -> Result<Self> {
        Self::new(vec![vec![true; d]; d])
    }

    /// Two symbols with edges `0→0`, `1→0`, `1→1`.
    pub fn trap() -> Self {
        Self::from_rows(&[&[1, 0], &[1, 1]]).expect("trap system is valid")
    }

    pub fn alphabet_size(&self) -> usize {
        self.adjacency.len()
    }

    pub fn adjacency(&self) -> &[Vec<bool>] {
        &self.adjacency
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        (0..self.alphabet_size()).map(|a| a as Symbol)
    }

    pub fn allows(&self, a: Symbol, b: Symbol) -> bool {
        self.adjacency[a as usize][b as usize]
    }

    pub fn successors(&self, a: Symbol) -> impl Iterator<Item = Symbol> + '_ {
        self.symbols().filter(move |&b| self.allows(a, b))
    }

    pub fn predecessors(&self, b: Symbol) -> impl Iterator<Item = Symbol> + '_ {
        self.symbols().filter(move |&a| self.allows(a, b))
    }

    pub fn out_degree(&self, a: Symbol) -> usize {
        self.successors(a).count()
    }

    /// Column count of `b`: the number of preimages of any point starting with `b`.
    pub fn in_degree(&self, b: Symbol) -> usize {
        self.predecessors(b).count()
    }

    pub fn check_symbols(&self, w: &[Symbol]) -> Result<()> {
        match w.iter().find(|&&s| s as usize >= self.alphabet_size()) {
            Some(s) => Err(Error::input(format!(
                "symbol {s} out of range for alphabet of size {}",
                self.alphabet_size()
            ))),
            None => Ok(()),
        }
    }

    pub fn is_admissible(&self, w: &[Symbol]) -> Result<bool> {
        self.check_symbols(w)?;
        Ok(self.admits(w))
    }

    /// Admissibility without the range check.
    pub(crate) fn admits(&self, w: &[Symbol]) -> bool {
        w.windows(2).all(|p| self.allows(p[0], p[1]))
    }

    /// All admissible words of length `len`, in lexicographic order.
    pub fn words(&self, len: usize) -> Vec<Word> {
        if len == 0 {
            return vec![Vec::new()];
        }
        let mut out: Vec<Word> = self.symbols().map(|a| vec![a]).collect();
        for _ in 1..len {
            out = out
                .iter()
                .flat_map(|w| {
                    let last = *w.last().unwrap();
                    self.successors(last).map(move |b| {
                        let mut v = w.clone();
                        v.push(b);
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// All admissible extensions of `w` to length `len` (just `w` if already that long).
    pub fn extensions(&self, w: &[Symbol], len: usize) -> Vec<Word> {
        let mut out = vec![w.to_vec()];
        if w.is_empty() {
            return self.words(len);
        }
        for _ in w.len()..len {
            out = out
                .iter()
                .flat_map(|v| {
                    let last = *v.last().unwrap();
                    self.successors(last).map(move |b| {
                        let mut u = v.clone();
                        u.push(b);
                        u
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Debug for ShiftSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .adjacency
            .iter()
            .map(|r| r.iter().map(|&e| if e { '1' } else { '0' }).collect())
            .collect();
        write!(f, "ShiftSystem[{}]", rows.join("/"))
    }
}
