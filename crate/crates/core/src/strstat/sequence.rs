use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A finite string over the alphabet `{0, …, alphabet_size - 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sequence {
    symbols: Vec<u32>,
    alphabet_size: u32,
}

impl Sequence {
    pub fn new(symbols: Vec<u32>, alphabet_size: u32) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(Error::input("alphabet size must be positive"));
        }
        if let Some((pos, &s)) = symbols
            .iter()
            .enumerate()
            .find(|(_, &s)| s >= alphabet_size)
        {
            return Err(Error::input(format!(
                "symbol {s} at position {pos} is outside alphabet of size {alphabet_size}"
            )));
        }
        Ok(Sequence {
            symbols,
            alphabet_size,
        })
    }

    pub fn empty(alphabet_size: u32) -> Self {
        assert!(alphabet_size > 0);
        Sequence {
            symbols: Vec::new(),
            alphabet_size,
        }
    }

    /// Raw bytes over the full byte alphabet (size 256).
    pub fn from_bytes(bytes: &[u8]) -> Self {
        Sequence {
            symbols: bytes.iter().map(|&b| u32::from(b)).collect(),
            alphabet_size: 256,
        }
    }

    /// Short-hand for tests and examples: `'a'..='z'` map to `0..26` and
    /// `'0'..='9'` map to `0..10`.
    pub fn from_letters(text: &str, alphabet_size: u32) -> Result<Self> {
        let symbols = text
            .chars()
            .map(|c| match c {
                'a'..='z' => Ok(c as u32 - 'a' as u32),
                '0'..='9' => Ok(c as u32 - '0' as u32),
                _ => Err(Error::input(format!("unsupported letter {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Sequence::new(symbols, alphabet_size)
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn slice(&self, range: Range<usize>) -> Result<Sequence> {
        if range.start > range.end || range.end > self.len() {
            return Err(Error::input(format!(
                "range {range:?} out of bounds for sequence of length {}",
                self.len()
            )));
        }
        Ok(Sequence {
            symbols: self.symbols[range].to_vec(),
            alphabet_size: self.alphabet_size,
        })
    }

    pub fn prefix(&self, n: usize) -> Result<Sequence> {
        self.slice(0..n)
    }

    /// `self` followed by `other`; the alphabet is the larger of the two.
    pub fn concat(&self, other: &Sequence) -> Sequence {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Sequence {
            symbols,
            alphabet_size: self.alphabet_size.max(other.alphabet_size),
        }
    }

    pub fn into_symbols(self) -> Vec<u32> {
        self.symbols
    }
}

impl AsRef<[u32]> for Sequence {
    fn as_ref(&self) -> &[u32] {
        &self.symbols
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}
