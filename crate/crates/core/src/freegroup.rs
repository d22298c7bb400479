//! Reduced words in free groups on indexed generator alphabets.
//!
//! Two alphabets appear in the invariant computation: Wirtinger arc
//! generators (doubly indexed) and the meridian generators the longitudes
//! are eventually written in. Words are kept freely reduced at all times;
//! every constructor and operation reduces its output.

use std::fmt;

/// Generator of one of the two free groups used by the pipeline.
///
/// Indices are 1-based, matching the usual labelling of strands and arcs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    /// Arc generator: `strand` is the component, `arc` the arc number along it.
    Wirtinger { strand: usize, arc: usize },
    /// Meridian generator of a strand.
    Meridian { strand: usize },
}

impl Gen {
    pub fn wirtinger(strand: usize, arc: usize) -> Self {
        debug_assert!(strand >= 1 && arc >= 1);
        Gen::Wirtinger { strand, arc }
    }

    pub fn meridian(strand: usize) -> Self {
        debug_assert!(strand >= 1);
        Gen::Meridian { strand }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Wirtinger { strand, arc } => write!(f, "a{},{}", strand, arc),
            Gen::Meridian { strand } => write!(f, "m{}", strand),
        }
    }
}

/// A letter is a generator with exponent +1 or -1.
pub type Letter = (Gen, i8);

/// Freely reduced word. The identity is the empty word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    /// Single-letter word `g^exp` with `exp` in `{1, -1}`.
    pub fn letter(gen: Gen, exp: i8) -> Self {
        debug_assert!(exp == 1 || exp == -1);
        Word {
            letters: vec![(gen, exp)],
        }
    }

    pub fn gen(gen: Gen) -> Self {
        Self::letter(gen, 1)
    }

    /// Builds a word from letters, reducing as it goes.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for (g, e) in letters {
            debug_assert!(e == 1 || e == -1);
            match out.last() {
                Some(&(h, f)) if h == g && f == -e => {
                    out.pop();
                }
                _ => out.push((g, e)),
            }
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters
            .windows(2)
            .all(|w| !(w[0].0 == w[1].0 && w[0].1 == -w[1].1))
    }

    pub fn multiply(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn invert(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|&(g, e)| (g, -e))
                .collect(),
        }
    }

    /// `by^-1 * self * by`.
    pub fn conjugate(&self, by: &Word) -> Word {
        by.invert().multiply(self).multiply(by)
    }

    /// `self^k`, with negative `k` meaning powers of the inverse.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// Sum of exponents of every letter whose generator satisfies `pred`.
    pub fn exponent_sum<F: Fn(&Gen) -> bool>(&self, pred: F) -> i64 {
        self.letters
            .iter()
            .filter(|(g, _)| pred(g))
            .map(|&(_, e)| e as i64)
            .sum()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, (g, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if *e == 1 {
                write!(f, "{}", g)?;
            } else {
                write!(f, "{}^-1", g)?;
            }
        }
        Ok(())
    }
}
