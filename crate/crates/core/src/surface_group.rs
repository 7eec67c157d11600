//! The closed surface group of genus g, its words and its first homology.
//!
//! Generators are indexed from 0: `a_i` is `2(i-1)` and `b_i` is `2(i-1)+1`.
//! The text syntax writes `a1 b1 a1' b1'` for the commutator `[a1,b1]`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A generator raised to the power ±1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn a(i: usize) -> Self {
        Letter::new(2 * (i - 1), false)
    }

    pub fn b(i: usize) -> Self {
        Letter::new(2 * (i - 1) + 1, false)
    }

    pub fn inv(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.generator.is_multiple_of(2) { 'a' } else { 'b' };
        write!(f, "{}{}", kind, self.generator / 2 + 1)?;
        if self.inverse {
            write!(f, "'")?;
        }
        Ok(())
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (body, inverse) = match s.strip_suffix('\'') {
            Some(b) => (b, true),
            None => (s, false),
        };
        let mut chars = body.chars();
        let offset = match chars.next() {
            Some('a') => 0,
            Some('b') => 1,
            _ => return Err(Error::Parse(format!("bad letter {s:?}"))),
        };
        let i: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad letter index in {s:?}")))?;
        if i == 0 {
            return Err(Error::Parse(format!("letter indices start at 1: {s:?}")));
        }
        Ok(Letter::new(2 * (i - 1) + offset, inverse))
    }
}

/// A freely reduced word in the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    /// Builds a word, freely reducing the letters.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        free_reduce(letters)
    }

    pub fn empty() -> Self {
        Word::default()
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

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        free_reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    /// Smallest genus whose generators cover every letter.
    pub fn min_genus(&self) -> usize {
        self.letters.iter().map(|l| l.generator / 2 + 1).max().unwrap_or(0)
    }

    pub fn check_genus(&self, genus: usize) -> Result<()> {
        let needed = self.min_genus();
        if needed > genus {
            return Err(Error::GenusMismatch {
                expected: genus,
                found: needed,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s.split_whitespace().map(Letter::from_str).collect::<Result<Vec<_>>>()?;
        Ok(Word::new(letters))
    }
}

impl TryFrom<String> for Word {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

/// Freely reduces a letter sequence with a single stack pass.
pub fn free_reduce(letters: impl IntoIterator<Item = Letter>) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word { letters: out }
}

/// The standard one-relator presentation of a genus-g surface group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    genus: usize,
    relator: Word,
}

impl Presentation {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn generator_count(&self) -> usize {
        2 * self.genus
    }

    pub fn generator_names(&self) -> Vec<String> {
        (0..2 * self.genus).map(|k| Letter::new(k, false).to_string()).collect()
    }

    pub fn relator(&self) -> &Word {
        &self.relator
    }
}

pub fn make_surface_group(genus: usize) -> Result<Presentation> {
    if genus < 2 {
        return Err(Error::GenusOutOfScope(genus));
    }
    Ok(Presentation {
        genus,
        relator: relator_word(genus),
    })
}

/// `[a1,b1]⋯[ag,bg]`; also defined for genus 1 and 0.
pub fn relator_word(genus: usize) -> Word {
    partial_relator(genus)
}

/// `[a1,b1]⋯[ak,bk]`, the boundary of the first k handles.
pub fn partial_relator(k: usize) -> Word {
    let mut letters = Vec::with_capacity(4 * k);
    for i in 1..=k {
        let (a, b) = (Letter::a(i), Letter::b(i));
        letters.extend([a, b, a.inv(), b.inv()]);
    }
    Word::new(letters)
}

/// An integral homology class in the basis `[a1],[b1],…,[ag],[bg]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HomologyVector(pub Vec<i64>);

/// Multiplicative notation in word syntax: `a1 a2'`, `b1^3`, `1` for zero.
impl fmt::Display for HomologyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (g, &k) in self.0.iter().enumerate() {
            if k == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{}", Letter::new(g, k < 0))?;
            if k.abs() > 1 {
                write!(f, "^{}", k.abs())?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl HomologyVector {
    pub fn zero(genus: usize) -> Self {
        HomologyVector(vec![0; 2 * genus])
    }

    pub fn basis(genus: usize, generator: usize) -> Self {
        let mut v = Self::zero(genus);
        v.0[generator] = 1;
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        HomologyVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        HomologyVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        HomologyVector(self.0.iter().map(|a| k * a).collect())
    }
}

/// Signed letter counts per generator, padded to `2 * genus` entries.
pub fn abelianize(w: &Word, genus: usize) -> HomologyVector {
    let mut v = HomologyVector::zero(genus.max(w.min_genus()));
    for l in w.letters() {
        v.0[l.generator] += l.sign();
    }
    v
}

/// `ω(u,v) = Σ u(a_i)v(b_i) − u(b_i)v(a_i)`.
pub fn intersection_pairing(u: &HomologyVector, v: &HomologyVector) -> Result<i64> {
    if u.0.len() != v.0.len() || !u.0.len().is_multiple_of(2) {
        return Err(Error::DimensionMismatch {
            expected: u.0.len(),
            found: v.0.len(),
        });
    }
    Ok(u.0
        .chunks(2)
        .zip(v.0.chunks(2))
        .map(|(x, y)| x[0] * y[1] - x[1] * y[0])
        .sum())
}

/// An endomorphism of the free group on the generators, given by generator images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordMap {
    images: Vec<Word>,
}

impl WordMap {
    pub fn identity(genus: usize) -> Self {
        WordMap {
            images: (0..2 * genus).map(|k| Word::new([Letter::new(k, false)])).collect(),
        }
    }

    pub fn from_images(images: Vec<Word>) -> Self {
        WordMap { images }
    }

    pub fn genus(&self) -> usize {
        self.images.len() / 2
    }

    pub fn image(&self, generator: usize) -> &Word {
        &self.images[generator]
    }

    pub fn set_image(&mut self, generator: usize, w: Word) {
        self.images[generator] = w;
    }

    pub fn apply(&self, w: &Word) -> Word {
        let mut letters = Vec::new();
        for l in w.letters() {
            let img = &self.images[l.generator];
            if l.inverse {
                letters.extend(img.inverse().letters().iter().copied());
            } else {
                letters.extend(img.letters().iter().copied());
            }
        }
        Word::new(letters)
    }

    /// `self ∘ other`: first apply `other`, then `self`.
    pub fn compose(&self, other: &WordMap) -> WordMap {
        WordMap {
            images: other.images.iter().map(|w| self.apply(w)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn genus_two_relator() {
        let p = make_surface_group(2).unwrap();
        assert_eq!(p.relator().to_string(), "a1 b1 a1' b1' a2 b2 a2' b2'");
        assert_eq!(p.relator().len(), 8);
        assert!(abelianize(p.relator(), 2).is_zero());
        assert_eq!(make_surface_group(5).unwrap().relator().len(), 20);
        assert_eq!(make_surface_group(5).unwrap().generator_count(), 10);
        assert_eq!(make_surface_group(1), Err(Error::GenusOutOfScope(1)));
    }

    #[test]
    fn reduction() {
        assert!(w("a1 a1'").is_empty());
        assert_eq!(w("a1 b1 b1' a1"), w("a1 a1"));
        let x = w("a1 b2 a1' b1");
        assert_eq!(free_reduce(x.letters().iter().copied()), x);
    }

    #[test]
    fn counts_letters() {
        assert_eq!(abelianize(&w("a1 b2' a1"), 2).0, vec![2, 0, 0, -1]);
        assert!(abelianize(&Word::empty(), 2).is_zero());
    }

    #[test]
    fn pairing() {
        let e = |k| HomologyVector::basis(2, k);
        assert_eq!(intersection_pairing(&e(0), &e(1)), Ok(1));
        assert_eq!(intersection_pairing(&e(1), &e(0)), Ok(-1));
        assert_eq!(intersection_pairing(&e(2), &e(2)), Ok(0));
        assert!(intersection_pairing(&e(0), &HomologyVector::zero(3)).is_err());
    }

    #[test]
    fn text_round_trip() {
        let x = w("a1 b1 a1' b1' a12");
        assert_eq!(x.to_string().parse::<Word>().unwrap(), x);
        assert!("c1".parse::<Word>().is_err());
        assert!("a0".parse::<Word>().is_err());
    }
}
