//! Finite binary words, eventually periodic infinite sequences and prefix sets.
//!
//! Finite words are ordered by the "extensions first" lexicographic order:
//! `s < t` when `t` is a proper prefix of `s`, or when the two are incompatible
//! and `s` has a `0` where they first differ. This is the order in which the
//! Y-part of a standard form is laid out, and the order of the leaves of a
//! prefix set.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};

/// A finite binary word.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<bool>);

/// Outcome of [`Word::lex_compare`]. `nested` is set when one word strictly
/// extends the other, in which case the longer word is the smaller one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexComparison {
    Equal,
    Less { nested: bool },
    Greater { nested: bool },
}

impl LexComparison {
    pub fn ordering(self) -> Ordering {
        match self {
            LexComparison::Equal => Ordering::Equal,
            LexComparison::Less { .. } => Ordering::Less,
            LexComparison::Greater { .. } => Ordering::Greater,
        }
    }
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        Word(bits.into_iter().collect())
    }

    /// `n` copies of `bit`.
    pub fn constant(bit: bool, n: usize) -> Self {
        Word(vec![bit; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn bit(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn last(&self) -> Option<bool> {
        self.0.last().copied()
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn pop(&mut self) -> Option<bool> {
        self.0.pop()
    }

    /// `self` followed by `bit`.
    pub fn child(&self, bit: bool) -> Word {
        let mut w = self.clone();
        w.push(bit);
        w
    }

    /// `self` followed by the digits of `bits` (`"0"`/`"1"` characters).
    pub fn extend_str(&self, bits: &str) -> Word {
        let mut w = self.clone();
        w.0.extend(bits.chars().map(|c| c == '1'));
        w
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The initial segment of length `n`.
    pub fn restrict(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    /// The word with every digit flipped.
    pub fn complement(&self) -> Word {
        Word(self.0.iter().map(|b| !b).collect())
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_proper_prefix_of(&self, other: &Word) -> bool {
        self.len() < other.len() && self.is_prefix_of(other)
    }

    pub fn is_compatible(&self, other: &Word) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// Neither word is a prefix of the other.
    pub fn is_incompatible(&self, other: &Word) -> bool {
        !self.is_compatible(other)
    }

    /// The remainder after removing `prefix`, if `prefix` is one.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|r| Word(r.to_vec()))
    }

    /// True when every digit is the same (the empty word counts as constant).
    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn lex_compare(&self, other: &Word) -> LexComparison {
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a != b {
                return if !a {
                    LexComparison::Less { nested: false }
                } else {
                    LexComparison::Greater { nested: false }
                };
            }
        }
        match self.len().cmp(&other.len()) {
            Ordering::Equal => LexComparison::Equal,
            Ordering::Greater => LexComparison::Less { nested: true },
            Ordering::Less => LexComparison::Greater { nested: true },
        }
    }

    /// Every word of length exactly `n`, in increasing binary order.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = Word> {
        (0u64..(1u64 << n)).map(move |k| Word((0..n).map(|i| (k >> (n - 1 - i)) & 1 == 1).collect()))
    }

    /// Every word of length at most `n`, shortest first.
    pub fn all_up_to(n: usize) -> impl Iterator<Item = Word> {
        (0..=n).flat_map(Word::all_of_length)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_compare(other).ordering()
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{self}>")
    }
}

fn parse_bits(input: &str, offset: usize, text: &str) -> std::result::Result<Vec<bool>, ParseError> {
    text.char_indices()
        .map(|(i, c)| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(ParseError::at(input, offset + i, "binary digit")),
        })
        .collect()
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let t = s.trim();
        if t == "e" || t.is_empty() {
            return Ok(Word::empty());
        }
        let offset = s.len() - s.trim_start().len();
        parse_bits(s, offset, t).map(Word)
    }
}

/// An infinite binary sequence of the form `pre (per)(per)(per)...`, kept in
/// canonical form: the period is primitive and the preperiod is as short as
/// possible. Structural equality is therefore equality of sequences.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Seq {
    pre: Word,
    per: Word,
}

impl Seq {
    pub fn new(pre: Word, per: Word) -> Result<Seq> {
        if per.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(Seq::canonical(pre, per))
    }

    /// The constant sequence `bit bit bit ...`.
    pub fn constant(bit: bool) -> Seq {
        Seq {
            pre: Word::empty(),
            per: Word::constant(bit, 1),
        }
    }

    /// `prefix` followed by the constant tail `bit`.
    pub fn eventually_constant(prefix: Word, bit: bool) -> Seq {
        Seq::canonical(prefix, Word::constant(bit, 1))
    }

    fn canonical(mut pre: Word, per: Word) -> Seq {
        let n = per.len();
        let root = (1..=n)
            .find(|&d| n % d == 0 && (0..n).all(|i| per.0[i] == per.0[i % d]))
            .unwrap_or(n);
        let mut per = Word(per.0[..root].to_vec());
        while let (Some(a), Some(b)) = (pre.last(), per.last()) {
            if a != b {
                break;
            }
            pre.pop();
            per.0.rotate_right(1);
        }
        Seq { pre, per }
    }

    pub fn preperiod(&self) -> &Word {
        &self.pre
    }

    pub fn period(&self) -> &Word {
        &self.per
    }

    pub fn digit(&self, i: usize) -> bool {
        if i < self.pre.len() {
            self.pre.bit(i)
        } else {
            self.per.bit((i - self.pre.len()) % self.per.len())
        }
    }

    /// The first `n` digits.
    pub fn take(&self, n: usize) -> Word {
        Word((0..n).map(|i| self.digit(i)).collect())
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        prefix.bits().iter().enumerate().all(|(i, &b)| self.digit(i) == b)
    }

    /// The sequence with its first `n` digits removed.
    pub fn drop_front(&self, n: usize) -> Seq {
        if n <= self.pre.len() {
            return Seq {
                pre: Word(self.pre.0[n..].to_vec()),
                per: self.per.clone(),
            };
        }
        let shift = (n - self.pre.len()) % self.per.len();
        let mut per = self.per.clone();
        per.0.rotate_left(shift);
        Seq { pre: Word::empty(), per }
    }

    /// The remainder after `prefix`, if the sequence extends it.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Seq> {
        self.starts_with(prefix).then(|| self.drop_front(prefix.len()))
    }

    /// `prefix` followed by this sequence.
    pub fn prepend(&self, prefix: &Word) -> Seq {
        Seq::canonical(prefix.concat(&self.pre), self.per.clone())
    }

    /// For a sequence `w b b b ...`, the pair `(w, b)` with `w` shortest.
    pub fn as_eventually_constant(&self) -> Option<(Word, bool)> {
        (self.per.len() == 1).then(|| (self.pre.clone(), self.per.bit(0)))
    }

    pub fn complement(&self) -> Seq {
        Seq {
            pre: self.pre.complement(),
            per: self.per.complement(),
        }
    }

    /// Some suffix of `self` equals some suffix of `other`.
    pub fn tail_equivalent(&self, other: &Seq) -> bool {
        let n = self.per.len();
        if n != other.per.len() {
            return false;
        }
        (0..n).any(|r| (0..n).all(|i| self.per.bit((i + r) % n) == other.per.bit(i)))
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.pre.is_empty() {
            write!(f, "{}", self.pre)?;
        }
        write!(f, "({})", self.per)
    }
}

impl fmt::Debug for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Seq {
    type Err = ParseError;

    /// Syntax `bits(bits)`, e.g. `10(01)`; a constant tail is `(0)` or `(1)`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let open = s
            .find('(')
            .ok_or_else(|| ParseError::new(s.len(), "'(' starting the period", "end of input"))?;
        let close = s
            .rfind(')')
            .filter(|&c| c > open)
            .ok_or_else(|| ParseError::new(s.len(), "')' closing the period", "end of input"))?;
        if !s[close + 1..].trim().is_empty() {
            return Err(ParseError::at(s, close + 1, "end of input"));
        }
        let head = &s[..open];
        let lead = head.len() - head.trim_start().len();
        let pre = parse_bits(s, lead, head.trim())?;
        let per = parse_bits(s, open + 1, &s[open + 1..close])?;
        if per.is_empty() {
            return Err(ParseError::at(s, close, "at least one period digit"));
        }
        Ok(Seq::canonical(Word(pre), Word(per)))
    }
}

/// A finite set of words such that every infinite sequence has exactly one
/// prefix in it; equivalently the leaves of a finite rooted binary tree.
/// Members are stored in increasing (left to right) order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PrefixSet {
    members: Vec<Word>,
}

/// True when `words` (in any order, without duplicates) is a prefix set.
pub fn is_prefix_set(words: &[Word]) -> bool {
    fn check(words: &[&Word], depth: usize) -> bool {
        if words.is_empty() {
            return false;
        }
        if words.len() == 1 && words[0].len() == depth {
            return true;
        }
        if words.iter().any(|w| w.len() <= depth) {
            return false;
        }
        let (zeros, ones): (Vec<&Word>, Vec<&Word>) = words.iter().partition(|w| !w.bit(depth));
        check(&zeros, depth + 1) && check(&ones, depth + 1)
    }
    let refs: Vec<&Word> = words.iter().collect();
    check(&refs, 0)
}

impl PrefixSet {
    pub fn new(mut members: Vec<Word>) -> Result<PrefixSet> {
        members.sort();
        members.dedup();
        if !is_prefix_set(&members) {
            let shown: Vec<String> = members.iter().map(|w| w.to_string()).collect();
            return Err(Error::NotPrefixSet(format!("{{{}}}", shown.join(", "))));
        }
        Ok(PrefixSet { members })
    }

    /// The one-element set `{e}`.
    pub fn trivial() -> PrefixSet {
        PrefixSet {
            members: vec![Word::empty()],
        }
    }

    pub fn members(&self) -> &[Word] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Every member of `other` has an extension in `self`.
    pub fn dominates(&self, other: &PrefixSet) -> bool {
        other
            .members
            .iter()
            .all(|s| self.members.iter().any(|t| s.is_prefix_of(t)))
    }

    /// The index of the member that prefixes `seq`, and the remainder.
    pub fn locate(&self, seq: &Seq) -> (usize, Seq) {
        self.members
            .iter()
            .enumerate()
            .find_map(|(i, m)| seq.strip_prefix(m).map(|rest| (i, rest)))
            .expect("a prefix set covers every sequence")
    }

    /// The internal vertices of the associated tree.
    pub fn internal_vertices(&self) -> Vec<Word> {
        let mut v: Vec<Word> = self
            .members
            .iter()
            .flat_map(|m| (0..m.len()).map(move |i| m.restrict(i)))
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

impl fmt::Display for PrefixSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self.members.iter().map(|w| w.to_string()).collect();
        write!(f, "{{{}}}", shown.join(", "))
    }
}

/// The dominance-minimal prefix set in which every word of `words` has an
/// extension: the leaves of the tree whose internal vertices are exactly the
/// proper prefixes of the given words.
pub fn minimal_cover<'a>(words: impl IntoIterator<Item = &'a Word>) -> PrefixSet {
    let mut internal: Vec<Word> = words
        .into_iter()
        .flat_map(|w| (0..w.len()).map(move |i| w.restrict(i)))
        .collect();
    internal.sort();
    internal.dedup();
    if internal.is_empty() {
        return PrefixSet::trivial();
    }
    let mut leaves: Vec<Word> = internal
        .iter()
        .flat_map(|v| [v.child(false), v.child(true)])
        .filter(|c| internal.binary_search(c).is_err())
        .collect();
    leaves.sort();
    PrefixSet { members: leaves }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn sq(s: &str) -> Seq {
        s.parse().unwrap()
    }

    fn ps(ws: &[&str]) -> PrefixSet {
        PrefixSet::new(ws.iter().map(|s| w(s)).collect()).unwrap()
    }

    #[test]
    fn lex_compare_examples() {
        assert_eq!(w("01").lex_compare(&w("01")), LexComparison::Equal);
        assert_eq!(w("010").lex_compare(&w("01")), LexComparison::Less { nested: true });
        assert_eq!(w("00").lex_compare(&w("01")), LexComparison::Less { nested: false });
        assert_eq!(w("1").lex_compare(&w("0")), LexComparison::Greater { nested: false });
    }

    #[test]
    fn incompatibility() {
        assert!(w("0").is_incompatible(&w("1")));
        assert!(!w("0").is_incompatible(&w("01")));
        assert!(!w("e").is_incompatible(&w("1")));
    }

    #[test]
    fn canonical_sequences() {
        let s = sq("10(01)");
        assert_eq!(s.to_string(), "10(01)");
        assert_eq!(sq("0101(0101)"), sq("(01)"));
        assert_eq!(sq("00(0)").to_string(), "(0)");
        assert_eq!(sq("0(10)").to_string(), "(01)");
        assert_eq!(sq("1(10)").to_string(), "1(10)");
        assert_eq!(sq("011(1)").to_string(), "0(1)");
        assert!(Seq::new(w("1"), Word::empty()).is_err());
        assert!("10".parse::<Seq>().is_err());
        assert!("1(2)".parse::<Seq>().is_err());
    }

    #[test]
    fn tail_equivalence_examples() {
        assert!(Seq::constant(false).tail_equivalent(&Seq::constant(false)));
        assert!(sq("1(10)").tail_equivalent(&sq("(01)")));
        assert!(!Seq::constant(false).tail_equivalent(&Seq::constant(true)));
        assert!(!sq("(001)").tail_equivalent(&sq("(011)")));
    }

    #[test]
    fn dominance_examples() {
        assert!(PrefixSet::trivial().dominates(&PrefixSet::trivial()));
        assert!(ps(&["0", "10", "11"]).dominates(&ps(&["0", "1"])));
        assert!(!ps(&["0", "1"]).dominates(&ps(&["0", "10", "11"])));
    }

    #[test]
    fn minimal_cover_examples() {
        assert_eq!(minimal_cover(&[w("e")]), PrefixSet::trivial());
        assert_eq!(minimal_cover(&[w("00")]), ps(&["00", "01", "1"]));
        assert_eq!(minimal_cover(&[w("0"), w("1")]), ps(&["0", "1"]));
        assert_eq!(minimal_cover(&[]), PrefixSet::trivial());
    }

    #[test]
    fn prefix_set_validation() {
        assert!(PrefixSet::new(vec![w("0")]).is_err());
        assert!(PrefixSet::new(vec![w("0"), w("1"), w("10")]).is_err());
        assert!(PrefixSet::new(vec![]).is_err());
        let t = ps(&["11", "0", "10"]);
        assert_eq!(t.members(), &[w("0"), w("10"), w("11")]);
        assert_eq!(t.locate(&sq("10(1)")), (1, Seq::constant(true)));
    }

    #[test]
    fn drop_and_prepend() {
        let s = sq("1(011)");
        assert_eq!(s.drop_front(3), sq("(101)"));
        assert_eq!(s.drop_front(3).prepend(&w("101")), s);
        assert_eq!(s.strip_prefix(&w("11")), None);
    }
}
