//! The generators `x_s` and `y_s` acting on eventually periodic sequences,
//! and formal words over them.
//!
//! `x` is the prefix exchange `00 → 0`, `01 → 10`, `1 → 11`. `y` is the
//! two-state transducer
//!
//! ```text
//! y  : 00η → 0(η.y)    01η → 10(η.y⁻¹)   1η  → 11(η.y)
//! y⁻¹: 0η  → 00(η.y⁻¹) 10η → 01(η.y)     11η → 1(η.y⁻¹)
//! ```
//!
//! and `x_s`, `y_s` act as `x`, `y` on the part of a sequence after the
//! prefix `s`, fixing sequences that do not extend `s`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, ParseError, Result};
use crate::sequences::{Seq, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    X,
    Y,
}

/// `x_s` or `y_s`; the empty subscript gives the global `x` or `y`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub kind: Kind,
    pub sub: Word,
}

impl Generator {
    pub fn x(sub: Word) -> Generator {
        Generator { kind: Kind::X, sub }
    }

    pub fn y(sub: Word) -> Generator {
        Generator { kind: Kind::Y, sub }
    }

    pub fn is_x(&self) -> bool {
        self.kind == Kind::X
    }

    pub fn is_y(&self) -> bool {
        self.kind == Kind::Y
    }

    fn alias(&self) -> Option<&'static str> {
        let s = self.sub.to_string();
        match (self.kind, s.as_str()) {
            (Kind::X, "e") => Some("a"),
            (Kind::X, "1") => Some("b"),
            (Kind::Y, "10") => Some("c"),
            _ => None,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Kind::X => "x",
            Kind::Y => "y",
        };
        if self.sub.is_empty() {
            f.write_str(k)
        } else {
            write!(f, "{k}[{}]", self.sub)
        }
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A generator raised to a nonzero power.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Generator,
    pub exp: i64,
}

impl Letter {
    pub fn new(gen: Generator, exp: i64) -> Letter {
        assert!(exp != 0, "letters carry nonzero exponents");
        Letter { gen, exp }
    }

    pub fn x(sub: Word, exp: i64) -> Letter {
        Letter::new(Generator::x(sub), exp)
    }

    pub fn y(sub: Word, exp: i64) -> Letter {
        Letter::new(Generator::y(sub), exp)
    }

    pub fn inverse(&self) -> Letter {
        Letter { gen: self.gen.clone(), exp: -self.exp }
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, abc: bool) -> fmt::Result {
        match (abc, self.gen.alias()) {
            (true, Some(a)) => f.write_str(a)?,
            _ => write!(f, "{}", self.gen)?,
        }
        if self.exp != 1 {
            write!(f, "^{}", self.exp)?;
        }
        Ok(())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, false)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A formal word over the generators, read left to right.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SWord {
    pub letters: Vec<Letter>,
}

impl SWord {
    pub fn new(letters: Vec<Letter>) -> SWord {
        SWord { letters }
    }

    pub fn empty() -> SWord {
        SWord::default()
    }

    pub fn single(gen: Generator, exp: i64) -> SWord {
        SWord { letters: vec![Letter::new(gen, exp)] }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of the absolute values of the exponents.
    pub fn word_length(&self) -> u64 {
        self.letters.iter().map(|l| l.exp.unsigned_abs()).sum()
    }

    pub fn is_x_word(&self) -> bool {
        self.letters.iter().all(|l| l.gen.is_x())
    }

    pub fn push(&mut self, letter: Letter) {
        self.letters.push(letter);
    }

    pub fn concat(&self, other: &SWord) -> SWord {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        SWord { letters }
    }

    pub fn inverse(&self) -> SWord {
        SWord { letters: self.letters.iter().rev().map(Letter::inverse).collect() }
    }

    /// `self` repeated `n` times; negative `n` repeats the inverse.
    pub fn pow(&self, n: i64) -> SWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = SWord::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Merges adjacent letters with the same generator and drops the ones
    /// whose exponents cancel.
    pub fn canonical(&self) -> SWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            match out.last_mut() {
                Some(last) if last.gen == l.gen => {
                    last.exp += l.exp;
                    if last.exp == 0 {
                        out.pop();
                    }
                }
                _ => out.push(l.clone()),
            }
        }
        SWord { letters: out }
    }

    /// The word in the `a`, `b`, `c` aliases where they apply.
    pub fn to_abc_string(&self) -> String {
        struct Abc<'a>(&'a SWord);
        impl fmt::Display for Abc<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, true)
            }
        }
        Abc(self).to_string()
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, abc: bool) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("id");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            l.fmt_with(f, abc)?;
        }
        Ok(())
    }
}

impl fmt::Display for SWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, false)
    }
}

impl fmt::Debug for SWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for SWord {
    type Err = ParseError;

    /// Terms `x`, `y`, `x[bits]`, `y[bits]`, and the aliases `a = x`,
    /// `b = x[1]`, `c = y[10]`, each with an optional `^n`. `id` (or the
    /// empty string) is the empty word.
    fn from_str(input: &str) -> std::result::Result<Self, Self::Err> {
        let bytes = input.as_bytes();
        let mut pos = 0;
        let mut letters = Vec::new();
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        skip_ws(&mut pos);
        if input[pos..].trim_end() == "id" {
            return Ok(SWord::empty());
        }
        while pos < bytes.len() {
            let gen = match bytes[pos] {
                b'a' => Generator::x(Word::empty()),
                b'b' => Generator::x("1".parse().unwrap()),
                b'c' => Generator::y("10".parse().unwrap()),
                b'x' | b'y' => {
                    let kind = if bytes[pos] == b'x' { Kind::X } else { Kind::Y };
                    let mut sub = Word::empty();
                    if bytes.get(pos + 1) == Some(&b'[') {
                        let close = input[pos + 2..]
                            .find(']')
                            .map(|c| c + pos + 2)
                            .ok_or_else(|| ParseError::new(input.len(), "']'", "end of input"))?;
                        for (i, ch) in input[pos + 2..close].char_indices() {
                            match ch {
                                '0' => sub.push(false),
                                '1' => sub.push(true),
                                'e' if close == pos + 3 => {}
                                _ => return Err(ParseError::at(input, pos + 2 + i, "binary digit or ']'")),
                            }
                        }
                        pos = close;
                    }
                    Generator { kind, sub }
                }
                _ => return Err(ParseError::at(input, pos, "one of x, y, a, b, c")),
            };
            pos += 1;
            let mut exp = 1i64;
            if bytes.get(pos) == Some(&b'^') {
                pos += 1;
                let start = pos;
                if bytes.get(pos) == Some(&b'-') {
                    pos += 1;
                }
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                exp = input[start..pos]
                    .parse()
                    .map_err(|_| ParseError::at(input, start, "integer exponent"))?;
                if exp == 0 {
                    return Err(ParseError::new(start, "nonzero exponent", "0"));
                }
            }
            letters.push(Letter::new(gen, exp));
            skip_ws(&mut pos);
        }
        Ok(SWord { letters })
    }
}

/// `ξ.x` for `sign = 1`, `ξ.x⁻¹` for `sign = -1`.
pub fn apply_x(seq: &Seq, sign: i64) -> Seq {
    let (d0, d1) = (seq.digit(0), seq.digit(1));
    let (consumed, emitted) = match (sign > 0, d0, d1) {
        (true, false, false) => (2, "0"),
        (true, false, true) => (2, "10"),
        (true, true, _) => (1, "11"),
        (false, false, _) => (1, "00"),
        (false, true, false) => (2, "01"),
        (false, true, true) => (2, "1"),
    };
    seq.drop_front(consumed).prepend(&Word::empty().extend_str(emitted))
}

/// `ξ.y` for `sign = 1`, `ξ.y⁻¹` for `sign = -1`, computed by running the
/// transducer until its (state, position in period) pair repeats.
pub fn apply_y(seq: &Seq, sign: i64) -> Seq {
    let pre = seq.preperiod().len();
    let per = seq.period().len();
    let mut inverse = sign < 0;
    let mut pos = 0usize;
    let mut out = Word::empty();
    // Output length when (state, position in period) was first seen.
    let mut seen: Vec<Option<usize>> = vec![None; 2 * per];
    loop {
        if pos >= pre {
            let key = 2 * ((pos - pre) % per) + inverse as usize;
            if let Some(start) = seen[key] {
                let prefix = out.restrict(start);
                let period = Word::from_bits(out.bits()[start..].iter().copied());
                return Seq::new(prefix, period).expect("each transducer step emits a digit");
            }
            seen[key] = Some(out.len());
        }
        let d0 = seq.digit(pos);
        let (consumed, emitted, flip) = match (inverse, d0) {
            (false, true) => (1, "11", false),
            (false, false) => {
                if seq.digit(pos + 1) {
                    (2, "10", true)
                } else {
                    (2, "0", false)
                }
            }
            (true, false) => (1, "00", false),
            (true, true) => {
                if seq.digit(pos + 1) {
                    (2, "1", false)
                } else {
                    (2, "01", true)
                }
            }
        };
        emitted.bytes().for_each(|b| out.push(b == b'1'));
        pos += consumed;
        inverse ^= flip;
    }
}

/// `ξ.g^n`.
pub fn apply_generator(gen: &Generator, n: i64, seq: &Seq) -> Seq {
    let Some(mut rest) = seq.strip_prefix(&gen.sub) else {
        return seq.clone();
    };
    let sign = n.signum();
    for _ in 0..n.unsigned_abs() {
        rest = match gen.kind {
            Kind::X => apply_x(&rest, sign),
            Kind::Y => apply_y(&rest, sign),
        };
    }
    rest.prepend(&gen.sub)
}

/// `ξ.w`, applying the letters of `w` left to right.
pub fn evaluate(word: &SWord, seq: &Seq) -> Seq {
    word.letters
        .iter()
        .fold(seq.clone(), |acc, l| apply_generator(&l.gen, l.exp, &acc))
}

/// `t.x_s^sign` on a finite word: defined when `t` is incompatible with `s`
/// (and then fixed), or when `t` extends `s` by enough digits to decide which
/// case of the prefix exchange applies.
pub fn partial_apply_x(t: &Word, s: &Word, sign: i64) -> Option<Word> {
    let Some(rest) = t.strip_prefix(s) else {
        return if s.is_prefix_of(t) || t.is_prefix_of(s) { None } else { Some(t.clone()) };
    };
    let bits = rest.bits();
    let (consumed, emitted) = match (sign > 0, bits) {
        (true, [false, false, ..]) => (2, "0"),
        (true, [false, true, ..]) => (2, "10"),
        (true, [true, ..]) => (1, "11"),
        (false, [false, ..]) => (1, "00"),
        (false, [true, false, ..]) => (2, "01"),
        (false, [true, true, ..]) => (2, "1"),
        _ => return None,
    };
    Some(
        s.extend_str(emitted)
            .concat(&Word::from_bits(bits[consumed..].iter().copied())),
    )
}

/// The partial action of `x_s^sign` on finite words. Only X-generators act
/// on finite words.
pub fn partial_apply_finite(t: &Word, gen: &Generator, sign: i64) -> Result<Option<Word>> {
    if gen.is_y() {
        return Err(Error::InvalidArgument(format!(
            "{gen} has no partial action on finite words"
        )));
    }
    Ok(partial_apply_x(t, &gen.sub, sign))
}

/// The partial action of an X-word on a finite word, letter by letter.
pub fn partial_apply_xword(t: &Word, word: &SWord) -> Option<Word> {
    let mut cur = t.clone();
    for l in &word.letters {
        debug_assert!(l.gen.is_x());
        for _ in 0..l.exp.unsigned_abs() {
            cur = partial_apply_x(&cur, &l.gen.sub, l.exp.signum())?;
        }
    }
    Some(cur)
}

/// A random eventually periodic sequence with preperiod shorter than
/// `max_pre` and period of length `1..=max_per`.
pub fn random_seq<R: Rng + ?Sized>(rng: &mut R, max_pre: usize, max_per: usize) -> Seq {
    let pre_len = rng.gen_range(0..max_pre.max(1));
    let per_len = rng.gen_range(1..=max_per.max(1));
    let pre = Word::from_bits((0..pre_len).map(|_| rng.gen::<bool>()));
    let per = Word::from_bits((0..per_len).map(|_| rng.gen::<bool>()));
    Seq::new(pre, per).expect("nonempty period")
}

/// A random word `w b b b ...`.
pub fn random_eventually_constant<R: Rng + ?Sized>(rng: &mut R, max_pre: usize) -> Seq {
    let pre_len = rng.gen_range(0..=max_pre);
    let pre = Word::from_bits((0..pre_len).map(|_| rng.gen::<bool>()));
    Seq::eventually_constant(pre, rng.gen())
}

/// A random word of `len` letters over `x_s`, `y_s` with `|s| <= max_sub`
/// and exponents in `{-2, -1, 1, 2}` (mostly `±1`).
pub fn random_sword<R: Rng + ?Sized>(rng: &mut R, len: usize, max_sub: usize) -> SWord {
    let letters = (0..len)
        .map(|_| {
            let sub_len = rng.gen_range(0..=max_sub);
            let sub = Word::from_bits((0..sub_len).map(|_| rng.gen::<bool>()));
            let kind = if rng.gen() { Kind::X } else { Kind::Y };
            let mut exp = if rng.gen() { 1 } else { -1 };
            if rng.gen_ratio(1, 6) {
                exp *= 2;
            }
            Letter::new(Generator { kind, sub }, exp)
        })
        .collect();
    SWord::new(letters)
}

/// A random word over `x_s` alone.
pub fn random_xword<R: Rng + ?Sized>(rng: &mut R, len: usize, max_sub: usize) -> SWord {
    let mut w = random_sword(rng, len, max_sub);
    for l in &mut w.letters {
        l.gen.kind = Kind::X;
    }
    w
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

    fn sw(s: &str) -> SWord {
        s.parse().unwrap()
    }

    #[test]
    fn x_examples() {
        assert_eq!(apply_x(&sq("00(1)"), 1), sq("0(1)"));
        assert_eq!(apply_x(&sq("(0)"), 1), sq("(0)"));
        assert_eq!(apply_x(&sq("01(1)"), 1), sq("10(1)"));
        assert_eq!(apply_x(&sq("(1)"), 1), sq("(1)"));
        assert_eq!(apply_x(&sq("10(1)"), -1), sq("01(1)"));
    }

    #[test]
    fn y_examples() {
        assert_eq!(apply_y(&sq("01(0)"), 1), sq("10(0)"));
        assert_eq!(apply_y(&sq("(0)"), 1), sq("(0)"));
        assert_eq!(apply_y(&sq("(1)"), 1), sq("(1)"));
        assert_eq!(apply_y(&sq("(001)"), 1), sq("(011)"));
        for t in ["(0001)", "1(10)", "0110(011)", "(1)", "10(0)"] {
            assert_eq!(apply_y(&apply_y(&sq(t), -1), 1), sq(t));
            assert_eq!(apply_y(&apply_y(&sq(t), 1), -1), sq(t));
        }
    }

    #[test]
    fn localized_generators() {
        assert_eq!(apply_generator(&Generator::y(w("10")), 1, &sq("11(0)")), sq("11(0)"));
        assert_eq!(apply_generator(&Generator::y(w("10")), 1, &sq("1001(0)")), sq("1010(0)"));
        assert_eq!(apply_generator(&Generator::x(w("1")), 1, &sq("100(1)")), sq("10(1)"));
        assert_eq!(evaluate(&SWord::empty(), &sq("1(01)")), sq("1(01)"));
    }

    #[test]
    fn partial_action_examples() {
        let x = Generator::x(Word::empty());
        assert_eq!(partial_apply_finite(&w("00"), &x, 1).unwrap(), Some(w("0")));
        assert_eq!(partial_apply_finite(&w("0"), &x, 1).unwrap(), None);
        assert_eq!(partial_apply_finite(&w("1011"), &Generator::x(w("10")), 1).unwrap(), Some(w("10111")));
        assert_eq!(partial_apply_finite(&w("10"), &x, 1).unwrap(), Some(w("110")));
        assert_eq!(partial_apply_finite(&w("10"), &x, -1).unwrap(), Some(w("01")));
        assert_eq!(partial_apply_finite(&w("1"), &Generator::x(w("0")), 1).unwrap(), Some(w("1")));
        assert_eq!(partial_apply_finite(&w("0"), &Generator::x(w("01")), 1).unwrap(), None);
        assert!(partial_apply_finite(&w("0"), &Generator::y(w("0")), 1).is_err());
    }

    #[test]
    fn parse_and_display() {
        let word = sw("b c a^-1 c^-1 a");
        assert_eq!(word.to_string(), "x[1] y[10] x^-1 y[10]^-1 x");
        assert_eq!(word.to_abc_string(), "b c a^-1 c^-1 a");
        assert_eq!(sw("x[01]^3y"), SWord::new(vec![Letter::x(w("01"), 3), Letter::y(Word::empty(), 1)]));
        assert_eq!(sw("id"), SWord::empty());
        assert_eq!(sw(""), SWord::empty());
        assert_eq!(sw("x[e]"), sw("x"));
        let err = "a b^ d".parse::<SWord>().unwrap_err();
        assert_eq!(err.position, 4);
        let err = "a q".parse::<SWord>().unwrap_err();
        assert_eq!(err.position, 2);
        assert!(err.expected.contains("x, y"));
        assert!("x[012]".parse::<SWord>().is_err());
        assert!("x^0".parse::<SWord>().is_err());
    }

    #[test]
    fn canonical_merges() {
        assert_eq!(sw("a a^-1 b b c").canonical(), sw("b^2 c"));
        assert_eq!(sw("a b b^-1 a^-1").canonical(), SWord::empty());
        assert_eq!(sw("a^2 b").word_length(), 3);
    }
}
