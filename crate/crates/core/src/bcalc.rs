//! Words over `{0, 1, y, y⁻¹}` and the advancement rules
//!
//! ```text
//! y00 → 0y     y01 → 10y⁻¹    y1  → 11y
//! y⁻¹0 → 00y⁻¹  y⁻¹10 → 01y    y⁻¹11 → 1y⁻¹
//! ```
//!
//! which push `y`-symbols to the right the way the transducer consumes its
//! input. A B-word followed by an infinite binary sequence names the
//! sequence obtained by letting each `y`-symbol act on everything after it.

use std::fmt;
use std::str::FromStr;

use crate::action::{apply_y, evaluate, partial_apply_xword, SWord};
use crate::error::{Error, ParseError, Result};
use crate::rewrite::{exposure_witness, StandardForm};
use crate::sequences::{Seq, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BSym {
    Zero,
    One,
    Y,
    YInv,
}

impl BSym {
    pub fn is_y(self) -> bool {
        matches!(self, BSym::Y | BSym::YInv)
    }

    fn digit(b: bool) -> BSym {
        if b {
            BSym::One
        } else {
            BSym::Zero
        }
    }

    fn opposite(self) -> BSym {
        match self {
            BSym::Zero => BSym::One,
            BSym::One => BSym::Zero,
            BSym::Y => BSym::YInv,
            BSym::YInv => BSym::Y,
        }
    }

    fn as_char(self) -> char {
        match self {
            BSym::Zero => '0',
            BSym::One => '1',
            BSym::Y => 'y',
            BSym::YInv => 'Y',
        }
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BWord {
    pub syms: Vec<BSym>,
}

impl FromStr for BWord {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<BWord, ParseError> {
        let mut syms = Vec::with_capacity(s.len());
        for (i, c) in s.char_indices() {
            syms.push(match c {
                '0' => BSym::Zero,
                '1' => BSym::One,
                'y' => BSym::Y,
                'Y' => BSym::YInv,
                _ => return Err(ParseError::at(s, i, "one of 0, 1, y, Y")),
            });
        }
        Ok(BWord { syms })
    }
}

impl fmt::Display for BWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syms.is_empty() {
            return f.write_str("e");
        }
        self.syms.iter().try_for_each(|s| write!(f, "{}", s.as_char()))
    }
}

impl fmt::Debug for BWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The rule that fires for a `y`-symbol `e` followed by the digits `next`:
/// how many digits it consumes and which digits it leaves behind, and whether
/// it turns into its inverse. `None` if no rule applies.
fn rule(e: BSym, next: [Option<BSym>; 2]) -> Option<(usize, &'static [BSym], bool)> {
    use BSym::*;
    match (e, next) {
        (Y, [Some(Zero), Some(Zero)]) => Some((2, &[Zero], false)),
        (Y, [Some(Zero), Some(One)]) => Some((2, &[One, Zero], true)),
        (Y, [Some(One), _]) => Some((1, &[One, One], false)),
        (YInv, [Some(Zero), _]) => Some((1, &[Zero, Zero], false)),
        (YInv, [Some(One), Some(Zero)]) => Some((2, &[Zero, One], true)),
        (YInv, [Some(One), Some(One)]) => Some((2, &[One], false)),
        _ => None,
    }
}

impl BWord {
    pub fn empty() -> BWord {
        BWord::default()
    }

    pub fn from_digits(w: &Word) -> BWord {
        BWord { syms: w.bits().iter().map(|&b| BSym::digit(b)).collect() }
    }

    /// `y^n` for `n >= 0`, `(y⁻¹)^-n` otherwise.
    pub fn y_power(n: i64) -> BWord {
        let s = if n < 0 { BSym::YInv } else { BSym::Y };
        BWord { syms: vec![s; n.unsigned_abs() as usize] }
    }

    pub fn len(&self) -> usize {
        self.syms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }

    pub fn concat(&self, other: &BWord) -> BWord {
        let mut syms = self.syms.clone();
        syms.extend_from_slice(&other.syms);
        BWord { syms }
    }

    pub fn y_count(&self) -> usize {
        self.syms.iter().filter(|s| s.is_y()).count()
    }

    pub fn y_positions(&self) -> Vec<usize> {
        (0..self.syms.len()).filter(|&i| self.syms[i].is_y()).collect()
    }

    /// The digits, if the word has no `y`-symbols.
    pub fn as_digits(&self) -> Option<Word> {
        self.syms
            .iter()
            .map(|s| match s {
                BSym::Zero => Some(false),
                BSym::One => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<bool>>>()
            .map(Word::from_bits)
    }

    /// Swaps `y` with `y⁻¹` and `0` with `1`.
    pub fn involution(&self) -> BWord {
        BWord { syms: self.syms.iter().map(|s| s.opposite()).collect() }
    }

    fn next_two(&self, i: usize) -> [Option<BSym>; 2] {
        let get = |k: usize| self.syms.get(k).copied().filter(|s| !s.is_y());
        let first = get(i + 1);
        [first, first.and(get(i + 2))]
    }

    pub fn can_advance(&self, i: usize) -> bool {
        self.syms.get(i).is_some_and(|s| s.is_y()) && rule(self.syms[i], self.next_two(i)).is_some()
    }

    /// Advances the occurrence at `i` once, returning the new word and the new
    /// position of the occurrence.
    pub fn advance_tracked(&self, i: usize) -> Result<(BWord, usize)> {
        let e = *self
            .syms
            .get(i)
            .filter(|s| s.is_y())
            .ok_or_else(|| Error::Advance(format!("symbol {i} of {self} is not y or Y")))?;
        let (consumed, emitted, flip) = rule(e, self.next_two(i))
            .ok_or_else(|| Error::Advance(format!("occurrence {i} of {self} cannot advance")))?;
        let mut syms = self.syms[..i].to_vec();
        syms.extend_from_slice(emitted);
        let pos = syms.len();
        syms.push(if flip { e.opposite() } else { e });
        syms.extend_from_slice(&self.syms[i + 1 + consumed..]);
        Ok((BWord { syms }, pos))
    }

    pub fn advance(&self, i: usize) -> Result<BWord> {
        Ok(self.advance_tracked(i)?.0)
    }

    /// Whether advancing the occurrence at `i` as far as it goes ever puts it
    /// next to an occurrence of the opposite sign.
    pub fn has_potential_cancellation(&self, i: usize) -> bool {
        let Some(&e) = self.syms.get(i).filter(|s| s.is_y()) else {
            return false;
        };
        if i > 0 && self.syms[i - 1] == e.opposite() {
            return true;
        }
        let (mut w, mut p) = (self.clone(), i);
        loop {
            let e = w.syms[p];
            if w.syms.get(p + 1) == Some(&e.opposite()) {
                return true;
            }
            match w.advance_tracked(p) {
                Ok((nw, np)) => (w, p) = (nw, np),
                Err(_) => return false,
            }
        }
    }

    pub fn has_any_potential_cancellation(&self) -> bool {
        self.y_positions().into_iter().any(|i| self.has_potential_cancellation(i))
    }

    /// The word in which no occurrence can advance. Every maximal sequence of
    /// advances ends here.
    pub fn normal_form(&self) -> BWord {
        // Right to left over a stack whose top is the leftmost processed symbol.
        let mut stack: Vec<BSym> = Vec::with_capacity(self.syms.len());
        let mut emitted: Vec<BSym> = Vec::new();
        for &s in self.syms.iter().rev() {
            if !s.is_y() {
                stack.push(s);
                continue;
            }
            let mut e = s;
            emitted.clear();
            loop {
                let top = |k: usize| {
                    stack
                        .len()
                        .checked_sub(k + 1)
                        .map(|j| stack[j])
                        .filter(|x| !x.is_y())
                };
                let first = top(0);
                let next = [first, first.and(top(1))];
                let Some((consumed, out, flip)) = rule(e, next) else { break };
                stack.truncate(stack.len() - consumed);
                emitted.extend_from_slice(out);
                if flip {
                    e = e.opposite();
                }
            }
            stack.push(e);
            stack.extend(emitted.iter().rev());
        }
        stack.reverse();
        BWord { syms: stack }
    }

    /// Advances occurrences one step at a time, rightmost movable occurrence
    /// first, checking after every step that no potential cancellation has
    /// appeared.
    pub fn advance_all_no_cancel(&self) -> Result<BWord> {
        if self.has_any_potential_cancellation() {
            return Err(Error::Advance(format!("{self} has a potential cancellation")));
        }
        let mut w = self.clone();
        while let Some(i) = w.y_positions().into_iter().rev().find(|&i| w.can_advance(i)) {
            w = w.advance(i)?;
            if w.has_any_potential_cancellation() {
                return Err(Error::Advance(format!("advancing produced a potential cancellation in {w}")));
            }
        }
        Ok(w)
    }

    /// For a word without potential cancellations and with `n >= 1`
    /// `y`-symbols, digits `u` and `s` such that `self·u` advances to `s·y^n`.
    pub fn advance_to_power(&self) -> Result<(Word, Word, usize)> {
        let n = self.y_count();
        if n == 0 {
            return Err(Error::Advance(format!("{self} has no y-symbols")));
        }
        if self.has_any_potential_cancellation() {
            return Err(Error::Advance(format!("{self} has a potential cancellation")));
        }
        let u = self.power_suffix()?;
        let nf = self.concat(&BWord::from_digits(&u)).normal_form();
        let split = nf.len() - n;
        let s = BWord { syms: nf.syms[..split].to_vec() }.as_digits();
        match s {
            Some(s) if nf.syms[split..].iter().all(|&x| x == BSym::Y) => Ok((u, s, n)),
            _ => Err(Error::Advance(format!("{self} followed by {u} advances to {nf}, not to s y^{n}"))),
        }
    }

    fn power_suffix(&self) -> Result<Word> {
        let first = self.syms.iter().position(|s| s.is_y()).expect("at least one y-symbol");
        let rest = BWord { syms: self.syms[first + 1..].to_vec() };
        let m = rest.y_count();
        let shape_err = |nf: &BWord| Error::Advance(format!("unexpected shape {nf} while advancing {self}"));
        if m == 0 {
            let nf = self.normal_form();
            let tail: Vec<BSym> = nf.syms.iter().rev().take(2).rev().copied().collect();
            use BSym::*;
            return Ok(match tail.as_slice() {
                [.., Y] => Word::empty(),
                [.., YInv] => "10".parse().unwrap(),
                [Y, Zero] | [YInv, One] => "0".parse().unwrap(),
                _ => return Err(shape_err(&nf)),
            });
        }
        let u1 = rest.power_suffix()?;
        let nf = self.concat(&BWord::from_digits(&u1)).normal_form();
        let k = nf.len() - m;
        if nf.syms[k..].iter().any(|&x| x != BSym::Y) {
            return Err(shape_err(&nf));
        }
        use BSym::*;
        let extra = match (nf.syms.get(k.wrapping_sub(2)).copied(), nf.syms.get(k.wrapping_sub(1)).copied()) {
            (_, Some(Y)) => 0,
            (Some(Y), Some(Zero)) | (Some(YInv), Some(One)) => 1usize << m,
            _ => return Err(shape_err(&nf)),
        };
        Ok(u1.concat(&Word::constant(false, extra)))
    }

    /// The infinite sequence named by `self` followed by `tail`.
    pub fn limit(&self, tail: &Seq) -> Seq {
        self.syms.iter().rev().fold(tail.clone(), |acc, s| match s {
            BSym::Zero => acc.prepend(&Word::constant(false, 1)),
            BSym::One => acc.prepend(&Word::constant(true, 1)),
            BSym::Y => apply_y(&acc, 1),
            BSym::YInv => apply_y(&acc, -1),
        })
    }
}

/// Evidence that a word is not in F: it maps `u·ξ` to `v·(ξ.y^n)` for every
/// sequence `ξ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub u: Word,
    pub v: Word,
    pub n: usize,
}

impl Witness {
    /// The defining equation at `xi`.
    pub fn holds_at(&self, word: &SWord, xi: &Seq) -> bool {
        let mut expected = xi.clone();
        for _ in 0..self.n {
            expected = apply_y(&expected, 1);
        }
        evaluate(word, &xi.prepend(&self.u)) == expected.prepend(&self.v)
    }

    /// `u·(0^{2^n} 1)^∞`.
    pub fn discriminating_input(&self) -> Seq {
        let period = Word::constant(false, 1 << self.n).concat(&Word::constant(true, 1));
        Seq::new(Word::empty(), period).unwrap().prepend(&self.u)
    }

    /// `v·(0 1^{2^n})^∞`, the image of [`Witness::discriminating_input`].
    pub fn discriminating_output(&self) -> Seq {
        let period = Word::constant(false, 1).concat(&Word::constant(true, 1 << self.n));
        Seq::new(Word::empty(), period).unwrap().prepend(&self.v)
    }

    /// Checks the image of the discriminating input and that it is not tail
    /// equivalent to the input.
    pub fn discriminates(&self, word: &SWord) -> bool {
        let input = self.discriminating_input();
        let output = evaluate(word, &input);
        output == self.discriminating_output() && !output.tail_equivalent(&input)
    }
}

/// The B-word of the Y-part of `form` along `path`: `y^e` is inserted after
/// each prefix of `path` that carries `y^e`.
fn path_bword(form: &StandardForm, path: &Word) -> BWord {
    let mut syms = Vec::new();
    for i in 0..=path.len() {
        if let Some(e) = form.exponent(&path.restrict(i)) {
            syms.extend(BWord::y_power(e).syms);
        }
        if i < path.len() {
            syms.push(BSym::digit(path.bit(i)));
        }
    }
    BWord { syms }
}

/// For a sufficiently expanded standard form with nonempty Y-part, a
/// witness that it does not evaluate to an element of F. With `pure_y` set,
/// forms with a nonempty X-part are refused.
pub fn non_f_witness(form: &StandardForm, pure_y: bool) -> Result<Witness> {
    let Some(last) = form.y_part().keys().next_back().cloned() else {
        return Err(Error::InvalidArgument(format!("{form} is an X-word")));
    };
    if pure_y && !form.x_part().is_empty() {
        return Err(Error::InvalidArgument(format!("{form} has a nonempty X-part")));
    }
    let mut path = last;
    let path = loop {
        if let Some(u) = exposure_witness(&path, form) {
            break u;
        }
        let e = form.exponent(&path).expect("path stays on y-subscripts");
        path = path.child(e < 0);
        if form.exponent(&path).is_none() {
            return Err(Error::InvalidArgument(format!("{form} is not sufficiently expanded")));
        }
    };
    let lambda = path_bword(form, &path);
    let (suffix, v, n) = lambda.advance_to_power()?;
    let u = path.concat(&suffix);
    if form.x_part().is_empty() {
        return Ok(Witness { u, v, n });
    }
    // Ξ·Y: pull u back through Ξ, padding with zeros until that is defined.
    let xi_inv = form.x_part().inverse();
    let mut k = 0;
    while partial_apply_xword(&u.concat(&Word::constant(false, k)), &xi_inv).is_none() {
        k += 1;
    }
    let (s2, s3, _) = BWord::y_power(n as i64)
        .concat(&BWord::from_digits(&Word::constant(false, k)))
        .advance_to_power()?;
    let padded = u.concat(&Word::constant(false, k)).concat(&s2);
    let pulled = partial_apply_xword(&padded, &xi_inv).expect("extension of a defined word");
    Ok(Witness { u: pulled, v: v.concat(&s3), n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::random_seq;
    use crate::rewrite::{sufficiently_expand, to_standard_form};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn b(s: &str) -> BWord {
        s.parse().unwrap()
    }

    #[test]
    fn advance_examples() {
        assert_eq!(b("y00").advance(0).unwrap(), b("0y"));
        assert_eq!(b("y01").advance(0).unwrap(), b("10Y"));
        assert_eq!(b("y1").advance(0).unwrap(), b("11y"));
        assert_eq!(b("Y0").advance(0).unwrap(), b("00Y"));
        assert_eq!(b("Y10").advance(0).unwrap(), b("01y"));
        assert_eq!(b("Y11").advance(0).unwrap(), b("1Y"));
        assert_eq!(b("1y1y").advance(1).unwrap(), b("111yy"));
        assert!(b("y0").advance(0).is_err());
        assert!(b("y0y").advance(0).is_err());
        assert!(b("0y").advance(0).is_err());
        assert!(b("Y1").advance(0).is_err());
    }

    #[test]
    fn potential_cancellation_examples() {
        assert!(b("yY").has_potential_cancellation(0));
        assert!(b("yY").has_potential_cancellation(1));
        assert!(!b("y0y").has_potential_cancellation(0));
        assert!(b("y01y").has_potential_cancellation(0));
        assert!(!b("y00y").has_potential_cancellation(0));
    }

    #[test]
    fn normal_form_matches_stepwise() {
        for s in ["y0y1", "yy01", "y0Y10", "Y1y00", "y1Y0y", "10y0y011"] {
            let w = b(s);
            if !w.has_any_potential_cancellation() {
                assert_eq!(w.advance_all_no_cancel().unwrap(), w.normal_form(), "{s}");
            }
        }
        assert_eq!(b("y0y1").advance(2).unwrap(), b("y011y"));
        assert_eq!(b("y0y1").normal_form(), b("10Y1y"));
    }

    #[test]
    fn powers() {
        let (u, s, n) = b("y").advance_to_power().unwrap();
        assert_eq!((u.to_string(), s.to_string(), n), ("e".into(), "e".into(), 1));
        let (u, _, _) = b("y0").advance_to_power().unwrap();
        assert_eq!(u.to_string(), "0");
        let (u, _, _) = b("Y").advance_to_power().unwrap();
        assert_eq!(u.to_string(), "10");
        let (u, s, n) = b("y0y").advance_to_power().unwrap();
        assert_eq!((u.to_string(), s.to_string(), n), ("00".into(), "0".into(), 2));
        for n in 1..=6usize {
            let w = BWord::y_power(n as i64).concat(&BWord::from_digits(&Word::constant(false, 1 << n)));
            let mut expect = b("0");
            expect.syms.extend(BWord::y_power(n as i64).syms);
            assert_eq!(w.normal_form(), expect);
        }
        assert!(b("yY").advance_to_power().is_err());
        assert!(b("01").advance_to_power().is_err());
    }

    #[test]
    fn limits_follow_advances() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for s in ["y00", "y01", "Y10", "y0y1", "1Yy0"] {
            let w = b(s);
            for _ in 0..20 {
                let xi = random_seq(&mut rng, 6, 4);
                assert_eq!(w.limit(&xi), w.normal_form().limit(&xi));
            }
        }
    }

    #[test]
    fn involution_commutes_with_advance() {
        let w = b("y01y1");
        assert_eq!(w.advance(0).unwrap().involution(), w.involution().advance(0).unwrap());
        assert_eq!(w.has_potential_cancellation(0), w.involution().has_potential_cancellation(0));
    }

    #[test]
    fn witnesses() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for word in ["y", "c", "y[0]^-1 y[1]", "x y[10]^2", "a c a^-1 b^-1 y[01]"] {
            let sw: SWord = word.parse().unwrap();
            let form = sufficiently_expand(&to_standard_form(&sw, 0).unwrap()).unwrap();
            let wit = non_f_witness(&form, false).unwrap();
            assert!(wit.n >= 1);
            for _ in 0..50 {
                let xi = random_seq(&mut rng, 6, 4);
                assert!(wit.holds_at(&sw, &xi), "{word}: {wit:?} at {xi}");
            }
            assert!(wit.discriminates(&sw));
        }
        let x_only = to_standard_form(&"x".parse().unwrap(), 0).unwrap();
        assert!(non_f_witness(&x_only, false).is_err());
        let mixed = to_standard_form(&"x y[1]".parse().unwrap(), 0).unwrap();
        assert!(non_f_witness(&mixed, true).is_err());
    }
}
