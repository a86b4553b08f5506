//! Standard forms and the rewriting that produces them.
//!
//! A standard form is an X-word followed by a Y-word in which no `y_t` is
//! followed by a `y_s` with `t ⊆ s`. Since `y`'s with incompatible subscripts
//! commute, the Y-word is determined by the map from subscripts to exponents,
//! and laying that map out in increasing [`Word`] order (extensions first)
//! gives one valid arrangement.
//!
//! The reductions here never build the full uniform-depth expansions. A
//! `y_t^j` is only expanded when it blocks something: an `x_s` that needs to
//! move to its left, a `y_s` that needs to join its slot, or the sufficient
//! expansion condition.

pub mod derive;
pub mod presentation;

use std::collections::BTreeMap;
use std::fmt;

use crate::action::{evaluate, partial_apply_x, Kind, Letter, SWord};
use crate::error::{Error, Result};
use crate::sequences::{minimal_cover, Seq, Word};

pub use derive::{derive_step, Rule};
pub use presentation::{
    conjugating_element, expand_to_finite_generators, f_word, nine_relations, relation_instances,
    Alphabet, RelationForm,
};

/// Unit expansions allowed for a single reduction before giving up.
pub const DEFAULT_BUDGET: usize = 500_000;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct StandardForm {
    x_part: SWord,
    y_part: BTreeMap<Word, i64>,
}

impl StandardForm {
    pub fn identity() -> StandardForm {
        StandardForm::default()
    }

    /// Builds a form from an X-word and `(subscript, exponent)` pairs.
    pub fn new(x_part: SWord, y_part: impl IntoIterator<Item = (Word, i64)>) -> Result<StandardForm> {
        if !x_part.is_x_word() {
            return Err(Error::InvalidArgument(format!("{x_part} is not an X-word")));
        }
        let mut map = BTreeMap::new();
        for (s, e) in y_part {
            if e == 0 {
                return Err(Error::InvalidArgument(format!("zero exponent at y[{s}]")));
            }
            if map.insert(s.clone(), e).is_some() {
                return Err(Error::InvalidArgument(format!("y[{s}] occurs twice")));
            }
        }
        Ok(StandardForm { x_part: x_part.canonical(), y_part: map })
    }

    /// Reads a word that is already in standard form as written.
    pub fn from_sword(w: &SWord) -> Result<StandardForm> {
        let split = w.letters.iter().position(|l| l.gen.is_y()).unwrap_or(w.len());
        let (xs, ys) = w.letters.split_at(split);
        if let Some(l) = ys.iter().find(|l| l.gen.is_x()) {
            return Err(Error::InvalidArgument(format!("{l} follows a y-letter")));
        }
        for (i, a) in ys.iter().enumerate() {
            if let Some(b) = ys[i + 1..].iter().find(|b| a.gen.sub.is_prefix_of(&b.gen.sub)) {
                return Err(Error::InvalidArgument(format!("{b} occurs after {a}")));
            }
        }
        StandardForm::new(
            SWord::new(xs.to_vec()),
            ys.iter().map(|l| (l.gen.sub.clone(), l.exp)),
        )
    }

    pub fn x_part(&self) -> &SWord {
        &self.x_part
    }

    pub fn y_part(&self) -> &BTreeMap<Word, i64> {
        &self.y_part
    }

    pub fn exponent(&self, s: &Word) -> Option<i64> {
        self.y_part.get(s).copied()
    }

    pub fn is_x_word(&self) -> bool {
        self.y_part.is_empty()
    }

    /// Length of the shortest y-subscript; `None` stands for infinite depth.
    pub fn depth(&self) -> Option<usize> {
        self.y_part.keys().map(Word::len).min()
    }

    pub fn y_word(&self) -> SWord {
        SWord::new(
            self.y_part
                .iter()
                .map(|(s, &e)| Letter::y(s.clone(), e))
                .collect(),
        )
    }

    pub fn to_sword(&self) -> SWord {
        self.x_part.concat(&self.y_word())
    }

    pub fn evaluate(&self, seq: &Seq) -> Seq {
        evaluate(&self.to_sword(), seq)
    }

    pub fn measure(&self) -> Measure {
        Measure {
            tree_size: minimal_cover(self.y_part.keys()).len(),
            exponents: self.y_part.clone(),
        }
    }
}

impl fmt::Display for StandardForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.x_part, self.y_word())
    }
}

impl fmt::Debug for StandardForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The termination measure of sufficient expansion: the size of the smallest
/// prefix set covering the y-subscripts, then the exponents read from the
/// lex-greatest subscript down.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Measure {
    pub tree_size: usize,
    pub exponents: BTreeMap<Word, i64>,
}

impl Measure {
    /// Absolute exponents in descending lex order.
    pub fn exponent_profile(&self) -> Vec<(Word, u64)> {
        self.exponents
            .iter()
            .rev()
            .map(|(s, e)| (s.clone(), e.unsigned_abs()))
            .collect()
    }

    /// `self ◁ other`.
    pub fn precedes(&self, other: &Measure) -> bool {
        if self.tree_size != other.tree_size {
            return self.tree_size < other.tree_size;
        }
        let mut keys: Vec<&Word> = self.exponents.keys().chain(other.exponents.keys()).collect();
        keys.sort();
        keys.dedup();
        for s in keys.into_iter().rev() {
            let k0 = self.exponents.get(s).copied().unwrap_or(0);
            let k1 = other.exponents.get(s).copied().unwrap_or(0);
            if k0 != k1 {
                return k0.unsigned_abs() < k1.unsigned_abs();
            }
        }
        false
    }
}

/// Mutable working state for the reductions.
struct Engine {
    x: Vec<Letter>,
    y: BTreeMap<Word, i64>,
    trace: Option<Vec<String>>,
    used: usize,
    budget: usize,
}

impl Engine {
    fn new(form: StandardForm, traced: bool) -> Engine {
        Engine {
            x: form.x_part.letters,
            y: form.y_part,
            trace: traced.then(Vec::new),
            used: 0,
            budget: DEFAULT_BUDGET,
        }
    }

    fn form(&self) -> StandardForm {
        StandardForm { x_part: SWord::new(self.x.clone()), y_part: self.y.clone() }
    }

    fn finish(self) -> (StandardForm, Vec<String>) {
        let form = StandardForm { x_part: SWord::new(self.x), y_part: self.y };
        (form, self.trace.unwrap_or_default())
    }

    fn log(&mut self, rule: Rule, at: usize) {
        if self.trace.is_some() {
            let line = format!("rule={rule} at={at} word={}", self.form());
            self.trace.as_mut().unwrap().push(line);
        }
    }

    /// Position of `y_s` in the rendered word.
    fn y_position(&self, s: &Word) -> usize {
        self.x.len() + self.y.range(..s.clone()).count()
    }

    fn push_x(&mut self, sub: &Word, sign: i64) {
        match self.x.last_mut() {
            Some(last) if last.gen.sub == *sub => {
                last.exp += sign;
                if last.exp == 0 {
                    self.x.pop();
                }
            }
            _ => self.x.push(Letter::x(sub.clone(), sign)),
        }
    }

    fn add_y(&mut self, s: Word, e: i64) {
        let entry = self.y.entry(s.clone()).or_insert(0);
        *entry += e;
        if *entry == 0 {
            self.y.remove(&s);
        }
    }

    /// Maps the subscripts below `bound` (all of them if `None`) through
    /// `x_s^sign`. The caller guarantees definedness.
    fn map_subscripts(&mut self, s: &Word, sign: i64, bound: Option<&Word>) {
        let moved: Vec<(Word, i64)> = match bound {
            Some(b) => {
                let tail = self.y.split_off(b);
                std::mem::replace(&mut self.y, tail).into_iter().collect()
            }
            None => std::mem::take(&mut self.y).into_iter().collect(),
        };
        for (t, e) in moved {
            let image = partial_apply_x(&t, s, sign).expect("subscript image is defined");
            self.y.insert(image, e);
        }
    }

    /// Replaces one unit of `y_t^j` by `x_t^± y.. y.. y..` and moves the new
    /// x-letter to the front. The caller guarantees that `y_{t0}` (for
    /// positive `j`) or `y_{t1}` (for negative `j`) is absent.
    fn unit_expand(&mut self, t: &Word) -> Result<()> {
        self.used += 1;
        if self.used > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let j = self.y[t];
        let sign = j.signum();
        debug_assert!(!self.y.contains_key(&t.child(sign < 0)));
        let at = self.y_position(t);
        self.map_subscripts(t, sign, Some(t));
        self.push_x(t, sign);
        self.add_y(t.clone(), -sign);
        if sign > 0 {
            self.add_y(t.extend_str("0"), 1);
            self.add_y(t.extend_str("10"), -1);
            self.add_y(t.extend_str("11"), 1);
            self.log(Rule::Expand, at);
        } else {
            self.add_y(t.extend_str("00"), -1);
            self.add_y(t.extend_str("01"), 1);
            self.add_y(t.extend_str("1"), -1);
            self.log(Rule::ExpandInv, at);
        }
        Ok(())
    }

    /// Expands `y_t` until it no longer occurs.
    fn clear(&mut self, t: &Word) -> Result<()> {
        while let Some(&j) = self.y.get(t) {
            let blocker = t.child(j < 0);
            if self.y.contains_key(&blocker) {
                self.clear(&blocker)?;
            } else {
                self.unit_expand(t)?;
            }
        }
        Ok(())
    }

    /// Right-multiplies by `x_s^sign`.
    fn append_x(&mut self, s: &Word, sign: i64) -> Result<()> {
        loop {
            let blocker = (0..=s.len())
                .map(|i| s.restrict(i))
                .chain(std::iter::once(s.child(sign < 0)))
                .find(|t| self.y.contains_key(t));
            match blocker {
                Some(t) => self.clear(&t)?,
                None => break,
            }
        }
        let at = self.x.len() + self.y.len();
        self.map_subscripts(s, sign, None);
        self.push_x(s, sign);
        self.log(Rule::YX, at);
        Ok(())
    }

    /// Right-multiplies by `y_s^n`.
    fn append_y(&mut self, s: &Word, n: i64) -> Result<()> {
        while let Some(u) = (0..s.len()).map(|i| s.restrict(i)).find(|u| self.y.contains_key(u)) {
            self.clear(&u)?;
        }
        let rule = if self.y.contains_key(s) { Rule::Merge } else { Rule::Commute };
        self.add_y(s.clone(), n);
        let at = self.x.len() + self.y.range(..s.clone()).count();
        self.log(rule, at);
        Ok(())
    }

    fn append(&mut self, letter: &Letter) -> Result<()> {
        match letter.gen.kind {
            Kind::X => {
                for _ in 0..letter.exp.unsigned_abs() {
                    self.append_x(&letter.gen.sub, letter.exp.signum())?;
                }
                Ok(())
            }
            Kind::Y => self.append_y(&letter.gen.sub, letter.exp),
        }
    }

    fn deepen(&mut self, min_depth: usize) -> Result<()> {
        while let Some(t) = self
            .y
            .keys()
            .filter(|t| t.len() < min_depth)
            .min_by_key(|t| t.len())
            .cloned()
        {
            self.clear(&t)?;
        }
        Ok(())
    }
}

/// A standard form derived from `w` whose depth is at least `min_depth`.
pub fn to_standard_form(w: &SWord, min_depth: usize) -> Result<StandardForm> {
    Ok(standard_form_impl(w, min_depth, false)?.0)
}

/// [`to_standard_form`] together with one trace line per rewriting step.
pub fn to_standard_form_traced(w: &SWord, min_depth: usize) -> Result<(StandardForm, Vec<String>)> {
    standard_form_impl(w, min_depth, true)
}

fn standard_form_impl(w: &SWord, min_depth: usize, traced: bool) -> Result<(StandardForm, Vec<String>)> {
    let mut engine = Engine::new(StandardForm::identity(), traced);
    for letter in &w.letters {
        engine.append(letter)?;
    }
    engine.deepen(min_depth)?;
    Ok(engine.finish())
}

/// Right-multiplies a standard form by a word, keeping it standard.
pub fn append_word(form: &StandardForm, w: &SWord) -> Result<StandardForm> {
    let mut engine = Engine::new(form.clone(), false);
    for letter in &w.letters {
        engine.append(letter)?;
    }
    Ok(engine.finish().0)
}

/// Depth that guarantees `Ω Ξ` can be rewritten by commuting every letter of
/// `Ξ` leftwards without expanding anything.
pub fn push_threshold(xi: &SWord) -> usize {
    let longest = xi.letters.iter().map(|l| l.gen.sub.len()).max().unwrap_or(0);
    let k = xi.word_length() as usize;
    if k == 0 {
        0
    } else {
        longest + 2 + (k - 1)
    }
}

/// Moves the X-word `xi` from the right of `form` to the front of its Y-part
/// using only `y_t^i x_s^± ⇒ x_s^± y_{t.x_s^±}^i`.
pub fn push_x_left(form: &StandardForm, xi: &SWord) -> Result<StandardForm> {
    if !xi.is_x_word() {
        return Err(Error::InvalidArgument(format!("{xi} is not an X-word")));
    }
    let required = push_threshold(xi);
    let depth = form.depth();
    if let Some(d) = depth.filter(|&d| d < required) {
        return Err(Error::InsufficientDepth { depth: d, required });
    }
    let mut engine = Engine::new(form.clone(), false);
    for l in &xi.letters {
        for _ in 0..l.exp.unsigned_abs() {
            let sign = l.exp.signum();
            if let Some(t) = engine.y.keys().find(|t| partial_apply_x(t, &l.gen.sub, sign).is_none()) {
                return Err(Error::InsufficientDepth { depth: t.len(), required });
            }
            engine.map_subscripts(&l.gen.sub, sign, None);
            engine.push_x(&l.gen.sub, sign);
        }
    }
    Ok(engine.finish().0)
}

/// Expands `y_s^sign` until every y-subscript has length at least `l`,
/// keeping exponents `±1` and subscripts pairwise incompatible.
pub fn expand_y_to_depth(s: &Word, sign: i64, l: usize) -> StandardForm {
    expand_y_to_depth_traced(s, sign, l).0
}

pub fn expand_y_to_depth_traced(s: &Word, sign: i64, l: usize) -> (StandardForm, Vec<String>) {
    fn go(s: &Word, sign: i64, l: usize, x: &mut Vec<Letter>, y: &mut BTreeMap<Word, i64>, trace: &mut Vec<String>) {
        if s.len() >= l {
            y.insert(s.clone(), sign);
            return;
        }
        x.push(Letter::x(s.clone(), sign));
        let parts: [(&str, i64); 3] = if sign > 0 {
            [("0", 1), ("10", -1), ("11", 1)]
        } else {
            [("00", -1), ("01", 1), ("1", -1)]
        };
        let rule = if sign > 0 { Rule::Expand } else { Rule::ExpandInv };
        trace.push(format!("rule={rule} at={} word=y[{s}]^{sign}", x.len() - 1));
        for (suffix, e) in parts {
            go(&s.extend_str(suffix), e, l, x, y, trace);
        }
    }
    let sign = if sign < 0 { -1 } else { 1 };
    let (mut x, mut y, mut trace) = (Vec::new(), BTreeMap::new(), Vec::new());
    go(s, sign, l, &mut x, &mut y, &mut trace);
    let form = StandardForm { x_part: SWord::new(x), y_part: y };
    trace.push(format!("rule={} at=0 word={form}", Rule::Commute));
    (form, trace)
}

/// An extension `u` of `s` such that the only y-subscripts compatible with
/// `u` are prefixes of `s`, if one exists.
pub fn exposure_witness(s: &Word, form: &StandardForm) -> Option<Word> {
    let below: Vec<&Word> = form
        .y_part
        .keys()
        .filter(|t| s.is_proper_prefix_of(t))
        .collect();
    fn search(v: Word, below: &[&Word]) -> Option<Word> {
        if below.iter().any(|t| t.is_prefix_of(&v)) {
            return None;
        }
        if !below.iter().any(|t| v.is_proper_prefix_of(t)) {
            return Some(v);
        }
        search(v.child(false), below).or_else(|| search(v.child(true), below))
    }
    if below.is_empty() {
        return Some(s.clone());
    }
    search(s.child(false), &below).or_else(|| search(s.child(true), &below))
}

pub fn is_exposed(s: &Word, form: &StandardForm) -> bool {
    exposure_witness(s, form).is_some()
}

/// Subscripts at which the sufficient expansion condition fails.
pub fn offenders(form: &StandardForm) -> Vec<Word> {
    form.y_part
        .iter()
        .filter(|(s, &e)| !form.y_part.contains_key(&s.child(e < 0)) && !is_exposed(s, form))
        .map(|(s, _)| s.clone())
        .collect()
}

pub fn is_sufficiently_expanded(form: &StandardForm) -> bool {
    offenders(form).is_empty()
}

/// The outcome of [`sufficiently_expand_with_measures`].
#[derive(Clone, Debug)]
pub struct Expansion {
    pub form: StandardForm,
    /// The measure before the first step and after every step.
    pub measures: Vec<Measure>,
}

impl Expansion {
    pub fn steps(&self) -> usize {
        self.measures.len() - 1
    }
}

pub fn sufficiently_expand(form: &StandardForm) -> Result<StandardForm> {
    Ok(sufficiently_expand_with_measures(form)?.form)
}

/// Expands the lex-greatest offending subscript by one unit until none is
/// left, checking that the measure drops at every step.
pub fn sufficiently_expand_with_measures(form: &StandardForm) -> Result<Expansion> {
    let mut engine = Engine::new(form.clone(), false);
    let mut measures = vec![form.measure()];
    loop {
        let current = engine.form();
        let Some(s) = offenders(&current).pop() else {
            return Ok(Expansion { form: current, measures });
        };
        engine.unit_expand(&s)?;
        let m = engine.form().measure();
        if !m.precedes(measures.last().unwrap()) {
            return Err(Error::CrossCheck(format!(
                "expansion at y[{s}] did not decrease the measure of {current}"
            )));
        }
        measures.push(m);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{random_seq, Generator};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn sw(s: &str) -> SWord {
        s.parse().unwrap()
    }

    fn form(s: &str) -> StandardForm {
        StandardForm::from_sword(&sw(s)).unwrap()
    }

    fn agree(a: &SWord, b: &SWord, n: usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..n {
            let xi = random_seq(&mut rng, 8, 5);
            assert_eq!(evaluate(a, &xi), evaluate(b, &xi), "{a} vs {b} at {xi}");
        }
    }

    #[test]
    fn standard_form_examples() {
        let f = to_standard_form(&sw("x^2"), 0).unwrap();
        assert_eq!(f.x_part(), &sw("x^2"));
        assert_eq!(f.depth(), None);

        let f = to_standard_form(&sw("c a"), 0).unwrap();
        assert_eq!(f, form("x y[110]"));

        let yx = sw("y x");
        let f = to_standard_form(&yx, 0).unwrap();
        assert!(f.x_part().letters.first().map(|l| l.gen == Generator::x(Word::empty())).unwrap());
        agree(&yx, &f.to_sword(), 50);
    }

    #[test]
    fn depth_requests_are_met() {
        for (word, d) in [("y", 3), ("y[0] y[1]^-1 x", 4), ("c^2 a^-1 b", 5)] {
            let w0 = sw(word);
            let f = to_standard_form(&w0, d).unwrap();
            assert!(f.depth().map_or(true, |x| x >= d), "{f}");
            agree(&w0, &f.to_sword(), 30);
        }
    }

    #[test]
    fn base_case_expansions() {
        assert_eq!(expand_y_to_depth(&Word::empty(), 1, 0), form("y"));
        assert_eq!(expand_y_to_depth(&Word::empty(), 1, 1), form("x y[0] y[10]^-1 y[11]"));
        assert_eq!(expand_y_to_depth(&Word::empty(), -1, 1), form("x^-1 y[00]^-1 y[01] y[1]^-1"));
        let f = expand_y_to_depth(&w("1"), -1, 4);
        let subs: Vec<&Word> = f.y_part().keys().collect();
        for (i, a) in subs.iter().enumerate() {
            assert!(a.len() >= 4 && w("1").is_prefix_of(a));
            assert!(subs[i + 1..].iter().all(|b| a.is_incompatible(b)));
        }
        assert!(f.y_part().values().all(|e| e.abs() == 1));
        agree(&sw("y[1]^-1"), &f.to_sword(), 30);
    }

    #[test]
    fn pushing_x_words() {
        let f = push_x_left(&form("y[110]"), &sw("x")).unwrap();
        assert_eq!(f, form("x y[1110]"));
        let f = push_x_left(&StandardForm::identity(), &sw("x x[1]^-1")).unwrap();
        assert_eq!(f.x_part(), &sw("x x[1]^-1"));
        assert!(matches!(
            push_x_left(&form("y[0]"), &sw("x")),
            Err(Error::InsufficientDepth { depth: 1, required: 2 })
        ));
        let deep = to_standard_form(&sw("y[1] y[0]^2"), 6).unwrap();
        let xi = sw("x x[1] x^-1 x[0]");
        let pushed = push_x_left(&deep, &xi).unwrap();
        assert!(pushed.depth().unwrap() >= deep.depth().unwrap() - 4);
        agree(&deep.to_sword().concat(&xi), &pushed.to_sword(), 30);
    }

    #[test]
    fn exposure_examples() {
        assert!(is_exposed(&w("0"), &form("y[0]")));
        assert!(!is_exposed(&w("0"), &form("y[00] y[01] y[0]")));
        assert!(is_exposed(&w("0"), &form("y[00] y[0]")));
        assert_eq!(exposure_witness(&w("0"), &form("y[00] y[0]")), Some(w("01")));
        assert!(!is_exposed(&w("e"), &form("y[0] y[10] y[11] y")));
    }

    #[test]
    fn sufficient_expansion() {
        let done = form("y[0] y[1]");
        assert_eq!(sufficiently_expand(&done).unwrap(), done);
        assert!(is_sufficiently_expanded(&form("y[00] y[01] y[0]")));
        let f = form("y[000] y[001]^-1 y[01] y[0]^2");
        assert_eq!(offenders(&f), vec!["0".parse::<Word>().unwrap()]);
        let e = sufficiently_expand_with_measures(&f).unwrap();
        assert!(is_sufficiently_expanded(&e.form));
        assert!(e.steps() >= 1);
        for pair in e.measures.windows(2) {
            assert!(pair[1].precedes(&pair[0]));
        }
        agree(&f.to_sword(), &e.form.to_sword(), 30);
    }

    #[test]
    fn measure_order() {
        let a = form("y[0]^2").measure();
        let b = form("y[0]").measure();
        assert!(b.precedes(&a));
        assert!(!a.precedes(&b));
        assert!(!a.precedes(&a));
        let c = form("y[00] y[0]").measure();
        assert!(b.precedes(&c));
        assert_eq!(a.exponent_profile(), vec![(w("0"), 2)]);
    }

    #[test]
    fn from_sword_rejects_bad_order() {
        assert!(StandardForm::from_sword(&sw("y[0] y[00]")).is_err());
        assert!(StandardForm::from_sword(&sw("y[0] x")).is_err());
        assert!(StandardForm::from_sword(&sw("y[0] y[0]")).is_err());
    }
}
