//! The generators as words over the finite generating sets, and the relations.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::action::{partial_apply_x, Kind, Letter, SWord};
use crate::error::{Error, Result};
use crate::sequences::Word;

/// The generating set a word is rewritten into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `x, x[1], y[0], y[1], y[10]`
    Five,
    /// `a = x, b = x[1], c = y[10]`
    Three,
}

impl FromStr for Alphabet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Alphabet> {
        match s {
            "five" => Ok(Alphabet::Five),
            "three" => Ok(Alphabet::Three),
            _ => Err(Error::InvalidArgument(format!("unknown alphabet {s:?} (expected five or three)"))),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alphabet::Five => "five",
            Alphabet::Three => "three",
        })
    }
}

/// How the nine relations are written.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationForm {
    /// In `x`, `x_s`, `y_s`.
    Xy,
    /// In `a`, `b`, `c`.
    Abc,
}

fn sw(s: &str) -> SWord {
    s.parse().expect("literal word")
}

const F_STEPS: [(bool, i64); 4] = [(false, 1), (false, -1), (true, 1), (true, -1)];

/// Breadth-first search over the partial action of `x^±`, `x[1]^±` on tuples
/// of finite words, with every intermediate word no longer than `bound`.
fn search_f(start: Vec<Word>, done: impl Fn(&[Word]) -> bool, bound: usize) -> Option<(SWord, Vec<Word>)> {
    let one: Word = "1".parse().unwrap();
    let mut parent: HashMap<Vec<Word>, Option<(Vec<Word>, usize)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(state) = queue.pop_front() {
        if done(&state) {
            let mut letters = Vec::new();
            let mut cur = state.clone();
            while let Some(Some((prev, k))) = parent.get(&cur) {
                let (on_one, e) = F_STEPS[*k];
                let sub = if on_one { one.clone() } else { Word::empty() };
                letters.push(Letter::x(sub, e));
                cur = prev.clone();
            }
            letters.reverse();
            return Some((SWord::new(letters).canonical(), state));
        }
        for (k, &(on_one, e)) in F_STEPS.iter().enumerate() {
            let sub = if on_one { one.clone() } else { Word::empty() };
            let next: Option<Vec<Word>> = state.iter().map(|w| partial_apply_x(w, &sub, e)).collect();
            let Some(next) = next else { continue };
            if next.iter().any(|w| w.len() > bound) || parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), Some((state.clone(), k)));
            queue.push_back(next);
        }
    }
    None
}

/// A shortest word `f` in `x^±`, `x[1]^±` with `10.f = s`. Among shortest
/// words the search prefers `x`, then `x^-1`, then `x[1]`, then `x[1]^-1`.
pub fn f_word(s: &Word) -> Result<SWord> {
    if s.is_constant() {
        return Err(Error::InvalidArgument(format!("{s} is constant; no f-word maps 10 to it")));
    }
    let start = vec!["10".parse::<Word>().unwrap()];
    for slack in (2..=16).step_by(2) {
        if let Some((word, _)) = search_f(start.clone(), |st| st[0] == *s, s.len().max(2) + slack) {
            return Ok(word);
        }
    }
    Err(Error::InvalidArgument(format!("no f-word found for {s}")))
}

/// For incompatible `u < v`, an element `g` of F and words `s < t` of length
/// at most 3 with `s.g = u` and `t.g = v`.
pub fn conjugating_element(u: &Word, v: &Word) -> Result<(SWord, Word, Word)> {
    if !u.is_incompatible(v) || u >= v {
        return Err(Error::InvalidArgument(format!(
            "{u} and {v} must be incompatible with {u} to the left"
        )));
    }
    let start = vec![u.clone(), v.clone()];
    for slack in (2..=12).step_by(2) {
        let bound = u.len().max(v.len()).max(3) + slack;
        if let Some((h, end)) = search_f(start.clone(), |st| st.iter().all(|w| w.len() <= 3), bound) {
            let mut it = end.into_iter();
            return Ok((h.inverse(), it.next().unwrap(), it.next().unwrap()));
        }
    }
    Err(Error::InvalidArgument(format!("no conjugating element found for {u}, {v}")))
}

/// `x_s` as a word in `x`, `x[1]`.
fn x_in_f(s: &Word) -> Result<SWord> {
    let n = s.len();
    let x_n = |k: i64| SWord::single(crate::action::Generator::x(Word::empty()), 1).pow(k);
    Ok(match s.to_string().as_str() {
        "e" => sw("x"),
        "1" => sw("x[1]"),
        "0" => sw("x^2 x[1]^-1 x^-1"),
        "10" => sw("x[1]^2 x^-1 x[1]^-1 x x[1]^-1"),
        _ if s.is_constant() && !s.bit(0) => x_n(n as i64 - 1).concat(&sw("x^2 x[1]^-1 x^-1")).concat(&x_n(1 - n as i64)),
        _ if s.is_constant() => x_n(1 - n as i64).concat(&sw("x[1]")).concat(&x_n(n as i64 - 1)),
        _ => {
            let f = f_word(s)?;
            f.inverse().concat(&sw("x[1]^2 x^-1 x[1]^-1 x x[1]^-1")).concat(&f)
        }
    })
}

/// `y_s` as a word over the chosen alphabet.
fn y_in(s: &Word, alphabet: Alphabet) -> Result<SWord> {
    let n = s.len() as i64;
    let x_n = |k: i64| SWord::single(crate::action::Generator::x(Word::empty()), 1).pow(k);
    if !s.is_constant() {
        let f = f_word(s)?;
        return Ok(f.inverse().concat(&sw("y[10]")).concat(&f));
    }
    if alphabet == Alphabet::Three {
        return Err(Error::InvalidArgument(format!(
            "y[{s}] has a constant subscript and is not a word in a, b, c"
        )));
    }
    Ok(match s.to_string().as_str() {
        // y = x y[0] y[10]^-1 y[11], with y[11] = x^-1 y[1] x
        "e" => sw("x y[0] y[10]^-1 x^-1 y[1] x"),
        _ if !s.bit(0) => x_n(n - 1).concat(&sw("y[0]")).concat(&x_n(1 - n)),
        _ => x_n(1 - n).concat(&sw("y[1]")).concat(&x_n(n - 1)),
    })
}

/// Rewrites `w` letter by letter over a finite generating set.
pub fn expand_to_finite_generators(w: &SWord, alphabet: Alphabet) -> Result<SWord> {
    let mut cache: HashMap<(Kind, Word), SWord> = HashMap::new();
    let mut out = SWord::empty();
    for l in &w.letters {
        let key = (l.gen.kind, l.gen.sub.clone());
        let unit = match cache.get(&key) {
            Some(u) => u.clone(),
            None => {
                let u = match l.gen.kind {
                    Kind::X => x_in_f(&l.gen.sub)?,
                    Kind::Y => y_in(&l.gen.sub, alphabet)?,
                };
                cache.insert(key, u.clone());
                u
            }
        };
        out = out.concat(&unit.pow(l.exp));
    }
    Ok(out.canonical())
}

/// All instances of relation family `family` (numbered 1 to 5 as
/// `x_s² = x_{s0} x_s x_{s1}`, `x_t x_s = x_s x_{t.x_s}`,
/// `y_t x_s = x_s y_{t.x_s}`, `y_s y_t = y_t y_s`,
/// `y_s = x_s y_{s0} y_{s10}⁻¹ y_{s11}`) whose free subscripts have length
/// at most `bound`.
pub fn relation_instances(family: u8, bound: usize) -> Result<Vec<(SWord, SWord)>> {
    if bound > 8 {
        return Err(Error::InvalidArgument(format!("subscript bound {bound} exceeds 8")));
    }
    let words: Vec<Word> = Word::all_up_to(bound).collect();
    let x = |s: &Word, e: i64| Letter::x(s.clone(), e);
    let y = |s: &Word, e: i64| Letter::y(s.clone(), e);
    let mut out = Vec::new();
    match family {
        1 => {
            for s in &words {
                out.push((
                    SWord::new(vec![x(s, 2)]),
                    SWord::new(vec![x(&s.child(false), 1), x(s, 1), x(&s.child(true), 1)]),
                ));
            }
        }
        2 | 3 => {
            for s in &words {
                for t in &words {
                    if let Some(image) = partial_apply_x(t, s, 1) {
                        let (lt, limage) = if family == 2 { (x(t, 1), x(&image, 1)) } else { (y(t, 1), y(&image, 1)) };
                        out.push((SWord::new(vec![lt, x(s, 1)]), SWord::new(vec![x(s, 1), limage])));
                    }
                }
            }
        }
        4 => {
            for s in &words {
                for t in words.iter().filter(|t| s < *t && s.is_incompatible(t)) {
                    out.push((SWord::new(vec![y(s, 1), y(t, 1)]), SWord::new(vec![y(t, 1), y(s, 1)])));
                }
            }
        }
        5 => {
            for s in &words {
                out.push((
                    SWord::new(vec![y(s, 1)]),
                    SWord::new(vec![
                        x(s, 1),
                        y(&s.extend_str("0"), 1),
                        y(&s.extend_str("10"), -1),
                        y(&s.extend_str("11"), 1),
                    ]),
                ));
            }
        }
        _ => return Err(Error::InvalidArgument(format!("no relation family {family}"))),
    }
    Ok(out)
}

const NINE_XY: [(&str, &str); 9] = [
    ("x[1] x^-2 x[1] x", "x^-1 x[1] x x[1] x^-1"),
    ("x[1] x^-3 x[1] x^2", "x^-2 x[1] x^2 x[1] x^-1"),
    ("y[10] x[0]", "x[0] y[10]"),
    ("y[10] x[01]", "x[01] y[10]"),
    ("y[10] x[11]", "x[11] y[10]"),
    ("y[10] x[111]", "x[111] y[10]"),
    ("y[01] y[10]", "y[10] y[01]"),
    ("y[001] y[10]", "y[10] y[001]"),
    ("y[10]", "x[10] y[100] y[1010]^-1 y[1011]"),
];

const NINE_ABC: [(&str, &str); 9] = [
    ("b a^-2 b a", "a^-1 b a b a^-1"),
    ("b a^-1 a^-2 b a^2", "a^-2 b a^2 b a^-1"),
    ("c a^2 b^-1 a^-1", "a^2 b^-1 a^-1 c"),
    ("c b^2 a^-1 b a b", "b^2 a^-1 b a b c"),
    ("c a^-1 b a", "a^-1 b a c"),
    ("c a^-2 b a^2", "a^-2 b a^2 c"),
    ("c a c a^-1", "a c a^-1 c"),
    ("c a^2 c a^-2", "a^2 c a^-2 c"),
    (
        "c",
        "b^2 a^-1 b^-1 a c b^-2 a b^-1 c^-1 b a^-1 b a b^-1 a b^-1 c b a^-1 b a^-1",
    ),
];

/// The nine relations of the finite presentation in `a`, `b`, `c`, written
/// exactly as stated, in either notation.
pub fn nine_relations(form: RelationForm) -> Vec<(SWord, SWord)> {
    let table = match form {
        RelationForm::Xy => &NINE_XY,
        RelationForm::Abc => &NINE_ABC,
    };
    table.iter().map(|(l, r)| (sw(l), sw(r))).collect()
}
