//! Single rewriting steps on formal words.

use std::fmt;
use std::str::FromStr;

use crate::action::{partial_apply_x, Letter, SWord};
use crate::error::{Error, Result};

/// The substitutions from which derivations are built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `y_t^i x_s^± ⇒ x_s^± y_{t.x_s^±}^i`
    YX,
    /// `y_s^n ⇒ x_s y_{s0} y_{s10}^-1 y_{s11} y_s^{n-1}` for `n > 0`
    Expand,
    /// `y_s^n ⇒ x_s^-1 y_{s00}^-1 y_{s01} y_{s1}^-1 y_s^{n+1}` for `n < 0`
    ExpandInv,
    /// `y_u y_v ⇒ y_v y_u` for incompatible `u`, `v`
    Commute,
    /// `g^{i+j} ⇒ g^i g^j`, splitting off one unit
    Split,
    /// `g^i g^j ⇒ g^{i+j}` with `i`, `j` of the same sign
    Merge,
    /// delete `g^i g^-i`
    Cancel,
}

impl Rule {
    pub const ALL: [Rule; 7] = [
        Rule::YX,
        Rule::Expand,
        Rule::ExpandInv,
        Rule::Commute,
        Rule::Split,
        Rule::Merge,
        Rule::Cancel,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Rule::YX => "yx",
            Rule::Expand => "expand",
            Rule::ExpandInv => "expand-inv",
            Rule::Commute => "commute",
            Rule::Split => "split",
            Rule::Merge => "merge",
            Rule::Cancel => "cancel",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rule> {
        Rule::ALL
            .into_iter()
            .find(|r| r.id() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown rule {s:?}")))
    }
}

fn refuse(rule: Rule, position: usize, reason: impl Into<String>) -> Error {
    Error::RuleNotApplicable {
        rule: rule.id().to_string(),
        position,
        reason: reason.into(),
    }
}

/// Applies `rule` at letter `position` of `w`.
pub fn derive_step(w: &SWord, rule: Rule, position: usize) -> Result<SWord> {
    let letters = &w.letters;
    let here = letters
        .get(position)
        .ok_or_else(|| refuse(rule, position, format!("word has {} letters", letters.len())))?;
    let next = letters.get(position + 1);
    let pair = || next.ok_or_else(|| refuse(rule, position, "no following letter"));

    let replacement: Vec<Letter> = match rule {
        Rule::YX => {
            let nx = pair()?;
            if !here.gen.is_y() || !nx.gen.is_x() {
                return Err(refuse(rule, position, "needs a y-letter followed by an x-letter"));
            }
            if nx.exp.abs() != 1 {
                return Err(refuse(rule, position, "the x-letter must have exponent ±1"));
            }
            let t = partial_apply_x(&here.gen.sub, &nx.gen.sub, nx.exp).ok_or_else(|| {
                refuse(rule, position, format!("{}.{} is undefined", here.gen.sub, nx.gen))
            })?;
            vec![nx.clone(), Letter::y(t, here.exp)]
        }
        Rule::Expand | Rule::ExpandInv => {
            let positive = rule == Rule::Expand;
            if !here.gen.is_y() || (here.exp > 0) != positive {
                let want = if positive { "positive" } else { "negative" };
                return Err(refuse(rule, position, format!("needs a {want} y-letter")));
            }
            let s = &here.gen.sub;
            let sign = here.exp.signum();
            let mut out = if positive {
                vec![
                    Letter::x(s.clone(), 1),
                    Letter::y(s.extend_str("0"), 1),
                    Letter::y(s.extend_str("10"), -1),
                    Letter::y(s.extend_str("11"), 1),
                ]
            } else {
                vec![
                    Letter::x(s.clone(), -1),
                    Letter::y(s.extend_str("00"), -1),
                    Letter::y(s.extend_str("01"), 1),
                    Letter::y(s.extend_str("1"), -1),
                ]
            };
            if here.exp != sign {
                out.push(Letter::y(s.clone(), here.exp - sign));
            }
            out
        }
        Rule::Commute => {
            let nx = pair()?;
            if !here.gen.is_y() || !nx.gen.is_y() {
                return Err(refuse(rule, position, "needs two y-letters"));
            }
            if !here.gen.sub.is_incompatible(&nx.gen.sub) {
                return Err(refuse(rule, position, "subscripts are compatible"));
            }
            vec![nx.clone(), here.clone()]
        }
        Rule::Split => {
            if here.exp.abs() < 2 {
                return Err(refuse(rule, position, "exponent is ±1"));
            }
            let sign = here.exp.signum();
            vec![
                Letter::new(here.gen.clone(), sign),
                Letter::new(here.gen.clone(), here.exp - sign),
            ]
        }
        Rule::Merge => {
            let nx = pair()?;
            if nx.gen != here.gen {
                return Err(refuse(rule, position, "different generators"));
            }
            if nx.exp.signum() != here.exp.signum() {
                return Err(refuse(rule, position, "exponents of opposite sign"));
            }
            vec![Letter::new(here.gen.clone(), here.exp + nx.exp)]
        }
        Rule::Cancel => {
            let nx = pair()?;
            if nx.gen != here.gen || nx.exp != -here.exp {
                return Err(refuse(rule, position, "letters are not mutually inverse"));
            }
            vec![]
        }
    };

    let consumed = match rule {
        Rule::Expand | Rule::ExpandInv | Rule::Split => 1,
        _ => 2,
    };
    let mut out = letters[..position].to_vec();
    out.extend(replacement);
    out.extend_from_slice(&letters[position + consumed..]);
    Ok(SWord::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{evaluate, random_seq};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sw(s: &str) -> SWord {
        s.parse().unwrap()
    }

    fn same(a: &SWord, b: &SWord) {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let xi = random_seq(&mut rng, 8, 5);
            assert_eq!(evaluate(a, &xi), evaluate(b, &xi));
        }
    }

    #[test]
    fn yx_examples() {
        let w = sw("y[10] x");
        let d = derive_step(&w, Rule::YX, 0).unwrap();
        assert_eq!(d, sw("x y[110]"));
        same(&w, &d);
        assert!(derive_step(&sw("y[0] x"), Rule::YX, 0).is_err());
        assert!(derive_step(&sw("y x"), Rule::YX, 0).is_err());
        assert!(derive_step(&sw("y[1] x^2"), Rule::YX, 0).is_err());
    }

    #[test]
    fn expansions() {
        assert_eq!(derive_step(&sw("y"), Rule::Expand, 0).unwrap(), sw("x y[0] y[10]^-1 y[11]"));
        assert_eq!(
            derive_step(&sw("a y[1]^-2"), Rule::ExpandInv, 1).unwrap(),
            sw("a x[1]^-1 y[100]^-1 y[101] y[11]^-1 y[1]^-1")
        );
        assert!(derive_step(&sw("y^-1"), Rule::Expand, 0).is_err());
        let w = sw("y[0]^3 x[1]");
        same(&w, &derive_step(&w, Rule::Expand, 0).unwrap());
    }

    #[test]
    fn commute_split_merge_cancel() {
        assert_eq!(derive_step(&sw("y[0] y[1]"), Rule::Commute, 0).unwrap(), sw("y[1] y[0]"));
        assert!(derive_step(&sw("y[0] y[01]"), Rule::Commute, 0).is_err());
        assert_eq!(derive_step(&sw("x^-3"), Rule::Split, 0).unwrap(), sw("x^-1 x^-2"));
        assert_eq!(derive_step(&sw("c^2 c"), Rule::Merge, 0).unwrap(), sw("c^3"));
        assert!(derive_step(&sw("c^2 c^-1"), Rule::Merge, 0).is_err());
        assert_eq!(derive_step(&sw("a c^2 c^-2 b"), Rule::Cancel, 1).unwrap(), sw("a b"));
        assert!(derive_step(&sw("a"), Rule::Cancel, 3).is_err());
    }

    #[test]
    fn rule_ids_round_trip() {
        for r in Rule::ALL {
            assert_eq!(r.id().parse::<Rule>().unwrap(), r);
        }
    }
}
