//! Exact arithmetic on the projective line, the continued-fraction
//! correspondence between binary sequences and `R ∪ {∞}`, and exact
//! piecewise projective maps.
//!
//! Maps act on the right: [`PiecewiseMap::compose`]`(f, g)` is "apply `f`,
//! then `g`", matching the left-to-right reading of words.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::sequences::{Seq, Word};

/// A point of the projective line: a reduced fraction `num/den` with
/// `den >= 0`, where `1/0` is the point at infinity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtRational {
    num: BigInt,
    den: BigInt,
}

impl ExtRational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> ExtRational {
        let (mut num, mut den) = (num.into(), den.into());
        assert!(!(num.is_zero() && den.is_zero()), "0/0 is not a point of the projective line");
        if den.is_zero() {
            return ExtRational::infinity();
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        ExtRational { num: num / &g, den: den / &g }
    }

    pub fn integer(n: impl Into<BigInt>) -> ExtRational {
        ExtRational { num: n.into(), den: BigInt::one() }
    }

    pub fn zero() -> ExtRational {
        ExtRational::integer(0)
    }

    pub fn one() -> ExtRational {
        ExtRational::integer(1)
    }

    pub fn infinity() -> ExtRational {
        ExtRational { num: BigInt::one(), den: BigInt::zero() }
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    /// `1/t`, with `1/0 = ∞` and `1/∞ = 0`.
    pub fn recip(&self) -> ExtRational {
        ExtRational::new(self.den.clone(), self.num.clone())
    }

    /// `-t`, with `-∞ = ∞`.
    pub fn neg(&self) -> ExtRational {
        if self.is_infinite() {
            return self.clone();
        }
        ExtRational { num: -&self.num, den: self.den.clone() }
    }

    /// `t + n`, with `∞ + n = ∞`.
    pub fn add_int(&self, n: i64) -> ExtRational {
        if self.is_infinite() {
            return self.clone();
        }
        ExtRational::new(&self.num + &self.den * n, self.den.clone())
    }

    /// `n * t` for nonzero `n`, with `n * ∞ = ∞`.
    pub fn mul_int(&self, n: i64) -> ExtRational {
        assert!(n != 0);
        if self.is_infinite() {
            return self.clone();
        }
        ExtRational::new(&self.num * n, self.den.clone())
    }

    /// Position along the line read from `-∞` upwards, with `∞` placed last.
    /// Used to lay breakpoints out around the circle.
    fn circle_cmp(&self, other: &ExtRational) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (&self.num * &other.den).cmp(&(&other.num * &self.den)),
        }
    }

    /// `[numerator, denominator]`; infinity is `[1, 0]`.
    pub fn to_json(&self) -> Value {
        json!([big_to_json(&self.num), big_to_json(&self.den)])
    }
}

fn big_to_json(n: &BigInt) -> Value {
    serde_json::from_str(&n.to_string()).expect("an integer is valid JSON")
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `φ` of the sequence `word` followed by the constant tail `tail`, where
/// `φ(0ξ) = 1/(1 + 1/φ(ξ))`, `φ(1ξ) = 1 + φ(ξ)`, `φ(000...) = 0` and
/// `φ(111...) = ∞`.
pub fn phi_of(word: &Word, tail: bool) -> ExtRational {
    let mut v = if tail { ExtRational::infinity() } else { ExtRational::zero() };
    for &b in word.bits().iter().rev() {
        v = if b { v.add_int(1) } else { v.recip().add_int(1).recip() };
    }
    v
}

/// `Φ` of the eventually constant sequence `word tail tail tail ...`:
/// `Φ(0ξ) = -φ(complement ξ)` and `Φ(1ξ) = φ(ξ)`.
pub fn phi_eval(word: &Word, tail: bool) -> ExtRational {
    match word.bits().split_first() {
        None => ExtRational::infinity(),
        Some((&true, rest)) => phi_of(&Word::from_bits(rest.iter().copied()), tail),
        Some((&false, rest)) => phi_of(&Word::from_bits(rest.iter().map(|b| !b)), !tail).neg(),
    }
}

/// `Φ` of an eventually constant sequence; `None` for sequences with a
/// non-constant period, whose image is irrational.
pub fn phi_of_seq(seq: &Seq) -> Option<ExtRational> {
    seq.as_eventually_constant().map(|(w, b)| phi_eval(&w, b))
}

/// `φ` (not `Φ`) of an eventually constant sequence.
pub fn small_phi_of_seq(seq: &Seq) -> Option<ExtRational> {
    seq.as_eventually_constant().map(|(w, b)| phi_of(&w, b))
}

/// The endpoints `{Φ(s000...), Φ(s111...)}` of the arc of points whose
/// sequences extend `s`.
pub fn phi_interval(s: &Word) -> Result<(ExtRational, ExtRational)> {
    if s.is_empty() {
        return Err(Error::InvalidArgument(
            "the empty prefix covers the whole projective line".into(),
        ));
    }
    Ok((phi_eval(s, false), phi_eval(s, true)))
}

/// A fractional linear transformation `t ↦ (a t + b)/(c t + d)`, stored up to
/// scalar: entries are coprime and the first nonzero entry is positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjMatrix {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl ProjMatrix {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<ProjMatrix> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        if (&a * &d - &b * &c).is_zero() {
            return Err(Error::InvalidArgument("singular matrix".into()));
        }
        Ok(ProjMatrix::normalized(a, b, c, d))
    }

    fn normalized(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> ProjMatrix {
        let g = a.gcd(&b).gcd(&c).gcd(&d);
        let (mut a, mut b, mut c, mut d) = (a / &g, b / &g, c / &g, d / &g);
        let lead = [&a, &b, &c, &d].into_iter().find(|x| !x.is_zero()).expect("nonsingular");
        if lead.is_negative() {
            a = -a;
            b = -b;
            c = -c;
            d = -d;
        }
        ProjMatrix { a, b, c, d }
    }

    pub fn identity() -> ProjMatrix {
        ProjMatrix::normalized(1.into(), 0.into(), 0.into(), 1.into())
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn apply(&self, t: &ExtRational) -> ExtRational {
        let (num, den) = if t.is_infinite() {
            (self.a.clone(), self.c.clone())
        } else {
            (&self.a * &t.num + &self.b * &t.den, &self.c * &t.num + &self.d * &t.den)
        };
        ExtRational::new(num, den)
    }

    /// The matrix of "apply `self`, then `next`".
    pub fn then(&self, next: &ProjMatrix) -> ProjMatrix {
        ProjMatrix::normalized(
            &next.a * &self.a + &next.b * &self.c,
            &next.a * &self.b + &next.b * &self.d,
            &next.c * &self.a + &next.d * &self.c,
            &next.c * &self.b + &next.d * &self.d,
        )
    }

    pub fn inverse(&self) -> ProjMatrix {
        ProjMatrix::normalized(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    fn poly(x: &BigInt, y: &BigInt) -> String {
        let mut out = String::new();
        if !x.is_zero() {
            if x.is_one() {
                out.push('t');
            } else if *x == -BigInt::one() {
                out.push_str("-t");
            } else {
                out.push_str(&format!("{x}t"));
            }
        }
        if !y.is_zero() {
            if out.is_empty() {
                out.push_str(&y.to_string());
            } else if y.is_negative() {
                out.push_str(&format!(" - {}", -y));
            } else {
                out.push_str(&format!(" + {y}"));
            }
        }
        out
    }
}

impl fmt::Display for ProjMatrix {
    /// `(a t + b)/(c t + d)`; a constant denominator is written bare.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = ProjMatrix::poly(&self.a, &self.b);
        let den = ProjMatrix::poly(&self.c, &self.d);
        if self.c.is_zero() {
            write!(f, "({num})/{den}")
        } else {
            write!(f, "({num})/({den})")
        }
    }
}

impl fmt::Debug for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// One arc of a piecewise map: the piece acts on `[start, end)` (going up
/// the line, wrapping through `∞`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub start: ExtRational,
    pub end: ExtRational,
    pub matrix: ProjMatrix,
}

/// An orientation-preserving piecewise projective homeomorphism of the
/// projective line. Breakpoint `i` starts the arc on which piece `i` acts;
/// arcs run up to the next breakpoint, cyclically.
#[derive(Clone, PartialEq, Eq)]
pub struct PiecewiseMap {
    breakpoints: Vec<ExtRational>,
    pieces: Vec<ProjMatrix>,
}

impl PiecewiseMap {
    /// Builds and validates a map from `(breakpoint, matrix)` pairs in any
    /// order. Adjacent pieces must agree at their shared breakpoint.
    pub fn new(mut arcs: Vec<(ExtRational, ProjMatrix)>) -> Result<PiecewiseMap> {
        if arcs.is_empty() {
            return Err(Error::InvalidArgument("a piecewise map needs at least one piece".into()));
        }
        arcs.sort_by(|x, y| x.0.circle_cmp(&y.0));
        if arcs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidArgument("repeated breakpoint".into()));
        }
        if arcs.iter().any(|(_, m)| !m.det().is_positive()) {
            return Err(Error::InvalidArgument("pieces must preserve orientation".into()));
        }
        let (breakpoints, pieces): (Vec<_>, Vec<_>) = arcs.into_iter().unzip();
        let map = PiecewiseMap { breakpoints, pieces };
        map.check_continuity()?;
        Ok(map.normalize())
    }

    pub fn identity() -> PiecewiseMap {
        PiecewiseMap::single(ProjMatrix::identity())
    }

    pub fn single(m: ProjMatrix) -> PiecewiseMap {
        PiecewiseMap { breakpoints: vec![ExtRational::infinity()], pieces: vec![m] }
    }

    fn check_continuity(&self) -> Result<()> {
        let k = self.pieces.len();
        for i in 0..k {
            let prev = &self.pieces[(i + k - 1) % k];
            let p = &self.breakpoints[i];
            if prev.apply(p) != self.pieces[i].apply(p) {
                return Err(Error::InvalidArgument(format!(
                    "pieces disagree at breakpoint {p}: {} vs {}",
                    prev.apply(p),
                    self.pieces[i].apply(p)
                )));
            }
        }
        Ok(())
    }

    /// Merges adjacent arcs carrying the same matrix.
    fn normalize(mut self) -> PiecewiseMap {
        let k = self.pieces.len();
        if self.pieces.iter().all(|m| *m == self.pieces[0]) {
            return PiecewiseMap::single(self.pieces.swap_remove(0));
        }
        let keep: Vec<bool> = (0..k).map(|i| self.pieces[i] != self.pieces[(i + k - 1) % k]).collect();
        let mut breakpoints = Vec::new();
        let mut pieces = Vec::new();
        for i in 0..k {
            if keep[i] {
                breakpoints.push(self.breakpoints[i].clone());
                pieces.push(self.pieces[i].clone());
            }
        }
        PiecewiseMap { breakpoints, pieces }
    }

    pub fn breakpoints(&self) -> &[ExtRational] {
        &self.breakpoints
    }

    pub fn matrices(&self) -> &[ProjMatrix] {
        &self.pieces
    }

    pub fn pieces(&self) -> Vec<Piece> {
        let k = self.pieces.len();
        (0..k)
            .map(|i| Piece {
                start: self.breakpoints[i].clone(),
                end: self.breakpoints[(i + 1) % k].clone(),
                matrix: self.pieces[i].clone(),
            })
            .collect()
    }

    fn arc_index(&self, t: &ExtRational) -> usize {
        let k = self.breakpoints.len();
        match self.breakpoints.iter().rposition(|p| p.circle_cmp(t) != Ordering::Greater) {
            Some(i) => i,
            None => k - 1,
        }
    }

    /// The matrix acting at `t` (on the arc that starts at or before `t`).
    pub fn matrix_at(&self, t: &ExtRational) -> &ProjMatrix {
        &self.pieces[self.arc_index(t)]
    }

    pub fn apply(&self, t: &ExtRational) -> ExtRational {
        self.matrix_at(t).apply(t)
    }

    /// A point strictly inside arc `i`.
    fn interior_point(&self, i: usize) -> ExtRational {
        let k = self.breakpoints.len();
        let lo = &self.breakpoints[i];
        let hi = &self.breakpoints[(i + 1) % k];
        if k == 1 {
            return if lo.is_infinite() { ExtRational::zero() } else { lo.add_int(1) };
        }
        match (lo.is_infinite(), hi.is_infinite()) {
            (true, _) => hi.add_int(-1),
            (false, true) => lo.add_int(1),
            (false, false) if lo.circle_cmp(hi) == Ordering::Less => {
                ExtRational::new(&lo.num * &hi.den + &hi.num * &lo.den, &lo.den * &hi.den * 2)
            }
            // wraps through infinity
            (false, false) => lo.add_int(1),
        }
    }

    /// "Apply `self`, then `next`".
    pub fn compose(&self, next: &PiecewiseMap) -> PiecewiseMap {
        let inv = self.invert();
        let mut points: Vec<ExtRational> = self.breakpoints.clone();
        points.extend(next.breakpoints.iter().map(|p| inv.apply(p)));
        points.sort_by(|x, y| x.circle_cmp(y));
        points.dedup();
        let refined = PiecewiseMap {
            breakpoints: points.clone(),
            pieces: vec![ProjMatrix::identity(); points.len()],
        };
        let arcs = (0..points.len())
            .map(|i| {
                let t = refined.interior_point(i);
                let first = self.matrix_at(&t);
                let second = next.matrix_at(&first.apply(&t));
                (points[i].clone(), first.then(second))
            })
            .collect();
        PiecewiseMap::new(arcs).expect("composition of homeomorphisms is continuous")
    }

    pub fn invert(&self) -> PiecewiseMap {
        let arcs = self
            .breakpoints
            .iter()
            .zip(&self.pieces)
            .map(|(p, m)| (m.apply(p), m.inverse()))
            .collect();
        PiecewiseMap::new(arcs).expect("inverse of a homeomorphism is continuous")
    }

    /// The pieces meeting the open interval `(lo, hi)` of the affine line,
    /// clipped to `[lo, hi]`.
    pub fn restrict(&self, lo: &ExtRational, hi: &ExtRational) -> Vec<Piece> {
        assert!(
            !lo.is_infinite() && !hi.is_infinite() && lo.circle_cmp(hi) == Ordering::Less,
            "restrict needs a finite interval"
        );
        let mut cuts = vec![lo.clone()];
        cuts.extend(
            self.breakpoints
                .iter()
                .filter(|p| p.circle_cmp(lo) == Ordering::Greater && p.circle_cmp(hi) == Ordering::Less)
                .cloned(),
        );
        cuts.push(hi.clone());
        cuts.windows(2)
            .map(|w| {
                let mid = ExtRational::new(&w[0].num * &w[1].den + &w[1].num * &w[0].den, &w[0].den * &w[1].den * 2);
                Piece { start: w[0].clone(), end: w[1].clone(), matrix: self.matrix_at(&mid).clone() }
            })
            .collect()
    }

    pub fn fixes_infinity(&self) -> bool {
        self.apply(&ExtRational::infinity()).is_infinite()
    }

    /// Piece table, one `[lo, hi]: (a t + b)/(c t + d)` line per arc.
    pub fn table(&self) -> String {
        self.pieces()
            .iter()
            .map(|p| format!("[{}, {}]: {}\n", p.start, p.end, p.matrix))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.pieces()
                .iter()
                .map(|p| {
                    let e = p.matrix.entries();
                    json!({
                        "start": p.start.to_json(),
                        "end": p.end.to_json(),
                        "matrix": [[big_to_json(e[0]), big_to_json(e[1])], [big_to_json(e[2]), big_to_json(e[3])]],
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Debug for PiecewiseMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.table())
    }
}

/// One of the three generating maps `a`, `b`, `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    A,
    B,
    C,
}

fn m(a: i64, b: i64, c: i64, d: i64) -> ProjMatrix {
    ProjMatrix::new(a, b, c, d).expect("builtin matrices are nonsingular")
}

fn q(n: i64, d: i64) -> ExtRational {
    ExtRational::new(n, d)
}

/// `a(t) = t + 1`; `b` is `t`, `t/(1-t)`, `3 - 1/t`, `t + 1` on
/// `(-∞, 0]`, `[0, 1/2]`, `[1/2, 1]`, `[1, ∞)`; `c` is `2t/(1+t)` on `[0, 1]`
/// and the identity elsewhere.
pub fn builtin_map(g: Builtin) -> PiecewiseMap {
    match g {
        Builtin::A => PiecewiseMap::single(m(1, 1, 0, 1)),
        Builtin::B => PiecewiseMap::new(vec![
            (ExtRational::infinity(), m(1, 0, 0, 1)),
            (q(0, 1), m(1, 0, -1, 1)),
            (q(1, 2), m(3, -1, 1, 0)),
            (q(1, 1), m(1, 1, 0, 1)),
        ])
        .expect("b is continuous"),
        Builtin::C => PiecewiseMap::new(vec![(q(0, 1), m(2, 0, 1, 1)), (q(1, 1), m(1, 0, 0, 1))])
            .expect("c is continuous"),
    }
}

/// Composes `letters` left to right, each a builtin raised to a nonzero power.
pub fn compose_word(letters: &[(Builtin, i64)]) -> PiecewiseMap {
    letters.iter().fold(PiecewiseMap::identity(), |acc, &(g, n)| {
        let base = builtin_map(g);
        let step = if n < 0 { base.invert() } else { base };
        (0..n.unsigned_abs()).fold(acc, |acc, _| acc.compose(&step))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_eval(&w("e"), false), ExtRational::infinity());
        assert_eq!(phi_eval(&w("e"), true), ExtRational::infinity());
        assert_eq!(phi_eval(&w("1"), false), ExtRational::zero());
        assert_eq!(phi_eval(&w("11"), false), ExtRational::one());
        assert_eq!(phi_eval(&w("101"), true), phi_eval(&w("110"), false));
    }

    #[test]
    fn phi_interval_examples() {
        assert_eq!(phi_interval(&w("1")).unwrap(), (ExtRational::zero(), ExtRational::infinity()));
        assert_eq!(phi_interval(&w("10")).unwrap(), (ExtRational::zero(), ExtRational::one()));
        assert_eq!(phi_interval(&w("0")).unwrap(), (ExtRational::infinity(), ExtRational::zero()));
        assert!(phi_interval(&w("e")).is_err());
    }

    #[test]
    fn ext_rational_normalizes() {
        assert_eq!(ExtRational::new(-2, -4), q(1, 2));
        assert_eq!(ExtRational::new(-3, 0), ExtRational::infinity());
        assert_eq!(ExtRational::infinity().recip(), ExtRational::zero());
        assert_eq!(ExtRational::zero().recip(), ExtRational::infinity());
        assert_eq!(q(1, 2).to_string(), "1/2");
    }

    #[test]
    fn matrix_normal_form() {
        assert_eq!(m(0, -1, 1, 0), m(0, 2, -2, 0));
        assert_eq!(m(2, 0, 0, 2), ProjMatrix::identity());
        assert!(ProjMatrix::new(1, 2, 2, 4).is_err());
        assert_eq!(m(2, 0, 0, 1).to_string(), "(2t)/1");
        assert_eq!(m(1, 0, -1, 1).to_string(), "(t)/(-t + 1)");
        assert_eq!(m(3, -1, 1, 0).to_string(), "(3t - 1)/(t)");
    }

    #[test]
    fn builtin_examples() {
        let a = builtin_map(Builtin::A);
        assert_eq!(a.matrices(), &[m(1, 1, 0, 1)]);
        let b = builtin_map(Builtin::B);
        assert_eq!(b.apply(&q(1, 2)), ExtRational::one());
        assert_eq!(m(1, 0, -1, 1).apply(&q(1, 2)), m(3, -1, 1, 0).apply(&q(1, 2)));
        let c = builtin_map(Builtin::C);
        assert_eq!(c.apply(&ExtRational::one()), ExtRational::one());
        assert_eq!(c.apply(&q(1, 3)), q(1, 2));
        assert_eq!(c.apply(&q(-5, 1)), q(-5, 1));
        assert!(a.fixes_infinity() && b.fixes_infinity() && c.fixes_infinity());
    }

    #[test]
    fn inverse_and_identity() {
        let a = builtin_map(Builtin::A);
        assert_eq!(a.compose(&a.invert()), PiecewiseMap::identity());
        assert_eq!(a.invert().matrices(), &[m(1, -1, 0, 1)]);
        assert_eq!(PiecewiseMap::identity().invert(), PiecewiseMap::identity());
        let b = builtin_map(Builtin::B);
        let binv = b.invert();
        for piece in 0..4 {
            for k in 1..=20i64 {
                // rationals inside each arc of b
                let t = match piece {
                    0 => q(-k, 3),
                    1 => q(k, 2 * (k + 1) + 1),
                    2 => q(k + 20, k + 40),
                    _ => q(k + 3, 2),
                };
                assert_eq!(binv.apply(&b.apply(&t)), t, "at {t}");
            }
        }
        assert_eq!(b.compose(&binv), PiecewiseMap::identity());
    }

    #[test]
    fn builtin_compositions_are_continuous_and_fix_infinity() {
        use Builtin::*;
        let words: [&[(Builtin, i64)]; 3] = [&[(B, 1), (C, 1), (A, -1), (C, -1), (A, 1)], &[(A, 1), (B, 1), (A, 1)], &[(C, 3), (B, -2), (A, 5), (C, -1)]];
        for word in words {
            let f = compose_word(word);
            f.check_continuity().unwrap();
            assert!(f.fixes_infinity());
        }
    }

    #[test]
    fn doubling_on_unit_interval() {
        use Builtin::*;
        let f = compose_word(&[(B, 1), (C, 1), (A, -1), (C, -1), (A, 1)]);
        let pieces = f.restrict(&q(0, 1), &q(1, 1));
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].matrix, m(2, 0, 0, 1));
        assert!(f.table().contains("(2t)/1"));
    }

    #[test]
    fn composition_is_associative() {
        use Builtin::*;
        let (a, b, c) = (builtin_map(A), builtin_map(B), builtin_map(C));
        assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        assert_eq!(c.compose(&b.invert()).compose(&a), c.compose(&b.invert().compose(&a)));
    }
}
