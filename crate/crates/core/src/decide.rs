//! The word problem: standard form, sufficient expansion, then either a
//! witness from the Y-part or tree-pair reduction of the X-part.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::action::{apply_generator, evaluate, random_eventually_constant, random_seq, Generator, SWord};
use crate::bcalc::{non_f_witness, Witness};
use crate::diagrams::TreePair;
use crate::error::{Error, Result};
use crate::projective::{builtin_map, phi_of_seq, small_phi_of_seq, Builtin};
use crate::rewrite::{
    nine_relations, relation_instances, sufficiently_expand, to_standard_form_traced, RelationForm, StandardForm,
};
use crate::sequences::{Seq, Word};

/// Sequences drawn for the pointwise cross-check of every verdict.
pub const CROSSCHECK_SAMPLES: usize = 20;
const CROSSCHECK_SEED: u64 = 0x00c0_ffee;

#[derive(Clone, Debug)]
pub struct Verdict {
    pub is_identity: bool,
    pub reduced_form: StandardForm,
    pub witness: Option<Witness>,
    /// For a nontrivial X-word, a sequence it moves.
    pub moved: Option<Seq>,
    pub trace: Option<Vec<String>>,
}

impl Verdict {
    pub fn to_json(&self) -> Value {
        json!({
            "identity": self.is_identity,
            "reduced_form": self.reduced_form.to_string(),
            "x_part": self.reduced_form.x_part().to_string(),
            "y_part": self.reduced_form.y_part().iter().map(|(s, e)| json!([s.to_string(), e])).collect::<Vec<_>>(),
            "witness": self.witness.as_ref().map(|w| json!({"u": w.u.to_string(), "v": w.v.to_string(), "n": w.n})),
            "moved": self.moved.as_ref().map(|s| s.to_string()),
            "trace": self.trace,
        })
    }
}

pub fn decide_identity(w: &SWord) -> Result<Verdict> {
    decide_identity_traced(w, false)
}

pub fn decide_identity_traced(w: &SWord, trace: bool) -> Result<Verdict> {
    let (form, lines) = to_standard_form_traced(w, 0)?;
    let form = sufficiently_expand(&form)?;
    let verdict = if !form.y_part().is_empty() {
        let witness = non_f_witness(&form, false)?;
        Verdict { is_identity: false, reduced_form: form, witness: Some(witness), moved: None, trace: None }
    } else {
        let pair = TreePair::from_xword(form.x_part())?.reduce();
        let moved = if pair.is_trivial() { None } else { Some(moved_sequence(w, &pair)?) };
        Verdict { is_identity: moved.is_none(), reduced_form: form, witness: None, moved, trace: None }
    };
    cross_check(w, &verdict)?;
    Ok(Verdict { trace: trace.then_some(lines), ..verdict })
}

fn moved_sequence(w: &SWord, pair: &TreePair) -> Result<Seq> {
    let tails = ["(0)", "(1)", "(01)", "(001)", "(011)"].map(|s| s.parse::<Seq>().unwrap());
    pair.source
        .members()
        .iter()
        .flat_map(|s| tails.iter().map(move |t| t.prepend(s)))
        .find(|xi| evaluate(w, xi) != *xi)
        .ok_or_else(|| Error::CrossCheck(format!("nontrivial tree pair for {w} moves no test sequence")))
}

fn cross_check(w: &SWord, v: &Verdict) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(CROSSCHECK_SEED);
    for _ in 0..CROSSCHECK_SAMPLES {
        let xi = random_seq(&mut rng, 8, 5);
        let image = evaluate(w, &xi);
        if v.reduced_form.evaluate(&xi) != image {
            return Err(Error::CrossCheck(format!("{} and {w} differ at {xi}", v.reduced_form)));
        }
        if v.is_identity && image != xi {
            return Err(Error::CrossCheck(format!("{w} decided as identity but moves {xi}")));
        }
        if let Some(wit) = &v.witness {
            if !wit.holds_at(w, &xi) {
                return Err(Error::CrossCheck(format!("witness {wit:?} for {w} fails at {xi}")));
            }
        }
    }
    if let Some(wit) = &v.witness {
        if !wit.discriminates(w) {
            return Err(Error::CrossCheck(format!("witness {wit:?} for {w} does not discriminate")));
        }
    }
    if let Some(xi) = &v.moved {
        if evaluate(w, xi) == *xi {
            return Err(Error::CrossCheck(format!("{w} fixes {xi}")));
        }
    }
    Ok(())
}

/// Whether `w1` and `w2` evaluate to the same map.
pub fn equal(w1: &SWord, w2: &SWord) -> Result<bool> {
    Ok(decide_identity(&w1.concat(&w2.inverse()))?.is_identity)
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationResult {
    pub group: String,
    pub index: usize,
    pub lhs: String,
    pub rhs: String,
    pub decided: bool,
    pub sampled: bool,
    pub error: Option<String>,
}

impl RelationResult {
    pub fn passed(&self) -> bool {
        self.decided && self.sampled && self.error.is_none()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub results: Vec<RelationResult>,
}

impl RelationReport {
    pub fn total(&self) -> usize {
        self.results.len()
    }

    pub fn passed(&self) -> usize {
        self.results.iter().filter(|r| r.passed()).count()
    }

    pub fn failures(&self) -> Vec<&RelationResult> {
        self.results.iter().filter(|r| !r.passed()).collect()
    }

    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed())
    }

    /// Counts per group in order of first appearance, then one line per failure.
    pub fn to_text(&self) -> String {
        let mut groups: Vec<(&str, usize, usize)> = Vec::new();
        for r in &self.results {
            match groups.iter_mut().find(|g| g.0 == r.group) {
                Some(g) => {
                    g.1 += 1;
                    g.2 += r.passed() as usize;
                }
                None => groups.push((&r.group, 1, r.passed() as usize)),
            }
        }
        let mut out = String::new();
        for (g, n, p) in groups {
            out.push_str(&format!("{g}: {p}/{n} passed\n"));
        }
        for r in self.failures() {
            out.push_str(&format!(
                "FAIL {} #{}: {} = {} (decided={}, sampled={}{})\n",
                r.group,
                r.index,
                r.lhs,
                r.rhs,
                r.decided,
                r.sampled,
                r.error.as_ref().map(|e| format!(", error: {e}")).unwrap_or_default()
            ));
        }
        out.push_str(&format!("total: {}/{} passed\n", self.passed(), self.total()));
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "total": self.total(),
            "passed": self.passed(),
            "results": serde_json::to_value(&self.results).expect("plain data"),
        })
    }
}

fn check_relation(group: &str, index: usize, lhs: &SWord, rhs: &SWord, samples: usize, seed: u64) -> RelationResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampled = (0..samples).all(|_| {
        let xi = random_seq(&mut rng, 8, 5);
        evaluate(lhs, &xi) == evaluate(rhs, &xi)
    });
    let (decided, error) = match equal(lhs, rhs) {
        Ok(d) => (d, None),
        Err(e) => (false, Some(e.to_string())),
    };
    let show = |w: &SWord| if group.ends_with("(abc)") { w.to_abc_string() } else { w.to_string() };
    RelationResult {
        group: group.to_string(),
        index,
        lhs: show(lhs),
        rhs: show(rhs),
        decided,
        sampled,
        error,
    }
}

/// Decides and samples each `(group, lhs, rhs)`. Instance `i` samples with
/// its own seed derived from `seed` and `i`, so the report does not depend
/// on scheduling.
pub fn verify_relation_list(list: &[(String, SWord, SWord)], samples: usize, seed: u64) -> RelationReport {
    let results = list
        .par_iter()
        .enumerate()
        .map(|(i, (group, lhs, rhs))| {
            let s = seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
            check_relation(group, i, lhs, rhs, samples, s)
        })
        .collect();
    RelationReport { results }
}

/// The five relation families with subscripts up to `bound`, then the
/// nine relations in both notations.
pub fn relation_suite(bound: usize) -> Result<Vec<(String, SWord, SWord)>> {
    let mut list = Vec::new();
    for family in 1..=5u8 {
        for (l, r) in relation_instances(family, bound)? {
            list.push((format!("family {family}"), l, r));
        }
    }
    for (form, name) in [(RelationForm::Xy, "nine (xy)"), (RelationForm::Abc, "nine (abc)")] {
        for (l, r) in nine_relations(form) {
            list.push((name.to_string(), l, r));
        }
    }
    Ok(list)
}

pub fn verify_relations(bound: usize, samples: usize, seed: u64) -> Result<RelationReport> {
    Ok(verify_relation_list(&relation_suite(bound)?, samples, seed))
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PhiReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out: String = self.failures.iter().map(|f| format!("FAIL {f}\n")).collect();
        out.push_str(&format!("{} sequences checked, {} failures\n", self.checked, self.failures.len()));
        out
    }
}

/// `Φ(ξ).g = Φ(ξ.ĝ)` for `a, b, c` against `x, x[1], y[10]`, and
/// `φ(ξ.y) = 2φ(ξ)`, on `count` random eventually constant sequences.
pub fn phi_crosscheck(count: usize, seed: u64) -> PhiReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = [
        (Builtin::A, "a", Generator::x(Word::empty())),
        (Builtin::B, "b", Generator::x("1".parse().unwrap())),
        (Builtin::C, "c", Generator::y("10".parse().unwrap())),
    ]
    .map(|(b, name, g)| (builtin_map(b), name, g));
    let y = Generator::y(Word::empty());
    let mut failures = Vec::new();
    for _ in 0..count {
        let xi = random_eventually_constant(&mut rng, 12);
        let t = phi_of_seq(&xi).expect("eventually constant");
        for (map, name, g) in &pairs {
            for n in [1, -1] {
                let moved = apply_generator(g, n, &xi);
                let want = if n == 1 { map.apply(&t) } else { map.invert().apply(&t) };
                if phi_of_seq(&moved) != Some(want.clone()) {
                    failures.push(format!("{name}^{n} at {xi}: expected {want}, got {:?}", phi_of_seq(&moved)));
                }
            }
        }
        let doubled = small_phi_of_seq(&apply_generator(&y, 1, &xi));
        let want = small_phi_of_seq(&xi).unwrap().mul_int(2);
        if doubled != Some(want.clone()) {
            failures.push(format!("doubling at {xi}: expected {want}, got {doubled:?}"));
        }
    }
    PhiReport { checked: count, failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sw(s: &str) -> SWord {
        s.parse().unwrap()
    }

    #[test]
    fn simple_verdicts() {
        assert!(decide_identity(&SWord::empty()).unwrap().is_identity);
        assert!(decide_identity(&sw("a a^-1")).unwrap().is_identity);
        let c = decide_identity(&sw("c")).unwrap();
        assert!(!c.is_identity);
        assert!(c.witness.is_some());
        let x = decide_identity(&sw("x[1] x^-1")).unwrap();
        assert!(!x.is_identity && x.witness.is_none() && x.moved.is_some());
        let traced = decide_identity_traced(&sw("c a"), true).unwrap();
        assert!(traced.trace.unwrap().iter().all(|l| l.starts_with("rule=")));
    }

    #[test]
    fn equalities() {
        assert!(equal(&sw("a b c"), &sw("a b c")).unwrap());
        assert!(equal(&sw("y"), &sw("x y[0] y[10]^-1 y[11]")).unwrap());
        assert!(!equal(&sw("a"), &sw("b")).unwrap());
    }

    #[test]
    fn relations_small_bound() {
        let report = verify_relations(2, 10, 1).unwrap();
        let families: Vec<_> = report.results.iter().filter(|r| r.group.starts_with("family")).collect();
        assert!(families.iter().all(|r| r.passed()), "{}", report.to_text());
        assert!(report.results.iter().filter(|r| r.group == "nine (xy)").all(|r| r.passed()));
        assert_eq!(report.to_text(), verify_relations(2, 10, 1).unwrap().to_text());
    }

    #[test]
    fn corrupted_relation_fails() {
        let list = vec![("sign flip".to_string(), sw("y[10] x[0]"), sw("x[0]^-1 y[10]"))];
        let report = verify_relation_list(&list, 10, 0);
        assert_eq!(report.passed(), 0);
        assert!(report.to_text().contains("FAIL sign flip #0"));
    }

    #[test]
    fn phi_suite() {
        let r = phi_crosscheck(200, 3);
        assert!(r.passed(), "{}", r.to_text());
    }
}
