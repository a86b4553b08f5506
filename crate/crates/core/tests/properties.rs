//! Property tests across the modules.

use projgroup::action::{
    apply_y, evaluate, partial_apply_finite, partial_apply_x, partial_apply_xword, random_seq, random_sword,
    random_xword, Generator, Letter, SWord,
};
use projgroup::bcalc::{non_f_witness, BSym, BWord};
use projgroup::decide::{decide_identity, phi_crosscheck, verify_relations};
use projgroup::diagrams::TreePair;
use projgroup::projective::{builtin_map, compose_word, phi_eval, small_phi_of_seq, Builtin};
use projgroup::rewrite::{
    conjugating_element, derive_step, f_word, is_sufficiently_expanded, relation_instances,
    sufficiently_expand_with_measures, to_standard_form, Rule, StandardForm,
};
use projgroup::sequences::{minimal_cover, PrefixSet, Seq, Word};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(any::<bool>(), 0..=max).prop_map(Word::from_bits)
}

fn seq() -> impl Strategy<Value = Seq> {
    (word(6), prop::collection::vec(any::<bool>(), 1..=5))
        .prop_map(|(pre, per)| Seq::new(pre, Word::from_bits(per)).unwrap())
}

fn samples(seed: u64, n: usize) -> Vec<Seq> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_seq(&mut rng, 8, 5)).collect()
}

fn sword(seed: u64, len: usize, max_sub: usize) -> SWord {
    random_sword(&mut ChaCha8Rng::seed_from_u64(seed), len, max_sub)
}

fn same_on(a: &SWord, b: &SWord, xs: &[Seq]) -> bool {
    xs.iter().all(|xi| evaluate(a, xi) == evaluate(b, xi))
}

/// Every prefix set with at most `max` members.
fn all_prefix_sets(max: usize) -> Vec<PrefixSet> {
    fn grow(leaves: Vec<Word>, max: usize, out: &mut Vec<Vec<Word>>) {
        out.push(leaves.clone());
        if leaves.len() == max {
            return;
        }
        // Split only leaves at or after the last split point to avoid repeats.
        for i in 0..leaves.len() {
            let mut next = leaves.clone();
            let l = next.remove(i);
            next.push(l.child(false));
            next.push(l.child(true));
            out.push(next.clone());
        }
    }
    let mut frontier = vec![vec![Word::empty()]];
    let mut seen = std::collections::BTreeSet::new();
    while let Some(leaves) = frontier.pop() {
        let mut sorted = leaves.clone();
        sorted.sort();
        if !seen.insert(sorted) || leaves.len() >= max {
            continue;
        }
        let mut next = Vec::new();
        grow(leaves, max, &mut next);
        frontier.extend(next);
    }
    seen.into_iter().map(|m| PrefixSet::new(m).unwrap()).collect()
}

#[test]
fn minimal_cover_is_dominated_by_every_cover() {
    let sets = all_prefix_sets(7);
    assert_eq!(sets.len(), 1 + 1 + 2 + 5 + 14 + 42 + 132);
    let words: Vec<Word> = Word::all_up_to(3).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        use rand::seq::SliceRandom;
        let k = rand::Rng::gen_range(&mut rng, 1..=3);
        let a: Vec<Word> = words.choose_multiple(&mut rng, k).cloned().collect();
        let cover = minimal_cover(&a);
        if cover.len() > 7 {
            continue;
        }
        for p in &sets {
            let covers = a.iter().all(|w| p.members().iter().any(|m| w.is_prefix_of(m)));
            if covers {
                assert!(p.dominates(&cover), "{p} covers {a:?} but does not dominate {cover}");
            }
        }
    }
}

#[test]
fn y_inverse_exhaustive() {
    for per_len in 1..=8 {
        for pre_len in 0..=(8 - per_len) {
            for pre in Word::all_of_length(pre_len) {
                for per in Word::all_of_length(per_len) {
                    let xi = Seq::new(pre.clone(), per).unwrap();
                    assert_eq!(apply_y(&apply_y(&xi, 1), -1), xi);
                    assert_eq!(apply_y(&apply_y(&xi, -1), 1), xi);
                }
            }
        }
    }
}

#[test]
fn x_words_decide_like_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let xs = samples(21, 50);
    let mut identities = 0;
    for i in 0..500 {
        let len = 1 + i % 10;
        let mut w = random_xword(&mut rng, len, 3);
        if i % 5 == 0 {
            // Force some identities.
            w = w.concat(&w.inverse());
        }
        let trivial = TreePair::from_xword(&w).unwrap().is_trivial();
        let fixed = xs.iter().all(|xi| evaluate(&w, xi) == *xi);
        if trivial {
            identities += 1;
            assert!(fixed, "{w} reduces to the trivial pair but moves a sample");
        } else {
            assert!(!fixed || decide_identity(&w).unwrap().moved.is_some(), "{w}");
        }
        assert_eq!(decide_identity(&w).unwrap().is_identity, trivial);
    }
    assert!(identities >= 100);
}

#[test]
fn reports_are_deterministic() {
    assert_eq!(verify_relations(2, 10, 5).unwrap().to_text(), verify_relations(2, 10, 5).unwrap().to_text());
    assert_eq!(
        serde_json::to_string(&phi_crosscheck(50, 6)).unwrap(),
        serde_json::to_string(&phi_crosscheck(50, 6)).unwrap()
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn word_relations_trichotomy(s in word(5), t in word(5)) {
        let cases = [s == t, s.is_proper_prefix_of(&t), t.is_proper_prefix_of(&s), s.is_incompatible(&t)];
        prop_assert_eq!(cases.iter().filter(|&&c| c).count(), 1);
    }

    #[test]
    fn canonical_sequences(a in seq(), b in seq()) {
        let again: Seq = a.to_string().parse().unwrap();
        prop_assert_eq!(&again, &a);
        let n = 4 * (a.preperiod().len() + a.period().len() + b.preperiod().len() + b.period().len());
        prop_assert_eq!(a == b, a.take(n) == b.take(n));
    }

    #[test]
    fn phi_equivariance(prefix in word(12), tail in any::<bool>()) {
        let xi = Seq::eventually_constant(prefix.clone(), tail);
        let t = phi_eval(&prefix, tail);
        for (g, hat) in [
            (Builtin::A, Generator::x(Word::empty())),
            (Builtin::B, Generator::x("1".parse().unwrap())),
            (Builtin::C, Generator::y("10".parse().unwrap())),
        ] {
            let moved = evaluate(&SWord::single(hat, 1), &xi);
            prop_assert_eq!(projgroup::projective::phi_of_seq(&moved).unwrap(), builtin_map(g).apply(&t));
        }
        let doubled = small_phi_of_seq(&apply_y(&xi, 1)).unwrap();
        prop_assert_eq!(doubled, small_phi_of_seq(&xi).unwrap().mul_int(2));
    }

    #[test]
    fn compositions_are_homeomorphisms(seed in any::<u64>(), len in 1usize..8) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let letters: Vec<(Builtin, i64)> = (0..len)
            .map(|_| ([Builtin::A, Builtin::B, Builtin::C][rng.gen_range(0..3)], if rng.gen_bool(0.5) { 1 } else { -1 }))
            .collect();
        let f = compose_word(&letters);
        prop_assert!(f.fixes_infinity());
        let pieces = f.pieces();
        for i in 0..pieces.len() {
            let next = &pieces[(i + 1) % pieces.len()];
            prop_assert_eq!(pieces[i].matrix.apply(&pieces[i].end), next.matrix.apply(&next.start));
        }
        let (a, b) = letters.split_at(len / 2);
        let (b, c) = b.split_at(b.len() / 2);
        let (fa, fb, fc) = (compose_word(a), compose_word(b), compose_word(c));
        prop_assert!(fa.compose(&fb).compose(&fc) == fa.compose(&fb.compose(&fc)));
        prop_assert!(f.compose(&f.invert()) == projgroup::projective::PiecewiseMap::identity());
    }

    #[test]
    fn incompatible_localizations_commute(s in word(4), t in word(4), xi in seq()) {
        prop_assume!(s.is_incompatible(&t));
        let st = SWord::new(vec![Letter::y(s.clone(), 1), Letter::y(t.clone(), 1)]);
        let ts = SWord::new(vec![Letter::y(t, 1), Letter::y(s, 1)]);
        prop_assert_eq!(evaluate(&st, &xi), evaluate(&ts, &xi));
    }

    #[test]
    fn relations_hold_with_long_subscripts(family in 1u8..=5, pick in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let instances = relation_instances(family, 6).unwrap();
        let (l, r) = &instances[pick.index(instances.len())];
        prop_assert!(same_on(l, r, &samples(seed, 50)), "{} = {}", l, r);
    }

    #[test]
    fn partial_action_is_consistent(t in word(6), s in word(4), sign in prop::sample::select(vec![1i64, -1]), tail in seq()) {
        let g = Generator::x(s);
        if let Some(image) = partial_apply_finite(&t, &g, sign).unwrap() {
            let out = evaluate(&SWord::single(g, sign), &tail.prepend(&t));
            prop_assert!(out.starts_with(&image));
        }
    }

    #[test]
    fn derivation_steps_are_sound(seed in any::<u64>(), len in 1usize..8, rule in 0usize..7, pos in 0usize..8) {
        let w = sword(seed, len, 3);
        if let Ok(d) = derive_step(&w, Rule::ALL[rule], pos) {
            prop_assert!(same_on(&w, &d, &samples(seed, 30)), "{} -> {}", w, d);
        }
    }

    #[test]
    fn standard_forms_and_depth(seed in any::<u64>(), len in 1usize..10, depth in 0usize..4) {
        let w = sword(seed, len, 3);
        let f = to_standard_form(&w, depth).unwrap();
        prop_assert!(StandardForm::from_sword(&f.to_sword()).is_ok());
        prop_assert!(f.depth().is_none_or(|d| d >= depth));
        let deeper = to_standard_form(&w, depth + 2).unwrap();
        let xs = samples(seed, 30);
        prop_assert!(xs.iter().all(|xi| f.evaluate(xi) == evaluate(&w, xi) && deeper.evaluate(xi) == f.evaluate(xi)));
    }

    #[test]
    fn sufficient_expansion_terminates(seed in any::<u64>(), len in 1usize..16) {
        let w = sword(seed, len, 3);
        let exp = sufficiently_expand_with_measures(&to_standard_form(&w, 0).unwrap()).unwrap();
        prop_assert!(is_sufficiently_expanded(&exp.form));
        prop_assert!(exp.measures.windows(2).all(|m| m[1].precedes(&m[0])));
        let xs = samples(seed, 20);
        prop_assert!(xs.iter().all(|xi| exp.form.evaluate(xi) == evaluate(&w, xi)));
    }

    #[test]
    fn f_words_and_conjugators(s in word(6), u in word(5), v in word(5)) {
        if !s.is_constant() {
            let f = f_word(&s).unwrap();
            prop_assert_eq!(partial_apply_xword(&"10".parse().unwrap(), &f), Some(s.clone()));
        }
        if u.is_incompatible(&v) && u < v {
            let (g, a, b) = conjugating_element(&u, &v).unwrap();
            prop_assert!(a.len() <= 3 && b.len() <= 3 && a < b);
            prop_assert_eq!(partial_apply_xword(&a, &g), Some(u));
            prop_assert_eq!(partial_apply_xword(&b, &g), Some(v));
        }
    }

    #[test]
    fn x_conjugation_property(seed in any::<u64>(), len in 1usize..6, s in word(4)) {
        let g = random_xword(&mut ChaCha8Rng::seed_from_u64(seed), len, 2);
        if let Some(image) = partial_apply_xword(&s, &g) {
            let lhs = SWord::single(Generator::x(s), 1).concat(&g);
            let rhs = g.concat(&SWord::single(Generator::x(image), 1));
            prop_assert!(same_on(&lhs, &rhs, &samples(seed, 30)));
        }
        let _ = partial_apply_x;
    }

    #[test]
    fn advancing_preserves_limits(syms in prop::collection::vec(0u8..4, 0..10), i in 0usize..10, xi in seq()) {
        let w = BWord { syms: syms.iter().map(|&k| [BSym::Zero, BSym::One, BSym::Y, BSym::YInv][k as usize]).collect() };
        if w.can_advance(i) {
            let a = w.advance(i).unwrap();
            prop_assert_eq!(a.limit(&xi), w.limit(&xi));
            prop_assert_eq!(a.y_count(), w.y_count());
            prop_assert_eq!(a.involution(), w.involution().advance(i).unwrap());
        }
        for j in w.y_positions() {
            prop_assert_eq!(w.has_potential_cancellation(j), w.involution().has_potential_cancellation(j));
        }
        prop_assert_eq!(w.normal_form().limit(&xi), w.limit(&xi));
    }

    #[test]
    fn witnesses_satisfy_their_equation(seed in any::<u64>(), len in 1usize..10) {
        let w = sword(seed, len, 3);
        let f = sufficiently_expand_with_measures(&to_standard_form(&w, 0).unwrap()).unwrap().form;
        if !f.y_part().is_empty() {
            let wit = non_f_witness(&f, false).unwrap();
            prop_assert!(wit.n >= 1);
            for xi in samples(seed, 50) {
                prop_assert!(wit.holds_at(&w, &xi));
            }
        }
    }

    #[test]
    fn verdicts_are_sound(seed in any::<u64>(), len in 1usize..12) {
        let w = sword(seed, len, 3);
        let v = decide_identity(&w).unwrap();
        let xs = samples(seed ^ 1, 20);
        prop_assert!(xs.iter().all(|xi| v.reduced_form.evaluate(xi) == evaluate(&w, xi)));
        if v.is_identity {
            prop_assert!(xs.iter().all(|xi| evaluate(&w, xi) == *xi));
            prop_assert!(v.witness.is_none());
        } else if !v.reduced_form.y_part().is_empty() {
            prop_assert!(v.witness.as_ref().unwrap().discriminates(&w));
        }
    }
}
