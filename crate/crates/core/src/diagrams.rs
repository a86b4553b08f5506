//! Labeled tree diagrams and unlabeled tree pairs.
//!
//! A labeled tree is a finite binary tree with an integer at every vertex.
//! Reading a leaf from the root and writing `y^n` after each vertex labeled
//! `n` gives a B-word; a diagram `S → T` sends `lim s_i ξ` to `lim t_i ξ`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::Rng;

use crate::action::{apply_generator, partial_apply_x, partial_apply_xword, random_xword, Generator, Letter, SWord};
use crate::bcalc::{BSym, BWord};
use crate::error::{Error, Result};
use crate::rewrite::{to_standard_form, StandardForm};
use crate::sequences::{minimal_cover, PrefixSet, Seq, Word};

fn is_vertex(leaves: &PrefixSet, v: &Word) -> bool {
    leaves.members().iter().any(|l| v.is_prefix_of(l))
}

fn is_internal(leaves: &PrefixSet, v: &Word) -> bool {
    leaves.members().iter().any(|l| v.is_proper_prefix_of(l))
}

fn split_leaf(leaves: &PrefixSet, i: usize) -> PrefixSet {
    let mut m = leaves.members().to_vec();
    let leaf = m.remove(i);
    m.push(leaf.child(false));
    m.push(leaf.child(true));
    PrefixSet::new(m).expect("splitting a leaf keeps a prefix set")
}

/// An unlabeled tree pair `D → R` describing an element of F: the `i`-th
/// leaf of `D` followed by `η` goes to the `i`-th leaf of `R` followed by `η`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreePair {
    pub source: PrefixSet,
    pub target: PrefixSet,
}

impl TreePair {
    pub fn new(source: PrefixSet, target: PrefixSet) -> Result<TreePair> {
        if source.len() != target.len() {
            return Err(Error::Diagram(format!("{source} and {target} have different leaf counts")));
        }
        Ok(TreePair { source, target })
    }

    pub fn trivial() -> TreePair {
        TreePair { source: PrefixSet::trivial(), target: PrefixSet::trivial() }
    }

    /// The pair of an X-word: leaves are split until the word acts on each
    /// of them as a prefix replacement.
    pub fn from_xword(w: &SWord) -> Result<TreePair> {
        if !w.is_x_word() {
            return Err(Error::InvalidArgument(format!("{w} is not an X-word")));
        }
        let mut source = PrefixSet::trivial();
        loop {
            let undefined = source
                .members()
                .iter()
                .position(|s| partial_apply_xword(s, w).is_none());
            match undefined {
                Some(i) => source = split_leaf(&source, i),
                None => break,
            }
        }
        let images: Vec<Word> = source
            .members()
            .iter()
            .map(|s| partial_apply_xword(s, w).unwrap())
            .collect();
        let target = PrefixSet::new(images.clone())?;
        if target.members() != images.as_slice() {
            return Err(Error::Diagram(format!("{w} does not preserve leaf order")));
        }
        Ok(TreePair { source, target })
    }

    /// Collapses common carets until none remain.
    pub fn reduce(&self) -> TreePair {
        let mut d = self.source.members().to_vec();
        let mut r = self.target.members().to_vec();
        let siblings = |a: &Word, b: &Word| {
            let (mut a, mut b) = (a.clone(), b.clone());
            a.last() == Some(false) && b.last() == Some(true) && {
                a.pop();
                b.pop();
                a == b
            }
        };
        'outer: loop {
            for i in 0..d.len().saturating_sub(1) {
                if siblings(&d[i], &d[i + 1]) && siblings(&r[i], &r[i + 1]) {
                    for v in [&mut d, &mut r] {
                        v.remove(i + 1);
                        v[i].pop();
                    }
                    continue 'outer;
                }
            }
            break;
        }
        TreePair {
            source: PrefixSet::new(d).unwrap(),
            target: PrefixSet::new(r).unwrap(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.reduce() == TreePair::trivial()
    }

    pub fn inverse(&self) -> TreePair {
        TreePair { source: self.target.clone(), target: self.source.clone() }
    }

    /// An X-word evaluating to the pair: rotate the source to the right vine,
    /// then undo the rotation of the target.
    pub fn to_xword(&self) -> SWord {
        let to_vine = |t: &PrefixSet| {
            let mut leaves = t.members().to_vec();
            let mut word = SWord::empty();
            loop {
                let current = PrefixSet::new(leaves.clone()).unwrap();
                let Some(p) = current
                    .internal_vertices()
                    .into_iter()
                    .find(|p| is_internal(&current, &p.child(false)))
                else {
                    break;
                };
                leaves = leaves
                    .iter()
                    .map(|l| partial_apply_x(l, &p, 1).expect("rotation is defined on leaves"))
                    .collect();
                word.push(Letter::x(p, 1));
            }
            word
        };
        to_vine(&self.source).concat(&to_vine(&self.target).inverse())
    }

    pub fn evaluate(&self, seq: &Seq) -> Seq {
        let (i, rest) = self.source.locate(seq);
        rest.prepend(&self.target.members()[i])
    }
}

/// A binary tree with an integer label at every vertex; zero labels are not
/// stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledTree {
    pub leaves: PrefixSet,
    pub labels: BTreeMap<Word, i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

impl LabeledTree {
    pub fn new(leaves: PrefixSet, labels: impl IntoIterator<Item = (Word, i64)>) -> Result<LabeledTree> {
        let labels: BTreeMap<Word, i64> = labels.into_iter().filter(|&(_, n)| n != 0).collect();
        if let Some(v) = labels.keys().find(|v| !is_vertex(&leaves, v)) {
            return Err(Error::Diagram(format!("{v} is not a vertex of {leaves}")));
        }
        Ok(LabeledTree { leaves, labels })
    }

    pub fn unlabeled(leaves: PrefixSet) -> LabeledTree {
        LabeledTree { leaves, labels: BTreeMap::new() }
    }

    pub fn label(&self, v: &Word) -> i64 {
        self.labels.get(v).copied().unwrap_or(0)
    }

    pub fn is_unlabeled(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label_sum(&self) -> i64 {
        self.labels.values().sum()
    }

    /// Vertices in preorder.
    pub fn vertices(&self) -> Vec<Word> {
        let mut out = Vec::new();
        let mut stack = vec![Word::empty()];
        while let Some(v) = stack.pop() {
            if is_internal(&self.leaves, &v) {
                stack.push(v.child(true));
                stack.push(v.child(false));
            }
            out.push(v);
        }
        out
    }

    /// The B-word of a leaf.
    pub fn leaf_bword(&self, leaf: &Word) -> BWord {
        let mut syms = Vec::new();
        for i in 0..=leaf.len() {
            syms.extend(BWord::y_power(self.label(&leaf.restrict(i))).syms);
            if i < leaf.len() {
                syms.push(if leaf.bit(i) { BSym::One } else { BSym::Zero });
            }
        }
        BWord { syms }
    }

    pub fn leaf_bwords(&self) -> Vec<BWord> {
        self.leaves.members().iter().map(|l| self.leaf_bword(l)).collect()
    }

    /// Reads a tree back from the B-words of its leaves. Words sharing a
    /// binary prefix must carry the same labels along it.
    pub fn from_bwords(words: &[BWord]) -> Result<LabeledTree> {
        let mut leaves = Vec::new();
        let mut labels: BTreeMap<Word, i64> = BTreeMap::new();
        for w in words {
            let mut at = Word::empty();
            let mut here: BTreeMap<Word, i64> = BTreeMap::new();
            for &s in &w.syms {
                match s {
                    BSym::Zero => at.push(false),
                    BSym::One => at.push(true),
                    BSym::Y => *here.entry(at.clone()).or_default() += 1,
                    BSym::YInv => *here.entry(at.clone()).or_default() -= 1,
                }
            }
            for i in 0..=at.len() {
                let v = at.restrict(i);
                let n = here.get(&v).copied().unwrap_or(0);
                match labels.get(&v) {
                    Some(&m) if m != n => {
                        return Err(Error::Diagram(format!("inconsistent labels at {v} in {w}")))
                    }
                    _ => {
                        labels.insert(v, n);
                    }
                }
            }
            leaves.push(at);
        }
        if leaves.len() != words.len() {
            return Err(Error::Diagram("duplicate leaves".into()));
        }
        LabeledTree::new(PrefixSet::new(leaves)?, labels)
    }

    /// `lim` of the `i`-th leaf followed by `tail`.
    pub fn lim(&self, i: usize, tail: &Seq) -> Seq {
        self.leaf_bword(&self.leaves.members()[i]).limit(tail)
    }

    /// The leaf index `i` and tail `η` with `lim(s_i η) = seq`.
    pub fn locate(&self, seq: &Seq) -> (usize, Seq) {
        let mut v = Word::empty();
        let mut cur = seq.clone();
        loop {
            cur = apply_generator(&Generator::y(Word::empty()), -self.label(&v), &cur);
            if let Some(i) = self.leaves.members().iter().position(|l| *l == v) {
                return (i, cur);
            }
            v.push(cur.digit(0));
            cur = cur.drop_front(1);
        }
    }

    /// Rotates at `p`. Moving right needs `p0` internal and unlabeled; the
    /// labels become `m-1` at `p`, `+1` on the subtree root moving up from
    /// `p00`, `-1` on the one moving from `p01` to `p10` and `+1` on the one
    /// moving down from `p1`. Moving left is the inverse.
    pub fn vertex_move(&self, p: &Word, dir: Direction) -> Result<LabeledTree> {
        let (pivot, parts): (Word, [(&str, &str, i64); 3]) = match dir {
            Direction::Right => (p.child(false), [("00", "0", 1), ("01", "10", -1), ("1", "11", 1)]),
            Direction::Left => (p.child(true), [("0", "00", -1), ("10", "01", 1), ("11", "1", -1)]),
        };
        if !is_internal(&self.leaves, &pivot) {
            return Err(Error::Diagram(format!("{pivot} is not an internal vertex")));
        }
        if self.label(&pivot) != 0 {
            return Err(Error::Diagram(format!("{pivot} is labeled {}", self.label(&pivot))));
        }
        let parts: Vec<(Word, Word, i64)> =
            parts.iter().map(|&(f, t, d)| (p.extend_str(f), p.extend_str(t), d)).collect();
        let remap = |v: &Word| {
            parts.iter().find_map(|(from, to, _)| v.strip_prefix(from).map(|rest| to.concat(&rest)))
        };
        let leaves: Vec<Word> = self
            .leaves
            .members()
            .iter()
            .map(|l| remap(l).unwrap_or_else(|| l.clone()))
            .collect();
        let mut labels: BTreeMap<Word, i64> = BTreeMap::new();
        for (v, &n) in &self.labels {
            let w = if v == p || !p.is_prefix_of(v) { v.clone() } else { remap(v).expect("below the pivot") };
            labels.insert(w, n);
        }
        let shift = if dir == Direction::Right { -1 } else { 1 };
        *labels.entry(p.clone()).or_default() += shift;
        for (_, to, d) in &parts {
            *labels.entry(to.clone()).or_default() += d;
        }
        LabeledTree::new(PrefixSet::new(leaves)?, labels)
    }

    fn insert_caret(&self, i: usize) -> LabeledTree {
        LabeledTree { leaves: split_leaf(&self.leaves, i), labels: self.labels.clone() }
    }

    fn add_to_leaf(&mut self, i: usize, delta: i64) {
        let leaf = self.leaves.members()[i].clone();
        let n = self.label(&leaf) + delta;
        if n == 0 {
            self.labels.remove(&leaf);
        } else {
            self.labels.insert(leaf, n);
        }
    }

    /// A standard Y-word for the labels, deeper vertices first, so that it
    /// maps `s_i η` to `lim s_i η`.
    pub fn y_word(&self) -> SWord {
        let mut entries: Vec<(&Word, &i64)> = self.labels.iter().collect();
        entries.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(b.0)));
        SWord::new(entries.into_iter().map(|(v, &n)| Letter::y(v.clone(), n)).collect())
    }
}

/// A pair of labeled trees with the same number of leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledTreeDiagram {
    pub source: LabeledTree,
    pub target: LabeledTree,
}

impl LabeledTreeDiagram {
    pub fn new(source: LabeledTree, target: LabeledTree) -> Result<LabeledTreeDiagram> {
        if source.leaves.len() != target.leaves.len() {
            return Err(Error::Diagram(format!(
                "source has {} leaves, target has {}",
                source.leaves.len(),
                target.leaves.len()
            )));
        }
        Ok(LabeledTreeDiagram { source, target })
    }

    pub fn identity() -> LabeledTreeDiagram {
        LabeledTreeDiagram::from_pair(&TreePair::trivial())
    }

    pub fn from_pair(pair: &TreePair) -> LabeledTreeDiagram {
        LabeledTreeDiagram {
            source: LabeledTree::unlabeled(pair.source.clone()),
            target: LabeledTree::unlabeled(pair.target.clone()),
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.source.leaves.len()
    }

    pub fn inverse(&self) -> LabeledTreeDiagram {
        LabeledTreeDiagram { source: self.target.clone(), target: self.source.clone() }
    }

    pub fn shape(&self) -> TreePair {
        TreePair { source: self.source.leaves.clone(), target: self.target.leaves.clone() }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.leaf_count() {
            return Err(Error::Diagram(format!("leaf {i} out of range, diagram has {}", self.leaf_count())));
        }
        Ok(())
    }

    /// Puts a caret below the `i`-th leaf on both sides.
    pub fn insert_caret(&self, i: usize) -> Result<LabeledTreeDiagram> {
        self.check_index(i)?;
        Ok(LabeledTreeDiagram { source: self.source.insert_caret(i), target: self.target.insert_caret(i) })
    }

    /// Adds `delta` to the labels of the `i`-th leaves on both sides.
    pub fn increment_labels(&self, i: usize, delta: i64) -> Result<LabeledTreeDiagram> {
        self.check_index(i)?;
        let mut d = self.clone();
        d.source.add_to_leaf(i, delta);
        d.target.add_to_leaf(i, delta);
        Ok(d)
    }

    /// Refines the chosen side until every word in `words` is a vertex.
    fn refine(&self, words: &[Word], on_target: bool) -> LabeledTreeDiagram {
        let mut d = self.clone();
        loop {
            let side = if on_target { &d.target } else { &d.source };
            let split = words.iter().find_map(|w| {
                side.leaves.members().iter().position(|l| l.is_proper_prefix_of(w))
            });
            match split {
                Some(i) => d = d.insert_caret(i).unwrap(),
                None => return d,
            }
        }
    }
}

pub fn diagram_eval(d: &LabeledTreeDiagram, seq: &Seq) -> Seq {
    let (i, tail) = d.source.locate(seq);
    d.target.lim(i, &tail)
}

/// The diagram of a standard form: the tree pair of the X-part, refined so
/// that every Y-subscript is a target vertex, with the exponents as labels.
pub fn word_to_diagram(form: &StandardForm) -> LabeledTreeDiagram {
    let pair = TreePair::from_xword(form.x_part()).expect("X-part of a standard form");
    let keys: Vec<Word> = minimal_cover(form.y_part().keys()).members().to_vec();
    let mut d = LabeledTreeDiagram::from_pair(&pair).refine(&keys, true);
    d.target.labels = form.y_part().clone();
    d
}

/// `Y_S⁻¹ · X · Y_T` for source labels `Y_S`, the unlabeled pair `X` and
/// target labels `Y_T`.
pub fn diagram_to_word(d: &LabeledTreeDiagram) -> SWord {
    d.source
        .y_word()
        .inverse()
        .concat(&d.shape().to_xword())
        .concat(&d.target.y_word())
}

/// `d1` followed by `d2`. Carets and leaf label shifts are used to make the
/// target of `d1` agree with the source of `d2`; when an internal label is in
/// the way the product goes through words instead.
pub fn compose_diagrams(d1: &LabeledTreeDiagram, d2: &LabeledTreeDiagram) -> LabeledTreeDiagram {
    compose_direct(d1, d2).unwrap_or_else(|| compose_via_words(d1, d2))
}

pub fn compose_via_words(d1: &LabeledTreeDiagram, d2: &LabeledTreeDiagram) -> LabeledTreeDiagram {
    let w = diagram_to_word(d1).concat(&diagram_to_word(d2));
    word_to_diagram(&to_standard_form(&w, 0).expect("standard form of a diagram word"))
}

fn compose_direct(d1: &LabeledTreeDiagram, d2: &LabeledTreeDiagram) -> Option<LabeledTreeDiagram> {
    let (mut a, mut b) = (d1.clone(), d2.clone());
    loop {
        // A target leaf of `a` that is internal in the source of `b`, or the reverse.
        let la = a.target.leaves.members().iter().position(|l| is_internal(&b.source.leaves, l));
        if let Some(i) = la {
            let l = a.target.leaves.members()[i].clone();
            a = a.increment_labels(i, b.source.label(&l) - a.target.label(&l)).ok()?.insert_caret(i).ok()?;
            continue;
        }
        let lb = b.source.leaves.members().iter().position(|l| is_internal(&a.target.leaves, l));
        if let Some(i) = lb {
            let l = b.source.leaves.members()[i].clone();
            b = b.increment_labels(i, a.target.label(&l) - b.source.label(&l)).ok()?.insert_caret(i).ok()?;
            continue;
        }
        break;
    }
    for i in 0..b.leaf_count() {
        let l = b.source.leaves.members()[i].clone();
        b = b.increment_labels(i, a.target.label(&l) - b.source.label(&l)).ok()?;
    }
    if a.target != b.source {
        return None;
    }
    Some(LabeledTreeDiagram { source: a.source, target: b.target })
}

/// The reduced tree pair of an unlabeled diagram.
pub fn reduce_f_diagram(d: &LabeledTreeDiagram) -> Result<TreePair> {
    if !d.source.is_unlabeled() || !d.target.is_unlabeled() {
        return Err(Error::Diagram("labeled diagram".into()));
    }
    Ok(d.shape().reduce())
}

/// The caret pair with target leaves labeled `-1` and `1`; under the
/// coordinate map it is `t ↦ 2t`.
pub fn doubling_diagram() -> LabeledTreeDiagram {
    let caret = PrefixSet::new(vec![Word::constant(false, 1), Word::constant(true, 1)]).unwrap();
    LabeledTreeDiagram {
        source: LabeledTree::unlabeled(caret.clone()),
        target: LabeledTree::new(caret, [(Word::constant(false, 1), -1), (Word::constant(true, 1), 1)]).unwrap(),
    }
}

/// A diagram built from a random X-word with random labels at its vertices.
pub fn random_diagram<R: Rng + ?Sized>(rng: &mut R, len: usize, max_label: i64) -> LabeledTreeDiagram {
    let pair = TreePair::from_xword(&random_xword(rng, len, 2)).expect("X-word");
    let mut d = LabeledTreeDiagram::from_pair(&pair);
    for tree in [&mut d.source, &mut d.target] {
        for v in tree.vertices() {
            if rng.gen_bool(0.4) {
                let n = rng.gen_range(-max_label..=max_label);
                if n != 0 {
                    tree.labels.insert(v, n);
                }
            }
        }
    }
    d
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Dot,
}

impl std::str::FromStr for RenderFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<RenderFormat> {
        match s {
            "ascii" => Ok(RenderFormat::Ascii),
            "dot" => Ok(RenderFormat::Dot),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?}, expected ascii or dot"))),
        }
    }
}

fn label_text(n: i64) -> String {
    match n {
        0 => String::new(),
        1 => "•".into(),
        -1 => "∘".into(),
        _ => n.to_string(),
    }
}

fn render_ascii(d: &LabeledTreeDiagram) -> String {
    let mut out = String::new();
    for (name, tree) in [("source", &d.source), ("target", &d.target)] {
        let _ = writeln!(out, "{name}:");
        for v in tree.vertices() {
            let mark = if is_internal(&tree.leaves, &v) { '+' } else { '-' };
            let indent = "  ".repeat(v.len() + 1);
            let label = label_text(tree.label(&v));
            let _ = writeln!(out, "{indent}{mark} {v}{}{label}", if label.is_empty() { "" } else { " " });
        }
    }
    out
}

fn render_dot(d: &LabeledTreeDiagram) -> String {
    let mut out = String::from("digraph diagram {\n  node [shape=circle, width=0.3];\n");
    for (prefix, name, tree) in [("s", "source", &d.source), ("t", "target", &d.target)] {
        let _ = writeln!(out, "  subgraph cluster_{name} {{\n    label=\"{name}\";");
        let id = |v: &Word| format!("{prefix}_{v}");
        for v in tree.vertices() {
            let n = tree.label(&v);
            let _ = writeln!(out, "    {} [label=\"{}\", vlabel={n}];", id(&v), label_text(n));
        }
        for v in tree.vertices() {
            if is_internal(&tree.leaves, &v) {
                for b in [false, true] {
                    let _ = writeln!(out, "    {} -> {};", id(&v), id(&v.child(b)));
                }
            }
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

pub fn render(d: &LabeledTreeDiagram, format: RenderFormat) -> String {
    match format {
        RenderFormat::Ascii => render_ascii(d),
        RenderFormat::Dot => render_dot(d),
    }
}
