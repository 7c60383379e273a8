//! Planar decorated rooted trees and forests.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lincomb::{factorial, Basis, LinComb};
use crate::word::{words_from_letter_table, Alphabet, Letter, Word};
use crate::wordhopf::shuffle_lincomb;

/// A node decoration. Equality and order use the id only.
#[derive(Clone)]
pub struct Color {
    id: u16,
    label: Arc<str>,
}

impl Color {
    /// A throwaway root used when a tree is built only to be taken apart again.
    pub(crate) fn scratch() -> Self {
        Self { id: u16::MAX, label: Arc::from("*") }
    }

    pub fn id(&self) -> u16 {
        self.id
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl PartialEq for Color {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for Color {}

impl Hash for Color {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.id.hash(state);
    }
}

impl PartialOrd for Color {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Color {
    fn cmp(&self, other: &Self) -> Ordering {
        self.id.cmp(&other.id)
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl fmt::Debug for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// The finite set of colors `C`; every color has grading 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorSet {
    colors: Vec<Color>,
}

impl Default for ColorSet {
    fn default() -> Self {
        Self::new(["o"]).expect("default color set")
    }
}

impl ColorSet {
    /// Labels must be unique, non-empty, not `1`, and free of whitespace and brackets.
    pub fn new<S: AsRef<str>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut colors: Vec<Color> = Vec::new();
        for label in labels {
            let label = label.as_ref();
            if label.is_empty() || label == "1" || label.chars().any(|c| c.is_whitespace() || c == '[' || c == ']') {
                return Err(Error::InvalidColors(format!("bad label `{label}`")));
            }
            if colors.iter().any(|c| &*c.label == label) {
                return Err(Error::InvalidColors(format!("duplicate label `{label}`")));
            }
            let id = u16::try_from(colors.len()).map_err(|_| Error::InvalidColors("too many colors".into()))?;
            colors.push(Color { id, label: Arc::from(label) });
        }
        if colors.is_empty() {
            return Err(Error::InvalidColors("empty color set".into()));
        }
        Ok(Self { colors })
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn by_label(&self, label: &str) -> Result<Color> {
        self.colors.iter().find(|c| &*c.label == label).cloned().ok_or_else(|| Error::UnknownColor(label.to_string()))
    }

    pub fn by_id(&self, id: u16) -> Result<Color> {
        self.colors.get(id as usize).cloned().ok_or_else(|| Error::UnknownColor(format!("#{id}")))
    }

    /// The first color, used where a single default color is needed.
    pub fn first(&self) -> Color {
        self.colors[0].clone()
    }

    /// Trees and forests of every degree `0..=n`, each group sorted.
    pub fn tables(&self, n: usize) -> (Vec<Vec<Tree>>, Vec<Vec<Forest>>) {
        let mut trees: Vec<Vec<Tree>> = vec![Vec::new()];
        let mut forests: Vec<Vec<Forest>> = vec![vec![Forest::empty()]];
        for m in 1..=n {
            let mut level: Vec<Tree> = Vec::new();
            for c in &self.colors {
                for f in &forests[m - 1] {
                    level.push(Tree::new(c.clone(), f.clone()));
                }
            }
            level.sort();
            trees.push(level);
            forests = words_from_letter_table(&trees, m);
        }
        (trees, forests)
    }

    /// Every forest of degree `≤ n`, in canonical order.
    pub fn forests_up_to(&self, n: usize) -> Vec<Forest> {
        self.tables(n).1.into_iter().flatten().collect()
    }

    pub fn parse(&self, text: &str) -> Result<Forest> {
        Parser { text, pos: 0, colors: self }.forest_input()
    }

    pub fn parse_tree(&self, text: &str) -> Result<Tree> {
        let f = self.parse(text)?;
        match f.len() {
            1 => Ok(f.letters()[0].clone()),
            k => Err(Error::NotATree(k)),
        }
    }

    pub fn forest_from_json(&self, value: &Value) -> Result<Forest> {
        let arr = value.as_array().ok_or_else(|| Error::Malformed("forest must be an array".into()))?;
        arr.iter().map(|t| self.tree_from_json(t)).collect()
    }

    pub fn tree_from_json(&self, value: &Value) -> Result<Tree> {
        let bad = || Error::Malformed("tree must be [colorId, [children]]".into());
        let pair = value.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
        let id = pair[0].as_u64().and_then(|v| u16::try_from(v).ok()).ok_or_else(bad)?;
        Ok(Tree::new(self.by_id(id)?, self.forest_from_json(&pair[1])?))
    }
}

impl Alphabet for ColorSet {
    type Letter = Tree;

    fn letters_of_degree(&self, d: usize) -> Vec<Tree> {
        self.tables(d).0.pop().unwrap_or_default()
    }

    fn words_up_to(&self, n: usize) -> Vec<Vec<Forest>> {
        self.tables(n).1
    }
}

/// All forests with `|ω| = n`, ordered by [`Forest`]'s canonical order.
pub fn enumerate_forests(n: usize, colors: &ColorSet) -> Vec<Forest> {
    colors.words_of_degree(n)
}

/// A planar rooted tree `B⁺_c(ω)`.
///
/// Ordered by size, then root color, then the forest of branches.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    size: usize,
    root: Color,
    children: Forest,
}

/// A word of trees; the empty forest is `𝟙`.
pub type Forest = Word<Tree>;

impl Tree {
    pub fn new(root: Color, children: Forest) -> Self {
        Self { size: children.degree() + 1, root, children }
    }

    pub fn leaf(root: Color) -> Self {
        Self::new(root, Forest::empty())
    }

    pub fn root(&self) -> &Color {
        &self.root
    }

    pub fn children(&self) -> &Forest {
        &self.children
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Representative of the non-planar class: branches recursively sorted.
    pub fn canonical(&self) -> Tree {
        let mut kids: Vec<Tree> = self.children.letters().iter().map(Tree::canonical).collect();
        kids.sort();
        Tree::new(self.root.clone(), Forest::new(kids))
    }

    /// The JSON form `[colorId, [children…]]`.
    pub fn to_json(&self) -> Value {
        json!([self.root.id, self.children.to_json()])
    }
}

impl Basis for Tree {
    fn degree(&self) -> usize {
        self.size
    }
}

impl Letter for Tree {
    fn separator(_letters: &[Self]) -> &'static str {
        " "
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size
            .cmp(&other.size)
            .then_with(|| self.root.cmp(&other.root))
            .then_with(|| self.children.cmp(&other.children))
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.root)?;
        if !self.children.is_empty() {
            write!(f, "[{}]", self.children)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Word<Tree> {
    /// `|ω|`, the total number of nodes.
    pub fn size(&self) -> usize {
        self.degree()
    }

    pub fn trees(&self) -> &[Tree] {
        self.letters()
    }

    pub fn from_tree(t: Tree) -> Self {
        Word::single(t)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.trees().iter().map(Tree::to_json).collect())
    }

    /// Representative of the non-planar class.
    pub fn canonical(&self) -> Forest {
        let mut trees: Vec<Tree> = self.trees().iter().map(Tree::canonical).collect();
        trees.sort();
        Forest::new(trees)
    }
}

/// `Ω(ω)`: forget planarity by shuffling trees and, recursively, branches.
pub fn symmetrize(forest: &Forest) -> LinComb<Forest> {
    let mut acc = LinComb::basis(Forest::empty());
    for t in forest.trees() {
        let sym_tree = symmetrize(t.children()).map_basis(|kids| Forest::from_tree(Tree::new(t.root().clone(), kids.clone())));
        acc = shuffle_lincomb(&acc, &sym_tree);
    }
    acc
}

/// `ω₁ ∼ ω₂`, i.e. `Ω(ω₁) = Ω(ω₂)`.
pub fn equivalent(a: &Forest, b: &Forest) -> bool {
    a.canonical() == b.canonical()
}

/// Symmetry factor of the non-planar class of a forest.
pub fn sigma(forest: &Forest) -> BigInt {
    let canon = forest.canonical();
    group_factor(canon.trees())
}

fn tree_sigma(tree: &Tree) -> BigInt {
    group_factor(tree.children().trees())
}

/// `Π σ(τᵢ)^{mᵢ} mᵢ!` over a sorted list of canonical trees.
fn group_factor(sorted: &[Tree]) -> BigInt {
    let mut counts: BTreeMap<&Tree, usize> = BTreeMap::new();
    for t in sorted {
        *counts.entry(t).or_default() += 1;
    }
    counts.into_iter().fold(BigInt::one(), |acc, (t, m)| acc * tree_sigma(t).pow(m as u32) * factorial(m))
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    colors: &'a ColorSet,
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn forest_input(mut self) -> Result<Forest> {
        self.skip_ws();
        if self.text[self.pos..].trim_end() == "1" {
            return Ok(Forest::empty());
        }
        let f = self.forest()?;
        self.skip_ws();
        match self.peek() {
            None => Ok(f),
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
        }
    }

    fn forest(&mut self) -> Result<Forest> {
        let mut trees = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(']') => break,
                Some('[') => return Err(self.err("expected a color label before `[`")),
                Some(_) => trees.push(self.tree()?),
            }
        }
        Ok(Forest::new(trees))
    }

    fn tree(&mut self) -> Result<Tree> {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_whitespace() || c == '[' || c == ']' {
                break;
            }
            self.pos += c.len_utf8();
        }
        let label = &self.text[start..self.pos];
        if label.is_empty() {
            return Err(self.err("expected a color label"));
        }
        let root = self.colors.by_label(label)?;
        let children = if self.peek() == Some('[') {
            self.pos += 1;
            let kids = self.forest()?;
            if self.peek() != Some(']') {
                return Err(self.err("expected `]`"));
            }
            self.pos += 1;
            kids
        } else {
            Forest::empty()
        };
        Ok(Tree::new(root, children))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn one() -> ColorSet {
        ColorSet::default()
    }

    fn p(s: &str) -> Forest {
        one().parse(s).unwrap()
    }

    fn catalan_oracle(n: usize, memo: &mut Vec<Option<u64>>) -> u64 {
        // forests on n nodes: first tree has k nodes (its branches a forest on k-1)
        if let Some(v) = memo[n] {
            return v;
        }
        let v = if n == 0 { 1 } else { (1..=n).map(|k| catalan_oracle(k - 1, memo) * catalan_oracle(n - k, memo)).sum() };
        memo[n] = Some(v);
        v
    }

    #[test]
    fn parse_examples() {
        assert_eq!(p(""), Forest::empty());
        assert_eq!(p("1"), Forest::empty());
        let t = p("o[o o]");
        assert_eq!((t.size(), t.len()), (3, 1));
        let f = p("o o[o]");
        assert_eq!((f.size(), f.len()), (3, 2));
        assert_eq!(p("  o[ o   o ]  o").to_string(), "o[o o] o");
    }

    #[test]
    fn parse_errors_carry_offsets() {
        assert_eq!(one().parse("o[o x]"), Err(Error::UnknownColor("x".into())));
        match one().parse("o[o") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("{other:?}"),
        }
        assert!(one().parse("o]").is_err());
        assert!(one().parse("[o]").is_err());
    }

    #[test]
    fn catalan_counts() {
        let mut memo = vec![None; 8];
        let tables = one().tables(7).1;
        for (n, level) in tables.iter().enumerate() {
            assert_eq!(level.len() as u64, catalan_oracle(n, &mut memo), "n={n}");
            let mut sorted = level.clone();
            sorted.dedup();
            assert_eq!(sorted.len(), level.len());
        }
        assert_eq!(enumerate_forests(3, &one()).len(), 5);
        assert_eq!(enumerate_forests(4, &one()).len(), 14);
        let two = ColorSet::new(["a", "b"]).unwrap();
        assert_eq!(enumerate_forests(3, &two).len(), 5 * 8);
    }

    #[test]
    fn print_parse_roundtrip_and_grading() {
        let two = ColorSet::new(["a", "b"]).unwrap();
        for set in [one(), two] {
            let all = set.forests_up_to(5);
            for f in &all {
                assert_eq!(&set.parse(&f.to_string()).unwrap(), f);
                assert_eq!(&set.forest_from_json(&f.to_json()).unwrap(), f);
            }
        }
        let all = one().forests_up_to(3);
        for a in &all {
            for b in &all {
                let ab = a.concat(b);
                assert_eq!(ab.size(), a.size() + b.size());
                assert_eq!(ab.len(), a.len() + b.len());
            }
        }
    }

    #[test]
    fn symmetrize_examples() {
        assert_eq!(symmetrize(&Forest::empty()), LinComb::basis(Forest::empty()));
        assert_eq!(symmetrize(&p("o o")), LinComb::term(p("o o"), crate::lincomb::int(2)));
        let expect = LinComb::basis(p("o[o[o] o]")) + LinComb::basis(p("o[o o[o]]"));
        assert_eq!(symmetrize(&p("o[o[o] o]")), expect);
    }

    #[test]
    fn equivalence_examples() {
        assert!(equivalent(&p("o[o o[o]]"), &p("o[o[o] o]")));
        assert!(equivalent(&p("o o[o]"), &p("o[o] o")));
        assert!(!equivalent(&p("o[o[o]]"), &p("o[o o]")));
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&p("o")), BigInt::from(1));
        assert_eq!(sigma(&p("o[o o]")), BigInt::from(2));
        assert_eq!(sigma(&p("o[o[o]]")), BigInt::from(1));
        assert_eq!(sigma(&p("o o o[o o]")), BigInt::from(4));
    }

    fn arrangement_factor(f: &Forest) -> BigInt {
        fn nodes(t: &Tree) -> BigInt {
            t.children().trees().iter().fold(factorial(t.children().len()), |acc, c| acc * nodes(c))
        }
        f.trees().iter().fold(factorial(f.len()), |acc, t| acc * nodes(t))
    }

    #[test]
    fn symmetrization_agrees_with_classes() {
        let two = ColorSet::new(["a", "b"]).unwrap();
        for (set, n) in [(one(), 5), (two, 4)] {
            let all = set.forests_up_to(n);
            for f in &all {
                let class: Vec<&Forest> = all.iter().filter(|g| equivalent(f, g)).collect();
                let omega = symmetrize(f);
                // Ω(ω) = σ(ω) Σ_{ω'∼ω} ω'
                let s = crate::lincomb::Rational::from_integer(sigma(f));
                let expect: LinComb<Forest> = class.iter().map(|g| ((*g).clone(), s.clone())).collect();
                assert_eq!(omega, expect, "{f}");
                assert_eq!(sigma(f) * BigInt::from(class.len()), arrangement_factor(f), "{f}");
                for g in &class {
                    assert_eq!(symmetrize(g), omega);
                }
            }
        }
    }

    fn arb_forest() -> impl Strategy<Value = Forest> {
        (0usize..=5).prop_flat_map(|n| {
            let all = enumerate_forests(n, &ColorSet::new(["a", "b"]).unwrap());
            (0..all.len()).prop_map(move |i| all[i].clone())
        })
    }

    proptest! {
        #[test]
        fn roundtrip_random(f in arb_forest()) {
            let set = ColorSet::new(["a", "b"]).unwrap();
            prop_assert_eq!(set.parse(&f.to_string()).unwrap(), f);
        }
    }
}
