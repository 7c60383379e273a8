//! Non-commutative Bell polynomials over the letters `d₁, d₂, …`.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lincomb::{factorial, int, Basis, GradedSeries, LinComb, Rational, Tensor};
use crate::word::{Alphabet, Letter, Word};
use crate::wordhopf::{convolve, is_inf_character, unit_series, GradedHopf};

/// The letter `d_j`, of degree `j ≥ 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct D(pub usize);

impl Basis for D {
    fn degree(&self) -> usize {
        self.0
    }
}

impl Letter for D {
    fn separator(_letters: &[Self]) -> &'static str {
        "."
    }
}

impl fmt::Display for D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}", self.0)
    }
}

impl fmt::Debug for D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}", self.0)
    }
}

pub type BellWord = Word<D>;
pub type BellPoly = LinComb<BellWord>;

/// The alphabet `{d_j}` with one letter per degree.
#[derive(Clone, Copy, Debug, Default)]
pub struct BellAlphabet;

impl Alphabet for BellAlphabet {
    type Letter = D;

    fn letters_of_degree(&self, d: usize) -> Vec<D> {
        vec![D(d)]
    }
}

/// Parse `d1.d2.d1`; `1` or the empty string is the empty word.
pub fn parse_word(text: &str) -> Result<BellWord> {
    let text = text.trim();
    if text.is_empty() || text == "1" {
        return Ok(Word::empty());
    }
    let mut offset = 0;
    let mut letters = Vec::new();
    for part in text.split('.') {
        let j = part
            .strip_prefix('d')
            .and_then(|s| s.parse::<usize>().ok())
            .filter(|&j| j >= 1)
            .ok_or_else(|| Error::Syntax { offset, message: format!("expected d<j> with j ≥ 1, found `{part}`") })?;
        letters.push(D(j));
        offset += part.len() + 1;
    }
    Ok(Word::new(letters))
}

pub fn word(indices: &[usize]) -> BellWord {
    indices.iter().map(|&j| D(j)).collect()
}

/// The derivation `∂(d_i) = d_{i+1}`.
fn derive(w: &BellWord) -> BellPoly {
    let mut out = LinComb::zero();
    for i in 0..w.len() {
        let mut letters = w.letters().to_vec();
        letters[i] = D(letters[i].0 + 1);
        out.add_term(Word::new(letters), Rational::one());
    }
    out
}

/// `B_n = (d₁ + ∂) B_{n−1}`, `B₀ = 𝟙`.
pub fn bell(n: usize) -> BellPoly {
    let mut b = LinComb::basis(Word::empty());
    for _ in 0..n {
        let left = b.map_basis(|w| Word::single(D(1)).concat(w));
        b = left + b.map_linear(derive);
    }
    b
}

fn check_range(n: usize, k: usize) -> Result<()> {
    if k > n || (k == 0 && n > 0) {
        Err(Error::OutOfRange(format!("need 1 ≤ k ≤ n, got n={n}, k={k}")))
    } else {
        Ok(())
    }
}

/// `B_{n,k}`: the words of length `k` in `B_n`.
pub fn partial_bell(n: usize, k: usize) -> Result<BellPoly> {
    check_range(n, k)?;
    Ok(bell(n).filter(|w| w.len() == k))
}

/// `B_{n,k} = Σ κ(ω) (n choose ω) ω` over words with `|ω| = n`, `#(ω) = k`.
pub fn partial_bell_closed(n: usize, k: usize) -> Result<BellPoly> {
    check_range(n, k)?;
    let nf = Rational::from_integer(factorial(n));
    Ok(words_with(n, k)
        .into_iter()
        .map(|w| {
            let denom: Rational = w.letters().iter().map(|d| Rational::from_integer(factorial(d.0))).product();
            let c = kappa(&w) * &nf / denom;
            (w, c)
        })
        .collect())
}

/// Words of degree `n` and length `k`, in canonical order.
pub fn words_with(n: usize, k: usize) -> Vec<BellWord> {
    BellAlphabet.words_of_degree(n).into_iter().filter(|w| w.len() == k).collect()
}

/// `κ(j₁…j_k) = j₁⋯j_k / (j₁(j₁+j₂)⋯(j₁+⋯+j_k))`.
pub fn kappa(w: &BellWord) -> Rational {
    let mut num = Rational::one();
    let mut den = Rational::one();
    let mut partial = 0;
    for d in w.letters() {
        partial += d.0;
        num *= int(d.0 as i64);
        den *= int(partial as i64);
    }
    num / den
}

/// `Q_{n,k} = Σ κ(ω) ω` over `|ω| = n`, `#(ω) = k`.
pub fn q_poly(n: usize, k: usize) -> Result<BellPoly> {
    check_range(n, k)?;
    Ok(words_with(n, k).into_iter().map(|w| {
        let c = kappa(&w);
        (w, c)
    }).collect())
}

/// `Q_{n,k}` as `(1/n!) B_{n,k}(1!d₁, 2!d₂, …)`.
pub fn q_poly_rescaled(n: usize, k: usize) -> Result<BellPoly> {
    let b = partial_bell(n, k)?;
    let nf = Rational::from_integer(factorial(n));
    Ok(b.iter()
        .map(|(w, c)| {
            let scale: Rational = w.letters().iter().map(|d| Rational::from_integer(factorial(d.0))).product();
            (w.clone(), c * scale / &nf)
        })
        .collect())
}

/// `Q_n = Σ_k Q_{n,k}`, with `Q₀ = 𝟙`.
pub fn q_full(n: usize) -> BellPoly {
    if n == 0 {
        return LinComb::basis(Word::empty());
    }
    (1..=n).fold(LinComb::zero(), |acc, k| acc + q_poly(n, k).expect("k in range"))
}

fn concat_tensor(x: &Tensor<BellWord>, y: &Tensor<BellWord>) -> Tensor<BellWord> {
    x.bilinear(y, |(a, b), (c, d)| LinComb::basis((a.concat(c), b.concat(d))))
}

/// `Δ_FdB(d_n) = Σ_k B_{n,k} ⊗ d_k`, extended multiplicatively.
pub fn fdb_coproduct_word(w: &BellWord) -> Tensor<BellWord> {
    let mut acc = LinComb::basis((Word::empty(), Word::empty()));
    for d in w.letters() {
        let n = d.0;
        let letter: Tensor<BellWord> = (1..=n)
            .flat_map(|k| {
                partial_bell(n, k)
                    .expect("k in range")
                    .iter()
                    .map(|(b, c)| ((b.clone(), Word::single(D(k))), c.clone()))
                    .collect::<Vec<_>>()
            })
            .collect();
        acc = concat_tensor(&acc, &letter);
    }
    acc
}

pub fn fdb_coproduct(p: &BellPoly) -> Tensor<BellWord> {
    p.map_linear(fdb_coproduct_word)
}

/// `Q(α) = Σ_ω κ(ω) α_{j₁} ∗ ⋯ ∗ α_{j_k}`, a character for infinitesimal `α`.
pub fn q_operator<H: GradedHopf>(h: &H, a: &GradedSeries<H::B>) -> Result<GradedSeries<H::B>> {
    if !is_inf_character(h, a) {
        return Err(Error::NotInfinitesimal);
    }
    let n = a.trunc();
    let parts: Vec<GradedSeries<H::B>> = (0..=n).map(|k| a.homogeneous(k)).collect();
    let mut products: HashMap<BellWord, GradedSeries<H::B>> = HashMap::new();
    products.insert(Word::empty(), unit_series(h, n));
    let mut out = unit_series(h, n);
    for w in BellAlphabet.words_up_to(n).into_iter().flatten().filter(|w| !w.is_empty()) {
        let (front, last) = w.split_last().expect("non-empty");
        let prod = convolve(h, &products[&front], &parts[last.0])?;
        let c = kappa(&w);
        if !c.is_zero() {
            out = out.add(&prod.scale(&c));
        }
        products.insert(w, prod);
    }
    Ok(out)
}
