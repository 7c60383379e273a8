//! Shuffle and concatenation Hopf algebras on words, convolution, and the
//! Eulerian and Dynkin idempotents.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lincomb::{factorial, int, rat, Basis, GradedEndo, GradedSeries, LinComb, Rational, Tensor};
use crate::word::{Alphabet, Letter, Word};

/// `u ⊔ v`, the sum over all interleavings.
pub fn shuffle<L: Letter>(u: &Word<L>, v: &Word<L>) -> LinComb<Word<L>> {
    let (a, b) = (u.letters(), v.letters());
    let mut out = LinComb::zero();
    // choose which of the |u|+|v| positions carry letters of u
    let n = a.len() + b.len();
    let mut picks: Vec<usize> = (0..a.len()).collect();
    loop {
        let mut w = Vec::with_capacity(n);
        let (mut i, mut j) = (0, 0);
        for pos in 0..n {
            if i < a.len() && picks[i] == pos {
                w.push(a[i].clone());
                i += 1;
            } else {
                w.push(b[j].clone());
                j += 1;
            }
        }
        out.add_term(Word::new(w), Rational::one());
        if !next_subset(&mut picks, n) {
            break;
        }
    }
    out
}

/// Advance a sorted index subset of `0..n` to the next one in lexicographic order.
fn next_subset(picks: &mut [usize], n: usize) -> bool {
    let k = picks.len();
    for i in (0..k).rev() {
        if picks[i] < n - k + i {
            picks[i] += 1;
            for j in i + 1..k {
                picks[j] = picks[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub fn shuffle_lincomb<L: Letter>(p: &LinComb<Word<L>>, q: &LinComb<Word<L>>) -> LinComb<Word<L>> {
    p.bilinear(q, shuffle)
}

pub fn concat_lincomb<L: Letter>(p: &LinComb<Word<L>>, q: &LinComb<Word<L>>) -> LinComb<Word<L>> {
    p.bilinear(q, |u, v| LinComb::basis(u.concat(v)))
}

/// Deconcatenation `Σ_{i=0}^{k} a₁⋯aᵢ ⊗ aᵢ₊₁⋯a_k`.
pub fn deconcat<L: Letter>(w: &Word<L>) -> Tensor<Word<L>> {
    (0..=w.len()).map(|i| ((w.prefix(i), w.suffix(i)), Rational::one())).collect()
}

/// The unshuffle coproduct, dual to `⊔`: a sum over subsets of positions.
pub fn deshuffle<L: Letter>(w: &Word<L>) -> Tensor<Word<L>> {
    let letters = w.letters();
    let k = letters.len();
    let mut out = Tensor::zero();
    for mask in 0u64..(1u64 << k) {
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for (i, l) in letters.iter().enumerate() {
            if mask >> i & 1 == 1 {
                left.push(l.clone());
            } else {
                right.push(l.clone());
            }
        }
        out.add_term((Word::new(left), Word::new(right)), Rational::one());
    }
    out
}

/// `S(a₁⋯a_k) = (−1)^k a_k⋯a₁`.
pub fn antipode_word<L: Letter>(w: &Word<L>) -> LinComb<Word<L>> {
    let sign = if w.len() % 2 == 0 { int(1) } else { int(-1) };
    LinComb::term(w.reversed(), sign)
}

/// A graded connected Hopf algebra with a distinguished basis.
pub trait GradedHopf {
    type B: Basis;

    /// Basis elements of degree `0..=n`, grouped by degree.
    fn basis(&self, n: usize) -> Vec<Vec<Self::B>>;

    fn one(&self) -> Self::B;

    fn product(&self, a: &Self::B, b: &Self::B) -> LinComb<Self::B>;

    fn coproduct(&self, a: &Self::B) -> Tensor<Self::B>;

    fn is_commutative(&self) -> bool;

    /// Defaults to the connected graded recursion `S(x) = −x − Σ' S(x′)x″`.
    fn antipode(&self, a: &Self::B) -> LinComb<Self::B> {
        generic_antipode(self, a)
    }

    fn basis_up_to(&self, n: usize) -> Vec<Self::B> {
        self.basis(n).into_iter().flatten().collect()
    }

    fn mul(&self, p: &LinComb<Self::B>, q: &LinComb<Self::B>) -> LinComb<Self::B> {
        p.bilinear(q, |a, b| self.product(a, b))
    }

    fn coproduct_lincomb(&self, p: &LinComb<Self::B>) -> Tensor<Self::B> {
        p.map_linear(|b| self.coproduct(b))
    }
}

/// `S(x) = −x − Σ S(x′)x″` over the terms of `Δ(x)` with `x″` of positive degree.
pub fn generic_antipode<H: GradedHopf + ?Sized>(h: &H, x: &H::B) -> LinComb<H::B> {
    if x.degree() == 0 {
        return LinComb::basis(x.clone());
    }
    let mut out = -LinComb::basis(x.clone());
    for ((l, r), c) in h.coproduct(x).iter() {
        if l.degree() == 0 || r.degree() == 0 {
            continue;
        }
        let s = generic_antipode(h, l);
        out.add_scaled(&h.mul(&s, &LinComb::basis(r.clone())), &-c);
    }
    out
}

/// Words with shuffle product and deconcatenation coproduct.
#[derive(Clone, Debug)]
pub struct ShuffleHopf<A> {
    pub alphabet: A,
}

/// Words with concatenation product and deshuffle coproduct.
#[derive(Clone, Debug)]
pub struct ConcatHopf<A> {
    pub alphabet: A,
}

impl<A: Alphabet> ShuffleHopf<A> {
    pub fn new(alphabet: A) -> Self {
        Self { alphabet }
    }
}

impl<A: Alphabet> ConcatHopf<A> {
    pub fn new(alphabet: A) -> Self {
        Self { alphabet }
    }
}

impl<A: Alphabet> GradedHopf for ShuffleHopf<A> {
    type B = Word<A::Letter>;

    fn basis(&self, n: usize) -> Vec<Vec<Self::B>> {
        self.alphabet.words_up_to(n)
    }

    fn one(&self) -> Self::B {
        Word::empty()
    }

    fn product(&self, a: &Self::B, b: &Self::B) -> LinComb<Self::B> {
        shuffle(a, b)
    }

    fn coproduct(&self, a: &Self::B) -> Tensor<Self::B> {
        deconcat(a)
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn antipode(&self, a: &Self::B) -> LinComb<Self::B> {
        antipode_word(a)
    }
}

impl<A: Alphabet> GradedHopf for ConcatHopf<A> {
    type B = Word<A::Letter>;

    fn basis(&self, n: usize) -> Vec<Vec<Self::B>> {
        self.alphabet.words_up_to(n)
    }

    fn one(&self) -> Self::B {
        Word::empty()
    }

    fn product(&self, a: &Self::B, b: &Self::B) -> LinComb<Self::B> {
        LinComb::basis(a.concat(b))
    }

    fn coproduct(&self, a: &Self::B) -> Tensor<Self::B> {
        deshuffle(a)
    }

    fn is_commutative(&self) -> bool {
        false
    }

    fn antipode(&self, a: &Self::B) -> LinComb<Self::B> {
        antipode_word(a)
    }
}

fn check_trunc(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::TruncationMismatch { left: a, right: b })
    }
}

/// `δ = η∘ε` as a series: 1 on the unit.
pub fn unit_series<H: GradedHopf>(h: &H, n: usize) -> GradedSeries<H::B> {
    GradedSeries::delta(n, h.one())
}

/// `δ = η∘ε` as an endomorphism.
pub fn unit_endo<H: GradedHopf>(h: &H, n: usize) -> GradedEndo<H::B> {
    GradedEndo::from_fn(n, h.basis_up_to(n), |b| if b.degree() == 0 { LinComb::basis(b.clone()) } else { LinComb::zero() })
}

pub fn identity<H: GradedHopf>(h: &H, n: usize) -> GradedEndo<H::B> {
    crate::lincomb::identity_endo(n, h.basis_up_to(n))
}

pub fn grading<H: GradedHopf>(h: &H, n: usize) -> GradedEndo<H::B> {
    crate::lincomb::grading_operator(n, h.basis_up_to(n))
}

pub fn inverse_grading<H: GradedHopf>(h: &H, n: usize) -> GradedEndo<H::B> {
    crate::lincomb::inverse_grading_operator(n, h.basis_up_to(n))
}

/// The antipode as an endomorphism, from the structure's own formula.
pub fn antipode_endo<H: GradedHopf>(h: &H, n: usize) -> GradedEndo<H::B> {
    GradedEndo::from_fn(n, h.basis_up_to(n), |b| h.antipode(b))
}

/// The antipode from the connected graded recursion, built degree by degree.
pub fn antipode_endo_generic<H: GradedHopf>(h: &H, n: usize) -> GradedEndo<H::B> {
    let mut images: std::collections::BTreeMap<H::B, LinComb<H::B>> = Default::default();
    for b in h.basis_up_to(n) {
        let img = if b.degree() == 0 {
            LinComb::basis(b.clone())
        } else {
            let mut out = -LinComb::basis(b.clone());
            for ((l, r), c) in h.coproduct(&b).iter() {
                if l.degree() == 0 || r.degree() == 0 {
                    continue;
                }
                out.add_scaled(&h.mul(&images[l], &LinComb::basis(r.clone())), &-c);
            }
            out
        };
        images.insert(b, img);
    }
    GradedEndo::from_fn(n, images.keys().cloned().collect::<Vec<_>>(), |b| images[b].clone())
}

/// `α ∗ β = μ∘(α⊗β)∘Δ` for series.
pub fn convolve<H: GradedHopf>(h: &H, a: &GradedSeries<H::B>, b: &GradedSeries<H::B>) -> Result<GradedSeries<H::B>> {
    check_trunc(a.trunc(), b.trunc())?;
    let n = a.trunc();
    let basis = h.basis_up_to(n);
    let mut out = GradedSeries::zero(n);
    for x in &basis {
        let mut v = Rational::zero();
        for ((l, r), c) in h.coproduct(x).iter() {
            let al = a.get(l)?;
            if al.is_zero() {
                continue;
            }
            v += c * al * b.get(r)?;
        }
        out.set(x.clone(), v)?;
    }
    Ok(out)
}

/// `f ∗ g = μ∘(f⊗g)∘Δ` for endomorphisms.
pub fn convolve_endo<H: GradedHopf>(h: &H, f: &GradedEndo<H::B>, g: &GradedEndo<H::B>) -> Result<GradedEndo<H::B>> {
    check_trunc(f.trunc(), g.trunc())?;
    let n = f.trunc();
    let mut err = None;
    let out = GradedEndo::from_fn(n, h.basis_up_to(n), |x| {
        let mut acc = LinComb::zero();
        for ((l, r), c) in h.coproduct(x).iter() {
            match (f.image(l), g.image(r)) {
                (Ok(fl), Ok(gr)) => acc.add_scaled(&h.mul(fl, gr), c),
                (Err(e), _) | (_, Err(e)) => err = Some(e),
            }
        }
        acc
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

fn unit_value<B: Basis>(a: &GradedSeries<B>, unit: &B, expected: i64) -> Result<()> {
    let found = a.get(unit)?;
    if found == int(expected) {
        Ok(())
    } else {
        Err(Error::UnitValue { expected: expected.to_string(), found: found.to_string() })
    }
}

/// `exp*(α) = Σ α^{∗k}/k!`, requiring `α(𝟙) = 0`.
pub fn exp_star<H: GradedHopf>(h: &H, a: &GradedSeries<H::B>) -> Result<GradedSeries<H::B>> {
    unit_value(a, &h.one(), 0)?;
    let n = a.trunc();
    let mut power = unit_series(h, n);
    let mut out = power.clone();
    for k in 1..=n {
        power = convolve(h, &power, a)?;
        out = out.add(&power.scale(&Rational::from_integer(factorial(k)).recip()));
    }
    Ok(out)
}

/// `log*(β) = Σ (−1)^{k−1}/k (β−δ)^{∗k}`, requiring `β(𝟙) = 1`.
pub fn log_star<H: GradedHopf>(h: &H, b: &GradedSeries<H::B>) -> Result<GradedSeries<H::B>> {
    unit_value(b, &h.one(), 1)?;
    let n = b.trunc();
    let j = b.sub(&unit_series(h, n));
    let mut power = unit_series(h, n);
    let mut out = GradedSeries::zero(n);
    for k in 1..=n {
        power = convolve(h, &power, &j)?;
        let sign = if k % 2 == 1 { 1 } else { -1 };
        out = out.add(&power.scale(&rat(sign, k as i64)));
    }
    Ok(out)
}

/// `e = log*(Id) = Σ (−1)^{k−1}/k J^{∗k}` with `J = Id − δ`.
pub fn eulerian_idempotent<H: GradedHopf>(h: &H, n: usize) -> Result<GradedEndo<H::B>> {
    if !h.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let j = identity(h, n).sub(&unit_endo(h, n))?;
    let mut power = unit_endo(h, n);
    let mut out = GradedEndo::from_fn(n, h.basis_up_to(n), |_| LinComb::zero());
    for k in 1..=n {
        power = convolve_endo(h, &power, &j)?;
        let sign = if k % 2 == 1 { 1 } else { -1 };
        out = out.add(&power.scale(&rat(sign, k as i64)))?;
    }
    Ok(out)
}

/// The graded Dynkin operator `D = S ∗ Y`.
pub fn dynkin<H: GradedHopf>(h: &H, n: usize) -> Result<GradedEndo<H::B>> {
    if !h.is_commutative() {
        return Err(Error::NotCommutative);
    }
    convolve_endo(h, &antipode_endo(h, n), &grading(h, n))
}

/// `Y⁻¹∘D`, the projection onto primitive elements.
pub fn dynkin_idempotent<H: GradedHopf>(h: &H, n: usize) -> Result<GradedEndo<H::B>> {
    inverse_grading(h, n).compose(&dynkin(h, n)?)
}

/// `Γ(α) = Σ α_{k₁}∗⋯∗α_{k_l} / (k₁(k₁+k₂)⋯(k₁+⋯+k_l))`, the inverse of `β ↦ β∘D`.
pub fn gamma<H: GradedHopf>(h: &H, a: &GradedSeries<H::B>) -> Result<GradedSeries<H::B>> {
    if !is_inf_character(h, a) {
        return Err(Error::NotInfinitesimal);
    }
    let n = a.trunc();
    let parts: Vec<GradedSeries<H::B>> = (0..=n).map(|k| a.homogeneous(k)).collect();
    // P_m = (1/m) Σ_k P_{m−k} ∗ α_k collects compositions of m
    let mut p: Vec<GradedSeries<H::B>> = vec![unit_series(h, n)];
    for m in 1..=n {
        let mut acc = GradedSeries::zero(n);
        for k in 1..=m {
            acc = acc.add(&convolve(h, &p[m - k], &parts[k])?);
        }
        p.push(acc.scale(&rat(1, m as i64)));
    }
    Ok(p.iter().fold(GradedSeries::zero(n), |acc, x| acc.add(x)))
}

/// Pairs of positive-degree basis elements whose degrees sum to at most `n`.
fn product_pairs<H: GradedHopf>(h: &H, n: usize) -> Vec<(H::B, H::B, LinComb<H::B>)> {
    let levels = h.basis(n);
    let mut out = Vec::new();
    for d1 in 1..=n {
        for d2 in 1..=n - d1 {
            for u in &levels[d1] {
                for v in &levels[d2] {
                    out.push((u.clone(), v.clone(), h.product(u, v)));
                }
            }
        }
    }
    out
}

/// `α(𝟙) = 1` and `α(uv) = α(u)α(v)` for all `|u|+|v| ≤ N`.
pub fn is_character<H: GradedHopf>(h: &H, a: &GradedSeries<H::B>) -> bool {
    if a.get(&h.one()).ok() != Some(Rational::one()) {
        return false;
    }
    product_pairs(h, a.trunc())
        .into_iter()
        .all(|(u, v, uv)| matches!((a.pairing(&uv), a.get(&u), a.get(&v)), (Ok(x), Ok(y), Ok(z)) if x == &y * &z))
}

/// `α(𝟙) = 0` and `α(uv) = 0` for all `|u|,|v| ≥ 1` with `|u|+|v| ≤ N`.
pub fn is_inf_character<H: GradedHopf>(h: &H, a: &GradedSeries<H::B>) -> bool {
    if a.get(&h.one()).ok() != Some(Rational::zero()) {
        return false;
    }
    product_pairs(h, a.trunc()).into_iter().all(|(_, _, uv)| a.pairing(&uv).map(|x| x.is_zero()).unwrap_or(false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::ColorSet;
    use crate::word::{GradedLetter, LetterAlphabet};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ab() -> LetterAlphabet {
        LetterAlphabet::from_chars("ab").unwrap()
    }

    fn w(s: &str) -> Word<GradedLetter> {
        LetterAlphabet::from_chars("abcde").unwrap().parse_word(s).unwrap()
    }

    fn lc(terms: &[(&str, i64)]) -> LinComb<Word<GradedLetter>> {
        terms.iter().map(|(s, c)| (w(s), int(*c))).collect()
    }

    fn t(terms: &[(&str, &str, i64)]) -> Tensor<Word<GradedLetter>> {
        terms.iter().map(|(l, r, c)| ((w(l), w(r)), int(*c))).collect()
    }

    /// Brute-force shuffle oracle via the letter recursion.
    fn shuffle_rec(u: &[GradedLetter], v: &[GradedLetter]) -> Vec<Vec<GradedLetter>> {
        if u.is_empty() || v.is_empty() {
            return vec![[u, v].concat()];
        }
        let mut out = Vec::new();
        for mut rest in shuffle_rec(&u[1..], v) {
            rest.insert(0, u[0].clone());
            out.push(rest);
        }
        for mut rest in shuffle_rec(u, &v[1..]) {
            rest.insert(0, v[0].clone());
            out.push(rest);
        }
        out
    }

    #[test]
    fn shuffle_examples() {
        let got = shuffle(&w("abc"), &w("de"));
        let expect = lc(&[
            ("abcde", 1),
            ("abdce", 1),
            ("adbce", 1),
            ("dabce", 1),
            ("abdec", 1),
            ("adbec", 1),
            ("dabec", 1),
            ("adebc", 1),
            ("daebc", 1),
            ("deabc", 1),
        ]);
        assert_eq!(got, expect);
        assert_eq!(shuffle(&w("ab"), &w("")), lc(&[("ab", 1)]));
        assert_eq!(shuffle(&w("a"), &w("a")), lc(&[("aa", 2)]));
    }

    #[test]
    fn shuffle_matches_recursion() {
        let words = ab().words_up_to(4).into_iter().flatten().collect::<Vec<_>>();
        for u in &words {
            for v in &words {
                if u.len() + v.len() > 5 {
                    continue;
                }
                let oracle: LinComb<_> = shuffle_rec(u.letters(), v.letters()).into_iter().map(|x| (Word::new(x), int(1))).collect();
                assert_eq!(shuffle(u, v), oracle);
                assert_eq!(shuffle(u, v), shuffle(v, u));
            }
        }
    }

    #[test]
    fn coproduct_examples() {
        assert_eq!(deconcat(&w("")), t(&[("", "", 1)]));
        assert_eq!(deconcat(&w("a")), t(&[("", "a", 1), ("a", "", 1)]));
        assert_eq!(deconcat(&w("ab")), t(&[("", "ab", 1), ("a", "b", 1), ("ab", "", 1)]));
        assert_eq!(deshuffle(&w("a")), t(&[("", "a", 1), ("a", "", 1)]));
        assert_eq!(deshuffle(&w("ab")), t(&[("", "ab", 1), ("a", "b", 1), ("b", "a", 1), ("ab", "", 1)]));
        assert_eq!(deshuffle(&w("aa")), t(&[("", "aa", 1), ("a", "a", 2), ("aa", "", 1)]));
        assert_eq!(antipode_word(&w("")), lc(&[("", 1)]));
        assert_eq!(antipode_word(&w("ab")), lc(&[("ba", 1)]));
        assert_eq!(antipode_word(&w("abc")), lc(&[("cba", -1)]));
    }

    #[test]
    fn dualities() {
        let words = ab().words_up_to(4).into_iter().flatten().collect::<Vec<_>>();
        for x in &words {
            let dc = deconcat(x);
            let ds = deshuffle(x);
            for u in &words {
                for v in &words {
                    if u.degree() + v.degree() != x.degree() {
                        continue;
                    }
                    let key = (u.clone(), v.clone());
                    assert_eq!(dc.coeff(&key), LinComb::basis(u.concat(v)).coeff(x));
                    assert_eq!(ds.coeff(&key), shuffle(u, v).coeff(x));
                }
            }
            assert_eq!(ds.flip(), ds);
        }
    }

    fn hopf_axioms<H: GradedHopf>(h: &H, n: usize)
    where
        H::B: std::fmt::Debug,
    {
        let basis = h.basis_up_to(n);
        let one = h.one();
        for x in &basis {
            let d = h.coproduct(x);
            // coassociativity
            let left: LinComb<(H::B, (H::B, H::B))> =
                d.map_linear(|(l, r)| h.coproduct(l).map_basis(|(ll, lr)| (ll.clone(), (lr.clone(), r.clone()))));
            let right: LinComb<(H::B, (H::B, H::B))> =
                d.map_linear(|(l, r)| h.coproduct(r).map_basis(|(rl, rr)| (l.clone(), (rl.clone(), rr.clone()))));
            assert_eq!(left, right, "coassoc {x:?}");
            // counit
            let lc = d.map_linear(|(l, r)| if l.degree() == 0 { LinComb::basis(r.clone()) } else { LinComb::zero() });
            let rc = d.map_linear(|(l, r)| if r.degree() == 0 { LinComb::basis(l.clone()) } else { LinComb::zero() });
            assert_eq!(lc, LinComb::basis(x.clone()));
            assert_eq!(rc, LinComb::basis(x.clone()));
        }
        let s = antipode_endo(h, n);
        let id = identity(h, n);
        let delta = unit_endo(h, n);
        assert_eq!(convolve_endo(h, &s, &id).unwrap(), delta);
        assert_eq!(convolve_endo(h, &id, &s).unwrap(), delta);
        assert_eq!(antipode_endo_generic(h, n), s);
        // bialgebra compatibility
        for x in &basis {
            for y in &basis {
                if x.degree() + y.degree() > n {
                    continue;
                }
                let lhs = h.coproduct_lincomb(&h.product(x, y));
                let (dx, dy) = (h.coproduct(x), h.coproduct(y));
                let rhs = dx.bilinear(&dy, |(a, b), (c, d)| h.product(a, c).bilinear(&h.product(b, d), |p, q| LinComb::basis((p.clone(), q.clone()))));
                assert_eq!(lhs, rhs, "{x:?} {y:?}");
            }
        }
        let _ = one;
    }

    #[test]
    fn hopf_axioms_on_words_and_trees() {
        hopf_axioms(&ShuffleHopf::new(ab()), 4);
        hopf_axioms(&ConcatHopf::new(ab()), 4);
        hopf_axioms(&ShuffleHopf::new(ColorSet::default()), 4);
        hopf_axioms(&ConcatHopf::new(ColorSet::default()), 4);
        hopf_axioms(&ShuffleHopf::new(LetterAlphabet::new([("x", 1), ("y", 2)]).unwrap()), 4);
    }

    #[test]
    fn grading_commutes_with_antipode() {
        let h = ShuffleHopf::new(ab());
        let (s, y) = (antipode_endo(&h, 5), grading(&h, 5));
        assert_eq!(y.compose(&s).unwrap(), s.compose(&y).unwrap());
    }

    fn letter_series(h: &ShuffleHopf<LetterAlphabet>, n: usize, terms: &[(&str, Rational)]) -> GradedSeries<Word<GradedLetter>> {
        let mut s = GradedSeries::zero(n);
        for (x, c) in terms {
            s.set(h.alphabet.parse_word(x).unwrap(), c.clone()).unwrap();
        }
        s
    }

    #[test]
    fn convolution_examples() {
        let h = ShuffleHopf::new(LetterAlphabet::from_chars("o").unwrap());
        let a = letter_series(&h, 2, &[("", int(1)), ("o", int(1))]);
        let sq = convolve(&h, &a, &a).unwrap();
        assert_eq!(sq, letter_series(&h, 2, &[("", int(1)), ("o", int(2)), ("oo", int(1))]));
        let f = antipode_endo(&h, 4);
        assert_eq!(convolve_endo(&h, &f, &unit_endo(&h, 4)).unwrap(), f);
        let e = exp_star(&h, &letter_series(&h, 3, &[("o", int(1))])).unwrap();
        assert_eq!(e.get(&w_o("ooo")).unwrap(), rat(1, 6));
        assert_eq!(exp_star(&h, &GradedSeries::zero(3)).unwrap(), unit_series(&h, 3));
        assert!(exp_star(&h, &unit_series(&h, 3)).is_err());
        assert!(log_star(&h, &GradedSeries::zero(3)).is_err());
        assert!(convolve(&h, &a, &GradedSeries::zero(3)).is_err());
    }

    fn w_o(s: &str) -> Word<GradedLetter> {
        LetterAlphabet::from_chars("o").unwrap().parse_word(s).unwrap()
    }

    #[test]
    fn eulerian_and_dynkin_examples() {
        let h = ShuffleHopf::new(ab());
        let e = eulerian_idempotent(&h, 5).unwrap();
        assert_eq!(e.image(&w("a")).unwrap(), &lc(&[("a", 1)]));
        assert!(e.image(&w("")).unwrap().is_zero());
        let half = e.image(&w("ab")).unwrap();
        assert_eq!(half, &lc(&[("ab", 1), ("ba", -1)]).scale(&rat(1, 2)));
        assert_eq!(e.compose(&e).unwrap(), e);

        let d = dynkin(&h, 4).unwrap();
        assert_eq!(d.image(&w("ab")).unwrap(), &lc(&[("ab", 1), ("ba", -1)]));
        assert_eq!(d.image(&w("a")).unwrap(), &lc(&[("a", 1)]));
        let abc = LetterAlphabet::from_chars("abc").unwrap();
        let h3 = ShuffleHopf::new(abc);
        let d3 = dynkin(&h3, 3).unwrap();
        assert_eq!(d3.image(&w("abc")).unwrap(), &lc(&[("abc", 1), ("bac", -1), ("bca", -1), ("cba", 1)]));
        let p = dynkin_idempotent(&h, 4).unwrap();
        assert_eq!(p.compose(&p).unwrap(), p);
        assert!(matches!(eulerian_idempotent(&ConcatHopf::new(ab()), 3), Err(Error::NotCommutative)));
    }

    /// A random functional projected by the Eulerian idempotent.
    fn random_inf<H: GradedHopf>(h: &H, e: &GradedEndo<H::B>, rng: &mut ChaCha8Rng) -> GradedSeries<H::B> {
        let n = e.trunc();
        let raw = GradedSeries::from_fn(n, h.basis_up_to(n).iter(), |b| if b.degree() == 0 { Rational::zero() } else { rat(rng.gen_range(-5..=5), rng.gen_range(1..=4)) });
        raw.compose(e).unwrap()
    }

    #[test]
    fn characters_and_logs() {
        let h = ShuffleHopf::new(ab());
        let n = 4;
        let e = eulerian_idempotent(&h, n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let a = random_inf(&h, &e, &mut rng);
            assert!(is_inf_character(&h, &a));
            let x = exp_star(&h, &a).unwrap();
            assert!(is_character(&h, &x));
            assert_eq!(log_star(&h, &x).unwrap(), a);
            assert_eq!(x.compose(&e).unwrap(), a);
        }
        assert!(is_character(&h, &unit_series(&h, 3)));
        let o = ShuffleHopf::new(LetterAlphabet::from_chars("o").unwrap());
        assert!(is_inf_character(&o, &letter_series(&o, 3, &[("o", int(1))])));
        let bad = letter_series(&o, 2, &[("", int(1)), ("o", int(1))]);
        assert!(!is_character(&o, &bad));
        assert!(is_character(&o, &letter_series(&o, 2, &[("", int(1)), ("o", int(1)), ("oo", rat(1, 2))])));
    }

    #[test]
    fn gamma_inverts_dynkin() {
        let h = ShuffleHopf::new(ab());
        let n = 4;
        let e = eulerian_idempotent(&h, n).unwrap();
        let d = dynkin(&h, n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        assert_eq!(gamma(&h, &GradedSeries::zero(n)).unwrap(), unit_series(&h, n));
        for _ in 0..10 {
            let a = random_inf(&h, &e, &mut rng);
            let g = gamma(&h, &a).unwrap();
            assert!(is_character(&h, &g));
            assert_eq!(g.compose(&d).unwrap(), a);
            // and the other way round on characters
            assert_eq!(gamma(&h, &g.compose(&d).unwrap()).unwrap(), g);
        }
        let one = ShuffleHopf::new(LetterAlphabet::from_chars("a").unwrap());
        let a = letter_series(&one, 2, &[("a", int(1))]);
        assert_eq!(gamma(&one, &a).unwrap().get(&w("aa")).unwrap(), rat(1, 2));
        assert!(gamma(&one, &unit_series(&one, 2)).is_err());
    }
}
