//! The Hopf algebra `H_N` on planar forests: shuffle product and the
//! coproduct `Δ_N` dual to the Grossman–Larson product.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::One;

use crate::error::Result;
use crate::forest::{ColorSet, Forest, Tree};
use crate::grafting::b_plus;
use crate::lincomb::{GradedEndo, GradedSeries, LinComb, Rational, Tensor};
use crate::word::Alphabet;
use crate::wordhopf::{self, shuffle, GradedHopf};

/// `H_N` over a color set, with memoized coproducts.
#[derive(Debug)]
pub struct HnHopf {
    colors: ColorSet,
    delta_cache: Mutex<HashMap<Forest, Tensor<Forest>>>,
    antipode_cache: Mutex<HashMap<Forest, LinComb<Forest>>>,
}

impl Clone for HnHopf {
    fn clone(&self) -> Self {
        Self::new(self.colors.clone())
    }
}

/// `(a⊗b) ⊔· (c⊗d) = (a⊔c) ⊗ (bd)`, extended bilinearly.
fn shuffle_concat(x: &Tensor<Forest>, y: &Tensor<Forest>) -> Tensor<Forest> {
    x.bilinear(y, |(a, b), (c, d)| {
        let right = b.concat(d);
        shuffle(a, c).map_basis(|l| (l.clone(), right.clone()))
    })
}

impl HnHopf {
    pub fn new(colors: ColorSet) -> Self {
        Self { colors, delta_cache: Mutex::default(), antipode_cache: Mutex::default() }
    }

    pub fn colors(&self) -> &ColorSet {
        &self.colors
    }

    /// `Δ_N(ωτ) = ωτ⊗𝟙 + Δ_N(ω) ⊔· (I⊗B⁺_c)Δ_N(ω₁)` with `τ = B⁺_c(ω₁)` the last tree.
    pub fn delta_n(&self, forest: &Forest) -> Tensor<Forest> {
        if let Some(hit) = self.delta_cache.lock().expect("cache poisoned").get(forest) {
            return hit.clone();
        }
        let out = match forest.split_last() {
            None => LinComb::basis((Forest::empty(), Forest::empty())),
            Some((front, last)) => {
                let mut out = self.split_last_tree(&front, last);
                out.add_term((forest.clone(), Forest::empty()), Rational::one());
                out
            }
        };
        self.delta_cache.lock().expect("cache poisoned").insert(forest.clone(), out.clone());
        out
    }

    /// `Δ_N(ω) ⊔· (I⊗B⁺_c)Δ_N(ω₁)`, i.e. `Δ_N(ωτ) − ωτ⊗𝟙`.
    fn split_last_tree(&self, front: &Forest, last: &Tree) -> Tensor<Forest> {
        let planted = self.delta_n(last.children()).map_basis(|(l, r)| (l.clone(), Forest::from_tree(b_plus(r, last.root()))));
        shuffle_concat(&self.delta_n(front), &planted)
    }

    /// `S_N(ωτ) = −μ_N((S_N⊗I)(Δ_N(ω) ⊔· (I⊗B⁺_c)Δ_N(ω₁)))`, `S_N(𝟙) = 𝟙`.
    pub fn antipode_n(&self, forest: &Forest) -> LinComb<Forest> {
        if let Some(hit) = self.antipode_cache.lock().expect("cache poisoned").get(forest) {
            return hit.clone();
        }
        let out = match forest.split_last() {
            None => LinComb::basis(Forest::empty()),
            Some((front, last)) => {
                let mut acc = LinComb::zero();
                for ((l, r), c) in self.split_last_tree(&front, last).iter() {
                    let s = self.antipode_n(l);
                    acc.add_scaled(&s.bilinear(&LinComb::basis(r.clone()), shuffle), c);
                }
                -acc
            }
        };
        self.antipode_cache.lock().expect("cache poisoned").insert(forest.clone(), out.clone());
        out
    }

    /// `(α•β)(ω) = Σ α(ω₍₁₎)β(ω₍₂₎)` over `Δ_N`.
    pub fn gl_convolve(&self, a: &GradedSeries<Forest>, b: &GradedSeries<Forest>) -> Result<GradedSeries<Forest>> {
        wordhopf::convolve(self, a, b)
    }

    /// Exponential with respect to the GL convolution.
    pub fn exp_gl(&self, b: &GradedSeries<Forest>) -> Result<GradedSeries<Forest>> {
        wordhopf::exp_star(self, b)
    }

    pub fn log_gl(&self, a: &GradedSeries<Forest>) -> Result<GradedSeries<Forest>> {
        wordhopf::log_star(self, a)
    }

    /// The Eulerian idempotent of `H_N`.
    pub fn euler_n(&self, n: usize) -> GradedEndo<Forest> {
        wordhopf::eulerian_idempotent(self, n).expect("H_N is commutative")
    }
}

impl GradedHopf for HnHopf {
    type B = Forest;

    fn basis(&self, n: usize) -> Vec<Vec<Forest>> {
        self.colors.words_up_to(n)
    }

    fn one(&self) -> Forest {
        Forest::empty()
    }

    fn product(&self, a: &Forest, b: &Forest) -> LinComb<Forest> {
        shuffle(a, b)
    }

    fn coproduct(&self, a: &Forest) -> Tensor<Forest> {
        self.delta_n(a)
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn antipode(&self, a: &Forest) -> LinComb<Forest> {
        self.antipode_n(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grafting::gl_product;
    use crate::lincomb::{int, Basis};
    use crate::wordhopf::{antipode_endo, antipode_endo_generic, convolve_endo, identity, is_character, unit_endo, unit_series};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn hn() -> HnHopf {
        HnHopf::new(ColorSet::default())
    }

    fn p(s: &str) -> Forest {
        ColorSet::default().parse(s).unwrap()
    }

    fn t(terms: &[(&str, &str, i64)]) -> Tensor<Forest> {
        terms.iter().map(|(l, r, c)| ((p(l), p(r)), int(*c))).collect()
    }

    #[test]
    fn delta_examples() {
        let h = hn();
        assert_eq!(h.delta_n(&p("")), t(&[("", "", 1)]));
        assert_eq!(h.delta_n(&p("o")), t(&[("o", "", 1), ("", "o", 1)]));
        assert_eq!(h.delta_n(&p("o[o] o")), t(&[("o[o] o", "", 1), ("o[o]", "o", 1), ("o", "o o", 1), ("", "o[o] o", 1)]));
        assert_eq!(
            h.delta_n(&p("o o[o]")),
            t(&[("o o[o]", "", 1), ("o o", "o", 2), ("o", "o[o]", 1), ("o", "o o", 1), ("", "o o[o]", 1)])
        );
    }

    #[test]
    fn antipode_examples() {
        let h = hn();
        assert_eq!(h.antipode_n(&p("")), LinComb::basis(p("")));
        assert_eq!(h.antipode_n(&p("o")), -LinComb::basis(p("o")));
        // o ⊔ o = 2 o o
        assert_eq!(h.antipode_n(&p("o[o]")), LinComb::term(p("o o"), int(2)) - LinComb::basis(p("o[o]")));
    }

    #[test]
    fn hopf_structure() {
        let two = HnHopf::new(ColorSet::new(["a", "b"]).unwrap());
        for h in [hn(), two] {
            let n = 4;
            let basis = h.basis_up_to(n);
            for x in &basis {
                let d = h.delta_n(x);
                for ((l, r), _) in d.iter() {
                    assert_eq!(l.degree() + r.degree(), x.degree());
                }
                let left: LinComb<(Forest, (Forest, Forest))> =
                    d.map_linear(|(l, r)| h.delta_n(l).map_basis(|(a, b)| (a.clone(), (b.clone(), r.clone()))));
                let right: LinComb<(Forest, (Forest, Forest))> =
                    d.map_linear(|(l, r)| h.delta_n(r).map_basis(|(a, b)| (l.clone(), (a.clone(), b.clone()))));
                assert_eq!(left, right, "{x}");
                let counit = d.map_linear(|(l, r)| if l.is_empty() { LinComb::basis(r.clone()) } else { LinComb::zero() });
                assert_eq!(counit, LinComb::basis(x.clone()));
                for y in &basis {
                    if x.degree() + y.degree() > n {
                        continue;
                    }
                    let lhs = h.coproduct_lincomb(&shuffle(x, y));
                    let rhs = h.delta_n(x).bilinear(&h.delta_n(y), |(a, b), (c, d)| {
                        shuffle(a, c).bilinear(&shuffle(b, d), |u, v| LinComb::basis((u.clone(), v.clone())))
                    });
                    assert_eq!(lhs, rhs);
                }
            }
            let s = antipode_endo(&h, n);
            assert_eq!(s, antipode_endo_generic(&h, n));
            assert_eq!(convolve_endo(&h, &s, &identity(&h, n)).unwrap(), unit_endo(&h, n));
            assert_eq!(convolve_endo(&h, &identity(&h, n), &s).unwrap(), unit_endo(&h, n));
        }
    }

    #[test]
    fn delta_is_dual_to_gl() {
        let h = HnHopf::new(ColorSet::new(["a", "b"]).unwrap());
        let all = h.basis_up_to(4);
        for x in &all {
            let d = h.delta_n(x);
            for u in &all {
                for v in &all {
                    if u.degree() + v.degree() == x.degree() {
                        assert_eq!(d.coeff(&(u.clone(), v.clone())), gl_product(u, v).coeff(x), "{u} • {v} at {x}");
                    }
                }
            }
        }
    }

    fn random_character(h: &HnHopf, n: usize, rng: &mut ChaCha8Rng) -> GradedSeries<Forest> {
        let e = h.euler_n(n);
        let raw = GradedSeries::from_fn(n, h.basis_up_to(n).iter(), |f| if f.is_empty() { int(0) } else { crate::lincomb::rat(rng.gen_range(-4..=4), rng.gen_range(1..=3)) });
        h.exp_gl(&raw.compose(&e).unwrap()).unwrap()
    }

    #[test]
    fn gl_convolution_group() {
        let h = hn();
        let n = 4;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let o = GradedSeries::from_lincomb(n, &LinComb::basis(p("o"))).unwrap();
        let oo = h.gl_convolve(&o, &o).unwrap();
        assert_eq!(oo.get(&p("o o")).unwrap(), int(1));
        assert_eq!(oo.get(&p("o[o]")).unwrap(), int(1));
        let delta = unit_series(&h, n);
        let e = h.euler_n(n);
        assert_eq!(e.compose(&e).unwrap(), e);
        assert_eq!(h.exp_gl(&GradedSeries::zero(n)).unwrap(), delta);
        for _ in 0..6 {
            let a = random_character(&h, n, &mut rng);
            let b = random_character(&h, n, &mut rng);
            let c = random_character(&h, n, &mut rng);
            assert!(is_character(&h, &a));
            assert_eq!(h.gl_convolve(&delta, &a).unwrap(), a);
            assert_eq!(h.gl_convolve(&a, &delta).unwrap(), a);
            let ab = h.gl_convolve(&a, &b).unwrap();
            assert!(is_character(&h, &ab));
            assert_eq!(h.gl_convolve(&ab, &c).unwrap(), h.gl_convolve(&a, &h.gl_convolve(&b, &c).unwrap()).unwrap());
            let beta = h.log_gl(&a).unwrap();
            assert_eq!(beta, a.compose(&e).unwrap());
            assert_eq!(h.exp_gl(&beta).unwrap(), a);
        }
    }
}
