//! Lie–Butcher series on planar forests in their three representations:
//! pullback characters (Type 1), autonomous modified fields (Type 2) and
//! time-dependent fields (Type 3).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::bell::q_operator;
use crate::error::{Error, Result};
use crate::forest::{Color, ColorSet, Forest};
use crate::grafting::graft;
use crate::hn::HnHopf;
use crate::lincomb::{int, parse_rational, GradedSeries, LinComb};
use crate::wordhopf::{antipode_endo, concat_lincomb, deshuffle, dynkin_idempotent, is_character, is_inf_character, ShuffleHopf};

/// Which of the three representations a series is in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Type1,
    Type2,
    Type3,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Type1 => "type1",
            Kind::Type2 => "type2",
            Kind::Type3 => "type3",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "type1" | "1" => Ok(Kind::Type1),
            "type2" | "2" => Ok(Kind::Type2),
            "type3" | "3" => Ok(Kind::Type3),
            other => Err(Error::Malformed(format!("unknown series kind `{other}`"))),
        }
    }
}

/// The two Hopf structures on forests over one color set.
#[derive(Debug, Clone)]
pub struct Algebras {
    pub sh: ShuffleHopf<ColorSet>,
    pub hn: HnHopf,
}

impl Algebras {
    pub fn new(colors: &ColorSet) -> Self {
        Self { sh: ShuffleHopf::new(colors.clone()), hn: HnHopf::new(colors.clone()) }
    }
}

/// A truncated LB-series. Construction checks the character property
/// (Type 1) or the infinitesimal property (Types 2 and 3) up to the truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct LBSeries {
    kind: Kind,
    data: GradedSeries<Forest>,
    colors: ColorSet,
}

impl LBSeries {
    pub fn new(kind: Kind, data: GradedSeries<Forest>, colors: ColorSet) -> Result<Self> {
        let sh = ShuffleHopf::new(colors.clone());
        match kind {
            Kind::Type1 if !is_character(&sh, &data) => Err(Error::NotCharacter),
            Kind::Type2 | Kind::Type3 if !is_inf_character(&sh, &data) => Err(Error::NotInfinitesimal),
            _ => Ok(Self { kind, data, colors }),
        }
    }

    fn trusted(kind: Kind, data: GradedSeries<Forest>, colors: &ColorSet) -> Self {
        Self { kind, data, colors: colors.clone() }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn data(&self) -> &GradedSeries<Forest> {
        &self.data
    }

    pub fn colors(&self) -> &ColorSet {
        &self.colors
    }

    pub fn trunc(&self) -> usize {
        self.data.trunc()
    }

    pub fn get(&self, forest: &Forest) -> Result<crate::Rational> {
        self.data.get(forest)
    }

    /// `{"kind": "type3", "colors": [...], "trunc": N, "terms": [[forest, "p/q"], ...]}`.
    pub fn to_json(&self) -> Value {
        let mut v = self.data.to_json();
        v["kind"] = json!(self.kind.name());
        v["colors"] = json!(self.colors.colors().iter().map(Color::label).collect::<Vec<_>>());
        v
    }

    /// Inverse of [`LBSeries::to_json`]. Missing `colors` means the default
    /// single color; a missing `kind` falls back to `default_kind`.
    pub fn from_json(value: &Value, default_kind: Option<Kind>) -> Result<Self> {
        let colors = match value.get("colors") {
            None => ColorSet::default(),
            Some(Value::Array(labels)) => {
                let labels: Option<Vec<&str>> = labels.iter().map(Value::as_str).collect();
                ColorSet::new(labels.ok_or_else(|| Error::Malformed("colors must be strings".into()))?)?
            }
            Some(_) => return Err(Error::Malformed("colors must be an array".into())),
        };
        let kind = match value.get("kind").and_then(Value::as_str) {
            Some(k) => k.parse()?,
            None => default_kind.ok_or_else(|| Error::Malformed("missing `kind`".into()))?,
        };
        let data = GradedSeries::from_json(value, |s| colors.parse(s))?;
        Self::new(kind, data, colors)
    }

    pub fn to_type1(&self) -> Result<Self> {
        self.to_type1_with(&Algebras::new(&self.colors))
    }

    pub fn to_type2(&self) -> Result<Self> {
        self.to_type2_with(&Algebras::new(&self.colors))
    }

    pub fn to_type3(&self) -> Result<Self> {
        self.to_type3_with(&Algebras::new(&self.colors))
    }

    pub fn to_kind(&self, kind: Kind) -> Result<Self> {
        match kind {
            Kind::Type1 => self.to_type1(),
            Kind::Type2 => self.to_type2(),
            Kind::Type3 => self.to_type3(),
        }
    }

    /// `α = exp•(β)` from Type 2, `α = Q(γ)` from Type 3.
    pub fn to_type1_with(&self, alg: &Algebras) -> Result<Self> {
        let data = match self.kind {
            Kind::Type1 => return Ok(self.clone()),
            Kind::Type2 => alg.hn.exp_gl(&self.data)?,
            Kind::Type3 => q_operator(&alg.sh, &self.data)?,
        };
        Ok(Self::trusted(Kind::Type1, data, &self.colors))
    }

    /// `β = α∘e` with `e` the Eulerian idempotent of `H_N`.
    pub fn to_type2_with(&self, alg: &Algebras) -> Result<Self> {
        if self.kind == Kind::Type2 {
            return Ok(self.clone());
        }
        let alpha = self.to_type1_with(alg)?;
        let data = alpha.data.compose(&alg.hn.euler_n(self.trunc()))?;
        Ok(Self::trusted(Kind::Type2, data, &self.colors))
    }

    /// `γ = α∘Y⁻¹∘D` with the Dynkin operator of the shuffle algebra.
    pub fn to_type3_with(&self, alg: &Algebras) -> Result<Self> {
        if self.kind == Kind::Type3 {
            return Ok(self.clone());
        }
        let alpha = self.to_type1_with(alg)?;
        let data = alpha.data.compose(&dynkin_idempotent(&alg.sh, self.trunc())?)?;
        Ok(Self::trusted(Kind::Type3, data, &self.colors))
    }

    fn expect_type3(&self) -> Result<()> {
        if self.kind == Kind::Type3 {
            Ok(())
        } else {
            Err(Error::Malformed(format!("expected a type3 series, found {}", self.kind)))
        }
    }
}

/// `γ_Exact`, the fixed point of `γ = Y⁻¹∘B⁺(Q(γ))`, solved degree by degree:
/// `γ(B⁺_c(ω)) = Q(γ)(ω) / (|ω|+1)` and zero on forests of several trees.
pub fn exact_solution(colors: &ColorSet, n: usize) -> Result<LBSeries> {
    let sh = ShuffleHopf::new(colors.clone());
    let (trees, _) = colors.tables(n);
    let mut gamma = GradedSeries::zero(n);
    for m in 1..=n {
        let q = q_operator(&sh, &gamma.truncated(m - 1))?;
        for t in &trees[m] {
            let v = q.get(t.children())? / int(m as i64);
            gamma.set(Forest::from_tree(t.clone()), v)?;
        }
    }
    Ok(LBSeries::trusted(Kind::Type3, gamma, colors))
}

/// `γ_Euler = •`: one for every single-node tree, zero elsewhere.
pub fn euler_method_series(colors: &ColorSet, n: usize) -> LBSeries {
    let mut gamma = GradedSeries::zero(n);
    if n >= 1 {
        for c in colors.colors() {
            gamma.set(Forest::from_tree(crate::Tree::leaf(c.clone())), crate::Rational::one()).expect("degree 1 fits");
        }
    }
    LBSeries::trusted(Kind::Type3, gamma, colors)
}

fn same_shape(a: &LBSeries, b: &LBSeries) -> Result<()> {
    if a.trunc() != b.trunc() {
        return Err(Error::TruncationMismatch { left: a.trunc(), right: b.trunc() });
    }
    let labels = |s: &LBSeries| s.colors.colors().iter().map(|c| c.label().to_owned()).collect::<Vec<_>>();
    if labels(a) != labels(b) {
        return Err(Error::InvalidColors("series over different color sets".into()));
    }
    Ok(())
}

/// `(Q(γ)•Q(γ̃))∘Y⁻¹∘D`.
pub fn compose_type3(a: &LBSeries, b: &LBSeries) -> Result<LBSeries> {
    a.expect_type3()?;
    b.expect_type3()?;
    same_shape(a, b)?;
    let alg = Algebras::new(&a.colors);
    let qa = a.to_type1_with(&alg)?;
    let qb = b.to_type1_with(&alg)?;
    let prod = alg.hn.gl_convolve(&qa.data, &qb.data)?;
    LBSeries::trusted(Kind::Type1, prod, &a.colors).to_type3_with(&alg)
}

/// `Q(γ)∘S_N∘Y⁻¹∘D`.
pub fn inverse_type3(g: &LBSeries) -> Result<LBSeries> {
    g.expect_type3()?;
    let alg = Algebras::new(&g.colors);
    let q = g.to_type1_with(&alg)?;
    let inv = q.data.compose(&antipode_endo(&alg.hn, g.trunc()))?;
    LBSeries::trusted(Kind::Type1, inv, &g.colors).to_type3_with(&alg)
}

/// The modified field `Q(γ)∘e` of a Type 3 series.
pub fn backward_error(g: &LBSeries) -> Result<LBSeries> {
    g.expect_type3()?;
    g.to_type2()
}

/// `Ω̃*`: values on non-planar classes, `σ(ω)·Σ_{ω′∼ω} α(ω′)`, keyed by canonical representative.
pub fn classical_coefficients(series: &GradedSeries<Forest>) -> BTreeMap<Forest, crate::Rational> {
    let mut sums: BTreeMap<Forest, crate::Rational> = BTreeMap::new();
    for (f, c) in series.iter() {
        *sums.entry(f.canonical()).or_insert_with(crate::Rational::zero) += c;
    }
    sums.into_iter()
        .map(|(f, s)| {
            let sigma = crate::Rational::from_integer(crate::forest::sigma(&f));
            (f, s * sigma)
        })
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

/// `P ∈ D(N)`: no constant term and primitive for the deshuffle coproduct.
pub fn is_lie_element(p: &LinComb<Forest>) -> bool {
    if !p.coeff(&Forest::empty()).is_zero() {
        return false;
    }
    let cross = p.map_linear(|w| deshuffle(w).filter(|(l, r)| !l.is_empty() && !r.is_empty()));
    cross.is_zero()
}

/// `[["o", "1"], ["o[o]", "1/2"]]` as a forest polynomial.
pub fn parse_terms(colors: &ColorSet, value: &Value) -> Result<LinComb<Forest>> {
    let bad = || Error::Malformed("expected a list of [forest, coefficient] pairs".into());
    let mut out = LinComb::zero();
    for t in value.as_array().ok_or_else(bad)? {
        match t.as_array().map(Vec::as_slice) {
            Some([Value::String(f), Value::String(c)]) => out.add_term(colors.parse(f)?, parse_rational(c)?),
            Some([Value::String(f), Value::Number(c)]) => out.add_term(colors.parse(f)?, parse_rational(&c.to_string())?),
            _ => return Err(bad()),
        }
    }
    Ok(out)
}

/// The substitution law `a★`: the D-algebra endomorphism of forests with
/// `a★(c) = a(c)` for each color.
#[derive(Debug, Clone)]
pub struct Substitution {
    colors: ColorSet,
    images: HashMap<Color, LinComb<Forest>>,
}

impl Substitution {
    /// Colors missing from `images` are mapped to themselves.
    pub fn new(colors: &ColorSet, images: impl IntoIterator<Item = (Color, LinComb<Forest>)>) -> Result<Self> {
        let mut map: HashMap<Color, LinComb<Forest>> =
            colors.colors().iter().map(|c| (c.clone(), LinComb::basis(Forest::from_tree(crate::Tree::leaf(c.clone()))))).collect();
        for (c, img) in images {
            if !is_lie_element(&img) {
                return Err(Error::NotInfinitesimal);
            }
            map.insert(c, img);
        }
        Ok(Self { colors: colors.clone(), images: map })
    }

    /// Parse `{"o": [["o", "1"], ["o[o]", "1/2"]], ...}`.
    pub fn from_json(colors: &ColorSet, value: &Value) -> Result<Self> {
        let obj = value.as_object().ok_or_else(|| Error::Malformed("substitution map must be an object".into()))?;
        let mut images = Vec::new();
        for (label, terms) in obj {
            let c = colors.by_label(label)?;
            images.push((c, parse_terms(colors, terms)?));
        }
        Self::new(colors, images)
    }

    pub fn colors(&self) -> &ColorSet {
        &self.colors
    }

    /// `a★` on one forest, keeping terms of degree at most `max_degree`.
    pub fn apply_forest(&self, forest: &Forest, max_degree: usize) -> LinComb<Forest> {
        let mut memo = HashMap::new();
        self.forest_image(forest, max_degree, &mut memo)
    }

    pub fn apply(&self, p: &LinComb<Forest>, max_degree: usize) -> LinComb<Forest> {
        let mut memo = HashMap::new();
        p.map_linear(|f| self.forest_image(f, max_degree, &mut memo))
    }

    fn forest_image(&self, forest: &Forest, n: usize, memo: &mut HashMap<Forest, LinComb<Forest>>) -> LinComb<Forest> {
        if let Some(hit) = memo.get(forest) {
            return hit.clone();
        }
        let out = match forest.trees() {
            [] => LinComb::basis(Forest::empty()),
            [t] => {
                // B⁺_c(ω) = ω[c]
                let branches = self.forest_image(t.children(), n, memo);
                let root = self.images[t.root()].truncate(n);
                graft(&branches, &root).truncate(n)
            }
            trees => {
                let head = self.forest_image(&Forest::from_tree(trees[0].clone()), n, memo);
                let tail = self.forest_image(&Forest::new(trees[1..].to_vec()), n, memo);
                concat_lincomb(&head, &tail).truncate(n)
            }
        };
        memo.insert(forest.clone(), out.clone());
        out
    }
}
