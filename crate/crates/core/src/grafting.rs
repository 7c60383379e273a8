//! Left grafting and the Grossman–Larson product on planar forests.

use num_traits::One;

use crate::error::{Error, Result};
use crate::forest::{Color, Forest, Tree};
use crate::lincomb::{LinComb, Rational};

/// `B⁺_c(ω)`: a new root `c` carrying the branches `ω`.
pub fn b_plus(forest: &Forest, root: &Color) -> Tree {
    Tree::new(root.clone(), forest.clone())
}

/// `B⁻(τ)`: the branches of a single tree.
pub fn b_minus(forest: &Forest) -> Result<Forest> {
    match forest.trees() {
        [t] => Ok(t.children().clone()),
        ts => Err(Error::NotATree(ts.len())),
    }
}

/// `ω[ω′]` on basis forests: every tree of `ω` is attached by a new edge to
/// some node of `ω′`. Trees landing on the same node become its leftmost
/// branches, in their order in `ω`.
pub fn left_graft(left: &Forest, right: &Forest) -> LinComb<Forest> {
    let k = left.len();
    if k == 0 {
        return LinComb::basis(right.clone());
    }
    let nodes = right.size();
    if nodes == 0 {
        return LinComb::zero();
    }
    let mut out = LinComb::zero();
    let mut target = vec![0usize; k];
    loop {
        let mut counter = 0;
        let grafted = rebuild_forest(right, left.trees(), &target, &mut counter);
        out.add_term(grafted, Rational::one());
        // next assignment in base `nodes`
        let mut i = 0;
        while i < k {
            target[i] += 1;
            if target[i] < nodes {
                break;
            }
            target[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    out
}

/// Rebuild `forest` in preorder, inserting at node `n` the left trees whose target is `n`.
fn rebuild_forest(forest: &Forest, left: &[Tree], target: &[usize], counter: &mut usize) -> Forest {
    forest.trees().iter().map(|t| rebuild_tree(t, left, target, counter)).collect()
}

fn rebuild_tree(tree: &Tree, left: &[Tree], target: &[usize], counter: &mut usize) -> Tree {
    let me = *counter;
    *counter += 1;
    let mut kids: Vec<Tree> = left.iter().zip(target).filter(|(_, &n)| n == me).map(|(t, _)| t.clone()).collect();
    kids.extend(rebuild_forest(tree.children(), left, target, counter).into_letters());
    Tree::new(tree.root().clone(), Forest::new(kids))
}

/// Bilinear extension of [`left_graft`].
pub fn graft(p: &LinComb<Forest>, q: &LinComb<Forest>) -> LinComb<Forest> {
    p.bilinear(q, left_graft)
}

/// `ω • ω′ = B⁻(ω[B⁺(ω′)])` on basis forests.
pub fn gl_product(left: &Forest, right: &Forest) -> LinComb<Forest> {
    let planted = Forest::from_tree(b_plus(right, &Color::scratch()));
    left_graft(left, &planted).map_basis(|f| f.trees()[0].children().clone())
}

/// Bilinear extension of [`gl_product`].
pub fn gl(p: &LinComb<Forest>, q: &LinComb<Forest>) -> LinComb<Forest> {
    p.bilinear(q, gl_product)
}

/// Concatenation of forest polynomials.
pub fn concat(p: &LinComb<Forest>, q: &LinComb<Forest>) -> LinComb<Forest> {
    crate::wordhopf::concat_lincomb(p, q)
}
