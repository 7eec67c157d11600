//! An explicit system of separating curves and their twists as automorphisms
//! of the free group that fix the surface relator.
//!
//! For `i = 1..g-1`:
//!
//! - `δ_i = [a1,b1]⋯[a_i,b_i]` cuts off the first `i` handles; its twist
//!   conjugates every generator of those handles by `δ_i`.
//! - `η_i = P_i(δ_i)`, where `P_i` is the twist along the nonseparating curve
//!   `c_i = b_i a_i⁻¹ b_i⁻¹ a_{i+1}` (followed, on the last handle only, by a
//!   rotation of handle g). The twist along `η_i` is `P_i ∘ T_{δ_i}⁻¹ ∘ P_i⁻¹`.
//!
//! The `η_i` twist uses the opposite handedness to the `δ_i` twist, which
//! makes `μ_{δ_i}(η̃_i) = (1−α(x))(1−α(y))` and
//! `μ_{η_i}(δ̃_i) = (1−α(x)⁻¹)(1−α(y)⁻¹)` with `(x, y)` the handle classes of
//! [`HandleConvention::standard`](crate::characters::HandleConvention::standard).

use crate::surface_group::{abelianize, partial_relator, Letter, Word, WordMap};

use super::{BetaTerm, TwistData};

fn gen(l: Letter) -> Word {
    Word::new([l])
}

/// Twist along `δ_k`: `x ↦ δ_k x δ_k⁻¹` on the generators of handles `1..=k`.
pub fn conjugation_twist(genus: usize, k: usize, inverse: bool) -> WordMap {
    let d = partial_relator(k);
    let (pre, post) = if inverse {
        (d.inverse(), d.clone())
    } else {
        (d.clone(), d.inverse())
    };
    let mut m = WordMap::identity(genus);
    for x in 0..2 * k {
        m.set_image(x, pre.concat(&gen(Letter::new(x, false))).concat(&post));
    }
    m
}

/// Twist along `c_i = b_i a_i⁻¹ b_i⁻¹ a_{i+1}`, acting on handles `i` and `i+1`.
pub fn handle_slide(genus: usize, i: usize, inverse: bool) -> WordMap {
    let (a, b) = (Letter::a(i), Letter::b(i));
    let (a2, b2) = (Letter::a(i + 1), Letter::b(i + 1));
    let c = Word::new([b, a.inv(), b.inv(), a2]);
    let ci = c.inverse();
    let (left, right) = if inverse { (c, ci) } else { (ci, c) };
    let mut m = WordMap::identity(genus);
    m.set_image(b.generator, left.concat(&gen(b)));
    m.set_image(a2.generator, left.concat(&gen(a2)).concat(&right));
    m.set_image(b2.generator, gen(b2).concat(&right));
    m
}

/// Rotation of handle `h` fixing `[a_h, b_h]`:
/// `a_h ↦ u a_h⁻¹ u⁻¹`, `b_h ↦ u b_h⁻¹ u⁻¹` with `u = b_h a_h`.
pub fn handle_rotation(genus: usize, h: usize, inverse: bool) -> WordMap {
    let (a, b) = (Letter::a(h), Letter::b(h));
    let mut m = WordMap::identity(genus);
    if inverse {
        m.set_image(a.generator, Word::new([a, b, a.inv(), b.inv(), a.inv()]));
        m.set_image(b.generator, Word::new([a, b.inv(), a.inv()]));
    } else {
        let u = Word::new([b, a]);
        m.set_image(a.generator, u.concat(&gen(a.inv())).concat(&u.inverse()));
        m.set_image(b.generator, u.concat(&gen(b.inv())).concat(&u.inverse()));
    }
    m
}

/// A twist along `P(δ_k)`, with `P` an automorphism fixing the relator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatingTwist {
    pub name: String,
    pub genus: usize,
    /// The curve is conjugate to `δ_k`.
    pub handles: usize,
    pub conjugator: WordMap,
    pub conjugator_inv: WordMap,
    /// Left-handed relative to the conjugation twist along `δ_k`.
    pub flipped: bool,
}

impl SeparatingTwist {
    pub fn plain(genus: usize, k: usize, name: &str) -> Self {
        SeparatingTwist {
            name: name.to_string(),
            genus,
            handles: k,
            conjugator: WordMap::identity(genus),
            conjugator_inv: WordMap::identity(genus),
            flipped: false,
        }
    }

    /// The based curve `P(δ_k)`.
    pub fn curve(&self) -> Word {
        self.conjugator.apply(&partial_relator(self.handles))
    }

    /// The twist as an automorphism of the free group.
    pub fn automorphism(&self) -> WordMap {
        let t = conjugation_twist(self.genus, self.handles, self.flipped);
        self.conjugator.compose(&t).compose(&self.conjugator_inv)
    }

    pub fn inverse_automorphism(&self) -> WordMap {
        let t = conjugation_twist(self.genus, self.handles, !self.flipped);
        self.conjugator.compose(&t).compose(&self.conjugator_inv)
    }

    /// Signed β-terms of a word, in reading order, before cancellation.
    ///
    /// Each letter of `w' = P⁻¹(w)` from handles `1..=k` contributes a pair
    /// built from the classes of `P` applied to the prefixes before and after
    /// it; the β-class of a term with monomial `m` is `[w] − m`.
    pub fn beta_terms(&self, w: &Word) -> Vec<BetaTerm> {
        let class = abelianize(w, self.genus);
        let pulled = self.conjugator_inv.apply(w);
        let letters = pulled.letters();
        let prefix_class = |n: usize| {
            abelianize(
                &self.conjugator.apply(&Word::new(letters[..n].iter().copied())),
                self.genus,
            )
        };
        let mut out = Vec::new();
        for (k, l) in letters.iter().enumerate() {
            if l.generator >= 2 * self.handles {
                continue;
            }
            let before = prefix_class(k);
            let after = prefix_class(k + 1);
            let (plus, minus) = if self.flipped { (after, before) } else { (before, after) };
            out.push(BetaTerm::new(1, class.sub(&plus)));
            out.push(BetaTerm::new(-1, class.sub(&minus)));
        }
        out
    }

    pub fn twist_data(&self) -> TwistData {
        let beta = (0..2 * self.genus)
            .map(|x| self.beta_terms(&gen(Letter::new(x, false))))
            .collect();
        TwistData {
            name: self.name.clone(),
            based_curve: self.curve(),
            beta,
        }
    }
}

/// The curves `δ_1, η_1, …, δ_{g−1}, η_{g−1}` in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSystem {
    pub genus: usize,
    pub twists: Vec<SeparatingTwist>,
}

impl CurveSystem {
    pub fn delta(&self, i: usize) -> &SeparatingTwist {
        &self.twists[2 * (i - 1)]
    }

    pub fn eta(&self, i: usize) -> &SeparatingTwist {
        &self.twists[2 * (i - 1) + 1]
    }

    pub fn twist_data(&self) -> Vec<TwistData> {
        self.twists.iter().map(SeparatingTwist::twist_data).collect()
    }
}

pub fn standard_curve_system(genus: usize) -> CurveSystem {
    let mut twists = Vec::new();
    for i in 1..genus {
        twists.push(SeparatingTwist::plain(genus, i, &format!("delta{i}")));
        let mut p = handle_slide(genus, i, false);
        let mut p_inv = handle_slide(genus, i, true);
        if i + 1 == genus {
            p = handle_rotation(genus, genus, false).compose(&p);
            p_inv = p_inv.compose(&handle_rotation(genus, genus, true));
        }
        twists.push(SeparatingTwist {
            name: format!("eta{i}"),
            genus,
            handles: i,
            conjugator: p,
            conjugator_inv: p_inv,
            flipped: true,
        });
    }
    CurveSystem { genus, twists }
}
