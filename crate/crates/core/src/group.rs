//! Exact arithmetic in the extraspecial group of order p³ and exponent p.
//!
//! Elements are stored in the normal form `a^i b^j c^k` with `c = [a, b]`
//! central. Commuting `b` past `a` uses `ba = ab c⁻¹` (equivalently
//! `ab = bac`), so `b^j a^i = a^i b^j c^{-ij}` and
//!
//! ```text
//! (i₁, j₁, k₁) · (i₂, j₂, k₂) = (i₁ + i₂, j₁ + j₂, k₁ + k₂ − i₂·j₁)   (mod p)
//! ```
//!
//! The commutator convention is `[x, y] = x⁻¹ y⁻¹ x y`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest prime accepted by [`GroupParams::new`].
pub const MAX_SUPPORTED_PRIME: u32 = 13;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn is_primitive_root(t: u32, p: u32) -> bool {
    if t == 0 || t >= p {
        return false;
    }
    let mut seen = vec![false; p as usize];
    let mut x = 1u32;
    for _ in 0..p - 1 {
        if seen[x as usize] {
            return false;
        }
        seen[x as usize] = true;
        x = x * t % p;
    }
    x == 1 && seen[1..].iter().all(|&s| s)
}

/// The odd prime `p` together with a fixed generator `t` of `Z_p^*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupParams {
    p: u32,
    t: u32,
}

impl GroupParams {
    /// Validates `p` and picks the smallest primitive root as `t`.
    pub fn new(p: u64) -> Result<Self> {
        if p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        if p > MAX_SUPPORTED_PRIME as u64 {
            return Err(Error::UnsupportedPrime {
                p,
                max: MAX_SUPPORTED_PRIME as u64,
            });
        }
        let p = p as u32;
        let t = (2..p)
            .find(|&t| is_primitive_root(t, p))
            .expect("every prime has a primitive root");
        Ok(Self { p, t })
    }

    pub fn with_primitive_root(p: u64, t: u32) -> Result<Self> {
        let base = Self::new(p)?;
        if !is_primitive_root(t, base.p) {
            return Err(Error::InvalidPrimitiveRoot { p: base.p, t });
        }
        Ok(Self { p: base.p, t })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// `p³`, the group order and the vertex count of the Cayley graph.
    pub fn order(&self) -> usize {
        (self.p as usize).pow(3)
    }

    fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    pub fn element(&self, i: i64, j: i64, k: i64) -> GroupElement {
        GroupElement {
            i: self.reduce(i),
            j: self.reduce(j),
            k: self.reduce(k),
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::IDENTITY
    }

    pub fn a(&self) -> GroupElement {
        self.element(1, 0, 0)
    }

    pub fn b(&self) -> GroupElement {
        self.element(0, 1, 0)
    }

    pub fn c(&self) -> GroupElement {
        self.element(0, 0, 1)
    }

    pub fn is_valid(&self, g: GroupElement) -> bool {
        g.i < self.p && g.j < self.p && g.k < self.p
    }

    /// Vertex index `i·p² + j·p + k`; the identity has index 0.
    pub fn index(&self, g: GroupElement) -> usize {
        let p = self.p as usize;
        g.i as usize * p * p + g.j as usize * p + g.k as usize
    }

    pub fn from_index(&self, idx: usize) -> GroupElement {
        let p = self.p as usize;
        GroupElement {
            i: (idx / (p * p)) as u32,
            j: (idx / p % p) as u32,
            k: (idx % p) as u32,
        }
    }

    /// All `p³` elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(move |idx| self.from_index(idx))
    }

    pub fn multiply(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        let p = self.p as u64;
        let (i1, j1, k1) = (g.i as u64, g.j as u64, g.k as u64);
        let (i2, j2, k2) = (h.i as u64, h.j as u64, h.k as u64);
        GroupElement {
            i: ((i1 + i2) % p) as u32,
            j: ((j1 + j2) % p) as u32,
            k: ((k1 + k2 + p * p - (i2 * j1) % (p * p)) % p) as u32,
        }
    }

    pub fn inverse(&self, g: GroupElement) -> GroupElement {
        self.element(
            -(g.i as i64),
            -(g.j as i64),
            -(g.k as i64) - g.i as i64 * g.j as i64,
        )
    }

    pub fn pow(&self, g: GroupElement, e: u64) -> GroupElement {
        let mut acc = GroupElement::IDENTITY;
        let mut base = g;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(acc, base);
            }
            base = self.multiply(base, base);
            e >>= 1;
        }
        acc
    }

    /// `[g, h] = g⁻¹ h⁻¹ g h`.
    pub fn commutator(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        let gi = self.inverse(g);
        let hi = self.inverse(h);
        self.multiply(self.multiply(gi, hi), self.multiply(g, h))
    }

    /// `S = {a^i, b^i : 1 ≤ i ≤ p−1}` in index order.
    pub fn connection_set(&self) -> Vec<GroupElement> {
        let mut s: Vec<GroupElement> = (1..self.p as i64)
            .flat_map(|i| [self.element(i, 0, 0), self.element(0, i, 0)])
            .collect();
        s.sort_by_key(|&g| self.index(g));
        s
    }

    /// Closure of a set of elements under multiplication.
    pub fn generated_subgroup(&self, gens: &[GroupElement]) -> BTreeSet<GroupElement> {
        let mut set = BTreeSet::new();
        set.insert(GroupElement::IDENTITY);
        let mut frontier = vec![GroupElement::IDENTITY];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.multiply(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    /// The maps `α, β, γ` fixing `S`:
    /// `α: a ↦ a^t, b ↦ b`, `β: a ↦ a, b ↦ b^t`, `γ: a ↦ b, b ↦ a`.
    pub fn canonical_automorphisms(&self) -> [GroupAutomorphism; 3] {
        let t = self.t as i64;
        let alpha = GroupAutomorphism::new(self, self.element(t, 0, 0), self.b())
            .expect("alpha is an automorphism");
        let beta = GroupAutomorphism::new(self, self.a(), self.element(0, t, 0))
            .expect("beta is an automorphism");
        let gamma =
            GroupAutomorphism::new(self, self.b(), self.a()).expect("gamma is an automorphism");
        [alpha, beta, gamma]
    }

    /// Every automorphism of G that fixes S setwise.
    ///
    /// Since `a, b ∈ S`, their images lie in S, so the search runs over
    /// `S × S` and keeps the pairs that extend to an automorphism
    /// preserving S. The result is sorted by generator images.
    pub fn aut_g_s(&self) -> Result<Vec<GroupAutomorphism>> {
        let s = self.connection_set();
        let s_set: BTreeSet<GroupElement> = s.iter().copied().collect();
        let mut out = Vec::new();
        for &x in &s {
            for &y in &s {
                let Ok(phi) = GroupAutomorphism::new(self, x, y) else {
                    continue;
                };
                if s.iter().all(|&g| s_set.contains(&phi.apply(self, g))) {
                    out.push(phi);
                }
            }
        }
        out.sort();
        let members: BTreeSet<GroupAutomorphism> = out.iter().copied().collect();
        for f in &out {
            for g in &out {
                if !members.contains(&f.then(self, g)) {
                    return Err(Error::InternalInvariant(format!(
                        "Aut(G,S) not closed under composition: {f} then {g}"
                    )));
                }
            }
        }
        Ok(out)
    }

    /// The `p + 1` subgroups of order p²: `⟨b⟩×⟨c⟩` followed by
    /// `⟨ab^i⟩×⟨c⟩` for `0 ≤ i ≤ p−1`. Each set is sorted.
    pub fn order_p2_subgroups(&self) -> Result<Vec<Vec<GroupElement>>> {
        let c = self.c();
        let mut gens = vec![self.b()];
        gens.extend((0..self.p as i64).map(|i| self.element(1, i, 0)));
        let expected = (self.p as usize).pow(2);
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            let h = self.generated_subgroup(&[g, c]);
            if h.len() != expected {
                return Err(Error::InternalInvariant(format!(
                    "<{g}> x <c> has order {} instead of {expected}",
                    h.len()
                )));
            }
            for &x in &h {
                for &y in &h {
                    if !h.contains(&self.multiply(x, y)) {
                        return Err(Error::InternalInvariant(format!(
                            "<{g}> x <c> is not closed"
                        )));
                    }
                }
            }
            out.push(h.into_iter().collect::<Vec<_>>());
        }
        let distinct: BTreeSet<&Vec<GroupElement>> = out.iter().collect();
        if distinct.len() != self.p as usize + 1 {
            return Err(Error::InternalInvariant(format!(
                "expected {} distinct subgroups of order p^2, found {}",
                self.p + 1,
                distinct.len()
            )));
        }
        Ok(out)
    }
}

/// An element `a^i b^j c^k`, coordinates reduced mod p.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
pub struct GroupElement {
    pub i: u32,
    pub j: u32,
    pub k: u32,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { i: 0, j: 0, k: 0 };

    pub fn new(i: u32, j: u32, k: u32) -> Self {
        Self { i, j, k }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}.{}", self.i, self.j, self.k)
    }
}

/// An automorphism of G given by the images of `a` and `b`; the image of
/// `c` is their commutator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupAutomorphism {
    img_a: GroupElement,
    img_b: GroupElement,
    img_c: GroupElement,
}

impl GroupAutomorphism {
    /// Checks the defining relations on the images (`x^p = y^p = 1`,
    /// `[x, y]` commutes with `x` and `y`, `[x, y]^p = 1`) and that they
    /// generate G.
    pub fn new(params: &GroupParams, img_a: GroupElement, img_b: GroupElement) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidAutomorphism {
            img_a: img_a.to_string(),
            img_b: img_b.to_string(),
            reason: reason.to_string(),
        };
        if !params.is_valid(img_a) || !params.is_valid(img_b) {
            return Err(bad("coordinates not reduced mod p"));
        }
        let p = params.p() as u64;
        let img_c = params.commutator(img_a, img_b);
        let relations = params.pow(img_a, p).is_identity()
            && params.pow(img_b, p).is_identity()
            && params.pow(img_c, p).is_identity()
            && params.commutator(img_c, img_a).is_identity()
            && params.commutator(img_c, img_b).is_identity();
        if !relations {
            return Err(bad("images violate the defining relations"));
        }
        if params.generated_subgroup(&[img_a, img_b]).len() != params.order() {
            return Err(bad("images do not generate G"));
        }
        Ok(Self {
            img_a,
            img_b,
            img_c,
        })
    }

    pub fn identity(params: &GroupParams) -> Self {
        Self {
            img_a: params.a(),
            img_b: params.b(),
            img_c: params.c(),
        }
    }

    pub fn img_a(&self) -> GroupElement {
        self.img_a
    }

    pub fn img_b(&self) -> GroupElement {
        self.img_b
    }

    pub fn img_c(&self) -> GroupElement {
        self.img_c
    }

    /// `a^i b^j c^k ↦ img_a^i · img_b^j · img_c^k`.
    pub fn apply(&self, params: &GroupParams, g: GroupElement) -> GroupElement {
        let x = params.pow(self.img_a, g.i as u64);
        let y = params.pow(self.img_b, g.j as u64);
        let z = params.pow(self.img_c, g.k as u64);
        params.multiply(params.multiply(x, y), z)
    }

    /// `self` first, then `other`.
    pub fn then(&self, params: &GroupParams, other: &GroupAutomorphism) -> GroupAutomorphism {
        let img_a = other.apply(params, self.img_a);
        let img_b = other.apply(params, self.img_b);
        GroupAutomorphism {
            img_a,
            img_b,
            img_c: params.commutator(img_a, img_b),
        }
    }

    pub fn pow(&self, params: &GroupParams, e: u64) -> GroupAutomorphism {
        let mut acc = GroupAutomorphism::identity(params);
        for _ in 0..e {
            acc = acc.then(params, self);
        }
        acc
    }

    pub fn inverse(&self, params: &GroupParams) -> GroupAutomorphism {
        let mut pre_a = None;
        let mut pre_b = None;
        for g in params.elements() {
            let img = self.apply(params, g);
            if img == params.a() {
                pre_a = Some(g);
            }
            if img == params.b() {
                pre_b = Some(g);
            }
        }
        let (img_a, img_b) = (pre_a.expect("bijective"), pre_b.expect("bijective"));
        GroupAutomorphism {
            img_a,
            img_b,
            img_c: params.commutator(img_a, img_b),
        }
    }

    /// Full image table indexed by vertex index.
    pub fn table(&self, params: &GroupParams) -> Vec<GroupElement> {
        params.elements().map(|g| self.apply(params, g)).collect()
    }
}

impl fmt::Display for GroupAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[a->{}, b->{}]", self.img_a, self.img_b)
    }
}
