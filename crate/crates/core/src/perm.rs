//! Permutations of `{0, …, n−1}` and explicitly enumerated permutation groups.
//!
//! Composition is left to right: `f.then(&g)` (also written `&f * &g`) maps
//! `x ↦ g(f(x))`.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::ops::Mul;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of elements a closure may enumerate.
pub const DEFAULT_CLOSURE_BOUND: usize = 1_000_000;

/// Environment variable overriding [`DEFAULT_CLOSURE_BOUND`].
pub const CLOSURE_BOUND_ENV: &str = "CAYLEY2DT_CLOSURE_BOUND";

pub fn closure_bound() -> usize {
    std::env::var(CLOSURE_BOUND_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CLOSURE_BOUND)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "image list of length {n} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation from a map that is known to be bijective.
    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Self { images }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Result<Self> {
        Self::from_images((0..n).map(|x| f(x) as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    /// `x ↦ other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `g⁻¹ · self · g` under left-to-right composition.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    pub fn fixes(&self, x: usize) -> bool {
        self.images[x] as usize == x
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // cycle notation, fixed points omitted
        let mut seen = vec![false; self.images.len()];
        let mut any = false;
        for start in 0..self.images.len() {
            if seen[start] || self.fixes(start) {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.apply(x);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// How a group acts on an invariant point set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regularity {
    Regular,
    SemiregularOnly,
    TransitiveOnly,
    Neither,
}

/// A permutation group given by generators; the element list is enumerated
/// on first use and kept sorted lexicographically by image array.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    bound: usize,
    elements: OnceLock<Vec<Permutation>>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        let id = Permutation::identity(degree);
        Self {
            degree,
            generators: Vec::new(),
            bound: closure_bound(),
            elements: OnceLock::from(vec![id]),
        }
    }

    /// Group generated by `generators`, enumerated eagerly.
    pub fn closure(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::closure_with_bound(degree, generators, closure_bound())
    }

    pub fn closure_with_bound(
        degree: usize,
        generators: Vec<Permutation>,
        bound: usize,
    ) -> Result<Self> {
        let group = Self::lazy_with_bound(degree, generators, bound)?;
        group.elements()?;
        Ok(group)
    }

    /// Group generated by `generators`; elements are enumerated on demand.
    pub fn lazy(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::lazy_with_bound(degree, generators, closure_bound())
    }

    fn lazy_with_bound(degree: usize, generators: Vec<Permutation>, bound: usize) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let generators: Vec<Permutation> = generators
            .into_iter()
            .filter(|g| !g.is_identity())
            .collect();
        Ok(Self {
            degree,
            generators,
            bound,
            elements: OnceLock::new(),
        })
    }

    /// Wraps a set that is already known to be a group, choosing a small
    /// generating set greedily.
    pub fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        let members: HashSet<&Permutation> = elements.iter().collect();
        let mut generators: Vec<Permutation> = Vec::new();
        let mut reached: HashSet<Permutation> = HashSet::new();
        reached.insert(Permutation::identity(degree));
        for e in &elements {
            if reached.contains(e) {
                continue;
            }
            generators.push(e.clone());
            reached = enumerate(degree, &generators, usize::MAX)?
                .into_iter()
                .collect();
            if reached.iter().any(|x| !members.contains(x)) {
                return Err(Error::NotSubgroup(
                    "element set is not closed under composition".into(),
                ));
            }
        }
        if reached.len() != elements.len() {
            return Err(Error::NotSubgroup("element set is not a group".into()));
        }
        Ok(Self {
            degree,
            generators,
            bound: closure_bound(),
            elements: OnceLock::from(elements),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> Result<&[Permutation]> {
        if let Some(e) = self.elements.get() {
            return Ok(e);
        }
        let mut all = enumerate(self.degree, &self.generators, self.bound)?;
        all.sort();
        Ok(self.elements.get_or_init(|| all))
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.elements()?.len())
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        Ok(g.degree() == self.degree && self.elements()?.binary_search(g).is_ok())
    }

    /// Points reachable from `point` under the generators, sorted.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut out = vec![point];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// Partition of all points into orbits, ordered by minimal point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if !seen[x] {
                let o = self.orbit(x);
                for &y in &o {
                    seen[y] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn stabilizer(&self, point: usize) -> Result<PermGroup> {
        if point >= self.degree {
            return Err(Error::OutOfRange {
                index: point,
                limit: self.degree,
            });
        }
        let fixed: Vec<Permutation> = self
            .elements()?
            .iter()
            .filter(|g| g.fixes(point))
            .cloned()
            .collect();
        PermGroup::from_elements(self.degree, fixed)
    }

    /// Whether `self` is normal in `group`, checked on generators.
    pub fn is_normal_in(&self, group: &PermGroup) -> Result<bool> {
        if self.degree != group.degree {
            return Err(Error::DegreeMismatch {
                expected: group.degree,
                got: self.degree,
            });
        }
        for h in &self.generators {
            if !group.contains(h)? {
                return Err(Error::NotSubgroup(format!(
                    "generator {h:?} is not in the ambient group"
                )));
            }
        }
        for g in &group.generators {
            for h in &self.generators {
                if !self.contains(&h.conjugate_by(g))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Classifies the action on `points`, which must be invariant.
    pub fn action_regularity(&self, points: &[usize]) -> Result<Regularity> {
        let orbits = orbits_on_set(self, points.to_vec(), |g, &x| g.apply(x))?;
        let order = self.order()?;
        let transitive = orbits.len() <= 1;
        let semiregular = orbits.iter().all(|o| o.len() == order);
        Ok(match (transitive, semiregular) {
            (true, true) => Regularity::Regular,
            (false, true) => Regularity::SemiregularOnly,
            (true, false) => Regularity::TransitiveOnly,
            (false, false) => Regularity::Neither,
        })
    }

    /// Image of the group under a homomorphism given on generators.
    pub fn induced(
        &self,
        degree: usize,
        f: impl Fn(&Permutation) -> Result<Permutation>,
    ) -> Result<PermGroup> {
        let gens = self.generators.iter().map(f).collect::<Result<Vec<_>>>()?;
        PermGroup::lazy_with_bound(degree, gens, self.bound)
    }

    /// The subgroup generated by `self` and `extra`.
    pub fn join(&self, extra: &[Permutation]) -> Result<PermGroup> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        PermGroup::lazy_with_bound(self.degree, gens, self.bound)
    }

    pub fn same_elements(&self, other: &PermGroup) -> Result<bool> {
        Ok(self.degree == other.degree && self.elements()? == other.elements()?)
    }
}

fn enumerate(degree: usize, generators: &[Permutation], bound: usize) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.then(g);
            if !seen.contains(&y) {
                if seen.len() >= bound {
                    return Err(Error::BoundExceeded {
                        what: "permutation group closure".into(),
                        bound,
                    });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Orbits of the group on a finite invariant set of items, computed by
/// generator closure. Orbits are sorted internally and ordered by minimum.
pub fn orbits_on_set<T, F>(group: &PermGroup, items: Vec<T>, act: F) -> Result<Vec<Vec<T>>>
where
    T: Clone + Ord + Hash,
    F: Fn(&Permutation, &T) -> T,
{
    let mut items = items;
    items.sort();
    items.dedup();
    let index: HashMap<&T, usize> = items.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut label = vec![usize::MAX; items.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..items.len() {
        if label[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        label[start] = id;
        let mut members = vec![start];
        let mut i = 0;
        while i < members.len() {
            let x = &items[members[i]];
            for g in group.generators() {
                let y = act(g, x);
                let Some(&yi) = index.get(&y) else {
                    return Err(Error::NotInvariant(
                        "a generator maps an item outside the given set".into(),
                    ));
                };
                if label[yi] == usize::MAX {
                    label[yi] = id;
                    members.push(yi);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        orbits.push(members);
    }
    Ok(orbits
        .into_iter()
        .map(|o| o.into_iter().map(|i| items[i].clone()).collect())
        .collect())
}

/// Orbits on ordered pairs of points.
pub fn orbits_on_ordered_pairs(
    group: &PermGroup,
    pairs: Vec<(usize, usize)>,
) -> Result<Vec<Vec<(usize, usize)>>> {
    orbits_on_set(group, pairs, |g, &(u, v)| (g.apply(u), g.apply(v)))
}

/// Orbits on tuples of points (s-arcs and the like).
pub fn orbits_on_tuples(
    group: &PermGroup,
    tuples: Vec<Vec<usize>>,
) -> Result<Vec<Vec<Vec<usize>>>> {
    orbits_on_set(group, tuples, |g, t| {
        t.iter().map(|&x| g.apply(x)).collect()
    })
}

/// Orbits on unordered pairs stored as `(min, max)`.
pub fn orbits_on_edges(
    group: &PermGroup,
    edges: Vec<(usize, usize)>,
) -> Result<Vec<Vec<(usize, usize)>>> {
    orbits_on_set(group, edges, |g, &(u, v)| {
        let (x, y) = (g.apply(u), g.apply(v));
        (x.min(y), x.max(y))
    })
}

/// Checks `|G| = |orbit(x)| · |G_x|` for every point and returns the
/// per-orbit stabilizer orders.
pub fn orbit_stabilizer_holds(group: &PermGroup) -> Result<bool> {
    let order = group.order()?;
    let mut stab_counts: BTreeMap<usize, usize> = BTreeMap::new();
    for g in group.elements()? {
        for x in 0..group.degree() {
            if g.fixes(x) {
                *stab_counts.entry(x).or_default() += 1;
            }
        }
    }
    let mut orbit_size = vec![0usize; group.degree()];
    for o in group.orbits() {
        for &x in &o {
            orbit_size[x] = o.len();
        }
    }
    Ok((0..group.degree())
        .all(|x| orbit_size[x] * stab_counts.get(&x).copied().unwrap_or(0) == order))
}
