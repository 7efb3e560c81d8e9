use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::word::push_reduced;
use super::{Letter, ReducedWord};
use crate::error::{Error, Result};

/// Default bound on the order of a finite permutation group built by closure.
pub const DEFAULT_GROUP_ORDER_CAP: usize = 1_000_000;

/// An element of a [`QuotientGroup`]. Only meaningful together with the group that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElem {
    Finite(u32),
    Abelian(Vec<i64>),
    Free(ReducedWord),
}

/// `G = F_d / N` together with the homomorphism `Ψ_N` on letters.
#[derive(Clone, Debug)]
pub enum QuotientGroup {
    Finite(FiniteGroup),
    FreeAbelian(FreeAbelianGroup),
    FreeQuotient(FreeQuotientGroup),
}

/// Finite group generated by permutation images of the generators.
///
/// Permutations compose left to right: `(g * h)[x] = h[g[x]]`.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    rank: usize,
    degree: usize,
    perms: Vec<Vec<u32>>,
    /// `right_mul[g * 2d + letter]`
    right_mul: Vec<u32>,
    inverse: Vec<u32>,
    dist: Vec<u32>,
    lookup: HashMap<Vec<u32>, u32>,
}

/// `Z^k` with generator images given as integer vectors.
#[derive(Clone, Debug)]
pub struct FreeAbelianGroup {
    rank: usize,
    dim: usize,
    images: Vec<Vec<i64>>,
    standard: bool,
}

/// Free group on the generators that survive after killing a subset.
#[derive(Clone, Debug)]
pub struct FreeQuotientGroup {
    rank: usize,
    killed: Vec<bool>,
}

/// Quotient description as it appears in config files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum QuotientSpec {
    /// One permutation of `0..degree` per generator.
    FinitePerm { degree: usize, images: Vec<Vec<u32>> },
    /// One vector of `Z^rank` per generator.
    Abelianization { rank: usize, images: Vec<Vec<i64>> },
    /// 1-based indices of generators mapped to the identity.
    FreeQuotient { kill: Vec<usize> },
}

impl QuotientSpec {
    pub fn build(&self, rank: usize) -> Result<QuotientGroup> {
        match self {
            QuotientSpec::FinitePerm { degree, images } => {
                Ok(QuotientGroup::Finite(FiniteGroup::from_permutations(rank, *degree, images.clone(), DEFAULT_GROUP_ORDER_CAP)?))
            }
            QuotientSpec::Abelianization { rank: k, images } => {
                Ok(QuotientGroup::FreeAbelian(FreeAbelianGroup::new(rank, *k, images.clone())?))
            }
            QuotientSpec::FreeQuotient { kill } => {
                let mut zero_based = Vec::with_capacity(kill.len());
                for &k in kill {
                    if k == 0 || k > rank {
                        return Err(Error::Config(format!(
                            "quotient.kill: generator index {k} outside 1..={rank}"
                        )));
                    }
                    zero_based.push(k - 1);
                }
                Ok(QuotientGroup::FreeQuotient(FreeQuotientGroup::new(rank, &zero_based)))
            }
        }
    }
}

impl FiniteGroup {
    pub fn from_permutations(rank: usize, degree: usize, images: Vec<Vec<u32>>, order_cap: usize) -> Result<Self> {
        if images.len() != rank {
            return Err(Error::Config(format!(
                "quotient.images: expected {rank} permutations, got {}",
                images.len()
            )));
        }
        if degree == 0 {
            return Err(Error::Config("quotient.degree must be positive".into()));
        }
        for (i, p) in images.iter().enumerate() {
            let mut seen = vec![false; degree];
            if p.len() != degree || p.iter().any(|&x| (x as usize) >= degree || std::mem::replace(&mut seen[x as usize], true)) {
                return Err(Error::Config(format!(
                    "quotient.images[{i}] is not a permutation of 0..{degree}"
                )));
            }
        }
        // letter images: generator permutation and its inverse
        let mut letter_perms = Vec::with_capacity(2 * rank);
        for p in &images {
            letter_perms.push(p.clone());
            letter_perms.push(invert_perm(p));
        }

        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut perms = vec![identity.clone()];
        let mut lookup = HashMap::from([(identity, 0u32)]);
        let mut dist = vec![0u32];
        let mut queue = VecDeque::from([0u32]);
        while let Some(g) = queue.pop_front() {
            for lp in &letter_perms {
                let h = compose(&perms[g as usize], lp);
                if !lookup.contains_key(&h) {
                    if perms.len() >= order_cap {
                        return Err(Error::CapExceeded { what: "finite group order", cap: order_cap });
                    }
                    let id = perms.len() as u32;
                    lookup.insert(h.clone(), id);
                    perms.push(h);
                    dist.push(dist[g as usize] + 1);
                    queue.push_back(id);
                }
            }
        }

        let letters = 2 * rank;
        let mut right_mul = vec![0u32; perms.len() * letters];
        let mut inverse = vec![0u32; perms.len()];
        for (g, p) in perms.iter().enumerate() {
            for (l, lp) in letter_perms.iter().enumerate() {
                right_mul[g * letters + l] = lookup[&compose(p, lp)];
            }
            inverse[g] = lookup[&invert_perm(p)];
        }
        Ok(FiniteGroup { rank, degree, perms, right_mul, inverse, dist, lookup })
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn diameter(&self) -> usize {
        self.dist.iter().copied().max().unwrap_or(0) as usize
    }

    pub fn permutation(&self, id: u32) -> &[u32] {
        &self.perms[id as usize]
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.lookup[&compose(&self.perms[a as usize], &self.perms[b as usize])]
    }
}

fn compose(first: &[u32], then: &[u32]) -> Vec<u32> {
    first.iter().map(|&x| then[x as usize]).collect()
}

fn invert_perm(p: &[u32]) -> Vec<u32> {
    let mut inv = vec![0u32; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

impl FreeAbelianGroup {
    pub fn new(rank: usize, dim: usize, images: Vec<Vec<i64>>) -> Result<Self> {
        if images.len() != rank {
            return Err(Error::Config(format!(
                "quotient.images: expected {rank} vectors, got {}",
                images.len()
            )));
        }
        if let Some(i) = images.iter().position(|v| v.len() != dim) {
            return Err(Error::Config(format!("quotient.images[{i}] must have length {dim}")));
        }
        let standard = images.iter().all(|v| {
            let nonzero: Vec<_> = v.iter().filter(|&&x| x != 0).collect();
            nonzero.is_empty() || (nonzero.len() == 1 && nonzero[0].abs() == 1)
        });
        Ok(FreeAbelianGroup { rank, dim, images, standard })
    }

    /// Abelianization `F_d -> Z^d` with `g_i -> e_i`.
    pub fn abelianization(rank: usize) -> Self {
        let images = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        FreeAbelianGroup { rank, dim: rank, images, standard: true }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Whether every image is zero or a signed standard basis vector.
    pub fn is_standard(&self) -> bool {
        self.standard
    }

    fn add_letter(&self, v: &[i64], l: Letter) -> Vec<i64> {
        let img = &self.images[l.generator()];
        if l.is_inverse() {
            v.iter().zip(img).map(|(a, b)| a - b).collect()
        } else {
            v.iter().zip(img).map(|(a, b)| a + b).collect()
        }
    }
}

impl FreeQuotientGroup {
    pub fn new(rank: usize, kill: &[usize]) -> Self {
        let mut killed = vec![false; rank];
        for &k in kill {
            killed[k] = true;
        }
        FreeQuotientGroup { rank, killed }
    }

    pub fn is_killed(&self, generator: usize) -> bool {
        self.killed[generator]
    }

    /// Rank of the free group that remains.
    pub fn free_rank(&self) -> usize {
        self.killed.iter().filter(|&&k| !k).count()
    }
}

impl QuotientGroup {
    pub fn finite_perm(rank: usize, degree: usize, images: Vec<Vec<u32>>) -> Result<Self> {
        Ok(QuotientGroup::Finite(FiniteGroup::from_permutations(rank, degree, images, DEFAULT_GROUP_ORDER_CAP)?))
    }

    /// `Z/n` with every generator mapped to `1`.
    pub fn cyclic(rank: usize, n: usize) -> Self {
        let rot: Vec<u32> = (0..n as u32).map(|x| (x + 1) % n as u32).collect();
        Self::finite_perm(rank, n, vec![rot; rank]).expect("rotation is a permutation")
    }

    pub fn abelianization(rank: usize) -> Self {
        QuotientGroup::FreeAbelian(FreeAbelianGroup::abelianization(rank))
    }

    /// `F_d / <<killed generators>>`, with 0-based generator indices.
    pub fn free_quotient(rank: usize, kill: &[usize]) -> Self {
        QuotientGroup::FreeQuotient(FreeQuotientGroup::new(rank, kill))
    }

    /// The trivial group, i.e. `N = F_d`.
    pub fn trivial(rank: usize) -> Self {
        Self::free_quotient(rank, &(0..rank).collect::<Vec<_>>())
    }

    pub fn rank(&self) -> usize {
        match self {
            QuotientGroup::Finite(g) => g.rank,
            QuotientGroup::FreeAbelian(g) => g.rank,
            QuotientGroup::FreeQuotient(g) => g.rank,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            QuotientGroup::Finite(_) => "finite_perm",
            QuotientGroup::FreeAbelian(_) => "abelianization",
            QuotientGroup::FreeQuotient(_) => "free_quotient",
        }
    }

    pub fn identity(&self) -> GroupElem {
        match self {
            QuotientGroup::Finite(_) => GroupElem::Finite(0),
            QuotientGroup::FreeAbelian(g) => GroupElem::Abelian(vec![0; g.dim]),
            QuotientGroup::FreeQuotient(_) => GroupElem::Free(ReducedWord::identity()),
        }
    }

    /// `g * Ψ(letter)`.
    pub fn mul_letter(&self, g: &GroupElem, l: Letter) -> GroupElem {
        match (self, g) {
            (QuotientGroup::Finite(fg), GroupElem::Finite(id)) => {
                GroupElem::Finite(fg.right_mul[*id as usize * 2 * fg.rank + l.index()])
            }
            (QuotientGroup::FreeAbelian(ag), GroupElem::Abelian(v)) => GroupElem::Abelian(ag.add_letter(v, l)),
            (QuotientGroup::FreeQuotient(fq), GroupElem::Free(w)) => {
                if fq.killed[l.generator()] {
                    g.clone()
                } else {
                    let mut letters = w.letters().to_vec();
                    push_reduced(&mut letters, l);
                    GroupElem::Free(ReducedWord::from_reduced(letters).expect("push_reduced keeps words reduced"))
                }
            }
            _ => panic!("group element does not belong to this {} group", self.kind()),
        }
    }

    pub fn mul(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        match (self, a, b) {
            (QuotientGroup::Finite(fg), GroupElem::Finite(x), GroupElem::Finite(y)) => GroupElem::Finite(fg.mul(*x, *y)),
            (QuotientGroup::FreeAbelian(_), GroupElem::Abelian(x), GroupElem::Abelian(y)) => {
                GroupElem::Abelian(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (QuotientGroup::FreeQuotient(_), GroupElem::Free(x), GroupElem::Free(y)) => {
                GroupElem::Free(super::concat_reduce(x, y))
            }
            _ => panic!("group elements do not belong to this {} group", self.kind()),
        }
    }

    pub fn inverse(&self, g: &GroupElem) -> GroupElem {
        match (self, g) {
            (QuotientGroup::Finite(fg), GroupElem::Finite(id)) => GroupElem::Finite(fg.inverse[*id as usize]),
            (QuotientGroup::FreeAbelian(_), GroupElem::Abelian(v)) => GroupElem::Abelian(v.iter().map(|x| -x).collect()),
            (QuotientGroup::FreeQuotient(_), GroupElem::Free(w)) => GroupElem::Free(w.inverse()),
            _ => panic!("group element does not belong to this {} group", self.kind()),
        }
    }

    pub fn is_identity(&self, g: &GroupElem) -> bool {
        *g == self.identity()
    }

    /// `Ψ_N(w)`: left-to-right fold of generator images.
    pub fn apply(&self, word: &[Letter]) -> GroupElem {
        word.iter().fold(self.identity(), |g, &l| self.mul_letter(&g, l))
    }

    /// Whether `Ψ(letter)` is the identity.
    pub fn kills(&self, l: Letter) -> bool {
        let id = self.identity();
        self.mul_letter(&id, l) == id
    }

    /// Word-metric distance to the identity with respect to `Ψ(I) ∪ Ψ(I)^-1`.
    ///
    /// Exact for all backends; abelian groups with non-standard images fall back to
    /// a breadth-first search bounded by `search_cap` visited elements.
    pub fn distance(&self, g: &GroupElem, search_cap: usize) -> Result<usize> {
        match (self, g) {
            (QuotientGroup::Finite(fg), GroupElem::Finite(id)) => Ok(fg.dist[*id as usize] as usize),
            (QuotientGroup::FreeQuotient(_), GroupElem::Free(w)) => Ok(w.len()),
            (QuotientGroup::FreeAbelian(ag), GroupElem::Abelian(v)) if ag.standard => {
                Ok(v.iter().map(|x| x.unsigned_abs() as usize).sum())
            }
            (QuotientGroup::FreeAbelian(_), GroupElem::Abelian(_)) => {
                let mut seen = HashMap::from([(self.identity(), 0usize)]);
                let mut queue = VecDeque::from([self.identity()]);
                while let Some(h) = queue.pop_front() {
                    let dh = seen[&h];
                    if &h == g {
                        return Ok(dh);
                    }
                    for l in Letter::alphabet(self.rank()) {
                        let next = self.mul_letter(&h, l);
                        if !seen.contains_key(&next) {
                            if seen.len() >= search_cap {
                                return Err(Error::CapExceeded { what: "word metric search", cap: search_cap });
                            }
                            seen.insert(next.clone(), dh + 1);
                            queue.push_back(next);
                        }
                    }
                }
                Err(Error::InvalidInput("element is not in the image of Ψ".into()))
            }
            _ => panic!("group element does not belong to this {} group", self.kind()),
        }
    }

    /// True when `G` is a single point (`N = F_d`).
    pub fn is_trivial(&self) -> bool {
        Letter::alphabet(self.rank()).all(|l| self.kills(l))
    }

    /// True when `N` is the trivial subgroup, which only the free-quotient backend
    /// with nothing killed realizes.
    pub fn has_trivial_kernel(&self) -> bool {
        matches!(self, QuotientGroup::FreeQuotient(fq) if fq.killed.iter().all(|k| !k))
    }
}
