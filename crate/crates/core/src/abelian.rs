//! Finite abelian groups given as products of cyclic groups, their subgroups,
//! quotients and character groups.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// A product `Z_{n_1} x ... x Z_{n_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianGroup {
    orders: Vec<u32>,
}

/// A residue tuple. Only meaningful together with the group it came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub(crate) Vec<u32>);

impl GroupElement {
    pub fn residues(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&r| r == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&r| r < 10) {
            for r in &self.0 {
                write!(f, "{r}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

impl AbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if let Some(bad) = orders.iter().find(|&&n| n < 1) {
            return Err(Error::InvalidInput(format!("cyclic factor of order {bad}")));
        }
        let size = orders
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n as u64))
            .filter(|&s| s <= 1 << 20);
        if size.is_none() {
            return Err(Error::InvalidInput("group too large to enumerate".into()));
        }
        Ok(AbelianGroup { orders })
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// Number of elements.
    pub fn order(&self) -> usize {
        self.orders.iter().map(|&n| n as usize).product()
    }

    pub fn exponent(&self) -> u32 {
        self.orders.iter().fold(1u64, |acc, &n| lcm(acc, n as u64)) as u32
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut r = vec![0; self.rank()];
        r[i] = 1 % self.orders[i];
        GroupElement(r)
    }

    /// Builds an element, reducing each residue modulo its factor.
    pub fn element(&self, residues: &[i64]) -> Result<GroupElement> {
        if residues.len() != self.rank() {
            return Err(Error::InvalidInput(format!(
                "element of length {} in a group of rank {}",
                residues.len(),
                self.rank()
            )));
        }
        Ok(GroupElement(
            residues
                .iter()
                .zip(&self.orders)
                .map(|(&r, &n)| r.rem_euclid(n as i64) as u32)
                .collect(),
        ))
    }

    pub fn check(&self, a: &GroupElement) -> Result<()> {
        if a.0.len() != self.rank() || a.0.iter().zip(&self.orders).any(|(&r, &n)| r >= n) {
            return Err(Error::InvalidInput(format!("{a} is not an element of Z{:?}", self.orders)));
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((&x, &y), &n)| (x + y) % n)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(a.0.iter().zip(&self.orders).map(|(&x, &n)| (n - x) % n).collect())
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i64, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.orders)
                .map(|(&x, &n)| ((x as i64 * k).rem_euclid(n as i64)) as u32)
                .collect(),
        )
    }

    pub fn element_order(&self, a: &GroupElement) -> u32 {
        a.0.iter()
            .zip(&self.orders)
            .fold(1u64, |acc, (&x, &n)| lcm(acc, (n as u64) / gcd(x as u64, n as u64)))
            as u32
    }

    /// Mixed-radix position of `a` in [`elements`](Self::elements).
    pub fn index_of(&self, a: &GroupElement) -> usize {
        a.0.iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&x, &n)| acc * n as usize + x as usize)
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(self.order());
        let mut cur = vec![0u32; self.rank()];
        loop {
            out.push(GroupElement(cur.clone()));
            let mut i = self.rank();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.orders[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }
}

/// A subgroup, stored as its sorted element list plus the generators it was built from.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: AbelianGroup,
    generators: Vec<GroupElement>,
    elements: Vec<GroupElement>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.elements == other.elements
    }
}
impl Eq for Subgroup {}

impl Subgroup {
    pub fn generated(parent: &AbelianGroup, generators: Vec<GroupElement>) -> Result<Self> {
        for g in &generators {
            parent.check(g)?;
        }
        let mut seen: BTreeSet<GroupElement> = BTreeSet::new();
        seen.insert(parent.identity());
        let mut frontier = vec![parent.identity()];
        while let Some(x) = frontier.pop() {
            for g in &generators {
                let y = parent.add(&x, g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Ok(Subgroup {
            parent: parent.clone(),
            generators,
            elements: seen.into_iter().collect(),
        })
    }

    pub fn trivial(parent: &AbelianGroup) -> Self {
        Subgroup {
            parent: parent.clone(),
            generators: vec![],
            elements: vec![parent.identity()],
        }
    }

    pub fn whole(parent: &AbelianGroup) -> Self {
        let gens = (0..parent.rank()).map(|i| parent.generator(i)).collect();
        Subgroup {
            parent: parent.clone(),
            generators: gens,
            elements: parent.elements(),
        }
    }

    pub fn parent(&self) -> &AbelianGroup {
        &self.parent
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        self.elements.binary_search(a).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.parent.order()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.elements.iter().all(|e| other.contains(e))
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `G/H` with the lexicographically smallest element of each coset as its representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGroup {
    sub: Subgroup,
    reps: Vec<GroupElement>,
    coset_of: Vec<usize>,
}

impl QuotientGroup {
    pub fn new(sub: &Subgroup) -> Self {
        let g = &sub.parent;
        let mut coset_of = vec![usize::MAX; g.order()];
        let mut reps = Vec::new();
        for x in g.elements() {
            if coset_of[g.index_of(&x)] != usize::MAX {
                continue;
            }
            let c = reps.len();
            for h in &sub.elements {
                coset_of[g.index_of(&g.add(&x, h))] = c;
            }
            reps.push(x);
        }
        QuotientGroup {
            sub: sub.clone(),
            reps,
            coset_of,
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.sub.parent
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.sub
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    /// Coset representatives, ordered by representative.
    pub fn reps(&self) -> &[GroupElement] {
        &self.reps
    }

    pub fn coset_index(&self, a: &GroupElement) -> usize {
        self.coset_of[self.group().index_of(a)]
    }

    pub fn canonical(&self, a: &GroupElement) -> GroupElement {
        self.reps[self.coset_index(a)].clone()
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.canonical(&self.group().add(a, b))
    }

    pub fn same_coset(&self, a: &GroupElement, b: &GroupElement) -> bool {
        self.coset_index(a) == self.coset_index(b)
    }
}

/// A character of `Z_{n_1} x ... x Z_{n_k}`: `f(g) = zeta_e^{sum_i a_i g_i (e / n_i)}`
/// where `e` is the group exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    group: AbelianGroup,
    exponents: Vec<u32>,
}

impl Character {
    pub fn new(group: &AbelianGroup, exponents: &[i64]) -> Result<Self> {
        let e = group.element(exponents)?;
        Ok(Character {
            group: group.clone(),
            exponents: e.0,
        })
    }

    pub fn trivial(group: &AbelianGroup) -> Self {
        Character {
            group: group.clone(),
            exponents: vec![0; group.rank()],
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// `f(a) = zeta_e^k`; returns `k mod e` with `e` the group exponent.
    pub fn value_exponent(&self, a: &GroupElement) -> u32 {
        let e = self.group.exponent() as u64;
        let mut k = 0u64;
        for ((&ai, &gi), &n) in self.exponents.iter().zip(&a.0).zip(&self.group.orders) {
            k = (k + ai as u64 * gi as u64 * (e / n as u64)) % e;
        }
        k as u32
    }

    pub fn is_trivial_on(&self, sub: &Subgroup) -> bool {
        sub.elements.iter().all(|h| self.value_exponent(h) == 0)
    }

    pub fn product(&self, other: &Character) -> Character {
        Character {
            group: self.group.clone(),
            exponents: self.group.add(&GroupElement(self.exponents.clone()), &GroupElement(other.exponents.clone())).0,
        }
    }

    pub fn inverse(&self) -> Character {
        Character {
            group: self.group.clone(),
            exponents: self.group.neg(&GroupElement(self.exponents.clone())).0,
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi{}", GroupElement(self.exponents.clone()))
    }
}

/// Every character, ordered by exponent tuple.
pub fn dual_characters(group: &AbelianGroup) -> Vec<Character> {
    group
        .elements()
        .into_iter()
        .map(|e| Character {
            group: group.clone(),
            exponents: e.0,
        })
        .collect()
}

/// Characters trivial on `sub`.
pub fn h_perp(group: &AbelianGroup, sub: &Subgroup) -> Vec<Character> {
    dual_characters(group)
        .into_iter()
        .filter(|c| c.is_trivial_on(sub))
        .collect()
}

/// One character per coset of `sub`-perp in the dual group, beginning with the trivial one.
/// The list has length `|sub|`.
pub fn twist_reps(group: &AbelianGroup, sub: &Subgroup) -> Vec<Character> {
    let perp = h_perp(group, sub);
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut reps = Vec::new();
    for c in dual_characters(group) {
        if seen.contains(&c.exponents) {
            continue;
        }
        for p in &perp {
            seen.insert(c.product(p).exponents);
        }
        reps.push(c);
    }
    reps
}

/// A descending chain `G = H_0 > H_1 > ... > H_r = 0` with every step of prime index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionSeries {
    chain: Vec<Subgroup>,
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 1;
    }
    n
}

fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

fn largest_prime_factor(mut n: u64) -> u64 {
    let mut best = 1;
    while n > 1 {
        let p = smallest_prime_factor(n);
        best = best.max(p);
        n /= p;
    }
    best
}

impl CompositionSeries {
    pub fn new(chain: Vec<Subgroup>) -> Result<Self> {
        let (Some(first), Some(last)) = (chain.first(), chain.last()) else {
            return Err(Error::InvalidSubgroupStep("empty chain".into()));
        };
        if !first.is_whole() || !last.is_trivial() {
            return Err(Error::InvalidSubgroupStep(
                "a composition series must run from the whole group to the trivial subgroup".into(),
            ));
        }
        for w in chain.windows(2) {
            if !w[1].is_subgroup_of(&w[0]) || !is_prime((w[0].order() / w[1].order()) as u64) {
                return Err(Error::InvalidSubgroupStep(format!("{} > {} is not a step of prime index", w[0], w[1])));
            }
        }
        Ok(CompositionSeries { chain })
    }

    pub fn chain(&self) -> &[Subgroup] {
        &self.chain
    }

    /// Orders of the successive composition factors.
    pub fn quotient_orders(&self) -> Vec<usize> {
        self.chain.windows(2).map(|w| w[0].order() / w[1].order()).collect()
    }
}

/// The default composition series: at each step the largest prime dividing the current
/// order is removed from the first cyclic generator whose order it divides.
pub fn jordan_holder(group: &AbelianGroup) -> CompositionSeries {
    let mut gens: Vec<GroupElement> = (0..group.rank()).map(|i| group.generator(i)).collect();
    let mut chain = vec![Subgroup::whole(group)];
    loop {
        let orders: Vec<u64> = gens.iter().map(|g| group.element_order(g) as u64).collect();
        let total: u64 = orders.iter().product();
        if total == 1 {
            break;
        }
        let p = largest_prime_factor(total);
        let i = orders.iter().position(|&o| o % p == 0).expect("prime divides some factor");
        gens[i] = group.scale(p as i64, &gens[i]);
        let live: Vec<GroupElement> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        chain.push(Subgroup::generated(group, live).expect("generators lie in the group"));
    }
    CompositionSeries { chain }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(orders: &[u32]) -> AbelianGroup {
        AbelianGroup::new(orders.to_vec()).unwrap()
    }

    #[test]
    fn klein_four_basics() {
        let g = z(&[2, 2]);
        assert_eq!(g.order(), 4);
        assert_eq!(g.exponent(), 2);
        let els = g.elements();
        assert_eq!(els.len(), 4);
        for a in &els {
            assert!(g.add(a, a).is_zero());
        }
    }

    #[test]
    fn element_orders_in_z2_z4() {
        let g = z(&[2, 4]);
        assert_eq!(g.exponent(), 4);
        assert_eq!(g.element_order(&g.element(&[1, 2]).unwrap()), 2);
        assert_eq!(g.element_order(&g.element(&[1, 1]).unwrap()), 4);
        assert_eq!(g.element(&[-1, -1]).unwrap(), g.element(&[1, 3]).unwrap());
    }

    #[test]
    fn quotient_reps_are_smallest() {
        let g = z(&[2, 2]);
        let h = Subgroup::generated(&g, vec![g.element(&[1, 1]).unwrap()]).unwrap();
        let q = QuotientGroup::new(&h);
        assert_eq!(q.order(), 2);
        assert_eq!(q.reps(), &[g.element(&[0, 0]).unwrap(), g.element(&[0, 1]).unwrap()]);
        assert_eq!(q.canonical(&g.element(&[1, 0]).unwrap()), g.element(&[0, 1]).unwrap());
    }

    #[test]
    fn perp_and_twist_reps() {
        let g = z(&[2, 2]);
        let h = Subgroup::generated(&g, vec![g.element(&[1, 1]).unwrap()]).unwrap();
        let perp = h_perp(&g, &h);
        let exps: Vec<&[u32]> = perp.iter().map(|c| c.exponents()).collect();
        assert_eq!(exps, vec![&[0, 0][..], &[1, 1][..]]);
        let reps = twist_reps(&g, &h);
        assert_eq!(reps.len(), 2);
        assert_eq!(reps[0], Character::trivial(&g));
        assert_eq!(reps[1].exponents(), &[0, 1]);
    }

    #[test]
    fn twist_reps_have_length_of_subgroup() {
        for orders in [vec![2u32, 4], vec![3, 3], vec![6]] {
            let g = z(&orders);
            for x in g.elements() {
                let h = Subgroup::generated(&g, vec![x]).unwrap();
                assert_eq!(twist_reps(&g, &h).len(), h.order());
                assert_eq!(h_perp(&g, &h).len() * h.order(), g.order());
            }
        }
    }

    #[test]
    fn jordan_holder_z2_z3() {
        let s = jordan_holder(&z(&[2, 3]));
        assert_eq!(s.quotient_orders(), vec![3, 2]);
    }

    #[test]
    fn jordan_holder_klein() {
        let g = z(&[2, 2]);
        let s = jordan_holder(&g);
        assert_eq!(s.quotient_orders(), vec![2, 2]);
        assert_eq!(s.chain()[1].elements(), &[g.element(&[0, 0]).unwrap(), g.element(&[0, 1]).unwrap()]);
        assert_eq!(CompositionSeries::new(s.chain().to_vec()).unwrap(), s);
    }

    #[test]
    fn jordan_holder_products_match_order() {
        for orders in [vec![12u32], vec![2, 4], vec![3, 3], vec![4, 6, 5]] {
            let g = z(&orders);
            let s = jordan_holder(&g);
            assert_eq!(s.quotient_orders().iter().product::<usize>(), g.order());
            assert!(CompositionSeries::new(s.chain().to_vec()).is_ok());
        }
    }

    #[test]
    fn bad_chain_rejected() {
        let g = z(&[4]);
        let chain = vec![Subgroup::whole(&g), Subgroup::trivial(&g)];
        assert!(matches!(CompositionSeries::new(chain), Err(Error::InvalidSubgroupStep(_))));
    }

    #[test]
    fn character_values() {
        let g = z(&[2, 4]);
        let chi = Character::new(&g, &[1, 1]).unwrap();
        // exponent 4: value exponent = 1*x*2 + 1*y*1
        assert_eq!(chi.value_exponent(&g.element(&[1, 0]).unwrap()), 2);
        assert_eq!(chi.value_exponent(&g.element(&[1, 3]).unwrap()), 1);
        assert_eq!(chi.product(&chi.inverse()), Character::trivial(&g));
    }
}
