use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Deterministic Schreier–Sims stabilizer chain.
///
/// `strong` holds the strong generating set; the generators relevant at
/// level `i` are those fixing `base[0..i]` pointwise. `transversals[i]`
/// maps each point of the level-`i` orbit to a representative `u` with
/// `u(base[i]) = point`.
#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    base: Vec<usize>,
    strong: Vec<Permutation>,
    transversals: Vec<Vec<Option<Permutation>>>,
}

impl StabChain {
    fn build(degree: usize, gens: &[Permutation]) -> StabChain {
        let mut chain = StabChain {
            degree,
            base: Vec::new(),
            strong: Vec::new(),
            transversals: Vec::new(),
        };
        for g in gens {
            if !g.is_identity() {
                chain.push_strong(g.clone());
            }
        }
        if chain.strong.is_empty() {
            return chain;
        }
        // Bottom-up verification: at each level all Schreier generators must
        // sift to the identity through the deeper levels; any residue becomes
        // a new strong generator and verification restarts where it lodged.
        let mut level = chain.base.len() - 1;
        loop {
            chain.rebuild_transversal(level);
            match chain.find_bad_schreier(level) {
                Some((residue, stuck)) => {
                    chain.push_strong(residue);
                    level = stuck.min(chain.base.len() - 1);
                }
                None => {
                    if level == 0 {
                        break;
                    }
                    level -= 1;
                }
            }
        }
        chain
    }

    /// Appends a strong generator, extending the base so that no strong
    /// generator fixes every base point.
    fn push_strong(&mut self, g: Permutation) {
        if self.base.iter().all(|&b| g.apply(b) == b) {
            let moved = (0..self.degree)
                .find(|&p| g.apply(p) != p)
                .expect("non-identity permutation moves a point");
            self.base.push(moved);
            self.transversals.push(vec![None; self.degree]);
        }
        self.strong.push(g);
    }

    fn level_gens(&self, level: usize) -> Vec<&Permutation> {
        self.strong
            .iter()
            .filter(|g| self.base[..level].iter().all(|&b| g.apply(b) == b))
            .collect()
    }

    /// Orbit BFS of `base[level]` in ascending point order.
    fn rebuild_transversal(&mut self, level: usize) {
        let gens: Vec<Permutation> = self.level_gens(level).into_iter().cloned().collect();
        let mut trans = vec![None; self.degree];
        let b = self.base[level];
        trans[b] = Some(Permutation::identity(self.degree));
        let mut queue = vec![b];
        let mut head = 0;
        while head < queue.len() {
            let pt = queue[head];
            head += 1;
            let u = trans[pt].clone().unwrap();
            for s in &gens {
                let image = s.apply(pt);
                if trans[image].is_none() {
                    trans[image] = Some(u.compose(s));
                    queue.push(image);
                }
            }
        }
        self.transversals[level] = trans;
    }

    /// First Schreier generator at `level` that does not sift to the
    /// identity, returned as (residue, level it lodged at).
    fn find_bad_schreier(&self, level: usize) -> Option<(Permutation, usize)> {
        let gens = self.level_gens(level);
        let trans = &self.transversals[level];
        for pt in 0..self.degree {
            let Some(u) = &trans[pt] else { continue };
            for s in &gens {
                let image = s.apply(pt);
                let v = trans[image]
                    .as_ref()
                    .expect("orbit is closed under level generators");
                let schreier = u.compose(s).compose(&v.inverse());
                if schreier.is_identity() {
                    continue;
                }
                let (residue, stuck) = self.sift_from(schreier, level + 1);
                if !residue.is_identity() {
                    return Some((residue, stuck));
                }
            }
        }
        None
    }

    /// Strips `g` through levels `from..`, returning the residue and the
    /// level at which stripping stopped.
    fn sift_from(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for i in from..self.base.len() {
            if g.is_identity() {
                return (g, i);
            }
            let image = g.apply(self.base[i]);
            match &self.transversals[i][image] {
                Some(u) => g = g.compose(&u.inverse()),
                None => return (g, i),
            }
        }
        (g, self.base.len())
    }

    pub fn order(&self) -> BigUint {
        let mut n = BigUint::one();
        for trans in &self.transversals {
            n *= BigUint::from(trans.iter().filter(|t| t.is_some()).count());
        }
        n
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let (residue, _) = self.sift_from(g.clone(), 0);
        residue.is_identity()
    }
}

/// A finite permutation group given by generators, with a stabilizer chain
/// for exact order and membership. Immutable after construction.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: StabChain,
    order: BigUint,
}

impl PermGroup {
    /// Builds the group generated by `gens` on `0..degree`.
    /// Identity generators are dropped; degree must be at least 1.
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidParameter("degree must be >= 1".into()));
        }
        let mut kept = Vec::new();
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
            if !g.is_identity() {
                kept.push(g);
            }
        }
        let chain = StabChain::build(degree, &kept);
        let order = chain.order();
        Ok(PermGroup {
            degree,
            gens: kept,
            chain,
            order,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::from_generators(degree, Vec::new()).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Group order as usize, when it fits (enumerated-regime precondition).
    pub fn order_usize(&self) -> Option<usize> {
        usize::try_from(&self.order).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    /// Membership by sifting through the stabilizer chain.
    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: g.degree(),
            });
        }
        Ok(self.chain.contains(g))
    }

    /// True when every generator of `other` sifts into this group.
    pub fn contains_group(&self, other: &PermGroup) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when `sub` is normalized by all generators of `self`.
    /// Sound when `sub <= self`: generators normalize iff the group does.
    pub fn normalizes(&self, sub: &PermGroup) -> Result<bool> {
        for g in &self.gens {
            for n in sub.generators() {
                if !sub.contains(&n.conjugate_by(g))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<PermGroup> {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut group = PermGroup::trivial(self.degree);
        let mut pending: Vec<Permutation> = seeds.to_vec();
        while let Some(s) = pending.pop() {
            if group.contains(&s)? {
                continue;
            }
            gens.push(s.clone());
            group = PermGroup::from_generators(self.degree, gens.clone())?;
            for g in &self.gens {
                pending.push(s.conjugate_by(g));
            }
        }
        Ok(group)
    }

    /// Derived subgroup: normal closure of the generator commutators.
    pub fn derived_subgroup(&self) -> Result<PermGroup> {
        let mut comms = Vec::new();
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                let c = a.commutator(b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// Derived series down to stability; solvable iff it ends trivial.
    pub fn derived_series(&self) -> Result<Vec<PermGroup>> {
        let mut series = vec![self.clone()];
        loop {
            let next = series.last().unwrap().derived_subgroup()?;
            if next.order() == series.last().unwrap().order() {
                break;
            }
            let done = next.is_trivial();
            series.push(next);
            if done {
                break;
            }
        }
        Ok(series)
    }

    pub fn is_abelian(&self) -> bool {
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                if a.commutator(b) != Permutation::identity(self.degree) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_solvable(&self) -> Result<bool> {
        Ok(self.derived_series()?.last().unwrap().is_trivial())
    }

    /// Faithful action of `G/N` on the right cosets of normal `N`, together
    /// with the projection data. Errors if `N` is not a normal subgroup or
    /// the index exceeds `coset_cap`.
    pub fn quotient_action(&self, n: &PermGroup, coset_cap: usize) -> Result<QuotientAction> {
        if n.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: n.degree(),
            });
        }
        if !self.contains_group(n)? {
            return Err(Error::NotASubgroup);
        }
        if !self.normalizes(n)? {
            return Err(Error::NotNormal);
        }
        // BFS over right cosets N*rep
        let mut reps: Vec<Permutation> = vec![Permutation::identity(self.degree)];
        let find_coset = |reps: &[Permutation], x: &Permutation| -> Result<Option<usize>> {
            for (i, r) in reps.iter().enumerate() {
                if n.contains(&x.compose(&r.inverse()))? {
                    return Ok(Some(i));
                }
            }
            Ok(None)
        };
        let mut head = 0;
        while head < reps.len() {
            let r = reps[head].clone();
            head += 1;
            for g in &self.gens {
                let x = r.compose(g);
                if find_coset(&reps, &x)?.is_none() {
                    if reps.len() >= coset_cap {
                        return Err(Error::CosetCap { cap: coset_cap });
                    }
                    reps.push(x);
                }
            }
        }
        let index = reps.len();
        let mut action_gens = Vec::new();
        for g in &self.gens {
            let mut images = vec![0; index];
            for (i, r) in reps.iter().enumerate() {
                images[i] = find_coset(&reps, &r.compose(g))?
                    .expect("coset enumeration is closed under generators");
            }
            action_gens.push(Permutation::from_images(images)?);
        }
        let group = PermGroup::from_generators(index.max(1), action_gens)?;
        Ok(QuotientAction {
            kernel: n.clone(),
            group,
            reps,
        })
    }
}

/// The coset action of a group on a normal subgroup's cosets, with enough
/// data to project arbitrary elements.
#[derive(Debug, Clone)]
pub struct QuotientAction {
    kernel: PermGroup,
    group: PermGroup,
    reps: Vec<Permutation>,
}

impl QuotientAction {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn reps(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// Image of a parent-group element in the coset action.
    pub fn project(&self, x: &Permutation) -> Result<Permutation> {
        let mut images = vec![0; self.reps.len()];
        for (i, r) in self.reps.iter().enumerate() {
            let y = r.compose(x);
            let mut found = None;
            for (j, s) in self.reps.iter().enumerate() {
                if self.kernel.contains(&y.compose(&s.inverse()))? {
                    found = Some(j);
                    break;
                }
            }
            images[i] = found.ok_or(Error::NotASubgroup)?;
        }
        Permutation::from_images(images)
    }
}

/// Greedy generator reduction: keep the generators that enlarge the group,
/// in the given order. The result generates the same group.
pub fn reduce_generators(degree: usize, gens: &[Permutation]) -> Result<Vec<Permutation>> {
    let target = PermGroup::from_generators(degree, gens.to_vec())?;
    let mut kept: Vec<Permutation> = Vec::new();
    let mut current = PermGroup::trivial(degree);
    for g in gens {
        if !current.contains(g)? {
            kept.push(g.clone());
            current = PermGroup::from_generators(degree, kept.clone())?;
            if current.order() == target.order() {
                break;
            }
        }
    }
    Ok(kept)
}

/// Setwise stabilizer of a point set, by orbit/Schreier generators.
/// Exact: the returned group is the full stabilizer.
pub fn setwise_stabilizer(g: &PermGroup, points: &[usize], coset_cap: usize) -> Result<PermGroup> {
    let mut start: Vec<usize> = points.to_vec();
    start.sort_unstable();
    start.dedup();
    let mut orbit: Vec<Vec<usize>> = vec![start.clone()];
    let mut reps: Vec<Permutation> = vec![Permutation::identity(g.degree())];
    let mut index_of = std::collections::HashMap::new();
    index_of.insert(start, 0usize);
    let mut stab_gens: Vec<Permutation> = Vec::new();
    let mut head = 0;
    while head < orbit.len() {
        let u = reps[head].clone();
        let set = orbit[head].clone();
        head += 1;
        for s in g.generators() {
            let image = s.image_of_set(&set);
            match index_of.get(&image) {
                None => {
                    if orbit.len() >= coset_cap {
                        return Err(Error::CosetCap { cap: coset_cap });
                    }
                    index_of.insert(image.clone(), orbit.len());
                    orbit.push(image);
                    reps.push(u.compose(s));
                }
                Some(&j) => {
                    // Schreier generator: maps the base set to itself
                    let schreier = u.compose(s).compose(&reps[j].inverse());
                    if !schreier.is_identity() {
                        stab_gens.push(schreier);
                    }
                }
            }
        }
    }
    stab_gens.sort();
    stab_gens.dedup();
    let stab = PermGroup::from_generators(g.degree(), stab_gens)?;
    debug_assert_eq!(
        stab.order() * BigUint::from(orbit.len()),
        g.order().clone(),
        "orbit-stabilizer mismatch"
    );
    Ok(stab)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::naive;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    fn s4() -> PermGroup {
        PermGroup::from_generators(4, vec![perm(&[1, 0, 2, 3]), perm(&[1, 2, 3, 0])]).unwrap()
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = PermGroup::trivial(3);
        assert_eq!(g.order(), &BigUint::from(1u32));
        assert!(g.contains(&Permutation::identity(3)).unwrap());
    }

    #[test]
    fn order_s4_matches_closure() {
        let g = s4();
        assert_eq!(g.order(), &BigUint::from(24u32));
        assert_eq!(naive::closure(4, g.generators()).len(), 24);
    }

    #[test]
    fn order_a5_matches_closure() {
        let gens = vec![
            Permutation::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap(),
            Permutation::from_cycles(5, &[vec![0, 1, 2]]).unwrap(),
        ];
        let g = PermGroup::from_generators(5, gens.clone()).unwrap();
        assert_eq!(g.order(), &BigUint::from(60u32));
        assert_eq!(naive::closure(5, &gens).len(), 60);
    }

    #[test]
    fn membership_parity() {
        // A4 does not contain a transposition
        let a4 = PermGroup::from_generators(
            4,
            vec![
                Permutation::from_cycles(4, &[vec![0, 1, 2]]).unwrap(),
                Permutation::from_cycles(4, &[vec![1, 2, 3]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(a4.order(), &BigUint::from(12u32));
        let swap = Permutation::from_cycles(4, &[vec![0, 1]]).unwrap();
        assert!(!a4.contains(&swap).unwrap());
        assert!(a4.contains(&Permutation::identity(4)).unwrap());
    }

    #[test]
    fn membership_inverse_of_generator() {
        let c3 = PermGroup::from_generators(
            3,
            vec![Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap()],
        )
        .unwrap();
        let inv = Permutation::from_cycles(3, &[vec![0, 2, 1]]).unwrap();
        assert!(c3.contains(&inv).unwrap());
    }

    #[test]
    fn membership_degree_mismatch_errors() {
        let g = s4();
        assert!(g.contains(&Permutation::identity(5)).is_err());
    }

    #[test]
    fn derived_subgroup_of_s3_is_a3() {
        let s3 = PermGroup::from_generators(3, vec![perm(&[1, 0, 2]), perm(&[1, 2, 0])]).unwrap();
        let d = s3.derived_subgroup().unwrap();
        assert_eq!(d.order(), &BigUint::from(3u32));
        // commutator enumeration oracle
        let all = naive::closure(3, s3.generators());
        let mut comms = Vec::new();
        for a in &all {
            for b in &all {
                comms.push(a.commutator(b));
            }
        }
        let derived_oracle = naive::closure(3, &comms);
        assert_eq!(derived_oracle.len(), 3);
        for x in derived_oracle {
            assert!(d.contains(&x).unwrap());
        }
    }

    #[test]
    fn derived_subgroup_of_s4_is_a4() {
        let d = s4().derived_subgroup().unwrap();
        assert_eq!(d.order(), &BigUint::from(12u32));
        assert!(d.generators().iter().all(|g| g.is_even()));
    }

    #[test]
    fn derived_of_abelian_is_trivial() {
        let c6 = PermGroup::from_generators(
            5,
            vec![Permutation::from_cycles(5, &[vec![0, 1], vec![2, 3, 4]]).unwrap()],
        )
        .unwrap();
        assert!(c6.derived_subgroup().unwrap().is_trivial());
    }

    #[test]
    fn quotient_s3_by_a3() {
        let s3 = PermGroup::from_generators(3, vec![perm(&[1, 0, 2]), perm(&[1, 2, 0])]).unwrap();
        let a3 = s3.derived_subgroup().unwrap();
        let q = s3.quotient_action(&a3, 100).unwrap();
        assert_eq!(q.group().order(), &BigUint::from(2u32));
        assert_eq!(q.group().degree(), 2);
        // projection of an odd element is the transposition of cosets
        assert!(!q.project(&perm(&[1, 0, 2])).unwrap().is_identity());
        assert!(q.project(&perm(&[1, 2, 0])).unwrap().is_identity());
    }

    #[test]
    fn quotient_by_whole_group_is_trivial() {
        let g = s4();
        let q = g.quotient_action(&g.clone(), 100).unwrap();
        assert!(q.group().is_trivial());
    }

    #[test]
    fn quotient_c4_by_subgroup() {
        let c4 = PermGroup::from_generators(
            4,
            vec![Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap()],
        )
        .unwrap();
        let sq = PermGroup::from_generators(
            4,
            vec![Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap()],
        )
        .unwrap();
        let q = c4.quotient_action(&sq, 100).unwrap();
        assert_eq!(q.group().order(), &BigUint::from(2u32));
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let s3 = PermGroup::from_generators(3, vec![perm(&[1, 0, 2]), perm(&[1, 2, 0])]).unwrap();
        let c2 = PermGroup::from_generators(3, vec![perm(&[1, 0, 2])]).unwrap();
        assert!(matches!(
            s3.quotient_action(&c2, 100),
            Err(Error::NotNormal)
        ));
    }

    #[test]
    fn setwise_stabilizer_in_s4() {
        let g = s4();
        // stabilizer of {0,1} in S4 is S2 x S2
        let stab = setwise_stabilizer(&g, &[0, 1], 100).unwrap();
        assert_eq!(stab.order(), &BigUint::from(4u32));
        for s in stab.generators() {
            assert_eq!(s.image_of_set(&[0, 1]), vec![0, 1]);
        }
    }
}
