//! The dimension invariants: irredundance testing, r/m/i computation,
//! general position, MaxDim search, the sequence/family correspondences
//! with certificates, and the refit of an irredundant generating sequence
//! along a normal subgroup.
//!
//! All exhaustive searches enumerate index-increasing element (or node)
//! sets: irredundance and general position are order-independent, both are
//! closed downward, so extending only valid states is exhaustive. The only
//! symmetry reduction is restricting the first element to conjugacy-class
//! minima: conjugating a set maps it to one whose minimum is a class
//! minimum, and never to one with a smaller minimum.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;

use crate::budget::Budgets;
use crate::elements::ElementTable;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::lattice::{DeclaredSubgroup, NodeId, SubgroupLattice};
use crate::perm::Permutation;

/// An exact value, or a certified lower bound when a search budget ran out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimValue {
    Exact(u32),
    AtLeast(u32),
}

impl DimValue {
    pub fn value(&self) -> u32 {
        match *self {
            DimValue::Exact(v) | DimValue::AtLeast(v) => v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, DimValue::Exact(_))
    }

    pub fn exact(&self) -> Option<u32> {
        match *self {
            DimValue::Exact(v) => Some(v),
            DimValue::AtLeast(_) => None,
        }
    }
}

impl std::fmt::Display for DimValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DimValue::Exact(v) => write!(f, "{v}"),
            DimValue::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

/// Search result: the value plus a witness in canonical order (element
/// indices for sequences, node ids for families).
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub value: DimValue,
    pub witness: Vec<u32>,
}

/// An irredundant sequence together with its drop-one subgroups and span,
/// all as lattice nodes.
#[derive(Debug, Clone)]
pub struct IrredundantSequence {
    pub elems: Vec<u32>,
    pub dropone: Vec<NodeId>,
    pub span: NodeId,
}

/// A family of subgroup nodes in general position with a certificate:
/// certificate[j] lies in members[i] exactly when j != i.
#[derive(Debug, Clone)]
pub struct GeneralPositionFamily {
    pub members: Vec<NodeId>,
    pub certificate: Vec<u32>,
}

// ---------------------------------------------------------------------------
// Irredundance
// ---------------------------------------------------------------------------

/// True iff no element lies in the subgroup generated by the others.
/// Works in the generator regime (stabilizer chains only).
pub fn is_irredundant(g: &PermGroup, seq: &[Permutation]) -> Result<bool> {
    for x in seq {
        if !g.contains(x)? {
            return Err(Error::NotASubgroup);
        }
    }
    for i in 0..seq.len() {
        let others: Vec<Permutation> = seq
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, x)| x.clone())
            .collect();
        let span = PermGroup::from_generators(g.degree(), others)?;
        if span.contains(&seq[i])? {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Search contexts over the lattice
// ---------------------------------------------------------------------------

struct JoinCtx<'a> {
    lat: &'a SubgroupLattice,
    memo: HashMap<(NodeId, NodeId), NodeId>,
}

impl<'a> JoinCtx<'a> {
    fn new(lat: &'a SubgroupLattice) -> Self {
        JoinCtx {
            lat,
            memo: HashMap::new(),
        }
    }

    /// Join of a node with one element's cyclic subgroup, memoized.
    fn join_elem(&mut self, node: NodeId, e: u32) -> NodeId {
        if self.lat.node(node).members.contains(e as usize) {
            return node;
        }
        let cyc = self.lat.cyclic_node(e);
        if let Some(&j) = self.memo.get(&(node, cyc)) {
            return j;
        }
        let j = self.lat.join(node, cyc);
        self.memo.insert((node, cyc), j);
        j
    }
}

/// Canonical-candidate data for element searches inside one node.
///
/// Two elements generating the same cyclic subgroup are interchangeable in
/// any irredundant sequence (identical spans, drop-one joins, and
/// membership constraints), so candidates are restricted to the least
/// generator of each cyclic subgroup. Conjugating a whole sequence is also
/// free, so the first element is further restricted to the least such
/// generator across its cyclic subgroup's conjugacy orbit.
struct CanonicalElems {
    /// e is the least generator of the cyclic subgroup it generates.
    is_min_gen: FixedBitSet,
    /// e additionally realizes the minimum over its subgroup's conjugacy
    /// orbit, so it may start a sequence.
    may_start: FixedBitSet,
}

fn canonical_elems_in_node(lat: &SubgroupLattice, node: NodeId) -> CanonicalElems {
    let table = lat.table();
    let gens = &lat.node(node).gens;
    let n = table.len();
    // least generator per cyclic subgroup of the node
    let mut min_gen_of_cyc: HashMap<NodeId, u32> = HashMap::new();
    for e in lat.node(node).members.ones() {
        if e == 0 {
            continue;
        }
        let cyc = lat.cyclic_node(e as u32);
        min_gen_of_cyc.entry(cyc).or_insert(e as u32);
    }
    let mut is_min_gen = FixedBitSet::with_capacity(n);
    for (_, &e) in &min_gen_of_cyc {
        is_min_gen.insert(e as usize);
    }
    // orbit of each cyclic subgroup under conjugation by the node's gens
    let mut may_start = FixedBitSet::with_capacity(n);
    let mut seen: HashSet<NodeId> = HashSet::new();
    for e in lat.node(node).members.ones() {
        if e == 0 {
            continue;
        }
        let start = lat.cyclic_node(e as u32);
        if seen.contains(&start) {
            continue;
        }
        let mut orbit = vec![start];
        seen.insert(start);
        let mut head = 0;
        while head < orbit.len() {
            let cyc = orbit[head];
            head += 1;
            let rep = min_gen_of_cyc[&cyc];
            for &g in gens {
                let image = lat.cyclic_node(table.conj(rep, g));
                if seen.insert(image) {
                    orbit.push(image);
                }
            }
        }
        let best = orbit.iter().map(|c| min_gen_of_cyc[c]).min().unwrap();
        may_start.insert(best as usize);
    }
    CanonicalElems {
        is_min_gen,
        may_start,
    }
}

/// Number of prime factors with multiplicity: an upper bound on the length
/// of any strictly increasing chain of subgroups with index `ratio`.
fn omega(mut ratio: u64) -> u32 {
    let mut k = 0;
    let mut d = 2;
    while d * d <= ratio {
        while ratio % d == 0 {
            ratio /= d;
            k += 1;
        }
        d += 1;
    }
    if ratio > 1 {
        k += 1;
    }
    k
}

struct MSearch<'a> {
    ctx: JoinCtx<'a>,
    target: NodeId,
    canonical: CanonicalElems,
    budget: u64,
    used: u64,
    exhausted: bool,
    /// record lengths only when the span equals the target (m) or always (i)
    require_generating: bool,
    best_len: u32,
    best_witness: Vec<u32>,
}

impl<'a> MSearch<'a> {
    fn run(
        lat: &'a SubgroupLattice,
        target: NodeId,
        require_generating: bool,
        budget: u64,
    ) -> SearchOutcome {
        let canonical = canonical_elems_in_node(lat, target);
        let mut s = MSearch {
            ctx: JoinCtx::new(lat),
            target,
            canonical,
            budget,
            used: 0,
            exhausted: false,
            require_generating,
            best_len: 0,
            best_witness: Vec::new(),
        };
        // the empty sequence generates exactly the trivial group
        if !require_generating || lat.node(target).order == 1 {
            s.best_len = 0;
        }
        if require_generating && lat.node(target).order == 1 {
            return SearchOutcome {
                value: DimValue::Exact(0),
                witness: vec![],
            };
        }
        let trivial = lat.trivial();
        let mut elems = Vec::new();
        let mut dropone = Vec::new();
        s.extend(&mut elems, &mut dropone, trivial, 0);
        SearchOutcome {
            value: if s.exhausted {
                DimValue::AtLeast(s.best_len)
            } else {
                DimValue::Exact(s.best_len)
            },
            witness: s.best_witness,
        }
    }

    fn extend(&mut self, elems: &mut Vec<u32>, dropone: &mut Vec<NodeId>, span: NodeId, from: u32) {
        if self.exhausted {
            return;
        }
        self.used += 1;
        if self.used > self.budget {
            self.exhausted = true;
            return;
        }
        let lat = self.ctx.lat;
        let target_members = &lat.node(self.target).members;
        let target_order = lat.node(self.target).order;
        for e in (from as usize..lat.table().len()).map(|e| e as u32) {
            if self.exhausted {
                return;
            }
            if e == 0 || !target_members.contains(e as usize) {
                continue;
            }
            if !self.canonical.is_min_gen.contains(e as usize) {
                continue;
            }
            if lat.node(span).members.contains(e as usize) {
                continue;
            }
            if elems.is_empty() && !self.canonical.may_start.contains(e as usize) {
                continue;
            }
            let new_span = self.ctx.join_elem(span, e);
            // irredundance of the extended sequence
            let mut ok = true;
            let mut new_dropone = Vec::with_capacity(elems.len() + 1);
            for (i, &d) in dropone.iter().enumerate() {
                let j = self.ctx.join_elem(d, e);
                if lat.node(j).members.contains(elems[i] as usize) {
                    ok = false;
                    break;
                }
                new_dropone.push(j);
            }
            if !ok {
                continue;
            }
            new_dropone.push(span);
            let len = elems.len() as u32 + 1;
            let generating = new_span == self.target;
            if generating {
                if self.require_generating && len > self.best_len {
                    self.best_len = len;
                    self.best_witness = {
                        let mut w = elems.clone();
                        w.push(e);
                        w
                    };
                }
                if !self.require_generating && len > self.best_len {
                    self.best_len = len;
                    self.best_witness = {
                        let mut w = elems.clone();
                        w.push(e);
                        w
                    };
                }
                // nothing outside the span remains, no extension possible
                continue;
            }
            if !self.require_generating && len > self.best_len {
                self.best_len = len;
                self.best_witness = {
                    let mut w = elems.clone();
                    w.push(e);
                    w
                };
            }
            // every further element properly enlarges the span
            let headroom = omega(target_order / lat.node(new_span).order);
            if len + headroom <= self.best_len {
                continue;
            }
            elems.push(e);
            let old_dropone = std::mem::replace(dropone, new_dropone);
            self.extend(elems, dropone, new_span, e + 1);
            *dropone = old_dropone;
            elems.pop();
        }
    }
}

/// Maximum length of an irredundant generating sequence of the whole group.
pub fn dim_m(lat: &SubgroupLattice, budgets: &Budgets) -> SearchOutcome {
    MSearch::run(lat, lat.full(), true, budgets.search_nodes)
}

/// Maximum length of an irredundant generating sequence of one node.
pub fn dim_m_of_node(lat: &SubgroupLattice, node: NodeId, budgets: &Budgets) -> SearchOutcome {
    MSearch::run(lat, node, true, budgets.search_nodes)
}

/// Maximum length of any irredundant sequence, by the lattice recursion:
/// the maximum of m(H) over conjugacy-class representatives H.
pub fn dim_i(lat: &SubgroupLattice, budgets: &Budgets) -> SearchOutcome {
    let mut best = SearchOutcome {
        value: DimValue::Exact(0),
        witness: vec![],
    };
    let mut all_exact = true;
    for rep in lat.class_reps() {
        let out = dim_m_of_node(lat, rep, budgets);
        if !out.value.is_exact() {
            all_exact = false;
        }
        if out.value.value() > best.value.value() {
            best = out;
        }
    }
    if !all_exact {
        best.value = DimValue::AtLeast(best.value.value());
    }
    best
}

/// Direct search for the longest irredundant (not necessarily generating)
/// sequence. Cross-check oracle for `dim_i`.
pub fn dim_i_direct(lat: &SubgroupLattice, budgets: &Budgets) -> SearchOutcome {
    MSearch::run(lat, lat.full(), false, budgets.search_nodes)
}

/// Minimum size of a generating sequence.
pub fn rank_r(lat: &SubgroupLattice, budgets: &Budgets) -> Result<SearchOutcome> {
    if lat.node(lat.full()).order == 1 {
        return Ok(SearchOutcome {
            value: DimValue::Exact(0),
            witness: vec![],
        });
    }
    let canonical = canonical_elems_in_node(lat, lat.full());
    let mut ctx = JoinCtx::new(lat);
    let mut used = 0u64;

    fn dfs(
        ctx: &mut JoinCtx,
        canonical: &CanonicalElems,
        span: NodeId,
        from: u32,
        depth_left: u32,
        elems: &mut Vec<u32>,
        used: &mut u64,
        budget: u64,
    ) -> Result<Option<Vec<u32>>> {
        let lat = ctx.lat;
        if depth_left == 0 {
            return Ok(None);
        }
        for e in (from as usize..lat.table().len()).map(|e| e as u32) {
            if e == 0 || !canonical.is_min_gen.contains(e as usize) {
                continue;
            }
            if lat.node(span).members.contains(e as usize) {
                continue;
            }
            if elems.is_empty() && !canonical.may_start.contains(e as usize) {
                continue;
            }
            *used += 1;
            if *used > budget {
                return Err(Error::SearchBudget { cap: budget });
            }
            let new_span = ctx.join_elem(span, e);
            if new_span == lat.full() {
                let mut w = elems.clone();
                w.push(e);
                return Ok(Some(w));
            }
            elems.push(e);
            let r = dfs(
                ctx,
                canonical,
                new_span,
                e + 1,
                depth_left - 1,
                elems,
                used,
                budget,
            )?;
            elems.pop();
            if r.is_some() {
                return Ok(r);
            }
        }
        Ok(None)
    }

    for k in 1..=64u32 {
        let mut elems = Vec::new();
        if let Some(w) = dfs(
            &mut ctx,
            &canonical,
            lat.trivial(),
            0,
            k,
            &mut elems,
            &mut used,
            budgets.search_nodes,
        )? {
            return Ok(SearchOutcome {
                value: DimValue::Exact(k),
                witness: w,
            });
        }
    }
    Err(Error::SearchBudget {
        cap: budgets.search_nodes,
    })
}

// ---------------------------------------------------------------------------
// General position
// ---------------------------------------------------------------------------

/// Condition (2): every drop-one intersection properly contains the total
/// intersection. The empty family is in general position.
pub fn is_general_position(lat: &SubgroupLattice, members: &[NodeId]) -> bool {
    let n = members.len();
    if n == 0 {
        return true;
    }
    let mut total = lat.node(members[0]).members.clone();
    for &m in &members[1..] {
        total.intersect_with(&lat.node(m).members);
    }
    let total_count = total.count_ones(..);
    for i in 0..n {
        let mut dropone: Option<FixedBitSet> = None;
        for (j, &m) in members.iter().enumerate() {
            if j == i {
                continue;
            }
            match &mut dropone {
                None => dropone = Some(lat.node(m).members.clone()),
                Some(d) => d.intersect_with(&lat.node(m).members),
            }
        }
        let count = match dropone {
            // empty intersection is the whole group
            None => lat.table().len(),
            Some(d) => d.count_ones(..),
        };
        if count == total_count {
            return false;
        }
    }
    true
}

/// Condition (1): all 2^n subfamily intersections are pairwise distinct.
/// Only for n <= 15.
pub fn general_position_condition1(lat: &SubgroupLattice, members: &[NodeId]) -> Result<bool> {
    let n = members.len();
    if n > 15 {
        return Err(Error::InvalidParameter(
            "condition (1) check limited to 15 members".into(),
        ));
    }
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    for mask in 0u32..(1 << n) {
        let mut meet = lat.node(lat.full()).members.clone();
        for (j, &m) in members.iter().enumerate() {
            if mask >> j & 1 == 1 {
                meet.intersect_with(&lat.node(m).members);
            }
        }
        if !seen.insert(meet) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Generator-regime general position: valid only when a certificate is
/// supplied; verifies g_j in M_i iff j != i (sufficient for general
/// position).
pub fn is_general_position_certified(
    g: &PermGroup,
    members: &[DeclaredSubgroup],
    certificate: &[Permutation],
) -> Result<bool> {
    if members.len() != certificate.len() {
        return Err(Error::CertificateInvalid(
            "certificate length differs from family size".into(),
        ));
    }
    for c in certificate {
        if !g.contains(c)? {
            return Err(Error::CertificateInvalid(
                "certificate element outside the group".into(),
            ));
        }
    }
    for (i, m) in members.iter().enumerate() {
        for (j, c) in certificate.iter().enumerate() {
            if m.contains(c)? != (j != i) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// MaxDim
// ---------------------------------------------------------------------------

/// Size of the largest family of maximal subgroups in general position,
/// with a witness family. DFS over index-increasing families, maintaining
/// the total and drop-one meets incrementally; general position is closed
/// downward, so extending only valid states is exhaustive.
pub fn maxdim(lat: &SubgroupLattice, budgets: &Budgets) -> SearchOutcome {
    struct S<'a> {
        lat: &'a SubgroupLattice,
        maximal: Vec<NodeId>,
        budget: u64,
        used: u64,
        exhausted: bool,
        best_len: u32,
        best_witness: Vec<u32>,
    }
    impl<'a> S<'a> {
        fn extend(
            &mut self,
            chosen: &mut Vec<NodeId>,
            total: &FixedBitSet,
            dropone: &mut Vec<FixedBitSet>,
            from: usize,
        ) {
            if self.exhausted {
                return;
            }
            self.used += 1;
            if self.used > self.budget {
                self.exhausted = true;
                return;
            }
            for idx in from..self.maximal.len() {
                let m = self.maximal[idx];
                if chosen.is_empty() {
                    let nd = self.lat.node(m);
                    if nd.class_rep != nd.id {
                        continue;
                    }
                }
                let mm = &self.lat.node(m).members;
                let mut new_total = total.clone();
                new_total.intersect_with(mm);
                let new_total_count = new_total.count_ones(..);
                // the dropped-new meet is the old total; it must shrink
                if total.count_ones(..) == new_total_count {
                    continue;
                }
                let mut ok = true;
                let mut new_dropone = Vec::with_capacity(dropone.len() + 1);
                for d in dropone.iter() {
                    let mut nd = d.clone();
                    nd.intersect_with(mm);
                    if nd.count_ones(..) == new_total_count {
                        ok = false;
                        break;
                    }
                    new_dropone.push(nd);
                }
                if !ok {
                    continue;
                }
                new_dropone.push(total.clone());
                chosen.push(m);
                if chosen.len() as u32 > self.best_len {
                    self.best_len = chosen.len() as u32;
                    self.best_witness = chosen.clone();
                }
                // every further member properly shrinks the total meet
                let headroom = omega(new_total_count as u64);
                if chosen.len() as u32 + headroom > self.best_len {
                    let old = std::mem::replace(dropone, new_dropone);
                    self.extend(chosen, &new_total, dropone, idx + 1);
                    *dropone = old;
                }
                chosen.pop();
            }
        }
    }

    let mut s = S {
        lat,
        maximal: lat.maximal_subgroups().to_vec(),
        budget: budgets.search_nodes,
        used: 0,
        exhausted: false,
        best_len: 0,
        best_witness: vec![],
    };
    let full_members = lat.node(lat.full()).members.clone();
    let mut chosen = Vec::new();
    let mut dropone = Vec::new();
    s.extend(&mut chosen, &full_members, &mut dropone, 0);
    SearchOutcome {
        value: if s.exhausted {
            DimValue::AtLeast(s.best_len)
        } else {
            DimValue::Exact(s.best_len)
        },
        witness: s.best_witness,
    }
}

/// Certified lower bound on MaxDim in the generator regime: every declared
/// member must pass the coset maximality test and the certificate must
/// separate the members.
pub fn maxdim_lower_bound(
    g: &PermGroup,
    members: &[DeclaredSubgroup],
    certificate: &[Permutation],
    budgets: &Budgets,
) -> Result<u32> {
    if members.len() != certificate.len() {
        return Err(Error::CertificateInvalid(
            "certificate length differs from family size".into(),
        ));
    }
    if members.is_empty() {
        return Ok(0);
    }
    if !is_general_position_certified(g, members, certificate)? {
        return Err(Error::CertificateInvalid(
            "certificate does not separate the members".into(),
        ));
    }
    for (i, m) in members.iter().enumerate() {
        if !crate::lattice::is_maximal_by_cosets(g, m, budgets)? {
            return Err(Error::MemberNotMaximal(i));
        }
    }
    Ok(members.len() as u32)
}

// ---------------------------------------------------------------------------
// Sequence <-> family correspondences
// ---------------------------------------------------------------------------

/// Drop-one spans and full span of a sequence of element indices.
fn sequence_nodes(lat: &SubgroupLattice, elems: &[u32]) -> (Vec<NodeId>, NodeId) {
    let n = elems.len();
    let trivial = lat.trivial();
    // prefix[i] = <elems[..i]>, suffix[i] = <elems[i..]>
    let mut prefix = vec![trivial; n + 1];
    for i in 0..n {
        prefix[i + 1] = lat.join_elem(prefix[i], elems[i]);
    }
    let mut suffix = vec![trivial; n + 1];
    for i in (0..n).rev() {
        suffix[i] = lat.join_elem(suffix[i + 1], elems[i]);
    }
    let dropone = (0..n).map(|i| lat.join(prefix[i], suffix[i + 1])).collect();
    (dropone, prefix[n])
}

/// Enlarges the drop-one subgroups of an irredundant generating sequence to
/// maximal subgroups (the first containing maximal in canonical node
/// order). The result is in general position, certified by the sequence.
pub fn family_from_sequence(lat: &SubgroupLattice, elems: &[u32]) -> Result<GeneralPositionFamily> {
    let (dropone, span) = sequence_nodes(lat, elems);
    if span != lat.full() {
        return Err(Error::NotGenerating);
    }
    for (i, &d) in dropone.iter().enumerate() {
        if lat.node(d).members.contains(elems[i] as usize) {
            return Err(Error::NotIrredundant);
        }
    }
    let mut members = Vec::with_capacity(elems.len());
    for (i, &d) in dropone.iter().enumerate() {
        let m = lat
            .maximal_subgroups()
            .iter()
            .copied()
            .find(|&m| lat.node(d).members.is_subset(&lat.node(m).members))
            .expect("every proper subgroup lies in a maximal one");
        debug_assert!(!lat.node(m).members.contains(elems[i] as usize));
        members.push(m);
    }
    debug_assert!(is_general_position(lat, &members));
    Ok(GeneralPositionFamily {
        members,
        certificate: elems.to_vec(),
    })
}

/// The lexicographically least certificate of a family in general
/// position, together with the irredundant sequence it forms.
pub fn certify_family(
    lat: &SubgroupLattice,
    members: &[NodeId],
) -> Result<(Vec<u32>, IrredundantSequence)> {
    if !is_general_position(lat, members) {
        return Err(Error::NotGeneralPosition);
    }
    let n = members.len();
    let mut cert = Vec::with_capacity(n);
    for i in 0..n {
        let mut dropone: Option<FixedBitSet> = None;
        for (j, &m) in members.iter().enumerate() {
            if j == i {
                continue;
            }
            match &mut dropone {
                None => dropone = Some(lat.node(m).members.clone()),
                Some(d) => d.intersect_with(&lat.node(m).members),
            }
        }
        let mut pool = dropone.unwrap_or_else(|| lat.node(lat.full()).members.clone());
        pool.difference_with(&lat.node(members[i]).members);
        let e = pool
            .ones()
            .next()
            .expect("general position guarantees a separating element") as u32;
        cert.push(e);
    }
    let (dropone, span) = sequence_nodes(lat, &cert);
    for (i, &d) in dropone.iter().enumerate() {
        if lat.node(d).members.contains(cert[i] as usize) {
            return Err(Error::CertificateInvalid(
                "certificate sequence is not irredundant".into(),
            ));
        }
    }
    let seq = IrredundantSequence {
        elems: cert.clone(),
        dropone,
        span,
    };
    Ok((cert, seq))
}

// ---------------------------------------------------------------------------
// Refitting a sequence along a normal subgroup
// ---------------------------------------------------------------------------

/// Given an irredundant generating sequence of `g` and a normal subgroup
/// `n`, reorders it so that a prefix of length k projects to an irredundant
/// generating sequence of `g/n` and replaces the remaining elements by
/// elements of `n`, keeping the whole sequence irredundant and generating.
/// Returns (k, new sequence).
pub fn whiston_refit(
    g: &PermGroup,
    seq: &[Permutation],
    n: &PermGroup,
    budgets: &Budgets,
) -> Result<(usize, Vec<Permutation>)> {
    let span = PermGroup::from_generators(g.degree(), seq.to_vec())?;
    if span.order() != g.order() {
        return Err(Error::NotGenerating);
    }
    if !is_irredundant(g, seq)? {
        return Err(Error::NotIrredundant);
    }
    let qa = g.quotient_action(n, budgets.coset_cap)?;
    let q = qa.group();
    let projections: Vec<Permutation> = seq
        .iter()
        .map(|x| qa.project(x))
        .collect::<Result<Vec<_>>>()?;

    // greedily remove projections that are redundant for generating G/N
    let mut kept: Vec<usize> = (0..seq.len()).collect();
    let mut idx = 0;
    while idx < kept.len() {
        let trial: Vec<Permutation> = kept
            .iter()
            .enumerate()
            .filter(|&(pos, _)| pos != idx)
            .map(|(_, &i)| projections[i].clone())
            .collect();
        let gsub = PermGroup::from_generators(q.degree(), trial)?;
        if gsub.order() == q.order() {
            kept.remove(idx);
        } else {
            idx += 1;
        }
    }
    let k = kept.len();
    let removed: Vec<usize> = (0..seq.len()).filter(|i| !kept.contains(i)).collect();

    // prefix = kept elements in original order
    let prefix: Vec<Permutation> = kept.iter().map(|&i| seq[i].clone()).collect();
    let prefix_group = PermGroup::from_generators(g.degree(), prefix.clone())?;
    let prefix_table = ElementTable::build(&prefix_group, budgets.max_order_enumerate)?;

    let mut new_seq = prefix.clone();
    for &i in &removed {
        // first x in <prefix> (canonical order) with seq[i]*x in N
        let target = qa.project(&seq[i])?.inverse();
        let mut found = None;
        for x in prefix_table.elements() {
            if qa.project(x)? == target {
                found = Some(x.clone());
                break;
            }
        }
        let x = found.expect("prefix projections generate the quotient");
        let h = seq[i].compose(&x);
        debug_assert!(n.contains(&h)?);
        new_seq.push(h);
    }

    // verified post hoc
    let new_span = PermGroup::from_generators(g.degree(), new_seq.clone())?;
    if new_span.order() != g.order() {
        return Err(Error::NotGenerating);
    }
    if !is_irredundant(g, &new_seq)? {
        return Err(Error::NotIrredundant);
    }
    let kept_proj: Vec<Permutation> = kept.iter().map(|&i| projections[i].clone()).collect();
    if !is_irredundant(q, &kept_proj)? {
        return Err(Error::NotIrredundant);
    }
    Ok((k, new_seq))
}
