//! Constructors for every group family the engine works with: standard
//! families, wreath products by a cyclic shift, the stabilizer families
//! with their certificates, the character-based semidirect construction and
//! its inverse decomposition, subdirect-product analysis.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::budget::Budgets;
use crate::classify;
use crate::elements::{is_prime, sylow_subgroup, ElementTable};
use crate::error::{Error, Result};
use crate::group::{setwise_stabilizer, PermGroup};
use crate::lattice::{DeclaredSubgroup, MemberTest, NodeId, SubgroupLattice};
use crate::perm::Permutation;

// ---------------------------------------------------------------------------
// Standard families
// ---------------------------------------------------------------------------

/// Cyclic group of order `n` as an `n`-cycle (trivial group for n = 1).
pub fn cyclic(n: u64) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("cyclic(0)".into()));
    }
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    let n = n as usize;
    let gen = Permutation::from_cycles(n, &[(0..n).collect()])?;
    PermGroup::from_generators(n, vec![gen])
}

pub fn symmetric(n: u64) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("symmetric(0)".into()));
    }
    let deg = n as usize;
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    let mut gens = vec![Permutation::from_cycles(deg, &[vec![0, 1]])?];
    if n >= 3 {
        gens.push(Permutation::from_cycles(deg, &[(0..deg).collect()])?);
    }
    let g = PermGroup::from_generators(deg, gens)?;
    debug_assert_eq!(g.order(), &factorial(n));
    Ok(g)
}

pub fn alternating(n: u64) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("alternating(0)".into()));
    }
    let deg = n as usize;
    if n <= 2 {
        return Ok(PermGroup::trivial(deg));
    }
    let mut gens = vec![Permutation::from_cycles(deg, &[vec![0, 1, 2]])?];
    if n >= 4 {
        let cycle: Vec<usize> = if n % 2 == 1 {
            (0..deg).collect()
        } else {
            (1..deg).collect()
        };
        gens.push(Permutation::from_cycles(deg, &[cycle])?);
    }
    let g = PermGroup::from_generators(deg, gens)?;
    debug_assert_eq!(g.order() * BigUint::from(2u32), factorial(n));
    Ok(g)
}

/// Dihedral group of the stated order (order = 2n, symmetries of the n-gon).
pub fn dihedral(order: u64) -> Result<PermGroup> {
    if order < 6 || order % 2 != 0 {
        return Err(Error::InvalidParameter(format!("dihedral({order})")));
    }
    let n = (order / 2) as usize;
    let rot = Permutation::from_cycles(n, &[(0..n).collect()])?;
    let refl = Permutation::from_images((0..n).map(|i| (n - i) % n).collect())?;
    PermGroup::from_generators(n, vec![rot, refl])
}

/// Generalized quaternion group of 2-power order >= 8, in its regular
/// representation (its smallest faithful one).
pub fn quaternion(order: u64) -> Result<PermGroup> {
    if order < 8 || !order.is_power_of_two() {
        return Err(Error::InvalidParameter(format!("quaternion({order})")));
    }
    let m = (order / 2) as usize; // a has order m, b^2 = a^(m/2)
    let deg = 2 * m;
    let idx = |i: usize, j: usize| -> usize { i + m * j };
    // right multiplication by a and b on normal forms a^i b^j
    let mut a_img = vec![0; deg];
    let mut b_img = vec![0; deg];
    for i in 0..m {
        a_img[idx(i, 0)] = idx((i + 1) % m, 0);
        a_img[idx(i, 1)] = idx((i + m - 1) % m, 1);
        b_img[idx(i, 0)] = idx(i, 1);
        b_img[idx(i, 1)] = idx((i + m / 2) % m, 0);
    }
    let g = PermGroup::from_generators(
        deg,
        vec![
            Permutation::from_images(a_img)?,
            Permutation::from_images(b_img)?,
        ],
    )?;
    debug_assert_eq!(g.order(), &BigUint::from(order));
    Ok(g)
}

/// (Z/p)^n as n disjoint p-cycles.
pub fn elementary_abelian(p: u64, n: u32) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("elementary_abelian(_, 0)".into()));
    }
    let orders = vec![p; n as usize];
    abelian(&orders)
}

/// Direct product of cyclic groups of the given orders.
pub fn abelian(orders: &[u64]) -> Result<PermGroup> {
    let mut parts: Vec<PermGroup> = Vec::new();
    for &n in orders {
        if n == 0 {
            return Err(Error::InvalidParameter("cyclic factor of order 0".into()));
        }
        if n > 1 {
            parts.push(cyclic(n)?);
        }
    }
    match parts.len() {
        0 => Ok(PermGroup::trivial(1)),
        _ => {
            let mut acc = parts[0].clone();
            for p in &parts[1..] {
                acc = direct_product(&acc, p)?;
            }
            Ok(acc)
        }
    }
}

/// Direct product acting on the disjoint union of the two domains.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let deg = a.degree() + b.degree();
    let mut gens: Vec<Permutation> = a
        .generators()
        .iter()
        .map(|g| g.extend_degree(deg))
        .collect();
    for g in b.generators() {
        gens.push(g.shift(a.degree(), deg));
    }
    PermGroup::from_generators(deg, gens)
}

/// PSL(3,2) = GL(3,2) acting on the 7 nonzero vectors of F_2^3.
/// Point i corresponds to the vector with the bits of i+1.
pub fn psl_3_2() -> Result<PermGroup> {
    let apply_matrix = |m: [[u8; 3]; 3]| -> Result<Permutation> {
        let mut images = vec![0usize; 7];
        for v in 1u8..8 {
            let bits = [(v >> 2) & 1, (v >> 1) & 1, v & 1];
            let mut w = [0u8; 3];
            for r in 0..3 {
                w[r] = (0..3).map(|c| m[r][c] & bits[c]).fold(0, |x, y| x ^ y);
            }
            let wv = (w[0] << 2) | (w[1] << 1) | w[2];
            images[(v - 1) as usize] = (wv - 1) as usize;
        }
        Permutation::from_images(images)
    };
    // companion matrix of t^3 + t + 1 and a coordinate swap
    let c = apply_matrix([[0, 0, 1], [1, 0, 1], [0, 1, 0]])?;
    let s = apply_matrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]])?;
    let g = PermGroup::from_generators(7, vec![c, s])?;
    debug_assert_eq!(g.order(), &BigUint::from(168u32));
    Ok(g)
}

fn factorial(n: u64) -> BigUint {
    let mut f = BigUint::one();
    for k in 2..=n {
        f *= BigUint::from(k);
    }
    f
}

// ---------------------------------------------------------------------------
// Wreath products S wr Z/p and the stabilizer families
// ---------------------------------------------------------------------------

/// `s wr Z/p`: p copies of the base domain, the base acting in block 0,
/// plus the cyclic shift of blocks. Order |S|^p * p.
pub fn wreath_cyclic(s: &PermGroup, p: u64) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = s.degree();
    let pu = p as usize;
    let deg = n * pu;
    let mut gens: Vec<Permutation> = s
        .generators()
        .iter()
        .map(|g| g.extend_degree(deg))
        .collect();
    let mut shift = vec![0usize; deg];
    for b in 0..pu {
        for x in 0..n {
            shift[b * n + x] = ((b + 1) % pu) * n + x;
        }
    }
    gens.push(Permutation::from_images(shift)?);
    let g = PermGroup::from_generators(deg, gens)?;
    let expected = s.order().pow(p as u32) * BigUint::from(p);
    if g.order() != &expected {
        return Err(Error::InvalidParameter(format!(
            "wreath order mismatch: got {}, expected {}",
            g.order(),
            expected
        )));
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MijKind {
    Alternating,
    Symmetric,
}

/// One member of the stabilizer family: the setwise stabilizer of a point
/// set holding the base point in every block except one, which holds a
/// deviant point instead.
#[derive(Debug, Clone)]
pub struct MijMember {
    /// Deviant in-block point, 1-based (2..=n-2 in the alternating case,
    /// 2..=n-1 in the symmetric case).
    pub point: usize,
    /// Block carrying the deviant point, 1-based.
    pub block: usize,
    pub points: Vec<usize>,
    pub gens: Vec<Permutation>,
}

impl MijMember {
    pub fn declared(&self) -> DeclaredSubgroup {
        DeclaredSubgroup {
            gens: self.gens.clone(),
            test: MemberTest::SetStabilizer(self.points.clone()),
        }
    }
}

/// A stabilizer family in `base wr Z/p` together with its certificate:
/// one element per member lying in every other member but not in its own.
/// Certificates are 3-cycles in the alternating case but transpositions in
/// the symmetric case: a one-block 3-cycle on 4 points fixes only one
/// point, so it cannot avoid the other members' marked points when n = 4.
#[derive(Debug, Clone)]
pub struct MijFamily {
    pub group: PermGroup,
    pub kind: MijKind,
    pub base_degree: usize,
    pub copies: u64,
    pub members: Vec<MijMember>,
    pub certificate: Vec<Permutation>,
}

pub fn mij_family(kind: MijKind, n: u64, p: u64, budgets: &Budgets) -> Result<MijFamily> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let min_n = match kind {
        MijKind::Alternating => 5,
        MijKind::Symmetric => 4,
    };
    if n < min_n {
        return Err(Error::InvalidParameter(format!(
            "mij_family needs n >= {min_n} for this kind"
        )));
    }
    let base = match kind {
        MijKind::Alternating => alternating(n)?,
        MijKind::Symmetric => symmetric(n)?,
    };
    let group = wreath_cyclic(&base, p)?;
    let nu = n as usize;
    let pu = p as usize;

    // 1-based deviant range
    let deviants: Vec<usize> = match kind {
        MijKind::Alternating => (2..=nu - 2).collect(),
        MijKind::Symmetric => (2..=nu - 1).collect(),
    };

    let mut members = Vec::new();
    let mut certificate = Vec::new();
    for block in 1..=pu {
        for &point in &deviants {
            let points: Vec<usize> = (0..pu)
                .map(|b| b * nu + if b == block - 1 { point - 1 } else { 0 })
                .collect();
            let stab = setwise_stabilizer(&group, &points, budgets.coset_cap)?;
            let gens = crate::group::reduce_generators(group.degree(), stab.generators())?;
            members.push(MijMember {
                point,
                block,
                points,
                gens,
            });
            let b0 = (block - 1) * nu;
            let cert = match kind {
                MijKind::Alternating => Permutation::from_cycles(
                    group.degree(),
                    &[vec![b0 + point - 1, b0 + nu - 2, b0 + nu - 1]],
                )?,
                MijKind::Symmetric => {
                    Permutation::from_cycles(group.degree(), &[vec![b0 + point - 1, b0 + nu - 1]])?
                }
            };
            certificate.push(cert);
        }
    }

    // certificate validity: cert[k] lies in member m iff k != m
    for (m, member) in members.iter().enumerate() {
        let decl = member.declared();
        for (k, cert) in certificate.iter().enumerate() {
            if !group.contains(cert)? {
                return Err(Error::CertificateInvalid(
                    "certificate element outside the group".into(),
                ));
            }
            let inside = decl.contains(cert)?;
            if inside != (k != m) {
                return Err(Error::CertificateInvalid(format!(
                    "certificate {k} vs member {m}: contained={inside}"
                )));
            }
        }
    }

    Ok(MijFamily {
        group,
        kind,
        base_degree: nu,
        copies: p,
        members,
        certificate,
    })
}

// ---------------------------------------------------------------------------
// Character-based semidirect construction (K -> G) and its inverse (G -> K)
// ---------------------------------------------------------------------------

/// The character data used to build `(Z/p)^k x| K`.
#[derive(Debug, Clone)]
pub struct CharacterData {
    /// Invariant-factor orders of K/K', largest first.
    pub invariants: Vec<u64>,
    pub prime: u64,
    /// chars[g][i]: scalar action of K-generator g on affine block i.
    pub chars: Vec<Vec<u64>>,
}

pub struct KtogResult {
    pub group: PermGroup,
    pub data: CharacterData,
}

/// Builds `G = (Z/p)^k x| K` where k is the number of invariant factors of
/// `K/K'` and each factor acts through a linear character mod p. The domain
/// is k affine blocks of size p plus K's own faithful domain, which keeps
/// the kernel trivial. If `p` is omitted, the least prime coprime to |K|
/// with `p = 1 (mod n_i)` for all invariant factors is chosen.
pub fn ktog_construct(k: &PermGroup, p: Option<u64>, budgets: &Budgets) -> Result<KtogResult> {
    if k.is_trivial() {
        return Ok(KtogResult {
            group: PermGroup::trivial(1),
            data: CharacterData {
                invariants: vec![],
                prime: p.unwrap_or(2),
                chars: k.generators().iter().map(|_| vec![]).collect(),
            },
        });
    }
    let derived = k.derived_subgroup()?;
    let qa = k.quotient_action(&derived, budgets.coset_cap)?;
    let q_table = ElementTable::build(qa.group(), budgets.max_order_enumerate)?;
    let basis = classify::abelian_basis(&q_table, budgets)?;
    let invariants: Vec<u64> = basis.iter().map(|&(_, o)| o).collect();
    let rank = invariants.len();

    let k_order = k
        .order_usize()
        .ok_or_else(|| Error::InvalidParameter("K too large".into()))? as u64;
    let prime = match p {
        Some(p) => {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if k_order % p == 0 || invariants.iter().any(|&n| (p - 1) % n != 0) {
                return Err(Error::InvalidParameter(format!(
                    "prime {p} is not admissible for this K"
                )));
            }
            p
        }
        None => find_admissible_prime(k_order, &invariants, budgets.prime_search_bound)?,
    };

    // coordinates of every quotient element with respect to the basis
    let coords = abelian_coordinates(&q_table, &basis);
    let root = primitive_root(prime);
    let zetas: Vec<u64> = invariants
        .iter()
        .map(|&n| pow_mod(root, (prime - 1) / n, prime))
        .collect();

    // scalar character values for each K-generator
    let mut chars: Vec<Vec<u64>> = Vec::new();
    for g in k.generators() {
        let image = qa.project(g)?;
        let e = q_table
            .index_of(&image)
            .expect("projection lies in the quotient");
        let c = &coords[e as usize];
        chars.push((0..rank).map(|i| pow_mod(zetas[i], c[i], prime)).collect());
    }

    // the joint kernel of the characters must be exactly K', i.e. exactly
    // the identity of the quotient maps to all-ones
    for (e, c) in coords.iter().enumerate() {
        let all_one = (0..rank).all(|i| pow_mod(zetas[i], c[i], prime) == 1);
        if all_one != (e == 0) {
            return Err(Error::InvalidParameter(
                "character kernel does not match the derived subgroup".into(),
            ));
        }
    }

    // assemble the permutation group
    let pu = prime as usize;
    let deg = rank * pu + k.degree();
    let mut gens: Vec<Permutation> = Vec::new();
    for i in 0..rank {
        let mut img: Vec<usize> = (0..deg).collect();
        for a in 0..pu {
            img[i * pu + a] = i * pu + (a + 1) % pu;
        }
        gens.push(Permutation::from_images(img)?);
    }
    for (gi, g) in k.generators().iter().enumerate() {
        let mut img: Vec<usize> = (0..deg).collect();
        for i in 0..rank {
            let c = chars[gi][i] as usize;
            for a in 0..pu {
                img[i * pu + a] = i * pu + (c * a) % pu;
            }
        }
        for x in 0..k.degree() {
            img[rank * pu + x] = rank * pu + g.apply(x);
        }
        gens.push(Permutation::from_images(img)?);
    }
    let group = PermGroup::from_generators(deg, gens)?;
    let expected = BigUint::from(prime).pow(rank as u32) * k.order();
    if group.order() != &expected {
        return Err(Error::InvalidParameter(format!(
            "semidirect order mismatch: got {}, expected {}",
            group.order(),
            expected
        )));
    }
    Ok(KtogResult {
        group,
        data: CharacterData {
            invariants,
            prime,
            chars,
        },
    })
}

fn find_admissible_prime(k_order: u64, invariants: &[u64], bound: u64) -> Result<u64> {
    for p in 2..bound {
        if !is_prime(p) {
            continue;
        }
        if k_order % p == 0 {
            continue;
        }
        if invariants.iter().all(|&n| (p - 1) % n == 0) {
            return Ok(p);
        }
    }
    Err(Error::NoAdmissiblePrime { bound })
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn primitive_root(p: u64) -> u64 {
    let phi = p - 1;
    let mut factors = Vec::new();
    let mut m = phi;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    'g: for g in 2..p {
        for &q in &factors {
            if pow_mod(g, phi / q, p) == 1 {
                continue 'g;
            }
        }
        return g;
    }
    unreachable!("a primitive root exists for every prime")
}

/// Coordinates of every element of an abelian group with respect to a
/// basis delivered by `classify::abelian_basis`.
fn abelian_coordinates(table: &ElementTable, basis: &[(u32, u64)]) -> Vec<Vec<u64>> {
    fn rec(
        table: &ElementTable,
        basis: &[(u32, u64)],
        level: usize,
        acc: u32,
        cs: &mut Vec<u64>,
        coords: &mut Vec<Vec<u64>>,
    ) {
        if level == basis.len() {
            coords[acc as usize] = cs.clone();
            return;
        }
        let (b, order) = basis[level];
        let mut cur = acc;
        for c in 0..order {
            cs.push(c);
            rec(table, basis, level + 1, cur, cs, coords);
            cs.pop();
            cur = table.mul(cur, b);
        }
    }
    let mut coords = vec![Vec::new(); table.len()];
    let mut cs = Vec::new();
    rec(table, basis, 0, 0, &mut cs, &mut coords);
    coords
}

/// Decomposition of a supersolvable group as `P x| K` with `P` the normal
/// Sylow subgroup for the largest prime and `K` a complement found in the
/// lattice.
#[derive(Debug, Clone, Copy)]
pub struct SylowComplement {
    pub prime: u64,
    pub sylow: NodeId,
    pub complement: NodeId,
}

pub fn gtok_decompose(lat: &SubgroupLattice) -> Result<SylowComplement> {
    let n = lat.table().len() as u64;
    if n == 1 {
        return Err(Error::InvalidParameter(
            "trivial group has no Sylow decomposition".into(),
        ));
    }
    let prime = largest_prime_factor(n);
    let sylow_group = sylow_subgroup(lat.table(), prime)?;
    let sylow = lat.node_of_group(&sylow_group)?;
    if !lat.node(sylow).is_normal {
        return Err(Error::SylowNotNormal { p: prime });
    }
    let target = n / lat.node(sylow).order;
    let complement = lat
        .nodes()
        .iter()
        .find(|nd| nd.order == target && lat.intersect(nd.id, sylow) == lat.trivial())
        .map(|nd| nd.id)
        .ok_or(Error::NoComplement)?;
    Ok(SylowComplement {
        prime,
        sylow,
        complement,
    })
}

pub fn largest_prime_factor(mut n: u64) -> u64 {
    let mut best = 1;
    let mut d = 2;
    while d * d <= n {
        while n % d == 0 {
            best = d;
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        best = n;
    }
    best
}

// ---------------------------------------------------------------------------
// Goursat decomposition of a subdirect product of two groups
// ---------------------------------------------------------------------------

/// The data of a subdirect product `H <= G x G'`: the two kernels
/// (identified inside the factors) and the induced isomorphism between the
/// quotients, tabulated as pairs of quotient permutations.
pub struct GoursatDecomposition {
    pub left_kernel: PermGroup,
    pub right_kernel: PermGroup,
    pub left_quotient: PermGroup,
    pub right_quotient: PermGroup,
    /// Graph of the isomorphism G/N -> G'/N'.
    pub iso: Vec<(Permutation, Permutation)>,
}

pub fn goursat_decompose(
    left: &PermGroup,
    right: &PermGroup,
    h_gens: &[Permutation],
    budgets: &Budgets,
) -> Result<GoursatDecomposition> {
    let d1 = left.degree();
    let d2 = right.degree();
    let project = |g: &Permutation| -> Result<(Permutation, Permutation)> {
        if g.degree() != d1 + d2 {
            return Err(Error::DegreeMismatch {
                left: d1 + d2,
                right: g.degree(),
            });
        }
        let img = g.images();
        if img[..d1].iter().any(|&x| x >= d1) {
            return Err(Error::NotSubdirect);
        }
        let a = Permutation::from_images(img[..d1].to_vec())?;
        let b = Permutation::from_images(img[d1..].iter().map(|&x| x - d1).collect())?;
        Ok((a, b))
    };
    let mut p1 = Vec::new();
    let mut p2 = Vec::new();
    for g in h_gens {
        let (a, b) = project(g)?;
        if !left.contains(&a)? || !right.contains(&b)? {
            return Err(Error::NotSubdirect);
        }
        p1.push(a);
        p2.push(b);
    }
    if PermGroup::from_generators(d1.max(1), p1)?.order() != left.order()
        || PermGroup::from_generators(d2.max(1), p2)?.order() != right.order()
    {
        return Err(Error::NotSubdirect);
    }

    let h = PermGroup::from_generators(d1 + d2, h_gens.to_vec())?;
    let h_table = ElementTable::build(&h, budgets.max_order_enumerate)?;
    let mut left_kernel_gens = Vec::new();
    let mut right_kernel_gens = Vec::new();
    for e in h_table.elements() {
        let (a, b) = project(e)?;
        if a.is_identity() {
            right_kernel_gens.push(b.clone());
        }
        if b.is_identity() {
            left_kernel_gens.push(a.clone());
        }
    }
    let left_kernel = PermGroup::from_generators(d1.max(1), left_kernel_gens)?;
    let right_kernel = PermGroup::from_generators(d2.max(1), right_kernel_gens)?;

    let ql = left.quotient_action(&left_kernel, budgets.coset_cap)?;
    let qr = right.quotient_action(&right_kernel, budgets.coset_cap)?;

    let mut pairs: HashMap<Permutation, Permutation> = HashMap::new();
    for e in h_table.elements() {
        let (a, b) = project(e)?;
        let qa = ql.project(&a)?;
        let qb = qr.project(&b)?;
        if let Some(prev) = pairs.get(&qa) {
            if prev != &qb {
                return Err(Error::NotSubdirect);
            }
        } else {
            pairs.insert(qa, qb);
        }
    }
    // the graph must be a bijection between quotients of equal order, and
    // |H| must equal |G/N| * |N| * |N'|
    let ql_order = ql.group().order_usize().unwrap_or(usize::MAX);
    if pairs.len() != ql_order
        || ql.group().order() != qr.group().order()
        || BigUint::from(pairs.len()) * left_kernel.order() * right_kernel.order() != *h.order()
    {
        return Err(Error::NotSubdirect);
    }
    let mut values: Vec<&Permutation> = pairs.values().collect();
    values.sort_unstable();
    values.dedup();
    if values.len() != pairs.len() {
        return Err(Error::NotSubdirect);
    }

    let mut iso: Vec<(Permutation, Permutation)> = pairs.into_iter().collect();
    iso.sort_unstable();
    Ok(GoursatDecomposition {
        left_kernel,
        right_kernel,
        left_quotient: ql.group().clone(),
        right_quotient: qr.group().clone(),
        iso,
    })
}

// ---------------------------------------------------------------------------
// Diagonal linkedness of a subdirect power of a simple group
// ---------------------------------------------------------------------------

/// Classifies each pair of coordinates of a subdirect power `K <= S^r` as
/// independent (full pair projection) or diagonally linked (pair projection
/// of diagonal type), and returns the equivalence classes of coordinates
/// (0-based). Supported bases: the nonabelian simple groups of order 60
/// and 168.
pub fn diagonal_linkedness(
    s: &PermGroup,
    r: usize,
    k_gens: &[Permutation],
) -> Result<Vec<Vec<usize>>> {
    if r == 0 || r > 4 {
        return Err(Error::InvalidParameter("need 1 <= r <= 4".into()));
    }
    let s_order = s
        .order_usize()
        .ok_or_else(|| Error::UnsupportedBase("base too large".into()))? as u64;
    if s_order != 60 && s_order != 168 {
        return Err(Error::UnsupportedBase(format!("order {s_order}")));
    }
    // a perfect group of order 60 or 168 is the simple group of that order
    if s.derived_subgroup()?.order() != s.order() {
        return Err(Error::UnsupportedBase("base is not perfect".into()));
    }
    let d = s.degree();
    let deg = r * d;
    let component = |g: &Permutation, i: usize| -> Result<Permutation> {
        if g.degree() != deg {
            return Err(Error::DegreeMismatch {
                left: deg,
                right: g.degree(),
            });
        }
        let img = g.images();
        let slice: Vec<usize> = img[i * d..(i + 1) * d]
            .iter()
            .map(|&x| x.wrapping_sub(i * d))
            .collect();
        if slice.iter().any(|&x| x >= d) {
            return Err(Error::NotSubdirect);
        }
        Permutation::from_images(slice)
    };
    // every projection must be onto
    for i in 0..r {
        let gens: Vec<Permutation> = k_gens
            .iter()
            .map(|g| component(g, i))
            .collect::<Result<_>>()?;
        for g in &gens {
            if !s.contains(g)? {
                return Err(Error::NotSubdirect);
            }
        }
        if PermGroup::from_generators(d, gens)?.order() != s.order() {
            return Err(Error::NotSubdirect);
        }
    }
    // pair projections: |S|^2 means independent, |S| means diagonal type
    let mut linked = vec![false; r * r];
    for i in 0..r {
        for j in i + 1..r {
            let gens: Vec<Permutation> = k_gens
                .iter()
                .map(|g| -> Result<Permutation> {
                    let a = component(g, i)?;
                    let b = component(g, j)?;
                    let mut img: Vec<usize> = a.images().to_vec();
                    img.extend(b.images().iter().map(|&x| x + d));
                    Permutation::from_images(img)
                })
                .collect::<Result<_>>()?;
            let order = PermGroup::from_generators(2 * d, gens)?.order().clone();
            let s_big = BigUint::from(s_order);
            if order == s_big.clone() * s_big.clone() {
                // independent
            } else if order == s_big {
                linked[i * r + j] = true;
            } else {
                return Err(Error::NotDiagonalDichotomy { i, j });
            }
        }
    }
    // union-find over linked pairs
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    let mut parent: Vec<usize> = (0..r).collect();
    for i in 0..r {
        for j in i + 1..r {
            if linked[i * r + j] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut classes: HashMap<usize, Vec<usize>> = HashMap::new();
    for x in 0..r {
        let root = find(&mut parent, x);
        classes.entry(root).or_default().push(x);
    }
    let mut out: Vec<Vec<usize>> = classes.into_values().collect();
    out.sort_by_key(|c| c[0]);
    Ok(out)
}

// ---------------------------------------------------------------------------
// Diagonalizing the conjugation action of K on an elementary abelian P
// ---------------------------------------------------------------------------

/// A basis of the elementary abelian node on which every generator of the
/// complement acts by a scalar, with the scalar table.
#[derive(Debug, Clone)]
pub struct DiagonalizedAction {
    pub prime: u64,
    /// Element indices of the basis vectors.
    pub basis: Vec<u32>,
    /// chars[g][i]: scalar of K-generator g on basis vector i.
    pub chars: Vec<Vec<u64>>,
}

pub fn diagonalize_action(
    lat: &SubgroupLattice,
    p_node: NodeId,
    k_node: NodeId,
) -> Result<DiagonalizedAction> {
    let table = lat.table();
    let p_members = &lat.node(p_node).members;
    let p_order = lat.node(p_node).order;
    if p_order == 1 {
        return Ok(DiagonalizedAction {
            prime: 2,
            basis: vec![],
            chars: lat.node(k_node).gens.iter().map(|_| vec![]).collect(),
        });
    }
    let prime = largest_prime_factor(p_order);
    if !lat.node(p_node).is_abelian
        || p_members
            .ones()
            .any(|e| e != 0 && table.order_of(e as u32) != prime)
    {
        return Err(Error::InvalidParameter(
            "node is not elementary abelian".into(),
        ));
    }
    // independent generators (a basis) of P
    let mut basis_elems: Vec<u32> = Vec::new();
    let mut closed = table.closure_bitset(&[]);
    for e in p_members.ones() {
        if !closed.contains(e) {
            basis_elems.push(e as u32);
            closed = table.closure_bitset(&basis_elems);
        }
    }
    let rank = basis_elems.len();

    // coordinates of every member of P
    fn rec(
        table: &ElementTable,
        basis: &[u32],
        prime: u64,
        level: usize,
        acc: u32,
        cs: &mut Vec<u64>,
        coord_of: &mut HashMap<u32, Vec<u64>>,
        elem_of: &mut HashMap<Vec<u64>, u32>,
    ) {
        if level == basis.len() {
            coord_of.insert(acc, cs.clone());
            elem_of.insert(cs.clone(), acc);
            return;
        }
        let mut cur = acc;
        for c in 0..prime {
            cs.push(c);
            rec(table, basis, prime, level + 1, cur, cs, coord_of, elem_of);
            cs.pop();
            cur = table.mul(cur, basis[level]);
        }
    }
    let mut coord_of: HashMap<u32, Vec<u64>> = HashMap::new();
    let mut elem_of: HashMap<Vec<u64>, u32> = HashMap::new();
    let mut cs = Vec::new();
    rec(
        table,
        &basis_elems,
        prime,
        0,
        0,
        &mut cs,
        &mut coord_of,
        &mut elem_of,
    );

    // conjugation matrices of the K-generators (columns = images of basis)
    let k_gens = lat.node(k_node).gens.clone();
    let mut matrices: Vec<Vec<Vec<u64>>> = Vec::new();
    for &g in &k_gens {
        let mut cols = Vec::new();
        for &b in &basis_elems {
            // action v -> g v g^-1
            let image = table.mul(table.mul(g, b), table.inv(g));
            let c = coord_of.get(&image).ok_or(Error::NotNormal)?.clone();
            cols.push(c);
        }
        matrices.push(cols);
    }

    // refine spaces by eigenspaces of each generator matrix; failing to
    // split a space fully means no simultaneous eigenbasis exists
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity_basis(rank)];
    for m in &matrices {
        let mut next = Vec::new();
        for space in &spaces {
            let mut covered = 0;
            for lambda in 1..prime {
                let sub = eigenspace_within(m, lambda, space, prime, rank);
                if !sub.is_empty() {
                    covered += sub.len();
                    next.push(sub);
                }
            }
            if covered != space.len() {
                return Err(Error::NoEigenbasis { p: prime });
            }
        }
        spaces = next;
    }
    // all generators act as scalars on each final space; use its basis lines
    let mut lines: Vec<Vec<u64>> = Vec::new();
    for space in &spaces {
        for v in space {
            lines.push(normalize_vector(v, prime));
        }
    }
    lines.sort_unstable();

    let mut chars: Vec<Vec<u64>> = vec![Vec::new(); k_gens.len()];
    for line in &lines {
        for (gi, m) in matrices.iter().enumerate() {
            let image = apply_matrix_vec(m, line, prime);
            let lambda =
                scalar_ratio(&image, line, prime).ok_or(Error::NoEigenbasis { p: prime })?;
            chars[gi].push(lambda);
        }
    }
    let basis: Vec<u32> = lines.iter().map(|v| elem_of[v]).collect();
    Ok(DiagonalizedAction {
        prime,
        basis,
        chars,
    })
}

fn identity_basis(rank: usize) -> Vec<Vec<u64>> {
    (0..rank)
        .map(|i| (0..rank).map(|j| u64::from(i == j)).collect())
        .collect()
}

/// Columns-of-coordinates matrix applied to a coordinate vector.
fn apply_matrix_vec(cols: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
    let rank = v.len();
    let mut out = vec![0u64; rank];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..rank {
            out[i] = (out[i] + col[i] * v[j]) % p;
        }
    }
    out
}

fn scalar_ratio(image: &[u64], v: &[u64], p: u64) -> Option<u64> {
    let j = v.iter().position(|&x| x != 0)?;
    let lambda = image[j] * pow_mod(v[j], p - 2, p) % p;
    for i in 0..v.len() {
        if image[i] != lambda * v[i] % p {
            return None;
        }
    }
    Some(lambda)
}

fn normalize_vector(v: &[u64], p: u64) -> Vec<u64> {
    let j = v.iter().position(|&x| x != 0).expect("nonzero vector");
    let inv = pow_mod(v[j], p - 2, p);
    v.iter().map(|&x| x * inv % p).collect()
}

/// Basis of `ker(M - lambda)` intersected with the span of `space`.
fn eigenspace_within(
    cols: &[Vec<u64>],
    lambda: u64,
    space: &[Vec<u64>],
    p: u64,
    rank: usize,
) -> Vec<Vec<u64>> {
    // Solve (M - lambda I)(space * c) = 0 for coefficient vectors c.
    let k = space.len();
    let mut rows: Vec<Vec<u64>> = vec![vec![0; k]; rank];
    for (cj, v) in space.iter().enumerate() {
        let mv = apply_matrix_vec(cols, v, p);
        for i in 0..rank {
            rows[i][cj] = (mv[i] + p - lambda * v[i] % p) % p;
        }
    }
    let null = nullspace(&rows, p, k);
    null.iter()
        .map(|c| {
            let mut v = vec![0u64; rank];
            for (cj, &coef) in c.iter().enumerate() {
                for i in 0..rank {
                    v[i] = (v[i] + coef * space[cj][i]) % p;
                }
            }
            v
        })
        .collect()
}

/// Nullspace basis of a matrix over F_p (`cols` unknowns).
fn nullspace(rows_in: &[Vec<u64>], p: u64, cols: usize) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = rows_in.to_vec();
    let mut pivot_col_of_row: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let mut pivot = None;
        for i in r..rows.len() {
            if rows[i][c] != 0 {
                pivot = Some(i);
                break;
            }
        }
        let Some(pi) = pivot else { continue };
        rows.swap(r, pi);
        let inv = pow_mod(rows[r][c], p - 2, p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..cols {
                    rows[i][j] = (rows[i][j] + p - f * rows[r][j] % p) % p;
                }
            }
        }
        pivot_col_of_row.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let pivot_cols = pivot_col_of_row;
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free_cols {
        let mut v = vec![0u64; cols];
        v[fc] = 1;
        for (ri, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = (p - rows[ri][fc]) % p;
        }
        basis.push(v);
    }
    basis
}
