//! The fusion system of GL2(q) on a Sylow 2-subgroup, its centric subgroups,
//! and the orbit category on a skeleton of centric classes.
//!
//! The Sylow subgroup `P` is turned into a [`SmallGroup`] once, so every
//! subgroup of `P` is a bitset over `0..|P|`. Only the fusion scans go back
//! to the matrices: a map `Q -> P` is in the fusion system iff some `g` in G
//! conjugates the generators of `Q` into `P`, and is then determined by the
//! images of those generators.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{internal, Error, Result};
use crate::matgrp::{Gl2, GroupElement, Sylow, SylowKind};
use crate::smallgroup::{SmallGroup, StructureType};

/// Largest Sylow subgroup handled by the exhaustive subgroup enumeration.
pub const MAX_P_ORDER: usize = 512;

const WORDS: usize = MAX_P_ORDER / 64;

/// A subset of the elements of `P`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct ElemSet([u64; WORDS]);

impl ElemSet {
    pub fn insert(&mut self, e: usize) -> bool {
        let (w, b) = (e / 64, 1u64 << (e % 64));
        let fresh = self.0[w] & b == 0;
        self.0[w] |= b;
        fresh
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0[e / 64] >> (e % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..MAX_P_ORDER).filter(|&e| self.contains(e))
    }
}

/// A subgroup of `P` with a generating set and a spanning tree for extending maps.
#[derive(Clone, Debug)]
pub struct PSubgroup {
    pub set: ElemSet,
    /// Sorted element indices.
    pub elements: Vec<u32>,
    pub gens: Vec<u32>,
    /// `(element, parent, generator slot)` with `element = parent * gens[slot]`, in BFS order.
    spanning: Vec<(u32, u32, u32)>,
}

impl PSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.set.contains(e)
    }

    pub fn position(&self, e: u32) -> Option<usize> {
        self.elements.binary_search(&e).ok()
    }
}

fn closure(p: &SmallGroup, gens: &[u32]) -> PSubgroup {
    let id = p.identity();
    let mut set = ElemSet::default();
    set.insert(id);
    let mut order = vec![id as u32];
    let mut spanning = Vec::new();
    let mut head = 0;
    while head < order.len() {
        let x = order[head] as usize;
        head += 1;
        for (slot, &g) in gens.iter().enumerate() {
            let y = p.mul(x, g as usize);
            if set.insert(y) {
                order.push(y as u32);
                spanning.push((y as u32, x as u32, slot as u32));
            }
        }
    }
    order.sort_unstable();
    PSubgroup { set, elements: order, gens: gens.to_vec(), spanning }
}

/// All subgroups of `p`, sorted by order and then by element set.
pub fn enumerate_subgroups(p: &SmallGroup) -> Result<Vec<PSubgroup>> {
    if p.order() > MAX_P_ORDER {
        return Err(Error::Bound(format!("|P| = {} exceeds the subgroup enumeration bound {MAX_P_ORDER}", p.order())));
    }
    let mut subgroups = vec![closure(p, &[])];
    let mut seen: HashSet<ElemSet> = HashSet::from([subgroups[0].set]);
    let mut head = 0;
    while head < subgroups.len() {
        let h = subgroups[head].clone();
        head += 1;
        let mut covered = h.set;
        for g in 0..p.order() {
            if covered.contains(g) {
                continue;
            }
            // <H, g> = <H, gh> for every h in H
            for &e in &h.elements {
                covered.insert(p.mul(g, e as usize));
            }
            let mut gens = h.gens.clone();
            gens.push(g as u32);
            let k = closure(p, &gens);
            if seen.insert(k.set) {
                subgroups.push(k);
            }
        }
    }
    subgroups.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    Ok(subgroups)
}

/// An injective map `Q -> R` between subgroups of `P` induced by conjugation in G.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionMorphism {
    pub source: usize,
    pub target: usize,
    /// Image of the `i`-th element of the source.
    pub table: Vec<u32>,
    /// Index in G of a conjugating element.
    pub witness: usize,
}

/// One F-isomorphism class of F-centric subgroups.
#[derive(Clone, Debug)]
pub struct CentricClass {
    pub representative: usize,
    pub members: Vec<usize>,
    pub p_classes: usize,
    pub order: usize,
    pub structure: StructureType,
}

/// `F_P(G)` for `G = GL2(q)`.
pub struct FusionSystem {
    q: u64,
    sylow: Sylow,
    p: SmallGroup,
    matrices: Vec<GroupElement>,
    code_to_p: HashMap<usize, u32>,
    subgroups: Vec<PSubgroup>,
    lookup: HashMap<ElemSet, usize>,
    named: [Option<u32>; 3],
}

impl FusionSystem {
    pub fn new(g: &Gl2) -> Result<Self> {
        let sylow = g.sylow2()?;
        let matrices = sylow.group.elements(g);
        if matrices.len() > MAX_P_ORDER {
            return Err(Error::Bound(format!("|P| = {} exceeds {MAX_P_ORDER}", matrices.len())));
        }
        let code_to_p: HashMap<usize, u32> =
            sylow.group.codes().iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
        let n = matrices.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &matrices {
            for b in &matrices {
                table.push(code_to_p[&g.code(&g.mul(a, b))]);
            }
        }
        let p = SmallGroup::from_table(n, table)?;
        let subgroups = enumerate_subgroups(&p)?;
        let lookup = subgroups.iter().enumerate().map(|(i, s)| (s.set, i)).collect();
        let idx = |m: &GroupElement| code_to_p.get(&g.code(m)).copied();
        let named = [idx(&sylow.x), sylow.y.as_ref().and_then(idx), idx(&sylow.t)];
        Ok(FusionSystem { q: g.q(), sylow, p, matrices, code_to_p, subgroups, lookup, named })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn sylow(&self) -> &Sylow {
        &self.sylow
    }

    pub fn p(&self) -> &SmallGroup {
        &self.p
    }

    pub fn matrix(&self, e: usize) -> GroupElement {
        self.matrices[e]
    }

    pub fn subgroups(&self) -> &[PSubgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, id: usize) -> &PSubgroup {
        &self.subgroups[id]
    }

    /// Id of the whole group `P`.
    pub fn whole(&self) -> usize {
        self.subgroups.len() - 1
    }

    /// The named generators `x`, `y` (wreath case only) and `t` as elements of `P`.
    pub fn x(&self) -> usize {
        self.named[0].expect("x lies in P") as usize
    }

    pub fn y(&self) -> Option<usize> {
        self.named[1].map(|e| e as usize)
    }

    pub fn t(&self) -> usize {
        self.named[2].expect("t lies in P") as usize
    }

    pub fn pow(&self, e: usize, k: u64) -> usize {
        let mut r = self.p.identity();
        for _ in 0..k % self.p.element_order(e) as u64 {
            r = self.p.mul(r, e);
        }
        r
    }

    /// Id of the subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> usize {
        let gens: Vec<u32> = gens.iter().map(|&e| e as u32).collect();
        self.lookup[&closure(&self.p, &gens).set]
    }

    pub fn centralizer_in_p(&self, id: usize) -> Vec<usize> {
        let gens = &self.subgroups[id].gens;
        (0..self.p.order())
            .filter(|&z| gens.iter().all(|&h| self.p.mul(z, h as usize) == self.p.mul(h as usize, z)))
            .collect()
    }

    /// `C_P(Q) <= Q`.
    pub fn is_p_centric(&self, id: usize) -> bool {
        let s = &self.subgroups[id];
        self.centralizer_in_p(id).iter().all(|&z| s.contains(z))
    }

    /// Every distinct map `Q -> P` induced by conjugation, as generator images plus a witness in G.
    pub fn maps_into_p(&self, g: &Gl2, id: usize) -> Vec<(Vec<u32>, usize)> {
        let gens: Vec<GroupElement> = self.subgroups[id].gens.iter().map(|&e| self.matrices[e as usize]).collect();
        let hits: Vec<(Vec<u32>, usize)> = (0..g.order())
            .into_par_iter()
            .filter_map(|w| {
                let a = g.element(w);
                let ai = g.inv(&a);
                let images: Option<Vec<u32>> =
                    gens.iter().map(|h| self.code_to_p.get(&g.code(&g.conj(&a, &ai, h))).copied()).collect();
                images.map(|im| (im, w))
            })
            .collect();
        let mut seen = HashSet::new();
        hits.into_iter().filter(|(im, _)| seen.insert(im.clone())).collect()
    }

    /// Full image table of the homomorphism on `Q` sending its generators to `images`.
    pub fn extend(&self, id: usize, images: &[u32]) -> Vec<u32> {
        let s = &self.subgroups[id];
        let mut img: HashMap<u32, u32> = HashMap::with_capacity(s.order());
        img.insert(self.p.identity() as u32, self.p.identity() as u32);
        for &(e, parent, slot) in &s.spanning {
            let v = self.p.mul(img[&parent] as usize, images[slot as usize] as usize);
            img.insert(e, v as u32);
        }
        s.elements.iter().map(|e| img[e]).collect()
    }

    /// `Hom_F(Q, R)`.
    pub fn hom_f(&self, g: &Gl2, q_id: usize, r_id: usize) -> Vec<FusionMorphism> {
        let r = &self.subgroups[r_id];
        self.maps_into_p(g, q_id)
            .into_iter()
            .filter(|(im, _)| im.iter().all(|&e| r.contains(e as usize)))
            .map(|(im, w)| FusionMorphism { source: q_id, target: r_id, table: self.extend(q_id, &im), witness: w })
            .collect()
    }

    /// Ids of all subgroups `gQg^-1` of `P` with `g` in G.
    pub fn f_class(&self, g: &Gl2, id: usize) -> Vec<usize> {
        let mut out: Vec<usize> =
            self.maps_into_p(g, id).into_iter().map(|(im, _)| self.lookup[&closure(&self.p, &im).set]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Ids of the `P`-conjugates of a subgroup.
    pub fn p_class(&self, id: usize) -> Vec<usize> {
        let s = &self.subgroups[id];
        let mut out: Vec<usize> = (0..self.p.order())
            .map(|z| {
                let mut set = ElemSet::default();
                for &e in &s.elements {
                    set.insert(self.p.conj(z, e as usize));
                }
                self.lookup[&set]
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// F-isomorphism classes of F-centric subgroups, sorted by decreasing order.
    pub fn centric_classes(&self, g: &Gl2) -> Vec<CentricClass> {
        let mut done = vec![false; self.subgroups.len()];
        let mut classes = Vec::new();
        for id in 0..self.subgroups.len() {
            if done[id] || !self.is_p_centric(id) {
                continue;
            }
            let members = self.f_class(g, id);
            for &m in &members {
                done[m] = true;
            }
            if !members.iter().all(|&m| self.is_p_centric(m)) {
                continue;
            }
            let mut p_classes = 0;
            let mut seen = HashSet::new();
            for &m in &members {
                if seen.insert(m) {
                    p_classes += 1;
                    seen.extend(self.p_class(m));
                }
            }
            let rep = self.subgroups[members[0]].clone();
            classes.push(CentricClass {
                representative: members[0],
                order: rep.order(),
                structure: self.structure_of(members[0]),
                p_classes,
                members,
            });
        }
        classes.sort_by(|a, b| b.order.cmp(&a.order).then(a.representative.cmp(&b.representative)));
        classes
    }

    /// Isomorphism type of a subgroup as an abstract group.
    pub fn structure_of(&self, id: usize) -> StructureType {
        self.as_small_group(id).structure()
    }

    pub fn as_small_group(&self, id: usize) -> SmallGroup {
        let s = &self.subgroups[id];
        let els: Vec<u32> = s.elements.clone();
        SmallGroup::from_closed_set(&els, |a, b| self.p.mul(*a as usize, *b as usize) as u32)
            .expect("subgroup of a group")
    }

    /// Subgroup ids of the explicit centric families, labelled by family.
    pub fn expected_centric_family(&self) -> Vec<(String, usize)> {
        let m = self.sylow.m;
        let (x, t) = (self.x(), self.t());
        let mut out = Vec::new();
        match self.sylow.kind {
            SylowKind::Semidihedral => {
                let xp = |k: u64| self.pow(x, k);
                let big = 1u64 << (m - 1);
                for i in 0..big / 2 {
                    let a = self.p.mul(t, xp(2 * i));
                    out.push(("klein".into(), self.generated(&[xp(1 << (m - 2)), a])));
                }
                for k in 3..m {
                    for i in 0..big / 2 {
                        let even = self.p.mul(t, xp(2 * i));
                        let odd = self.p.mul(t, xp(2 * i + 1));
                        out.push((format!("dihedral_{}", 1u64 << k), self.generated(&[xp(1 << (m - k)), even])));
                        out.push((format!("quaternion_{}", 1u64 << k), self.generated(&[xp(1 << (m - k)), odd])));
                    }
                }
                out.push(("cyclic".into(), self.generated(&[x])));
                out.push(("whole".into(), self.whole()));
            }
            SylowKind::Wreath => {
                let y = self.y().expect("wreath case has y");
                let xy = self.p.mul(x, y);
                let xp = |k: u64| self.pow(x, k);
                out.push(("homocyclic".into(), self.generated(&[x, y])));
                for i in (1..1u64 << m).step_by(2) {
                    out.push(("abelian".into(), self.generated(&[xy, self.p.mul(t, xp(i))])));
                }
                for i in 0..m {
                    for j in 0..1u64 << i {
                        out.push((format!("type3_{i}"), self.generated(&[xy, xp(1 << i), self.p.mul(t, xp(j))])));
                    }
                }
            }
        }
        out
    }
}

/// A morphism of the orbit category: an `Inn(target)`-orbit of fusion maps.
#[derive(Clone, Debug)]
pub struct OrbitMorphism {
    /// Object indices.
    pub source: usize,
    pub target: usize,
    /// Lexicographically least map table in the orbit.
    pub representative: FusionMorphism,
    pub orbit_size: usize,
}

/// The orbit category on a skeleton of F-centric classes.
#[derive(Clone, Debug)]
pub struct OrbitCategory {
    /// Subgroup ids of the objects.
    objects: Vec<usize>,
    elements: Vec<Vec<u32>>,
    gen_positions: Vec<Vec<usize>>,
    morphisms: Vec<OrbitMorphism>,
    hom: Vec<Vec<u32>>,
    keys: Vec<HashMap<Vec<u32>, u32>>,
    identities: Vec<u32>,
    incoming: Vec<Vec<u32>>,
    outgoing: Vec<Vec<u32>>,
    slot_in: Vec<u32>,
    slot_out: Vec<u32>,
    offsets: Vec<usize>,
    table: Vec<u32>,
}

impl OrbitCategory {
    pub fn build(fs: &FusionSystem, g: &Gl2, classes: &[CentricClass]) -> Result<Self> {
        let objects: Vec<usize> = classes.iter().map(|c| c.representative).collect();
        let n = objects.len();
        let elements: Vec<Vec<u32>> = objects.iter().map(|&o| fs.subgroup(o).elements.clone()).collect();
        let gen_positions: Vec<Vec<usize>> = objects
            .iter()
            .map(|&o| {
                let s = fs.subgroup(o);
                s.gens.iter().map(|&e| s.position(e).expect("generator in subgroup")).collect()
            })
            .collect();
        let into_p: Vec<Vec<(Vec<u32>, usize)>> = objects.par_iter().map(|&o| fs.maps_into_p(g, o)).collect();

        let mut morphisms = Vec::new();
        let mut hom = vec![Vec::new(); n * n];
        let mut keys = vec![HashMap::new(); n * n];
        for s in 0..n {
            for t in 0..n {
                let target = fs.subgroup(objects[t]);
                let mut orbits: BTreeMap<Vec<u32>, (usize, Vec<Vec<u32>>)> = BTreeMap::new();
                for (im, w) in &into_p[s] {
                    if !im.iter().all(|&e| target.contains(e as usize)) {
                        continue;
                    }
                    let table = fs.extend(objects[s], im);
                    let mut orbit: Vec<Vec<u32>> = target
                        .elements
                        .iter()
                        .map(|&r| table.iter().map(|&e| fs.p().conj(r as usize, e as usize) as u32).collect())
                        .collect();
                    orbit.sort();
                    orbit.dedup();
                    let canon = orbit[0].clone();
                    orbits.entry(canon).or_insert((*w, orbit));
                }
                for (canon, (w, orbit)) in orbits {
                    let id = morphisms.len() as u32;
                    for member in &orbit {
                        let key: Vec<u32> = gen_positions[s].iter().map(|&p| member[p]).collect();
                        keys[s * n + t].insert(key, id);
                    }
                    hom[s * n + t].push(id);
                    morphisms.push(OrbitMorphism {
                        source: s,
                        target: t,
                        representative: FusionMorphism {
                            source: objects[s],
                            target: objects[t],
                            table: canon,
                            witness: w,
                        },
                        orbit_size: orbit.len(),
                    });
                }
            }
        }

        let mut identities = Vec::with_capacity(n);
        for (s, els) in elements.iter().enumerate() {
            let id = hom[s * n + s].iter().copied().find(|&m| morphisms[m as usize].representative.table == *els);
            identities.push(id.ok_or_else(|| Error::Internal("identity morphism missing".into()))?);
        }

        let mut incoming = vec![Vec::new(); n];
        let mut outgoing = vec![Vec::new(); n];
        let mut slot_in = vec![0u32; morphisms.len()];
        let mut slot_out = vec![0u32; morphisms.len()];
        for (i, mor) in morphisms.iter().enumerate() {
            slot_in[i] = incoming[mor.target].len() as u32;
            incoming[mor.target].push(i as u32);
            slot_out[i] = outgoing[mor.source].len() as u32;
            outgoing[mor.source].push(i as u32);
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for r in 0..n {
            offsets.push(offsets[r] + incoming[r].len() * outgoing[r].len());
        }

        let mut cat = OrbitCategory {
            objects,
            elements,
            gen_positions,
            morphisms,
            hom,
            keys,
            identities,
            incoming,
            outgoing,
            slot_in,
            slot_out,
            offsets,
            table: Vec::new(),
        };
        let table: Result<Vec<Vec<u32>>> = (0..n)
            .into_par_iter()
            .map(|r| {
                let mut block = Vec::with_capacity(cat.incoming[r].len() * cat.outgoing[r].len());
                for &f in &cat.incoming[r] {
                    for &h in &cat.outgoing[r] {
                        block.push(cat.compose_uncached(h, f)?);
                    }
                }
                Ok(block)
            })
            .collect();
        cat.table = table?.concat();
        Ok(cat)
    }

    fn compose_uncached(&self, h: u32, f: u32) -> Result<u32> {
        let (fm, hm) = (&self.morphisms[f as usize], &self.morphisms[h as usize]);
        let mid = &self.elements[fm.target];
        let key: Vec<u32> = self.gen_positions[fm.source]
            .iter()
            .map(|&p| {
                let e = fm.representative.table[p];
                let pos = mid.binary_search(&e).expect("image lies in target");
                hm.representative.table[pos]
            })
            .collect();
        let slot = fm.source * self.objects.len() + hm.target;
        match self.keys[slot].get(&key) {
            Some(&id) => Ok(id),
            None => internal("composite of fusion maps is not a fusion map"),
        }
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    /// Subgroup id of an object.
    pub fn object(&self, i: usize) -> usize {
        self.objects[i]
    }

    pub fn objects(&self) -> &[usize] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[OrbitMorphism] {
        &self.morphisms
    }

    pub fn morphism(&self, i: u32) -> &OrbitMorphism {
        &self.morphisms[i as usize]
    }

    pub fn hom(&self, s: usize, t: usize) -> &[u32] {
        &self.hom[s * self.objects.len() + t]
    }

    pub fn identity(&self, obj: usize) -> u32 {
        self.identities[obj]
    }

    /// `h . f` (first `f`, then `h`), or `None` if not composable.
    pub fn compose(&self, h: u32, f: u32) -> Option<u32> {
        let (fm, hm) = (&self.morphisms[f as usize], &self.morphisms[h as usize]);
        if fm.target != hm.source {
            return None;
        }
        let r = fm.target;
        let idx = self.offsets[r]
            + self.slot_in[f as usize] as usize * self.outgoing[r].len()
            + self.slot_out[h as usize] as usize;
        Some(self.table[idx])
    }

    /// Exhaustive check of the category axioms.
    pub fn check_axioms(&self) -> Result<()> {
        for (i, m) in self.morphisms.iter().enumerate() {
            let i = i as u32;
            if self.compose(i, self.identities[m.source]) != Some(i)
                || self.compose(self.identities[m.target], i) != Some(i)
            {
                return internal("identity law fails");
            }
        }
        for r in 0..self.objects.len() {
            for &f in &self.incoming[r] {
                for &h in &self.outgoing[r] {
                    let hf = self.compose(h, f).expect("composable");
                    for &k in &self.outgoing[self.morphisms[h as usize].target] {
                        let lhs = self.compose(k, hf);
                        let rhs = self.compose(k, h).and_then(|kh| self.compose(kh, f));
                        if lhs != rhs {
                            return internal("composition is not associative");
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `Aut` of an object as a group, with the morphism id of each element.
    pub fn auto_group(&self, obj: usize) -> Result<(SmallGroup, Vec<u32>)> {
        let endos = self.hom(obj, obj).to_vec();
        let pos: HashMap<u32, u32> = endos.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
        let mut table = Vec::with_capacity(endos.len() * endos.len());
        for &a in &endos {
            for &b in &endos {
                let c = self.compose(a, b).expect("endomorphisms compose");
                table.push(pos[&c]);
            }
        }
        let group = SmallGroup::from_table(endos.len(), table)
            .map_err(|_| Error::Internal("endomorphisms do not form a group".into()))?;
        Ok((group, endos))
    }

    /// `|Aut_F(Q)|` for an object: orbit sizes summed over its endomorphisms.
    pub fn aut_f_order(&self, obj: usize) -> usize {
        self.hom(obj, obj).iter().map(|&m| self.morphisms[m as usize].orbit_size).sum()
    }
}

/// Per-class summary for reports.
#[derive(Clone, Debug, Serialize)]
pub struct CentricClassSummary {
    pub representative_generators: Vec<[u32; 4]>,
    pub order: usize,
    pub structure: String,
    pub class_size: usize,
    pub p_classes: usize,
    pub aut_f_order: usize,
    pub aut_fbar_order: usize,
    pub aut_fbar_structure: String,
    pub aut_fbar_abelian: bool,
}

pub fn summarize(fs: &FusionSystem, cat: &OrbitCategory, classes: &[CentricClass]) -> Result<Vec<CentricClassSummary>> {
    classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let (aut, _) = cat.auto_group(i)?;
            let gens =
                fs.subgroup(c.representative).gens.iter().map(|&e| fs.matrix(e as usize).0.map(|f| f.0)).collect();
            Ok(CentricClassSummary {
                representative_generators: gens,
                order: c.order,
                structure: c.structure.to_string(),
                class_size: c.members.len(),
                p_classes: c.p_classes,
                aut_f_order: cat.aut_f_order(i),
                aut_fbar_order: aut.order(),
                aut_fbar_structure: aut.structure().to_string(),
                aut_fbar_abelian: aut.is_abelian(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgrp::build_gl2;

    fn setup(q: u64) -> (Gl2, FusionSystem, Vec<CentricClass>, OrbitCategory) {
        let g = build_gl2(q).unwrap();
        let fs = FusionSystem::new(&g).unwrap();
        let classes = fs.centric_classes(&g);
        let cat = OrbitCategory::build(&fs, &g, &classes).unwrap();
        (g, fs, classes, cat)
    }

    /// Subgroups of a group of order <= 16 by testing every subset for closure.
    fn brute_force_subgroup_count(p: &SmallGroup) -> usize {
        let n = p.order();
        (0u32..1 << n)
            .filter(|&mask| {
                mask >> p.identity() & 1 == 1
                    && (0..n).all(|a| {
                        mask >> a & 1 == 0 || (0..n).all(|b| mask >> b & 1 == 0 || mask >> p.mul(a, b) & 1 == 1)
                    })
            })
            .count()
    }

    #[test]
    fn subgroup_enumeration_matches_subset_scan() {
        for q in [3, 11] {
            let g = build_gl2(q).unwrap();
            let fs = FusionSystem::new(&g).unwrap();
            assert_eq!(fs.subgroups().len(), brute_force_subgroup_count(fs.p()), "q = {q}");
        }
        let s3 = SmallGroup::symmetric3();
        assert_eq!(enumerate_subgroups(&s3).unwrap().len(), 6);
    }

    #[test]
    fn named_generators_and_structure() {
        let g = build_gl2(3).unwrap();
        let fs = FusionSystem::new(&g).unwrap();
        assert_eq!(fs.structure_of(fs.whole()), StructureType::Semidihedral(16));
        assert_eq!(fs.p().element_order(fs.x()), 8);
        let g5 = build_gl2(5).unwrap();
        let fs5 = FusionSystem::new(&g5).unwrap();
        let y = fs5.y().unwrap();
        assert_eq!(fs5.p().mul(fs5.x(), y), fs5.p().mul(y, fs5.x()));
        assert_eq!(fs5.p().conj(fs5.t(), fs5.x()), y);
    }

    #[test]
    fn trivial_subgroup_has_one_map_everywhere() {
        let g = build_gl2(3).unwrap();
        let fs = FusionSystem::new(&g).unwrap();
        for r in [0, 5, fs.whole()] {
            assert_eq!(fs.hom_f(&g, 0, r).len(), 1);
        }
    }

    #[test]
    fn automorphism_count_is_normalizer_over_centralizer() {
        let g = build_gl2(3).unwrap();
        let fs = FusionSystem::new(&g).unwrap();
        for id in [fs.whole(), fs.generated(&[fs.x()]), fs.generated(&[fs.pow(fs.x(), 2), fs.p().mul(fs.t(), fs.x())])]
        {
            let s = fs.subgroup(id);
            let mats: Vec<GroupElement> = s.elements.iter().map(|&e| fs.matrix(e as usize)).collect();
            let mut normalizer = 0;
            let mut centralizer = 0;
            for a in g.elements() {
                let ai = g.inv(a);
                let in_q = |h: &GroupElement| {
                    fs.code_to_p.get(&g.code(&g.conj(a, &ai, h))).is_some_and(|&e| s.contains(e as usize))
                };
                if mats.iter().all(in_q) {
                    normalizer += 1;
                }
                if mats.iter().all(|h| g.mul(a, h) == g.mul(h, a)) {
                    centralizer += 1;
                }
            }
            let autos = fs.hom_f(&g, id, id).len();
            assert_eq!(autos, normalizer / centralizer, "subgroup of order {}", s.order());
        }
    }

    #[test]
    fn q3_classification() {
        let (_, fs, classes, cat) = setup(3);
        let types: Vec<StructureType> = classes.iter().map(|c| c.structure.clone()).collect();
        for expected in [
            StructureType::Klein,
            StructureType::Dihedral(8),
            StructureType::Quaternion(8),
            StructureType::Cyclic(8),
            StructureType::Semidihedral(16),
        ] {
            assert!(types.contains(&expected), "missing {expected}");
        }
        assert_eq!(cat.object(0), fs.whole());
        let (aut_p, _) = cat.auto_group(0).unwrap();
        assert_eq!(aut_p.order(), 1);
        let q8 = classes.iter().position(|c| c.structure == StructureType::Quaternion(8)).unwrap();
        assert_eq!(cat.aut_f_order(q8), 24);
        let (aut_q8, _) = cat.auto_group(q8).unwrap();
        assert_eq!(aut_q8.structure(), StructureType::Symmetric3);
        for (i, c) in classes.iter().enumerate() {
            let (aut, _) = cat.auto_group(i).unwrap();
            if i != 0 && i != q8 {
                assert!(aut.order() > 1 && aut.is_p_group(2), "{} has Aut of order {}", c.structure, aut.order());
            }
        }
        cat.check_axioms().unwrap();
    }

    #[test]
    fn q3_quaternion_subgroups_are_p_conjugate() {
        let (_, fs, _, _) = setup(3);
        let q8s: Vec<usize> =
            fs.expected_centric_family().into_iter().filter(|(l, _)| l == "quaternion_8").map(|(_, s)| s).collect();
        let class = fs.p_class(q8s[0]);
        assert!(q8s.iter().all(|s| class.contains(s)));
    }

    #[test]
    fn q5_classification() {
        let (_, fs, classes, cat) = setup(5);
        let m = fs.sylow().m as u64;
        let (x, y, t) = (fs.x(), fs.y().unwrap(), fs.t());
        let xy = fs.p().mul(x, y);
        let object_of = |id: usize| classes.iter().position(|c| c.members.contains(&id)).unwrap();
        let aut_order = |id: usize| cat.auto_group(object_of(id)).unwrap().0;
        assert_eq!(aut_order(fs.generated(&[x, y])).order(), 2);
        let r1 = fs.generated(&[xy, fs.pow(x, 1 << (m - 1)), t]);
        let r2 = fs.generated(&[xy, fs.pow(x, 1 << (m - 1)), fs.p().mul(t, x)]);
        assert_eq!(aut_order(r1).structure(), StructureType::Symmetric3);
        assert_eq!(aut_order(r2).order(), 2);
        assert_eq!(cat.auto_group(0).unwrap().0.order(), 1);
        // type (3) at i = m - 1 splits into two P-classes
        let last: Vec<usize> = fs
            .expected_centric_family()
            .into_iter()
            .filter(|(l, _)| *l == format!("type3_{}", m - 1))
            .map(|(_, s)| s)
            .collect();
        let mut p_classes: Vec<Vec<usize>> = last.iter().map(|&s| fs.p_class(s)).collect();
        p_classes.sort();
        p_classes.dedup();
        assert_eq!(p_classes.len(), 2);
        cat.check_axioms().unwrap();
    }

    #[test]
    fn centric_classes_match_explicit_families() {
        for q in [3, 5, 7] {
            let (g, fs, classes, _) = setup(q);
            let family = fs.expected_centric_family();
            let class_of = |id: usize| classes.iter().position(|c| c.members.contains(&id));
            let mut hit: Vec<usize> = family
                .iter()
                .map(|(l, s)| class_of(*s).unwrap_or_else(|| panic!("q = {q}: {l} is not F-centric")))
                .collect();
            hit.sort_unstable();
            hit.dedup();
            assert_eq!(hit, (0..classes.len()).collect::<Vec<_>>(), "q = {q}");
            for c in &classes {
                for &m in &c.members {
                    assert!(fs.f_class(&g, m).iter().all(|&r| fs.is_p_centric(r)));
                }
            }
        }
    }
}
