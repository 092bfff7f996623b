//! Shared test support: brute-force isomorphism oracles and the
//! deterministic-seed families of crossed-module morphisms used by the
//! kernel/quotient/transfer suites.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use double_groupoids::{
    fixtures, validate_dgpd_morphism, validate_groupoid, validate_groupoid_morphism,
    validate_xmod_morphism, ArrowId, CrossedModule, DGpdMorphism, DoubleGroupoid,
    FiniteGroupoid, GroupoidMorphism, ObjId, RawArrow, RawGroupoid, SquareId, SubgroupoidWitness,
    XModMorphism,
};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The Klein four-group as a one-object groupoid (`e`, `a`, `b`, `c=ab`).
pub fn v4() -> FiniteGroupoid {
    let names = ["e", "a", "b", "c"];
    let mul = |i: usize, j: usize| i ^ j;
    let raw = RawGroupoid {
        objects: vec!["o".into()],
        arrows: names.iter().map(|n| RawArrow::new(*n, "o", "o")).collect(),
        identities: vec![("o".into(), "e".into())],
        compose: (0..4)
            .flat_map(|i| {
                (0..4).map(move |j| {
                    (
                        ArrowId::new(names[i]),
                        ArrowId::new(names[j]),
                        ArrowId::new(names[mul(i, j)]),
                    )
                })
            })
            .collect(),
    };
    validate_groupoid(&raw).expect("V4 is a group")
}

// ---------------------------------------------------------------------
// brute-force isomorphism search (test oracle; independent of the library
// construction paths it is used to certify)

fn blocks_of(g: &FiniteGroupoid) -> BTreeMap<(ObjId, ObjId), Vec<ArrowId>> {
    let mut out: BTreeMap<(ObjId, ObjId), Vec<ArrowId>> = BTreeMap::new();
    for a in g.arrow_ids() {
        out.entry((g.src_of(a).unwrap().clone(), g.dst_of(a).unwrap().clone()))
            .or_default()
            .push(a.clone());
    }
    out
}

fn extend_arrow_iso(
    a: &FiniteGroupoid,
    b: &FiniteGroupoid,
    order: &[ArrowId],
    pos: usize,
    omap: &BTreeMap<ObjId, ObjId>,
    amap: &mut BTreeMap<ArrowId, ArrowId>,
    used: &mut BTreeSet<ArrowId>,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let x = &order[pos];
    let (sx, dx) = (a.src_of(x).unwrap(), a.dst_of(x).unwrap());
    let candidates: Vec<ArrowId> = b
        .hom(&omap[sx], &omap[dx])
        .into_iter()
        .filter(|y| !used.contains(*y))
        .cloned()
        .collect();
    'cand: for y in candidates {
        // structural constraints against what is already assigned
        if a.is_identity(x) != b.is_identity(&y) {
            continue;
        }
        for (p, q) in amap.iter() {
            for (l, r) in [(p, x), (x, p)] {
                if let Some(c) = a.compose(l, r) {
                    if let Some(fc) = amap.get(c) {
                        let (fl, fr) = if l == p { (q, &y) } else { (&y, q) };
                        if b.compose(fl, fr) != Some(fc) {
                            continue 'cand;
                        }
                    }
                }
            }
        }
        if let Some(c) = a.compose(x, x) {
            if let Some(fc) = amap.get(c) {
                if b.compose(&y, &y) != Some(fc) {
                    continue 'cand;
                }
            }
        }
        amap.insert(x.clone(), y.clone());
        used.insert(y.clone());
        if extend_arrow_iso(a, b, order, pos + 1, omap, amap, used) {
            return true;
        }
        amap.remove(x);
        used.remove(&y);
    }
    false
}

/// Finds an isomorphism of groupoids by backtracking, or `None`. Intended
/// for desk-scale structures (a handful of objects, tens of arrows).
pub fn find_groupoid_iso(a: &FiniteGroupoid, b: &FiniteGroupoid) -> Option<GroupoidMorphism> {
    if a.object_count() != b.object_count() || a.arrow_count() != b.arrow_count() {
        return None;
    }
    let objs_a: Vec<ObjId> = a.objects().to_vec();
    let mut objs_b: Vec<ObjId> = b.objects().to_vec();
    objs_b.sort();
    let mut perm = objs_b.clone();
    // iterate over all object bijections via permutations of objs_b
    fn permutations(v: &mut Vec<ObjId>, k: usize, out: &mut Vec<Vec<ObjId>>) {
        if k == v.len() {
            out.push(v.clone());
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permutations(v, k + 1, out);
            v.swap(k, i);
        }
    }
    let mut all = Vec::new();
    permutations(&mut perm, 0, &mut all);
    for cand in all {
        let omap: BTreeMap<ObjId, ObjId> = objs_a
            .iter()
            .cloned()
            .zip(cand.iter().cloned())
            .collect();
        // hom-block sizes must match under this object bijection
        let bb = blocks_of(b);
        let ok = blocks_of(a).iter().all(|((s, d), v)| {
            bb.get(&(omap[s].clone(), omap[d].clone()))
                .map(|w| w.len() == v.len())
                .unwrap_or(v.is_empty())
        });
        if !ok {
            continue;
        }
        let order: Vec<ArrowId> = a.arrow_ids().to_vec();
        let mut amap = BTreeMap::new();
        let mut used = BTreeSet::new();
        if extend_arrow_iso(a, b, &order, 0, &omap, &mut amap, &mut used) {
            let f = GroupoidMorphism {
                object_map: omap,
                arrow_map: amap,
            };
            if validate_groupoid_morphism(a, b, &f).is_ok() {
                return Some(f);
            }
        }
    }
    None
}

/// Finds an isomorphism of crossed modules: a base iso and a module iso
/// over a common object map, commuting with boundary and action.
pub fn find_xmod_iso(a: &CrossedModule, b: &CrossedModule) -> Option<XModMorphism> {
    let base = find_groupoid_iso(a.base(), b.base())?;
    // extend to the module level by backtracking with the boundary as a guide
    let order: Vec<ArrowId> = a.module().arrow_ids().to_vec();
    let mut mmap = BTreeMap::new();
    let mut used = BTreeSet::new();
    fn extend(
        a: &CrossedModule,
        b: &CrossedModule,
        base: &GroupoidMorphism,
        order: &[ArrowId],
        pos: usize,
        mmap: &mut BTreeMap<ArrowId, ArrowId>,
        used: &mut BTreeSet<ArrowId>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let m = &order[pos];
        let p = a.module().src_of(m).unwrap();
        let q = &base.object_map[p];
        let want_boundary = &base.arrow_map[a.boundary_of(m).unwrap()];
        let candidates: Vec<ArrowId> = b
            .module()
            .hom(q, q)
            .into_iter()
            .filter(|n| !used.contains(*n) && b.boundary_of(n).unwrap() == want_boundary)
            .cloned()
            .collect();
        'cand: for n in candidates {
            for (x, y) in mmap.iter() {
                for (l, r) in [(x, m), (m, x)] {
                    if let Some(c) = a.module().compose(l, r) {
                        if let Some(fc) = mmap.get(c) {
                            let (fl, fr) = if l == x { (y, &n) } else { (&n, y) };
                            if b.module().compose(fl, fr) != Some(fc) {
                                continue 'cand;
                            }
                        }
                    }
                }
            }
            mmap.insert(m.clone(), n.clone());
            used.insert(n.clone());
            if extend(a, b, base, order, pos + 1, mmap, used) {
                return true;
            }
            mmap.remove(m);
            used.remove(&n);
        }
        false
    }
    if !extend(a, b, &base, &order, 0, &mut mmap, &mut used) {
        return None;
    }
    let f = XModMorphism {
        object_map: base.object_map,
        base_map: base.arrow_map,
        module_map: mmap,
    };
    validate_xmod_morphism(a, b, &f).ok()?;
    Some(f)
}

/// Finds an isomorphism of double groupoids: an edge iso extended to
/// squares by matching boundaries (backtracking within same-boundary
/// fibers), checked against both compositions and the thin structures.
pub fn find_dgpd_iso(a: &DoubleGroupoid, b: &DoubleGroupoid) -> Option<DGpdMorphism> {
    if a.square_count() != b.square_count() {
        return None;
    }
    let edge_iso = find_groupoid_iso(a.edges(), b.edges())?;
    let mut fiber: BTreeMap<[ArrowId; 4], Vec<SquareId>> = BTreeMap::new();
    for u in b.square_ids() {
        let f = b.faces_of(u).unwrap();
        fiber
            .entry([f.top.clone(), f.bottom.clone(), f.left.clone(), f.right.clone()])
            .or_default()
            .push(u.clone());
    }
    let order: Vec<SquareId> = a.square_ids().cloned().collect();
    fn extend(
        a: &DoubleGroupoid,
        b: &DoubleGroupoid,
        edge: &GroupoidMorphism,
        fiber: &BTreeMap<[ArrowId; 4], Vec<SquareId>>,
        order: &[SquareId],
        pos: usize,
        smap: &mut BTreeMap<SquareId, SquareId>,
        used: &mut BTreeSet<SquareId>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let u = &order[pos];
        let f = a.faces_of(u).unwrap();
        let key = [
            edge.arrow_map[f.top].clone(),
            edge.arrow_map[f.bottom].clone(),
            edge.arrow_map[f.left].clone(),
            edge.arrow_map[f.right].clone(),
        ];
        let empty = Vec::new();
        let candidates = fiber.get(&key).unwrap_or(&empty);
        'cand: for v in candidates {
            if used.contains(v) {
                continue;
            }
            if a.is_thin(u) != b.is_thin(v) {
                continue;
            }
            for (x, y) in smap.iter() {
                for (l, r) in [(x, u), (u, x)] {
                    let (fl, fr) = if l == x { (y, v) } else { (v, y) };
                    if let Some(c) = a.hcompose(l, r) {
                        if let Some(fc) = smap.get(c) {
                            if b.hcompose(fl, fr) != Some(fc) {
                                continue 'cand;
                            }
                        }
                    }
                    if let Some(c) = a.vcompose(l, r) {
                        if let Some(fc) = smap.get(c) {
                            if b.vcompose(fl, fr) != Some(fc) {
                                continue 'cand;
                            }
                        }
                    }
                }
            }
            smap.insert(u.clone(), v.clone());
            used.insert(v.clone());
            if extend(a, b, edge, fiber, order, pos + 1, smap, used) {
                return true;
            }
            smap.remove(u);
            used.remove(v);
        }
        false
    }
    let mut smap = BTreeMap::new();
    let mut used = BTreeSet::new();
    if !extend(a, b, &edge_iso, &fiber, &order, 0, &mut smap, &mut used) {
        return None;
    }
    let f = DGpdMorphism {
        object_map: edge_iso.object_map,
        edge_map: edge_iso.arrow_map,
        square_map: smap,
    };
    validate_dgpd_morphism(a, b, &f).ok()?;
    Some(f)
}

// ---------------------------------------------------------------------
// randomized crossed-module morphism families

/// One generated case: a crossed-module morphism with object-injective
/// base component, whose kernel drives the quotient and transfer suites.
pub struct MorphismCase {
    pub name: String,
    pub src: CrossedModule,
    pub dst: CrossedModule,
    pub f: XModMorphism,
}

struct HomSpec {
    name: &'static str,
    src_g: fn() -> FiniteGroupoid,
    /// Generators of the source module subgroupoid (empty = whole group).
    src_h_gens: Option<&'static [&'static str]>,
    dst_g: fn() -> FiniteGroupoid,
    /// Arrow map of the underlying group homomorphism on the source group.
    map: fn(&FiniteGroupoid, &FiniteGroupoid) -> BTreeMap<ArrowId, ArrowId>,
}

fn cyclic_mod_map(k: usize) -> impl Fn(&FiniteGroupoid, &FiniteGroupoid) -> BTreeMap<ArrowId, ArrowId> {
    move |src, dst| {
        let n = src.arrow_count();
        let m = dst.arrow_count();
        (0..n)
            .map(|i| {
                (
                    src.arrow_ids()[i].clone(),
                    dst.arrow_ids()[{
                        // arrow ids of cyclic fixtures sort as g0, g1, …
                        (i * k) % m
                    }]
                    .clone(),
                )
            })
            .collect()
    }
}

fn sign_map(src: &FiniteGroupoid, _dst: &FiniteGroupoid) -> BTreeMap<ArrowId, ArrowId> {
    src.arrow_ids()
        .iter()
        .map(|a| {
            let even = matches!(a.as_str(), "e" | "(123)" | "(132)");
            (a.clone(), ArrowId::new(if even { "g0" } else { "g1" }))
        })
        .collect()
}

fn identity_map(src: &FiniteGroupoid, _dst: &FiniteGroupoid) -> BTreeMap<ArrowId, ArrowId> {
    src.arrow_ids().iter().map(|a| (a.clone(), a.clone())).collect()
}

fn v4_proj_a(src: &FiniteGroupoid, _dst: &FiniteGroupoid) -> BTreeMap<ArrowId, ArrowId> {
    src.arrow_ids()
        .iter()
        .map(|x| {
            let odd = matches!(x.as_str(), "a" | "c");
            (x.clone(), ArrowId::new(if odd { "g1" } else { "g0" }))
        })
        .collect()
}

fn v4_proj_b(src: &FiniteGroupoid, _dst: &FiniteGroupoid) -> BTreeMap<ArrowId, ArrowId> {
    src.arrow_ids()
        .iter()
        .map(|x| {
            let odd = matches!(x.as_str(), "b" | "c");
            (x.clone(), ArrowId::new(if odd { "g1" } else { "g0" }))
        })
        .collect()
}

fn hom_pool() -> Vec<HomSpec> {
    fn c1() -> FiniteGroupoid {
        fixtures::cyclic(1)
    }
    fn c2() -> FiniteGroupoid {
        fixtures::cyclic(2)
    }
    fn c3() -> FiniteGroupoid {
        fixtures::cyclic(3)
    }
    fn c4() -> FiniteGroupoid {
        fixtures::cyclic(4)
    }
    fn c6() -> FiniteGroupoid {
        fixtures::cyclic(6)
    }
    fn m42(s: &FiniteGroupoid, d: &FiniteGroupoid) -> BTreeMap<ArrowId, ArrowId> {
        cyclic_mod_map(1)(s, d)
    }
    fn m62(s: &FiniteGroupoid, d: &FiniteGroupoid) -> BTreeMap<ArrowId, ArrowId> {
        cyclic_mod_map(1)(s, d)
    }
    fn m63(s: &FiniteGroupoid, d: &FiniteGroupoid) -> BTreeMap<ArrowId, ArrowId> {
        cyclic_mod_map(1)(s, d)
    }
    fn double(s: &FiniteGroupoid, d: &FiniteGroupoid) -> BTreeMap<ArrowId, ArrowId> {
        cyclic_mod_map(2)(s, d)
    }
    fn trivial(s: &FiniteGroupoid, d: &FiniteGroupoid) -> BTreeMap<ArrowId, ArrowId> {
        cyclic_mod_map(0)(s, d)
    }
    vec![
        HomSpec { name: "c4-mod2-full", src_g: c4, src_h_gens: None, dst_g: c2, map: m42 },
        HomSpec { name: "c4-mod2-even", src_g: c4, src_h_gens: Some(&["g2"]), dst_g: c2, map: m42 },
        HomSpec { name: "c6-mod2-full", src_g: c6, src_h_gens: None, dst_g: c2, map: m62 },
        HomSpec { name: "c6-mod3-full", src_g: c6, src_h_gens: None, dst_g: c3, map: m63 },
        HomSpec { name: "c6-mod3-sub2", src_g: c6, src_h_gens: Some(&["g2"]), dst_g: c3, map: m63 },
        HomSpec { name: "c6-mod2-sub3", src_g: c6, src_h_gens: Some(&["g3"]), dst_g: c2, map: m62 },
        HomSpec { name: "s3-sign-full", src_g: fixtures::symmetric3, src_h_gens: None, dst_g: c2, map: sign_map },
        HomSpec { name: "s3-sign-a3", src_g: fixtures::symmetric3, src_h_gens: Some(&["(123)"]), dst_g: c2, map: sign_map },
        HomSpec { name: "s3-id-a3", src_g: fixtures::symmetric3, src_h_gens: Some(&["(123)"]), dst_g: fixtures::symmetric3, map: identity_map },
        HomSpec { name: "v4-proj-a", src_g: v4, src_h_gens: None, dst_g: c2, map: v4_proj_a },
        HomSpec { name: "v4-proj-b", src_g: v4, src_h_gens: None, dst_g: c2, map: v4_proj_b },
        HomSpec { name: "c4-trivial", src_g: c4, src_h_gens: None, dst_g: c1, map: trivial },
        HomSpec { name: "c2-into-c4", src_g: c2, src_h_gens: None, dst_g: c4, map: double },
    ]
}

fn sub_of(g: &FiniteGroupoid, gens: Option<&[&str]>) -> SubgroupoidWitness {
    match gens {
        None => fixtures::full_subgroupoid(g),
        Some(gens) => {
            let gens: Vec<ArrowId> = gens.iter().map(|s| ArrowId::new(*s)).collect();
            fixtures::generated_subgroupoid(g, &gens).expect("generators resolve")
        }
    }
}

fn adjoin_interval_sub(
    g: &FiniteGroupoid,
    h: &SubgroupoidWitness,
) -> (FiniteGroupoid, SubgroupoidWitness) {
    let i = fixtures::interval();
    let union = fixtures::disjoint_union(g, &i).expect("disjoint ids");
    let mut arrows: BTreeSet<ArrowId> = h.arrows.clone();
    arrows.insert("1x".into());
    arrows.insert("1y".into());
    let mut objects: BTreeSet<ObjId> = h.objects.clone();
    objects.insert("x".into());
    objects.insert("y".into());
    let w = double_groupoids::check_subgroupoid(&union, &objects, &arrows)
        .expect("subsets resolve");
    (union, w)
}

fn build_case(spec: &HomSpec, adjoin_interval: bool) -> MorphismCase {
    let sg = (spec.src_g)();
    let dg = (spec.dst_g)();
    let arrow_map = (spec.map)(&sg, &dg);
    let sh = sub_of(&sg, spec.src_h_gens);
    let dh = fixtures::full_subgroupoid(&dg);

    let group_obj_map: BTreeMap<ObjId, ObjId> = sg
        .objects()
        .iter()
        .map(|o| (o.clone(), dg.objects()[0].clone()))
        .collect();

    let (src_g, src_h, dst_g, dst_h, mut amap, mut omap) = if adjoin_interval {
        let (src_g, src_h) = adjoin_interval_sub(&sg, &sh);
        let (dst_g, dst_h) = adjoin_interval_sub(&dg, &dh);
        let mut amap = arrow_map.clone();
        for a in ["1x", "1y", "i", "j"] {
            amap.insert(a.into(), a.into());
        }
        let mut omap = group_obj_map.clone();
        omap.insert("x".into(), "x".into());
        omap.insert("y".into(), "y".into());
        (src_g, src_h, dst_g, dst_h, amap, omap)
    } else {
        (sg, sh, dg, dh, arrow_map, group_obj_map)
    };

    let src = fixtures::conj_xmod(&src_g, &src_h).expect("source crossed module");
    let dst = fixtures::conj_xmod(&dst_g, &dst_h).expect("target crossed module");

    // the module map is the restriction of the base map
    let module_map: BTreeMap<ArrowId, ArrowId> = src
        .module()
        .arrow_ids()
        .iter()
        .map(|m| (m.clone(), amap[m].clone()))
        .collect();
    let f = XModMorphism {
        object_map: std::mem::take(&mut omap),
        base_map: std::mem::take(&mut amap),
        module_map,
    };
    MorphismCase {
        name: format!(
            "{}{}",
            spec.name,
            if adjoin_interval { "+interval" } else { "" }
        ),
        src,
        dst,
        f,
    }
}

/// At least `min` deterministic-seed morphism cases with object-injective
/// base components: the hom pool, each optionally with an interval
/// component adjoined, shuffled by the seeded generator.
pub fn kernel_quotient_cases(seed: u64, min: usize) -> Vec<MorphismCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = hom_pool();
    let mut cases = Vec::new();
    for spec in &pool {
        cases.push(build_case(spec, false));
        cases.push(build_case(spec, true));
    }
    cases.shuffle(&mut rng);
    assert!(cases.len() >= min, "case pool is large enough");
    cases
}
