//! Crossed modules over groupoids.
//!
//! A crossed module `μ: M → P` consists of a base groupoid `P`, a totally
//! intransitive groupoid `M` over the same objects, a boundary morphism `μ`
//! that is the identity on objects, and a right action of `P` on `M`
//! written `m^a`. The axioms are
//!
//! * CM1: `μ(m^a) = a⁻¹∘μ(m)∘a`, and
//! * CM2: `m^{μ(c)} = (−c)+m+c` for loops `c, m` at the same object,
//!
//! where `+` is composition in `M` and juxtaposition composition in `P`,
//! both diagrammatic. Validation enumerates every instance of every axiom.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::groupoid::{
    check_morphism_core, check_subgroupoid, core_check_sub, quotient_groupoid, relabel_objects,
    resolve_morphism, transitivity_flags, validate_groupoid, CoreNames, FiniteGroupoid,
    GroupoidError, GroupoidMorphism, RawGroupoid, SubgroupoidWitness, UNDEF,
};
use crate::id::{ArrowId, ObjId};
use crate::report::{ValidationReport, Violation};

/// Raw crossed-module data before validation.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct RawXMod {
    pub base: RawGroupoid,
    pub module: RawGroupoid,
    /// `(module arrow, base arrow)` boundary bindings; must be total.
    pub boundary: Vec<(ArrowId, ArrowId)>,
    /// `(m, a, m^a)` action entries; keys must be exactly the pairs
    /// `(m ∈ M(p), a ∈ P(p, ·))`.
    pub action: Vec<(ArrowId, ArrowId, ArrowId)>,
}

#[derive(thiserror::Error, Debug)]
pub enum XModError {
    #[error("{which} groupoid: {source}")]
    Groupoid {
        which: &'static str,
        source: GroupoidError,
    },
    #[error("dangling id `{id}` in {context}")]
    DanglingId { context: String, id: String },
    #[error("duplicate {context} `{id}`")]
    DuplicateId { context: String, id: String },
    #[error("module groupoid is not totally intransitive (arrow `{arrow}`)")]
    NotTotallyIntransitive { arrow: String },
    #[error("base and module object sets differ at `{0}`")]
    ObjectMismatch(String),
    #[error("axiom violations in {}", .0.context)]
    Axioms(ValidationReport),
    #[error("sub-structure is not normal: {0}")]
    NotNormal(String),
    #[error("base subgroupoid of the quotient is not totally intransitive (arrow `{arrow}`)")]
    QNotTotallyIntransitive { arrow: String },
    #[error("induced {part} is not well defined on classes: witness ({witness})")]
    IllDefined { part: &'static str, witness: String },
}

/// A validated crossed module over groupoids. Immutable.
#[derive(Clone, Debug)]
pub struct CrossedModule {
    base: FiniteGroupoid,
    module: FiniteGroupoid,
    /// Base arrow index per module arrow index.
    boundary: Vec<u32>,
    /// `(module arrow, base arrow) → module arrow`, over indices.
    action: HashMap<(u32, u32), u32>,
}

impl PartialEq for CrossedModule {
    fn eq(&self, other: &Self) -> bool {
        self.to_raw() == other.to_raw()
    }
}
impl Eq for CrossedModule {}

impl CrossedModule {
    pub fn base(&self) -> &FiniteGroupoid {
        &self.base
    }

    pub fn module(&self) -> &FiniteGroupoid {
        &self.module
    }

    /// `μ(m)`.
    pub fn boundary_of(&self, m: &ArrowId) -> Option<&ArrowId> {
        let i = self.module.arrow_index(m)?;
        Some(self.base.arrow_id(self.boundary[i as usize]))
    }

    /// `m^a`; `None` if `a` does not start at the object of `m`.
    pub fn act(&self, m: &ArrowId, a: &ArrowId) -> Option<&ArrowId> {
        let mi = self.module.arrow_index(m)?;
        let ai = self.base.arrow_index(a)?;
        Some(self.module.arrow_id(*self.action.get(&(mi, ai))?))
    }

    pub fn to_raw(&self) -> RawXMod {
        let mut boundary: Vec<(ArrowId, ArrowId)> = (0..self.module.arrow_count())
            .map(|m| {
                (
                    self.module.arrow_id(m as u32).clone(),
                    self.base.arrow_id(self.boundary[m]).clone(),
                )
            })
            .collect();
        boundary.sort();
        let mut action: Vec<(ArrowId, ArrowId, ArrowId)> = self
            .action
            .iter()
            .map(|(&(m, a), &r)| {
                (
                    self.module.arrow_id(m).clone(),
                    self.base.arrow_id(a).clone(),
                    self.module.arrow_id(r).clone(),
                )
            })
            .collect();
        action.sort();
        RawXMod {
            base: self.base.to_raw(),
            module: self.module.to_raw(),
            boundary,
            action,
        }
    }

    // index-level access for the equivalence functors

    pub(crate) fn boundary_idx(&self, m: u32) -> u32 {
        self.boundary[m as usize]
    }

    pub(crate) fn act_idx(&self, m: u32, a: u32) -> Option<u32> {
        self.action.get(&(m, a)).copied()
    }
}

/// Validates raw crossed-module data: both groupoids, total intransitivity
/// of the module, shared objects, the action axioms and CM1–CM2, all
/// exhaustively.
pub fn validate_xmod(raw: &RawXMod) -> Result<CrossedModule, XModError> {
    let base = validate_groupoid(&raw.base).map_err(|source| XModError::Groupoid {
        which: "base",
        source,
    })?;
    let module = validate_groupoid(&raw.module).map_err(|source| XModError::Groupoid {
        which: "module",
        source,
    })?;

    let (_, tot_intrans) = transitivity_flags(&module);
    if !tot_intrans {
        let a = (0..module.arrow_count() as u32)
            .find(|&a| module.src_idx(a) != module.dst_idx(a))
            .expect("witness arrow exists");
        return Err(XModError::NotTotallyIntransitive {
            arrow: module.arrow_id(a).to_string(),
        });
    }

    if base.objects() != module.objects() {
        let diff = base
            .objects()
            .iter()
            .find(|x| !module.has_object(x))
            .or_else(|| module.objects().iter().find(|x| !base.has_object(x)))
            .expect("object sets differ");
        return Err(XModError::ObjectMismatch(diff.to_string()));
    }

    // resolve boundary
    let mut boundary = vec![UNDEF; module.arrow_count()];
    for (m, p) in &raw.boundary {
        let mi = module
            .arrow_index(m)
            .ok_or_else(|| XModError::DanglingId {
                context: "boundary binding (module side)".into(),
                id: m.to_string(),
            })?;
        let pi = base.arrow_index(p).ok_or_else(|| XModError::DanglingId {
            context: format!("boundary of {m}"),
            id: p.to_string(),
        })?;
        if boundary[mi as usize] != UNDEF {
            return Err(XModError::DuplicateId {
                context: "boundary binding".into(),
                id: m.to_string(),
            });
        }
        boundary[mi as usize] = pi;
    }

    // resolve action
    let mut action: HashMap<(u32, u32), u32> = HashMap::with_capacity(raw.action.len());
    for (m, a, r) in &raw.action {
        let mi = module
            .arrow_index(m)
            .ok_or_else(|| XModError::DanglingId {
                context: "action entry (acted element)".into(),
                id: m.to_string(),
            })?;
        let ai = base.arrow_index(a).ok_or_else(|| XModError::DanglingId {
            context: "action entry (acting arrow)".into(),
            id: a.to_string(),
        })?;
        let ri = module
            .arrow_index(r)
            .ok_or_else(|| XModError::DanglingId {
                context: "action entry (result)".into(),
                id: r.to_string(),
            })?;
        if action.insert((mi, ai), ri).is_some() {
            return Err(XModError::DuplicateId {
                context: "action entry for pair".into(),
                id: format!("({m}, {a})"),
            });
        }
    }

    let mut report = ValidationReport::new("crossed module");
    let mname = |m: u32| module.arrow_id(m).to_string();
    let aname = |a: u32| base.arrow_id(a).to_string();

    // boundary: total, identity on objects, a groupoid morphism
    for m in 0..module.arrow_count() as u32 {
        let b = boundary[m as usize];
        if b == UNDEF {
            report.push(Violation::new(
                "boundary-total",
                vec![mname(m)],
                "module arrow has no boundary",
            ));
            continue;
        }
        let p = module.src_idx(m);
        if base.src_idx(b) != p || base.dst_idx(b) != p {
            report.push(Violation::new(
                "boundary-objects",
                vec![mname(m), aname(b)],
                "boundary is not a loop at the object of the module element",
            ));
        }
    }
    for m in 0..module.arrow_count() as u32 {
        for n in 0..module.arrow_count() as u32 {
            let Some(s) = module.comp_idx(m, n) else { continue };
            let (bm, bn, bs) = (
                boundary[m as usize],
                boundary[n as usize],
                boundary[s as usize],
            );
            if bm == UNDEF || bn == UNDEF || bs == UNDEF {
                continue;
            }
            if base.comp_idx(bm, bn) != Some(bs) {
                report.push(Violation::new(
                    "boundary-morphism",
                    vec![mname(m), mname(n)],
                    "μ(m+n) ≠ μ(m)∘μ(n)",
                ));
            }
        }
    }
    for x in 0..base.object_count() as u32 {
        let e = module.ident_idx(x);
        if boundary[e as usize] != UNDEF && boundary[e as usize] != base.ident_idx(x) {
            report.push(Violation::new(
                "boundary-morphism",
                vec![module.object_id(x).to_string()],
                "μ(0) ≠ 1 at this object",
            ));
        }
    }

    // action table: defined exactly on (m ∈ M(p), a ∈ P(p, ·)), lands in M(q)
    for (&(m, a), &r) in &action {
        if base.src_idx(a) != module.src_idx(m) {
            report.push(Violation::new(
                "action-domain",
                vec![mname(m), aname(a)],
                "entry where the acting arrow does not start at the element's object",
            ));
            continue;
        }
        if module.src_idx(r) != base.dst_idx(a) {
            report.push(Violation::new(
                "action-endpoints",
                vec![mname(m), aname(a), mname(r)],
                "result does not live at the target object of the acting arrow",
            ));
        }
    }
    for m in 0..module.arrow_count() as u32 {
        let p = module.src_idx(m);
        for &a in base.core().by_src[p as usize].iter() {
            if !action.contains_key(&(m, a)) {
                report.push(Violation::new(
                    "action-total",
                    vec![mname(m), aname(a)],
                    "pair missing from the action table",
                ));
            }
        }
    }

    let act = |m: u32, a: u32| action.get(&(m, a)).copied();

    // action axioms
    for m in 0..module.arrow_count() as u32 {
        let p = module.src_idx(m);
        if act(m, base.ident_idx(p)) != Some(m) {
            report.push(Violation::new(
                "action-unit",
                vec![mname(m)],
                "m^1 ≠ m",
            ));
        }
        for &a in base.core().by_src[p as usize].iter() {
            let Some(ma) = act(m, a) else { continue };
            for &b in base.core().by_src[base.dst_idx(a) as usize].iter() {
                let ab = base.comp_idx(a, b).expect("base is validated");
                if act(ma, b) != act(m, ab) {
                    report.push(Violation::new(
                        "action-compose",
                        vec![mname(m), aname(a), aname(b)],
                        "(m^a)^b ≠ m^{a∘b}",
                    ));
                }
            }
        }
    }
    for m in 0..module.arrow_count() as u32 {
        let p = module.src_idx(m);
        for n in 0..module.arrow_count() as u32 {
            let Some(s) = module.comp_idx(m, n) else { continue };
            for &a in base.core().by_src[p as usize].iter() {
                let lhs = act(s, a);
                let rhs = match (act(m, a), act(n, a)) {
                    (Some(x), Some(y)) => module.comp_idx(x, y),
                    _ => None,
                };
                if lhs != rhs {
                    report.push(Violation::new(
                        "action-additive",
                        vec![mname(m), mname(n), aname(a)],
                        "(m+n)^a ≠ m^a + n^a",
                    ));
                }
            }
        }
    }

    // CM1: μ(m^a) = a⁻¹ μ(m) a
    for m in 0..module.arrow_count() as u32 {
        let p = module.src_idx(m);
        for &a in base.core().by_src[p as usize].iter() {
            let Some(ma) = act(m, a) else { continue };
            let lhs = boundary[ma as usize];
            let rhs = base
                .comp_idx(base.inv_idx(a), boundary[m as usize])
                .and_then(|t| base.comp_idx(t, a));
            if lhs == UNDEF || rhs != Some(lhs) {
                report.push(Violation::new(
                    "CM1",
                    vec![mname(m), aname(a)],
                    "μ(m^a) ≠ a⁻¹∘μ(m)∘a",
                ));
            }
        }
    }

    // CM2: m^{μ(c)} = (−c)+m+c for loops at a shared object
    for c in 0..module.arrow_count() as u32 {
        let p = module.src_idx(c);
        for &m in module.core().by_src[p as usize].iter() {
            let lhs = act(m, boundary[c as usize]);
            let rhs = module
                .comp_idx(module.inv_idx(c), m)
                .and_then(|t| module.comp_idx(t, c));
            if lhs != rhs || lhs.is_none() {
                report.push(Violation::new(
                    "CM2",
                    vec![mname(c), mname(m)],
                    "m^{μ(c)} ≠ (−c)+m+c",
                ));
            }
        }
    }

    if !report.is_clean() {
        return Err(XModError::Axioms(report));
    }

    Ok(CrossedModule {
        base,
        module,
        boundary,
        action,
    })
}

/// The inclusion crossed module of a totally intransitive normal
/// subgroupoid `h` of `g`: the boundary is the inclusion, the action is
/// conjugation `m^a = a⁻¹∘m∘a`.
pub fn inclusion_xmod(
    g: &FiniteGroupoid,
    h: &SubgroupoidWitness,
) -> Result<CrossedModule, XModError> {
    if !h.is_normal {
        return Err(XModError::NotNormal(
            "inclusion crossed module needs a normal subgroupoid".into(),
        ));
    }
    if !h.is_totally_intransitive {
        let a = h
            .arrows
            .iter()
            .find(|a| g.src_of(a) != g.dst_of(a))
            .expect("witness arrow exists");
        return Err(XModError::NotTotallyIntransitive {
            arrow: a.to_string(),
        });
    }

    let graw = g.to_raw();
    let harr: BTreeSet<&ArrowId> = h.arrows.iter().collect();
    let module = RawGroupoid {
        objects: graw.objects.clone(),
        arrows: graw
            .arrows
            .iter()
            .filter(|a| harr.contains(&a.id))
            .cloned()
            .collect(),
        identities: graw.identities.clone(),
        compose: graw
            .compose
            .iter()
            .filter(|(f, s, _)| harr.contains(f) && harr.contains(s))
            .cloned()
            .collect(),
    };
    let boundary = h.arrows.iter().map(|a| (a.clone(), a.clone())).collect();
    let mut action = Vec::new();
    for m in &h.arrows {
        let p = g.src_of(m).unwrap();
        for q in g.objects() {
            for a in g.hom(p, q) {
                let conj = g
                    .compose(g.inverse_of(a).unwrap(), m)
                    .and_then(|t| g.compose(t, a))
                    .expect("conjugate of a loop is defined");
                action.push((m.clone(), a.clone(), conj.clone()));
            }
        }
    }
    validate_xmod(&RawXMod {
        base: graw,
        module,
        boundary,
        action,
    })
}

/// A morphism of crossed modules: base and module arrow maps over one
/// shared object map.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct XModMorphism {
    pub object_map: BTreeMap<ObjId, ObjId>,
    pub base_map: BTreeMap<ArrowId, ArrowId>,
    pub module_map: BTreeMap<ArrowId, ArrowId>,
}

/// Checks both component maps as groupoid morphisms, the boundary square
/// `f₁μ = νf₂` and the action condition `f₂(m^a) = f₂(m)^{f₁(a)}`.
pub fn validate_xmod_morphism(
    src: &CrossedModule,
    dst: &CrossedModule,
    f: &XModMorphism,
) -> Result<(), XModError> {
    let mut report = ValidationReport::new("crossed module morphism");
    let to_dangling = |e: GroupoidError| match e {
        GroupoidError::DanglingId { context, id } => XModError::DanglingId { context, id },
        other => XModError::Groupoid {
            which: "morphism",
            source: other,
        },
    };

    let base_m = GroupoidMorphism {
        object_map: f.object_map.clone(),
        arrow_map: f.base_map.clone(),
    };
    let (omap, amap) =
        resolve_morphism(src.base(), dst.base(), &base_m, &mut report).map_err(to_dangling)?;
    let module_m = GroupoidMorphism {
        object_map: f.object_map.clone(),
        arrow_map: f.module_map.clone(),
    };
    let (omap2, mmap) = resolve_morphism(src.module(), dst.module(), &module_m, &mut report)
        .map_err(to_dangling)?;
    debug_assert_eq!(omap, omap2, "shared object map resolves identically");

    if report.is_clean() {
        let obj_name = |x: u32| src.base().object_id(x).to_string();
        let base_name = |a: u32| src.base().arrow_id(a).to_string();
        let mod_name = |m: u32| src.module().arrow_id(m).to_string();
        check_morphism_core(
            src.base().core(),
            dst.base().core(),
            &omap,
            &amap,
            &obj_name,
            &base_name,
            "base:",
            &mut report,
        );
        check_morphism_core(
            src.module().core(),
            dst.module().core(),
            &omap,
            &mmap,
            &obj_name,
            &mod_name,
            "module:",
            &mut report,
        );

        // boundary square: f₁(μ(m)) = ν(f₂(m))
        for m in 0..src.module().arrow_count() as u32 {
            let lhs = amap[src.boundary_idx(m) as usize];
            let rhs = dst.boundary_idx(mmap[m as usize]);
            if lhs != rhs {
                report.push(Violation::new(
                    "boundary-mismatch",
                    vec![mod_name(m)],
                    "f₁(μ(m)) ≠ ν(f₂(m))",
                ));
            }
        }

        // action condition: f₂(m^a) = f₂(m)^{f₁(a)}
        for m in 0..src.module().arrow_count() as u32 {
            let p = src.module().src_idx(m);
            for &a in src.base().core().by_src[p as usize].iter() {
                let lhs = src.act_idx(m, a).map(|r| mmap[r as usize]);
                let rhs = dst.act_idx(mmap[m as usize], amap[a as usize]);
                if lhs != rhs || lhs.is_none() {
                    report.push(Violation::new(
                        "action-mismatch",
                        vec![mod_name(m), base_name(a)],
                        "f₂(m^a) ≠ f₂(m)^{f₁(a)}",
                    ));
                }
            }
        }
    }

    if report.is_clean() {
        Ok(())
    } else {
        Err(XModError::Axioms(report))
    }
}

/// Designated sub-structure `(N, Q)` of a crossed module, with the
/// subcrossed-module conditions SCM1–SCM3 and the normality conditions
/// NCM1–NCM3 evaluated. When SCM fails, the NCM flags are suppressed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubXModWitness {
    pub objects: BTreeSet<ObjId>,
    pub base_arrows: BTreeSet<ArrowId>,
    pub module_arrows: BTreeSet<ArrowId>,
    pub is_sub: bool,
    pub is_normal: bool,
    /// SCM1 (subgroupoids), SCM2 (boundary restricts), SCM3 (action restricts).
    pub scm: [bool; 3],
    /// NCM1 (Q normal in P), NCM2 (N closed under the P-action),
    /// NCM3 (−m+m^b ∈ N).
    pub ncm: [bool; 3],
    pub failures: Vec<Violation>,
}

/// Evaluates SCM1–3 and NCM1–3 for designated module and base arrow
/// subsets. The shared object subset is derived from the arrow endpoints.
pub fn check_sub_xmod(
    parent: &CrossedModule,
    module_arrows: &BTreeSet<ArrowId>,
    base_arrows: &BTreeSet<ArrowId>,
) -> Result<SubXModWitness, XModError> {
    let base = parent.base();
    let module = parent.module();

    let mut base_in = vec![false; base.arrow_count()];
    for a in base_arrows {
        let i = base.arrow_index(a).ok_or_else(|| XModError::DanglingId {
            context: "base arrow subset".into(),
            id: a.to_string(),
        })?;
        base_in[i as usize] = true;
    }
    let mut mod_in = vec![false; module.arrow_count()];
    for m in module_arrows {
        let i = module
            .arrow_index(m)
            .ok_or_else(|| XModError::DanglingId {
                context: "module arrow subset".into(),
                id: m.to_string(),
            })?;
        mod_in[i as usize] = true;
    }

    let mut obj_in = vec![false; base.object_count()];
    for a in 0..base.arrow_count() as u32 {
        if base_in[a as usize] {
            obj_in[base.src_idx(a) as usize] = true;
            obj_in[base.dst_idx(a) as usize] = true;
        }
    }
    for m in 0..module.arrow_count() as u32 {
        if mod_in[m as usize] {
            obj_in[module.src_idx(m) as usize] = true;
        }
    }
    let objects: BTreeSet<ObjId> = (0..base.object_count())
        .filter(|&x| obj_in[x])
        .map(|x| base.object_id(x as u32).clone())
        .collect();

    let mut failures: Vec<Violation> = Vec::new();
    let obj_name = |x: u32| base.object_id(x).to_string();
    let base_name = |a: u32| base.arrow_id(a).to_string();
    let mod_name = |m: u32| module.arrow_id(m).to_string();

    // SCM1: both subsets are subgroupoids over the shared objects
    let base_flags = {
        let names = CoreNames {
            obj: &obj_name,
            arr: &base_name,
        };
        core_check_sub(base.core(), &obj_in, &base_in, &names, "scm1-base:")
    };
    let mod_flags = {
        let names = CoreNames {
            obj: &obj_name,
            arr: &mod_name,
        };
        core_check_sub(module.core(), &obj_in, &mod_in, &names, "scm1-module:")
    };
    let scm1 = base_flags.closed && mod_flags.closed;
    failures.extend(base_flags.violations.iter().cloned());
    failures.extend(mod_flags.violations.iter().cloned());

    // SCM2: μ restricted to N lands in Q
    let mut scm2 = true;
    for m in 0..module.arrow_count() as u32 {
        if !mod_in[m as usize] {
            continue;
        }
        let b = parent.boundary_idx(m);
        if !base_in[b as usize] {
            scm2 = false;
            failures.push(Violation::new(
                "scm2-boundary",
                vec![mod_name(m)],
                "μ(n) leaves the base subset",
            ));
        }
    }

    // SCM3: the action of Q restricted to N lands in N
    let mut scm3 = true;
    for m in 0..module.arrow_count() as u32 {
        if !mod_in[m as usize] {
            continue;
        }
        let p = module.src_idx(m);
        for &b in base.core().by_src[p as usize].iter() {
            if !base_in[b as usize] {
                continue;
            }
            let r = parent.act_idx(m, b).expect("parent action is total");
            if !mod_in[r as usize] {
                scm3 = false;
                failures.push(Violation::new(
                    "scm3-action",
                    vec![mod_name(m), base_name(b)],
                    "n^b leaves the module subset",
                ));
            }
        }
    }

    let is_sub = scm1 && scm2 && scm3;
    if !is_sub {
        return Ok(SubXModWitness {
            objects,
            base_arrows: base_arrows.clone(),
            module_arrows: module_arrows.clone(),
            is_sub,
            is_normal: false,
            scm: [scm1, scm2, scm3],
            ncm: [false, false, false],
            failures,
        });
    }

    // NCM1: Q is a (wide) normal subgroupoid of P
    let ncm1 = base_flags.wide && base_flags.normal;
    if !ncm1 {
        if !base_flags.wide {
            failures.push(Violation::new(
                "ncm1",
                objects.iter().map(|x| x.to_string()).take(1).collect(),
                "base subset is not wide in P",
            ));
        } else {
            for v in &base_flags.violations {
                if v.law.ends_with("normality") {
                    let mut v = v.clone();
                    v.law = "ncm1".into();
                    failures.push(v);
                }
            }
        }
    }

    // NCM2: n^a ∈ N for every arrow a of P
    let mut ncm2 = true;
    for m in 0..module.arrow_count() as u32 {
        if !mod_in[m as usize] {
            continue;
        }
        let p = module.src_idx(m);
        for &a in base.core().by_src[p as usize].iter() {
            let r = parent.act_idx(m, a).expect("parent action is total");
            if !mod_in[r as usize] {
                ncm2 = false;
                failures.push(Violation::new(
                    "ncm2",
                    vec![mod_name(m), base_name(a)],
                    "n^a leaves the module subset",
                ));
            }
        }
    }

    // NCM3: −m+m^b ∈ N for b ∈ Q(p), m ∈ M(p)
    let mut ncm3 = true;
    for b in 0..base.arrow_count() as u32 {
        if !base_in[b as usize] || base.src_idx(b) != base.dst_idx(b) {
            continue;
        }
        let p = base.src_idx(b);
        for &m in module.core().by_src[p as usize].iter() {
            let mb = parent.act_idx(m, b).expect("parent action is total");
            let r = module
                .comp_idx(module.inv_idx(m), mb)
                .expect("loops compose");
            if !mod_in[r as usize] {
                ncm3 = false;
                failures.push(Violation::new(
                    "ncm3",
                    vec![mod_name(m), base_name(b)],
                    "−m+m^b leaves the module subset",
                ));
            }
        }
    }

    Ok(SubXModWitness {
        objects,
        base_arrows: base_arrows.clone(),
        module_arrows: module_arrows.clone(),
        is_sub,
        is_normal: ncm1 && ncm2 && ncm3,
        scm: [scm1, scm2, scm3],
        ncm: [ncm1, ncm2, ncm3],
        failures,
    })
}

/// Kernel of a crossed-module morphism: `(Ker f₂, Ker f₁)` with the
/// restricted boundary. Always a normal subcrossed module.
pub fn xmod_kernel(
    src: &CrossedModule,
    dst: &CrossedModule,
    f: &XModMorphism,
) -> Result<SubXModWitness, XModError> {
    let mut module_arrows = BTreeSet::new();
    for m in src.module().arrow_ids() {
        let im = f.module_map.get(m).ok_or_else(|| XModError::DanglingId {
            context: "kernel (module map)".into(),
            id: m.to_string(),
        })?;
        if dst.module().is_identity(im) {
            module_arrows.insert(m.clone());
        }
    }
    let mut base_arrows = BTreeSet::new();
    for a in src.base().arrow_ids() {
        let im = f.base_map.get(a).ok_or_else(|| XModError::DanglingId {
            context: "kernel (base map)".into(),
            id: a.to_string(),
        })?;
        if dst.base().is_identity(im) {
            base_arrows.insert(a.clone());
        }
    }
    check_sub_xmod(src, &module_arrows, &base_arrows)
}

/// A quotient crossed module together with its projection.
#[derive(Debug)]
pub struct QuotientXMod {
    pub xmod: CrossedModule,
    pub projection: XModMorphism,
}

/// Quotient of a crossed module by a normal subcrossed module whose base
/// part `Q` is totally intransitive: `ρ: M/N → P/Q` with the induced
/// boundary and the action `(N(p)+m)^{Q(p)a} = N(q)+m^a`. Both inductions
/// are re-checked over every representative pair rather than trusted.
pub fn quotient_xmod(
    parent: &CrossedModule,
    w: &SubXModWitness,
) -> Result<QuotientXMod, XModError> {
    if !w.is_normal {
        return Err(XModError::NotNormal(
            "quotient requires a normal subcrossed module".into(),
        ));
    }
    let base = parent.base();
    let module = parent.module();
    for a in &w.base_arrows {
        if base.src_of(a) != base.dst_of(a) {
            return Err(XModError::QNotTotallyIntransitive {
                arrow: a.to_string(),
            });
        }
    }

    let all_objects: BTreeSet<ObjId> = base.objects().iter().cloned().collect();
    let qw = check_subgroupoid(base, &all_objects, &w.base_arrows)
        .map_err(|source| XModError::Groupoid {
            which: "base",
            source,
        })?;
    if !qw.is_normal {
        return Err(XModError::NotNormal("base subset is not normal in P".into()));
    }
    let nw = check_subgroupoid(module, &all_objects, &w.module_arrows)
        .map_err(|source| XModError::Groupoid {
            which: "module",
            source,
        })?;
    if !nw.is_normal {
        return Err(XModError::NotNormal(
            "module subset is not normal in M".into(),
        ));
    }

    let to_xerr = |which: &'static str| move |source: GroupoidError| XModError::Groupoid {
        which,
        source,
    };
    let qp = quotient_groupoid(base, &qw).map_err(to_xerr("base"))?;
    let qm = quotient_groupoid(module, &nw).map_err(to_xerr("module"))?;

    // Q and N are totally intransitive, so every object class is a
    // singleton; strip the class labels back to the original object ids.
    debug_assert_eq!(qp.groupoid.object_count(), base.object_count());
    let mut strip_p: BTreeMap<ObjId, ObjId> = BTreeMap::new();
    for (x, label) in &qp.projection.object_map {
        strip_p.insert(label.clone(), x.clone());
    }
    let mut strip_m: BTreeMap<ObjId, ObjId> = BTreeMap::new();
    for (x, label) in &qm.projection.object_map {
        strip_m.insert(label.clone(), x.clone());
    }
    let rename_p = |x: &ObjId| strip_p.get(x).cloned().expect("label maps back");
    let rename_m = |x: &ObjId| strip_m.get(x).cloned().expect("label maps back");
    let qbase = relabel_objects(&qp.groupoid, &rename_p).map_err(to_xerr("base"))?;
    let qmodule = relabel_objects(&qm.groupoid, &rename_m).map_err(to_xerr("module"))?;

    // class members, per quotient arrow label
    let mut base_members: BTreeMap<ArrowId, Vec<ArrowId>> = BTreeMap::new();
    for (a, label) in &qp.projection.arrow_map {
        base_members.entry(label.clone()).or_default().push(a.clone());
    }
    let mut mod_members: BTreeMap<ArrowId, Vec<ArrowId>> = BTreeMap::new();
    for (m, label) in &qm.projection.arrow_map {
        mod_members.entry(label.clone()).or_default().push(m.clone());
    }

    // induced boundary, with its well-definedness scan
    let mut boundary = Vec::new();
    for (label, members) in &mod_members {
        let images: BTreeSet<&ArrowId> = members
            .iter()
            .map(|m| {
                qp.projection
                    .arrow_map
                    .get(parent.boundary_of(m).expect("boundary is total"))
                    .expect("projection is total")
            })
            .collect();
        let mut it = images.into_iter();
        let first = it.next().expect("class is non-empty");
        if it.next().is_some() {
            return Err(XModError::IllDefined {
                part: "boundary",
                witness: label.to_string(),
            });
        }
        boundary.push((label.clone(), first.clone()));
    }

    // induced action from canonical representatives, then the exhaustive
    // representative scan demanded by the construction
    let mut action = Vec::new();
    for (mlabel, mmembers) in &mod_members {
        let m0 = mmembers.iter().min().expect("non-empty");
        let p = module.src_of(m0).unwrap();
        for (alabel, amembers) in &base_members {
            let a0 = amembers.iter().min().expect("non-empty");
            if base.src_of(a0).unwrap() != p {
                continue;
            }
            let result = qm
                .projection
                .arrow_map
                .get(parent.act(m0, a0).expect("parent action is total"))
                .expect("projection is total")
                .clone();
            for m1 in mmembers {
                for a1 in amembers {
                    let r = qm
                        .projection
                        .arrow_map
                        .get(parent.act(m1, a1).expect("parent action is total"))
                        .expect("projection is total");
                    if r != &result {
                        return Err(XModError::IllDefined {
                            part: "action",
                            witness: format!("{m1}, {a1}"),
                        });
                    }
                }
            }
            action.push((mlabel.clone(), alabel.clone(), result));
        }
    }

    let xmod = validate_xmod(&RawXMod {
        base: qbase.to_raw(),
        module: qmodule.to_raw(),
        boundary,
        action,
    })?;
    let projection = XModMorphism {
        object_map: base
            .objects()
            .iter()
            .map(|x| (x.clone(), x.clone()))
            .collect(),
        base_map: qp.projection.arrow_map.clone(),
        module_map: qm.projection.arrow_map.clone(),
    };
    Ok(QuotientXMod { xmod, projection })
}
