//! Finite groupoids with explicit composition tables.
//!
//! A groupoid is given by objects, arrows with endpoints, an identity arrow
//! per object and a partial composition defined on exactly the composable
//! pairs (composition is written in diagrammatic order throughout: `a∘b`
//! first does `a`, then `b`, and needs `dst(a) = src(b)`). Validation is an
//! exhaustive enumeration of every axiom instance; inverses are derived
//! during validation and never supplied by the caller.
//!
//! The module also provides connected components, transitivity flags,
//! subgroupoid predicates (wide / normal / non-wide normal), kernels of
//! morphisms and Higgins-style quotient groupoids.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::id::{class_id, ArrowId, ObjId};
use crate::report::{ValidationReport, Violation};

pub(crate) const UNDEF: u32 = u32::MAX;
const DENSE_MAX_ARROWS: usize = 4096;

/// An arrow of a raw (not yet validated) groupoid.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RawArrow {
    pub id: ArrowId,
    pub src: ObjId,
    pub dst: ObjId,
}

impl RawArrow {
    pub fn new(id: impl Into<ArrowId>, src: impl Into<ObjId>, dst: impl Into<ObjId>) -> Self {
        RawArrow {
            id: id.into(),
            src: src.into(),
            dst: dst.into(),
        }
    }
}

/// Raw groupoid data as parsed or constructed, before validation.
///
/// Inverses are never part of the raw data; they are derived (and their
/// existence checked) by [`validate_groupoid`].
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct RawGroupoid {
    pub objects: Vec<ObjId>,
    pub arrows: Vec<RawArrow>,
    /// `(object, identity arrow)` bindings; must be total and unique.
    pub identities: Vec<(ObjId, ArrowId)>,
    /// `(f, g, f∘g)` entries; keys must be exactly the composable pairs.
    pub compose: Vec<(ArrowId, ArrowId, ArrowId)>,
}

/// Errors of the groupoid layer.
#[derive(thiserror::Error, Debug)]
pub enum GroupoidError {
    #[error("dangling id `{id}` in {context}")]
    DanglingId { context: String, id: String },
    #[error("duplicate {context} `{id}`")]
    DuplicateId { context: String, id: String },
    #[error("ill-formed id `{id}`: ids must be non-empty and whitespace-free")]
    BadId { id: String },
    #[error("axiom violations in {}", .0.context)]
    Axioms(ValidationReport),
    #[error("subgroupoid is not normal: {0}")]
    NotNormal(String),
    #[error("quotient composition is not single-valued: {0}")]
    IllFormedQuotient(String),
}

/// Dense or hashed composition table over arrow indices.
pub(crate) enum CompTable {
    Dense { n: usize, t: Vec<u16> },
    Hash(HashMap<(u32, u32), u32>),
}

impl CompTable {
    /// Builds a table; returns the duplicated key on conflict.
    pub(crate) fn build(
        n_arr: usize,
        entries: &[(u32, u32, u32)],
    ) -> Result<CompTable, (u32, u32)> {
        if n_arr <= DENSE_MAX_ARROWS {
            let mut t = vec![u16::MAX; n_arr * n_arr];
            for &(a, b, c) in entries {
                let k = a as usize * n_arr + b as usize;
                if t[k] != u16::MAX {
                    return Err((a, b));
                }
                t[k] = c as u16;
            }
            Ok(CompTable::Dense { n: n_arr, t })
        } else {
            let mut m = HashMap::with_capacity(entries.len());
            for &(a, b, c) in entries {
                if m.insert((a, b), c).is_some() {
                    return Err((a, b));
                }
            }
            Ok(CompTable::Hash(m))
        }
    }

    #[inline(always)]
    pub(crate) fn get(&self, a: u32, b: u32) -> Option<u32> {
        match self {
            CompTable::Dense { n, t } => {
                let v = t[a as usize * n + b as usize];
                (v != u16::MAX).then_some(v as u32)
            }
            CompTable::Hash(m) => m.get(&(a, b)).copied(),
        }
    }
}

/// Index-level groupoid candidate shared by the groupoid validator and the
/// synthetic square groupoids of the double-groupoid validator.
pub(crate) struct Core {
    pub n_obj: usize,
    pub src: Vec<u32>,
    pub dst: Vec<u32>,
    /// Identity arrow per object; `UNDEF` when the binding is missing.
    pub ident: Vec<u32>,
    pub comp: CompTable,
    pub by_src: Vec<Vec<u32>>,
    /// Derived by `core_validate`; `UNDEF` where no inverse exists.
    pub inv: Vec<u32>,
}

/// Renders indices back to ids for violation messages.
pub(crate) struct CoreNames<'a> {
    pub obj: &'a dyn Fn(u32) -> String,
    pub arr: &'a dyn Fn(u32) -> String,
}

impl Core {
    pub(crate) fn build(
        n_obj: usize,
        src: Vec<u32>,
        dst: Vec<u32>,
        ident: Vec<u32>,
        entries: &[(u32, u32, u32)],
    ) -> Result<Core, (u32, u32)> {
        let n_arr = src.len();
        let comp = CompTable::build(n_arr, entries)?;
        let mut by_src = vec![Vec::new(); n_obj];
        for (a, &s) in src.iter().enumerate() {
            by_src[s as usize].push(a as u32);
        }
        Ok(Core {
            n_obj,
            src,
            dst,
            ident,
            comp,
            by_src,
            inv: vec![UNDEF; n_arr],
        })
    }

    pub(crate) fn n_arr(&self) -> usize {
        self.src.len()
    }

    #[inline(always)]
    pub(crate) fn compose(&self, a: u32, b: u32) -> Option<u32> {
        self.comp.get(a, b)
    }
}

/// Runs the full groupoid axiom suite on an index-level candidate,
/// recording every violated instance. Fills `core.inv` with the derived
/// inverses where they exist.
pub(crate) fn core_validate(
    core: &mut Core,
    entries: &[(u32, u32, u32)],
    names: &CoreNames,
    prefix: &str,
    report: &mut ValidationReport,
) {
    let law = |l: &str| format!("{prefix}{l}");

    // identity bindings: total, loops at their object
    for x in 0..core.n_obj {
        let e = core.ident[x];
        if e == UNDEF {
            report.push(Violation::new(
                &law("identity-total"),
                vec![(names.obj)(x as u32)],
                "object has no identity arrow",
            ));
            continue;
        }
        if core.src[e as usize] != x as u32 || core.dst[e as usize] != x as u32 {
            report.push(Violation::new(
                &law("identity-endpoints"),
                vec![(names.obj)(x as u32), (names.arr)(e)],
                "identity arrow is not a loop at its object",
            ));
        }
    }

    // table keys lie on composable pairs and results have the right endpoints
    for &(a, b, c) in entries {
        if core.dst[a as usize] != core.src[b as usize] {
            report.push(Violation::new(
                &law("compose-domain"),
                vec![(names.arr)(a), (names.arr)(b)],
                "entry on a non-composable pair",
            ));
            continue;
        }
        if core.src[c as usize] != core.src[a as usize]
            || core.dst[c as usize] != core.dst[b as usize]
        {
            report.push(Violation::new(
                &law("compose-endpoints"),
                vec![(names.arr)(a), (names.arr)(b), (names.arr)(c)],
                "composite endpoints do not match the pair",
            ));
        }
    }

    // every composable pair has an entry
    for a in 0..core.n_arr() as u32 {
        for &b in &core.by_src[core.dst[a as usize] as usize] {
            if core.compose(a, b).is_none() {
                report.push(Violation::new(
                    &law("compose-total"),
                    vec![(names.arr)(a), (names.arr)(b)],
                    "composable pair missing from the table",
                ));
            }
        }
    }

    // identity laws
    for a in 0..core.n_arr() as u32 {
        let ls = core.ident[core.src[a as usize] as usize];
        let rs = core.ident[core.dst[a as usize] as usize];
        if ls != UNDEF && core.compose(ls, a) != Some(a) {
            report.push(Violation::new(
                &law("identity-law"),
                vec![(names.arr)(a)],
                "left identity law fails",
            ));
        }
        if rs != UNDEF && core.compose(a, rs) != Some(a) {
            report.push(Violation::new(
                &law("identity-law"),
                vec![(names.arr)(a)],
                "right identity law fails",
            ));
        }
    }

    // inverses exist (two-sided)
    for a in 0..core.n_arr() as u32 {
        let want_l = core.ident[core.src[a as usize] as usize];
        let want_r = core.ident[core.dst[a as usize] as usize];
        let mut found = UNDEF;
        for &b in &core.by_src[core.dst[a as usize] as usize] {
            if core.compose(a, b) == Some(want_l) && core.compose(b, a) == Some(want_r) {
                found = b;
                break;
            }
        }
        if found == UNDEF || want_l == UNDEF || want_r == UNDEF {
            report.push(Violation::new(
                &law("inverse-law"),
                vec![(names.arr)(a)],
                "arrow has no two-sided inverse",
            ));
        } else {
            core.inv[a as usize] = found;
        }
    }

    // associativity over every composable triple
    scan_associativity(core, names, &law("associativity"), report);
}

fn scan_associativity(
    core: &Core,
    names: &CoreNames,
    law: &str,
    report: &mut ValidationReport,
) {
    match &core.comp {
        CompTable::Dense { n, t } => {
            let n = *n;
            for a in 0..n as u32 {
                for &b in &core.by_src[core.dst[a as usize] as usize] {
                    let ab = t[a as usize * n + b as usize];
                    if ab == u16::MAX {
                        continue;
                    }
                    let row_ab = &t[ab as usize * n..ab as usize * n + n];
                    let row_b = &t[b as usize * n..b as usize * n + n];
                    for &c in &core.by_src[core.dst[b as usize] as usize] {
                        let bc = row_b[c as usize];
                        if bc == u16::MAX {
                            continue;
                        }
                        let l = row_ab[c as usize];
                        let r = t[a as usize * n + bc as usize];
                        if l != r {
                            report.push(assoc_violation(names, law, a, b, c));
                        }
                    }
                }
            }
        }
        CompTable::Hash(_) => {
            for a in 0..core.n_arr() as u32 {
                for &b in &core.by_src[core.dst[a as usize] as usize] {
                    let Some(ab) = core.compose(a, b) else { continue };
                    for &c in &core.by_src[core.dst[b as usize] as usize] {
                        let Some(bc) = core.compose(b, c) else { continue };
                        if core.compose(ab, c) != core.compose(a, bc) {
                            report.push(assoc_violation(names, law, a, b, c));
                        }
                    }
                }
            }
        }
    }
}

fn assoc_violation(names: &CoreNames, law: &str, a: u32, b: u32, c: u32) -> Violation {
    Violation::new(
        law,
        vec![(names.arr)(a), (names.arr)(b), (names.arr)(c)],
        "(a∘b)∘c ≠ a∘(b∘c)",
    )
}

/// A validated finite groupoid. Immutable; safe to share.
pub struct FiniteGroupoid {
    objects: Vec<ObjId>,
    arrows: Vec<ArrowId>,
    core: Core,
    obj_idx: HashMap<String, u32>,
    arr_idx: HashMap<String, u32>,
    hom_idx: HashMap<(u32, u32), Vec<u32>>,
}

impl Clone for FiniteGroupoid {
    fn clone(&self) -> Self {
        // CompTable is not Clone (dense tables can be large); a validated
        // structure round-trips exactly, so rebuild from raw.
        validate_groupoid(&self.to_raw()).expect("validated groupoid re-validates")
    }
}

impl std::fmt::Debug for FiniteGroupoid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroupoid")
            .field("objects", &self.objects.len())
            .field("arrows", &self.arrows.len())
            .finish()
    }
}

impl PartialEq for FiniteGroupoid {
    fn eq(&self, other: &Self) -> bool {
        self.to_raw_canonical() == other.to_raw_canonical()
    }
}
impl Eq for FiniteGroupoid {}

impl FiniteGroupoid {
    pub fn objects(&self) -> &[ObjId] {
        &self.objects
    }

    pub fn arrow_ids(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn has_object(&self, x: &ObjId) -> bool {
        self.obj_idx.contains_key(x.as_str())
    }

    pub fn has_arrow(&self, a: &ArrowId) -> bool {
        self.arr_idx.contains_key(a.as_str())
    }

    pub fn src_of(&self, a: &ArrowId) -> Option<&ObjId> {
        let i = self.arrow_index(a)?;
        Some(&self.objects[self.core.src[i as usize] as usize])
    }

    pub fn dst_of(&self, a: &ArrowId) -> Option<&ObjId> {
        let i = self.arrow_index(a)?;
        Some(&self.objects[self.core.dst[i as usize] as usize])
    }

    pub fn identity_of(&self, x: &ObjId) -> Option<&ArrowId> {
        let i = self.obj_index(x)?;
        Some(&self.arrows[self.core.ident[i as usize] as usize])
    }

    pub fn inverse_of(&self, a: &ArrowId) -> Option<&ArrowId> {
        let i = self.arrow_index(a)?;
        Some(&self.arrows[self.core.inv[i as usize] as usize])
    }

    /// Diagrammatic-order composite `a∘b`; `None` if not composable.
    pub fn compose(&self, a: &ArrowId, b: &ArrowId) -> Option<&ArrowId> {
        let i = self.arrow_index(a)?;
        let j = self.arrow_index(b)?;
        Some(&self.arrows[self.core.compose(i, j)? as usize])
    }

    pub fn is_identity(&self, a: &ArrowId) -> bool {
        match self.arrow_index(a) {
            Some(i) => self.core.ident[self.core.src[i as usize] as usize] == i,
            None => false,
        }
    }

    /// All arrows from `x` to `y`, in id order.
    pub fn hom(&self, x: &ObjId, y: &ObjId) -> Vec<&ArrowId> {
        let (Some(i), Some(j)) = (self.obj_index(x), self.obj_index(y)) else {
            return Vec::new();
        };
        match self.hom_idx.get(&(i, j)) {
            Some(v) => v.iter().map(|&a| &self.arrows[a as usize]).collect(),
            None => Vec::new(),
        }
    }

    /// The object group at `x`: all loops at `x`.
    pub fn object_group(&self, x: &ObjId) -> Vec<&ArrowId> {
        self.hom(x, x)
    }

    pub fn to_raw(&self) -> RawGroupoid {
        self.to_raw_canonical()
    }

    fn to_raw_canonical(&self) -> RawGroupoid {
        let mut compose: Vec<(ArrowId, ArrowId, ArrowId)> = Vec::new();
        for a in 0..self.arrow_count() as u32 {
            for &b in &self.core.by_src[self.core.dst[a as usize] as usize] {
                if let Some(c) = self.core.compose(a, b) {
                    compose.push((
                        self.arrows[a as usize].clone(),
                        self.arrows[b as usize].clone(),
                        self.arrows[c as usize].clone(),
                    ));
                }
            }
        }
        compose.sort();
        RawGroupoid {
            objects: self.objects.clone(),
            arrows: (0..self.arrow_count())
                .map(|i| RawArrow {
                    id: self.arrows[i].clone(),
                    src: self.objects[self.core.src[i] as usize].clone(),
                    dst: self.objects[self.core.dst[i] as usize].clone(),
                })
                .collect(),
            identities: (0..self.object_count())
                .map(|x| {
                    (
                        self.objects[x].clone(),
                        self.arrows[self.core.ident[x] as usize].clone(),
                    )
                })
                .collect(),
            compose,
        }
    }

    // index-level access for sibling modules

    pub(crate) fn core(&self) -> &Core {
        &self.core
    }

    pub(crate) fn obj_index(&self, x: &ObjId) -> Option<u32> {
        self.obj_idx.get(x.as_str()).copied()
    }

    pub(crate) fn arrow_index(&self, a: &ArrowId) -> Option<u32> {
        self.arr_idx.get(a.as_str()).copied()
    }

    pub(crate) fn object_id(&self, i: u32) -> &ObjId {
        &self.objects[i as usize]
    }

    pub(crate) fn arrow_id(&self, i: u32) -> &ArrowId {
        &self.arrows[i as usize]
    }

    pub(crate) fn src_idx(&self, a: u32) -> u32 {
        self.core.src[a as usize]
    }

    pub(crate) fn dst_idx(&self, a: u32) -> u32 {
        self.core.dst[a as usize]
    }

    pub(crate) fn ident_idx(&self, x: u32) -> u32 {
        self.core.ident[x as usize]
    }

    pub(crate) fn inv_idx(&self, a: u32) -> u32 {
        self.core.inv[a as usize]
    }

    pub(crate) fn comp_idx(&self, a: u32, b: u32) -> Option<u32> {
        self.core.compose(a, b)
    }

    pub(crate) fn hom_indices(&self, x: u32, y: u32) -> &[u32] {
        self.hom_idx.get(&(x, y)).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Validates raw groupoid data, returning the validated structure or the
/// complete list of violated axiom instances.
pub fn validate_groupoid(raw: &RawGroupoid) -> Result<FiniteGroupoid, GroupoidError> {
    let mut objects = raw.objects.clone();
    objects.sort();
    for w in objects.windows(2) {
        if w[0] == w[1] {
            return Err(GroupoidError::DuplicateId {
                context: "object".into(),
                id: w[0].to_string(),
            });
        }
    }
    for x in &objects {
        if !x.is_well_formed() {
            return Err(GroupoidError::BadId { id: x.to_string() });
        }
    }
    let obj_idx: HashMap<String, u32> = objects
        .iter()
        .enumerate()
        .map(|(i, x)| (x.as_str().to_owned(), i as u32))
        .collect();

    let mut arrow_recs = raw.arrows.clone();
    arrow_recs.sort_by(|a, b| a.id.cmp(&b.id));
    for w in arrow_recs.windows(2) {
        if w[0].id == w[1].id {
            return Err(GroupoidError::DuplicateId {
                context: "arrow".into(),
                id: w[0].id.to_string(),
            });
        }
    }
    let mut arrows = Vec::with_capacity(arrow_recs.len());
    let mut src = Vec::with_capacity(arrow_recs.len());
    let mut dst = Vec::with_capacity(arrow_recs.len());
    for a in &arrow_recs {
        if !a.id.is_well_formed() {
            return Err(GroupoidError::BadId { id: a.id.to_string() });
        }
        let s = *obj_idx
            .get(a.src.as_str())
            .ok_or_else(|| GroupoidError::DanglingId {
                context: format!("source of arrow {}", a.id),
                id: a.src.to_string(),
            })?;
        let d = *obj_idx
            .get(a.dst.as_str())
            .ok_or_else(|| GroupoidError::DanglingId {
                context: format!("target of arrow {}", a.id),
                id: a.dst.to_string(),
            })?;
        arrows.push(a.id.clone());
        src.push(s);
        dst.push(d);
    }
    let arr_idx: HashMap<String, u32> = arrows
        .iter()
        .enumerate()
        .map(|(i, a)| (a.as_str().to_owned(), i as u32))
        .collect();

    let mut ident = vec![UNDEF; objects.len()];
    for (x, e) in &raw.identities {
        let xi = *obj_idx
            .get(x.as_str())
            .ok_or_else(|| GroupoidError::DanglingId {
                context: "identity binding".into(),
                id: x.to_string(),
            })?;
        let ei = *arr_idx
            .get(e.as_str())
            .ok_or_else(|| GroupoidError::DanglingId {
                context: format!("identity of {x}"),
                id: e.to_string(),
            })?;
        if ident[xi as usize] != UNDEF {
            return Err(GroupoidError::DuplicateId {
                context: "identity binding for object".into(),
                id: x.to_string(),
            });
        }
        ident[xi as usize] = ei;
    }

    let mut entries = Vec::with_capacity(raw.compose.len());
    for (f, g, h) in &raw.compose {
        let resolve = |a: &ArrowId| {
            arr_idx
                .get(a.as_str())
                .copied()
                .ok_or_else(|| GroupoidError::DanglingId {
                    context: "compose entry".into(),
                    id: a.to_string(),
                })
        };
        entries.push((resolve(f)?, resolve(g)?, resolve(h)?));
    }

    let mut core = Core::build(objects.len(), src, dst, ident, &entries).map_err(|(a, b)| {
        GroupoidError::DuplicateId {
            context: "compose entry for pair".into(),
            id: format!("({}, {})", arrows[a as usize], arrows[b as usize]),
        }
    })?;

    let mut report = ValidationReport::new("groupoid");
    {
        let obj_name = |i: u32| objects[i as usize].to_string();
        let arr_name = |i: u32| arrows[i as usize].to_string();
        let names = CoreNames {
            obj: &obj_name,
            arr: &arr_name,
        };
        core_validate(&mut core, &entries, &names, "", &mut report);
    }
    if !report.is_clean() {
        return Err(GroupoidError::Axioms(report));
    }

    let mut hom_idx: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
    for a in 0..core.n_arr() {
        hom_idx
            .entry((core.src[a], core.dst[a]))
            .or_default()
            .push(a as u32);
    }

    Ok(FiniteGroupoid {
        objects,
        arrows,
        core,
        obj_idx,
        arr_idx,
        hom_idx,
    })
}

/// Partition of the objects into connected components (blocks are sorted,
/// and listed in order of their least element).
pub fn components(g: &FiniteGroupoid) -> Vec<Vec<ObjId>> {
    let n = g.object_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for a in 0..g.arrow_count() {
        let (s, d) = (g.core.src[a] as usize, g.core.dst[a] as usize);
        let (rs, rd) = (find(&mut parent, s), find(&mut parent, d));
        if rs != rd {
            parent[rs] = rd;
        }
    }
    let mut blocks: BTreeMap<usize, Vec<ObjId>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        blocks.entry(r).or_default().push(g.objects[i].clone());
    }
    let mut out: Vec<Vec<ObjId>> = blocks.into_values().collect();
    for b in &mut out {
        b.sort();
    }
    out.sort();
    out
}

/// `(is_transitive, is_totally_intransitive)`: whether every hom-set
/// between distinct objects is non-empty, resp. empty. Both hold vacuously
/// on fewer than two objects.
pub fn transitivity_flags(g: &FiniteGroupoid) -> (bool, bool) {
    let n = g.object_count() as u32;
    let mut transitive = true;
    let mut tot_intransitive = true;
    let mut seen: BTreeSet<(u32, u32)> = BTreeSet::new();
    for a in 0..g.arrow_count() {
        let (s, d) = (g.core.src[a], g.core.dst[a]);
        if s != d {
            tot_intransitive = false;
            seen.insert((s, d));
        }
    }
    'outer: for x in 0..n {
        for y in 0..n {
            if x != y && !seen.contains(&(x, y)) {
                transitive = false;
                break 'outer;
            }
        }
    }
    (transitive, tot_intransitive)
}

/// Outcome of [`check_subgroupoid`]: the designated subsets and every
/// computed flag. When the subset is not closed (`is_subgroupoid` false)
/// all other flags are suppressed to `false`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubgroupoidWitness {
    pub objects: BTreeSet<ObjId>,
    pub arrows: BTreeSet<ArrowId>,
    pub is_subgroupoid: bool,
    pub is_wide: bool,
    pub is_transitive: bool,
    pub is_totally_intransitive: bool,
    pub is_normal: bool,
    pub is_non_wide_normal: bool,
    pub failures: Vec<Violation>,
}

/// Index-level subgroupoid check, shared with the square groupoids of the
/// double-groupoid layer.
pub(crate) struct SubFlags {
    pub closed: bool,
    pub wide: bool,
    pub transitive: bool,
    pub tot_intransitive: bool,
    pub normal: bool,
    pub non_wide_normal: bool,
    pub violations: Vec<Violation>,
}

pub(crate) fn core_check_sub(
    core: &Core,
    obj_in: &[bool],
    arr_in: &[bool],
    names: &CoreNames,
    prefix: &str,
) -> SubFlags {
    let law = |l: &str| format!("{prefix}{l}");
    let mut violations = Vec::new();
    let mut push = |v: Violation| {
        if violations.len() < crate::report::MAX_WITNESSES_PER_LAW {
            violations.push(v);
        }
    };

    // closure: endpoints, identities, inverses, composition
    let mut closed = true;
    for a in 0..core.n_arr() as u32 {
        if !arr_in[a as usize] {
            continue;
        }
        let (s, d) = (core.src[a as usize], core.dst[a as usize]);
        if !obj_in[s as usize] || !obj_in[d as usize] {
            closed = false;
            push(Violation::new(
                &law("sub-endpoints"),
                vec![(names.arr)(a)],
                "selected arrow has an endpoint outside the object subset",
            ));
        }
        let i = core.inv[a as usize];
        if i == UNDEF || !arr_in[i as usize] {
            closed = false;
            push(Violation::new(
                &law("sub-inverses"),
                vec![(names.arr)(a)],
                "inverse of a selected arrow is not selected",
            ));
        }
    }
    for x in 0..core.n_obj as u32 {
        if !obj_in[x as usize] {
            continue;
        }
        let e = core.ident[x as usize];
        if e == UNDEF || !arr_in[e as usize] {
            closed = false;
            push(Violation::new(
                &law("sub-identities"),
                vec![(names.obj)(x)],
                "identity of a selected object is not selected",
            ));
        }
    }
    for a in 0..core.n_arr() as u32 {
        if !arr_in[a as usize] {
            continue;
        }
        for &b in &core.by_src[core.dst[a as usize] as usize] {
            if !arr_in[b as usize] {
                continue;
            }
            match core.compose(a, b) {
                Some(c) if arr_in[c as usize] => {}
                _ => {
                    closed = false;
                    push(Violation::new(
                        &law("sub-compose"),
                        vec![(names.arr)(a), (names.arr)(b)],
                        "composite of selected arrows is not selected",
                    ));
                }
            }
        }
    }

    if !closed {
        return SubFlags {
            closed,
            wide: false,
            transitive: false,
            tot_intransitive: false,
            normal: false,
            non_wide_normal: false,
            violations,
        };
    }

    let wide = obj_in.iter().all(|&b| b);

    // transitivity of the subgroupoid over its own objects
    let mut sub_pairs: BTreeSet<(u32, u32)> = BTreeSet::new();
    for a in 0..core.n_arr() {
        if arr_in[a] && core.src[a] != core.dst[a] {
            sub_pairs.insert((core.src[a], core.dst[a]));
        }
    }
    let sel_objs: Vec<u32> = (0..core.n_obj as u32)
        .filter(|&x| obj_in[x as usize])
        .collect();
    let mut transitive = true;
    for &x in &sel_objs {
        for &y in &sel_objs {
            if x != y && !sub_pairs.contains(&(x, y)) {
                transitive = false;
            }
        }
    }
    let tot_intransitive = sub_pairs.is_empty();

    // loops of the subgroupoid per object
    let mut loops: Vec<Vec<u32>> = vec![Vec::new(); core.n_obj];
    for a in 0..core.n_arr() {
        if arr_in[a] && core.src[a] == core.dst[a] {
            loops[core.src[a] as usize].push(a as u32);
        }
    }

    // wide normality: a∘H(y) = H(x)∘a as sets for every arrow a: x→y of G
    let mut normal = wide;
    if wide {
        'nrm: for a in 0..core.n_arr() as u32 {
            let (x, y) = (core.src[a as usize], core.dst[a as usize]);
            let mut lhs: Vec<u32> = loops[y as usize]
                .iter()
                .filter_map(|&h| core.compose(a, h))
                .collect();
            let mut rhs: Vec<u32> = loops[x as usize]
                .iter()
                .filter_map(|&h| core.compose(h, a))
                .collect();
            lhs.sort_unstable();
            rhs.sort_unstable();
            if lhs != rhs {
                normal = false;
                push(Violation::new(
                    &law("normality"),
                    vec![(names.arr)(a)],
                    "a∘H(y) ≠ H(x)∘a",
                ));
                break 'nrm;
            }
        }
    }

    // non-wide normality: g∘h∘g⁻¹ ∈ H(x) for g: x→y of G with x,y selected
    let mut non_wide_normal = true;
    'nwn: for g in 0..core.n_arr() as u32 {
        let (x, y) = (core.src[g as usize], core.dst[g as usize]);
        if !obj_in[x as usize] || !obj_in[y as usize] {
            continue;
        }
        for &h in &loops[y as usize] {
            let conj = core
                .compose(g, h)
                .and_then(|gh| core.compose(gh, core.inv[g as usize]));
            match conj {
                Some(c) if arr_in[c as usize] => {}
                _ => {
                    non_wide_normal = false;
                    push(Violation::new(
                        &law("non-wide-normality"),
                        vec![(names.arr)(g), (names.arr)(h)],
                        "g∘h∘g⁻¹ escapes the selected loops",
                    ));
                    break 'nwn;
                }
            }
        }
    }

    SubFlags {
        closed,
        wide,
        transitive,
        tot_intransitive,
        normal,
        non_wide_normal,
        violations,
    }
}

/// Computes all subgroupoid flags for designated object and arrow subsets.
pub fn check_subgroupoid(
    g: &FiniteGroupoid,
    objects: &BTreeSet<ObjId>,
    arrows: &BTreeSet<ArrowId>,
) -> Result<SubgroupoidWitness, GroupoidError> {
    let mut obj_in = vec![false; g.object_count()];
    let mut arr_in = vec![false; g.arrow_count()];
    for x in objects {
        let i = g.obj_index(x).ok_or_else(|| GroupoidError::DanglingId {
            context: "subgroupoid object subset".into(),
            id: x.to_string(),
        })?;
        obj_in[i as usize] = true;
    }
    for a in arrows {
        let i = g.arrow_index(a).ok_or_else(|| GroupoidError::DanglingId {
            context: "subgroupoid arrow subset".into(),
            id: a.to_string(),
        })?;
        arr_in[i as usize] = true;
    }
    let obj_name = |i: u32| g.objects[i as usize].to_string();
    let arr_name = |i: u32| g.arrows[i as usize].to_string();
    let names = CoreNames {
        obj: &obj_name,
        arr: &arr_name,
    };
    let f = core_check_sub(g.core(), &obj_in, &arr_in, &names, "");
    Ok(SubgroupoidWitness {
        objects: objects.clone(),
        arrows: arrows.clone(),
        is_subgroupoid: f.closed,
        is_wide: f.wide,
        is_transitive: f.transitive,
        is_totally_intransitive: f.tot_intransitive,
        is_normal: f.normal,
        is_non_wide_normal: f.non_wide_normal,
        failures: f.violations,
    })
}

/// A morphism of groupoids, given by its object and arrow maps.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct GroupoidMorphism {
    pub object_map: BTreeMap<ObjId, ObjId>,
    pub arrow_map: BTreeMap<ArrowId, ArrowId>,
}

/// Checks that the maps form a groupoid morphism `src → dst`: total,
/// endpoint-, identity- and composition-preserving.
pub fn validate_groupoid_morphism(
    src: &FiniteGroupoid,
    dst: &FiniteGroupoid,
    m: &GroupoidMorphism,
) -> Result<(), GroupoidError> {
    let mut report = ValidationReport::new("groupoid morphism");
    let (omap, amap) = resolve_morphism(src, dst, m, &mut report)?;
    if report.is_clean() {
        check_morphism_core(
            src.core(),
            dst.core(),
            &omap,
            &amap,
            &|i| src.objects[i as usize].to_string(),
            &|i| src.arrows[i as usize].to_string(),
            "",
            &mut report,
        );
    }
    if report.is_clean() {
        Ok(())
    } else {
        Err(GroupoidError::Axioms(report))
    }
}

/// Resolves morphism maps to index vectors (`UNDEF` where missing, which is
/// reported as a totality violation).
pub(crate) fn resolve_morphism(
    src: &FiniteGroupoid,
    dst: &FiniteGroupoid,
    m: &GroupoidMorphism,
    report: &mut ValidationReport,
) -> Result<(Vec<u32>, Vec<u32>), GroupoidError> {
    let mut omap = vec![UNDEF; src.object_count()];
    for (x, y) in &m.object_map {
        let xi = src.obj_index(x).ok_or_else(|| GroupoidError::DanglingId {
            context: "morphism object map (source)".into(),
            id: x.to_string(),
        })?;
        let yi = dst.obj_index(y).ok_or_else(|| GroupoidError::DanglingId {
            context: "morphism object map (target)".into(),
            id: y.to_string(),
        })?;
        omap[xi as usize] = yi;
    }
    let mut amap = vec![UNDEF; src.arrow_count()];
    for (a, b) in &m.arrow_map {
        let ai = src.arrow_index(a).ok_or_else(|| GroupoidError::DanglingId {
            context: "morphism arrow map (source)".into(),
            id: a.to_string(),
        })?;
        let bi = dst.arrow_index(b).ok_or_else(|| GroupoidError::DanglingId {
            context: "morphism arrow map (target)".into(),
            id: b.to_string(),
        })?;
        amap[ai as usize] = bi;
    }
    for (x, &y) in omap.iter().enumerate() {
        if y == UNDEF {
            report.push(Violation::new(
                "morphism-total",
                vec![src.objects[x].to_string()],
                "object has no image",
            ));
        }
    }
    for (a, &b) in amap.iter().enumerate() {
        if b == UNDEF {
            report.push(Violation::new(
                "morphism-total",
                vec![src.arrows[a].to_string()],
                "arrow has no image",
            ));
        }
    }
    Ok((omap, amap))
}

/// Index-level morphism law check (endpoints, identities, composition),
/// reused for the base and module components of crossed-module morphisms.
#[allow(clippy::too_many_arguments)]
pub(crate) fn check_morphism_core(
    src: &Core,
    dst: &Core,
    omap: &[u32],
    amap: &[u32],
    obj_name: &dyn Fn(u32) -> String,
    arr_name: &dyn Fn(u32) -> String,
    prefix: &str,
    report: &mut ValidationReport,
) {
    let law = |l: &str| format!("{prefix}{l}");
    for a in 0..src.n_arr() {
        let fa = amap[a];
        if fa == UNDEF {
            continue;
        }
        let (s, d) = (src.src[a], src.dst[a]);
        if omap[s as usize] != dst.src[fa as usize] || omap[d as usize] != dst.dst[fa as usize] {
            report.push(Violation::new(
                &law("morphism-endpoints"),
                vec![arr_name(a as u32)],
                "image endpoints differ from mapped endpoints",
            ));
        }
    }
    for x in 0..src.n_obj {
        let fx = omap[x];
        if fx == UNDEF {
            continue;
        }
        let e = src.ident[x];
        if e == UNDEF {
            continue;
        }
        if amap[e as usize] != dst.ident[fx as usize] {
            report.push(Violation::new(
                &law("morphism-identities"),
                vec![obj_name(x as u32)],
                "identity is not mapped to the identity of the image object",
            ));
        }
    }
    for a in 0..src.n_arr() as u32 {
        for &b in &src.by_src[src.dst[a as usize] as usize] {
            let Some(c) = src.compose(a, b) else { continue };
            let (fa, fb, fc) = (amap[a as usize], amap[b as usize], amap[c as usize]);
            if fa == UNDEF || fb == UNDEF || fc == UNDEF {
                continue;
            }
            if dst.compose(fa, fb) != Some(fc) {
                report.push(Violation::new(
                    &law("morphism-compose"),
                    vec![arr_name(a), arr_name(b)],
                    "f(a∘b) ≠ f(a)∘f(b)",
                ));
            }
        }
    }
}

/// The kernel of a groupoid morphism: all arrows whose image is an
/// identity, over every object of the source. Always a normal subgroupoid;
/// totally intransitive whenever `f` is injective on objects.
pub fn kernel(
    src: &FiniteGroupoid,
    dst: &FiniteGroupoid,
    f: &GroupoidMorphism,
) -> Result<SubgroupoidWitness, GroupoidError> {
    let mut arrows = BTreeSet::new();
    for a in src.arrow_ids() {
        let im = f
            .arrow_map
            .get(a)
            .ok_or_else(|| GroupoidError::DanglingId {
                context: "kernel of morphism (arrow map)".into(),
                id: a.to_string(),
            })?;
        if dst.is_identity(im) {
            arrows.insert(a.clone());
        }
    }
    let objects: BTreeSet<ObjId> = src.objects().iter().cloned().collect();
    check_subgroupoid(src, &objects, &arrows)
}

/// A quotient groupoid together with its projection.
#[derive(Debug)]
pub struct QuotientGroupoid {
    pub groupoid: FiniteGroupoid,
    pub projection: GroupoidMorphism,
}

/// Higgins quotient of `g` by a normal subgroupoid `h`: objects are the
/// components of `h`, arrows the classes of `a ∼ m∘a∘n` for `m, n ∈ h`.
/// Classes are labelled `[r]` by their lexicographically least member `r`.
pub fn quotient_groupoid(
    g: &FiniteGroupoid,
    h: &SubgroupoidWitness,
) -> Result<QuotientGroupoid, GroupoidError> {
    if !h.is_normal {
        return Err(GroupoidError::NotNormal(
            "quotient requires a (wide) normal subgroupoid".into(),
        ));
    }
    let n_obj = g.object_count();
    let n_arr = g.arrow_count();
    let h_arrows: Vec<u32> = h
        .arrows
        .iter()
        .map(|a| g.arrow_index(a).expect("witness arrows resolve"))
        .collect();

    // object classes: components of h
    let mut parent: Vec<usize> = (0..n_obj).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for &m in &h_arrows {
        let (s, d) = (g.core.src[m as usize] as usize, g.core.dst[m as usize] as usize);
        let (rs, rd) = (find(&mut parent, s), find(&mut parent, d));
        if rs != rd {
            parent[rs] = rd;
        }
    }
    let mut obj_class = vec![0usize; n_obj];
    let mut class_members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..n_obj {
        let r = find(&mut parent, x);
        class_members.entry(r).or_default().push(x);
    }
    let mut obj_class_rep: Vec<&ObjId> = Vec::new();
    for (ci, (_, members)) in class_members.iter().enumerate() {
        for &x in members {
            obj_class[x] = ci;
        }
        let rep = members
            .iter()
            .map(|&x| &g.objects[x])
            .min()
            .expect("non-empty class");
        obj_class_rep.push(rep);
    }

    // arrow classes: saturate a ↦ m∘a and a∘n for m, n ∈ h
    let mut h_by_dst: Vec<Vec<u32>> = vec![Vec::new(); n_obj];
    let mut h_by_src: Vec<Vec<u32>> = vec![Vec::new(); n_obj];
    for &m in &h_arrows {
        h_by_dst[g.core.dst[m as usize] as usize].push(m);
        h_by_src[g.core.src[m as usize] as usize].push(m);
    }
    let mut arr_class = vec![usize::MAX; n_arr];
    let mut classes: Vec<Vec<u32>> = Vec::new();
    for a0 in 0..n_arr as u32 {
        if arr_class[a0 as usize] != usize::MAX {
            continue;
        }
        let ci = classes.len();
        let mut stack = vec![a0];
        let mut members = Vec::new();
        arr_class[a0 as usize] = ci;
        while let Some(a) = stack.pop() {
            members.push(a);
            let s = g.core.src[a as usize] as usize;
            let d = g.core.dst[a as usize] as usize;
            for &m in &h_by_dst[s] {
                if let Some(b) = g.core.compose(m, a) {
                    if arr_class[b as usize] == usize::MAX {
                        arr_class[b as usize] = ci;
                        stack.push(b);
                    }
                }
            }
            for &n in &h_by_src[d] {
                if let Some(b) = g.core.compose(a, n) {
                    if arr_class[b as usize] == usize::MAX {
                        arr_class[b as usize] = ci;
                        stack.push(b);
                    }
                }
            }
        }
        classes.push(members);
    }
    let arr_class_rep: Vec<&ArrowId> = classes
        .iter()
        .map(|ms| {
            ms.iter()
                .map(|&a| &g.arrows[a as usize])
                .min()
                .expect("non-empty class")
        })
        .collect();

    // class-level composition by scanning representative pairs
    let mut qcompose: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (ca, members_a) in classes.iter().enumerate() {
        for (cb, members_b) in classes.iter().enumerate() {
            let a0 = members_a[0];
            let b0 = members_b[0];
            if obj_class[g.core.dst[a0 as usize] as usize]
                != obj_class[g.core.src[b0 as usize] as usize]
            {
                continue;
            }
            let mut result: Option<usize> = None;
            for &a in members_a {
                for &b in members_b {
                    if g.core.dst[a as usize] != g.core.src[b as usize] {
                        continue;
                    }
                    let c = g.core.compose(a, b).ok_or_else(|| {
                        GroupoidError::IllFormedQuotient(format!(
                            "composable pair ({}, {}) missing from the table",
                            g.arrows[a as usize], g.arrows[b as usize]
                        ))
                    })?;
                    let cc = arr_class[c as usize];
                    match result {
                        None => result = Some(cc),
                        Some(prev) if prev != cc => {
                            return Err(GroupoidError::IllFormedQuotient(format!(
                                "[{}]∘[{}] yields both [{}] and [{}]",
                                arr_class_rep[ca],
                                arr_class_rep[cb],
                                arr_class_rep[prev],
                                arr_class_rep[cc],
                            )));
                        }
                        _ => {}
                    }
                }
            }
            let Some(cc) = result else {
                return Err(GroupoidError::IllFormedQuotient(format!(
                    "no composable representatives for [{}]∘[{}]",
                    arr_class_rep[ca], arr_class_rep[cb],
                )));
            };
            qcompose.insert((ca, cb), cc);
        }
    }

    // identities per object class must agree
    let mut qident: Vec<Option<usize>> = vec![None; obj_class_rep.len()];
    for x in 0..n_obj {
        let c = obj_class[x];
        let e = arr_class[g.core.ident[x] as usize];
        match qident[c] {
            None => qident[c] = Some(e),
            Some(prev) if prev != e => {
                return Err(GroupoidError::IllFormedQuotient(format!(
                    "identities of component [{}] fall into distinct classes",
                    obj_class_rep[c]
                )));
            }
            _ => {}
        }
    }

    let obj_label = |c: usize| ObjId::new(class_id(obj_class_rep[c].as_str()));
    let arr_label = |c: usize| ArrowId::new(class_id(arr_class_rep[c].as_str()));
    let raw = RawGroupoid {
        objects: (0..obj_class_rep.len()).map(obj_label).collect(),
        arrows: (0..classes.len())
            .map(|c| RawArrow {
                id: arr_label(c),
                src: obj_label(obj_class[g.core.src[classes[c][0] as usize] as usize]),
                dst: obj_label(obj_class[g.core.dst[classes[c][0] as usize] as usize]),
            })
            .collect(),
        identities: (0..obj_class_rep.len())
            .map(|c| (obj_label(c), arr_label(qident[c].expect("identity class"))))
            .collect(),
        compose: qcompose
            .iter()
            .map(|(&(a, b), &c)| (arr_label(a), arr_label(b), arr_label(c)))
            .collect(),
    };
    let quotient = validate_groupoid(&raw)?;

    let projection = GroupoidMorphism {
        object_map: (0..n_obj)
            .map(|x| (g.objects[x].clone(), obj_label(obj_class[x])))
            .collect(),
        arrow_map: (0..n_arr)
            .map(|a| (g.arrows[a].clone(), arr_label(arr_class[a])))
            .collect(),
    };
    Ok(QuotientGroupoid {
        groupoid: quotient,
        projection,
    })
}

/// Rebuilds a groupoid with renamed objects (used by quotients of crossed
/// modules, whose object classes are singletons and keep their old names).
pub(crate) fn relabel_objects(
    g: &FiniteGroupoid,
    rename: &dyn Fn(&ObjId) -> ObjId,
) -> Result<FiniteGroupoid, GroupoidError> {
    let mut raw = g.to_raw();
    for x in &mut raw.objects {
        *x = rename(x);
    }
    for a in &mut raw.arrows {
        a.src = rename(&a.src);
        a.dst = rename(&a.dst);
    }
    for (x, _) in &mut raw.identities {
        *x = rename(x);
    }
    validate_groupoid(&raw)
}
