//! Double groupoids with thin structures.
//!
//! A double groupoid has points, an edge groupoid over them, and squares
//! carrying two compositions: the horizontal `+₂` (squares side by side,
//! faces `∂₂^± =` left/right, identities `ε₂`) and the vertical `+₁`
//! (squares stacked, faces `∂₁^± =` top/bottom, identities `ε₁`). A square
//! is drawn with `top: TL→TR`, `left: TL→BL`, `bottom: BL→BR`,
//! `right: TR→BR`.
//!
//! Validation treats `(G₂, G₁, +₂)` and `(G₂, G₁, +₁)` as groupoids in
//! their own right (reusing the exhaustive groupoid suite), then checks the
//! cross-direction face compatibilities, the degeneracy laws, and the
//! interchange law over every composable 2×2 grid of squares. A thin
//! structure is a map from the commutative shells of the edge groupoid to
//! squares that is identity on the boundary and respects all compositions;
//! its image squares are the thin squares.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::groupoid::{
    check_morphism_core, core_check_sub, core_validate, resolve_morphism, validate_groupoid,
    Core, CoreNames, FiniteGroupoid, GroupoidError, GroupoidMorphism, RawGroupoid,
    UNDEF,
};
use crate::id::{join_id, ArrowId, ObjId, SquareId};
use crate::report::{ValidationReport, Violation};
use crate::xmod::XModError;

/// A square of a raw double groupoid.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RawSquare {
    pub id: SquareId,
    pub top: ArrowId,
    pub bottom: ArrowId,
    pub left: ArrowId,
    pub right: ArrowId,
}

/// Raw double-groupoid data: an edge groupoid, squares, both composition
/// tables, both degeneracy maps, and an optional thin structure given as
/// `(a, c, b, d) → square` entries in `(left, top, bottom, right)` order.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct RawDgpd {
    pub edges: RawGroupoid,
    pub squares: Vec<RawSquare>,
    pub hcompose: Vec<(SquareId, SquareId, SquareId)>,
    pub vcompose: Vec<(SquareId, SquareId, SquareId)>,
    pub hident: Vec<(ArrowId, SquareId)>,
    pub vident: Vec<(ArrowId, SquareId)>,
    pub thin: Vec<([ArrowId; 4], SquareId)>,
}

#[derive(thiserror::Error, Debug)]
pub enum DgpdError {
    #[error("edge groupoid: {source}")]
    Edges { source: GroupoidError },
    #[error("dangling id `{id}` in {context}")]
    DanglingId { context: String, id: String },
    #[error("duplicate {context} `{id}`")]
    DuplicateId { context: String, id: String },
    #[error("ill-formed id `{id}`")]
    BadId { id: String },
    #[error("axiom violations in {}", .0.context)]
    Axioms(ValidationReport),
    #[error("double groupoid carries no thin structure")]
    NoThinStructure,
    #[error("sub-structure is not normal: {0}")]
    NotNormal(String),
    #[error("edge subgroupoid is not totally intransitive (edge `{edge}`)")]
    NotTotallyIntransitive { edge: String },
    #[error("unknown square `{id}`")]
    UnknownSquare { id: String },
    #[error(transparent)]
    XMod(#[from] XModError),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct Square {
    pub id: SquareId,
    pub top: u32,
    pub bottom: u32,
    pub left: u32,
    pub right: u32,
}

/// A thin structure: the map from commutative shells (keyed by
/// `(left, top, bottom, right)` edge indices) to their thin squares.
#[derive(Clone, Debug)]
pub struct ThinStructure {
    pub(crate) map: HashMap<[u32; 4], u32>,
    pub(crate) is_thin: Vec<bool>,
}

/// The four faces of a square, as edge ids.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SquareFaces<'a> {
    pub top: &'a ArrowId,
    pub bottom: &'a ArrowId,
    pub left: &'a ArrowId,
    pub right: &'a ArrowId,
}

/// A validated double groupoid. Immutable.
#[derive(Clone, Debug)]
pub struct DoubleGroupoid {
    edges: FiniteGroupoid,
    squares: Vec<Square>,
    sq_idx: HashMap<String, u32>,
    hcomp: HashMap<(u32, u32), u32>,
    vcomp: HashMap<(u32, u32), u32>,
    hident: Vec<u32>,
    vident: Vec<u32>,
    thin: Option<ThinStructure>,
}

impl DoubleGroupoid {
    pub fn edges(&self) -> &FiniteGroupoid {
        &self.edges
    }

    pub fn square_count(&self) -> usize {
        self.squares.len()
    }

    pub fn square_ids(&self) -> impl Iterator<Item = &SquareId> {
        self.squares.iter().map(|s| &s.id)
    }

    pub fn has_square(&self, u: &SquareId) -> bool {
        self.sq_idx.contains_key(u.as_str())
    }

    pub fn faces_of(&self, u: &SquareId) -> Option<SquareFaces<'_>> {
        let i = self.square_index(u)?;
        let s = &self.squares[i as usize];
        Some(SquareFaces {
            top: self.edges.arrow_id(s.top),
            bottom: self.edges.arrow_id(s.bottom),
            left: self.edges.arrow_id(s.left),
            right: self.edges.arrow_id(s.right),
        })
    }

    /// Horizontal composite `u +₂ v` (right face of `u` = left face of `v`).
    pub fn hcompose(&self, u: &SquareId, v: &SquareId) -> Option<&SquareId> {
        let (i, j) = (self.square_index(u)?, self.square_index(v)?);
        Some(&self.squares[*self.hcomp.get(&(i, j))? as usize].id)
    }

    /// Vertical composite `u +₁ w` (bottom face of `u` = top face of `w`).
    pub fn vcompose(&self, u: &SquareId, w: &SquareId) -> Option<&SquareId> {
        let (i, j) = (self.square_index(u)?, self.square_index(w)?);
        Some(&self.squares[*self.vcomp.get(&(i, j))? as usize].id)
    }

    /// `ε₂(a)`: the identity square for `+₂` at edge `a`.
    pub fn hidentity(&self, a: &ArrowId) -> Option<&SquareId> {
        let e = self.edges.arrow_index(a)?;
        Some(&self.squares[self.hident[e as usize] as usize].id)
    }

    /// `ε₁(a)`: the identity square for `+₁` at edge `a`.
    pub fn videntity(&self, a: &ArrowId) -> Option<&SquareId> {
        let e = self.edges.arrow_index(a)?;
        Some(&self.squares[self.vident[e as usize] as usize].id)
    }

    pub fn has_thin_structure(&self) -> bool {
        self.thin.is_some()
    }

    /// `⊖(a, c, b, d)` for a commutative shell, in
    /// `(left, top, bottom, right)` order.
    pub fn thin_square(
        &self,
        left: &ArrowId,
        top: &ArrowId,
        bottom: &ArrowId,
        right: &ArrowId,
    ) -> Option<&SquareId> {
        let t = self.thin.as_ref()?;
        let key = [
            self.edges.arrow_index(left)?,
            self.edges.arrow_index(top)?,
            self.edges.arrow_index(bottom)?,
            self.edges.arrow_index(right)?,
        ];
        Some(&self.squares[*t.map.get(&key)? as usize].id)
    }

    pub fn is_thin(&self, u: &SquareId) -> bool {
        match (&self.thin, self.square_index(u)) {
            (Some(t), Some(i)) => t.is_thin[i as usize],
            _ => false,
        }
    }

    pub fn to_raw(&self) -> RawDgpd {
        let sq_id = |i: u32| self.squares[i as usize].id.clone();
        let edge_id = |e: u32| self.edges.arrow_id(e).clone();
        let mut squares: Vec<RawSquare> = self
            .squares
            .iter()
            .map(|s| RawSquare {
                id: s.id.clone(),
                top: edge_id(s.top),
                bottom: edge_id(s.bottom),
                left: edge_id(s.left),
                right: edge_id(s.right),
            })
            .collect();
        squares.sort_by(|a, b| a.id.cmp(&b.id));
        let mut hcompose: Vec<_> = self
            .hcomp
            .iter()
            .map(|(&(u, v), &w)| (sq_id(u), sq_id(v), sq_id(w)))
            .collect();
        hcompose.sort();
        let mut vcompose: Vec<_> = self
            .vcomp
            .iter()
            .map(|(&(u, v), &w)| (sq_id(u), sq_id(v), sq_id(w)))
            .collect();
        vcompose.sort();
        let mut hident: Vec<_> = (0..self.hident.len())
            .map(|e| (edge_id(e as u32), sq_id(self.hident[e])))
            .collect();
        hident.sort();
        let mut vident: Vec<_> = (0..self.vident.len())
            .map(|e| (edge_id(e as u32), sq_id(self.vident[e])))
            .collect();
        vident.sort();
        let mut thin: Vec<_> = self
            .thin
            .iter()
            .flat_map(|t| {
                t.map.iter().map(|(&[a, c, b, d], &s)| {
                    ([edge_id(a), edge_id(c), edge_id(b), edge_id(d)], sq_id(s))
                })
            })
            .collect();
        thin.sort();
        RawDgpd {
            edges: self.edges.to_raw(),
            squares,
            hcompose,
            vcompose,
            hident,
            vident,
            thin,
        }
    }

    // index-level access for the equivalence functors

    pub(crate) fn from_parts(
        edges: FiniteGroupoid,
        squares: Vec<Square>,
        hcomp: HashMap<(u32, u32), u32>,
        vcomp: HashMap<(u32, u32), u32>,
        hident: Vec<u32>,
        vident: Vec<u32>,
        thin: Option<ThinStructure>,
    ) -> DoubleGroupoid {
        let sq_idx = squares
            .iter()
            .enumerate()
            .map(|(i, s)| (s.id.as_str().to_owned(), i as u32))
            .collect();
        DoubleGroupoid {
            edges,
            squares,
            sq_idx,
            hcomp,
            vcomp,
            hident,
            vident,
            thin,
        }
    }

    pub(crate) fn square_index(&self, u: &SquareId) -> Option<u32> {
        self.sq_idx.get(u.as_str()).copied()
    }

    pub(crate) fn square_id(&self, i: u32) -> &SquareId {
        &self.squares[i as usize].id
    }

    pub(crate) fn square(&self, i: u32) -> &Square {
        &self.squares[i as usize]
    }

    pub(crate) fn hcomp_idx(&self, u: u32, v: u32) -> Option<u32> {
        self.hcomp.get(&(u, v)).copied()
    }

    pub(crate) fn vcomp_idx(&self, u: u32, v: u32) -> Option<u32> {
        self.vcomp.get(&(u, v)).copied()
    }

    pub(crate) fn hident_idx(&self, e: u32) -> u32 {
        self.hident[e as usize]
    }

    pub(crate) fn vident_idx(&self, e: u32) -> u32 {
        self.vident[e as usize]
    }

    pub(crate) fn thin_idx(&self, key: &[u32; 4]) -> Option<u32> {
        self.thin.as_ref().and_then(|t| t.map.get(key).copied())
    }

    pub(crate) fn thin_ref(&self) -> Option<&ThinStructure> {
        self.thin.as_ref()
    }
}

/// Corner-consistent shells `(left, top, bottom, right)` of a groupoid, in
/// a deterministic enumeration order; optionally only the commutative ones
/// (`left∘bottom = top∘right`).
pub(crate) fn enumerate_shells(g: &FiniteGroupoid, commutative_only: bool) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    let core = g.core();
    for a in 0..g.arrow_count() as u32 {
        let (tl, bl) = (core.src[a as usize], core.dst[a as usize]);
        for &c in &core.by_src[tl as usize] {
            for &b in &core.by_src[bl as usize] {
                for &d in g.hom_indices(core.dst[c as usize], core.dst[b as usize]) {
                    if commutative_only && core.compose(a, b) != core.compose(c, d) {
                        continue;
                    }
                    out.push([a, c, b, d]);
                }
            }
        }
    }
    out
}

/// The double groupoid `□′G` of all 2-shells of `g` (or `□G` of the
/// commutative ones, with `commutative_only`), with the thin structure that
/// maps every commutative shell to itself.
pub fn shell_dgpd(g: &FiniteGroupoid, commutative_only: bool) -> DoubleGroupoid {
    let edges = g.clone();
    let core = edges.core();
    let shells = enumerate_shells(&edges, commutative_only);
    let mut squares = Vec::with_capacity(shells.len());
    let mut by_shell: HashMap<[u32; 4], u32> = HashMap::with_capacity(shells.len());
    for (i, &[a, c, b, d]) in shells.iter().enumerate() {
        let id = SquareId::new(join_id(&[
            edges.arrow_id(a).as_str(),
            edges.arrow_id(c).as_str(),
            edges.arrow_id(b).as_str(),
            edges.arrow_id(d).as_str(),
        ]));
        squares.push(Square {
            id,
            top: c,
            bottom: b,
            left: a,
            right: d,
        });
        by_shell.insert([a, c, b, d], i as u32);
    }

    let mut by_left: Vec<Vec<u32>> = vec![Vec::new(); edges.arrow_count()];
    let mut by_top: Vec<Vec<u32>> = vec![Vec::new(); edges.arrow_count()];
    for (i, s) in squares.iter().enumerate() {
        by_left[s.left as usize].push(i as u32);
        by_top[s.top as usize].push(i as u32);
    }

    // (a c/b d) +₂ (d g/f h) = (a cg/bf h)
    let mut hcomp = HashMap::new();
    for (u, su) in squares.iter().enumerate() {
        for &v in &by_left[su.right as usize] {
            let sv = &squares[v as usize];
            let cg = core.compose(su.top, sv.top).expect("tops compose");
            let bf = core.compose(su.bottom, sv.bottom).expect("bottoms compose");
            let w = by_shell[&[su.left, cg, bf, sv.right]];
            hcomp.insert((u as u32, v), w);
        }
    }
    // (a c/b d) +₁ (f b/g h) = (af c/g dh)
    let mut vcomp = HashMap::new();
    for (u, su) in squares.iter().enumerate() {
        for &v in &by_top[su.bottom as usize] {
            let sv = &squares[v as usize];
            let af = core.compose(su.left, sv.left).expect("lefts compose");
            let dh = core.compose(su.right, sv.right).expect("rights compose");
            let w = by_shell[&[af, su.top, sv.bottom, dh]];
            vcomp.insert((u as u32, v), w);
        }
    }

    let mut hident = vec![0u32; edges.arrow_count()];
    let mut vident = vec![0u32; edges.arrow_count()];
    for a in 0..edges.arrow_count() as u32 {
        let (x, y) = (core.src[a as usize], core.dst[a as usize]);
        let (ix, iy) = (core.ident[x as usize], core.ident[y as usize]);
        hident[a as usize] = by_shell[&[a, ix, iy, a]];
        vident[a as usize] = by_shell[&[ix, a, a, iy]];
    }

    let mut thin_map = HashMap::new();
    let mut is_thin = vec![false; squares.len()];
    for shell in enumerate_shells(&edges, true) {
        let s = by_shell[&shell];
        thin_map.insert(shell, s);
        is_thin[s as usize] = true;
    }

    DoubleGroupoid::from_parts(
        edges,
        squares,
        hcomp,
        vcomp,
        hident,
        vident,
        Some(ThinStructure {
            map: thin_map,
            is_thin,
        }),
    )
}

struct Resolved {
    edges: FiniteGroupoid,
    squares: Vec<Square>,
    hentries: Vec<(u32, u32, u32)>,
    ventries: Vec<(u32, u32, u32)>,
    hident: Vec<u32>,
    vident: Vec<u32>,
}

fn resolve_raw(raw: &RawDgpd) -> Result<Resolved, DgpdError> {
    let edges = validate_groupoid(&raw.edges).map_err(|source| DgpdError::Edges { source })?;

    let mut squares: Vec<Square> = Vec::with_capacity(raw.squares.len());
    let mut sq_idx: HashMap<&str, u32> = HashMap::with_capacity(raw.squares.len());
    let mut sorted: Vec<&RawSquare> = raw.squares.iter().collect();
    sorted.sort_by(|a, b| a.id.cmp(&b.id));
    for s in sorted {
        if !s.id.is_well_formed() {
            return Err(DgpdError::BadId { id: s.id.to_string() });
        }
        if sq_idx.insert(s.id.as_str(), squares.len() as u32).is_some() {
            return Err(DgpdError::DuplicateId {
                context: "square".into(),
                id: s.id.to_string(),
            });
        }
        let face = |a: &ArrowId, which: &str| {
            edges.arrow_index(a).ok_or_else(|| DgpdError::DanglingId {
                context: format!("{which} face of square {}", s.id),
                id: a.to_string(),
            })
        };
        squares.push(Square {
            id: s.id.clone(),
            top: face(&s.top, "top")?,
            bottom: face(&s.bottom, "bottom")?,
            left: face(&s.left, "left")?,
            right: face(&s.right, "right")?,
        });
    }

    let rsq = |id: &SquareId, context: &str| {
        sq_idx
            .get(id.as_str())
            .copied()
            .ok_or_else(|| DgpdError::DanglingId {
                context: context.into(),
                id: id.to_string(),
            })
    };
    let resolve_entries = |list: &[(SquareId, SquareId, SquareId)], what: &str| {
        list.iter()
            .map(|(u, v, w)| Ok((rsq(u, what)?, rsq(v, what)?, rsq(w, what)?)))
            .collect::<Result<Vec<_>, DgpdError>>()
    };
    let hentries = resolve_entries(&raw.hcompose, "horizontal composition entry")?;
    let ventries = resolve_entries(&raw.vcompose, "vertical composition entry")?;

    let resolve_idents = |list: &[(ArrowId, SquareId)], what: &str| {
        let mut out = vec![UNDEF; edges.arrow_count()];
        for (a, s) in list {
            let e = edges.arrow_index(a).ok_or_else(|| DgpdError::DanglingId {
                context: what.into(),
                id: a.to_string(),
            })?;
            if out[e as usize] != UNDEF {
                return Err(DgpdError::DuplicateId {
                    context: format!("{what} for edge"),
                    id: a.to_string(),
                });
            }
            out[e as usize] = rsq(s, what)?;
        }
        Ok(out)
    };
    let hident = resolve_idents(&raw.hident, "horizontal identity")?;
    let vident = resolve_idents(&raw.vident, "vertical identity")?;

    Ok(Resolved {
        edges,
        squares,
        hentries,
        ventries,
        hident,
        vident,
    })
}

fn square_core(
    edges: &FiniteGroupoid,
    squares: &[Square],
    entries: &[(u32, u32, u32)],
    ident: &[u32],
    horizontal: bool,
) -> Result<Core, DgpdError> {
    let (src, dst): (Vec<u32>, Vec<u32>) = if horizontal {
        (
            squares.iter().map(|s| s.left).collect(),
            squares.iter().map(|s| s.right).collect(),
        )
    } else {
        (
            squares.iter().map(|s| s.top).collect(),
            squares.iter().map(|s| s.bottom).collect(),
        )
    };
    Core::build(edges.arrow_count(), src, dst, ident.to_vec(), entries).map_err(|(u, v)| {
        DgpdError::DuplicateId {
            context: format!(
                "{} composition entry for pair",
                if horizontal { "horizontal" } else { "vertical" }
            ),
            id: format!("({}, {})", squares[u as usize].id, squares[v as usize].id),
        }
    })
}

/// Validates raw double-groupoid data: the edge groupoid, corner
/// consistency, both square groupoid structures, face compatibilities,
/// degeneracy laws, the interchange law over all composable 2×2 grids, and
/// (when present) the thin structure.
pub fn validate_dgpd(raw: &RawDgpd) -> Result<DoubleGroupoid, DgpdError> {
    let r = resolve_raw(raw)?;
    let edges = &r.edges;
    let mut report = ValidationReport::new("double groupoid");

    let ecore = edges.core();
    let sq_name = |i: u32| r.squares[i as usize].id.to_string();
    let edge_name = |e: u32| edges.arrow_id(e).to_string();

    // corner consistency
    for s in &r.squares {
        let ok = ecore.src[s.top as usize] == ecore.src[s.left as usize]
            && ecore.dst[s.top as usize] == ecore.src[s.right as usize]
            && ecore.dst[s.left as usize] == ecore.src[s.bottom as usize]
            && ecore.dst[s.bottom as usize] == ecore.dst[s.right as usize];
        if !ok {
            report.push(Violation::new(
                "square-corners",
                vec![s.id.to_string()],
                "faces do not share corners consistently",
            ));
        }
    }

    // the two square groupoid structures
    let mut hcore = square_core(edges, &r.squares, &r.hentries, &r.hident, true)?;
    let mut vcore = square_core(edges, &r.squares, &r.ventries, &r.vident, false)?;
    {
        let names = CoreNames {
            obj: &edge_name,
            arr: &sq_name,
        };
        core_validate(&mut hcore, &r.hentries, &names, "+2:", &mut report);
        core_validate(&mut vcore, &r.ventries, &names, "+1:", &mut report);
    }

    // cross-direction face compatibility
    for &(u, v, w) in &r.hentries {
        let (su, sv, sw) = (&r.squares[u as usize], &r.squares[v as usize], &r.squares[w as usize]);
        if ecore.compose(su.top, sv.top) != Some(sw.top)
            || ecore.compose(su.bottom, sv.bottom) != Some(sw.bottom)
        {
            report.push(Violation::new(
                "+2:cross-faces",
                vec![sq_name(u), sq_name(v)],
                "∂₁^±(u+₂v) ≠ ∂₁^±(u)∘∂₁^±(v)",
            ));
        }
    }
    for &(u, v, w) in &r.ventries {
        let (su, sv, sw) = (&r.squares[u as usize], &r.squares[v as usize], &r.squares[w as usize]);
        if ecore.compose(su.left, sv.left) != Some(sw.left)
            || ecore.compose(su.right, sv.right) != Some(sw.right)
        {
            report.push(Violation::new(
                "+1:cross-faces",
                vec![sq_name(u), sq_name(v)],
                "∂₂^±(u+₁w) ≠ ∂₂^±(u)∘∂₂^±(w)",
            ));
        }
    }

    // degeneracy boundaries
    for e in 0..edges.arrow_count() as u32 {
        let (x, y) = (ecore.src[e as usize], ecore.dst[e as usize]);
        let (ix, iy) = (ecore.ident[x as usize], ecore.ident[y as usize]);
        let h = r.hident[e as usize];
        if h != UNDEF {
            let s = &r.squares[h as usize];
            if s.left != e || s.right != e || s.top != ix || s.bottom != iy {
                report.push(Violation::new(
                    "degeneracy-boundary",
                    vec![edge_name(e), sq_name(h)],
                    "ε₂(a) must have left = right = a and identity top/bottom",
                ));
            }
        }
        let v = r.vident[e as usize];
        if v != UNDEF {
            let s = &r.squares[v as usize];
            if s.top != e || s.bottom != e || s.left != ix || s.right != iy {
                report.push(Violation::new(
                    "degeneracy-boundary",
                    vec![edge_name(e), sq_name(v)],
                    "ε₁(a) must have top = bottom = a and identity left/right",
                ));
            }
        }
    }

    // ε₁(1ₓ) = ε₂(1ₓ)
    for x in 0..edges.object_count() {
        let e = ecore.ident[x];
        if e != UNDEF
            && r.hident[e as usize] != UNDEF
            && r.vident[e as usize] != UNDEF
            && r.hident[e as usize] != r.vident[e as usize]
        {
            report.push(Violation::new(
                "degeneracy-shared",
                vec![edges.object_id(x as u32).to_string()],
                "ε₁(1ₓ) ≠ ε₂(1ₓ)",
            ));
        }
    }

    // degeneracy functoriality: ε₁(a∘b) = ε₁(a)+₂ε₁(b), ε₂(a∘b) = ε₂(a)+₁ε₂(b)
    for a in 0..edges.arrow_count() as u32 {
        for &b in &ecore.by_src[ecore.dst[a as usize] as usize] {
            let ab = ecore.compose(a, b).expect("edges validated");
            let (va, vb, vab) = (r.vident[a as usize], r.vident[b as usize], r.vident[ab as usize]);
            if va != UNDEF && vb != UNDEF && vab != UNDEF && hcore.compose(va, vb) != Some(vab) {
                report.push(Violation::new(
                    "degeneracy-functorial",
                    vec![edge_name(a), edge_name(b)],
                    "ε₁(a∘b) ≠ ε₁(a)+₂ε₁(b)",
                ));
            }
            let (ha, hb, hab) = (r.hident[a as usize], r.hident[b as usize], r.hident[ab as usize]);
            if ha != UNDEF && hb != UNDEF && hab != UNDEF && vcore.compose(ha, hb) != Some(hab) {
                report.push(Violation::new(
                    "degeneracy-functorial",
                    vec![edge_name(a), edge_name(b)],
                    "ε₂(a∘b) ≠ ε₂(a)+₁ε₂(b)",
                ));
            }
        }
    }

    // interchange over all composable 2×2 grids
    scan_interchange(&r, &hcore, &vcore, &mut report);

    if !report.is_clean() {
        return Err(DgpdError::Axioms(report));
    }

    let hcomp: HashMap<(u32, u32), u32> =
        r.hentries.iter().map(|&(u, v, w)| ((u, v), w)).collect();
    let vcomp: HashMap<(u32, u32), u32> =
        r.ventries.iter().map(|&(u, v, w)| ((u, v), w)).collect();
    let mut g = DoubleGroupoid::from_parts(
        r.edges,
        r.squares,
        hcomp,
        vcomp,
        r.hident,
        r.vident,
        None,
    );
    if !raw.thin.is_empty() {
        let t = validate_thin(&g, &raw.thin)?;
        g.thin = Some(t);
    }
    Ok(g)
}

/// Exhaustive interchange scan:
/// `(u +₂ v) +₁ (w +₂ x) = (u +₁ w) +₂ (v +₁ x)` for every grid
/// `[u v / w x]` in which all composites are defined. Squares are permuted
/// into `(left, top)` blocks so the inner loop runs over contiguous rows of
/// dense `u16` tables; grids touching an undefined composite are skipped
/// (those are already reported by the totality checks).
fn scan_interchange(r: &Resolved, hcore: &Core, vcore: &Core, report: &mut ValidationReport) {
    let n = r.squares.len();
    let n_edge = r.edges.arrow_count();
    if n == 0 {
        return;
    }
    const M16: u16 = u16::MAX;
    let dense_ok = n <= 4096 && n_edge * n_edge <= 1 << 20;
    if !dense_ok {
        scan_interchange_generic(r, hcore, vcore, report);
        return;
    }

    // permutation: positions sorted by (left, top, original index)
    let mut perm: Vec<u32> = (0..n as u32).collect();
    perm.sort_by_key(|&i| {
        let s = &r.squares[i as usize];
        (s.left, s.top, i)
    });
    let mut pos = vec![0u32; n];
    for (p, &orig) in perm.iter().enumerate() {
        pos[orig as usize] = p as u32;
    }

    let left: Vec<u16> = perm.iter().map(|&i| r.squares[i as usize].left as u16).collect();
    let top: Vec<u16> = perm.iter().map(|&i| r.squares[i as usize].top as u16).collect();
    let bottom: Vec<u16> = perm.iter().map(|&i| r.squares[i as usize].bottom as u16).collect();
    let right: Vec<u16> = perm.iter().map(|&i| r.squares[i as usize].right as u16).collect();

    // contiguous ranges per (left, top) and per left
    let mut lt_range = vec![(0u32, 0u32); n_edge * n_edge];
    let mut l_range = vec![(0u32, 0u32); n_edge];
    {
        let mut i = 0usize;
        while i < n {
            let l = left[i] as usize;
            let start_l = i;
            while i < n && left[i] as usize == l {
                let t = top[i] as usize;
                let start_t = i;
                while i < n && left[i] as usize == l && top[i] as usize == t {
                    i += 1;
                }
                lt_range[l * n_edge + t] = (start_t as u32, i as u32);
            }
            l_range[l] = (start_l as u32, i as u32);
        }
    }
    let mut by_top: Vec<Vec<u32>> = vec![Vec::new(); n_edge];
    for p in 0..n {
        by_top[top[p] as usize].push(p as u32);
    }

    // dense tables in permuted coordinates
    let mut h = vec![M16; n * n];
    let mut v = vec![M16; n * n];
    for &(a, b, c) in &r.hentries {
        h[pos[a as usize] as usize * n + pos[b as usize] as usize] = pos[c as usize] as u16;
    }
    for &(a, b, c) in &r.ventries {
        v[pos[a as usize] as usize * n + pos[b as usize] as usize] = pos[c as usize] as u16;
    }

    let orig_id = |p: u32| r.squares[perm[p as usize] as usize].id.to_string();
    for u in 0..n {
        let ru = &h[u * n..u * n + n];
        let vu = &v[u * n..u * n + n];
        let wlist = &by_top[bottom[u] as usize];
        let (vs, ve) = l_range[right[u] as usize];
        for vv in vs as usize..ve as usize {
            let p = ru[vv];
            if p == M16 {
                continue;
            }
            let cp = &v[p as usize * n..p as usize * n + n];
            let cv = &v[vv * n..vv * n + n];
            let bv = bottom[vv] as usize;
            for &w in wlist {
                let w = w as usize;
                let q = vu[w];
                if q == M16 {
                    continue;
                }
                let rq = &h[q as usize * n..q as usize * n + n];
                let rw = &h[w * n..w * n + n];
                let (xs, xe) = lt_range[right[w] as usize * n_edge + bv];
                for x in xs as usize..xe as usize {
                    let t1 = rw[x];
                    let t2 = cv[x];
                    if t1 == M16 || t2 == M16 {
                        continue;
                    }
                    if cp[t1 as usize] != rq[t2 as usize] {
                        report.push(Violation::new(
                            "interchange",
                            vec![
                                orig_id(u as u32),
                                orig_id(vv as u32),
                                orig_id(w as u32),
                                orig_id(x as u32),
                            ],
                            "(u+₂v)+₁(w+₂x) ≠ (u+₁w)+₂(v+₁x)",
                        ));
                    }
                }
            }
        }
    }
}

fn scan_interchange_generic(
    r: &Resolved,
    hcore: &Core,
    vcore: &Core,
    report: &mut ValidationReport,
) {
    let n = r.squares.len();
    let mut by_left: Vec<Vec<u32>> = vec![Vec::new(); r.edges.arrow_count()];
    let mut by_top: Vec<Vec<u32>> = vec![Vec::new(); r.edges.arrow_count()];
    for (i, s) in r.squares.iter().enumerate() {
        by_left[s.left as usize].push(i as u32);
        by_top[s.top as usize].push(i as u32);
    }
    for u in 0..n as u32 {
        let su = &r.squares[u as usize];
        for &v in &by_left[su.right as usize] {
            let Some(p) = hcore.compose(u, v) else { continue };
            let sv = &r.squares[v as usize];
            for &w in &by_top[su.bottom as usize] {
                let Some(q) = vcore.compose(u, w) else { continue };
                let sw = &r.squares[w as usize];
                for &x in &by_left[sw.right as usize] {
                    if r.squares[x as usize].top != sv.bottom {
                        continue;
                    }
                    let (Some(t1), Some(t2)) = (hcore.compose(w, x), vcore.compose(v, x)) else {
                        continue;
                    };
                    if vcore.compose(p, t1) != hcore.compose(q, t2) {
                        report.push(Violation::new(
                            "interchange",
                            vec![
                                r.squares[u as usize].id.to_string(),
                                r.squares[v as usize].id.to_string(),
                                r.squares[w as usize].id.to_string(),
                                r.squares[x as usize].id.to_string(),
                            ],
                            "(u+₂v)+₁(w+₂x) ≠ (u+₁w)+₂(v+₁x)",
                        ));
                    }
                }
            }
        }
    }
}

/// Validates thin-structure entries against a validated double groupoid:
/// the map must be total on exactly the commutative shells of the edge
/// groupoid, identity on the boundary, and a morphism of double groupoids
/// (preserving both compositions and the degeneracies).
pub fn validate_thin(
    g: &DoubleGroupoid,
    entries: &[([ArrowId; 4], SquareId)],
) -> Result<ThinStructure, DgpdError> {
    let edges = g.edges();
    let ecore = edges.core();
    let mut report = ValidationReport::new("thin structure");

    let mut map: HashMap<[u32; 4], u32> = HashMap::with_capacity(entries.len());
    for ([a, c, b, d], s) in entries {
        let re = |x: &ArrowId| {
            edges.arrow_index(x).ok_or_else(|| DgpdError::DanglingId {
                context: "thin entry shell".into(),
                id: x.to_string(),
            })
        };
        let key = [re(a)?, re(c)?, re(b)?, re(d)?];
        let sq = g.square_index(s).ok_or_else(|| DgpdError::DanglingId {
            context: "thin entry square".into(),
            id: s.to_string(),
        })?;
        if map.insert(key, sq).is_some() {
            return Err(DgpdError::DuplicateId {
                context: "thin entry for shell".into(),
                id: format!("({a}, {c}, {b}, {d})"),
            });
        }
    }

    let shell_name = |k: &[u32; 4]| {
        format!(
            "({}, {}, {}, {})",
            edges.arrow_id(k[0]),
            edges.arrow_id(k[1]),
            edges.arrow_id(k[2]),
            edges.arrow_id(k[3])
        )
    };

    // domain: exactly the commutative shells
    let shells = enumerate_shells(edges, true);
    let shell_set: BTreeSet<[u32; 4]> = shells.iter().copied().collect();
    for k in map.keys() {
        if !shell_set.contains(k) {
            report.push(Violation::new(
                "thin-domain",
                vec![shell_name(k)],
                "entry on a non-commutative shell",
            ));
        }
    }
    for k in &shells {
        if !map.contains_key(k) {
            report.push(Violation::new(
                "thin-total",
                vec![shell_name(k)],
                "commutative shell has no thin square",
            ));
        }
    }

    // identity on the boundary
    for (&k, &s) in &map {
        let sq = g.square(s);
        if [sq.left, sq.top, sq.bottom, sq.right] != k {
            report.push(Violation::new(
                "thin-boundary",
                vec![shell_name(&k), sq.id.to_string()],
                "⊖(a, c, b, d) does not have boundary (a, c, b, d)",
            ));
        }
    }

    // degeneracies: ⊖ of a degenerate shell is the degenerate square
    for e in 0..edges.arrow_count() as u32 {
        let (x, y) = (ecore.src[e as usize], ecore.dst[e as usize]);
        let (ix, iy) = (ecore.ident[x as usize], ecore.ident[y as usize]);
        if map.get(&[ix, e, e, iy]) != Some(&g.vident_idx(e)) {
            report.push(Violation::new(
                "thin-degeneracy",
                vec![edges.arrow_id(e).to_string()],
                "⊖ does not send the ε₁ shell to ε₁(a)",
            ));
        }
        if map.get(&[e, ix, iy, e]) != Some(&g.hident_idx(e)) {
            report.push(Violation::new(
                "thin-degeneracy",
                vec![edges.arrow_id(e).to_string()],
                "⊖ does not send the ε₂ shell to ε₂(a)",
            ));
        }
    }

    // morphism: ⊖(s₁ +₂ s₂) = ⊖(s₁) +₂ ⊖(s₂), and the +₁ mirror
    let mut shells_by_left: HashMap<u32, Vec<[u32; 4]>> = HashMap::new();
    let mut shells_by_top: HashMap<u32, Vec<[u32; 4]>> = HashMap::new();
    for &s in &shells {
        shells_by_left.entry(s[0]).or_default().push(s);
        shells_by_top.entry(s[1]).or_default().push(s);
    }
    for &s1 in &shells {
        let [a, c, b, d] = s1;
        if let Some(next) = shells_by_left.get(&d) {
            for &s2 in next {
                let [_, gg, f, h] = s2;
                let cg = ecore.compose(c, gg).expect("tops compose");
                let bf = ecore.compose(b, f).expect("bottoms compose");
                let lhs = map.get(&[a, cg, bf, h]).copied();
                let rhs = match (map.get(&s1), map.get(&s2)) {
                    (Some(&x), Some(&y)) => g.hcomp_idx(x, y),
                    _ => None,
                };
                if lhs.is_none() || lhs != rhs {
                    report.push(Violation::new(
                        "thin-hcomp",
                        vec![shell_name(&s1), shell_name(&s2)],
                        "⊖ does not preserve +₂",
                    ));
                }
            }
        }
        if let Some(below) = shells_by_top.get(&b) {
            for &s2 in below {
                let [f, _, gg, h] = s2;
                let af = ecore.compose(a, f).expect("lefts compose");
                let dh = ecore.compose(d, h).expect("rights compose");
                let lhs = map.get(&[af, c, gg, dh]).copied();
                let rhs = match (map.get(&s1), map.get(&s2)) {
                    (Some(&x), Some(&y)) => g.vcomp_idx(x, y),
                    _ => None,
                };
                if lhs.is_none() || lhs != rhs {
                    report.push(Violation::new(
                        "thin-vcomp",
                        vec![shell_name(&s1), shell_name(&s2)],
                        "⊖ does not preserve +₁",
                    ));
                }
            }
        }
    }

    if !report.is_clean() {
        return Err(DgpdError::Axioms(report));
    }
    let mut is_thin = vec![false; g.square_count()];
    for &s in map.values() {
        is_thin[s as usize] = true;
    }
    Ok(ThinStructure { map, is_thin })
}

/// A morphism of double groupoids: maps on points, edges and squares.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct DGpdMorphism {
    pub object_map: BTreeMap<ObjId, ObjId>,
    pub edge_map: BTreeMap<ArrowId, ArrowId>,
    pub square_map: BTreeMap<SquareId, SquareId>,
}

/// Checks a triple of maps as a morphism of double groupoids: the edge
/// level is a groupoid morphism, faces and degeneracies commute, both
/// compositions are preserved, and thin structures (when both sides carry
/// one) are preserved.
pub fn validate_dgpd_morphism(
    src: &DoubleGroupoid,
    dst: &DoubleGroupoid,
    f: &DGpdMorphism,
) -> Result<(), DgpdError> {
    let mut report = ValidationReport::new("double groupoid morphism");
    let to_err = |e: GroupoidError| match e {
        GroupoidError::DanglingId { context, id } => DgpdError::DanglingId { context, id },
        other => DgpdError::Edges { source: other },
    };
    let edge_m = GroupoidMorphism {
        object_map: f.object_map.clone(),
        arrow_map: f.edge_map.clone(),
    };
    let (omap, emap) =
        resolve_morphism(src.edges(), dst.edges(), &edge_m, &mut report).map_err(to_err)?;

    let mut smap = vec![UNDEF; src.square_count()];
    for (u, v) in &f.square_map {
        let ui = src.square_index(u).ok_or_else(|| DgpdError::DanglingId {
            context: "morphism square map (source)".into(),
            id: u.to_string(),
        })?;
        let vi = dst.square_index(v).ok_or_else(|| DgpdError::DanglingId {
            context: "morphism square map (target)".into(),
            id: v.to_string(),
        })?;
        smap[ui as usize] = vi;
    }
    for (u, &v) in smap.iter().enumerate() {
        if v == UNDEF {
            report.push(Violation::new(
                "morphism-total",
                vec![src.square_id(u as u32).to_string()],
                "square has no image",
            ));
        }
    }
    if !report.is_clean() {
        return Err(DgpdError::Axioms(report));
    }

    check_morphism_core(
        src.edges().core(),
        dst.edges().core(),
        &omap,
        &emap,
        &|x| src.edges().object_id(x).to_string(),
        &|e| src.edges().arrow_id(e).to_string(),
        "edge:",
        &mut report,
    );

    for u in 0..src.square_count() as u32 {
        let s = src.square(u);
        let t = dst.square(smap[u as usize]);
        if [t.top, t.bottom, t.left, t.right]
            != [
                emap[s.top as usize],
                emap[s.bottom as usize],
                emap[s.left as usize],
                emap[s.right as usize],
            ]
        {
            report.push(Violation::new(
                "square-faces",
                vec![s.id.to_string()],
                "faces of the image differ from images of the faces",
            ));
        }
    }

    for e in 0..src.edges().arrow_count() as u32 {
        let fe = emap[e as usize];
        if smap[src.hident_idx(e) as usize] != dst.hident_idx(fe) {
            report.push(Violation::new(
                "degeneracy",
                vec![src.edges().arrow_id(e).to_string()],
                "f(ε₂(a)) ≠ ε₂(f(a))",
            ));
        }
        if smap[src.vident_idx(e) as usize] != dst.vident_idx(fe) {
            report.push(Violation::new(
                "degeneracy",
                vec![src.edges().arrow_id(e).to_string()],
                "f(ε₁(a)) ≠ ε₁(f(a))",
            ));
        }
    }

    let mut hentries: Vec<(u32, u32, u32)> =
        src.hcomp.iter().map(|(&(u, v), &w)| (u, v, w)).collect();
    hentries.sort_unstable();
    for (u, v, w) in hentries {
        if dst.hcomp_idx(smap[u as usize], smap[v as usize]) != Some(smap[w as usize]) {
            report.push(Violation::new(
                "hcomp",
                vec![src.square_id(u).to_string(), src.square_id(v).to_string()],
                "f(u+₂v) ≠ f(u)+₂f(v)",
            ));
        }
    }
    let mut ventries: Vec<(u32, u32, u32)> =
        src.vcomp.iter().map(|(&(u, v), &w)| (u, v, w)).collect();
    ventries.sort_unstable();
    for (u, v, w) in ventries {
        if dst.vcomp_idx(smap[u as usize], smap[v as usize]) != Some(smap[w as usize]) {
            report.push(Violation::new(
                "vcomp",
                vec![src.square_id(u).to_string(), src.square_id(v).to_string()],
                "f(u+₁w) ≠ f(u)+₁f(w)",
            ));
        }
    }

    if let (Some(ts), Some(_)) = (src.thin_ref(), dst.thin_ref()) {
        let mut entries: Vec<([u32; 4], u32)> = ts.map.iter().map(|(&k, &v)| (k, v)).collect();
        entries.sort_unstable();
        for ([a, c, b, d], s) in entries {
            let key = [
                emap[a as usize],
                emap[c as usize],
                emap[b as usize],
                emap[d as usize],
            ];
            if dst.thin_idx(&key) != Some(smap[s as usize]) {
                report.push(Violation::new(
                    "thin",
                    vec![src.square_id(s).to_string()],
                    "f(⊖(shell)) ≠ ⊖(f(shell))",
                ));
            }
        }
    }

    if report.is_clean() {
        Ok(())
    } else {
        Err(DgpdError::Axioms(report))
    }
}

/// Designated sub-structure `(H₂, H₁, H₀)` of a double groupoid, with the
/// subdouble-groupoid conditions SDG1–SDG3 and the normality conditions
/// NDG1–NDG2 evaluated (on the horizontal composition; the `+₁` mirror
/// check is available behind `mirror_v` and reported separately).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubDGpdWitness {
    pub points: BTreeSet<ObjId>,
    pub edges: BTreeSet<ArrowId>,
    pub squares: BTreeSet<SquareId>,
    pub is_sub: bool,
    pub is_normal: bool,
    /// SDG1 (edge subgroupoid), SDG2 (`+₂` subgroupoid), SDG3 (thin
    /// restriction).
    pub sdg: [bool; 3],
    /// NDG1 (edges wide-normal), NDG2 (`+₂` non-wide normal).
    pub ndg: [bool; 2],
    /// Result of the optional `+₁` mirror normality check.
    pub mirror_normal: Option<bool>,
    pub failures: Vec<Violation>,
}

/// Evaluates SDG1–3 and NDG1–2 for designated point, edge and square
/// subsets of a double groupoid.
pub fn check_sub_dgpd(
    g: &DoubleGroupoid,
    points: &BTreeSet<ObjId>,
    edge_subset: &BTreeSet<ArrowId>,
    square_subset: &BTreeSet<SquareId>,
    mirror_v: bool,
) -> Result<SubDGpdWitness, DgpdError> {
    let edges = g.edges();
    let mut pt_in = vec![false; edges.object_count()];
    for x in points {
        let i = edges.obj_index(x).ok_or_else(|| DgpdError::DanglingId {
            context: "point subset".into(),
            id: x.to_string(),
        })?;
        pt_in[i as usize] = true;
    }
    let mut edge_in = vec![false; edges.arrow_count()];
    for a in edge_subset {
        let i = edges.arrow_index(a).ok_or_else(|| DgpdError::DanglingId {
            context: "edge subset".into(),
            id: a.to_string(),
        })?;
        edge_in[i as usize] = true;
    }
    let mut sq_in = vec![false; g.square_count()];
    for s in square_subset {
        let i = g.square_index(s).ok_or_else(|| DgpdError::DanglingId {
            context: "square subset".into(),
            id: s.to_string(),
        })?;
        sq_in[i as usize] = true;
    }

    let mut failures = Vec::new();
    let obj_name = |x: u32| edges.object_id(x).to_string();
    let edge_name = |e: u32| edges.arrow_id(e).to_string();
    let sq_name = |s: u32| g.square_id(s).to_string();

    // SDG1 / NDG1 at the edge level
    let edge_flags = {
        let names = CoreNames {
            obj: &obj_name,
            arr: &edge_name,
        };
        core_check_sub(edges.core(), &pt_in, &edge_in, &names, "sdg1:")
    };
    failures.extend(edge_flags.violations.iter().cloned());
    let sdg1 = edge_flags.closed;

    // SDG2 / NDG2 on the horizontal square groupoid
    let hcore = rebuild_square_core(g, true);
    let h_flags = {
        let names = CoreNames {
            obj: &edge_name,
            arr: &sq_name,
        };
        core_check_sub(&hcore, &edge_in, &sq_in, &names, "sdg2:")
    };
    failures.extend(h_flags.violations.iter().cloned());
    let sdg2 = h_flags.closed;

    // SDG3: thin squares over selected shells stay selected
    let mut sdg3 = true;
    if let Some(t) = g.thin_ref() {
        let mut keys: Vec<&[u32; 4]> = t.map.keys().collect();
        keys.sort();
        for k in keys {
            if k.iter().all(|&e| edge_in[e as usize]) && !sq_in[t.map[k] as usize] {
                sdg3 = false;
                failures.push(Violation::new(
                    "sdg3-thin",
                    vec![sq_name(t.map[k])],
                    "thin square of a selected commutative shell is not selected",
                ));
            }
        }
    }

    let is_sub = sdg1 && sdg2 && sdg3;

    let ndg1 = is_sub && edge_flags.wide && edge_flags.normal;
    if is_sub && !ndg1 {
        failures.push(Violation::new(
            "ndg1",
            vec![],
            if edge_flags.wide {
                "edge subset is not normal in the edge groupoid"
            } else {
                "edge subset is not wide in the edge groupoid"
            },
        ));
    }
    let ndg2 = is_sub && h_flags.non_wide_normal;
    if is_sub && !ndg2 {
        for v in &h_flags.violations {
            if v.law.ends_with("non-wide-normality") {
                let mut v = v.clone();
                v.law = "ndg2".into();
                failures.push(v);
            }
        }
    }

    let mirror_normal = if mirror_v {
        let vcore = rebuild_square_core(g, false);
        let names = CoreNames {
            obj: &edge_name,
            arr: &sq_name,
        };
        let v_flags = core_check_sub(&vcore, &edge_in, &sq_in, &names, "mirror-v:");
        Some(v_flags.closed && v_flags.non_wide_normal)
    } else {
        None
    };

    Ok(SubDGpdWitness {
        points: points.clone(),
        edges: edge_subset.clone(),
        squares: square_subset.clone(),
        is_sub,
        is_normal: is_sub && ndg1 && ndg2,
        sdg: [sdg1, sdg2, sdg3],
        ndg: [ndg1, ndg2],
        mirror_normal,
        failures,
    })
}

/// Rebuilds the synthetic groupoid of squares over one composition from a
/// validated double groupoid, including derived inverses.
pub(crate) fn rebuild_square_core(g: &DoubleGroupoid, horizontal: bool) -> Core {
    let n_edge = g.edges().arrow_count();
    let (src, dst, ident, table): (Vec<u32>, Vec<u32>, &Vec<u32>, &HashMap<(u32, u32), u32>) =
        if horizontal {
            (
                g.squares.iter().map(|s| s.left).collect(),
                g.squares.iter().map(|s| s.right).collect(),
                &g.hident,
                &g.hcomp,
            )
        } else {
            (
                g.squares.iter().map(|s| s.top).collect(),
                g.squares.iter().map(|s| s.bottom).collect(),
                &g.vident,
                &g.vcomp,
            )
        };
    let entries: Vec<(u32, u32, u32)> = table.iter().map(|(&(u, v), &w)| (u, v, w)).collect();
    let mut core = Core::build(n_edge, src, dst, ident.clone(), &entries)
        .expect("validated tables have no duplicate keys");
    // derive inverses (the structure is validated, so they exist)
    for u in 0..core.n_arr() as u32 {
        let want_l = core.ident[core.src[u as usize] as usize];
        let want_r = core.ident[core.dst[u as usize] as usize];
        for &v in &core.by_src[core.dst[u as usize] as usize] {
            if core.compose(u, v) == Some(want_l) && core.compose(v, u) == Some(want_r) {
                core.inv[u as usize] = v;
                break;
            }
        }
    }
    core
}

/// Quotient double groupoid: carried across the equivalence as
/// `λ(quotient(γ(G), γ(H)))`. Points stay those of `G`; edges become the
/// classes of the edge quotient; squares are the lambda squares over the
/// quotient crossed module.
pub fn quotient_dgpd(
    g: &DoubleGroupoid,
    h: &SubDGpdWitness,
) -> Result<DoubleGroupoid, DgpdError> {
    if !h.is_normal {
        return Err(DgpdError::NotNormal(
            "quotient requires a normal subdouble groupoid".into(),
        ));
    }
    for e in &h.edges {
        if g.edges().src_of(e) != g.edges().dst_of(e) {
            return Err(DgpdError::NotTotallyIntransitive {
                edge: e.to_string(),
            });
        }
    }
    let gx = crate::equiv::gamma(g)?;
    let w = crate::equiv::transfer_normal_sub_to_xmod(g, h)?;
    let q = crate::xmod::quotient_xmod(&gx, &w)?;
    Ok(crate::equiv::lambda(&q.xmod).into_dgpd())
}
