//! Canonical text documents for every structure.
//!
//! One flat document per structure; child structures are embedded inline
//! with a dotted line prefix, so no identifier ever resolves across files.
//! Lines are `keyword token…`; `#` starts a comment line and blank lines
//! are ignored. The canonical form is deterministic: groups appear in
//! schema order, entries sorted, single spaces, `\n` endings —
//! `serialize(parse(d)) = d` for canonical `d`, and byte-identical output
//! across runs.
//!
//! Grammar, by kind:
//!
//! ```text
//! kind groupoid            kind xmod                 kind dgpd
//! format 1                 format 1                  format 1
//! obj x                    base.obj p …              edge.obj x …
//! arr a x y                mod.obj p …               sq s top bottom left right
//! idn x a                  bnd m p                   hcmp u v w / vcmp u w z
//! cmp f g h                act m a m2                hidn a s / vidn a s
//! end groupoid             end xmod                  thin a c b d s
//!                                                    end dgpd
//! ```
//!
//! `sub-witness` documents carry `of <kind>`, a `parent.`-prefixed parent
//! body and `sel.*` subset lines; `morphism` documents carry `of <kind>`,
//! `src.`/`dst.`-prefixed bodies and `omap`/`amap` (groupoid) or
//! `omap`/`bmap`/`mmap` (crossed module) entries.

use std::collections::BTreeSet;
use std::fmt;

use crate::dgpd::{DoubleGroupoid, RawDgpd, RawSquare, SubDGpdWitness};
use crate::groupoid::{
    FiniteGroupoid, GroupoidMorphism, RawArrow, RawGroupoid, SubgroupoidWitness,
};
use crate::id::{ArrowId, ObjId, SquareId};
use crate::xmod::{CrossedModule, RawXMod, SubXModWitness, XModMorphism};

/// Parse failure, with the 1-based line it occurred on.
#[derive(thiserror::Error, Clone, PartialEq, Eq, Debug)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// A raw sub-structure witness document: the embedded parent plus the
/// designated subsets. Flags are never serialized; they are recomputed by
/// the corresponding check operation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RawSubWitness {
    Groupoid {
        parent: RawGroupoid,
        objects: Vec<ObjId>,
        arrows: Vec<ArrowId>,
    },
    XMod {
        parent: RawXMod,
        base: Vec<ArrowId>,
        module: Vec<ArrowId>,
    },
    Dgpd {
        parent: RawDgpd,
        points: Vec<ObjId>,
        edges: Vec<ArrowId>,
        squares: Vec<SquareId>,
    },
}

/// A raw morphism document: source and target structures plus the maps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RawMorphism {
    Groupoid {
        source: RawGroupoid,
        target: RawGroupoid,
        object_map: Vec<(ObjId, ObjId)>,
        arrow_map: Vec<(ArrowId, ArrowId)>,
    },
    XMod {
        source: RawXMod,
        target: RawXMod,
        object_map: Vec<(ObjId, ObjId)>,
        base_map: Vec<(ArrowId, ArrowId)>,
        module_map: Vec<(ArrowId, ArrowId)>,
    },
}

/// Any structure document.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StructureDocument {
    Groupoid(RawGroupoid),
    XMod(RawXMod),
    Dgpd(RawDgpd),
    SubWitness(RawSubWitness),
    Morphism(RawMorphism),
}

impl StructureDocument {
    pub fn kind(&self) -> &'static str {
        match self {
            StructureDocument::Groupoid(_) => "groupoid",
            StructureDocument::XMod(_) => "xmod",
            StructureDocument::Dgpd(_) => "dgpd",
            StructureDocument::SubWitness(_) => "sub-witness",
            StructureDocument::Morphism(_) => "morphism",
        }
    }
}

impl From<&FiniteGroupoid> for StructureDocument {
    fn from(g: &FiniteGroupoid) -> Self {
        StructureDocument::Groupoid(g.to_raw())
    }
}

impl From<&CrossedModule> for StructureDocument {
    fn from(x: &CrossedModule) -> Self {
        StructureDocument::XMod(x.to_raw())
    }
}

impl From<&DoubleGroupoid> for StructureDocument {
    fn from(d: &DoubleGroupoid) -> Self {
        StructureDocument::Dgpd(d.to_raw())
    }
}

/// Wraps a subgroupoid witness (with its parent) as a document.
pub fn sub_witness_groupoid(parent: &FiniteGroupoid, w: &SubgroupoidWitness) -> StructureDocument {
    StructureDocument::SubWitness(RawSubWitness::Groupoid {
        parent: parent.to_raw(),
        objects: w.objects.iter().cloned().collect(),
        arrows: w.arrows.iter().cloned().collect(),
    })
}

/// Wraps a subcrossed-module witness (with its parent) as a document.
pub fn sub_witness_xmod(parent: &CrossedModule, w: &SubXModWitness) -> StructureDocument {
    StructureDocument::SubWitness(RawSubWitness::XMod {
        parent: parent.to_raw(),
        base: w.base_arrows.iter().cloned().collect(),
        module: w.module_arrows.iter().cloned().collect(),
    })
}

/// Wraps a subdouble-groupoid witness (with its parent) as a document.
pub fn sub_witness_dgpd(parent: &DoubleGroupoid, w: &SubDGpdWitness) -> StructureDocument {
    StructureDocument::SubWitness(RawSubWitness::Dgpd {
        parent: parent.to_raw(),
        points: w.points.iter().cloned().collect(),
        edges: w.edges.iter().cloned().collect(),
        squares: w.squares.iter().cloned().collect(),
    })
}

/// Wraps a groupoid morphism (with both structures) as a document.
pub fn morphism_groupoid(
    src: &FiniteGroupoid,
    dst: &FiniteGroupoid,
    f: &GroupoidMorphism,
) -> StructureDocument {
    StructureDocument::Morphism(RawMorphism::Groupoid {
        source: src.to_raw(),
        target: dst.to_raw(),
        object_map: f.object_map.iter().map(|(a, b)| (a.clone(), b.clone())).collect(),
        arrow_map: f.arrow_map.iter().map(|(a, b)| (a.clone(), b.clone())).collect(),
    })
}

/// Wraps a crossed-module morphism (with both structures) as a document.
pub fn morphism_xmod(
    src: &CrossedModule,
    dst: &CrossedModule,
    f: &XModMorphism,
) -> StructureDocument {
    StructureDocument::Morphism(RawMorphism::XMod {
        source: src.to_raw(),
        target: dst.to_raw(),
        object_map: f.object_map.iter().map(|(a, b)| (a.clone(), b.clone())).collect(),
        base_map: f.base_map.iter().map(|(a, b)| (a.clone(), b.clone())).collect(),
        module_map: f.module_map.iter().map(|(a, b)| (a.clone(), b.clone())).collect(),
    })
}

// ---------------------------------------------------------------------
// serialization

struct Emitter {
    lines: Vec<String>,
}

impl Emitter {
    fn group(&mut self, mut entries: Vec<String>) {
        entries.sort();
        self.lines.extend(entries);
    }

    fn embed(&mut self, prefix: &str, body: Vec<String>) {
        for l in body {
            self.lines.push(format!("{prefix}.{l}"));
        }
    }
}

fn groupoid_body(g: &RawGroupoid) -> Vec<String> {
    let mut e = Emitter { lines: Vec::new() };
    e.group(g.objects.iter().map(|x| format!("obj {x}")).collect());
    e.group(
        g.arrows
            .iter()
            .map(|a| format!("arr {} {} {}", a.id, a.src, a.dst))
            .collect(),
    );
    e.group(
        g.identities
            .iter()
            .map(|(x, a)| format!("idn {x} {a}"))
            .collect(),
    );
    e.group(
        g.compose
            .iter()
            .map(|(f, s, h)| format!("cmp {f} {s} {h}"))
            .collect(),
    );
    e.lines
}

fn xmod_body(x: &RawXMod) -> Vec<String> {
    let mut e = Emitter { lines: Vec::new() };
    e.embed("base", groupoid_body(&x.base));
    e.embed("mod", groupoid_body(&x.module));
    e.group(
        x.boundary
            .iter()
            .map(|(m, p)| format!("bnd {m} {p}"))
            .collect(),
    );
    e.group(
        x.action
            .iter()
            .map(|(m, a, r)| format!("act {m} {a} {r}"))
            .collect(),
    );
    e.lines
}

fn dgpd_body(d: &RawDgpd) -> Vec<String> {
    let mut e = Emitter { lines: Vec::new() };
    e.embed("edge", groupoid_body(&d.edges));
    e.group(
        d.squares
            .iter()
            .map(|s| format!("sq {} {} {} {} {}", s.id, s.top, s.bottom, s.left, s.right))
            .collect(),
    );
    e.group(
        d.hcompose
            .iter()
            .map(|(u, v, w)| format!("hcmp {u} {v} {w}"))
            .collect(),
    );
    e.group(
        d.vcompose
            .iter()
            .map(|(u, v, w)| format!("vcmp {u} {v} {w}"))
            .collect(),
    );
    e.group(
        d.hident
            .iter()
            .map(|(a, s)| format!("hidn {a} {s}"))
            .collect(),
    );
    e.group(
        d.vident
            .iter()
            .map(|(a, s)| format!("vidn {a} {s}"))
            .collect(),
    );
    e.group(
        d.thin
            .iter()
            .map(|([a, c, b, dd], s)| format!("thin {a} {c} {b} {dd} {s}"))
            .collect(),
    );
    e.lines
}

fn body_of(doc: &StructureDocument) -> Vec<String> {
    match doc {
        StructureDocument::Groupoid(g) => groupoid_body(g),
        StructureDocument::XMod(x) => xmod_body(x),
        StructureDocument::Dgpd(d) => dgpd_body(d),
        StructureDocument::SubWitness(w) => {
            let mut e = Emitter { lines: Vec::new() };
            match w {
                RawSubWitness::Groupoid {
                    parent,
                    objects,
                    arrows,
                } => {
                    e.lines.push("of groupoid".into());
                    e.embed("parent", groupoid_body(parent));
                    e.group(objects.iter().map(|x| format!("sel.obj {x}")).collect());
                    e.group(arrows.iter().map(|a| format!("sel.arr {a}")).collect());
                }
                RawSubWitness::XMod {
                    parent,
                    base,
                    module,
                } => {
                    e.lines.push("of xmod".into());
                    e.embed("parent", xmod_body(parent));
                    e.group(base.iter().map(|a| format!("sel.base {a}")).collect());
                    e.group(module.iter().map(|m| format!("sel.mod {m}")).collect());
                }
                RawSubWitness::Dgpd {
                    parent,
                    points,
                    edges,
                    squares,
                } => {
                    e.lines.push("of dgpd".into());
                    e.embed("parent", dgpd_body(parent));
                    e.group(points.iter().map(|x| format!("sel.pt {x}")).collect());
                    e.group(edges.iter().map(|a| format!("sel.edge {a}")).collect());
                    e.group(squares.iter().map(|s| format!("sel.sq {s}")).collect());
                }
            }
            e.lines
        }
        StructureDocument::Morphism(m) => {
            let mut e = Emitter { lines: Vec::new() };
            match m {
                RawMorphism::Groupoid {
                    source,
                    target,
                    object_map,
                    arrow_map,
                } => {
                    e.lines.push("of groupoid".into());
                    e.embed("src", groupoid_body(source));
                    e.embed("dst", groupoid_body(target));
                    e.group(
                        object_map
                            .iter()
                            .map(|(a, b)| format!("omap {a} {b}"))
                            .collect(),
                    );
                    e.group(
                        arrow_map
                            .iter()
                            .map(|(a, b)| format!("amap {a} {b}"))
                            .collect(),
                    );
                }
                RawMorphism::XMod {
                    source,
                    target,
                    object_map,
                    base_map,
                    module_map,
                } => {
                    e.lines.push("of xmod".into());
                    e.embed("src", xmod_body(source));
                    e.embed("dst", xmod_body(target));
                    e.group(
                        object_map
                            .iter()
                            .map(|(a, b)| format!("omap {a} {b}"))
                            .collect(),
                    );
                    e.group(
                        base_map
                            .iter()
                            .map(|(a, b)| format!("bmap {a} {b}"))
                            .collect(),
                    );
                    e.group(
                        module_map
                            .iter()
                            .map(|(a, b)| format!("mmap {a} {b}"))
                            .collect(),
                    );
                }
            }
            e.lines
        }
    }
}

/// Canonical serialization: deterministic, byte-stable, parseable back to
/// an equal document.
pub fn serialize(doc: &StructureDocument) -> String {
    let kind = doc.kind();
    let mut out = format!("kind {kind}\nformat 1\n");
    for l in body_of(doc) {
        out.push_str(&l);
        out.push('\n');
    }
    out.push_str(&format!("end {kind}\n"));
    out
}

/// Like [`serialize`] but with section separators and count comments for
/// human reading. Not byte-stable-for-parsing guarantees beyond what
/// canonical already gives; prefer canonical for golden files.
pub fn serialize_pretty(doc: &StructureDocument) -> String {
    let kind = doc.kind();
    let mut out = format!("kind {kind}\nformat 1\n");
    let mut last_kw = String::new();
    for l in body_of(doc) {
        let kw = l.split(' ').next().unwrap_or("").to_owned();
        if kw != last_kw && !last_kw.is_empty() {
            out.push('\n');
        }
        last_kw = kw;
        out.push_str(&l);
        out.push('\n');
    }
    out.push_str(&format!("end {kind}\n"));
    out
}

// ---------------------------------------------------------------------
// parsing

/// A body line: keyword plus argument tokens, with its source line number.
struct Line {
    no: usize,
    kw: String,
    args: Vec<String>,
}

struct GroupoidAcc {
    objects: Vec<(usize, ObjId)>,
    arrows: Vec<(usize, RawArrow)>,
    identities: Vec<(usize, ObjId, ArrowId)>,
    compose: Vec<(usize, ArrowId, ArrowId, ArrowId)>,
}

impl GroupoidAcc {
    fn new() -> Self {
        GroupoidAcc {
            objects: Vec::new(),
            arrows: Vec::new(),
            identities: Vec::new(),
            compose: Vec::new(),
        }
    }

    fn take(&mut self, l: Line) -> Result<(), ParseError> {
        match (l.kw.as_str(), l.args.len()) {
            ("obj", 1) => self.objects.push((l.no, ObjId::new(&*l.args[0]))),
            ("arr", 3) => self.arrows.push((
                l.no,
                RawArrow::new(&*l.args[0], &*l.args[1], &*l.args[2]),
            )),
            ("idn", 2) => self.identities.push((
                l.no,
                ObjId::new(&*l.args[0]),
                ArrowId::new(&*l.args[1]),
            )),
            ("cmp", 3) => self.compose.push((
                l.no,
                ArrowId::new(&*l.args[0]),
                ArrowId::new(&*l.args[1]),
                ArrowId::new(&*l.args[2]),
            )),
            (kw, _) => {
                return Err(err(
                    l.no,
                    format!("unexpected `{kw}` line (or wrong argument count) in groupoid body"),
                ))
            }
        }
        Ok(())
    }

    /// Checks that every referenced id is declared; returns the raw data.
    fn finish(self) -> Result<RawGroupoid, ParseError> {
        let objs: BTreeSet<&str> = self.objects.iter().map(|(_, x)| x.as_str()).collect();
        let arrs: BTreeSet<&str> = self.arrows.iter().map(|(_, a)| a.id.as_str()).collect();
        for (no, a) in &self.arrows {
            for x in [&a.src, &a.dst] {
                if !objs.contains(x.as_str()) {
                    return Err(err(*no, format!("dangling object id `{x}`")));
                }
            }
        }
        for (no, x, a) in &self.identities {
            if !objs.contains(x.as_str()) {
                return Err(err(*no, format!("dangling object id `{x}`")));
            }
            if !arrs.contains(a.as_str()) {
                return Err(err(*no, format!("dangling arrow id `{a}`")));
            }
        }
        for (no, f, g, h) in &self.compose {
            for a in [f, g, h] {
                if !arrs.contains(a.as_str()) {
                    return Err(err(*no, format!("dangling arrow id `{a}`")));
                }
            }
        }
        Ok(RawGroupoid {
            objects: self.objects.into_iter().map(|(_, x)| x).collect(),
            arrows: self.arrows.into_iter().map(|(_, a)| a).collect(),
            identities: self
                .identities
                .into_iter()
                .map(|(_, x, a)| (x, a))
                .collect(),
            compose: self
                .compose
                .into_iter()
                .map(|(_, f, g, h)| (f, g, h))
                .collect(),
        })
    }
}

struct XModAcc {
    base: GroupoidAcc,
    module: GroupoidAcc,
    boundary: Vec<(usize, ArrowId, ArrowId)>,
    action: Vec<(usize, ArrowId, ArrowId, ArrowId)>,
}

impl XModAcc {
    fn new() -> Self {
        XModAcc {
            base: GroupoidAcc::new(),
            module: GroupoidAcc::new(),
            boundary: Vec::new(),
            action: Vec::new(),
        }
    }

    fn take(&mut self, l: Line) -> Result<(), ParseError> {
        if let Some(rest) = l.kw.strip_prefix("base.") {
            return self.base.take(Line {
                no: l.no,
                kw: rest.to_owned(),
                args: l.args,
            });
        }
        if let Some(rest) = l.kw.strip_prefix("mod.") {
            return self.module.take(Line {
                no: l.no,
                kw: rest.to_owned(),
                args: l.args,
            });
        }
        match (l.kw.as_str(), l.args.len()) {
            ("bnd", 2) => self.boundary.push((
                l.no,
                ArrowId::new(&*l.args[0]),
                ArrowId::new(&*l.args[1]),
            )),
            ("act", 3) => self.action.push((
                l.no,
                ArrowId::new(&*l.args[0]),
                ArrowId::new(&*l.args[1]),
                ArrowId::new(&*l.args[2]),
            )),
            (kw, _) => {
                return Err(err(
                    l.no,
                    format!("unexpected `{kw}` line (or wrong argument count) in xmod body"),
                ))
            }
        }
        Ok(())
    }

    fn finish(self) -> Result<RawXMod, ParseError> {
        let bids: Vec<(usize, &str, &str, bool)> = self
            .boundary
            .iter()
            .map(|(no, m, p)| (*no, m.as_str(), p.as_str(), true))
            .chain(
                self.action
                    .iter()
                    .map(|(no, m, a, _)| (*no, m.as_str(), a.as_str(), false)),
            )
            .collect();
        let base = self.base.finish()?;
        let module = self.module.finish()?;
        let barrs: BTreeSet<&str> = base.arrows.iter().map(|a| a.id.as_str()).collect();
        let marrs: BTreeSet<&str> = module.arrows.iter().map(|a| a.id.as_str()).collect();
        for (no, m, p, _) in &bids {
            if !marrs.contains(m) {
                return Err(err(*no, format!("dangling module arrow id `{m}`")));
            }
            if !barrs.contains(p) {
                return Err(err(*no, format!("dangling base arrow id `{p}`")));
            }
        }
        for (no, _, _, r) in self.action.iter().map(|(no, m, a, r)| (no, m, a, r)) {
            if !marrs.contains(r.as_str()) {
                return Err(err(*no, format!("dangling module arrow id `{r}`")));
            }
        }
        Ok(RawXMod {
            base,
            module,
            boundary: self
                .boundary
                .into_iter()
                .map(|(_, m, p)| (m, p))
                .collect(),
            action: self
                .action
                .into_iter()
                .map(|(_, m, a, r)| (m, a, r))
                .collect(),
        })
    }
}

struct DgpdAcc {
    edge: GroupoidAcc,
    squares: Vec<(usize, RawSquare)>,
    hcompose: Vec<(usize, SquareId, SquareId, SquareId)>,
    vcompose: Vec<(usize, SquareId, SquareId, SquareId)>,
    hident: Vec<(usize, ArrowId, SquareId)>,
    vident: Vec<(usize, ArrowId, SquareId)>,
    thin: Vec<(usize, [ArrowId; 4], SquareId)>,
}

impl DgpdAcc {
    fn new() -> Self {
        DgpdAcc {
            edge: GroupoidAcc::new(),
            squares: Vec::new(),
            hcompose: Vec::new(),
            vcompose: Vec::new(),
            hident: Vec::new(),
            vident: Vec::new(),
            thin: Vec::new(),
        }
    }

    fn take(&mut self, l: Line) -> Result<(), ParseError> {
        if let Some(rest) = l.kw.strip_prefix("edge.") {
            return self.edge.take(Line {
                no: l.no,
                kw: rest.to_owned(),
                args: l.args,
            });
        }
        let sid = |s: &String| SquareId::new(s.as_str());
        let aid = |s: &String| ArrowId::new(s.as_str());
        match (l.kw.as_str(), l.args.len()) {
            ("sq", 5) => self.squares.push((
                l.no,
                RawSquare {
                    id: sid(&l.args[0]),
                    top: aid(&l.args[1]),
                    bottom: aid(&l.args[2]),
                    left: aid(&l.args[3]),
                    right: aid(&l.args[4]),
                },
            )),
            ("hcmp", 3) => self
                .hcompose
                .push((l.no, sid(&l.args[0]), sid(&l.args[1]), sid(&l.args[2]))),
            ("vcmp", 3) => self
                .vcompose
                .push((l.no, sid(&l.args[0]), sid(&l.args[1]), sid(&l.args[2]))),
            ("hidn", 2) => self.hident.push((l.no, aid(&l.args[0]), sid(&l.args[1]))),
            ("vidn", 2) => self.vident.push((l.no, aid(&l.args[0]), sid(&l.args[1]))),
            ("thin", 5) => self.thin.push((
                l.no,
                [aid(&l.args[0]), aid(&l.args[1]), aid(&l.args[2]), aid(&l.args[3])],
                sid(&l.args[4]),
            )),
            (kw, _) => {
                return Err(err(
                    l.no,
                    format!("unexpected `{kw}` line (or wrong argument count) in dgpd body"),
                ))
            }
        }
        Ok(())
    }

    fn finish(self) -> Result<RawDgpd, ParseError> {
        let edges = self.edge.finish()?;
        let earrs: BTreeSet<&str> = edges.arrows.iter().map(|a| a.id.as_str()).collect();
        let sqs: BTreeSet<&str> = self.squares.iter().map(|(_, s)| s.id.as_str()).collect();
        for (no, s) in &self.squares {
            for a in [&s.top, &s.bottom, &s.left, &s.right] {
                if !earrs.contains(a.as_str()) {
                    return Err(err(*no, format!("dangling edge id `{a}`")));
                }
            }
        }
        let check_sq = |no: usize, s: &SquareId| {
            if !sqs.contains(s.as_str()) {
                Err(err(no, format!("dangling square id `{s}`")))
            } else {
                Ok(())
            }
        };
        for (no, u, v, w) in self.hcompose.iter().chain(self.vcompose.iter()) {
            check_sq(*no, u)?;
            check_sq(*no, v)?;
            check_sq(*no, w)?;
        }
        for (no, a, s) in self.hident.iter().chain(self.vident.iter()) {
            if !earrs.contains(a.as_str()) {
                return Err(err(*no, format!("dangling edge id `{a}`")));
            }
            check_sq(*no, s)?;
        }
        for (no, shell, s) in &self.thin {
            for a in shell {
                if !earrs.contains(a.as_str()) {
                    return Err(err(*no, format!("dangling edge id `{a}`")));
                }
            }
            check_sq(*no, s)?;
        }
        Ok(RawDgpd {
            edges,
            squares: self.squares.into_iter().map(|(_, s)| s).collect(),
            hcompose: self
                .hcompose
                .into_iter()
                .map(|(_, u, v, w)| (u, v, w))
                .collect(),
            vcompose: self
                .vcompose
                .into_iter()
                .map(|(_, u, v, w)| (u, v, w))
                .collect(),
            hident: self.hident.into_iter().map(|(_, a, s)| (a, s)).collect(),
            vident: self.vident.into_iter().map(|(_, a, s)| (a, s)).collect(),
            thin: self.thin.into_iter().map(|(_, k, s)| (k, s)).collect(),
        })
    }
}

enum BodyAcc {
    Groupoid(GroupoidAcc),
    XMod(XModAcc),
    Dgpd(DgpdAcc),
}

impl BodyAcc {
    fn for_kind(kind: &str, no: usize) -> Result<BodyAcc, ParseError> {
        match kind {
            "groupoid" => Ok(BodyAcc::Groupoid(GroupoidAcc::new())),
            "xmod" => Ok(BodyAcc::XMod(XModAcc::new())),
            "dgpd" => Ok(BodyAcc::Dgpd(DgpdAcc::new())),
            other => Err(err(no, format!("unknown embedded kind `{other}`"))),
        }
    }

    fn take(&mut self, l: Line) -> Result<(), ParseError> {
        match self {
            BodyAcc::Groupoid(a) => a.take(l),
            BodyAcc::XMod(a) => a.take(l),
            BodyAcc::Dgpd(a) => a.take(l),
        }
    }
}

fn tokenize(text: &str) -> Result<(String, Vec<Line>), ParseError> {
    let mut lines = Vec::new();
    let mut kind: Option<(usize, String)> = None;
    let mut format_seen = false;
    let mut ended = false;
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if ended {
            return Err(err(no, "content after the end line"));
        }
        let mut toks = t.split_whitespace().map(|s| s.to_owned());
        let kw = toks.next().expect("non-empty line has a token");
        let args: Vec<String> = toks.collect();
        match kind {
            None => {
                if kw != "kind" || args.len() != 1 {
                    return Err(err(no, "document must start with `kind <kind>`"));
                }
                kind = Some((no, args[0].clone()));
            }
            Some((_, ref k)) => {
                if !format_seen {
                    if kw != "format" || args.len() != 1 {
                        return Err(err(no, "expected `format 1` after the kind line"));
                    }
                    if args[0] != "1" {
                        return Err(err(no, format!("unsupported format `{}`", args[0])));
                    }
                    format_seen = true;
                } else if kw == "end" {
                    if args.len() != 1 || &args[0] != k {
                        return Err(err(no, format!("expected `end {k}`")));
                    }
                    ended = true;
                } else {
                    lines.push(Line { no, kw, args });
                }
            }
        }
    }
    let Some((kno, kind)) = kind else {
        return Err(err(1, "empty document"));
    };
    if !format_seen {
        return Err(err(kno, "missing `format 1` line"));
    }
    if !ended {
        return Err(err(kno, format!("missing `end {kind}` line")));
    }
    Ok((kind, lines))
}

/// Parses a structure document. Syntax and id-resolution errors are
/// reported with their line; axiom checking is the validators' job.
pub fn parse(text: &str) -> Result<StructureDocument, ParseError> {
    let (kind, lines) = tokenize(text)?;
    match kind.as_str() {
        "groupoid" => {
            let mut acc = GroupoidAcc::new();
            for l in lines {
                acc.take(l)?;
            }
            Ok(StructureDocument::Groupoid(acc.finish()?))
        }
        "xmod" => {
            let mut acc = XModAcc::new();
            for l in lines {
                acc.take(l)?;
            }
            Ok(StructureDocument::XMod(acc.finish()?))
        }
        "dgpd" => {
            let mut acc = DgpdAcc::new();
            for l in lines {
                acc.take(l)?;
            }
            Ok(StructureDocument::Dgpd(acc.finish()?))
        }
        "sub-witness" => parse_sub_witness(lines),
        "morphism" => parse_morphism(lines),
        other => Err(err(1, format!("unknown kind `{other}`"))),
    }
}

fn split_of(lines: Vec<Line>) -> Result<(String, Vec<Line>), ParseError> {
    let mut of: Option<String> = None;
    let mut rest = Vec::new();
    for l in lines {
        if l.kw == "of" {
            if l.args.len() != 1 {
                return Err(err(l.no, "`of` takes exactly one kind"));
            }
            if of.is_some() {
                return Err(err(l.no, "duplicate `of` line"));
            }
            of = Some(l.args[0].clone());
        } else {
            rest.push(l);
        }
    }
    let of = of.ok_or_else(|| err(1, "missing `of <kind>` line"))?;
    Ok((of, rest))
}

fn parse_sub_witness(lines: Vec<Line>) -> Result<StructureDocument, ParseError> {
    let (of, lines) = split_of(lines)?;
    let mut parent = BodyAcc::for_kind(&of, 1)?;
    let mut sel_obj = Vec::new();
    let mut sel_arr = Vec::new();
    let mut sel_base = Vec::new();
    let mut sel_mod = Vec::new();
    let mut sel_pt = Vec::new();
    let mut sel_edge = Vec::new();
    let mut sel_sq = Vec::new();
    for l in lines {
        if let Some(rest) = l.kw.strip_prefix("parent.") {
            parent.take(Line {
                no: l.no,
                kw: rest.to_owned(),
                args: l.args,
            })?;
            continue;
        }
        let one = |l: &Line| -> Result<String, ParseError> {
            if l.args.len() != 1 {
                Err(err(l.no, format!("`{}` takes exactly one id", l.kw)))
            } else {
                Ok(l.args[0].clone())
            }
        };
        match (l.kw.as_str(), of.as_str()) {
            ("sel.obj", "groupoid") => sel_obj.push(ObjId::new(one(&l)?)),
            ("sel.arr", "groupoid") => sel_arr.push(ArrowId::new(one(&l)?)),
            ("sel.base", "xmod") => sel_base.push(ArrowId::new(one(&l)?)),
            ("sel.mod", "xmod") => sel_mod.push(ArrowId::new(one(&l)?)),
            ("sel.pt", "dgpd") => sel_pt.push(ObjId::new(one(&l)?)),
            ("sel.edge", "dgpd") => sel_edge.push(ArrowId::new(one(&l)?)),
            ("sel.sq", "dgpd") => sel_sq.push(SquareId::new(one(&l)?)),
            (kw, _) => {
                return Err(err(
                    l.no,
                    format!("unexpected `{kw}` line in a sub-witness of {of}"),
                ))
            }
        }
    }
    let w = match (of.as_str(), parent) {
        ("groupoid", BodyAcc::Groupoid(acc)) => RawSubWitness::Groupoid {
            parent: acc.finish()?,
            objects: sel_obj,
            arrows: sel_arr,
        },
        ("xmod", BodyAcc::XMod(acc)) => RawSubWitness::XMod {
            parent: acc.finish()?,
            base: sel_base,
            module: sel_mod,
        },
        ("dgpd", BodyAcc::Dgpd(acc)) => RawSubWitness::Dgpd {
            parent: acc.finish()?,
            points: sel_pt,
            edges: sel_edge,
            squares: sel_sq,
        },
        _ => unreachable!("accumulator matches kind"),
    };
    Ok(StructureDocument::SubWitness(w))
}

fn parse_morphism(lines: Vec<Line>) -> Result<StructureDocument, ParseError> {
    let (of, lines) = split_of(lines)?;
    if of != "groupoid" && of != "xmod" {
        return Err(err(1, format!("morphisms of `{of}` are not supported")));
    }
    let mut src = BodyAcc::for_kind(&of, 1)?;
    let mut dst = BodyAcc::for_kind(&of, 1)?;
    let mut omap = Vec::new();
    let mut amap = Vec::new();
    let mut bmap = Vec::new();
    let mut mmap = Vec::new();
    for l in lines {
        if let Some(rest) = l.kw.strip_prefix("src.") {
            src.take(Line {
                no: l.no,
                kw: rest.to_owned(),
                args: l.args,
            })?;
            continue;
        }
        if let Some(rest) = l.kw.strip_prefix("dst.") {
            dst.take(Line {
                no: l.no,
                kw: rest.to_owned(),
                args: l.args,
            })?;
            continue;
        }
        let two = |l: &Line| -> Result<(String, String), ParseError> {
            if l.args.len() != 2 {
                Err(err(l.no, format!("`{}` takes exactly two ids", l.kw)))
            } else {
                Ok((l.args[0].clone(), l.args[1].clone()))
            }
        };
        match (l.kw.as_str(), of.as_str()) {
            ("omap", _) => {
                let (a, b) = two(&l)?;
                omap.push((ObjId::new(a), ObjId::new(b)));
            }
            ("amap", "groupoid") => {
                let (a, b) = two(&l)?;
                amap.push((ArrowId::new(a), ArrowId::new(b)));
            }
            ("bmap", "xmod") => {
                let (a, b) = two(&l)?;
                bmap.push((ArrowId::new(a), ArrowId::new(b)));
            }
            ("mmap", "xmod") => {
                let (a, b) = two(&l)?;
                mmap.push((ArrowId::new(a), ArrowId::new(b)));
            }
            (kw, _) => {
                return Err(err(
                    l.no,
                    format!("unexpected `{kw}` line in a morphism of {of}"),
                ))
            }
        }
    }
    let m = match (of.as_str(), src, dst) {
        ("groupoid", BodyAcc::Groupoid(s), BodyAcc::Groupoid(d)) => RawMorphism::Groupoid {
            source: s.finish()?,
            target: d.finish()?,
            object_map: omap,
            arrow_map: amap,
        },
        ("xmod", BodyAcc::XMod(s), BodyAcc::XMod(d)) => RawMorphism::XMod {
            source: s.finish()?,
            target: d.finish()?,
            object_map: omap,
            base_map: bmap,
            module_map: mmap,
        },
        _ => unreachable!("accumulators match kind"),
    };
    Ok(StructureDocument::Morphism(m))
}

impl fmt::Display for StructureDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize(self))
    }
}
