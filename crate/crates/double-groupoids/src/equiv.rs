//! The equivalence between crossed modules over groupoids and double
//! groupoids with thin structures.
//!
//! `lambda` sends a crossed module `μ: M → P` to the double groupoid whose
//! squares are the pairs `(m; (a, c, b, d))` with `μ(m) = b⁻¹a⁻¹cd` — a
//! module element hanging at the bottom-right corner of a shell whose
//! boundary word it bounds. `gamma` sends a thin-structured double groupoid
//! back: the module consists of the squares with identity left, bottom and
//! right faces, the boundary is the top face, and the action conjugates by
//! vertical degeneracies, `u^a = ε₁(a⁻¹) +₂ u +₂ ε₁(a)`.
//!
//! `fold` normalizes an arbitrary square to one with three identity faces
//! by composing with thin squares; it realizes one direction of the
//! natural isomorphism `λγ ≅ 1` that `roundtrip_dgpd` checks extensionally
//! (`roundtrip_xmod` checks `γλ ≅ 1`). The `transfer_*` functions carry
//! normal sub-structures across the equivalence in both directions.

use std::collections::{BTreeSet, HashMap};

use crate::dgpd::{
    check_sub_dgpd, validate_dgpd_morphism, DGpdMorphism, DgpdError, DoubleGroupoid, Square,
    SubDGpdWitness, ThinStructure,
};
use crate::groupoid::RawGroupoid;
use crate::id::{join_id, ArrowId, SquareId};
use crate::report::{Report, Violation};
use crate::xmod::{
    check_sub_xmod, validate_xmod, validate_xmod_morphism, CrossedModule, RawXMod, SubXModWitness,
    XModError, XModMorphism,
};

/// The double groupoid `λ(X)` together with the payload of every square:
/// which module element and which shell it packages.
pub struct LambdaImage {
    dgpd: DoubleGroupoid,
    xmod: CrossedModule,
    /// Module arrow index per square.
    square_m: Vec<u32>,
    /// `(left, top, bottom, right)` base arrow indices per square.
    square_shell: Vec<[u32; 4]>,
    by_payload: HashMap<(u32, [u32; 4]), u32>,
}

impl LambdaImage {
    pub fn dgpd(&self) -> &DoubleGroupoid {
        &self.dgpd
    }

    pub fn xmod(&self) -> &CrossedModule {
        &self.xmod
    }

    pub fn into_dgpd(self) -> DoubleGroupoid {
        self.dgpd
    }

    /// The module element packaged in a square.
    pub fn m_of(&self, u: &SquareId) -> Option<&ArrowId> {
        let i = self.dgpd.square_index(u)?;
        Some(self.xmod.module().arrow_id(self.square_m[i as usize]))
    }

    /// The square packaging `(m; (left, top, bottom, right))`.
    pub fn square_for(
        &self,
        m: &ArrowId,
        left: &ArrowId,
        top: &ArrowId,
        bottom: &ArrowId,
        right: &ArrowId,
    ) -> Option<&SquareId> {
        let mi = self.xmod.module().arrow_index(m)?;
        let base = self.xmod.base();
        let key = [
            base.arrow_index(left)?,
            base.arrow_index(top)?,
            base.arrow_index(bottom)?,
            base.arrow_index(right)?,
        ];
        Some(self.dgpd.square_id(*self.by_payload.get(&(mi, key))?))
    }

    /// Total number of squares.
    pub fn square_count(&self) -> usize {
        self.dgpd.square_count()
    }
}

/// The functor `λ`: builds the thin-structured double groupoid of a
/// crossed module. Squares are all `(m; (a, c, b, d))` with
/// `μ(m) = b⁻¹a⁻¹cd`; compositions follow
/// `(m; (a,c,b,d)) +₂ (n; (d,g,f,h)) = (m^f+n; (a,cg,bf,h))` and
/// `(m; (a,c,b,d)) +₁ (n; (f,b,g,h)) = (n+m^h; (af,c,g,dh))`; the thin
/// structure sends a commutative shell to its zero square.
pub fn lambda(x: &CrossedModule) -> LambdaImage {
    let edges = x.base().clone();
    let base = x.base();
    let module = x.module();
    let bcore = base.core();

    // fibers of μ over each base loop
    let mut fiber: HashMap<u32, Vec<u32>> = HashMap::new();
    for m in 0..module.arrow_count() as u32 {
        fiber.entry(x.boundary_idx(m)).or_default().push(m);
    }

    let shells = crate::dgpd::enumerate_shells(base, false);
    let mut squares = Vec::new();
    let mut square_m = Vec::new();
    let mut square_shell = Vec::new();
    let mut by_payload = HashMap::new();
    for [a, c, b, d] in shells {
        // boundary word b⁻¹ a⁻¹ c d, a loop at the bottom-right corner
        let word = bcore
            .compose(bcore.inv[b as usize], bcore.inv[a as usize])
            .and_then(|t| bcore.compose(t, c))
            .and_then(|t| bcore.compose(t, d))
            .expect("boundary word of a shell is defined");
        let Some(ms) = fiber.get(&word) else { continue };
        for &m in ms {
            let id = SquareId::new(join_id(&[
                module.arrow_id(m).as_str(),
                base.arrow_id(a).as_str(),
                base.arrow_id(c).as_str(),
                base.arrow_id(b).as_str(),
                base.arrow_id(d).as_str(),
            ]));
            let i = squares.len() as u32;
            squares.push(Square {
                id,
                top: c,
                bottom: b,
                left: a,
                right: d,
            });
            square_m.push(m);
            square_shell.push([a, c, b, d]);
            by_payload.insert((m, [a, c, b, d]), i);
        }
    }

    let n = squares.len();
    let mut by_left: Vec<Vec<u32>> = vec![Vec::new(); base.arrow_count()];
    let mut by_top: Vec<Vec<u32>> = vec![Vec::new(); base.arrow_count()];
    for (i, s) in squares.iter().enumerate() {
        by_left[s.left as usize].push(i as u32);
        by_top[s.top as usize].push(i as u32);
    }

    let mcore = module.core();
    let mut hcomp = HashMap::new();
    for u in 0..n as u32 {
        let [a, c, b, d] = square_shell[u as usize];
        let mu = square_m[u as usize];
        debug_assert_eq!(squares[u as usize].right, d);
        for &v in &by_left[d as usize] {
            let [_, g, f, h] = square_shell[v as usize];
            let mf = x.act_idx(mu, f).expect("action is total");
            let m2 = mcore
                .compose(mf, square_m[v as usize])
                .expect("module loops compose");
            let shell = [
                a,
                bcore.compose(c, g).expect("tops compose"),
                bcore.compose(b, f).expect("bottoms compose"),
                h,
            ];
            let w = *by_payload.get(&(m2, shell)).expect("lambda +2 composite exists");
            hcomp.insert((u, v), w);
        }
    }
    let mut vcomp = HashMap::new();
    for u in 0..n as u32 {
        let [a, c, b, d] = square_shell[u as usize];
        let mu = square_m[u as usize];
        for &v in &by_top[b as usize] {
            let [f, _, g, h] = square_shell[v as usize];
            let mh = x.act_idx(mu, h).expect("action is total");
            let m2 = mcore
                .compose(square_m[v as usize], mh)
                .expect("module loops compose");
            let shell = [
                bcore.compose(a, f).expect("lefts compose"),
                c,
                g,
                bcore.compose(d, h).expect("rights compose"),
            ];
            let w = *by_payload.get(&(m2, shell)).expect("lambda +1 composite exists");
            vcomp.insert((u, v), w);
        }
    }

    let mut hident = vec![0u32; base.arrow_count()];
    let mut vident = vec![0u32; base.arrow_count()];
    for a in 0..base.arrow_count() as u32 {
        let (xo, yo) = (bcore.src[a as usize], bcore.dst[a as usize]);
        let (ix, iy) = (bcore.ident[xo as usize], bcore.ident[yo as usize]);
        let zero = module.ident_idx(yo);
        hident[a as usize] = by_payload[&(zero, [a, ix, iy, a])];
        vident[a as usize] = by_payload[&(zero, [ix, a, a, iy])];
    }

    let mut thin_map = HashMap::new();
    let mut is_thin = vec![false; n];
    for shell in crate::dgpd::enumerate_shells(base, true) {
        let q = bcore.dst[shell[2] as usize];
        let s = by_payload[&(module.ident_idx(q), shell)];
        thin_map.insert(shell, s);
        is_thin[s as usize] = true;
    }

    let dgpd = DoubleGroupoid::from_parts(
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
    );
    LambdaImage {
        dgpd,
        xmod: x.clone(),
        square_m,
        square_shell,
        by_payload,
    }
}

/// The functor `γ`: extracts the crossed module of a thin-structured
/// double groupoid. The module at `x` consists of the squares whose left,
/// bottom and right faces are `1ₓ`, composed by `+₂`; the boundary is the
/// top face; the action is conjugation by vertical degeneracies. The
/// result is fully re-validated.
pub fn gamma(g: &DoubleGroupoid) -> Result<CrossedModule, DgpdError> {
    if !g.has_thin_structure() {
        return Err(DgpdError::NoThinStructure);
    }
    let edges = g.edges();
    let ecore = edges.core();

    // module squares: left = bottom = right = the identity of one object
    let mut member: Vec<Option<u32>> = Vec::with_capacity(g.square_count());
    for i in 0..g.square_count() as u32 {
        let s = g.square(i);
        let e = s.left;
        let is_m = ecore.src[e as usize] == ecore.dst[e as usize]
            && ecore.ident[ecore.src[e as usize] as usize] == e
            && s.bottom == e
            && s.right == e;
        member.push(is_m.then_some(ecore.src[e as usize]));
    }

    let graw = edges.to_raw();
    let mut module_arrows = Vec::new();
    let mut identities = Vec::new();
    let mut compose = Vec::new();
    let mut boundary = Vec::new();
    let mut action = Vec::new();

    let m_squares: Vec<u32> = (0..g.square_count() as u32)
        .filter(|&i| member[i as usize].is_some())
        .collect();
    for &i in &m_squares {
        let xo = member[i as usize].unwrap();
        let id = ArrowId::new(g.square_id(i).as_str());
        module_arrows.push(crate::groupoid::RawArrow {
            id: id.clone(),
            src: edges.object_id(xo).clone(),
            dst: edges.object_id(xo).clone(),
        });
        boundary.push((id, edges.arrow_id(g.square(i).top).clone()));
    }
    for xo in 0..edges.object_count() as u32 {
        let e = ecore.ident[xo as usize];
        let z = g.vident_idx(e);
        if member[z as usize].is_none() {
            return Err(DgpdError::Axioms(gamma_failure(
                g,
                "gamma-zero",
                vec![g.square_id(z).to_string()],
                "ε(1ₓ) is not a module square",
            )));
        }
        identities.push((
            edges.object_id(xo).clone(),
            ArrowId::new(g.square_id(z).as_str()),
        ));
    }
    for &u in &m_squares {
        for &v in &m_squares {
            if member[u as usize] != member[v as usize] {
                continue;
            }
            let Some(w) = g.hcomp_idx(u, v) else {
                return Err(DgpdError::Axioms(gamma_failure(
                    g,
                    "gamma-compose",
                    vec![g.square_id(u).to_string(), g.square_id(v).to_string()],
                    "module squares do not compose under +₂",
                )));
            };
            compose.push((
                ArrowId::new(g.square_id(u).as_str()),
                ArrowId::new(g.square_id(v).as_str()),
                ArrowId::new(g.square_id(w).as_str()),
            ));
        }
    }

    // action: u^a = ε₁(a⁻¹) +₂ u +₂ ε₁(a)
    for &u in &m_squares {
        let xo = member[u as usize].unwrap();
        for a in 0..edges.arrow_count() as u32 {
            if ecore.src[a as usize] != xo {
                continue;
            }
            let conj = g
                .hcomp_idx(g.vident_idx(ecore.inv[a as usize]), u)
                .and_then(|t| g.hcomp_idx(t, g.vident_idx(a)));
            let Some(r) = conj else {
                return Err(DgpdError::Axioms(gamma_failure(
                    g,
                    "gamma-action",
                    vec![g.square_id(u).to_string(), edges.arrow_id(a).to_string()],
                    "degeneracy conjugate is undefined",
                )));
            };
            if member[r as usize].is_none() {
                return Err(DgpdError::Axioms(gamma_failure(
                    g,
                    "gamma-action",
                    vec![g.square_id(u).to_string(), edges.arrow_id(a).to_string()],
                    "degeneracy conjugate is not a module square",
                )));
            }
            action.push((
                ArrowId::new(g.square_id(u).as_str()),
                edges.arrow_id(a).clone(),
                ArrowId::new(g.square_id(r).as_str()),
            ));
        }
    }

    let raw = RawXMod {
        base: graw.clone(),
        module: RawGroupoid {
            objects: graw.objects.clone(),
            arrows: module_arrows,
            identities,
            compose,
        },
        boundary,
        action,
    };
    validate_xmod(&raw).map_err(DgpdError::XMod)
}

fn gamma_failure(
    _g: &DoubleGroupoid,
    law: &str,
    witness: Vec<String>,
    detail: &str,
) -> crate::report::ValidationReport {
    let mut r = crate::report::ValidationReport::new("gamma");
    r.push(Violation::new(law, witness, detail));
    r
}

/// Folds a square to its normal form with identity left, bottom and right
/// faces: `⊖(1,b⁻¹,1,b) +₂ [(⊖(1,a⁻¹,1,a) +₂ u +₂ ⊖(d,d,1,1)) +₁ ⊖(b,b,1,1)]`,
/// whose top face is the boundary word `b⁻¹a⁻¹cd`. On module squares fold
/// is the identity; on thin squares it is the zero element.
pub fn fold(g: &DoubleGroupoid, u: &SquareId) -> Result<SquareId, DgpdError> {
    if !g.has_thin_structure() {
        return Err(DgpdError::NoThinStructure);
    }
    let ui = g.square_index(u).ok_or_else(|| DgpdError::UnknownSquare {
        id: u.to_string(),
    })?;
    let edges = g.edges();
    let ecore = edges.core();
    let s = g.square(ui);
    let (a, b, d) = (s.left, s.bottom, s.right);
    let y = ecore.dst[a as usize];
    let w = ecore.dst[b as usize];
    let (iy, iw) = (ecore.ident[y as usize], ecore.ident[w as usize]);
    let (ia, ib) = (ecore.inv[a as usize], ecore.inv[b as usize]);

    let thin = |key: [u32; 4], what: &str| {
        g.thin_idx(&key).ok_or_else(|| {
            DgpdError::Axioms(gamma_failure(
                g,
                "fold-thin",
                vec![u.to_string()],
                &format!("missing thin square for the {what} shell"),
            ))
        })
    };
    let hc = |x: u32, yq: u32| {
        g.hcomp_idx(x, yq).ok_or_else(|| {
            DgpdError::Axioms(gamma_failure(
                g,
                "fold-compose",
                vec![u.to_string()],
                "fold composite is undefined",
            ))
        })
    };

    let ta = thin([iy, ia, iy, a], "left-unwinding")?;
    let td = thin([d, d, iw, iw], "right-unwinding")?;
    let te = thin([b, b, iw, iw], "bottom-unwinding")?;
    let tb = thin([iw, ib, iw, b], "top-normalizing")?;

    let s1 = hc(ta, ui)?;
    let s2 = hc(s1, td)?;
    let s3 = g.vcomp_idx(s2, te).ok_or_else(|| {
        DgpdError::Axioms(gamma_failure(
            g,
            "fold-compose",
            vec![u.to_string()],
            "fold composite is undefined",
        ))
    })?;
    let out = hc(tb, s3)?;
    Ok(g.square_id(out).clone())
}

/// Direction of a round-trip check.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RoundTripDirection {
    /// `γλ ≅ 1` on crossed modules.
    GammaLambda,
    /// `λγ ≅ 1` on double groupoids.
    LambdaGamma,
}

/// Outcome of a round-trip check: the constructed comparison morphism and
/// the verdict with witnesses.
pub struct EquivalenceReport {
    pub direction: RoundTripDirection,
    pub report: Report,
    pub xmod_morphism: Option<XModMorphism>,
    pub dgpd_morphism: Option<DGpdMorphism>,
}

impl EquivalenceReport {
    pub fn verdict(&self) -> bool {
        self.report.verdict()
    }

    pub fn render(&self) -> String {
        self.report.render()
    }
}

/// Checks `γ(λ(X)) ≅ X` via the canonical map
/// `m ↦ (m; (1, μ(m), 1, 1))`: totality, levelwise bijectivity, and the
/// crossed-module morphism laws, all exhaustively.
pub fn roundtrip_xmod(x: &CrossedModule) -> EquivalenceReport {
    let mut report = Report::new("roundtrip γλ ≅ 1");
    let img = lambda(x);
    let gx = match gamma(img.dgpd()) {
        Ok(gx) => gx,
        Err(e) => {
            report.check("γ(λ(X)) is a crossed module", false, e.to_string());
            return EquivalenceReport {
                direction: RoundTripDirection::GammaLambda,
                report,
                xmod_morphism: None,
                dgpd_morphism: None,
            };
        }
    };
    report.check(
        "γ(λ(X)) is a crossed module",
        true,
        format!(
            "{} module elements over {} base arrows",
            gx.module().arrow_count(),
            gx.base().arrow_count()
        ),
    );

    // canonical comparison map
    let base = x.base();
    let mut module_map = std::collections::BTreeMap::new();
    let mut total = true;
    for m in x.module().arrow_ids() {
        let p = x.module().src_of(m).unwrap();
        let one = base.identity_of(p).unwrap();
        match img.square_for(m, one, x.boundary_of(m).unwrap(), one, one) {
            Some(sq) => {
                module_map.insert(m.clone(), ArrowId::new(sq.as_str()));
            }
            None => {
                total = false;
                report.witness(Violation::new(
                    "canonical-map",
                    vec![m.to_string()],
                    "no square (m; (1, μ(m), 1, 1)) in λ(X)",
                ));
            }
        }
    }
    report.check("canonical map m ↦ (m; (1, μ(m), 1, 1)) is total", total, "");

    let bijective = total
        && module_map.len() == gx.module().arrow_count()
        && module_map
            .values()
            .collect::<BTreeSet<_>>()
            .len()
            == gx.module().arrow_count()
        && module_map.values().all(|v| gx.module().has_arrow(v));
    report.check(
        "bijective on module elements",
        bijective,
        format!("{} ↔ {}", module_map.len(), gx.module().arrow_count()),
    );
    let base_equal = gx.base() == x.base();
    report.check("identity on the base groupoid", base_equal, "");

    let morphism = XModMorphism {
        object_map: base
            .objects()
            .iter()
            .map(|o| (o.clone(), o.clone()))
            .collect(),
        base_map: base
            .arrow_ids()
            .iter()
            .map(|a| (a.clone(), a.clone()))
            .collect(),
        module_map,
    };
    if total {
        match validate_xmod_morphism(x, &gx, &morphism) {
            Ok(()) => report.check("crossed module morphism laws", true, ""),
            Err(XModError::Axioms(r)) => {
                report.check("crossed module morphism laws", false, "");
                for v in r.violations() {
                    report.witness(v);
                }
            }
            Err(e) => report.check("crossed module morphism laws", false, e.to_string()),
        }
    }

    EquivalenceReport {
        direction: RoundTripDirection::GammaLambda,
        report,
        xmod_morphism: Some(morphism),
        dgpd_morphism: None,
    }
}

/// Checks `λ(γ(G)) ≅ G` via the comparison map
/// `u ↦ (fold(u); (a, c, b, d))`: totality, bijectivity on squares,
/// identity on points and edges, and the double-groupoid morphism laws
/// including thin preservation, all exhaustively.
pub fn roundtrip_dgpd(g: &DoubleGroupoid) -> Result<EquivalenceReport, DgpdError> {
    let mut report = Report::new("roundtrip λγ ≅ 1");
    let gx = gamma(g)?;
    let img = lambda(&gx);
    report.check(
        "λ(γ(G)) constructed",
        true,
        format!("{} squares", img.square_count()),
    );

    let mut square_map = std::collections::BTreeMap::new();
    let mut total = true;
    for u in g.square_ids() {
        let m = fold(g, u)?;
        let f = g.faces_of(u).unwrap();
        match img.square_for(&ArrowId::new(m.as_str()), f.left, f.top, f.bottom, f.right) {
            Some(sq) => {
                square_map.insert(u.clone(), sq.clone());
            }
            None => {
                total = false;
                report.witness(Violation::new(
                    "canonical-map",
                    vec![u.to_string(), m.to_string()],
                    "(fold(u); shell(u)) is not a square of λ(γ(G))",
                ));
            }
        }
    }
    report.check("comparison map u ↦ (fold(u); shell(u)) is total", total, "");

    let bijective = total
        && square_map.len() == img.square_count()
        && square_map.values().collect::<BTreeSet<_>>().len() == img.square_count();
    report.check(
        "bijective on squares",
        bijective,
        format!("{} ↔ {}", square_map.len(), img.square_count()),
    );
    report.check(
        "identity on points and edges",
        img.dgpd().edges() == g.edges(),
        "",
    );

    let morphism = DGpdMorphism {
        object_map: g
            .edges()
            .objects()
            .iter()
            .map(|o| (o.clone(), o.clone()))
            .collect(),
        edge_map: g
            .edges()
            .arrow_ids()
            .iter()
            .map(|a| (a.clone(), a.clone()))
            .collect(),
        square_map,
    };
    if total {
        match validate_dgpd_morphism(g, img.dgpd(), &morphism) {
            Ok(()) => report.check("double groupoid morphism laws (incl. thin)", true, ""),
            Err(DgpdError::Axioms(r)) => {
                report.check("double groupoid morphism laws (incl. thin)", false, "");
                for v in r.violations() {
                    report.witness(v);
                }
            }
            Err(e) => report.check(
                "double groupoid morphism laws (incl. thin)",
                false,
                e.to_string(),
            ),
        }
    }

    Ok(EquivalenceReport {
        direction: RoundTripDirection::LambdaGamma,
        report,
        xmod_morphism: None,
        dgpd_morphism: Some(morphism),
    })
}

/// Applies `λ` to a crossed-module morphism: squares map by
/// `(m; shell) ↦ (f₂(m); f₁(shell))`.
pub fn lambda_morphism(
    f: &XModMorphism,
    src: &LambdaImage,
    dst: &LambdaImage,
) -> Result<DGpdMorphism, DgpdError> {
    let mut square_map = std::collections::BTreeMap::new();
    for i in 0..src.square_count() as u32 {
        let id = src.dgpd.square_id(i);
        let m = src.xmod.module().arrow_id(src.square_m[i as usize]);
        let [a, c, b, d] = src.square_shell[i as usize];
        let fm = f.module_map.get(m).ok_or_else(|| DgpdError::DanglingId {
            context: "lambda of morphism (module map)".into(),
            id: m.to_string(),
        })?;
        let fe = |e: u32| -> Result<&ArrowId, DgpdError> {
            let a = src.xmod.base().arrow_id(e);
            f.base_map.get(a).ok_or_else(|| DgpdError::DanglingId {
                context: "lambda of morphism (base map)".into(),
                id: a.to_string(),
            })
        };
        let target = dst
            .square_for(fm, fe(a)?, fe(c)?, fe(b)?, fe(d)?)
            .ok_or_else(|| DgpdError::UnknownSquare {
                id: format!("image of {id}"),
            })?;
        square_map.insert(id.clone(), target.clone());
    }
    Ok(DGpdMorphism {
        object_map: f.object_map.clone(),
        edge_map: f.base_map.clone(),
        square_map,
    })
}

/// Carries a normal subcrossed module `(N, Q)` of `X` to the subdouble
/// groupoid of `λ(X)` with squares `(m; shell)`, `m ∈ N`, shell over `Q`.
/// The returned witness re-evaluates all SDG/NDG conditions.
pub fn transfer_normal_sub_to_dgpd(
    img: &LambdaImage,
    w: &SubXModWitness,
) -> Result<SubDGpdWitness, DgpdError> {
    if !w.is_normal {
        return Err(DgpdError::NotNormal(
            "transfer requires a normal subcrossed module".into(),
        ));
    }
    let base = img.xmod.base();
    let module = img.xmod.module();
    let mut base_in = vec![false; base.arrow_count()];
    for a in &w.base_arrows {
        base_in[base.arrow_index(a).expect("witness resolves") as usize] = true;
    }
    let mut mod_in = vec![false; module.arrow_count()];
    for m in &w.module_arrows {
        mod_in[module.arrow_index(m).expect("witness resolves") as usize] = true;
    }
    let squares: BTreeSet<SquareId> = (0..img.square_count() as u32)
        .filter(|&i| {
            mod_in[img.square_m[i as usize] as usize]
                && img.square_shell[i as usize]
                    .iter()
                    .all(|&e| base_in[e as usize])
        })
        .map(|i| img.dgpd.square_id(i).clone())
        .collect();
    check_sub_dgpd(
        &img.dgpd,
        &w.objects,
        &w.base_arrows,
        &squares,
        false,
    )
}

/// Carries a normal subdouble groupoid `(H₂, H₁, H₀)` of `G` back to the
/// subcrossed module of `γ(G)`: `N` is the set of module squares lying in
/// `H₂`, `Q = H₁`. The returned witness re-evaluates all SCM/NCM
/// conditions.
pub fn transfer_normal_sub_to_xmod(
    g: &DoubleGroupoid,
    h: &SubDGpdWitness,
) -> Result<SubXModWitness, DgpdError> {
    if !h.is_normal {
        return Err(DgpdError::NotNormal(
            "transfer requires a normal subdouble groupoid".into(),
        ));
    }
    let gx = gamma(g)?;
    let module_arrows: BTreeSet<ArrowId> = h
        .squares
        .iter()
        .map(|s| ArrowId::new(s.as_str()))
        .filter(|a| gx.module().has_arrow(a))
        .collect();
    check_sub_xmod(&gx, &module_arrows, &h.edges).map_err(DgpdError::XMod)
}
