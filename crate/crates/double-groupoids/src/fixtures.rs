//! Builtin example structures.
//!
//! Small, exhaustively checkable groupoids and crossed modules used by the
//! examples, the test suites and the `gen` CLI command. Every constructor
//! returns a validated structure.

use std::collections::BTreeSet;

use crate::groupoid::{
    check_subgroupoid, validate_groupoid, FiniteGroupoid, GroupoidError, RawArrow, RawGroupoid,
    SubgroupoidWitness,
};
use crate::id::{ArrowId, ObjId};
use crate::xmod::{inclusion_xmod, CrossedModule, XModError};

fn pad_width(n: usize) -> usize {
    n.saturating_sub(1).to_string().len()
}

/// Cyclic group of order `n` as a one-object groupoid. The object is `o`,
/// the arrows `g0 … g{n-1}` with `gi ∘ gj = g{(i+j) mod n}`.
pub fn cyclic(n: usize) -> FiniteGroupoid {
    assert!(n >= 1, "cyclic group needs at least the identity");
    let w = pad_width(n);
    let name = |i: usize| ArrowId::new(format!("g{i:0w$}"));
    let raw = RawGroupoid {
        objects: vec!["o".into()],
        arrows: (0..n).map(|i| RawArrow::new(name(i), "o", "o")).collect(),
        identities: vec![("o".into(), name(0))],
        compose: (0..n)
            .flat_map(|i| (0..n).map(move |j| (name(i), name(j), name((i + j) % n))))
            .collect(),
    };
    validate_groupoid(&raw).expect("cyclic fixture is valid")
}

const S3_NAMES: [&str; 6] = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"];
const S3_PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [1, 0, 2],
    [2, 1, 0],
    [0, 2, 1],
    [1, 2, 0],
    [2, 0, 1],
];

#[derive(thiserror::Error, Debug)]
pub enum FixtureError {
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("bad fixture parameters: {0}")]
    BadParams(String),
}

/// The symmetric group S₃ as a one-object groupoid, arrows named in cycle
/// notation. Composition is diagrammatic: `σ∘τ` applies `σ` first.
pub fn symmetric3() -> FiniteGroupoid {
    let compose_perm = |s: &[usize; 3], t: &[usize; 3]| [t[s[0]], t[s[1]], t[s[2]]];
    let index_of = |p: &[usize; 3]| {
        S3_PERMS
            .iter()
            .position(|q| q == p)
            .expect("S3 is closed under composition")
    };
    let raw = RawGroupoid {
        objects: vec!["o".into()],
        arrows: S3_NAMES
            .iter()
            .map(|n| RawArrow::new(*n, "o", "o"))
            .collect(),
        identities: vec![("o".into(), "e".into())],
        compose: (0..6)
            .flat_map(|i| {
                (0..6).map(move |j| {
                    let k = index_of(&compose_perm(&S3_PERMS[i], &S3_PERMS[j]));
                    (
                        ArrowId::new(S3_NAMES[i]),
                        ArrowId::new(S3_NAMES[j]),
                        ArrowId::new(S3_NAMES[k]),
                    )
                })
            })
            .collect(),
    };
    validate_groupoid(&raw).expect("S3 fixture is valid")
}

/// The interval groupoid: two objects `x`, `y`, one arrow each way.
pub fn interval() -> FiniteGroupoid {
    let raw = RawGroupoid {
        objects: vec!["x".into(), "y".into()],
        arrows: vec![
            RawArrow::new("1x", "x", "x"),
            RawArrow::new("1y", "y", "y"),
            RawArrow::new("i", "x", "y"),
            RawArrow::new("j", "y", "x"),
        ],
        identities: vec![("x".into(), "1x".into()), ("y".into(), "1y".into())],
        compose: vec![
            ("1x".into(), "1x".into(), "1x".into()),
            ("1x".into(), "i".into(), "i".into()),
            ("1y".into(), "1y".into(), "1y".into()),
            ("1y".into(), "j".into(), "j".into()),
            ("i".into(), "1y".into(), "i".into()),
            ("i".into(), "j".into(), "1x".into()),
            ("j".into(), "1x".into(), "j".into()),
            ("j".into(), "i".into(), "1y".into()),
        ],
    };
    validate_groupoid(&raw).expect("interval fixture is valid")
}

/// The discrete groupoid on `n` objects: identities only.
pub fn discrete(n: usize) -> FiniteGroupoid {
    let w = pad_width(n);
    let raw = RawGroupoid {
        objects: (0..n).map(|i| ObjId::new(format!("o{i:0w$}"))).collect(),
        arrows: (0..n)
            .map(|i| {
                RawArrow::new(
                    format!("i{i:0w$}"),
                    format!("o{i:0w$}"),
                    format!("o{i:0w$}"),
                )
            })
            .collect(),
        identities: (0..n)
            .map(|i| {
                (
                    ObjId::new(format!("o{i:0w$}")),
                    ArrowId::new(format!("i{i:0w$}")),
                )
            })
            .collect(),
        compose: (0..n)
            .map(|i| {
                let a = ArrowId::new(format!("i{i:0w$}"));
                (a.clone(), a.clone(), a)
            })
            .collect(),
    };
    validate_groupoid(&raw).expect("discrete fixture is valid")
}

/// Disjoint union of two groupoids. The id namespaces must already be
/// disjoint; colliding ids are an error.
pub fn disjoint_union(
    a: &FiniteGroupoid,
    b: &FiniteGroupoid,
) -> Result<FiniteGroupoid, GroupoidError> {
    let (mut raw, rb) = (a.to_raw(), b.to_raw());
    raw.objects.extend(rb.objects);
    raw.arrows.extend(rb.arrows);
    raw.identities.extend(rb.identities);
    raw.compose.extend(rb.compose);
    validate_groupoid(&raw)
}

/// Renames every id of a groupoid with a prefix. Used to make unions
/// disjoint and by the relabelling property tests.
pub fn prefixed(g: &FiniteGroupoid, prefix: &str) -> FiniteGroupoid {
    let mut raw = g.to_raw();
    let po = |x: &ObjId| ObjId::new(format!("{prefix}{x}"));
    let pa = |a: &ArrowId| ArrowId::new(format!("{prefix}{a}"));
    for x in &mut raw.objects {
        *x = po(x);
    }
    for a in &mut raw.arrows {
        a.id = pa(&a.id);
        a.src = po(&a.src);
        a.dst = po(&a.dst);
    }
    for (x, e) in &mut raw.identities {
        *x = po(x);
        *e = pa(e);
    }
    for (f, g2, h) in &mut raw.compose {
        *f = pa(f);
        *g2 = pa(g2);
        *h = pa(h);
    }
    validate_groupoid(&raw).expect("prefixing preserves validity")
}

/// The subgroupoid generated by a set of arrows: closure under inverses and
/// composition, plus the identities of every touched object.
pub fn generated_subgroupoid(
    g: &FiniteGroupoid,
    generators: &[ArrowId],
) -> Result<SubgroupoidWitness, GroupoidError> {
    let mut arrows: BTreeSet<ArrowId> = BTreeSet::new();
    let mut stack: Vec<ArrowId> = Vec::new();
    for a in generators {
        if !g.has_arrow(a) {
            return Err(GroupoidError::DanglingId {
                context: "subgroupoid generator".into(),
                id: a.to_string(),
            });
        }
        if arrows.insert(a.clone()) {
            stack.push(a.clone());
        }
    }
    let mut objects: BTreeSet<ObjId> = BTreeSet::new();
    while let Some(a) = stack.pop() {
        objects.insert(g.src_of(&a).unwrap().clone());
        objects.insert(g.dst_of(&a).unwrap().clone());
        let candidates: Vec<ArrowId> = arrows.iter().cloned().collect();
        let inv = g.inverse_of(&a).unwrap().clone();
        if arrows.insert(inv.clone()) {
            stack.push(inv);
        }
        for b in candidates {
            for c in [g.compose(&a, &b), g.compose(&b, &a)].into_iter().flatten() {
                if arrows.insert(c.clone()) {
                    stack.push(c.clone());
                }
            }
        }
    }
    for x in &objects {
        arrows.insert(g.identity_of(x).unwrap().clone());
    }
    check_subgroupoid(g, &objects, &arrows)
}

/// The wide subgroupoid of all identities.
pub fn identity_subgroupoid(g: &FiniteGroupoid) -> SubgroupoidWitness {
    let objects: BTreeSet<ObjId> = g.objects().iter().cloned().collect();
    let arrows: BTreeSet<ArrowId> = g
        .objects()
        .iter()
        .map(|x| g.identity_of(x).unwrap().clone())
        .collect();
    check_subgroupoid(g, &objects, &arrows).expect("identities form a subgroupoid")
}

/// The whole groupoid as a witness over itself.
pub fn full_subgroupoid(g: &FiniteGroupoid) -> SubgroupoidWitness {
    check_subgroupoid(
        g,
        &g.objects().iter().cloned().collect(),
        &g.arrow_ids().iter().cloned().collect(),
    )
    .expect("whole groupoid is a subgroupoid")
}

/// Conjugation crossed module of a totally intransitive normal
/// subgroupoid: boundary is the inclusion, action is conjugation.
pub fn conj_xmod(
    g: &FiniteGroupoid,
    h: &SubgroupoidWitness,
) -> Result<CrossedModule, XModError> {
    inclusion_xmod(g, h)
}

/// `X2`: the identity crossed module on C₂ (conjugation is trivial).
pub fn x2() -> CrossedModule {
    let g = cyclic(2);
    conj_xmod(&g, &full_subgroupoid(&g)).expect("X2 is a crossed module")
}

/// The identity crossed module on C₄ with conjugation action.
pub fn c4_conj() -> CrossedModule {
    let g = cyclic(4);
    conj_xmod(&g, &full_subgroupoid(&g)).expect("C4 conjugation is a crossed module")
}

/// The identity crossed module on S₃ with conjugation action.
pub fn s3_conj() -> CrossedModule {
    let g = symmetric3();
    conj_xmod(&g, &full_subgroupoid(&g)).expect("S3 conjugation is a crossed module")
}

/// Resolves a fixture reference token: `interval`, `cyclic:N`,
/// `symmetric:3` or `discrete:N`.
fn groupoid_ref(token: &str) -> Result<FiniteGroupoid, FixtureError> {
    let bad = |msg: String| FixtureError::BadParams(msg);
    let mut it = token.split(':');
    let head = it.next().unwrap_or("");
    let arg = it.next();
    if it.next().is_some() {
        return Err(bad(format!("malformed fixture reference `{token}`")));
    }
    match (head, arg) {
        ("interval", None) => Ok(interval()),
        ("cyclic", Some(n)) => {
            let n: usize = n
                .parse()
                .map_err(|_| bad(format!("cyclic order `{n}` is not a number")))?;
            if n == 0 {
                return Err(bad("cyclic order must be at least 1".into()));
            }
            Ok(cyclic(n))
        }
        ("symmetric", Some("3")) => Ok(symmetric3()),
        ("symmetric", Some(n)) => Err(bad(format!("symmetric:{n} is not built in; only 3"))),
        ("discrete", Some(n)) => {
            let n: usize = n
                .parse()
                .map_err(|_| bad(format!("discrete size `{n}` is not a number")))?;
            Ok(discrete(n))
        }
        _ => Err(FixtureError::UnknownFixture(token.to_owned())),
    }
}

/// Resolves a subgroupoid selector against a groupoid reference:
/// `full`, `triv`, `a3` (for `symmetric:3`) or a generator index `k`
/// (for `cyclic:N`, the subgroup generated by `g_k`).
fn subgroupoid_ref(
    g: &FiniteGroupoid,
    gtoken: &str,
    sel: &str,
) -> Result<SubgroupoidWitness, FixtureError> {
    match sel {
        "full" => Ok(full_subgroupoid(g)),
        "triv" => Ok(identity_subgroupoid(g)),
        "a3" if gtoken == "symmetric:3" => {
            generated_subgroupoid(g, &["(123)".into()]).map_err(|e| {
                FixtureError::BadParams(format!("a3 selector failed: {e}"))
            })
        }
        k => {
            if !gtoken.starts_with("cyclic:") {
                return Err(FixtureError::BadParams(format!(
                    "selector `{k}` is not valid for `{gtoken}`"
                )));
            }
            let k: usize = k.parse().map_err(|_| {
                FixtureError::BadParams(format!("selector `{k}` is not a generator index"))
            })?;
            let n = g.arrow_count();
            if k >= n {
                return Err(FixtureError::BadParams(format!(
                    "generator index {k} out of range for order {n}"
                )));
            }
            let w = pad_width(n);
            generated_subgroupoid(g, &[ArrowId::new(format!("g{k:0w$}"))])
                .map_err(|e| FixtureError::BadParams(e.to_string()))
        }
    }
}

/// Builds a named fixture document. Recognized names:
///
/// * `cyclic N`, `symmetric 3`, `interval`, `discrete N` — groupoids;
/// * `disjoint-union REF REF` — groupoid (sides prefixed `a.`/`b.`);
/// * `conj-xmod REF SEL` — inclusion crossed module (`SEL` as in
///   [`subgroupoid_ref`], e.g. `conj-xmod cyclic:4 2` or
///   `conj-xmod symmetric:3 a3`);
/// * `shell REF` / `commshell REF` — `□′` resp. `□` of a groupoid.
pub fn generate(name: &str, params: &[&str]) -> Result<crate::doc::StructureDocument, FixtureError> {
    use crate::doc::StructureDocument;
    let want = |n: usize| -> Result<(), FixtureError> {
        if params.len() != n {
            Err(FixtureError::BadParams(format!(
                "`{name}` takes {n} parameter(s), got {}",
                params.len()
            )))
        } else {
            Ok(())
        }
    };
    match name {
        "cyclic" | "symmetric" | "discrete" => {
            want(1)?;
            Ok(StructureDocument::from(&groupoid_ref(&format!(
                "{name}:{}",
                params[0]
            ))?))
        }
        "interval" => {
            want(0)?;
            Ok(StructureDocument::from(&interval()))
        }
        "disjoint-union" => {
            want(2)?;
            let a = prefixed(&groupoid_ref(params[0])?, "a.");
            let b = prefixed(&groupoid_ref(params[1])?, "b.");
            let u = disjoint_union(&a, &b)
                .map_err(|e| FixtureError::BadParams(e.to_string()))?;
            Ok(StructureDocument::from(&u))
        }
        "conj-xmod" => {
            want(2)?;
            let g = groupoid_ref(params[0])?;
            let h = subgroupoid_ref(&g, params[0], params[1])?;
            let x = conj_xmod(&g, &h).map_err(|e| FixtureError::BadParams(e.to_string()))?;
            Ok(StructureDocument::from(&x))
        }
        "shell" | "commshell" => {
            want(1)?;
            let g = groupoid_ref(params[0])?;
            Ok(StructureDocument::from(&crate::dgpd::shell_dgpd(
                &g,
                name == "commshell",
            )))
        }
        other => Err(FixtureError::UnknownFixture(other.to_owned())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_even_subgroup_of_c4() {
        let g = cyclic(4);
        let w = generated_subgroupoid(&g, &["g2".into()]).unwrap();
        assert_eq!(w.arrows.len(), 2);
        assert!(w.is_normal);
    }

    #[test]
    fn generated_a3_in_s3() {
        let g = symmetric3();
        let w = generated_subgroupoid(&g, &["(123)".into()]).unwrap();
        assert_eq!(w.arrows.len(), 3);
        assert!(w.is_normal);
    }

    #[test]
    fn discrete_union_collision_detected() {
        let a = discrete(2);
        assert!(disjoint_union(&a, &a).is_err());
    }

    #[test]
    fn generate_fixtures_validate() {
        use crate::doc::StructureDocument;
        for (name, params) in [
            ("cyclic", vec!["4"]),
            ("symmetric", vec!["3"]),
            ("interval", vec![]),
            ("discrete", vec!["2"]),
            ("disjoint-union", vec!["cyclic:2", "interval"]),
            ("conj-xmod", vec!["symmetric:3", "a3"]),
            ("conj-xmod", vec!["cyclic:4", "2"]),
            ("shell", vec!["interval"]),
            ("commshell", vec!["cyclic:2"]),
        ] {
            let doc = generate(name, &params).unwrap();
            match doc {
                StructureDocument::Groupoid(raw) => {
                    validate_groupoid(&raw).unwrap();
                }
                StructureDocument::XMod(raw) => {
                    crate::xmod::validate_xmod(&raw).unwrap();
                }
                StructureDocument::Dgpd(raw) => {
                    crate::dgpd::validate_dgpd(&raw).unwrap();
                }
                other => panic!("unexpected document kind {}", other.kind()),
            }
        }
    }

    #[test]
    fn generate_rejects_unknown_and_bad_params() {
        assert!(matches!(
            generate("heisenberg", &[]),
            Err(FixtureError::UnknownFixture(_))
        ));
        assert!(matches!(
            generate("cyclic", &["many"]),
            Err(FixtureError::BadParams(_))
        ));
        assert!(matches!(
            generate("conj-xmod", &["symmetric:3", "2"]),
            Err(FixtureError::BadParams(_))
        ));
    }
}
