//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (run with `cargo test --test acceptance -- --nocapture` to see
//! them). Expected values follow the oracles in `common` and the frozen
//! counts computed independently of the construction paths they certify.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use double_groupoids::{
    check_sub_dgpd, check_sub_xmod, check_subgroupoid, cli_dispatch, fixtures, gamma, lambda,
    parse, quotient_dgpd, quotient_groupoid, quotient_xmod, roundtrip_dgpd, roundtrip_xmod,
    serialize, transfer_normal_sub_to_dgpd, transfer_normal_sub_to_xmod, validate_dgpd,
    validate_groupoid, validate_xmod, validate_xmod_morphism, xmod_kernel, ArrowId,
    CrossedModule, DoubleGroupoid, FiniteGroupoid, GroupoidError, LambdaImage, SquareId,
    StructureDocument, SubXModWitness,
};

use common::{find_dgpd_iso, kernel_quotient_cases, v4};

fn criterion(n: u32, name: &str, body: impl FnOnce() -> Result<String, String>) {
    match body() {
        Ok(detail) => println!("ACCEPTANCE criterion {n} ({name}): PASS — {detail}"),
        Err(msg) => {
            println!("ACCEPTANCE criterion {n} ({name}): FAIL — {msg}");
            panic!("criterion {n} ({name}) failed: {msg}");
        }
    }
}

const SUITE_BUDGET: Duration = Duration::from_secs(5);

fn groupoid_fixtures() -> Vec<(String, FiniteGroupoid)> {
    let c2 = fixtures::cyclic(2);
    let i = fixtures::interval();
    vec![
        ("C2".into(), c2.clone()),
        ("C4".into(), fixtures::cyclic(4)),
        ("S3".into(), fixtures::symmetric3()),
        ("I".into(), i.clone()),
        ("discrete2".into(), fixtures::discrete(2)),
        (
            "C2+I".into(),
            fixtures::disjoint_union(&c2, &i).expect("disjoint"),
        ),
        (
            "C2+C2".into(),
            fixtures::disjoint_union(
                &fixtures::prefixed(&c2, "a."),
                &fixtures::prefixed(&c2, "b."),
            )
            .expect("disjoint"),
        ),
    ]
}

fn xmod_fixtures() -> Vec<(String, CrossedModule)> {
    let c4 = fixtures::cyclic(4);
    let s3 = fixtures::symmetric3();
    let i = fixtures::interval();
    vec![
        ("X2".into(), fixtures::x2()),
        ("S3-conj".into(), fixtures::s3_conj()),
        ("C4-conj".into(), fixtures::c4_conj()),
        (
            "incl(C4,<2>)".into(),
            fixtures::conj_xmod(
                &c4,
                &fixtures::generated_subgroupoid(&c4, &["g2".into()]).unwrap(),
            )
            .unwrap(),
        ),
        (
            "incl(S3,A3)".into(),
            fixtures::conj_xmod(
                &s3,
                &fixtures::generated_subgroupoid(&s3, &["(123)".into()]).unwrap(),
            )
            .unwrap(),
        ),
        (
            "incl(I,1)".into(),
            fixtures::conj_xmod(&i, &fixtures::identity_subgroupoid(&i)).unwrap(),
        ),
    ]
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

#[test]
fn criterion_1_axiom_suites() {
    criterion(1, "axiom suites on all builtin fixtures", || {
        let mut suites = 0usize;
        let mut worst = Duration::ZERO;
        let mut check_time = |what: &str, d: Duration| -> Result<(), String> {
            if d > SUITE_BUDGET {
                return Err(format!("suite {what} took {d:?}, over the 5 s budget"));
            }
            if d > worst {
                worst = d;
            }
            Ok(())
        };

        for (name, g) in groupoid_fixtures() {
            let raw = g.to_raw();
            let (res, d) = timed(|| validate_groupoid(&raw));
            res.map_err(|e| format!("validate_groupoid({name}): {e}"))?;
            check_time(&format!("groupoid {name}"), d)?;
            suites += 1;
        }

        for (name, x) in xmod_fixtures() {
            let raw = x.to_raw();
            let (res, d) = timed(|| validate_xmod(&raw));
            res.map_err(|e| format!("validate_xmod({name}): {e}"))?;
            check_time(&format!("xmod {name}"), d)?;
            suites += 1;
        }

        for (name, g) in groupoid_fixtures() {
            for (tag, comm) in [("shell", false), ("commshell", true)] {
                let d = double_groupoids::shell_dgpd(&g, comm);
                let raw = d.to_raw();
                let (res, dt) = timed(|| validate_dgpd(&raw));
                let v = res.map_err(|e| format!("validate_dgpd({tag} {name}): {e}"))?;
                if !v.has_thin_structure() {
                    return Err(format!("{tag}({name}) lost its thin structure"));
                }
                check_time(&format!("dgpd {tag}({name})"), dt)?;
                suites += 1;
            }
        }

        for (name, x) in xmod_fixtures() {
            let img = lambda(&x);
            let raw = img.dgpd().to_raw();
            let (res, dt) = timed(|| validate_dgpd(&raw));
            res.map_err(|e| format!("validate_dgpd(lambda {name}): {e}"))?;
            check_time(&format!("dgpd lambda({name})"), dt)?;
            suites += 1;
        }

        Ok(format!(
            "{suites} validation suites, zero violations, worst suite {worst:?}"
        ))
    });
}

#[test]
fn criterion_2_roundtrips() {
    criterion(2, "Theorem 2.1 round trips", || {
        let xmods = xmod_fixtures();
        if xmods.len() < 5 {
            return Err("need at least 5 crossed modules".into());
        }
        for (name, x) in &xmods {
            if x.base().arrow_count() > 8 || x.module().arrow_count() > 8 {
                return Err(format!("{name} exceeds the size bound"));
            }
            let r = roundtrip_xmod(x);
            if !r.verdict() {
                return Err(format!("roundtrip_xmod({name}):\n{}", r.render()));
            }
        }

        let dgpds: Vec<(String, DoubleGroupoid)> = vec![
            (
                "shell(C2)".into(),
                double_groupoids::shell_dgpd(&fixtures::cyclic(2), false),
            ),
            (
                "commshell(I)".into(),
                double_groupoids::shell_dgpd(&fixtures::interval(), true),
            ),
            ("lambda(X2)".into(), lambda(&fixtures::x2()).into_dgpd()),
            (
                "lambda(S3-conj)".into(),
                lambda(&fixtures::s3_conj()).into_dgpd(),
            ),
        ];
        for (name, d) in &dgpds {
            let r = roundtrip_dgpd(d).map_err(|e| format!("roundtrip_dgpd({name}): {e}"))?;
            if !r.verdict() {
                return Err(format!("roundtrip_dgpd({name}):\n{}", r.render()));
            }
        }
        Ok(format!(
            "{} crossed modules and {} double groupoids, all bijective and structure-preserving",
            xmods.len(),
            dgpds.len()
        ))
    });
}

/// Independent shell-fiber count: enumerates arrow quadruples through the
/// public API only, never through the lambda construction it certifies.
fn square_count_oracle(x: &CrossedModule) -> usize {
    let p = x.base();
    let mut count = 0;
    for a in p.arrow_ids() {
        for c in p.arrow_ids() {
            for b in p.arrow_ids() {
                for d in p.arrow_ids() {
                    let corner_ok = p.src_of(c) == p.src_of(a)
                        && p.src_of(b) == Some(p.dst_of(a).unwrap())
                        && p.src_of(d) == Some(p.dst_of(c).unwrap())
                        && p.dst_of(d) == p.dst_of(b);
                    if !corner_ok {
                        continue;
                    }
                    let word = p
                        .compose(p.inverse_of(b).unwrap(), p.inverse_of(a).unwrap())
                        .and_then(|t| p.compose(t, c))
                        .and_then(|t| p.compose(t, d))
                        .expect("shell word");
                    count += x
                        .module()
                        .arrow_ids()
                        .iter()
                        .filter(|m| x.boundary_of(m) == Some(word))
                        .count();
                }
            }
        }
    }
    count
}

#[test]
fn criterion_3_square_count_identity() {
    criterion(3, "square-count identity for lambda", || {
        let mut checked = 0;
        for (name, x) in xmod_fixtures() {
            let expected = square_count_oracle(&x);
            let got = lambda(&x).square_count();
            if got != expected {
                return Err(format!(
                    "lambda({name}) has {got} squares, shell-fiber sum is {expected}"
                ));
            }
            checked += 1;
        }
        let x2_count = lambda(&fixtures::x2()).square_count();
        if x2_count != 16 {
            return Err(format!("lambda(X2) must have 16 squares, found {x2_count}"));
        }
        Ok(format!("{checked} fixtures, exact equality (lambda(X2) = 16)"))
    });
}

#[test]
fn criterion_4_randomized_quotients() {
    criterion(4, "quotient crossed modules from random kernels", || {
        let cases = kernel_quotient_cases(0xD6, 20);
        if cases.len() < 20 {
            return Err(format!("only {} cases generated", cases.len()));
        }
        for case in &cases {
            validate_xmod_morphism(&case.src, &case.dst, &case.f)
                .map_err(|e| format!("{}: morphism invalid: {e}", case.name))?;
            let w = xmod_kernel(&case.src, &case.dst, &case.f)
                .map_err(|e| format!("{}: kernel failed: {e}", case.name))?;
            if !w.is_normal {
                return Err(format!(
                    "{}: kernel is not a normal subcrossed module: {:?}",
                    case.name, w.failures
                ));
            }
            // quotient_xmod re-validates its output and scans the induced
            // boundary and action over every representative pair
            let q = quotient_xmod(&case.src, &w)
                .map_err(|e| format!("{}: quotient failed: {e}", case.name))?;
            validate_xmod_morphism(&case.src, &q.xmod, &q.projection)
                .map_err(|e| format!("{}: projection invalid: {e}", case.name))?;
        }
        Ok(format!(
            "{} randomized kernels, all quotients validate with exhaustive well-definedness",
            cases.len()
        ))
    });
}

fn canonical_module_image(x: &CrossedModule, w: &SubXModWitness) -> BTreeSet<ArrowId> {
    let rt = roundtrip_xmod(x);
    let map = &rt.xmod_morphism.as_ref().expect("roundtrip built").module_map;
    w.module_arrows.iter().map(|m| map[m].clone()).collect()
}

#[test]
fn criterion_5_normality_transfer() {
    criterion(5, "normality transfers both ways", || {
        // forward: every generated normal subcrossed module
        let cases = kernel_quotient_cases(0xD6, 20);
        let mut forward = 0;
        for case in &cases {
            let w = xmod_kernel(&case.src, &case.dst, &case.f)
                .map_err(|e| format!("{}: kernel: {e}", case.name))?;
            let img = lambda(&case.src);
            let h = transfer_normal_sub_to_dgpd(&img, &w)
                .map_err(|e| format!("{}: transfer to dgpd: {e}", case.name))?;
            if !h.is_normal {
                return Err(format!(
                    "{}: transferred sub is not normal: {:?}",
                    case.name, h.failures
                ));
            }
            let back = transfer_normal_sub_to_xmod(img.dgpd(), &h)
                .map_err(|e| format!("{}: transfer back: {e}", case.name))?;
            if !back.is_normal {
                return Err(format!("{}: transferred-back sub is not normal", case.name));
            }
            if back.base_arrows != w.base_arrows {
                return Err(format!("{}: base arrows changed on the round trip", case.name));
            }
            if back.module_arrows != canonical_module_image(&case.src, &w) {
                return Err(format!(
                    "{}: module arrows do not match the canonical image",
                    case.name
                ));
            }
            forward += 1;
        }

        // converse: shell double groupoids of normal subgroupoids
        let shell_cases: Vec<(&str, FiniteGroupoid, Vec<&str>)> = vec![
            ("C4/<2>", fixtures::cyclic(4), vec!["g2"]),
            ("S3/A3", fixtures::symmetric3(), vec!["(123)"]),
            ("C6/<2>", fixtures::cyclic(6), vec!["g2"]),
            ("C6/<3>", fixtures::cyclic(6), vec!["g3"]),
            ("V4/<a>", v4(), vec!["a"]),
        ];
        let mut converse = 0;
        for (name, g, gens) in shell_cases {
            let h = fixtures::generated_subgroupoid(
                &g,
                &gens.iter().map(|s| ArrowId::new(*s)).collect::<Vec<_>>(),
            )
            .map_err(|e| format!("{name}: {e}"))?;
            if !h.is_normal {
                return Err(format!("{name}: subgroupoid is not normal"));
            }
            let parent = double_groupoids::shell_dgpd(&g, false);
            let squares: BTreeSet<SquareId> = parent
                .square_ids()
                .filter(|s| {
                    let f = parent.faces_of(s).unwrap();
                    [f.top, f.bottom, f.left, f.right]
                        .iter()
                        .all(|e| h.arrows.contains(*e))
                })
                .cloned()
                .collect();
            let hw = check_sub_dgpd(
                &parent,
                &g.objects().iter().cloned().collect(),
                &h.arrows,
                &squares,
                false,
            )
            .map_err(|e| format!("{name}: {e}"))?;
            if !hw.is_normal {
                return Err(format!(
                    "{name}: shell sub is not a normal subdouble groupoid: {:?}",
                    hw.failures
                ));
            }
            let wx = transfer_normal_sub_to_xmod(&parent, &hw)
                .map_err(|e| format!("{name}: transfer to xmod: {e}"))?;
            if !wx.is_normal {
                return Err(format!("{name}: transferred xmod sub is not normal"));
            }
            // and back again, comparing through the λγ ≅ 1 comparison map
            let gx = gamma(&parent).map_err(|e| format!("{name}: gamma: {e}"))?;
            let img = lambda(&gx);
            let h2 = transfer_normal_sub_to_dgpd(&img, &wx)
                .map_err(|e| format!("{name}: transfer back to dgpd: {e}"))?;
            if !h2.is_normal {
                return Err(format!("{name}: re-transferred sub is not normal"));
            }
            let rt = roundtrip_dgpd(&parent).map_err(|e| format!("{name}: roundtrip: {e}"))?;
            if !rt.verdict() {
                return Err(format!("{name}: roundtrip failed"));
            }
            let psi = &rt.dgpd_morphism.as_ref().expect("comparison map").square_map;
            let expected: BTreeSet<SquareId> =
                hw.squares.iter().map(|s| psi[s].clone()).collect();
            if h2.squares != expected {
                return Err(format!("{name}: square sets differ after the round trip"));
            }
            if h2.edges != hw.edges {
                return Err(format!("{name}: edge sets differ after the round trip"));
            }
            converse += 1;
        }
        Ok(format!(
            "{forward} forward transfers and {converse} converse shell transfers, exact round trips"
        ))
    });
}

/// All composable pairs (α, β) with β a selected loop at the right face of
/// α, checked against the conjugation boundary identity.
fn conjugation_identity_scan(
    img: &LambdaImage,
    sub_squares: &BTreeSet<SquareId>,
) -> Result<usize, String> {
    let g = img.dgpd();
    let x = img.xmod();
    let p = x.base();
    let mut checked = 0;
    for alpha in g.square_ids() {
        let fa = g.faces_of(alpha).unwrap();
        let (a, c, b, d) = (fa.left, fa.top, fa.bottom, fa.right);
        for beta in sub_squares {
            let fb = g.faces_of(beta).unwrap();
            if fb.left != d || fb.right != d {
                continue;
            }
            let (f, gg) = (fb.bottom, fb.top);
            // −₂α = ((−m)^{b⁻¹}; (d, c⁻¹, b⁻¹, a))
            let m = img.m_of(alpha).unwrap();
            let minv = x.module().inverse_of(m).unwrap().clone();
            let binv = p.inverse_of(b).unwrap().clone();
            let mi = x.act(&minv, &binv).unwrap().clone();
            let cinv = p.inverse_of(c).unwrap().clone();
            let inv_alpha = img
                .square_for(&mi, d, &cinv, &binv, a)
                .ok_or("inverse square missing")?
                .clone();
            let s = g
                .hcompose(alpha, beta)
                .and_then(|t| g.hcompose(t, &inv_alpha))
                .ok_or("conjugation composite undefined")?
                .clone();
            let lhs = x.boundary_of(img.m_of(&s).unwrap()).unwrap().clone();
            let rhs = p
                .compose(b, &p.inverse_of(f).unwrap().clone())
                .and_then(|t| p.compose(t, &binv))
                .and_then(|t| p.compose(t, p.inverse_of(a).unwrap()))
                .and_then(|t| p.compose(t, c))
                .and_then(|t| p.compose(t, gg))
                .and_then(|t| p.compose(t, &cinv))
                .and_then(|t| p.compose(t, a))
                .ok_or("boundary word undefined")?
                .clone();
            if lhs != rhs {
                return Err(format!(
                    "boundary identity fails at ({alpha}, {beta}): μ = {lhs}, word = {rhs}"
                ));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

#[test]
fn criterion_6_conjugation_boundary_identity() {
    criterion(6, "conjugation boundary identity", || {
        let cases = kernel_quotient_cases(0xD6, 20);
        let mut total = 0;
        for case in cases.iter() {
            let w = xmod_kernel(&case.src, &case.dst, &case.f)
                .map_err(|e| format!("{}: {e}", case.name))?;
            let img = lambda(&case.src);
            let h = transfer_normal_sub_to_dgpd(&img, &w)
                .map_err(|e| format!("{}: {e}", case.name))?;
            total += conjugation_identity_scan(&img, &h.squares)
                .map_err(|e| format!("{}: {e}", case.name))?;
        }
        if total == 0 {
            return Err("no composable pairs were exercised".into());
        }
        Ok(format!(
            "μ(α+₂β−₂α) = bf⁻¹b⁻¹a⁻¹cgc⁻¹a on {total} composable pairs, exact"
        ))
    });
}

#[test]
fn criterion_7_quotient_double_groupoid() {
    criterion(7, "quotient double groupoid of lambda(C4-conj)", || {
        let x = fixtures::c4_conj();
        let img = lambda(&x);
        let w = check_sub_xmod(
            &x,
            &["g0".into(), "g2".into()].into_iter().collect(),
            &["g0".into(), "g2".into()].into_iter().collect(),
        )
        .map_err(|e| e.to_string())?;
        let h = transfer_normal_sub_to_dgpd(&img, &w).map_err(|e| e.to_string())?;
        let q = quotient_dgpd(img.dgpd(), &h).map_err(|e| e.to_string())?;

        let expected = lambda(&fixtures::x2()).into_dgpd();
        let iso = find_dgpd_iso(&q, &expected)
            .ok_or("no isomorphism onto lambda(X2) found")?;
        if iso.square_map.len() != 16 {
            return Err("isomorphism is not a 16-square bijection".into());
        }

        // the edge groupoid is exactly C4/<2> (with its points renamed
        // back to the parent's)
        let c4 = fixtures::cyclic(4);
        let sub = check_subgroupoid(
            &c4,
            &c4.objects().iter().cloned().collect(),
            &["g0".into(), "g2".into()].into_iter().collect(),
        )
        .map_err(|e| e.to_string())?;
        let qg = quotient_groupoid(&c4, &sub).map_err(|e| e.to_string())?;
        let mut raw = qg.groupoid.to_raw();
        for o in &mut raw.objects {
            *o = "o".into();
        }
        for a in &mut raw.arrows {
            a.src = "o".into();
            a.dst = "o".into();
        }
        for (o, _) in &mut raw.identities {
            *o = "o".into();
        }
        let expected_edges = validate_groupoid(&raw).map_err(|e| e.to_string())?;
        if q.edges() != &expected_edges {
            return Err("edge groupoid is not the quotient groupoid C4/<2>".into());
        }
        Ok("isomorphic to lambda(X2), edges are C4/<2> exactly".into())
    });
}

#[test]
fn criterion_8_negative_controls() {
    criterion(8, "negative controls with concrete witnesses", || {
        // {e, (12)} fails NCM1 in the crossed module over S3
        let s3x = fixtures::s3_conj();
        let sub: BTreeSet<ArrowId> = ["e".into(), "(12)".into()].into_iter().collect();
        let w1 = check_sub_xmod(&s3x, &sub, &sub).map_err(|e| e.to_string())?;
        let w2 = check_sub_xmod(&s3x, &sub, &sub).map_err(|e| e.to_string())?;
        if w1.is_normal || w1.ncm[0] {
            return Err("NCM1 unexpectedly holds for {e, (12)}".into());
        }
        let ncm1_witness = w1
            .failures
            .iter()
            .find(|v| v.law == "ncm1")
            .ok_or("no NCM1 witness recorded")?;
        if ncm1_witness.witness.is_empty() {
            return Err("NCM1 witness is empty".into());
        }
        if w1 != w2 {
            return Err("sub-xmod report is not deterministic".into());
        }

        // and NDG1 at the shell double groupoid level
        let s3 = fixtures::symmetric3();
        let parent = double_groupoids::shell_dgpd(&s3, false);
        let squares: BTreeSet<SquareId> = parent
            .square_ids()
            .filter(|s| {
                let f = parent.faces_of(s).unwrap();
                [f.top, f.bottom, f.left, f.right].iter().all(|e| sub.contains(*e))
            })
            .cloned()
            .collect();
        let dw = check_sub_dgpd(
            &parent,
            &s3.objects().iter().cloned().collect(),
            &sub,
            &squares,
            false,
        )
        .map_err(|e| e.to_string())?;
        if dw.is_normal || dw.ndg[0] {
            return Err("NDG1 unexpectedly holds for shell({e, (12)})".into());
        }
        if !dw.failures.iter().any(|v| v.law == "ndg1" || v.law.contains("normality")) {
            return Err("no NDG1 witness recorded".into());
        }

        // a mutated groupoid table fails with the mutated pair cited
        let mut raw = fixtures::cyclic(4).to_raw();
        let pos = raw
            .compose
            .iter()
            .position(|(f, g, _)| f == &ArrowId::new("g1") && g == &ArrowId::new("g3"))
            .expect("entry exists");
        raw.compose[pos].2 = "g2".into();
        let report1 = match validate_groupoid(&raw) {
            Err(GroupoidError::Axioms(r)) => r,
            other => return Err(format!("mutated table not rejected: {other:?}")),
        };
        let cites_pair = report1.violations().iter().any(|v| {
            v.witness.contains(&"g1".to_string()) && v.witness.contains(&"g3".to_string())
        });
        if !cites_pair {
            return Err(format!(
                "violations do not cite the mutated pair (g1, g3): {report1}"
            ));
        }
        let report2 = match validate_groupoid(&raw) {
            Err(GroupoidError::Axioms(r)) => r,
            other => return Err(format!("mutated table not rejected: {other:?}")),
        };
        if report1.render() != report2.render() {
            return Err("validation report is not deterministic".into());
        }

        // a mutated square table fails with the mutated tuple cited
        let d = double_groupoids::shell_dgpd(&fixtures::cyclic(2), false);
        let mut raw = d.to_raw();
        let (u, v, w) = raw.hcompose[5].clone();
        let other = raw
            .squares
            .iter()
            .map(|s| s.id.clone())
            .find(|s| *s != w)
            .unwrap();
        raw.hcompose[5] = (u.clone(), v.clone(), other);
        let report = match validate_dgpd(&raw) {
            Err(double_groupoids::DgpdError::Axioms(r)) => r,
            other => return Err(format!("mutated dgpd not rejected: {other:?}")),
        };
        let cited = report.violations().iter().any(|vi| {
            vi.witness.contains(&u.to_string()) || vi.witness.contains(&v.to_string())
        });
        if !cited {
            return Err(format!("violations do not cite the mutated squares: {report}"));
        }
        Ok("NCM1/NDG1 witnesses, mutated tuples cited, reports deterministic".into())
    });
}

#[test]
fn criterion_9_cli_contract() {
    criterion(9, "CLI golden files and exit codes", || {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let path = |name: &str| dir.path().join(name).display().to_string();
        let run = |args: &[&str]| -> i32 {
            let mut argv = vec!["dgpd"];
            argv.extend_from_slice(args);
            cli_dispatch(argv)
        };

        // golden-file stability: byte-identical generation across runs,
        // canonical round trip through parse
        let gen_fixtures: Vec<Vec<&str>> = vec![
            vec!["cyclic", "2"],
            vec!["cyclic", "4"],
            vec!["symmetric", "3"],
            vec!["interval"],
            vec!["discrete", "2"],
            vec!["disjoint-union", "cyclic:2", "interval"],
            vec!["conj-xmod", "cyclic:4", "2"],
            vec!["conj-xmod", "symmetric:3", "a3"],
            vec!["shell", "cyclic:2"],
            vec!["commshell", "interval"],
        ];
        for args in &gen_fixtures {
            let f1 = path("g1.doc");
            let f2 = path("g2.doc");
            let mut a1: Vec<&str> = vec!["gen"];
            a1.extend(args.iter());
            a1.extend(["--out", &f1]);
            let mut a2: Vec<&str> = vec!["gen"];
            a2.extend(args.iter());
            a2.extend(["--out", &f2]);
            if run(&a1) != 0 || run(&a2) != 0 {
                return Err(format!("gen {args:?} did not succeed"));
            }
            let b1 = std::fs::read(&f1).map_err(|e| e.to_string())?;
            let b2 = std::fs::read(&f2).map_err(|e| e.to_string())?;
            if b1 != b2 {
                return Err(format!("gen {args:?} is not byte-identical across runs"));
            }
            let text = String::from_utf8(b1).map_err(|e| e.to_string())?;
            let doc = parse(&text).map_err(|e| e.to_string())?;
            if serialize(&doc) != text {
                return Err(format!("gen {args:?} is not canonical"));
            }
            if run(&["validate", &f1]) != 0 {
                return Err(format!("gen {args:?} output fails validate"));
            }
        }

        // a frozen golden document
        let interval_golden = "\
kind groupoid
format 1
obj x
obj y
arr 1x x x
arr 1y y y
arr i x y
arr j y x
idn x 1x
idn y 1y
cmp 1x 1x 1x
cmp 1x i i
cmp 1y 1y 1y
cmp 1y j j
cmp i 1y i
cmp i j 1x
cmp j 1x j
cmp j i 1y
end groupoid
";
        let iv = path("interval.gpd");
        run(&["gen", "interval", "--out", &iv]);
        let bytes = std::fs::read_to_string(&iv).map_err(|e| e.to_string())?;
        if bytes != interval_golden {
            return Err("interval golden document drifted".into());
        }

        // exit-code contract
        let c4 = path("c4.gpd");
        let c4x = path("c4x.xm");
        let c4dg = path("c4.dg");
        run(&["gen", "cyclic", "4", "--out", &c4]);
        run(&["gen", "conj-xmod", "cyclic:4", "full", "--out", &c4x]);
        run(&["lambda", &c4x, "--out", &c4dg]);

        let mut matrix: Vec<(Vec<String>, i32)> = Vec::new();
        let owned = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        matrix.push((owned(&["validate", &c4]), 0));
        matrix.push((owned(&["validate", &path("missing.gpd")]), 2));
        matrix.push((owned(&["frobnicate"]), 2));
        matrix.push((owned(&["gen", "heisenberg"]), 2));
        matrix.push((owned(&["gen", "cyclic", "many"]), 2));
        matrix.push((owned(&["lambda", &c4]), 2)); // wrong document kind
        matrix.push((owned(&["roundtrip", "xmod", &c4x]), 0));
        matrix.push((owned(&["roundtrip", "dgpd", &c4dg]), 0));
        matrix.push((owned(&["gamma", &c4dg, "--out", &path("back.xm")]), 0));
        matrix.push((owned(&["validate", &path("back.xm")]), 0));
        matrix.push((owned(&["shell", &c4, "--commutative", "--out", &path("c4c.dg")]), 0));
        matrix.push((owned(&["validate", &path("c4c.dg")]), 0));

        // an axiom-violating document
        let broken = path("broken.gpd");
        let text = std::fs::read_to_string(&c4).map_err(|e| e.to_string())?;
        std::fs::write(&broken, text.replace("cmp g1 g3 g0", "cmp g1 g3 g2"))
            .map_err(|e| e.to_string())?;
        matrix.push((owned(&["validate", &broken]), 1));

        // garbage text
        let garbage = path("garbage.gpd");
        std::fs::write(&garbage, "not a document\n").map_err(|e| e.to_string())?;
        matrix.push((owned(&["validate", &garbage]), 2));

        // sub-witness driven commands
        let x = fixtures::c4_conj();
        let even: BTreeSet<ArrowId> = ["g0".into(), "g2".into()].into_iter().collect();
        let w = check_sub_xmod(&x, &even, &even).map_err(|e| e.to_string())?;
        let sub_ok = path("even.sub");
        std::fs::write(&sub_ok, serialize(&double_groupoids::doc::sub_witness_xmod(&x, &w)))
            .map_err(|e| e.to_string())?;
        matrix.push((owned(&["check", "sub-xmod", &c4x, &sub_ok]), 0));
        matrix.push((owned(&["check", "normal-sub-xmod", &c4x, &sub_ok]), 0));
        matrix.push((owned(&["quotient-xmod", &c4x, &sub_ok, "--out", &path("q.xm")]), 0));
        matrix.push((owned(&["validate", &path("q.xm")]), 0));

        // non-normal sub at the S3 crossed module
        let s3x = fixtures::s3_conj();
        let s3xf = path("s3x.xm");
        std::fs::write(&s3xf, serialize(&StructureDocument::from(&s3x)))
            .map_err(|e| e.to_string())?;
        let bad: BTreeSet<ArrowId> = ["e".into(), "(12)".into()].into_iter().collect();
        let wbad = check_sub_xmod(&s3x, &bad, &bad).map_err(|e| e.to_string())?;
        let sub_bad = path("bad.sub");
        std::fs::write(
            &sub_bad,
            serialize(&double_groupoids::doc::sub_witness_xmod(&s3x, &wbad)),
        )
        .map_err(|e| e.to_string())?;
        matrix.push((owned(&["check", "sub-xmod", &s3xf, &sub_bad]), 0));
        matrix.push((owned(&["check", "normal-sub-xmod", &s3xf, &sub_bad]), 1));
        matrix.push((owned(&["quotient-xmod", &s3xf, &sub_bad]), 1));
        // sub-witness against the wrong parent
        matrix.push((owned(&["check", "normal-sub-xmod", &c4x, &sub_bad]), 2));

        // fold
        let zero_sq = {
            let img = lambda(&x);
            img.dgpd().videntity(&"g0".into()).unwrap().clone()
        };
        let lam = path("lam.dg");
        matrix.push((owned(&["lambda", &c4x, "--out", &lam]), 0));
        matrix.push((owned(&["fold", &lam, zero_sq.as_str()]), 0));
        matrix.push((owned(&["fold", &lam, "no-such-square"]), 2));

        for (args, want) in &matrix {
            let args: Vec<&str> = args.iter().map(String::as_str).collect();
            let got = run(&args);
            if got != *want {
                return Err(format!("`dgpd {}` exited {got}, expected {want}", args.join(" ")));
            }
        }
        Ok(format!(
            "{} generated documents byte-stable and canonical, {}-entry exit-code matrix",
            gen_fixtures.len(),
            matrix.len()
        ))
    });
}
