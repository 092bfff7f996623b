//! The `dgpd` command-line driver.
//!
//! Every subcommand reads and writes the canonical document format of
//! [`crate::doc`]. Exit codes: `0` on success / predicate pass, `1` when a
//! structure fails its axioms or a checked predicate is false (a report is
//! printed), `2` on malformed input (unreadable file, parse error,
//! unresolved id, wrong document kind, bad arguments).

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::dgpd::{
    check_sub_dgpd, quotient_dgpd, shell_dgpd, validate_dgpd, DgpdError, DoubleGroupoid,
};
use crate::doc::{
    self, parse, serialize, serialize_pretty, RawMorphism, RawSubWitness, StructureDocument,
};
use crate::equiv::{fold, gamma, lambda, roundtrip_dgpd, roundtrip_xmod};
use crate::fixtures;
use crate::groupoid::{
    check_subgroupoid, kernel, quotient_groupoid, validate_groupoid, validate_groupoid_morphism,
    FiniteGroupoid, GroupoidError, GroupoidMorphism,
};
use crate::id::SquareId;
use crate::report::Report;
use crate::xmod::{
    check_sub_xmod, quotient_xmod, validate_xmod, validate_xmod_morphism, xmod_kernel,
    CrossedModule, XModError, XModMorphism,
};

#[derive(Parser, Debug)]
#[command(
    name = "dgpd",
    about = "Finite groupoids, crossed modules over groupoids, and double groupoids \
             with thin structures",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, ValueEnum)]
enum Fmt {
    #[default]
    Canonical,
    Pretty,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum CheckKind {
    SubXmod,
    NormalSubXmod,
    SubDgpd,
    NormalSubDgpd,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum RtKind {
    Xmod,
    Dgpd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Validate a structure document (any kind)
    Validate { file: PathBuf },
    /// Emit a builtin fixture document
    Gen {
        /// Fixture name: cyclic, symmetric, interval, discrete,
        /// disjoint-union, conj-xmod, shell, commshell
        name: String,
        /// Fixture parameters (e.g. `4`, or `cyclic:4 2`)
        params: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Fmt,
    },
    /// Build the double groupoid of 2-shells □′G (or □G of the
    /// commutative ones) of a groupoid document
    Shell {
        file: PathBuf,
        /// Keep only commutative shells (□G instead of □′G)
        #[arg(long)]
        commutative: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Fmt,
    },
    /// Apply the functor λ to a crossed module document
    Lambda {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Fmt,
    },
    /// Apply the functor γ to a thin double groupoid document
    Gamma {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Fmt,
    },
    /// Fold a square of a thin double groupoid to its normal form
    Fold { file: PathBuf, square: String },
    /// Kernel of a morphism document, as a sub-witness document
    Kernel {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Fmt,
    },
    /// Quotient groupoid by a normal sub-witness
    QuotientGpd {
        parent: PathBuf,
        sub: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Fmt,
    },
    /// Quotient crossed module by a normal sub-witness
    QuotientXmod {
        parent: PathBuf,
        sub: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Fmt,
    },
    /// Quotient double groupoid by a normal sub-witness
    QuotientDgpd {
        parent: PathBuf,
        sub: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Fmt,
    },
    /// Evaluate a sub/normality predicate for a parent and a sub-witness
    Check {
        which: CheckKind,
        parent: PathBuf,
        sub: PathBuf,
        /// Also run the +₁ mirror of the normality check (reported, not
        /// required)
        #[arg(long)]
        mirror_v: bool,
    },
    /// Verify a Theorem-2.1 round trip on a structure document
    Roundtrip { which: RtKind, file: PathBuf },
}

struct Failure {
    code: i32,
    message: String,
}

fn malformed(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// Axiom/predicate failure whose report was already printed to stdout.
fn failed() -> Failure {
    Failure {
        code: 1,
        message: String::new(),
    }
}

type CliResult = Result<i32, Failure>;

/// Runs the CLI on the given arguments (`argv[0]` is the program name) and
/// returns the process exit code. Reports go to standard output, error
/// messages for malformed input to standard error.
pub fn cli_dispatch<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/version output with code 0
            if e.exit_code() == 0 {
                print!("{e}");
                return 0;
            }
            eprint!("{e}");
            return 2;
        }
    };
    match run(cli.cmd) {
        Ok(code) => code,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            f.code
        }
    }
}

fn read_doc(path: &Path) -> Result<StructureDocument, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| malformed(format!("cannot read {}: {e}", path.display())))?;
    parse(&text).map_err(|e| malformed(format!("{}: {e}", path.display())))
}

fn write_doc(doc: &StructureDocument, out: &Option<PathBuf>, format: Fmt) -> Result<(), Failure> {
    let text = match format {
        Fmt::Canonical => serialize(doc),
        Fmt::Pretty => serialize_pretty(doc),
    };
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| malformed(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Structural errors (unresolved or duplicated ids) are the caller's
/// malformed input; everything else is an axiom failure.
fn gerr(e: GroupoidError) -> Failure {
    match e {
        GroupoidError::DanglingId { .. }
        | GroupoidError::DuplicateId { .. }
        | GroupoidError::BadId { .. } => malformed(e.to_string()),
        GroupoidError::Axioms(r) => {
            print!("{}", r.render());
            failed()
        }
        other => {
            println!("{other}");
            failed()
        }
    }
}

fn xerr(e: XModError) -> Failure {
    match e {
        XModError::DanglingId { .. } | XModError::DuplicateId { .. } => malformed(e.to_string()),
        XModError::Groupoid { which: _, ref source } if matches!(
            source,
            GroupoidError::DanglingId { .. }
                | GroupoidError::DuplicateId { .. }
                | GroupoidError::BadId { .. }
        ) =>
        {
            malformed(e.to_string())
        }
        XModError::Axioms(r) => {
            print!("{}", r.render());
            failed()
        }
        other => {
            println!("{other}");
            failed()
        }
    }
}

fn derr(e: DgpdError) -> Failure {
    match e {
        DgpdError::DanglingId { .. } | DgpdError::DuplicateId { .. } | DgpdError::BadId { .. } => {
            malformed(e.to_string())
        }
        DgpdError::UnknownSquare { .. } => malformed(e.to_string()),
        DgpdError::Edges { ref source } if matches!(
            source,
            GroupoidError::DanglingId { .. }
                | GroupoidError::DuplicateId { .. }
                | GroupoidError::BadId { .. }
        ) =>
        {
            malformed(e.to_string())
        }
        DgpdError::Axioms(r) => {
            print!("{}", r.render());
            failed()
        }
        DgpdError::XMod(e) => xerr(e),
        other => {
            println!("{other}");
            failed()
        }
    }
}

fn need_groupoid(doc: StructureDocument, what: &str) -> Result<FiniteGroupoid, Failure> {
    match doc {
        StructureDocument::Groupoid(raw) => validate_groupoid(&raw).map_err(gerr),
        other => Err(malformed(format!(
            "{what} must be a groupoid document, found `{}`",
            other.kind()
        ))),
    }
}

fn need_xmod(doc: StructureDocument, what: &str) -> Result<CrossedModule, Failure> {
    match doc {
        StructureDocument::XMod(raw) => validate_xmod(&raw).map_err(xerr),
        other => Err(malformed(format!(
            "{what} must be an xmod document, found `{}`",
            other.kind()
        ))),
    }
}

fn need_dgpd(doc: StructureDocument, what: &str) -> Result<DoubleGroupoid, Failure> {
    match doc {
        StructureDocument::Dgpd(raw) => validate_dgpd(&raw).map_err(derr),
        other => Err(malformed(format!(
            "{what} must be a dgpd document, found `{}`",
            other.kind()
        ))),
    }
}

/// The parent embedded in a sub-witness must be the very parent the
/// command was given; canonical serialization equality is the test.
fn check_same_parent(embedded: &StructureDocument, given: &StructureDocument) -> Result<(), Failure> {
    if serialize(embedded) != serialize(given) {
        return Err(malformed(
            "sub-witness was built against a different parent structure",
        ));
    }
    Ok(())
}

fn run(cmd: Cmd) -> CliResult {
    match cmd {
        Cmd::Validate { file } => cmd_validate(&file),
        Cmd::Gen {
            name,
            params,
            out,
            format,
        } => {
            let params: Vec<&str> = params.iter().map(String::as_str).collect();
            let doc = fixtures::generate(&name, &params).map_err(|e| malformed(e.to_string()))?;
            write_doc(&doc, &out, format)?;
            Ok(0)
        }
        Cmd::Shell {
            file,
            commutative,
            out,
            format,
        } => {
            let g = need_groupoid(read_doc(&file)?, "shell input")?;
            let d = shell_dgpd(&g, commutative);
            write_doc(&StructureDocument::from(&d), &out, format)?;
            Ok(0)
        }
        Cmd::Lambda { file, out, format } => {
            let x = need_xmod(read_doc(&file)?, "lambda input")?;
            let img = lambda(&x);
            write_doc(&StructureDocument::from(img.dgpd()), &out, format)?;
            Ok(0)
        }
        Cmd::Gamma { file, out, format } => {
            let d = need_dgpd(read_doc(&file)?, "gamma input")?;
            let x = gamma(&d).map_err(derr)?;
            write_doc(&StructureDocument::from(&x), &out, format)?;
            Ok(0)
        }
        Cmd::Fold { file, square } => {
            let d = need_dgpd(read_doc(&file)?, "fold input")?;
            let sq = SquareId::new(square);
            let folded = fold(&d, &sq).map_err(derr)?;
            let f = d.faces_of(&folded).expect("fold output is a square");
            println!("fold {sq} = {folded}");
            println!("boundary: top {} bottom {} left {} right {}", f.top, f.bottom, f.left, f.right);
            Ok(0)
        }
        Cmd::Kernel { file, out, format } => cmd_kernel(&file, &out, format),
        Cmd::QuotientGpd {
            parent,
            sub,
            out,
            format,
        } => cmd_quotient_gpd(&parent, &sub, &out, format),
        Cmd::QuotientXmod {
            parent,
            sub,
            out,
            format,
        } => cmd_quotient_xmod(&parent, &sub, &out, format),
        Cmd::QuotientDgpd {
            parent,
            sub,
            out,
            format,
        } => cmd_quotient_dgpd(&parent, &sub, &out, format),
        Cmd::Check {
            which,
            parent,
            sub,
            mirror_v,
        } => cmd_check(which, &parent, &sub, mirror_v),
        Cmd::Roundtrip { which, file } => cmd_roundtrip(which, &file),
    }
}

fn cmd_validate(file: &Path) -> CliResult {
    let doc = read_doc(file)?;
    let mut report = Report::new(format!("validate {}", file.display()));
    match doc {
        StructureDocument::Groupoid(raw) => {
            let g = validate_groupoid(&raw).map_err(gerr)?;
            report.check(
                "groupoid axioms",
                true,
                format!("{} objects, {} arrows", g.object_count(), g.arrow_count()),
            );
        }
        StructureDocument::XMod(raw) => {
            let x = validate_xmod(&raw).map_err(xerr)?;
            report.check(
                "crossed module axioms",
                true,
                format!(
                    "{} module elements over {} base arrows",
                    x.module().arrow_count(),
                    x.base().arrow_count()
                ),
            );
        }
        StructureDocument::Dgpd(raw) => {
            let d = validate_dgpd(&raw).map_err(derr)?;
            report.check(
                "double groupoid axioms",
                true,
                format!(
                    "{} squares over {} edges{}",
                    d.square_count(),
                    d.edges().arrow_count(),
                    if d.has_thin_structure() {
                        ", thin structure"
                    } else {
                        ""
                    }
                ),
            );
        }
        StructureDocument::SubWitness(w) => return cmd_validate_sub(w, report),
        StructureDocument::Morphism(m) => return cmd_validate_morphism(m, report),
    }
    print!("{}", report.render());
    Ok(0)
}

fn cmd_validate_sub(w: RawSubWitness, mut report: Report) -> CliResult {
    let is_sub = match w {
        RawSubWitness::Groupoid {
            parent,
            objects,
            arrows,
        } => {
            let g = validate_groupoid(&parent).map_err(gerr)?;
            let w = check_subgroupoid(
                &g,
                &objects.into_iter().collect(),
                &arrows.into_iter().collect(),
            )
            .map_err(gerr)?;
            report.check("subgroupoid", w.is_subgroupoid, "");
            for v in &w.failures {
                report.witness(v.clone());
            }
            w.is_subgroupoid
        }
        RawSubWitness::XMod {
            parent,
            base,
            module,
        } => {
            let x = validate_xmod(&parent).map_err(xerr)?;
            let w = check_sub_xmod(
                &x,
                &module.into_iter().collect(),
                &base.into_iter().collect(),
            )
            .map_err(xerr)?;
            report.check("subcrossed module (SCM1–3)", w.is_sub, "");
            for v in &w.failures {
                report.witness(v.clone());
            }
            w.is_sub
        }
        RawSubWitness::Dgpd {
            parent,
            points,
            edges,
            squares,
        } => {
            let d = validate_dgpd(&parent).map_err(derr)?;
            let w = check_sub_dgpd(
                &d,
                &points.into_iter().collect(),
                &edges.into_iter().collect(),
                &squares.into_iter().collect(),
                false,
            )
            .map_err(derr)?;
            report.check("subdouble groupoid (SDG1–3)", w.is_sub, "");
            for v in &w.failures {
                report.witness(v.clone());
            }
            w.is_sub
        }
    };
    print!("{}", report.render());
    Ok(if is_sub { 0 } else { 1 })
}

fn cmd_validate_morphism(m: RawMorphism, mut report: Report) -> CliResult {
    let ok = match m {
        RawMorphism::Groupoid {
            source,
            target,
            object_map,
            arrow_map,
        } => {
            let s = validate_groupoid(&source).map_err(gerr)?;
            let d = validate_groupoid(&target).map_err(gerr)?;
            let f = GroupoidMorphism {
                object_map: object_map.into_iter().collect(),
                arrow_map: arrow_map.into_iter().collect(),
            };
            match validate_groupoid_morphism(&s, &d, &f) {
                Ok(()) => {
                    report.check("groupoid morphism laws", true, "");
                    true
                }
                Err(GroupoidError::Axioms(r)) => {
                    report.check("groupoid morphism laws", false, "");
                    for v in r.violations() {
                        report.witness(v);
                    }
                    false
                }
                Err(e) => return Err(gerr(e)),
            }
        }
        RawMorphism::XMod {
            source,
            target,
            object_map,
            base_map,
            module_map,
        } => {
            let s = validate_xmod(&source).map_err(xerr)?;
            let d = validate_xmod(&target).map_err(xerr)?;
            let f = XModMorphism {
                object_map: object_map.into_iter().collect(),
                base_map: base_map.into_iter().collect(),
                module_map: module_map.into_iter().collect(),
            };
            match validate_xmod_morphism(&s, &d, &f) {
                Ok(()) => {
                    report.check("crossed module morphism laws", true, "");
                    true
                }
                Err(XModError::Axioms(r)) => {
                    report.check("crossed module morphism laws", false, "");
                    for v in r.violations() {
                        report.witness(v);
                    }
                    false
                }
                Err(e) => return Err(xerr(e)),
            }
        }
    };
    print!("{}", report.render());
    Ok(if ok { 0 } else { 1 })
}

fn cmd_kernel(file: &Path, out: &Option<PathBuf>, format: Fmt) -> CliResult {
    match read_doc(file)? {
        StructureDocument::Morphism(RawMorphism::Groupoid {
            source,
            target,
            object_map,
            arrow_map,
        }) => {
            let s = validate_groupoid(&source).map_err(gerr)?;
            let d = validate_groupoid(&target).map_err(gerr)?;
            let f = GroupoidMorphism {
                object_map: object_map.into_iter().collect(),
                arrow_map: arrow_map.into_iter().collect(),
            };
            validate_groupoid_morphism(&s, &d, &f).map_err(gerr)?;
            let w = kernel(&s, &d, &f).map_err(gerr)?;
            write_doc(&doc::sub_witness_groupoid(&s, &w), out, format)?;
            Ok(0)
        }
        StructureDocument::Morphism(RawMorphism::XMod {
            source,
            target,
            object_map,
            base_map,
            module_map,
        }) => {
            let s = validate_xmod(&source).map_err(xerr)?;
            let d = validate_xmod(&target).map_err(xerr)?;
            let f = XModMorphism {
                object_map: object_map.into_iter().collect(),
                base_map: base_map.into_iter().collect(),
                module_map: module_map.into_iter().collect(),
            };
            validate_xmod_morphism(&s, &d, &f).map_err(xerr)?;
            let w = xmod_kernel(&s, &d, &f).map_err(xerr)?;
            write_doc(&doc::sub_witness_xmod(&s, &w), out, format)?;
            Ok(0)
        }
        other => Err(malformed(format!(
            "kernel input must be a morphism document, found `{}`",
            other.kind()
        ))),
    }
}

fn cmd_quotient_gpd(
    parent: &Path,
    sub: &Path,
    out: &Option<PathBuf>,
    format: Fmt,
) -> CliResult {
    let pdoc = read_doc(parent)?;
    let g = need_groupoid(pdoc.clone(), "quotient parent")?;
    let StructureDocument::SubWitness(RawSubWitness::Groupoid {
        parent: embedded,
        objects,
        arrows,
    }) = read_doc(sub)?
    else {
        return Err(malformed("sub argument must be a groupoid sub-witness"));
    };
    check_same_parent(&StructureDocument::Groupoid(embedded), &pdoc)?;
    let w = check_subgroupoid(
        &g,
        &objects.into_iter().collect(),
        &arrows.into_iter().collect(),
    )
    .map_err(gerr)?;
    if !w.is_normal {
        let mut report = Report::new("quotient-gpd");
        report.check("subset is a wide normal subgroupoid", false, "");
        for v in &w.failures {
            report.witness(v.clone());
        }
        print!("{}", report.render());
        return Ok(1);
    }
    let q = quotient_groupoid(&g, &w).map_err(gerr)?;
    write_doc(&StructureDocument::from(&q.groupoid), out, format)?;
    Ok(0)
}

fn cmd_quotient_xmod(
    parent: &Path,
    sub: &Path,
    out: &Option<PathBuf>,
    format: Fmt,
) -> CliResult {
    let pdoc = read_doc(parent)?;
    let x = need_xmod(pdoc.clone(), "quotient parent")?;
    let StructureDocument::SubWitness(RawSubWitness::XMod {
        parent: embedded,
        base,
        module,
    }) = read_doc(sub)?
    else {
        return Err(malformed("sub argument must be an xmod sub-witness"));
    };
    check_same_parent(&StructureDocument::XMod(embedded), &pdoc)?;
    let w = check_sub_xmod(&x, &module.into_iter().collect(), &base.into_iter().collect())
        .map_err(xerr)?;
    if !w.is_normal {
        let mut report = Report::new("quotient-xmod");
        report.check("subset is a normal subcrossed module", false, "");
        for v in &w.failures {
            report.witness(v.clone());
        }
        print!("{}", report.render());
        return Ok(1);
    }
    let q = quotient_xmod(&x, &w).map_err(xerr)?;
    write_doc(&StructureDocument::from(&q.xmod), out, format)?;
    Ok(0)
}

fn cmd_quotient_dgpd(
    parent: &Path,
    sub: &Path,
    out: &Option<PathBuf>,
    format: Fmt,
) -> CliResult {
    let pdoc = read_doc(parent)?;
    let d = need_dgpd(pdoc.clone(), "quotient parent")?;
    let StructureDocument::SubWitness(RawSubWitness::Dgpd {
        parent: embedded,
        points,
        edges,
        squares,
    }) = read_doc(sub)?
    else {
        return Err(malformed("sub argument must be a dgpd sub-witness"));
    };
    check_same_parent(&StructureDocument::Dgpd(embedded), &pdoc)?;
    let w = check_sub_dgpd(
        &d,
        &points.into_iter().collect(),
        &edges.into_iter().collect(),
        &squares.into_iter().collect(),
        false,
    )
    .map_err(derr)?;
    if !w.is_normal {
        let mut report = Report::new("quotient-dgpd");
        report.check("subset is a normal subdouble groupoid", false, "");
        for v in &w.failures {
            report.witness(v.clone());
        }
        print!("{}", report.render());
        return Ok(1);
    }
    let q = quotient_dgpd(&d, &w).map_err(derr)?;
    write_doc(&StructureDocument::from(&q), out, format)?;
    Ok(0)
}

fn cmd_check(which: CheckKind, parent: &Path, sub: &Path, mirror_v: bool) -> CliResult {
    let pdoc = read_doc(parent)?;
    let sdoc = read_doc(sub)?;
    let mut report = Report::new(format!(
        "check {} {} {}",
        match which {
            CheckKind::SubXmod => "sub-xmod",
            CheckKind::NormalSubXmod => "normal-sub-xmod",
            CheckKind::SubDgpd => "sub-dgpd",
            CheckKind::NormalSubDgpd => "normal-sub-dgpd",
        },
        parent.display(),
        sub.display()
    ));
    let pass = match which {
        CheckKind::SubXmod | CheckKind::NormalSubXmod => {
            let x = need_xmod(pdoc.clone(), "check parent")?;
            let StructureDocument::SubWitness(RawSubWitness::XMod {
                parent: embedded,
                base,
                module,
            }) = sdoc
            else {
                return Err(malformed("sub argument must be an xmod sub-witness"));
            };
            check_same_parent(&StructureDocument::XMod(embedded), &pdoc)?;
            let w = check_sub_xmod(
                &x,
                &module.into_iter().collect(),
                &base.into_iter().collect(),
            )
            .map_err(xerr)?;
            report.check("SCM1 subgroupoids", w.scm[0], "");
            report.check("SCM2 boundary restricts", w.scm[1], "");
            report.check("SCM3 action restricts", w.scm[2], "");
            if which == CheckKind::NormalSubXmod {
                report.check("NCM1 base normal", w.ncm[0], "");
                report.check("NCM2 action closure", w.ncm[1], "");
                report.check("NCM3 displacement closure", w.ncm[2], "");
            }
            for v in &w.failures {
                report.witness(v.clone());
            }
            if which == CheckKind::SubXmod {
                w.is_sub
            } else {
                w.is_normal
            }
        }
        CheckKind::SubDgpd | CheckKind::NormalSubDgpd => {
            let d = need_dgpd(pdoc.clone(), "check parent")?;
            let StructureDocument::SubWitness(RawSubWitness::Dgpd {
                parent: embedded,
                points,
                edges,
                squares,
            }) = sdoc
            else {
                return Err(malformed("sub argument must be a dgpd sub-witness"));
            };
            check_same_parent(&StructureDocument::Dgpd(embedded), &pdoc)?;
            let w = check_sub_dgpd(
                &d,
                &points.into_iter().collect(),
                &edges.into_iter().collect(),
                &squares.into_iter().collect(),
                mirror_v,
            )
            .map_err(derr)?;
            report.check("SDG1 edge subgroupoid", w.sdg[0], "");
            report.check("SDG2 +₂ subgroupoid", w.sdg[1], "");
            report.check("SDG3 thin restriction", w.sdg[2], "");
            if which == CheckKind::NormalSubDgpd {
                report.check("NDG1 edges wide-normal", w.ndg[0], "");
                report.check("NDG2 +₂ non-wide normal", w.ndg[1], "");
                if let Some(m) = w.mirror_normal {
                    report.check("+₁ mirror normality (informative)", m, "");
                }
            }
            for v in &w.failures {
                report.witness(v.clone());
            }
            if which == CheckKind::SubDgpd {
                w.is_sub
            } else {
                w.is_normal
            }
        }
    };
    print!("{}", report.render());
    Ok(if pass { 0 } else { 1 })
}

fn cmd_roundtrip(which: RtKind, file: &Path) -> CliResult {
    match which {
        RtKind::Xmod => {
            let x = need_xmod(read_doc(file)?, "roundtrip input")?;
            let r = roundtrip_xmod(&x);
            print!("{}", r.render());
            Ok(if r.verdict() { 0 } else { 1 })
        }
        RtKind::Dgpd => {
            let d = need_dgpd(read_doc(file)?, "roundtrip input")?;
            let r = roundtrip_dgpd(&d).map_err(derr)?;
            print!("{}", r.render());
            Ok(if r.verdict() { 0 } else { 1 })
        }
    }
}
