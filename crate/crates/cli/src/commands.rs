use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use amalgam::diagram::{
    build_cocone_forest, has_cocone, shrink_witness, witness_no_cocone, CoconeCheck, FinInjDiagram, WitnessError,
};
use amalgam::fincat::{skeleton_poset, FinCategory};
use amalgam::format::{self, DiagramDoc, Document, ShapeRef};
use amalgam::invcat::{check_inverse_laws, wagner_preston};
use amalgam::poset::{is_forest_like, FinPoset, ForestDecision};
use amalgam::{decide, explain, gen, Evidence};
use anyhow::{anyhow, bail, Context, Result};

use crate::config::{Command, Format, GenKind, RunConfig};

/// Process exit status for a completed command; errors map to [`INPUT_ERROR`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Positive,
    Negative,
}

pub const INPUT_ERROR: u8 = 2;

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Positive => 0,
            Outcome::Negative => 1,
        }
    }
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    match &cfg.command {
        Command::Check { path } => check(cfg, path),
        Command::Witness { path, shrink } => witness(cfg, path, *shrink),
        Command::Cocone { shape, diagram } => cocone(cfg, shape, diagram),
        Command::Oracle { diagram } => oracle(cfg, diagram),
        Command::Gen { kind, size, shape } => generate(cfg, *kind, *size, shape.as_deref()),
        Command::Explain { path } => explain_cmd(cfg, path),
        Command::Validate { paths, diagram } => validate(cfg, paths, diagram.as_deref()),
    }
}

fn read(path: &Path) -> Result<Document> {
    format::read_document(path).with_context(|| path.display().to_string())
}

fn read_shape(path: &Path) -> Result<FinCategory> {
    format::shape_from_document(&read(path)?).with_context(|| path.display().to_string())
}

fn base_dir(path: &Path) -> &Path {
    path.parent().unwrap_or(Path::new("."))
}

fn read_diagram(path: &Path) -> Result<(DiagramDoc, FinInjDiagram)> {
    let Document::Diagram(doc) = read(path)? else {
        bail!("{}: expected a diagram document", path.display());
    };
    let d = format::diagram_from_doc(&doc, base_dir(path)).with_context(|| path.display().to_string())?;
    Ok((doc, d))
}

/// Writes the document to `--out` when given, then prints either the
/// document or the text summary.
fn emit(cfg: &RunConfig, doc: &Document, text: &str) -> Result<()> {
    let rendered = format::render(doc);
    if let Some(out) = &cfg.out {
        std::fs::write(out, &rendered).with_context(|| format!("writing {}", out.display()))?;
    }
    match cfg.format {
        Format::Structured if cfg.out.is_none() => print!("{rendered}"),
        Format::Structured => {}
        Format::Text => print!("{text}"),
    }
    Ok(())
}

fn decide_file(cfg: &RunConfig, path: &Path) -> Result<(FinCategory, amalgam::Verdict)> {
    let shape = read_shape(path)?;
    let v = decide(&shape)?;
    if cfg.verify {
        recheck(&v)?;
    }
    Ok((shape, v))
}

fn recheck(v: &amalgam::Verdict) -> Result<()> {
    match &v.evidence {
        Evidence::Certified {
            poset,
            certificate,
            demo,
            ..
        } => {
            certificate.verify(poset)?;
            if let Some(demo) = demo {
                demo.cocone.validate(&demo.diagram)?;
            }
        }
        Evidence::Refuted(w) => {
            if has_cocone(&w.diagram).exists() {
                bail!("internal error: witness diagram has a cocone");
            }
        }
    }
    Ok(())
}

fn check(cfg: &RunConfig, path: &Path) -> Result<Outcome> {
    let (shape, v) = decide_file(cfg, path)?;
    let doc = Document::Verdict(format::verdict_doc(&shape, &v));
    emit(cfg, &doc, &explain(&v))?;
    Ok(if v.amalgamable_ap_jep {
        Outcome::Positive
    } else {
        Outcome::Negative
    })
}

fn explain_cmd(cfg: &RunConfig, path: &Path) -> Result<Outcome> {
    let (shape, v) = decide_file(cfg, path)?;
    let doc = Document::Verdict(format::verdict_doc(&shape, &v));
    emit(cfg, &doc, &explain(&v))?;
    Ok(Outcome::Positive)
}

fn describe_diagram(d: &FinInjDiagram) -> String {
    let mut out = String::new();
    for o in 0..d.shape().object_count() {
        writeln!(out, "  {} = {{{}}}", d.shape().object_name(o), d.carrier(o).join(", ")).unwrap();
    }
    out
}

fn describe_collision(d: &FinInjDiagram, c: &amalgam::diagram::Collision) -> String {
    let path: Vec<String> = c
        .elements
        .iter()
        .map(|&(o, x)| format!("{}:{}", d.shape().object_name(o), d.carrier(o)[x]))
        .collect();
    format!(
        "no cocone: `{}` and `{}` of `{}` are identified in the colimit via {}\n",
        d.carrier(c.object)[c.first],
        d.carrier(c.object)[c.second],
        d.shape().object_name(c.object),
        path.join(" ~ ")
    )
}

fn witness(cfg: &RunConfig, path: &Path, shrink: bool) -> Result<Outcome> {
    let shape = read_shape(path)?;
    let w = match witness_no_cocone(&shape) {
        Ok(w) => w,
        Err(WitnessError::NotApplicable) => {
            eprintln!(
                "{}: shape is upward-simply-connected; every diagram over it has a cocone",
                path.display()
            );
            return Ok(Outcome::Negative);
        }
        Err(e) => return Err(e.into()),
    };
    let (diagram, collision) = if shrink {
        let small = shrink_witness(&w.diagram).map_err(|e| anyhow!("shrinking: {e}"))?;
        let CoconeCheck::Blocked(c) = has_cocone(&small) else {
            bail!("internal error: shrunk witness has a cocone");
        };
        (small, c)
    } else {
        (w.diagram, w.collision)
    };
    if cfg.verify && has_cocone(&diagram).exists() {
        bail!("internal error: witness diagram has a cocone");
    }
    let doc = Document::Diagram(format::witness_doc(&diagram, &collision));
    let text = format!(
        "{}{}",
        describe_diagram(&diagram),
        describe_collision(&diagram, &collision)
    );
    emit(cfg, &doc, &text)?;
    Ok(Outcome::Positive)
}

fn cocone(cfg: &RunConfig, shape_path: &Path, diagram_path: &Path) -> Result<Outcome> {
    let shape = read_shape(shape_path)?;
    let Document::Diagram(doc) = read(diagram_path)? else {
        bail!("{}: expected a diagram document", diagram_path.display());
    };
    let raw = amalgam::diagram::DiagramPresentation {
        carriers: doc.carriers.clone(),
        actions: doc.actions.clone(),
    };
    let d = amalgam::diagram::validate_diagram(shape.clone(), &raw)
        .with_context(|| format!("{} against {}", diagram_path.display(), shape_path.display()))?;
    let skeleton = match skeleton_poset(&shape) {
        Ok(s) if s.poset.len() == shape.object_count() => s,
        _ => {
            eprintln!("{}: cocone construction needs a poset shape", shape_path.display());
            return Ok(Outcome::Negative);
        }
    };
    let cert = match is_forest_like(&skeleton.poset) {
        ForestDecision::Forest(cert) => cert,
        ForestDecision::NotForest(_) => {
            eprintln!(
                "{}: shape is not forest-like; no certificate to build from",
                shape_path.display()
            );
            return Ok(Outcome::Negative);
        }
    };
    let cocone = build_cocone_forest(&d, &cert)?;
    if cfg.verify {
        cocone.validate(&d)?;
    }
    let doc = Document::Cocone(format::cocone_doc(&d, &cocone));
    let mut text = format!("apex = {{{}}}\n", cocone.apex.join(", "));
    for o in 0..shape.object_count() {
        let pairs: Vec<String> = cocone.legs[o]
            .iter()
            .enumerate()
            .map(|(x, &y)| format!("{} -> {}", d.carrier(o)[x], cocone.apex[y]))
            .collect();
        writeln!(text, "  {}: {}", shape.object_name(o), pairs.join(", ")).unwrap();
    }
    emit(cfg, &doc, &text)?;
    Ok(Outcome::Positive)
}

fn oracle(cfg: &RunConfig, path: &Path) -> Result<Outcome> {
    let (doc, d) = read_diagram(path)?;
    match has_cocone(&d) {
        CoconeCheck::Exists(c) => {
            if cfg.verify {
                c.validate(&d)?;
            }
            let text = format!("cocone exists: colimit has {} elements\n", c.apex.len());
            emit(cfg, &Document::Cocone(format::cocone_doc(&d, &c)), &text)?;
            Ok(Outcome::Positive)
        }
        CoconeCheck::Blocked(c) => {
            let out = DiagramDoc {
                collision: Some(format::collision_doc(&d, &c)),
                ..doc
            };
            emit(cfg, &Document::Diagram(out), &describe_collision(&d, &c))?;
            Ok(Outcome::Negative)
        }
    }
}

fn generate(cfg: &RunConfig, kind: GenKind, size: Option<usize>, shape: Option<&Path>) -> Result<Outcome> {
    let default = match kind {
        GenKind::Diagram => 3,
        _ => 5,
    };
    let size = size.unwrap_or(default.min(cfg.max_size));
    if size > cfg.max_size {
        bail!("size {size} exceeds --max-size {}", cfg.max_size);
    }
    let mut rng = gen::rng(cfg.seed);
    let (doc, text) = match kind {
        GenKind::Poset | GenKind::Forest | GenKind::Nonforest => {
            let p = match kind {
                GenKind::Poset => gen::random_poset(size, &mut rng),
                GenKind::Forest => gen::random_forest(size, &mut rng),
                _ => gen::random_nonforest(size, &mut rng)
                    .ok_or_else(|| anyhow!("a non-forest-like poset needs at least 4 elements"))?,
            };
            check_generated_poset(cfg, kind, &p)?;
            let pd = format::poset_doc(&p);
            let text = format!(
                "{} elements, covers: {}\n",
                p.len(),
                pd.covers
                    .iter()
                    .map(|[a, b]| format!("{a}<{b}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            (Document::Poset(pd), text)
        }
        GenKind::Diagram => {
            let path = shape.ok_or_else(|| anyhow!("gen diagram needs --shape"))?;
            let shape_doc = read(path)?;
            let d = match &shape_doc {
                Document::Poset(pd) => {
                    let p = format::poset_from_doc(pd).with_context(|| path.display().to_string())?;
                    gen::random_poset_diagram(&p, size, &mut rng)
                }
                other => {
                    let c = format::shape_from_document(other).with_context(|| path.display().to_string())?;
                    gen::random_diagram(&c, &mut rng)
                }
            };
            let dd = format::diagram_doc(&d, ShapeRef::Inline(Box::new(shape_doc)));
            if cfg.verify {
                let back = format::diagram_from_doc(&dd, Path::new("."))?;
                if back != d {
                    bail!("internal error: generated diagram does not round-trip");
                }
            }
            (Document::Diagram(dd), describe_diagram(&d))
        }
    };
    emit(cfg, &doc, &text)?;
    Ok(Outcome::Positive)
}

fn check_generated_poset(cfg: &RunConfig, kind: GenKind, p: &FinPoset) -> Result<()> {
    let decision = is_forest_like(p);
    match (kind, decision) {
        (GenKind::Nonforest, ForestDecision::Forest(_)) => bail!("internal error: generated poset is forest-like"),
        (GenKind::Forest, ForestDecision::NotForest(_)) => bail!("internal error: generated poset is not forest-like"),
        (GenKind::Forest, ForestDecision::Forest(cert)) if cfg.verify => Ok(cert.verify(p)?),
        (GenKind::Nonforest, ForestDecision::NotForest(w)) if cfg.verify => Ok(w.verify(p)?),
        _ => Ok(()),
    }
}

fn validate(cfg: &RunConfig, paths: &[PathBuf], diagram: Option<&Path>) -> Result<Outcome> {
    if paths.is_empty() {
        bail!("no files given");
    }
    if cfg.out.is_some() && paths.len() != 1 {
        bail!("--out needs exactly one input");
    }
    for path in paths {
        let summary = validate_one(cfg, path, diagram).with_context(|| path.display().to_string())?;
        println!("{}: {summary}", path.display());
    }
    Ok(Outcome::Positive)
}

fn validate_one(cfg: &RunConfig, path: &Path, diagram: Option<&Path>) -> Result<String> {
    let doc = read(path)?;
    Ok(match &doc {
        Document::Category(cd) if cd.pinv.is_some() => {
            let ic = format::inverse_from_document(&doc)?;
            let report = check_inverse_laws(&ic);
            if !report.is_clean() {
                bail!("inverse laws fail: {}", report.violations.join("; "));
            }
            let wp = wagner_preston(&ic);
            wp.verify(ic.base())?;
            if let Some(out) = &cfg.out {
                let rep = Document::Diagram(format::representation_doc(&ic, &wp));
                std::fs::write(out, format::render(&rep)).with_context(|| format!("writing {}", out.display()))?;
            }
            format!(
                "valid inverse category, {} morphisms, faithful representation by partial injections",
                ic.base().morphism_count()
            )
        }
        Document::Category(_) | Document::Poset(_) => {
            let c = format::shape_from_document(&doc)?;
            format!(
                "valid {}, {} objects, {} morphisms",
                doc.kind(),
                c.object_count(),
                c.morphism_count()
            )
        }
        Document::Diagram(dd) => {
            let d = format::diagram_from_doc(dd, base_dir(path))?;
            if dd.collision.is_some() && cfg.verify && has_cocone(&d).exists() {
                bail!("diagram claims a collision but has a cocone");
            }
            format!("valid diagram, {} elements", d.total_size())
        }
        Document::Cocone(cd) => match diagram {
            Some(dp) => {
                let (_, d) = read_diagram(dp)?;
                let c = format::cocone_from_doc(cd, &d)?;
                c.validate(&d)?;
                format!("valid cocone over {}", dp.display())
            }
            None => format!(
                "well-formed cocone, apex of {} elements (pass --diagram to check legs)",
                cd.apex.len()
            ),
        },
        Document::Verdict(vd) => {
            if cfg.verify {
                recheck_verdict_doc(vd)?;
            }
            "well-formed verdict".to_string()
        }
    })
}

fn recheck_verdict_doc(vd: &format::VerdictDoc) -> Result<()> {
    use format::EvidenceDoc;
    match &vd.evidence {
        EvidenceDoc::Certificate {
            skeleton, cocone_demo, ..
        } => {
            let p = format::poset_from_doc(skeleton)?;
            if !is_forest_like(&p).is_forest() {
                bail!("certified skeleton is not forest-like");
            }
            if let Some(demo) = cocone_demo {
                let d = format::diagram_from_doc(&demo.diagram, Path::new("."))?;
                format::cocone_from_doc(&demo.cocone, &d)?.validate(&d)?;
            }
        }
        EvidenceDoc::NonPreorder { witness, .. } | EvidenceDoc::NonForest { witness, .. } => {
            let d = format::diagram_from_doc(witness, Path::new("."))?;
            if has_cocone(&d).exists() {
                bail!("witness diagram has a cocone");
            }
        }
    }
    Ok(())
}
