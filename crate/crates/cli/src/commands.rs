use std::path::{Path, PathBuf};

use selattice::conditional::{smoothed_subjunctive, topic_subjunctive};
use selattice::corpus::{strip_gutenberg, tokenize, DocumentDump};
use selattice::crosslingual::{
    align_compare, baseline_similarity, morphism_check, DiffReport, KeywordAlignment, LanguageSide,
};
use selattice::order::run_reference_checks;
use selattice::topic::{
    build_lattice, detect_anomalies, export_dot, export_json, import_json, render_table, resolve, ResolveStrategy,
};
use selattice::{CompositionConvention, Corpus, CorpusAverages, Document, Execution, SelectiveEraser, SmoothingConfig};
use serde::Serialize;

use crate::{read_text, write_text, CliError, RunConfig};

fn sorted_json<T: Serialize>(v: &T) -> Result<String, CliError> {
    let value = serde_json::to_value(v).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut s = serde_json::to_string_pretty(&value).map_err(|e| CliError::Usage(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn stem(path: &Path) -> String {
    let name = path.file_name().and_then(|s| s.to_str()).unwrap_or("doc");
    name.strip_suffix(".doc.json")
        .or_else(|| path.file_stem().and_then(|s| s.to_str()))
        .unwrap_or("doc")
        .to_owned()
}

fn tokenize_text(cfg: &RunConfig, path: &Path, language: &str) -> Result<Document, CliError> {
    let raw = read_text(path)?;
    let body = if cfg.inputs.strip_gutenberg {
        strip_gutenberg(&raw).0
    } else {
        raw.as_str()
    };
    Ok(tokenize(stem(path), language, body, &cfg.tokenizer)?)
}

/// Raw text, or a document JSON carrying its tokens.
fn load_document(cfg: &RunConfig, path: &Path) -> Result<Document, CliError> {
    if path.extension().is_some_and(|e| e == "json") {
        let dump: DocumentDump =
            serde_json::from_str(&read_text(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        Ok(dump.into_document()?)
    } else {
        tokenize_text(cfg, path, &cfg.inputs.language)
    }
}

fn input_or_config(cfg: &RunConfig, path: Option<PathBuf>) -> Result<PathBuf, CliError> {
    path.or_else(|| cfg.inputs.text.clone())
        .ok_or_else(|| CliError::Usage("no input given and `inputs.text` not set".into()))
}

pub fn ingest(
    cfg: &RunConfig,
    path: Option<PathBuf>,
    output: Option<PathBuf>,
    language: Option<String>,
) -> Result<(), CliError> {
    let path = input_or_config(cfg, path)?;
    let language = language.unwrap_or_else(|| cfg.inputs.language.clone());
    let doc = tokenize_text(cfg, &path, &language)?;
    let out = output.unwrap_or_else(|| cfg.output_dir.join(format!("{}.doc.json", stem(&path))));
    write_text(&out, &sorted_json(&doc.dump(true))?)?;
    println!("tokens={} terms={}", doc.len(), doc.term_count());
    Ok(())
}

pub fn conditional(
    cfg: &RunConfig,
    doc: &Path,
    ante: &str,
    cons: &str,
    topic_width: Option<usize>,
    mu: Option<f64>,
    convention: Option<CompositionConvention>,
) -> Result<(), CliError> {
    let ea: SelectiveEraser = ante.parse()?;
    let eb: SelectiveEraser = cons.parse()?;
    let doc = load_document(cfg, doc)?;
    let corpus = Corpus::single(doc);
    let averages = CorpusAverages::new(&corpus);
    let sm = SmoothingConfig::new(mu.unwrap_or(cfg.topic.mu), &averages)?;
    let conv = convention.unwrap_or(cfg.topic.convention);
    let d = &corpus.documents()[0];
    let result = match topic_width {
        Some(wt) => topic_subjunctive(d, &ea, &eb, wt, &sm, conv)?,
        None => smoothed_subjunctive(d, &ea, &eb, &sm, conv),
    };
    print!("{}", sorted_json(&result)?);
    Ok(())
}

pub fn lattice(
    cfg: &RunConfig,
    doc: Option<PathBuf>,
    keywords: Vec<String>,
    mu: Option<f64>,
    name: Option<String>,
    sequential: bool,
) -> Result<(), CliError> {
    let path = input_or_config(cfg, doc)?;
    let mut topic = cfg.topic.clone();
    if !keywords.is_empty() {
        topic.keywords = keywords;
    }
    if let Some(mu) = mu {
        topic.mu = mu;
    }
    topic.validate()?;
    let doc = load_document(cfg, &path)?;
    if topic.keywords.iter().all(|k| doc.term_id(k).is_none()) {
        return Err(CliError::Coverage(format!(
            "none of the keywords {:?} occurs in {}",
            topic.keywords,
            path.display()
        )));
    }
    let missing: Vec<&String> = topic.keywords.iter().filter(|k| doc.term_id(k).is_none()).collect();
    if !missing.is_empty() {
        eprintln!("warning: keywords absent from text: {missing:?}");
    }
    let exec = if sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let corpus = Corpus::single(doc);
    let averages = CorpusAverages::new(&corpus);
    let lattice = build_lattice(&corpus.documents()[0], &topic, &averages, exec)?;

    let name = name.unwrap_or_else(|| stem(&path));
    let dir = &cfg.output_dir;
    let table = render_table(&lattice);
    write_text(&dir.join(format!("{name}.table.txt")), &table)?;
    write_text(&dir.join(format!("{name}.lattice.json")), &export_json(&lattice)?)?;
    write_text(&dir.join(format!("{name}.lattice.dot")), &export_dot(&lattice))?;
    let anomalies = detect_anomalies(&lattice);
    write_text(&dir.join(format!("{name}.anomalies.json")), &sorted_json(&anomalies)?)?;
    for (strategy, tag) in [
        (ResolveStrategy::PruneMin, "prune-min"),
        (ResolveStrategy::Collapse, "collapse"),
    ] {
        let resolved = resolve(&lattice, strategy)?;
        write_text(&dir.join(format!("{name}.{tag}.json")), &export_json(&resolved)?)?;
        write_text(&dir.join(format!("{name}.{tag}.dot")), &export_dot(&resolved))?;
    }

    print!("{table}");
    println!("anomalies={}", anomalies.len());
    for a in &anomalies {
        let nodes: Vec<String> = a.nodes.iter().map(ToString::to_string).collect();
        println!(
            "  cycle {{{}}} weakest {} -> {} p={:.4}",
            nodes.join(", "),
            a.weakest.antecedent,
            a.weakest.consequent,
            a.weakest.probability
        );
    }
    println!("written to {}", dir.display());
    Ok(())
}

pub fn compare(
    cfg: &RunConfig,
    lattice1: &Path,
    lattice2: &Path,
    alignment: &Path,
    output: Option<PathBuf>,
    baseline: Option<Vec<PathBuf>>,
) -> Result<(), CliError> {
    let load = |p: &Path| -> Result<_, CliError> {
        import_json(&read_text(p)?).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))
    };
    let l1 = load(lattice1)?;
    let l2 = load(lattice2)?;
    let al = KeywordAlignment::parse(&read_text(alignment)?)?;
    let diff = align_compare(&l1, &l2, &al)?;
    let morphism = morphism_check(&l1, &l2, &al)?;
    let report = DiffReport::new(diff, morphism);
    let out = output.unwrap_or_else(|| cfg.output_dir.join("compare.json"));
    write_text(&out, &sorted_json(&report)?)?;
    println!(
        "similarity={:.4} shared={} only_l1={} only_l2={} morphism={}",
        report.similarity,
        report.shared.len(),
        report.only_l1.len(),
        report.only_l2.len(),
        if report.morphism.holds {
            "holds".to_owned()
        } else {
            format!("{} violations", report.morphism.violations.len())
        }
    );
    for e in &report.shared {
        println!(
            "  shared {} -> {} ~ {} -> {} dw=({:+},{:+}) dp={:+.4}",
            e.l1.ante, e.l1.cons, e.l2.ante, e.l2.cons, e.delta_ante_width, e.delta_cons_width, e.delta_p
        );
    }
    for v in &report.morphism.violations {
        println!("  violation {} -> {}", v.ante, v.cons);
    }

    if let Some(texts) = baseline {
        let d1 = tokenize_text(cfg, &texts[0], "first")?;
        let d2 = tokenize_text(cfg, &texts[1], "second")?;
        let (c1, c2) = (Corpus::single(d1), Corpus::single(d2));
        let (a1, a2) = (CorpusAverages::new(&c1), CorpusAverages::new(&c2));
        let first = LanguageSide {
            doc: &c1.documents()[0],
            averages: &a1,
            config: &l1.config,
        };
        let second = LanguageSide {
            doc: &c2.documents()[0],
            averages: &a2,
            config: &l2.config,
        };
        let null = baseline_similarity(first, second, cfg.trials, cfg.seed, Execution::default())?;
        let path = out.with_extension("baseline.json");
        write_text(&path, &sorted_json(&null)?)?;
        println!(
            "baseline trials={} mean={:.4} min={:.4} max={:.4} exceeded={}",
            null.trials,
            null.mean,
            null.min,
            null.max,
            report.similarity > null.max
        );
    }
    Ok(())
}

pub fn qcheck() -> Result<(), CliError> {
    let checks = run_reference_checks()?;
    let mut failed = 0;
    for c in &checks {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        failed += usize::from(!c.passed);
    }
    if failed > 0 {
        return Err(CliError::Check(format!("{failed} of {} checks failed", checks.len())));
    }
    println!("all {} checks passed", checks.len());
    Ok(())
}
