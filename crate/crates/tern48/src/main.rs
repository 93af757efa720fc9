use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use tern48::format;
use tern48::gamma;
use tern48::manifest::{digest_file, RunManifest};
use tern48::pipeline::{self, ClassCounter};
use tern48::verify;
use tern48::Pool;
use tern48_core::code::TernaryCode;
use tern48_core::design::{validate_symmetric_design, DesignParams, IncidenceStructure};
use tern48_core::equivalence::{canonical_design, code_canon};
use tern48_core::indexer::{Cursor, Expander};
use tern48_core::orbit_matrix::{generate_orbit_matrices, OrbitMatrix, APPENDIX_SIZES};
use tern48_core::weight::Classification;

#[derive(Parser)]
#[command(name = "tern48", version, about = "Ternary self-dual codes from 2-(47,23,11) designs with an automorphism of order 6")]
struct Cli {
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output style on standard output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory for output files and the run manifest.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Tier {
    Fast,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate orbit matrices up to row and column permutations.
    GenerateOm {
        /// Design parameters v,k,lambda.
        #[arg(long, default_value = "47,23,11", value_delimiter = ',')]
        params: Vec<usize>,
        /// Group order.
        #[arg(long, default_value_t = 6)]
        order: usize,
        /// Orbit sizes, used for points and blocks.
        #[arg(long, default_value = "1,2,2,3,3,6,6,6,6,6,6", value_delimiter = ',')]
        sizes: Vec<usize>,
    },
    /// Expand orbit matrices into designs.
    Expand {
        /// OM1..OM4 or orbit-matrix files.
        #[arg(required = true)]
        matrices: Vec<String>,
        /// Transpose file inputs before expanding (OM1..OM4 always are).
        #[arg(long)]
        dual: bool,
        /// Stop after this many designs per matrix.
        #[arg(long)]
        limit: Option<usize>,
        /// Wall-clock budget in seconds; a resumption token is printed when it runs out.
        #[arg(long)]
        budget: Option<f64>,
        /// Resume a single matrix from a task:skip token.
        #[arg(long)]
        resume: Option<String>,
        /// Keep one design per isomorphism class.
        #[arg(long)]
        isomorph_reject: bool,
        /// Rebuild one design from a whitespace-separated choice vector.
        #[arg(long)]
        replay: Option<String>,
    },
    /// Build the self-dual code of each design.
    BuildCode {
        /// Design files.
        #[arg(required = true)]
        designs: Vec<PathBuf>,
    },
    /// Weight reports for designs or codes, with the aggregate beta set.
    Analyze {
        /// Design or code files, or directories holding them.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Fail unless every beta lies in the set of OM1..OM4.
        #[arg(long)]
        gamma: Option<String>,
    },
    /// Monomial equivalence classes of codes (designs are converted first).
    ClassifyEquiv {
        /// Design or code files, or directories holding them.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Run the acceptance checks.
    VerifyPaper {
        /// fast runs criteria 1 to 7 in minutes; full runs 8 to 13 and takes hours.
        #[arg(long, value_enum, default_value_t = Tier::Fast)]
        tier: Tier,
    },
}

enum Failure {
    Usage(anyhow::Error),
    Verification(String),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

type Outcome = Result<(), Failure>;

fn usage(e: anyhow::Error) -> Failure {
    Failure::Usage(e)
}

struct Ctx {
    pool: Pool,
    format: Format,
    out_dir: Option<PathBuf>,
    manifest: RunManifest,
    started: Instant,
}

impl Ctx {
    fn out(&self, name: &str) -> Option<PathBuf> {
        self.out_dir.as_ref().map(|d| d.join(name))
    }

    fn write(&mut self, name: &str, contents: &str) -> anyhow::Result<()> {
        if let Some(path) = self.out(name) {
            fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
            self.manifest.outputs.push(digest_file(&path, name)?);
        }
        Ok(())
    }

    fn input(&mut self, path: &Path) -> Result<String, Failure> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))
            .map_err(usage)?;
        self.manifest.inputs.push(digest_file(path, &path.display().to_string()).map_err(|e| usage(e.into()))?);
        Ok(text)
    }

    fn finish(mut self) -> anyhow::Result<()> {
        self.manifest.wall_time_s = self.started.elapsed().as_secs_f64();
        if let Some(dir) = &self.out_dir {
            self.manifest.write(dir)?;
        }
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match Pool::new(cli.threads) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if let Some(dir) = &cli.out_dir {
        if let Err(e) = fs::create_dir_all(dir) {
            eprintln!("error: creating {}: {e}", dir.display());
            return ExitCode::from(2);
        }
    }
    let name = match &cli.command {
        Command::GenerateOm { .. } => "generate-om",
        Command::Expand { .. } => "expand",
        Command::BuildCode { .. } => "build-code",
        Command::Analyze { .. } => "analyze",
        Command::ClassifyEquiv { .. } => "classify-equiv",
        Command::VerifyPaper { .. } => "verify-paper",
    };
    let mut ctx = Ctx {
        pool,
        format: cli.format,
        out_dir: cli.out_dir,
        manifest: RunManifest::new(name),
        started: Instant::now(),
    };
    if let Some(t) = cli.threads {
        ctx.manifest.param("threads", t);
    }
    let result = match cli.command {
        Command::GenerateOm { params, order, sizes } => generate(&mut ctx, &params, order, &sizes),
        Command::Expand {
            matrices,
            dual,
            limit,
            budget,
            resume,
            isomorph_reject,
            replay,
        } => expand(&mut ctx, &matrices, dual, limit, budget, resume, isomorph_reject, replay),
        Command::BuildCode { designs } => build_code(&mut ctx, &designs),
        Command::Analyze { inputs, gamma } => analyze(&mut ctx, &inputs, gamma),
        Command::ClassifyEquiv { inputs } => classify_equiv(&mut ctx, &inputs),
        Command::VerifyPaper { tier } => verify_paper(&mut ctx, tier),
    };
    let result = result.and_then(|()| ctx.finish().map_err(Failure::Runtime));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value"));
}

fn generate(ctx: &mut Ctx, params: &[usize], order: usize, sizes: &[usize]) -> Outcome {
    let [v, k, lambda] = params else {
        return Err(usage(anyhow::anyhow!("--params takes three values v,k,lambda")));
    };
    let p = DesignParams::new(*v, *k, *lambda).map_err(|e| usage(e.into()))?;
    ctx.manifest
        .param("params", format!("{},{},{}", p.v, p.k, p.lambda))
        .param("order", order)
        .param("sizes", format!("{sizes:?}"));
    let all = generate_orbit_matrices(p, order, sizes, sizes).map_err(|e| usage(e.into()))?;
    let width = all.len().to_string().len().max(2);
    let mut names = Vec::new();
    for (i, om) in all.iter().enumerate() {
        let name = format!("om-{:0width$}.om", i + 1);
        ctx.write(&name, &format::write_orbit_matrix(om))?;
        names.push(name);
    }
    let appendix_sizes = p == DesignParams::SYM_47_23_11 && order == 6 && sizes == APPENDIX_SIZES;
    let mut members = BTreeMap::new();
    if appendix_sizes {
        for id in 1..=4 {
            let om = OrbitMatrix::appendix(id).expect("bundled");
            let at = all.iter().position(|g| g.equivalent(&om));
            members.insert(format!("OM{id}"), at.map(|i| names[i].clone()));
        }
    }
    match ctx.format {
        Format::Json => print_json(&json!({
            "count": all.len(),
            "target": appendix_sizes.then_some(32),
            "files": names,
            "appendix": members,
        })),
        Format::Text => {
            println!("{} orbit matrices", all.len());
            if appendix_sizes {
                let note = if all.len() == 32 { "matches" } else { "MISMATCH with" };
                println!("{note} the published count 32");
                for (id, at) in &members {
                    println!("{id}: {}", at.as_deref().unwrap_or("not found"));
                }
            }
        }
    }
    Ok(())
}

/// The matrix to expand and its label.
fn load_matrix(ctx: &mut Ctx, spec: &str, dual: bool) -> Result<(OrbitMatrix, String), Failure> {
    let upper = spec.to_ascii_uppercase();
    if let Some(id) = upper.strip_prefix("OM").and_then(|s| s.parse::<usize>().ok()) {
        if (1..=4).contains(&id) && !Path::new(spec).exists() {
            return Ok((pipeline::appendix_for_expansion(id).map_err(usage)?, upper));
        }
    }
    let path = Path::new(spec);
    let text = ctx.input(path)?;
    let om = format::parse_orbit_matrix(&text)
        .with_context(|| format!("parsing {spec}"))
        .map_err(usage)?;
    let om = if dual { om.dual().map_err(|e| usage(e.into()))? } else { om };
    let label = path.file_stem().map_or("om".into(), |s| s.to_string_lossy().into_owned());
    Ok((om, label))
}

#[allow(clippy::too_many_arguments)]
fn expand(
    ctx: &mut Ctx,
    matrices: &[String],
    dual: bool,
    limit: Option<usize>,
    budget: Option<f64>,
    resume: Option<String>,
    isomorph_reject: bool,
    replay: Option<String>,
) -> Outcome {
    if matrices.len() > 1 && (resume.is_some() || replay.is_some()) {
        return Err(usage(anyhow!("--resume and --replay take a single matrix")));
    }
    let start: Cursor = match &resume {
        Some(t) => t.parse().map_err(|e: tern48_core::Error| usage(e.into()))?,
        None => Cursor::default(),
    };
    let budget = budget.map(|b| Duration::from_secs_f64(b.max(0.0)));
    ctx.manifest
        .param("matrices", matrices.join(" "))
        .param("dual", dual)
        .param("limit", limit.map_or("none".into(), |l| l.to_string()))
        .param("budget_s", budget.map_or("none".into(), |b| b.as_secs_f64().to_string()))
        .param("resume", start)
        .param("isomorph_reject", isomorph_reject);
    let p = DesignParams::SYM_47_23_11;
    let mut provenance = String::new();
    let mut global = BTreeSet::new();
    let mut rows = Vec::new();
    let mut emitted = 0;
    let mut deadline_hit = false;
    for spec in matrices {
        let (om, label) = load_matrix(ctx, spec, dual)?;
        pipeline::check_expandable(&om).map_err(usage)?;
        let ex = Expander::with_label(&om, &label).map_err(|e| usage(e.into()))?;
        ctx.write(&format!("{label}.om"), &format::write_orbit_matrix(&om))?;
        let (results, next) = if let Some(cells) = &replay {
            let cells = pipeline::parse_cells(cells).map_err(usage)?;
            (vec![ex.replay(&cells).map_err(|e| usage(e.into()))?], None)
        } else {
            let left = budget.map(|b| b.saturating_sub(ctx.started.elapsed()));
            let run = pipeline::expand_within(&ex, &ctx.pool, start, limit, left);
            deadline_hit |= run.out_of_time;
            (run.expansion.results, run.expansion.next)
        };
        let keys = pipeline::par_map(&ctx.pool, &results, |r| canonical_design(&r.design).canonical_matrix);
        let mut local = BTreeSet::new();
        let mut kept = 0;
        for (r, key) in results.iter().zip(keys) {
            let fresh = local.insert(key.clone());
            global.insert(key);
            if isomorph_reject && !fresh {
                continue;
            }
            kept += 1;
            let p = if om.params == p { p } else { om.params };
            let name = format!("{}-{:06}.design", label.to_lowercase(), kept);
            ctx.write(&name, &format::write_design(&p, &r.design))?;
            let cells: Vec<String> = r.choice_vector().iter().map(|c| c.to_string()).collect();
            provenance += &format!("{name} {label} {}\n", cells.join(" "));
        }
        emitted += kept;
        let token = next.map(|c| c.to_string());
        rows.push((label, results.len(), local.len(), kept, token));
    }
    ctx.write("provenance.txt", &provenance)?;
    ctx.manifest.counts.designs_emitted = Some(emitted);
    if rows.len() == 1 {
        ctx.manifest.resume = rows[0].4.clone();
    }
    match ctx.format {
        Format::Json => print_json(&json!({
            "matrices": rows.iter().map(|(l, raw, iso, kept, next)| json!({
                "label": l, "raw": raw, "non_isomorphic": iso, "emitted": kept, "resume": next,
            })).collect::<Vec<_>>(),
            "global_non_isomorphic": global.len(),
            "budget_exhausted": deadline_hit,
        })),
        Format::Text => {
            for (l, raw, iso, kept, next) in &rows {
                let tail = next.as_ref().map_or("complete".to_string(), |t| format!("resume with --resume {t}"));
                println!("{l}: {raw} designs, {iso} non-isomorphic, {kept} written; {tail}");
            }
            println!("global: {} non-isomorphic", global.len());
            if deadline_hit {
                println!("budget exhausted");
            }
            if ctx.out_dir.is_none() {
                print!("{provenance}");
            }
        }
    }
    Ok(())
}

fn read_design(ctx: &mut Ctx, path: &Path) -> Result<(DesignParams, IncidenceStructure), Failure> {
    let text = ctx.input(path)?;
    format::parse_design(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(usage)
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or("input".into(), |s| s.to_string_lossy().into_owned())
}

fn build_code(ctx: &mut Ctx, designs: &[PathBuf]) -> Outcome {
    for path in designs {
        let (p, d) = read_design(ctx, path)?;
        if !validate_symmetric_design(&d, &p).map_err(|e| usage(e.into()))? {
            return Err(usage(anyhow!("{} is not a 2-{:?} design", path.display(), (p.v, p.k, p.lambda))));
        }
        let c = pipeline::design_code(&p, &d).map_err(usage)?;
        let text = format::write_code(&c);
        let name = format!("{}.code", stem(path));
        if ctx.out_dir.is_some() {
            ctx.write(&name, &text)?;
            println!("{name}: [{}, {}]", c.length(), c.dimension());
        } else {
            print!("{text}");
        }
    }
    Ok(())
}

enum Input {
    Design(DesignParams, IncidenceStructure),
    Code(TernaryCode),
}

/// Files named on the command line, directories expanded to their design
/// and code files in name order, with the provenance labels found beside
/// them.
fn collect_inputs(ctx: &mut Ctx, inputs: &[PathBuf]) -> Result<Vec<(PathBuf, String, Input)>, Failure> {
    let mut files = Vec::new();
    for p in inputs {
        if p.is_dir() {
            let mut found: Vec<PathBuf> = fs::read_dir(p)
                .with_context(|| format!("listing {}", p.display()))
                .map_err(usage)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| matches!(f.extension().and_then(|e| e.to_str()), Some("design" | "code")))
                .collect();
            found.sort();
            files.extend(found);
        } else {
            files.push(p.clone());
        }
    }
    let mut labels: BTreeMap<PathBuf, String> = BTreeMap::new();
    let dirs: BTreeSet<PathBuf> = files.iter().filter_map(|f| f.parent().map(Path::to_path_buf)).collect();
    for dir in dirs {
        if let Ok(text) = fs::read_to_string(dir.join("provenance.txt")) {
            for line in text.lines() {
                let mut it = line.split_whitespace();
                if let (Some(file), Some(label)) = (it.next(), it.next()) {
                    labels.insert(dir.join(file), label.to_string());
                }
            }
        }
    }
    let mut out = Vec::new();
    for f in files {
        let label = labels.get(&f).cloned().unwrap_or_else(|| "input".into());
        let input = if f.extension().and_then(|e| e.to_str()) == Some("code") {
            let text = ctx.input(&f)?;
            Input::Code(format::parse_code(&text).with_context(|| format!("parsing {}", f.display())).map_err(usage)?)
        } else {
            let (p, d) = read_design(ctx, &f)?;
            Input::Design(p, d)
        };
        out.push((f, label, input));
    }
    Ok(out)
}

#[derive(Default)]
struct Group {
    inputs: usize,
    designs: BTreeSet<IncidenceStructure>,
    d12: usize,
    betas: BTreeSet<u64>,
}

fn analyze(ctx: &mut Ctx, inputs: &[PathBuf], gamma_id: Option<String>) -> Outcome {
    let want = match &gamma_id {
        Some(g) => {
            let id = g
                .to_ascii_uppercase()
                .strip_prefix("OM")
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|id| (1..=4).contains(id))
                .ok_or_else(|| usage(anyhow!("--gamma takes OM1..OM4")))?;
            ctx.manifest.param("gamma", format!("OM{id}"));
            Some((id, gamma::corrected(id)))
        }
        None => None,
    };
    let items = collect_inputs(ctx, inputs)?;
    let analyzed = pipeline::par_map(&ctx.pool, &items, |(_, _, input)| -> anyhow::Result<_> {
        let seq = tern48_core::exec::Sequential;
        match input {
            Input::Design(p, d) => {
                if !validate_symmetric_design(d, p)? {
                    anyhow::bail!("not a 2-{:?} design", (p.v, p.k, p.lambda));
                }
                let (_, r) = pipeline::analyze_design(p, d, &seq)?;
                Ok((r, Some(canonical_design(d).canonical_matrix)))
            }
            Input::Code(c) => Ok((tern48_core::weight::classify(c, &seq)?, None)),
        }
    });
    let mut groups: BTreeMap<String, Group> = BTreeMap::new();
    let mut global = Group::default();
    let mut records = Vec::new();
    let mut outside = Vec::new();
    for ((path, label, _), a) in items.iter().zip(analyzed) {
        let (report, key) = a.with_context(|| format!("analyzing {}", path.display())).map_err(usage)?;
        let g = groups.entry(label.clone()).or_default();
        for g in [g, &mut global] {
            g.inputs += 1;
            if let Some(k) = &key {
                g.designs.insert(k.clone());
            }
            if report.classification == Classification::NearExtremal && report.n == 48 {
                g.d12 += 1;
                g.betas.extend(report.beta);
            }
        }
        if let (Some((_, set)), Some(b)) = (&want, report.beta) {
            if !set.contains(&b) {
                outside.push(format!("{} beta={b}", path.display()));
            }
        }
        let name = stem(path);
        match ctx.format {
            Format::Json => ctx.write(&format!("{name}.json"), &(format::report_to_json(&report) + "\n"))?,
            Format::Text => ctx.write(&format!("{name}.report"), &format::write_report(&report))?,
        }
        records.push((path.display().to_string(), report));
    }
    ctx.manifest.counts.designs_emitted = Some(global.designs.len());
    ctx.manifest.counts.d12_codes = Some(global.d12);
    ctx.manifest.counts.distinct_beta = Some(global.betas.len());
    let group_json = |g: &Group| {
        json!({
            "inputs": g.inputs, "non_isomorphic_designs": g.designs.len(),
            "d12_codes": g.d12, "distinct_beta": g.betas.len(), "beta": g.betas,
        })
    };
    match ctx.format {
        Format::Json => print_json(&json!({
            "reports": records.iter().map(|(f, r)| json!({
                "file": f,
                "report": serde_json::to_value(format::ReportJson::from(r)).expect("plain data"),
            })).collect::<Vec<_>>(),
            "groups": groups.iter().map(|(l, g)| (l.clone(), group_json(g))).collect::<BTreeMap<_, _>>(),
            "global": group_json(&global),
        })),
        Format::Text => {
            for (f, r) in &records {
                let beta = r.beta.map_or("-".into(), |b| b.to_string());
                println!("{f}: d={} {} beta={beta}", r.d, r.classification);
            }
            for (label, g) in groups.iter().chain([(&"global".to_string(), &global)]) {
                println!(
                    "{label}: {} inputs, {} non-isomorphic designs, {} codes with d=12, {} distinct beta {:?}",
                    g.inputs,
                    g.designs.len(),
                    g.d12,
                    g.betas.len(),
                    g.betas
                );
            }
        }
    }
    if let Some((id, _)) = want {
        if !outside.is_empty() {
            return Err(Failure::Verification(format!("beta outside Gamma_OM{id}: {}", outside.join(", "))));
        }
    }
    Ok(())
}

fn classify_equiv(ctx: &mut Ctx, inputs: &[PathBuf]) -> Outcome {
    let items = collect_inputs(ctx, inputs)?;
    let canons = pipeline::par_map(&ctx.pool, &items, |(_, _, input)| -> anyhow::Result<_> {
        let seq = tern48_core::exec::Sequential;
        let code = match input {
            Input::Design(p, d) => pipeline::design_code(p, d)?,
            Input::Code(c) => c.clone(),
        };
        let canon = code_canon(&code, &seq)?;
        Ok((code, canon))
    });
    let mut counter = ClassCounter::default();
    let mut rows = Vec::new();
    let mut d12_classes = BTreeSet::new();
    for ((path, _, _), a) in items.iter().zip(canons) {
        let (code, canon) = a.with_context(|| format!("classifying {}", path.display())).map_err(usage)?;
        let (d, a_d) = (canon.fingerprint.d, canon.fingerprint.a_d);
        let class = counter.add(&code, canon)?;
        if d == 12 && code.length() == 48 {
            d12_classes.insert(class);
        }
        rows.push((path.display().to_string(), class, d, a_d));
    }
    ctx.manifest.counts.inequivalent_classes = Some(counter.classes());
    let mut listing = String::new();
    for (f, class, d, a) in &rows {
        listing += &format!("{f} class={class} d={d} A_d={a}\n");
    }
    ctx.write("classes.txt", &listing)?;
    match ctx.format {
        Format::Json => print_json(&json!({
            "codes": rows.iter().map(|(f, c, d, a)| json!({"file": f, "class": c, "d": d, "a_d": a})).collect::<Vec<_>>(),
            "classes": counter.classes(),
            "classes_with_d12": d12_classes.len(),
        })),
        Format::Text => {
            print!("{listing}");
            println!("{} classes, {} among codes with d=12", counter.classes(), d12_classes.len());
        }
    }
    Ok(())
}

fn verify_paper(ctx: &mut Ctx, tier: Tier) -> Outcome {
    let json = ctx.format == Format::Json;
    let mut show = |o: &verify::Outcome| {
        if !json {
            println!("{o}");
        }
    };
    let outcomes = match tier {
        Tier::Fast => {
            ctx.manifest.param("tier", "fast");
            verify::fast(&ctx.pool, &mut show)
        }
        Tier::Full => {
            ctx.manifest.param("tier", "full");
            verify::full(&ctx.pool, &mut show, &mut |line| eprintln!("{line}"))
        }
    };
    let mut text = String::new();
    for o in &outcomes {
        text += &format!("{o}\n");
    }
    ctx.write("verify.txt", &text)?;
    if json {
        print_json(&json!(outcomes
            .iter()
            .map(|o| json!({"criterion": o.id, "title": o.title, "pass": o.pass, "detail": o.detail}))
            .collect::<Vec<_>>()));
    }
    let failed: Vec<String> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id.to_string()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("criteria {}", failed.join(", "))))
    }
}
