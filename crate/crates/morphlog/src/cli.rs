//! The `morphlog` command line. [`run`] returns the exit code: 0 on success,
//! 1 on usage errors and 2 when the inputs are rejected by an operator.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use morphlog_core::abduction::{Relation, TheoryContext};
use morphlog_core::merging::{merge, Aggregation, Profile};
use morphlog_core::morphology::{
    close, connected_components, hausdorff, iterate, last_erosion, min_distance, open, reconstruct,
    skeleton, stratify, ultimate_erosion, Mode,
};
use morphlog_core::revision::revise;
use morphlog_core::worlds::{world_string, Distance};
use morphlog_core::{Alphabet, Formula, StructuringElement, WorldSet};
use serde_json::{json, Value};

use crate::io::{
    alphabet_for, formula_text, load_formula_file, load_se, models_of, read_formula_lines, render,
    render_within,
};
use crate::postulates::{
    abduction_configs, check_merging, check_merging_oracle, check_revision,
    check_revision_representation, check_unified, merging_op, postulate_matrix, suite,
    PostulateReport, SuiteSize, Sweep,
};

#[derive(Parser)]
#[command(
    name = "morphlog",
    version,
    about = "Morphological operators, revision, merging and abduction on propositional formulas"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Atom order, e.g. `a,b,c`; inferred from the formulas when absent.
    #[arg(long)]
    atoms: Option<String>,
    /// `hamming:<r>`, `restricted:<atoms>:<r>`, `restricted2:<atoms>` or `explicit:<path>`.
    #[arg(long, default_value = "hamming:1")]
    se: String,
    /// Print JSON.
    #[arg(long, conflicts_with = "minterms")]
    json: bool,
    /// Print model lists instead of formulas.
    #[arg(long)]
    minterms: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Agg {
    Max,
    Sum,
    Gmax,
}

impl From<Agg> for Aggregation {
    fn from(a: Agg) -> Self {
        match a {
            Agg::Max => Aggregation::Max,
            Agg::Sum => Aggregation::Sum,
            Agg::Gmax => Aggregation::GMax,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Rel {
    Lneu,
    Lned,
    Lc,
    F,
    Ue,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Revision,
    Merging,
    Abduction,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a formula and print it back.
    Parse {
        formula: String,
        #[command(flatten)]
        common: Common,
    },
    /// Models of a formula.
    Models {
        formula: String,
        #[command(flatten)]
        common: Common,
    },
    /// Iterated dilation.
    Dilate {
        formula: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Iterated erosion.
    Erode {
        formula: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Opening: erosion then dilation.
    Open {
        formula: String,
        #[command(flatten)]
        common: Common,
    },
    /// Closing: dilation then erosion.
    Close {
        formula: String,
        #[command(flatten)]
        common: Common,
    },
    /// Morphological skeleton.
    Skeleton {
        formula: String,
        #[command(flatten)]
        common: Common,
    },
    /// Ultimate erosion.
    Ue {
        formula: String,
        #[command(flatten)]
        common: Common,
    },
    /// Last nonempty erosion and its depth.
    LastErosion {
        formula: String,
        #[command(flatten)]
        common: Common,
    },
    /// Connected components.
    Components {
        formula: String,
        #[command(flatten)]
        common: Common,
    },
    /// Reconstruction of a marker inside a mask.
    Reconstruct {
        marker: String,
        mask: String,
        #[command(flatten)]
        common: Common,
    },
    /// Rank of every world in the erosion and dilation chains of a theory.
    Stratify {
        sigma: String,
        #[command(flatten)]
        common: Common,
    },
    /// Revision of a belief by new information.
    Revise {
        phi: String,
        psi: String,
        #[command(flatten)]
        common: Common,
    },
    /// Merging of a profile under an integrity constraint.
    Merge {
        /// Profile members; or use `--profile`.
        formulas: Vec<String>,
        /// File with one formula per line.
        #[arg(long)]
        profile: Option<PathBuf>,
        #[arg(long, default_value = "T")]
        mu: String,
        #[arg(long, value_enum, default_value = "sum")]
        agg: Agg,
        #[command(flatten)]
        common: Common,
    },
    /// Preferred explanation of an observation, or whether `--gamma` explains it.
    Explain {
        alpha: String,
        /// Background theory: a file path or a formula.
        #[arg(long)]
        sigma: String,
        #[arg(long, value_enum, default_value = "lc")]
        rel: Rel,
        #[arg(long)]
        gamma: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Best-ranked models of an observation under a theory's ordering.
    Central {
        alpha: String,
        #[arg(long)]
        sigma: String,
        #[command(flatten)]
        common: Common,
    },
    /// Distances between two formulas.
    Distance {
        first: String,
        second: String,
        #[command(flatten)]
        common: Common,
    },
    /// Postulate sweeps.
    Check {
        #[arg(value_enum)]
        family: Family,
        /// Number of atoms.
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Sample this many instances instead of enumerating.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum)]
        agg: Option<Agg>,
        #[arg(long, value_enum)]
        rel: Option<Rel>,
        #[arg(long, default_value = "hamming:1")]
        se: String,
        #[arg(long)]
        json: bool,
    },
}

/// Runs one invocation, writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(cli.cmd, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

/// Output of one command: text lines, or a JSON document.
struct Printer<'a> {
    alphabet: &'a Alphabet,
    json: bool,
    minterms: bool,
}

impl Printer<'_> {
    fn set(&self, ws: &WorldSet) -> String {
        if self.minterms {
            let worlds: Vec<String> = ws.iter().map(|w| world_string(w, ws.n())).collect();
            format!("{{{}}}", worlds.join(", "))
        } else {
            render(ws, self.alphabet)
        }
    }

    fn value(&self, ws: &WorldSet) -> Value {
        json!({ "formula": render(ws, self.alphabet), "models": ws.world_strings() })
    }
}

fn context(common: &Common, texts: &[&str]) -> Result<(Alphabet, StructuringElement)> {
    let alphabet = alphabet_for(common.atoms.as_deref(), texts)?;
    let se = load_se(&common.se, &alphabet)?;
    Ok((alphabet, se))
}

/// A theory given as a file path or as a formula.
fn theory_text(arg: &str) -> Result<String> {
    let path = Path::new(arg);
    if path.is_file() {
        load_formula_file(path)
    } else {
        formula_text(arg)
    }
}

fn distance_value(d: Distance) -> Value {
    match d {
        Distance::Finite(k) => json!(k),
        Distance::Infinite => json!("inf"),
    }
}

fn execute(cmd: Cmd, out: &mut dyn Write) -> Result<()> {
    match cmd {
        Cmd::Parse { formula, common } => {
            let text = formula_text(&formula)?;
            let f = Formula::parse(&text)?;
            let alphabet = alphabet_for(common.atoms.as_deref(), &[&text])?;
            let ws = models_of(&text, &alphabet)?;
            if common.json {
                let p = Printer {
                    alphabet: &alphabet,
                    json: true,
                    minterms: false,
                };
                let mut v = p.value(&ws);
                v["parsed"] = json!(f.to_string());
                v["atoms"] = json!(alphabet.atoms());
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(out, "{f}")?;
            }
            Ok(())
        }
        Cmd::Models { formula, common } => unary(&formula, &common, out, |ws, _| Ok(ws.clone())),
        Cmd::Dilate { formula, n, common } => unary(&formula, &common, out, |ws, se| {
            Ok(iterate(ws, se, n, Mode::Dilate))
        }),
        Cmd::Erode { formula, n, common } => unary(&formula, &common, out, |ws, se| {
            Ok(iterate(ws, se, n, Mode::Erode))
        }),
        Cmd::Open { formula, common } => unary(&formula, &common, out, |ws, se| Ok(open(ws, se))),
        Cmd::Close { formula, common } => unary(&formula, &common, out, |ws, se| Ok(close(ws, se))),
        Cmd::Skeleton { formula, common } => {
            unary(&formula, &common, out, |ws, se| Ok(skeleton(ws, se)))
        }
        Cmd::Ue { formula, common } => unary(&formula, &common, out, |ws, se| {
            Ok(ultimate_erosion(ws, se))
        }),
        Cmd::LastErosion { formula, common } => {
            let text = formula_text(&formula)?;
            let (alphabet, se) = context(&common, &[&text])?;
            let ws = models_of(&text, &alphabet)?;
            let (last, depth) = last_erosion(&ws, &se)?;
            let p = printer(&alphabet, &common);
            if p.json {
                let mut v = p.value(&last);
                v["depth"] = json!(depth);
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(out, "{}", p.set(&last))?;
                writeln!(out, "depth {depth}")?;
            }
            Ok(())
        }
        Cmd::Components { formula, common } => {
            let text = formula_text(&formula)?;
            let (alphabet, se) = context(&common, &[&text])?;
            let comps = connected_components(&models_of(&text, &alphabet)?, &se);
            let p = printer(&alphabet, &common);
            if p.json {
                let v: Vec<Value> = comps.iter().map(|c| p.value(c)).collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                for c in &comps {
                    writeln!(out, "{}", p.set(c))?;
                }
            }
            Ok(())
        }
        Cmd::Reconstruct {
            marker,
            mask,
            common,
        } => {
            let (m, k) = (formula_text(&marker)?, formula_text(&mask)?);
            let (alphabet, se) = context(&common, &[&m, &k])?;
            let r = reconstruct(&models_of(&m, &alphabet)?, &models_of(&k, &alphabet)?, &se);
            emit(out, &printer(&alphabet, &common), &r)
        }
        Cmd::Stratify { sigma, common } => {
            let text = theory_text(&sigma)?;
            let (alphabet, se) = context(&common, &[&text])?;
            let st = stratify(&models_of(&text, &alphabet)?, &se)?;
            let p = printer(&alphabet, &common);
            let mut levels: Vec<(Distance, WorldSet)> = Vec::new();
            for w in 0..1u32 << alphabet.len() {
                let r = st.rank(w);
                match levels.iter_mut().find(|(d, _)| *d == r) {
                    Some((_, ws)) => ws.insert(w),
                    None => levels.push((r, WorldSet::singleton(alphabet.len(), w))),
                }
            }
            levels.sort_by_key(|a| a.0);
            if p.json {
                let v: Vec<Value> = levels
                    .iter()
                    .map(|(d, ws)| {
                        let mut v = p.value(ws);
                        v["rank"] = distance_value(*d);
                        v
                    })
                    .collect();
                let doc = json!({ "erosion_depth": st.m(), "dilation_depth": st.n(), "levels": v });
                writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
            } else {
                for (d, ws) in &levels {
                    writeln!(out, "{d}: {}", p.set(ws))?;
                }
            }
            Ok(())
        }
        Cmd::Revise { phi, psi, common } => {
            let (a, b) = (formula_text(&phi)?, formula_text(&psi)?);
            let (alphabet, se) = context(&common, &[&a, &b])?;
            let o = revise(&models_of(&a, &alphabet)?, &models_of(&b, &alphabet)?, &se)?;
            let p = printer(&alphabet, &common);
            if p.json {
                let mut v = p.value(&o.result);
                v["depth"] = distance_value(o.dilation_depth);
                v["limited"] = json!(o.limited);
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(out, "{}", p.set(&o.result))?;
            }
            Ok(())
        }
        Cmd::Merge {
            formulas,
            profile,
            mu,
            agg,
            common,
        } => {
            let mut members: Vec<String> = formulas
                .iter()
                .map(|f| formula_text(f))
                .collect::<Result<_>>()?;
            if let Some(path) = profile {
                let text = std::fs::read_to_string(&path)
                    .with_context(|| format!("reading {}", path.display()))?;
                members.extend(read_formula_lines(&text));
            }
            if members.is_empty() {
                bail!("the profile has no members");
            }
            let mu = formula_text(&mu)?;
            let mut texts: Vec<&str> = members.iter().map(String::as_str).collect();
            texts.push(&mu);
            let (alphabet, se) = context(&common, &texts)?;
            let sets = members
                .iter()
                .map(|m| models_of(m, &alphabet))
                .collect::<Result<Vec<_>>>()?;
            let o = merge(
                &Profile::new(sets)?,
                &models_of(&mu, &alphabet)?,
                agg.into(),
                &se,
            )?;
            let p = printer(&alphabet, &common);
            if p.json {
                let mut v = p.value(&o.result);
                v["aggregation"] = json!(o.aggregation.name());
                let scores: Vec<Value> = o
                    .per_world_scores
                    .iter()
                    .map(|(w, s)| json!({ "world": world_string(*w, alphabet.len()), "score": s.to_string() }))
                    .collect();
                v["scores"] = json!(scores);
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(out, "{}", p.set(&o.result))?;
            }
            Ok(())
        }
        Cmd::Explain {
            alpha,
            sigma,
            rel,
            gamma,
            common,
        } => {
            let (a, s) = (formula_text(&alpha)?, theory_text(&sigma)?);
            let g = gamma.as_deref().map(formula_text).transpose()?;
            let mut texts = vec![a.as_str(), s.as_str()];
            texts.extend(g.as_deref());
            let (alphabet, se) = context(&common, &texts)?;
            let sigma = models_of(&s, &alphabet)?;
            let ctx = TheoryContext::new(sigma.clone(), se)?;
            let alpha = models_of(&a, &alphabet)?;
            let p = printer(&alphabet, &common);
            if let Some(g) = g {
                let gamma = models_of(&g, &alphabet)?;
                let yes = match rel {
                    Rel::F => ctx.explains_f(&gamma, &alpha)?,
                    r => ctx.explains(&gamma, &alpha, relation(r))?,
                };
                if p.json {
                    writeln!(out, "{}", json!({ "explains": yes }))?;
                } else {
                    writeln!(out, "{yes}")?;
                }
                return Ok(());
            }
            // explanations are read modulo Σ, so worlds outside Σ are free
            let (core, dont_care) = match rel {
                Rel::F => (ctx.central(&alpha)?, WorldSet::empty(alphabet.len())),
                r => (
                    ctx.preferred_explanation(&alpha, relation(r))?.core,
                    sigma.complement(),
                ),
            };
            if p.json {
                let mut v = p.value(&core);
                v["explanation"] = json!(render_within(&core, &dont_care, &alphabet));
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else if p.minterms {
                writeln!(out, "{}", p.set(&core))?;
            } else {
                writeln!(out, "{}", render_within(&core, &dont_care, &alphabet))?;
            }
            Ok(())
        }
        Cmd::Central {
            alpha,
            sigma,
            common,
        } => {
            let (a, s) = (formula_text(&alpha)?, theory_text(&sigma)?);
            let (alphabet, se) = context(&common, &[&a, &s])?;
            let ctx = TheoryContext::new(models_of(&s, &alphabet)?, se)?;
            let c = ctx.central(&models_of(&a, &alphabet)?)?;
            emit(out, &printer(&alphabet, &common), &c)
        }
        Cmd::Distance {
            first,
            second,
            common,
        } => {
            let (a, b) = (formula_text(&first)?, formula_text(&second)?);
            let (alphabet, se) = context(&common, &[&a, &b])?;
            let (x, y) = (models_of(&a, &alphabet)?, models_of(&b, &alphabet)?);
            let (d, h) = (min_distance(&x, &y, &se), hausdorff(&x, &y, &se));
            if common.json {
                writeln!(
                    out,
                    "{}",
                    json!({ "min": distance_value(d), "hausdorff": distance_value(h) })
                )?;
            } else {
                writeln!(out, "min {d}")?;
                writeln!(out, "hausdorff {h}")?;
            }
            Ok(())
        }
        Cmd::Check {
            family,
            n,
            seed,
            count,
            jobs,
            agg,
            rel,
            se,
            json,
        } => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()?;
            let reports = pool.install(|| check(family, n, seed, count, agg, rel, &se))?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?;
            } else {
                for r in &reports {
                    let verdict = if r.holds() { "holds" } else { "violated" };
                    writeln!(
                        out,
                        "{} [{}] {verdict}: {}",
                        r.postulate, r.subject, r.coverage
                    )?;
                    for w in &r.witnesses {
                        writeln!(out, "  witness {}", serde_json::to_string(w)?)?;
                    }
                }
            }
            Ok(())
        }
    }
}

fn relation(r: Rel) -> Relation {
    match r {
        Rel::Lneu => Relation::Lneu,
        Rel::Lned => Relation::Lned,
        Rel::Lc => Relation::Lc,
        Rel::Ue => Relation::Ue,
        Rel::F => unreachable!("handled by the caller"),
    }
}

fn printer<'a>(alphabet: &'a Alphabet, common: &Common) -> Printer<'a> {
    Printer {
        alphabet,
        json: common.json,
        minterms: common.minterms,
    }
}

fn emit(out: &mut dyn Write, p: &Printer<'_>, ws: &WorldSet) -> Result<()> {
    if p.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&p.value(ws))?)?;
    } else {
        writeln!(out, "{}", p.set(ws))?;
    }
    Ok(())
}

fn unary(
    formula: &str,
    common: &Common,
    out: &mut dyn Write,
    op: impl FnOnce(&WorldSet, &StructuringElement) -> Result<WorldSet>,
) -> Result<()> {
    let text = formula_text(formula)?;
    let (alphabet, se) = context(common, &[&text])?;
    let r = op(&models_of(&text, &alphabet)?, &se)?;
    emit(out, &printer(&alphabet, common), &r)
}

fn check(
    family: Family,
    n: usize,
    seed: u64,
    count: Option<usize>,
    agg: Option<Agg>,
    rel: Option<Rel>,
    se_spec: &str,
) -> Result<Vec<PostulateReport>> {
    if matches!(family, Family::All) {
        return Ok(suite(seed, SuiteSize::default()));
    }
    if !(1..=3).contains(&n) && count.is_none() {
        bail!("exhaustive sweeps need 1 to 3 atoms; pass --count to sample");
    }
    let alphabet = Alphabet::letters(n)?;
    let se = load_se(se_spec, &alphabet)?;
    let sweep = match count {
        Some(count) => Sweep::Sampled { seed, count },
        None => Sweep::Exhaustive,
    };
    let mut reports = Vec::new();
    match family {
        Family::Revision => {
            let subject = format!("revise {se_spec}");
            let op =
                |p: &WorldSet, q: &WorldSet| revise(p, q, &se).expect("nonempty belief").result;
            reports.extend(check_revision(&op, &subject, n, sweep));
            reports.push(check_revision_representation(&se, &subject, sweep));
        }
        Family::Merging => {
            let aggs = match agg {
                Some(a) => vec![a.into()],
                None => vec![Aggregation::Sum, Aggregation::Max, Aggregation::GMax],
            };
            let sizes = if count.is_some() { 2..=4 } else { 1..=2 };
            for a in aggs {
                let subject = format!("merge {} {se_spec}", a.name());
                let op = merging_op(a, &se);
                reports.extend(check_merging(&op, &subject, n, sizes.clone(), sweep));
                reports.push(check_merging_oracle(a, &se, &subject, sizes.clone(), sweep));
            }
        }
        Family::Abduction => {
            let configs = abduction_configs(seed, 12);
            let rels = match rel {
                Some(Rel::F) => bail!("the postulate table covers lneu, lned and lc"),
                Some(r) => vec![relation(r)],
                None => vec![Relation::Lneu, Relation::Lned, Relation::Lc],
            };
            for r in rels {
                reports.extend(postulate_matrix(r, &configs));
            }
            reports.extend(check_unified(&configs));
        }
        Family::All => unreachable!(),
    }
    Ok(reports)
}
