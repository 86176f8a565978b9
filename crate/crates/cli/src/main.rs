//! `fibercone` command-line front end.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fibercone::corpus::{run_corpus, Corpus};
use fibercone::delta::{compute_delta, face_ring_series, k_delta_series, DeltaSet, Family, Poset};
use fibercone::dsl::{parse_ideal, parse_ring};
use fibercone::fiber::{
    cm_check, fiber_hilbert_function, fiber_series, reduction_number, shah_function_check, IdealHandle,
};
use fibercone::mixed::{e_via_joint_reduction, is_joint_reduction, minimal_mixed_check, mixed_multiplicities};
use fibercone::{Budget, Error, RingRef};

use report::{Outcome, Report};

#[derive(Parser)]
#[command(
    name = "fibercone",
    version,
    about = "Fiber cones, reduction numbers and mixed multiplicities"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BudgetArgs {
    /// Highest power of an ideal that will be formed.
    #[arg(long, global = true)]
    max_n: Option<usize>,
    /// Largest side of the mixed multiplicity sample grid.
    #[arg(long, global = true)]
    grid_cap: Option<usize>,
    /// Largest staircase box, in lattice cells. Overrides FIBERCONE_BUDGET.
    #[arg(long, global = true)]
    cell_budget: Option<u64>,
}

#[derive(Args)]
struct IdealArgs {
    /// Variables, e.g. `x,y,z`.
    #[arg(long)]
    ring: String,
    /// Ideal expression, e.g. `(x^2, x*y, y^2)`.
    #[arg(long)]
    ideal: String,
}

#[derive(Args)]
struct PairArgs {
    #[command(flatten)]
    base: IdealArgs,
    /// Candidate minimal reduction J.
    #[arg(long)]
    reduction: String,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert series of the fiber cone.
    FiberSeries {
        #[command(flatten)]
        args: IdealArgs,
        /// Number of values μ(I^n) to list.
        #[arg(long, default_value_t = 8)]
        terms: usize,
    },
    /// Cohen-Macaulay test for the fiber cone; exits 1 when not CM.
    CmCheck(PairArgs),
    /// Least n with J I^n = I^(n+1).
    ReductionNumber(PairArgs),
    /// Mixed multiplicities e_0(m|I), ..., e_d(m|I).
    Mixed(IdealArgs),
    /// Checks a joint reduction and computes e from it.
    Joint {
        #[command(flatten)]
        args: IdealArgs,
        /// One element per slot, e.g. `(x^2+y^2, x*y)`.
        #[arg(long)]
        elements: String,
        /// Slot ideals, each `I` or `m`; defaults to `I` everywhere.
        #[arg(long, value_delimiter = ',')]
        slots: Vec<String>,
    },
    /// Hilbert series of K[Δ] from a pair set, generators or a family.
    DeltaSeries {
        #[arg(long, requires = "pairs", conflicts_with_all = ["ring", "family"])]
        n: Option<usize>,
        /// Pairs such as `(3,3),(3,4)`.
        #[arg(long)]
        pairs: Option<String>,
        #[arg(long, requires = "gens", conflicts_with = "family")]
        ring: Option<String>,
        /// Quadratic generators x_1, ..., x_n.
        #[arg(long)]
        gens: Option<String>,
        /// `ms:B,C` or `hh:N,M`.
        #[arg(long)]
        family: Option<String>,
    },
    /// Hilbert series of the face ring of a poset's order complex.
    FaceRing {
        /// `chain:N`, `antichain:N`, `grid:R,C` or `minors:N`.
        #[arg(long, conflicts_with = "poset_file")]
        poset: Option<String>,
        /// File with `element`/`cover` lines.
        #[arg(long)]
        poset_file: Option<PathBuf>,
    },
    /// Compares μ(I^n) with the length formula built from J; exits 1 on a mismatch.
    ShahCheck {
        #[command(flatten)]
        args: PairArgs,
        #[arg(long, default_value_t = 8)]
        terms: usize,
    },
    /// Corpus of worked cases.
    #[command(subcommand)]
    Corpus(CorpusCommand),
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Runs a corpus file, or the bundled one.
    Run {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Concurrent cases; 0 means one per core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = match make_budget(&cli.budget) {
        Ok(b) => b,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let outcome = run(cli.command, &budget);
    report::emit(outcome, cli.json)
}

fn make_budget(args: &BudgetArgs) -> Result<Budget, String> {
    let mut b = Budget::default();
    if let Ok(v) = std::env::var("FIBERCONE_BUDGET") {
        b.cell_budget = v
            .trim()
            .parse()
            .map_err(|_| format!("FIBERCONE_BUDGET must be a cell count, got `{v}`"))?;
    }
    if let Some(c) = args.cell_budget {
        b.cell_budget = c;
    }
    if let Some(n) = args.max_n {
        b.max_n = n;
    }
    if let Some(g) = args.grid_cap {
        b.grid_cap = g;
    }
    Ok(b)
}

fn ring_of(text: &str) -> fibercone::Result<RingRef> {
    let t = text.trim();
    let decl = if t.starts_with("ring ") {
        t.to_string()
    } else {
        format!("ring {t}")
    };
    Ok(parse_ring(&decl)?.shared())
}

fn ideal_in(ring: &RingRef, text: &str) -> fibercone::Result<IdealHandle> {
    IdealHandle::from_expr(&parse_ideal(text, ring)?, ring)
}

fn run(command: Command, budget: &Budget) -> Outcome {
    match command {
        Command::FiberSeries { args, terms } => fiber_cmd(&args, terms, budget),
        Command::CmCheck(args) => cm_cmd(&args, budget),
        Command::ReductionNumber(args) => reduction_cmd(&args, budget),
        Command::Mixed(args) => mixed_cmd(&args, budget),
        Command::Joint { args, elements, slots } => joint_cmd(&args, &elements, &slots, budget),
        Command::DeltaSeries {
            n,
            pairs,
            ring,
            gens,
            family,
        } => delta_cmd(n, pairs, ring, gens, family),
        Command::FaceRing { poset, poset_file } => face_ring_cmd(poset, poset_file),
        Command::ShahCheck { args, terms } => shah_cmd(&args, terms, budget),
        Command::Corpus(CorpusCommand::Run { input, jobs }) => corpus_cmd(input, jobs, budget),
    }
}

fn fiber_cmd(args: &IdealArgs, terms: usize, budget: &Budget) -> Outcome {
    let ring = ring_of(&args.ring)?;
    let i = ideal_in(&ring, &args.ideal)?;
    let series = fiber_series(&i, budget)?;
    let hf = fiber_hilbert_function(&i, terms.saturating_sub(1))?;
    let mut r = Report::new(&ring);
    r.input("ideal", i.to_string());
    r.field("series", &series, series.to_string());
    r.field("analyticSpread", series.denom_power(), series.denom_power().to_string());
    r.field("hilbertFunction", &hf, list(&hf));
    Ok((r, true))
}

fn cm_cmd(args: &PairArgs, budget: &Budget) -> Outcome {
    let ring = ring_of(&args.base.ring)?;
    let i = ideal_in(&ring, &args.base.ideal)?;
    let j = ideal_in(&ring, &args.reduction)?;
    let c = cm_check(&i, &j, budget)?;
    let mut r = Report::new(&ring);
    r.input("ideal", i.to_string());
    r.input("reduction", j.to_string());
    r.field("series", &c.series, c.series.to_string());
    r.field("analyticSpread", c.analytic_spread, c.analytic_spread.to_string());
    r.field("muI", c.mu_i, c.mu_i.to_string());
    r.field("muJ", c.mu_j, c.mu_j.to_string());
    r.field("reductionNumber", c.reduction_number, c.reduction_number.to_string());
    r.field("criterionLengths", &c.criterion_lengths, list(&c.criterion_lengths));
    r.field("eFiber", c.e_fiber, c.e_fiber.to_string());
    r.field("lengthSum", c.length_sum, c.length_sum.to_string());
    r.field("isCM", c.is_cm, yes_no(c.is_cm));
    r.field(
        "isMinimalMultiplicity",
        c.is_minimal_multiplicity,
        yes_no(c.is_minimal_multiplicity),
    );
    Ok((r, c.is_cm))
}

fn reduction_cmd(args: &PairArgs, budget: &Budget) -> Outcome {
    let ring = ring_of(&args.base.ring)?;
    let i = ideal_in(&ring, &args.base.ideal)?;
    let j = ideal_in(&ring, &args.reduction)?;
    let n = reduction_number(&j, &i, budget)?;
    let mut r = Report::new(&ring);
    r.input("ideal", i.to_string());
    r.input("reduction", j.to_string());
    r.field("reductionNumber", n, n.to_string());
    Ok((r, true))
}

fn mixed_cmd(args: &IdealArgs, budget: &Budget) -> Outcome {
    let ring = ring_of(&args.ring)?;
    let i = ideal_in(&ring, &args.ideal)?;
    let e = mixed_multiplicities(&i, budget)?;
    let minimal = minimal_mixed_check(&i, budget)?;
    let mut r = Report::new(&ring);
    r.input("ideal", i.to_string());
    r.field("mixed", &e, list(e.values()));
    r.field(
        "multiplicity",
        e.get(e.values().len() - 1),
        e.get(e.values().len() - 1).to_string(),
    );
    r.field("minimalMixed", minimal, yes_no(minimal));
    Ok((r, true))
}

fn joint_cmd(args: &IdealArgs, elements: &str, slots: &[String], budget: &Budget) -> Outcome {
    let ring = ring_of(&args.ring)?;
    let i = ideal_in(&ring, &args.ideal)?;
    let elems = parse_ideal(elements, &ring)?.evaluate_elements(&ring)?;
    let ideals = if slots.is_empty() {
        vec![i.clone(); ring.dim()]
    } else {
        slots
            .iter()
            .map(|s| match s.trim() {
                "I" => Ok(i.clone()),
                "m" => Ok(i.maximal_like()),
                other => Err(Error::InvalidParameters(format!("slot `{other}` is neither I nor m"))),
            })
            .collect::<fibercone::Result<Vec<_>>>()?
    };
    let mut r = Report::new(&ring);
    r.input("ideal", i.to_string());
    r.input("elements", elements.trim().to_string());
    let w = match is_joint_reduction(&elems, &ideals, budget.max_n) {
        Ok(w) => w,
        Err(e @ (Error::NotJointReduction { .. } | Error::MembershipFailure(_))) => {
            r.field("isJointReduction", false, format!("no ({e})"));
            return Ok((r, false));
        }
        Err(e) => return Err(e),
    };
    r.field("isJointReduction", true, "yes".to_string());
    r.field("n", w.n, w.n.to_string());
    match e_via_joint_reduction(&w, budget) {
        Ok(e) => r.field("multiplicity", e, e.to_string()),
        Err(Error::NotParameterSystem) => r.field(
            "multiplicity",
            serde_json::Value::Null,
            "undefined (not a system of parameters)".to_string(),
        ),
        Err(e) => return Err(e),
    }
    Ok((r, true))
}

fn delta_cmd(
    n: Option<usize>,
    pairs: Option<String>,
    ring: Option<String>,
    gens: Option<String>,
    family: Option<String>,
) -> Outcome {
    let (delta, mut r) = match (n, ring, family) {
        (Some(n), None, None) => {
            let pairs = pairs.unwrap_or_default();
            let mut r = Report::empty();
            r.input("n", n.to_string());
            r.input("pairs", pairs.clone());
            (DeltaSet::parse(n, &pairs)?, r)
        }
        (None, Some(ring_text), None) => {
            let ring = ring_of(&ring_text)?;
            let text = gens.unwrap_or_default();
            let polys = parse_ideal(&text, &ring)?.evaluate_elements(&ring)?;
            let mut r = Report::new(&ring);
            r.input("gens", text.trim().to_string());
            (compute_delta(&ring, &polys, None)?, r)
        }
        (None, None, Some(f)) => {
            let fam: Family = f.parse()?;
            let mut r = Report::empty();
            r.input("family", f.trim().to_string());
            (fam.delta()?, r)
        }
        _ => {
            return Err(Error::InvalidParameters(
                "give one of --n/--pairs, --ring/--gens or --family".into(),
            ))
        }
    };
    let series = k_delta_series(&delta);
    r.field("delta", &delta, delta.to_string());
    r.field("series", &series, series.to_string());
    Ok((r, true))
}

fn face_ring_cmd(poset: Option<String>, file: Option<PathBuf>) -> Outcome {
    let (p, source) = match (poset, file) {
        (Some(spec), None) => (Poset::from_spec(&spec)?, spec),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::InvalidParameters(format!("{}: {e}", path.display())))?;
            (Poset::parse(&text)?, path.display().to_string())
        }
        _ => return Err(Error::InvalidParameters("give --poset or --poset-file".into())),
    };
    let series = face_ring_series(&p)?;
    let mut r = Report::empty();
    r.input("poset", source);
    r.field("elements", p.len(), p.len().to_string());
    r.field("series", &series, series.to_string());
    Ok((r, true))
}

fn shah_cmd(args: &PairArgs, terms: usize, budget: &Budget) -> Outcome {
    let ring = ring_of(&args.base.ring)?;
    let i = ideal_in(&ring, &args.base.ideal)?;
    let j = ideal_in(&ring, &args.reduction)?;
    let mismatch = shah_function_check(&i, &j, terms, budget)?;
    let mut r = Report::new(&ring);
    r.input("ideal", i.to_string());
    r.input("reduction", j.to_string());
    r.field("holds", mismatch.is_none(), yes_no(mismatch.is_none()));
    r.field(
        "firstMismatch",
        mismatch,
        mismatch.map_or_else(|| "none".to_string(), |n| n.to_string()),
    );
    Ok((r, mismatch.is_none()))
}

fn corpus_cmd(input: Option<PathBuf>, jobs: usize, budget: &Budget) -> Outcome {
    let corpus = match &input {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidParameters(format!("{}: {e}", path.display())))?;
            Corpus::parse(&text)?
        }
        None => Corpus::bundled(),
    };
    let run = run_corpus(&corpus, budget, jobs)?;
    if run.falsifications > 0 {
        return Ok(report::corpus_falsified(run));
    }
    let ok = run.all_passed();
    Ok((report::corpus(run), ok))
}

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}
