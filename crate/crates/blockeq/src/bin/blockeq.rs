use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use blockeq::ffmat::io::write_matrix;
use blockeq::harness::{
    broue_check, derive_seed, emit_report, global_algebra, load_case, local_context, parse_report, run_q_class, table,
    BroueCase, CheckOptions, Format, HarnessError, Mode, Result,
};
use blockeq::modrep::Algebra;
use blockeq::perversity::check_congruence;
use blockeq::stableq::final_stab_eq;

#[derive(Parser)]
#[command(name = "blockeq", about = "Check perverse and stable equivalences between principal blocks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Case file.
    #[arg(long, global = true)]
    case: Option<PathBuf>,
    /// Root seed; overrides the case file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Local)]
    mode: Mode,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Attempt budget for randomised searches; overrides the case file.
    #[arg(long, global = true)]
    budget: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Local,
    Global,
}

#[derive(Subcommand)]
enum Command {
    /// Simple modules and blocks.
    Simples {
        #[arg(long, value_enum, default_value_t = Side::Local)]
        side: Side,
    },
    /// Socle series of the projective indecomposables.
    Pims {
        #[arg(long, value_enum, default_value_t = Side::Local)]
        side: Side,
    },
    /// Perversity and congruence per character.
    Perversity,
    /// Local complexes, all of them or one.
    PerverseEq {
        #[arg(long)]
        simple: Option<String>,
    },
    /// Stable image of one global simple through one class of subgroups Q.
    StableEq {
        #[arg(long)]
        simple: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        include_projectives: bool,
    },
    /// The full comparison in the chosen mode.
    BroueCheck,
    /// Re-renders a structured report.
    Report {
        #[arg(long)]
        input: PathBuf,
    },
}

fn case(cli: &Cli) -> Result<BroueCase> {
    let path = cli.case.as_ref().ok_or_else(|| HarnessError::Validation("--case is required".into()))?;
    load_case(path)
}

fn algebra(cli: &Cli, side: Side) -> Result<Algebra> {
    let c = case(cli)?;
    let seed = cli.seed.unwrap_or(c.file.seed);
    let budget = cli.budget.unwrap_or(c.file.budget);
    match side {
        Side::Local => Ok(local_context(&c, seed, budget)?.alg),
        Side::Global => global_algebra(&c, seed, budget),
    }
}

fn run(cli: &Cli) -> Result<i32> {
    let opts = |mode| CheckOptions { mode, seed: cli.seed, budget: cli.budget };
    match &cli.command {
        Command::Simples { side } => {
            let alg = algebra(cli, *side)?;
            let mut rows = vec![vec!["simple".to_string(), "dim".into(), "block".into()]];
            for i in 0..alg.num_simples() {
                let b = alg.blocks().block_of(i);
                rows.push(vec![alg.label(i).into(), alg.simple(i).dim().to_string(), b.to_string()]);
            }
            print!("{}", table(&rows));
            println!("principal block {}", alg.blocks().principal);
        }
        Command::Pims { side } => {
            let alg = algebra(cli, *side)?;
            for i in 0..alg.num_simples() {
                println!("P({}) dim {}", alg.label(i), alg.pim(i).dim());
                println!("{}\n", alg.format_socle_series(alg.pim(i)));
            }
        }
        Command::Perversity => {
            let c = case(cli)?;
            let ctx = local_context(&c, cli.seed.unwrap_or(c.file.seed), cli.budget.unwrap_or(c.file.budget))?;
            let dim = |l: &str| ctx.alg.index_of_label(l).map(|i| ctx.alg.simple(i).dim());
            let ok = match &c.file.perversity {
                Some(p) => check_congruence(&c.rows, p.q, c.file.ell as i64, dim).into_iter().map(Some).collect(),
                None => vec![None; c.rows.len()],
            };
            let mut rows = vec![vec![
                "pi".to_string(),
                "character".into(),
                "degree".into(),
                "local".into(),
                "global".into(),
                "congruence".into(),
            ]];
            for (r, ok) in c.rows.iter().zip(ok) {
                rows.push(vec![
                    r.pi.unwrap().to_string(),
                    r.label.clone(),
                    r.poly.to_string(),
                    r.local.clone(),
                    r.global.clone(),
                    ok.map_or("-".into(), |b| if b { "ok".into() } else { "FAILS".into() }),
                ]);
            }
            print!("{}", table(&rows));
        }
        Command::PerverseEq { simple } => {
            let c = case(cli)?;
            let mut report = broue_check(&c, opts(Mode::Local))?;
            if let Some(s) = simple {
                report.complexes.retain(|x| &x.simple == s);
                if report.complexes.is_empty() {
                    return Err(HarnessError::UnknownLabel { kind: "local simple", label: s.clone() });
                }
            }
            print!("{}", emit_report(&report, cli.format)?);
            return Ok(report.exit_code());
        }
        Command::StableEq { simple, q, include_projectives } => {
            let c = case(cli)?;
            let seed = cli.seed.unwrap_or(c.file.seed);
            let budget = cli.budget.unwrap_or(c.file.budget);
            let spec = c
                .file
                .q_class
                .iter()
                .find(|x| &x.label == q)
                .ok_or_else(|| HarnessError::UnknownLabel { kind: "Q-class", label: q.clone() })?;
            let ctx = local_context(&c, seed, budget)?;
            let g = blockeq::harness::global_group(&c.file)?;
            let alg_g = global_algebra(&c, seed, budget)?;
            let s = alg_g
                .index_of_label(simple)
                .ok_or_else(|| HarnessError::UnknownLabel { kind: "global simple", label: simple.clone() })?;
            let qr = run_q_class(spec, ctx.field, Some((&g, &ctx.h)), seed, budget)?;
            let tq = qr.tq.ok_or_else(|| HarnessError::Validation(format!("Q-class {q}: T_Q could not be built")))?;
            eprintln!("|N_Delta| = {}, dim V = {}", qr.setup.n_delta.order()?, qr.setup.v.dim());
            eprintln!("dim M_Q = {}, dim T_Q = {}", qr.line.mq_dim, tq.t_q.dim());
            let alg_ng =
                Algebra::compute(qr.setup.ng.clone(), ctx.field, derive_seed(seed, &format!("ng/{q}")), budget)?;
            let res = alg_g.simple(s).restrict(qr.setup.ng.clone())?;
            eprintln!("dim S restricted = {}", res.dim());
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, "stable-eq"));
            let out = final_stab_eq(&qr.setup, &tq.t_q, &res, &alg_ng, *include_projectives, &mut rng)?;
            eprintln!("dim of the image over N_H(Q) = {}", out.dim());
            if out.dim() == 0 {
                println!("zero: the image is projective");
                return Ok(0);
            }
            let alg_nh =
                Algebra::compute(qr.setup.nh.clone(), ctx.field, derive_seed(seed, &format!("nh/{q}")), budget)?;
            for m in out.gens() {
                print!("{}", write_matrix(m));
            }
            println!("{}", alg_nh.format_socle_series(&out));
        }
        Command::BroueCheck => {
            let c = case(cli)?;
            let report = broue_check(&c, opts(cli.mode))?;
            print!("{}", emit_report(&report, cli.format)?);
            return Ok(report.exit_code());
        }
        Command::Report { input } => {
            let text =
                std::fs::read_to_string(input).map_err(|e| HarnessError::Io(format!("{}: {e}", input.display())))?;
            let report = parse_report(&text)?;
            print!("{}", emit_report(&report, cli.format)?);
            return Ok(report.exit_code());
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let code = match run(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            3
        }
    };
    eprintln!("elapsed {:.2?}", start.elapsed());
    ExitCode::from(code as u8)
}
