//! Command-line front end: synthesis, cost tables, verification, routing,
//! and comparator generation. Circuit files are OpenQASM 2.0; tables are
//! tab-separated text.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mcxsynth::{
    classical_compare, legal_supports, make_coupling, make_sequence, measure, place_and_route,
    predict, sequence_text, synth_comparator, synth_mp, synth_pp, verify_mcx, Circuit,
    CouplingKind, Gate, PolarityMask, QubitId, SeqVariant, Synthesis,
};

#[derive(Parser)]
#[command(name = "mcxsynth", version, about = "staircase synthesis of multi-controlled Toffoli gates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Seq1,
    Seq2,
    Seq3,
}

impl From<VariantArg> for SeqVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Seq1 => SeqVariant::Seq1,
            VariantArg::Seq2 => SeqVariant::Seq2,
            VariantArg::Seq3 => SeqVariant::Seq3,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CouplingArg {
    TriangleChain,
    SquareLattice,
    SquareGrid,
    HeavyHex,
}

impl From<CouplingArg> for CouplingKind {
    fn from(v: CouplingArg) -> Self {
        match v {
            CouplingArg::TriangleChain => CouplingKind::TriangleChain,
            CouplingArg::SquareLattice => CouplingKind::SquareLattice,
            CouplingArg::SquareGrid => CouplingKind::SquareGrid,
            CouplingArg::HeavyHex => CouplingKind::HeavyHex,
        }
    }
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, value_enum)]
    variant: VariantArg,
    #[arg(long)]
    n: usize,
    /// Support count; defaults to the variant's canonical value.
    #[arg(long)]
    supports: Option<usize>,
    /// Polarity mask as a bitstring ordered c1..cn, leftmost first; 1 negates.
    #[arg(long)]
    mask: Option<String>,
    /// Write OpenQASM here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a multi-controlled X and emit OpenQASM plus its cost line.
    Synth(SynthArgs),
    /// Predicted-vs-measured gate counts as a tab-separated table.
    Cost {
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        supports: Option<usize>,
        /// Inclusive control-count range, e.g. 3..30.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Check a circuit file against multi-controlled-X semantics.
    Verify {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        controls: usize,
        #[arg(long)]
        supports: Option<usize>,
        #[arg(long)]
        mask: Option<String>,
    },
    /// Place and route a circuit file onto a coupling graph.
    Map {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum)]
        coupling: CouplingArg,
        #[arg(long, default_value_t = 1)]
        rows: usize,
        #[arg(long, default_value_t = 1)]
        cols: usize,
        /// Write the routed OpenQASM here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate an n-bit binary magnitude comparator.
    Comparator {
        #[arg(long)]
        bits: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the composition-sequence text form for a variant.
    Export {
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        supports: Option<usize>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Synth(args) => cmd_synth(args),
        Command::Cost {
            variant,
            n,
            supports,
            grid,
        } => cmd_cost(variant, n, supports, grid),
        Command::Verify {
            file,
            controls,
            supports,
            mask,
        } => cmd_verify(file, controls, supports, mask),
        Command::Map {
            file,
            coupling,
            rows,
            cols,
            out,
        } => cmd_map(file, coupling.into(), (rows, cols), out),
        Command::Comparator { bits, out } => cmd_comparator(bits, out),
        Command::Export {
            variant,
            n,
            supports,
        } => {
            let seq = make_sequence(variant.into(), n, supports).map_err(|e| e.to_string())?;
            print!("{}", sequence_text(&seq));
            Ok(())
        }
    }
}

fn build(args: &SynthArgs) -> Result<Synthesis, String> {
    let variant: SeqVariant = args.variant.into();
    match &args.mask {
        Some(text) => {
            let mask =
                PolarityMask::parse(text).ok_or_else(|| format!("bad mask bitstring: {text}"))?;
            synth_mp(args.n, &mask, variant, args.supports).map_err(|e| e.to_string())
        }
        None => synth_pp(args.n, variant, args.supports).map_err(|e| e.to_string()),
    }
}

fn write_or_print(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_synth(args: SynthArgs) -> Result<(), String> {
    let synth = build(&args)?;
    write_or_print(&args.out, &synth.circuit.to_qasm())?;
    let m = measure(&synth.circuit);
    println!(
        "variant={}\tn={}\tn_s={}\tx={}\tccx={}\tsize={}\tdepth={}\tqubits={}",
        synth.variant.name(),
        synth.controls.len(),
        synth.supports.len(),
        m.x_count,
        m.ccx_count,
        m.total_size,
        m.depth.unwrap_or(0),
        m.total_qubits
    );
    Ok(())
}

fn parse_grid(text: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("bad grid range: {text} (expected LO..HI)"))?;
    let lo = lo.trim().parse::<usize>().map_err(|e| e.to_string())?;
    let hi = hi.trim().parse::<usize>().map_err(|e| e.to_string())?;
    if lo < 3 || hi < lo {
        return Err(format!("bad grid range: {text}"));
    }
    Ok((lo, hi))
}

fn cost_row(variant: SeqVariant, n: usize, n_s: usize) -> Result<String, String> {
    let p = predict(variant, n, Some(n_s)).map_err(|e| e.to_string())?;
    let synth = synth_pp(n, variant, Some(n_s)).map_err(|e| e.to_string())?;
    let m = measure(&synth.circuit);
    let matches = p.x_count == m.x_count && p.ccx_count == m.ccx_count;
    Ok(format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        variant.name(),
        n,
        n_s,
        p.x_count,
        p.ccx_count,
        p.total_size,
        m.x_count,
        m.ccx_count,
        m.total_size,
        m.depth.unwrap_or(0),
        if matches { "ok" } else { "MISMATCH" }
    ))
}

fn cmd_cost(
    variant: Option<VariantArg>,
    n: Option<usize>,
    supports: Option<usize>,
    grid: Option<String>,
) -> Result<(), String> {
    println!("variant\tn\tn_s\tpred_x\tpred_ccx\tpred_size\tmeas_x\tmeas_ccx\tmeas_size\tmeas_depth\tmatch");
    let variants: Vec<SeqVariant> = match variant {
        Some(v) => vec![v.into()],
        None => vec![SeqVariant::Seq1, SeqVariant::Seq2, SeqVariant::Seq3],
    };
    let range = match (&grid, n) {
        (Some(g), _) => {
            let (lo, hi) = parse_grid(g)?;
            lo..=hi
        }
        (None, Some(n)) => n..=n,
        (None, None) => return Err("pass --n or --grid".into()),
    };
    for n in range {
        for &v in &variants {
            let support_list = match supports {
                Some(s) => vec![s],
                None => legal_supports(v, n),
            };
            for n_s in support_list {
                println!("{}", cost_row(v, n, n_s)?);
            }
        }
    }
    Ok(())
}

/// Minimal reader for the OpenQASM subset this tool emits: one `qreg`, and
/// `x`, `cx`, `ccx`, `swap` gates over `q[i]` operands.
fn read_qasm(text: &str) -> Result<Circuit, String> {
    let mut circuit: Option<Circuit> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |m: &str| format!("line {}: {m}", lineno + 1);
        if line.is_empty()
            || line.starts_with("OPENQASM")
            || line.starts_with("include")
            || line.starts_with("//")
        {
            continue;
        }
        let line = line
            .strip_suffix(';')
            .ok_or_else(|| err("missing semicolon"))?;
        if let Some(rest) = line.strip_prefix("qreg") {
            let inner = rest
                .trim()
                .strip_prefix("q[")
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| err("bad qreg"))?;
            let n: usize = inner.parse().map_err(|_| err("bad qreg size"))?;
            circuit = Some(Circuit::with_width(n));
            continue;
        }
        let (name, operands) = line
            .split_once(' ')
            .ok_or_else(|| err("bad gate line"))?;
        let qubits: Vec<QubitId> = operands
            .split(',')
            .map(|tok| {
                tok.trim()
                    .strip_prefix("q[")
                    .and_then(|s| s.strip_suffix(']'))
                    .and_then(|s| s.parse::<u32>().ok())
                    .map(QubitId)
                    .ok_or_else(|| err(&format!("bad operand {tok}")))
            })
            .collect::<Result<_, _>>()?;
        let gate = match (name, qubits.as_slice()) {
            ("x", [a]) => Gate::X(*a),
            ("cx", [a, b]) => Gate::Cx(*a, *b),
            ("ccx", [a, b, c]) => Gate::Ccx(*a, *b, *c),
            ("swap", [a, b]) => Gate::Swap(*a, *b),
            _ => return Err(err(&format!("unsupported gate {name}"))),
        };
        circuit
            .as_mut()
            .ok_or_else(|| err("gate before qreg"))?
            .append(gate)
            .map_err(|e| err(&e.to_string()))?;
    }
    circuit.ok_or_else(|| "no qreg declaration found".into())
}

fn cmd_verify(
    file: PathBuf,
    controls: usize,
    supports: Option<usize>,
    mask: Option<String>,
) -> Result<(), String> {
    let text = fs::read_to_string(&file).map_err(|e| format!("{}: {e}", file.display()))?;
    let circuit = read_qasm(&text)?;
    let width = circuit.qubit_count();
    if controls + 1 > width {
        return Err(format!(
            "{controls} controls plus a target exceed the {width} declared qubits"
        ));
    }
    let n_s = supports.unwrap_or(width - controls - 1);
    let mask = match mask {
        Some(text) => {
            PolarityMask::parse(&text).ok_or_else(|| format!("bad mask bitstring: {text}"))?
        }
        None => PolarityMask::all_positive(controls),
    };
    let control_ids: Vec<QubitId> = (0..controls as u32).map(QubitId).collect();
    let support_ids: Vec<QubitId> = (controls as u32..(controls + n_s) as u32)
        .map(QubitId)
        .collect();
    let target = QubitId((width - 1) as u32);
    let verdict = verify_mcx(&circuit, &control_ids, &mask, target, &support_ids);
    let word = |ok: bool| if ok { "ok" } else { "FAIL" };
    println!(
        "mcx: {}, restore: {}, support-independent: {}",
        word(verdict.target_rule),
        word(verdict.restored),
        word(verdict.support_independent)
    );
    if let Some(state) = verdict.counterexample {
        println!(
            "counterexample: {}",
            mcxsynth::BasisState::new(state, width).to_text()
        );
    }
    if verdict.all_ok() {
        Ok(())
    } else {
        Err("verification failed".into())
    }
}

fn cmd_map(
    file: PathBuf,
    kind: CouplingKind,
    dims: (usize, usize),
    out: Option<PathBuf>,
) -> Result<(), String> {
    let text = fs::read_to_string(&file).map_err(|e| format!("{}: {e}", file.display()))?;
    let circuit = read_qasm(&text)?;
    let coupling = make_coupling(kind, dims).map_err(|e| e.to_string())?;
    let placement = place_and_route(&circuit, &coupling).map_err(|e| e.to_string())?;
    println!(
        "coupling={} dims={}x{} physical_qubits={}",
        kind.name(),
        dims.0,
        dims.1,
        coupling.vertex_count
    );
    println!("logical\tinitial\tfinal");
    for (l, (&a, &b)) in placement
        .assignment
        .iter()
        .zip(&placement.final_assignment)
        .enumerate()
    {
        println!("q{l}\tp{a}\tp{b}");
    }
    println!("swaps: {}", placement.swap_count);
    println!("bridged ccx: {}", placement.bridge_ccx_count);
    write_or_print(&out, &placement.routed.to_qasm())
}

fn cmd_comparator(bits: usize, out: Option<PathBuf>) -> Result<(), String> {
    if bits == 0 {
        return Err("--bits must be at least 1".into());
    }
    let comp = synth_comparator(bits);
    write_or_print(&out, &comp.circuit.to_qasm())?;
    let mut checked = 0u64;
    let mut failures = 0u64;
    for x in 0..(1u64 << bits) {
        for y in 0..(1u64 << bits) {
            let got = comp.evaluate(x, y).map_err(|e| e.to_string())?;
            let want = classical_compare(x, y, bits).map_err(|e| e.to_string())?;
            checked += 1;
            if got != want {
                failures += 1;
            }
        }
    }
    let m = measure(&comp.circuit);
    println!(
        "bits={bits}\tqubits={}\tsize={}\tdepth={}\tpairs_checked={checked}\tfailures={failures}",
        m.total_qubits,
        m.total_size,
        m.depth.unwrap_or(0)
    );
    if failures > 0 {
        return Err(format!("{failures} comparator outputs disagree"));
    }
    Ok(())
}
