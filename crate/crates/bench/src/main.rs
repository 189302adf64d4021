use anyhow::Context;
use clap::Parser;
use lazy_exact_bench::alloc::CountingAllocator;
use lazy_exact_bench::{run_benchmark, BenchConfig, KernelChoice};

#[global_allocator]
static ALLOC: CountingAllocator = CountingAllocator;

/// Random segment intersection followed by orientation tests on the
/// intersection points.
#[derive(Debug, Parser)]
#[command(name = "bench", version)]
struct Cli {
    /// exact, lazy-number, lazy-kernel or double
    #[arg(long)]
    kernel: KernelChoice,
    #[arg(long, default_value_t = 2000)]
    segments: usize,
    /// Initial drand48 state (low 48 bits are used)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Keep intersection points in generation order
    #[arg(long)]
    no_shuffle: bool,
    /// Print one JSON object instead of text
    #[arg(long)]
    json: bool,
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    let cfg = BenchConfig {
        kernel: cli.kernel,
        segments: cli.segments,
        seed: cli.seed,
        shuffle: !cli.no_shuffle,
    };
    let report = run_benchmark(&cfg).context("benchmark aborted")?;
    if cli.json {
        println!("{}", serde_json::to_string(&report)?);
    } else {
        println!("{report}");
    }
    Ok(())
}
