//! Segment-intersection benchmark: random segments, brute-force pairwise
//! intersection, shuffle, then orientation of consecutive point triples.
//! Runs over four kernels so their time and memory can be compared.

pub mod alloc;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use lazy_exact::{DoubleKernel, ExactKernel, Intersection, Kernel, LazyKernel, LazyNumberKernel, Sign};
use serde::Serialize;

/// The `drand48` generator: a 48-bit linear congruential sequence.
#[derive(Debug, Clone)]
pub struct Drand48 {
    state: u64,
}

const MASK48: u64 = (1 << 48) - 1;
const TWO_48: f64 = (1u64 << 48) as f64;

/// One step of the generator: returns a value in `[0, 1)` and the new state.
pub fn drand48_next(state: u64) -> (f64, u64) {
    let next = 0x5DEE_CE66Du64.wrapping_mul(state).wrapping_add(0xB) & MASK48;
    (next as f64 / TWO_48, next)
}

impl Drand48 {
    /// Uses the low 48 bits of `seed` as the initial state.
    pub fn new(seed: u64) -> Self {
        Drand48 { state: seed & MASK48 }
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    pub fn next_f64(&mut self) -> f64 {
        let (v, s) = drand48_next(self.state);
        self.state = s;
        v
    }

    /// Fisher-Yates shuffle drawing from this stream.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = ((self.next_f64() * (i + 1) as f64) as usize).min(i);
            items.swap(i, j);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelChoice {
    Exact,
    LazyNumber,
    LazyKernel,
    Double,
}

impl KernelChoice {
    pub const ALL: [KernelChoice; 4] =
        [KernelChoice::Exact, KernelChoice::LazyNumber, KernelChoice::LazyKernel, KernelChoice::Double];

    pub fn name(self) -> &'static str {
        match self {
            KernelChoice::Exact => "exact",
            KernelChoice::LazyNumber => "lazy-number",
            KernelChoice::LazyKernel => "lazy-kernel",
            KernelChoice::Double => "double",
        }
    }
}

impl fmt::Display for KernelChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KernelChoice {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        KernelChoice::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| BenchError::UnknownKernel(s.to_owned()))
    }
}

impl Serialize for KernelChoice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BenchError {
    UnknownKernel(String),
    TooFewSegments(usize),
    TooFewPoints(usize),
}

impl fmt::Display for BenchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BenchError::UnknownKernel(s) => {
                write!(f, "unknown kernel `{s}` (expected exact, lazy-number, lazy-kernel or double)")
            }
            BenchError::TooFewSegments(n) => write!(f, "need at least 3 segments, got {n}"),
            BenchError::TooFewPoints(n) => {
                write!(f, "only {n} intersection points; orientation tests need at least 3")
            }
        }
    }
}

impl std::error::Error for BenchError {}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub kernel: KernelChoice,
    pub segments: usize,
    pub seed: u64,
    /// Shuffle intersection points before the orientation pass. Turning it
    /// off leaves points from the same segment next to each other.
    pub shuffle: bool,
}

impl BenchConfig {
    pub fn new(kernel: KernelChoice, segments: usize, seed: u64) -> Self {
        BenchConfig { kernel, segments, seed, shuffle: true }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub kernel: KernelChoice,
    pub segments: usize,
    pub seed: u64,
    pub intersections: usize,
    pub orient_neg: usize,
    pub orient_pos: usize,
    pub orient_zero: usize,
    pub seconds: f64,
    /// Peak heap bytes above the level at the start of the run; zero when
    /// the counting allocator is not installed.
    pub peak_bytes: usize,
    /// Exact re-evaluations; `None` for kernels that never filter.
    pub exact_fallbacks: Option<u64>,
}

impl BenchReport {
    pub fn tallies(&self) -> (usize, usize, usize) {
        (self.orient_neg, self.orient_pos, self.orient_zero)
    }
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Kernel: {}", self.kernel)?;
        writeln!(f, "Generating initial random segments: {}", self.segments)?;
        writeln!(f, "Counting intersections [brute force algorithm]: {}", self.intersections)?;
        writeln!(f, "Performing orientation tests")?;
        writeln!(
            f,
            "orientation results : (-) = {}    (+) = {}    (0) = {}",
            self.orient_neg, self.orient_pos, self.orient_zero
        )?;
        if let Some(n) = self.exact_fallbacks {
            writeln!(f, "Exact fallbacks = {n}")?;
        }
        writeln!(f, "Total time   = {:.3}", self.seconds)?;
        write!(f, "Total memory = {} KB", self.peak_bytes >> 10)
    }
}

pub fn run_benchmark(cfg: &BenchConfig) -> Result<BenchReport, BenchError> {
    match cfg.kernel {
        KernelChoice::Exact => run_with(&ExactKernel::new(), cfg),
        KernelChoice::LazyNumber => run_with(&LazyNumberKernel::new(), cfg),
        KernelChoice::LazyKernel => run_with(&LazyKernel::new(), cfg),
        KernelChoice::Double => run_with(&DoubleKernel::new(), cfg),
    }
}

/// Runs the benchmark over any kernel. `cfg.kernel` is only copied into the
/// report.
pub fn run_with<K: Kernel>(k: &K, cfg: &BenchConfig) -> Result<BenchReport, BenchError> {
    if cfg.segments < 3 {
        return Err(BenchError::TooFewSegments(cfg.segments));
    }
    let fallbacks_before = k.exact_fallbacks();
    let baseline = alloc::current_bytes();
    alloc::reset_peak();
    let start = Instant::now();

    let mut rng = Drand48::new(cfg.seed);
    let random_point = |rng: &mut Drand48| {
        let x = rng.next_f64();
        let y = rng.next_f64();
        k.point(x, y)
    };
    let segments: Vec<K::Segment> = (0..cfg.segments)
        .map(|_| {
            let p = random_point(&mut rng);
            let q = random_point(&mut rng);
            k.segment(&p, &q)
        })
        .collect();

    let mut points = Vec::new();
    for i in 0..segments.len() {
        for j in i + 1..segments.len() {
            if let Intersection::Point(p) = k.intersection(&segments[i], &segments[j]) {
                points.push(p);
            }
        }
    }
    if points.len() < 3 {
        return Err(BenchError::TooFewPoints(points.len()));
    }
    if cfg.shuffle {
        rng.shuffle(&mut points);
    }

    let (mut neg, mut pos, mut zero) = (0, 0, 0);
    for w in points.windows(3) {
        match k.orientation(&w[0], &w[1], &w[2]) {
            Sign::Negative => neg += 1,
            Sign::Positive => pos += 1,
            Sign::Zero => zero += 1,
        }
    }

    let seconds = start.elapsed().as_secs_f64();
    let peak_bytes = alloc::peak_bytes().saturating_sub(baseline);
    let exact_fallbacks = match (fallbacks_before, k.exact_fallbacks()) {
        (Some(b), Some(a)) => Some(a - b),
        _ => None,
    };
    let intersections = points.len();
    drop(points);
    drop(segments);

    Ok(BenchReport {
        kernel: cfg.kernel,
        segments: cfg.segments,
        seed: cfg.seed,
        intersections,
        orient_neg: neg,
        orient_pos: pos,
        orient_zero: zero,
        seconds,
        peak_bytes,
        exact_fallbacks,
    })
}
