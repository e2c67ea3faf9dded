//! Machine-readable reports.
//!
//! JSON is the canonical format. Output is fully deterministic: struct
//! fields serialize in declaration order, there are no timestamps, and
//! every real is written with 17 significant digits so the byte stream
//! round-trips the underlying binary64 exactly. CSV is used for the two
//! tabular products (logistic trajectories and theorem sweeps).

use std::fmt::Write as _;
use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter, Serializer};

use qbs_core::accounting::{FormulaBlock, ReconcileReport};
use qbs_core::amplifier::{AmplifierTrace, TheoremReport};
use qbs_core::oracle::{ScanResult, ScanVerdict};
use qbs_core::qsim::QuantumState;
use qbs_core::search::{Existence, SearchReport};

use crate::differential::DifferentialSummary;

/// Formats a real with 17 significant digits (exact binary64 round trip).
pub fn fmt_real(value: f64) -> String {
    format!("{value:.16e}")
}

/// Pretty JSON formatter that writes every f64 via [`fmt_real`].
struct SciPretty<'a> {
    inner: PrettyFormatter<'a>,
}

impl Formatter for SciPretty<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        // JSON has no encoding for NaN/inf (they arise in out-of-theorem
        // sweeps like a = 2); follow serde_json and emit null.
        if value.is_finite() {
            writer.write_all(fmt_real(value).as_bytes())
        } else {
            writer.write_all(b"null")
        }
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_array(writer)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object(writer)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_object_key(writer, first)
    }

    fn end_object_key<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object_key(writer)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object_value(writer)
    }
}

/// Serializes any report document to the canonical JSON form.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let formatter = SciPretty {
        inner: PrettyFormatter::new(),
    };
    let mut ser = Serializer::with_formatter(&mut buf, formatter);
    value
        .serialize(&mut ser)
        .expect("report serialization cannot fail");
    let mut out = String::from_utf8(buf).expect("serde_json emits UTF-8");
    out.push('\n');
    out
}

#[derive(Debug, Serialize)]
pub struct GateDoc {
    pub hadamards: u64,
    pub nots: u64,
    pub oracle_calls: u64,
    pub elementary_gates: u64,
}

impl GateDoc {
    fn from_log(log: &qbs_core::qsim::GateLog) -> Self {
        GateDoc {
            hadamards: log.hadamard_count,
            nots: log.not_count,
            oracle_calls: log.oracle_count,
            elementary_gates: log.elementary_gate_count,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct StageDoc {
    pub i: usize,
    pub prefix: String,
    pub p: f64,
    pub detected: bool,
    pub k: Option<usize>,
    pub epsilon: u8,
    pub channel_steps: u64,
    pub gates: GateDoc,
}

#[derive(Debug, Serialize)]
pub struct InstrumentationDoc {
    pub hadamards: u64,
    pub nots: u64,
    pub oracle_calls: u64,
    pub elementary_gates: u64,
    pub channel_steps: u64,
    pub per_stage_k: Vec<Option<usize>>,
}

#[derive(Debug, Serialize)]
pub struct FormulaDoc {
    pub n: usize,
    pub t_uf: u64,
    pub per_stage: u64,
    pub gate_sum: u64,
    pub channel_bound: u64,
    pub per_stage_channel_bound: u64,
    pub total_t: u64,
    pub bound_identity_holds: bool,
}

impl FormulaDoc {
    pub fn from_block(f: &FormulaBlock) -> Self {
        FormulaDoc {
            n: f.n,
            t_uf: f.t_uf,
            per_stage: f.per_stage,
            gate_sum: f.gate_sum,
            channel_bound: f.channel_bound,
            per_stage_channel_bound: f.per_stage_channel_bound,
            total_t: f.total_t,
            bound_identity_holds: f.bound_identity_holds,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MeasuredDoc {
    pub hadamards: u64,
    pub nots: u64,
    pub oracle_calls: u64,
    pub elementary_oracle_gates: u64,
    pub channel_steps: u64,
}

#[derive(Debug, Serialize)]
pub struct DeltaDoc {
    pub hadamard_delta: i64,
    pub not_slack: i64,
    pub oracle_delta: i64,
    pub gate_sum_delta: i64,
    pub channel_slack: i64,
}

#[derive(Debug, Serialize)]
pub struct FlagDoc {
    pub hadamards_exact: bool,
    pub nots_within_bound: bool,
    pub oracle_calls_exact: bool,
    pub channel_within_bound: bool,
}

/// Formula block plus, when a run was measured, the comparison blocks.
#[derive(Debug, Serialize)]
pub struct ComplexityDoc {
    pub formula: FormulaDoc,
    pub measured: Option<MeasuredDoc>,
    pub deltas: Option<DeltaDoc>,
    pub flags: Option<FlagDoc>,
}

impl ComplexityDoc {
    pub fn formula_only(f: &FormulaBlock) -> Self {
        ComplexityDoc {
            formula: FormulaDoc::from_block(f),
            measured: None,
            deltas: None,
            flags: None,
        }
    }

    pub fn from_reconcile(r: &ReconcileReport) -> Self {
        ComplexityDoc {
            formula: FormulaDoc::from_block(&r.formula),
            measured: Some(MeasuredDoc {
                hadamards: r.measured.hadamards,
                nots: r.measured.nots,
                oracle_calls: r.measured.oracle_calls,
                elementary_oracle_gates: r.measured.elementary_oracle_gates,
                channel_steps: r.measured.channel_steps,
            }),
            deltas: Some(DeltaDoc {
                hadamard_delta: r.deltas.hadamard_delta,
                not_slack: r.deltas.not_slack,
                oracle_delta: r.deltas.oracle_delta,
                gate_sum_delta: r.deltas.gate_sum_delta,
                channel_slack: r.deltas.channel_slack,
            }),
            flags: Some(FlagDoc {
                hadamards_exact: r.flags.hadamards_exact,
                nots_within_bound: r.flags.nots_within_bound,
                oracle_calls_exact: r.flags.oracle_calls_exact,
                channel_within_bound: r.flags.channel_within_bound,
            }),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SearchDoc {
    pub n: usize,
    pub bits: String,
    pub x: u64,
    pub existence: &'static str,
    pub final_check_performed: bool,
    pub stages: Vec<StageDoc>,
    pub instrumentation: InstrumentationDoc,
    pub complexity: ComplexityDoc,
}

impl SearchDoc {
    pub fn from_report(report: &SearchReport) -> Self {
        SearchDoc {
            n: report.n,
            bits: report.bits.to_string(),
            x: report.bits.value(),
            existence: match report.existence {
                Existence::SolutionFound(_) => "solution_found",
                Existence::NoSolution => "no_solution",
            },
            final_check_performed: report.final_check_performed,
            stages: report
                .stages
                .iter()
                .map(|s| StageDoc {
                    i: s.i,
                    prefix: s.tested_prefix.to_string(),
                    p: s.p,
                    detected: s.trace.detected(),
                    k: s.trace.crossing(),
                    epsilon: u8::from(s.epsilon),
                    channel_steps: s.channel_steps(),
                    gates: GateDoc::from_log(&s.gates),
                })
                .collect(),
            instrumentation: InstrumentationDoc {
                hadamards: report.gates.hadamard_count,
                nots: report.gates.not_count,
                oracle_calls: report.gates.oracle_count,
                elementary_gates: report.gates.elementary_gate_count,
                channel_steps: report.channel_steps,
                per_stage_k: report.per_stage_crossings(),
            },
            complexity: ComplexityDoc::from_reconcile(&report.complexity),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ScanDoc {
    pub n: usize,
    pub verdict: &'static str,
    pub x: Option<u64>,
    pub bits: Option<String>,
    pub calls: u64,
}

impl ScanDoc {
    pub fn from_result(n: usize, result: &ScanResult) -> Self {
        match &result.verdict {
            ScanVerdict::Found(bits) => ScanDoc {
                n,
                verdict: "found",
                x: Some(bits.value()),
                bits: Some(bits.to_string()),
                calls: result.calls,
            },
            ScanVerdict::Reject => ScanDoc {
                n,
                verdict: "reject",
                x: None,
                bits: None,
                calls: result.calls,
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TheoremRowDoc {
    pub n: usize,
    pub x0: f64,
    pub k_min: Option<usize>,
    pub bound_2n: usize,
    pub bound_eq7: f64,
    pub bound_54: usize,
    pub thm1_holds: bool,
    pub eq7_as_upper_holds: bool,
    pub eq7_as_stated_holds: bool,
    pub underflow: bool,
}

#[derive(Debug, Serialize)]
pub struct TheoremDoc {
    pub a: f64,
    pub rows: Vec<TheoremRowDoc>,
}

impl TheoremDoc {
    pub fn from_report(report: &TheoremReport) -> Self {
        TheoremDoc {
            a: report.a,
            rows: report
                .rows
                .iter()
                .map(|r| TheoremRowDoc {
                    n: r.n,
                    x0: r.x0,
                    k_min: r.k_min,
                    bound_2n: r.bound_2n,
                    bound_eq7: r.bound_eq7,
                    bound_54: r.bound_54,
                    thm1_holds: r.thm1_holds,
                    eq7_as_upper_holds: r.eq7_as_upper_holds,
                    eq7_as_stated_holds: r.eq7_as_stated_holds,
                    underflow: r.underflow,
                })
                .collect(),
        }
    }
}

/// Trajectory CSV: header `k,x`, one row per step, full round-trip reals.
pub fn trajectory_csv(trace: &AmplifierTrace) -> String {
    let mut out = String::from("k,x\n");
    for (k, &x) in trace.xs().iter().enumerate() {
        let _ = writeln!(out, "{k},{}", fmt_real(x));
    }
    out
}

/// Theorem sweep CSV, one row per `n`.
pub fn theorem_csv(report: &TheoremReport) -> String {
    let mut out = String::from(
        "n,x0,k_min,bound_2n,bound_eq7,bound_54,thm1_holds,eq7_as_upper_holds,eq7_as_stated_holds,underflow\n",
    );
    for r in &report.rows {
        let k_min = r.k_min.map(|k| k.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.n,
            fmt_real(r.x0),
            k_min,
            r.bound_2n,
            fmt_real(r.bound_eq7),
            r.bound_54,
            r.thm1_holds,
            r.eq7_as_upper_holds,
            r.eq7_as_stated_holds,
            r.underflow
        );
    }
    out
}

/// Debug dump: `index amplitude_re amplitude_im` for every component whose
/// magnitude exceeds 1e-14.
pub fn state_dump(state: &QuantumState) -> String {
    let mut out = String::new();
    for (idx, amp) in state.amplitudes().iter().enumerate() {
        if amp.norm_sqr() > 1e-28 {
            let _ = writeln!(out, "{idx} {} {}", fmt_real(amp.re), fmt_real(amp.im));
        }
    }
    out
}

pub fn search_text(report: &SearchReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "search over n = {} bits", report.n);
    for s in &report.stages {
        let crossing = match s.trace.crossing() {
            Some(k) => format!("k = {k}"),
            None => "no crossing".to_string(),
        };
        let _ = writeln!(
            out,
            "  stage {}: prefix \"{}\"  p = {}  {}  eps_{} = {}",
            s.i,
            s.tested_prefix,
            fmt_real(s.p),
            crossing,
            s.i,
            u8::from(s.epsilon)
        );
    }
    match report.existence {
        Existence::SolutionFound(x) => {
            let _ = writeln!(out, "solution found: x = {x} (bits \"{}\")", report.bits);
        }
        Existence::NoSolution => {
            let _ = writeln!(
                out,
                "no solution; candidate \"{}\" failed the final check",
                report.bits
            );
        }
    }
    let _ = writeln!(
        out,
        "gates: {} Hadamard, {} NOT, {} oracle calls ({} elementary), {} channel steps",
        report.gates.hadamard_count,
        report.gates.not_count,
        report.gates.oracle_count,
        report.gates.elementary_gate_count,
        report.channel_steps
    );
    let f = &report.complexity.formula;
    let _ = writeln!(
        out,
        "formula: gate_sum = {}, channel_bound = {}, total_T = {}",
        f.gate_sum, f.channel_bound, f.total_t
    );
    out
}

pub fn scan_text(doc: &ScanDoc) -> String {
    match doc.x {
        Some(x) => format!(
            "found x = {x} (bits \"{}\") after {} calls\n",
            doc.bits.as_deref().unwrap_or(""),
            doc.calls
        ),
        None => format!("reject after {} calls\n", doc.calls),
    }
}

pub fn theorems_text(report: &TheoremReport) -> String {
    let mut out = format!("crossing sweep at a = {}\n", fmt_real(report.a));
    for r in &report.rows {
        let k = r.k_min.map(|k| k.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "  n = {:4}  k_min = {:>4}  2n = {:4}  eq7 = {:.3}  within_2n = {}",
            r.n, k, r.bound_2n, r.bound_eq7, r.thm1_holds
        );
    }
    out
}

pub fn complexity_text(doc: &ComplexityDoc) -> String {
    let f = &doc.formula;
    let mut out = format!(
        "n = {}, T(U_f) = {}\nper stage: {}\ngate sum: {}\nchannel bound: {}\ntotal T: {}\n",
        f.n, f.t_uf, f.per_stage, f.gate_sum, f.channel_bound, f.total_t
    );
    if let (Some(m), Some(flags)) = (&doc.measured, &doc.flags) {
        let _ = writeln!(
            out,
            "measured: {} Hadamard, {} NOT, {} oracle calls ({} elementary), {} channel steps",
            m.hadamards, m.nots, m.oracle_calls, m.elementary_oracle_gates, m.channel_steps
        );
        let _ = writeln!(
            out,
            "checks: hadamards_exact = {}, nots_within_bound = {}, oracle_calls_exact = {}, channel_within_bound = {}",
            flags.hadamards_exact, flags.nots_within_bound, flags.oracle_calls_exact, flags.channel_within_bound
        );
    }
    out
}

pub fn differential_text(summary: &DifferentialSummary) -> String {
    let mut out = format!(
        "n = {}: {}/{} runs agree\n",
        summary.n, summary.agreements, summary.total
    );
    for d in &summary.disagreements {
        let _ = writeln!(
            out,
            "  DISAGREE table {}: quantum_found = {}, classical_found = {}",
            d.table_hex, d.quantum_found, d.classical_found
        );
    }
    out
}
