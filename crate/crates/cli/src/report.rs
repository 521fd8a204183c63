//! Run reports and their text projection.

use std::fmt::Write;

use serde::Serialize;
use tensor_periods::admissibility::{compute_a, compute_dual_a, predict_case, RelationCase};
use tensor_periods::dirichlet::ProbeRow;
use tensor_periods::hodge::{betti_signature, criticality, filtration_profile, tensor_hodge, HodgeError, PureHodgeData, Sign, TensorData};
use tensor_periods::verifier::{RelationReport, VerifyMode};

pub const TOOL: &str = "tensor-periods";

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: u64,
    pub mode: Option<VerifyMode>,
    pub tasks: Vec<Task>,
    pub passed: bool,
}

impl RunReport {
    pub fn new(command: &str, seed: u64, mode: Option<VerifyMode>, tasks: Vec<Task>) -> Self {
        let passed = tasks.iter().all(Task::passed);
        RunReport {
            tool: TOOL.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            seed,
            mode,
            tasks,
            passed,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {} (seed {})", self.tool, self.version, self.command, self.seed);
        for t in &self.tasks {
            out.push_str(&t.to_text());
        }
        let _ = writeln!(out, "overall: {}", if self.passed { "PASS" } else { "FAIL" });
        out
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Task {
    Inspect(MotiveSummary),
    Tensor(Box<TensorSummary>),
    Verify(Box<RelationReport>),
    Dirichlet(ProbeTable),
}

impl Task {
    /// Inspections and tensor reports are informational and always pass.
    pub fn passed(&self) -> bool {
        match self {
            Task::Inspect(_) | Task::Tensor(_) => true,
            Task::Verify(r) => r.passed,
            Task::Dirichlet(t) => t.passed,
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Task::Inspect(m) => m.to_text(),
            Task::Tensor(t) => t.to_text(),
            Task::Verify(r) => r.to_text(),
            Task::Dirichlet(t) => t.to_text(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MotiveSummary {
    pub label: String,
    pub weight: i64,
    pub rank: usize,
    pub d_plus: usize,
    pub d_minus: usize,
    pub jumps: Vec<i64>,
    pub mults: Vec<usize>,
    pub critical: bool,
    pub frak_p_plus: Option<usize>,
    pub frak_p_minus: Option<usize>,
    pub epsilon: Option<Sign>,
}

impl MotiveSummary {
    pub fn of(h: &PureHodgeData) -> Self {
        let sig = betti_signature(h);
        let profile = filtration_profile(h);
        let crit = criticality(h);
        MotiveSummary {
            label: h.label().to_string(),
            weight: h.weight(),
            rank: h.rank(),
            d_plus: sig.plus,
            d_minus: sig.minus,
            jumps: profile.jumps,
            mults: profile.mults,
            critical: crit.critical,
            frak_p_plus: crit.frak_p_plus,
            frak_p_minus: crit.frak_p_minus,
            epsilon: crit.epsilon,
        }
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} (weight {}, rank {})", self.label, self.weight, self.rank);
        let _ = writeln!(out, "  d± = ({}, {})", self.d_plus, self.d_minus);
        let _ = writeln!(out, "  jumps {:?}, mults {:?}", self.jumps, self.mults);
        let _ = writeln!(
            out,
            "  {}, p± = ({}, {}), ε = {}",
            if self.critical { "critical" } else { "not critical" },
            opt(self.frak_p_plus),
            opt(self.frak_p_minus),
            self.epsilon.map_or("none".to_string(), |e| format!("{e}1")),
        );
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TensorSummary {
    pub motive: String,
    pub partner: String,
    pub critical: bool,
    pub tensor: TensorData,
    pub a_plus: Option<Vec<i64>>,
    pub a_minus: Option<Vec<i64>>,
    pub dual_a_plus: Option<Vec<i64>>,
    pub dual_a_minus: Option<Vec<i64>>,
    pub predicted_case: Option<RelationCase>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl TensorSummary {
    pub fn of(h: &PureHodgeData, hp: &PureHodgeData) -> Result<Self, HodgeError> {
        let tensor = tensor_hodge(h, hp)?;
        let critical = tensor.is_critical();
        let mut notes = Vec::new();
        let (mut a_plus, mut a_minus, mut dual_a_plus, mut dual_a_minus, mut predicted_case) = (None, None, None, None, None);
        if critical {
            a_plus = compute_a(h, hp, Sign::Plus).ok();
            a_minus = compute_a(h, hp, Sign::Minus).ok();
            dual_a_plus = compute_dual_a(h, hp, Sign::Plus).ok();
            dual_a_minus = compute_dual_a(h, hp, Sign::Minus).ok();
            match predict_case(h, hp) {
                Ok(c) => predicted_case = Some(c),
                Err(e) => notes.push(format!("no relation predicted: {e}")),
            }
        } else {
            notes.push(format!("{} ⊗ {} is not critical", h.label(), hp.label()));
        }
        Ok(TensorSummary {
            motive: h.label().to_string(),
            partner: hp.label().to_string(),
            critical,
            tensor,
            a_plus,
            a_minus,
            dual_a_plus,
            dual_a_minus,
            predicted_case,
            notes,
        })
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        let t = &self.tensor;
        let _ = writeln!(out, "{} ⊗ {} (weight {})", self.motive, self.partner, t.product_hodge.weight());
        let _ = writeln!(out, "  k_t {:?}, u_t {:?}", t.profile.jumps, t.profile.mults);
        let _ = writeln!(out, "  d± = ({}, {}), q± = ({}, {})", t.d_plus, t.d_minus, opt(t.q_plus), opt(t.q_minus));
        if let (Some(ap), Some(am)) = (&self.a_plus, &self.a_minus) {
            let _ = writeln!(out, "  a⁺ {ap:?}, a⁻ {am:?}");
        }
        if let (Some(dp), Some(dm)) = (&self.dual_a_plus, &self.dual_a_minus) {
            let _ = writeln!(out, "  a*⁺ {dp:?}, a*⁻ {dm:?}");
        }
        if let Some(c) = &self.predicted_case {
            let e = &c.exponents;
            let _ = write!(out, "  case {:?}, exponents {}={} {}={}", c.case_tag, e[0].motive, e[0].exponent, e[1].motive, e[1].exponent);
            if let Some((r0, s0)) = c.localization {
                let _ = write!(out, ", (r₀,s₀) = ({r0},{s0})");
            }
            out.push('\n');
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeTable {
    pub disc: i64,
    pub disc2: Option<i64>,
    pub max_m: u32,
    pub digits: u32,
    pub rows: Vec<ProbeRow>,
    pub passed: bool,
}

impl ProbeTable {
    pub fn new(disc: i64, disc2: Option<i64>, max_m: u32, digits: u32, rows: Vec<ProbeRow>) -> Self {
        let passed = rows.iter().all(|r| r.pass);
        ProbeTable { disc, disc2, max_m, digits, rows, passed }
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        match self.disc2 {
            Some(d2) => {
                let _ = writeln!(out, "χ_{} · χ_{}, m ≤ {}, {} digits", self.disc, d2, self.max_m, self.digits);
            }
            None => {
                let _ = writeln!(out, "χ_{}, m ≤ {}, {} digits", self.disc, self.max_m, self.digits);
            }
        }
        for r in &self.rows {
            let _ = writeln!(
                out,
                "  m={} {} {}",
                r.m,
                if r.pass { "PASS" } else { "FAIL" },
                r.rational.as_deref().unwrap_or("no rational found"),
            );
        }
        out
    }
}

fn opt(v: Option<usize>) -> String {
    v.map_or("none".to_string(), |x| x.to_string())
}
