//! Report types shared by the table, compatibility and JSON renderings.
//!
//! Field order in these structs is the JSON key order.

use serde::Serialize;

use crate::algebra::{fmt_rational, Rational};
use crate::cfinite::{CFiniteSeq, Certification};

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(fmt_rational).collect()
}

fn spaced(values: &[String]) -> String {
    values.join(" ")
}

#[derive(Serialize, Clone, Debug)]
pub struct Recurrence {
    pub name: String,
    pub order: usize,
    pub init: Vec<String>,
    pub rec: Vec<String>,
    pub certification: Certification,
}

impl Recurrence {
    pub fn new(name: impl Into<String>, seq: &CFiniteSeq) -> Self {
        Recurrence {
            name: name.into(),
            order: seq.order(),
            init: strings(&seq.init()[..seq.order()]),
            rec: strings(seq.rec()),
            certification: seq.certification(),
        }
    }

    pub fn table(&self) -> String {
        format!(
            "name: {}\ninit: {}\nrec: {}\ncertification: {}\n",
            self.name,
            spaced(&self.init),
            spaced(&self.rec),
            self.certification
        )
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct MetaCoefficient {
    #[serde(flatten)]
    pub recurrence: Recurrence,
    pub bound: usize,
}

#[derive(Serialize, Clone, Debug)]
pub struct MetaReport {
    pub certification: Certification,
    pub base: Recurrence,
    pub coefficients: Vec<MetaCoefficient>,
    pub samples_checked: usize,
}

impl MetaReport {
    pub fn table(&self) -> String {
        let mut out = format!(
            "status: {}\nbase: {} (order {})\n",
            self.certification, self.base.name, self.base.order
        );
        for c in &self.coefficients {
            let r = &c.recurrence;
            out.push_str(&format!(
                "{}(m)  init: {}  rec: {}  order: {} (bound {})  certification: {}\n",
                r.name,
                spaced(&r.init),
                spaced(&r.rec),
                r.order,
                c.bound,
                r.certification
            ));
        }
        out.push_str(&format!(
            "samples checked: m = 1..{}\n",
            self.samples_checked
        ));
        out
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct SumReport {
    /// What `a(n)` stands for, when a sequence was given.
    pub sequence: Option<String>,
    pub poly: String,
    pub b_coeffs: Vec<String>,
    pub scale: String,
    pub identity: String,
    /// Direct summation agreed for `0 <= n <= verified_up_to`.
    pub verified_up_to: Option<usize>,
}

impl SumReport {
    pub fn table(&self) -> String {
        let mut out = String::new();
        if let Some(s) = &self.sequence {
            out.push_str(&format!("a(n) = {s}\n"));
        }
        out.push_str(&format!("p(x) = {}\n", self.poly));
        out.push_str(&format!("sum_{{0<=k<n}} a(k) = {}\n", self.identity));
        if let Some(n) = self.verified_up_to {
            out.push_str(&format!("verified: 0 <= n <= {n}\n"));
        }
        out
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct CoeffReport {
    pub k: usize,
    pub j: u64,
    pub bound: usize,
    pub samples: Vec<String>,
    pub recurrence: Recurrence,
    pub symmetric: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct ProductReport {
    pub certification: Certification,
    pub sequence: String,
    pub poly: String,
    pub minimal_poly: String,
    pub minimal_order: usize,
    pub distinct_root_count: usize,
    pub order_bound: usize,
    pub factors: Option<[String; 2]>,
    pub coefficient: Option<CoeffReport>,
}

impl ProductReport {
    pub fn table(&self) -> String {
        let mut out = format!(
            "status: {}\nsequence: {}\nannihilator: {}\nminimal: {}\ndistinct roots: {}\norder: {} (bound {})\n",
            self.certification,
            self.sequence,
            self.poly,
            self.minimal_poly,
            self.distinct_root_count,
            self.minimal_order,
            self.order_bound
        );
        if let Some([l, r]) = &self.factors {
            out.push_str(&format!("factors: ({l}) ({r})\n"));
        }
        if let Some(c) = &self.coefficient {
            out.push_str(&format!(
                "c_{}(i, {}) for i = 1..{}: {}\n",
                c.k,
                c.j,
                c.samples.len(),
                spaced(&c.samples)
            ));
            out.push_str(&format!(
                "  init: {}  rec: {}  order: {} (bound {})  certification: {}  symmetric: {}\n",
                spaced(&c.recurrence.init),
                spaced(&c.recurrence.rec),
                c.recurrence.order,
                c.bound,
                c.recurrence.certification,
                c.symmetric
            ));
        }
        out
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct VerifyReport {
    pub identity: String,
    pub holds: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn table(&self) -> String {
        let mut out = format!(
            "identity: {}\nresult: {}\n",
            self.identity,
            if self.holds { "holds" } else { "FAILS" }
        );
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {}: {}\n",
                if c.holds { "ok" } else { "FAIL" },
                c.name,
                c.detail
            ));
        }
        out
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct OeisReport {
    pub id: Option<String>,
    pub compared: String,
    pub offset: i64,
    pub matched: usize,
    pub available: usize,
    pub first_mismatch: Option<MismatchReport>,
}

#[derive(Serialize, Clone, Debug)]
pub struct MismatchReport {
    pub index: i64,
    pub expected: String,
    pub found: String,
}

impl OeisReport {
    pub fn table(&self) -> String {
        let mut out = format!(
            "b-file: {}\ncompared: {} at offset {}\nmatched: {} of {}\n",
            self.id.as_deref().unwrap_or("(unnamed)"),
            self.compared,
            self.offset,
            self.matched,
            self.available
        );
        if let Some(m) = &self.first_mismatch {
            out.push_str(&format!(
                "first mismatch: index {}: b-file {}, computed {}\n",
                m.index, m.expected, m.found
            ));
        }
        out
    }
}
