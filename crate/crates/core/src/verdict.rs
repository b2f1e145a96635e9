//! Three-valued check outcomes and the record every check produces.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    Violated,
    /// The statement's hypotheses do not hold on this input; nothing asserted.
    HypothesisNotMet,
    /// An exhaustive scan would exceed the enumeration budget.
    Infeasible,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::Violated => "violated",
            Verdict::HypothesisNotMet => "hypothesis_not_met",
            Verdict::Infeasible => "infeasible",
        }
    }

    /// `Verified` when `holds`, `Violated` otherwise.
    pub fn of(holds: bool) -> Self {
        if holds {
            Verdict::Verified
        } else {
            Verdict::Violated
        }
    }

    /// Combines verdicts of sub-checks: any violation wins, then infeasible,
    /// then unmet hypotheses.
    pub fn combine(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Violated, _) | (_, Violated) => Violated,
            (Infeasible, _) | (_, Infeasible) => Infeasible,
            (HypothesisNotMet, _) | (_, HypothesisNotMet) => HypothesisNotMet,
            _ => Verified,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One evaluated statement. Sides are pre-rendered: exact quantities as
/// `p/q`, floating ones with 12 significant digits.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// Short description of the statement being checked.
    pub anchor: String,
    pub verdict: Verdict,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    /// `rhs - lhs` for `lhs <= rhs` style checks (sign adjusted otherwise),
    /// so a negative margin means the inequality failed.
    pub margin: Option<String>,
    pub witness: Option<String>,
    pub detail: Option<String>,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, verdict: Verdict) -> Self {
        CheckRecord {
            name: name.into(),
            anchor: anchor.into(),
            verdict,
            lhs: None,
            rhs: None,
            margin: None,
            witness: None,
            detail: None,
        }
    }

    pub fn sides(mut self, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        self.lhs = Some(lhs.into());
        self.rhs = Some(rhs.into());
        self
    }

    pub fn margin(mut self, margin: impl Into<String>) -> Self {
        self.margin = Some(margin.into());
        self
    }

    pub fn witness(mut self, witness: impl Into<String>) -> Self {
        self.witness = Some(witness.into());
        self
    }

    pub fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// Renders a float with 12 significant digits.
pub fn fmt_float(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if x == 0.0 {
        return "0".into();
    }
    let s = format!("{:.11e}", x);
    let v: f64 = s.parse().expect("round trip");
    let out = if v.abs() < 1e-4 || v.abs() >= 1e15 { format!("{v:e}") } else { format!("{v}") };
    if out == "-0" {
        "0".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_rendering() {
        assert_eq!(fmt_float(0.30901699437494745), "0.309016994375");
        assert_eq!(fmt_float(1.0), "1");
        assert_eq!(fmt_float(-1.0 / 3.0), "-0.333333333333");
        assert_eq!(fmt_float(f64::INFINITY), "inf");
        assert_eq!(fmt_float(1.3322676295501878e-15), "1.33226762955e-15");
        assert_eq!(fmt_float(1e-9), "1e-9");
    }

    #[test]
    fn combine_prefers_violations() {
        assert_eq!(Verdict::Verified.combine(Verdict::Violated), Verdict::Violated);
        assert_eq!(Verdict::HypothesisNotMet.combine(Verdict::Verified), Verdict::HypothesisNotMet);
    }
}
