use std::fmt::Write;

/// Multiple of the summed error estimates a margin must exceed to count.
pub const SLACK_FACTOR: f64 = 10.0;

/// Fixed 17-significant-digit rendering used by every CSV writer.
pub fn fmt_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

/// Whether a claim is about this implementation or a formula as printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimKind {
    /// Cross-checks between independent routes; a failure is a defect.
    Internal,
    /// A printed formula or inequality; a failure is an erratum.
    Printed,
}

impl ClaimKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ClaimKind::Internal => "internal",
            ClaimKind::Printed => "printed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
    /// Every determinate point has the opposite sign from the claim.
    SignReversed,
    /// No point contradicts the claim but some are within noise, or the
    /// claim could not be evaluated.
    Indeterminate,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::SignReversed => "sign-reversed",
            Status::Indeterminate => "indeterminate",
        }
    }
}

pub type Point = Vec<(&'static str, f64)>;

/// One grid point: `margin` is the signed slack in the claimed direction,
/// `noise` the summed error estimates of the operands.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub point: Point,
    pub margin: f64,
    pub noise: f64,
    /// Equality case by construction (e.g. coincident points).
    pub degenerate: bool,
}

impl Sample {
    pub fn new(point: Point, margin: f64, noise: f64) -> Self {
        Sample { point, margin, noise: noise.abs(), degenerate: false }
    }

    /// `tol − |error|`: a tolerance check with no further slack.
    pub fn within(point: Point, error: f64, tol: f64) -> Self {
        let err = if error.is_nan() { f64::INFINITY } else { error.abs() };
        Sample::new(point, tol - err, 0.0)
    }

    pub fn degenerate(point: Point) -> Self {
        Sample { point, margin: 0.0, noise: 0.0, degenerate: true }
    }

    fn positive(&self) -> bool {
        self.degenerate || self.margin > SLACK_FACTOR * self.noise || (self.noise == 0.0 && self.margin >= 0.0)
    }

    fn negative(&self) -> bool {
        !self.degenerate && (self.margin < -SLACK_FACTOR * self.noise || self.margin.is_nan())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub point: Point,
    pub margin: f64,
}

impl Witness {
    pub fn describe(&self) -> String {
        let coords: Vec<String> = self.point.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("({}) margin {:.3e}", coords.join(", "), self.margin)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClaimReport {
    pub claim_id: String,
    pub kind: ClaimKind,
    pub statement: String,
    pub status: Status,
    /// Minimum signed margin over the grid.
    pub margin: f64,
    /// The grid point attaining `margin`.
    pub witness: Option<Witness>,
    pub points: usize,
    pub indeterminate: usize,
    pub detail: String,
}

impl ClaimReport {
    /// Classify a set of samples. `reversible` claims are directional
    /// inequalities, which may come out [`Status::SignReversed`].
    pub fn from_samples(id: &str, kind: ClaimKind, statement: &str, samples: &[Sample], reversible: bool) -> Self {
        let points = samples.len();
        let pos = samples.iter().filter(|s| s.positive()).count();
        let neg = samples.iter().filter(|s| s.negative()).count();
        let indeterminate = points - pos - neg;
        let worst = samples
            .iter()
            .filter(|s| !s.degenerate)
            .min_by(|a, b| a.margin.partial_cmp(&b.margin).unwrap_or(std::cmp::Ordering::Less));
        let status = if points == 0 {
            Status::Indeterminate
        } else if neg == 0 {
            if indeterminate == 0 {
                Status::Holds
            } else {
                Status::Indeterminate
            }
        } else if reversible && pos == 0 && indeterminate == 0 {
            Status::SignReversed
        } else {
            Status::Fails
        };
        ClaimReport {
            claim_id: id.to_string(),
            kind,
            statement: statement.to_string(),
            status,
            margin: worst.map_or(0.0, |w| w.margin),
            witness: worst.map(|w| Witness { point: w.point.clone(), margin: w.margin }),
            points,
            indeterminate,
            detail: String::new(),
        }
    }

    /// A claim that cannot be evaluated on its stated domain.
    pub fn not_evaluable(id: &str, kind: ClaimKind, statement: &str, detail: impl Into<String>) -> Self {
        ClaimReport {
            claim_id: id.to_string(),
            kind,
            statement: statement.to_string(),
            status: Status::Indeterminate,
            margin: f64::NAN,
            witness: None,
            points: 0,
            indeterminate: 0,
            detail: detail.into(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    pub fn is_erratum(&self) -> bool {
        self.kind == ClaimKind::Printed && matches!(self.status, Status::Fails | Status::SignReversed)
    }

    pub fn is_defect(&self) -> bool {
        self.kind == ClaimKind::Internal && self.status == Status::Fails
    }
}

/// A printed statement contradicted by measurement, with both values.
#[derive(Debug, Clone, PartialEq)]
pub struct Erratum {
    pub topic: String,
    pub printed: String,
    pub measured: String,
}

impl Erratum {
    pub fn new(topic: impl Into<String>, printed: impl Into<String>, measured: impl Into<String>) -> Self {
        Erratum { topic: topic.into(), printed: printed.into(), measured: measured.into() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub grid: String,
    pub claims: Vec<ClaimReport>,
    pub errata: Vec<Erratum>,
}

impl SuiteReport {
    pub fn claim(&self, id: &str) -> Option<&ClaimReport> {
        self.claims.iter().find(|c| c.claim_id == id)
    }
}

/// True when no internal cross-check failed.
pub fn all_internal_pass(reports: &[SuiteReport]) -> bool {
    reports.iter().flat_map(|r| &r.claims).all(|c| !c.is_defect())
}

pub fn render_text(reports: &[SuiteReport]) -> String {
    let mut out = String::new();
    for rep in reports {
        let _ = writeln!(out, "== {} ==", rep.suite);
        let _ = writeln!(out, "grid: {}", rep.grid);
        for c in &rep.claims {
            let _ = writeln!(out, "[{}] {} ({}): {}", c.status.as_str(), c.claim_id, c.kind.as_str(), c.statement);
            let indet = if c.indeterminate > 0 { format!(", {} within noise", c.indeterminate) } else { String::new() };
            match &c.witness {
                Some(w) => {
                    let _ = writeln!(out, "    {} points{indet}; worst {}", c.points, w.describe());
                }
                None => {
                    let _ = writeln!(out, "    {} points{indet}", c.points);
                }
            }
            if !c.detail.is_empty() {
                let _ = writeln!(out, "    {}", c.detail);
            }
        }
        let _ = writeln!(out);
    }

    let mut errata: Vec<String> = Vec::new();
    for rep in reports {
        for c in rep.claims.iter().filter(|c| c.is_erratum()) {
            let w = c.witness.as_ref().map_or(String::new(), |w| format!("; worst {}", w.describe()));
            errata.push(format!("{} [{}] {} ({}){w}", c.claim_id, c.status.as_str(), c.statement, rep.suite));
        }
        for e in &rep.errata {
            errata.push(format!("{}: printed {}; measured {} ({})", e.topic, e.printed, e.measured, rep.suite));
        }
    }
    let _ = writeln!(out, "== ERRATA ==");
    if errata.is_empty() {
        let _ = writeln!(out, "(none)");
    }
    for line in errata {
        let _ = writeln!(out, "- {line}");
    }

    let defects: Vec<&ClaimReport> = reports.iter().flat_map(|r| &r.claims).filter(|c| c.is_defect()).collect();
    let _ = writeln!(out);
    if defects.is_empty() {
        let _ = writeln!(out, "internal checks: all pass");
    } else {
        let ids: Vec<&str> = defects.iter().map(|c| c.claim_id.as_str()).collect();
        let _ = writeln!(out, "internal checks FAILED: {}", ids.join(", "));
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render_csv(reports: &[SuiteReport]) -> String {
    let mut out = String::from("suite,claim_id,kind,status,points,indeterminate,margin,witness,statement\n");
    for rep in reports {
        for c in &rep.claims {
            let witness = c
                .witness
                .as_ref()
                .map(|w| w.point.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" "))
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                csv_field(&rep.suite),
                csv_field(&c.claim_id),
                c.kind.as_str(),
                c.status.as_str(),
                c.points,
                c.indeterminate,
                fmt_num(c.margin),
                csv_field(&witness),
                csv_field(&c.statement)
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(r: f64) -> Point {
        vec![("r", r)]
    }

    #[test]
    fn classification() {
        let holds = [Sample::new(pt(0.1), 1.0, 0.01), Sample::new(pt(0.2), 0.5, 0.0)];
        assert_eq!(ClaimReport::from_samples("a", ClaimKind::Printed, "", &holds, true).status, Status::Holds);

        let reversed = [Sample::new(pt(0.1), -1.0, 0.01), Sample::new(pt(0.2), -0.5, 0.0)];
        let rep = ClaimReport::from_samples("b", ClaimKind::Printed, "", &reversed, true);
        assert_eq!(rep.status, Status::SignReversed);
        assert_eq!(rep.witness.unwrap().point, pt(0.1));
        assert_eq!(ClaimReport::from_samples("b", ClaimKind::Printed, "", &reversed, false).status, Status::Fails);

        let mixed = [Sample::new(pt(0.1), -1.0, 0.01), Sample::new(pt(0.2), 0.5, 0.0)];
        assert_eq!(ClaimReport::from_samples("c", ClaimKind::Printed, "", &mixed, true).status, Status::Fails);

        let noisy = [Sample::new(pt(0.1), 1e-9, 1e-9), Sample::new(pt(0.2), 0.5, 0.0)];
        assert_eq!(ClaimReport::from_samples("d", ClaimKind::Printed, "", &noisy, true).status, Status::Indeterminate);

        let degenerate = [Sample::degenerate(pt(0.3))];
        assert_eq!(ClaimReport::from_samples("e", ClaimKind::Printed, "", &degenerate, true).status, Status::Holds);

        let nan = [Sample::within(pt(0.1), f64::NAN, 1e-6)];
        assert_eq!(ClaimReport::from_samples("f", ClaimKind::Internal, "", &nan, false).status, Status::Fails);
    }

    #[test]
    fn rendering_lists_errata_and_defects() {
        let printed = ClaimReport::from_samples("x", ClaimKind::Printed, "stmt", &[Sample::new(pt(0.5), -1.0, 0.0)], false);
        let internal = ClaimReport::from_samples("y", ClaimKind::Internal, "ok", &[Sample::new(pt(0.5), 1.0, 0.0)], false);
        let rep = SuiteReport {
            suite: "s".into(),
            grid: "g".into(),
            claims: vec![printed, internal],
            errata: vec![Erratum::new("t", "0", "1")],
        };
        let text = render_text(std::slice::from_ref(&rep));
        assert!(text.contains("== ERRATA ==\n- x [fails] stmt"));
        assert!(text.contains("- t: printed 0; measured 1"));
        assert!(text.contains("internal checks: all pass"));
        assert!(all_internal_pass(&[rep.clone()]));
        let csv = render_csv(&[rep]);
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.contains("s,x,printed,fails,1,0,-1.0000000000000000e0,r=0.5,stmt"));
    }

    #[test]
    fn number_format_has_seventeen_digits() {
        assert_eq!(fmt_num(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_num(-0.1), "-1.0000000000000001e-1");
        assert_eq!(fmt_num(f64::INFINITY), "inf");
    }
}
