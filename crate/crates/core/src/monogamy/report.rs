use serde::{Deserialize, Serialize};

use crate::roof::{BoundDirection, BoundedValue};

use super::{EXACT_TOL, NEAR_EQUALITY, ROOF_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InequalityId {
    #[serde(rename = "lemma1_mono")]
    Lemma1Mono,
    #[serde(rename = "lemma1_poly")]
    Lemma1Poly,
    #[serde(rename = "eq3_negativity_sq")]
    Eq3NegativitySq,
    #[serde(rename = "eq8_cren_sq")]
    Eq8CrenSq,
    #[serde(rename = "eq9_crenoa_sq_poly")]
    Eq9CrenoaSqPoly,
    #[serde(rename = "lemma2_N_223")]
    Lemma2N223,
    #[serde(rename = "lemma2_CREN_223")]
    Lemma2Cren223,
    #[serde(rename = "thm1_logneg")]
    Thm1LogNeg,
    #[serde(rename = "thm1_lcrenoa_poly")]
    Thm1LcrenoaPoly,
    #[serde(rename = "thm1_lcren_mixed")]
    Thm1LcrenMixed,
    #[serde(rename = "thm2_logneg")]
    Thm2LogNeg,
    #[serde(rename = "thm2_lcren")]
    Thm2Lcren,
    #[serde(rename = "thm2_lcren_mixed")]
    Thm2LcrenMixed,
}

impl InequalityId {
    pub const ALL: [InequalityId; 13] = [
        InequalityId::Lemma1Mono,
        InequalityId::Lemma1Poly,
        InequalityId::Eq3NegativitySq,
        InequalityId::Eq8CrenSq,
        InequalityId::Eq9CrenoaSqPoly,
        InequalityId::Lemma2N223,
        InequalityId::Lemma2Cren223,
        InequalityId::Thm1LogNeg,
        InequalityId::Thm1LcrenoaPoly,
        InequalityId::Thm1LcrenMixed,
        InequalityId::Thm2LogNeg,
        InequalityId::Thm2Lcren,
        InequalityId::Thm2LcrenMixed,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InequalityId::Lemma1Mono => "lemma1_mono",
            InequalityId::Lemma1Poly => "lemma1_poly",
            InequalityId::Eq3NegativitySq => "eq3_negativity_sq",
            InequalityId::Eq8CrenSq => "eq8_cren_sq",
            InequalityId::Eq9CrenoaSqPoly => "eq9_crenoa_sq_poly",
            InequalityId::Lemma2N223 => "lemma2_N_223",
            InequalityId::Lemma2Cren223 => "lemma2_CREN_223",
            InequalityId::Thm1LogNeg => "thm1_logneg",
            InequalityId::Thm1LcrenoaPoly => "thm1_lcrenoa_poly",
            InequalityId::Thm1LcrenMixed => "thm1_lcren_mixed",
            InequalityId::Thm2LogNeg => "thm2_logneg",
            InequalityId::Thm2Lcren => "thm2_lcren",
            InequalityId::Thm2LcrenMixed => "thm2_lcren_mixed",
        }
    }

    pub fn sense(self) -> Sense {
        match self {
            InequalityId::Lemma1Poly
            | InequalityId::Eq9CrenoaSqPoly
            | InequalityId::Thm1LcrenoaPoly => Sense::Polygamy,
            _ => Sense::Monogamy,
        }
    }
}

impl std::fmt::Display for InequalityId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for InequalityId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        InequalityId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| format!("unknown inequality id `{s}`"))
    }
}

/// Monogamy: lhs ≥ Σ rhs. Polygamy: lhs ≤ Σ rhs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sense {
    Monogamy,
    Polygamy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    Inconclusive,
    Violated,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Violated => "violated",
        }
    }
}

/// One side term with every certificate available for it.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    bounds: Vec<BoundedValue>,
}

impl Term {
    pub fn new(bounds: Vec<BoundedValue>) -> Self {
        assert!(!bounds.is_empty(), "a term needs at least one bound");
        Self {
            bounds: bounds.into_iter().map(BoundedValue::without_witness).collect(),
        }
    }

    pub fn exact(value: f64) -> Self {
        Self::new(vec![BoundedValue::exact(value)])
    }

    /// Largest certified lower bound and whether it is exact.
    fn lower(&self) -> Option<(f64, bool)> {
        self.bounds
            .iter()
            .filter(|b| b.direction.bounds_below())
            .map(|b| (b.value, b.direction == BoundDirection::Exact))
            .max_by(|a, b| a.0.total_cmp(&b.0))
    }

    /// Smallest certified upper bound and whether it is exact.
    fn upper(&self) -> Option<(f64, bool)> {
        self.bounds
            .iter()
            .filter(|b| b.direction.bounds_above())
            .map(|b| (b.value, b.direction == BoundDirection::Exact))
            .min_by(|a, b| a.0.total_cmp(&b.0))
    }

    /// The certificate used on the verifying side, then the one on the
    /// refuting side when it differs.
    fn split(&self, verify_needs_lower: bool) -> (BoundedValue, Option<BoundedValue>) {
        if let Some(e) = self.bounds.iter().find(|b| b.direction == BoundDirection::Exact) {
            return (e.clone(), None);
        }
        let pick = |want_lower: bool| {
            let it = self.bounds.iter().filter(|b| {
                if want_lower {
                    b.direction.bounds_below()
                } else {
                    b.direction.bounds_above()
                }
            });
            if want_lower {
                it.max_by(|a, b| a.value.total_cmp(&b.value)).cloned()
            } else {
                it.min_by(|a, b| a.value.total_cmp(&b.value)).cloned()
            }
        };
        match (pick(verify_needs_lower), pick(!verify_needs_lower)) {
            (Some(v), counter) => (v, counter),
            (None, Some(c)) => (c, None),
            (None, None) => unreachable!("terms are nonempty"),
        }
    }
}

/// Result of checking one inequality instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub inequality_id: InequalityId,
    pub exponent: f64,
    /// Left-hand side certificate on the verifying side.
    pub lhs: BoundedValue,
    /// Right-hand side certificates on the verifying side.
    #[serde(rename = "rhs")]
    pub rhs_terms: Vec<BoundedValue>,
    /// Opposite-direction left-hand estimate, when one was computed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs_counter: Option<BoundedValue>,
    #[serde(skip_serializing_if = "all_none")]
    pub rhs_counter: Vec<Option<BoundedValue>>,
    pub residual: f64,
    pub verdict: Verdict,
    /// True for verified instances with residual below 1e−4.
    pub near_equality: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
}

fn all_none(v: &[Option<BoundedValue>]) -> bool {
    v.iter().all(Option::is_none)
}

impl InequalityReport {
    /// Judges an inequality from per-term certificates.
    ///
    /// The residual is taken on the certified sides: for monogamy the lower
    /// bound of the lhs minus the upper bounds of the rhs terms, for polygamy
    /// the lower bounds of the rhs minus the upper bound of the lhs. It is
    /// `verified` when that residual is ≥ −1e−9. It is `violated` only when
    /// the opposite certificates prove the inequality fails, by more than
    /// 1e−9 if they are all exact and 1e−6 otherwise. Anything else is
    /// `inconclusive`.
    pub fn judge(id: InequalityId, exponent: f64, lhs: Term, rhs: Vec<Term>) -> Self {
        let sense = id.sense();
        let sum = |side: &dyn Fn(&Term) -> Option<(f64, bool)>| -> Option<(f64, bool)> {
            rhs.iter().try_fold((0.0, true), |(acc, exact), t| {
                side(t).map(|(v, e)| (acc + v, exact && e))
            })
        };
        let (verify, refute) = match sense {
            Sense::Monogamy => (
                lhs.lower().zip(sum(&Term::upper)).map(|(l, r)| l.0 - r.0),
                lhs.upper()
                    .zip(sum(&Term::lower))
                    .map(|(l, r)| (l.0 - r.0, l.1 && r.1)),
            ),
            Sense::Polygamy => (
                sum(&Term::lower).zip(lhs.upper()).map(|(r, l)| r.0 - l.0),
                sum(&Term::upper)
                    .zip(lhs.lower())
                    .map(|(r, l)| (r.0 - l.0, l.1 && r.1)),
            ),
        };
        let verdict = match (verify, refute) {
            (Some(v), _) if v >= -EXACT_TOL => Verdict::Verified,
            (_, Some((r, exact))) if r < -(if exact { EXACT_TOL } else { ROOF_TOL }) => {
                Verdict::Violated
            }
            _ => Verdict::Inconclusive,
        };
        let residual = verify.unwrap_or(f64::NAN);

        let lhs_needs_lower = sense == Sense::Monogamy;
        let (lhs_primary, lhs_counter) = lhs.split(lhs_needs_lower);
        let (rhs_terms, rhs_counter) = rhs.iter().map(|t| t.split(!lhs_needs_lower)).unzip();
        Self {
            inequality_id: id,
            exponent,
            lhs: lhs_primary,
            rhs_terms,
            lhs_counter,
            rhs_counter,
            residual,
            verdict,
            near_equality: verdict == Verdict::Verified && residual < NEAR_EQUALITY,
            family: None,
        }
    }

    pub fn with_family(mut self, family: impl Into<String>) -> Self {
        self.family = Some(family.into());
        self
    }

    /// Σ of the rhs values on the verifying side.
    pub fn rhs_sum(&self) -> f64 {
        self.rhs_terms.iter().map(|b| b.value).sum()
    }
}
