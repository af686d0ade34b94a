//! Dimension claims for the generic family, checked through count polynomials.

use serde::{Deserialize, Serialize};

use super::counting::{CountEngine, CountSource, Locus};
use super::interp::{fit_count_polynomial, CountPolynomial, CountPolynomialRecord};
use super::{DeterminantalError, FamilySpec};
use crate::exactlin::is_prime;
use crate::numerology::{d0_formula, expected_codim, vdim_grassmannian, vdim_inc};

/// Which primes feed an interpolation: the preferred primes first, then every
/// further prime in increasing order, skipping the held-out ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePlan {
    pub preferred: Vec<u64>,
    pub held_out: Vec<u64>,
}

impl Default for PrimePlan {
    fn default() -> Self {
        PrimePlan { preferred: vec![2, 3, 5, 7], held_out: vec![11] }
    }
}

impl PrimePlan {
    pub fn support(&self, count: usize) -> Vec<u64> {
        let mut out: Vec<u64> = self.preferred.iter().copied().filter(|p| !self.held_out.contains(p)).take(count).collect();
        let mut candidate = 2;
        while out.len() < count {
            if is_prime(candidate) && !out.contains(&candidate) && !self.held_out.contains(&candidate) {
                out.push(candidate);
            }
            candidate += 1;
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct LocusFit {
    pub m: usize,
    pub n: usize,
    pub locus: Locus,
    pub polynomial: CountPolynomial,
    pub sources: Vec<(u64, CountSource)>,
}

impl LocusFit {
    /// Count at a prime used by the fit.
    pub fn count_at(&self, q: u64) -> Option<u128> {
        self.polynomial
            .support()
            .iter()
            .chain(self.polynomial.held_out())
            .find(|(p, _)| *p == q)
            .map(|(_, c)| *c)
    }

    pub fn record(&self) -> CountPolynomialRecord {
        CountPolynomialRecord::from(&self.polynomial)
    }
}

impl CountEngine {
    /// Interpolates the count polynomial of `locus` over `V_{m,n}` through
    /// `degree_bound + 1` support primes and validates on the held-out primes.
    pub fn fit_locus(&self, m: usize, n: usize, locus: Locus, plan: &PrimePlan) -> Result<LocusFit, DeterminantalError> {
        let needed = (locus.degree_bound(m, n) + 1).max(2);
        let mut sources = Vec::new();
        let mut collect = |q: u64| -> Result<(u64, u128), DeterminantalError> {
            let (count, source) = self.locus_count(&FamilySpec::new(m, n, q)?, locus)?;
            sources.push((q, source));
            Ok((q, count))
        };
        let support = plan.support(needed).into_iter().map(&mut collect).collect::<Result<Vec<_>, _>>()?;
        let held_out = plan.held_out.iter().map(|&q| collect(q)).collect::<Result<Vec<_>, _>>()?;
        let polynomial = fit_count_polynomial(&support, &held_out)?;
        Ok(LocusFit { m, n, locus, polynomial, sources })
    }
}

/// A locus of expected dimension `expected` matches its count polynomial if the
/// degree equals `expected`, or the locus is empty and `expected < 0`.
pub fn dimension_matches(poly: &CountPolynomial, expected: i64) -> bool {
    match poly.degree() {
        Some(d) => d as i64 == expected,
        None => expected < 0,
    }
}

fn degree_string(poly: &CountPolynomial) -> String {
    poly.degree().map_or("empty".to_string(), |d| d.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimItem {
    pub claim: String,
    pub anchor: String,
    pub passed: bool,
    pub detail: String,
}

impl ClaimItem {
    pub fn new(claim: impl Into<String>, anchor: &str, passed: bool, detail: impl Into<String>) -> Self {
        ClaimItem { claim: claim.into(), anchor: anchor.to_string(), passed, detail: detail.into() }
    }
}

pub const ANCHOR_CODIM: &str = "codim of {h0 >= k} equals max(0, k(k-e)) for the generic family";
pub const ANCHOR_LEADING: &str = "top-dimensional part of each degeneracy locus is irreducible (heuristic: leading coefficient 1)";
pub const ANCHOR_INC_DIM: &str = "incidence varieties are classical: dim = vdim = dim X - d+(d+ - e) + d-(d+ - d- - e)";
pub const ANCHOR_D0: &str = "for e = 1 the incidence virtual dimension equals d0 = dim X + (1-d+)d+ - (d-+1)d- + d-d+";
pub const ANCHOR_GR_DIM: &str = "Grassmannians of quotients are classical: dim = dim X - d(d - e)";
pub const ANCHOR_BIRATIONAL: &str = "for d+ = d- + e, Inc, Gr(d+), Gr_dual(d-) and D(d+) are birational";
pub const ANCHOR_WINDOW: &str = "for d+ = d- + e and d+d- <= dim X < (d+ + 1)(d- + 1) the four spaces are isomorphic";
pub const ANCHOR_INC_EDGE: &str = "Inc(d+, 0) = Gr(d+) and Inc(0, d-) = Gr_dual(d-)";

/// Checks the codimension of `{h0 >= k}` over `V_{m,n}`.
pub fn codimension_law(engine: &CountEngine, m: usize, n: usize, k: i64, plan: &PrimePlan) -> Result<Vec<ClaimItem>, DeterminantalError> {
    let fit = engine.fit_locus(m, n, Locus::Degeneracy { k }, plan)?;
    let e = n as i64 - m as i64;
    let expected = (m * n) as i64 - expected_codim(k, e);
    let poly = &fit.polynomial;
    let mut items = vec![ClaimItem::new(
        format!("V_{{{m},{n}}} k={k}: degree = {expected}"),
        ANCHOR_CODIM,
        dimension_matches(poly, expected),
        format!("count polynomial {} (degree {})", poly.display(), degree_string(poly)),
    )];
    if let Some(lead) = poly.leading_coefficient() {
        items.push(ClaimItem::new(
            format!("V_{{{m},{n}}} k={k}: leading coefficient 1"),
            ANCHOR_LEADING,
            *lead == num_rational::BigRational::from_integer(1.into()),
            format!("leading coefficient {lead}"),
        ));
    }
    Ok(items)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DimensionReport {
    pub m: usize,
    pub n: usize,
    pub d_plus: usize,
    pub d_minus: usize,
    pub items: Vec<ClaimItem>,
    pub polynomials: Vec<(String, CountPolynomialRecord)>,
}

impl DimensionReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }
}

/// Dimension, birationality and isomorphism-window checks for one
/// `(V_{m,n}, d+, d-)`. Requires `n >= m`.
pub fn verify_dimension_claims(
    engine: &CountEngine,
    m: usize,
    n: usize,
    d_plus: usize,
    d_minus: usize,
    plan: &PrimePlan,
) -> Result<DimensionReport, DeterminantalError> {
    if n < m {
        return Err(DeterminantalError::NegativeRank { m, n });
    }
    let e = n as i64 - m as i64;
    let dim_x = (m * n) as i64;
    let (dp, dm) = (d_plus as i64, d_minus as i64);

    let inc = engine.fit_locus(m, n, Locus::Incidence { d_plus, d_minus }, plan)?;
    let gr = engine.fit_locus(m, n, Locus::Grassmannian { d: d_plus }, plan)?;
    let gr_dual = engine.fit_locus(m, n, Locus::DualGrassmannian { d: d_minus }, plan)?;
    let degen = engine.fit_locus(m, n, Locus::Degeneracy { k: dp }, plan)?;

    let mut items = Vec::new();
    let v_inc = vdim_inc(dim_x, e, dp, dm);
    items.push(ClaimItem::new(
        format!("Inc degree = vdim = {v_inc}"),
        ANCHOR_INC_DIM,
        dimension_matches(&inc.polynomial, v_inc),
        format!("Inc count {} (degree {})", inc.polynomial.display(), degree_string(&inc.polynomial)),
    ));
    if e == 1 {
        let d0 = d0_formula(dim_x, dp, dm);
        items.push(ClaimItem::new(
            format!("Inc degree = d0 = {d0}"),
            ANCHOR_D0,
            d0 == v_inc && dimension_matches(&inc.polynomial, d0),
            format!("d0 = {d0}, vdim = {v_inc}"),
        ));
    }
    let v_gr = vdim_grassmannian(dim_x, e, dp);
    items.push(ClaimItem::new(
        format!("Gr(d+) degree = {v_gr}"),
        ANCHOR_GR_DIM,
        dimension_matches(&gr.polynomial, v_gr),
        format!("Gr count {} (degree {})", gr.polynomial.display(), degree_string(&gr.polynomial)),
    ));
    let v_gr_dual = vdim_grassmannian(dim_x, -e, dm);
    items.push(ClaimItem::new(
        format!("Gr_dual(d-) degree = {v_gr_dual}"),
        ANCHOR_GR_DIM,
        dimension_matches(&gr_dual.polynomial, v_gr_dual),
        format!("Gr_dual count {} (degree {})", gr_dual.polynomial.display(), degree_string(&gr_dual.polynomial)),
    ));

    let primes: Vec<u64> = inc.polynomial.support().iter().chain(inc.polynomial.held_out()).map(|(q, _)| *q).collect();
    let counts_at = |q: u64, locus: Locus| engine.locus_count(&FamilySpec::new(m, n, q)?, locus).map(|(c, _)| c);

    if d_minus == 0 || d_plus == 0 {
        let other = if d_minus == 0 { Locus::Grassmannian { d: d_plus } } else { Locus::DualGrassmannian { d: d_minus } };
        let mut mismatches = Vec::new();
        for &q in &primes {
            let a = counts_at(q, inc.locus)?;
            let b = counts_at(q, other)?;
            if a != b {
                mismatches.push(format!("q={q}: {a} vs {b}"));
            }
        }
        items.push(ClaimItem::new(
            format!("Inc counts equal {} counts", other.label()),
            ANCHOR_INC_EDGE,
            mismatches.is_empty(),
            if mismatches.is_empty() { format!("equal at q in {primes:?}") } else { mismatches.join("; ") },
        ));
    }

    if dp == dm + e {
        let leads = [
            ("Inc", inc.polynomial.leading_term()),
            ("Gr(d+)", gr.polynomial.leading_term()),
            ("Gr_dual(d-)", gr_dual.polynomial.leading_term()),
            ("D(d+)", degen.polynomial.leading_term()),
        ];
        let agree = leads.iter().all(|(_, l)| *l == leads[0].1);
        let detail = leads
            .iter()
            .map(|(name, l)| match l {
                Some((deg, c)) => format!("{name}: {c}q^{deg}"),
                None => format!("{name}: empty"),
            })
            .collect::<Vec<_>>()
            .join(", ");
        items.push(ClaimItem::new("leading terms agree", ANCHOR_BIRATIONAL, agree, detail));

        if dp * dm <= dim_x && dim_x < (dp + 1) * (dm + 1) {
            let mut mismatches = Vec::new();
            for &q in &primes {
                let four = [
                    counts_at(q, inc.locus)?,
                    counts_at(q, gr.locus)?,
                    counts_at(q, gr_dual.locus)?,
                    counts_at(q, degen.locus)?,
                ];
                if four.iter().any(|c| *c != four[0]) {
                    mismatches.push(format!("q={q}: {four:?}"));
                }
            }
            items.push(ClaimItem::new(
                "window: counts exactly equal",
                ANCHOR_WINDOW,
                mismatches.is_empty(),
                if mismatches.is_empty() { format!("equal at q in {primes:?}") } else { mismatches.join("; ") },
            ));
        }
    }

    let polynomials = [&inc, &gr, &gr_dual, &degen].iter().map(|f| (f.locus.label(), f.record())).collect();
    Ok(DimensionReport { m, n, d_plus, d_minus, items, polynomials })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_skips_held_out() {
        let plan = PrimePlan::default();
        assert_eq!(plan.support(3), vec![2, 3, 5]);
        assert_eq!(plan.support(6), vec![2, 3, 5, 7, 13, 17]);
    }

    #[test]
    fn two_by_two_top_window() {
        let engine = CountEngine::default();
        let report = verify_dimension_claims(&engine, 2, 2, 2, 2, &PrimePlan::default()).unwrap();
        assert!(report.passed(), "{:#?}", report.items);
        assert!(report.items.iter().any(|i| i.anchor == ANCHOR_WINDOW));
    }

    #[test]
    fn column_family_edge_and_d0() {
        let engine = CountEngine::default();
        let report = verify_dimension_claims(&engine, 1, 2, 1, 0, &PrimePlan::default()).unwrap();
        assert!(report.passed(), "{:#?}", report.items);
        assert!(report.items.iter().any(|i| i.anchor == ANCHOR_D0));
        assert!(report.items.iter().any(|i| i.anchor == ANCHOR_INC_EDGE));
    }

    #[test]
    fn rejects_negative_rank() {
        let engine = CountEngine::default();
        assert!(verify_dimension_claims(&engine, 3, 2, 1, 1, &PrimePlan::default()).is_err());
    }

    #[test]
    fn codimension_of_rank_one_locus() {
        let engine = CountEngine::default();
        let items = codimension_law(&engine, 2, 2, 1, &PrimePlan::default()).unwrap();
        assert!(items.iter().all(|i| i.passed), "{items:#?}");
    }
}
