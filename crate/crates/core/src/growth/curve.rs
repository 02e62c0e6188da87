use serde::Serialize;

use crate::dehn::DehnContext;
use crate::error::{Error, Result};
use crate::metrics::{n_norm_bfs_oracle, n_norm_upper, ConjugatorAlphabet, NormMode, QMetric};
use crate::numeric::fmt12;
use crate::rips::RipsOutput;
use crate::words::CyclicWord;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthSample {
    pub n: i64,
    pub q_length: Option<usize>,
    pub ln_upper: Option<f64>,
    pub oracle_exact: Option<u64>,
    /// Why the sample is a gap, when it is one.
    pub gap: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CurveMeta {
    pub phi: String,
    pub class: String,
    pub mode: String,
    /// Factors with a nontrivial component (product curves only).
    pub support: Vec<usize>,
    /// All components trivial: norms are identically zero and not logged.
    pub degenerate: bool,
}

/// Samples of `n -> ln ||Φ^n(c)||` with strictly increasing `n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthCurve {
    pub samples: Vec<GrowthSample>,
    pub meta: CurveMeta,
}

impl GrowthCurve {
    pub fn new(samples: Vec<GrowthSample>, meta: CurveMeta) -> Result<Self> {
        if samples.windows(2).any(|w| w[0].n >= w[1].n) {
            return Err(Error::Parameter("sample points must be strictly increasing in n".into()));
        }
        Ok(GrowthCurve { samples, meta })
    }

    pub fn ln_upper_at(&self, n: i64) -> Option<f64> {
        let i = self.samples.binary_search_by_key(&n, |s| s.n).ok()?;
        self.samples[i].ln_upper
    }

    /// `n` values with a defined `ln_upper`.
    pub fn defined_domain(&self) -> Vec<i64> {
        self.samples.iter().filter(|s| s.ln_upper.is_some()).map(|s| s.n).collect()
    }

    pub fn points(&self) -> Vec<(f64, f64)> {
        self.samples.iter().filter_map(|s| s.ln_upper.map(|v| (s.n as f64, v))).collect()
    }

    /// `n,q_length,ln_upper,oracle_exact`; gaps are empty cells.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,q_length,ln_upper,oracle_exact\n");
        for s in &self.samples {
            let cell = |o: Option<String>| o.unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{}\n",
                s.n,
                cell(s.q_length.map(|v| v.to_string())),
                cell(s.ln_upper.map(fmt12)),
                cell(s.oracle_exact.map(|v| v.to_string())),
            ));
        }
        out
    }
}

/// Exact-norm oracle settings for [`growth_curve`].
#[derive(Clone, Copy)]
pub struct NOracleConfig<'a> {
    pub ctx: &'a DehnContext,
    pub radius: usize,
    pub conj_radius: usize,
}

/// Samples `T_c(n)` for `Φ = χ(q)`. Per-sample radius and budget failures
/// become gaps; other errors abort.
pub fn growth_curve(
    rips: &RipsOutput,
    q_word: &crate::Word,
    c: &CyclicWord,
    ns: &[i64],
    oracle: &dyn QMetric,
    mode: NormMode,
    n_oracle: Option<NOracleConfig<'_>>,
) -> Result<GrowthCurve> {
    if c.is_empty() {
        return Err(Error::TrivialClass);
    }
    let g = rips.g_presentation();
    let meta = CurveMeta {
        phi: g.format_word(q_word),
        class: g.format_word(&c.as_word()),
        mode: match mode {
            NormMode::Counts => "counts".into(),
            NormMode::Materialize => "materialize".into(),
        },
        ..Default::default()
    };
    let mut samples = Vec::with_capacity(ns.len());
    for &n in ns {
        let mut s = GrowthSample { n, q_length: None, ln_upper: None, oracle_exact: None, gap: None };
        match n_norm_upper(rips, q_word, c, n, oracle, mode) {
            Ok(est) => {
                s.q_length = Some(est.q_length);
                s.ln_upper = Some(est.ln_upper);
            }
            Err(e @ (Error::RadiusExceeded { .. } | Error::Resource(_))) => s.gap = Some(e.to_string()),
            Err(e) => return Err(e),
        }
        if let (Some(cfg), Some(_)) = (n_oracle, s.ln_upper) {
            let geo = oracle.geodesic(&q_word.pow(n))?;
            if let Ok(img) = rips.outer(geo)?.apply(&c.as_word()) {
                if let Some(v) =
                    n_norm_bfs_oracle(cfg.ctx, rips, &img, cfg.radius, cfg.conj_radius, ConjugatorAlphabet::N)?
                {
                    s.oracle_exact = Some(v as u64);
                }
            }
        }
        samples.push(s);
    }
    GrowthCurve::new(samples, meta)
}
