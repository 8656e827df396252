//! Geometry runs: per-rung metric and curvature samples on a fixed point
//! panel plus the global invariants `W`, `Q`, `Δ` by quadrature, emitted
//! as JSON or as a CSV summary table.

use num_complex::Complex64;

use cpn_core::geometry::{curvature_at, global_invariants_all, metric_at, GlobalInvariants};
use cpn_core::ladder::build_ladder;
use cpn_core::seed::SeedVector;

use crate::error::CliError;
use crate::jsonfmt::{fmt_complex, fmt_f64, fmt_str};
use crate::panel::sample_points;
use crate::Result;

#[derive(Clone, Debug)]
pub struct GeometryConfig {
    /// Rungs to report; `None` means all of `0..N`.
    pub rungs: Option<Vec<usize>>,
    pub quad_tol: f64,
    /// Jet order for the pointwise samples (quadrature always uses 3).
    pub order: usize,
    pub sample_points: Vec<Complex64>,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        GeometryConfig {
            rungs: None,
            quad_tol: 1e-6,
            order: 3,
            sample_points: sample_points(9),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GeoSample {
    pub point: Complex64,
    pub g12: f64,
    pub current_abs: f64,
    pub gauss_k: f64,
    pub h_norm_sq: f64,
    pub christoffel_111: Complex64,
}

#[derive(Clone, Debug)]
pub struct RungGeometry {
    pub rung: usize,
    pub samples: Vec<GeoSample>,
    pub k_min: f64,
    pub k_max: f64,
    pub h_min: f64,
    pub h_max: f64,
    pub invariants: GlobalInvariants,
}

#[derive(Clone, Debug)]
pub struct GeometryReport {
    pub seed_label: String,
    pub n: usize,
    pub quad_tol: f64,
    pub rows: Vec<RungGeometry>,
}

impl GeometryReport {
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\n");
        out.push_str(&format!("  \"seed\": {},\n", fmt_str(&self.seed_label)));
        out.push_str(&format!("  \"n\": {},\n", self.n));
        out.push_str(&format!("  \"quad_tol\": {},\n", fmt_f64(self.quad_tol)));
        out.push_str("  \"rungs\": [\n");
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str("    {\n");
            out.push_str(&format!("      \"k\": {},\n", row.rung));
            out.push_str(&format!("      \"K_min\": {},\n", fmt_f64(row.k_min)));
            out.push_str(&format!("      \"K_max\": {},\n", fmt_f64(row.k_max)));
            out.push_str(&format!("      \"Hnorm_min\": {},\n", fmt_f64(row.h_min)));
            out.push_str(&format!("      \"Hnorm_max\": {},\n", fmt_f64(row.h_max)));
            out.push_str(&format!(
                "      \"willmore\": {},\n",
                fmt_f64(row.invariants.willmore)
            ));
            out.push_str(&format!(
                "      \"charge\": {},\n",
                fmt_f64(row.invariants.charge)
            ));
            out.push_str(&format!(
                "      \"euler\": {},\n",
                fmt_f64(row.invariants.euler)
            ));
            out.push_str(&format!(
                "      \"quad_error\": {},\n",
                fmt_f64(quad_error(&row.invariants))
            ));
            out.push_str("      \"samples\": [\n");
            for (j, s) in row.samples.iter().enumerate() {
                out.push_str(&format!(
                    "        {{\"point\": {}, \"g12\": {}, \"current_abs\": {}, \"K\": {}, \"Hnorm_sq\": {}, \"christoffel_111\": {}}}{}\n",
                    fmt_complex(s.point),
                    fmt_f64(s.g12),
                    fmt_f64(s.current_abs),
                    fmt_f64(s.gauss_k),
                    fmt_f64(s.h_norm_sq),
                    fmt_complex(s.christoffel_111),
                    if j + 1 < row.samples.len() { "," } else { "" }
                ));
            }
            out.push_str("      ]\n");
            out.push_str(&format!(
                "    }}{}\n",
                if i + 1 < self.rows.len() { "," } else { "" }
            ));
        }
        out.push_str("  ]\n}\n");
        out
    }

    /// CSV summary, one row per rung.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("k,K_min,K_max,Hnorm_min,Hnorm_max,W,Q,Delta,quad_err\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                row.rung,
                fmt_f64(row.k_min),
                fmt_f64(row.k_max),
                fmt_f64(row.h_min),
                fmt_f64(row.h_max),
                fmt_f64(row.invariants.willmore),
                fmt_f64(row.invariants.charge),
                fmt_f64(row.invariants.euler),
                fmt_f64(quad_error(&row.invariants)),
            ));
        }
        out
    }
}

fn quad_error(inv: &GlobalInvariants) -> f64 {
    inv.willmore_error
        .max(inv.charge_error)
        .max(inv.euler_error)
}

/// Run the geometry pipeline for a seed.
pub fn run_geometry(seed: &SeedVector, cfg: &GeometryConfig) -> Result<GeometryReport> {
    let n = seed.dim();
    let rungs: Vec<usize> = match &cfg.rungs {
        Some(r) => {
            for &k in r {
                if k >= n {
                    return Err(CliError::Config(format!(
                        "rung {k} out of range for N = {n}"
                    )));
                }
            }
            r.clone()
        }
        None => (0..n).collect(),
    };
    let order = cfg.order.max(3);

    let ladder_at = |p: Complex64| build_ladder(seed, p, 3);
    let invariants = global_invariants_all(&ladder_at, &rungs, cfg.quad_tol)?;

    let mut rows = Vec::with_capacity(rungs.len());
    for (pos, &k) in rungs.iter().enumerate() {
        let mut samples = Vec::with_capacity(cfg.sample_points.len());
        let mut k_min = f64::INFINITY;
        let mut k_max = f64::NEG_INFINITY;
        let mut h_min = f64::INFINITY;
        let mut h_max = f64::NEG_INFINITY;
        for &point in &cfg.sample_points {
            let ladder = build_ladder(seed, point, order)?;
            let m = metric_at(&ladder, k)?;
            let c = curvature_at(&ladder, k)?;
            k_min = k_min.min(c.gauss_k);
            k_max = k_max.max(c.gauss_k);
            h_min = h_min.min(c.h_norm_sq);
            h_max = h_max.max(c.h_norm_sq);
            samples.push(GeoSample {
                point,
                g12: m.g12,
                current_abs: m.current.norm().max(m.current_bar.norm()),
                gauss_k: c.gauss_k,
                h_norm_sq: c.h_norm_sq,
                christoffel_111: c.christoffel_111,
            });
        }
        rows.push(RungGeometry {
            rung: k,
            samples,
            k_min,
            k_max,
            h_min,
            h_max,
            invariants: invariants[pos].clone(),
        });
    }

    Ok(GeometryReport {
        seed_label: seed.label().to_string(),
        n,
        quad_tol: cfg.quad_tol,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cp2_rows_match_the_constants() {
        let seed = SeedVector::veronese(3).unwrap();
        let report = run_geometry(&seed, &GeometryConfig::default()).unwrap();
        assert_eq!(report.rows.len(), 3);
        let row0 = &report.rows[0];
        assert!((row0.k_min - 2.0).abs() < 1e-8 && (row0.k_max - 2.0).abs() < 1e-8);
        assert_eq!(row0.invariants.charge_int(), 2);
        assert_eq!(row0.invariants.euler_int(), 2);
        assert!((row0.invariants.willmore - 4.0 * std::f64::consts::PI).abs() < 1e-5);
        let row1 = &report.rows[1];
        assert!((row1.k_min - 1.0).abs() < 1e-8);
        assert_eq!(row1.invariants.charge_int(), 0);
        assert_eq!(row1.invariants.euler_int(), 2);
        let row2 = &report.rows[2];
        assert_eq!(row2.invariants.charge_int(), -2);

        let csv = report.to_csv();
        assert!(csv.starts_with("k,K_min,K_max,Hnorm_min,Hnorm_max,W,Q,Delta,quad_err\n"));
        assert_eq!(csv.lines().count(), 4);
    }

    #[test]
    fn cp1_winding_and_euler() {
        let seed = SeedVector::veronese(2).unwrap();
        let report = run_geometry(&seed, &GeometryConfig::default()).unwrap();
        assert_eq!(report.rows[0].invariants.charge_int(), 1);
        assert_eq!(report.rows[0].invariants.euler_int(), 2);
    }

    #[test]
    fn rung_selection_is_validated() {
        let seed = SeedVector::veronese(2).unwrap();
        let cfg = GeometryConfig {
            rungs: Some(vec![5]),
            ..GeometryConfig::default()
        };
        assert!(matches!(
            run_geometry(&seed, &cfg),
            Err(CliError::Config(_))
        ));
    }
}
