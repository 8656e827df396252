//! The `ladder` subcommand: evaluate the projector ladder at a panel of
//! points and emit the matrices with their residual diagnostics.

use num_complex::Complex64;

use cpn_core::ladder::{build_ladder, el_residual};
use cpn_core::seed::SeedVector;

use crate::jsonfmt::{fmt_complex, fmt_f64, fmt_str};
use crate::Result;

pub struct LadderConfig {
    pub points: Vec<Complex64>,
    pub order: usize,
}

/// JSON report of the ladder at each requested point: per rung the
/// constant-term matrix, the projector-invariant residual ratio and the
/// conservation-law residual.
pub fn run_ladder(seed: &SeedVector, cfg: &LadderConfig) -> Result<String> {
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"seed\": {},\n", fmt_str(seed.label())));
    out.push_str(&format!("  \"n\": {},\n", seed.dim()));
    out.push_str(&format!("  \"jet_order\": {},\n", cfg.order));
    out.push_str("  \"points\": [\n");
    for (pi, &point) in cfg.points.iter().enumerate() {
        let ladder = build_ladder(seed, point, cfg.order)?;
        out.push_str("    {\n");
        out.push_str(&format!("      \"point\": {},\n", fmt_complex(point)));
        out.push_str("      \"rungs\": [\n");
        for (k, p) in ladder.iter().enumerate() {
            let m = p.matrix().constant_term();
            let n = p.dim();
            let mut rows = Vec::with_capacity(n);
            for i in 0..n {
                let mut row = Vec::with_capacity(n);
                for j in 0..n {
                    row.push(fmt_complex(m[(i, j)]));
                }
                rows.push(format!("[{}]", row.join(", ")));
            }
            let el = el_residual(p).map(|r| r.max_abs()).unwrap_or(f64::NAN);
            out.push_str(&format!(
                "        {{\"k\": {}, \"invariant_ratio\": {}, \"el_residual\": {}, \"matrix\": [{}]}}{}\n",
                k,
                fmt_f64(p.invariant_residual()),
                fmt_f64(el),
                rows.join(", "),
                if k + 1 < ladder.len() { "," } else { "" }
            ));
        }
        out.push_str("      ]\n");
        out.push_str(&format!(
            "    }}{}\n",
            if pi + 1 < cfg.points.len() { "," } else { "" }
        ));
    }
    out.push_str("  ]\n}\n");
    Ok(out)
}
