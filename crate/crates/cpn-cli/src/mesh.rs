//! Surface mesh export: samples a rung's immersion on an equal-area grid
//! of the sphere, projects the su(N) embedding coordinates onto a chosen
//! triple and writes an ASCII polygon (PLY) file with per-vertex
//! curvature attributes.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;

use cpn_core::geometry::{curvature_at, metric_at};
use cpn_core::ladder::build_ladder;
use cpn_core::seed::SeedVector;
use cpn_core::surface::{embed_coordinates, x_gy, EmbeddingBasis};

use crate::error::CliError;
use crate::Result;

#[derive(Clone, Debug)]
pub struct MeshData {
    pub grid: usize,
    /// Per vertex: x, y, z, K, ‖ℋ‖², g₁₂.
    pub vertices: Vec<[f64; 6]>,
    /// Quad faces, counter-clockwise in grid order.
    pub faces: Vec<[usize; 4]>,
}

/// Sample grid over the sphere: equal-area spacing in the polar
/// direction (uniform in cos φ), uniform azimuth, mapped to the
/// stereographic chart `ξ = tan(φ/2)·e^{iθ}`. The grid is open: the
/// azimuth seam is not stitched.
fn grid_points(grid: usize) -> Vec<Complex64> {
    let mut points = Vec::with_capacity(grid * grid);
    for i in 0..grid {
        let z = 1.0 - 2.0 * (i as f64 + 0.5) / grid as f64;
        let phi = z.acos();
        let r = (phi / 2.0).tan();
        for j in 0..grid {
            let theta = std::f64::consts::TAU * j as f64 / (grid - 1) as f64;
            points.push(Complex64::new(r * theta.cos(), r * theta.sin()));
        }
    }
    points
}

/// Build the mesh for rung `k` with the given projection triple.
pub fn build_mesh(
    seed: &SeedVector,
    k: usize,
    projection: [usize; 3],
    grid: usize,
) -> Result<MeshData> {
    let n = seed.dim();
    if k >= n {
        return Err(CliError::Config(format!("rung {k} out of range for N = {n}")));
    }
    if grid < 8 {
        return Err(CliError::Config(format!("grid {grid} too small, need >= 8")));
    }
    let dim = n * n - 1;
    for &p in &projection {
        if p >= dim {
            return Err(CliError::Config(format!(
                "projection index {p} out of range for N²−1 = {dim}"
            )));
        }
    }
    let basis = EmbeddingBasis::new(n)?;
    let mut vertices = Vec::with_capacity(grid * grid);
    for point in grid_points(grid) {
        let ladder = build_ladder(seed, point, 3)?;
        let x = x_gy(&ladder, k)?;
        let coords = embed_coordinates(&x, &basis)?;
        let m = metric_at(&ladder, k)?;
        let c = curvature_at(&ladder, k)?;
        vertices.push([
            coords[projection[0]],
            coords[projection[1]],
            coords[projection[2]],
            c.gauss_k,
            c.h_norm_sq,
            m.g12,
        ]);
    }
    let mut faces = Vec::with_capacity((grid - 1) * (grid - 1));
    for i in 0..grid - 1 {
        for j in 0..grid - 1 {
            let a = i * grid + j;
            faces.push([a, a + 1, a + grid + 1, a + grid]);
        }
    }
    Ok(MeshData {
        grid,
        vertices,
        faces,
    })
}

/// Write the mesh as ASCII PLY.
pub fn write_ply(mesh: &MeshData, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "ply")?;
    writeln!(out, "format ascii 1.0")?;
    writeln!(out, "element vertex {}", mesh.vertices.len())?;
    for name in ["x", "y", "z", "K", "Hsq", "g12"] {
        writeln!(out, "property double {name}")?;
    }
    writeln!(out, "element face {}", mesh.faces.len())?;
    writeln!(out, "property list uchar int vertex_indices")?;
    writeln!(out, "end_header")?;
    for v in &mesh.vertices {
        writeln!(
            out,
            "{:.16e} {:.16e} {:.16e} {:.16e} {:.16e} {:.16e}",
            v[0], v[1], v[2], v[3], v[4], v[5]
        )?;
    }
    for f in &mesh.faces {
        writeln!(out, "4 {} {} {} {}", f[0], f[1], f[2], f[3])?;
    }
    Ok(())
}

/// Build and write in one step.
pub fn export_mesh(
    seed: &SeedVector,
    k: usize,
    projection: [usize; 3],
    grid: usize,
    out_path: &Path,
) -> Result<MeshData> {
    let mesh = build_mesh(seed, k, projection, grid)?;
    let mut file = std::fs::File::create(out_path)?;
    write_ply(&mesh, &mut file)?;
    Ok(mesh)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_grid_counts() {
        let seed = SeedVector::veronese(3).unwrap();
        let mesh = build_mesh(&seed, 0, [0, 1, 2], 8).unwrap();
        assert_eq!(mesh.vertices.len(), 64);
        assert_eq!(mesh.faces.len(), 49);
    }

    #[test]
    fn curvature_attribute_is_constant_for_veronese() {
        let seed = SeedVector::veronese(3).unwrap();
        let mesh = build_mesh(&seed, 0, [0, 1, 2], 8).unwrap();
        for v in &mesh.vertices {
            assert!((v[3] - 2.0).abs() < 1e-8, "K = {}", v[3]);
            assert!((v[4] - 16.0).abs() < 1e-7, "Hsq = {}", v[4]);
        }
    }

    #[test]
    fn vertex_norm_respects_the_trace_bound() {
        // ‖coords‖² = −½ tr(X²) and any 3-coordinate projection is shorter
        let seed = SeedVector::veronese(3).unwrap();
        let mesh = build_mesh(&seed, 0, [0, 1, 2], 8).unwrap();
        let bound = -0.5 * (1.0 / 3.0 - 1.0); // (2k+1)²/N − (4k+1), k=0, N=3
        for v in &mesh.vertices {
            let norm_sq = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
            assert!(norm_sq <= bound + 1e-12);
        }
    }

    #[test]
    fn bad_projection_is_config_error() {
        let seed = SeedVector::veronese(2).unwrap();
        assert!(matches!(
            build_mesh(&seed, 0, [0, 1, 5], 8),
            Err(CliError::Config(_))
        ));
        assert!(matches!(
            build_mesh(&seed, 0, [0, 1, 2], 4),
            Err(CliError::Config(_))
        ));
    }

    #[test]
    fn ply_output_shape() {
        let seed = SeedVector::veronese(2).unwrap();
        let mesh = build_mesh(&seed, 0, [0, 1, 2], 8).unwrap();
        let mut buf = Vec::new();
        write_ply(&mesh, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("ply\nformat ascii 1.0\nelement vertex 64\n"));
        assert!(text.contains("element face 49\n"));
        let body_lines = text.lines().count();
        // 12 header lines + 64 vertices + 49 faces
        assert_eq!(body_lines, 12 + 64 + 49);
    }
}
