use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;

use crate::curve::Curve;
use crate::g3::G3Vector;
use crate::pencil::{self, Pencil, PencilError};

/// Surface samples on a uniform `ns × nv` grid, stored s-major: the vertex
/// at `(s[i], v[j])` sits at index `i * nv + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub ns: usize,
    pub nv: usize,
    pub s: Vec<f64>,
    pub v: Vec<f64>,
    pub vertices: Vec<G3Vector>,
    /// Unit isotropic normals; `None` where `φ_s ∧ φ_v` vanishes.
    pub normals: Vec<Option<G3Vector>>,
}

impl Mesh {
    pub fn vertex(&self, i: usize, j: usize) -> G3Vector {
        self.vertices[i * self.nv + j]
    }

    pub fn degenerate_normals(&self) -> usize {
        self.normals.iter().filter(|n| n.is_none()).count()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum MeshError {
    #[error(transparent)]
    Pencil(#[from] PencilError),
    #[error("grid needs at least 2x2 points, got {0}x{1}")]
    GridTooSmall(usize, usize),
    #[error("worker pool: {0}")]
    Pool(String),
}

fn uniform(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|j| {
            if j == n - 1 {
                b
            } else {
                a + (b - a) * j as f64 / (n - 1) as f64
            }
        })
        .collect()
}

type Row = Vec<(G3Vector, Option<G3Vector>)>;

fn row(pencil: &Pencil, s: f64, vs: &[f64]) -> Result<Row, PencilError> {
    let fj = pencil.curve.frame_jet(s)?;
    let base = pencil.curve.point(s)?;
    let mut warnings = Vec::new();
    vs.iter()
        .map(|&v| {
            let point = pencil::point_from_frame(base, &fj.frame, &pencil.scale, v)?;
            let normal = pencil::evaluate(&fj, &pencil.scale, v, &mut warnings)?.normal;
            Ok((point, normal.normalize_isotropic().ok()))
        })
        .collect()
}

/// Samples the pencil on its domain. Rows are computed on a pool of
/// `workers` threads (`None` = rayon default) and assembled in order, so
/// the result does not depend on the thread count. Any failing sample
/// fails the whole grid.
pub fn sample_grid(
    pencil: &Pencil,
    ns: usize,
    nv: usize,
    workers: Option<usize>,
) -> Result<Mesh, MeshError> {
    if ns < 2 || nv < 2 {
        return Err(MeshError::GridTooSmall(ns, nv));
    }
    let d = &pencil.domain;
    d.validate()?;
    let (s, excised) = pencil.curve.sample_parameters(d.s_min, d.s_max, ns).map_err(PencilError::from)?;
    if excised {
        log::warn!(
            "guard band {:?} excised from s-range; grid re-spans the rest",
            pencil.curve.guard_band()
        );
    }
    let v = uniform(d.v_min, d.v_max, nv);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| MeshError::Pool(e.to_string()))?;
    let rows = pool.install(|| {
        s.par_iter()
            .map(|&si| row(pencil, si, &v))
            .collect::<Result<Vec<Row>, PencilError>>()
    })?;
    let (vertices, normals) = rows.into_iter().flatten().unzip();
    Ok(Mesh { ns, nv, s, v, vertices, normals })
}

/// The curve alone as a one-column mesh at `v = 0`.
pub fn curve_mesh(curve: &Curve, s_min: f64, s_max: f64, ns: usize) -> Result<Mesh, MeshError> {
    let (s, _) = curve.sample_parameters(s_min, s_max, ns).map_err(PencilError::from)?;
    let vertices = s
        .iter()
        .map(|&x| curve.point(x))
        .collect::<Result<Vec<_>, _>>()
        .map_err(PencilError::from)?;
    Ok(Mesh {
        ns: s.len(),
        nv: 1,
        normals: vec![None; s.len()],
        s,
        v: vec![0.0],
        vertices,
    })
}

/// 17 significant digits, with `-0` written as `0`.
pub fn fmt_num(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

/// Wavefront OBJ: `v` records, `vn` records when every normal exists, and
/// two triangles per grid cell, the one at the cell's lower-left corner first.
pub fn write_obj(mesh: &Mesh, w: &mut impl Write) -> io::Result<()> {
    for p in &mesh.vertices {
        writeln!(w, "v {} {} {}", fmt_num(p.x), fmt_num(p.y), fmt_num(p.z))?;
    }
    let with_normals = mesh.nv > 1 && mesh.degenerate_normals() == 0;
    if with_normals {
        for n in mesh.normals.iter().flatten() {
            writeln!(w, "vn {} {} {}", fmt_num(n.x), fmt_num(n.y), fmt_num(n.z))?;
        }
    } else if mesh.nv > 1 {
        log::warn!("{} degenerate normals; omitting vn records", mesh.degenerate_normals());
    }
    let idx = |i: usize, j: usize| i * mesh.nv + j + 1;
    let face = |w: &mut dyn Write, a: usize, b: usize, c: usize| {
        if with_normals {
            writeln!(w, "f {a}//{a} {b}//{b} {c}//{c}")
        } else {
            writeln!(w, "f {a} {b} {c}")
        }
    };
    for i in 0..mesh.ns.saturating_sub(1) {
        for j in 0..mesh.nv.saturating_sub(1) {
            face(w, idx(i, j), idx(i + 1, j), idx(i, j + 1))?;
            face(w, idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1))?;
        }
    }
    Ok(())
}

pub fn write_csv(mesh: &Mesh, w: &mut impl Write) -> io::Result<()> {
    writeln!(w, "s,v,x,y,z")?;
    for i in 0..mesh.ns {
        for j in 0..mesh.nv {
            let p = mesh.vertex(i, j);
            let row = [mesh.s[i], mesh.v[j], p.x, p.y, p.z].map(fmt_num);
            writeln!(w, "{}", row.join(","))?;
        }
    }
    Ok(())
}

fn to_file(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> io::Result<()>) -> io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    f(&mut w)?;
    w.flush()
}

pub fn export_obj(mesh: &Mesh, path: impl AsRef<Path>) -> io::Result<()> {
    to_file(path.as_ref(), |w| write_obj(mesh, w))
}

pub fn export_csv(mesh: &Mesh, path: impl AsRef<Path>) -> io::Result<()> {
    to_file(path.as_ref(), |w| write_csv(mesh, w))
}
