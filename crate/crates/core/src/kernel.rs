//! Fidelity kernels `k(x, y) = |⟨Φ(y)|Φ(x)⟩|²`.
//!
//! Exact mode compares state vectors. The sampled modes run the inversion
//! circuit `U†(y) U(x)` on `|0…0⟩` and report the frequency of the all-zeros
//! outcome, either with ideal shot sampling or through the trajectory noise
//! model. Sampled entries are clamped into `[0, 1]` and Gram diagonals are
//! pinned to 1.
//!
//! Gram and cross matrices evaluate entries in parallel on the current rayon
//! pool. Each sampled entry draws from its own seed, derived from the config
//! seed and the entry position, so results do not depend on scheduling.

use std::io::Write;
use std::path::Path;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::FeatureMap;
use crate::sim::{inner_product, simulate, simulate_noisy, NoiseModel, QuantumState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelMode {
    #[default]
    Exact,
    Shots,
    Noisy,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct KernelConfig {
    #[serde(default)]
    pub mode: KernelMode,
    #[serde(default)]
    pub shots: Option<u64>,
    #[serde(default)]
    pub noise: NoiseModel,
    #[serde(default)]
    pub seed: u64,
}

impl KernelConfig {
    pub fn exact() -> Self {
        Self::default()
    }

    pub fn shots(shots: u64, seed: u64) -> Self {
        Self {
            mode: KernelMode::Shots,
            shots: Some(shots),
            noise: NoiseModel::noiseless(),
            seed,
        }
    }

    pub fn noisy(noise: NoiseModel, shots: u64, seed: u64) -> Self {
        Self {
            mode: KernelMode::Noisy,
            shots: Some(shots),
            noise,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.mode {
            KernelMode::Exact => Ok(()),
            KernelMode::Shots | KernelMode::Noisy => {
                match self.shots {
                    Some(s) if s >= 1 => {}
                    _ => {
                        return Err(Error::Config(format!(
                            "{:?} kernel mode needs shots >= 1",
                            self.mode
                        )))
                    }
                }
                self.noise.validate()
            }
        }
    }
}

/// Square Gram matrix with sampling diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelMatrix {
    entries: DMatrix<f64>,
    clamped: usize,
}

impl KernelMatrix {
    pub fn from_matrix(entries: DMatrix<f64>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::DimensionMismatch {
                expected: entries.nrows(),
                got: entries.ncols(),
            });
        }
        Ok(Self {
            entries,
            clamped: 0,
        })
    }

    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    /// Number of sampled entries pulled back into `[0, 1]`.
    pub fn clamped_entries(&self) -> usize {
        self.clamped
    }

    pub fn max_asymmetry(&self) -> f64 {
        let n = self.size();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..i {
                worst = worst.max((self.entries[(i, j)] - self.entries[(j, i)]).abs());
            }
        }
        worst
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.entries
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

/// One kernel value, seeded directly by `cfg.seed`.
pub fn kernel_entry<M: FeatureMap + ?Sized>(x: &[f64], y: &[f64], map: &M, cfg: &KernelConfig) -> Result<f64> {
    cfg.validate()?;
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    match cfg.mode {
        KernelMode::Exact => {
            let a = simulate(&map.build(x)?)?;
            let b = simulate(&map.build(y)?)?;
            fidelity(&a, &b)
        }
        _ => sampled_entry(x, y, map, cfg, cfg.seed).map(|(v, _)| v),
    }
}

fn fidelity(a: &QuantumState, b: &QuantumState) -> Result<f64> {
    Ok(inner_product(b, a)?.norm_sqr().clamp(0.0, 1.0))
}

/// Returns the clamped estimate and whether clamping changed it.
fn sampled_entry<M: FeatureMap + ?Sized>(
    x: &[f64],
    y: &[f64],
    map: &M,
    cfg: &KernelConfig,
    seed: u64,
) -> Result<(f64, bool)> {
    let ux = map.build(x)?;
    let uy = map.build(y)?;
    let compound = ux.then(&uy.inverse())?;
    let shots = cfg.shots.unwrap_or(1);
    let counts = match cfg.mode {
        KernelMode::Noisy => simulate_noisy(&compound, &cfg.noise, shots, seed)?,
        _ => simulate(&compound)?.sample_counts(shots, seed)?,
    };
    let raw = counts.frequency(0);
    let v = raw.clamp(0.0, 1.0);
    Ok((v, v != raw))
}

/// splitmix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of entry `(i, j)`; `tag` separates Gram from cross matrices.
pub fn entry_seed(seed: u64, tag: u64, i: usize, j: usize) -> u64 {
    seed ^ mix(mix(tag) ^ ((i as u64) << 32 | j as u64))
}

fn check_uniform(rows: &[Vec<f64>], width: Option<usize>) -> Result<usize> {
    let w = width.or_else(|| rows.first().map(Vec::len)).unwrap_or(0);
    for r in rows {
        if r.len() != w {
            return Err(Error::DimensionMismatch {
                expected: w,
                got: r.len(),
            });
        }
    }
    Ok(w)
}

fn states<M: FeatureMap + ?Sized>(rows: &[Vec<f64>], map: &M) -> Result<Vec<QuantumState>> {
    rows.par_iter().map(|r| simulate(&map.build(r)?)).collect()
}

/// Gram matrix over `rows`, each unordered pair evaluated once.
pub fn kernel_matrix<M: FeatureMap + ?Sized>(rows: &[Vec<f64>], map: &M, cfg: &KernelConfig) -> Result<KernelMatrix> {
    cfg.validate()?;
    if rows.is_empty() {
        return Err(Error::InvalidArgument("kernel matrix of zero samples".into()));
    }
    check_uniform(rows, None)?;
    let m = rows.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();

    let values: Vec<(f64, bool)> = match cfg.mode {
        KernelMode::Exact => {
            let st = states(rows, map)?;
            pairs
                .par_iter()
                .map(|&(i, j)| fidelity(&st[i], &st[j]).map(|v| (v, false)))
                .collect::<Result<_>>()?
        }
        _ => pairs
            .par_iter()
            .map(|&(i, j)| sampled_entry(&rows[i], &rows[j], map, cfg, entry_seed(cfg.seed, 0, i, j)))
            .collect::<Result<_>>()?,
    };

    let mut entries = DMatrix::identity(m, m);
    let mut clamped = 0;
    for (&(i, j), &(v, c)) in pairs.iter().zip(&values) {
        entries[(i, j)] = v;
        entries[(j, i)] = v;
        clamped += usize::from(c);
    }
    Ok(KernelMatrix { entries, clamped })
}

/// `out[(t, r)] = k(test[t], train[r])`.
pub fn cross_kernel<M: FeatureMap + ?Sized>(
    train: &[Vec<f64>],
    test: &[Vec<f64>],
    map: &M,
    cfg: &KernelConfig,
) -> Result<DMatrix<f64>> {
    cfg.validate()?;
    let w = check_uniform(train, None)?;
    check_uniform(test, Some(w))?;
    let (mt, mr) = (test.len(), train.len());
    let cells: Vec<(usize, usize)> = (0..mt).flat_map(|t| (0..mr).map(move |r| (t, r))).collect();
    let values: Vec<f64> = match cfg.mode {
        KernelMode::Exact => {
            let a = states(test, map)?;
            let b = states(train, map)?;
            cells
                .par_iter()
                .map(|&(t, r)| fidelity(&a[t], &b[r]))
                .collect::<Result<_>>()?
        }
        _ => cells
            .par_iter()
            .map(|&(t, r)| sampled_entry(&test[t], &train[r], map, cfg, entry_seed(cfg.seed, 1, t, r)).map(|v| v.0))
            .collect::<Result<_>>()?,
    };
    Ok(DMatrix::from_row_slice(mt, mr, &values))
}

/// Row-major CSV: header `id,<col ids…>`, then `<row id>,<values…>`.
pub fn write_matrix_csv<W: Write>(out: W, matrix: &DMatrix<f64>, row_ids: &[String], col_ids: &[String]) -> Result<()> {
    if row_ids.len() != matrix.nrows() || col_ids.len() != matrix.ncols() {
        return Err(Error::InvalidArgument("id count does not match matrix shape".into()));
    }
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["id".to_string()];
    header.extend(col_ids.iter().cloned());
    w.write_record(&header)?;
    for (r, id) in row_ids.iter().enumerate() {
        let mut rec = vec![id.clone()];
        rec.extend((0..matrix.ncols()).map(|c| matrix[(r, c)].to_string()));
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| Error::io("csv output", e))?;
    Ok(())
}

/// Inverse of [`write_matrix_csv`]: `(matrix, row ids, column ids)`.
pub fn read_matrix_csv(path: &Path) -> Result<(DMatrix<f64>, Vec<String>, Vec<String>)> {
    let mut rdr = csv::Reader::from_path(path).map_err(|e| Error::Data(format!("{}: {e}", path.display())))?;
    let col_ids: Vec<String> = rdr.headers()?.iter().skip(1).map(str::to_string).collect();
    let mut row_ids = Vec::new();
    let mut values = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        if rec.len() != col_ids.len() + 1 {
            return Err(Error::Data(format!("{}: ragged kernel row", path.display())));
        }
        row_ids.push(rec[0].to_string());
        for cell in rec.iter().skip(1) {
            values.push(
                cell.parse::<f64>()
                    .map_err(|_| Error::Data(format!("{}: bad kernel value {cell:?}", path.display())))?,
            );
        }
    }
    Ok((DMatrix::from_row_slice(row_ids.len(), col_ids.len(), &values), row_ids, col_ids))
}
