use serde::{Deserialize, Serialize};

use super::decompose::{relative_residual, Decomposition};
use super::nnls::{nnls, Column};
use crate::criteria::ConeId;
use crate::extremals::{ext_families, generator, Family, GeneratorParams, Term};
use crate::xcore::{Slot, XMatrix};
use crate::{Real, Result};

/// Dictionary construction and solver settings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DictionaryConfig {
    /// Log-spaced ratio grid on `[ratio_min, ratio_max]`.
    pub grid_points: usize,
    pub ratio_min: f64,
    pub ratio_max: f64,
    /// Also use the target's own ratios `sqrt(a_k / b_k)`.
    pub include_target_ratios: bool,
    /// Above this many atoms only the target ratios are used.
    pub max_atoms: usize,
    pub threshold: f64,
    pub max_iter: usize,
}

impl Default for DictionaryConfig {
    fn default() -> Self {
        DictionaryConfig {
            grid_points: 9,
            ratio_min: 0.125,
            ratio_max: 8.0,
            include_target_ratios: true,
            max_atoms: 200_000,
            threshold: 1e-10,
            max_iter: 10_000,
        }
    }
}

impl DictionaryConfig {
    fn grid(&self) -> Vec<f64> {
        match self.grid_points {
            0 => vec![],
            1 => vec![(self.ratio_min * self.ratio_max).sqrt()],
            n => {
                let (lo, hi) = (self.ratio_min.ln(), self.ratio_max.ln());
                (0..n)
                    .map(|k| (lo + (hi - lo) * k as f64 / (n - 1) as f64).exp())
                    .collect()
            }
        }
    }
}

fn target_ratio(x: &XMatrix<f64>, s: Slot) -> Option<f64> {
    let (a, b) = (x.a[s.index()], x.b[s.index()]);
    (a > 0.0 && b > 0.0).then(|| (a / b).sqrt())
}

fn ratio_choices(x: &XMatrix<f64>, config: &DictionaryConfig, grid: &[f64]) -> [Vec<f64>; 4] {
    Slot::ALL.map(|s| {
        let mut v = grid.to_vec();
        if config.include_target_ratios {
            if let Some(r) = target_ratio(x, s) {
                if !v.iter().any(|&g| (g - r).abs() <= 1e-14 * r) {
                    v.push(r);
                }
            }
        }
        if v.is_empty() {
            v.push(1.0);
        }
        v
    })
}

fn atom_count(families: &[Family], ratios: &[Vec<f64>; 4]) -> usize {
    families
        .iter()
        .map(|f| {
            let r: usize = f.ratio_slots().iter().map(|s| ratios[s.index()].len()).product();
            r << f.phase_slots().len()
        })
        .sum()
}

fn expand(f: Family, ratios: &[Vec<f64>; 4], phases: &[[f64; 2]; 4], out: &mut Vec<GeneratorParams<f64>>) {
    let ratio_slots = f.ratio_slots();
    let phase_slots = f.phase_slots();
    let sizes: Vec<usize> = ratio_slots
        .iter()
        .map(|s| ratios[s.index()].len())
        .chain(phase_slots.iter().map(|_| 2))
        .collect();
    let total: usize = sizes.iter().product();
    for mut code in 0..total {
        let mut p = GeneratorParams::default();
        for (k, &s) in ratio_slots.iter().enumerate() {
            p.ratios[s.index()] = Some(ratios[s.index()][code % sizes[k]]);
            code /= sizes[k];
        }
        for &s in &phase_slots {
            p.phases[s.index()] = Some(phases[s.index()][code % 2]);
            code /= 2;
        }
        out.push(p);
    }
}

/// Nonnegative least-squares fit of `x` by a finite dictionary of the
/// cone's extreme-ray generators. A small residual certifies membership; a
/// large one is inconclusive.
pub fn decompose_dictionary<T: Real>(
    x: &XMatrix<T>,
    cone: ConeId,
    config: &DictionaryConfig,
) -> Result<Decomposition<T>> {
    let target = x.cast::<f64>();
    let families = ext_families(cone);
    let grid = config.grid();
    let mut ratios = ratio_choices(&target, config, &grid);
    if atom_count(&families, &ratios) > config.max_atoms {
        ratios = ratio_choices(&target, config, &[]);
    }
    let phases = Slot::ALL.map(|s| {
        let t = target.phase(s);
        [t, t + std::f64::consts::PI]
    });

    let mut atoms: Vec<(Family, GeneratorParams<f64>)> = Vec::new();
    let mut columns: Vec<Column> = Vec::new();
    let mut norms: Vec<f64> = Vec::new();
    let mut buf = Vec::new();
    for &f in &families {
        buf.clear();
        if matches!(f, Family::Delta(..)) {
            buf.push(GeneratorParams::default());
        } else {
            expand(f, &ratios, &phases, &mut buf);
        }
        for p in &buf {
            let g = generator(f, p)?;
            let c = g.coords();
            let n = c.iter().map(|v| v * v).sum::<f64>().sqrt();
            columns.push(c.map(|v| v / n));
            norms.push(n);
            atoms.push((f, *p));
        }
    }

    let b = target.coords();
    let bn = b.iter().map(|v| v * v).sum::<f64>().sqrt();
    let terms: Vec<Term<T>> = if bn == 0.0 {
        Vec::new()
    } else {
        let rhs = b.map(|v| v / bn);
        let solution = nnls(&columns, &rhs, config.threshold, config.max_iter);
        solution
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0.0)
            .map(|(k, &c)| Term {
                weight: T::lit(c * bn / norms[k]),
                family: atoms[k].0,
                params: atoms[k].1.cast(),
            })
            .collect()
    };
    let residual = relative_residual(&terms, x)?;
    Ok(Decomposition { terms, cone, residual })
}
