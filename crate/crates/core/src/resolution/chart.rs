use std::collections::{BTreeMap, HashMap};

use crate::algebra::{BiDegree, TriDegree};
use crate::f2::{F2Matrix, F2Vector, Subspace};
use crate::tau_module::{Slice, Summand, TauModule};

use super::minimal::Resolution;

/// A cyclic `F2[tau]`-summand of Ext sitting at chart position `(s, f)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChartSummand {
    pub stem: i32,
    pub filtration: u32,
    pub summand: Summand,
}

/// Ext as a tri-graded table of `F2`-dimensions, plus its `tau`-module
/// decomposition. Dimensions are recorded for `0 <= w <= t/2`; every weight
/// below 0 repeats weight 0.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExtChart {
    pub algebra: String,
    pub stem_max: i32,
    pub f_max: u32,
    pub dims: BTreeMap<TriDegree, usize>,
    pub summands: Vec<ChartSummand>,
}

impl ExtChart {
    pub fn dim(&self, d: TriDegree) -> usize {
        let w = d.weight.max(0);
        self.dims
            .get(&TriDegree::new(d.stem, d.filtration, w))
            .copied()
            .unwrap_or(0)
    }

    /// Rows `s, f, w, dim`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("s\tf\tw\tdim\n");
        let mut rows: Vec<_> = self.dims.iter().collect();
        rows.sort_by_key(|(d, _)| (d.stem, d.filtration, d.weight));
        for (d, n) in rows {
            out.push_str(&format!("{}\t{}\t{}\t{}\n", d.stem, d.filtration, d.weight, n));
        }
        out
    }

    /// Rows `s, f, top_w, length` with `free` for tau-free summands.
    pub fn summands_tsv(&self) -> String {
        let mut out = String::from("s\tf\ttop_w\tlength\n");
        for c in &self.summands {
            let len = c.summand.length.map_or("free".to_string(), |l| l.to_string());
            out.push_str(&format!("{}\t{}\t{}\t{}\n", c.stem, c.filtration, c.summand.top, len));
        }
        out
    }
}

fn columns_by(gens: &[BiDegree], t: i32) -> Vec<usize> {
    gens.iter()
        .enumerate()
        .filter(|(_, d)| d.stem == t)
        .map(|(i, _)| i)
        .collect()
}

/// Ext from the Hom complex `Hom(F_f, F2[tau])`: the dual of generator `g`
/// in weight `w <= w_g` is `tau^(w_g - w) g^*`, and the coboundary records
/// the entries `tau^k · g` of `d(h)`.
pub fn ext_chart(r: &Resolution) -> ExtChart {
    let unit = r.ground().unit();
    let mut chart = ExtChart {
        algebra: r.kind().to_string(),
        stem_max: r.stem_max(),
        f_max: r.f_max(),
        ..Default::default()
    };
    let f_top = r.f_max().min(r.maps_built().saturating_sub(1));
    if r.maps_built() == 0 {
        return chart;
    }
    for t in 0..=r.stem_max() {
        let cols: Vec<Vec<usize>> = (0..=f_top + 1).map(|f| columns_by(r.generators(f), t)).collect();
        // coboundary δ_f : C_f -> C_(f+1), as a matrix with rows in C_(f+1)
        let coboundary = |f: u32| -> F2Matrix {
            let src = &cols[f as usize];
            let dst = &cols[f as usize + 1];
            let pos: HashMap<usize, usize> = src.iter().enumerate().map(|(i, &g)| (g, i)).collect();
            let mut m = F2Matrix::zeros(dst.len(), src.len());
            for (row, &h) in dst.iter().enumerate() {
                for &(g, mono) in r.differential(f + 1, h) {
                    if mono == unit {
                        if let Some(&c) = pos.get(&g) {
                            m.set(row, c, true);
                        }
                    }
                }
            }
            m
        };
        let deltas: Vec<F2Matrix> = (0..=f_top).map(coboundary).collect();
        for f in 0..=f_top {
            let here = &cols[f as usize];
            if here.is_empty() {
                continue;
            }
            let weight = |i: usize| r.generators(f)[here[i]].weight;
            let below_weight = |i: usize| r.generators(f - 1)[cols[f as usize - 1][i]].weight;
            let mut slices = Vec::new();
            for w in (0..=t / 2).rev() {
                let keep: Vec<usize> = (0..here.len()).filter(|&i| weight(i) >= w).collect();
                let delta = &deltas[f as usize];
                let mut sub = F2Matrix::zeros(delta.rows(), keep.len());
                for (j, &c) in keep.iter().enumerate() {
                    for i in 0..delta.rows() {
                        if delta.get(i, c) {
                            sub.set(i, j, true);
                        }
                    }
                }
                let mut cycles = Subspace::new(here.len());
                for v in sub.kernel_basis() {
                    cycles.add(&F2Vector::from_ones(here.len(), v.ones().map(|j| keep[j])));
                }
                let mut boundaries = Subspace::new(here.len());
                if f > 0 {
                    let prev = &deltas[f as usize - 1];
                    for c in 0..prev.cols() {
                        if below_weight(c) >= w {
                            let col = F2Vector::from_ones(here.len(), (0..prev.rows()).filter(|&i| prev.get(i, c)));
                            boundaries.add(&col);
                        }
                    }
                }
                slices.push(Slice {
                    weight: w,
                    cycles,
                    boundaries,
                });
            }
            let module = TauModule::new(slices);
            let s = t - f as i32;
            for slice in module.slices() {
                if slice.dim() > 0 {
                    chart.dims.insert(TriDegree::new(s, f, slice.weight), slice.dim());
                }
            }
            for summand in module.summands() {
                chart.summands.push(ChartSummand {
                    stem: s,
                    filtration: f,
                    summand,
                });
            }
        }
    }
    chart.summands.sort();
    chart
}

/// The first tri-degree where two dimension tables differ.
pub fn first_difference(
    a: &BTreeMap<TriDegree, usize>,
    b: &BTreeMap<TriDegree, usize>,
) -> Option<(TriDegree, usize, usize)> {
    let mut keys: Vec<&TriDegree> = a.keys().chain(b.keys()).collect();
    keys.sort_by_key(|d| (d.filtration, d.stem, d.weight));
    keys.dedup();
    keys.into_iter().find_map(|d| {
        let (x, y) = (a.get(d).copied().unwrap_or(0), b.get(d).copied().unwrap_or(0));
        (x != y).then_some((*d, x, y))
    })
}
