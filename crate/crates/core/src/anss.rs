//! Weight truncation of Adams–Novikov charts.
//!
//! The motivic `E_2`-page in weight `w` is the classical one restricted to
//! `s + f >= 2w`. Running each truncated spectral sequence and comparing
//! neighbouring weights gives the motivic `E_∞`-page with its `tau`-action:
//! a classical `d_r` hitting across the line `s + f = 2w` leaves a target
//! killed by `tau^((r-1)/2)`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::TriDegree;
use crate::f2::{F2Matrix, F2Vector, Subspace};
use crate::tau_module::{tau_power_rank, Slice, Summand, TauModule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnssError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("malformed chart: {0}")]
    Malformed(String),
    #[error("inconsistent differentials: {0}")]
    Inconsistent(String),
    #[error("weight {w_min} is above the stable range (need w_min <= {needed})")]
    NotStabilized { w_min: i32, needed: i32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChartClass {
    pub id: String,
    pub stem: i32,
    pub filtration: u32,
}

impl ChartClass {
    pub fn total(&self) -> i32 {
        self.stem + self.filtration as i32
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Differential {
    pub r: u32,
    pub source: String,
    pub target: String,
}

/// A classical chart: classes at `(s, f)` and differentials
/// `d_r : (s, f) -> (s - 1, f + r)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Chart {
    classes: Vec<ChartClass>,
    differentials: Vec<Differential>,
}

impl Chart {
    /// Validates ids and differential degrees.
    pub fn new(classes: Vec<ChartClass>, differentials: Vec<Differential>) -> Result<Self, AnssError> {
        let mut by_id: HashMap<&str, &ChartClass> = HashMap::new();
        for c in &classes {
            if by_id.insert(c.id.as_str(), c).is_some() {
                return Err(AnssError::Malformed(format!("duplicate class id `{}`", c.id)));
            }
        }
        for d in &differentials {
            let (Some(a), Some(b)) = (by_id.get(d.source.as_str()), by_id.get(d.target.as_str())) else {
                return Err(AnssError::Malformed(format!(
                    "d{} {} -> {} names an unknown class",
                    d.r, d.source, d.target
                )));
            };
            if d.r < 2 {
                return Err(AnssError::Malformed(format!("d{} is below the E_2-page", d.r)));
            }
            if b.stem != a.stem - 1 || b.filtration != a.filtration + d.r {
                return Err(AnssError::Malformed(format!(
                    "d{} from {} at ({},{}) cannot hit {} at ({},{})",
                    d.r, a.id, a.stem, a.filtration, b.id, b.stem, b.filtration
                )));
            }
        }
        Ok(Chart { classes, differentials })
    }

    pub fn classes(&self) -> &[ChartClass] {
        &self.classes
    }

    pub fn differentials(&self) -> &[Differential] {
        &self.differentials
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Parses `class <id> s=<int> f=<int>` and `d <r> <source> <target>`
    /// lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, AnssError> {
        let mut classes = Vec::new();
        let mut differentials = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: &str| AnssError::Parse {
                line: n + 1,
                message: format!("{message}: `{line}`"),
            };
            let tok: Vec<&str> = line.split_whitespace().collect();
            match tok.as_slice() {
                ["class", id, s, f] => {
                    let stem = s
                        .strip_prefix("s=")
                        .and_then(|v| v.parse().ok())
                        .ok_or_else(|| err("bad stem"))?;
                    let filtration = f
                        .strip_prefix("f=")
                        .and_then(|v| v.parse().ok())
                        .ok_or_else(|| err("bad filtration"))?;
                    classes.push(ChartClass {
                        id: id.to_string(),
                        stem,
                        filtration,
                    });
                }
                ["d", r, source, target] => {
                    let r = r.parse().map_err(|_| err("bad page"))?;
                    differentials.push(Differential {
                        r,
                        source: source.to_string(),
                        target: target.to_string(),
                    });
                }
                _ => return Err(err("expected `class` or `d`")),
            }
        }
        Chart::new(classes, differentials)
    }

    /// Keeps the classes with `s + f >= 2w` and the differentials among them.
    pub fn truncate(&self, w: i32) -> Result<Chart, AnssError> {
        let kept: HashSet<&str> = self
            .classes
            .iter()
            .filter(|c| c.total() >= 2 * w)
            .map(|c| c.id.as_str())
            .collect();
        let mut differentials = Vec::new();
        for d in &self.differentials {
            match (kept.contains(d.source.as_str()), kept.contains(d.target.as_str())) {
                (true, true) => differentials.push(d.clone()),
                (false, _) => {}
                (true, false) => {
                    return Err(AnssError::Malformed(format!(
                        "d{} keeps {} but drops its target {}",
                        d.r, d.source, d.target
                    )))
                }
            }
        }
        Ok(Chart {
            classes: self
                .classes
                .iter()
                .filter(|c| kept.contains(c.id.as_str()))
                .cloned()
                .collect(),
            differentials,
        })
    }

    /// The smallest `⌊(s+f)/2⌋` over classes: at or below this weight the
    /// truncation changes nothing.
    pub fn stable_weight(&self) -> Option<i32> {
        self.classes.iter().map(|c| c.total().div_euclid(2)).min()
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.classes {
            writeln!(f, "class {} s={} f={}", c.id, c.stem, c.filtration)?;
        }
        for d in &self.differentials {
            writeln!(f, "d {} {} {}", d.r, d.source, d.target)?;
        }
        Ok(())
    }
}

/// The classes at one `(s, f)` with the surviving cycles and the boundaries
/// as subspaces of their span.
#[derive(Debug, Clone)]
pub struct Position {
    pub classes: Vec<String>,
    pub cycles: Subspace,
    pub boundaries: Subspace,
}

impl Position {
    pub fn dim(&self) -> usize {
        self.cycles.dim() - self.boundaries.dim()
    }
}

/// `E_∞` of a chart, position by position.
#[derive(Debug, Clone, Default)]
pub struct SsResult {
    pub positions: BTreeMap<(i32, u32), Position>,
}

impl SsResult {
    /// Nonzero `E_∞` dimensions.
    pub fn dims(&self) -> BTreeMap<(i32, u32), usize> {
        self.positions
            .iter()
            .filter(|(_, p)| p.dim() > 0)
            .map(|(&k, p)| (k, p.dim()))
            .collect()
    }
}

/// Runs the spectral sequence page by page. On page `r` each listed
/// `d_r` sends its source class to its target class; the resulting
/// matrix acts on the cycles that survived to page `r`.
pub fn run_ss(chart: &Chart) -> Result<SsResult, AnssError> {
    let mut positions: BTreeMap<(i32, u32), Position> = BTreeMap::new();
    let mut locate: HashMap<&str, ((i32, u32), usize)> = HashMap::new();
    for c in &chart.classes {
        let key = (c.stem, c.filtration);
        let p = positions.entry(key).or_insert_with(|| Position {
            classes: Vec::new(),
            cycles: Subspace::new(0),
            boundaries: Subspace::new(0),
        });
        locate.insert(c.id.as_str(), (key, p.classes.len()));
        p.classes.push(c.id.clone());
    }
    for p in positions.values_mut() {
        let n = p.classes.len();
        p.cycles = Subspace::new(n);
        for i in 0..n {
            p.cycles.add(&F2Vector::unit(n, i));
        }
        p.boundaries = Subspace::new(n);
    }

    let mut pages: Vec<u32> = chart.differentials.iter().map(|d| d.r).collect();
    pages.sort_unstable();
    pages.dedup();
    for r in pages {
        let here: Vec<&Differential> = chart.differentials.iter().filter(|d| d.r == r).collect();
        let sources: HashSet<&str> = here.iter().map(|d| d.source.as_str()).collect();
        let targets: HashSet<&str> = here.iter().map(|d| d.target.as_str()).collect();
        if let Some(both) = sources.intersection(&targets).next() {
            return Err(AnssError::Inconsistent(format!(
                "{both} is both hit and supporting on page {r}"
            )));
        }
        let alive = |id: &str| {
            let (key, i) = locate[id];
            let p = &positions[&key];
            let e = F2Vector::unit(p.classes.len(), i);
            p.cycles.contains(&e) && !p.boundaries.contains(&e)
        };
        for d in &here {
            for id in [&d.source, &d.target] {
                if !alive(id) {
                    return Err(AnssError::Inconsistent(format!(
                        "{id} is not alive on page {r} (d{r} {} -> {})",
                        d.source, d.target
                    )));
                }
            }
        }
        // one matrix per (source position, target position)
        let mut maps: BTreeMap<(i32, u32), Vec<(usize, usize)>> = BTreeMap::new();
        for d in &here {
            let (skey, si) = locate[d.source.as_str()];
            let (_, ti) = locate[d.target.as_str()];
            maps.entry(skey).or_default().push((si, ti));
        }
        let mut new_cycles: Vec<((i32, u32), Subspace)> = Vec::new();
        let mut new_boundaries: Vec<((i32, u32), Vec<F2Vector>)> = Vec::new();
        for (skey, pairs) in maps {
            let tkey = (skey.0 - 1, skey.1 + r);
            let src = &positions[&skey];
            let tgt = &positions[&tkey];
            let apply = |z: &F2Vector| {
                let mut out = F2Vector::zeros(tgt.classes.len());
                for &(si, ti) in &pairs {
                    if z.get(si) {
                        out.flip(ti);
                    }
                }
                out
            };
            let zs = src.cycles.basis();
            let images: Vec<F2Vector> = zs.iter().map(apply).collect();
            for im in &images {
                if !tgt.cycles.contains(im) {
                    return Err(AnssError::Inconsistent(format!(
                        "d{r} out of {:?} lands outside the cycles of {:?}",
                        skey, tkey
                    )));
                }
            }
            // cycles on the next page: combinations whose image is a boundary
            let mut m = F2Matrix::zeros(tgt.classes.len(), zs.len());
            for (j, im) in images.iter().enumerate() {
                let mut reduced = im.clone();
                tgt.boundaries.reduce(&mut reduced);
                for i in reduced.ones() {
                    m.set(i, j, true);
                }
            }
            let mut cycles = Subspace::new(src.classes.len());
            for coeffs in m.kernel_basis() {
                let mut z = F2Vector::zeros(src.classes.len());
                for j in coeffs.ones() {
                    z.add_assign(&zs[j]);
                }
                cycles.add(&z);
            }
            // keep old boundaries, which lie in the new cycles
            cycles.extend(src.boundaries.basis());
            new_cycles.push((skey, cycles));
            new_boundaries.push((tkey, images));
        }
        for (key, cycles) in new_cycles {
            positions.get_mut(&key).unwrap().cycles = cycles;
        }
        for (key, images) in new_boundaries {
            positions.get_mut(&key).unwrap().boundaries.extend(&images);
        }
    }
    Ok(SsResult { positions })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MotivicEntry {
    pub dim: usize,
    /// Rank of `tau : E_∞^{s,f,w} -> E_∞^{s,f,w-1}`.
    pub tau_rank: usize,
}

/// The tri-graded `E_∞`-page for weights `w_min..=w_max`.
#[derive(Debug, Clone, Default)]
pub struct MotivicChart {
    pub w_min: i32,
    pub w_max: i32,
    pub entries: BTreeMap<TriDegree, MotivicEntry>,
    modules: BTreeMap<(i32, u32), TauModule>,
}

impl MotivicChart {
    pub fn dim(&self, d: TriDegree) -> usize {
        self.entries.get(&d).map_or(0, |e| e.dim)
    }

    pub fn tau_rank(&self, d: TriDegree) -> usize {
        self.entries.get(&d).map_or(0, |e| e.tau_rank)
    }

    /// Cyclic `F2[tau]`-summands at each `(s, f)`. Summands reaching
    /// `w_min` are reported as free.
    pub fn summands(&self) -> BTreeMap<(i32, u32), Vec<Summand>> {
        self.modules
            .iter()
            .map(|(&k, m)| (k, m.summands()))
            .filter(|(_, v)| !v.is_empty())
            .collect()
    }

    /// Rows `s, f, w, dim, tau_rank` for every nonzero entry.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("s\tf\tw\tdim\ttau_rank\n");
        let mut rows: Vec<_> = self.entries.iter().filter(|(_, e)| e.dim > 0).collect();
        rows.sort_by_key(|(d, _)| (d.stem, d.filtration, std::cmp::Reverse(d.weight)));
        for (d, e) in rows {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                d.stem, d.filtration, d.weight, e.dim, e.tau_rank
            ));
        }
        out
    }
}

/// Runs the truncation at every weight in `w_min..=w_max` and assembles.
pub fn motivic_assemble(chart: &Chart, w_min: i32, w_max: i32) -> Result<MotivicChart, AnssError> {
    if let Some(needed) = chart.stable_weight() {
        if w_min > needed {
            return Err(AnssError::NotStabilized { w_min, needed });
        }
    }
    let weights: Vec<i32> = (w_min..=w_max.max(w_min)).rev().collect();
    let runs: Vec<SsResult> = weights
        .par_iter()
        .map(|&w| run_ss(&chart.truncate(w)?))
        .collect::<Result<_, _>>()?;

    let mut positions: BTreeMap<(i32, u32), usize> = BTreeMap::new();
    for c in &chart.classes {
        *positions.entry((c.stem, c.filtration)).or_default() += 1;
    }
    let mut out = MotivicChart {
        w_min,
        w_max: w_max.max(w_min),
        ..Default::default()
    };
    for (&(s, f), &n) in &positions {
        let slices: Vec<Slice> = weights
            .iter()
            .zip(&runs)
            .map(|(&w, run)| match run.positions.get(&(s, f)) {
                Some(p) => Slice {
                    weight: w,
                    cycles: p.cycles.clone(),
                    boundaries: p.boundaries.clone(),
                },
                None => Slice {
                    weight: w,
                    cycles: Subspace::new(n),
                    boundaries: Subspace::new(n),
                },
            })
            .collect();
        for (i, slice) in slices.iter().enumerate() {
            let tau_rank = match slices.get(i + 1) {
                Some(below) => tau_power_rank(slice, below),
                // below w_min nothing changes, so tau is an isomorphism
                None => slice.dim(),
            };
            out.entries.insert(
                TriDegree::new(s, f, slice.weight),
                MotivicEntry {
                    dim: slice.dim(),
                    tau_rank,
                },
            );
        }
        out.modules.insert((s, f), TauModule::new(slices));
    }
    Ok(out)
}

/// The `w_min` slice, which is the classical `E_∞`-page.
pub fn tau_invert(m: &MotivicChart) -> BTreeMap<(i32, u32), usize> {
    m.entries
        .iter()
        .filter(|(d, e)| d.weight == m.w_min && e.dim > 0)
        .map(|(d, e)| ((d.stem, d.filtration), e.dim))
        .collect()
}
