//! Wallpaper-group data: point-group elements acting on the translation
//! lattice, fractional translations, and the integral twist
//! omega(R1,R2) = tau(R1) + R1 tau(R2) - tau(R1 R2) that encodes how far the
//! group is from being a semidirect product.
//!
//! Group elements are written {t | R} with t an integer lattice vector and R
//! indexing a point-group element; the product is
//! {t1 | R1}{t2 | R2} = {t1 + R1 t2 + omega(R1,R2) | R1 R2}.
//!
//! All seventeen plane groups ship as JSON files compiled into the library.
//! Setting QWALL_DATA_DIR overrides the built-in data with
//! `$QWALL_DATA_DIR/groups/<name>.json`.

use crate::intmat::IMat;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

pub type Frac = Ratio<i64>;

#[derive(Debug, thiserror::Error)]
pub enum GroupError {
    #[error("unknown group '{0}'; known groups: {1}")]
    Unknown(String, String),
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed group file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid group data: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone)]
pub struct PointGroupElement {
    pub label: String,
    pub matrix: IMat,
    pub tau: Vec<Frac>,
}

/// A space-group element {t | R}: integer translation plus the index of a
/// point-group element in the owning group's table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpaceGroupElement {
    pub t: Vec<i64>,
    pub r: usize,
}

impl SpaceGroupElement {
    pub fn new(t: Vec<i64>, r: usize) -> Self {
        SpaceGroupElement { t, r }
    }
}

#[derive(Debug, Clone)]
pub struct WallpaperGroupData {
    pub name: String,
    pub dimension: usize,
    pub point_group: Vec<PointGroupElement>,
    pub generators: Vec<String>,
    /// mult_table[r1][r2] = index of R1 R2
    pub mult_table: Vec<Vec<usize>>,
    /// inv_table[r] = index of R^-1
    pub inv_table: Vec<usize>,
    /// omega_table[r1][r2] = integral part of the translation produced by
    /// composing coset representatives; identically zero iff symmorphic
    pub omega_table: Vec<Vec<Vec<i64>>>,
}

#[derive(Serialize, Deserialize)]
struct RawElement {
    label: String,
    matrix: Vec<Vec<i64>>,
    tau: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct RawGroup {
    name: String,
    dimension: usize,
    point_group: Vec<RawElement>,
    generators: Vec<String>,
}

fn mat_apply_frac(m: &IMat, v: &[Frac]) -> Vec<Frac> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| Frac::from(m.get(i, j)) * v[j]).sum())
        .collect()
}

impl WallpaperGroupData {
    pub fn from_json(text: &str) -> Result<Self, GroupError> {
        let raw: RawGroup = serde_json::from_str(text)?;
        Self::from_raw(raw)
    }

    fn from_raw(raw: RawGroup) -> Result<Self, GroupError> {
        let d = raw.dimension;
        let err = |msg: String| Err(GroupError::Invalid(msg));
        if d == 0 {
            return err("dimension must be positive".into());
        }
        if raw.point_group.is_empty() {
            return err("point group is empty".into());
        }

        let mut elements = Vec::with_capacity(raw.point_group.len());
        let mut seen = HashMap::new();
        for (idx, e) in raw.point_group.iter().enumerate() {
            if e.label.is_empty() {
                return err(format!("element {idx} has an empty label"));
            }
            if seen.insert(e.label.clone(), idx).is_some() {
                return err(format!("duplicate label '{}'", e.label));
            }
            if e.matrix.len() != d || e.matrix.iter().any(|row| row.len() != d) {
                return err(format!("element '{}': matrix is not {d}x{d}", e.label));
            }
            if e.tau.len() != d {
                return err(format!("element '{}': tau must have {d} components", e.label));
            }
            let matrix = IMat::from_rows(&e.matrix);
            let det = matrix.det();
            if det != 1 && det != -1 {
                return err(format!(
                    "element '{}': matrix determinant {det} is not a lattice symmetry",
                    e.label
                ));
            }
            let tau = e
                .tau
                .iter()
                .enumerate()
                .map(|(c, s)| {
                    Frac::from_str(s).map_err(|_| {
                        GroupError::Invalid(format!(
                            "element '{}': tau component {c} ('{s}') is not a rational number",
                            e.label
                        ))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            elements.push(PointGroupElement { label: e.label.clone(), matrix, tau });
        }

        if !elements[0].matrix.is_identity() {
            return err("the first point-group element must be the identity".into());
        }
        if elements[0].tau.iter().any(|x| *x != Frac::from(0)) {
            return err("the identity element must carry zero tau".into());
        }

        let p = elements.len();
        let key = |m: &IMat| -> Vec<i64> { m.to_rows().into_iter().flatten().collect() };
        let index: HashMap<Vec<i64>, usize> =
            elements.iter().enumerate().map(|(i, e)| (key(&e.matrix), i)).collect();
        if index.len() != p {
            return err("two elements share the same matrix".into());
        }

        let mut mult_table = vec![vec![0usize; p]; p];
        for i in 0..p {
            for j in 0..p {
                let prod = elements[i].matrix.mul(&elements[j].matrix);
                let Some(&k) = index.get(&key(&prod)) else {
                    return err(format!(
                        "point group is not closed: '{}' * '{}' is missing",
                        elements[i].label, elements[j].label
                    ));
                };
                mult_table[i][j] = k;
            }
        }

        let mut inv_table = vec![usize::MAX; p];
        for i in 0..p {
            match (0..p).find(|&j| mult_table[i][j] == 0 && mult_table[j][i] == 0) {
                Some(j) => inv_table[i] = j,
                None => return err(format!("element '{}' has no inverse", elements[i].label)),
            }
        }

        let mut omega_table = vec![vec![Vec::new(); p]; p];
        for i in 0..p {
            for j in 0..p {
                let k = mult_table[i][j];
                let rtau = mat_apply_frac(&elements[i].matrix, &elements[j].tau);
                let mut w = Vec::with_capacity(d);
                for c in 0..d {
                    let x = elements[i].tau[c] + rtau[c] - elements[k].tau[c];
                    if !x.is_integer() {
                        return err(format!(
                            "tau assignment is inconsistent: omega('{}','{}') component {c} = {x} is not integral",
                            elements[i].label, elements[j].label
                        ));
                    }
                    w.push(x.to_integer());
                }
                omega_table[i][j] = w;
            }
        }

        for gen in &raw.generators {
            if !seen.contains_key(gen) {
                return err(format!("generator '{gen}' is not a point-group element"));
            }
        }
        let mut generated = vec![false; p];
        generated[0] = true;
        let gen_idx: Vec<usize> = raw.generators.iter().map(|g| seen[g]).collect();
        loop {
            let mut grew = false;
            for i in 0..p {
                if !generated[i] {
                    continue;
                }
                for &g in &gen_idx {
                    for next in [mult_table[i][g], mult_table[g][i]] {
                        if !generated[next] {
                            generated[next] = true;
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        if generated.iter().any(|&x| !x) {
            return err("generators do not generate the point group".into());
        }

        Ok(WallpaperGroupData {
            name: raw.name,
            dimension: d,
            point_group: elements,
            generators: raw.generators,
            mult_table,
            inv_table,
            omega_table,
        })
    }

    pub fn to_json(&self) -> String {
        let raw = RawGroup {
            name: self.name.clone(),
            dimension: self.dimension,
            point_group: self
                .point_group
                .iter()
                .map(|e| RawElement {
                    label: e.label.clone(),
                    matrix: e.matrix.to_rows(),
                    tau: e.tau.iter().map(|x| x.to_string()).collect(),
                })
                .collect(),
            generators: self.generators.clone(),
        };
        serde_json::to_string_pretty(&raw).expect("serialization cannot fail")
    }

    pub fn order(&self) -> usize {
        self.point_group.len()
    }

    pub fn element_index(&self, label: &str) -> Option<usize> {
        self.point_group.iter().position(|e| e.label == label)
    }

    pub fn identity(&self) -> SpaceGroupElement {
        SpaceGroupElement::new(vec![0; self.dimension], 0)
    }

    pub fn omega(&self, r1: usize, r2: usize) -> &[i64] {
        &self.omega_table[r1][r2]
    }

    pub fn is_symmorphic(&self) -> bool {
        self.omega_table.iter().flatten().flatten().all(|&x| x == 0)
    }

    pub fn multiply(&self, g1: &SpaceGroupElement, g2: &SpaceGroupElement) -> SpaceGroupElement {
        assert_eq!(g1.t.len(), self.dimension);
        assert_eq!(g2.t.len(), self.dimension);
        let rt2 = self.point_group[g1.r].matrix.mulv(&g2.t);
        let w = &self.omega_table[g1.r][g2.r];
        let t = (0..self.dimension).map(|c| g1.t[c] + rt2[c] + w[c]).collect();
        SpaceGroupElement::new(t, self.mult_table[g1.r][g2.r])
    }

    pub fn inverse(&self, g: &SpaceGroupElement) -> SpaceGroupElement {
        let rinv = self.inv_table[g.r];
        let w = &self.omega_table[g.r][rinv];
        let minv = &self.point_group[rinv].matrix;
        let shifted: Vec<i64> = g.t.iter().zip(w).map(|(a, b)| a + b).collect();
        let t = minv.mulv(&shifted).iter().map(|x| -x).collect();
        SpaceGroupElement::new(t, rinv)
    }

    /// Human-readable form "{t1,t2 | label}".
    pub fn describe(&self, g: &SpaceGroupElement) -> String {
        let t: Vec<String> = g.t.iter().map(|x| x.to_string()).collect();
        format!("{{{} | {}}}", t.join(","), self.point_group[g.r].label)
    }

    /// Re-derives every structural invariant and reports violations.
    /// Empty output means the data is a consistent wallpaper group.
    pub fn validate(&self) -> Vec<String> {
        let mut issues = Vec::new();
        let p = self.order();
        let d = self.dimension;

        if !self.point_group[0].matrix.is_identity() {
            issues.push("first element is not the identity".into());
        }

        for (i, e) in self.point_group.iter().enumerate() {
            let det = e.matrix.det();
            if det != 1 && det != -1 {
                issues.push(format!("element '{}' has determinant {det}", e.label));
            }
            // finite order: some power within |P| steps returns to identity
            let mut pow = i;
            let mut order = 1;
            while pow != 0 && order <= p {
                pow = self.mult_table[pow][i];
                order += 1;
            }
            if pow != 0 {
                issues.push(format!("element '{}' has infinite order", e.label));
            }
        }

        for r1 in 0..p {
            for r2 in 0..p {
                let prod = self.point_group[r1].matrix.mul(&self.point_group[r2].matrix);
                if prod != self.point_group[self.mult_table[r1][r2]].matrix {
                    issues.push(format!(
                        "mult_table disagrees with matrices at ({},{})",
                        self.point_group[r1].label, self.point_group[r2].label
                    ));
                }
                for r3 in 0..p {
                    if self.mult_table[self.mult_table[r1][r2]][r3]
                        != self.mult_table[r1][self.mult_table[r2][r3]]
                    {
                        issues.push(format!(
                            "associativity fails at ({},{},{})",
                            self.point_group[r1].label,
                            self.point_group[r2].label,
                            self.point_group[r3].label
                        ));
                    }
                }
            }
        }

        // omega must satisfy the twisted cocycle identity
        // omega(R1,R2) + omega(R1R2,R3) = R1 omega(R2,R3) + omega(R1,R2R3)
        for r1 in 0..p {
            for r2 in 0..p {
                for r3 in 0..p {
                    let lhs: Vec<i64> = self.omega_table[r1][r2]
                        .iter()
                        .zip(&self.omega_table[self.mult_table[r1][r2]][r3])
                        .map(|(a, b)| a + b)
                        .collect();
                    let rw = self.point_group[r1].matrix.mulv(&self.omega_table[r2][r3]);
                    let rhs: Vec<i64> = rw
                        .iter()
                        .zip(&self.omega_table[r1][self.mult_table[r2][r3]])
                        .map(|(a, b)| a + b)
                        .collect();
                    if lhs != rhs {
                        issues.push(format!(
                            "omega cocycle identity fails at ({},{},{})",
                            self.point_group[r1].label,
                            self.point_group[r2].label,
                            self.point_group[r3].label
                        ));
                    }
                }
            }
        }

        for c in 0..d {
            if self.point_group[0].tau[c] != Frac::from(0) {
                issues.push("identity carries nonzero tau".into());
            }
        }

        issues
    }

    /// Moves the origin by `s`: tau'(R) = tau(R) + (R - 1)s reduced mod 1.
    /// The result presents the same space group in shifted coordinates.
    pub fn shift_origin(&self, s: &[Frac]) -> Result<Self, GroupError> {
        assert_eq!(s.len(), self.dimension);
        let raw = RawGroup {
            name: self.name.clone(),
            dimension: self.dimension,
            point_group: self
                .point_group
                .iter()
                .map(|e| {
                    let rs = mat_apply_frac(&e.matrix, s);
                    let tau = (0..self.dimension)
                        .map(|c| {
                            let x = e.tau[c] + rs[c] - s[c];
                            // reduce to [0,1)
                            (x - x.floor()).to_string()
                        })
                        .collect();
                    RawElement { label: e.label.clone(), matrix: e.matrix.to_rows(), tau }
                })
                .collect(),
            generators: self.generators.clone(),
        };
        Self::from_raw(raw)
    }
}

/// Canonical listing order for the seventeen plane groups.
pub const GROUP_NAMES: [&str; 17] = [
    "p1", "p2", "pm", "pg", "cm", "pmm", "pmg", "pgg", "cmm", "p4", "p4m", "p4g", "p3", "p3m1",
    "p31m", "p6", "p6m",
];

static BUILTIN: [(&str, &str); 17] = [
    ("p1", include_str!("data/groups/p1.json")),
    ("p2", include_str!("data/groups/p2.json")),
    ("pm", include_str!("data/groups/pm.json")),
    ("pg", include_str!("data/groups/pg.json")),
    ("cm", include_str!("data/groups/cm.json")),
    ("pmm", include_str!("data/groups/pmm.json")),
    ("pmg", include_str!("data/groups/pmg.json")),
    ("pgg", include_str!("data/groups/pgg.json")),
    ("cmm", include_str!("data/groups/cmm.json")),
    ("p4", include_str!("data/groups/p4.json")),
    ("p4m", include_str!("data/groups/p4m.json")),
    ("p4g", include_str!("data/groups/p4g.json")),
    ("p3", include_str!("data/groups/p3.json")),
    ("p3m1", include_str!("data/groups/p3m1.json")),
    ("p31m", include_str!("data/groups/p31m.json")),
    ("p6", include_str!("data/groups/p6.json")),
    ("p6m", include_str!("data/groups/p6m.json")),
];

fn cache() -> &'static Mutex<HashMap<String, Arc<WallpaperGroupData>>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<WallpaperGroupData>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Loads a group by name. Built-in data can be overridden by pointing
/// QWALL_DATA_DIR at a directory containing `groups/<name>.json`.
pub fn load_group(name: &str) -> Result<Arc<WallpaperGroupData>, GroupError> {
    if let Ok(dir) = std::env::var("QWALL_DATA_DIR") {
        let path = std::path::Path::new(&dir).join("groups").join(format!("{name}.json"));
        if path.exists() {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| GroupError::Io { path: path.display().to_string(), source: e })?;
            return WallpaperGroupData::from_json(&text).map(Arc::new).map_err(|e| {
                GroupError::Invalid(format!("{}: {e}", path.display()))
            });
        }
    }
    if let Some(g) = cache().lock().unwrap().get(name) {
        return Ok(g.clone());
    }
    let Some((_, text)) = BUILTIN.iter().find(|(n, _)| *n == name) else {
        return Err(GroupError::Unknown(name.to_string(), GROUP_NAMES.join(", ")));
    };
    let g = Arc::new(WallpaperGroupData::from_json(text)?);
    cache().lock().unwrap().insert(name.to_string(), g.clone());
    Ok(g)
}
