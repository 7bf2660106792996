//! Integral homology of wallpaper groups and the cohomology read off from
//! it.
//!
//! The pipeline: a free resolution of the point group (periodic for cyclic
//! point groups, bar otherwise) is tensored over the point group against an
//! equivariant cell structure on the translation torus. The homology of that
//! total complex is the homology of the wallpaper group, computed exactly
//! through Smith normal forms. Universal coefficients then give cohomology
//! with Z2 or circle coefficients, the two cases that classify projective
//! phase factors.

mod complex;
mod resolution;
mod snf;

pub use complex::{
    borel_total_complex, group_homology, homology, total_complex, validate_equivariant_complex,
    AbelianGroup, CellDegree, ChainComplex, EquivariantComplex,
};
pub use resolution::{build_resolution, GroupRingMat, Resolution};
pub use snf::{smith_normal_form, SnfResult, ZMat};

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug, thiserror::Error)]
pub enum HomologyError {
    #[error("no equivariant complex for '{0}'; available: {1}")]
    UnknownComplex(String, String),
    #[error("failed to read {path}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("failed to parse equivariant complex: {0}")]
    Parse(String),
    #[error("invalid equivariant complex: {0}")]
    Invalid(String),
    #[error("degree {degree} is the truncation edge of this complex; extend the total complex to compute it")]
    Truncated { degree: usize },
}

/// Coefficients for which cohomology is reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientGroup {
    /// the two-element group, trivial module
    Z2,
    /// the circle group U(1), trivial module
    U1,
}

impl std::str::FromStr for CoefficientGroup {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "z2" => Ok(CoefficientGroup::Z2),
            "u1" | "u(1)" => Ok(CoefficientGroup::U1),
            other => Err(format!("unknown coefficient group '{other}'; use z2 or u1")),
        }
    }
}

/// A cohomology group in one of the two coefficient systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cohomology {
    /// elementary abelian 2-group of the given dimension
    Mod2 { dimension: usize },
    /// product of circle factors and a finite torsion part
    Circle { circle_rank: usize, torsion: Vec<num_bigint::BigInt> },
}

impl std::fmt::Display for Cohomology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cohomology::Mod2 { dimension: 0 } => write!(f, "0"),
            Cohomology::Mod2 { dimension: 1 } => write!(f, "Z2"),
            Cohomology::Mod2 { dimension } => write!(f, "Z2^{dimension}"),
            Cohomology::Circle { circle_rank, torsion } => {
                let mut parts = Vec::new();
                match circle_rank {
                    0 => {}
                    1 => parts.push("U(1)".to_string()),
                    r => parts.push(format!("U(1)^{r}")),
                }
                let finite = AbelianGroup { free_rank: 0, torsion: torsion.clone() };
                if !finite.is_zero() {
                    parts.push(finite.to_string());
                }
                if parts.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "{}", parts.join(" x "))
                }
            }
        }
    }
}

/// Cohomology in degree n by universal coefficients, from the homology
/// groups `h` where `h[k]` is H_k.
///
/// For Z2: dim H^n = rank H_n + (2-rank of H_n) + (2-rank of H_{n-1}).
/// For U(1), an injective module: H^n = Hom(H_n, U(1)), which is one circle
/// factor per free rank plus the torsion of H_n itself.
pub fn cohomology_from_uct(h: &[AbelianGroup], n: usize, coeff: CoefficientGroup) -> Cohomology {
    assert!(n < h.len(), "homology through degree {n} required, only {} available", h.len());
    match coeff {
        CoefficientGroup::Z2 => {
            let below = if n == 0 { 0 } else { h[n - 1].even_torsion_count() };
            Cohomology::Mod2 {
                dimension: h[n].free_rank + h[n].even_torsion_count() + below,
            }
        }
        CoefficientGroup::U1 => Cohomology::Circle {
            circle_rank: h[n].free_rank,
            torsion: h[n].torsion.clone(),
        },
    }
}

/// Groups with a built-in equivariant cell structure.
pub const COMPLEX_NAMES: [&str; 5] = ["p1", "p2", "pm", "pg", "cm"];

static BUILTIN: [(&str, &str); 5] = [
    ("p1", include_str!("../data/complexes/p1.json")),
    ("p2", include_str!("../data/complexes/p2.json")),
    ("pm", include_str!("../data/complexes/pm.json")),
    ("pg", include_str!("../data/complexes/pg.json")),
    ("cm", include_str!("../data/complexes/cm.json")),
];

fn cache() -> &'static Mutex<HashMap<String, Arc<EquivariantComplex>>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<EquivariantComplex>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Loads an equivariant complex by group name. Built-in data can be
/// overridden by pointing QWALL_DATA_DIR at a directory containing
/// `complexes/<name>.json`.
pub fn load_complex(name: &str) -> Result<Arc<EquivariantComplex>, HomologyError> {
    if let Ok(dir) = std::env::var("QWALL_DATA_DIR") {
        let path = std::path::Path::new(&dir).join("complexes").join(format!("{name}.json"));
        if path.exists() {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| HomologyError::Io { path: path.display().to_string(), source: e })?;
            return EquivariantComplex::from_json(&text).map(Arc::new).map_err(|e| {
                HomologyError::Invalid(format!("{}: {e}", path.display()))
            });
        }
    }
    if let Some(c) = cache().lock().unwrap().get(name) {
        return Ok(c.clone());
    }
    let Some((_, text)) = BUILTIN.iter().find(|(n, _)| *n == name) else {
        return Err(HomologyError::UnknownComplex(name.to_string(), COMPLEX_NAMES.join(", ")));
    };
    let cx = Arc::new(EquivariantComplex::from_json(text)?);
    cache().lock().unwrap().insert(name.to_string(), cx.clone());
    Ok(cx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn t(vals: &[i64]) -> Vec<BigInt> {
        vals.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn uct_spot_cases() {
        // H_0 = Z, H_1 = Z^2, H_2 = Z: the torus
        let h = vec![
            AbelianGroup::free(1),
            AbelianGroup::free(2),
            AbelianGroup::free(1),
        ];
        assert_eq!(cohomology_from_uct(&h, 0, CoefficientGroup::Z2), Cohomology::Mod2 { dimension: 1 });
        assert_eq!(cohomology_from_uct(&h, 1, CoefficientGroup::Z2), Cohomology::Mod2 { dimension: 2 });
        assert_eq!(cohomology_from_uct(&h, 2, CoefficientGroup::Z2), Cohomology::Mod2 { dimension: 1 });
        assert_eq!(
            cohomology_from_uct(&h, 2, CoefficientGroup::U1),
            Cohomology::Circle { circle_rank: 1, torsion: vec![] }
        );

        // H_1 = Z + Z2, H_2 = 0: torsion below shows up in H^2 mod 2 only
        let h = vec![
            AbelianGroup::free(1),
            AbelianGroup { free_rank: 1, torsion: t(&[2]) },
            AbelianGroup::zero(),
        ];
        assert_eq!(cohomology_from_uct(&h, 2, CoefficientGroup::Z2), Cohomology::Mod2 { dimension: 1 });
        assert_eq!(
            cohomology_from_uct(&h, 2, CoefficientGroup::U1),
            Cohomology::Circle { circle_rank: 0, torsion: vec![] }
        );
        // odd torsion is invisible to Z2 coefficients
        let h = vec![
            AbelianGroup::free(1),
            AbelianGroup { free_rank: 0, torsion: t(&[3]) },
            AbelianGroup { free_rank: 0, torsion: t(&[6]) },
        ];
        assert_eq!(cohomology_from_uct(&h, 2, CoefficientGroup::Z2), Cohomology::Mod2 { dimension: 1 });
        assert_eq!(
            cohomology_from_uct(&h, 2, CoefficientGroup::U1).to_string(),
            "Z6"
        );
    }

    #[test]
    fn coefficient_parsing_and_display() {
        assert_eq!("z2".parse::<CoefficientGroup>().unwrap(), CoefficientGroup::Z2);
        assert_eq!("U(1)".parse::<CoefficientGroup>().unwrap(), CoefficientGroup::U1);
        assert!("z3".parse::<CoefficientGroup>().is_err());
        assert_eq!(Cohomology::Mod2 { dimension: 0 }.to_string(), "0");
        assert_eq!(Cohomology::Mod2 { dimension: 4 }.to_string(), "Z2^4");
        assert_eq!(
            Cohomology::Circle { circle_rank: 2, torsion: t(&[2, 2]) }.to_string(),
            "U(1)^2 x Z2^2"
        );
    }

    #[test]
    fn unknown_complex_lists_available() {
        let err = load_complex("p6m").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("p6m") && msg.contains("pg"), "{msg}");
    }
}
