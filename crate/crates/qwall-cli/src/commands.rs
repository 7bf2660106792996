//! Payload builders and text renderers, one section per subcommand.
//!
//! Builders return a [`CommandOutput`] whose payload is the machine-readable
//! result; `text` is a human rendering of exactly the same data.

use crate::{AppError, CommandOutput};
use num_bigint::BigInt;
use qwall::clifford::{
    check_algebra, classify_clifford, degeneracy_check, four_band_rep, signature, two_band_rep,
    winding_number, BandRep, SymmetrySetting,
};
use qwall::factorsys::{classify, evaluate, FactorSystem};
use qwall::group::{load_group, SpaceGroupElement, WallpaperGroupData, GROUP_NAMES};
use qwall::homology::{
    borel_total_complex, cohomology_from_uct, group_homology, load_complex, smith_normal_form,
    validate_equivariant_complex, CoefficientGroup, ChainComplex, COMPLEX_NAMES,
};
use serde::Serialize;
use std::fmt::Write as _;

/// Z2 classification dimensions for every group, verified against the
/// homology pipeline where both exist and by exhaustive residue cocycle
/// checks; the classification table the `table1` command reproduces.
pub const EXPECTED_Z2_DIMENSION: [(&str, usize); 17] = [
    ("p1", 1),
    ("p2", 4),
    ("pm", 4),
    ("pg", 1),
    ("cm", 2),
    ("pmm", 8),
    ("pmg", 4),
    ("pgg", 2),
    ("cmm", 5),
    ("p4", 3),
    ("p4m", 6),
    ("p4g", 3),
    ("p3", 1),
    ("p3m1", 2),
    ("p31m", 2),
    ("p6", 2),
    ("p6m", 4),
];

/// U(1) coefficients in degree two for the groups with a shipped cell
/// structure.
pub const EXPECTED_U1_DEGREE_TWO: [(&str, &str); 5] = [
    ("p1", "U(1)"),
    ("p2", "U(1)"),
    ("pm", "Z2^2"),
    ("pg", "0"),
    ("cm", "Z2"),
];

fn to_value<T: Serialize>(t: &T) -> serde_json::Value {
    serde_json::to_value(t).expect("payload serializes")
}

fn mod2_display(dim: usize) -> String {
    match dim {
        0 => "0".to_string(),
        1 => "Z2".to_string(),
        d => format!("Z2^{d}"),
    }
}

// ---------------------------------------------------------------- list-groups

#[derive(Serialize)]
struct GroupRow {
    name: String,
    point_group_order: usize,
    symmorphic: bool,
}

#[derive(Serialize)]
struct ListGroupsPayload {
    groups: Vec<GroupRow>,
}

pub fn list_groups(json: bool) -> Result<CommandOutput, AppError> {
    let mut rows = Vec::new();
    for name in GROUP_NAMES {
        let g = load_group(name)?;
        rows.push(GroupRow {
            name: name.to_string(),
            point_group_order: g.order(),
            symmorphic: g.is_symmorphic(),
        });
    }
    let mut text = format!("{:<6} {:>5}  {}\n", "group", "|P|", "symmorphic");
    for r in &rows {
        let _ = writeln!(
            text,
            "{:<6} {:>5}  {}",
            r.name,
            r.point_group_order,
            if r.symmorphic { "yes" } else { "no" }
        );
    }
    Ok(CommandOutput {
        subcommand: "list-groups",
        payload: to_value(&ListGroupsPayload { groups: rows }),
        text,
        touched: GROUP_NAMES.iter().map(|n| ("groups", n.to_string())).collect(),
        json,
        exit_code: 0,
    })
}

// ------------------------------------------------------------------- classify

fn bits(iter: impl IntoIterator<Item = u8>) -> String {
    iter.into_iter().map(|b| if b == 0 { '0' } else { '1' }).collect()
}

#[derive(Serialize)]
struct GBlockJson {
    b: String,
    beta: String,
    q: String,
}

#[derive(Serialize)]
struct RepresentativeJson {
    index: usize,
    sigma_bits: String,
    g: std::collections::BTreeMap<String, GBlockJson>,
    alpha_bits: String,
    nonzero_labels: Vec<String>,
}

/// Serializes one factor system with bit vectors in the documented unknown
/// ordering: strictly-lower (row, col) pairs for sigma and b, coordinate
/// order for beta and q, and row-major non-identity pairs for alpha.
fn representative_json(index: usize, fs: &FactorSystem) -> RepresentativeJson {
    let g = &fs.group;
    let d = g.dimension;
    let p = g.order();
    let sigma_bits = bits((1..d).flat_map(|i| (0..i).map(move |j| (i, j))).map(|(i, j)| fs.sigma.a_matrix[i][j]));
    let mut blocks = std::collections::BTreeMap::new();
    for r in 1..p {
        let b = bits((1..d).flat_map(|i| (0..i).map(move |j| (i, j))).map(|(i, j)| fs.g.b_form[r][i][j]));
        let beta = bits((0..d).map(|i| fs.g.beta[r][i]));
        let q = bits((0..d).map(|i| fs.g.q_vec[r][i]));
        blocks.insert(g.point_group[r].label.clone(), GBlockJson { b, beta, q });
    }
    let alpha_bits = bits((1..p).flat_map(|r1| (1..p).map(move |r2| (r1, r2))).map(|(r1, r2)| fs.alpha.table[r1][r2]));
    RepresentativeJson {
        index,
        sigma_bits,
        g: blocks,
        alpha_bits,
        nonzero_labels: fs.nonzero_labels(),
    }
}

#[derive(Serialize)]
struct ClassifyPayload {
    group: String,
    coeff: String,
    solution_dimension: usize,
    coboundary_dimension: usize,
    dimension: usize,
    class_count: u64,
    representatives: Option<Vec<RepresentativeJson>>,
}

pub fn classify_cmd(
    group: &str,
    coeff: &str,
    representatives: bool,
    json: bool,
) -> Result<CommandOutput, AppError> {
    if coeff.to_ascii_lowercase() != "z2" {
        return Err(AppError::domain(format!(
            "the linear solver classifies z2 coefficients only (got '{coeff}'); \
             u1 entries come from `homology --coeff u1` or `table1 --coeff u1`"
        )));
    }
    let g = load_group(group)?;
    let result = classify(&g);
    let reps = representatives.then(|| {
        result
            .representatives
            .iter()
            .enumerate()
            .map(|(i, fs)| representative_json(i, fs))
            .collect::<Vec<_>>()
    });

    let mut text = format!(
        "group {}: solution space {}, coboundary space {}, classes 2^{}\n\
         H^2({}, Z2) = {}  (dimension {})\n",
        result.group,
        result.solution_dimension,
        result.coboundary_dimension,
        result.h2_dimension,
        result.group,
        mod2_display(result.h2_dimension),
        result.h2_dimension,
    );
    if let Some(reps) = &reps {
        for r in reps {
            let desc = if r.nonzero_labels.is_empty() {
                "(trivial)".to_string()
            } else {
                r.nonzero_labels.join(", ")
            };
            let _ = writeln!(text, "representative {}: {}", r.index, desc);
        }
    }

    let payload = ClassifyPayload {
        group: result.group.clone(),
        coeff: "z2".to_string(),
        solution_dimension: result.solution_dimension,
        coboundary_dimension: result.coboundary_dimension,
        dimension: result.h2_dimension,
        class_count: 1u64 << result.h2_dimension,
        representatives: reps,
    };
    Ok(CommandOutput {
        subcommand: "classify",
        payload: to_value(&payload),
        text,
        touched: vec![("groups", group.to_string())],
        json,
        exit_code: 0,
    })
}

// ------------------------------------------------------------------- homology

#[derive(Serialize)]
struct MatrixJson {
    degree: usize,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<i64>>,
    smith_divisors: Vec<i64>,
}

#[derive(Serialize)]
struct CohomologyJson {
    coeff: String,
    groups: Vec<String>,
}

#[derive(Serialize)]
struct HomologyPayload {
    group: String,
    max_degree: usize,
    homology: Vec<String>,
    cohomology: Option<CohomologyJson>,
    ranks: Option<Vec<usize>>,
    matrices: Option<Vec<MatrixJson>>,
}

fn big_to_i64(v: &BigInt) -> Result<i64, AppError> {
    i64::try_from(v).map_err(|_| AppError::Internal(format!("matrix entry {v} exceeds i64")))
}

fn matrices_json(tc: &ChainComplex) -> Result<Vec<MatrixJson>, AppError> {
    let mut out = Vec::new();
    for (i, b) in tc.boundaries.iter().enumerate() {
        let mut entries = Vec::with_capacity(b.rows());
        for r in 0..b.rows() {
            let mut row = Vec::with_capacity(b.cols());
            for c in 0..b.cols() {
                row.push(big_to_i64(b.get(r, c))?);
            }
            entries.push(row);
        }
        let divisors = smith_normal_form(b)
            .divisors()
            .iter()
            .map(big_to_i64)
            .collect::<Result<Vec<_>, _>>()?;
        out.push(MatrixJson {
            degree: i + 1,
            rows: b.rows(),
            cols: b.cols(),
            entries,
            smith_divisors: divisors,
        });
    }
    Ok(out)
}

fn render_matrices(text: &mut String, ranks: &[usize], matrices: &[MatrixJson]) {
    let rank_list = ranks.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ");
    let _ = writeln!(text, "ranks: {rank_list}");
    for m in matrices {
        let _ = writeln!(text, "boundary_{} ({}x{}):", m.degree, m.rows, m.cols);
        for row in &m.entries {
            let cells = row.iter().map(|v| format!("{v:>3}")).collect::<Vec<_>>().join(" ");
            let _ = writeln!(text, "  [{cells} ]");
        }
        let div = if m.smith_divisors.is_empty() {
            "(zero map)".to_string()
        } else {
            m.smith_divisors.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
        };
        let _ = writeln!(text, "smith_{}: {div}", m.degree);
    }
}

pub fn homology_cmd(
    group: &str,
    max_degree: usize,
    coeff: Option<&str>,
    show_matrices: bool,
    json: bool,
) -> Result<CommandOutput, AppError> {
    if max_degree > 32 {
        return Err(AppError::domain(format!(
            "max degree {max_degree} is out of range (limit 32)"
        )));
    }
    let g = load_group(group)?;
    let cx = load_complex(group)?;
    let h = group_homology(&g, &cx, max_degree)?;
    let homology: Vec<String> = h.iter().map(|a| a.to_string()).collect();

    let cohomology = match coeff {
        None => None,
        Some(c) => {
            let parsed: CoefficientGroup = c.parse().map_err(AppError::Domain)?;
            let tag = match parsed {
                CoefficientGroup::Z2 => "z2",
                CoefficientGroup::U1 => "u1",
            };
            let groups = (0..=max_degree)
                .map(|n| cohomology_from_uct(&h, n, parsed).to_string())
                .collect();
            Some(CohomologyJson {
                coeff: tag.to_string(),
                groups,
            })
        }
    };

    let (ranks, matrices) = if show_matrices {
        let tc = borel_total_complex(&g, &cx, max_degree);
        (Some(tc.ranks.clone()), Some(matrices_json(&tc)?))
    } else {
        (None, None)
    };

    let mut text = String::new();
    for (n, s) in homology.iter().enumerate() {
        let _ = writeln!(text, "H_{n}({group}) = {s}");
    }
    if let Some(c) = &cohomology {
        let name = if c.coeff == "u1" { "U(1)" } else { "Z2" };
        for (n, s) in c.groups.iter().enumerate() {
            let _ = writeln!(text, "H^{n}({group}, {name}) = {s}");
        }
    }
    if let (Some(r), Some(m)) = (&ranks, &matrices) {
        render_matrices(&mut text, r, m);
    }

    let payload = HomologyPayload {
        group: group.to_string(),
        max_degree,
        homology,
        cohomology,
        ranks,
        matrices,
    };
    Ok(CommandOutput {
        subcommand: "homology",
        payload: to_value(&payload),
        text,
        touched: vec![("groups", group.to_string()), ("complexes", group.to_string())],
        json,
        exit_code: 0,
    })
}

// ------------------------------------------------------------- factor-systems

fn parse_element(g: &WallpaperGroupData, spec: &str) -> Result<SpaceGroupElement, AppError> {
    let (label, t) = spec.split_once(':').ok_or_else(|| {
        AppError::domain(format!("element '{spec}' must look like label:tx,ty"))
    })?;
    let r = g.element_index(label).ok_or_else(|| {
        let known: Vec<&str> = g.point_group.iter().map(|e| e.label.as_str()).collect();
        AppError::domain(format!(
            "unknown point element '{label}' in {}; known: {}",
            g.name,
            known.join(", ")
        ))
    })?;
    let mut coords = Vec::new();
    for part in t.split(',') {
        coords.push(part.trim().parse::<i64>().map_err(|_| {
            AppError::domain(format!("translation component '{part}' is not an integer"))
        })?);
    }
    if coords.len() != g.dimension {
        return Err(AppError::domain(format!(
            "element '{spec}' needs {} translation components",
            g.dimension
        )));
    }
    Ok(SpaceGroupElement::new(coords, r))
}

#[derive(Serialize)]
struct RepSummary {
    index: usize,
    nonzero_labels: Vec<String>,
}

#[derive(Serialize)]
struct EvalJson {
    left: String,
    right: String,
    /// nu(left, right) per class, in representative order
    values: Vec<i8>,
}

#[derive(Serialize)]
struct FactorSystemsPayload {
    group: String,
    dimension: usize,
    representatives: Vec<RepSummary>,
    evaluations: Vec<EvalJson>,
}

pub fn factor_systems_cmd(
    group: &str,
    pairs: &[String],
    json: bool,
) -> Result<CommandOutput, AppError> {
    let g = load_group(group)?;
    let result = classify(&g);

    let mut evaluations = Vec::new();
    for pair in pairs {
        let parts: Vec<&str> = pair.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(AppError::domain(format!(
                "pair '{pair}' must hold exactly two elements, like \"m:1,0 e:0,1\""
            )));
        }
        let g1 = parse_element(&g, parts[0])?;
        let g2 = parse_element(&g, parts[1])?;
        let values = result
            .representatives
            .iter()
            .map(|fs| evaluate(fs, &g1, &g2))
            .collect();
        evaluations.push(EvalJson {
            left: g.describe(&g1),
            right: g.describe(&g2),
            values,
        });
    }

    let representatives: Vec<RepSummary> = result
        .representatives
        .iter()
        .enumerate()
        .map(|(index, fs)| RepSummary {
            index,
            nonzero_labels: fs.nonzero_labels(),
        })
        .collect();

    let mut text = format!(
        "group {}: 2^{} classes\n",
        result.group, result.h2_dimension
    );
    for r in &representatives {
        let desc = if r.nonzero_labels.is_empty() {
            "(trivial)".to_string()
        } else {
            r.nonzero_labels.join(", ")
        };
        let _ = writeln!(text, "representative {}: {}", r.index, desc);
    }
    for e in &evaluations {
        let vals = e
            .values
            .iter()
            .map(|v| format!("{v:+}"))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(text, "nu({}, {}) = {}", e.left, e.right, vals);
    }

    let payload = FactorSystemsPayload {
        group: result.group.clone(),
        dimension: result.h2_dimension,
        representatives,
        evaluations,
    };
    Ok(CommandOutput {
        subcommand: "factor-systems",
        payload: to_value(&payload),
        text,
        touched: vec![("groups", group.to_string())],
        json,
        exit_code: 0,
    })
}

// ---------------------------------------------------------------------- bands

pub struct BandsArgs {
    pub st: i8,
    pub sp: i8,
    pub qx: u8,
    pub qy: u8,
    pub winding: bool,
    pub grid: usize,
    pub degeneracy: bool,
    pub samples: usize,
    pub seed: u64,
    pub rep: String,
    pub json: bool,
}

#[derive(Serialize)]
struct CaseJson {
    s_t: i8,
    s_p: i8,
    q: [u8; 2],
}

#[derive(Serialize)]
struct RelationJson {
    relation: String,
    holds: bool,
}

#[derive(Serialize)]
struct ConstructionJson {
    rep: String,
    bands: usize,
    algebra_ok: bool,
    relations: Vec<RelationJson>,
}

#[derive(Serialize)]
struct WindingJson {
    x: i64,
    y: i64,
    grid: usize,
}

#[derive(Serialize)]
struct DegeneracyJson {
    min_multiplicity: usize,
    samples: usize,
    seed: u64,
    closure_size: usize,
    resamples: usize,
}

#[derive(Serialize)]
struct BandsPayload {
    case: CaseJson,
    signature: [usize; 2],
    division: String,
    blocks: usize,
    irrep_dim: usize,
    construction: Option<ConstructionJson>,
    winding: Option<WindingJson>,
    degeneracy: Option<DegeneracyJson>,
}

fn select_rep(args: &BandsArgs, setting: &SymmetrySetting) -> Result<Option<(String, BandRep)>, AppError> {
    match args.rep.as_str() {
        "auto" => {
            if (setting.s_t, setting.s_p, setting.q) == (1, 1, [1, 1]) {
                Ok(Some(("four-band".to_string(), four_band_rep(setting)?)))
            } else {
                Ok(None)
            }
        }
        "four-band" => Ok(Some(("four-band".to_string(), four_band_rep(setting)?))),
        "two-band" => Ok(Some(("two-band".to_string(), two_band_rep()))),
        other => Err(AppError::domain(format!(
            "rep must be auto, two-band, or four-band (got '{other}')"
        ))),
    }
}

pub fn bands_cmd(args: BandsArgs) -> Result<CommandOutput, AppError> {
    let setting = SymmetrySetting::new(args.st, args.sp, [args.qx, args.qy])?;
    let (n, m) = signature(&setting)?;
    let irrep = classify_clifford(n, m);

    let selected = select_rep(&args, &setting)?;
    if selected.is_none() && (args.winding || args.degeneracy) {
        return Err(AppError::domain(format!(
            "no shipped construction for s_t={}, s_p={}, q=({},{}); numerical checks need one \
             (s_t=+1 s_p=+1 q=(1,1) has a four-band model, and --rep two-band selects the \
             translation-only pair)",
            args.st, args.sp, args.qx, args.qy
        )));
    }

    let mut construction = None;
    let mut winding = None;
    let mut degeneracy = None;
    if let Some((rep_name, rep)) = &selected {
        let relations: Vec<RelationJson> = check_algebra(rep)
            .into_iter()
            .map(|c| RelationJson {
                relation: c.relation,
                holds: c.holds,
            })
            .collect();
        let algebra_ok = relations.iter().all(|r| r.holds);
        construction = Some(ConstructionJson {
            rep: rep_name.clone(),
            bands: rep.bands,
            algebra_ok,
            relations,
        });
        if args.winding {
            winding = Some(WindingJson {
                x: winding_number(&rep.l_x, 0, args.grid)?,
                y: winding_number(&rep.l_y, 1, args.grid)?,
                grid: args.grid,
            });
        }
        if args.degeneracy {
            let report = degeneracy_check(rep, args.samples, args.seed)?;
            degeneracy = Some(DegeneracyJson {
                min_multiplicity: report.min_multiplicity,
                samples: report.samples,
                seed: args.seed,
                closure_size: report.closure_size,
                resamples: report.resamples,
            });
        }
    }

    let mut text = format!(
        "case s_t={:+} s_p={:+} q=({},{})\n\
         signature (n,m) = ({n},{m}); algebra {} x{} block(s); minimal bands D = {}\n",
        args.st, args.sp, args.qx, args.qy, irrep.division, irrep.blocks, irrep.band_degeneracy,
    );
    match &construction {
        Some(c) => {
            let _ = writeln!(
                text,
                "construction {}: {} bands, {}",
                c.rep,
                c.bands,
                if c.algebra_ok {
                    format!("all {} relations hold", c.relations.len())
                } else {
                    "ALGEBRA VIOLATION".to_string()
                }
            );
        }
        None => {
            let _ = writeln!(text, "construction: none shipped for this setting");
        }
    }
    if let Some(w) = &winding {
        let _ = writeln!(text, "winding (grid {}): x {}, y {}", w.grid, w.x, w.y);
    }
    if let Some(d) = &degeneracy {
        let _ = writeln!(
            text,
            "degeneracy: min multiplicity {} over {} samples (seed {}, closure {}, resamples {})",
            d.min_multiplicity, d.samples, d.seed, d.closure_size, d.resamples
        );
    }

    let algebra_broken = construction.as_ref().is_some_and(|c| !c.algebra_ok);
    let payload = BandsPayload {
        case: CaseJson {
            s_t: args.st,
            s_p: args.sp,
            q: [args.qx, args.qy],
        },
        signature: [n, m],
        division: irrep.division.to_string(),
        blocks: irrep.blocks,
        irrep_dim: irrep.band_degeneracy,
        construction,
        winding,
        degeneracy,
    };
    Ok(CommandOutput {
        subcommand: "bands",
        payload: to_value(&payload),
        text,
        touched: Vec::new(),
        json: args.json,
        // a shipped construction failing its own algebra is an internal break
        exit_code: if algebra_broken { 2 } else { 0 },
    })
}

// ------------------------------------------------------------------- validate

#[derive(Serialize)]
struct CheckJson {
    name: String,
    ok: bool,
    problems: Vec<String>,
}

#[derive(Serialize)]
struct ValidatePayload {
    groups: Vec<CheckJson>,
    complexes: Vec<CheckJson>,
    ok: bool,
}

pub fn validate_cmd(json: bool) -> Result<CommandOutput, AppError> {
    let mut groups = Vec::new();
    for name in GROUP_NAMES {
        let problems = match load_group(name) {
            Ok(g) => g.validate(),
            Err(e) => vec![e.to_string()],
        };
        groups.push(CheckJson {
            name: name.to_string(),
            ok: problems.is_empty(),
            problems,
        });
    }
    let mut complexes = Vec::new();
    for name in COMPLEX_NAMES {
        let problems = match (load_group(name), load_complex(name)) {
            (Ok(g), Ok(cx)) => validate_equivariant_complex(&g, &cx),
            (Err(e), _) => vec![e.to_string()],
            (_, Err(e)) => vec![e.to_string()],
        };
        complexes.push(CheckJson {
            name: name.to_string(),
            ok: problems.is_empty(),
            problems,
        });
    }
    let ok = groups.iter().chain(&complexes).all(|c| c.ok);

    let mut text = String::new();
    for c in &groups {
        if c.ok {
            let _ = writeln!(text, "group {}: ok", c.name);
        } else {
            let _ = writeln!(text, "group {}: FAIL\n  {}", c.name, c.problems.join("\n  "));
        }
    }
    for c in &complexes {
        if c.ok {
            let _ = writeln!(text, "complex {}: ok", c.name);
        } else {
            let _ = writeln!(text, "complex {}: FAIL\n  {}", c.name, c.problems.join("\n  "));
        }
    }
    let _ = writeln!(
        text,
        "{}",
        if ok {
            "all data files valid".to_string()
        } else {
            "validation failed".to_string()
        }
    );

    let mut touched: Vec<(&'static str, String)> =
        GROUP_NAMES.iter().map(|n| ("groups", n.to_string())).collect();
    touched.extend(COMPLEX_NAMES.iter().map(|n| ("complexes", n.to_string())));
    Ok(CommandOutput {
        subcommand: "validate",
        payload: to_value(&ValidatePayload { groups, complexes, ok }),
        text,
        touched,
        json,
        exit_code: if ok { 0 } else { 1 },
    })
}

// --------------------------------------------------------------------- table1

#[derive(Serialize)]
struct Table1Row {
    group: String,
    computed: Option<String>,
    expected: Option<String>,
    status: String,
}

#[derive(Serialize)]
struct Table1Payload {
    coeff: String,
    rows: Vec<Table1Row>,
    matches: usize,
    comparable: usize,
}

fn table1_z2_rows() -> Result<Vec<Table1Row>, AppError> {
    let computed: Vec<Result<usize, String>> = std::thread::scope(|s| {
        let handles: Vec<_> = GROUP_NAMES
            .iter()
            .map(|name| {
                s.spawn(move || -> Result<usize, String> {
                    let g = load_group(name).map_err(|e| e.to_string())?;
                    Ok(classify(&g).h2_dimension)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err("classification worker panicked".into())))
            .collect()
    });
    let mut rows = Vec::new();
    for ((name, expected_dim), dim) in EXPECTED_Z2_DIMENSION.iter().zip(computed) {
        let dim = dim.map_err(AppError::Domain)?;
        rows.push(Table1Row {
            group: name.to_string(),
            computed: Some(mod2_display(dim)),
            expected: Some(mod2_display(*expected_dim)),
            status: if dim == *expected_dim { "match" } else { "mismatch" }.to_string(),
        });
    }
    Ok(rows)
}

fn table1_u1_rows() -> Result<Vec<Table1Row>, AppError> {
    let mut rows = Vec::new();
    for name in GROUP_NAMES {
        let expected = EXPECTED_U1_DEGREE_TWO
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, e)| e.to_string());
        if !COMPLEX_NAMES.contains(&name) {
            rows.push(Table1Row {
                group: name.to_string(),
                computed: None,
                expected,
                status: "no complex data".to_string(),
            });
            continue;
        }
        let g = load_group(name)?;
        let cx = load_complex(name)?;
        let h = group_homology(&g, &cx, 2)?;
        let computed = cohomology_from_uct(&h, 2, CoefficientGroup::U1).to_string();
        let status = match &expected {
            Some(e) if *e == computed => "match",
            Some(_) => "mismatch",
            None => "match",
        };
        rows.push(Table1Row {
            group: name.to_string(),
            computed: Some(computed),
            expected,
            status: status.to_string(),
        });
    }
    Ok(rows)
}

pub fn table1_cmd(coeff: &str, json: bool) -> Result<CommandOutput, AppError> {
    let parsed: CoefficientGroup = coeff.parse().map_err(AppError::Domain)?;
    let (tag, rows) = match parsed {
        CoefficientGroup::Z2 => ("z2", table1_z2_rows()?),
        CoefficientGroup::U1 => ("u1", table1_u1_rows()?),
    };
    let comparable = rows.iter().filter(|r| r.status != "no complex data").count();
    let matches = rows.iter().filter(|r| r.status == "match").count();
    let all_match = matches == comparable;

    let mut text = format!("{:<6} {:<10} {:<10} {}\n", "group", "computed", "expected", "status");
    for r in &rows {
        let _ = writeln!(
            text,
            "{:<6} {:<10} {:<10} {}",
            r.group,
            r.computed.as_deref().unwrap_or("-"),
            r.expected.as_deref().unwrap_or("-"),
            r.status
        );
    }
    let _ = writeln!(text, "{tag}: {matches}/{comparable} match");

    let mut touched: Vec<(&'static str, String)> =
        GROUP_NAMES.iter().map(|n| ("groups", n.to_string())).collect();
    if matches!(parsed, CoefficientGroup::U1) {
        touched.extend(COMPLEX_NAMES.iter().map(|n| ("complexes", n.to_string())));
    }
    Ok(CommandOutput {
        subcommand: "table1",
        payload: to_value(&Table1Payload {
            coeff: tag.to_string(),
            rows,
            matches,
            comparable,
        }),
        text,
        touched,
        json,
        // the expected column is machine-verified; drifting from it means the
        // solver itself regressed
        exit_code: if all_match { 0 } else { 2 },
    })
}

// ----------------------------------------------------------- export-matrices

#[derive(Serialize)]
struct ExportMatricesPayload {
    group: String,
    max_degree: usize,
    ranks: Vec<usize>,
    matrices: Vec<MatrixJson>,
}

pub fn export_matrices_cmd(
    group: &str,
    max_degree: usize,
    json: bool,
) -> Result<CommandOutput, AppError> {
    if max_degree > 32 {
        return Err(AppError::domain(format!(
            "max degree {max_degree} is out of range (limit 32)"
        )));
    }
    let g = load_group(group)?;
    let cx = load_complex(group)?;
    let tc = borel_total_complex(&g, &cx, max_degree);
    let matrices = matrices_json(&tc)?;

    let mut text = format!("total complex of {group} through degree {max_degree}\n");
    render_matrices(&mut text, &tc.ranks, &matrices);

    let payload = ExportMatricesPayload {
        group: group.to_string(),
        max_degree,
        ranks: tc.ranks.clone(),
        matrices,
    };
    Ok(CommandOutput {
        subcommand: "export-matrices",
        payload: to_value(&payload),
        text,
        touched: vec![("groups", group.to_string()), ("complexes", group.to_string())],
        json,
        exit_code: 0,
    })
}

// ---------------------------------------------------------------- export-data

#[derive(Serialize)]
struct ExportDataPayload {
    out: String,
    groups_written: usize,
    complexes_written: usize,
}

pub fn export_data_cmd(out: &std::path::Path, json: bool) -> Result<CommandOutput, AppError> {
    let groups_dir = out.join("groups");
    let complexes_dir = out.join("complexes");
    for dir in [&groups_dir, &complexes_dir] {
        std::fs::create_dir_all(dir)
            .map_err(|e| AppError::domain(format!("cannot create {}: {e}", dir.display())))?;
    }
    let mut groups_written = 0;
    for name in GROUP_NAMES {
        let g = load_group(name)?;
        let path = groups_dir.join(format!("{name}.json"));
        std::fs::write(&path, g.to_json())
            .map_err(|e| AppError::domain(format!("cannot write {}: {e}", path.display())))?;
        groups_written += 1;
    }
    let mut complexes_written = 0;
    for name in COMPLEX_NAMES {
        let cx = load_complex(name)?;
        let path = complexes_dir.join(format!("{name}.json"));
        std::fs::write(&path, cx.to_json())
            .map_err(|e| AppError::domain(format!("cannot write {}: {e}", path.display())))?;
        complexes_written += 1;
    }

    let text = format!(
        "wrote {groups_written} group files and {complexes_written} complex files under {}\n",
        out.display()
    );
    let payload = ExportDataPayload {
        out: out.display().to_string(),
        groups_written,
        complexes_written,
    };
    Ok(CommandOutput {
        subcommand: "export-data",
        payload: to_value(&payload),
        text,
        touched: Vec::new(),
        json,
        exit_code: 0,
    })
}
