use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use dsfaces::bases::{basis, coords, fbar_fdown_corrected, fh_bar, table1_entry, BasisKind, Table1Row, VectorKind};
use dsfaces::enumeration::{
    ds_fvectors, enumerate_eigen_lattice, estimate_search, oracle_box, oracle_powerset, reference_table4,
    table4_row, EnumOptions, EnumerationReport, OracleSets, ParityClass, PointList, Table4Row,
};
use dsfaces::faces::{classical_fh, eta, is_complex, is_ds, long_f, long_h};
use dsfaces::linalg::{
    build_matrix, char_poly_u, char_poly_u_krawtchouk, char_poly_u_product_form, u_eigen_multiplicities,
};
use dsfaces::polytopes::{contains, multiplicity, push_to_h, BoundsVector, PolytopeHandle, PolytopeLabel};
use dsfaces::projectors::{
    biorthogonality_check, norm_sq, norm_sq_direct, rank1_projector, rank1_projector_entry,
    rank1_projector_entry_corrected, subspace_projector, ProjectorMatrix,
};
use dsfaces::report::{CheckReport, Failure};
use dsfaces::spaces::{cone_generators, eigenspace_basis, hyperplane_basis, pi, SubspaceBasis};
use dsfaces::verify::{verify, Formulas, Suite};
use dsfaces::{ExactMatrix, FaceSystem, FaceSystemDoc, IntVector, MatrixName};

use crate::render::{coordinate_header, tuple, Csv, Report};
use crate::{CliError, Command, OracleKind, RunConfig, DEFAULT_MAX_M, EXIT_FAILURE, EXIT_OK, MAX_M_ENV};

type Rendered = Result<(String, i32), CliError>;

pub(crate) fn dispatch(config: &RunConfig) -> Rendered {
    let fmt = config.format;
    let out = match &config.command {
        Command::Matrix { name, m } => matrix(name, *m)?,
        Command::Charpoly { m } => charpoly(*m)?,
        Command::Vectors { faces } => vectors(faces)?,
        Command::Basis { kind, m } => basis_dump(kind, *m)?,
        Command::Coords { basis, m, vector } => coords_of(basis, *m, vector)?,
        Command::Table1 {
            m,
            vector,
            basis,
            corrected,
        } => table1(*m, vector.as_deref(), basis.as_deref(), *corrected)?,
        Command::Spaces { m } => spaces(*m)?,
        Command::Projector {
            which,
            m,
            rank1,
            corrected,
        } => projector(which, *m, *rank1, *corrected)?,
        Command::Norms { m } => norms(*m)?,
        Command::Contains { polytope, m, point } => membership(polytope, *m, point)?,
        Command::Enumerate {
            m,
            class,
            count_only,
            multiplicities,
            workers,
        } => enumerate(*m, class, *count_only, *multiplicities, workers.workers)?,
        Command::Lattice {
            m,
            bounds,
            h,
            count_only,
            workers,
        } => lattice(*m, bounds.as_deref(), *h, *count_only, workers.workers)?,
        Command::Table4 { min_m, max_m, workers } => table4(*min_m, *max_m, workers.workers)?,
        Command::Oracle { m, kind } => oracle(*m, *kind)?,
        Command::Genfun { m } => genfun(*m)?,
        Command::Verify { suite, m, corrected } => run_verify(suite, m, *corrected)?,
    };
    let code = out.code;
    Ok((out.render(fmt)?, code))
}

/// A finished command: its report in every supported format plus exit code.
struct Done {
    code: i32,
    json: Box<dyn FnOnce(crate::Format) -> Result<String, CliError>>,
}

impl Done {
    fn new<T: Serialize + 'static>(
        command: &'static str,
        code: i32,
        body: T,
        text: impl FnOnce(&T) -> String + 'static,
        csv: Option<fn(&T) -> Csv>,
    ) -> Self {
        Done {
            code,
            json: Box::new(move |fmt| {
                let body = body;
                let b = &body;
                Report {
                    command,
                    body: b,
                    text: Box::new(move || text(b)),
                    csv: csv.map(|f| Box::new(move || f(b)) as Box<dyn FnOnce() -> Csv>),
                }
                .render(fmt)
            }),
        }
    }

    fn render(self, fmt: crate::Format) -> Result<String, CliError> {
        (self.json)(fmt)
    }
}

fn status(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

fn max_m() -> Result<usize, CliError> {
    match std::env::var(MAX_M_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("{MAX_M_ENV} must be a nonnegative integer, got {s:?}"))),
        Err(_) => Ok(DEFAULT_MAX_M),
    }
}

/// Refuses enumerations above the configured cap, reporting the search size
/// in the dimension that would actually be scanned.
fn check_cap(m: usize, scanned_m: usize) -> Result<(), CliError> {
    let cap = max_m()?;
    if m > cap {
        return Err(CliError::Cap(format!(
            "m = {m} exceeds the enumeration cap {cap} (raise it with {MAX_M_ENV}); estimated cost: {}",
            estimate_search(scanned_m)
        )));
    }
    Ok(())
}

fn parse_rationals(s: &str) -> Result<Vec<BigRational>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<BigRational>()
                .map_err(|_| CliError::Input(format!("not an exact rational: {t:?}")))
        })
        .collect()
}

fn parse_m_range(s: &str) -> Result<RangeInclusive<usize>, CliError> {
    let bad = || CliError::Input(format!("expected m or a..b, got {s:?}"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let range = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?,
        None => {
            let m = num(s)?;
            m..=m
        }
    };
    if range.is_empty() {
        return Err(bad());
    }
    Ok(range)
}

fn formulas(corrected: bool) -> Formulas {
    if corrected {
        Formulas::Corrected
    } else {
        Formulas::Printed
    }
}

fn matrix_rows(a: &ExactMatrix) -> Csv {
    Csv {
        header: None,
        rows: a.to_string_rows(),
    }
}

fn vector_rows(dim: usize, vs: &[IntVector]) -> Csv {
    Csv {
        header: Some(coordinate_header(dim)),
        rows: vs.iter().map(|v| v.0.iter().map(|x| x.to_string()).collect()).collect(),
    }
}

#[derive(Serialize)]
struct MatrixDump {
    name: &'static str,
    m: usize,
    rows: Vec<Vec<String>>,
}

fn matrix(name: &str, m: usize) -> Result<Done, CliError> {
    let name: MatrixName = name.parse().map_err(CliError::Input)?;
    let a = build_matrix(name, m)?;
    let body = MatrixDump {
        name: name.as_str(),
        m,
        rows: a.to_string_rows(),
    };
    Ok(Done::new(
        "matrix",
        EXIT_OK,
        body,
        |b| b.rows.iter().map(|r| r.join(" ") + "\n").collect(),
        Some(|b| Csv {
            header: None,
            rows: b.rows.clone(),
        }),
    ))
}

#[derive(Serialize)]
struct CharpolyDump {
    m: usize,
    /// Ascending powers of lambda.
    coefficients: IntVector,
    polynomial: String,
    product_form_agrees: bool,
    krawtchouk_form_agrees: bool,
    multiplicity_plus_one: usize,
    multiplicity_minus_one: usize,
}

fn charpoly(m: usize) -> Result<Done, CliError> {
    let p = char_poly_u(m)?;
    let (plus, minus) = u_eigen_multiplicities(m);
    let body = CharpolyDump {
        m,
        coefficients: IntVector(p.coeffs().to_vec()),
        polynomial: p.to_string(),
        product_form_agrees: char_poly_u_product_form(m)? == p,
        krawtchouk_form_agrees: char_poly_u_krawtchouk(m)? == p,
        multiplicity_plus_one: plus,
        multiplicity_minus_one: minus,
    };
    let code = status(body.product_form_agrees && body.krawtchouk_form_agrees);
    Ok(Done::new(
        "charpoly",
        code,
        body,
        |b| {
            format!(
                "det(lambda I - U({})) = {}\nproduct form agrees: {}\nKrawtchouk form agrees: {}\nmultiplicity of 1: {}, of -1: {}\n",
                b.m, b.polynomial, b.product_form_agrees, b.krawtchouk_form_agrees, b.multiplicity_plus_one,
                b.multiplicity_minus_one
            )
        },
        None,
    ))
}

#[derive(Serialize)]
struct VectorsDump {
    m: usize,
    faces: usize,
    long_f: IntVector,
    long_h: IntVector,
    classical_f: Option<IntVector>,
    classical_h: Option<IntVector>,
    eta: Option<usize>,
    size: Option<usize>,
    complex: bool,
    ds: bool,
}

fn read_faces(path: &Path) -> Result<FaceSystem, CliError> {
    let raw = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let doc: FaceSystemDoc =
        serde_json::from_str(&raw).map_err(|e| CliError::Input(format!("malformed face system {}: {e}", path.display())))?;
    Ok(FaceSystem::from_doc(&doc)?)
}

fn vectors(path: &Path) -> Result<Done, CliError> {
    let phi = read_faces(path)?;
    let classical = classical_fh(&phi).ok();
    let body = VectorsDump {
        m: phi.m(),
        faces: phi.len(),
        long_f: long_f(&phi),
        long_h: long_h(&phi),
        classical_f: classical.as_ref().map(|c| c.0.clone()),
        classical_h: classical.map(|c| c.1),
        eta: eta(&phi).ok(),
        size: phi.size(),
        complex: is_complex(&phi),
        ds: is_ds(&phi),
    };
    Ok(Done::new(
        "vectors",
        EXIT_OK,
        body,
        |b| {
            let opt = |x: &Option<IntVector>| x.as_ref().map_or("-".to_string(), |v| v.to_string());
            let optn = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
            format!(
                "m: {}\nfaces: {}\nlong f: {}\nlong h: {}\nclassical f: {}\nclassical h: {}\neta: {}\nsize: {}\ncomplex: {}\nds: {}\n",
                b.m,
                b.faces,
                b.long_f,
                b.long_h,
                opt(&b.classical_f),
                opt(&b.classical_h),
                optn(b.eta),
                optn(b.size),
                b.complex,
                b.ds
            )
        },
        None,
    ))
}

#[derive(Serialize)]
struct BasisDump {
    kind: &'static str,
    m: usize,
    vectors: Vec<IntVector>,
}

fn basis_dump(kind: &str, m: usize) -> Result<Done, CliError> {
    let kind: BasisKind = kind.parse().map_err(CliError::Input)?;
    let b = basis(kind, m)?;
    let body = BasisDump {
        kind: kind.as_str(),
        m,
        vectors: b.vectors.clone(),
    };
    Ok(Done::new(
        "basis",
        EXIT_OK,
        body,
        |b| b.vectors.iter().map(|v| format!("{v}\n")).collect(),
        Some(|b| vector_rows(b.m + 1, &b.vectors)),
    ))
}

#[derive(Serialize)]
struct CoordsDump {
    basis: &'static str,
    m: usize,
    vector: Vec<String>,
    coordinates: Vec<String>,
    integral: bool,
}

fn coords_of(kind: &str, m: usize, vector: &str) -> Result<Done, CliError> {
    let kind: BasisKind = kind.parse().map_err(CliError::Input)?;
    let w = parse_rationals(vector)?;
    let b = basis(kind, m)?;
    if w.len() != m + 1 {
        return Err(dsfaces::Error::DimensionMismatch {
            expected: m + 1,
            got: w.len(),
        }
        .into());
    }
    let kappa = b.coords(&w)?;
    let body = CoordsDump {
        basis: kind.as_str(),
        m,
        vector: w.iter().map(|x| x.to_string()).collect(),
        integral: kappa.is_integral(),
        coordinates: kappa.0.iter().map(|x| x.to_string()).collect(),
    };
    Ok(Done::new(
        "coords",
        EXIT_OK,
        body,
        |b| format!("{}\n", tuple(&b.coordinates)),
        Some(|b| Csv {
            header: Some(coordinate_header(b.coordinates.len())),
            rows: vec![b.coordinates.clone()],
        }),
    ))
}

#[derive(Serialize)]
struct Table1Entry {
    vector: String,
    basis: &'static str,
    k: usize,
    l: usize,
    closed_form: String,
    exact: String,
    matches: bool,
}

#[derive(Serialize)]
struct Table1Dump {
    m: usize,
    formulas: Formulas,
    entries: Vec<Table1Entry>,
    all_match: bool,
}

fn table1(m: usize, vector: Option<&str>, basis_name: Option<&str>, corrected: bool) -> Result<Done, CliError> {
    let vector: Option<VectorKind> = vector.map(str::parse).transpose().map_err(CliError::Input)?;
    let basis_kind: Option<BasisKind> = basis_name.map(str::parse).transpose().map_err(CliError::Input)?;
    let rows: Vec<Table1Row> = Table1Row::all()
        .into_iter()
        .filter(|r| vector.is_none_or(|v| v == r.vector) && basis_kind.is_none_or(|b| b == r.basis))
        .collect();
    let mut entries = Vec::new();
    for row in rows {
        let fam = basis(row.basis, m)?;
        for k in 1..=m {
            let exact = coords(&fh_bar(row.vector, k, m)?, &fam)?;
            for l in 0..=m {
                let closed = if corrected && row.vector == VectorKind::F && row.basis == BasisKind::FDown {
                    fbar_fdown_corrected(k, l, m)?
                } else {
                    table1_entry(row, k, l, m)?
                };
                entries.push(Table1Entry {
                    vector: row.vector.to_string(),
                    basis: row.basis.as_str(),
                    k,
                    l,
                    matches: closed == exact.0[l],
                    closed_form: closed.to_string(),
                    exact: exact.0[l].to_string(),
                });
            }
        }
    }
    let all_match = entries.iter().all(|e| e.matches);
    let body = Table1Dump {
        m,
        formulas: formulas(corrected),
        entries,
        all_match,
    };
    Ok(Done::new(
        "table1",
        status(all_match),
        body,
        |b| {
            let mut s = String::new();
            for e in &b.entries {
                let mark = if e.matches { "" } else { "  MISMATCH" };
                let _ = writeln!(
                    s,
                    "{}bar {:<7} k={} l={} closed={} exact={}{mark}",
                    e.vector, e.basis, e.k, e.l, e.closed_form, e.exact
                );
            }
            s
        },
        Some(|b| Csv {
            header: Some(["vector", "basis", "k", "l", "closed_form", "exact", "matches"].map(String::from).to_vec()),
            rows: b
                .entries
                .iter()
                .map(|e| {
                    vec![
                        e.vector.clone(),
                        e.basis.to_string(),
                        e.k.to_string(),
                        e.l.to_string(),
                        e.closed_form.clone(),
                        e.exact.clone(),
                        e.matches.to_string(),
                    ]
                })
                .collect(),
        }),
    ))
}

#[derive(Serialize)]
struct SpacesDump {
    m: usize,
    subspaces: Vec<SubspaceBasis>,
    pi: IntVector,
    cone_generators: Vec<IntVector>,
}

fn spaces(m: usize) -> Result<Done, CliError> {
    let body = SpacesDump {
        m,
        subspaces: vec![
            eigenspace_basis(VectorKind::H, m)?,
            hyperplane_basis(VectorKind::H, m)?,
            eigenspace_basis(VectorKind::F, m)?,
            hyperplane_basis(VectorKind::F, m)?,
        ],
        pi: pi(m),
        cone_generators: cone_generators(m)?.generators,
    };
    Ok(Done::new(
        "spaces",
        EXIT_OK,
        body,
        |b| {
            let mut s = String::new();
            for sub in &b.subspaces {
                let _ = writeln!(s, "{} (dim {}):", sub.label, sub.dim());
                for v in &sub.vectors {
                    let _ = writeln!(s, "  {v}");
                }
            }
            let _ = writeln!(s, "pi: {}", b.pi);
            let _ = writeln!(s, "cone generators:");
            for v in &b.cone_generators {
                let _ = writeln!(s, "  {v}");
            }
            s
        },
        None,
    ))
}

#[derive(Serialize)]
struct ProjectorDump {
    which: String,
    m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    formulas: Option<Formulas>,
    rows: ProjectorMatrix,
    /// Rank-1 only: the closed-form entries, compared with `rows`.
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<Vec<Vec<String>>>,
    idempotent: bool,
    symmetric: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    matches: Option<bool>,
}

fn projector(which: &str, m: usize, rank1: Option<usize>, corrected: bool) -> Result<Done, CliError> {
    let kind: VectorKind = which.parse().map_err(CliError::Input)?;
    let body = match rank1 {
        None => {
            let p = subspace_projector(kind, m)?;
            ProjectorDump {
                which: kind.to_string(),
                m,
                k: None,
                formulas: None,
                idempotent: p.is_idempotent(),
                symmetric: p.is_symmetric(),
                rows: p,
                closed_form: None,
                matches: None,
            }
        }
        Some(k) => {
            let p = rank1_projector(kind, k, m)?;
            let mut closed = Vec::with_capacity(m + 1);
            let mut matches = true;
            for i in 0..=m {
                let mut row = Vec::with_capacity(m + 1);
                for j in 0..=m {
                    let e = if corrected {
                        rank1_projector_entry_corrected(kind, k, i, j, m)?
                    } else {
                        rank1_projector_entry(kind, k, i, j, m)?
                    };
                    matches &= &e == p.matrix().get(i, j);
                    row.push(e.to_string());
                }
                closed.push(row);
            }
            ProjectorDump {
                which: kind.to_string(),
                m,
                k: Some(k),
                formulas: Some(formulas(corrected)),
                idempotent: p.is_idempotent(),
                symmetric: p.is_symmetric(),
                rows: p,
                closed_form: Some(closed),
                matches: Some(matches),
            }
        }
    };
    let ok = body.idempotent && body.symmetric && body.matches.unwrap_or(true);
    Ok(Done::new(
        "projector",
        status(ok),
        body,
        |b| {
            let mut s = b.rows.matrix().to_string();
            if let Some(c) = &b.closed_form {
                let _ = writeln!(s, "closed form ({}):", if b.matches == Some(true) { "matches" } else { "MISMATCH" });
                for r in c {
                    let _ = writeln!(s, "{}", r.join(" "));
                }
            }
            s
        },
        Some(|b| matrix_rows(b.rows.matrix())),
    ))
}

#[derive(Serialize)]
struct NormEntry {
    vector: String,
    k: usize,
    closed_form: String,
    direct: String,
}

#[derive(Serialize)]
struct NormsDump {
    m: usize,
    norms: Vec<NormEntry>,
    biorthogonal_pairs: usize,
    biorthogonality_holds: bool,
    passed: bool,
}

fn norms(m: usize) -> Result<Done, CliError> {
    let mut entries = Vec::new();
    let mut passed = true;
    for kind in [VectorKind::F, VectorKind::H] {
        for k in 1..=m {
            let (a, b) = (norm_sq(kind, k, m)?, norm_sq_direct(kind, k, m)?);
            passed &= a == b;
            entries.push(NormEntry {
                vector: kind.to_string(),
                k,
                closed_form: a.to_string(),
                direct: b.to_string(),
            });
        }
    }
    let mut pairs = 0;
    let mut holds = true;
    for s in 1..=m {
        for t in 1..=m {
            if s % 2 != t % 2 {
                pairs += 1;
                holds &= biorthogonality_check(s, t, m)?;
            }
        }
    }
    let body = NormsDump {
        m,
        norms: entries,
        biorthogonal_pairs: pairs,
        biorthogonality_holds: holds,
        passed: passed && holds,
    };
    Ok(Done::new(
        "norms",
        status(body.passed),
        body,
        |b| {
            let mut s = String::new();
            for e in &b.norms {
                let _ = writeln!(s, "|{}bar({})|^2 = {} (direct {})", e.vector, e.k, e.closed_form, e.direct);
            }
            let _ = writeln!(s, "biorthogonality over {} pairs: {}", b.biorthogonal_pairs, b.biorthogonality_holds);
            s
        },
        None,
    ))
}

#[derive(Serialize)]
struct ContainsDump {
    polytope: PolytopeLabel,
    m: usize,
    bounds: BoundsVector,
    point: Vec<String>,
    member: bool,
    /// Face systems with this long f-vector, for integral points of Qf/Pf.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_decimal")]
    multiplicity: Option<BigInt>,
}

fn opt_decimal<S: serde::Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

fn membership(label: &str, m: usize, point: &str) -> Result<Done, CliError> {
    let label: PolytopeLabel = label.parse()?;
    let handle = PolytopeHandle::new(label, m)?;
    let x = parse_rationals(point)?;
    let member = contains(&handle, &x)?;
    let int_point = IntVector::from_rational(&x);
    let mult = match (&int_point, label, member) {
        (Some(z), PolytopeLabel::Qf | PolytopeLabel::Pf, true) if !z.0.iter().any(|v| v.is_negative()) => {
            Some(multiplicity(z, m)?)
        }
        _ => None,
    };
    let body = ContainsDump {
        polytope: label,
        m,
        bounds: handle.bounds.clone(),
        point: x.iter().map(|v| v.to_string()).collect(),
        member,
        multiplicity: mult,
    };
    Ok(Done::new(
        "contains",
        EXIT_OK,
        body,
        |b| {
            let mut s = format!("{} in {:?}({}): {}\n", tuple(&b.point), b.polytope, b.m, b.member);
            if let Some(n) = &b.multiplicity {
                let _ = writeln!(s, "face systems with this f-vector: {n}");
            }
            s
        },
        None,
    ))
}

fn points_text(header: String, points: Option<&PointList>) -> String {
    let mut s = header;
    if let Some(p) = points {
        for x in p.iter() {
            s.push_str(&tuple(x));
            s.push('\n');
        }
    }
    s
}

fn points_csv(dim: usize, points: Option<&PointList>) -> Csv {
    Csv {
        header: Some(coordinate_header(dim)),
        rows: points
            .map(|p| p.iter().map(|x| x.iter().map(|v| v.to_string()).collect()).collect())
            .unwrap_or_default(),
    }
}

fn enumeration_text(r: &EnumerationReport) -> String {
    let mut head = format!("m: {}\n", r.m);
    if let Some(c) = r.parity_class {
        let _ = writeln!(head, "class: {}", serde_json::to_value(c).unwrap().as_str().unwrap_or_default());
    }
    let _ = writeln!(head, "bounds: {}", r.bounds);
    let _ = writeln!(head, "count: {}", r.count);
    if let Some(t) = &r.counts {
        let _ = writeln!(head, "columns: {} {} {}", t.col1, t.col2, t.col3);
    }
    if let Some(t) = &r.total_multiplicity {
        let _ = writeln!(head, "face systems: {t}");
    }
    points_text(head, r.points.as_ref())
}

fn enumerate(m: usize, class: &str, count_only: bool, multiplicities: bool, workers: u64) -> Result<Done, CliError> {
    let class: ParityClass = class.parse()?;
    let scanned = if class == ParityClass::Matching { m } else { m + 1 };
    check_cap(m, scanned)?;
    let opts = EnumOptions {
        workers: workers as usize,
        count_only,
        multiplicities,
    };
    let report = ds_fvectors(m, class, &opts)?;
    Ok(Done::new(
        "enumerate",
        EXIT_OK,
        report,
        enumeration_text,
        Some(|r| points_csv(r.m + 1, r.points.as_ref())),
    ))
}

#[derive(Serialize)]
struct LatticeDump {
    /// `f` for the points as found, `h` after mapping through S(m).
    space: &'static str,
    #[serde(flatten)]
    report: EnumerationReport,
}

fn lattice(m: usize, bounds: Option<&str>, h: bool, count_only: bool, workers: u64) -> Result<Done, CliError> {
    check_cap(m, m)?;
    let bounds = match bounds {
        None => BoundsVector::binomial(m),
        Some(s) => BoundsVector(
            s.split(',')
                .map(|t| t.trim().parse::<u64>().map_err(|_| CliError::Input(format!("bad bound {t:?}"))))
                .collect::<Result<_, _>>()?,
        ),
    };
    let opts = EnumOptions {
        workers: workers as usize,
        count_only,
        multiplicities: false,
    };
    let mut report = enumerate_eigen_lattice(m, &bounds, &opts)?;
    if h {
        if let Some(points) = report.points.take() {
            let mapped = push_to_h(m, &points.to_vectors())?;
            let mut list = PointList::new(m + 1);
            for v in &mapped {
                let xs = v.to_i64().ok_or_else(|| CliError::Cap("h-coordinates exceed 64 bits".into()))?;
                list.push(&xs);
            }
            list.sort();
            report.points = Some(list);
        }
    }
    let body = LatticeDump {
        space: if h { "h" } else { "f" },
        report,
    };
    Ok(Done::new(
        "lattice",
        EXIT_OK,
        body,
        |b| format!("space: {}\n{}", b.space, enumeration_text(&b.report)),
        Some(|b| points_csv(b.report.m + 1, b.report.points.as_ref())),
    ))
}

#[derive(Serialize)]
struct Table4Line {
    m: usize,
    col1: u64,
    col2: u64,
    col3: u64,
    /// The published row, when one exists for this m.
    expected: Option<Table4Row>,
    matches: Option<bool>,
}

#[derive(Serialize)]
struct Table4Dump {
    rows: Vec<Table4Line>,
    all_match: bool,
}

fn table4(min_m: usize, max_m: usize, workers: u64) -> Result<Done, CliError> {
    if min_m > max_m {
        return Err(CliError::Input(format!("--min-m {min_m} exceeds --max-m {max_m}")));
    }
    check_cap(max_m, max_m + 1)?;
    let mut rows = Vec::new();
    for m in min_m..=max_m {
        let row = table4_row(m, workers as usize)?;
        let expected = reference_table4(m);
        rows.push(Table4Line {
            m,
            col1: row.col1,
            col2: row.col2,
            col3: row.col3,
            matches: expected.map(|e| e == row),
            expected,
        });
    }
    let all_match = rows.iter().all(|r| r.matches != Some(false));
    let body = Table4Dump { rows, all_match };
    Ok(Done::new(
        "table4",
        status(all_match),
        body,
        |b| {
            let mut s = format!("{:>3} {:>10} {:>10} {:>10}\n", "m", "col1", "col2", "col3");
            for r in &b.rows {
                let _ = write!(s, "{:>3} {:>10} {:>10} {:>10}", r.m, r.col1, r.col2, r.col3);
                if let (Some(false), Some(e)) = (r.matches, r.expected) {
                    let _ = write!(s, "  MISMATCH expected ({}, {}, {})", e.col1, e.col2, e.col3);
                }
                s.push('\n');
            }
            s
        },
        Some(|b| Csv {
            header: Some(["m", "col1", "col2", "col3", "matches"].map(String::from).to_vec()),
            rows: b
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.m.to_string(),
                        r.col1.to_string(),
                        r.col2.to_string(),
                        r.col3.to_string(),
                        r.matches.map_or(String::new(), |x| x.to_string()),
                    ]
                })
                .collect(),
        }),
    ))
}

#[derive(Serialize)]
struct OracleDump {
    kind: &'static str,
    #[serde(flatten)]
    sets: OracleSets,
    agrees_with_enumerator: bool,
}

fn oracle(m: usize, kind: OracleKind) -> Result<Done, CliError> {
    let (name, sets) = match kind {
        OracleKind::Box => ("box", oracle_box(m)?),
        OracleKind::Powerset => ("powerset", oracle_powerset(m)?),
    };
    let engine = |class| -> Result<Vec<Vec<i64>>, CliError> {
        Ok(ds_fvectors(m, class, &EnumOptions::default())?
            .points
            .expect("points requested")
            .to_vecs())
    };
    let agrees = engine(ParityClass::Matching)? == sets.matching && engine(ParityClass::Opposite)? == sets.opposite;
    let body = OracleDump {
        kind: name,
        sets,
        agrees_with_enumerator: agrees,
    };
    Ok(Done::new(
        "oracle",
        status(agrees),
        body,
        |b| {
            let mut s = format!(
                "{} oracle, m = {}: {} matching, {} opposite, {} candidates scanned\nagrees with enumerator: {}\n",
                b.kind,
                b.sets.m,
                b.sets.matching.len(),
                b.sets.opposite.len(),
                b.sets.scanned,
                b.agrees_with_enumerator
            );
            if let Some((a, o)) = b.sets.systems {
                let _ = writeln!(s, "DS systems: {a} matching, {o} opposite");
            }
            s
        },
        None,
    ))
}

fn check_report_text(r: &CheckReport) -> String {
    let mut s = format!(
        "{} m = {}: {} checks, {} failures\n",
        r.suite,
        r.m,
        r.checks,
        r.failures.len()
    );
    s.push_str(&failures_text(&r.failures));
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

fn failures_text(fs: &[Failure]) -> String {
    let mut s = String::new();
    for f in fs {
        let idx: Vec<String> = f.indices.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(
            s,
            "FAIL [{} m={}] {} {{{}}} expected {} got {}",
            f.suite,
            f.m,
            f.item,
            idx.join(","),
            f.expected,
            f.got
        );
    }
    s
}

fn failures_csv(fs: &[Failure]) -> Csv {
    Csv {
        header: Some(["suite", "m", "item", "indices", "expected", "got"].map(String::from).to_vec()),
        rows: fs
            .iter()
            .map(|f| {
                let idx: Vec<String> = f.indices.iter().map(|(k, v)| format!("{k}={v}")).collect();
                vec![
                    f.suite.clone(),
                    f.m.to_string(),
                    f.item.clone(),
                    idx.join(";"),
                    f.expected.clone(),
                    f.got.clone(),
                ]
            })
            .collect(),
    }
}

fn genfun(m: usize) -> Result<Done, CliError> {
    let r = dsfaces::enumeration::genfun_identity_check(m)?;
    Ok(Done::new(
        "genfun",
        status(r.passed()),
        r,
        check_report_text,
        Some(|r| failures_csv(&r.failures)),
    ))
}

fn run_verify(suite: &str, m: &str, corrected: bool) -> Result<Done, CliError> {
    let suite: Suite = suite.parse()?;
    let ms = parse_m_range(m)?;
    let r = verify(suite, ms, formulas(corrected))?;
    Ok(Done::new(
        "verify",
        status(r.passed),
        r,
        |r| {
            let formulas = serde_json::to_value(r.formulas).unwrap();
            let mut s = format!(
                "suite {} m {}..{} ({} formulas): {} checks, {} failures: {}\n",
                r.suite,
                r.m_from,
                r.m_to,
                formulas.as_str().unwrap_or_default(),
                r.checks,
                r.failures.len(),
                if r.passed { "PASS" } else { "FAIL" }
            );
            s.push_str(&failures_text(&r.failures));
            for n in &r.notes {
                let _ = writeln!(s, "note: {n}");
            }
            s
        },
        Some(|r| failures_csv(&r.failures)),
    ))
}
