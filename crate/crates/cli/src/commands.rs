use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use qmask::{
    angles_to_bloch, build_masker, canonical_mask_params, decode, encode, extract_constraints, grid_scan, hbar,
    maskable_circle, maskable_set, masked_fraction_scaling, oracle_agreement, partial_trace_a, partial_trace_b,
    preset_schemes, product_form_diagnosis, verify_mask, AngleState, DecodeResult, GeneralLinearOp, GridSpec,
    MaskableClass, Neighborhood, TolRule,
};
use serde::Serialize;

use crate::docs::{
    matrix_doc, read_doc, to_json, write_file, CircleDoc, MaskerDoc, MatrixDoc, SchemeDoc, ShareDoc, StateDoc,
};
use crate::error::{CliError, Result};
use crate::input;

#[derive(Serialize)]
struct MaskOutput {
    masker: MaskerDoc,
    state: StateDoc,
    hbar: f64,
    psi: [[f64; 2]; 4],
    rho_a: MatrixDoc,
    rho_b: MatrixDoc,
}

pub fn mask(masker: &str, state: &str, out: Option<&Path>) -> Result<String> {
    let params = input::parse_masker(masker)?;
    let s = input::parse_state(state)?;
    let psi = build_masker(&params).apply(&s);
    let doc = MaskOutput {
        masker: MaskerDoc::from(&params),
        state: StateDoc::from(&s),
        hbar: hbar(&params, &s),
        psi: psi.amps.map(|z| [z.re, z.im]),
        rho_a: matrix_doc(&partial_trace_b(&psi)?),
        rho_b: matrix_doc(&partial_trace_a(&psi)?),
    };
    let text = to_json(&doc);
    if let Some(path) = out {
        write_file(path, &text)?;
    }
    Ok(text)
}

#[derive(Serialize)]
struct Verification {
    tol: f64,
    ok: bool,
    max_deviation_a: f64,
    max_deviation_b: f64,
}

#[derive(Serialize)]
struct CircleOutput {
    masker: MaskerDoc,
    anchor: StateDoc,
    hbar: f64,
    circle: CircleDoc,
    radius: f64,
    samples: usize,
    verification: Verification,
}

pub fn csv_rows(states: &[AngleState<f64>]) -> String {
    let mut s = String::from("x,y,X,Y,Z\n");
    for st in states {
        let p = angles_to_bloch(st);
        writeln!(
            s,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            st.x(),
            st.y(),
            p.x(),
            p.y(),
            p.z()
        )
        .unwrap();
    }
    s
}

pub fn circle(masker: &str, anchor: &str, samples: usize, csv: Option<&Path>, out: Option<&Path>) -> Result<String> {
    if samples == 0 {
        return Err(CliError::Input("--samples must be at least 1".into()));
    }
    let tol = input::verification_tol()?;
    let params = input::parse_masker(masker)?;
    let a = input::parse_state(anchor)?;
    let c = maskable_circle(&params, &a);
    let points = qmask::sample_circle(&c, samples);

    let mut states = vec![a];
    states.extend_from_slice(&points);
    let report = verify_mask(&build_masker(&params), &states, tol)?;
    if !report.ok {
        return Err(CliError::Internal(format!(
            "sampled circle is not masked within {tol:e} (deviations {:e}, {:e})",
            report.max_deviation_a, report.max_deviation_b
        )));
    }
    if let Some(path) = csv {
        write_file(path, &csv_rows(&points))?;
    }
    if let Some(path) = out {
        write_file(path, &to_json(&CircleDoc::from(&c)))?;
    }
    Ok(to_json(&CircleOutput {
        masker: MaskerDoc::from(&params),
        anchor: StateDoc::from(&a),
        hbar: hbar(&params, &a),
        circle: CircleDoc::from(&c),
        radius: c.radius(),
        samples,
        verification: Verification {
            tol,
            ok: report.ok,
            max_deviation_a: report.max_deviation_a,
            max_deviation_b: report.max_deviation_b,
        },
    }))
}

/// The operator named on the command line: a document or the columns of a masker.
pub fn operator_arg(operator: Option<&Path>, masker: Option<&str>) -> Result<GeneralLinearOp<f64>> {
    match (operator, masker) {
        (Some(path), None) => input::parse_operator(path),
        (None, Some(m)) => Ok(GeneralLinearOp::from_isometry(&build_masker(&input::parse_masker(m)?))),
        _ => Err(CliError::Input("give exactly one of --operator or --masker".into())),
    }
}

fn describe_class(class: &MaskableClass<f64>, out: &mut String) {
    writeln!(out, "class: {}", class.name()).unwrap();
    let fmt = |p: &qmask::BlochPoint<f64>| {
        let s = p.to_angles();
        format!(
            "(x = {:.12}, y = {:.12}; X = {:.12}, Y = {:.12}, Z = {:.12})",
            s.x(),
            s.y(),
            p.x(),
            p.y(),
            p.z()
        )
    };
    match class {
        MaskableClass::Circle(c) => {
            let n = c.normal();
            let (alpha, theta, cval) = canonical_mask_params(c);
            writeln!(
                out,
                "circle: n = ({:.12}, {:.12}, {:.12}), c = {:.12}",
                n.x,
                n.y,
                n.z,
                c.offset()
            )
            .unwrap();
            writeln!(out, "params: alpha = {alpha:.12}, theta = {theta:.12}, c = {cval:.12}").unwrap();
        }
        MaskableClass::PointPair(a, b) => {
            writeln!(out, "point: {}", fmt(a)).unwrap();
            writeln!(out, "point: {}", fmt(b)).unwrap();
        }
        MaskableClass::SinglePoint(p) => writeln!(out, "point: {}", fmt(p)).unwrap(),
        MaskableClass::FullSphere => {}
    }
}

pub fn analyze(operator: Option<&Path>, masker: Option<&str>, anchor: &str, scan: Option<usize>) -> Result<String> {
    let op = operator_arg(operator, masker)?;
    let a = input::parse_state(anchor)?;
    let class = maskable_set(&op, &a)?;
    if matches!(class, MaskableClass::FullSphere) {
        return Err(CliError::Internal("maskable set came out as the full sphere".into()));
    }
    let mut out = String::new();
    describe_class(&class, &mut out);

    writeln!(out, "constraints (entry = n . (X, Y, Z) + r):").unwrap();
    for c in extract_constraints(&op)? {
        let n = c.normal;
        writeln!(
            out,
            "  {:<15} n = ({:+.12e}, {:+.12e}, {:+.12e}), r = {:+.12e}",
            c.entry.name(),
            n.x,
            n.y,
            n.z,
            c.offset
        )
        .unwrap();
    }

    let pf = product_form_diagnosis(&op);
    write!(
        out,
        "product form: {} (orthogonality residual {:.3e}, norm residual {:.3e}",
        if pf.is_product_form { "yes" } else { "no" },
        pf.orthogonality_residual,
        pf.norm_residual
    )
    .unwrap();
    match pf.lambda {
        Some(l) => writeln!(out, ", lambda = {:.12} {:+.12}i)", l.re, l.im).unwrap(),
        None => writeln!(out, ")").unwrap(),
    }

    if let Some(n) = scan {
        let grid = GridSpec::new(n, 2 * n)?;
        let agreement = oracle_agreement(&op, &a, &class, &grid, TolRule::for_operator(&op))?;
        writeln!(
            out,
            "oracle: {}x{} grid, tol {:.3e}, flagged {}, missed {} of {} members, spurious {} (worst {:.3e}, allowed {:.3e})",
            grid.nx,
            grid.ny,
            agreement.tol,
            agreement.flagged,
            agreement.missed,
            agreement.samples,
            agreement.spurious,
            agreement.worst_distance,
            agreement.radius
        )
        .unwrap();
        if agreement.ok() {
            writeln!(out, "oracle agreement: OK").unwrap();
        } else {
            writeln!(out, "oracle agreement: MISMATCH").unwrap();
        }
    }
    Ok(out)
}

pub struct ScanArgs<'a> {
    pub operator: Option<&'a Path>,
    pub masker: Option<&'a str>,
    pub anchor: &'a str,
    pub n: usize,
    pub tol: Option<f64>,
    pub csv: Option<&'a Path>,
    pub fractions: Option<&'a [usize]>,
    pub neighborhood: Option<&'a str>,
}

pub fn scan(args: &ScanArgs) -> Result<String> {
    let op = operator_arg(args.operator, args.masker)?;
    let a = input::parse_state(args.anchor)?;
    let neighborhood: Option<Neighborhood<f64>> = args.neighborhood.map(input::parse_neighborhood).transpose()?;
    let rule = TolRule::for_operator(&op);

    let mut grid = GridSpec::new(args.n, 2 * args.n)?;
    if let Some(nb) = neighborhood {
        grid = grid.restricted_to(nb);
    }
    let tol = match args.tol {
        Some(t) if t.is_finite() && t >= 0.0 => t,
        Some(t) => return Err(CliError::Input(format!("--tol must be a non-negative number, got {t}"))),
        None => rule.tol(grid.spacing()),
    };
    let hits = grid_scan(&op, &a, &grid, tol);
    let mut out = String::new();
    writeln!(
        out,
        "grid {}x{} ({} nodes), tol {:.6e}: {} flagged",
        grid.nx,
        grid.ny,
        grid.node_count(),
        tol,
        hits.len()
    )
    .unwrap();
    if let Some(path) = args.csv {
        let states: Vec<_> = hits.iter().map(|n| n.state).collect();
        write_file(path, &csv_rows(&states))?;
    }
    if let Some(res) = args.fractions {
        let fractions = masked_fraction_scaling(&op, &a, res, rule, neighborhood)?;
        writeln!(out, "resolution,fraction,ratio").unwrap();
        let mut prev: Option<f64> = None;
        for (n, f) in fractions {
            let ratio = prev.filter(|p| *p > 0.0).map(|p| f / p);
            match ratio {
                Some(r) => writeln!(out, "{n},{f:.6e},{r:.4}").unwrap(),
                None => writeln!(out, "{n},{f:.6e},").unwrap(),
            }
            prev = Some(f);
        }
    }
    Ok(out)
}

pub fn share(message: &str, scheme: &str, out_dir: &Path) -> Result<String> {
    let msg = input::parse_state(message)?;
    let scheme = input::parse_scheme(scheme)?;
    std::fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let shares = encode(&msg, &scheme);
    let width = shares.len().to_string().len().max(2);
    let mut out = String::new();
    for (k, s) in shares.iter().enumerate() {
        let path = out_dir.join(format!("share_{:0width$}.json", k + 1));
        write_file(&path, &to_json(&ShareDoc::from(s)))?;
        writeln!(out, "{}", path.display()).unwrap();
    }
    Ok(out)
}

#[derive(Serialize)]
struct DecodeOutput {
    result: &'static str,
    candidates: Vec<StateDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    circle: Option<CircleDoc>,
}

pub fn decode_files(files: &[PathBuf]) -> Result<String> {
    if files.is_empty() {
        return Err(CliError::Input("decode needs at least one share file".into()));
    }
    let shares = files
        .iter()
        .map(|p| read_doc::<ShareDoc>(p)?.to_share().map_err(|e| e.in_file(p)))
        .collect::<Result<Vec<_>>>()?;
    let res = decode(&shares)?;
    let circle = match &res {
        DecodeResult::AmbiguousCircle(c) => Some(CircleDoc::from(c)),
        _ => None,
    };
    Ok(to_json(&DecodeOutput {
        result: res.name(),
        candidates: res.candidates().iter().map(StateDoc::from).collect(),
        circle,
    }))
}

pub fn presets() -> String {
    let docs: Vec<SchemeDoc> = preset_schemes().iter().map(SchemeDoc::from).collect();
    to_json(&docs)
}
