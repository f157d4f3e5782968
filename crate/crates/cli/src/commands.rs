//! Command handlers. Each one calls into the library and formats the result.

use std::io::Write;
use std::path::Path;

use spherepack::codes::{best_code_10, golay24, qr18, BinaryCode};
use spherepack::constructions::{
    construction_a, construction_bstar, d9_theta_plus, d_plus, density_ordinate, hole_search,
    leech_from_golay, leech_from_lorentzian, stack_layer,
};
use spherepack::coordination::{coordination_sequence, generating_numerator, CoordOptions};
use spherepack::io::LatticeFile;
use spherepack::isometry::IsometryOptions;
use spherepack::packing::PeriodicPacking;
use spherepack::scalar::{format_rational, parse_rational};
use spherepack::shadow::{
    extremal_bound, legacy_bound, n_modular_check, nonexistence_certificate, shadow, Parity,
    Verdict,
};
use spherepack::{catalog, EnumOptions, Error, Lattice, QSeries, QSqrt2, Rational};

use crate::output::{flag, float, Table};
use crate::{CatalogCmd, Cli, CodeCmd, Command, ConstructCmd, Global, OutFile};

pub const FIG3_DEFAULT: [&str; 14] = [
    "Z1", "A2", "A3", "D4", "D5", "E6", "E7", "E8", "Lambda9", "Lambda10", "P10c", "K12", "BW16",
    "Leech",
];

#[derive(Debug)]
pub enum Failure {
    Domain(String),
    Budget(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Budget(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Domain(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_budget() {
            Failure::Budget(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(format!("i/o error: {e}"))
    }
}

type Outcome = Result<(), Failure>;

enum Object {
    Lattice(Lattice),
    Packing(PeriodicPacking),
}

impl Object {
    fn file(&self) -> LatticeFile {
        match self {
            Object::Lattice(l) => LatticeFile::from_lattice(l),
            Object::Packing(p) => LatticeFile::from_packing(p),
        }
    }
}

fn enum_opts(g: &Global) -> EnumOptions {
    EnumOptions {
        max_nodes: g.max_nodes,
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

/// Named packings that are not lattices, then files, then catalog names.
fn load(input: &str) -> Result<Object, Failure> {
    match input {
        "P10c" => {
            return Ok(Object::Packing(
                construction_a(&best_code_10())?.with_name("P10c"),
            ))
        }
        "Bstar18" => {
            let b = qr18();
            let c = b.dual()?;
            return Ok(Object::Packing(
                construction_bstar(&b, &c)?.with_name("Bstar18"),
            ));
        }
        _ => {}
    }
    let path = Path::new(input);
    if path.is_file() {
        let f = LatticeFile::parse(&read_text(path)?)?;
        return Ok(if f.offsets.is_some() {
            Object::Packing(f.to_packing()?)
        } else {
            Object::Lattice(f.to_lattice()?)
        });
    }
    if let Some(n) = input
        .strip_prefix('D')
        .and_then(|s| s.strip_suffix('+'))
        .and_then(|s| s.parse::<usize>().ok())
    {
        if n % 2 == 1 {
            return Ok(Object::Packing(d_plus(n)?));
        }
    }
    Ok(Object::Lattice(catalog::get(input)?))
}

fn load_lattice(input: &str) -> Result<Lattice, Failure> {
    match load(input)? {
        Object::Lattice(l) => Ok(l),
        Object::Packing(_) => Err(Failure::Domain(format!(
            "{input} is a packing, not a lattice"
        ))),
    }
}

fn load_code(source: &str) -> Result<BinaryCode, Failure> {
    Ok(match source {
        "best10" => best_code_10(),
        "golay24" => golay24(),
        "qr18" => qr18(),
        file => BinaryCode::from_text(&read_text(Path::new(file))?)?,
    })
}

fn rational(s: &str) -> Result<Rational, Failure> {
    Ok(parse_rational(s)?)
}

fn exact(x: &Option<QSqrt2>) -> String {
    x.as_ref().map(ToString::to_string).unwrap_or_default()
}

pub fn run(cli: &Cli, out: &mut impl Write) -> Outcome {
    let g = &cli.global;
    let opts = enum_opts(g);
    match &cli.command {
        Command::Catalog(c) => catalog_cmd(c, g, out),
        Command::Invariants { input } => {
            let obj = load(input)?;
            emit(g, out, &invariants_table(&obj, name_of(&obj, input), opts)?)
        }
        Command::Theta { input, cutoff } => {
            let l = load_lattice(input)?;
            let series = l.theta_series(&rational(cutoff)?, opts)?;
            emit(g, out, &series_table(&[("theta", &series)]))
        }
        Command::Coordseq { input, steps } => {
            let l = load_lattice(input)?;
            let copts = CoordOptions {
                enumeration: opts,
                max_bytes: g.max_memory,
            };
            let seq = coordination_sequence(&l, *steps, copts)?;
            let num = generating_numerator(&seq, l.dim());
            let mut t = Table::new(&["k", "count", "numerator"]);
            for (k, (s, c)) in seq.iter().zip(&num).enumerate() {
                t.push([k.to_string(), s.to_string(), c.to_string()]);
            }
            emit(g, out, &t)
        }
        Command::Shadow { input, cutoff } => {
            let l = load_lattice(input)?;
            let cut = rational(cutoff)?;
            let theta = l.theta_series(&cut, opts)?;
            let s = shadow(&l, &cut, opts)?;
            emit(
                g,
                out,
                &series_table(&[("theta", &theta), ("shadow", &s.series)]),
            )
        }
        Command::Bounds { max_dim } => {
            let mut t = Table::new(&["n", "even_bound", "odd_bound", "legacy_bound"]);
            for n in 1..=*max_dim {
                t.push([
                    n.to_string(),
                    extremal_bound(n, Parity::Even).to_string(),
                    extremal_bound(n, Parity::Odd).to_string(),
                    legacy_bound(n).to_string(),
                ]);
            }
            emit(g, out, &t)
        }
        Command::Nonexist {
            dim,
            min_norm,
            cutoff,
        } => nonexist(g, out, *dim, *min_norm, &rational(cutoff)?),
        Command::Modular { input, n } => {
            let l = load_lattice(input)?;
            let iso = IsometryOptions {
                enumeration: opts,
                ..IsometryOptions::default()
            };
            let w = n_modular_check(&l, *n, iso)?;
            let mut t = Table::new(&["name", "N", "modular", "witness"]);
            let witness = w
                .map(|u| {
                    u.rows()
                        .map(|r| {
                            r.iter()
                                .map(ToString::to_string)
                                .collect::<Vec<_>>()
                                .join(" ")
                        })
                        .collect::<Vec<_>>()
                        .join(";")
                })
                .unwrap_or_default();
            t.push([
                l.name().unwrap_or(input).to_string(),
                n.to_string(),
                flag(!witness.is_empty()),
                witness,
            ]);
            emit(g, out, &t)
        }
        Command::Construct(c) => construct(c, g, out),
        Command::Code(c) => code_cmd(c, g, out),
        Command::Fig3 { names } => {
            let mut t = Table::new(&["name", "dim", "center_density", "ordinate"]);
            for name in names {
                let (dim, delta) = match load(name)? {
                    Object::Lattice(l) => (l.dim(), l.center_density(opts)?),
                    Object::Packing(p) => (p.dim(), p.invariants(None, opts)?.center_density),
                };
                t.push([
                    name.clone(),
                    dim.to_string(),
                    float(delta),
                    float(density_ordinate(delta, dim)),
                ]);
            }
            emit(g, out, &t)
        }
    }
}

fn emit(g: &Global, out: &mut impl Write, t: &Table) -> Outcome {
    t.write(g.format, out)?;
    Ok(())
}

fn name_of(obj: &Object, fallback: &str) -> String {
    let n = match obj {
        Object::Lattice(l) => l.name(),
        Object::Packing(p) => p.name(),
    };
    n.filter(|s| !s.is_empty()).unwrap_or(fallback).to_string()
}

fn invariants_table(obj: &Object, name: String, opts: EnumOptions) -> Result<Table, Failure> {
    Ok(match obj {
        Object::Lattice(l) => {
            let m = l.minimum(opts)?;
            let delta = l.center_density(opts)?;
            let mut t = Table::new(&[
                "name",
                "dim",
                "det",
                "min_norm",
                "kissing",
                "center_density_exact",
                "center_density",
                "density",
                "ordinate",
                "even",
                "unimodular",
            ]);
            t.push([
                name,
                l.dim().to_string(),
                l.determinant().to_string(),
                m.norm.to_string(),
                m.vectors.len().to_string(),
                exact(&l.center_density_exact(opts)?),
                float(delta),
                float(l.density(opts)?),
                float(density_ordinate(delta, l.dim())),
                flag(l.is_even()),
                flag(l.is_unimodular()),
            ]);
            t
        }
        Object::Packing(p) => {
            let inv = p.invariants(None, opts)?;
            let mut t = Table::new(&[
                "name",
                "dim",
                "translates",
                "min_dist_sq",
                "max_kissing",
                "center_density_sq",
                "center_density_exact",
                "center_density",
                "ordinate",
            ]);
            t.push([
                name,
                p.dim().to_string(),
                p.offsets().len().to_string(),
                inv.min_dist_sq.to_string(),
                inv.max_kissing.to_string(),
                inv.center_density_sq.to_string(),
                exact(&inv.center_density_exact),
                float(inv.center_density),
                float(density_ordinate(inv.center_density, p.dim())),
            ]);
            t
        }
    })
}

fn series_table(series: &[(&str, &QSeries)]) -> Table {
    let mut t = Table::new(&["series", "exponent", "coefficient"]);
    for (name, s) in series {
        for (e, c) in s.rows() {
            t.push([name.to_string(), e, c]);
        }
    }
    t
}

fn nonexist(g: &Global, out: &mut impl Write, n: usize, mu: u64, cutoff: &Rational) -> Outcome {
    let cert = nonexistence_certificate(n, mu, cutoff)?;
    let mut t = Table::new(&["section", "series", "exponent", "value"]);
    match &cert.verdict {
        Verdict::Impossible => t.push(["verdict", "", "", "impossible"]),
        Verdict::Inconclusive { free_parameters } => {
            t.push(["verdict", "", "", "inconclusive"]);
            t.push([
                "free_parameters".to_string(),
                String::new(),
                String::new(),
                free_parameters.to_string(),
            ]);
        }
    }
    if let Some(expr) = &cert.expression {
        for (i, c) in expr.coeffs.iter().enumerate() {
            t.push([
                "coefficient".to_string(),
                String::new(),
                i.to_string(),
                format_rational(c),
            ]);
        }
    }
    for (name, s) in [("theta", &cert.theta), ("shadow", &cert.shadow)] {
        if let Some(s) = s {
            for (e, c) in s.rows() {
                t.push(["series".to_string(), name.to_string(), e, c]);
            }
        }
    }
    if let Some((series, e, c)) = &cert.evidence {
        t.push([
            "evidence".to_string(),
            series.to_string(),
            format_rational(e),
            format_rational(c),
        ]);
    }
    emit(g, out, &t)
}

fn catalog_cmd(c: &CatalogCmd, g: &Global, out: &mut impl Write) -> Outcome {
    let opts = enum_opts(g);
    match c {
        CatalogCmd::List => {
            let mut t = Table::new(&["name", "dim", "field"]);
            for name in catalog::list() {
                match catalog::entry(&name) {
                    Ok(f) => t.push([name, f.dim.to_string(), f.field]),
                    Err(_) => t.push([name, "n".to_string(), "Q".to_string()]),
                }
            }
            emit(g, out, &t)
        }
        CatalogCmd::Show { name } => {
            let f = match catalog::entry(name) {
                Ok(f) => f,
                Err(_) => LatticeFile::from_lattice(&catalog::get(name)?),
            };
            match g.format {
                crate::output::Format::Json => {
                    out.write_all(f.to_json().as_bytes())?;
                    Ok(())
                }
                crate::output::Format::Csv => {
                    let mut t = Table::new(&["row", "col", "entry"]);
                    for (i, r) in f.gram.iter().enumerate() {
                        for (j, e) in r.iter().enumerate() {
                            t.push([i.to_string(), j.to_string(), e.clone()]);
                        }
                    }
                    emit(g, out, &t)
                }
            }
        }
        CatalogCmd::Verify { name } => {
            let rows = match name {
                Some(n) => vec![catalog::verify(n, opts)?],
                None => catalog::verify_all(opts)?,
            };
            let mut t = Table::new(&["name", "det", "min_norm", "kissing", "status", "detail"]);
            for r in &rows {
                let status = if r.budget_exhausted {
                    "budget"
                } else if r.ok() {
                    "ok"
                } else {
                    "mismatch"
                };
                t.push([
                    r.name.clone(),
                    r.det.clone(),
                    r.min_norm.clone().unwrap_or_default(),
                    r.kissing.map(|k| k.to_string()).unwrap_or_default(),
                    status.to_string(),
                    r.mismatches.join("; "),
                ]);
            }
            emit(g, out, &t)?;
            if rows.iter().any(|r| !r.mismatches.is_empty()) {
                Err(Failure::Domain("recorded invariants do not match".into()))
            } else if rows.iter().any(|r| r.budget_exhausted) {
                Err(Failure::Budget(
                    "enumeration budget exhausted for some entries".into(),
                ))
            } else {
                Ok(())
            }
        }
    }
}

fn construct(c: &ConstructCmd, g: &Global, out: &mut impl Write) -> Outcome {
    let opts = enum_opts(g);
    let (obj, file) = match c {
        ConstructCmd::A { code, out } => {
            let p = construction_a(&load_code(code)?)?;
            let obj = if p.is_lattice() {
                Object::Lattice(p.to_lattice()?)
            } else {
                Object::Packing(p)
            };
            (obj, out)
        }
        ConstructCmd::Bstar { b, c, out } => {
            let b = load_code(b)?;
            let c = match c {
                Some(c) => load_code(c)?,
                None => b.dual()?,
            };
            (Object::Packing(construction_bstar(&b, &c)?), out)
        }
        ConstructCmd::LeechGolay { code, out } => {
            (Object::Lattice(leech_from_golay(&load_code(code)?)?), out)
        }
        ConstructCmd::LeechLorentzian { out } => (Object::Lattice(leech_from_lorentzian()?), out),
        ConstructCmd::D9plus { theta, out } => {
            (Object::Packing(d9_theta_plus(&rational(theta)?)?), out)
        }
        ConstructCmd::Dplus { n, out } => (Object::Packing(d_plus(*n)?), out),
        ConstructCmd::Stack {
            input,
            hole,
            target,
            seed,
            out,
        } => {
            let l = load_lattice(input)?;
            let hole = match hole {
                Some(h) => h
                    .iter()
                    .map(|s| rational(s))
                    .collect::<Result<Vec<_>, _>>()?,
                None => hole_search(&l, 16, 12, *seed)?.0,
            };
            let target = match target {
                Some(t) => t.parse::<QSqrt2>()?,
                None => l.min_norm(opts)?,
            };
            (Object::Lattice(stack_layer(&l, &hole, &target)?), out)
        }
    };
    write_file(&obj.file(), file)?;
    let name = name_of(&obj, "constructed");
    emit(g, out, &invariants_table(&obj, name, opts)?)
}

fn write_file(f: &LatticeFile, out: &OutFile) -> Outcome {
    if let Some(path) = &out.out {
        std::fs::write(path, f.to_json())
            .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn code_cmd(c: &CodeCmd, g: &Global, out: &mut impl Write) -> Outcome {
    let (name, code, file) = match c {
        CodeCmd::Best10 { out } => ("best10".to_string(), best_code_10(), out.out.as_deref()),
        CodeCmd::Golay24 { out } => ("golay24".to_string(), golay24(), out.out.as_deref()),
        CodeCmd::Qr18 { out } => ("qr18".to_string(), qr18(), out.out.as_deref()),
        CodeCmd::Info { file } => (
            file.display().to_string(),
            BinaryCode::from_text(&read_text(file)?)?,
            None,
        ),
    };
    if let Some(path) = file {
        std::fs::write(path, code.to_text())
            .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    }
    let d = code.min_distance(g.max_nodes)?;
    let weights = code
        .weight_distribution()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    let mut t = Table::new(&[
        "name",
        "length",
        "size",
        "dimension",
        "linear",
        "min_distance",
        "weights",
    ]);
    t.push([
        name,
        code.len().to_string(),
        code.size().to_string(),
        code.dimension().map(|k| k.to_string()).unwrap_or_default(),
        flag(code.is_linear()),
        d.to_string(),
        weights,
    ]);
    emit(g, out, &t)
}
