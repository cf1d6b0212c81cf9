// SPDX-License-Identifier: Apache-2.0

//! `geolink` command-line front end.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use geolink::bqf::{classes, Kind};
use geolink::completion::{
    beta_coeff, bessel_k0, parse_vec2, w_star, BetaOptions, CoeffBound, RhoOptions,
};
use geolink::cycles::{m_coeff, rep_count_pos, zero_cycle};
use geolink::gamma15::{reduce_point_to_f, traverse, winding};
use geolink::linking::{growth_check, iota_full, iota_prime, iota_prime_per_cycle, series_table};
use geolink::{
    BigSym, Cycles, Error, Float, Form, IndefiniteLattice, Rational, Sym,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "geolink", version, about = "Linking numbers of geodesics on Γ₁(5)\\H")]
struct Cli {
    /// Output mode.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced representatives of the form classes of a negative discriminant.
    Classgroup {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
    },
    /// Reduce a form; with `--to-f`, move its CM point into the fundamental domain.
    Reduce {
        #[arg(long, value_parser = form, allow_hyphen_values = true)]
        form: Form,
        #[arg(long)]
        to_f: bool,
    },
    /// Closed geodesic of an indefinite form through the fundamental domain.
    Traverse {
        #[arg(long, value_parser = form, allow_hyphen_values = true)]
        form: Form,
    },
    /// Winding number of a cycle around the CM point of a definite form, taken in F.
    Winding {
        #[arg(long, value_parser = form, allow_hyphen_values = true)]
        point: Form,
        #[arg(long, value_parser = form, allow_hyphen_values = true)]
        cycle: Form,
    },
    /// Multiplicities m(T, q), over all classes of disc −4·det T unless `--form` is given.
    Mcoeff {
        #[arg(long = "T", value_parser = sym, allow_hyphen_values = true)]
        t: Sym,
        #[arg(long, value_parser = form, allow_hyphen_values = true)]
        form: Option<Form>,
    },
    /// Weighted oriented CM points of the zero-cycle of T.
    Zerocycle {
        #[arg(long = "T", value_parser = sym, allow_hyphen_values = true)]
        t: Sym,
    },
    /// Linking number with the unshifted zero-cycle, per cycle and in total.
    Link(LinkArgs),
    /// Linking coefficient including the theta shifts.
    Linkfull(LinkArgs),
    /// Nonzero coefficients over reduced T with det T below a bound.
    Series(TableArgs),
    /// Largest |ι|/det^{3/2} over a coefficient table.
    Growth(TableArgs),
    /// The completion weight W*(x1, x2).
    Wstar {
        #[arg(long, allow_hyphen_values = true)]
        x1: Float,
        #[arg(long)]
        x2: Float,
        #[arg(long, default_value_t = 1e-12)]
        tol: Float,
    },
    /// Modified Bessel function K₀(x).
    K0 {
        #[arg(long)]
        x: Float,
        #[arg(long, default_value_t = 1e-12)]
        tol: Float,
    },
    /// Representation number ρ(T) of a shifted signature (1,1) lattice.
    Rho {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long = "T", value_parser = big_sym, allow_hyphen_values = true)]
        t: BigSym,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        window_shift: f64,
    },
    /// Truncated β-coefficient with a certified tail.
    Beta {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long = "T", value_parser = big_sym, allow_hyphen_values = true)]
        t: BigSym,
        /// Positive definite `v` as "v11,v12,v22".
        #[arg(long, value_parser = vec3, allow_hyphen_values = true)]
        v: [Float; 3],
        /// Positive definite form whose representation numbers give r(T″).
        #[arg(long, value_parser = big_form, default_value = "1,0,1")]
        rep_form: geolink::BigForm,
        #[arg(long, default_value_t = 1)]
        level: u32,
        /// Index normalization of the sum.
        #[arg(long, value_parser = big_rat, default_value = "1")]
        norm: geolink::BigRational,
        #[arg(long, default_value_t = 1e-8)]
        tol: Float,
        #[arg(long, default_value_t = 1e3)]
        bound_scale: Float,
        #[arg(long, default_value_t = 3.0)]
        bound_power: Float,
        #[arg(long)]
        delta_max: Option<Float>,
    },
    /// Checks against golden values.
    Selftest,
}

#[derive(Args)]
struct LinkArgs {
    #[arg(long = "T", value_parser = sym, allow_hyphen_values = true)]
    t: Sym,
    /// Semicolon-separated indefinite forms.
    #[arg(long, value_parser = cycles, allow_hyphen_values = true, required = true)]
    cycles: Vec<Vec<Form>>,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_parser = rational)]
    max_det: Rational,
    #[arg(long, value_parser = cycles, allow_hyphen_values = true, required = true)]
    cycles: Vec<Vec<Form>>,
    /// Skip T with square det.
    #[arg(long)]
    nonsquare: bool,
}

#[derive(Args)]
struct LatticeArgs {
    /// Gram matrix "t1,t0,t2".
    #[arg(long, value_parser = big_sym, allow_hyphen_values = true)]
    gram: BigSym,
    /// Automorph "a,b,c,d"; the fundamental one is searched for when omitted.
    #[arg(long, value_parser = big_mat, allow_hyphen_values = true)]
    automorph: Option<geolink::BigMatrix>,
    /// Shift "x1,y1;x2,y2" of the two columns.
    #[arg(long, value_parser = shift, default_value = "0,0;0,0", allow_hyphen_values = true)]
    shift: [[geolink::BigRational; 2]; 2],
    /// Pell search bound for the automorph.
    #[arg(long, default_value_t = 1_000_000)]
    max_u: u64,
}

impl LatticeArgs {
    fn build(&self) -> geolink::Result<IndefiniteLattice> {
        let automorph = match &self.automorph {
            Some(g) => g.clone(),
            None => IndefiniteLattice::find_automorph(&self.gram, self.max_u)?,
        };
        IndefiniteLattice::new(self.gram.clone(), self.shift.clone(), automorph)
    }
}

fn parsed<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<T, String> {
    s.trim().parse().map_err(|e: Error| e.to_string())
}

fn form(s: &str) -> Result<Form, String> {
    parsed(s)
}

fn big_form(s: &str) -> Result<geolink::BigForm, String> {
    parsed(s)
}

fn sym(s: &str) -> Result<Sym, String> {
    parsed(s)
}

fn big_sym(s: &str) -> Result<BigSym, String> {
    parsed(s)
}

fn big_mat(s: &str) -> Result<geolink::BigMatrix, String> {
    parsed(s)
}

fn rational(s: &str) -> Result<Rational, String> {
    geolink::exact::parse_rat(s.trim()).map_err(|e| e.to_string())
}

fn big_rat(s: &str) -> Result<geolink::BigRational, String> {
    geolink::exact::parse_rat(s.trim()).map_err(|e| e.to_string())
}

fn cycles(s: &str) -> Result<Vec<Form>, String> {
    s.split(';').filter(|p| !p.trim().is_empty()).map(form).collect()
}

fn shift(s: &str) -> Result<[[geolink::BigRational; 2]; 2], String> {
    let cols: Vec<&str> = s.split(';').collect();
    if cols.len() != 2 {
        return Err(format!("shift {s:?} needs two columns \"x1,y1;x2,y2\""));
    }
    let col = |c: &str| parse_vec2(c.trim()).map_err(|e| e.to_string());
    Ok([col(cols[0])?, col(cols[1])?])
}

fn vec3(s: &str) -> Result<[Float; 3], String> {
    let p: Vec<&str> = s.split(',').map(str::trim).collect();
    if p.len() != 3 {
        return Err(format!("{s:?} needs three fields \"v11,v12,v22\""));
    }
    let f = |x: &str| x.parse::<Float>().map_err(|e| format!("{x:?}: {e}"));
    Ok([f(p[0])?, f(p[1])?, f(p[2])?])
}

fn flatten(v: Vec<Vec<Form>>) -> Vec<Form> {
    v.into_iter().flatten().collect()
}

/// What a subcommand prints: a JSON value (a list becomes JSON lines when
/// `lines` is set), a text rendering, and optionally a CSV table.
struct Report {
    json: Value,
    lines: bool,
    text: String,
    table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    ok: bool,
}

impl Report {
    fn new(json: Value, text: String) -> Self {
        Report { json, lines: false, text, table: None, ok: true }
    }

    fn table(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.table = Some((header, rows));
        self
    }
}

fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = vec![line(header.to_vec())];
    out.extend(rows.iter().map(|r| line(r.iter().map(String::as_str).collect())));
    out.join("\n")
}

fn tabular(header: Vec<&'static str>, rows: Vec<Vec<String>>, json: Value) -> Report {
    let text = aligned(&header, &rows);
    Report::new(json, text).table(header, rows)
}

fn hvec(h: &[i64; 3]) -> String {
    format!("({},{},{})", h[0], h[1], h[2])
}

fn run(cmd: Command) -> geolink::Result<Report> {
    Ok(match cmd {
        Command::Classgroup { disc } => {
            let cls = classes(&disc)?;
            let rows: Vec<Vec<String>> = cls
                .iter()
                .map(|c| vec![c.rep.to_string(), c.content.to_string()])
                .collect();
            let json = json!({
                "disc": disc,
                "count": cls.len(),
                "classes": cls.iter().map(|c| c.rep.to_string()).collect::<Vec<_>>(),
            });
            tabular(vec!["form", "content"], rows, json)
        }
        Command::Reduce { form, to_f } => {
            let (r, g) = if to_f {
                reduce_point_to_f(&form)?
            } else if form.kind() == Kind::Indefinite {
                form.reduce_indef()?
            } else {
                form.reduce_definite()?
            };
            let json = json!({ "form": form, "reduced": r, "matrix": g });
            Report::new(json, format!("{r}\nmatrix {g}"))
        }
        Command::Traverse { form } => {
            let c = traverse(&form)?;
            let mut json = serde_json::to_value(&c).expect("serializable");
            json["length"] = json!(c.len());
            let rows: Vec<Vec<String>> = c
                .forms
                .iter()
                .enumerate()
                .map(|(i, f)| vec![(i + 1).to_string(), f.to_string()])
                .collect();
            let text = format!(
                "length {}\nhomology {}\n{}",
                c.len(),
                hvec(&c.homology),
                aligned(&["step", "form"], &rows)
            );
            Report::new(json, text).table(vec!["step", "form"], rows)
        }
        Command::Winding { point, cycle } => {
            let c = traverse(&cycle)?;
            let (p, _) = reduce_point_to_f(&point)?;
            let w = winding(&p, &c)?;
            let json = json!({ "point": point, "reduced": p, "cycle": cycle, "winding": w.to_string() });
            Report::new(json, w.to_string())
        }
        Command::Mcoeff { t, form } => {
            let forms: Vec<Form> = match form {
                Some(f) => vec![f],
                None => {
                    let d = t.to_form()?.disc();
                    classes(&d)?.into_iter().map(|c| c.rep).collect()
                }
            };
            let ms = forms.iter().map(|q| m_coeff(&t, q)).collect::<geolink::Result<Vec<_>>>()?;
            let rows: Vec<Vec<String>> = forms
                .iter()
                .zip(&ms)
                .map(|(q, m)| vec![q.to_string(), m.to_string()])
                .collect();
            let json = json!({
                "T": t,
                "m": forms.iter().zip(&ms).map(|(q, m)| json!({"form": q, "m": m})).collect::<Vec<_>>(),
            });
            tabular(vec!["form", "m"], rows, json)
        }
        Command::Zerocycle { t } => {
            let z = zero_cycle(&t)?;
            let rows: Vec<Vec<String>> = z
                .points
                .iter()
                .map(|p| vec![p.point.form.to_string(), p.point.sign.to_string(), p.weight.to_string()])
                .collect();
            let json = serde_json::to_value(&z).expect("serializable");
            let mut r = tabular(vec!["form", "sign", "weight"], rows, json);
            r.text = format!("degree {}\n{}", z.degree(), r.text);
            r
        }
        Command::Link(a) => {
            let forms = flatten(a.cycles);
            let cs = Cycles::from_forms(&forms)?;
            let per = iota_prime_per_cycle(&a.t, &cs)?;
            let total = iota_prime(&a.t, &cs)?;
            let rows: Vec<Vec<String>> = forms
                .iter()
                .zip(&per)
                .map(|(f, v)| vec![f.to_string(), v.to_string()])
                .collect();
            let json = json!({
                "T": a.t,
                "per_cycle": per.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "value": total.to_string(),
            });
            let mut r = tabular(vec!["cycle", "contribution"], rows, json);
            r.text = format!("{}\ntotal {total}", r.text);
            r
        }
        Command::Linkfull(a) => {
            let cs = Cycles::from_forms(&flatten(a.cycles))?;
            let v = iota_full(&a.t, &cs)?;
            Report::new(json!({ "T": a.t, "value": v.to_string() }), v.to_string())
        }
        Command::Series(a) => {
            let cs = Cycles::from_forms(&flatten(a.cycles))?;
            let table = series_table(&a.max_det, &cs, a.nonsquare)?;
            let rows: Vec<Vec<String>> = table
                .iter()
                .map(|r| {
                    let flag = if r.surface_dependent { "*" } else { "" };
                    vec![r.t.to_string(), r.det.to_string(), format!("{}{flag}", r.value)]
                })
                .collect();
            let json = Value::Array(table.iter().map(|r| serde_json::to_value(r).expect("serializable")).collect());
            let mut r = tabular(vec!["T", "det T", "value"], rows, json);
            r.lines = true;
            r
        }
        Command::Growth(a) => {
            let cs = Cycles::from_forms(&flatten(a.cycles))?;
            let g = growth_check(&a.max_det, &cs, a.nonsquare)?;
            let rows: Vec<Vec<String>> = g
                .rows
                .iter()
                .map(|(t, x)| vec![t.to_string(), format!("{x:.12}")])
                .collect();
            let argmax = g.argmax.as_ref().map(ToString::to_string);
            let json = json!({
                "max_ratio": g.max_ratio,
                "argmax": argmax,
                "rows": g.rows.iter().map(|(t, x)| json!({"T": t, "ratio": x})).collect::<Vec<_>>(),
            });
            let mut r = tabular(vec!["T", "|value|/det^1.5"], rows, json);
            r.text = format!(
                "{}\nmax {:.16} at {}",
                r.text,
                g.max_ratio,
                argmax.unwrap_or_else(|| "-".into())
            );
            r
        }
        Command::Wstar { x1, x2, tol } => {
            let w = w_star(x1, x2, tol)?;
            Report::new(json!({ "x1": x1, "x2": x2, "value": w.value, "err": w.err }), format!("{:.17e} ± {:.1e}", w.value, w.err))
        }
        Command::K0 { x, tol } => {
            let k = bessel_k0(x, tol)?;
            Report::new(json!({ "x": x, "value": k.value, "err": k.err }), format!("{:.17e} ± {:.1e}", k.value, k.err))
        }
        Command::Rho { lattice, t, window_shift } => {
            let lat = lattice.build()?;
            let rho = lat.rho(&t, &RhoOptions { window_shift })?;
            let json = json!({
                "gram": lat.gram(),
                "automorph": lat.automorph(),
                "T": t,
                "rho": rho,
            });
            Report::new(json, format!("{rho}\nautomorph {}", lat.automorph()))
        }
        Command::Beta {
            lattice,
            t,
            v,
            rep_form,
            level,
            norm,
            tol,
            bound_scale,
            bound_power,
            delta_max,
        } => {
            let lat = lattice.build()?;
            let r = |tpp: &BigSym| -> geolink::Result<i64> {
                let n = rep_count_pos(&rep_form, &tpp.to_form()?)?;
                i64::try_from(n).map_err(|_| Error::Domain("representation count overflow".into()))
            };
            let opts = BetaOptions {
                level,
                norm,
                tol,
                bound: CoeffBound { scale: bound_scale, power: bound_power },
                delta_max,
            };
            let b = beta_coeff(&t, v, r, &lat, &opts)?;
            let json = json!({
                "T": t,
                "v": v,
                "value": b.value,
                "err": b.err,
                "delta_max": b.delta_max,
                "terms": b.terms,
            });
            let text = format!(
                "{:.17e} ± {:.1e}\nterms {} with Δ < {}",
                b.value, b.err, b.terms, b.delta_max
            );
            Report::new(json, text)
        }
        Command::Selftest => {
            let checks = geolink::selftest::run();
            let rows: Vec<Vec<String>> = checks
                .iter()
                .map(|c| vec![c.name.to_string(), if c.passed { "PASS" } else { "FAIL" }.to_string(), c.detail.clone()])
                .collect();
            let ok = checks.iter().all(|c| c.passed);
            let json = serde_json::to_value(&checks).expect("serializable");
            let mut r = tabular(vec!["check", "status", "detail"], rows, json);
            r.lines = true;
            r.ok = ok;
            r
        }
    })
}

fn emit(report: &Report, format: Format) -> std::io::Result<()> {
    let mut out = std::io::stdout().lock();
    match format {
        Format::Json => match (&report.json, report.lines) {
            (Value::Array(items), true) => {
                for item in items {
                    writeln!(out, "{item}")?;
                }
            }
            (v, _) => writeln!(out, "{v}")?,
        },
        Format::Text => writeln!(out, "{}", report.text)?,
        Format::Csv => {
            let Some((header, rows)) = &report.table else {
                return Err(std::io::Error::new(
                    std::io::ErrorKind::Unsupported,
                    "csv output is not available for this subcommand",
                ));
            };
            let mut w = csv::Writer::from_writer(out);
            w.write_record(header)?;
            for r in rows {
                w.write_record(r)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = if cli.json { Format::Json } else { cli.format };
    let report = match run(cli.command) {
        Ok(r) => r,
        Err(e) => {
            let err = json!({ "error": e.kind(), "message": e.to_string() });
            eprintln!("{err}");
            return ExitCode::from(1);
        }
    };
    match emit(&report, format) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => return ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
        Ok(()) => {}
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use geolink::exact::Rat;
    use geolink::BigInt;

    #[test]
    fn parses_cycle_lists() {
        assert_eq!(cycles("1,0,-3; 2,2,-1").unwrap().len(), 2);
        assert!(cycles("1,0").is_err());
    }

    #[test]
    fn parses_shifts() {
        let s = shift("0,1/3;0,1/3").unwrap();
        assert_eq!(s[0][1], Rat::new(BigInt::from(1), BigInt::from(3)));
        assert!(shift("0,1/3").is_err());
    }

    #[test]
    fn aligns_columns() {
        let t = aligned(&["a", "bb"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    bb\nxyz  1");
    }

    #[test]
    fn flattens() {
        let f = Form::from_i64(1, 0, -3);
        assert_eq!(flatten(vec![vec![f.clone()], vec![f]]).len(), 2);
    }
}
