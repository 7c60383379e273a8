use std::fmt::Write as _;

use serde_json::json;

use lbhopf_numint::analysis::dyadic_steps;
use lbhopf_numint::problem::{sphere_problem, toda_problem, translation_problem};
use lbhopf_numint::{convergence_order, integrate as run_method, Action, Convergence, Method, Problem};

use crate::args::{Format, MethodArg, ProblemArg};
use crate::{Failure, Outcome};

fn method(m: MethodArg) -> Method {
    match m {
        MethodArg::Euler => Method::ExpEuler,
        MethodArg::Rkmk4 => Method::Rkmk4,
        MethodArg::Cg3 => Method::Cg3,
        MethodArg::Cf4 => Method::Cf4,
    }
}

fn trajectory_csv<A: Action>(p: &Problem<A>, m: Method, h: f64, t_end: f64) -> Outcome {
    let traj = run_method(p, m, h, t_end)?;
    let dim = p.action.coords(&p.y0).len();
    let names: Vec<String> = traj.diagnostics.get(1).map(|d| d.keys().cloned().collect()).unwrap_or_default();
    let mut out = String::from("t");
    for i in 0..dim {
        write!(out, ",y{i}").unwrap();
    }
    for n in &names {
        write!(out, ",{n}").unwrap();
    }
    out.push('\n');
    for ((t, y), d) in traj.times.iter().zip(&traj.states).zip(&traj.diagnostics) {
        write!(out, "{t}").unwrap();
        for c in p.action.coords(y) {
            write!(out, ",{c:.17e}").unwrap();
        }
        for n in &names {
            match d.get(n) {
                Some(v) => write!(out, ",{v:.6e}").unwrap(),
                None => out.push(','),
            }
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn integrate(m: MethodArg, problem: ProblemArg, h: f64, t_end: f64) -> Outcome {
    let m = method(m);
    match problem {
        ProblemArg::Sphere => trajectory_csv(&sphere_problem(), m, h, t_end),
        ProblemArg::Isospectral => trajectory_csv(&toda_problem(3), m, h, t_end),
        ProblemArg::Rn => trajectory_csv(&translation_problem(), m, h, t_end),
    }
}

fn sweep<A: Action>(p: &Problem<A>, hs: &[f64], t_end: f64) -> Result<Vec<Convergence>, Failure>
where
    A::Point: Send,
{
    Ok(Method::ALL.iter().map(|&m| convergence_order(p, m, hs, t_end)).collect::<Result<_, _>>()?)
}

pub fn convergence(problem: ProblemArg, from: i32, to: i32, t_end: f64, format: Format) -> Outcome {
    if from >= to {
        return Err(Failure::Usage(format!("--from {from} must be smaller than --to {to}")));
    }
    let hs = dyadic_steps(from, to);
    let rows = match problem {
        ProblemArg::Sphere => sweep(&sphere_problem(), &hs, t_end)?,
        ProblemArg::Isospectral => sweep(&toda_problem(3), &hs, t_end)?,
        ProblemArg::Rn => sweep(&translation_problem(), &hs, t_end)?,
    };
    Ok(match format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|c| json!({"method": c.method.name(), "order": c.method.order(), "slope": c.slope, "h": c.hs, "errors": c.errors}))
                .collect();
            serde_json::to_string_pretty(&v).expect("JSON values serialize")
        }
        Format::Csv => {
            let mut out = String::from("method,h,error\n");
            for c in &rows {
                for (h, e) in c.hs.iter().zip(&c.errors) {
                    writeln!(out, "{},{h},{e:.6e}", c.method.name()).unwrap();
                }
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for c in &rows {
                writeln!(out, "{:<6} claimed {}  measured {:.3}", c.method.name(), c.method.order(), c.slope).unwrap();
            }
            out
        }
    })
}
