use std::fs;
use std::io::Write;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use circord::abelian::{archimedean_witness, density_search, enumerate_cyclic_orders};
use circord::freeprod::reduce_triple_with;
use circord::group::element_from_json;
use circord::obstruction::{self, Certificate, Mode, SearchOutcome};
use circord::order::validate;
use circord::realization::realize;
use circord::{CircularOrder, CircularOrderSpec, Element, GroupDescriptor};

use crate::args::{Cli, Command, Format, ModeArg, OrderInput};
use crate::exit;
use crate::input::{self, load_json, parse_json, Failure};

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn load_order(input: &OrderInput) -> Result<(CircularOrderSpec, GroupDescriptor), Failure> {
    let order = input::load_order(&input.order)?;
    let group = match &input.group {
        Some(p) => load_json(p)?,
        None => order
            .group()
            .ok_or_else(|| Failure::usage("this order does not name its group; pass --group"))?,
    };
    group.validate()?;
    Ok((order, group))
}

fn parse_element(group: &GroupDescriptor, text: &str, what: &str) -> Result<Element, Failure> {
    let v: serde_json::Value = parse_json(text, what)?;
    Ok(element_from_json(group, &v)?)
}

fn parse_triple(group: &GroupDescriptor, text: &str) -> Result<[Element; 3], Failure> {
    let vs: Vec<serde_json::Value> = parse_json(text, "--triple")?;
    let [a, b, c]: [serde_json::Value; 3] = vs.try_into().map_err(|v: Vec<_>| {
        Failure::usage(format!("--triple: expected 3 elements, found {}", v.len()))
    })?;
    Ok([
        element_from_json(group, &a)?,
        element_from_json(group, &b)?,
        element_from_json(group, &c)?,
    ])
}

/// The first `count` elements in ball order.
fn first_elements(group: &GroupDescriptor, count: usize) -> Result<Vec<Element>, Failure> {
    let mut r = 0;
    loop {
        let ball = group.ball(r);
        if ball.len() >= count {
            return Ok(ball.into_iter().take(count).collect());
        }
        if r > 0 && ball.len() == group.ball(r - 1).len() {
            return Err(Failure::usage(format!(
                "the group has only {} elements",
                ball.len()
            )));
        }
        r += 1;
    }
}

pub fn dispatch(cli: &Cli) -> Result<u8, Failure> {
    let trace = |line: &str| {
        if cli.trace {
            eprintln!("{line}");
        }
    };
    match &cli.command {
        Command::Validate(a) => {
            let (order, group) = load_order(&a.input)?;
            let sample = group.ball(a.radius);
            let report = validate(&order, &group, &sample)?;
            emit(a.out.as_deref(), &to_json(&report))?;
            Ok(if report.is_ok() {
                exit::OK
            } else {
                exit::FAILED
            })
        }
        Command::Search(a) => {
            let group: GroupDescriptor = load_json(&a.group)?;
            let mode = match a.mode {
                ModeArg::Co => Mode::Co,
                ModeArg::Lo => Mode::Lo,
            };
            match obstruction::search(&group, a.max_radius, mode, trace)? {
                SearchOutcome::No { certificate } => {
                    emit(a.out.as_deref(), &to_json(&certificate))?;
                    Ok(exit::NO_ORDER)
                }
                inconclusive => {
                    emit(a.out.as_deref(), &to_json(&inconclusive))?;
                    Ok(exit::OK)
                }
            }
        }
        Command::Enumerate(a) => {
            let out = if let Some(m) = a.cyclic {
                if m == 0 {
                    return Err(Failure::usage("--cyclic needs m >= 1"));
                }
                let orders: Vec<CircularOrderSpec> = enumerate_cyclic_orders(m)
                    .into_iter()
                    .map(Into::into)
                    .collect();
                json!({ "count": orders.len(), "orders": orders })
            } else {
                let group: GroupDescriptor =
                    load_json(a.group.as_deref().expect("clap requires one"))?;
                let orders: Vec<CircularOrderSpec> = obstruction::enumerate_orders(&group)?
                    .into_iter()
                    .map(CircularOrderSpec::ExplicitTable)
                    .collect();
                json!({ "count": orders.len(), "orders": orders })
            };
            emit(None, &to_json(&out))?;
            Ok(exit::OK)
        }
        Command::Eval(a) => {
            let (order, group) = load_order(&a.input)?;
            let [x, y, z] = parse_triple(&group, &a.triple)?;
            if cli.trace {
                if let CircularOrderSpec::LexFreeProduct(l) = &order {
                    if x != y && y != z && x != z {
                        eprint!("{}", to_json(&l.reduce(&x, &y, &z)?));
                    }
                }
            }
            let v = order.eval(&x, &y, &z)?;
            emit(None, &format!("{v}\n"))?;
            Ok(exit::OK)
        }
        Command::Realize(a) => {
            let (order, group) = load_order(&a.input)?;
            let elements = first_elements(&group, a.count)?;
            let map = realize(&order, &elements)?;
            let text = match a.format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    map.write_csv(&mut buf)?;
                    String::from_utf8(buf).expect("csv is utf-8")
                }
                Format::Svg => map.to_svg(),
                Format::Json => to_json(&CircularOrderSpec::PointRecovered(map)),
            };
            emit(a.out.as_deref(), &text)?;
            Ok(exit::OK)
        }
        Command::Density(a) => {
            let (order, group) = load_order(&a.input)?;
            let sample = group.ball(a.radius);
            let p = density_search(&order, &sample, a.budget)?;
            emit(None, &to_json(&CircularOrderSpec::Rotation(p)))?;
            Ok(exit::OK)
        }
        Command::Archimedean(a) => {
            let (order, group) = load_order(&a.input)?;
            let g = parse_element(&group, &a.g, "--g")?;
            let h = parse_element(&group, &a.h, "--h")?;
            let result = archimedean_witness(&order, &group, &g, &h, a.limit)?;
            emit(None, &to_json(&result))?;
            Ok(exit::OK)
        }
        Command::VerifyCert(a) => {
            let cert: Certificate = load_json(&a.cert)?;
            obstruction::verify(&cert)?;
            if let Some(p) = &a.group {
                let group: GroupDescriptor = load_json(p)?;
                obstruction::verify_against(&cert, &group)?;
            }
            emit(
                None,
                &to_json(&json!({ "status": "unsat", "clauses": cert.clauses.len() })),
            )?;
            Ok(exit::OK)
        }
        Command::Reduce(a) => {
            let group: GroupDescriptor = load_json(&a.group)?;
            group.validate()?;
            let t = parse_triple(&group, &a.triple)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let random = a.random;
            let tr = reduce_triple_with(&group, &t, |moves| {
                if random {
                    rng.gen_range(0..moves.len())
                } else {
                    0
                }
            })?;
            emit(None, &to_json(&tr))?;
            Ok(exit::OK)
        }
    }
}
