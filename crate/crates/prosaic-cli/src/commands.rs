//! Command implementations. Each returns a report and an exit status.

use std::fs;
use std::io::Read;
use std::path::Path;

use prosaic_core::classgroup::{
    class_group_of_prime, max_dimension, rm_feasibility, H2Cache, H2Entry,
};
use prosaic_core::genus2::{
    curve_1797, family, partner_1797, richelot_model, search_prime_pairs, stated_partner,
    Genus2Model,
};
use prosaic_core::modules::{
    build_lambda, decompose_phi_blocs, phi_bloc_obstruction, standard_bloc, Obstruction, Role,
};
use prosaic_core::primes::{classify, is_prime, primes_one_mod_eight};
use prosaic_core::tables::{verify_tables, write_embedded, Table};
use prosaic_core::{
    same_curve_over_closure, AdmissibleModule, BigInt, BitMatrix, Error, FamilyInstance,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::Report;
use crate::{Cli, Command, Failure, Global, MAX_BOUND};

type Run = Result<(Report, u8), Failure>;

/// Exit status when a verification finds a mismatch.
pub const STATUS_MISMATCH: u8 = 3;

const MAX_GRID: u64 = 4_000_000;

pub fn run(cli: &Cli) -> Run {
    let g = &cli.global;
    if g.jobs == 0 {
        return Err(Failure::usage("--jobs must be at least 1"));
    }
    if g.bound > MAX_BOUND {
        return Err(Error::Capacity(format!("--bound {} above {MAX_BOUND}", g.bound)).into());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(g.jobs)
        .build()
        .map_err(|e| Failure {
            code: "INTERNAL_ERROR",
            message: e.to_string(),
            status: 1,
        })?;
    let cache = match &g.cache {
        Some(path) => H2Cache::open(path)?,
        None => H2Cache::in_memory(),
    };
    let out = pool.install(|| dispatch(&cli.command, g, &cache))?;
    cache.flush()?;
    Ok(out)
}

fn dispatch(cmd: &Command, g: &Global, cache: &H2Cache) -> Run {
    match cmd {
        Command::Classify { range } => classify_cmd(&prime_range(range, g)?),
        Command::H2 { p, range } => h2_cmd(&prime_list(*p, range.as_deref(), g)?, cache),
        Command::Feasibility { p, range, g: dim } => {
            feasibility_cmd(&prime_list(*p, range.as_deref(), g)?, *dim, cache)
        }
        Command::Lambda { k, e } => lambda_cmd(*k, *e),
        Command::PhiBound { h2, max_d } => phi_bound_cmd(*h2, *max_d),
        Command::Decompose { input, random_dim } => {
            let module = match (input, random_dim) {
                (_, Some(n)) => random_module(*n, g.seed)?,
                (Some(path), None) => read_module(path)?,
                (None, None) => read_module(Path::new("-"))?,
            };
            decompose_cmd(&module)
        }
        Command::Family { kind, p1, p2 } => {
            let inst = family(*kind, *p1, *p2)?;
            let mut r = family_report("family", std::slice::from_ref(&inst));
            r.detail = Some(serde_json::to_value(&inst).map_err(json_err)?);
            Ok((r, 0))
        }
        Command::Richelot { target, p1, p2 } => richelot_cmd(target, *p1, *p2),
        Command::VerifyTables { dir, export } => match export {
            Some(d) => export_cmd(d),
            None => verify_cmd(dir.as_deref(), cache),
        },
        Command::SearchPairs { kind, range } => {
            if range.len() != 2 {
                return Err(Failure::usage(
                    "search-pairs needs exactly two --range values",
                ));
            }
            let (a, b) = (parse_range(&range[0])?, parse_range(&range[1])?);
            let size = (a.1 - a.0 + 1).max(0) as u64 * (b.1 - b.0 + 1).max(0) as u64;
            if size > MAX_GRID {
                return Err(
                    Error::Capacity(format!("grid of {size} points above {MAX_GRID}")).into(),
                );
            }
            let found = search_prime_pairs(*kind, a.0..=a.1, b.0..=b.1)?;
            Ok((family_report("search-pairs", &found), 0))
        }
    }
}

fn json_err(e: serde_json::Error) -> Failure {
    Failure {
        code: "INTERNAL_ERROR",
        message: e.to_string(),
        status: 1,
    }
}

/// `HI` means `1..HI`; `LO..HI` is inclusive on both ends.
pub fn parse_range(s: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::usage(format!("bad range {s:?}: expected HI or LO..HI"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ),
        None => (1, s.trim().parse().map_err(|_| bad())?),
    };
    Ok((lo, hi))
}

fn prime_range(s: &str, g: &Global) -> Result<(u64, u64), Failure> {
    let (lo, hi) = parse_range(s)?;
    if hi > g.bound as i64 {
        return Err(Error::Capacity(format!("range end {hi} above bound {}", g.bound)).into());
    }
    Ok((lo.max(0) as u64, hi.max(0) as u64))
}

fn prime_list(p: Option<u64>, range: Option<&str>, g: &Global) -> Result<Vec<u64>, Failure> {
    match (p, range) {
        (Some(p), None) => {
            if p > g.bound {
                return Err(Error::Capacity(format!("{p} above bound {}", g.bound)).into());
            }
            if !is_prime(p) {
                return Err(Error::Domain(format!("{p} is not prime")).into());
            }
            if p % 8 != 1 {
                return Err(Error::Domain(format!(
                    "p = {p} is {} mod 8: a prosaic variety with good reduction outside p has conductor p^g with p ≡ 1 mod 8",
                    p % 8
                ))
                .into());
            }
            Ok(vec![p])
        }
        (None, Some(r)) => {
            let (lo, hi) = prime_range(r, g)?;
            Ok(primes_one_mod_eight(lo, hi))
        }
        _ => Err(Failure::usage("give either a prime or --range")),
    }
}

fn classify_cmd(&(lo, hi): &(u64, u64)) -> Run {
    let ps = primes_one_mod_eight(lo, hi);
    let profiles = ps
        .par_iter()
        .map(|&p| classify(p))
        .collect::<Result<Vec<_>, _>>()?;
    let mut r = Report::new("classify", &["p", "a", "b", "label", "p1star"]);
    for pr in profiles {
        r.push(vec![
            json!(pr.p),
            json!(pr.a16),
            json!(pr.b16),
            json!(pr.label.to_string()),
            json!(pr.in_p1_star),
        ]);
    }
    Ok((r, 0))
}

/// Workers read the cache and compute misses; commits happen here, in prime order.
fn h2_entries(ps: &[u64], cache: &H2Cache) -> Result<Vec<H2Entry>, Failure> {
    let entries = ps
        .par_iter()
        .map(|&p| match cache.get(p) {
            Some(e) => Ok(e),
            None => class_group_of_prime(p).map(|g| H2Entry { h: g.h, h2: g.h2 }),
        })
        .collect::<Result<Vec<_>, _>>()?;
    for (&p, &e) in ps.iter().zip(&entries) {
        cache.commit(p, e)?;
    }
    Ok(entries)
}

fn h2_cmd(ps: &[u64], cache: &H2Cache) -> Run {
    let entries = h2_entries(ps, cache)?;
    let mut r = Report::new("h2", &["p", "h", "h2"]);
    for (&p, e) in ps.iter().zip(entries) {
        r.push(vec![json!(p), json!(e.h), json!(e.h2)]);
    }
    Ok((r, 0))
}

fn feasibility_cmd(ps: &[u64], g: Option<u32>, cache: &H2Cache) -> Run {
    h2_entries(ps, cache)?;
    let rows = ps
        .par_iter()
        .map(|&p| {
            let label = classify(p)?.label;
            let h2 = cache
                .get(p)
                .map(|e| e.h2)
                .ok_or_else(|| Error::Internal("cache miss".into()))?;
            let max_g = max_dimension(h2);
            let dim = g.unwrap_or(max_g.max(1) as u32);
            let f = rm_feasibility(p, dim, Some(cache))?;
            Ok::<_, Error>((p, label, max_g, f))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut r = Report::new(
        "feasibility",
        &[
            "p",
            "label",
            "h2",
            "max_g",
            "g",
            "bound_ok",
            "p1star_required",
            "p1star_ok",
            "feasible",
        ],
    );
    for (p, label, max_g, f) in rows {
        r.push(vec![
            json!(p),
            json!(label.to_string()),
            json!(f.h2),
            json!(max_g),
            json!(f.g),
            json!(f.bound_ok),
            json!(f.p1star_required),
            json!(f.p1star_ok),
            json!(f.feasible),
        ]);
    }
    r.extra = "conductor must be p^g, p ≡ 1 mod 8; g ≤ max_g means 2(g+1) ≤ h2; P1* is required once 2(g+2) ≤ h2\n".into();
    Ok((r, 0))
}

fn default_e(k: usize) -> u32 {
    (k.next_power_of_two().trailing_zeros())
        .saturating_sub(1)
        .max(1)
}

fn lambda_cmd(k: usize, e: u32) -> Run {
    let e = if e == 0 { default_e(k) } else { e };
    let l = build_lambda(k, e)?.ok_or_else(|| {
        Error::Domain(format!(
            "Λ_{k} does not exist for e = {e}: need k ≤ 2^(e+1)"
        ))
    })?;
    let mut r = Report::new(
        "lambda",
        &["k", "e", "faithful", "t_order", "nilpotency_index"],
    );
    r.push(vec![
        json!(k),
        json!(e),
        json!(l.faithful),
        json!(l.t_order()),
        json!(l.nilpotency_index()),
    ]);
    let v = l.view(Role::G1SigmaV)?;
    let w = l.view(Role::G1SigmaL)?;
    r.detail = Some(json!({ "g1_sigma_v": v, "g1_sigma_l": w }));
    r.extra = format!(
        "s1\n{}\ns2\n{}\nt\n{}",
        l.s1.grid(),
        l.s2.grid(),
        l.t().grid()
    );
    Ok((r, 0))
}

fn phi_bound_cmd(h2: u64, max_d: usize) -> Run {
    let mut r = Report::new("phi-bound", &["d", "h2", "bound", "obstruction"]);
    for d in 1..=max_d {
        let o = phi_bloc_obstruction(d, h2)?;
        let word = match o {
            Obstruction::Pass => "PASS",
            Obstruction::Fail => "FAIL",
        };
        r.push(vec![
            json!(d),
            json!(h2),
            json!(2 * d as u64 + 2 <= h2),
            json!(word),
        ]);
    }
    Ok((r, 0))
}

fn read_module(path: &Path) -> Result<AdmissibleModule, Failure> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path)?
    };
    serde_json::from_str(&text).map_err(|e| Error::Domain(format!("module JSON: {e}")).into())
}

/// Random bloc sum of total dimension at most `n`, under a random change of basis.
pub fn random_module(n: usize, seed: u64) -> Result<AdmissibleModule, Failure> {
    if !(2..=64).contains(&n) {
        return Err(Failure::usage("--random-dim must be between 2 and 64"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sizes = Vec::new();
    let mut left = n / 2;
    while left > 0 {
        let d = rng.gen_range(1..=left);
        sizes.push(d);
        left -= d;
        if rng.gen_bool(0.3) {
            break;
        }
    }
    let blocs = sizes
        .iter()
        .map(|&d| standard_bloc(d))
        .collect::<Result<Vec<_>, _>>()?;
    let parts: Vec<&AdmissibleModule> = blocs.iter().map(|b| &b.module).collect();
    let m = AdmissibleModule::direct_sum(&parts)?;
    let dim = m.dim();
    let p = loop {
        let cols = (0..dim)
            .map(|_| rng.gen::<u64>() & ((1u64 << dim) - 1))
            .collect();
        let p = BitMatrix::from_cols(dim, cols)?;
        if p.rank() == dim {
            break p;
        }
    };
    Ok(m.conjugate(&p)?)
}

fn decompose_cmd(m: &AdmissibleModule) -> Run {
    let d = decompose_phi_blocs(m)?;
    let mut r = Report::new("decompose", &["bloc", "d", "dim"]);
    match &d {
        Some(dec) => {
            for (i, &s) in dec.sizes.iter().enumerate() {
                r.push(vec![json!(i + 1), json!(s), json!(2 * s)]);
            }
            r.extra = format!(
                "balanced: yes\nadapted basis (columns)\n{}",
                dec.basis.grid()
            );
        }
        None => {
            r.extra = format!(
                "balanced: no (mu2 witness or Z/2 quotient present)\n{}",
                m.pretty()
            );
        }
    }
    r.detail = Some(json!({ "balanced": d.is_some(), "module": m, "decomposition": d }));
    Ok((r, 0))
}

fn family_report(command: &str, insts: &[FamilyInstance]) -> Report {
    let names = insts
        .first()
        .map(|i| i.family.param_names())
        .unwrap_or(["p1", "p2"]);
    let mut r = Report::new(
        command,
        &[
            names[0],
            names[1],
            "m",
            "n",
            "conductor",
            "prime_pair",
            "delta_c",
        ],
    );
    let s = |x: &Option<BigInt>| x.as_ref().map_or(Value::Null, |v| json!(v.to_string()));
    for i in insts {
        r.push(vec![
            json!(i.params[0]),
            json!(i.params[1]),
            s(&i.m),
            json!(i.n.to_string()),
            s(&i.conductor),
            json!(i.prime_pair),
            json!(i.model.delta_c.to_string()),
        ]);
    }
    r
}

fn richelot_cmd(target: &str, p1: Option<i64>, p2: Option<i64>) -> Run {
    let (source, stated): (Genus2Model, Genus2Model) = if target == "1797" {
        (curve_1797()?, partner_1797()?)
    } else {
        let kind = crate::parse_kind(target).map_err(Failure::usage)?;
        let (Some(a), Some(b)) = (p1, p2) else {
            return Err(Failure::usage("richelot on a family needs two parameters"));
        };
        let inst = family(kind, a, b)?;
        let partner = stated_partner(&inst)?;
        (inst.model, partner)
    };
    let pair = richelot_model(&source)?;
    let iso = same_curve_over_closure(&pair.target_f, &stated.f)?;
    let mut r = Report::new(
        "richelot",
        &[
            "source_f",
            "target_f",
            "delta",
            "twist",
            "stated_f",
            "closure_isomorphic",
            "stated_delta_c",
        ],
    );
    r.push(vec![
        json!(source.f.to_string()),
        json!(pair.target_f.to_string()),
        json!(pair.delta.to_string()),
        json!(pair.twist),
        json!(stated.f.to_string()),
        json!(iso),
        json!(stated.delta_c.to_string()),
    ]);
    r.detail = Some(json!({ "pair": pair, "stated": stated }));
    Ok((r, if iso { 0 } else { STATUS_MISMATCH }))
}

fn verify_cmd(dir: Option<&Path>, cache: &H2Cache) -> Run {
    let rep = verify_tables(dir, Some(cache))?;
    let mut r = Report::new(
        "verify-tables",
        &["table", "row", "key", "expected", "actual", "pass"],
    );
    for row in &rep.rows {
        r.push(vec![
            json!(row.table.to_string()),
            json!(row.row),
            json!(row.key),
            json!(row.expected),
            json!(row.actual),
            json!(row.pass),
        ]);
    }
    let counts: Vec<String> = Table::ALL
        .iter()
        .map(|&t| format!("{t} {}", rep.count(t)))
        .collect();
    let failed = rep.failures().count();
    r.extra = format!("{}; {failed} mismatches\n", counts.join(", "));
    Ok((r, if rep.pass { 0 } else { STATUS_MISMATCH }))
}

fn export_cmd(dir: &Path) -> Run {
    write_embedded(dir)?;
    let mut r = Report::new("verify-tables", &["file"]);
    for t in Table::ALL {
        r.push(vec![json!(dir.join(t.file_name()).display().to_string())]);
    }
    Ok((r, 0))
}
