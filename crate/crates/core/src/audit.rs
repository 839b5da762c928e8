//! The built-in verification suite. Items run concurrently, each with its
//! own seeded sampler, and are reported in name order.

use std::thread;

use serde::Serialize;

use crate::catalog::{self, TableFrame, Variant};
use crate::doubleext::{double_extend, extract};
use crate::flatness::{
    battery, center_sum_is_two_sided_ideal, flat_by_associator, flat_by_right_multiplication, is_flat,
    isotropic_center_is_null, koszul_invariants_hold,
};
use crate::linalg::inverse;
use crate::metric::{MetricLieAlgebra, Signature};
use crate::report::{Check, Report, Status};
use crate::sampling::{self, sampler};
use crate::scalar::{q, Scalar};

pub const DEFAULT_SEED: u64 = 2024;

/// Machine-readable audit result.
#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub passed: bool,
    pub pass: usize,
    pub fail: usize,
    pub warn: usize,
    pub checks: Vec<Check>,
}

impl From<&Report> for Summary {
    fn from(r: &Report) -> Self {
        Summary {
            passed: r.passed(),
            pass: r.count(Status::Pass),
            fail: r.count(Status::Fail),
            warn: r.count(Status::Warn),
            checks: r.checks.clone(),
        }
    }
}

type Item = fn(u64) -> Vec<Check>;

fn check(name: &str, ok: bool, details: impl Into<String>) -> Check {
    Check {
        name: name.to_string(),
        status: Status::from_bool(ok),
        details: details.into(),
    }
}

fn first_failure<T>(items: &[(String, T)], ok: impl Fn(&T) -> bool) -> Option<&str> {
    items.iter().find(|(_, x)| !ok(x)).map(|(n, _)| n.as_str())
}

fn l64_levi_civita(_: u64) -> Vec<Check> {
    let params = [
        [q(0, 1), q(1, 1), q(0, 1), q(1, 1)],
        [q(1, 1), q(2, 1), q(3, 1), q(1, 1)],
        [q(-1, 1), q(1, 2), q(2, 1), q(4, 1)],
    ];
    let mut ok = true;
    let mut bad = Vec::new();
    for [a, b, c, d] in &params {
        let mg = catalog::l64_metric(a, b, c, d).expect("valid parameters");
        let table = catalog::l64_products(a, b, c, d).expect("valid parameters");
        let lc = mg.levi_civita();
        let products = (0..6).all(|i| (0..6).all(|j| lc.basis_product(i, j) == table[i][j]));
        let good = is_flat(&mg) && mg.signature() == Signature::new(2, 0, 4) && products;
        if !good {
            bad.push(format!("({a},{b},{c},{d})"));
        }
        ok &= good;
    }
    let details = if ok {
        "3 parameter sets: flat, signature (2,4), 36 products match the closed forms".to_string()
    } else {
        format!("mismatch at {}", bad.join(" "))
    };
    vec![check("01_l64_flat_metric", ok, details)]
}

fn signature_two_nilpotent() -> Vec<(String, MetricLieAlgebra)> {
    catalog::flat_signature_two_instances()
        .into_iter()
        .filter(|(_, mg)| {
            let g = mg.algebra();
            mg.signature().is_two_negative() && g.is_nilpotent() && !g.is_abelian()
        })
        .collect()
}

fn degenerate_center(_: u64) -> Vec<Check> {
    let sig2 = signature_two_nilpotent();
    let two_step = catalog::flat_two_step_instances();
    let all_flat = first_failure(&sig2, is_flat).or(first_failure(&two_step, is_flat));
    let degenerate = |mg: &MetricLieAlgebra| !mg.isotropic_center().is_zero();
    let bad = first_failure(&sig2, degenerate).or(first_failure(&two_step, degenerate));
    let ok = sig2.len() >= 6 && all_flat.is_none() && bad.is_none();
    let details = match (all_flat, bad) {
        (Some(n), _) => format!("{n} is not flat"),
        (_, Some(n)) => format!("{n} has nondegenerate center"),
        _ => format!(
            "{} signature-(2,n-2) nilpotent instances and {} 2-step instances have Z∩Z⊥ != 0",
            sig2.len(),
            two_step.len()
        ),
    };
    vec![check("02_degenerate_center", ok, details)]
}

fn isotropic_center(_: u64) -> Vec<Check> {
    let mut all = signature_two_nilpotent();
    all.extend(catalog::flat_two_step_instances());
    let null = first_failure(&all, isotropic_center_is_null);
    let ideal = first_failure(&all, center_sum_is_two_sided_ideal);
    let details = match (null, ideal) {
        (Some(n), _) => format!("{n}: some e in Z∩Z⊥ has L_e or R_e nonzero"),
        (_, Some(n)) => format!("{n}: Z+Z⊥ is not a two-sided ideal"),
        _ => format!("{} instances: L_e = R_e = 0 on Z∩Z⊥ and Z+Z⊥ is a two-sided ideal", all.len()),
    };
    vec![check("03_isotropic_center", null.is_none() && ideal.is_none(), details)]
}

fn round_trip(seed: u64) -> Vec<Check> {
    let mut rng = sampler(seed);
    for trial in 0..100 {
        let quad = sampling::nilpotent_quadruple(&mut rng);
        let fail = |what: &str| vec![check("04_double_extension_round_trip", false, format!("trial {trial}: {what}"))];
        let Ok((mg, frame)) = double_extend(&quad) else {
            return fail("quadruple rejected");
        };
        if !is_flat(&mg) || !mg.algebra().is_nilpotent() {
            return fail("extension not flat and nilpotent");
        }
        let p = sampling::invertible_matrix(&mut rng, mg.dim());
        let moved = mg.change_basis(&p).expect("invertible");
        let e = inverse(&p).expect("invertible").mul_vec(&frame.e);
        let Ok((back, adapted)) = extract(&moved, &e) else {
            return fail("extraction rejected");
        };
        let rebuilt = match double_extend(&back) {
            Ok((g, _)) => g,
            Err(err) => return fail(&format!("extracted quadruple rejected: {err}")),
        };
        if moved.change_basis(&adapted.matrix()).ok() != Some(rebuilt) {
            return fail("rebuilt algebra differs in the adapted basis");
        }
    }
    vec![check(
        "04_double_extension_round_trip",
        true,
        "100 random quadruples: flat, nilpotent, exact round trip after a random base change",
    )]
}

fn trichotomy(seed: u64) -> Vec<Check> {
    let mut rng = sampler(seed);
    let mut hits = [0usize; 3];
    for trial in 0..200 {
        let ([a, b, c, d], form) = sampling::example4dim_parameters(&mut rng);
        let mg = match catalog::example4dim(&a, &b, &c, &d, &form) {
            Ok(mg) => mg,
            Err(e) => return vec![check("05_four_dim_trichotomy", false, format!("trial {trial}: {e}"))],
        };
        let class = catalog::classify4(mg.algebra());
        if !is_flat(&mg) || mg.signature() != Signature::new(2, 0, 2) || class.is_none() {
            return vec![check(
                "05_four_dim_trichotomy",
                false,
                format!("trial {trial} ({a},{b},{c},{d}): flat {}, class {class:?}", is_flat(&mg)),
            )];
        }
        hits[class.expect("checked") as usize] += 1;
    }
    let ok = hits.iter().all(|&h| h > 0);
    vec![check(
        "05_four_dim_trichotomy",
        ok,
        format!("200 draws, flat of signature (2,2): R^4 {}, H3+R {}, filiform {}", hits[0], hits[1], hits[2]),
    )]
}

fn norm_constraint(seed: u64) -> Vec<Check> {
    let mut rng = sampler(seed);
    for trial in 0..100 {
        let data = sampling::theorem62_data(&mut rng);
        let fail = |what: String| vec![check("06_norm_constraint", false, format!("trial {trial}: {what}"))];
        let (mg, frame) = match data.build() {
            Ok(x) => x,
            Err(e) => return fail(e.to_string()),
        };
        let v = catalog::theorem62_check(&mg, &frame).expect("standard frame");
        if !v.flat || !v.holds() {
            return fail(format!("constraint holds but flat = {}", v.flat));
        }
        let shift = sampling::norm_shift(&mut rng, &data);
        let (bad, frame) = data.shifted(&shift).and_then(|d| d.build_unchecked()).expect("positive shift");
        let v = catalog::theorem62_check(&bad, &frame).expect("standard frame");
        if v.flat || v.constraint_holds() {
            return fail(format!("shift {shift} leaves the metric flat"));
        }
    }
    vec![check(
        "06_norm_constraint",
        true,
        "100 draws: flat when 3<z0,z0> matches, not flat after a nonzero shift",
    )]
}

fn frame_item(t: &TableFrame, index: char) -> Check {
    let variant = match t.variant {
        Variant::Printed => "printed",
        Variant::Corrected => "corrected",
    };
    let name = format!("07{index}_frame_{}_{variant}", t.name);
    let verdict = t.check();
    match (t.variant, t.name, verdict) {
        (Variant::Printed, "L5_1+L1", Ok(v)) => {
            let expected = v.shape && v.normalization && !v.flat && v.lhs == Some(q(3, 1)) && v.rhs == Some(q(1, 1));
            Check {
                name,
                status: if expected { Status::Warn } else { Status::Fail },
                details: format!(
                    "printed datum: 3<z0,z0> = {} but the right side is {}; flat = {}",
                    fmt_opt(&v.lhs),
                    fmt_opt(&v.rhs),
                    v.flat
                ),
            }
        }
        (Variant::Printed, "L3+L3", Err(e)) => Check {
            name,
            status: Status::Warn,
            details: format!("printed frame repeats x1 ({e})"),
        },
        (_, _, Ok(v)) => {
            let ok = v.holds() && v.flat && v.consistent();
            check(
                &name,
                ok,
                format!("{}: both sides {} / {}, flat = {}", t.note, fmt_opt(&v.lhs), fmt_opt(&v.rhs), v.flat),
            )
        }
        (_, _, Err(e)) => check(&name, false, e.to_string()),
    }
}

fn fmt_opt(s: &Option<Scalar>) -> String {
    s.as_ref().map_or("-".to_string(), Scalar::to_string)
}

fn table_frames(_: u64) -> Vec<Check> {
    let frames = catalog::table_frames();
    let order = [
        ("L6_3", Variant::Printed, 'a'),
        ("L6_5(-1)", Variant::Printed, 'b'),
        ("L3+L3", Variant::Corrected, 'c'),
        ("L5_1+L1", Variant::Corrected, 'd'),
        ("L5_1+L1", Variant::Printed, 'e'),
        ("L3+L3", Variant::Printed, 'f'),
    ];
    let mut out: Vec<Check> = order
        .iter()
        .map(|&(n, v, c)| {
            let t = frames.iter().find(|t| t.name == n && t.variant == v).expect("listed");
            frame_item(t, c)
        })
        .collect();

    let algebra = catalog::sixdim_table("L5_4+L1").expect("known");
    let candidates = catalog::permutation_frames(&algebra);
    let mut valid = 0;
    let mut flat = 0;
    let mut inconsistent = 0;
    for (frame, z_gram) in &candidates {
        let Ok(form) = frame.induced_form(z_gram) else { continue };
        let mg = MetricLieAlgebra::new(algebra.clone(), form).expect("nondegenerate");
        let v = catalog::theorem62_check(&mg, frame).expect("well-formed frame");
        valid += usize::from(v.holds());
        flat += usize::from(v.flat);
        inconsistent += usize::from(!v.consistent());
    }
    out.push(check(
        "07g_L5_4+L1_candidates",
        valid == 0 && flat == 0 && inconsistent == 0,
        format!(
            "{} permutation frames: {valid} satisfy the bracket shape and norm constraint, {flat} flat; consistent with nonexistence",
            candidates.len()
        ),
    ));
    out
}

fn euclidean_rigidity(seed: u64) -> Vec<Check> {
    let mut rng = sampler(seed);
    let algebras = [
        catalog::heisenberg(1).expect("k = 1"),
        catalog::heisenberg(2).expect("k = 2"),
        catalog::sixdim_table("L6_4").expect("known"),
    ];
    for g in &algebras {
        for _ in 0..20 {
            let f = sampling::positive_definite_form(&mut rng, g.dim());
            let mg = MetricLieAlgebra::new(g.clone(), f).expect("definite");
            if is_flat(&mg) {
                return vec![check(
                    "08_euclidean_rigidity",
                    false,
                    format!("{} has a flat definite metric", g.name().unwrap_or("?")),
                )];
            }
        }
    }
    vec![check("08_euclidean_rigidity", true, "H3, H5, L6_4 with 20 definite forms each: none flat")]
}

/// Catalog metric algebras plus `extra` random ones.
fn catalog_metrics() -> Vec<(String, MetricLieAlgebra)> {
    let mut out = Vec::new();
    for name in catalog::NAMES {
        let n = if name == "R^n" { "R^4" } else { name };
        out.push((n.to_string(), catalog::by_name(n).expect("listed").metric));
    }
    out.extend(catalog::flat_signature_two_instances());
    out.extend(catalog::flat_two_step_instances());
    for t in catalog::table_frames() {
        if let Ok(mg) = t.metric() {
            out.push((t.label(), mg));
        }
    }
    out
}

fn koszul(seed: u64) -> Vec<Check> {
    let mut rng = sampler(seed);
    let mut all = catalog_metrics();
    for i in 0..20 {
        let [a, b, c, d] = sampling::l64_parameters(&mut rng);
        all.push((format!("random L6_4 #{i}"), catalog::l64_metric(&a, &b, &c, &d).expect("valid")));
    }
    for i in 0..40 {
        all.push((format!("random #{i}"), sampling::metric_algebra(&mut rng)));
    }
    let bad = first_failure(&all, koszul_invariants_hold);
    vec![check(
        "09_koszul_invariants",
        bad.is_none(),
        match bad {
            Some(n) => format!("{n}: L_u not skew or L_u - R_u != ad_u"),
            None => format!("{} metric algebras: L_u skew and L_u - R_u = ad_u", all.len()),
        },
    )]
}

fn flatness_criteria(seed: u64) -> Vec<Check> {
    let mut rng = sampler(seed);
    let mut all = catalog_metrics();
    for i in 0..50 {
        all.push((format!("random #{i}"), sampling::metric_algebra(&mut rng)));
    }
    let agree = |mg: &MetricLieAlgebra| {
        let h = is_flat(mg);
        flat_by_associator(mg) == h && flat_by_right_multiplication(mg) == h
    };
    let bad = first_failure(&all, agree);
    let flat = all.iter().filter(|(_, mg)| is_flat(mg)).count();
    vec![check(
        "10_flatness_criteria",
        bad.is_none() && flat > 0 && flat < all.len(),
        match bad {
            Some(n) => format!("{n}: the three flatness tests disagree"),
            None => format!(
                "{} metric algebras ({flat} flat, {} not): associator, homomorphism and right-multiplication tests agree",
                all.len(),
                all.len() - flat
            ),
        },
    )]
}

fn structural(_: u64) -> Vec<Check> {
    let mut all = catalog::flat_signature_two_instances();
    all.extend(catalog::flat_two_step_instances());
    let bad = all.iter().find_map(|(n, mg)| {
        let r = battery(mg);
        (!r.passed()).then(|| {
            let failed: Vec<&str> = r
                .checks
                .iter()
                .filter(|c| c.status == Status::Fail)
                .map(|c| c.name.as_str())
                .collect();
            format!("{n}: {}", failed.join(", "))
        })
    });
    vec![check(
        "11_structural_checks",
        bad.is_none(),
        bad.unwrap_or_else(|| format!("{} flat instances pass the full check battery", all.len())),
    )]
}

const ITEMS: [Item; 11] = [
    l64_levi_civita,
    degenerate_center,
    isotropic_center,
    round_trip,
    trichotomy,
    norm_constraint,
    table_frames,
    euclidean_rigidity,
    koszul,
    flatness_criteria,
    structural,
];

/// Runs every item and returns the checks sorted by name.
pub fn run(seed: u64) -> Report {
    let mut checks: Vec<Check> = thread::scope(|s| {
        let handles: Vec<_> = ITEMS
            .iter()
            .enumerate()
            .map(|(i, item)| s.spawn(move || item(seed.wrapping_add(i as u64))))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("audit item panicked"))
            .collect()
    });
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    Report { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_audit_passes_with_two_warnings() {
        let report = run(DEFAULT_SEED);
        for c in &report.checks {
            eprintln!("{} {:?} {}", c.name, c.status, c.details);
        }
        assert!(report.passed(), "{report}");
        assert_eq!(report.count(Status::Warn), 2);
        assert_eq!(report.count(Status::Fail), 0);
        let names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }
}
