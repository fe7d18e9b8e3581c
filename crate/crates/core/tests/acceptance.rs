//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use flagconn::chevalley::{bracket, chevalley_basis_element, LieElement};
use flagconn::connection::u_root_pair;
use flagconn::oracle::{check_lemma2, check_metric_compat, check_oracle_equivalence, check_torsion, u_oracle};
use flagconn::su::{check_su_specialization, su3_coefficients, u_su3, u_sun, EpsCoefficients, EpsRoot, SuRealization};
use flagconn::{assemble_tensor, build_metric, Family, FlagManifold, MVector, MetricSpec};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;
const SEEDS: [u64; 5] = [11, 22, 33, 44, 55];

type Outcome = Result<String, String>;

fn sweep() -> Vec<FlagManifold> {
    [(Family::A, 2), (Family::A, 3), (Family::B, 2), (Family::B, 3), (Family::C, 3), (Family::D, 4)]
        .into_iter()
        .map(|(f, l)| FlagManifold::new(f, l).expect("sweep systems are valid"))
        .collect()
}

fn name(fm: &FlagManifold) -> String {
    format!("{}{}", fm.roots().family(), fm.roots().rank())
}

fn err(e: flagconn::Error) -> String {
    e.to_string()
}

fn oracle_equivalence(sweep: &[FlagManifold]) -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for fm in sweep {
        for seed in SEEDS {
            let spec = MetricSpec::random(fm.roots(), seed);
            let r = check_oracle_equivalence(fm, &spec, TOL).map_err(err)?;
            if !r.passed {
                return Err(format!("{} seed {seed}: {r}", name(fm)));
            }
            worst = worst.max(r.max_residual);
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(30) {
        return Err(format!("took {elapsed:.1?}"));
    }
    Ok(format!("max |closed - oracle| = {worst:.2e} over 30 metrics in {elapsed:.1?}"))
}

fn levi_civita(sweep: &[FlagManifold]) -> Outcome {
    let (mut tor, mut met) = (0.0f64, 0.0f64);
    for fm in sweep {
        for seed in SEEDS {
            let spec = MetricSpec::random(fm.roots(), seed);
            let t = assemble_tensor(fm, &spec).map_err(err)?;
            let g = build_metric(fm.roots(), fm.killing(), fm.basis(), &spec).map_err(err)?;
            let rt = check_torsion(&t, fm.m_structure(), TOL).map_err(err)?;
            let rm = check_metric_compat(&t, &g, TOL).map_err(err)?;
            if !rt.passed || !rm.passed {
                return Err(format!("{} seed {seed}: {rt}; {rm}", name(fm)));
            }
            tor = tor.max(rt.max_residual);
            met = met.max(rm.max_residual);

            let bad = t.perturbed(0, 2, 1, 1e-3);
            let bt = check_torsion(&bad, fm.m_structure(), TOL).map_err(err)?;
            let bm = check_metric_compat(&bad, &g, TOL).map_err(err)?;
            if bt.passed || bm.passed {
                return Err(format!("{}: perturbed tensor not detected", name(fm)));
            }
        }
    }
    Ok(format!("torsion {tor:.2e}, metric {met:.2e}; perturbation detected everywhere"))
}

fn lemma1_zero_branch() -> Outcome {
    let fm = FlagManifold::new(Family::A, 3).map_err(err)?;
    let rs = fm.roots();
    let spec = MetricSpec::random(rs, 7);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut pairs = 0;
    for g in rs.ids() {
        for d in rs.ids() {
            if rs.sum(g, d).is_some() {
                continue;
            }
            let x = Complex::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let y = Complex::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let u: LieElement<f64> = u_root_pair(&fm, &spec, x, g, y, d);
            if !u.is_zero() {
                return Err(format!("nonzero for {} + {}", rs.root(g), rs.root(d)));
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs give exactly zero"))
}

fn normal_degeneration(sweep: &[FlagManifold]) -> Outcome {
    let mut worst = 0.0f64;
    for fm in sweep {
        for value in [1.0, 2.5] {
            let spec = MetricSpec::normal(fm.roots(), value).map_err(err)?;
            let t = assemble_tensor(fm, &spec).map_err(err)?;
            let m = t.u_part(fm).iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if m > 1e-12 {
                return Err(format!("{} c = {value}: max |U| = {m:.2e}", name(fm)));
            }
            worst = worst.max(m);
        }
    }
    Ok(format!("max |U| = {worst:.2e}"))
}

fn lemma2() -> Outcome {
    for (f, l) in [(Family::A, 3), (Family::B, 3)] {
        let rs = flagconn::RootSystem::build(f, l).map_err(err)?;
        let r = check_lemma2(&rs);
        if !r.passed {
            return Err(format!("{f}{l}: {r}"));
        }
    }
    Ok("every ordered pair in A3 and B3 has exactly one candidate".into())
}

fn su_specialization() -> Outcome {
    let mut worst = 0.0f64;
    for n in [2, 3] {
        let real = SuRealization::new(n).map_err(err)?;
        for seed in SEEDS {
            let spec = MetricSpec::random(real.flag().roots(), seed);
            let r = check_su_specialization(&real, &spec, TOL).map_err(err)?;
            if !r.passed {
                return Err(format!("n = {n} seed {seed}: {r}"));
            }
            worst = worst.max(r.max_residual);
        }
    }

    let k = su3_coefficients(1.0, 2.0, 3.0).map_err(err)?;
    for (got, want) in k.iter().zip([0.5, 0.5, 1.0 / 6.0]) {
        if (got - want).abs() > f64::EPSILON {
            return Err(format!("SU(3) coefficients {k:?}"));
        }
    }

    let real = SuRealization::new(2).map_err(err)?;
    let eps = |i, j| EpsRoot::new(2, i, j).expect("valid root of A2");
    let coeffs = EpsCoefficients::new(2, [(eps(1, 2), 1.0), (eps(1, 3), 2.0), (eps(2, 3), 3.0)]).map_err(err)?;
    let mut machine = 0.0f64;
    for i in 0..6 {
        for j in 0..6 {
            let (x, y) = (MVector::unit(6, i), MVector::unit(6, j));
            let a = u_su3(&real, 1.0, 2.0, 3.0, &x, &y).map_err(err)?;
            let b = u_sun(&real, &coeffs, &x, &y).map_err(err)?;
            let d = a.max_abs_diff(&b);
            if d > 4.0 * f64::EPSILON * (1.0 + a.max_abs()) {
                return Err(format!("u_su3 and u_sun differ by {d:.2e} at ({i}, {j})"));
            }
            machine = machine.max(d);
        }
    }

    // the oracle, evaluated directly for the same metric
    let fm = real.flag();
    let spec = coeffs.to_metric(fm).map_err(err)?;
    let gram = build_metric(fm.roots(), fm.killing(), fm.basis(), &spec).map_err(err)?;
    for i in 0..6 {
        for j in 0..6 {
            let (xa, ya) = (MVector::unit(6, i), MVector::unit(6, j));
            let o = real.to_matrix_coords(&u_oracle(fm, &gram, &xa, &ya).map_err(err)?);
            let s = u_sun(&real, &coeffs, &real.to_matrix_coords(&xa), &real.to_matrix_coords(&ya)).map_err(err)?;
            if o.max_abs_diff(&s) > TOL {
                return Err(format!("c = (1,2,3): u_sun vs oracle at ({i}, {j})"));
            }
        }
    }
    Ok(format!(
        "n = 2, 3 residual {worst:.2e}; SU(3) coefficients {:.4}, {:.4}, {:.4}; u_su3 vs u_sun {machine:.2e}",
        k[0], k[1], k[2]
    ))
}

fn structure_constants() -> Outcome {
    let mut worst = 0.0f64;
    for n in [2, 3] {
        let real = SuRealization::new(n).map_err(err)?;
        let r = real.check_brackets(1e-12);
        if !r.passed {
            return Err(format!("su({}): {r}", n + 1));
        }
        worst = worst.max(r.max_residual);
    }
    let systems = [
        (Family::A, 1),
        (Family::A, 2),
        (Family::A, 3),
        (Family::A, 4),
        (Family::B, 2),
        (Family::B, 3),
        (Family::B, 4),
        (Family::C, 2),
        (Family::C, 3),
        (Family::C, 4),
        (Family::D, 3),
        (Family::D, 4),
    ];
    for (f, l) in systems {
        let fm = FlagManifold::new(f, l).map_err(err)?;
        let sc = fm.constants();
        let basis: Vec<LieElement<i64>> = (0..sc.dim()).map(|k| chevalley_basis_element(sc, k)).collect();
        for x in &basis {
            for y in &basis {
                let xy = bracket(sc, x, y).map_err(err)?;
                for z in &basis {
                    let mut s = bracket(sc, x, &bracket(sc, y, z).map_err(err)?).map_err(err)?;
                    s.add_assign(&bracket(sc, y, &bracket(sc, z, x).map_err(err)?).map_err(err)?);
                    s.add_assign(&bracket(sc, z, &xy).map_err(err)?);
                    if !s.is_zero() {
                        return Err(format!("Jacobi fails in {f}{l}"));
                    }
                }
            }
        }
    }
    Ok(format!("bracket tables agree to {worst:.2e}; Jacobi exact on 12 systems"))
}

fn a3_performance() -> Outcome {
    let start = Instant::now();
    let fm = FlagManifold::new(Family::A, 3).map_err(err)?;
    let spec = MetricSpec::random(fm.roots(), 1);
    let t = assemble_tensor(&fm, &spec).map_err(err)?;
    let g = build_metric(fm.roots(), fm.killing(), fm.basis(), &spec).map_err(err)?;
    let real = SuRealization::new(3).map_err(err)?;
    let reports = [
        check_oracle_equivalence(&fm, &spec, TOL).map_err(err)?,
        check_torsion(&t, fm.m_structure(), TOL).map_err(err)?,
        check_metric_compat(&t, &g, TOL).map_err(err)?,
        check_lemma2(fm.roots()),
        check_su_specialization(&real, &spec, TOL).map_err(err)?,
    ];
    let elapsed = start.elapsed();
    if let Some(r) = reports.iter().find(|r| !r.passed) {
        return Err(r.to_string());
    }
    if elapsed > Duration::from_secs(10) {
        return Err(format!("took {elapsed:.1?}"));
    }
    Ok(format!("dim m = {}, assembly and all checks in {elapsed:.2?}", fm.dim()))
}

fn main() -> ExitCode {
    let sweep = sweep();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 oracle equivalence", Box::new(|| oracle_equivalence(&sweep))),
        ("2 Levi-Civita axioms", Box::new(|| levi_civita(&sweep))),
        ("3 zero branch for non-roots", Box::new(lemma1_zero_branch)),
        ("4 normal metric degeneration", Box::new(|| normal_degeneration(&sweep))),
        ("5 canonical pair uniqueness", Box::new(lemma2)),
        ("6 SU(n+1) specialization", Box::new(su_specialization)),
        ("7 structure constants", Box::new(structure_constants)),
        ("8 A3 pipeline runtime", Box::new(a3_performance)),
    ];
    let mut failed = 0;
    for (label, run) in &criteria {
        match run() {
            Ok(detail) => println!("PASS {label}: {detail}"),
            Err(detail) => {
                println!("FAIL {label}: {detail}");
                failed += 1;
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
