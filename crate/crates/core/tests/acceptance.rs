//! End-to-end acceptance checks. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use gcliff::classify::{classify_all, diff_against_golden, smoothness_check, table3_rows, Ambient};
use gcliff::clifford::{square_coefficients, superpotential, superpotential_of, CliffordAlgebra, CliffordElement, SymMatrixSeq};
use gcliff::geometry::{
    char_variety, dedup_points, fiber_check, multilinearize, quotient_geometry, sample_curve_points, Count,
};
use gcliff::matrix::Matrix;
use gcliff::quadratic::{
    anticommutator, build_sf, hilbert_truncated, is_regular_sequence, iterate_dual_of_quotient, quadratic_dual,
    regular_against, CentralQuadric, QuadraticPresentation,
};
use gcliff::scalar::{int, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ambients() -> Vec<Ambient> {
    Ambient::all(int(2)).unwrap()
}

fn diag(a: &[Scalar]) -> Matrix<Scalar> {
    Matrix::from_fn(a.len(), a.len(), |i, j| if i == j { a[i].clone() } else { int(0) })
}

fn row_squares(f: &SymMatrixSeq, forms: &[Vec<Scalar>]) -> Vec<Matrix<Scalar>> {
    forms.iter().map(|g| diag(&square_coefficients(f, g))).collect()
}

/// Coefficients of `(1 − t²)^r (1 − t)^{−3}` through degree `d`.
fn ci_series(r: usize, d: usize) -> Vec<i64> {
    let mut v: Vec<i64> = (0..=d as i64).map(|k| (k + 1) * (k + 2) / 2).collect();
    for _ in 0..r {
        for k in (2..=d).rev() {
            v[k] -= v[k - 2];
        }
    }
    v
}

fn table_reproduction() -> Check {
    let t = Instant::now();
    let recs = classify_all().map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    let diff = diff_against_golden(&recs);
    ensure(diff.is_empty(), || diff.join("; "))?;
    let pairs: Vec<(Count, Count)> = recs.iter().map(|r| (r.x3, r.x2)).collect();
    let f = Count::Finite;
    let expected = vec![
        (Count::Infinite, f(2)),
        (f(1), f(1)),
        (f(1), f(0)),
        (f(2), f(1)),
        (f(2), f(0)),
        (f(3), f(0)),
        (f(1), f(1)),
        (f(1), f(0)),
        (f(0), f(0)),
        (f(0), f(0)),
    ];
    ensure(pairs == expected, || format!("characteristic counts {pairs:?}"))?;
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("10 rows match, {elapsed:.2?}"))
}

fn curve_identities() -> Check {
    let mut worst = Duration::ZERO;
    for lam in [2, -1] {
        for amb in Ambient::all(int(lam)).unwrap() {
            let t = Instant::now();
            let f = amb.seq();
            let pv = multilinearize(&build_sf(&f).unwrap()).unwrap();
            ensure(pv.curve().is_proportional(&amb.reference_curve()), || format!("{amb}: curve {}", pv.curve()))?;
            let x3 = &char_variety(&f, 3).unwrap().generators[0];
            ensure(x3.is_proportional(&amb.reference_discriminant()), || format!("{amb}: discriminant {x3}"))?;
            let e = t.elapsed();
            worst = worst.max(e);
            ensure(e < Duration::from_secs(1), || format!("{amb}: took {e:?}"))?;
        }
    }
    Ok(format!("8 ambient instances, slowest {worst:.2?}"))
}

fn random_normalized(rng: &mut ChaCha8Rng) -> SymMatrixSeq {
    let mats = (0..3)
        .map(|m| {
            let mut a = Matrix::zeros(3, 3);
            a.set(m, m, int(2));
            for i in 0..3 {
                for j in i + 1..3 {
                    let v = int(rng.gen_range(-3..=3));
                    a.set(i, j, v.clone());
                    a.set(j, i, v);
                }
            }
            a
        })
        .collect();
    SymMatrixSeq::new(mats).unwrap()
}

fn center_check(f: &SymMatrixSeq) -> Result<bool, String> {
    let a = CliffordAlgebra::new(f).map_err(|e| e.to_string())?;
    let Ok(ce) = a.center_element() else { return Ok(false) };
    let sq = a.mul(&ce.g, &ce.g);
    ensure(sq == CliffordElement::from_poly(ce.det.scale(&ce.c)), || format!("g^2 = {sq}"))?;
    ensure(ce.c == gcliff::scalar::frac(-9, 2), || format!("scalar {}", ce.c))?;
    for i in 0..3 {
        ensure(a.commutator(&ce.g, &a.gen(i)).is_zero(), || format!("[g, x{}] != 0", i + 1))?;
    }
    Ok(true)
}

fn center_identity() -> Check {
    let t = Instant::now();
    for amb in ambients() {
        ensure(center_check(&amb.seq())?, || format!("{amb}: singular pencil"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut done = 0;
    while done < 50 {
        if center_check(&random_normalized(&mut rng))? {
            done += 1;
        }
    }
    let e = t.elapsed();
    ensure(e < Duration::from_secs(30), || format!("took {e:?}"))?;
    Ok(format!("4 ambients + 50 random, {e:.2?}"))
}

fn hilbert_prefixes() -> Check {
    for amb in ambients() {
        let h = hilbert_truncated(&build_sf(&amb.seq()).unwrap(), &[], 6).unwrap();
        ensure(h.coeffs == vec![1, 3, 6, 10, 15, 21, 28], || format!("{amb}: {:?}", h.coeffs))?;
    }
    for (i, row) in table3_rows().iter().enumerate() {
        let f = row.ambient.seq();
        let h = hilbert_truncated(&build_sf(&f).unwrap(), &row_squares(&f, &row.forms), 6).unwrap();
        let want = ci_series(row.forms.len(), 6);
        ensure(h.as_signed() == want, || format!("row {}: {:?} vs {want:?}", i + 1, h.coeffs))?;
        if row.forms.len() == 3 {
            ensure(h.coeffs == vec![1, 3, 3, 1, 0, 0, 0], || "exterior row".into())?;
        }
    }
    Ok("4 ambients, 10 quotients".into())
}

fn duality_round_trips() -> Check {
    for (i, row) in table3_rows().iter().enumerate() {
        let f = row.ambient.seq();
        let p = build_sf(&f).unwrap();
        let squares = row_squares(&f, &row.forms);
        let steps = iterate_dual_of_quotient(&p, &squares).map_err(|e| e.to_string())?;
        let last = &steps.last().unwrap().dual;
        let r = row.forms.len();
        ensure(last.is_commutative() && last.quadrics().len() == 3 - r, || {
            format!("row {}: {} quadrics", i + 1, last.quadrics().len())
        })?;
        let q = p.quotient(&squares).unwrap();
        ensure(quadratic_dual(&quadratic_dual(&q)).same_span(&q), || format!("row {}: double dual", i + 1))?;
    }
    for amb in ambients() {
        let p = build_sf(&amb.seq()).unwrap();
        ensure(quadratic_dual(&quadratic_dual(&p)).same_span(&p), || format!("{amb}: double dual"))?;
        let h = hilbert_truncated(&p, &[], 6).unwrap().as_signed();
        let hd = hilbert_truncated(&quadratic_dual(&p), &[], 6).unwrap().as_signed();
        for d in 0..=6 {
            let c: i64 = (0..=d).map(|k| hd[k] * h[d - k] * if (d - k) % 2 == 1 { -1 } else { 1 }).sum();
            ensure(c == i64::from(d == 0), || format!("{amb}: reciprocity fails in degree {d}"))?;
        }
    }
    Ok("10 rows, 4 ambients".into())
}

fn random_central(rng: &mut ChaCha8Rng, k: usize) -> Vec<Vec<Scalar>> {
    loop {
        let v: Vec<Vec<Scalar>> = (0..k).map(|_| (0..3).map(|_| int(rng.gen_range(-5..=5))).collect()).collect();
        if gcliff::matrix::rank_of(&v) == k {
            return v;
        }
    }
}

fn regularity_census() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0;
    for amb in ambients() {
        let p = build_sf(&amb.seq()).unwrap();
        let ambient = hilbert_truncated(&p, &[], 6).unwrap();
        for _ in 0..200 {
            for k in [2, 3] {
                let fs = random_central(&mut rng, k)
                    .iter()
                    .map(|a| CentralQuadric::diagonal(&p, a))
                    .collect::<gcliff::Result<Vec<_>>>()
                    .map_err(|e| format!("{amb}: {e}"))?;
                let v = regular_against(&p, &ambient, &fs, 6).map_err(|e| e.to_string())?;
                ensure(v.regular, || format!("{amb}: {:?} not regular ({:?})", fs, v.quotient))?;
                checked += 1;
            }
        }
    }
    let poly = QuadraticPresentation::polynomial(3);
    let u11 = Matrix::from_fn(3, 3, |i, j| int(i64::from(i == 0 && j == 0)));
    let half = gcliff::scalar::frac(1, 2);
    let u12 = Matrix::from_fn(3, 3, |i, j| if (i, j) == (0, 1) || (i, j) == (1, 0) { half.clone() } else { int(0) });
    let fs = CentralQuadric::certify(&poly, &[u11, u12]).unwrap();
    let v = is_regular_sequence(&poly, &fs, 6).unwrap();
    ensure(!v.regular, || "u1^2, u1u2 reported regular".into())?;
    Ok(format!("{checked} sequences regular, counterexample rejected"))
}

fn double_cover_suite() -> Check {
    let mut rows = 0;
    for (i, row) in table3_rows().iter().enumerate() {
        let f = row.ambient.seq();
        let geo = quotient_geometry(&f, &row.forms).map_err(|e| e.to_string())?;
        if geo.e.count == Count::Infinite {
            continue;
        }
        let pv = multilinearize(&build_sf(&f).unwrap()).unwrap();
        let x2 = char_variety(&f, 2).unwrap();
        let x3 = char_variety(&f, 3).unwrap();
        let e = geo.e.points.clone().ok_or("unresolved E_A")?;
        let mut images = vec![];
        for p in &e {
            let q = pv.sigma(p).map_err(|e| e.to_string())?;
            ensure(pv.sigma(&q).ok().as_ref() == Some(p), || format!("row {}: sigma^2 != id at {p}", i + 1))?;
            let img = pv.phi(p).map_err(|e| e.to_string())?;
            ensure(x3.vanishes_at(img.coords()).unwrap(), || format!("row {}: image off X3", i + 1))?;
            ensure((q == *p) == x2.vanishes_at(img.coords()).unwrap(), || format!("row {}: fixed point mismatch", i + 1))?;
            images.push(img);
        }
        for img in dedup_points(images.clone()) {
            ensure(images.iter().filter(|x| **x == img).count() <= 2, || format!("row {}: fiber larger than 2", i + 1))?;
        }
        let (ne, n3, n2) = (e.len(), geo.x3.count.finite().unwrap(), geo.x2.count.finite().unwrap());
        ensure(ne + n2 == 2 * n3, || format!("row {}: {ne} != 2*{n3} - {n2}", i + 1))?;
        fiber_check(&f, &geo).map_err(|e| format!("row {}: {e}", i + 1))?;
        rows += 1;
    }
    let mut samples = 0;
    for amb in ambients() {
        let f = amb.seq();
        let pv = multilinearize(&build_sf(&f).unwrap()).unwrap();
        let x3 = char_variety(&f, 3).unwrap();
        for p in sample_curve_points(&pv, &amb.base_point(), 20).unwrap() {
            let Ok(q) = pv.sigma(&p) else { continue };
            ensure(pv.sigma(&q).ok() == Some(p.clone()), || format!("{amb}: sigma^2 != id at {p}"))?;
            if let Ok(img) = pv.phi(&p) {
                ensure(x3.vanishes_at(img.coords()).unwrap(), || format!("{amb}: image off X3"))?;
            }
            samples += 1;
        }
    }
    Ok(format!("{rows} finite rows, {samples} sampled curve points"))
}

fn smoothness_agreement() -> Check {
    let recs = classify_all().map_err(|e| e.to_string())?;
    let mut smooth = vec![];
    for (i, r) in recs.iter().enumerate().filter(|(_, r)| r.r == 1) {
        let ev = smoothness_check(r).map_err(|e| format!("row {}: {e}", i + 1))?;
        if ev.smooth {
            smooth.push(i + 1);
        }
    }
    ensure(smooth == vec![6], || format!("smooth rows {smooth:?}"))?;
    ensure(recs[5].quotient == vec!["x^2+y^2+z^2".to_string()] && recs[5].ambient == "S", || "wrong smooth row".into())?;
    Ok("criteria agree on 6 rows, only row 6 smooth".into())
}

fn superpotentials() -> Check {
    for amb in ambients() {
        let f = amb.seq();
        let w = superpotential(&f).map_err(|e| e.to_string())?.ok_or_else(|| format!("{amb}: none"))?;
        ensure(w.is_symmetric(), || format!("{amb}: not symmetric"))?;
        let d = QuadraticPresentation::from_spanning(3, w.derivatives()).map_err(|e| e.to_string())?;
        ensure(d.same_span(&build_sf(&f).unwrap()), || format!("{amb}: derivatives do not span"))?;
    }
    let mut q = Matrix::zeros(3, 3);
    q.set(0, 1, int(1));
    q.set(1, 0, int(-2));
    let p = QuadraticPresentation::new(3, vec![q, anticommutator(3, 0, 2), anticommutator(3, 1, 2)]).unwrap();
    ensure(superpotential_of(&p).unwrap().is_none(), || "non-symmetric fixture has a superpotential".into())?;
    Ok("4 ambients, non-symmetric fixture gives none".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("table reproduction", table_reproduction),
        ("curve identities", curve_identities),
        ("center identity", center_identity),
        ("hilbert prefixes", hilbert_prefixes),
        ("duality round trips", duality_round_trips),
        ("regularity census", regularity_census),
        ("double cover", double_cover_suite),
        ("smoothness agreement", smoothness_agreement),
        ("superpotential", superpotentials),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} [{:.2?}]", k + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} [{:.2?}]", k + 1, t.elapsed());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
