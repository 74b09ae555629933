//! Special functions against the frozen high-precision reference tables in
//! `tests/data` (generated by the scripts in `tests/oracle`).

use fracstable::special::{bessel_k, mittag_leffler, MLParams};
use num_complex::Complex64;

fn table(name: &str) -> Vec<Vec<String>> {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    text.lines().skip(1).map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap_or_else(|_| panic!("bad number {s}"))
}

#[test]
fn mittag_leffler_matches_oracle() {
    let rows = table("mittag_leffler_oracle.csv");
    assert_eq!(rows.len(), 500);
    let mut worst = (0.0, String::new());
    let mut failures = 0;
    for r in &rows {
        let p = MLParams::new(num(&r[0]), num(&r[1]), Complex64::new(num(&r[2]), num(&r[3])));
        let want = Complex64::new(num(&r[4]), num(&r[5]));
        let got = mittag_leffler(p).unwrap_or_else(|e| panic!("{p:?}: {e}"));
        let rel = (got - want).norm() / want.norm();
        if rel > 1e-10 {
            failures += 1;
            eprintln!("psi={} theta={} z={} got {got} want {want} rel {rel:e} [{}]", p.psi, p.theta, p.z, r[6]);
        }
        if rel > worst.0 {
            worst = (rel, format!("{p:?}"));
        }
    }
    eprintln!("worst relative error {:e} at {}", worst.0, worst.1);
    assert_eq!(failures, 0);
}

#[test]
fn bessel_k_matches_oracle() {
    let path = format!("{}/tests/data/bessel_k_oracle.csv", env!("CARGO_MANIFEST_DIR"));
    if !std::path::Path::new(&path).exists() {
        panic!("missing {path}");
    }
    let rows = table("bessel_k_oracle.csv");
    assert_eq!(rows.len(), 200);
    let mut worst = 0.0f64;
    for r in &rows {
        let (nu, x, want) = (num(&r[0]), num(&r[1]), num(&r[2]));
        let got = bessel_k(nu, x).unwrap();
        let rel = ((got - want) / want).abs();
        assert!(rel <= 1e-10, "nu={nu} x={x}: {got} vs {want} ({rel:e})");
        worst = worst.max(rel);
    }
    eprintln!("worst relative error {worst:e}");
}
