//! Verification suites: each check prints one ok/FAIL line; the command
//! exits nonzero if any check fails.

use madelung::series::{self, Evaluator, MadelungQuery, Method};
use madelung::squares::{self, Parity, RepTable};
use madelung::{closed_form, cusp, special};
use num_traits::ToPrimitive;

pub struct Report {
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    fn new() -> Self {
        Report {
            passed: 0,
            failed: 0,
        }
    }

    fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
            println!("ok   {name}");
        } else {
            self.failed += 1;
            println!("FAIL {name} ({})", detail());
        }
    }
}

const TABLE_I_ROWS: [(u64, [u64; 6]); 29] = [
    (1, [4, 6, 8, 12, 16, 20]),
    (2, [4, 12, 24, 60, 112, 180]),
    (3, [0, 8, 32, 160, 448, 960]),
    (4, [4, 6, 24, 252, 1136, 3380]),
    (5, [8, 24, 48, 312, 2016, 8424]),
    (6, [0, 24, 96, 544, 3136, 16320]),
    (7, [0, 0, 64, 960, 5504, 28800]),
    (8, [4, 12, 24, 1020, 9328, 52020]),
    (9, [4, 30, 104, 876, 12112, 88660]),
    (10, [8, 24, 144, 1560, 14112, 129064]),
    (11, [0, 24, 96, 2400, 21312, 175680]),
    (12, [0, 8, 96, 2080, 31808, 262080]),
    (13, [8, 24, 112, 2040, 35168, 386920]),
    (14, [0, 48, 192, 3264, 38528, 489600]),
    (15, [0, 0, 192, 4160, 56448, 600960]),
    (16, [4, 6, 24, 4092, 74864, 840500]),
    (17, [8, 48, 144, 3480, 78624, 1137960]),
    (18, [4, 36, 312, 4380, 84784, 1330420]),
    (19, [0, 24, 160, 7200, 109760, 1563840]),
    (20, [8, 24, 144, 6552, 143136, 2050344]),
    (40, [8, 24, 144, 26520, 1175328, 32826664]),
    (60, [0, 0, 576, 54080, 4007808, 164062080]),
    (80, [8, 24, 144, 106392, 9432864, 525104424]),
    (100, [12, 30, 744, 164052, 17893136, 1282320348]),
    (120, [0, 48, 576, 213824, 32909184, 2625594240]),
    (140, [0, 48, 1152, 324480, 49238784, 4921862400]),
    (160, [8, 24, 144, 425880, 75493152, 8402122024]),
    (180, [8, 72, 1872, 478296, 108353952, 13297454504]),
    (200, [12, 84, 744, 664020, 146925328, 20513309148]),
];

fn suite_squares(report: &mut Report) {
    let mut table = RepTable::new();
    table.ensure(10, 400);
    let dims = [2usize, 3, 4, 6, 8, 10];
    let mut all = true;
    for &(m, counts) in TABLE_I_ROWS.iter() {
        for (i, &dim) in dims.iter().enumerate() {
            all &= table.get(dim, m as usize).to_u64() == Some(counts[i]);
        }
    }
    report.check("squares: published table entries exact", all, || {
        "at least one r_N(m) differs".into()
    });

    let mut odd = squares::OddRepTable::new();
    odd.ensure(6, 100);
    let mut oracle_ok = true;
    for n in 1..=6u32 {
        let any = squares::brute_force_counts(n, 100, Parity::Any).unwrap();
        let odd_counts = squares::brute_force_counts(n, 100, Parity::Odd).unwrap();
        for m in 0..=100usize {
            oracle_ok &= &any[m] == table.get(n as usize, m);
            oracle_ok &= &odd_counts[m] == odd.get(n as usize, m);
        }
    }
    report.check(
        "squares: brute-force oracle equivalence (N ≤ 6, m ≤ 100)",
        oracle_ok,
        || "enumeration disagrees with the recursion".into(),
    );

    let theta = madelung::qseries::theta_plain(60);
    let mut gen_ok = true;
    for n in 1..=10u32 {
        let p = theta.pow(n);
        for m in 0..=60usize {
            gen_ok &= p.coeff(m).magnitude() == table.get(n as usize, m);
        }
    }
    report.check(
        "squares: theta-power generating function (N ≤ 10, m ≤ 60)",
        gen_ok,
        || "θ^N coefficient mismatch".into(),
    );

    let mut growth_ok = true;
    for m in 1..=400usize {
        let ratio = table.get(10, m).to_f64().unwrap() / (m as f64).powi(5);
        growth_ok &= ratio < 100.0;
    }
    report.check("squares: r_10(m) = O(m^5) growth bound", growth_ok, || {
        "ratio r_10(m)/m^5 exceeded 100".into()
    });
}

fn suite_zucker(report: &mut Report) {
    let mut ev = Evaluator::new();
    for &n in &[1u32, 2, 4, 6, 8] {
        for &s in &[0.5, 1.5, 3.0, 6.0] {
            let closed = closed_form::zucker(n, s).unwrap();
            let numeric = ev
                .compute(&MadelungQuery::new(n, s).with_method(Method::Recursive))
                .unwrap()
                .value;
            report.check(
                &format!("zucker: N = {n}, s = {s}: closed form vs series"),
                (closed - numeric).abs() < 1e-12,
                || format!("{closed} vs {numeric}"),
            );
        }
    }
    for &n in &[1u32, 2, 4, 6, 8] {
        let v = closed_form::zucker(n, 60.0).unwrap();
        report.check(
            &format!("zucker: N = {n} approaches -2N"),
            (v - closed_form::neighbor_limit(n)).abs() < 1e-12,
            || format!("{v}"),
        );
    }
    report.check(
        "zucker: M_6(0) = M_8(0) = -1",
        (closed_form::zucker(6, 0.0).unwrap() + 1.0).abs() < 1e-13
            && (closed_form::zucker(8, 0.0).unwrap() + 1.0).abs() < 1e-13,
        || "critical value mismatch".into(),
    );
    let tyagi = closed_form::tyagi_m3();
    let benson = closed_form::benson_mackenzie_m3();
    let hautot = closed_form::hautot_m3();
    let rec = ev
        .compute(&MadelungQuery::new(3, 0.5).with_method(Method::Recursive))
        .unwrap()
        .value;
    report.check(
        "zucker: three M_3(1/2) formulas agree pairwise and with the series",
        (tyagi - benson).abs() < 1e-12
            && (benson - hautot).abs() < 1e-12
            && (tyagi - rec).abs() < 1e-12,
        || format!("tyagi {tyagi}, benson {benson}, hautot {hautot}, series {rec}"),
    );
}

fn suite_cusp(report: &mut Report) {
    let listed: [(u64, i64); 9] = [
        (3, -12),
        (5, 54),
        (7, -88),
        (11, 540),
        (13, -418),
        (17, 594),
        (19, 836),
        (23, -4104),
        (29, -594),
    ];
    let mut ok = true;
    for &(p, want) in &listed {
        ok &= cusp::e12(p).unwrap().to_i64() == Some(want);
    }
    report.check("cusp: listed e_12 prime values", ok, || {
        "an e_12(p) differs from the published list".into()
    });

    let mut mult_ok = true;
    for m in 2u64..=100 {
        for n in 2u64..=200 / m {
            if gcd(m, n) == 1 {
                mult_ok &=
                    cusp::e12(m * n).unwrap() == cusp::e12(m).unwrap() * cusp::e12(n).unwrap();
            }
        }
    }
    report.check("cusp: e_12 multiplicative on coprime pairs ≤ 200", mult_ok, || {
        "multiplicativity violated".into()
    });

    let mut rec_ok = true;
    for p in [3u64, 5, 7] {
        let mut lambda = 1u32;
        while p.pow(lambda + 1) <= 200 {
            let lhs = cusp::e12(p.pow(lambda + 1)).unwrap();
            let rhs = cusp::e12(p).unwrap() * cusp::e12(p.pow(lambda)).unwrap()
                - num_bigint_pow5(p) * cusp::e12(p.pow(lambda - 1)).unwrap();
            rec_ok &= lhs == rhs;
            lambda += 1;
        }
    }
    report.check("cusp: prime-power three-term recurrence (p = 3, 5, 7)", rec_ok, || {
        "recurrence violated".into()
    });

    let mut bound_ok = true;
    let mut parity_ok = true;
    for n in 1u64..=200 {
        let e = cusp::e12(n).unwrap();
        let d = num_bigint::BigInt::from(cusp::divisor_count(n));
        bound_ok &= &e * &e <= num_bigint::BigInt::from(n).pow(5) * (&d * &d);
        if n % 2 == 0 {
            parity_ok &= e == num_bigint::BigInt::from(0);
        }
    }
    report.check("cusp: Deligne bound |e_12(n)| ≤ n^{5/2} d(n) for n ≤ 200", bound_ok, || {
        "bound violated".into()
    });
    report.check("cusp: e_12 vanishes on even n ≤ 200", parity_ok, || {
        "nonzero even coefficient".into()
    });

    for k in 1..=4u8 {
        report.check(
            &format!("cusp: Jacobi {}-squares identity to order 200", 2 * k),
            cusp::verify_jacobi(k, 200).unwrap(),
            || "coefficient mismatch".into(),
        );
    }
    for k in [5u8, 6] {
        report.check(
            &format!("cusp: Glaisher {}-squares identity to order 200", 2 * k),
            cusp::verify_glaisher(k, 200).unwrap(),
            || "coefficient mismatch".into(),
        );
    }

    let v = cusp::m12_cusp(6.0).unwrap();
    let rec = series::madelung_recursive(&MadelungQuery::new(12, 6.0))
        .unwrap()
        .value;
    report.check(
        "cusp: M_12(6) via Dirichlet series vs recursion",
        (v.value - rec).abs() < 1e-11,
        || format!("{} vs {rec}", v.value),
    );
}

fn suite_continuation(report: &mut Report) {
    for n in 1..=6u32 {
        let v0 = series::madelung(&MadelungQuery::new(n, 0.0)).unwrap().value;
        let v1 = series::madelung(&MadelungQuery::new(n, -1.0)).unwrap().value;
        report.check(
            &format!("continuation: M_{n}(0) = -1 and M_{n}(-1) = 0"),
            (v0 + 1.0).abs() < 1e-10 && v1.abs() < 1e-10,
            || format!("M(0) = {v0}, M(-1) = {v1}"),
        );
    }
    let mut eta_zeta_ok = true;
    for &s in &[-3.5, -2.5, 0.5, 2.0, 4.0] {
        let lhs = special::eta(s);
        let rhs = (1.0 - 2.0_f64.powf(1.0 - s)) * special::zeta(s).unwrap();
        eta_zeta_ok &= ((lhs - rhs) / lhs).abs() < 1e-12;
    }
    report.check("continuation: η(s) = (1 - 2^{1-s}) ζ(s)", eta_zeta_ok, || {
        "identity violated".into()
    });
    let mut bessel_ok = true;
    for &nu in &[0.3, 0.5, 1.7] {
        for &x in &[0.5, 2.0, 10.0] {
            let lo = special::bessel_k(nu - 1.0, x).unwrap();
            let mid = special::bessel_k(nu, x).unwrap();
            let hi = special::bessel_k(nu + 1.0, x).unwrap();
            bessel_ok &= ((hi - (2.0 * nu / x * mid + lo)) / hi).abs() < 1e-12;
        }
    }
    report.check("continuation: Bessel order recurrence closure", bessel_ok, || {
        "recurrence violated".into()
    });
    let m350 = series::madelung_recursive(&MadelungQuery::new(3, 50.0))
        .unwrap()
        .value;
    report.check(
        "continuation: M_3(50) within 1e-13 of -6",
        (m350 + 6.0).abs() < 1e-13,
        || format!("{m350}"),
    );
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn num_bigint_pow5(p: u64) -> num_bigint::BigInt {
    num_bigint::BigInt::from(p).pow(5)
}

/// Runs the named suite(s); returns the report for exit-code mapping.
pub fn run(suite: &str) -> Report {
    let mut report = Report::new();
    match suite {
        "squares" => suite_squares(&mut report),
        "zucker" => suite_zucker(&mut report),
        "cusp" => suite_cusp(&mut report),
        "continuation" => suite_continuation(&mut report),
        "all" => {
            suite_squares(&mut report);
            suite_zucker(&mut report);
            suite_cusp(&mut report);
            suite_continuation(&mut report);
        }
        other => unreachable!("clap validated the suite name: {other}"),
    }
    println!(
        "{} passed, {} failed",
        report.passed, report.failed
    );
    report
}
