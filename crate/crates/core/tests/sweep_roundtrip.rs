use std::collections::BTreeSet;

use stark_dispersion::analysis::{sweep, write_sweep_csv, FieldMode, Output, Range, Spacing, SweepSpec};
use stark_dispersion::constants::joule_to_ev;
use stark_dispersion::{DispersionModel, FieldConfig, Geometry};

fn spec() -> SweepSpec {
    SweepSpec {
        r_range: Range { min: 6e-10, max: 1e-4, count: 81, spacing: Spacing::Log },
        theta: 1.1,
        field_range: Range { min: -2e5, max: 3e5, count: 3, spacing: Spacing::Linear },
        field_mode: FieldMode::Equal,
        outputs: Output::ALL.into_iter().collect::<BTreeSet<_>>(),
    }
}

#[test]
fn csv_round_trip() {
    let m = DispersionModel::default();
    let rows = sweep(&m, &spec()).unwrap();
    let mut buf = Vec::new();
    write_sweep_csv(&rows, false, &mut buf).unwrap();

    let mut reader = csv::Reader::from_reader(buf.as_slice());
    let mut n = 0;
    for rec in reader.records() {
        let rec = rec.unwrap();
        let num = |i: usize| rec[i].parse::<f64>().unwrap();
        let (r, theta, e, ep) = (num(0), num(1), num(2), num(3));
        let b = m.total_energy(Geometry::new(r, theta), FieldConfig::new(e, ep)).unwrap();
        for (i, v) in [(4, b.field_component), (5, b.vdw_component), (6, b.total)] {
            let expect = joule_to_ev(v);
            let got = num(i);
            let tol = 1e-9 * expect.abs();
            assert!((got - expect).abs() <= tol, "row {n} col {i}: {got:e} vs {expect:e}");
        }
        let f = m.radial_force(Geometry::new(r, theta), FieldConfig::new(e, ep)).unwrap();
        assert!((num(7) - f).abs() <= 1e-9 * f.abs());
        assert_eq!(&rec[8], b.regime.as_str());
        n += 1;
    }
    assert_eq!(n, 81 * 3);
}

#[test]
fn sweep_is_deterministic() {
    let m = DispersionModel::default();
    let a = sweep(&m, &spec()).unwrap();
    let b = sweep(&m, &spec()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn field_slope_goes_from_minus_three_to_minus_four() {
    // r_min bounds k0r from below at ~0.055, so the sweep covers [0.06, 100]
    let m = DispersionModel::default();
    let k0 = m.data.k0;
    let s = SweepSpec {
        r_range: Range { min: 0.06 / k0, max: 100.0 / k0, count: 81, spacing: Spacing::Log },
        theta: std::f64::consts::FRAC_PI_2,
        field_range: Range::single(1e5),
        field_mode: FieldMode::Equal,
        outputs: [Output::FieldComponent, Output::Total].into_iter().collect(),
    };
    let rows = sweep(&m, &s).unwrap();
    let slope = |i: usize| {
        let (a, b) = (&rows[i], &rows[i + 1]);
        (b.field_component.unwrap().ln() - a.field_component.unwrap().ln()) / (b.r.ln() - a.r.ln())
    };
    assert!((slope(0) + 3.0).abs() < 0.05, "{}", slope(0));
    assert!((slope(79) + 4.0).abs() < 0.05, "{}", slope(79));
    let slopes: Vec<f64> = (0..80).map(slope).collect();
    assert!(slopes.windows(2).all(|w| w[1] <= w[0] + 1e-9));
}
