use rffso_web::ops::*;

#[test]
fn outage_curve_decreases() {
    let p = outage_curve(false, "sel", false, 5.0, 0.9, 0.0, 0.0, 40.0, 10.0).unwrap();
    assert_eq!(p.len(), 5);
    assert!(p.windows(2).all(|w| w[1] < w[0]), "{p:?}");
    assert!(p.iter().all(|&x| (0.0..=1.0).contains(&x)));
}

#[test]
fn variable_gain_curve_runs() {
    let p = outage_curve(true, "twta", true, 8.0, 0.5, 0.0, 10.0, 30.0, 10.0).unwrap();
    assert_eq!(p.len(), 3);
}

#[test]
fn ceilings() {
    assert!((ceiling("sel", 0.0, true).unwrap() - 4.0996).abs() < 1e-3);
    assert!(ceiling("ideal", 0.0, true).unwrap().is_infinite());
    assert!(ceiling("sel", 30.0, true).unwrap().is_infinite());
    assert!(ceiling("sel", 3.0, false).unwrap() < ceiling("sel", 3.0, true).unwrap());
}

#[test]
fn am_am_shapes() {
    let sel = am_am_curve("sel", 1.0, 3.0, 31).unwrap();
    assert_eq!(sel.len(), 31);
    assert!((sel[30] - 1.0).abs() < 1e-12);
    let twta = am_am_curve("twta", 1.0, 3.0, 31).unwrap();
    let peak = twta.iter().cloned().fold(0.0, f64::max);
    assert!((peak - twta[10]).abs() < 1e-12);
}

#[test]
fn bad_input_is_rejected() {
    assert!(am_am_curve("klystron", 1.0, 3.0, 10).is_err());
    assert!(outage_curve(false, "sel", false, 5.0, 0.9, 0.0, 10.0, 0.0, 1.0).is_err());
}
