use dirac_edm::units::{
    from_natural, neutron_estimate, to_natural, PhysicalParams, UnitSystem, HBAR_EV_S,
};
use dirac_edm::Error;
use proptest::prelude::*;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

proptest! {
    #[test]
    fn physical_round_trip(
        m in 1e3..1e10f64,
        p in -1e6..1e6f64,
        d in -1e-24..1e-24f64,
        mu in -1e-25..1e-25f64,
        e in -1e9..1e9f64,
        es in 1e-3..1e9f64,
        fs in 1.0..1e9f64,
    ) {
        let units = UnitSystem::physical(es, fs).unwrap();
        let phys = PhysicalParams {
            mass_energy_ev: m,
            momentum_ev: [p, 0.0, 0.0],
            edm_e_cm: d,
            mdm_j_per_t: mu,
            e_field_v_per_m: [e, 0.0, 0.0],
        };
        let back = from_natural(&to_natural(&phys, &units).unwrap(), &units).unwrap();
        prop_assert!(close(back.mass_energy_ev, m, 1e-12));
        prop_assert!(close(back.momentum_ev[0], p, 1e-12));
        prop_assert!(close(back.edm_e_cm, d, 1e-12));
        prop_assert!(close(back.mdm_j_per_t, mu, 1e-12));
        prop_assert!(close(back.e_field_v_per_m[0], e, 1e-12));
    }

    #[test]
    fn estimate_is_linear(e in 1.0..1e10f64, d in 1e-33..1e-20f64, k in 0.1..10.0f64) {
        let a = neutron_estimate(e, d).unwrap();
        let b = neutron_estimate(k * e, d).unwrap();
        let c = neutron_estimate(e, k * d).unwrap();
        prop_assert!(close(b.splitting_ev, k * a.splitting_ev, 1e-12));
        prop_assert!(close(c.omega_rad_per_s, k * a.omega_rad_per_s, 1e-12));
    }
}

#[test]
fn upper_limit_neutron_estimate() {
    // d = 1e-26 e·cm in 10 MV/cm: d·E = 1e-19 eV, so ΔE = 2e-19 eV.
    let est = neutron_estimate(1e9, 1e-26).unwrap();
    assert!(close(est.splitting_ev, 2e-19, 1e-12));
    assert!(close(est.omega_rad_per_s, 2e-19 / HBAR_EV_S, 1e-12));
    assert!(est.omega_rad_per_s > 1e-4 && est.omega_rad_per_s < 1e-3);
}

#[test]
fn standard_model_neutron_estimate() {
    let est = neutron_estimate(1e9, 1e-32).unwrap();
    assert!(est.omega_rad_per_s > 1e-10 && est.omega_rad_per_s < 1e-9);
    let years = est.period_s.unwrap() / (365.25 * 86400.0);
    assert!(years > 100.0 && years < 1000.0, "{years}");
}

#[test]
fn zero_edm_never_precesses() {
    assert_eq!(neutron_estimate(1e9, 0.0).unwrap().period_s, None);
    assert!(matches!(
        neutron_estimate(-1.0, 1e-26),
        Err(Error::Invalid(_))
    ));
}

#[test]
fn natural_units_are_identity() {
    let phys = PhysicalParams {
        mass_energy_ev: 1.5,
        momentum_ev: [0.3, 0.0, 0.0],
        edm_e_cm: 0.1,
        mdm_j_per_t: 0.05,
        e_field_v_per_m: [2.0, 0.0, 0.0],
    };
    let n = to_natural(&phys, &UnitSystem::natural()).unwrap();
    assert_eq!(
        (n.mass_energy, n.momentum[0], n.edm, n.mdm, n.e_field[0]),
        (1.5, 0.3, 0.1, 0.05, 2.0)
    );
}
