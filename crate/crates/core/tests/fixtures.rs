//! Golden fixtures: expected values computed with an independent calculator
//! straight from the published formulas, frozen here before the library was
//! written. Library output must match within 0.001 dB.

use pathcal_core::{
    ericsson_frequency_gain, hata_mobile_correction, measured_path_loss, predict, rmse,
    sui_exponent, sui_intercept, Distance, EnvironmentClass, EricssonParams, Frequency, LinkBudget,
    ModelId, RadioContext, TerrainCategory,
};

const FIXTURE_TOL: f64 = 1e-3;

fn mhz(f: f64) -> Frequency {
    Frequency::from_mhz(f).unwrap()
}

fn meters(m: f64) -> Distance {
    Distance::from_meters(m).unwrap()
}

struct ModelFixture {
    name: &'static str,
    model: ModelId,
    f_mhz: f64,
    hb_m: f64,
    env: EnvironmentClass,
    terrain: Option<TerrainCategory>,
    shadowing_db: Option<f64>,
    params: EricssonParams,
    d_m: f64,
    expected_db: f64,
}

fn model_fixtures() -> Vec<ModelFixture> {
    use EnvironmentClass::*;
    let fix = |name, model, f_mhz, hb_m, env, d_m, expected_db| ModelFixture {
        name,
        model,
        f_mhz,
        hb_m,
        env,
        terrain: None,
        shadowing_db: None,
        params: EricssonParams::for_environment(env),
        d_m,
        expected_db,
    };
    vec![
        fix("fspl 1 MHz / 1 km", ModelId::Fspl, 1.0, 30.0, Open, 1000.0, 32.44),
        fix("fspl 800 MHz / 1 km", ModelId::Fspl, 800.0, 30.0, Open, 1000.0, 90.50179973983887),
        fix("fspl 2600 MHz / 1 km", ModelId::Fspl, 2600.0, 30.0, Open, 1000.0, 100.73946695941635),
        fix("fspl 800 MHz / 0.5 km", ModelId::Fspl, 800.0, 30.0, Open, 500.0, 84.48119982655925),
        fix(
            "hata urban-large 800 MHz hb24 / 0.5 km",
            ModelId::Hata, 800.0, 24.0, UrbanLargeCity, 500.0, 115.62641358680285,
        ),
        fix(
            "hata urban-medium 2600 MHz hb35 / 0.5 km",
            ModelId::Hata, 2600.0, 35.0, UrbanMediumSmallCity, 500.0, 127.01759872172224,
        ),
        fix(
            "hata suburban 800 MHz hb24 / 0.5 km",
            ModelId::Hata, 800.0, 24.0, Suburban, 500.0, 105.97474072205502,
        ),
        fix(
            "cost231 urban-medium 2600 MHz hb25 / 1 km",
            ModelId::Cost231, 2600.0, 25.0, UrbanMediumSmallCity, 1000.0, 145.6907179750458,
        ),
        fix(
            "cost231 urban-large 800 MHz hb24 / 0.5 km",
            ModelId::Cost231, 800.0, 24.0, UrbanLargeCity, 500.0, 117.84633008612046,
        ),
        fix(
            "cost231 suburban 2600 MHz hb25 / 1 km",
            ModelId::Cost231, 2600.0, 25.0, Suburban, 1000.0, 142.6907179750458,
        ),
        fix(
            "ecc33 urban-medium 2.6 GHz hb25 / 1 km",
            ModelId::Ecc33, 2600.0, 25.0, UrbanMediumSmallCity, 1000.0, 158.36880257764628,
        ),
        fix(
            "ecc33 urban-large 0.8 GHz hb24 / 0.5 km",
            ModelId::Ecc33, 800.0, 24.0, UrbanLargeCity, 500.0, 115.27711234246578,
        ),
        ModelFixture {
            name: "sui terrain A 800 MHz hb25 s8.2 / 200 m",
            model: ModelId::Sui,
            f_mhz: 800.0,
            hb_m: 25.0,
            env: Suburban,
            terrain: Some(TerrainCategory::A),
            shadowing_db: Some(8.2),
            params: EricssonParams::SUBURBAN,
            d_m: 200.0,
            expected_db: 102.28926252208188,
        },
        ModelFixture {
            name: "sui terrain B 2600 MHz hb32 s8.2 / 500 m",
            model: ModelId::Sui,
            f_mhz: 2600.0,
            hb_m: 32.0,
            env: Suburban,
            terrain: Some(TerrainCategory::B),
            shadowing_db: Some(8.2),
            params: EricssonParams::SUBURBAN,
            d_m: 500.0,
            expected_db: 126.1904002680201,
        },
        ModelFixture {
            name: "ericsson urban 800 MHz hb24 / 0.5 km",
            model: ModelId::Ericsson,
            f_mhz: 800.0,
            hb_m: 24.0,
            env: UrbanLargeCity,
            terrain: None,
            shadowing_db: None,
            params: EricssonParams::URBAN,
            d_m: 500.0,
            expected_db: 127.53376066240395,
        },
        ModelFixture {
            name: "ericsson urban 2600 MHz hb35 / 0.5 km",
            model: ModelId::Ericsson,
            f_mhz: 2600.0,
            hb_m: 35.0,
            env: UrbanLargeCity,
            terrain: None,
            shadowing_db: None,
            params: EricssonParams::URBAN,
            d_m: 500.0,
            expected_db: 136.80974749771983,
        },
        ModelFixture {
            name: "ericsson suburban 800 MHz hb32 / 0.3 km",
            model: ModelId::Ericsson,
            f_mhz: 800.0,
            hb_m: 32.0,
            env: Suburban,
            terrain: None,
            shadowing_db: None,
            params: EricssonParams::SUBURBAN,
            d_m: 300.0,
            expected_db: 109.04494686378062,
        },
    ]
}

#[test]
fn model_values_match_the_independent_calculator() {
    for fixture in model_fixtures() {
        let mut ctx = RadioContext::new(
            mhz(fixture.f_mhz),
            fixture.hb_m,
            1.5,
            fixture.env,
        )
        .unwrap();
        if let Some(terrain) = fixture.terrain {
            ctx = ctx.with_terrain(terrain);
        }
        if let Some(s) = fixture.shadowing_db {
            ctx = ctx.with_shadowing_db(s).unwrap();
        }
        let got = predict(fixture.model, &ctx, &fixture.params, meters(fixture.d_m)).unwrap();
        assert!(
            (got - fixture.expected_db).abs() < FIXTURE_TOL,
            "{}: expected {}, got {}",
            fixture.name,
            fixture.expected_db,
            got
        );
    }
}

#[test]
fn mobile_correction_fixtures() {
    let cases = [
        (800.0, EnvironmentClass::UrbanMediumSmallCity, 0.01127809882927533),
        (2600.0, EnvironmentClass::UrbanMediumSmallCity, 0.05734760131737371),
        (800.0, EnvironmentClass::UrbanLargeCity, -0.0009190469544941848),
        (2600.0, EnvironmentClass::UrbanLargeCity, -0.0009190469544941848),
        // 300 MHz sits on the low-frequency branch of the large-city form.
        (300.0, EnvironmentClass::UrbanLargeCity, -0.003948659774204),
    ];
    for (f, env, expected) in cases {
        let got = hata_mobile_correction(mhz(f), 1.5, env);
        assert!(
            (got - expected).abs() < 1e-9,
            "a(hr) at {f} MHz {env}: expected {expected}, got {got}"
        );
    }
}

#[test]
fn sui_intercept_and_exponent_fixtures() {
    let ctx = RadioContext::new(mhz(800.0), 25.0, 1.5, EnvironmentClass::Suburban)
        .unwrap()
        .with_terrain(TerrainCategory::A)
        .with_shadowing_db(8.2)
        .unwrap();

    let a = sui_intercept(&ctx);
    assert!((a - 64.48898304844262).abs() < FIXTURE_TOL);
    // The campaign's suburban anchor: A + s printed as 72.68.
    assert!((a + ctx.shadowing_db() - 72.68898304844262).abs() < FIXTURE_TOL);

    let gamma = sui_exponent(&ctx);
    assert!((gamma - 4.9165).abs() < 1e-9, "gamma {gamma}");
}

#[test]
fn ericsson_frequency_gain_fixtures() {
    assert!((ericsson_frequency_gain(mhz(800.0)) - 88.8729610823732).abs() < 1e-9);
    assert!((ericsson_frequency_gain(mhz(2600.0)) - 96.18759886728381).abs() < 1e-9);
}

#[test]
fn link_budget_fixtures() {
    assert_eq!(LinkBudget::default().eirp_dbm(), 53.45);
    assert_eq!(measured_path_loss(53.5, -80.0), 133.5);
}

#[test]
fn rmse_fixture() {
    let r = rmse(&[100.0, 110.0], &[103.0, 105.0]).unwrap();
    assert!((r - 4.123105625617661).abs() < 1e-12);
}

#[test]
fn frequency_constructor_equivalence_for_ecc33() {
    // Unit safety: MHz and GHz constructors must describe the same carrier.
    let ctx_mhz = RadioContext::new(mhz(2600.0), 25.0, 1.5, EnvironmentClass::UrbanMediumSmallCity)
        .unwrap();
    let ctx_ghz = RadioContext::new(
        Frequency::from_ghz(2.6).unwrap(),
        25.0,
        1.5,
        EnvironmentClass::UrbanMediumSmallCity,
    )
    .unwrap();
    let d = meters(1000.0);
    let a = pathcal_core::ecc33(&ctx_mhz, d);
    let b = pathcal_core::ecc33(&ctx_ghz, d);
    assert!((a - b).abs() < 1e-9);
}
