//! Frozen values from a 50-digit reference evaluation of the definitions.

#![allow(clippy::excessive_precision)]

use ineq_simplex::decomp::Part;
use ineq_simplex::measures::index_of_incomes;
use ineq_simplex::zerosets::theil_dcp_zero_solve;
use ineq_simplex::{closed_form, component_value, hs_gini_components, ComponentSpec, MeasureId, Scheme, SharePoint3};

const COMPONENTS: &[([f64; 3], MeasureId, Scheme, Part, f64)] = &[
    ([0.2, 0.3, 0.5], MeasureId::Mld, Scheme::Population, Part::Within, 0.013607331506751709852),
    ([0.2, 0.3, 0.5], MeasureId::Mld, Scheme::Population, Part::Between, 0.056633012265132490967),
    ([0.2, 0.3, 0.5], MeasureId::Mld, Scheme::Income, Part::Within, 0.027214663013503419703),
    ([0.2, 0.3, 0.5], MeasureId::Mld, Scheme::Income, Part::Between, 0.06003484514182041843),
    ([0.2, 0.3, 0.5], MeasureId::Gini, Scheme::Population, Part::Within, 0.033333333333333333333),
    ([0.2, 0.3, 0.5], MeasureId::Gini, Scheme::Population, Part::Between, 0.13333333333333333333),
    ([0.2, 0.3, 0.5], MeasureId::Gini, Scheme::Income, Part::Within, 0.066666666666666666667),
    ([0.2, 0.3, 0.5], MeasureId::Gini, Scheme::Income, Part::Between, 0.15),
    ([0.2, 0.3, 0.5], MeasureId::Cv, Scheme::Population, Part::Within, 0.025244867603364677277),
    ([0.2, 0.3, 0.5], MeasureId::Cv, Scheme::Population, Part::Between, 0.26969576117917132749),
    ([0.2, 0.3, 0.5], MeasureId::Cv, Scheme::Income, Part::Within, 0.050489735206729354554),
    ([0.2, 0.3, 0.5], MeasureId::Cv, Scheme::Income, Part::Between, 0.31683621325827449578),
    ([0.2, 0.3, 0.5], MeasureId::Theil, Scheme::Population, Part::Within, 0.01006775677534443671),
    ([0.2, 0.3, 0.5], MeasureId::Theil, Scheme::Population, Part::Between, 0.055535598903076915033),
    ([0.2, 0.3, 0.5], MeasureId::Theil, Scheme::Income, Part::Within, 0.020135513550688873421),
    ([0.2, 0.3, 0.5], MeasureId::Theil, Scheme::Income, Part::Between, 0.058891517828191727269),
    ([0.5, 0.25, 0.25], MeasureId::Mld, Scheme::Population, Part::Within, 0.039261011885461151513),
    ([0.5, 0.25, 0.25], MeasureId::Mld, Scheme::Population, Part::Between, 0.017372000379671339454),
    ([0.5, 0.25, 0.25], MeasureId::Mld, Scheme::Income, Part::Within, 0.052348015847281535351),
    ([0.5, 0.25, 0.25], MeasureId::Mld, Scheme::Income, Part::Between, 0.012464373893988695515),
    ([0.5, 0.25, 0.25], MeasureId::Gini, Scheme::Population, Part::Within, 0.083333333333333333333),
    ([0.5, 0.25, 0.25], MeasureId::Gini, Scheme::Population, Part::Between, 0.055555555555555555556),
    ([0.5, 0.25, 0.25], MeasureId::Gini, Scheme::Income, Part::Within, 0.11111111111111111111),
    ([0.5, 0.25, 0.25], MeasureId::Gini, Scheme::Income, Part::Between, 0.041666666666666666667),
    ([0.5, 0.25, 0.25], MeasureId::Cv, Scheme::Population, Part::Within, 0.21650635094610966169),
    ([0.5, 0.25, 0.25], MeasureId::Cv, Scheme::Population, Part::Between, 0.11874302136486486809),
    ([0.5, 0.25, 0.25], MeasureId::Cv, Scheme::Income, Part::Within, 0.28867513459481288225),
    ([0.5, 0.25, 0.25], MeasureId::Cv, Scheme::Income, Part::Between, 0.079459311298945561181),
    ([0.5, 0.25, 0.25], MeasureId::Theil, Scheme::Population, Part::Within, 0.042474759198849368225),
    ([0.5, 0.25, 0.25], MeasureId::Theil, Scheme::Population, Part::Between, 0.021136176318103399958),
    ([0.5, 0.25, 0.25], MeasureId::Theil, Scheme::Income, Part::Within, 0.056633012265132490967),
    ([0.5, 0.25, 0.25], MeasureId::Theil, Scheme::Income, Part::Between, 0.016416758629342359044),
    ([0.1, 0.6, 0.3], MeasureId::Mld, Scheme::Population, Part::Within, 0.23792215592089366352),
    ([0.1, 0.6, 0.3], MeasureId::Mld, Scheme::Population, Part::Between, 0.0025933957729874316989),
    ([0.1, 0.6, 0.3], MeasureId::Mld, Scheme::Income, Part::Within, 0.3398887941727052336),
    ([0.1, 0.6, 0.3], MeasureId::Mld, Scheme::Income, Part::Between, -0.0093027120230572514771),
    ([0.1, 0.6, 0.3], MeasureId::Gini, Scheme::Population, Part::Within, 0.3),
    ([0.1, 0.6, 0.3], MeasureId::Gini, Scheme::Population, Part::Between, 0.095238095238095238095),
    ([0.1, 0.6, 0.3], MeasureId::Gini, Scheme::Income, Part::Within, 0.42857142857142857143),
    ([0.1, 0.6, 0.3], MeasureId::Gini, Scheme::Income, Part::Between, 0.083333333333333333333),
    ([0.1, 0.6, 0.3], MeasureId::Cv, Scheme::Population, Part::Within, 0.66838090314863110505),
    ([0.1, 0.6, 0.3], MeasureId::Cv, Scheme::Population, Part::Between, 0.081548413825601136961),
    ([0.1, 0.6, 0.3], MeasureId::Cv, Scheme::Income, Part::Within, 0.95482986164090157864),
    ([0.1, 0.6, 0.3], MeasureId::Cv, Scheme::Income, Part::Between, 0.047876662340527445323),
    ([0.1, 0.6, 0.3], MeasureId::Theil, Scheme::Population, Part::Within, 0.19812160359007540351),
    ([0.1, 0.6, 0.3], MeasureId::Theil, Scheme::Population, Part::Between, 0.011979322296972388135),
    ([0.1, 0.6, 0.3], MeasureId::Theil, Scheme::Income, Part::Within, 0.28303086227153629072),
    ([0.1, 0.6, 0.3], MeasureId::Theil, Scheme::Income, Part::Between, 0.0025449602212545117775),
    ([0.05, 0.15, 0.8], MeasureId::Mld, Scheme::Population, Part::Within, 0.09589402415059364248),
    ([0.05, 0.15, 0.8], MeasureId::Mld, Scheme::Population, Part::Between, 0.51082562376599068321),
    ([0.05, 0.15, 0.8], MeasureId::Mld, Scheme::Income, Part::Within, 0.4794701207529682124),
    ([0.05, 0.15, 0.8], MeasureId::Mld, Scheme::Income, Part::Between, 0.57795144067140623294),
    ([0.05, 0.15, 0.8], MeasureId::Gini, Scheme::Population, Part::Within, 0.033333333333333333333),
    ([0.05, 0.15, 0.8], MeasureId::Gini, Scheme::Population, Part::Between, 0.33333333333333333333),
    ([0.05, 0.15, 0.8], MeasureId::Gini, Scheme::Income, Part::Within, 0.16666666666666666667),
    ([0.05, 0.15, 0.8], MeasureId::Gini, Scheme::Income, Part::Between, 0.45),
    ([0.05, 0.15, 0.8], MeasureId::Cv, Scheme::Population, Part::Within, 0.0092436069888475192163),
    ([0.05, 0.15, 0.8], MeasureId::Cv, Scheme::Population, Part::Between, 0.75027465149602994175),
    ([0.05, 0.15, 0.8], MeasureId::Cv, Scheme::Income, Part::Within, 0.046218034944237596082),
    ([0.05, 0.15, 0.8], MeasureId::Cv, Scheme::Income, Part::Between, 1.0802578160497521198),
    ([0.05, 0.15, 0.8], MeasureId::Theil, Scheme::Population, Part::Within, 0.026162407188227391826),
    ([0.05, 0.15, 0.8], MeasureId::Theil, Scheme::Population, Part::Between, 0.39853481224540216905),
    ([0.05, 0.15, 0.8], MeasureId::Theil, Scheme::Income, Part::Within, 0.13081203594113695913),
    ([0.05, 0.15, 0.8], MeasureId::Theil, Scheme::Income, Part::Between, 0.45958042901793274998),
];

#[test]
fn components_match_reference() {
    for (z, m, s, p, want) in COMPONENTS {
        let pt = SharePoint3::new(z[0], z[1], z[2]).unwrap();
        let spec = ComponentSpec::new(*m, s.clone(), *p);
        let got = component_value(&spec, &pt).unwrap();
        assert!((got - want).abs() < 1e-14, "{z:?} {m} {s} {p}: {got} vs {want}");
        let closed = closed_form(&spec, &pt).unwrap();
        assert!((closed - want).abs() < 1e-14, "closed form {z:?} {m} {s} {p}: {closed} vs {want}");
    }
}

#[test]
fn indices_on_raw_incomes() {
    let cases: &[(&[f64], [f64; 4])] = &[
        (&[1.0, 2.0, 10.0], [0.46775964427543004685, 0.46153846153846153846, 1.1383575836114416967, 0.4115202612881381445]),
        (&[3.0, 5.0, 12.0], [0.1661343679224778433, 0.3, 0.70887234393789126015, 0.16097532639566043146]),
        (
            &[1.0, 2.0, 2.0, 4.0, 8.0, 13.0],
            [0.37327464220390805761, 0.44444444444444444444, 0.92951600308978005244, 0.33381675913783324899],
        ),
    ];
    let order = [MeasureId::Mld, MeasureId::Gini, MeasureId::Cv, MeasureId::Theil];
    for (y, want) in cases {
        for (m, w) in order.iter().zip(want) {
            let got = index_of_incomes(*m, y).unwrap();
            assert!((got - w).abs() < 1e-14, "{y:?} {m}: {got} vs {w}");
        }
    }
}

#[test]
fn cv_between_at_edge_midpoint() {
    let z = SharePoint3::new(0.0, 0.5, 0.5).unwrap();
    let v = component_value(&ComponentSpec::between(MeasureId::Cv, Scheme::Population), &z).unwrap();
    assert!((v - -0.076783637797624719104).abs() < 1e-15);
    assert!((v - (3f64.sqrt() / 2.0 - 2.0 * 2f64.sqrt() / 3.0)).abs() < 1e-15);
}

#[test]
fn theil_root_matches_reference() {
    let (z1, z2) = theil_dcp_zero_solve(0.5).unwrap();
    assert!((z1 - 0.053406087609917306736).abs() < 1e-11);
    assert!((z2 - 0.44659391239008269326).abs() < 1e-11);
}

#[test]
fn gap_based_gini_at_one_two_ten() {
    let z = SharePoint3::from_incomes(1.0, 2.0, 10.0).unwrap();
    let (w, b) = hs_gini_components(&z);
    assert!((w - 2.0 / 39.0).abs() < 1e-15);
    assert!((b - 16.0 / 39.0).abs() < 1e-15);
    assert!((w + b - 18.0 / 39.0).abs() < 1e-15);
}
