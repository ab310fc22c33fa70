use num_bigint::BigUint;
use num_traits::One;

use super::*;

fn g(name: &str) -> GroupId {
    name.parse().unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn order_value(name: &str) -> BigUint {
    g(name).order().value()
}

#[test]
fn prime_power_construction() {
    assert_eq!(PrimePower::from_value(1024).unwrap(), PrimePower::new(2, 10).unwrap());
    assert_eq!(PrimePower::from_value(125).unwrap().p(), 5);
    assert_eq!(PrimePower::from_value(7).unwrap().f(), 1);
    assert!(PrimePower::from_value(12).is_err());
    assert!(PrimePower::from_value(1).is_err());
    assert!(PrimePower::from_value(0).is_err());
    assert!(PrimePower::new(4, 2).is_err());
    assert!(PrimePower::new(2, 0).is_err());
}

#[test]
fn non_simple_parameters_rejected() {
    assert!(GroupId::alternating(4).is_err());
    assert!(matches!(g("A5"), GroupId::Alternating(5)));
    let q = |v: u64| PrimePower::from_value(v).unwrap();
    assert!(GroupId::lie(LieFamily::A, 1, q(2)).is_err());
    assert!(GroupId::lie(LieFamily::A, 1, q(3)).is_err());
    assert!(GroupId::lie(LieFamily::TwoA, 2, q(2)).is_err());
    assert!(GroupId::lie(LieFamily::B, 2, q(2)).is_err());
    assert!(GroupId::lie(LieFamily::G2, 2, q(2)).is_err());
    assert!(GroupId::lie(LieFamily::TwoG2, 2, q(3)).is_err());
    assert!(GroupId::lie(LieFamily::TwoB2, 2, q(2)).is_err());
    assert!(GroupId::lie(LieFamily::TwoB2, 2, q(4)).is_err());
    assert!(GroupId::lie(LieFamily::TwoB2, 2, q(8)).is_ok());
    assert!(GroupId::lie(LieFamily::TwoF4, 4, q(2)).is_err());
    assert!(GroupId::lie(LieFamily::TwoF4, 4, q(8)).is_ok());
    assert!(GroupId::lie(LieFamily::TwoG2, 2, q(27)).is_ok());
    assert!(GroupId::lie(LieFamily::C, 2, q(3)).is_err());
    assert!(GroupId::lie(LieFamily::D, 3, q(2)).is_err());
    assert!(GroupId::lie(LieFamily::E6, 7, q(2)).is_err());
}

#[test]
fn known_orders_classical() {
    let pins: [(&str, &str); 28] = [
        ("A5", "60"),
        ("A6", "360"),
        ("A7", "2520"),
        ("A8", "20160"),
        ("A13", "3113510400"),
        ("L2(7)", "168"),
        ("L2(8)", "504"),
        ("L2(11)", "660"),
        ("L2(16)", "4080"),
        ("L2(17)", "2448"),
        ("L2(19)", "3420"),
        ("L2(25)", "7800"),
        ("L2(27)", "9828"),
        ("L2(32)", "32736"),
        ("L2(125)", "976500"),
        ("L3(3)", "5616"),
        ("L3(4)", "20160"),
        ("L4(3)", "6065280"),
        ("U3(3)", "6048"),
        ("U3(5)", "126000"),
        ("U3(8)", "5515776"),
        ("U4(2)", "25920"),
        ("U4(3)", "3265920"),
        ("U4(5)", "14742000000"),
        ("U5(2)", "13685760"),
        ("S4(4)", "979200"),
        ("S6(2)", "1451520"),
        ("O7(3)", "4585351680"),
    ];
    for (name, decimal) in pins {
        assert_eq!(
            order_value(name),
            decimal.parse::<BigUint>().unwrap(),
            "order of {name}"
        );
    }
}

#[test]
fn known_orders_exceptional_and_orthogonal() {
    let pins: [(&str, &str); 12] = [
        ("O8+(2)", "174182400"),
        ("O8-(2)", "197406720"),
        ("O8+(3)", "4952179814400"),
        ("O10-(2)", "25015379558400"),
        ("G2(3)", "4245696"),
        ("G2(4)", "251596800"),
        ("Sz(8)", "29120"),
        ("Sz(32)", "32537600"),
        ("3D4(2)", "211341312"),
        ("R(27)", "10073444472"),
        ("F4(2)", "3311126603366400"),
        ("2E6(2)", "76532479683774853939200"),
    ];
    for (name, decimal) in pins {
        assert_eq!(
            order_value(name),
            decimal.parse::<BigUint>().unwrap(),
            "order of {name}"
        );
    }
    assert_eq!(g("2F4(2)'"), GroupId::Tits);
    assert_eq!(order_value("2F4(2)'"), BigUint::from(17971200u64));
}

#[test]
fn factored_forms_match_reference_tables() {
    for (name, form) in [
        ("F4(2)", "2^24*3^6*5^2*7^2*13*17"),
        ("2E6(2)", "2^36*3^9*5^2*7^2*11*13*17*19"),
        ("E6(2)", "2^36*3^6*5^2*7^3*13*17*31*73"),
        ("E7(2)", "2^63*3^11*5^2*7^3*11*13*17*19*31*43*73*127"),
        ("U5(4)", "2^20*3^2*5^4*13*17*41"),
        ("L4(9)", "2^10*3^12*5^2*7*13*41"),
        ("U4(5)", "2^7*3^4*5^6*7*13"),
        ("S6(3)", "2^9*3^9*5*7*13"),
        ("U3(8)", "2^9*3^4*7*19"),
        ("2F4(2)'", "2^11*3^3*5^2*13"),
    ] {
        assert_eq!(g(name).order(), form.parse().unwrap(), "{name}");
    }
    assert_eq!(g("E8(2)").order().valuation(2), 120);
}

#[test]
fn sporadic_order_values() {
    let pins: [(&str, &str); 26] = [
        ("M11", "7920"),
        ("M12", "95040"),
        ("M22", "443520"),
        ("M23", "10200960"),
        ("M24", "244823040"),
        ("J1", "175560"),
        ("J2", "604800"),
        ("J3", "50232960"),
        ("J4", "86775571046077562880"),
        ("Co1", "4157776806543360000"),
        ("Co2", "42305421312000"),
        ("Co3", "495766656000"),
        ("Fi22", "64561751654400"),
        ("Fi23", "4089470473293004800"),
        ("Fi24'", "1255205709190661721292800"),
        ("HS", "44352000"),
        ("McL", "898128000"),
        ("He", "4030387200"),
        ("Ru", "145926144000"),
        ("Suz", "448345497600"),
        ("O'N", "460815505920"),
        ("HN", "273030912000000"),
        ("Ly", "51765179004000000"),
        ("Th", "90745943887872000"),
        ("B", "4154781481226426191177580544000000"),
        ("M", "808017424794512875886459904961710757005754368000000000"),
    ];
    for (name, decimal) in pins {
        assert_eq!(
            order_value(name),
            decimal.parse::<BigUint>().unwrap(),
            "order of {name}"
        );
    }
}

/// Independent linear/unitary oracle through the full matrix-group orders:
/// |GL(m,q)| = prod (q^m - q^i), |GU(m,q)| = q^(m(m-1)/2) prod (q^i - (-1)^i).
#[test]
fn linear_and_unitary_orders_match_matrix_group_oracle() {
    fn gcd64(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { gcd64(b, a % b) }
    }
    for (m, q) in [(2u32, 5u64), (2, 8), (2, 49), (3, 2), (3, 3), (3, 4), (4, 3), (5, 2), (6, 2), (4, 5)] {
        let qb = BigUint::from(q);
        let qm = qb.pow(m);
        let mut gl = BigUint::one();
        for i in 0..m {
            gl *= &qm - qb.pow(i);
        }
        let expected = gl / ((&qb - 1u32) * gcd64(m as u64, q - 1));
        let got = GroupId::linear(m, PrimePower::from_value(q).unwrap())
            .unwrap()
            .order()
            .value();
        assert_eq!(got, expected, "L{m}({q})");
    }
    for (m, q) in [(3u32, 3u64), (3, 5), (4, 2), (4, 3), (5, 2), (5, 3), (6, 2), (4, 4)] {
        let qb = BigUint::from(q);
        let mut gu = qb.pow(m * (m - 1) / 2);
        for i in 1..=m {
            let qi = qb.pow(i);
            gu *= if i % 2 == 0 { &qi - 1u32 } else { &qi + 1u32 };
        }
        let expected = gu / ((&qb + 1u32) * gcd64(m as u64, q + 1));
        let got = GroupId::unitary(m, PrimePower::from_value(q).unwrap())
            .unwrap()
            .order()
            .value();
        assert_eq!(got, expected, "U{m}({q})");
    }
}

/// The factored order must reproduce the defining product evaluated in
/// plain big-integer arithmetic, with no factorization on that path.
#[test]
fn factored_orders_match_direct_evaluation() {
    let cases = [
        "L2(1024)", "L3(2)", "L6(3)", "L8(2)", "U6(3)", "U7(2)", "S4(7)", "S8(2)",
        "S10(3)", "O9(3)", "O12+(2)", "O12-(3)", "O8-(5)", "3D4(3)", "G2(7)",
        "R(243)", "F4(3)", "2F4(8)", "Sz(128)", "E6(3)", "2E6(3)", "E7(3)", "E8(2)",
    ];
    for name in cases {
        let id = g(name);
        let GroupId::Lie { family, rank, q } = id else {
            panic!("{name} should be Lie type")
        };
        let qb = BigUint::from(q.value());
        let mut expected = qb.pow(u32::try_from(family.q_exponent(rank)).unwrap());
        let n = rank;
        let mut divisor = BigUint::one();
        match family {
            LieFamily::A => {
                for i in 2..=n + 1 {
                    expected *= qb.pow(i) - 1u32;
                }
                divisor = BigUint::from(gcd(n as u64 + 1, q.value() - 1));
            }
            LieFamily::TwoA => {
                for i in 2..=n + 1 {
                    let t = qb.pow(i);
                    expected *= if i % 2 == 0 { t - 1u32 } else { t + 1u32 };
                }
                divisor = BigUint::from(gcd(n as u64 + 1, q.value() + 1));
            }
            LieFamily::B | LieFamily::C => {
                for i in 1..=n {
                    expected *= qb.pow(2 * i) - 1u32;
                }
                divisor = BigUint::from(gcd(2, q.value() - 1));
            }
            LieFamily::D => {
                expected *= qb.pow(n) - 1u32;
                for i in 1..n {
                    expected *= qb.pow(2 * i) - 1u32;
                }
                let r = u64::try_from((qb.pow(n) - 1u32) % 4u32).unwrap();
                divisor = BigUint::from(gcd(4, r));
            }
            LieFamily::TwoD => {
                expected *= qb.pow(n) + 1u32;
                for i in 1..n {
                    expected *= qb.pow(2 * i) - 1u32;
                }
                let r = u64::try_from((qb.pow(n) + 1u32) % 4u32).unwrap();
                divisor = BigUint::from(gcd(4, r));
            }
            LieFamily::ThreeD4 => {
                expected *= qb.pow(8) + qb.pow(4) + 1u32;
                expected *= qb.pow(6) - 1u32;
                expected *= qb.pow(2) - 1u32;
            }
            LieFamily::G2 => {
                expected *= (qb.pow(6) - 1u32) * (qb.pow(2) - 1u32);
            }
            LieFamily::TwoG2 => {
                expected *= (qb.pow(3) + 1u32) * (&qb - 1u32);
            }
            LieFamily::F4 => {
                for i in [12u32, 8, 6, 2] {
                    expected *= qb.pow(i) - 1u32;
                }
            }
            LieFamily::TwoF4 => {
                expected *= (qb.pow(6) + 1u32) * (qb.pow(4) - 1u32);
                expected *= (qb.pow(3) + 1u32) * (&qb - 1u32);
            }
            LieFamily::TwoB2 => {
                expected *= (qb.pow(2) + 1u32) * (&qb - 1u32);
            }
            LieFamily::E6 => {
                for i in [12u32, 9, 8, 6, 5, 2] {
                    expected *= qb.pow(i) - 1u32;
                }
                divisor = BigUint::from(gcd(3, q.value() - 1));
            }
            LieFamily::TwoE6 => {
                for i in [12u32, 8, 6, 2] {
                    expected *= qb.pow(i) - 1u32;
                }
                expected *= (qb.pow(9) + 1u32) * (qb.pow(5) + 1u32);
                divisor = BigUint::from(gcd(3, q.value() + 1));
            }
            LieFamily::E7 => {
                for i in [18u32, 14, 12, 10, 8, 6, 2] {
                    expected *= qb.pow(i) - 1u32;
                }
                divisor = BigUint::from(gcd(2, q.value() - 1));
            }
            LieFamily::E8 => {
                for i in [30u32, 24, 20, 18, 14, 12, 8, 2] {
                    expected *= qb.pow(i) - 1u32;
                }
            }
        }
        assert_eq!(id.order().value(), expected / divisor, "{name}");
    }
}

#[test]
fn alternating_orders_match_factorials() {
    let mut factorial = BigUint::from(24u32);
    for n in 5u32..=40 {
        factorial *= n;
        assert_eq!(
            GroupId::Alternating(n).order().value(),
            &factorial / 2u32,
            "A{n}"
        );
    }
}

#[test]
fn outer_automorphism_orders() {
    let pins: [(&str, u64); 30] = [
        ("A5", 2),
        ("A6", 4),
        ("A7", 2),
        ("M11", 1),
        ("M12", 2),
        ("J2", 2),
        ("Fi24'", 2),
        ("M", 1),
        ("2F4(2)'", 2),
        ("L2(7)", 2),
        ("L2(8)", 3),
        ("L2(16)", 4),
        ("L2(25)", 4),
        ("L3(2)", 2),
        ("L3(4)", 12),
        ("L4(9)", 16),
        ("U3(3)", 2),
        ("U3(5)", 6),
        ("U3(8)", 18),
        ("U4(2)", 2),
        ("U4(3)", 8),
        ("U4(5)", 4),
        ("U5(4)", 20),
        ("S4(4)", 4),
        ("S6(2)", 1),
        ("O7(3)", 2),
        ("O8+(2)", 6),
        ("O8+(3)", 24),
        ("O8-(2)", 2),
        ("O8-(3)", 4),
    ];
    for (name, out) in pins {
        assert_eq!(g(name).out_order().value(), BigUint::from(out), "Out({name})");
    }
    let more: [(&str, u64); 12] = [
        ("G2(3)", 2),
        ("G2(4)", 2),
        ("G2(5)", 1),
        ("F4(2)", 2),
        ("F4(3)", 1),
        ("Sz(8)", 3),
        ("R(27)", 3),
        ("3D4(2)", 3),
        ("2E6(2)", 6),
        ("E6(2)", 2),
        ("E7(2)", 1),
        ("E8(2)", 1),
    ];
    for (name, out) in more {
        assert_eq!(g(name).out_order().value(), BigUint::from(out), "Out({name})");
    }
}

#[test]
fn canonicalization_collapses_exceptional_isomorphisms() {
    let pairs = [
        ("A1(4)", "A5"),
        ("A1(5)", "A5"),
        ("A1(9)", "A6"),
        ("A1(7)", "L3(2)"),
        ("A3(2)", "A8"),
        ("B2(3)", "U4(2)"),
        ("O7(2)", "S6(2)"),
        ("O9(4)", "S8(4)"),
    ];
    for (from, to) in pairs {
        assert_eq!(g(from).canonical(), g(to).canonical(), "{from} vs {to}");
    }
    // Canonicalization never changes the order or the outer group order.
    for name in [
        "A1(4)", "A1(5)", "A1(9)", "A1(7)", "A3(2)", "B2(3)", "O7(2)", "O9(4)",
        "L2(11)", "U4(2)", "S6(2)", "Sz(8)", "M11",
    ] {
        let id = g(name);
        assert_eq!(id.order(), id.canonical().order(), "{name} order");
        assert_eq!(id.out_order(), id.canonical().out_order(), "{name} out");
    }
    // Bn and Cn have equal orders for odd q but stay distinct groups.
    let b4 = g("B4(3)");
    let c4 = g("C4(3)");
    assert_eq!(b4.order(), c4.order());
    assert_ne!(b4.canonical(), c4.canonical());
    assert_eq!(b4.to_string(), "O9(3)");
    assert_eq!(c4.to_string(), "S8(3)");
}

#[test]
fn names_round_trip() {
    let names = [
        "A5", "A13", "L2(11)", "L2(32)", "L3(4)", "L6(2)", "U4(2)", "U5(4)",
        "S4(4)", "S6(3)", "S8(2)", "O7(3)", "O8+(2)", "O8-(3)", "O10+(2)",
        "Sz(8)", "R(27)", "G2(3)", "3D4(2)", "2F4(2)'", "2F4(8)", "F4(2)",
        "E6(2)", "2E6(2)", "E7(2)", "E8(2)", "M11", "M24", "J4", "Co1",
        "Fi24'", "O'N", "McL", "HS", "HN", "Ly", "Th", "Ru", "Suz", "He",
        "B", "M",
    ];
    for name in names {
        assert_eq!(g(name).to_string(), name, "round trip");
    }
}

#[test]
fn name_aliases_and_coordinate_forms() {
    assert_eq!(g("ON"), g("O'N"));
    assert_eq!(g("Fi24"), g("Fi24'"));
    assert_eq!(g("T"), GroupId::Tits);
    assert_eq!(g("Tits"), GroupId::Tits);
    assert_eq!(g("L2(2^5)"), g("L2(32)"));
    assert_eq!(g("2A3(2)"), g("U4(2)"));
    assert_eq!(g("A3(2)"), g("L4(2)"));
    assert_eq!(g("B2(3)"), g("S4(3)"));
    assert_eq!(g("C3(5)"), g("S6(5)"));
    assert_eq!(g("D4(2)"), g("O8+(2)"));
    assert_eq!(g("2D4(2)"), g("O8-(2)"));
    assert_eq!(g("O8^+(2)"), g("O8+(2)"));
    assert_eq!(g("2B2(8)"), g("Sz(8)"));
    assert_eq!(g("2G2(27)"), g("R(27)"));
    assert!("A4".parse::<GroupId>().is_err());
    assert!("L1(5)".parse::<GroupId>().is_err());
    assert!("L2(6)".parse::<GroupId>().is_err());
    assert!("S5(2)".parse::<GroupId>().is_err());
    assert!("O6+(2)".parse::<GroupId>().is_err());
    assert!("2F4(2)".parse::<GroupId>().is_err());
    assert!("X7(2)".parse::<GroupId>().is_err());
    assert!("".parse::<GroupId>().is_err());
}

#[test]
fn sporadic_data_loads_and_validates() {
    let data = SporadicData::builtin();
    assert_eq!(data.iter().count(), 26);
    let m11 = data.record(Sporadic::M11);
    assert_eq!(m11.spectrum, vec![1, 2, 3, 4, 5, 6, 8, 11]);
    assert_eq!(m11.order, "2^4*3^2*5*11".parse().unwrap());
    let monster = data.record(Sporadic::M);
    assert!(monster.spectrum.contains(&119));
    assert!(!monster.spectrum.contains(&58));
    assert_eq!(builtin_spectrum(Sporadic::J1), &[1, 2, 3, 5, 6, 7, 10, 11, 15, 19]);
}

#[test]
fn corrupt_sporadic_data_rejected() {
    let dir = std::env::temp_dir().join("gkcheck-test-data");
    std::fs::create_dir_all(&dir).unwrap();
    let good = include_str!("../../data/sporadic.tsv");

    let wrong_order = good.replacen("2^4*3^2*5*11", "2^5*3^2*5*11", 1);
    let p = dir.join("wrong_order.tsv");
    std::fs::write(&p, wrong_order).unwrap();
    assert!(matches!(
        load_sporadic_data(&p),
        Err(DataError::Inconsistent { .. })
    ));

    let broken_closure = good.replacen("1,2,3,4,5,6,8,11", "1,2,3,5,6,8,11", 1);
    let p = dir.join("broken_closure.tsv");
    std::fs::write(&p, broken_closure).unwrap();
    assert!(matches!(
        load_sporadic_data(&p),
        Err(DataError::Inconsistent { .. })
    ));

    let missing_line: String = good
        .lines()
        .filter(|l| !l.starts_with("M24"))
        .collect::<Vec<_>>()
        .join("\n");
    let p = dir.join("missing.tsv");
    std::fs::write(&p, missing_line).unwrap();
    assert!(matches!(load_sporadic_data(&p), Err(DataError::Missing(_))));
}

#[test]
fn sporadic_and_tits_has_27_entries() {
    let all = sporadic_and_tits();
    assert_eq!(all.len(), 27);
    assert!(all.contains(&GroupId::Tits));
}
