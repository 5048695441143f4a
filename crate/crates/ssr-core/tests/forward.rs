mod common;

use common::{random_hybrid, reduced, rng, triple};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use ssr_core::bounds::*;
use ssr_core::forward::*;
use ssr_core::gadgets::*;
use ssr_core::hybrid::*;
use ssr_core::superstring::*;

fn unit_string(red: &Reduction, u: UnitId) -> &GString {
    let gd = red.gadget(u.gadget);
    match u.kind {
        UnitKind::Alignment(name) => &gd.alignment(name).merged,
        UnitKind::TerminalLeft => &gd.strings[0],
        UnitKind::TerminalRight => &gd.strings[5],
    }
}

#[test]
fn satisfying_assignment_on_triple() {
    let h = triple();
    let phi = Assignment::zeros(&h);
    assert_eq!(h.unsat_count(&phi).unwrap(), 0);
    for (variant, formula, attained) in [(GadgetVariant::B4, 519, 522), (GadgetVariant::A6, 537, 540)] {
        let red = reduced(&h, variant);
        let s = build_superstring(&h, &red, &phi).unwrap();
        assert!(is_superstring(&s, &red.strings));
        assert_eq!(length_base(h.counts(), variant), formula);
        assert_eq!(attained_length_base(h.counts(), variant), attained);
        // one letter per circle above the formula: the border keeps 13 of its 20 letters
        assert_eq!(s.len(), attained);
        let comp = compression(&red.strings, &s).unwrap() as usize;
        assert_eq!(comp, attained_compression_base(h.counts(), variant));
        assert_eq!(comp + h.counts().n, compression_base(h.counts(), variant));
    }
}

#[test]
fn flipped_checker_costs_at_most_its_three_equations() {
    let h = triple();
    let red = reduced(&h, GadgetVariant::B4);
    let phi = Assignment::zeros(&h);
    let base = build_superstring(&h, &red, &phi).unwrap().len();
    for (c, circle) in h.circles().iter().enumerate() {
        for p in (1..=circle.len()).filter(|&p| !circle.is_contact(p)) {
            let mut f = phi.clone();
            f.flip(VarRef::new(c, p));
            assert_eq!(h.unsat_count(&f).unwrap(), 3);
            let len = build_superstring(&h, &red, &f).unwrap().len();
            assert!(len > base && len <= base + 3, "circle {c} pos {p}: {len}");
        }
    }
}

#[test]
fn matching_units_follow_the_successor_bit() {
    let h = triple();
    let red = reduced(&h, GadgetVariant::B4);
    let ones = Assignment::from_e3_values(&h, &[true, true, true]);
    let plan = plan_from_assignment(&h, &red, &ones).unwrap();
    let a = execute(&h, &red, &plan).unwrap();
    for (k, p) in a.placements.iter().enumerate() {
        if red.gadget(p.unit.gadget).kind == GadgetKind::Matching {
            assert_eq!(p.unit.kind, UnitKind::Alignment(AlignmentName::One));
            // spliced between the circle fragments, one letter shared on each side
            assert_eq!((p.joined_by, a.placements[k + 1].joined_by), (1, 1));
        }
    }
}

#[test]
fn three_variable_case_choices() {
    let h = triple();
    let red = reduced(&h, GadgetVariant::B4);
    let three: Vec<usize> = (0..red.index.len())
        .filter(|&g| red.gadget(g).kind == GadgetKind::Three)
        .collect();
    let zeros = plan_from_assignment(&h, &red, &Assignment::zeros(&h)).unwrap();
    let ones = plan_from_assignment(&h, &red, &Assignment::from_e3_values(&h, &[true, true, true])).unwrap();
    for &g in &three {
        assert_eq!(
            zeros.choices[g],
            Choice::Three {
                a: AlignmentName::ALeft,
                b: AlignmentName::BRight
            }
        );
        assert_eq!(
            ones.choices[g],
            Choice::Three {
                a: AlignmentName::AY,
                b: AlignmentName::BZ
            }
        );
    }
    // the left and right x⁰ alignments sit next to each other sharing one letter
    let a = execute(&h, &red, &zeros).unwrap();
    for w in a.placements.windows(2) {
        if w[0].unit.kind == UnitKind::Alignment(AlignmentName::ALeft) {
            assert_eq!(w[1].unit.kind, UnitKind::Alignment(AlignmentName::BRight));
            assert_eq!(w[1].joined_by, 1);
        }
    }
}

#[test]
fn bounds_hold_for_random_assignments() {
    for seed in 0..6 {
        let h = random_hybrid(seed);
        let mut r = rng(100 + seed);
        for variant in [GadgetVariant::B4, GadgetVariant::A6] {
            let red = reduced(&h, variant);
            for _ in 0..15 {
                let phi = Assignment::random(&h, &mut r);
                let u = h.unsat_count(&phi).unwrap();
                let s = build_superstring(&h, &red, &phi).unwrap();
                assert!(is_superstring(&s, &red.strings));
                assert!(s.len() <= length_base(h.counts(), variant) + u);
                assert!(s.len() <= attained_length_base(h.counts(), variant) + u);
                let comp = compression(&red.strings, &s).unwrap() as usize + u;
                assert!(comp >= compression_base(h.counts(), variant));
            }
        }
    }
}

#[test]
fn positional_audit() {
    let h = random_hybrid(2);
    let red = reduced(&h, GadgetVariant::B4);
    let phi = Assignment::random(&h, &mut rng(9));
    let plan = plan_from_assignment(&h, &red, &phi).unwrap();
    let a = execute(&h, &red, &plan).unwrap();
    let s = &a.superstring;
    let mut placed_at = vec![None; red.strings.len()];
    for p in &a.placements {
        let unit = unit_string(&red, p.unit);
        assert_eq!(&s[p.start..p.start + unit.len()], unit.symbols());
        let gd = red.gadget(p.unit.gadget);
        for (local, member) in gd.strings.iter().enumerate() {
            if let Some(off) = unit.windows(member.len()).position(|w| w == member.symbols()) {
                placed_at[red.index.members[p.unit.gadget][local]] = Some(p.start + off);
            }
        }
    }
    for (i, at) in placed_at.iter().enumerate() {
        let at = at.unwrap_or_else(|| panic!("string {i} is not placed"));
        let t = &red.strings.strings()[i];
        assert_eq!(&s[at..at + t.len()], t.symbols());
    }
    // exactly one alignment per gadget
    for g in 0..red.index.len() {
        let units = a.placements.iter().filter(|p| p.unit.gadget == g).count();
        let expected = match red.gadget(g).kind {
            GadgetKind::Border => 4,
            GadgetKind::Three => 2,
            _ => 1,
        };
        assert_eq!(units, expected, "gadget {g}");
    }
}

#[test]
fn plan_validation() {
    let h = triple();
    let red = reduced(&h, GadgetVariant::B4);
    let mut plan = plan_from_assignment(&h, &red, &Assignment::zeros(&h)).unwrap();
    plan.circle_order = vec![0, 0, 1];
    assert_eq!(execute(&h, &red, &plan).unwrap_err(), ForwardError::BadCircleOrder);
    let other = random_hybrid(1);
    assert!(plan_from_assignment(&h, &red, &Assignment::zeros(&other)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn length_independent_of_circle_order(seed in 0u64..500) {
        let h = random_hybrid(seed);
        let red = reduced(&h, GadgetVariant::B4);
        let mut r = rng(seed);
        let phi = Assignment::random(&h, &mut r);
        let plan = plan_from_assignment(&h, &red, &phi).unwrap();
        let base = execute(&h, &red, &plan).unwrap().superstring.len();
        for _ in 0..2 {
            let mut other = plan.clone();
            other.circle_order.shuffle(&mut r);
            prop_assert_eq!(execute(&h, &red, &other).unwrap().superstring.len(), base);
        }
    }
}
